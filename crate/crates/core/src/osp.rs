//! Finite irreducible representations of osp(1|2).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{anticommutator, commutator, nullspace_basis, q, rank, MatrixQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Self {
        if s > 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }
}

impl std::ops::Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity::from_sign(self.sign() * rhs.sign())
    }
}

impl FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Parity::Plus),
            "-" | "minus" | "−" => Ok(Parity::Minus),
            other => Err(format!("unknown parity `{other}`")),
        }
    }
}

/// `[j]^ε` with `j = two_j / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub two_j: u32,
    pub parity: Parity,
}

impl IrrepLabel {
    pub fn new(two_j: u32, parity: Parity) -> Self {
        IrrepLabel { two_j, parity }
    }

    pub fn plus(two_j: u32) -> Self {
        Self::new(two_j, Parity::Plus)
    }

    pub fn minus(two_j: u32) -> Self {
        Self::new(two_j, Parity::Minus)
    }

    pub fn j(&self) -> Rational {
        q(self.two_j as i64, 2)
    }

    pub fn dim(&self) -> usize {
        2 * self.two_j as usize + 1
    }

    /// The scalar `ε(4j+1)/8` by which Q acts.
    pub fn casimir_value(&self) -> Rational {
        q(self.parity.sign() * (2 * self.two_j as i64 + 1), 8)
    }
}

/// Descending `j`, then `+` before `-`.
impl Ord for IrrepLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.two_j.cmp(&self.two_j).then(self.parity.cmp(&other.parity))
    }
}

impl PartialOrd for IrrepLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]^{}", self.j(), self.parity.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OspError {
    #[error("relation `{relation}` fails on a representation of dimension {dim}")]
    RelationFailure { relation: &'static str, dim: usize },
    #[error("generator `{name}` has shape {shape:?}, expected {dim}x{dim}")]
    BadShape { name: &'static str, shape: (usize, usize), dim: usize },
    #[error("Q is not the scalar {expected} on a representation labelled {label}")]
    NonScalarCasimir { label: IrrepLabel, expected: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    pub h: MatrixQ,
    pub ep: MatrixQ,
    pub em: MatrixQ,
    pub fp: MatrixQ,
    pub fm: MatrixQ,
    pub r: MatrixQ,
    pub label: Option<IrrepLabel>,
}

pub const GENERATOR_NAMES: [&str; 6] = ["H", "E+", "E-", "F+", "F-", "R"];

impl Rep {
    /// Validates shapes and the full relation suite.
    pub fn new(h: MatrixQ, fp: MatrixQ, fm: MatrixQ, r: MatrixQ, label: Option<IrrepLabel>) -> Result<Self, OspError> {
        let ep = (&fp * &fp).scale(&q(4, 1));
        let em = (&fm * &fm).scale(&q(-4, 1));
        Self::from_parts(h, ep, em, fp, fm, r, label)
    }

    pub fn from_parts(
        h: MatrixQ,
        ep: MatrixQ,
        em: MatrixQ,
        fp: MatrixQ,
        fm: MatrixQ,
        r: MatrixQ,
        label: Option<IrrepLabel>,
    ) -> Result<Self, OspError> {
        let dim = h.rows();
        for (name, m) in GENERATOR_NAMES.iter().zip([&h, &ep, &em, &fp, &fm, &r]) {
            if m.shape() != (dim, dim) {
                return Err(OspError::BadShape { name, shape: m.shape(), dim });
            }
        }
        let rep = Rep { h, ep, em, fp, fm, r, label };
        rep.check_relations()?;
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn generators(&self) -> [(&'static str, &MatrixQ); 6] {
        [("H", &self.h), ("E+", &self.ep), ("E-", &self.em), ("F+", &self.fp), ("F-", &self.fm), ("R", &self.r)]
    }

    /// Every defining relation, each paired with whether it holds.
    pub fn relation_results(&self) -> Vec<(&'static str, bool)> {
        let Rep { h, ep, em, fp, fm, r, .. } = self;
        let n = self.dim();
        let half = q(1, 2);
        let com = |a: &MatrixQ, b: &MatrixQ| commutator(a, b).expect("equal shapes");
        let acom = |a: &MatrixQ, b: &MatrixQ| anticommutator(a, b).expect("equal shapes");
        vec![
            ("[H,E+]=E+", com(h, ep) == *ep),
            ("[H,E-]=-E-", com(h, em) == -em),
            ("[E+,E-]=2H", com(ep, em) == h.scale(&q(2, 1))),
            ("[H,F+]=F+/2", com(h, fp) == fp.scale(&half)),
            ("[H,F-]=-F-/2", com(h, fm) == fm.scale(&-&half)),
            ("{F+,F-}=H/2", acom(fp, fm) == h.scale(&half)),
            ("[E+,F-]=-F+", com(ep, fm) == -fp),
            ("[E-,F+]=-F-", com(em, fp) == -fm),
            ("{F+,F+}=E+/2", acom(fp, fp) == ep.scale(&half)),
            ("{F-,F-}=-E-/2", acom(fm, fm) == em.scale(&-&half)),
            ("R^2=1", (r * r) == MatrixQ::identity(n)),
            ("[R,H]=0", com(r, h).is_zero()),
            ("[R,E+]=0", com(r, ep).is_zero()),
            ("[R,E-]=0", com(r, em).is_zero()),
            ("{R,F+}=0", acom(r, fp).is_zero()),
            ("{R,F-}=0", acom(r, fm).is_zero()),
        ]
    }

    pub fn check_relations(&self) -> Result<(), OspError> {
        match self.relation_results().into_iter().find(|(_, ok)| !ok) {
            Some((relation, _)) => Err(OspError::RelationFailure { relation, dim: self.dim() }),
            None => Ok(()),
        }
    }
}

/// `c_k` with `F+ v_k = c_k v_{k-1}`.
fn raising_coefficients(two_j: u32) -> Vec<Rational> {
    let n = 2 * two_j as usize + 1;
    let j = q(two_j as i64, 2);
    let mut c = vec![Rational::zero(); n];
    for k in 0..n - 1 {
        let weight = &j - &q(k as i64, 2);
        c[k + 1] = &(&weight * &q(1, 2)) - &c[k];
    }
    c
}

pub fn build_irrep(label: IrrepLabel) -> Result<Rep, OspError> {
    let n = label.dim();
    let j = label.j();
    let h = MatrixQ::diag(&(0..n).map(|k| &j - &q(k as i64, 2)).collect::<Vec<_>>());
    let eps = label.parity.sign();
    let r = MatrixQ::diag(&(0..n).map(|k| Rational::from_int(if k % 2 == 0 { eps } else { -eps })).collect::<Vec<_>>());
    let c = raising_coefficients(label.two_j);
    let mut fp = MatrixQ::zeros(n, n);
    let mut fm = MatrixQ::zeros(n, n);
    for k in 1..n {
        fp.set(k - 1, k, c[k].clone());
        fm.set(k, k - 1, Rational::one());
    }
    Rep::new(h, fp, fm, r, Some(label))
}

/// The fundamental `[1/2]^+` in the printed normalization.
pub fn reference_fundamental() -> Rep {
    let half = q(1, 2);
    let h = MatrixQ::diag(&[q(1, 2), q(-1, 2), q(0, 1)]);
    let fp = MatrixQ::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 1, 0]]).scale(&half);
    let fm = MatrixQ::from_ints(&[&[0, 0, 0], &[0, 0, -1], &[1, 0, 0]]).scale(&half);
    let r = MatrixQ::diag(&[q(1, 1), q(1, 1), q(-1, 1)]);
    Rep::new(h, fp, fm, r, Some(IrrepLabel::plus(1))).expect("reference matrices satisfy the relations")
}

/// `[F+,F-] + 1/8`.
pub fn scasimir(rep: &Rep) -> MatrixQ {
    let s = commutator(&rep.fp, &rep.fm).expect("square generators").add_scalar(&q(1, 8));
    debug_assert!(anticommutator(&s, &rep.fp).unwrap().is_zero());
    debug_assert!(anticommutator(&s, &rep.fm).unwrap().is_zero());
    debug_assert!(commutator(&s, &rep.h).unwrap().is_zero());
    s
}

/// `S R`; for a labelled irreducible it must be the scalar `ε(4j+1)/8`.
pub fn casimir_q(rep: &Rep) -> Result<MatrixQ, OspError> {
    let qm = &scasimir(rep) * &rep.r;
    if let Some(label) = rep.label {
        let expected = label.casimir_value();
        if qm != MatrixQ::scalar(rep.dim(), expected.clone()) {
            return Err(OspError::NonScalarCasimir { label, expected });
        }
    }
    Ok(qm)
}

/// An invertible `T` with `T·a(g) = b(g)·T` for all generators, if one exists
/// among the kernel basis vectors or their sum.
pub fn find_intertwiner(a: &Rep, b: &Rep) -> Option<MatrixQ> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let pairs: Vec<(&MatrixQ, &MatrixQ)> =
        a.generators().iter().zip(b.generators().iter()).map(|((_, x), (_, y))| (*x, *y)).collect();
    let mut sys = MatrixQ::zeros(pairs.len() * n * n, n * n);
    for (g, (ga, gb)) in pairs.iter().enumerate() {
        for i in 0..n {
            for l in 0..n {
                let row = g * n * n + i * n + l;
                for k in 0..n {
                    let av = ga.get(k, l);
                    if !av.is_zero() {
                        let c = sys.get(row, i * n + k) + av;
                        sys.set(row, i * n + k, c);
                    }
                    let bv = gb.get(i, k);
                    if !bv.is_zero() {
                        let c = sys.get(row, k * n + l) - bv;
                        sys.set(row, k * n + l, c);
                    }
                }
            }
        }
    }
    let kernel = nullspace_basis(&sys);
    let as_matrix =
        |v: &MatrixQ| MatrixQ::from_vec(n, n, (0..n * n).map(|i| v.get(i, 0).clone()).collect()).expect("n*n entries");
    let mut candidates: Vec<MatrixQ> = kernel.iter().map(as_matrix).collect();
    if candidates.len() > 1 {
        let sum = candidates.iter().skip(1).fold(candidates[0].clone(), |acc, m| &acc + m);
        candidates.push(sum);
    }
    candidates.into_iter().find(|t| rank(t) == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spectrum;

    #[test]
    fn fundamental_spectra() {
        let rep = build_irrep(IrrepLabel::plus(1)).unwrap();
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.h, MatrixQ::diag(&[q(1, 2), q(0, 1), q(-1, 2)]));
        assert_eq!(rep.r, MatrixQ::diag(&[q(1, 1), q(-1, 1), q(1, 1)]));
        assert_eq!(spectrum(&rep.h).eigenvalues, vec![q(-1, 2), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn trivial_rep() {
        let rep = build_irrep(IrrepLabel::plus(0)).unwrap();
        assert_eq!(rep.dim(), 1);
        for m in [&rep.h, &rep.ep, &rep.em, &rep.fp, &rep.fm] {
            assert!(m.is_zero());
        }
        assert_eq!(rep.r, MatrixQ::identity(1));
        assert_eq!(scasimir(&rep), MatrixQ::scalar(1, q(1, 8)));
        assert_eq!(casimir_q(&rep).unwrap(), MatrixQ::scalar(1, q(1, 8)));
    }

    #[test]
    fn casimir_values() {
        let five = build_irrep(IrrepLabel::minus(2)).unwrap();
        assert_eq!(casimir_q(&five).unwrap(), MatrixQ::scalar(5, q(-5, 8)));
        let seven = build_irrep(IrrepLabel::plus(3)).unwrap();
        assert_eq!(casimir_q(&seven).unwrap(), MatrixQ::scalar(7, q(7, 8)));
        assert_eq!(casimir_q(&build_irrep(IrrepLabel::plus(1)).unwrap()).unwrap(), MatrixQ::scalar(3, q(3, 8)));
    }

    #[test]
    fn scasimir_grading() {
        let rep = build_irrep(IrrepLabel::plus(2)).unwrap();
        let s = scasimir(&rep);
        assert!(commutator(&s, &rep.ep).unwrap().is_zero());
        assert!(commutator(&s, &rep.em).unwrap().is_zero());
        assert!(anticommutator(&s, &rep.fp).unwrap().is_zero());
        let fund = reference_fundamental();
        let s = scasimir(&fund);
        assert!(anticommutator(&s, &fund.fp).unwrap().is_zero());
        assert!((&s * &s).is_diagonal());
    }

    #[test]
    fn reference_matrices_products() {
        let f = reference_fundamental();
        assert_eq!(&f.fp * &f.fm, MatrixQ::diag(&[q(1, 4), q(0, 1), q(-1, 4)]));
        assert_eq!(anticommutator(&f.fp, &f.fm).unwrap(), f.h.scale(&q(1, 2)));
        let ker = nullspace_basis(&f.fp);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], MatrixQ::column(vec![q(1, 1), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn built_fundamental_is_conjugate_to_reference() {
        let built = build_irrep(IrrepLabel::plus(1)).unwrap();
        let t = find_intertwiner(&built, &reference_fundamental()).expect("intertwiner exists");
        assert_eq!(rank(&t), 3);
        assert_eq!(&t * &built.fp, &reference_fundamental().fp * &t);
        assert!(find_intertwiner(&build_irrep(IrrepLabel::minus(1)).unwrap(), &reference_fundamental()).is_none());
    }

    #[test]
    fn broken_rep_names_relation() {
        let mut rep = build_irrep(IrrepLabel::plus(1)).unwrap();
        rep.r = MatrixQ::identity(3);
        assert!(matches!(rep.check_relations(), Err(OspError::RelationFailure { relation: "{R,F+}=0", .. })));
    }

    #[test]
    fn label_order_and_display() {
        let mut v = vec![IrrepLabel::minus(1), IrrepLabel::plus(0), IrrepLabel::plus(3), IrrepLabel::plus(1)];
        v.sort();
        assert_eq!(v, vec![IrrepLabel::plus(3), IrrepLabel::plus(1), IrrepLabel::minus(1), IrrepLabel::plus(0)]);
        assert_eq!(IrrepLabel::minus(1).to_string(), "[1/2]^-");
        assert_eq!(IrrepLabel::plus(4).to_string(), "[2]^+");
    }
}
