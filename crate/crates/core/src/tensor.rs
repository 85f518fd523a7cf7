//! Threefold tensor products, their Casimir elements and the Bannai–Ito images.

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{anticommutator, commutator, kron, q, rank_of_stack, MatrixQ};
use crate::osp::{build_irrep, casimir_q, IrrepLabel, OspError, Rep, GENERATOR_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error(transparent)]
    Osp(#[from] OspError),
    #[error("iterated coproducts disagree on {generator}")]
    Coassociativity { generator: &'static str },
    #[error("{operator} does not commute with the triple image of {generator}")]
    NotCentral { operator: &'static str, generator: &'static str },
    #[error("{operator} is not the expected scalar on the triple product")]
    NotScalar { operator: &'static str },
    #[error("Bannai-Ito relation {relation} fails")]
    BannaiIto { relation: &'static str },
}

/// Generators of `a ⊗ b` under the coproduct.
pub fn coproduct_pair(a: &Rep, b: &Rep) -> Result<Rep, OspError> {
    let ia = MatrixQ::identity(a.dim());
    let ib = MatrixQ::identity(b.dim());
    let prim = |x: &MatrixQ, y: &MatrixQ| &kron(x, &ib) + &kron(&ia, y);
    let odd = |x: &MatrixQ, y: &MatrixQ| &kron(x, &b.r) + &kron(&ia, y);
    Rep::from_parts(
        prim(&a.h, &b.h),
        prim(&a.ep, &b.ep),
        prim(&a.em, &b.em),
        odd(&a.fp, &b.fp),
        odd(&a.fm, &b.fm),
        kron(&a.r, &b.r),
        None,
    )
}

#[derive(Clone, Debug)]
pub struct TensorContext {
    pub labels: [IrrepLabel; 3],
    pub reps: [Rep; 3],
    /// First two factors.
    pub pair12: Rep,
    /// Last two factors.
    pub pair23: Rep,
    /// `(Δ⊗1)Δ` images.
    pub triple: Rep,
}

impl TensorContext {
    pub fn dim(&self) -> usize {
        self.triple.dim()
    }

    pub fn equal_labels(&self) -> bool {
        self.labels[0] == self.labels[1] && self.labels[1] == self.labels[2]
    }
}

pub fn build_context(l1: IrrepLabel, l2: IrrepLabel, l3: IrrepLabel) -> Result<TensorContext, TensorError> {
    let reps = [build_irrep(l1)?, build_irrep(l2)?, build_irrep(l3)?];
    let pair12 = coproduct_pair(&reps[0], &reps[1])?;
    let pair23 = coproduct_pair(&reps[1], &reps[2])?;
    let triple = coproduct_pair(&pair12, &reps[2])?;
    let other = coproduct_pair(&reps[0], &pair23)?;
    for ((name, x), (_, y)) in triple.generators().iter().zip(other.generators().iter()) {
        if x != y {
            return Err(TensorError::Coassociativity { generator: name });
        }
    }
    Ok(TensorContext { labels: [l1, l2, l3], reps, pair12, pair23, triple })
}

pub fn build_equal_context(label: IrrepLabel) -> Result<TensorContext, TensorError> {
    build_context(label, label, label)
}

#[derive(Clone, Debug)]
pub struct CasimirSet {
    pub q1: MatrixQ,
    pub q2: MatrixQ,
    pub q3: MatrixQ,
    pub q12: MatrixQ,
    pub q23: MatrixQ,
    pub q13: MatrixQ,
    pub q4: MatrixQ,
}

pub const CASIMIR_NAMES: [&str; 7] = ["Q1", "Q2", "Q3", "Q12", "Q23", "Q13", "Q4"];

impl CasimirSet {
    pub fn named(&self) -> [(&'static str, &MatrixQ); 7] {
        [
            ("Q1", &self.q1),
            ("Q2", &self.q2),
            ("Q3", &self.q3),
            ("Q12", &self.q12),
            ("Q23", &self.q23),
            ("Q13", &self.q13),
            ("Q4", &self.q4),
        ]
    }
}

fn kron3(a: &MatrixQ, b: &MatrixQ, c: &MatrixQ) -> MatrixQ {
    kron(&kron(a, b), c)
}

/// Names of operators that fail to commute with some triple generator.
fn commutation_failures(ops: &[(&'static str, &MatrixQ)], triple: &Rep) -> Vec<(&'static str, &'static str)> {
    let gens = triple.generators();
    let pairs: Vec<(usize, usize)> = (0..ops.len()).flat_map(|i| (0..gens.len()).map(move |g| (i, g))).collect();
    pairs
        .into_par_iter()
        .filter(|&(i, g)| !commutator(ops[i].1, gens[g].1).expect("equal shapes").is_zero())
        .map(|(i, g)| (ops[i].0, gens[g].0))
        .collect()
}

pub fn build_casimirs(ctx: &TensorContext) -> Result<CasimirSet, TensorError> {
    let [a, b, c] = &ctx.reps;
    let (ia, ib, ic) = (MatrixQ::identity(a.dim()), MatrixQ::identity(b.dim()), MatrixQ::identity(c.dim()));
    let qa = casimir_q(a)?;
    let qb = casimir_q(b)?;
    let qc = casimir_q(c)?;
    let q12 = kron(&casimir_q(&ctx.pair12)?, &ic);
    let q23 = kron(&ia, &casimir_q(&ctx.pair23)?);
    let q4 = casimir_q(&ctx.triple)?;
    let outer_p = &kron3(&a.fp, &b.r, &c.r) + &kron3(&ia, &ib, &c.fp);
    let outer_m = &kron3(&a.fm, &b.r, &c.r) + &kron3(&ia, &ib, &c.fm);
    let q13 = &commutator(&outer_p, &outer_m).expect("equal shapes").add_scalar(&q(1, 8)) * &kron3(&a.r, &ib, &c.r);
    let cs =
        CasimirSet { q1: kron3(&qa, &ib, &ic), q2: kron3(&ia, &qb, &ic), q3: kron3(&ia, &ib, &qc), q12, q23, q13, q4 };
    let n = ctx.dim();
    for (name, m, label) in
        [("Q1", &cs.q1, ctx.labels[0]), ("Q2", &cs.q2, ctx.labels[1]), ("Q3", &cs.q3, ctx.labels[2])]
    {
        if *m != MatrixQ::scalar(n, label.casimir_value()) {
            return Err(TensorError::NotScalar { operator: name });
        }
    }
    if let Some((operator, generator)) = commutation_failures(&cs.named(), &ctx.triple).into_iter().next() {
        return Err(TensorError::NotCentral { operator, generator });
    }
    Ok(cs)
}

#[derive(Clone, Debug)]
pub struct BIImage {
    pub x: MatrixQ,
    pub y: MatrixQ,
    pub z: MatrixQ,
    pub wx: MatrixQ,
    pub wy: MatrixQ,
    pub wz: MatrixQ,
}

pub const BI_NAMES: [&str; 6] = ["X", "Y", "Z", "wX", "wY", "wZ"];

impl BIImage {
    pub fn named(&self) -> [(&'static str, &MatrixQ); 6] {
        [("X", &self.x), ("Y", &self.y), ("Z", &self.z), ("wX", &self.wx), ("wY", &self.wy), ("wZ", &self.wz)]
    }

    /// The common central element, when the three agree.
    pub fn omega(&self) -> Option<&MatrixQ> {
        (self.wx == self.wy && self.wy == self.wz).then_some(&self.wx)
    }

    /// `(name, holds)` for the three anticommutator relations.
    pub fn relation_results(&self) -> [(&'static str, bool); 3] {
        bi_relation_results(&self.x, &self.y, &self.z, &self.wx, &self.wy, &self.wz)
    }
}

pub fn bi_relation_results(
    x: &MatrixQ,
    y: &MatrixQ,
    z: &MatrixQ,
    wx: &MatrixQ,
    wy: &MatrixQ,
    wz: &MatrixQ,
) -> [(&'static str, bool); 3] {
    let sum = &(x + y) + z;
    let ac = |a: &MatrixQ, b: &MatrixQ| anticommutator(a, b).expect("equal shapes");
    [
        ("{X,Y}=X+Y+Z+wZ", ac(x, y) == &sum + wz),
        ("{X,Z}=X+Y+Z+wY", ac(x, z) == &sum + wy),
        ("{Y,Z}=X+Y+Z+wX", ac(y, z) == &sum + wx),
    ]
}

pub fn phi_images(cs: &CasimirSet) -> Result<BIImage, TensorError> {
    let lin = |m: &MatrixQ| m.scale(&q(-4, 1)).add_scalar(&q(1, 2));
    let quad = |a: &MatrixQ, b: &MatrixQ, c: &MatrixQ, d: &MatrixQ| {
        (&(a * b) + &(c * d)).scale(&q(32, 1)).add_scalar(&q(-1, 1))
    };
    let bi = BIImage {
        x: lin(&cs.q12),
        y: lin(&cs.q23),
        z: lin(&cs.q13),
        wx: quad(&cs.q1, &cs.q2, &cs.q3, &cs.q4),
        wy: quad(&cs.q2, &cs.q3, &cs.q1, &cs.q4),
        wz: quad(&cs.q1, &cs.q3, &cs.q2, &cs.q4),
    };
    if let Some((relation, _)) = bi.relation_results().into_iter().find(|(_, ok)| !ok) {
        return Err(TensorError::BannaiIto { relation });
    }
    Ok(bi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorCheck {
    pub operator: &'static str,
    pub generator: &'static str,
    pub zero: bool,
}

/// All 36 commutators of the Bannai–Ito images with the triple generators.
pub fn verify_centralizing(bi: &BIImage, ctx: &TensorContext) -> Vec<CommutatorCheck> {
    let failures = commutation_failures(&bi.named(), &ctx.triple);
    BI_NAMES
        .iter()
        .flat_map(|op| GENERATOR_NAMES.iter().map(move |g| (*op, *g)))
        .map(|(operator, generator)| CommutatorCheck {
            operator,
            generator,
            zero: !failures.contains(&(operator, generator)),
        })
        .collect()
}

/// The fifteen words in two letters `a`, `b` whose images span the
/// centralizer of the fundamental triple product.
pub const FIFTEEN_WORDS: [&str; 15] =
    ["", "a", "b", "aa", "bb", "ab", "ba", "aab", "aba", "baa", "bba", "bab", "aabb", "bbaa", "abba"];

pub fn word_image(word: &str, a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    word.chars().fold(MatrixQ::identity(a.rows()), |acc, ch| match ch {
        'a' => &acc * a,
        'b' => &acc * b,
        other => panic!("unknown letter `{other}` in word"),
    })
}

/// Rank of the flattened images of the given words.
pub fn monomial_rank(words: &[&str], a: &MatrixQ, b: &MatrixQ) -> usize {
    let mats: Vec<MatrixQ> = words.par_iter().map(|w| word_image(w, a, b)).collect();
    rank_of_stack(&mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spectrum;

    fn fund() -> IrrepLabel {
        IrrepLabel::plus(1)
    }

    #[test]
    fn pair_products() {
        let triv = build_irrep(IrrepLabel::plus(0)).unwrap();
        let f = build_irrep(fund()).unwrap();
        let p = coproduct_pair(&triv, &f).unwrap();
        assert_eq!(spectrum(&casimir_q(&p).unwrap()).eigenvalues, vec![q(3, 8)]);
        let ff = coproduct_pair(&f, &f).unwrap();
        assert_eq!(ff.r, kron(&f.r, &f.r));
        assert_eq!(&ff.r * &ff.r, MatrixQ::identity(9));
        let s = spectrum(&casimir_q(&ff).unwrap());
        assert_eq!(s.eigenvalues, vec![q(-3, 8), q(1, 8), q(5, 8)]);
    }

    #[test]
    fn fundamental_triple() {
        let ctx = build_equal_context(fund()).unwrap();
        assert_eq!(ctx.dim(), 27);
        let cs = build_casimirs(&ctx).unwrap();
        assert_eq!(cs.q1, MatrixQ::scalar(27, q(3, 8)));
        assert_eq!(spectrum(&cs.q4).eigenvalues, vec![q(-5, 8), q(-1, 8), q(3, 8), q(7, 8)]);
        assert_eq!(spectrum(&cs.q13).eigenvalues, vec![q(-3, 8), q(1, 8), q(5, 8)]);
        let bi = phi_images(&cs).unwrap();
        assert_eq!(spectrum(&bi.x).eigenvalues_i64(), Some(vec![-2, 0, 2]));
        let w = bi.omega().expect("equal labels give a single omega");
        assert_eq!(*w, cs.q4.scale(&q(12, 1)).add_scalar(&q(7, 2)));
        assert!(verify_centralizing(&bi, &ctx).iter().all(|c| c.zero));
        assert_eq!(verify_centralizing(&bi, &ctx).len(), 36);
    }

    #[test]
    fn fifteen_monomials_independent() {
        let ctx = build_equal_context(fund()).unwrap();
        let cs = build_casimirs(&ctx).unwrap();
        assert_eq!(monomial_rank(&FIFTEEN_WORDS, &cs.q12, &cs.q23), 15);
        assert_eq!(monomial_rank(&FIFTEEN_WORDS, &cs.q12, &cs.q12), 3);
        assert_eq!(monomial_rank(&[""], &cs.q12, &cs.q23), 1);
    }

    #[test]
    fn trivial_triple_is_scalar() {
        let ctx = build_equal_context(IrrepLabel::plus(0)).unwrap();
        let bi = phi_images(&build_casimirs(&ctx).unwrap()).unwrap();
        for (_, m) in bi.named() {
            assert!(m.as_scalar().is_some());
        }
        assert!(verify_centralizing(&bi, &ctx).iter().all(|c| c.zero));
    }

    #[test]
    fn mixed_labels_keep_three_omegas() {
        let ctx = build_context(IrrepLabel::plus(1), IrrepLabel::minus(2), IrrepLabel::plus(0)).unwrap();
        let bi = phi_images(&build_casimirs(&ctx).unwrap()).unwrap();
        assert!(bi.omega().is_none());
        assert!(bi.wx != bi.wy);
    }
}
