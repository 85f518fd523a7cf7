//! The Brauer algebra B₃(η) on three strands.
//!
//! Endpoints `0..3` are the top row and `3..6` the bottom row, left to right.
//! A diagram stores the partner of every endpoint.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{membership, spectral_projector, unital_closure_exact, ClosureOptions, ClosureReport};
use crate::linalg::{
    anticommutator, commutator, min_poly, q, rank, rank_of_stack, spectrum_with_scale, MatrixQ, PolyQ, Rational,
};
use crate::report::Check;
use crate::tensor::bi_relation_results;

pub const STRANDS: usize = 3;
const POINTS: usize = 2 * STRANDS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    partner: [u8; POINTS],
}

impl Diagram {
    pub fn from_partner(partner: [u8; POINTS]) -> Option<Self> {
        for (i, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= POINTS || p == i || partner[p] as usize != i {
                return None;
            }
        }
        Some(Diagram { partner })
    }

    pub fn partner(&self) -> &[u8; POINTS] {
        &self.partner
    }

    pub fn identity() -> Self {
        Diagram { partner: [3, 4, 5, 0, 1, 2] }
    }

    pub fn s1() -> Self {
        Diagram { partner: [4, 3, 5, 1, 0, 2] }
    }

    pub fn s2() -> Self {
        Diagram { partner: [3, 5, 4, 0, 2, 1] }
    }

    pub fn e1() -> Self {
        Diagram { partner: [1, 0, 5, 4, 3, 2] }
    }

    pub fn e2() -> Self {
        Diagram { partner: [3, 2, 1, 0, 5, 4] }
    }

    /// Number of arcs joining two top endpoints.
    pub fn top_arcs(&self) -> usize {
        (0..STRANDS).filter(|&i| (self.partner[i] as usize) < STRANDS && (self.partner[i] as usize) > i).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.top_arcs() == 0
    }

    /// Mirror image in the horizontal axis; reverses products.
    pub fn flip(&self) -> Self {
        let swap = |p: u8| if (p as usize) < STRANDS { p + STRANDS as u8 } else { p - STRANDS as u8 };
        let mut partner = [0u8; POINTS];
        for i in 0..POINTS {
            partner[swap(i as u8) as usize] = swap(self.partner[i]);
        }
        Diagram { partner }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (0..POINTS)
            .filter(|&i| (self.partner[i] as usize) > i)
            .map(|i| format!("{}-{}", i, self.partner[i]))
            .collect();
        write!(f, "Diagram({})", pairs.join(","))
    }
}

/// `d1 · d2`: `d1` drawn above `d2`. Returns the diagram and the number of
/// closed loops.
pub fn compose_raw(d1: &Diagram, d2: &Diagram) -> (Diagram, u32) {
    let n = STRANDS;
    let mut partner = [0u8; POINTS];
    let mut seen_mid = [false; STRANDS];
    // Walks from an outer endpoint. `upper` says which diagram we are in.
    let walk = |mut upper: bool, mut p: usize, seen: &mut [bool; STRANDS]| -> usize {
        loop {
            if upper {
                let t = d1.partner[p] as usize;
                if t < n {
                    return t;
                }
                seen[t - n] = true;
                upper = false;
                p = t - n;
            } else {
                let t = d2.partner[p] as usize;
                if t >= n {
                    return t;
                }
                seen[t] = true;
                upper = true;
                p = t + n;
            }
        }
    };
    for p in 0..n {
        partner[p] = walk(true, p, &mut seen_mid) as u8;
    }
    for p in n..POINTS {
        partner[p] = walk(false, p, &mut seen_mid) as u8;
    }
    let mut loops = 0;
    for start in 0..n {
        if seen_mid[start] {
            continue;
        }
        loops += 1;
        let mut m = start;
        loop {
            seen_mid[m] = true;
            let below = d2.partner[m] as usize;
            debug_assert!(below < n);
            seen_mid[below] = true;
            let above = d1.partner[below + n] as usize;
            debug_assert!(above >= n);
            m = above - n;
            if m == start {
                break;
            }
        }
    }
    assert!(loops <= 1, "a product of three-strand diagrams closes at most one loop");
    (Diagram { partner }, loops)
}

pub fn compose(d1: &Diagram, d2: &Diagram, eta: &Rational) -> BrauerElement {
    let (d, loops) = compose_raw(d1, d2);
    BrauerElement::term(d, eta.pow(loops))
}

/// All 15 diagrams, lexicographic in the partner array.
pub fn enumerate_basis() -> Vec<Diagram> {
    fn rec(partner: &mut [u8; POINTS], used: &mut [bool; POINTS], out: &mut Vec<Diagram>) {
        let Some(first) = (0..POINTS).find(|&i| !used[i]) else {
            out.push(Diagram { partner: *partner });
            return;
        };
        used[first] = true;
        for other in first + 1..POINTS {
            if used[other] {
                continue;
            }
            used[other] = true;
            partner[first] = other as u8;
            partner[other] = first as u8;
            rec(partner, used, out);
            used[other] = false;
        }
        used[first] = false;
    }
    let mut out = Vec::new();
    rec(&mut [0; POINTS], &mut [false; POINTS], &mut out);
    out.sort();
    out
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BrauerElement {
    terms: BTreeMap<Diagram, Rational>,
}

impl BrauerElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(d: Diagram, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(d, c);
        e
    }

    pub fn diagram(d: Diagram) -> Self {
        Self::term(d, Rational::one())
    }

    pub fn one() -> Self {
        Self::diagram(Diagram::identity())
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, d: Diagram, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (d, v) in &self.terms {
            out.add_term(*d, v * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self, eta: &Rational) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (d, loops) = compose_raw(a, b);
                out.add_term(d, &(ca * cb) * &eta.pow(loops));
            }
        }
        out
    }

    /// Coordinates in the basis order of [`enumerate_basis`].
    pub fn coordinates(&self, basis: &[Diagram]) -> Vec<Rational> {
        basis.iter().map(|d| self.terms.get(d).cloned().unwrap_or_else(Rational::zero)).collect()
    }
}

impl fmt::Debug for BrauerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    S1,
    S2,
    E1,
    E2,
}

impl Gen {
    pub fn diagram(self) -> Diagram {
        match self {
            Gen::S1 => Diagram::s1(),
            Gen::S2 => Diagram::s2(),
            Gen::E1 => Diagram::e1(),
            Gen::E2 => Diagram::e2(),
        }
    }
}

/// Parses words such as `s1e2e1`; `1` is the empty word.
pub fn parse_word(w: &str) -> Vec<Gen> {
    if w == "1" {
        return Vec::new();
    }
    let b = w.as_bytes();
    assert!(b.len().is_multiple_of(2), "malformed word `{w}`");
    b.chunks(2)
        .map(|c| match c {
            b"s1" => Gen::S1,
            b"s2" => Gen::S2,
            b"e1" => Gen::E1,
            b"e2" => Gen::E2,
            _ => panic!("malformed word `{w}`"),
        })
        .collect()
}

/// Evaluates a word left to right.
pub fn eval_word(word: &[Gen], eta: &Rational) -> BrauerElement {
    word.iter().fold(BrauerElement::one(), |acc, g| acc.mul(&BrauerElement::diagram(g.diagram()), eta))
}

/// `lhs = η^eta_power · rhs`.
#[derive(Clone, Copy, Debug)]
pub struct Relation {
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub eta_power: u32,
}

const fn rel(lhs: &'static str, rhs: &'static str) -> Relation {
    Relation { lhs, rhs, eta_power: 0 }
}

/// Defining relations, grouped as displayed; index-`i` families carry both
/// instances.
pub fn defining_relations() -> Vec<(&'static str, Vec<Relation>)> {
    vec![
        ("s_i^2=1", vec![rel("s1s1", "1"), rel("s2s2", "1")]),
        (
            "e_i^2=eta e_i",
            vec![Relation { lhs: "e1e1", rhs: "e1", eta_power: 1 }, Relation { lhs: "e2e2", rhs: "e2", eta_power: 1 }],
        ),
        ("s_ie_i=e_is_i=e_i", vec![rel("s1e1", "e1"), rel("e1s1", "e1"), rel("s2e2", "e2"), rel("e2s2", "e2")]),
        ("s1s2s1=s2s1s2", vec![rel("s1s2s1", "s2s1s2")]),
        ("e1e2e1=e1", vec![rel("e1e2e1", "e1")]),
        ("e2e1e2=e2", vec![rel("e2e1e2", "e2")]),
        ("s1e2e1=s2e1", vec![rel("s1e2e1", "s2e1")]),
        ("e2e1s2=e2s1", vec![rel("e2e1s2", "e2s1")]),
    ]
}

pub fn derived_relations() -> Vec<Relation> {
    vec![
        rel("s1s2e1", "e2e1"),
        rel("e2s1s2", "e2e1"),
        rel("s2e1s2", "s1e2s1"),
        rel("s2e1e2", "s1e2"),
        rel("e1e2s1", "e1s2"),
        rel("e1s2e1", "e1"),
        rel("e2s1e2", "e2"),
        rel("s2s1e2", "e1e2"),
        rel("e1s2s1", "e1e2"),
    ]
}

pub fn relation_holds(r: &Relation, eta: &Rational) -> bool {
    let lhs = eval_word(&parse_word(r.lhs), eta);
    let rhs = eval_word(&parse_word(r.rhs), eta).scale(&eta.pow(r.eta_power));
    lhs == rhs
}

/// Same relation with both words reversed, i.e. read in the opposite
/// composition order.
pub fn mirrored_relation_holds(r: &Relation, eta: &Rational) -> bool {
    let rev = |w: &str| {
        let mut g = parse_word(w);
        g.reverse();
        g
    };
    let lhs = eval_word(&rev(r.lhs), eta);
    let rhs = eval_word(&rev(r.rhs), eta).scale(&eta.pow(r.eta_power));
    lhs == rhs
}

/// Sample values standing in for an indeterminate η. Every basis product
/// has η-degree at most one, so agreement at three points is an identity.
pub fn eta_samples() -> [Rational; 3] {
    [q(-1, 1), q(3, 7), q(-5, 2)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub kind: &'static str,
    pub holds: bool,
    pub etas: Vec<String>,
}

pub fn verify_presentation(etas: &[Rational]) -> Vec<RelationCheck> {
    let etas_s: Vec<String> = etas.iter().map(ToString::to_string).collect();
    let mut out = Vec::new();
    for (name, family) in defining_relations() {
        let holds = family.iter().all(|r| etas.iter().all(|e| relation_holds(r, e)));
        out.push(RelationCheck { name: name.to_string(), kind: "defining", holds, etas: etas_s.clone() });
    }
    for r in derived_relations() {
        let holds = etas.iter().all(|e| relation_holds(&r, e));
        out.push(RelationCheck { name: format!("{}={}", r.lhs, r.rhs), kind: "derived", holds, etas: etas_s.clone() });
    }
    out
}

/// Fails when the relations only hold with the words read backwards.
pub fn check_convention(eta: &Rational) -> Result<(), String> {
    let all: Vec<Relation> = defining_relations().into_iter().flat_map(|(_, f)| f).chain(derived_relations()).collect();
    let direct = all.iter().all(|r| relation_holds(r, eta));
    let mirrored = all.iter().all(|r| mirrored_relation_holds(r, eta));
    match (direct, mirrored) {
        (true, _) => Ok(()),
        (false, true) => Err("composition convention error: relations hold only with words reversed".into()),
        (false, false) => Err("relations fail in both composition orders".into()),
    }
}

/// Left-regular representation in the diagram basis.
pub struct RegularRep {
    pub eta: Rational,
    pub basis: Vec<Diagram>,
    index: BTreeMap<Diagram, usize>,
}

impl RegularRep {
    pub fn new(eta: Rational) -> Self {
        let basis = enumerate_basis();
        let index = basis.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        RegularRep { eta, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, d: &Diagram) -> usize {
        self.index[d]
    }

    pub fn diagram_matrix(&self, d: &Diagram) -> MatrixQ {
        let n = self.dim();
        let mut m = MatrixQ::zeros(n, n);
        for (k, b) in self.basis.iter().enumerate() {
            let (prod, loops) = compose_raw(d, b);
            m.set(self.index[&prod], k, self.eta.pow(loops));
        }
        m
    }

    pub fn matrix(&self, e: &BrauerElement) -> MatrixQ {
        let n = self.dim();
        e.terms().iter().fold(MatrixQ::zeros(n, n), |acc, (d, c)| &acc + &self.diagram_matrix(d).scale(c))
    }

    pub fn gen(&self, g: Gen) -> MatrixQ {
        self.diagram_matrix(&g.diagram())
    }

    /// Checks `L(a)L(b) = L(ab)` for all basis pairs.
    pub fn is_multiplicative(&self) -> bool {
        let mats: Vec<MatrixQ> = self.basis.iter().map(|d| self.diagram_matrix(d)).collect();
        (0..self.dim() * self.dim()).into_par_iter().all(|ij| {
            let (i, j) = (ij / self.dim(), ij % self.dim());
            let prod = BrauerElement::diagram(self.basis[i]).mul(&BrauerElement::diagram(self.basis[j]), &self.eta);
            &mats[i] * &mats[j] == self.matrix(&prod)
        })
    }

    pub fn faithful_rank(&self) -> usize {
        let mats: Vec<MatrixQ> = self.basis.iter().map(|d| self.diagram_matrix(d)).collect();
        rank_of_stack(&mats)
    }

    /// `(product index, loops)` for every ordered pair.
    pub fn table(&self) -> Vec<Vec<(usize, u32)>> {
        self.basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| {
                        let (d, l) = compose_raw(a, b);
                        (self.index[&d], l)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Images of the Bannai–Ito generators in the regular representation.
#[derive(Clone, Debug)]
pub struct PsiImages {
    pub x: MatrixQ,
    pub y: MatrixQ,
    pub z: MatrixQ,
    pub w: MatrixQ,
    pub s1: MatrixQ,
    pub s2: MatrixQ,
    pub e1: MatrixQ,
    pub e2: MatrixQ,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BrauerError {
    #[error("the two expressions for the image of Z differ")]
    ZMismatch,
}

pub fn psi_images_at(reg: &RegularRep) -> Result<PsiImages, BrauerError> {
    let two = q(2, 1);
    let (s1, s2, e1, e2) = (reg.gen(Gen::S1), reg.gen(Gen::S2), reg.gen(Gen::E1), reg.gen(Gen::E2));
    let x = (&s1 + &e1).scale(&two);
    let y = (&s2 + &e2).scale(&two);
    let z = (&(&s2 * &(&s1 + &e1)) * &s2).scale(&two);
    let z_alt = (&(&s1 * &(&s2 + &e2)) * &s1).scale(&two);
    if z != z_alt {
        return Err(BrauerError::ZMismatch);
    }
    let w = &(&(&anticommutator(&x, &y).expect("square") - &x) - &y) - &z;
    Ok(PsiImages { x, y, z, w, s1, s2, e1, e2 })
}

pub fn psi_images() -> Result<PsiImages, BrauerError> {
    psi_images_at(&RegularRep::new(q(-1, 1)))
}

/// `∏ (a - r)` for integer `r`.
pub fn product_of_shifts(a: &MatrixQ, roots: &[i64]) -> MatrixQ {
    roots.iter().fold(MatrixQ::identity(a.rows()), |acc, r| &acc * &a.add_scalar(&Rational::from_int(-r)))
}

pub fn poly_from_int_roots(roots: &[i64]) -> PolyQ {
    let rs: Vec<Rational> = roots.iter().map(|&r| Rational::from_int(r)).collect();
    PolyQ::from_roots(&rs)
}

pub const Q1_ROOTS: [i64; 3] = [-2, 0, 2];
pub const OMEGA_ROOTS: [i64; 4] = [-4, 2, 8, 14];
pub const SHIFT_ROOTS: [i64; 7] = [-16, -10, -8, -6, 0, 2, 6];

/// Annihilating-polynomial check: `∏(a - r) = 0` and the minimal polynomial
/// divides it; reports the attained roots.
pub fn annihilation_check(name: &str, a: &MatrixQ, roots: &[i64]) -> Check {
    let target = poly_from_int_roots(roots);
    let mp = min_poly(a);
    let vanishes = product_of_shifts(a, roots).is_zero();
    let divides = mp.divides(&target);
    let attained = spectrum_with_scale(a, 1, 0).eigenvalues_i64().unwrap_or_default();
    Check::new(
        name,
        vanishes && divides,
        format!("min_poly = {mp}; attained roots {attained:?}"),
        serde_json::json!({ "min_poly": mp.to_string(), "attained_roots": attained, "product_roots": roots }),
    )
}

pub struct Theorem1Outcome {
    pub checks: Vec<Check>,
    pub closure: ClosureReport,
}

/// Homomorphism, quotient relations, surjectivity, dimension 15 and
/// centrality of ω, all in the regular representation at η = −1.
pub fn verify_theorem1() -> Result<Theorem1Outcome, BrauerError> {
    let psi = psi_images()?;
    let PsiImages { x, y, z, w, s1, s2, e1, e2 } = &psi;
    let mut checks = Vec::new();
    checks.push(Check::new(
        "Z: 2s2(s1+e1)s2 = 2s1(s2+e2)s1",
        true,
        "both expressions give the same 15x15 matrix",
        serde_json::Value::Null,
    ));
    for (name, ok) in bi_relation_results(x, y, z, w, w, w) {
        checks.push(Check::new(format!("BI {name}"), ok, "wX = wY = wZ = w", serde_json::Value::Null));
    }
    for (label, m) in [("X", x), ("Y", y), ("Z", z)] {
        checks.push(annihilation_check(&format!("{label}({label}^2-4)=0"), m, &Q1_ROOTS));
    }
    checks.push(annihilation_check("(w+4)(w-2)(w-8)(w-14)=0", w, &OMEGA_ROOTS));
    for (label, m) in [("X", x), ("Y", y), ("Z", z)] {
        let shifted = m - w;
        checks.push(annihilation_check(&format!("prod over {label}-w shifts = 0"), &shifted, &SHIFT_ROOTS));
    }
    let n = x.rows();
    let id = MatrixQ::identity(n);
    let quarter = q(1, 4);
    let half = q(1, 2);
    let sw = |a: &MatrixQ| &(&id + &a.scale(&half)) - &(a * a).scale(&quarter);
    let ew = |a: &MatrixQ| &(a * a).scale(&quarter) - &id;
    for (name, got, want) in [
        ("1+X/2-X^2/4 = s1", sw(x), s1),
        ("1+Y/2-Y^2/4 = s2", sw(y), s2),
        ("-1+X^2/4 = e1", ew(x), e1),
        ("-1+Y^2/4 = e2", ew(y), e2),
    ] {
        checks.push(Check::new(name, got == *want, "exact matrix equality", serde_json::Value::Null));
    }
    let mut closure =
        unital_closure_exact(&[x.clone(), y.clone()], &ClosureOptions::default()).expect("square generators");
    let basis = closure.basis.as_mut().expect("exact closure keeps its basis");
    checks.push(Check::new(
        "dim <X,Y> = 15",
        closure.report.dimension == 15,
        format!("unital closure dimension {}", closure.report.dimension),
        serde_json::json!({ "dimension": closure.report.dimension, "generations": closure.report.generations }),
    ));
    for (name, m) in [("s1", s1), ("s2", s2), ("e1", e1), ("e2", e2)] {
        let member = membership(m, basis).is_some();
        checks.push(Check::new(format!("{name} in <X,Y>"), member, "exact membership", serde_json::Value::Null));
    }
    let central = [x, y, z].iter().all(|g| commutator(w, g).expect("square").is_zero());
    checks.push(Check::new("w central", central, "[w,X]=[w,Y]=[w,Z]=0", serde_json::Value::Null));
    Ok(Theorem1Outcome { checks, closure: closure.report })
}

/// Evaluates the twelve reduction identities; returns `(name, holds)`.
pub fn verify_proof_relations(psi: &PsiImages) -> Vec<(&'static str, bool)> {
    proof_relations(psi, 2)
}

/// The `X^2YZ^2` identity with the `XZ^2` coefficient inside the `(w+4)/3`
/// bracket set to `c` (the displayed form has `c = 2`).
pub fn x2yz2_with_coefficient(psi: &PsiImages, c: i64) -> bool {
    proof_relations(psi, c)[9].1
}

fn proof_relations(psi: &PsiImages, c10: i64) -> Vec<(&'static str, bool)> {
    let PsiImages { x, y, z, w, .. } = psi;
    let n = x.rows();
    let id = MatrixQ::identity(n);
    let word = |s: &str| {
        s.chars().fold(id.clone(), |acc, c| match c {
            'X' => &acc * x,
            'Y' => &acc * y,
            'Z' => &acc * z,
            'w' => &acc * w,
            _ => unreachable!(),
        })
    };
    // c · ∏(w - r) · m
    let wp = |c: Rational, roots: &[i64], m: &MatrixQ| (&product_of_shifts(w, roots) * m).scale(&c);
    let lc = |terms: &[(i64, &str)]| {
        terms.iter().fold(MatrixQ::zeros(n, n), |acc, (c, s)| &acc + &word(s).scale(&Rational::from_int(*c)))
    };
    let sum = |ms: Vec<MatrixQ>| ms.into_iter().fold(MatrixQ::zeros(n, n), |acc, m| &acc + &m);
    let third = |k: i64| q(k, 3);
    let ninth = |k: i64| q(k, 9);

    let x2_2x = lc(&[(1, "XX"), (-2, "X")]);
    let z2_2z = lc(&[(1, "ZZ"), (-2, "Z")]);
    let y2_2y = lc(&[(1, "YY"), (-2, "Y")]);

    let res = vec![
        ("X^2Z", word("XXZ"), sum(vec![lc(&[(-1, "XXY"), (2, "XY"), (2, "XZ")]), wp(third(-1), &[2], &x2_2x)])),
        ("YZ^2", word("YZZ"), sum(vec![lc(&[(-1, "XZZ"), (2, "XZ"), (2, "YZ")]), wp(third(-1), &[2], &z2_2z)])),
        (
            "Y^2Z",
            word("YYZ"),
            sum(vec![lc(&[(-1, "XYY"), (2, "w"), (2, "X"), (2, "Y"), (2, "Z")]), wp(third(-1), &[2], &y2_2y)]),
        ),
        (
            "X^2YZ",
            word("XXYZ"),
            sum(vec![
                lc(&[(1, "XXYY"), (-2, "XYY"), (2, "XYZ")]),
                wp(third(1), &[2], &lc(&[(1, "XXY"), (-2, "XY"), (2, "XX"), (-4, "X")])),
            ]),
        ),
        ("X^2Z^2", word("XXZZ"), sum(vec![lc(&[(-1, "XXYY"), (2, "XYY"), (2, "XZZ")]), wp(ninth(1), &[8, 2], &x2_2x)])),
        (
            "XYZ^2",
            word("XYZZ"),
            sum(vec![
                lc(&[(1, "XXYY"), (-2, "XYY"), (4, "XY"), (2, "XYZ"), (-2, "XXY")]),
                wp(ninth(-1), &[2, 2], &x2_2x),
                wp(third(-1), &[-4], &lc(&[(1, "XZZ"), (-2, "XZ")])),
            ]),
        ),
        (
            "Y^2Z^2",
            word("YYZZ"),
            sum(vec![
                lc(&[
                    (1, "XXYY"),
                    (-4, "XYY"),
                    (4, "XY"),
                    (-2, "XXY"),
                    (-2, "XZZ"),
                    (4, "XZ"),
                    (4, "X"),
                    (4, "Y"),
                    (4, "Z"),
                    (4, "w"),
                ]),
                wp(ninth(-1), &[2, 2], &x2_2x),
                wp(ninth(1), &[8, 2], &z2_2z),
                wp(third(-2), &[2], &y2_2y),
            ]),
        ),
        (
            "XY^2Z",
            word("XYYZ"),
            sum(vec![
                lc(&[(-1, "XXYY"), (2, "XX"), (2, "XY"), (2, "XZ"), (2, "wX")]),
                wp(third(-1), &[2], &lc(&[(1, "XYY"), (-2, "XY")])),
            ]),
        ),
        (
            "X^2Y^2Z",
            word("XXYYZ"),
            sum(vec![
                lc(&[(-4, "XYY"), (4, "XY"), (4, "XZ"), (2, "wXX"), (8, "X")]),
                wp(third(-1), &[2], &lc(&[(1, "XXYY"), (-2, "XXY"), (2, "XX"), (-4, "X")])),
            ]),
        ),
        (
            "X^2YZ^2",
            word("XXYZZ"),
            sum(vec![
                lc(&[(4, "XYZ")]),
                wp(q(-1, 27), &[-4, 2, 8], &x2_2x),
                wp(third(1), &[-4], &lc(&[(1, "XXYY"), (-2, "XYY"), (c10, "XZZ"), (4, "XZ")])),
            ]),
        ),
        (
            "XY^2Z^2",
            word("XYYZZ"),
            sum(vec![
                lc(&[(-2, "XXYY"), (4, "XZZ"), (-4, "XZ"), (4, "XYY"), (-4, "XY"), (4, "XX"), (4, "wX")]),
                wp(ninth(1), &[-4, 14], &lc(&[(1, "XZZ"), (-2, "XZ")])),
                wp(third(-2), &[-4], &lc(&[(1, "XYY"), (-2, "XY")])),
            ]),
        ),
        (
            "X^2Y^2Z^2",
            word("XXYYZZ"),
            sum(vec![
                wp(ninth(2), &[-4, 14], &lc(&[(1, "XYY"), (-2, "XY"), (1, "XZZ"), (-2, "XZ")])),
                lc(&[(8, "XZZ"), (-8, "XY"), (-8, "XZ"), (8, "XX"), (8, "wX")]),
                wp(q(1, 81), &[8, 8, 2, -4], &x2_2x),
                wp(ninth(-1), &[-4, 8], &lc(&[(1, "XXYY"), (-2, "XXY")])),
            ]),
        ),
    ];
    res.into_iter().map(|(name, lhs, rhs)| (name, lhs == rhs)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientDim {
    pub omega: i64,
    pub dimension: usize,
    pub projector_rank: usize,
}

/// For each eigenvalue of ω, the dimension of `P·A` with `A = <X,Y>` and
/// `P` the spectral projector; also whether the projectors sum to one.
pub fn verify_remark_quotients(psi: &PsiImages) -> (Vec<QuotientDim>, bool) {
    let closure =
        unital_closure_exact(&[psi.x.clone(), psi.y.clone()], &ClosureOptions::default()).expect("square generators");
    let elements = closure.basis.expect("exact basis").element_matrices();
    let spec: Vec<Rational> = OMEGA_ROOTS.iter().map(|&r| Rational::from_int(r)).collect();
    let n = psi.w.rows();
    let mut total = MatrixQ::zeros(n, n);
    let dims = OMEGA_ROOTS
        .iter()
        .zip(&spec)
        .map(|(&w0, lam)| {
            let p = spectral_projector(&psi.w, lam, &spec).expect("distinct spectrum");
            total = &total + &p;
            let images: Vec<MatrixQ> = elements.iter().map(|m| &p * m).collect();
            QuotientDim { omega: w0, dimension: rank_of_stack(&images), projector_rank: rank(&p) }
        })
        .collect();
    (dims, total == MatrixQ::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        let b = enumerate_basis();
        assert_eq!(b.len(), 15);
        assert_eq!(b.iter().filter(|d| d.is_permutation()).count(), 6);
        assert_eq!(b.iter().filter(|d| d.top_arcs() == 1).count(), 9);
        for d in [Diagram::identity(), Diagram::s1(), Diagram::s2(), Diagram::e1(), Diagram::e2()] {
            assert!(b.contains(&d));
            assert_eq!(Diagram::from_partner(*d.partner()), Some(d));
        }
    }

    #[test]
    fn small_products() {
        let eta = q(-1, 1);
        assert_eq!(compose(&Diagram::e1(), &Diagram::e1(), &eta), BrauerElement::term(Diagram::e1(), q(-1, 1)));
        assert_eq!(compose(&Diagram::s1(), &Diagram::s1(), &eta), BrauerElement::one());
        let (e12, l1) = compose_raw(&Diagram::e1(), &Diagram::e2());
        let (e121, l2) = compose_raw(&e12, &Diagram::e1());
        assert_eq!((e121, l1 + l2), (Diagram::e1(), 0));
    }

    #[test]
    fn presentation_holds_generically() {
        let checks = verify_presentation(&eta_samples());
        assert_eq!(checks.len(), 17);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        assert!(check_convention(&q(3, 7)).is_ok());
    }

    #[test]
    fn flip_reverses_products() {
        for a in enumerate_basis() {
            for b in enumerate_basis() {
                let (ab, l) = compose_raw(&a, &b);
                let (ba, l2) = compose_raw(&b.flip(), &a.flip());
                assert_eq!((ab.flip(), l), (ba, l2));
            }
        }
    }

    #[test]
    fn regular_representation() {
        let reg = RegularRep::new(q(-1, 1));
        assert_eq!(reg.diagram_matrix(&Diagram::identity()), MatrixQ::identity(15));
        let e1 = reg.gen(Gen::E1);
        let k = reg.index_of(&Diagram::e1());
        for i in 0..15 {
            let want = if i == k { q(-1, 1) } else { q(0, 1) };
            assert_eq!(*e1.get(i, k), want);
        }
        assert_eq!(reg.faithful_rank(), 15);
        assert!(reg.is_multiplicative());
    }

    #[test]
    fn psi_spectra() {
        let psi = psi_images().unwrap();
        assert_eq!(min_poly(&psi.x), PolyQ::from_ints(&[0, -4, 0, 1]));
        let w = spectrum_with_scale(&psi.w, 1, 0).eigenvalues_i64().unwrap();
        assert!(w.iter().all(|r| OMEGA_ROOTS.contains(r)));
        let xw = spectrum_with_scale(&(&psi.x - &psi.w), 1, 0).eigenvalues_i64().unwrap();
        assert!(xw.iter().all(|r| SHIFT_ROOTS.contains(r)));
    }

    #[test]
    fn theorem_checks_pass() {
        let out = verify_theorem1().unwrap();
        for c in &out.checks {
            assert!(c.holds(), "{} failed: {}", c.name, c.details);
        }
        assert_eq!(out.closure.dimension, 15);
    }

    #[test]
    fn proof_relations_as_displayed() {
        let psi = psi_images().unwrap();
        let res = verify_proof_relations(&psi);
        assert_eq!(res.len(), 12);
        for (name, ok) in res {
            assert_eq!(ok, name != "X^2YZ^2", "{name}");
        }
    }

    #[test]
    fn x2yz2_holds_with_negated_xz2_term() {
        let psi = psi_images().unwrap();
        assert!(x2yz2_with_coefficient(&psi, -2));
        assert!(!x2yz2_with_coefficient(&psi, 2));
        let others: Vec<bool> = proof_relations(&psi, -2).iter().map(|r| r.1).collect();
        assert!(others.iter().all(|&ok| ok));
    }

    #[test]
    fn remark_dimensions() {
        let psi = psi_images().unwrap();
        let (dims, resolves) = verify_remark_quotients(&psi);
        let d: Vec<usize> = dims.iter().map(|d| d.dimension).collect();
        assert_eq!(d, vec![4, 1, 9, 1]);
        assert!(resolves);
        assert_eq!(dims[2].projector_rank, 9);
    }
}
