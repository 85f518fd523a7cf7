//! Univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::MatrixQ;
use super::rational::Rational;

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ { coeffs: vec![Rational::one()] }
    }

    /// `x - r`
    pub fn linear(root: &Rational) -> Self {
        PolyQ { coeffs: vec![-root, Rational::one()] }
    }

    /// `∏ (x - r)` over the given roots, with multiplicity.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip().expect("nonzero leading coefficient");
                PolyQ { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &MatrixQ) -> MatrixQ {
        assert!(a.is_square(), "polynomial evaluation needs a square matrix");
        let n = a.rows();
        let mut acc = MatrixQ::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = (&acc * a).add_scalar(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().recip().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i].sub_mul(&c, dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Integer coefficient vector with the same roots (denominators cleared).
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        self.coeffs
            .iter()
            .map(|c| {
                let scaled = c.to_big() * num_rational::BigRational::from_integer(lcm.clone());
                scaled.to_integer()
            })
            .collect()
    }
}

fn ceil_ratio(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

fn ceil_nth_root(x: &BigInt, n: u32) -> BigInt {
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) < *x {
        r + 1
    } else {
        r
    }
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(x - r)`; assumes `r` is a root.
fn deflate(coeffs: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + carry * r;
        out[k] = carry.clone();
    }
    out
}

/// Integer roots with multiplicity, ascending.
///
/// Candidates are bounded by twice the Fujiwara bound and must divide the
/// trailing nonzero coefficient; each hit is deflated out exactly.
pub fn integer_roots(p: &PolyQ) -> Vec<i64> {
    assert!(!p.is_zero(), "integer_roots of the zero polynomial");
    let mut coeffs = p.integer_coefficients();
    let mut roots = Vec::new();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    roots.extend(std::iter::repeat_n(0, zeros));
    coeffs.drain(..zeros);
    while coeffs.len() > 1 {
        let n = coeffs.len() - 1;
        let lead = coeffs[n].abs();
        let mut bound = BigInt::zero();
        for i in 1..=n {
            let mut a = coeffs[n - i].abs();
            if i == n {
                a = ceil_ratio(&a, &BigInt::from(2));
            }
            let b = ceil_nth_root(&ceil_ratio(&a, &lead), i as u32);
            if b > bound {
                bound = b;
            }
        }
        let bound = i64::try_from(bound * 2).expect("root bound fits in i64");
        let trailing = coeffs[0].clone();
        let mut found = None;
        for c in 1..=bound {
            for cand in [-c, c] {
                let cb = BigInt::from(cand);
                if (&trailing % &cb).is_zero() && eval_int(&coeffs, &cb).is_zero() {
                    found = Some(cand);
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(r) => {
                coeffs = deflate(&coeffs, &BigInt::from(r));
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort_unstable();
    roots
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
