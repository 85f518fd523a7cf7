//! Scalar fields used by the elimination kernels: exact rationals and prime
//! fields with 62-bit moduli (Montgomery form).

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::rational::Rational;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        Rational::add_mul(self, a, b)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        Rational::sub_mul(self, a, b)
    }
}

/// 2^62 - 57
pub const PRIME_A: u64 = 4_611_686_018_427_387_847;
/// 2^62 - 87
pub const PRIME_B: u64 = 4_611_686_018_427_387_817;

const fn neg_inverse_mod_2_64(p: u64) -> u64 {
    // Newton iteration: each step doubles the number of correct low bits.
    let mut inv: u64 = p;
    let mut i = 0;
    while i < 6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
}

const fn r_squared(p: u64) -> u64 {
    let r = ((1u128 << 64) % p as u128) as u64;
    ((r as u128 * r as u128) % p as u128) as u64
}

/// Element of GF(P) for an odd prime `P < 2^62`, stored in Montgomery form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const NEG_INV: u64 = neg_inverse_mod_2_64(P);
    const R2: u64 = r_squared(P);

    #[inline]
    fn redc(t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(Self::NEG_INV);
        let u = ((t + m as u128 * P as u128) >> 64) as u64;
        if u >= P {
            u - P
        } else {
            u
        }
    }

    pub fn new(v: u64) -> Self {
        Fp(Self::redc((v % P) as u128 * Self::R2 as u128))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(v.rem_euclid(P as i64) as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(P);
        let r = ((v % &p) + &p) % &p;
        Self::new(r.to_u64().expect("residue fits"))
    }

    /// Reduction of a rational; `None` when `P` divides the denominator.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let (n, d) = match r.as_small() {
            Some((n, d)) => (Self::from_i64(n), Self::from_i64(d)),
            None => (Self::from_bigint(&r.numer()), Self::from_bigint(&r.denom())),
        };
        d.inv().map(|di| n.mul(&di))
    }

    pub fn value(self) -> u64 {
        Self::redc(self.0 as u128)
    }

    pub fn modulus() -> u64 {
        P
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = <Self as Field>::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl<const P: u64> Field for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Self::new(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Fp(Self::redc(self.0 as u128 * rhs.0 as u128))
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    #[inline]
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

pub type FpA = Fp<PRIME_A>;
pub type FpB = Fp<PRIME_B>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn montgomery_round_trip() {
        for v in [0u64, 1, 2, 12345, PRIME_A - 1, u64::MAX] {
            assert_eq!(FpA::new(v).value(), v % PRIME_A);
        }
        let a = FpA::new(PRIME_A - 2);
        let b = FpA::new(3);
        assert_eq!(a.mul(&b).value(), ((PRIME_A as u128 - 2) * 3 % PRIME_A as u128) as u64);
        assert_eq!(a.add(&b).value(), 1);
        assert_eq!(b.sub(&a).value(), 5);
    }

    #[test]
    fn inverses() {
        for v in [1u64, 2, 3, 1 << 40, PRIME_B - 1] {
            let x = FpB::new(v);
            assert_eq!(x.mul(&x.inv().unwrap()), FpB::one());
        }
        assert!(FpB::zero().inv().is_none());
    }

    #[test]
    fn rational_reduction() {
        let half = FpA::from_rational(&q(1, 2)).unwrap();
        assert_eq!(half.add(&half), FpA::one());
        let m = FpA::from_rational(&q(-3, 8)).unwrap();
        assert_eq!(m.mul(&FpA::from_i64(8)), FpA::from_i64(-3));
    }
}
