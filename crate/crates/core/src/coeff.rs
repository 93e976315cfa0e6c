//! Exact coefficient arithmetic.
//!
//! Two rings are supported: prime fields `F_p` (with `p < 2^32`, so that a
//! product of two canonical residues fits in a `u64`) and the arbitrary
//! precision integers. Signs are the whole difficulty of the calculus built on
//! top of this module, so note that over `F_2` every sign collapses to `+1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring `K` of coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    PrimeField(Prime),
    Integers,
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        Prime::new(p).map(CoefficientRing::PrimeField)
    }

    pub fn integers() -> Self {
        CoefficientRing::Integers
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientRing::PrimeField(p) => Some(p.get()),
            CoefficientRing::Integers => None,
        }
    }

    /// Canonical representative of an arbitrary integer.
    pub fn reduce(&self, v: &BigInt) -> BigInt {
        match self {
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(p.get());
                let r = v % &p;
                if r.is_negative() {
                    r + p
                } else {
                    r
                }
            }
            CoefficientRing::Integers => v.clone(),
        }
    }

    pub fn element(&self, v: impl Into<BigInt>) -> Coefficient {
        Coefficient {
            ring: *self,
            value: self.reduce(&v.into()),
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.element(0)
    }

    pub fn one(&self) -> Coefficient {
        self.element(1)
    }

    /// Uniform sample from `{0, …, p-1}`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Coefficient> {
        match self {
            CoefficientRing::PrimeField(p) => Ok(self.element(rng.random_range(0..p.get()))),
            CoefficientRing::Integers => Err(Error::UnsupportedRing(*self)),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::PrimeField(p) => write!(f, "GF({})", p.get()),
            CoefficientRing::Integers => f.write_str("ZZ"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ZZ" {
            return Ok(CoefficientRing::Integers);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Decode(format!("unknown ring `{s}`")))?;
        let p = inner
            .parse::<u64>()
            .map_err(|e| Error::Decode(format!("bad modulus `{inner}`: {e}")))?;
        CoefficientRing::prime_field(p)
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of a [`CoefficientRing`] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    ring: CoefficientRing,
    value: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

impl Coefficient {
    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_ring(&self, other: &Coefficient) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn add(&self, other: &Coefficient) -> Result<Coefficient> {
        self.same_ring(other)?;
        Ok(self.ring.element(&self.value + &other.value))
    }

    pub fn sub(&self, other: &Coefficient) -> Result<Coefficient> {
        self.same_ring(other)?;
        Ok(self.ring.element(&self.value - &other.value))
    }

    pub fn mul(&self, other: &Coefficient) -> Result<Coefficient> {
        self.same_ring(other)?;
        Ok(self.ring.element(&self.value * &other.value))
    }

    pub fn neg(&self) -> Coefficient {
        self.ring.element(-&self.value)
    }

    pub fn inv(&self) -> Result<Coefficient> {
        let p = match self.ring {
            CoefficientRing::PrimeField(p) => p.get(),
            CoefficientRing::Integers => return Err(Error::InverseUnavailable(self.ring)),
        };
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2) = a^-1.
        let a = self.value.to_u64().expect("canonical residue fits u64");
        Ok(self.ring.element(pow_mod(a, p - 2, p)))
    }

    /// Dispatch form of the ring operations. `b` is ignored for unary ops.
    pub fn apply(&self, b: &Coefficient, op: RingOp) -> Result<Coefficient> {
        match op {
            RingOp::Add => self.add(b),
            RingOp::Sub => self.sub(b),
            RingOp::Mul => self.mul(b),
            RingOp::Neg => Ok(self.neg()),
            RingOp::Inv => self.inv(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// `(-1)^e` for a signed exponent; only the parity of `e` matters.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Scalar arithmetic used by the dense kernels. Implemented for residues
/// modulo a small prime (`u64`) and for big integers.
pub(crate) trait Arith: Copy + Send + Sync {
    type E: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(self) -> Self::E;
    fn lift_i64(self, v: i64) -> Self::E;
    fn lift_big(self, v: &BigInt) -> Self::E;
    fn to_big(self, v: &Self::E) -> BigInt;
    fn is_zero(self, v: &Self::E) -> bool;
    fn neg(self, a: &Self::E) -> Self::E;
    /// `acc += a * b`
    fn mul_add(self, acc: &mut Self::E, a: &Self::E, b: &Self::E);
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;

    fn zero(self) -> u64 {
        0
    }
    fn lift_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
    fn lift_big(self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits u64")
    }
    fn to_big(self, v: &u64) -> BigInt {
        BigInt::from(*v)
    }
    fn is_zero(self, v: &u64) -> bool {
        *v == 0
    }
    fn neg(self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn mul_add(self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b % self.0) % self.0;
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Zz;

impl Arith for Zz {
    type E = BigInt;

    fn zero(self) -> BigInt {
        BigInt::zero()
    }
    fn lift_i64(self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn lift_big(self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn to_big(self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn is_zero(self, v: &BigInt) -> bool {
        v.is_zero()
    }
    fn neg(self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul_add(self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> CoefficientRing {
        CoefficientRing::prime_field(p).unwrap()
    }

    #[test]
    fn add_wraps_modulo_p() {
        let r = f(7);
        assert_eq!(r.element(3).add(&r.element(5)).unwrap(), r.element(1));
    }

    #[test]
    fn neg_one_in_f97() {
        let r = f(97);
        assert_eq!(r.element(1).neg().value(), &BigInt::from(96));
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        let r = f(7);
        // brute force oracle
        let expected = (1..7u64).find(|x| 3 * x % 7 == 1).unwrap();
        assert_eq!(expected, 5);
        assert_eq!(r.element(3).inv().unwrap(), r.element(expected));
    }

    #[test]
    fn composite_moduli_rejected() {
        assert_eq!(CoefficientRing::prime_field(91), Err(Error::NotPrime(91)));
        assert_eq!(CoefficientRing::prime_field(1), Err(Error::NotPrime(1)));
        assert!(CoefficientRing::prime_field(2).is_ok());
        assert!(CoefficientRing::prime_field(65537).is_ok());
    }

    #[test]
    fn error_paths() {
        let a = f(7).element(3);
        let b = f(11).element(3);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(..))));
        assert_eq!(f(7).zero().inv(), Err(Error::DivisionByZero));
        let z = CoefficientRing::integers();
        assert!(matches!(
            z.element(2).inv(),
            Err(Error::InverseUnavailable(_))
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(z.sample(&mut rng), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn integer_arithmetic_is_exact() {
        let z = CoefficientRing::integers();
        let big = z.element(BigInt::from(u64::MAX));
        let sq = big.mul(&big).unwrap();
        assert_eq!(
            sq.value(),
            &(BigInt::from(u64::MAX) * BigInt::from(u64::MAX))
        );
        assert_eq!(z.element(-5).value(), &BigInt::from(-5));
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let r = f(97);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| r.sample(&mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        let two = f(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let v = two.sample(&mut rng).unwrap();
            assert!(v.value() == &BigInt::from(0) || v.value() == &BigInt::from(1));
        }
    }

    #[test]
    fn sampling_frequencies_within_five_sigma() {
        let r = f(97);
        let n = 10_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut counts = vec![0usize; 97];
        for _ in 0..n {
            let v = r.sample(&mut rng).unwrap().value().to_usize().unwrap();
            counts[v] += 1;
        }
        let p = 1.0 / 97.0;
        let mean = n as f64 * p;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for (k, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - mean).abs() <= 5.0 * sigma,
                "residue {k}: count {c}, mean {mean}"
            );
        }
        // chi-square with 96 dof: mean 96, sd ~13.9; 5 sigma bound.
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - mean).powi(2) / mean)
            .sum();
        assert!(chi2 < 96.0 + 5.0 * (2.0f64 * 96.0).sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn ring_round_trips_through_text() {
        for r in [f(97), f(2), CoefficientRing::integers()] {
            assert_eq!(r.to_string().parse::<CoefficientRing>().unwrap(), r);
        }
        assert!("GF(91)".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn apply_dispatches() {
        let r = f(7);
        let (a, b) = (r.element(3), r.element(5));
        assert_eq!(a.apply(&b, RingOp::Sub).unwrap(), r.element(5));
        assert_eq!(a.apply(&b, RingOp::Mul).unwrap(), r.element(1));
        assert_eq!(a.apply(&b, RingOp::Inv).unwrap(), r.element(5));
    }

    #[test]
    fn sign_parity_handles_negative_exponents() {
        assert_eq!(sign(-1), -1);
        assert_eq!(sign(-2), 1);
        assert_eq!(sign(0), 1);
        assert_eq!(sign(3), -1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem() -> impl Strategy<Value = (u64, i64)> {
            prop::sample::select(vec![97u64, 101, 65537]).prop_flat_map(|p| (Just(p), any::<i64>()))
        }

        proptest! {
            #[test]
            fn field_axioms((p, a) in elem(), b in any::<i64>(), c in any::<i64>()) {
                let r = CoefficientRing::prime_field(p).unwrap();
                let (a, b, c) = (r.element(a), r.element(b), r.element(c));
                prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                if !a.is_zero() {
                    prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), r.one());
                }
            }

            #[test]
            fn canonical_form_is_unique((p, a) in elem(), k in -5i64..5) {
                let r = CoefficientRing::prime_field(p).unwrap();
                let shifted = BigInt::from(a) + BigInt::from(k) * BigInt::from(p);
                prop_assert_eq!(r.element(a), r.element(shifted));
            }
        }
    }
}
