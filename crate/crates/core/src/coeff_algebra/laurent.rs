use std::fmt;

use super::poly::{format_terms, parse_terms, F2Poly};
use super::ring::Ring;

/// Laurent polynomial `t^shift * body` over GF(2).
///
/// `body` has constant term 1 unless the element is zero, in which case
/// `shift` is 0. Multiplying by `t` only touches `shift`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Laurent {
    shift: i64,
    body: F2Poly,
}

impl F2Laurent {
    pub fn zero() -> Self {
        F2Laurent { shift: 0, body: F2Poly::zero() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: i64) -> Self {
        F2Laurent { shift: k, body: F2Poly::one() }
    }

    pub fn new(shift: i64, poly: F2Poly) -> Self {
        match poly.valuation() {
            None => Self::zero(),
            Some(v) => F2Laurent { shift: shift + v as i64, body: poly.shr(v) },
        }
    }

    pub fn from_poly(p: &F2Poly) -> Self {
        Self::new(0, p.clone())
    }

    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        let exps: Vec<i64> = exps.into_iter().collect();
        let Some(lo) = exps.iter().copied().min() else {
            return Self::zero();
        };
        Self::new(lo, F2Poly::from_exponents(exps.iter().map(|e| (e - lo) as usize)))
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Lowest exponent, `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.body.degree().map(|d| self.shift + d as i64)
    }

    /// Distance between the highest and lowest exponent.
    pub fn span(&self) -> u64 {
        self.body.degree().unwrap_or(0) as u64
    }

    /// The normalized polynomial with minimum exponent 0.
    pub fn body(&self) -> &F2Poly {
        &self.body
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.body.exponents().into_iter().map(|e| e as i64 + self.shift).collect()
    }

    pub fn coeff(&self, k: i64) -> bool {
        k >= self.shift && self.body.coeff((k - self.shift) as usize)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let a = self.body.shl((self.shift - lo) as usize);
        let b = other.body.shl((other.shift - lo) as usize);
        Self::new(lo, a.add(&b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        F2Laurent { shift: self.shift + other.shift, body: self.body.mul(&other.body) }
    }

    pub fn mul_t(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        F2Laurent { shift: self.shift + k, body: self.body.clone() }
    }

    /// Image under the ring automorphism `t -> t^{-1}`.
    pub fn conjugate(&self) -> Self {
        Self::from_exponents(self.exponents().into_iter().map(|e| -e))
    }

    /// Parses the `t^k` notation with possibly negative exponents.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut exps: Vec<i64> = Vec::new();
        for (e, c) in parse_terms(s)? {
            if c {
                exps.push(e);
            }
        }
        Ok(Self::from_exponents(exps))
    }
}

impl fmt::Display for F2Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.exponents())
    }
}

impl fmt::Debug for F2Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Laurent({self})")
    }
}

impl Ring for F2Laurent {
    const NAME: &'static str = "F2[t,t^-1]";

    fn zero() -> Self {
        F2Laurent::zero()
    }
    fn one() -> Self {
        F2Laurent::one()
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
    fn is_unit(&self) -> bool {
        self.body.is_one()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn homogeneous_degree(&self) -> Result<Option<i64>, ()> {
        if self.is_zero() {
            Ok(None)
        } else if self.body.is_one() {
            Ok(Some(self.shift))
        } else {
            Err(())
        }
    }
    fn euclid_size(&self) -> Option<u64> {
        Some(self.span())
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some((Self::zero(), Self::zero()));
        }
        let (q, r) = self.body.div_rem(&d.body);
        let quot = Self::new(self.shift - d.shift, q);
        let rem = Self::new(self.shift, r);
        Some((quot, rem))
    }
    fn normal_unit(&self) -> Self {
        if self.is_zero() {
            Self::one()
        } else {
            Self::monomial(-self.shift)
        }
    }
}
