use std::fmt;

use smallvec::SmallVec;

use super::ring::Ring;

/// Polynomial over GF(2), bit `k` holding the coefficient of `t^k`.
///
/// The word vector never ends in a zero word, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    words: SmallVec<[u64; 2]>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { words: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = F2Poly::zero();
        p.flip(k);
        p
    }

    /// Polynomial with ones at the listed exponents (repeats cancel).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = F2Poly::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_exponents(bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn flip(&mut self, k: usize) {
        let (w, b) = (k / 64, k % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1u64 << b;
        self.trim();
    }

    pub fn coeff(&self, k: usize) -> bool {
        let (w, b) = (k / 64, k % 64);
        self.words.get(w).is_some_and(|x| (x >> b) & 1 == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, w) in self.words.iter().enumerate() {
            let mut w = *w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(short.words.iter()) {
            *a ^= *b;
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return F2Poly::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(0, self.words.len() + ws + 1);
        for (i, w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    /// Drops the lowest `k` coefficients and shifts down.
    pub fn shr(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return F2Poly::zero();
        }
        let n = self.words.len() - ws;
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(0, n);
        for i in 0..n {
            let lo = self.words[i + ws] >> bs;
            let hi = if bs != 0 && i + ws + 1 < self.words.len() { self.words[i + ws + 1] << (64 - bs) } else { 0 };
            words[i] = lo | hi;
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return F2Poly::zero();
        }
        let (a, b) = if self.weight() <= other.weight() { (self, other) } else { (other, self) };
        let mut acc = F2Poly::zero();
        for e in a.exponents() {
            acc = acc.add(&b.shl(e));
        }
        acc
    }

    /// Keeps coefficients of exponent `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        let mut p = self.clone();
        let full = k / 64;
        if p.words.len() > full {
            let rem = k % 64;
            if rem == 0 {
                p.words.truncate(full);
            } else {
                p.words.truncate(full + 1);
                p.words[full] &= (1u64 << rem) - 1;
            }
        }
        p.trim();
        p
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        let mut q = F2Poly::zero();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            q.flip(s);
            r = r.add(&d.shl(s));
        }
        (q, r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = F2Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluation at a GF(2) point.
    pub fn eval(&self, x: bool) -> bool {
        if x {
            self.weight() % 2 == 1
        } else {
            self.coeff(0)
        }
    }

    /// Parses strings like `0`, `1`, `t`, `t^3`, `t^0+t^3`, `1+t+t^2`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut p = F2Poly::zero();
        for (e, c) in parse_terms(s)? {
            if e < 0 {
                return Err(format!("negative exponent in polynomial '{s}'"));
            }
            if c {
                p.flip(e as usize);
            }
        }
        Ok(p)
    }
}

/// Shared term parser for the `t^k` notation. Returns (exponent, present) pairs.
pub(crate) fn parse_terms(s: &str) -> Result<Vec<(i64, bool)>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty ring element".into());
    }
    let mut out = Vec::new();
    for term in s.split('+') {
        match term {
            "0" => out.push((0, false)),
            "1" => out.push((0, true)),
            "t" => out.push((1, true)),
            _ => {
                let exp = term
                    .strip_prefix("t^")
                    .ok_or_else(|| format!("bad term '{term}' in '{s}'"))?;
                let exp = exp.trim_start_matches('(').trim_end_matches(')');
                let e: i64 = exp.parse().map_err(|_| format!("bad exponent '{exp}' in '{s}'"))?;
                out.push((e, true));
            }
        }
    }
    Ok(out)
}

pub(crate) fn format_terms(f: &mut fmt::Formatter<'_>, exps: &[i64]) -> fmt::Result {
    if exps.is_empty() {
        return f.write_str("0");
    }
    for (i, e) in exps.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        write!(f, "t^{e}")?;
    }
    Ok(())
}

impl fmt::Display for F2Poly {
    /// Canonical text form: `t^0+t^3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<i64> = self.exponents().into_iter().map(|e| e as i64).collect();
        format_terms(f, &exps)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

impl Ring for F2Poly {
    const NAME: &'static str = "F2[t]";

    fn zero() -> Self {
        F2Poly::zero()
    }
    fn one() -> Self {
        F2Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.words.is_empty()
    }
    fn is_unit(&self) -> bool {
        self.is_one()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn homogeneous_degree(&self) -> Result<Option<i64>, ()> {
        match self.weight() {
            0 => Ok(None),
            1 => Ok(Some(self.degree().unwrap() as i64)),
            _ => Err(()),
        }
    }
    fn euclid_size(&self) -> Option<u64> {
        Some(self.degree().map_or(0, |d| d as u64))
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        Some(F2Poly::div_rem(self, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = F2Poly::parse("1+t").unwrap();
        assert_eq!(a.mul(&a), F2Poly::parse("1+t^2").unwrap());
        let (q, r) = F2Poly::parse("t^3+1").unwrap().div_rem(&a);
        assert!(r.is_zero());
        assert_eq!(q, F2Poly::parse("1+t+t^2").unwrap());
        assert_eq!(F2Poly::monomial(130).degree(), Some(130));
        assert_eq!(F2Poly::monomial(130).shr(129), F2Poly::monomial(1));
        assert_eq!(F2Poly::parse("t^0+t^3").unwrap().to_string(), "t^0+t^3");
        assert_eq!(F2Poly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_and_truncate() {
        let a = F2Poly::parse("1+t^2").unwrap();
        let b = F2Poly::parse("t+t^2").unwrap();
        assert_eq!(a.gcd(&b), F2Poly::parse("1+t").unwrap());
        assert_eq!(F2Poly::parse("1+t+t^70").unwrap().truncate(64), F2Poly::parse("1+t").unwrap());
    }
}
