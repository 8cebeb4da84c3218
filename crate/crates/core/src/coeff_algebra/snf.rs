//! Smith normal form over the Euclidean rings GF(2), F2[t] and F2[t,t^-1].

use super::laurent::F2Laurent;
use super::matrix::RingMatrix;
use super::poly::F2Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `u * m * v` is diagonal with `factors` on the first `rank` diagonal slots.
#[derive(Clone, Debug)]
pub struct Snf<R: Ring> {
    pub u: RingMatrix<R>,
    pub v: RingMatrix<R>,
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<R>,
}

impl<R: Ring> Snf<R> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix `u * m * v` as predicted by the factors.
    pub fn diagonal(&self) -> RingMatrix<R> {
        let mut d = RingMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, f) in self.factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// All `min(rows, cols)` diagonal entries, zeros included.
    pub fn padded_factors(&self) -> Vec<R> {
        let n = self.u.rows().min(self.v.cols());
        let mut out = self.factors.clone();
        out.resize(n, R::zero());
        out
    }
}

fn require_euclidean<R: Ring>() -> Result<()> {
    if R::is_pid() {
        Ok(())
    } else {
        Err(Error::NotPid { ring: R::NAME })
    }
}

struct Reducer<R: Ring> {
    a: RingMatrix<R>,
    u: Option<RingMatrix<R>>,
    v: Option<RingMatrix<R>>,
}

impl<R: Ring> Reducer<R> {
    fn size(x: &R) -> u64 {
        x.euclid_size().expect("euclidean ring")
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &R) {
        self.a.add_row_multiple(dst, src, q);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, q);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &R) {
        self.a.add_col_multiple(dst, src, q);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, q);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R) {
        self.a.scale_row(i, unit);
        if let Some(u) = &mut self.u {
            u.scale_row(i, unit);
        }
    }

    fn min_entry(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let s = Self::size(x);
                if best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, i, j));
                    if s == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(mut self) -> (Vec<R>, Option<RingMatrix<R>>, Option<RingMatrix<R>>) {
        let n = self.a.rows().min(self.a.cols());
        let mut factors = Vec::new();
        for k in 0..n {
            // Re-pivoting on the smallest entry of the whole trailing block
            // each pass keeps entry degrees from blowing up.
            while let Some((pi, pj)) = self.min_entry(k) {
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let mut left = false;
                for i in k + 1..self.a.rows() {
                    if self.a.get(i, k).is_zero() {
                        continue;
                    }
                    let (q, r) = self.a.get(i, k).div_rem(self.a.get(k, k)).expect("euclidean");
                    self.add_row(i, k, &q);
                    left |= !r.is_zero();
                }
                for j in k + 1..self.a.cols() {
                    if self.a.get(k, j).is_zero() {
                        continue;
                    }
                    let (q, r) = self.a.get(k, j).div_rem(self.a.get(k, k)).expect("euclidean");
                    self.add_col(j, k, &q);
                    left |= !r.is_zero();
                }
                if left {
                    continue;
                }
                let bad = (k + 1..self.a.rows()).find(|&i| {
                    (k + 1..self.a.cols()).any(|j| {
                        let x = self.a.get(i, j);
                        !x.is_zero() && !x.div_rem(self.a.get(k, k)).expect("euclidean").1.is_zero()
                    })
                });
                match bad {
                    Some(i) => self.add_row(k, i, &R::one()),
                    None => break,
                }
            }
            if self.a.get(k, k).is_zero() {
                break;
            }
            let unit = self.a.get(k, k).normal_unit();
            self.scale_row(k, &unit);
            factors.push(self.a.get(k, k).clone());
        }
        (factors, self.u, self.v)
    }
}

/// Smith normal form with transforms. Errors on a non-Euclidean ring.
pub fn snf<R: Ring>(m: &RingMatrix<R>) -> Result<Snf<R>> {
    require_euclidean::<R>()?;
    let red = Reducer {
        a: m.clone(),
        u: Some(RingMatrix::identity(m.rows())),
        v: Some(RingMatrix::identity(m.cols())),
    };
    let (factors, u, v) = red.run();
    Ok(Snf { u: u.unwrap(), v: v.unwrap(), factors })
}

/// Nonzero invariant factors only, without tracking transforms.
pub fn invariant_factors<R: Ring>(m: &RingMatrix<R>) -> Result<Vec<R>> {
    require_euclidean::<R>()?;
    Ok(Reducer { a: m.clone(), u: None, v: None }.run().0)
}

pub fn snf_f2t(m: &RingMatrix<F2Poly>) -> Snf<F2Poly> {
    snf(m).expect("F2[t] is euclidean")
}

pub fn snf_laurent(m: &RingMatrix<F2Laurent>) -> Snf<F2Laurent> {
    snf(m).expect("F2[t,t^-1] is euclidean")
}

/// Rewrites a list of cyclic orders `R/(a_i)` as a divisibility chain,
/// dropping units.
pub fn normalize_torsion<R: Ring>(orders: &[R]) -> Vec<R> {
    let nz: Vec<R> = orders.iter().filter(|x| !x.is_zero()).cloned().collect();
    let d = RingMatrix::diagonal(&nz);
    invariant_factors(&d).expect("torsion normalization needs a PID").into_iter().filter(|f| !f.is_unit()).collect()
}

/// `q` with `p * q = 1 mod t^(order+1)`.
pub fn laurent_inverse_series(p: &F2Poly, order: usize) -> Result<F2Poly> {
    if !p.coeff(0) {
        return Err(Error::NotInvertibleSeries(p.to_string()));
    }
    let mut q = F2Poly::one();
    for k in 1..=order {
        let mut c = false;
        for i in 1..=k {
            c ^= p.coeff(i) & q.coeff(k - i);
        }
        if c {
            q.flip(k);
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_algebra::ring::Gf2;

    fn p(s: &str) -> F2Poly {
        F2Poly::parse(s).unwrap()
    }

    #[test]
    fn small_snf_examples() {
        let id = RingMatrix::<F2Poly>::identity(3);
        assert_eq!(snf_f2t(&id).padded_factors(), vec![F2Poly::one(); 3]);
        let t = RingMatrix::from_rows(vec![vec![p("t")]]);
        assert_eq!(snf_f2t(&t).factors, vec![p("t")]);
        let m = RingMatrix::from_rows(vec![vec![p("1"), p("t")], vec![p("t"), p("t^2")]]);
        let s = snf_f2t(&m);
        assert_eq!(s.padded_factors(), vec![p("1"), p("0")]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.diagonal());
    }

    #[test]
    fn laurent_examples() {
        let l = |s: &str| F2Laurent::parse(s).unwrap();
        assert_eq!(snf_laurent(&RingMatrix::from_rows(vec![vec![l("t^-1")]])).factors, vec![l("1")]);
        assert_eq!(snf_laurent(&RingMatrix::from_rows(vec![vec![l("t+1")]])).factors, vec![l("1+t")]);
        assert_eq!(snf_laurent(&RingMatrix::zeros(1, 1)).padded_factors(), vec![l("0")]);
    }

    #[test]
    fn inverse_series_examples() {
        assert_eq!(laurent_inverse_series(&p("1"), 5).unwrap(), p("1"));
        assert_eq!(laurent_inverse_series(&p("1+t"), 4).unwrap(), p("1+t+t^2+t^3+t^4"));
        assert_eq!(laurent_inverse_series(&p("1+t+t^2"), 3).unwrap(), p("1+t+t^3"));
        assert!(laurent_inverse_series(&p("t"), 3).is_err());
    }

    #[test]
    fn torsion_merge() {
        let merged = normalize_torsion(&[p("t"), p("1+t"), p("1")]);
        assert_eq!(merged, vec![p("t+t^2")]);
    }

    #[test]
    fn gf2_snf_counts_rank() {
        let m = RingMatrix::from_bits(3, 3, |i, j| i == j || (i == 0 && j == 2));
        assert_eq!(snf(&m).unwrap().rank(), 3);
        let z = RingMatrix::<Gf2>::zeros(2, 2);
        assert_eq!(snf(&z).unwrap().rank(), 0);
    }
}
