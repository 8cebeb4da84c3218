//! Free F2[Z/2]-complexes and their comparison functors.
//!
//! A generator `x` of a free F2[Z/2]-complex spans `x` and `ιx` over F2. The
//! Borel complex lists all `x_i` first and then all `ιx_i`, each with the
//! grading of `x_i`. The tensor product lists `x_i ⊗ x'_j` first and then
//! `x_i ⊗ ιx'_j`, both lexicographic in `(i, j)`.

mod blocks;
mod comparison;
mod tensor;

pub use blocks::{finite_type_blocks, BlockKind};
pub use comparison::{ainfty_f2, comparison_f, quasi_iso_certificate, Comparison, QuasiIsoCertificate};
pub use tensor::{d_tensor_model, derived_tensor, tensor_z2, verify_monoidal, MonoidalReport};

use crate::coeff_algebra::{F2Poly, Gf2, GroupRingElem, RingMatrix};
use crate::complexes::{homology, poly_window_bars, window_bars, FreeComplex, GradedWindowReport, ModuleReport, Window};
use crate::error::{Error, Result};

/// Free F2[Z/2]-complex on a distinguished basis, possibly a finite window
/// of an infinite periodic complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2FreeComplex {
    complex: FreeComplex<GroupRingElem>,
    window: Window,
}

impl Z2FreeComplex {
    pub fn new(labels: Vec<String>, d: RingMatrix<GroupRingElem>) -> Result<Self> {
        Ok(Z2FreeComplex { complex: FreeComplex::new(labels, d)?, window: Window::NONE })
    }

    pub fn graded(labels: Vec<String>, grading: Vec<i64>, d: RingMatrix<GroupRingElem>) -> Result<Self> {
        Ok(Z2FreeComplex { complex: FreeComplex::graded(labels, grading, d)?, window: Window::NONE })
    }

    pub fn from_complex(complex: FreeComplex<GroupRingElem>) -> Self {
        Z2FreeComplex { complex, window: Window::NONE }
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.window = window;
        self
    }

    pub fn complex(&self) -> &FreeComplex<GroupRingElem> {
        &self.complex
    }

    pub fn d(&self) -> &RingMatrix<GroupRingElem> {
        self.complex.d()
    }

    pub fn labels(&self) -> &[String] {
        self.complex.labels()
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.complex.grading()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let g = self.grading()?;
        Some((*g.iter().min()?, *g.iter().max()?))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Z2FreeComplex { complex: self.complex.direct_sum(&other.complex), window: Window::NONE }
    }

    /// Replaces `x_i` by `ιx_i` for every `i` in `flip`. Returns the relabeled
    /// complex and the homotopy `H` (projection onto `flip`) with
    /// `T + T' = d H + H d` on the underlying F2 complexes.
    pub fn relabel(&self, flip: &[usize]) -> Result<(Z2FreeComplex, RingMatrix<Gf2>)> {
        let n = self.len();
        let mut in_s = vec![false; n];
        for &i in flip {
            if i >= n {
                return Err(Error::InvalidArgument(format!("generator {i} out of range")));
            }
            in_s[i] = true;
        }
        let d = RingMatrix::from_fn(n, n, |i, j| {
            let c = *self.d().get(i, j);
            if in_s[i] != in_s[j] {
                c.swap()
            } else {
                c
            }
        });
        let labels =
            self.labels().iter().enumerate().map(|(i, l)| if in_s[i] { format!("i.{l}") } else { l.clone() }).collect();
        let mut complex = FreeComplex::new(labels, d)?;
        if let Some(g) = self.grading() {
            complex = complex.with_grading(g.to_vec())?;
        }
        let h = RingMatrix::from_bits(n, n, |i, j| i == j && in_s[i]);
        Ok((Z2FreeComplex { complex, window: self.window }, h))
    }

    /// Conjugates `d` by an invertible F2[Z/2] matrix: `d' = p d p_inv`.
    pub fn conjugate(&self, p: &RingMatrix<GroupRingElem>, p_inv: &RingMatrix<GroupRingElem>) -> Result<Self> {
        Ok(Z2FreeComplex { complex: self.complex.conjugate(p, p_inv)?, window: self.window })
    }
}

/// An F2 complex with a chain endomorphism `T` of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TComplex {
    pub complex: FreeComplex<Gf2>,
    pub t: RingMatrix<Gf2>,
    pub window: Window,
}

impl TComplex {
    pub fn new(complex: FreeComplex<Gf2>, t: RingMatrix<Gf2>, window: Window) -> Result<Self> {
        if t.shape() != (complex.len(), complex.len()) {
            return Err(Error::DimensionMismatch("T must be square on the generators".into()));
        }
        let defect = t.mul(complex.d()).add(&complex.d().mul(&t));
        if !defect.is_zero() {
            return Err(Error::NotChainMap(format!("T d + d T = {defect}")));
        }
        Ok(TComplex { complex, t, window })
    }

    pub fn homology(&self) -> ModuleReport<Gf2> {
        homology(&self.complex).expect("F2 is a field")
    }

    /// Persistence bars of `T` on homology, or `None` if ungraded.
    pub fn bars(&self) -> Option<GradedWindowReport> {
        window_bars(&self.complex, &self.t, self.window)
    }

    /// The Koszul model `Cone(t + T)` over F2[t], whose homology is `H` with
    /// `t` acting by `T`.
    pub fn koszul_model(&self) -> FreeComplex<F2Poly> {
        let n = self.complex.len();
        let d = self.complex.d().map(|x| F2Poly::from_bits(&[x.0]));
        let map = RingMatrix::from_fn(n, n, |i, j| {
            let mut p = F2Poly::from_bits(&[self.t.get(i, j).0]);
            if i == j {
                p = p.add(&F2Poly::monomial(1));
            }
            p
        });
        let full = RingMatrix::block2(&d, &RingMatrix::zeros(n, n), &map, &d);
        FreeComplex::anonymous(full).expect("t + T commutes with d")
    }

    pub fn module_report(&self) -> ModuleReport<F2Poly> {
        homology(&self.koszul_model()).expect("F2[t] is a PID")
    }
}

/// The F2-complex with `d_F2 = a + b` and `T = b`.
pub fn a_f2(a: &Z2FreeComplex) -> TComplex {
    let d = a.d().map(|c| Gf2(c.augment()));
    let t = a.d().map(|c| Gf2(c.b));
    let mut complex = FreeComplex::new(a.labels().to_vec(), d).expect("augmentation is a ring map");
    if let Some(g) = a.grading() {
        complex = complex.with_grading(g.to_vec()).expect("degree-zero coefficients");
    }
    TComplex::new(complex, t, a.window()).expect("T commutes with d over F2[Z/2]")
}

/// `a_f2` on a map of F2[Z/2]-modules.
pub fn a_f2_map(f: &RingMatrix<GroupRingElem>) -> RingMatrix<Gf2> {
    f.map(|c| Gf2(c.augment()))
}

fn borel_matrix(a: &Z2FreeComplex) -> RingMatrix<F2Poly> {
    let n = a.len();
    let t = F2Poly::monomial(1);
    RingMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let c = a.d().get(i % n, j % n);
        let same_side = (i < n) == (j < n);
        let base = if same_side { c.a } else { c.b };
        let mut e = F2Poly::from_bits(&[base]);
        if i % n == j % n {
            e = e.add(&t);
        }
        e
    })
}

fn borel_labels(a: &Z2FreeComplex) -> Vec<String> {
    a.labels().iter().cloned().chain(a.labels().iter().map(|l| format!("i.{l}"))).collect()
}

/// `A ⊗ F2[t]` with `d_borel = d_A + t(1 + ι)`. `n` bounds the `t`-power
/// used by truncated page reports and must be at least one.
pub fn borel(a: &Z2FreeComplex, n: usize) -> Result<FreeComplex<F2Poly>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Borel truncation must be at least 1".into()));
    }
    let c = FreeComplex::new(borel_labels(a), borel_matrix(a))?;
    match a.grading() {
        Some(g) => c.with_grading(g.iter().chain(g).copied().collect()),
        None => Ok(c),
    }
}

/// The Borel complex reduced modulo `t^n`, as an F2 complex on `t^k x`,
/// `t^k ιx` for `k < n`, ordered by `k` first.
pub fn borel_truncated(a: &Z2FreeComplex, n: usize) -> Result<FreeComplex<Gf2>> {
    let b = borel(a, n)?;
    let m = b.len();
    let d = RingMatrix::from_bits(n * m, n * m, |r, c| {
        let (ki, i) = (r / m, r % m);
        let (kj, j) = (c / m, c % m);
        ki >= kj && b.d().get(i, j).coeff(ki - kj)
    });
    let labels = (0..n).flat_map(|k| b.labels().iter().map(move |l| format!("t^{k}.{l}"))).collect();
    let c = FreeComplex::new(labels, d)?;
    match b.grading() {
        Some(g) => c.with_grading((0..n as i64).flat_map(|k| g.iter().map(move |x| x + k)).collect()),
        None => Ok(c),
    }
}

/// Bars of `t` on the Borel complex, using the window of `a`.
pub fn borel_bars(a: &Z2FreeComplex) -> Option<GradedWindowReport> {
    poly_window_bars(&borel(a, 1).ok()?, a.window())
}

#[cfg(test)]
mod tests;
