//! Finite free chain complexes over the coefficient rings.
//!
//! Conventions: cohomological grading, `d` raises degree by one, `deg t = 1`
//! and `deg ι = 0`. A matrix entry `d[i][j]` is the coefficient of generator
//! `i` in `d(j)`. The mapping cone of `f: A -> B` lists the generators of `A`
//! first (shifted down one degree) and then those of `B`, with differential
//! `[[d_A, 0], [f, d_B]]`.

mod bars;
mod report;
mod spectral;

pub use bars::{poly_window_bars, window_bars, Bar, BarKind, GradedWindowReport, Window};
pub use report::{graded_homology, homology, ModuleReport, SliceRing};
pub use spectral::{spectral_pages, SpectralReport};

use std::collections::HashSet;

use crate::coeff_algebra::{F2Laurent, F2Poly, Gf2, Ring, RingMatrix};
use crate::error::{Error, Result};

/// A finite free complex over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex<R: Ring> {
    labels: Vec<String>,
    grading: Option<Vec<i64>>,
    d: RingMatrix<R>,
    filtration: Option<Vec<i64>>,
}

impl<R: Ring> FreeComplex<R> {
    /// Ungraded complex; checks `d * d = 0`.
    pub fn new(labels: Vec<String>, d: RingMatrix<R>) -> Result<Self> {
        let n = labels.len();
        if d.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!("{} labels but d is {}x{}", n, d.rows(), d.cols())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let dd = d.mul(&d);
        if !dd.is_zero() {
            return Err(Error::DSquaredNonzero { product: dd.to_string() });
        }
        Ok(FreeComplex { labels, grading: None, d, filtration: None })
    }

    pub fn graded(labels: Vec<String>, grading: Vec<i64>, d: RingMatrix<R>) -> Result<Self> {
        Self::new(labels, d)?.with_grading(grading)
    }

    /// Labels `g0, g1, ...`.
    pub fn anonymous(d: RingMatrix<R>) -> Result<Self> {
        let labels = (0..d.rows()).map(|i| format!("g{i}")).collect();
        Self::new(labels, d)
    }

    pub fn zero(n: usize) -> Self {
        Self::anonymous(RingMatrix::zeros(n, n)).expect("zero complex")
    }

    pub fn with_grading(mut self, grading: Vec<i64>) -> Result<Self> {
        if grading.len() != self.len() {
            return Err(Error::DimensionMismatch(format!("{} degrees for {} generators", grading.len(), self.len())));
        }
        for (i, j, e) in self.d.nonzero_entries() {
            let ok = match e.homogeneous_degree() {
                Ok(Some(m)) => grading[i] + m == grading[j] + 1,
                _ => false,
            };
            if !ok {
                return Err(Error::Grading {
                    from: self.labels[j].clone(),
                    to: self.labels[i].clone(),
                    from_deg: grading[j],
                    to_deg: grading[i],
                    entry: e.to_string(),
                });
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn with_filtration(mut self, filtration: Vec<i64>) -> Result<Self> {
        if filtration.len() != self.len() {
            return Err(Error::DimensionMismatch(format!("{} levels for {} generators", filtration.len(), self.len())));
        }
        for (i, j, _) in self.d.nonzero_entries() {
            if filtration[i] < filtration[j] {
                return Err(Error::Filtration {
                    from: self.labels[j].clone(),
                    to: self.labels[i].clone(),
                    from_level: filtration[j],
                    to_level: filtration[i],
                });
            }
        }
        self.filtration = Some(filtration);
        Ok(self)
    }

    pub fn without_grading(mut self) -> Self {
        self.grading = None;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn filtration(&self) -> Option<&[i64]> {
        self.filtration.as_deref()
    }

    pub fn d(&self) -> &RingMatrix<R> {
        &self.d
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let d = RingMatrix::direct_sum(&self.d, &other.d);
        let mut out = FreeComplex { labels, grading: None, d, filtration: None };
        if let (Some(a), Some(b)) = (&self.grading, &other.grading) {
            out.grading = Some(a.iter().chain(b).copied().collect());
        }
        if let (Some(a), Some(b)) = (&self.filtration, &other.filtration) {
            out.filtration = Some(a.iter().chain(b).copied().collect());
        }
        out
    }

    /// Same complex with every degree shifted by `k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if let Some(g) = &mut out.grading {
            g.iter_mut().for_each(|x| *x += k);
        }
        out
    }

    /// Applies a ring homomorphism to every entry.
    pub fn change_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<FreeComplex<S>> {
        let mut out = FreeComplex::new(self.labels.clone(), self.d.map(f))?;
        if let Some(g) = &self.grading {
            out = out.with_grading(g.clone())?;
        }
        if let Some(p) = &self.filtration {
            out = out.with_filtration(p.clone())?;
        }
        Ok(out)
    }

    /// Conjugates the differential by an invertible change of basis:
    /// `d' = p d p_inv`. Labels are kept; grading is kept only if still valid.
    pub fn conjugate(&self, p: &RingMatrix<R>, p_inv: &RingMatrix<R>) -> Result<Self> {
        if !p.mul(p_inv).add(&RingMatrix::identity(self.len())).is_zero() {
            return Err(Error::InvalidArgument("change of basis is not invertible".into()));
        }
        let mut out = FreeComplex::new(self.labels.clone(), p.mul(&self.d).mul(p_inv))?;
        if let Some(g) = &self.grading {
            out = out.with_grading(g.clone())?;
        }
        Ok(out)
    }
}

impl FreeComplex<F2Poly> {
    /// Inverts `t`.
    pub fn localize(&self) -> FreeComplex<F2Laurent> {
        self.change_ring(F2Laurent::from_poly).expect("localization preserves d^2 = 0")
    }

    /// Reduction `t -> 0`.
    pub fn at_t_zero(&self) -> FreeComplex<Gf2> {
        let mut out = FreeComplex::new(self.labels.clone(), self.d.map(|p| Gf2(p.coeff(0)))).expect("reduction");
        if let Some(p) = &self.filtration {
            out.filtration = Some(p.clone());
        }
        out
    }
}

/// A chain map `f: source -> target`.
#[derive(Clone, Debug)]
pub struct ChainMap<R: Ring> {
    pub source: FreeComplex<R>,
    pub target: FreeComplex<R>,
    pub f: RingMatrix<R>,
}

impl<R: Ring> ChainMap<R> {
    pub fn new(source: FreeComplex<R>, target: FreeComplex<R>, f: RingMatrix<R>) -> Result<Self> {
        if f.shape() != (target.len(), source.len()) {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                target.len(),
                source.len()
            )));
        }
        let defect = f.mul(source.d()).add(&target.d().mul(&f));
        if !defect.is_zero() {
            return Err(Error::NotChainMap(format!("f d + d f = {defect}")));
        }
        Ok(ChainMap { source, target, f })
    }

    pub fn identity(c: &FreeComplex<R>) -> Self {
        ChainMap { source: c.clone(), target: c.clone(), f: RingMatrix::identity(c.len()) }
    }

    pub fn zero(source: &FreeComplex<R>, target: &FreeComplex<R>) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), f: RingMatrix::zeros(target.len(), source.len()) }
    }

    pub fn compose(&self, first: &ChainMap<R>) -> Result<ChainMap<R>> {
        if first.target.len() != self.source.len() {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        ChainMap::new(first.source.clone(), self.target.clone(), self.f.mul(&first.f))
    }
}

/// Mapping cone; see the module docs for the block order.
pub fn cone<R: Ring>(f: &ChainMap<R>) -> Result<FreeComplex<R>> {
    let (a, b) = (&f.source, &f.target);
    if f.f.shape() != (b.len(), a.len()) {
        return Err(Error::DimensionMismatch("cone of a map with the wrong shape".into()));
    }
    let d = RingMatrix::block2(a.d(), &RingMatrix::zeros(a.len(), b.len()), &f.f, b.d());
    let labels = a.labels().iter().map(|l| format!("{l}[src]")).chain(b.labels().iter().map(|l| format!("{l}[tgt]"))).collect();
    let c = FreeComplex::new(labels, d)?;
    match (a.grading(), b.grading()) {
        (Some(ga), Some(gb)) => c.with_grading(ga.iter().map(|x| x - 1).chain(gb.iter().copied()).collect()),
        _ => Ok(c),
    }
}

/// True iff `f + g = d_t h + h d_s`.
pub fn verify_homotopy<R: Ring>(f: &ChainMap<R>, g: &ChainMap<R>, h: &RingMatrix<R>) -> Result<bool> {
    if f.f.shape() != g.f.shape() || h.shape() != f.f.shape() {
        return Err(Error::DimensionMismatch("homotopy shapes disagree".into()));
    }
    let lhs = f.f.add(&g.f);
    let rhs = f.target.d().mul(h).add(&h.mul(f.source.d()));
    Ok(lhs == rhs)
}

/// Tensor product over `R`; generator `(i, j)` sits at `i * |B| + j`.
pub fn tensor_complexes<R: Ring>(a: &FreeComplex<R>, b: &FreeComplex<R>) -> FreeComplex<R> {
    let ia = RingMatrix::identity(a.len());
    let ib = RingMatrix::identity(b.len());
    let d = RingMatrix::kron(a.d(), &ib).add(&RingMatrix::kron(&ia, b.d()));
    let mut labels = Vec::with_capacity(a.len() * b.len());
    for x in a.labels() {
        for y in b.labels() {
            labels.push(format!("{x}*{y}"));
        }
    }
    let c = FreeComplex::new(labels, d).expect("tensor of complexes is a complex");
    match (a.grading(), b.grading()) {
        (Some(ga), Some(gb)) => {
            let g = ga.iter().flat_map(|x| gb.iter().map(move |y| x + y)).collect();
            c.with_grading(g).expect("tensor grading")
        }
        _ => c,
    }
}

#[cfg(test)]
mod tests;
