use std::collections::BTreeSet;

use crate::coeff_algebra::{BitMatrix, BitVec, F2Poly, Gf2, RingMatrix};
use crate::complexes::{homology, BarKind, FreeComplex, ModuleReport};
use crate::error::{Error, Result};
use crate::twisted::build_twisted;

use super::{assemble_equivariant, EquivariantDataset, EquivariantTriple};

/// Ranks in one degree of a degree-preserving map on homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRank {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl DegreeRank {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.rank && self.target_dim == self.rank
    }
}

fn columns_in_degree(c: &FreeComplex<Gf2>, k: i64) -> Vec<usize> {
    let g = c.grading().expect("graded complex");
    (0..c.len()).filter(|&j| g[j] == k).collect()
}

fn select(m: &BitMatrix, cols: &[usize]) -> BitMatrix {
    BitMatrix::from_columns(&cols.iter().map(|&j| m.column(j)).collect::<Vec<_>>(), m.nrows())
}

/// Cycles of degree `k`, as vectors in the full basis.
pub(crate) fn cycles_in_degree(c: &FreeComplex<Gf2>, k: i64) -> Vec<BitVec> {
    let cols = columns_in_degree(c, k);
    let d = BitMatrix::from_ring(c.d());
    select(&d, &cols)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut full = BitVec::zeros(c.len());
            for i in v.ones() {
                full.set(cols[i], true);
            }
            full
        })
        .collect()
}

/// Boundaries landing in degree `k`.
pub(crate) fn boundaries_in_degree(c: &FreeComplex<Gf2>, k: i64) -> BitMatrix {
    select(&BitMatrix::from_ring(c.d()), &columns_in_degree(c, k - 1))
}

pub(crate) fn homology_dim_in_degree(c: &FreeComplex<Gf2>, k: i64) -> usize {
    cycles_in_degree(c, k).len() - boundaries_in_degree(c, k).rank()
}

/// Rank of the classes `vs` (cycles of degree `k`) modulo boundaries.
pub(crate) fn rank_mod_boundaries(c: &FreeComplex<Gf2>, k: i64, vs: &[BitVec]) -> usize {
    let b = boundaries_in_degree(c, k);
    b.hstack(&BitMatrix::from_columns(vs, c.len())).rank() - b.rank()
}

pub(crate) fn degree_rank(f: &RingMatrix<Gf2>, src: &FreeComplex<Gf2>, tgt: &FreeComplex<Gf2>, k: i64) -> DegreeRank {
    let z = cycles_in_degree(src, k);
    let f = BitMatrix::from_ring(f);
    let fz: Vec<BitVec> = z.iter().map(|v| f.mul_vec(v)).collect();
    DegreeRank {
        degree: k,
        source_dim: homology_dim_in_degree(src, k),
        target_dim: homology_dim_in_degree(tgt, k),
        rank: rank_mod_boundaries(tgt, k, &fz),
    }
}

pub(crate) fn degrees_of(cs: &[&FreeComplex<Gf2>]) -> BTreeSet<i64> {
    cs.iter().flat_map(|c| c.grading().unwrap_or(&[]).iter().copied()).collect()
}

/// `Ȟ`, `Ĥ`, `H̄` over F2[t] with `i_*: Ȟ -> H̄` degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationResult {
    pub check: ModuleReport<F2Poly>,
    pub hat: ModuleReport<F2Poly>,
    pub bar: ModuleReport<F2Poly>,
    /// Bar patterns of `Ȟ`, `Ĥ`, `H̄`; these also show the classes that
    /// reach the lower band edge, which a finitely generated report drops.
    pub patterns: (String, String, String),
    pub i_star: Vec<DegreeRank>,
    /// `(Ȟ, Ĥ, H̄)` ranks over F2[t, t^-1].
    pub localized: (usize, usize, usize),
    /// `T` is nilpotent on `Ĉ` at the chain level.
    pub hat_nilpotent: bool,
    /// `i_*` is an isomorphism in every degree of the band where `Ȟ` has
    /// only free classes and the band edge is at least two degrees away.
    pub stable_iso: bool,
}

impl LocalizationResult {
    pub fn ranks_agree(&self) -> bool {
        self.localized.0 == self.localized.2
    }
}

pub fn localization_map(e: &EquivariantDataset) -> Result<LocalizationResult> {
    let t = assemble_equivariant(e)?;
    localize_triple(&t)
}

pub(crate) fn localize_triple(t: &EquivariantTriple) -> Result<LocalizationResult> {
    let k = &t.triple;
    let bars = k.bars().ok_or_else(|| Error::MissingData("the assembled complexes have no grading".into()))?;
    let (hc, hb) = (&k.check, &k.bar);
    let i_star: Vec<DegreeRank> =
        degrees_of(&[hc, hb]).into_iter().map(|d| degree_rank(&k.i_star.f, hc, hb, d)).collect();
    // Above every birth in Ȟ and every death short of the band edge, both
    // sides are one F2 per free class.
    let mut floor = i64::MIN;
    for b in &bars.check.bars {
        floor = floor.max(b.birth);
        if b.kind == BarKind::Finite {
            floor = floor.max(b.death);
        }
    }
    for b in &bars.bar.bars {
        if matches!(b.kind, BarKind::Finite | BarKind::DownOpen) {
            floor = floor.max(b.death);
        }
    }
    let stable_iso = match k.lifted.as_ref().and_then(|l| l.bar.window.hi) {
        Some(hi) => i_star.iter().filter(|r| r.degree > floor && r.degree <= hi - 2).all(DegreeRank::is_iso),
        None => true,
    };
    Ok(LocalizationResult {
        check: bars.check.to_module_report(),
        hat: bars.hat.to_module_report(),
        bar: bars.bar.to_module_report(),
        patterns: (bars.check.pattern(), bars.hat.pattern(), bars.bar.pattern()),
        i_star,
        localized: bars.localized_ranks(),
        hat_nilpotent: k.hat_t_nilpotent().unwrap_or(true),
        stable_iso,
    })
}

/// Both sides of the rank inequality `dim HF(upstairs) >= rank HF_tw`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithReport {
    pub upstairs_dim: usize,
    pub twisted_rank: usize,
}

impl SmithReport {
    pub fn holds(&self) -> bool {
        self.upstairs_dim >= self.twisted_rank
    }
}

pub fn smith_report(e: &EquivariantDataset) -> Result<SmithReport> {
    e.validate()?;
    let up = e.upstairs.as_ref().ok_or_else(|| Error::MissingData("no upstairs Floer complex".into()))?;
    let upstairs_dim = homology(up)?.dimension();
    let twisted_rank = if e.boundary.points.is_empty() { 0 } else { build_twisted(&e.boundary)?.rank() };
    Ok(SmithReport { upstairs_dim, twisted_rank })
}
