use std::fmt;

use super::FreeComplex;
use crate::coeff_algebra::{f2_rank, invariant_factors, normalize_torsion, F2Laurent, F2Poly, Gf2, Ring, RingMatrix};
use crate::error::Result;

/// Isomorphism type of a finitely generated module over a PID:
/// `R^free ⊕ ⊕ R/(torsion_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport<R: Ring> {
    pub free_rank: usize,
    /// Non-unit, nonzero, each dividing the next.
    pub torsion: Vec<R>,
}

impl<R: Ring> ModuleReport<R> {
    pub fn zero() -> Self {
        ModuleReport { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        ModuleReport { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes arbitrary cyclic orders into a divisibility chain.
    pub fn new(free_rank: usize, orders: &[R]) -> Self {
        ModuleReport { free_rank, torsion: normalize_torsion(orders) }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<R> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::new(self.free_rank + other.free_rank, &orders)
    }
}

impl ModuleReport<Gf2> {
    pub fn dimension(&self) -> usize {
        self.free_rank
    }
}

impl ModuleReport<F2Poly> {
    /// F2-dimension of the torsion part.
    pub fn torsion_dimension(&self) -> usize {
        self.torsion.iter().map(|p| p.degree().unwrap_or(0)).sum()
    }

    /// Rank after inverting `t`.
    pub fn localized_rank(&self) -> usize {
        self.free_rank
    }

    /// True iff every torsion factor is a power of `t`.
    pub fn is_t_primary(&self) -> bool {
        self.torsion.iter().all(|p| p.weight() == 1)
    }
}

impl<R: Ring> fmt::Display for ModuleReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("{}^{}", R::NAME, self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("{}/({})", R::NAME, t));
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Homology of a complex over a PID, from the Smith form of `d`.
pub fn homology<R: Ring>(c: &FreeComplex<R>) -> Result<ModuleReport<R>> {
    let factors = invariant_factors(c.d())?;
    let r = factors.len();
    let torsion = factors.into_iter().filter(|f| !f.is_unit()).collect();
    Ok(ModuleReport { free_rank: c.len() - 2 * r, torsion })
}

/// Rings whose graded pieces are F2-vector spaces indexed by powers of `t`.
pub trait SliceRing: Ring {
    /// Every generator contributes to every degree (t is a unit).
    const PERIODIC: bool;
    /// Only `t^0` exists (plain GF(2)).
    const CONSTANT: bool;
    fn t_coeff(&self, k: i64) -> bool;
}

impl SliceRing for Gf2 {
    const PERIODIC: bool = false;
    const CONSTANT: bool = true;
    fn t_coeff(&self, k: i64) -> bool {
        k == 0 && self.0
    }
}

impl SliceRing for F2Poly {
    const PERIODIC: bool = false;
    const CONSTANT: bool = false;
    fn t_coeff(&self, k: i64) -> bool {
        k >= 0 && self.coeff(k as usize)
    }
}

impl SliceRing for F2Laurent {
    const PERIODIC: bool = true;
    const CONSTANT: bool = false;
    fn t_coeff(&self, k: i64) -> bool {
        self.coeff(k)
    }
}

/// Generators present in the degree-`k` slice of a graded complex.
pub(crate) fn slice_members<R: SliceRing>(grading: &[i64], k: i64) -> Vec<usize> {
    (0..grading.len())
        .filter(|&i| if R::CONSTANT { grading[i] == k } else { R::PERIODIC || grading[i] <= k })
        .collect()
}

/// The F2 matrix of `d` from slice `k` to slice `k + 1`.
pub(crate) fn slice_differential<R: SliceRing>(c: &FreeComplex<R>, grading: &[i64], src: &[usize], tgt: &[usize]) -> RingMatrix<Gf2> {
    RingMatrix::from_bits(tgt.len(), src.len(), |a, b| {
        let (i, j) = (tgt[a], src[b]);
        c.d().get(i, j).t_coeff(1 + grading[j] - grading[i])
    })
}

/// F2-dimension of homology in each degree. For polynomial coefficients the
/// range runs one past the top generator degree, after which dimensions are
/// constant; for Laurent coefficients every degree has the same dimension
/// and a single entry at degree 0 is returned.
pub fn graded_homology<R: SliceRing>(c: &FreeComplex<R>) -> Option<Vec<(i64, usize)>> {
    let g = c.grading()?;
    let degrees: Vec<i64> = if R::PERIODIC {
        vec![0]
    } else if R::CONSTANT {
        let mut v: Vec<i64> = g.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    } else if g.is_empty() {
        Vec::new()
    } else {
        let lo = *g.iter().min().unwrap();
        let hi = *g.iter().max().unwrap();
        (lo..=hi + 1).collect()
    };
    let mut out = Vec::new();
    for k in degrees {
        let here = slice_members::<R>(g, k);
        let next = slice_members::<R>(g, k + 1);
        let prev = slice_members::<R>(g, k - 1);
        let out_rank = f2_rank(&slice_differential(c, g, &here, &next));
        let in_rank = f2_rank(&slice_differential(c, g, &prev, &here));
        out.push((k, here.len() - out_rank - in_rank));
    }
    Some(out)
}
