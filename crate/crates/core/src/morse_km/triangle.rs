use crate::coeff_algebra::{BitMatrix, Gf2, RingMatrix};
use crate::complexes::FreeComplex;

use super::KMTriple;

fn homology_dim(c: &FreeComplex<Gf2>) -> usize {
    c.len() - 2 * BitMatrix::from_ring(c.d()).rank()
}

/// Rank of the map induced on homology: `rank [f Z | B] - rank B`.
fn induced_rank(f: &RingMatrix<Gf2>, source: &FreeComplex<Gf2>, target: &FreeComplex<Gf2>) -> usize {
    let cycles = BitMatrix::from_ring(source.d()).kernel();
    let fz = BitMatrix::from_ring(f).mul(&BitMatrix::from_columns(&cycles, source.len()));
    let b = BitMatrix::from_ring(target.d());
    b.hstack(&fz).rank() - b.rank()
}

/// Exactness at the middle term of `A -f-> B -g-> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotCheck {
    pub name: &'static str,
    pub composite_zero: bool,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim: usize,
}

impl SlotCheck {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.rank_in + self.rank_out == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    /// `dim Ȟ, dim Ĥ, dim H̄` over F2.
    pub dims: (usize, usize, usize),
    pub slots: Vec<SlotCheck>,
}

impl TriangleReport {
    pub fn is_exact(&self) -> bool {
        self.slots.iter().all(SlotCheck::exact)
    }
}

/// Exactness of `Ĥ -j-> Ȟ -i-> H̄ -∂-> Ĥ` at every slot, from F2 ranks.
pub fn verify_triangle(k: &KMTriple) -> TriangleReport {
    let (hc, hh, hb) = (&k.check, &k.hat, &k.bar);
    let (j, i, p) = (&k.j_star.f, &k.i_star.f, &k.boundary.f);
    let rj = induced_rank(j, hh, hc);
    let ri = induced_rank(i, hc, hb);
    let rp = induced_rank(p, hb, hh);
    let dims = (homology_dim(hc), homology_dim(hh), homology_dim(hb));
    let slots = vec![
        SlotCheck { name: "check", composite_zero: induced_rank(&i.mul(j), hh, hb) == 0, rank_in: rj, rank_out: ri, dim: dims.0 },
        SlotCheck { name: "bar", composite_zero: induced_rank(&p.mul(i), hc, hh) == 0, rank_in: ri, rank_out: rp, dim: dims.2 },
        SlotCheck { name: "hat", composite_zero: induced_rank(&j.mul(p), hb, hc) == 0, rank_in: rp, rank_out: rj, dim: dims.1 },
    ];
    TriangleReport { dims, slots }
}
