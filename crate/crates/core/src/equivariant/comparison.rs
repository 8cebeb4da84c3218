use super::{a_f2, borel, borel_bars, Z2FreeComplex};
use crate::coeff_algebra::{snf, BitMatrix, BitVec, F2Poly, Gf2, RingMatrix};
use crate::complexes::{homology, ChainMap, FreeComplex, ModuleReport};
use crate::error::Result;

/// The comparison map `F: x ↦ (1+ι)x` from `A_F2` to the Borel complex,
/// with the homotopy witness `H: x ↦ x`.
#[derive(Clone, Debug)]
pub struct Comparison {
    /// `A_F2` with constant coefficients.
    pub source: FreeComplex<F2Poly>,
    pub target: FreeComplex<F2Poly>,
    pub f: RingMatrix<F2Poly>,
    pub h: RingMatrix<F2Poly>,
    /// `T` on `A_F2`.
    pub t_op: RingMatrix<F2Poly>,
}

impl Comparison {
    pub fn chain_map(&self) -> Result<ChainMap<F2Poly>> {
        ChainMap::new(self.source.clone(), self.target.clone(), self.f.clone())
    }

    /// `t F + F T = d_borel H + H d_F2`.
    pub fn witness_holds(&self) -> bool {
        let t = F2Poly::monomial(1);
        let lhs = self.f.scale(&t).add(&self.f.mul(&self.t_op));
        let rhs = self.target.d().mul(&self.h).add(&self.h.mul(self.source.d()));
        lhs == rhs
    }
}

fn constant(m: &RingMatrix<Gf2>) -> RingMatrix<F2Poly> {
    m.map(|x| F2Poly::from_bits(&[x.0]))
}

pub fn comparison_f(a: &Z2FreeComplex) -> Comparison {
    let n = a.len();
    let af = a_f2(a);
    let mut source = FreeComplex::new(a.labels().to_vec(), constant(af.complex.d())).expect("d_F2 is a differential");
    if let Some(g) = a.grading() {
        source = source.with_grading(g.to_vec()).expect("grading");
    }
    let target = borel(a, 1).expect("n = 1");
    let f = RingMatrix::from_fn(2 * n, n, |i, j| F2Poly::from_bits(&[i % n == j]));
    let h = RingMatrix::from_fn(2 * n, n, |i, j| F2Poly::from_bits(&[i == j]));
    Comparison { source, target, f, h, t_op: constant(&af.t) }
}

/// `F²(t^n, b) = Σ_(k<n) T1^k H T2^(n-1-k) b`; zero for `n = 0`.
pub fn ainfty_f2(n: usize, b: &BitVec, t1: &BitMatrix, t2: &BitMatrix, h: &BitMatrix) -> BitVec {
    let mut out = BitVec::zeros(h.nrows());
    for k in 0..n {
        let mut v = b.clone();
        for _ in 0..n - 1 - k {
            v = t2.mul_vec(&v);
        }
        v = h.mul_vec(&v);
        for _ in 0..k {
            v = t1.mul_vec(&v);
        }
        out.xor_assign(&v);
    }
    out
}

/// Homology comparison in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub induced_rank: usize,
}

impl DegreeCheck {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.induced_rank == self.source_dim
    }
}

/// Evidence that `F` is a quasi-isomorphism: equal homology reports and an
/// injective induced map, degreewise on window-interior degrees when graded.
#[derive(Clone, Debug)]
pub struct QuasiIsoCertificate {
    /// `H(A_F2)` as an F2[t]-module (t acting by T), for unwindowed input.
    pub source_report: Option<ModuleReport<F2Poly>>,
    pub target_report: Option<ModuleReport<F2Poly>>,
    pub source_dim: Option<usize>,
    pub induced_rank: Option<usize>,
    pub degrees: Vec<DegreeCheck>,
    /// Bar signatures agree (graded input).
    pub bars_agree: Option<bool>,
}

impl QuasiIsoCertificate {
    pub fn holds(&self) -> bool {
        let reports = match (&self.source_report, &self.target_report) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        let injective = match (self.source_dim, self.induced_rank) {
            (Some(d), Some(r)) => d == r,
            _ => true,
        };
        reports && injective && self.degrees.iter().all(DegreeCheck::is_iso) && self.bars_agree != Some(false)
    }
}

/// Rank of `F_*` on all of `H(A_F2)`, read through the Smith form of `d_borel`.
fn global_induced_rank(a: &Z2FreeComplex, cmp: &Comparison) -> Result<(usize, usize)> {
    let af = a_f2(a);
    let cycles = BitMatrix::from_ring(af.complex.d()).kernel();
    let dim = af.homology().dimension();
    let s = snf(cmp.target.d())?;
    let r = s.rank();
    let m = cmp.target.len();
    // coordinate blocks: i < r reduced mod f_i, i >= r all coefficients
    let images: Vec<RingMatrix<F2Poly>> = cycles
        .iter()
        .map(|z| {
            let zv = RingMatrix::from_fn(z.len(), 1, |i, _| F2Poly::from_bits(&[z.get(i)]));
            s.u.mul(&cmp.f.mul(&zv))
        })
        .collect();
    let mut width = vec![0usize; m];
    for (i, w) in width.iter_mut().enumerate() {
        *w = if i < r {
            s.factors[i].degree().unwrap_or(0)
        } else {
            images.iter().map(|v| v.get(i, 0).degree().map_or(0, |d| d + 1)).max().unwrap_or(0)
        };
    }
    let total: usize = width.iter().sum();
    let cols: Vec<BitVec> = images
        .iter()
        .map(|v| {
            let mut out = BitVec::zeros(total);
            let mut off = 0;
            for i in 0..m {
                let mut c = v.get(i, 0).clone();
                if i < r {
                    c = c.div_rem(&s.factors[i]).1;
                }
                for e in c.exponents() {
                    out.set(off + e, true);
                }
                off += width[i];
            }
            out
        })
        .collect();
    Ok((dim, BitMatrix::from_columns(&cols, total).rank()))
}

fn degree_checks(a: &Z2FreeComplex) -> Vec<DegreeCheck> {
    let Some(g) = a.grading() else {
        return Vec::new();
    };
    let Some((lo, hi)) = a.degree_range() else {
        return Vec::new();
    };
    let w = a.window();
    let lo_int = w.lo.map_or(lo, |l| l + 1);
    let hi_int = w.hi.map_or(hi + 1, |h| h - 1);
    let af = a_f2(a);
    let bor = borel(a, 1).expect("n = 1");
    let bg = bor.grading().expect("graded").to_vec();
    let n = a.len();
    let a_slice = |k: i64| -> Vec<usize> { (0..n).filter(|&i| g[i] == k).collect() };
    let b_slice = |k: i64| -> Vec<usize> { (0..2 * n).filter(|&i| bg[i] <= k).collect() };
    let a_d = |src: &[usize], tgt: &[usize]| {
        BitMatrix::from_ring(&RingMatrix::from_bits(tgt.len(), src.len(), |x, y| af.complex.d().get(tgt[x], src[y]).0))
    };
    let b_d = |src: &[usize], tgt: &[usize]| {
        BitMatrix::from_ring(&RingMatrix::from_bits(tgt.len(), src.len(), |x, y| {
            let (i, j) = (tgt[x], src[y]);
            let e = 1 + bg[j] - bg[i];
            e >= 0 && bor.d().get(i, j).coeff(e as usize)
        }))
    };
    let mut out = Vec::new();
    for k in lo_int..=hi_int {
        let (ap, ah, an) = (a_slice(k - 1), a_slice(k), a_slice(k + 1));
        let (bp, bh, bn) = (b_slice(k - 1), b_slice(k), b_slice(k + 1));
        let a_out = a_d(&ah, &an);
        let a_in = a_d(&ap, &ah).rank();
        let b_out = b_d(&bh, &bn).rank();
        let b_in_m = b_d(&bp, &bh);
        let b_in = b_in_m.rank();
        let z = a_out.kernel();
        let source_dim = ah.len() - a_out.rank() - a_in;
        let target_dim = bh.len() - b_out - b_in;
        let mut cols: Vec<BitVec> = z
            .iter()
            .map(|v| {
                let mut out = BitVec::zeros(bh.len());
                for idx in v.ones() {
                    let gen = ah[idx];
                    for img in [gen, gen + n] {
                        let pos = bh.iter().position(|&x| x == img).expect("same degree");
                        out.flip(pos);
                    }
                }
                out
            })
            .collect();
        cols.extend(b_in_m.image());
        let induced_rank = BitMatrix::from_columns(&cols, bh.len()).rank() - b_in;
        out.push(DegreeCheck { degree: k, source_dim, target_dim, induced_rank });
    }
    out
}

pub fn quasi_iso_certificate(a: &Z2FreeComplex) -> Result<QuasiIsoCertificate> {
    let cmp = comparison_f(a);
    let windowed = !a.window().is_none();
    let (source_report, target_report, source_dim, induced_rank) = if windowed {
        (None, None, None, None)
    } else {
        let (dim, rank) = global_induced_rank(a, &cmp)?;
        (Some(a_f2(a).module_report()), Some(homology(&cmp.target)?), Some(dim), Some(rank))
    };
    let bars_agree = match (a_f2(a).bars(), borel_bars(a)) {
        (Some(x), Some(y)) => Some(x.signature() == y.signature()),
        _ => None,
    };
    Ok(QuasiIsoCertificate { source_report, target_report, source_dim, induced_rank, degrees: degree_checks(a), bars_agree })
}
