use std::collections::{BTreeMap, HashMap};

use crate::coeff_algebra::{BitMatrix, BitVec, F2Laurent, F2Poly, Gf2, GroupRingElem, Ring, RingMatrix};
use crate::complexes::{homology, spectral_pages, FreeComplex};
use crate::equivariant::derived_tensor;
use crate::error::{Error, Result};
use crate::twisted::{build_twisted_with_window, e2_page, CriticalPoint, TrajectoryClass, TwistedDataset};

use super::borel::g_matrix;
use super::localize::{cycles_in_degree, homology_dim_in_degree, rank_mod_boundaries};
use super::{km_dataset, partner_label, DegreeRank, Endpoint, EquivariantDataset, InteriorCount, PairPoint};

fn grading_of(v: &FreeComplex<Gf2>) -> Result<&[i64]> {
    v.grading().ok_or_else(|| Error::MissingData("the diagonal model needs a graded complex".into()))
}

/// The fixed locus of the swap on `v ⊗ v`: a point per generator `e_a`
/// with `ind = s = |e_a|`, and a class per differential entry with `sf = 1`
/// carrying one positive solution.
pub fn diagonal_twisted(v: &FreeComplex<Gf2>) -> Result<TwistedDataset> {
    let g = grading_of(v)?;
    let l = v.labels();
    let points = (0..v.len()).map(|a| CriticalPoint::new(&l[a], g[a]).with_s(g[a])).collect();
    let classes = v
        .d()
        .nonzero_entries()
        .map(|(b, a, _)| TrajectoryClass::new(format!("{}>{}", l[a], l[b]), &l[b], &l[a], 1).with_count(-1, true, false))
        .collect();
    Ok(TwistedDataset { points, classes, compositions: Vec::new(), window: 2 })
}

fn pair_label(l: &[String], a: usize, b: usize) -> String {
    format!("{}|{}", l[a], l[b])
}

/// Upstairs index of `e_a ⊗ e_b`: pairs `a < b` first (representative then
/// partner), then the diagonal.
fn tensor_index(n: usize, a: usize, b: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == hi {
        return n * (n - 1) + lo;
    }
    let k = lo * n - lo * (lo + 1) / 2 + (hi - lo - 1);
    2 * k + usize::from(a > b)
}

/// `v ⊗ v` with `ι` swapping the factors, and the interior counts that
/// `d ⊗ 1 + 1 ⊗ d` forces: pair to pair with `1` or `ι` by which ordering is
/// hit, `(e_a, 0)` to each `{e_a, e_c}` with `c` in `d e_a`, and a pair to
/// `(e_c, -1)` when its differential hits `e_c ⊗ e_c`. Counts the diagonal
/// does not force are zero.
pub fn diagonal_dataset(v: &FreeComplex<Gf2>) -> Result<EquivariantDataset> {
    let g = grading_of(v)?.to_vec();
    let l = v.labels().to_vec();
    let n = v.len();
    let mut pairs = Vec::new();
    let mut up_labels = vec![String::new(); n * n];
    let mut up_grading = vec![0; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let p = pair_label(&l, a, b);
            pairs.push(PairPoint::new(&p, g[a] + g[b]));
            up_labels[tensor_index(n, a, b)] = p.clone();
            up_labels[tensor_index(n, b, a)] = partner_label(&p);
            up_grading[tensor_index(n, a, b)] = g[a] + g[b];
            up_grading[tensor_index(n, b, a)] = g[a] + g[b];
        }
        up_labels[tensor_index(n, a, a)] = l[a].clone();
        up_grading[tensor_index(n, a, a)] = 2 * g[a];
    }
    let dv = v.d();
    let mut d_up = RingMatrix::<Gf2>::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let src = tensor_index(n, a, b);
            for c in 0..n {
                if dv.get(c, a).0 {
                    d_up.add_to(tensor_index(n, c, b), src, &Gf2(true));
                }
                if dv.get(c, b).0 {
                    d_up.add_to(tensor_index(n, a, c), src, &Gf2(true));
                }
            }
        }
    }
    let upstairs = FreeComplex::graded(up_labels, up_grading, d_up.clone())?;
    let mut counts: BTreeMap<(Endpoint, Endpoint), GroupRingElem> = BTreeMap::new();
    let mut add = |m: Endpoint, p: Endpoint, c: GroupRingElem| {
        let e = counts.entry((m, p)).or_insert(GroupRingElem::ZERO);
        *e = e.plus(&c);
    };
    for a in 0..n {
        for b in a + 1..n {
            let src = Endpoint::Pair(pair_label(&l, a, b));
            let col = tensor_index(n, a, b);
            for c in 0..n {
                for e in 0..n {
                    if !d_up.get(tensor_index(n, c, e), col).0 {
                        continue;
                    }
                    if c == e {
                        add(Endpoint::Level(l[c].clone(), -1), src.clone(), GroupRingElem::ONE);
                    } else {
                        let coeff = if c < e { GroupRingElem::ONE } else { GroupRingElem::IOTA };
                        add(Endpoint::Pair(pair_label(&l, c.min(e), c.max(e))), src.clone(), coeff);
                    }
                }
            }
        }
        for c in 0..n {
            if dv.get(c, a).0 {
                add(Endpoint::Pair(pair_label(&l, a.min(c), a.max(c))), Endpoint::Level(l[a].clone(), 0), GroupRingElem::ONE);
            }
        }
    }
    let interior = counts
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((m, p), c)| InteriorCount::new(m, p, 1, c))
        .collect();
    Ok(EquivariantDataset { pairs, boundary: diagonal_twisted(v)?, interior, upstairs: Some(upstairs), regular: true })
}

/// `Sq(z) = t^|z| (Sq^0 z + t^-1 Sq^1 z + ...)` read through the
/// trivialization `(e_a, i) <-> e_a t^(|e_a| + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    /// Support of the chosen cycle.
    pub class: Vec<String>,
    pub degree: i64,
    /// Degree of `St(z)` in the twisted complex.
    pub image_degree: i64,
    /// Nonzero `Sq^j z` by `j`, as supports.
    pub squares: BTreeMap<i64, Vec<String>>,
}

impl SquareClass {
    pub fn sq0_is_identity(&self) -> bool {
        self.squares.get(&0).map_or(self.class.is_empty(), |s| *s == self.class)
    }

    pub fn higher_vanish(&self) -> bool {
        self.squares.keys().all(|&j| j == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodReport {
    pub h_dim: usize,
    pub twisted_rank: usize,
    pub classes: Vec<SquareClass>,
    /// Rank of the shifted images `S^m St(z)` against `H^k` of the windowed
    /// twisted complex, at every interior degree `k`.
    pub degrees: Vec<DegreeRank>,
    /// Every `St(z)` is a cycle of degree `2|z|`.
    pub doubles_degree: bool,
    pub e2_rank: usize,
    pub degeneration_page: usize,
}

impl SteenrodReport {
    pub fn is_iso(&self) -> bool {
        self.h_dim == self.twisted_rank && self.degrees.iter().all(DegreeRank::is_iso)
    }

    pub fn degenerates_at_e2(&self) -> bool {
        self.degeneration_page <= 2 && self.e2_rank == self.twisted_rank
    }
}

/// Homogeneous cycles of `v` projecting to a basis of `H(v)`.
fn homology_basis(v: &FreeComplex<Gf2>) -> Vec<(i64, BitVec)> {
    let mut out = Vec::new();
    let mut degs: Vec<i64> = v.grading().unwrap_or(&[]).to_vec();
    degs.sort_unstable();
    degs.dedup();
    for k in degs {
        let mut chosen: Vec<BitVec> = Vec::new();
        for z in cycles_in_degree(v, k) {
            let mut trial = chosen.clone();
            trial.push(z.clone());
            if rank_mod_boundaries(v, k, &trial) == trial.len() {
                chosen = trial;
            }
        }
        out.extend(chosen.into_iter().map(|z| (k, z)));
    }
    out
}

/// The total square through the diagonal model: `z ↦ z ⊗ z`, then `G`
/// into `Č` and `i_*` into the twisted complex, compared degree by degree
/// with the twisted homology.
pub fn steenrod_square(v: &FreeComplex<Gf2>) -> Result<SteenrodReport> {
    let vt = diagonal_twisted(v)?;
    let e = diagonal_dataset(v)?;
    let (km, window) = km_dataset(&e, 0)?;
    let tw = build_twisted_with_window(&vt, window)?;
    let twisted_rank = tw.rank();
    let spectral = spectral_pages(&tw.laurent, 4)?;
    let e2_rank = e2_page(&vt)?.free_rank;
    let h = homology(v)?.dimension();
    let basis = homology_basis(v);
    let Some(cbar) = tw.windowed.as_ref() else {
        return Err(Error::MissingData("the diagonal model has no grading".into()));
    };
    let lw = tw.data.lifted_window();
    let levels = lw.as_ref().map(|w| w.levels.clone()).unwrap_or_default();
    let pos: HashMap<(usize, i64), usize> = levels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let bar_ix: HashMap<&str, usize> =
        cbar.complex.labels().iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();

    let up = e.upstairs.as_ref().expect("the diagonal model has an upstairs complex");
    let check_labels: Vec<String> = km.o.iter().chain(&km.s).cloned().collect();
    let g = BitMatrix::from_ring(&g_matrix(up, &check_labels));
    let (no, ns, _) = km.dims();
    let i_star = BitMatrix::from_ring(&RingMatrix::block2(
        &RingMatrix::zeros(ns, no),
        &RingMatrix::identity(ns),
        &km.counts.d_uo,
        &km.counts.d_us,
    ));
    let km_bar: Vec<&String> = km.s.iter().chain(&km.u).collect();
    let n = v.len();
    let cbar_g = cbar.complex.grading().unwrap_or(&[]);
    let d_bar = BitMatrix::from_ring(cbar.complex.d());

    let mut classes = Vec::new();
    let mut images = Vec::new();
    let mut doubles_degree = true;
    for (deg, z) in &basis {
        let mut square = BitVec::zeros(up.len());
        for a in z.ones() {
            for b in z.ones() {
                square.flip(tensor_index(n, a, b));
            }
        }
        let st_km = i_star.mul_vec(&g.mul_vec(&square));
        let mut st = BitVec::zeros(cbar.complex.len());
        for k in st_km.ones() {
            st.set(bar_ix[km_bar[k].as_str()], true);
        }
        doubles_degree &= d_bar.mul_vec(&st).is_zero() && st.ones().all(|k| cbar_g[k] == 2 * deg);
        let mut squares: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let vg = v.grading().unwrap_or(&[]);
        for k in st.ones() {
            let (a, i) = levels[k];
            let j = deg - (vg[a] + i);
            squares.entry(j).or_default().push(v.labels()[a].clone());
        }
        for s in squares.values_mut() {
            s.sort();
        }
        let mut class: Vec<String> = z.ones().map(|a| v.labels()[a].clone()).collect();
        class.sort();
        classes.push(SquareClass { class, degree: *deg, image_degree: 2 * deg, squares });
        images.push((2 * deg, st));
    }

    let mut degrees = Vec::new();
    if let (Some(lo), Some(hi)) = (cbar.window.lo, cbar.window.hi) {
        for k in lo + 1..hi {
            let shifted: Option<Vec<BitVec>> = images
                .iter()
                .map(|(d0, st)| {
                    let m = k - d0;
                    let mut out = BitVec::zeros(st.len());
                    for p in st.ones() {
                        let (x, i) = levels[p];
                        out.set(*pos.get(&(x, i + m))?, true);
                    }
                    Some(out)
                })
                .collect();
            let rank = shifted.map_or(0, |s| rank_mod_boundaries(&cbar.complex, k, &s));
            degrees.push(DegreeRank { degree: k, source_dim: h, target_dim: homology_dim_in_degree(&cbar.complex, k), rank });
        }
    }
    Ok(SteenrodReport {
        h_dim: h,
        twisted_rank,
        classes,
        degrees,
        doubles_degree,
        e2_rank,
        degeneration_page: spectral.degeneration_page,
    })
}

/// `κ(t^i ⊗ t^j) = t^(i + j + shift)` on point factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KunnethPointModel {
    pub shift: i64,
}

pub fn kunneth_point_model(shift: i64) -> KunnethPointModel {
    KunnethPointModel { shift }
}

impl KunnethPointModel {
    pub fn apply(&self, a: &F2Laurent, b: &F2Laurent) -> F2Laurent {
        a.mul(b).mul_t(self.shift)
    }

    /// Rank over F2[t, t^-1] of the derived tensor of two point complexes.
    pub fn derived_rank(&self) -> usize {
        let point = FreeComplex::<F2Poly>::zero(1);
        homology(&derived_tensor(&point, &point).localize()).expect("Laurent polynomials form a PID").free_rank
    }

    /// `κ` is balanced over F2[t, t^-1] and maps the rank-one tensor
    /// product onto F2[t, t^-1]; the derived tensor has rank one as well.
    pub fn is_iso(&self) -> bool {
        let t = F2Laurent::monomial(1);
        let one = F2Laurent::one();
        let samples: Vec<F2Laurent> = (-3..=3).map(F2Laurent::monomial).chain([F2Laurent::from_exponents([0, 2, 5])]).collect();
        let balanced = samples
            .iter()
            .all(|a| samples.iter().all(|b| self.apply(&a.mul(&t), b) == self.apply(a, &b.mul(&t))));
        let onto = (-6..=6).all(|k| self.apply(&F2Laurent::monomial(k - self.shift), &one) == F2Laurent::monomial(k));
        balanced && onto && !self.apply(&one, &one).is_zero() && self.derived_rank() == 1
    }
}
