use crate::coeff_algebra::{BitMatrix, BitVec, F2Poly, Gf2, RingMatrix};
use crate::complexes::{cone, homology, BarKind, ChainMap, FreeComplex, ModuleReport};
use crate::equivariant::TComplex;
use crate::error::{Error, Result};

use super::localize::{degree_rank, degrees_of, rank_mod_boundaries, cycles_in_degree, homology_dim_in_degree};
use super::{assemble_with_margin, upstairs_iota, DegreeRank, EquivariantDataset};

/// The map `G` from the Borel complex of the upstairs complex to `Č`,
/// `G(t^k g) = T^k G(g)`, recorded by its value on `t^0`: a pair
/// representative goes to its pair, its partner to zero, an invariant point
/// `x` to `(x, 0)`.
#[derive(Clone, Debug)]
pub struct GMap {
    data: EquivariantDataset,
    pub upstairs: FreeComplex<Gf2>,
    /// `ι` as a permutation of the upstairs generators.
    pub iota: Vec<usize>,
    /// The windowed `Č` with its `T`.
    pub check: TComplex,
    pub g: RingMatrix<Gf2>,
}

pub(crate) fn g_matrix(up: &FreeComplex<Gf2>, check_labels: &[String]) -> RingMatrix<Gf2> {
    let mut g = RingMatrix::zeros(check_labels.len(), up.len());
    for (j, l) in up.labels().iter().enumerate() {
        if l.starts_with("i.") {
            continue;
        }
        let at = check_labels.iter().position(|c| c == l).or_else(|| {
            let lvl = format!("{l}@0");
            check_labels.iter().position(|c| *c == lvl)
        });
        if let Some(i) = at {
            g.set(i, j, Gf2(true));
        }
    }
    g
}

fn build_g(e: &EquivariantDataset, extra: usize) -> Result<GMap> {
    if !e.regular {
        return Err(Error::InvalidArgument("G needs a dataset marked equivariant and regular".into()));
    }
    let up = e.upstairs.clone().ok_or_else(|| Error::MissingData("no upstairs Floer complex".into()))?;
    let t = assemble_with_margin(e, extra)?;
    let check = t.triple.lifted.expect("assembled datasets carry a lift").check;
    let g = g_matrix(&up, check.complex.labels());
    Ok(GMap { data: e.clone(), iota: upstairs_iota(&up), upstairs: up, check, g })
}

pub fn map_g(e: &EquivariantDataset) -> Result<GMap> {
    let m = build_g(e, 0)?;
    let defect = m.defect();
    if let Some((i, j, _)) = defect.nonzero_entries().next() {
        return Err(Error::NotChainMap(format!(
            "G d + T G (1 + ι) differs from d G at ({}, {})",
            m.check.complex.labels()[i],
            m.upstairs.labels()[j]
        )));
    }
    Ok(m)
}

impl GMap {
    fn norm(&self) -> RingMatrix<Gf2> {
        let n = self.upstairs.len();
        RingMatrix::from_bits(n, n, |i, j| (i == j) ^ (self.iota[j] == i))
    }

    /// `G d + T G (1 + ι) + d G`, zero exactly when `G` is a chain map
    /// from the Borel complex.
    fn defect(&self) -> RingMatrix<Gf2> {
        let (g, d_up, d) = (&self.g, self.upstairs.d(), self.check.complex.d());
        g.mul(d_up).add(&self.check.t.mul(g).mul(&self.norm())).add(&d.mul(g))
    }

    pub fn chain_identity(&self) -> bool {
        self.defect().is_zero()
    }

    /// Compares the Borel complex modulo `t^n` with `Cone(T^n)` on `Č`
    /// through `φ(g t^k) = (δ_{k, n-1} G(g + ιg), T^k G g)`, degree by
    /// degree below the band edge.
    pub fn truncation(&self, n: usize) -> Result<TruncationReport> {
        if n < 1 {
            return Err(Error::InvalidArgument("truncation level must be at least 1".into()));
        }
        let wide = build_g(&self.data, n + 2)?;
        let up_deg = wide
            .upstairs
            .grading()
            .ok_or_else(|| Error::MissingData("the upstairs complex needs a grading".into()))?
            .to_vec();
        let m = wide.upstairs.len();
        let nn = n as i64;
        let mut labels = Vec::new();
        let mut grading = Vec::new();
        for k in 0..n {
            for (j, l) in wide.upstairs.labels().iter().enumerate() {
                labels.push(format!("{l}.t{k}"));
                grading.push(up_deg[j] + k as i64);
            }
        }
        let norm = wide.norm();
        let mut d = RingMatrix::zeros(n * m, n * m);
        for k in 0..n {
            for j in 0..m {
                for i in 0..m {
                    if wide.upstairs.d().get(i, j).0 {
                        d.set(k * m + i, k * m + j, Gf2(true));
                    }
                    if k + 1 < n && norm.get(i, j).0 {
                        d.set((k + 1) * m + i, k * m + j, Gf2(true));
                    }
                }
            }
        }
        let borel = FreeComplex::graded(labels, grading, d)?;
        let c = &wide.check;
        let tn = c.t.pow(n as u32);
        let target = tn_cone(c, &tn, nn)?;
        let nc = c.complex.len();
        let mut phi = RingMatrix::zeros(2 * nc, n * m);
        let gn = wide.g.mul(&norm);
        let mut tk = RingMatrix::identity(nc);
        for k in 0..n {
            let tkg = tk.mul(&wide.g);
            for j in 0..m {
                for i in 0..nc {
                    phi.set(nc + i, k * m + j, *tkg.get(i, j));
                    if k + 1 == n {
                        phi.set(i, k * m + j, *gn.get(i, j));
                    }
                }
            }
            tk = c.t.mul(&tk);
        }
        let chain_map = target.d().mul(&phi) == phi.mul(borel.d());
        let top = c.window.hi.map_or(i64::MAX, |h| h - 2);
        let degrees = degrees_of(&[&borel, &target])
            .into_iter()
            .filter(|&k| k <= top)
            .map(|k| degree_rank(&phi, &borel, &target, k))
            .collect();
        Ok(TruncationReport { n, chain_map, degrees })
    }
}

/// `Cone(T^n)` with the source copy of `c` in degree `deg(c) + n - 1`.
fn tn_cone(c: &TComplex, tn: &RingMatrix<Gf2>, n: i64) -> Result<FreeComplex<Gf2>> {
    let plain = c.complex.clone().without_grading();
    let cc = cone(&ChainMap::new(plain.clone(), plain, tn.clone())?)?;
    let g = c.complex.grading().ok_or_else(|| Error::MissingData("Č needs a grading".into()))?;
    cc.with_grading(g.iter().map(|x| x + n - 1).chain(g.iter().copied()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub n: usize,
    pub chain_map: bool,
    pub degrees: Vec<DegreeRank>,
}

impl TruncationReport {
    pub fn is_iso(&self) -> bool {
        self.chain_map && self.degrees.iter().all(DegreeRank::is_iso)
    }
}

/// An F2[t] complex whose homology is `Ȟ`: one free generator per free
/// class and `a -> t^k b` per torsion summand `F2[t]/t^k`.
fn bar_model(e: &EquivariantDataset, extra: usize) -> Result<(FreeComplex<F2Poly>, usize, Vec<usize>)> {
    let t = assemble_with_margin(e, extra)?;
    let bars = t.triple.bars().ok_or_else(|| Error::MissingData("the assembled complexes have no grading".into()))?;
    let free = bars.check.bars.iter().filter(|b| b.kind != BarKind::Finite).count();
    let finite = bars.check.finite_lengths();
    let n = free + 2 * finite.len();
    let mut d = RingMatrix::zeros(n, n);
    for (k, &len) in finite.iter().enumerate() {
        let a = free + 2 * k;
        d.set(a + 1, a, F2Poly::monomial(len));
    }
    Ok((FreeComplex::anonymous(d)?, free, finite))
}

fn truncate_model(p: &FreeComplex<F2Poly>, n: usize) -> Result<ModuleReport<F2Poly>> {
    let tn = RingMatrix::identity(p.len()).scale(&F2Poly::monomial(n));
    homology(&cone(&ChainMap::new(p.clone(), p.clone(), tn)?)?)
}

/// `Ȟ ⊗^L F2[t]/(t^n)`, the homology of the cone on `t^n`.
pub fn ss_truncate(e: &EquivariantDataset, n: usize) -> Result<ModuleReport<F2Poly>> {
    if n < 1 {
        return Err(Error::InvalidArgument("truncation level must be at least 1".into()));
    }
    let (p, _, _) = bar_model(e, 0)?;
    truncate_model(&p, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: usize,
    pub report: ModuleReport<F2Poly>,
    /// F2-dimension of `H(Cone(T^n))` on the windowed `Č`, below the edge.
    pub chain_dim: usize,
    /// The natural map from level `n + 1` is a chain map, factors the
    /// quotient from `Č`, and hits the image of `Ȟ` in every degree.
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub free_rank: usize,
    /// Longest torsion summand of `Ȟ`.
    pub torsion_bound: usize,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    /// Past the torsion bound each level is the previous one with the free
    /// summands `t^n` grown by one.
    pub fn stabilizes(&self) -> bool {
        let tail: Vec<&TowerLevel> = self.levels.iter().filter(|l| l.n > self.torsion_bound).collect();
        let rest = |l: &TowerLevel| {
            let tn = F2Poly::monomial(l.n);
            let others: Vec<F2Poly> = l.report.torsion.iter().filter(|p| **p != tn).cloned().collect();
            let free = l.report.torsion.len() - others.len();
            (others, free, l.report.free_rank)
        };
        !tail.is_empty()
            && tail.iter().all(|l| {
                let (others, free, fr) = rest(l);
                fr == 0 && free == self.free_rank && others == rest(tail[0]).0
            })
    }

    pub fn compatible(&self) -> bool {
        self.levels.iter().all(|l| l.compatible)
    }

    /// The chain-level cones agree with the module computation.
    pub fn chain_matches_model(&self) -> bool {
        self.levels.iter().all(|l| l.chain_dim == l.report.torsion_dimension() + l.report.free_rank)
    }
}

/// Levels `1..=max(max_n, bound + 2)` of the truncation tower.
pub fn ss_tower(e: &EquivariantDataset, max_n: usize) -> Result<TowerReport> {
    let (p, free_rank, finite) = bar_model(e, 0)?;
    let torsion_bound = finite.iter().copied().max().unwrap_or(0);
    let top_n = max_n.max(torsion_bound + 2);
    let wide = assemble_with_margin(e, top_n + 2)?;
    let c = wide.triple.lifted.expect("assembled datasets carry a lift").check;
    let top = c.window.hi.map_or(i64::MAX, |h| h - 2);
    let cones: Vec<FreeComplex<Gf2>> =
        (1..=top_n + 1).map(|n| tn_cone(&c, &c.t.pow(n as u32), n as i64)).collect::<Result<_>>()?;
    let nc = c.complex.len();
    let mut levels = Vec::new();
    for n in 1..=top_n {
        let (here, above) = (&cones[n - 1], &cones[n]);
        let degs: Vec<i64> = degrees_of(&[here, above]).into_iter().filter(|&k| k <= top).collect();
        let chain_dim = degs.iter().map(|&k| homology_dim_in_degree(here, k)).sum();
        // (h, c) -> (T h, c) from level n + 1 and the quotient c -> (0, c).
        let f = RingMatrix::block2(&c.t, &RingMatrix::zeros(nc, nc), &RingMatrix::zeros(nc, nc), &RingMatrix::identity(nc));
        let q = RingMatrix::vstack(&RingMatrix::zeros(nc, nc), &RingMatrix::identity(nc));
        let mut compatible = here.d().mul(&f) == f.mul(above.d()) && f.mul(&q) == q;
        for &k in &degs {
            let fb = BitMatrix::from_ring(&f);
            let qb = BitMatrix::from_ring(&q);
            let img_f: Vec<BitVec> = cycles_in_degree(above, k).iter().map(|v| fb.mul_vec(v)).collect();
            let img_q: Vec<BitVec> = cycles_in_degree(&c.complex, k).iter().map(|v| qb.mul_vec(v)).collect();
            let both: Vec<BitVec> = img_f.iter().chain(&img_q).cloned().collect();
            compatible &= rank_mod_boundaries(here, k, &both) == rank_mod_boundaries(here, k, &img_f);
        }
        levels.push(TowerLevel { n, report: truncate_model(&p, n)?, chain_dim, compatible });
    }
    Ok(TowerReport { free_rank, torsion_bound, levels })
}
