//! Polarization-twisted Morse complexes.
//!
//! Generators are pairs `(x, i)` of a critical point and an eigenvalue index.
//! A trajectory class `u` from `plus` to `minus` with Morse index gap
//! `μ = ind(minus) - ind(plus)` and spectral flow `sf` carries counts only
//! between `(plus, i)` and `(minus, i + δ)` with `δ = 1 - μ - sf`, which is
//! where the moduli space is zero-dimensional. The constant trajectories give
//! a ladder `(x, i) -> (x, i + 1)` with one positive and one negative
//! solution: it vanishes in `d` and is the shift part of `T`.
//!
//! With a grading `s`, `|(x, i)| = ind(x) + s(x) + i` and `d`, `T` have
//! degree one. The T-periodic compression is a complex over `F2[S, S^-1]` on
//! the critical points, where `S` is the ladder shift:
//! `d_L = Σ (pos + neg) S^δ` and `T_L = S + Σ neg S^δ`.

mod ops;

pub use ops::{
    conjugate_report, e2_page, porteous_coefficient, two_point_dataset, two_point_twisted, verify_t_invertible,
    window_stability, LocalSystemXi,
};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::Rational64;

use crate::coeff_algebra::{F2Laurent, GroupRingElem, RingMatrix};
use crate::complexes::{graded_homology, homology, window_bars, BarKind, FreeComplex, GradedWindowReport, ModuleReport, Window};
use crate::equivariant::{a_f2, TComplex, Z2FreeComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub label: String,
    pub index: i64,
    pub action: Option<Rational64>,
    pub s: Option<i64>,
}

impl CriticalPoint {
    pub fn new(label: impl Into<String>, index: i64) -> Self {
        CriticalPoint { label: label.into(), index, action: None, s: None }
    }

    pub fn with_s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_action(mut self, a: Rational64) -> Self {
        self.action = Some(a);
        self
    }
}

/// Mod-2 counts of positive and negative trajectories at eigenvalue shift
/// `shift = i(minus) - i(plus)`, optionally pinned to `i(plus) = level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountEntry {
    pub shift: i64,
    pub pos: bool,
    pub neg: bool,
    pub level: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryClass {
    pub label: String,
    pub minus: String,
    pub plus: String,
    pub sf: i64,
    pub counts: Vec<CountEntry>,
}

impl TrajectoryClass {
    pub fn new(label: impl Into<String>, minus: impl Into<String>, plus: impl Into<String>, sf: i64) -> Self {
        TrajectoryClass { label: label.into(), minus: minus.into(), plus: plus.into(), sf, counts: Vec::new() }
    }

    pub fn with_count(mut self, shift: i64, pos: bool, neg: bool) -> Self {
        self.counts.push(CountEntry { shift, pos, neg, level: None });
        self
    }
}

/// Raw twisted dataset. `compositions` lists `(a, b, c)` with `c` the
/// concatenation of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwistedDataset {
    pub points: Vec<CriticalPoint>,
    pub classes: Vec<TrajectoryClass>,
    pub compositions: Vec<(String, String, String)>,
    pub window: usize,
}

/// A class after validation, with endpoints resolved to point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedClass {
    pub label: String,
    pub minus: usize,
    pub plus: usize,
    pub sf: i64,
    pub delta: i64,
    pub pos: bool,
    pub neg: bool,
}

impl ResolvedClass {
    pub fn mu(&self, points: &[CriticalPoint]) -> i64 {
        points[self.minus].index - points[self.plus].index
    }
}

/// Validated dataset. `degrees[x] = ind(x) + s(x)` when a grading exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidTwisted {
    pub points: Vec<CriticalPoint>,
    pub classes: Vec<ResolvedClass>,
    pub degrees: Option<Vec<i64>>,
    pub window: usize,
}

impl TwistedDataset {
    pub fn validate(&self) -> Result<ValidTwisted> {
        let mut index = HashMap::new();
        for (k, p) in self.points.iter().enumerate() {
            if index.insert(p.label.as_str(), k).is_some() {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut classes = Vec::new();
        for c in &self.classes {
            if !seen.insert(c.label.as_str()) {
                return Err(Error::DuplicateLabel(c.label.clone()));
            }
            let minus = *index.get(c.minus.as_str()).ok_or_else(|| Error::UnknownLabel(c.minus.clone()))?;
            let plus = *index.get(c.plus.as_str()).ok_or_else(|| Error::UnknownLabel(c.plus.clone()))?;
            let (pm, pp) = (&self.points[minus], &self.points[plus]);
            let mu = pm.index - pp.index;
            if mu < 1 {
                return Err(Error::Index(format!(
                    "class {} runs from index {} to index {}; nonconstant trajectories need μ >= 1",
                    c.label, pp.index, pm.index
                )));
            }
            if let (Some(am), Some(ap)) = (pm.action, pp.action) {
                if am <= ap {
                    return Err(Error::Action(format!(
                        "class {}: action {} of {} is not above action {} of {}",
                        c.label, am, pm.label, ap, pp.label
                    )));
                }
            }
            let delta = 1 - mu - c.sf;
            let mut value: Option<(bool, bool)> = None;
            for e in &c.counts {
                if e.shift != delta {
                    if e.pos || e.neg {
                        return Err(Error::Admissibility(format!(
                            "class {} has counts at shift {} but the moduli space is zero-dimensional only at shift {}",
                            c.label, e.shift, delta
                        )));
                    }
                    continue;
                }
                match value {
                    None => value = Some((e.pos, e.neg)),
                    Some(v) if v != (e.pos, e.neg) => {
                        let at = e.level.map(|l| format!(" at level {l}")).unwrap_or_default();
                        return Err(Error::NonEquivariant(format!(
                            "class {}{}: counts (pos {}, neg {}) differ from (pos {}, neg {})",
                            c.label, at, e.pos as u8, e.neg as u8, v.0 as u8, v.1 as u8
                        )));
                    }
                    _ => {}
                }
            }
            let (pos, neg) = value.unwrap_or((false, false));
            classes.push(ResolvedClass { label: c.label.clone(), minus, plus, sf: c.sf, delta, pos, neg });
        }
        LocalSystemXi::from_dataset(self).verify()?;
        let degrees = solve_grading(&self.points, &classes)?;
        let valid = ValidTwisted { points: self.points.clone(), classes, degrees, window: self.window };
        let (d, t) = valid.laurent_matrices();
        let dd = d.mul(&d);
        if !dd.is_zero() {
            return Err(Error::DSquaredNonzero { product: dd.to_string() });
        }
        let comm = d.mul(&t).add(&t.mul(&d));
        if !comm.is_zero() {
            return Err(Error::NotChainMap(format!("T d + d T = {comm}")));
        }
        Ok(valid)
    }
}

/// Propagates `s` along classes via `sf = s(minus) - s(plus)`. A component
/// whose cycles have nonzero total spectral flow has no grading; that is an
/// error only if some point of the component carries an explicit `s`.
fn solve_grading(points: &[CriticalPoint], classes: &[ResolvedClass]) -> Result<Option<Vec<i64>>> {
    let n = points.len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for c in classes {
        adj[c.plus].push((c.minus, c.sf));
        adj[c.minus].push((c.plus, -c.sf));
    }
    let mut s: Vec<Option<i64>> = vec![None; n];
    let mut graded = true;
    for root in 0..n {
        if s[root].is_some() {
            continue;
        }
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        let anchor = comp.iter().copied().find(|&v| points[v].s.is_some()).unwrap_or(root);
        let explicit = points[anchor].s.is_some();
        s[anchor] = Some(points[anchor].s.unwrap_or(0));
        let mut queue = VecDeque::from([anchor]);
        while let Some(v) = queue.pop_front() {
            let sv = s[v].unwrap();
            for &(w, step) in &adj[v] {
                let want = sv + step;
                match s[w] {
                    None => {
                        if let Some(given) = points[w].s {
                            if given != want {
                                return Err(Error::InvalidArgument(format!(
                                    "grading s({}) = {} disagrees with spectral flow, which forces {}",
                                    points[w].label, given, want
                                )));
                            }
                        }
                        s[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(have) if have != want => {
                        if explicit {
                            return Err(Error::InvalidArgument(format!(
                                "grading s({}) is inconsistent around a loop of spectral flow",
                                points[w].label
                            )));
                        }
                        graded = false;
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(graded.then(|| (0..n).map(|k| points[k].index + s[k].unwrap()).collect()))
}

impl ValidTwisted {
    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.label.clone()).collect()
    }

    /// `(d_L, T_L)` over `F2[S, S^-1]`.
    pub fn laurent_matrices(&self) -> (RingMatrix<F2Laurent>, RingMatrix<F2Laurent>) {
        let n = self.points.len();
        let mut d = RingMatrix::zeros(n, n);
        let mut t = RingMatrix::identity(n).scale(&F2Laurent::monomial(1));
        for c in &self.classes {
            let m = F2Laurent::monomial(c.delta);
            if c.pos != c.neg {
                d.add_to(c.minus, c.plus, &m);
            }
            if c.neg {
                t.add_to(c.minus, c.plus, &m);
            }
        }
        (d, t)
    }

    /// Rebuilds a raw dataset with one count entry per class.
    pub fn to_dataset(&self) -> TwistedDataset {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                TrajectoryClass::new(&c.label, &self.points[c.minus].label, &self.points[c.plus].label, c.sf)
                    .with_count(c.delta, c.pos, c.neg)
            })
            .collect();
        TwistedDataset { points: self.points.clone(), classes, compositions: Vec::new(), window: self.window }
    }
}

/// The output of `build_twisted`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub data: ValidTwisted,
    /// Graded by `ind + s` when graded, filtered by Morse index.
    pub laurent: FreeComplex<F2Laurent>,
    pub t_laurent: RingMatrix<F2Laurent>,
    /// The F2 complex on all `(x, i)` with degree in
    /// `[min(ind + s) - N, max(ind + s) + N]`. `None` when ungraded.
    pub windowed: Option<TComplex>,
}

/// Bars of the windowed complex, split into genuine Laurent summands and
/// truncation artifacts at the lower edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedWindowReport {
    pub bars: GradedWindowReport,
    pub laurent_rank: usize,
    pub edge_artifacts: usize,
    /// F2-dimensions of homology at degrees strictly inside the band.
    pub interior_dims: Vec<(i64, usize)>,
}

impl TwistedWindowReport {
    /// Every bar is a full Laurent summand or an edge artifact.
    pub fn is_periodic(&self) -> bool {
        self.laurent_rank + self.edge_artifacts == self.bars.bars.len()
            && self.interior_dims.iter().all(|&(_, k)| k == self.laurent_rank)
    }
}

pub fn build_twisted(tw: &TwistedDataset) -> Result<TwistedComplex> {
    build_twisted_with_window(tw, tw.window)
}

pub fn build_twisted_with_window(tw: &TwistedDataset, window: usize) -> Result<TwistedComplex> {
    let mut data = tw.validate()?;
    data.window = window;
    build_valid(data)
}

pub fn build_valid(data: ValidTwisted) -> Result<TwistedComplex> {
    let (d, t) = data.laurent_matrices();
    let mut laurent = FreeComplex::new(data.labels(), d)?;
    if let Some(g) = &data.degrees {
        laurent = laurent.with_grading(g.clone())?;
    }
    laurent = laurent.with_filtration(data.points.iter().map(|p| p.index).collect())?;
    let windowed = match &data.degrees {
        Some(_) => Some(windowed_complex(&data)?),
        None => None,
    };
    Ok(TwistedComplex { data, laurent, t_laurent: t, windowed })
}

/// The band `[G_min - N, G_max + N]` of generators `(x, i)`, ordered by
/// degree then point, with the differential over F2[Z/2]: `pos + neg ι` on
/// class counts and `1 + ι` on the ladder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedWindow {
    /// `(point, level)` per generator.
    pub levels: Vec<(usize, i64)>,
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    pub d: RingMatrix<GroupRingElem>,
    pub lo: i64,
    pub hi: i64,
}

impl ValidTwisted {
    /// `None` when ungraded or without critical points.
    pub fn lifted_window(&self) -> Option<LiftedWindow> {
        let g = self.degrees.as_ref()?;
        let n = self.window as i64;
        let lo = g.iter().min()? - n;
        let hi = g.iter().max()? + n;
        let mut gens: Vec<(i64, usize, i64)> = Vec::new();
        for deg in lo..=hi {
            for (x, gx) in g.iter().enumerate() {
                gens.push((deg, x, deg - gx));
            }
        }
        let pos: BTreeMap<(usize, i64), usize> = gens.iter().enumerate().map(|(k, &(_, x, i))| ((x, i), k)).collect();
        let m = gens.len();
        let mut d = RingMatrix::<GroupRingElem>::zeros(m, m);
        for (k, &(_, x, i)) in gens.iter().enumerate() {
            if let Some(&r) = pos.get(&(x, i + 1)) {
                d.add_to(r, k, &GroupRingElem::NORM);
            }
            for c in self.classes.iter().filter(|c| c.plus == x) {
                if let Some(&r) = pos.get(&(c.minus, i + c.delta)) {
                    d.add_to(r, k, &GroupRingElem::new(c.pos, c.neg));
                }
            }
        }
        Some(LiftedWindow {
            levels: gens.iter().map(|&(_, x, i)| (x, i)).collect(),
            labels: gens.iter().map(|&(_, x, i)| format!("{}@{}", self.points[x].label, i)).collect(),
            grading: gens.iter().map(|g| g.0).collect(),
            d,
            lo,
            hi,
        })
    }
}

fn windowed_complex(data: &ValidTwisted) -> Result<TComplex> {
    let Some(w) = data.lifted_window() else {
        return TComplex::new(FreeComplex::zero(0).with_grading(Vec::new())?, RingMatrix::zeros(0, 0), Window::NONE);
    };
    let z = Z2FreeComplex::graded(w.labels, w.grading, w.d)?.with_window(Window::both(w.lo, w.hi));
    Ok(a_f2(&z))
}

impl TwistedComplex {
    /// Homology over `F2[t, t^-1]` from the Laurent presentation.
    pub fn homology(&self) -> ModuleReport<F2Laurent> {
        homology(&self.laurent).expect("Laurent polynomials form a PID")
    }

    pub fn rank(&self) -> usize {
        self.homology().free_rank
    }

    pub fn window_report(&self) -> Option<TwistedWindowReport> {
        let w = self.windowed.as_ref()?;
        let bars = window_bars(&w.complex, &w.t, w.window)?;
        let lo = w.window.lo?;
        let hi = w.window.hi?;
        let laurent_rank = bars.both_open();
        let edge_artifacts =
            bars.bars.iter().filter(|b| b.kind == BarKind::DownOpen && b.birth == lo && b.death == lo).count();
        let interior_dims = graded_homology(&w.complex)?.into_iter().filter(|&(k, _)| k > lo && k < hi).collect();
        Some(TwistedWindowReport { bars, laurent_rank, edge_artifacts, interior_dims })
    }
}

#[cfg(test)]
mod tests;
