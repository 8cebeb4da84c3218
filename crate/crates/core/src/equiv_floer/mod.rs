//! The blown-up equivariant complex of a Z/2-equivariant Lagrangian pair.
//!
//! Interior generators are the non-invariant pairs `{y, ιy}`; each invariant
//! point `x` contributes a ladder `(x, i)` of eigenvalue levels, stable for
//! `i >= 0` and unstable for `i < 0`. The ladders and their twisted
//! trajectories form the embedded [`TwistedDataset`], and the interior counts
//! fill in `d_oo`, `d_os`, `d_uo` and `d_us`.
//!
//! Interior counts run from `plus` to `minus` and are checked against the
//! zero-dimensional cases, with `G(x) = ind(x) + s(x)` the degree of `(x, 0)`:
//!
//! | minus     | plus      | condition         | μ from degrees        |
//! |-----------|-----------|-------------------|-----------------------|
//! | pair      | pair      | `μ = 1`           | `deg(m) - deg(p)`     |
//! | pair      | `(x, i>=0)` | `μ - i - 1 = 0` | `deg(m) - G(x)`       |
//! | `(x, i<0)`| pair      | `μ + i = 0`       | `G(x) - deg(p)`       |
//! | `(x, i<0)`| `(x', j>=0)` | `μ + i - j = 0` | `G(x) - G(x')`      |
//!
//! Every other combination is either empty or a boundary count.
//!
//! An optional upstairs complex on the labels `y`, `i.y` (for `ιy`) and the
//! invariant points is the ordinary Floer complex of the pair.

mod borel;
mod examples;
mod localize;
mod steenrod;

pub use borel::{map_g, ss_tower, ss_truncate, GMap, TowerLevel, TowerReport, TruncationReport};
pub use examples::{canonical_trn_equivariant, dual_trn_equivariant, invariant_point_dataset, point_pair_dataset};
pub use localize::{localization_map, smith_report, DegreeRank, LocalizationResult, SmithReport};
pub use steenrod::{
    diagonal_dataset, diagonal_twisted, kunneth_point_model, steenrod_square, KunnethPointModel, SquareClass,
    SteenrodReport,
};

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Rational64;

use crate::coeff_algebra::{Gf2, GroupRingElem, Ring};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::morse_km::{KMDataset, KMGrading, KMMatrices, KMTriple};
use crate::twisted::{build_twisted_with_window, TwistedComplex, TwistedDataset, ValidTwisted};

/// A non-invariant pair, named by its distinguished representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPoint {
    pub label: String,
    pub degree: i64,
    pub action: Option<Rational64>,
}

impl PairPoint {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        PairPoint { label: label.into(), degree, action: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Pair(String),
    /// An invariant point and an eigenvalue level.
    Level(String, i64),
}

impl Endpoint {
    pub fn label(&self) -> &str {
        match self {
            Endpoint::Pair(l) | Endpoint::Level(l, _) => l,
        }
    }
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Pair(l) => f.write_str(l),
            Endpoint::Level(l, i) => write!(f, "{l}@{i}"),
        }
    }
}

/// Count of index-zero interior trajectories from `plus` to `minus`, with
/// the representative/eigenvector signs folded into an F2[Z/2] coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorCount {
    pub minus: Endpoint,
    pub plus: Endpoint,
    pub mu: i64,
    pub coeff: GroupRingElem,
}

impl InteriorCount {
    pub fn new(minus: Endpoint, plus: Endpoint, mu: i64, coeff: GroupRingElem) -> Self {
        InteriorCount { minus, plus, mu, coeff }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InteriorCase {
    /// pair to pair, into `d_oo`
    I,
    /// stable level to pair, into `d_os`
    II,
    /// pair to unstable level, into `d_uo`
    III,
    /// stable level to unstable level, into `d_us`
    IV,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivariantDataset {
    pub pairs: Vec<PairPoint>,
    pub boundary: TwistedDataset,
    pub interior: Vec<InteriorCount>,
    pub upstairs: Option<FreeComplex<Gf2>>,
    /// The data comes from an equivariant and regular almost complex
    /// structure, so the comparison map `G` applies.
    pub regular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum End {
    Pair(usize),
    Level(usize, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ResolvedCount {
    pub case: InteriorCase,
    pub minus: End,
    pub plus: End,
    pub coeff: GroupRingElem,
}

#[derive(Clone, Debug)]
pub(crate) struct ValidEquivariant {
    pub pairs: Vec<PairPoint>,
    pub boundary: ValidTwisted,
    /// `G(x)` per invariant point.
    pub g: Vec<i64>,
    pub counts: Vec<ResolvedCount>,
}

pub fn partner_label(pair: &str) -> String {
    format!("i.{pair}")
}

impl EquivariantDataset {
    pub(crate) fn validate(&self) -> Result<ValidEquivariant> {
        let boundary = self.boundary.validate()?;
        let g = match &boundary.degrees {
            Some(g) => g.clone(),
            None if boundary.points.is_empty() => Vec::new(),
            None => return Err(Error::MissingData("the invariant points need a grading".into())),
        };
        let mut pair_ix = HashMap::new();
        for (k, p) in self.pairs.iter().enumerate() {
            if pair_ix.insert(p.label.as_str(), k).is_some() {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
        }
        let point_ix: HashMap<&str, usize> =
            boundary.points.iter().enumerate().map(|(k, p)| (p.label.as_str(), k)).collect();
        for l in point_ix.keys() {
            if pair_ix.contains_key(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        let resolve = |e: &Endpoint| -> Result<End> {
            match e {
                Endpoint::Pair(l) => pair_ix.get(l.as_str()).map(|&k| End::Pair(k)),
                Endpoint::Level(l, i) => point_ix.get(l.as_str()).map(|&k| End::Level(k, *i)),
            }
            .ok_or_else(|| Error::UnknownLabel(e.label().to_string()))
        };
        let mut merged: BTreeMap<(End, End), (InteriorCase, GroupRingElem)> = BTreeMap::new();
        for c in &self.interior {
            let (m, p) = (resolve(&c.minus)?, resolve(&c.plus)?);
            let (case, dim, from_degrees) = match (m, p) {
                (End::Pair(a), End::Pair(b)) => (InteriorCase::I, c.mu - 1, self.pairs[a].degree - self.pairs[b].degree),
                (End::Pair(a), End::Level(x, i)) if i >= 0 => (InteriorCase::II, c.mu - i - 1, self.pairs[a].degree - g[x]),
                (End::Level(x, i), End::Pair(b)) if i < 0 => (InteriorCase::III, c.mu + i, g[x] - self.pairs[b].degree),
                (End::Level(x, i), End::Level(y, j)) if i < 0 && j >= 0 => (InteriorCase::IV, c.mu + i - j, g[x] - g[y]),
                _ => {
                    return Err(Error::Index(format!(
                        "no interior trajectories from {} to {}: that moduli space is empty or a boundary count",
                        c.plus, c.minus
                    )))
                }
            };
            if dim != 0 {
                return Err(Error::Index(format!(
                    "{} -> {} with μ = {} has dimension {dim}, not 0",
                    c.plus, c.minus, c.mu
                )));
            }
            if from_degrees != c.mu {
                return Err(Error::Index(format!(
                    "{} -> {}: μ = {} but the degrees give {from_degrees}",
                    c.plus, c.minus, c.mu
                )));
            }
            let action = |e: End| match e {
                End::Pair(k) => self.pairs[k].action,
                End::Level(x, _) => boundary.points[x].action,
            };
            if let (Some(am), Some(ap)) = (action(m), action(p)) {
                if am <= ap {
                    return Err(Error::Action(format!("{} -> {} does not raise the action", c.plus, c.minus)));
                }
            }
            let slot = merged.entry((m, p)).or_insert((case, GroupRingElem::ZERO));
            slot.1 = slot.1.plus(&c.coeff);
        }
        if let Some(up) = &self.upstairs {
            self.check_upstairs(up, &boundary)?;
        }
        let counts = merged
            .into_iter()
            .filter(|(_, (_, c))| !c.is_zero())
            .map(|((minus, plus), (case, coeff))| ResolvedCount { case, minus, plus, coeff })
            .collect();
        Ok(ValidEquivariant { pairs: self.pairs.clone(), boundary, g, counts })
    }

    fn check_upstairs(&self, up: &FreeComplex<Gf2>, boundary: &ValidTwisted) -> Result<()> {
        let want: HashSet<String> = self
            .pairs
            .iter()
            .flat_map(|p| [p.label.clone(), partner_label(&p.label)])
            .chain(boundary.points.iter().map(|p| p.label.clone()))
            .collect();
        let have: HashSet<String> = up.labels().iter().cloned().collect();
        if have.len() != up.len() {
            return Err(Error::InvalidArgument("upstairs labels repeat".into()));
        }
        if let Some(l) = have.symmetric_difference(&want).next() {
            return Err(Error::InvalidArgument(format!("upstairs generator {l} does not match the dataset")));
        }
        let iota = upstairs_iota(up);
        for j in 0..up.len() {
            for i in 0..up.len() {
                if up.d().get(i, j) != up.d().get(iota[i], iota[j]) {
                    return Err(Error::NonEquivariant(format!(
                        "upstairs count {} -> {} differs from its ι-image",
                        up.labels()[j],
                        up.labels()[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `ι` as a permutation of the upstairs generators.
pub(crate) fn upstairs_iota(up: &FreeComplex<Gf2>) -> Vec<usize> {
    let ix: HashMap<&str, usize> = up.labels().iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
    up.labels()
        .iter()
        .enumerate()
        .map(|(k, l)| match l.strip_prefix("i.") {
            Some(rep) if ix.contains_key(rep) => ix[rep],
            _ => ix.get(partner_label(l).as_str()).copied().unwrap_or(k),
        })
        .collect()
}

/// The assembled dataset: the KM matrices, their three complexes, and the
/// twisted complex of the boundary at the same window.
#[derive(Clone, Debug)]
pub struct EquivariantTriple {
    pub km: KMDataset,
    pub triple: KMTriple,
    pub twisted: Option<TwistedComplex>,
    /// The twisted window actually used.
    pub window: usize,
}

pub fn assemble_equivariant(e: &EquivariantDataset) -> Result<EquivariantTriple> {
    assemble_with_margin(e, 0)
}

/// The twisted window is widened until the band covers every pair degree
/// and referenced level with `extra` degrees to spare at each edge.
pub(crate) fn assemble_with_margin(e: &EquivariantDataset, extra: usize) -> Result<EquivariantTriple> {
    let (km, window) = km_dataset(e, extra)?;
    let triple = km.assemble()?;
    let twisted = if e.boundary.points.is_empty() {
        None
    } else {
        Some(build_twisted_with_window(&e.boundary, window)?)
    };
    Ok(EquivariantTriple { km, triple, twisted, window })
}

/// The KM matrices and the twisted window, before any relation is checked.
pub(crate) fn km_dataset(e: &EquivariantDataset, extra: usize) -> Result<(KMDataset, usize)> {
    let v = e.validate()?;
    let n = e.boundary.window as i64 + extra as i64;
    let mut window = n;
    if let (Some(&gmin), Some(&gmax)) = (v.g.iter().min(), v.g.iter().max()) {
        let mut degs: Vec<i64> = v.pairs.iter().map(|p| p.degree).collect();
        for c in &v.counts {
            for end in [c.minus, c.plus] {
                if let End::Level(x, i) = end {
                    degs.push(v.g[x] + i);
                }
            }
        }
        for d in degs {
            window = window.max(gmin - d + n + 1).max(d - gmax + n + 1);
        }
    }
    let window = window as usize;
    let mut boundary = v.boundary.clone();
    boundary.window = window;
    let lw = boundary.lifted_window();
    let (mut s_gens, mut u_gens) = (Vec::new(), Vec::new());
    if let Some(w) = &lw {
        for (k, &(_, i)) in w.levels.iter().enumerate() {
            if i >= 0 {
                s_gens.push(k);
            } else {
                u_gens.push(k);
            }
        }
    }
    let (no, ns, nu) = (v.pairs.len(), s_gens.len(), u_gens.len());
    let mut lift = KMMatrices::<GroupRingElem>::zeros(no, ns, nu);
    let mut grading = KMGrading { o: v.pairs.iter().map(|p| p.degree).collect(), s: Vec::new(), u: Vec::new() };
    let (mut s_labels, mut u_labels) = (Vec::new(), Vec::new());
    let mut level_pos: HashMap<(usize, i64), (bool, usize)> = HashMap::new();
    if let Some(w) = &lw {
        lift.dbar_ss = w.d.submatrix(&s_gens, &s_gens);
        lift.dbar_su = w.d.submatrix(&s_gens, &u_gens);
        lift.dbar_us = w.d.submatrix(&u_gens, &s_gens);
        lift.dbar_uu = w.d.submatrix(&u_gens, &u_gens);
        for (k, &g) in s_gens.iter().enumerate() {
            s_labels.push(w.labels[g].clone());
            grading.s.push(w.grading[g]);
            level_pos.insert(w.levels[g], (true, k));
        }
        for (k, &g) in u_gens.iter().enumerate() {
            u_labels.push(w.labels[g].clone());
            grading.u.push(w.grading[g] + 1);
            level_pos.insert(w.levels[g], (false, k));
        }
    }
    let place = |end: End| -> Result<usize> {
        match end {
            End::Pair(k) => Ok(k),
            End::Level(x, i) => level_pos.get(&(x, i)).map(|p| p.1).ok_or_else(|| {
                Error::InvalidArgument(format!("level {i} of {} lies outside the window", v.boundary.points[x].label))
            }),
        }
    };
    for c in &v.counts {
        let (r, k) = (place(c.minus)?, place(c.plus)?);
        let m = match c.case {
            InteriorCase::I => &mut lift.d_oo,
            InteriorCase::II => &mut lift.d_os,
            InteriorCase::III => &mut lift.d_uo,
            InteriorCase::IV => &mut lift.d_us,
        };
        m.add_to(r, k, &c.coeff);
    }
    let km = KMDataset {
        o: v.pairs.iter().map(|p| p.label.clone()).collect(),
        s: s_labels,
        u: u_labels,
        grading: Some(grading),
        counts: lift.map(|c| Gf2(c.augment())),
        lift: Some(lift),
        window: lw.as_ref().map(|w| (w.lo, w.hi)),
    };
    Ok((km, window))
}

impl EquivariantDataset {
    /// Direct sum; labels must already be disjoint.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut boundary = self.boundary.clone();
        boundary.points.extend(other.boundary.points.iter().cloned());
        boundary.classes.extend(other.boundary.classes.iter().cloned());
        boundary.compositions.extend(other.boundary.compositions.iter().cloned());
        boundary.window = self.boundary.window.max(other.boundary.window);
        let upstairs = match (&self.upstairs, &other.upstairs) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        EquivariantDataset {
            pairs: self.pairs.iter().chain(&other.pairs).cloned().collect(),
            boundary,
            interior: self.interior.iter().chain(&other.interior).cloned().collect(),
            upstairs,
            regular: self.regular && other.regular,
        }
    }

    /// Appends `_tag` to every label.
    pub fn tagged(&self, tag: &str) -> Self {
        let t = |l: &str| format!("{l}_{tag}");
        let end = |e: &Endpoint| match e {
            Endpoint::Pair(l) => Endpoint::Pair(t(l)),
            Endpoint::Level(l, i) => Endpoint::Level(t(l), *i),
        };
        let mut boundary = self.boundary.clone();
        for p in &mut boundary.points {
            p.label = t(&p.label);
        }
        for c in &mut boundary.classes {
            c.label = t(&c.label);
            c.minus = t(&c.minus);
            c.plus = t(&c.plus);
        }
        for (a, b, c) in &mut boundary.compositions {
            (*a, *b, *c) = (t(a), t(b), t(c));
        }
        let upstairs = self.upstairs.as_ref().map(|u| {
            let labels = u
                .labels()
                .iter()
                .map(|l| match l.strip_prefix("i.") {
                    Some(rep) => partner_label(&t(rep)),
                    None => t(l),
                })
                .collect();
            let c = FreeComplex::new(labels, u.d().clone()).expect("relabelling keeps d");
            match u.grading() {
                Some(g) => c.with_grading(g.to_vec()).expect("relabelling keeps the grading"),
                None => c,
            }
        });
        EquivariantDataset {
            pairs: self.pairs.iter().map(|p| PairPoint { label: t(&p.label), ..p.clone() }).collect(),
            boundary,
            interior: self
                .interior
                .iter()
                .map(|c| InteriorCount { minus: end(&c.minus), plus: end(&c.plus), ..c.clone() })
                .collect(),
            upstairs,
            regular: self.regular,
        }
    }
}

#[cfg(test)]
mod tests;
