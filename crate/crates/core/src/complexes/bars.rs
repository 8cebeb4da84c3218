//! Persistence of `T: H^k -> H^(k+1)` on graded complexes materialized on a
//! finite window of an infinite periodic object.

use std::fmt;

use super::report::{slice_differential, slice_members};
use super::FreeComplex;
use crate::coeff_algebra::{BitMatrix, BitVec, F2Poly, Gf2, RingMatrix};

/// Artificial edges of a window. A bar reaching `hi` is treated as running
/// off to `+∞`; a bar reaching `lo` as coming from `-∞`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Window {
    pub const NONE: Window = Window { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        Window { lo, hi }
    }

    pub fn both(lo: i64, hi: i64) -> Self {
        Window { lo: Some(lo), hi: Some(hi) }
    }

    pub fn is_none(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn shift(&self, k: i64) -> Self {
        Window { lo: self.lo.map(|x| x + k), hi: self.hi.map(|x| x + k) }
    }

    /// Window of a tensor product, given each factor's window and degree range.
    pub fn tensor(a: Window, a_range: (i64, i64), b: Window, b_range: (i64, i64)) -> Window {
        let hi = match (a.hi, b.hi) {
            (None, None) => None,
            (x, y) => Some(x.map_or(i64::MAX, |h| h + b_range.0).min(y.map_or(i64::MAX, |h| h + a_range.0))),
        };
        let lo = match (a.lo, b.lo) {
            (None, None) => None,
            (x, y) => Some(x.map_or(i64::MIN, |l| l + b_range.1).max(y.map_or(i64::MIN, |l| l + a_range.1))),
        };
        Window { lo, hi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarKind {
    /// `F2[t]/(t^len)`, or `F2` for length one.
    Finite,
    /// `F2[t]` pattern.
    UpOpen,
    /// `t^-1 F2[t^-1]` pattern.
    DownOpen,
    /// `F2[t,t^-1]` pattern.
    BothOpen,
}

/// A class born in degree `birth` and carried by `T` up to degree `death`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub birth: i64,
    pub death: i64,
    pub kind: BarKind,
}

impl Bar {
    pub fn len(&self) -> usize {
        (self.death - self.birth + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedWindowReport {
    pub bars: Vec<Bar>,
    pub window: Window,
}

impl GradedWindowReport {
    pub fn count(&self, kind: BarKind) -> usize {
        self.bars.iter().filter(|b| b.kind == kind).count()
    }

    pub fn up_open(&self) -> usize {
        self.count(BarKind::UpOpen)
    }

    pub fn down_open(&self) -> usize {
        self.count(BarKind::DownOpen)
    }

    pub fn both_open(&self) -> usize {
        self.count(BarKind::BothOpen)
    }

    pub fn finite_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.bars.iter().filter(|b| b.kind == BarKind::Finite).map(|b| b.len()).collect();
        v.sort_unstable();
        v
    }

    /// Rank after inverting `t`.
    pub fn localized_rank(&self) -> usize {
        self.up_open() + self.both_open()
    }

    /// Every class is killed by a power of `t` (no `F2[t]` or `F2[t,t^-1]` bars).
    pub fn is_t_torsion(&self) -> bool {
        self.localized_rank() == 0
    }

    /// Up-open bars become free summands and finite bars `t^len` torsion;
    /// down-open and both-open bars are not finitely generated and are dropped.
    pub fn to_module_report(&self) -> super::ModuleReport<F2Poly> {
        let torsion = self.finite_lengths().into_iter().map(F2Poly::monomial).collect();
        super::ModuleReport { free_rank: self.up_open(), torsion }
    }

    /// Same bars with the window stripped, for comparisons across windows.
    pub fn signature(&self) -> (usize, usize, usize, Vec<usize>) {
        (self.up_open(), self.down_open(), self.both_open(), self.finite_lengths())
    }

    /// Short name when there is a single bar.
    pub fn pattern(&self) -> String {
        let names: Vec<String> = self
            .bars
            .iter()
            .map(|b| match b.kind {
                BarKind::Finite if b.len() == 1 => "F2".to_string(),
                BarKind::Finite => format!("F2[t]/(t^{})", b.len()),
                BarKind::UpOpen => "F2[t]".to_string(),
                BarKind::DownOpen => "t^-1F2[t^-1]".to_string(),
                BarKind::BothOpen => "F2[t,t^-1]".to_string(),
            })
            .collect();
        if names.is_empty() {
            "0".into()
        } else {
            names.join(" ⊕ ")
        }
    }
}

impl fmt::Display for GradedWindowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern())
    }
}

/// Degree-wise data of a graded complex with a degree-one endomorphism.
struct Ladder {
    lo: i64,
    /// `d_k`: slice `k` to slice `k + 1`, for `k` in `lo..=hi`.
    d: Vec<BitMatrix>,
    t: Vec<BitMatrix>,
    dims: Vec<usize>,
}

impl Ladder {
    fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    fn idx(&self, k: i64) -> Option<usize> {
        (k >= self.lo && k <= self.hi()).then(|| (k - self.lo) as usize)
    }

    fn boundaries(&self, k: i64) -> Vec<BitVec> {
        match self.idx(k - 1) {
            Some(i) => self.d[i].image(),
            None => Vec::new(),
        }
    }

    /// Rank of `T^(b-a): H^a -> H^b`.
    fn persistence_rank(&self, a: i64, b: i64) -> usize {
        let (Some(ia), Some(ib)) = (self.idx(a), self.idx(b)) else {
            return 0;
        };
        let mut vecs = self.d[ia].kernel();
        for k in ia..ib {
            vecs = vecs.iter().map(|v| self.t[k].mul_vec(v)).collect();
        }
        let bnd = self.boundaries(b);
        let n = self.dims[ib];
        let bm = BitMatrix::from_columns(&bnd, n);
        let all: Vec<BitVec> = vecs.into_iter().chain(bnd).collect();
        BitMatrix::from_columns(&all, n).rank() - bm.rank()
    }

    fn bars(&self, window: Window, top_open: bool) -> Vec<Bar> {
        let (lo, hi) = (self.lo, self.hi());
        let r = |a: i64, b: i64| -> i64 {
            if a < lo || b > hi || a > b {
                0
            } else {
                self.persistence_rank(a, b) as i64
            }
        };
        let mut out = Vec::new();
        for a in lo..=hi {
            for b in a..=hi {
                let m = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
                if m <= 0 {
                    continue;
                }
                if window.hi.is_some_and(|h| a >= h) {
                    continue;
                }
                let up = (top_open && b == hi) || window.hi.is_some_and(|h| b >= h);
                let down = window.lo.is_some_and(|l| a <= l);
                let kind = match (up, down) {
                    (true, true) => BarKind::BothOpen,
                    (true, false) => BarKind::UpOpen,
                    (false, true) => BarKind::DownOpen,
                    (false, false) => BarKind::Finite,
                };
                for _ in 0..m {
                    out.push(Bar { birth: a, death: b, kind });
                }
            }
        }
        out
    }
}

/// Bars of a graded F2 complex with a degree-one chain endomorphism `t`.
pub fn window_bars(c: &FreeComplex<Gf2>, t: &RingMatrix<Gf2>, window: Window) -> Option<GradedWindowReport> {
    let g = c.grading()?;
    if g.is_empty() {
        return Some(GradedWindowReport { bars: Vec::new(), window });
    }
    let lo = *g.iter().min().unwrap();
    let hi = *g.iter().max().unwrap();
    let members: Vec<Vec<usize>> = (lo..=hi + 1).map(|k| slice_members::<Gf2>(g, k)).collect();
    let mut ladder = Ladder { lo, d: Vec::new(), t: Vec::new(), dims: Vec::new() };
    for k in 0..=(hi - lo) as usize {
        let (src, tgt) = (&members[k], &members[k + 1]);
        ladder.dims.push(src.len());
        ladder.d.push(BitMatrix::from_ring(&slice_differential(c, g, src, tgt)));
        ladder.t.push(BitMatrix::from_ring(&t.submatrix(tgt, src)));
    }
    Some(GradedWindowReport { bars: ladder.bars(window, false), window })
}

/// Bars of `t`-multiplication on a graded free F2[t]-complex. Degrees run
/// from the lowest generator to one past the highest, where `t` is an
/// isomorphism, so bars reaching the top are free.
pub fn poly_window_bars(c: &FreeComplex<F2Poly>, window: Window) -> Option<GradedWindowReport> {
    let g = c.grading()?;
    if g.is_empty() {
        return Some(GradedWindowReport { bars: Vec::new(), window });
    }
    let lo = *g.iter().min().unwrap();
    let top = *g.iter().max().unwrap() + 1;
    let members: Vec<Vec<usize>> = (lo..=top + 1).map(|k| slice_members::<F2Poly>(g, k)).collect();
    let mut ladder = Ladder { lo, d: Vec::new(), t: Vec::new(), dims: Vec::new() };
    for k in 0..=(top - lo) as usize {
        let (src, tgt) = (&members[k], &members[k + 1]);
        ladder.dims.push(src.len());
        ladder.d.push(BitMatrix::from_ring(&slice_differential(c, g, src, tgt)));
        let mut tm = BitMatrix::zeros(tgt.len(), src.len());
        for (col, gen) in src.iter().enumerate() {
            let row = tgt.iter().position(|x| x == gen).expect("slices grow");
            tm.set(row, col, true);
        }
        ladder.t.push(tm);
    }
    Some(GradedWindowReport { bars: ladder.bars(window, true), window })
}
