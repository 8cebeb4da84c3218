//! Morse and Floer complexes of manifolds with boundary, assembled from the
//! eight count matrices of a boundary-aware dataset.
//!
//! Generators split into interior (`o`), boundary-stable (`s`) and
//! boundary-unstable (`u`). Matrix names follow target-then-source order
//! only in their shape: `d_os` is `o x s` and maps `C_s` to `C_o`.
//!
//! * `Č = C_o ⊕ C_s` with `[[d_oo, d_os], [d̄_su d_uo, d̄_ss + d̄_su d_us]]`
//! * `Ĉ = C_o ⊕ C_u` with `[[d_oo, d_os d̄_su], [d_uo, d̄_uu + d_us d̄_su]]`
//! * `C̄ = C_s ⊕ C_u` with `[[d̄_ss, d̄_su], [d̄_us, d̄_uu]]`
//!
//! Gradings are the degrees in `Č` and `Ĉ`. A `u` generator sits one degree
//! lower in `C̄`. The optional window `(lo, hi)` is the band of `C̄` degrees
//! kept when an infinite boundary ladder was truncated.

mod canonical;
mod triangle;

pub use canonical::{canonical_trn_dataset, canonical_trn_with_window, dual_trn_dataset};
pub use triangle::{verify_triangle, SlotCheck, TriangleReport};

use std::collections::HashSet;

use crate::coeff_algebra::{Gf2, GroupRingElem, Ring, RingMatrix};
use crate::complexes::{ChainMap, FreeComplex, GradedWindowReport, Window};
use crate::equivariant::{a_f2, TComplex, Z2FreeComplex};
use crate::error::{Error, Result};

/// The eight count matrices over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMMatrices<R: Ring> {
    pub d_oo: RingMatrix<R>,
    pub d_os: RingMatrix<R>,
    pub d_uo: RingMatrix<R>,
    pub d_us: RingMatrix<R>,
    pub dbar_ss: RingMatrix<R>,
    pub dbar_su: RingMatrix<R>,
    pub dbar_us: RingMatrix<R>,
    pub dbar_uu: RingMatrix<R>,
}

impl<R: Ring> KMMatrices<R> {
    pub fn zeros(o: usize, s: usize, u: usize) -> Self {
        KMMatrices {
            d_oo: RingMatrix::zeros(o, o),
            d_os: RingMatrix::zeros(o, s),
            d_uo: RingMatrix::zeros(u, o),
            d_us: RingMatrix::zeros(u, s),
            dbar_ss: RingMatrix::zeros(s, s),
            dbar_su: RingMatrix::zeros(s, u),
            dbar_us: RingMatrix::zeros(u, s),
            dbar_uu: RingMatrix::zeros(u, u),
        }
    }

    fn named(&self) -> [(&'static str, &RingMatrix<R>); 8] {
        [
            ("d_oo", &self.d_oo),
            ("d_os", &self.d_os),
            ("d_uo", &self.d_uo),
            ("d_us", &self.d_us),
            ("dbar_ss", &self.dbar_ss),
            ("dbar_su", &self.dbar_su),
            ("dbar_us", &self.dbar_us),
            ("dbar_uu", &self.dbar_uu),
        ]
    }

    pub fn check_shapes(&self, o: usize, s: usize, u: usize) -> Result<()> {
        let want = [(o, o), (o, s), (u, o), (u, s), (s, s), (s, u), (u, s), (u, u)];
        for ((name, m), w) in self.named().into_iter().zip(want) {
            if m.shape() != w {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    w.0,
                    w.1
                )));
            }
        }
        Ok(())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> KMMatrices<S> {
        KMMatrices {
            d_oo: self.d_oo.map(&f),
            d_os: self.d_os.map(&f),
            d_uo: self.d_uo.map(&f),
            d_us: self.d_us.map(&f),
            dbar_ss: self.dbar_ss.map(&f),
            dbar_su: self.dbar_su.map(&f),
            dbar_us: self.dbar_us.map(&f),
            dbar_uu: self.dbar_uu.map(&f),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let ds = RingMatrix::direct_sum;
        KMMatrices {
            d_oo: ds(&self.d_oo, &other.d_oo),
            d_os: ds(&self.d_os, &other.d_os),
            d_uo: ds(&self.d_uo, &other.d_uo),
            d_us: ds(&self.d_us, &other.d_us),
            dbar_ss: ds(&self.dbar_ss, &other.dbar_ss),
            dbar_su: ds(&self.dbar_su, &other.dbar_su),
            dbar_us: ds(&self.dbar_us, &other.dbar_us),
            dbar_uu: ds(&self.dbar_uu, &other.dbar_uu),
        }
    }

    /// Change of basis `x -> P x` separately on each generator type; each
    /// pair is `(P, P^-1)`.
    pub fn conjugate(&self, o: (&RingMatrix<R>, &RingMatrix<R>), s: (&RingMatrix<R>, &RingMatrix<R>), u: (&RingMatrix<R>, &RingMatrix<R>)) -> Self {
        let c = |p: &RingMatrix<R>, m: &RingMatrix<R>, q: &RingMatrix<R>| p.mul(m).mul(q);
        KMMatrices {
            d_oo: c(o.0, &self.d_oo, o.1),
            d_os: c(o.0, &self.d_os, s.1),
            d_uo: c(u.0, &self.d_uo, o.1),
            d_us: c(u.0, &self.d_us, s.1),
            dbar_ss: c(s.0, &self.dbar_ss, s.1),
            dbar_su: c(s.0, &self.dbar_su, u.1),
            dbar_us: c(u.0, &self.dbar_us, s.1),
            dbar_uu: c(u.0, &self.dbar_uu, u.1),
        }
    }

    /// Tensor with a complex `(V, d_V)`: the diagonal blocks gain `1 ⊗ d_V`,
    /// the others become `m ⊗ 1`. Generator `(x, v)` sits at `x * |V| + v`.
    pub fn tensor(&self, dv: &RingMatrix<R>) -> Self {
        let iv = RingMatrix::identity(dv.rows());
        let off = |m: &RingMatrix<R>| RingMatrix::kron(m, &iv);
        let diag = |m: &RingMatrix<R>| RingMatrix::kron(m, &iv).add(&RingMatrix::kron(&RingMatrix::identity(m.rows()), dv));
        KMMatrices {
            d_oo: diag(&self.d_oo),
            d_os: off(&self.d_os),
            d_uo: off(&self.d_uo),
            d_us: off(&self.d_us),
            dbar_ss: diag(&self.dbar_ss),
            dbar_su: off(&self.dbar_su),
            dbar_us: off(&self.dbar_us),
            dbar_uu: diag(&self.dbar_uu),
        }
    }

    /// The left-hand sides of the five relations, each of which must vanish.
    pub fn relations(&self) -> Vec<(&'static str, RingMatrix<R>)> {
        let KMMatrices { d_oo, d_os, d_uo, d_us, dbar_ss, dbar_su, dbar_us, dbar_uu } = self;
        let r1 = d_oo.mul(d_oo).add(&d_os.mul(dbar_su).mul(d_uo));
        let r2 = d_oo.mul(d_os).add(&d_os.mul(dbar_ss)).add(&d_os.mul(dbar_su).mul(d_us));
        let r3 = d_uo.mul(d_oo).add(&dbar_uu.mul(d_uo)).add(&d_us.mul(dbar_su).mul(d_uo));
        let r4 = dbar_us
            .add(&d_uo.mul(d_os))
            .add(&dbar_uu.mul(d_us))
            .add(&d_us.mul(dbar_ss))
            .add(&d_us.mul(dbar_su).mul(d_us));
        let bar = RingMatrix::block2(dbar_ss, dbar_su, dbar_us, dbar_uu);
        let r5 = bar.mul(&bar);
        vec![("oo", r1), ("os", r2), ("uo", r3), ("us", r4), ("bar", r5)]
    }
}

/// One relation and, when it fails, its first nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

/// Y-degrees per generator type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMGrading {
    pub o: Vec<i64>,
    pub s: Vec<i64>,
    pub u: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMDataset {
    pub o: Vec<String>,
    pub s: Vec<String>,
    pub u: Vec<String>,
    pub grading: Option<KMGrading>,
    pub counts: KMMatrices<Gf2>,
    /// Counts over F2[Z/2] on distinguished lifts; their augmentation must
    /// be `counts`.
    pub lift: Option<KMMatrices<GroupRingElem>>,
    pub window: Option<(i64, i64)>,
}

fn relation_report<R: Ring>(m: &KMMatrices<R>, ds: &KMDataset, prefix: &str) -> RelationReport {
    let rows_of = |name: &str| -> Vec<&String> {
        match name {
            "oo" | "os" => ds.o.iter().collect(),
            "uo" | "us" => ds.u.iter().collect(),
            _ => ds.s.iter().chain(&ds.u).collect(),
        }
    };
    let cols_of = |name: &str| -> Vec<&String> {
        match name {
            "oo" | "uo" => ds.o.iter().collect(),
            "os" | "us" => ds.s.iter().collect(),
            _ => ds.s.iter().chain(&ds.u).collect(),
        }
    };
    let checks = m
        .relations()
        .into_iter()
        .map(|(name, r)| {
            let witness = r.nonzero_entries().next().map(|(i, j, v)| {
                format!("entry ({}, {}) = {v}", rows_of(name)[i], cols_of(name)[j])
            });
            RelationCheck { name: format!("{prefix}{name}"), holds: witness.is_none(), witness }
        })
        .collect();
    RelationReport { checks }
}

impl KMDataset {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.o.len(), self.s.len(), self.u.len())
    }

    fn check_labels(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for l in self.o.iter().chain(&self.s).chain(&self.u) {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if let Some(g) = &self.grading {
            if (g.o.len(), g.s.len(), g.u.len()) != self.dims() {
                return Err(Error::DimensionMismatch("grading does not match the generator lists".into()));
            }
        }
        Ok(())
    }

    /// Checks shapes and evaluates every relation over F2, and over F2[Z/2]
    /// when a lift is present (names prefixed `lift:`).
    pub fn validate_relations(&self) -> Result<RelationReport> {
        self.check_labels()?;
        let (o, s, u) = self.dims();
        self.counts.check_shapes(o, s, u)?;
        let mut report = relation_report(&self.counts, self, "");
        if let Some(l) = &self.lift {
            l.check_shapes(o, s, u)?;
            if l.map(|c| Gf2(c.augment())) != self.counts {
                return Err(Error::InvalidArgument("lift does not augment to the F2 counts".into()));
            }
            report.checks.extend(relation_report(l, self, "lift:").checks);
        }
        Ok(report)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let cat = |a: &[String], b: &[String]| a.iter().chain(b).cloned().collect::<Vec<_>>();
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(KMGrading {
                o: a.o.iter().chain(&b.o).copied().collect(),
                s: a.s.iter().chain(&b.s).copied().collect(),
                u: a.u.iter().chain(&b.u).copied().collect(),
            }),
            _ => None,
        };
        let lift = match (&self.lift, &other.lift) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        let window = if self.window == other.window { self.window } else { None };
        KMDataset {
            o: cat(&self.o, &other.o),
            s: cat(&self.s, &other.s),
            u: cat(&self.u, &other.u),
            grading,
            counts: self.counts.direct_sum(&other.counts),
            lift,
            window,
        }
    }

    /// Tensor with a graded F2 complex, which acts trivially under the lift.
    pub fn tensor(&self, v: &FreeComplex<Gf2>) -> Self {
        let pair = |ls: &[String]| -> Vec<String> {
            ls.iter().flat_map(|x| v.labels().iter().map(move |y| format!("{x}*{y}"))).collect()
        };
        let grading = match (&self.grading, v.grading()) {
            (Some(g), Some(gv)) => {
                let sum = |a: &[i64]| a.iter().flat_map(|x| gv.iter().map(move |y| x + y)).collect();
                Some(KMGrading { o: sum(&g.o), s: sum(&g.s), u: sum(&g.u) })
            }
            _ => None,
        };
        let dv_lift = v.d().map(|c| GroupRingElem::new(c.0, false));
        KMDataset {
            o: pair(&self.o),
            s: pair(&self.s),
            u: pair(&self.u),
            grading,
            counts: self.counts.tensor(v.d()),
            lift: self.lift.as_ref().map(|l| l.tensor(&dv_lift)),
            window: None,
        }
    }

    pub fn assemble(&self) -> Result<KMTriple> {
        let report = self.validate_relations()?;
        if let Some(f) = report.first_failure() {
            return Err(Error::Relation { name: f.name.clone(), witness: f.witness.clone().unwrap_or_default() });
        }
        let parts = assemble_ring(self, &self.counts)?;
        let lifted = match &self.lift {
            Some(l) => {
                let p = assemble_ring(self, l)?;
                let (wc, wh, wb) = self.windows();
                let t = |c: FreeComplex<GroupRingElem>, w: Window| a_f2(&Z2FreeComplex::from_complex(c).with_window(w));
                Some(LiftedTriple { check: t(p.check, wc), hat: t(p.hat, wh), bar: t(p.bar, wb) })
            }
            None => None,
        };
        Ok(KMTriple {
            j_star: ChainMap::new(parts.hat.clone(), parts.check.clone(), parts.j)?,
            i_star: ChainMap::new(parts.check.clone(), parts.bar.clone(), parts.i)?,
            boundary: ChainMap::new(parts.bar.clone(), parts.hat.clone(), parts.p)?,
            check: parts.check,
            hat: parts.hat,
            bar: parts.bar,
            lifted,
        })
    }

    /// Windows for `Č`, `Ĉ` and `C̄`: only `Č` reaches the top of the band
    /// and only `Ĉ` the bottom.
    pub fn windows(&self) -> (Window, Window, Window) {
        match self.window {
            Some((lo, hi)) => (Window::new(None, Some(hi)), Window::new(Some(lo + 1), None), Window::both(lo, hi)),
            None => (Window::NONE, Window::NONE, Window::NONE),
        }
    }
}

struct Parts<R: Ring> {
    check: FreeComplex<R>,
    hat: FreeComplex<R>,
    bar: FreeComplex<R>,
    j: RingMatrix<R>,
    i: RingMatrix<R>,
    p: RingMatrix<R>,
}

fn assemble_ring<R: Ring>(ds: &KMDataset, m: &KMMatrices<R>) -> Result<Parts<R>> {
    let (o, s, u) = ds.dims();
    let z = |r, c| RingMatrix::<R>::zeros(r, c);
    let id = RingMatrix::<R>::identity;
    let d_check = RingMatrix::block2(&m.d_oo, &m.d_os, &m.dbar_su.mul(&m.d_uo), &m.dbar_ss.add(&m.dbar_su.mul(&m.d_us)));
    let d_hat = RingMatrix::block2(&m.d_oo, &m.d_os.mul(&m.dbar_su), &m.d_uo, &m.dbar_uu.add(&m.d_us.mul(&m.dbar_su)));
    let d_bar = RingMatrix::block2(&m.dbar_ss, &m.dbar_su, &m.dbar_us, &m.dbar_uu);
    let cat = |a: &[String], b: &[String]| a.iter().chain(b).cloned().collect::<Vec<_>>();
    let mut check = FreeComplex::new(cat(&ds.o, &ds.s), d_check)?;
    let mut hat = FreeComplex::new(cat(&ds.o, &ds.u), d_hat)?;
    let mut bar = FreeComplex::new(cat(&ds.s, &ds.u), d_bar)?;
    if let Some(g) = &ds.grading {
        let cat = |a: &[i64], b: &[i64]| a.iter().chain(b).copied().collect::<Vec<_>>();
        check = check.with_grading(cat(&g.o, &g.s))?;
        hat = hat.with_grading(cat(&g.o, &g.u))?;
        let below: Vec<i64> = g.u.iter().map(|x| x - 1).collect();
        bar = bar.with_grading(cat(&g.s, &below))?;
    }
    Ok(Parts {
        check,
        hat,
        bar,
        j: RingMatrix::block2(&id(o), &z(o, u), &z(s, o), &m.dbar_su),
        i: RingMatrix::block2(&z(s, o), &id(s), &m.d_uo, &m.d_us),
        p: RingMatrix::block2(&m.d_os, &z(o, u), &m.d_us, &id(u)),
    })
}

/// `T`-complexes of the three flavours, from the F2[Z/2] lift.
#[derive(Clone, Debug)]
pub struct LiftedTriple {
    pub check: TComplex,
    pub hat: TComplex,
    pub bar: TComplex,
}

/// The three complexes over F2 with `j_*: Ĉ -> Č`, `i_*: Č -> C̄` and the
/// degree-one map `∂: C̄ -> Ĉ`.
#[derive(Clone, Debug)]
pub struct KMTriple {
    pub check: FreeComplex<Gf2>,
    pub hat: FreeComplex<Gf2>,
    pub bar: FreeComplex<Gf2>,
    pub j_star: ChainMap<Gf2>,
    pub i_star: ChainMap<Gf2>,
    pub boundary: ChainMap<Gf2>,
    pub lifted: Option<LiftedTriple>,
}

/// Persistence bars of `T` on `Ȟ`, `Ĥ` and `H̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMBars {
    pub check: GradedWindowReport,
    pub hat: GradedWindowReport,
    pub bar: GradedWindowReport,
}

impl KMBars {
    /// `(Ȟ, Ĥ, H̄)` ranks after inverting `t`.
    pub fn localized_ranks(&self) -> (usize, usize, usize) {
        (self.check.localized_rank(), self.hat.localized_rank(), self.bar.localized_rank())
    }
}

impl KMTriple {
    /// Needs a lift and a grading.
    pub fn bars(&self) -> Option<KMBars> {
        let l = self.lifted.as_ref()?;
        Some(KMBars { check: l.check.bars()?, hat: l.hat.bars()?, bar: l.bar.bars()? })
    }

    /// `T^k = 0` on `Ĉ` for some `k`, so its homology is `t`-torsion.
    pub fn hat_t_nilpotent(&self) -> Option<bool> {
        let l = self.lifted.as_ref()?;
        let n = l.hat.complex.len();
        Some(l.hat.t.pow(n.max(1) as u32).is_zero())
    }
}
