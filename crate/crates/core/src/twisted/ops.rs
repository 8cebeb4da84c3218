use std::collections::HashMap;

use crate::coeff_algebra::{laurent_inverse_series, normalize_torsion, F2Laurent, F2Poly, RingMatrix};
use crate::complexes::{cone, homology, ChainMap, FreeComplex, ModuleReport};
use crate::error::{Error, Result};

use super::{build_twisted, build_twisted_with_window, CriticalPoint, TrajectoryClass, TwistedComplex, TwistedDataset};

/// Homology of the `E_1` complex: the Morse complex on the critical points
/// with entry `Σ (pos + neg) t^sf` over index-one classes.
///
/// The filtered Laurent complex writes the same entries as `S^-sf`, so its
/// `E_2` page agrees with this report after `t -> t^-1`; see
/// [`conjugate_report`].
pub fn e2_page(tw: &TwistedDataset) -> Result<ModuleReport<F2Laurent>> {
    let v = tw.validate()?;
    let n = v.points.len();
    let mut d = RingMatrix::zeros(n, n);
    for c in &v.classes {
        if c.mu(&v.points) == 1 && c.pos != c.neg {
            d.add_to(c.minus, c.plus, &F2Laurent::monomial(c.sf));
        }
    }
    homology(&FreeComplex::new(v.labels(), d)?)
}

/// Applies `t -> t^-1` to the torsion orders.
pub fn conjugate_report(m: &ModuleReport<F2Laurent>) -> ModuleReport<F2Laurent> {
    let orders: Vec<F2Laurent> = m.torsion.iter().map(|x| x.conjugate()).collect();
    ModuleReport { free_rank: m.free_rank, torsion: normalize_torsion(&orders) }
}

/// `T` is a quasi-isomorphism of the Laurent complex (its cone is acyclic)
/// and, when a windowed model exists, every persistence bar of `T` spans the
/// band except for lower-edge truncation artifacts.
pub fn verify_t_invertible(c: &TwistedComplex) -> bool {
    let plain = c.laurent.clone().without_grading();
    let Ok(map) = ChainMap::new(plain.clone(), plain, c.t_laurent.clone()) else {
        return false;
    };
    let acyclic = cone(&map).ok().and_then(|k| homology(&k).ok()).is_some_and(|h| h.is_zero());
    let windowed = match c.window_report() {
        Some(r) => r.laurent_rank + r.edge_artifacts == r.bars.bars.len(),
        None => c.windowed.is_none(),
    };
    acyclic && windowed
}

/// Builds the dataset at windows `N` and `N + 1` and compares bar
/// signatures and interior homology dimensions.
pub fn window_stability(tw: &TwistedDataset) -> Result<bool> {
    let a = build_twisted_with_window(tw, tw.window)?;
    let b = build_twisted_with_window(tw, tw.window + 1)?;
    let (Some(ra), Some(rb)) = (a.window_report(), b.window_report()) else {
        return Ok(a.windowed.is_none() && b.windowed.is_none());
    };
    let dims = |r: &super::TwistedWindowReport| -> Vec<usize> {
        let mut v: Vec<usize> = r.interior_dims.iter().map(|x| x.1).collect();
        v.dedup();
        v
    };
    Ok(ra.bars.signature() == rb.bars.signature()
        && ra.edge_artifacts == rb.edge_artifacts
        && dims(&ra) == dims(&rb)
        && ra.laurent_rank == a.rank())
}

/// `<w_n(-η), [M]>`: the degree-`n` coefficient of the inverse of the total
/// Stiefel-Whitney class, paired with `pairing[n]`. Classes are powers of a
/// single generator, so `pairing[k]` is the value on `[M]` of its `k`-th power.
pub fn porteous_coefficient(total_sw: &F2Poly, n: usize, pairing: &[bool]) -> Result<bool> {
    let inv = laurent_inverse_series(total_sw, n)?;
    let p = pairing
        .get(n)
        .copied()
        .ok_or_else(|| Error::MissingData(format!("no pairing value for degree {n}")))?;
    Ok(inv.coeff(n) && p)
}

/// Two critical points with Maslov index gap `n + 1`, zero spectral flow
/// and one class whose twisted count is `sw_number`.
pub fn two_point_dataset(n: usize, sw_number: bool) -> Result<TwistedDataset> {
    if n == 0 {
        return Err(Error::InvalidArgument("two_point_twisted needs n >= 1".into()));
    }
    let n = n as i64;
    Ok(TwistedDataset {
        points: vec![CriticalPoint::new("x+", 0).with_s(0), CriticalPoint::new("x-", n + 1).with_s(0)],
        classes: vec![TrajectoryClass::new("u", "x-", "x+", 0).with_count(-n, sw_number, false)],
        compositions: Vec::new(),
        window: 2,
    })
}

pub fn two_point_twisted(n: usize, sw_number: bool) -> Result<ModuleReport<F2Laurent>> {
    Ok(build_twisted(&two_point_dataset(n, sw_number)?)?.homology())
}

/// Spectral flow as a local system: `sf` per class with declared
/// concatenations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystemXi {
    /// `label -> (minus, plus, sf)`.
    pub classes: HashMap<String, (String, String, i64)>,
    pub compositions: Vec<(String, String, String)>,
}

impl LocalSystemXi {
    pub fn from_dataset(tw: &TwistedDataset) -> Self {
        let classes = tw.classes.iter().map(|c| (c.label.clone(), (c.minus.clone(), c.plus.clone(), c.sf))).collect();
        LocalSystemXi { classes, compositions: tw.compositions.clone() }
    }

    pub fn monodromy(&self, class: &str) -> Option<F2Laurent> {
        self.classes.get(class).map(|c| F2Laurent::monomial(c.2))
    }

    /// Checks endpoints and `sf(c) = sf(a) + sf(b)` for each `(a, b, c)`.
    pub fn verify(&self) -> Result<()> {
        for (a, b, c) in &self.compositions {
            let get = |l: &String| self.classes.get(l).ok_or_else(|| Error::UnknownLabel(l.clone()));
            let (ca, cb, cc) = (get(a)?, get(b)?, get(c)?);
            let chained = if ca.0 == cb.1 {
                Some((&cb.0, &ca.1))
            } else if cb.0 == ca.1 {
                Some((&ca.0, &cb.1))
            } else {
                None
            };
            match chained {
                Some((m, p)) if *m == cc.0 && *p == cc.1 => {}
                _ => {
                    return Err(Error::InvalidArgument(format!("{c} is not a concatenation of {a} and {b}")));
                }
            }
            if cc.2 != ca.2 + cb.2 {
                return Err(Error::InvalidArgument(format!(
                    "sf({c}) = {} but sf({a}) + sf({b}) = {}",
                    cc.2,
                    ca.2 + cb.2
                )));
            }
        }
        Ok(())
    }
}
