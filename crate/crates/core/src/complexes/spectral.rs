use super::{FreeComplex, ModuleReport};
use crate::coeff_algebra::{normalize_torsion, snf, Ring, RingMatrix};
use crate::error::{Error, Result};

/// Pages of the spectral sequence of a filtered complex, summed over
/// filtration levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralReport<R: Ring> {
    /// `pages[r - 1]` is `E_r`.
    pub pages: Vec<ModuleReport<R>>,
    pub e_infinity: ModuleReport<R>,
    /// Smallest `r >= 1` with `E_r ≅ E_∞`.
    pub degeneration_page: usize,
}

impl<R: Ring> SpectralReport<R> {
    pub fn page(&self, r: usize) -> Option<&ModuleReport<R>> {
        r.checked_sub(1).and_then(|k| self.pages.get(k))
    }
}

/// Columns spanning `{x in F^p : d x in F^(p+r)}`, as vectors in the full basis.
fn cycles<R: Ring>(c: &FreeComplex<R>, filt: &[i64], p: i64, r: i64) -> Result<RingMatrix<R>> {
    let n = c.len();
    let src: Vec<usize> = (0..n).filter(|&j| filt[j] >= p).collect();
    let low: Vec<usize> = (0..n).filter(|&i| filt[i] < p.saturating_add(r)).collect();
    let m = c.d().submatrix(&low, &src);
    let s = snf(&m)?;
    let k = s.rank();
    Ok(RingMatrix::from_fn(n, src.len() - k, |i, col| match src.iter().position(|&x| x == i) {
        Some(pos) => s.v.get(pos, k + col).clone(),
        None => R::zero(),
    }))
}

/// `Z / span(G)` where `Z` has saturated independent columns and `span(G) ⊂ span(Z)`.
fn quotient<R: Ring>(z: &RingMatrix<R>, g: &RingMatrix<R>) -> Result<ModuleReport<R>> {
    let k = z.cols();
    if k == 0 {
        return Ok(ModuleReport::zero());
    }
    if g.cols() == 0 {
        return Ok(ModuleReport::free(k));
    }
    let s = snf(z)?;
    if s.rank() != k || s.factors.iter().any(|f| !f.is_unit()) {
        return Err(Error::InvalidArgument("cycle basis is not saturated".into()));
    }
    let ug = s.u.mul(g);
    for i in k..ug.rows() {
        if ug.row(i).iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidArgument("boundary module not contained in cycles".into()));
        }
    }
    let top = RingMatrix::from_fn(k, g.cols(), |i, j| {
        let inv = s.factors[i].normal_unit();
        ug.get(i, j).times(&inv)
    });
    let x = s.v.mul(&top);
    let t = snf(&x)?;
    let torsion: Vec<R> = t.factors.iter().filter(|f| !f.is_unit()).cloned().collect();
    Ok(ModuleReport { free_rank: k - t.rank(), torsion })
}

fn page_at<R: Ring>(c: &FreeComplex<R>, filt: &[i64], levels: &[i64], r: i64) -> Result<ModuleReport<R>> {
    let mut free = 0;
    let mut orders = Vec::new();
    for &p in levels {
        let z = cycles(c, filt, p, r)?;
        let z_up = cycles(c, filt, p + 1, r - 1)?;
        let z_src = cycles(c, filt, p - r + 1, r - 1)?;
        let b = c.d().mul(&z_src);
        let g = RingMatrix::hstack(&z_up, &b);
        let m = quotient(&z, &g)?;
        free += m.free_rank;
        orders.extend(m.torsion);
    }
    Ok(ModuleReport { free_rank: free, torsion: normalize_torsion(&orders) })
}

/// `E_1 .. E_up_to` for a filtered complex over a PID.
pub fn spectral_pages<R: Ring>(c: &FreeComplex<R>, up_to_page: usize) -> Result<SpectralReport<R>> {
    let filt = c.filtration().ok_or(Error::Unfiltered)?.to_vec();
    let mut levels: Vec<i64> = filt.clone();
    levels.sort_unstable();
    levels.dedup();
    let span = match (levels.first(), levels.last()) {
        (Some(a), Some(b)) => b - a,
        _ => 0,
    };
    let infinite_r = span + 2;
    let mut pages = Vec::new();
    for r in 1..=up_to_page.max(1) as i64 {
        pages.push(page_at(c, &filt, &levels, r)?);
    }
    let e_infinity = page_at(c, &filt, &levels, infinite_r)?;
    let mut degeneration_page = 1;
    for r in (1..=infinite_r).rev() {
        let e = match pages.get(r as usize - 1) {
            Some(e) => e.clone(),
            None => page_at(c, &filt, &levels, r)?,
        };
        if e != e_infinity {
            degeneration_page = r as usize + 1;
            break;
        }
    }
    pages.truncate(up_to_page);
    Ok(SpectralReport { pages, e_infinity, degeneration_page })
}
