use crate::coeff_algebra::{Gf2, GroupRingElem};
use crate::error::{Error, Result};

use super::{KMDataset, KMGrading, KMMatrices};

const ONE_PLUS_IOTA: GroupRingElem = GroupRingElem::NORM;

/// The boundary ladder of a single invariant point in degree zero, with the
/// band `[-w, w]`: `x_0..x_w` stable, `x_-1..x_-w` unstable, each step
/// weighted `1 + ι`.
fn ladder(o: Vec<String>, o_deg: Vec<i64>, w: usize) -> (KMDataset, KMMatrices<GroupRingElem>) {
    let w = w as i64;
    let s: Vec<String> = (0..=w).map(|i| format!("x{i}")).collect();
    let u: Vec<String> = (1..=w).map(|i| format!("x-{i}")).collect();
    let (no, ns, nu) = (o.len(), s.len(), u.len());
    let mut m = KMMatrices::<GroupRingElem>::zeros(no, ns, nu);
    for i in 0..ns - 1 {
        m.dbar_ss.set(i + 1, i, ONE_PLUS_IOTA);
    }
    // u[k] is x_-(k+1); its ladder step goes to x_-k.
    for k in 1..nu {
        m.dbar_uu.set(k - 1, k, ONE_PLUS_IOTA);
    }
    if nu > 0 {
        m.dbar_su.set(0, 0, ONE_PLUS_IOTA);
    }
    let grading = KMGrading { o: o_deg, s: (0..=w).collect(), u: (1..=w).map(|k| 1 - k).collect() };
    let ds = KMDataset {
        o,
        s,
        u,
        grading: Some(grading),
        counts: KMMatrices::zeros(no, ns, nu),
        lift: None,
        window: Some((-w, w)),
    };
    (ds, m)
}

fn finish(mut ds: KMDataset, lift: KMMatrices<GroupRingElem>) -> KMDataset {
    ds.counts = lift.map(|c| Gf2(c.augment()));
    ds.lift = Some(lift);
    ds
}

/// `T*R^n` with the diagonal Lagrangian pair: interior generators
/// `y_1..y_n` in degrees `1..n` and one invariant point, with boundary band
/// `[-2n, 2n]`.
pub fn canonical_trn_dataset(n: usize) -> Result<KMDataset> {
    canonical_trn_with_window(n, 2 * n)
}

/// As [`canonical_trn_dataset`] with band `[-w, w]`; needs `w > n`.
pub fn canonical_trn_with_window(n: usize, w: usize) -> Result<KMDataset> {
    if n == 0 || w <= n {
        return Err(Error::InvalidArgument(format!("need 0 < n < w, got n = {n}, w = {w}")));
    }
    let o = (1..=n).map(|i| format!("y{i}")).collect();
    let (ds, mut m) = ladder(o, (1..=n as i64).collect(), w);
    for i in 0..n {
        if i + 1 < n {
            m.d_oo.set(i + 1, i, ONE_PLUS_IOTA);
        }
        m.d_os.set(i, i, GroupRingElem::ONE);
    }
    Ok(finish(ds, m))
}

/// The mirror image of [`canonical_trn_with_window`]: interior generators
/// `z_1..z_n` in degrees `-n..-1` flowing into the unstable ladder. Needs
/// `w >= n + 2`.
pub fn dual_trn_dataset(n: usize, w: usize) -> Result<KMDataset> {
    if n == 0 || w < n + 2 {
        return Err(Error::InvalidArgument(format!("need n > 0 and w >= n + 2, got n = {n}, w = {w}")));
    }
    let o = (1..=n).map(|i| format!("z{i}")).collect();
    let (ds, mut m) = ladder(o, (1..=n as i64).map(|i| i - n as i64 - 1).collect(), w);
    for i in 0..n {
        if i + 1 < n {
            m.d_oo.set(i + 1, i, ONE_PLUS_IOTA);
        }
        // z_(i+1) flows to x_-(n - i), which is u[n - i - 1].
        m.d_uo.set(n - i - 1, i, GroupRingElem::ONE);
    }
    Ok(finish(ds, m))
}
