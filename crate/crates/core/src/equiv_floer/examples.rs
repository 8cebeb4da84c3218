use crate::coeff_algebra::{Gf2, GroupRingElem, RingMatrix};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::twisted::{CriticalPoint, TwistedDataset};

use super::{partner_label, Endpoint, EquivariantDataset, InteriorCount, PairPoint};

fn upstairs(labels: Vec<String>, grading: Vec<i64>, edges: &[(usize, usize)]) -> FreeComplex<Gf2> {
    let n = labels.len();
    let d = RingMatrix::from_bits(n, n, |i, j| edges.contains(&(i, j)));
    FreeComplex::graded(labels, grading, d).expect("example complexes are valid")
}

fn single_point(window: usize) -> TwistedDataset {
    TwistedDataset { points: vec![CriticalPoint::new("x", 0).with_s(0)], window, ..Default::default() }
}

/// `T*R^n` with the zero section and a fibre: pairs `y_1..y_n` in degrees
/// `1..n` over one invariant point, `y_i -> y_(i+1)` weighted `1 + ι` and
/// `(x, i-1) -> y_i`. Upstairs, `x -> y_1 + ιy_1` and
/// `y_i, ιy_i -> y_(i+1) + ιy_(i+1)`.
pub fn canonical_trn_equivariant(n: usize) -> Result<EquivariantDataset> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let y = |i: usize| format!("y{i}");
    let pairs = (1..=n).map(|i| PairPoint::new(y(i), i as i64)).collect();
    let mut interior = Vec::new();
    for i in 1..=n {
        if i < n {
            interior.push(InteriorCount::new(Endpoint::Pair(y(i + 1)), Endpoint::Pair(y(i)), 1, GroupRingElem::NORM));
        }
        interior.push(InteriorCount::new(Endpoint::Pair(y(i)), Endpoint::Level("x".into(), i as i64 - 1), i as i64, GroupRingElem::ONE));
    }
    // x, then y_i at 2i - 1 and ιy_i at 2i.
    let mut labels = vec!["x".to_string()];
    let mut grading = vec![0];
    for i in 1..=n {
        labels.extend([y(i), partner_label(&y(i))]);
        grading.extend([i as i64, i as i64]);
    }
    let mut edges = vec![(1, 0), (2, 0)];
    for i in 1..n {
        for src in [2 * i - 1, 2 * i] {
            edges.extend([(2 * i + 1, src), (2 * i + 2, src)]);
        }
    }
    Ok(EquivariantDataset {
        pairs,
        boundary: single_point(2 * n),
        interior,
        upstairs: Some(upstairs(labels, grading, &edges)),
        regular: true,
    })
}

/// The mirror of [`canonical_trn_equivariant`]: pairs `z_1..z_n` in degrees
/// `-n..-1` flowing into the unstable levels, `z_i -> (x, i - n - 1)`.
pub fn dual_trn_equivariant(n: usize) -> Result<EquivariantDataset> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let z = |i: usize| format!("z{i}");
    let ni = n as i64;
    let pairs = (1..=n).map(|i| PairPoint::new(z(i), i as i64 - ni - 1)).collect();
    let mut interior = Vec::new();
    for i in 1..=n {
        if i < n {
            interior.push(InteriorCount::new(Endpoint::Pair(z(i + 1)), Endpoint::Pair(z(i)), 1, GroupRingElem::NORM));
        }
        let lvl = i as i64 - ni - 1;
        interior.push(InteriorCount::new(Endpoint::Level("x".into(), lvl), Endpoint::Pair(z(i)), -lvl, GroupRingElem::ONE));
    }
    // z_i at 2i - 2 and ιz_i at 2i - 1, then x.
    let mut labels = Vec::new();
    let mut grading = Vec::new();
    for i in 1..=n {
        labels.extend([z(i), partner_label(&z(i))]);
        grading.extend([i as i64 - ni - 1; 2]);
    }
    labels.push("x".into());
    grading.push(0);
    let mut edges = Vec::new();
    for i in 1..=n {
        for src in [2 * i - 2, 2 * i - 1] {
            if i < n {
                edges.extend([(2 * i, src), (2 * i + 1, src)]);
            } else {
                edges.push((2 * n, src));
            }
        }
    }
    Ok(EquivariantDataset {
        pairs,
        boundary: single_point(n + 2),
        interior,
        upstairs: Some(upstairs(labels, grading, &edges)),
        regular: true,
    })
}

/// One free orbit `{y, ιy}` in degree zero and nothing else.
pub fn point_pair_dataset() -> EquivariantDataset {
    EquivariantDataset {
        pairs: vec![PairPoint::new("y", 0)],
        upstairs: Some(upstairs(vec!["y".into(), partner_label("y")], vec![0, 0], &[])),
        regular: true,
        ..Default::default()
    }
}

/// One invariant point in degree zero and nothing else.
pub fn invariant_point_dataset() -> EquivariantDataset {
    EquivariantDataset {
        boundary: single_point(2),
        upstairs: Some(upstairs(vec!["x".into()], vec![0], &[])),
        regular: true,
        ..Default::default()
    }
}

impl EquivariantDataset {
    /// Raises every degree by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        for p in &mut out.pairs {
            p.degree += k;
        }
        for p in &mut out.boundary.points {
            p.index += k;
        }
        if let Some(u) = &out.upstairs {
            if let Some(g) = u.grading() {
                let g = g.iter().map(|x| x + k).collect();
                out.upstairs = Some(u.clone().with_grading(g).expect("shifting keeps degrees consistent"));
            }
        }
        out
    }
}
