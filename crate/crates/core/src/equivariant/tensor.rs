use super::{borel, Z2FreeComplex};
use crate::coeff_algebra::{F2Poly, GroupRingElem, RingMatrix};
use crate::complexes::{graded_homology, homology, poly_window_bars, tensor_complexes, FreeComplex, GradedWindowReport, ModuleReport, Window};
use crate::error::Result;

/// Tensor product of free F2[Z/2]-complexes with the diagonal action, on the
/// basis `x_i ⊗ x'_j` followed by `x_i ⊗ ιx'_j`.
pub fn tensor_z2(a: &Z2FreeComplex, b: &Z2FreeComplex) -> Result<Z2FreeComplex> {
    let (n, m) = (a.len(), b.len());
    let idx = |i: usize, j: usize, twisted: bool| i * m + j + if twisted { n * m } else { 0 };
    let mut d = RingMatrix::zeros(2 * n * m, 2 * n * m);
    let iota = GroupRingElem::IOTA;
    let one = GroupRingElem::ONE;
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                let c = *a.d().get(k, i);
                if c.a {
                    d.add_to(idx(k, j, false), idx(i, j, false), &one);
                    d.add_to(idx(k, j, true), idx(i, j, true), &one);
                }
                if c.b {
                    d.add_to(idx(k, j, true), idx(i, j, false), &iota);
                    d.add_to(idx(k, j, false), idx(i, j, true), &iota);
                }
            }
            for l in 0..m {
                let c = *b.d().get(l, j);
                if c.a {
                    d.add_to(idx(i, l, false), idx(i, j, false), &one);
                    d.add_to(idx(i, l, true), idx(i, j, true), &one);
                }
                if c.b {
                    d.add_to(idx(i, l, true), idx(i, j, false), &one);
                    d.add_to(idx(i, l, false), idx(i, j, true), &one);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(2 * n * m);
    for twisted in [false, true] {
        for x in a.labels() {
            for y in b.labels() {
                labels.push(if twisted { format!("{x}*i.{y}") } else { format!("{x}*{y}") });
            }
        }
    }
    let mut complex = FreeComplex::new(labels, d)?;
    let mut window = Window::NONE;
    if let (Some(ga), Some(gb)) = (a.grading(), b.grading()) {
        let g: Vec<i64> = ga.iter().flat_map(|x| gb.iter().map(move |y| x + y)).collect();
        complex = complex.with_grading(g.iter().chain(&g).copied().collect())?;
        if let (Some(ra), Some(rb)) = (a.degree_range(), b.degree_range()) {
            window = Window::tensor(a.window(), ra, b.window(), rb);
        }
    }
    Ok(Z2FreeComplex::from_complex(complex).with_window(window))
}

/// `B ⊗^L B'` over F2[t]. Both inputs are free, so this is the plain tensor
/// product over F2[t].
pub fn derived_tensor(b: &FreeComplex<F2Poly>, b2: &FreeComplex<F2Poly>) -> FreeComplex<F2Poly> {
    tensor_complexes(b, b2)
}

/// `A ⊗ A' ⊗ F2[t]` with `d_tensor = d_A ⊗ 1 + 1 ⊗ d_A' + t(1 ⊗ ι + ι ⊗ 1)`,
/// on the basis of `borel(A) ⊗ borel(A')`.
pub fn d_tensor_model(a: &Z2FreeComplex, b: &Z2FreeComplex) -> Result<FreeComplex<F2Poly>> {
    let da = f2_basis_matrix(a);
    let db = f2_basis_matrix(b);
    let ia = iota_matrix(a.len());
    let ib = iota_matrix(b.len());
    let ea = RingMatrix::identity(2 * a.len());
    let eb = RingMatrix::identity(2 * b.len());
    let t = F2Poly::monomial(1);
    let d = RingMatrix::kron(&da, &eb)
        .add(&RingMatrix::kron(&ea, &db))
        .add(&RingMatrix::kron(&ea, &ib).add(&RingMatrix::kron(&ia, &eb)).scale(&t));
    let ba = borel(a, 1)?;
    let bb = borel(b, 1)?;
    let mut labels = Vec::new();
    for x in ba.labels() {
        for y in bb.labels() {
            labels.push(format!("{x}*{y}"));
        }
    }
    let c = FreeComplex::new(labels, d)?;
    match (ba.grading(), bb.grading()) {
        (Some(ga), Some(gb)) => c.with_grading(ga.iter().flat_map(|x| gb.iter().map(move |y| x + y)).collect()),
        _ => Ok(c),
    }
}

/// `d_A` on the F2[t]-basis `x_i, ιx_i`.
fn f2_basis_matrix(a: &Z2FreeComplex) -> RingMatrix<F2Poly> {
    let n = a.len();
    RingMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let c = a.d().get(i % n, j % n);
        F2Poly::from_bits(&[if (i < n) == (j < n) { c.a } else { c.b }])
    })
}

fn iota_matrix(n: usize) -> RingMatrix<F2Poly> {
    RingMatrix::from_fn(2 * n, 2 * n, |i, j| F2Poly::from_bits(&[(i + n) % (2 * n) == j]))
}

/// Both sides of the monoidal comparison.
#[derive(Clone, Debug)]
pub struct MonoidalReport {
    pub lhs: Option<ModuleReport<F2Poly>>,
    pub rhs: Option<ModuleReport<F2Poly>>,
    pub lhs_bars: Option<GradedWindowReport>,
    pub rhs_bars: Option<GradedWindowReport>,
    /// F2-dimensions on window-interior degrees.
    pub lhs_interior: Vec<(i64, usize)>,
    pub rhs_interior: Vec<(i64, usize)>,
    /// Some bar touches an artificial window edge.
    pub edge_affected: bool,
    pub window: Window,
}

impl MonoidalReport {
    pub fn agree(&self) -> bool {
        let bars = match (&self.lhs_bars, &self.rhs_bars) {
            (Some(x), Some(y)) => x.signature() == y.signature(),
            _ => true,
        };
        self.lhs == self.rhs && bars && self.lhs_interior == self.rhs_interior
    }
}

fn interior(c: &FreeComplex<F2Poly>, w: Window) -> Vec<(i64, usize)> {
    graded_homology(c)
        .unwrap_or_default()
        .into_iter()
        .filter(|(k, _)| w.lo.is_none_or(|l| *k > l) && w.hi.is_none_or(|h| *k < h))
        .collect()
}

/// Compares `(A ⊗ A')[t]` with `d_borel` against `A[t] ⊗^L A'[t]`.
pub fn verify_monoidal(a: &Z2FreeComplex, b: &Z2FreeComplex) -> Result<MonoidalReport> {
    let t = tensor_z2(a, b)?;
    let lhs_c = borel(&t, 1)?;
    let rhs_c = d_tensor_model(a, b)?;
    let window = t.window();
    let windowed = !window.is_none();
    let (lhs, rhs) =
        if windowed { (None, None) } else { (Some(homology(&lhs_c)?), Some(homology(&rhs_c)?)) };
    let lhs_bars = poly_window_bars(&lhs_c, window);
    let rhs_bars = poly_window_bars(&rhs_c, window);
    let edge = |r: &Option<GradedWindowReport>| {
        r.as_ref().is_some_and(|r| r.bars.iter().any(|b| window.lo.is_some_and(|l| b.birth <= l) || window.hi.is_some_and(|h| b.death >= h)))
    };
    let edge_affected = windowed && (edge(&lhs_bars) || edge(&rhs_bars));
    Ok(MonoidalReport {
        lhs,
        rhs,
        lhs_interior: interior(&lhs_c, window),
        rhs_interior: interior(&rhs_c, window),
        lhs_bars,
        rhs_bars,
        edge_affected,
        window,
    })
}
