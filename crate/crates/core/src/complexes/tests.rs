use proptest::prelude::*;

use super::*;
use crate::coeff_algebra::{F2Poly, Gf2, RingMatrix};

fn p(s: &str) -> F2Poly {
    F2Poly::parse(s).unwrap()
}

fn names(n: usize, prefix: &str) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `a --t^n--> b`, a free presentation of F2[t]/(t^n).
fn torsion_presentation(n: usize) -> FreeComplex<F2Poly> {
    let mut d = RingMatrix::zeros(2, 2);
    d.set(1, 0, F2Poly::monomial(n));
    FreeComplex::graded(names(2, "a"), vec![n as i64 - 1, 0], d).unwrap()
}

fn free_point() -> FreeComplex<F2Poly> {
    FreeComplex::graded(vec!["c".into()], vec![0], RingMatrix::zeros(1, 1)).unwrap()
}

#[test]
fn one_step_complex_is_t_power_torsion() {
    for n in 1..5 {
        let h = homology(&torsion_presentation(n)).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![F2Poly::monomial(n)]);
        let dims = graded_homology(&torsion_presentation(n)).unwrap();
        let total: usize = dims.iter().filter(|(k, _)| *k < n as i64).map(|(_, d)| d).sum();
        assert_eq!(total, n);
    }
}

#[test]
fn zero_differential_dimension() {
    let c: FreeComplex<Gf2> = FreeComplex::zero(4);
    assert_eq!(homology(&c).unwrap().dimension(), 4);
}

#[test]
fn cone_onto_truncated_polynomial_is_free_rank_one() {
    for n in 1..5 {
        let tgt = torsion_presentation(n);
        let mut f = RingMatrix::zeros(2, 1);
        f.set(1, 0, F2Poly::one());
        let map = ChainMap::new(free_point().shift(0), tgt, f).unwrap();
        let c = cone(&map).unwrap();
        assert_eq!(homology(&c).unwrap(), ModuleReport::free(1));
    }
}

#[test]
fn cone_of_identity_is_acyclic() {
    let c = torsion_presentation(3);
    assert!(homology(&cone(&ChainMap::identity(&c)).unwrap()).unwrap().is_zero());
}

#[test]
fn cone_of_zero_map_splits() {
    let a = torsion_presentation(2);
    let b = free_point();
    let c = cone(&ChainMap::zero(&a, &b)).unwrap();
    let expected = homology(&a).unwrap().direct_sum(&homology(&b).unwrap());
    assert_eq!(homology(&c).unwrap(), expected);
}

#[test]
fn cone_of_multiplication_by_t() {
    let mut f = RingMatrix::zeros(1, 1);
    f.set(0, 0, p("t"));
    let src = free_point().shift(1);
    let c = cone(&ChainMap::new(src, free_point(), f).unwrap()).unwrap();
    assert_eq!(homology(&c).unwrap().torsion, vec![p("t")]);
    let dims = graded_homology(&c).unwrap();
    assert_eq!(dims.iter().map(|x| x.1).sum::<usize>(), 1);
}

#[test]
fn non_complex_rejected_with_product() {
    let d = RingMatrix::from_bits(2, 2, |i, j| i == 1 || j == 1);
    match FreeComplex::anonymous(d) {
        Err(crate::Error::DSquaredNonzero { product }) => assert!(product.contains('1')),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn grading_and_filtration_checked() {
    let d = RingMatrix::from_bits(2, 2, |i, j| i == 1 && j == 0);
    assert!(FreeComplex::graded(names(2, "x"), vec![0, 1], d.clone()).is_ok());
    assert!(FreeComplex::graded(names(2, "x"), vec![0, 2], d.clone()).is_err());
    let c = FreeComplex::anonymous(d).unwrap();
    assert!(c.clone().with_filtration(vec![0, 1]).is_ok());
    assert!(c.with_filtration(vec![1, 0]).is_err());
}

#[test]
fn group_ring_homology_rejected() {
    use crate::coeff_algebra::GroupRingElem;
    let c: FreeComplex<GroupRingElem> = FreeComplex::zero(1);
    assert!(matches!(homology(&c), Err(crate::Error::NotPid { .. })));
}

#[test]
fn trivial_filtration_degenerates_at_first_page() {
    let d = RingMatrix::from_bits(3, 3, |i, j| i == 1 && j == 0);
    let c = FreeComplex::graded(names(3, "x"), vec![0, 1, 1], d).unwrap().with_filtration(vec![0, 0, 0]).unwrap();
    let s = spectral_pages(&c, 3).unwrap();
    assert_eq!(s.degeneration_page, 1);
    assert_eq!(s.pages[0].dimension(), 1);
    assert_eq!(s.e_infinity, homology(&c).unwrap());
}

#[test]
fn filtration_jump_two_degenerates_at_page_three() {
    let d = RingMatrix::from_bits(2, 2, |i, j| i == 1 && j == 0);
    let c = FreeComplex::anonymous(d).unwrap().with_filtration(vec![0, 2]).unwrap();
    let s = spectral_pages(&c, 4).unwrap();
    let dims: Vec<usize> = s.pages.iter().map(|m| m.dimension()).collect();
    assert_eq!(dims, vec![2, 2, 0, 0]);
    assert_eq!(s.degeneration_page, 3);
}

#[test]
fn unfiltered_spectral_sequence_rejected() {
    let c: FreeComplex<Gf2> = FreeComplex::zero(1);
    assert_eq!(spectral_pages(&c, 2).unwrap_err(), crate::Error::Unfiltered);
}

#[test]
fn homotopy_examples() {
    let c: FreeComplex<Gf2> = FreeComplex::zero(2);
    let id = ChainMap::identity(&c);
    assert!(verify_homotopy(&id, &id, &RingMatrix::zeros(2, 2)).unwrap());
    let z = ChainMap::zero(&c, &c);
    assert!(!verify_homotopy(&id, &z, &RingMatrix::zeros(2, 2)).unwrap());
    let d = RingMatrix::from_bits(2, 2, |i, j| i == 1 && j == 0);
    let a = FreeComplex::anonymous(d).unwrap();
    let h = RingMatrix::from_bits(2, 2, |i, j| i == 0 && j == 1);
    let id = ChainMap::identity(&a);
    assert!(verify_homotopy(&id, &ChainMap::zero(&a, &a), &h).unwrap());
}

#[test]
fn tensor_with_unit() {
    let a = torsion_presentation(2);
    let t = tensor_complexes(&a, &free_point());
    assert_eq!(homology(&t).unwrap(), homology(&a).unwrap());
}

fn poly_strategy() -> impl Strategy<Value = F2Poly> {
    prop::collection::vec(any::<bool>(), 0..4).prop_map(|b| F2Poly::from_bits(&b))
}

/// Random complex: `d = Q N Q^-1` where `N` pairs generators with polynomial labels.
fn random_complex() -> impl Strategy<Value = FreeComplex<F2Poly>> {
    (1usize..4, 0usize..3, prop::collection::vec(poly_strategy(), 3), prop::collection::vec(poly_strategy(), 36)).prop_map(
        |(pairs, free, labels, mix)| {
            let n = 2 * pairs + free;
            let mut d = RingMatrix::zeros(n, n);
            for k in 0..pairs {
                let l = labels[k % labels.len()].clone();
                d.set(2 * k + 1, 2 * k, if l.is_zero() { F2Poly::one() } else { l });
            }
            let (q, qi) = unitriangular(n, &mix);
            FreeComplex::anonymous(q.mul(&d).mul(&qi)).unwrap()
        },
    )
}

fn unitriangular(n: usize, mix: &[F2Poly]) -> (RingMatrix<F2Poly>, RingMatrix<F2Poly>) {
    let mut nil = RingMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            nil.set(i, j, mix[k % mix.len()].clone());
            k += 1;
        }
    }
    let q = RingMatrix::identity(n).add(&nil);
    let mut inv = RingMatrix::identity(n);
    let mut pw = RingMatrix::identity(n);
    for _ in 1..n {
        pw = pw.mul(&nil);
        inv = inv.add(&pw);
    }
    (q, inv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_invariant_under_basis_change(c in random_complex(), mix in prop::collection::vec(poly_strategy(), 40)) {
        let (q, qi) = unitriangular(c.len(), &mix);
        prop_assert_eq!(q.mul(&qi), RingMatrix::identity(c.len()));
        let c2 = c.conjugate(&q.transpose(), &qi.transpose()).unwrap();
        prop_assert_eq!(homology(&c).unwrap(), homology(&c2).unwrap());
    }

    #[test]
    fn cone_rank_bound(a in random_complex(), b in random_complex(), entries in prop::collection::vec(any::<bool>(), 64)) {
        // f = d_B g + g d_A is always a chain map
        let g = RingMatrix::from_fn(b.len(), a.len(), |i, j| F2Poly::from_bits(&[entries[i * 8 + j]]));
        let f = b.d().mul(&g).add(&g.mul(a.d()));
        let map = ChainMap::new(a.clone(), b.clone(), f).unwrap();
        let hc = homology(&cone(&map).unwrap()).unwrap();
        let (ha, hb) = (homology(&a).unwrap(), homology(&b).unwrap());
        prop_assert!(hc.free_rank <= ha.free_rank + hb.free_rank);
        // null-homotopic maps have split cones
        prop_assert_eq!(hc, ha.direct_sum(&hb));
    }

    #[test]
    fn e_infinity_matches_total_rank(c in random_complex(), levels in prop::collection::vec(0i64..3, 12)) {
        let n = c.len();
        // an admissible filtration: levels along a non-decreasing order of d
        let mut filt = vec![0i64; n];
        for j in 0..n {
            filt[j] = filt[j].max(levels[j]);
            for i in 0..n {
                if !c.d().get(i, j).is_zero() {
                    filt[i] = filt[i].max(filt[j]);
                }
            }
        }
        if let Ok(fc) = c.clone().with_filtration(filt) {
            let s = spectral_pages(&fc, 2).unwrap();
            prop_assert_eq!(s.e_infinity.free_rank, homology(&c).unwrap().free_rank);
        }
    }
}
