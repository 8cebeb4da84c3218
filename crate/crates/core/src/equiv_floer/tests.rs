use proptest::prelude::*;

use super::*;
use crate::coeff_algebra::{F2Laurent, F2Poly, RingMatrix};
use crate::complexes::{homology, BarKind, ModuleReport};
use crate::generate::{random_equivariant, random_graded_complex, seeded};
use crate::morse_km::verify_triangle;
use crate::twisted::CriticalPoint;

fn complex(labels: &[&str], grading: &[i64], edges: &[(usize, usize)]) -> FreeComplex<Gf2> {
    let n = labels.len();
    let d = RingMatrix::from_bits(n, n, |i, j| edges.contains(&(i, j)));
    FreeComplex::graded(labels.iter().map(|s| s.to_string()).collect(), grading.to_vec(), d).unwrap()
}

#[test]
fn canonical_localizes() {
    for n in 1..=4 {
        let e = canonical_trn_equivariant(n).unwrap();
        let t = assemble_equivariant(&e).unwrap();
        assert!(verify_triangle(&t.triple).is_exact());
        let l = localize_triple_for_test(&t);
        assert_eq!(l.localized, (1, 0, 1), "n = {n}");
        assert_eq!(l.check, ModuleReport::free(1));
        assert_eq!(l.patterns.2, "F2[t,t^-1]");
        assert!(l.hat_nilpotent && l.stable_iso);
        // C̄ is the twisted complex of the single fixed point.
        assert_eq!(t.twisted.as_ref().unwrap().rank(), 1);
        assert_eq!(t.triple.bar.len(), t.twisted.unwrap().windowed.unwrap().complex.len());
    }
}

fn localize_triple_for_test(t: &EquivariantTriple) -> LocalizationResult {
    localize::localize_triple(t).unwrap()
}

#[test]
fn mirrored_ladder_localizes() {
    let l = localization_map(&dual_trn_equivariant(3).unwrap()).unwrap();
    assert_eq!(l.localized, (1, 0, 1));
    assert!(l.ranks_agree());
}

#[test]
fn free_action_has_no_boundary() {
    let e = point_pair_dataset();
    let t = assemble_equivariant(&e).unwrap();
    assert!(t.twisted.is_none());
    assert!(t.triple.bar.is_empty());
    assert_eq!(t.triple.check.len(), 1);
    assert_eq!(t.triple.hat.len(), 1);
    assert_eq!(localization_map(&e).unwrap().localized, (0, 0, 0));
}

#[test]
fn fixed_points_only() {
    let l = localization_map(&invariant_point_dataset()).unwrap();
    assert_eq!(l.localized, (1, 0, 1));
    assert_eq!(l.check, ModuleReport::free(1));
}

#[test]
fn index_bookkeeping_is_checked() {
    let mut e = canonical_trn_equivariant(2).unwrap();
    e.interior[1].mu = 2;
    assert!(matches!(e.validate(), Err(Error::Index(_))));

    let mut e = canonical_trn_equivariant(2).unwrap();
    // A stable level flowing down to a pair has the wrong sign of level.
    e.interior.push(InteriorCount::new(Endpoint::Level("x".into(), 0), Endpoint::Pair("y1".into()), 1, GroupRingElem::ONE));
    assert!(matches!(e.validate(), Err(Error::Index(_))));

    let mut e = canonical_trn_equivariant(2).unwrap();
    e.interior.push(InteriorCount::new(Endpoint::Pair("y9".into()), Endpoint::Pair("y1".into()), 1, GroupRingElem::ONE));
    assert!(matches!(e.validate(), Err(Error::UnknownLabel(l)) if l == "y9"));

    let mut e = canonical_trn_equivariant(1).unwrap();
    e.pairs[0].label = "x".into();
    assert!(matches!(e.validate(), Err(Error::DuplicateLabel(_))));
}

#[test]
fn action_must_rise() {
    let mut e = canonical_trn_equivariant(2).unwrap();
    e.pairs[0].action = Some(Rational64::from_integer(3));
    e.pairs[1].action = Some(Rational64::from_integer(1));
    assert!(matches!(e.validate(), Err(Error::Action(_))));
}

#[test]
fn ungraded_boundary_is_missing_data() {
    let mut e = invariant_point_dataset();
    e.boundary.points = vec![CriticalPoint::new("x", 0)];
    e.boundary.points.push(CriticalPoint::new("w", 1));
    e.boundary.classes = vec![
        crate::twisted::TrajectoryClass::new("u", "w", "x", 0).with_count(0, true, false),
        crate::twisted::TrajectoryClass::new("v", "w", "x", 1).with_count(-1, false, false),
    ];
    assert!(matches!(e.validate(), Err(Error::MissingData(_))));
}

#[test]
fn upstairs_must_commute_with_iota() {
    let mut e = canonical_trn_equivariant(1).unwrap();
    let up = e.upstairs.take().unwrap();
    let mut d = up.d().clone();
    // x -> y1 only, not ιy1.
    d.set(2, 0, Gf2(false));
    e.upstairs = Some(FreeComplex::graded(up.labels().to_vec(), up.grading().unwrap().to_vec(), d).unwrap());
    assert!(matches!(e.validate(), Err(Error::NonEquivariant(_))));
}

#[test]
fn g_on_the_two_basic_cases() {
    // One invariant point: G is the identity F2[t] -> F2[t].
    let g = map_g(&invariant_point_dataset()).unwrap();
    let x0 = g.check.complex.index_of("x@0").unwrap();
    assert_eq!(g.g.nonzero_entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>(), vec![(x0, 0)]);
    // One free orbit: 1 -> 1 and ι -> 0.
    let g = map_g(&point_pair_dataset()).unwrap();
    assert_eq!(g.g, RingMatrix::from_bits(1, 2, |_, j| j == 0));
    for e in [invariant_point_dataset(), point_pair_dataset()] {
        let g = map_g(&e).unwrap();
        for n in 1..=4 {
            let r = g.truncation(n).unwrap();
            assert!(r.is_iso(), "n = {n}: {r:?}");
        }
    }
}

#[test]
fn point_pair_truncation_dimensions() {
    // F2 ⊗^L F2[t]/t^n is F2 in degree 0 and F2 in degree n - 1.
    let r = map_g(&point_pair_dataset()).unwrap().truncation(3).unwrap();
    let dims: Vec<(i64, usize)> = r.degrees.iter().filter(|d| d.source_dim > 0).map(|d| (d.degree, d.source_dim)).collect();
    assert_eq!(dims, vec![(0, 1), (2, 1)]);
    assert!(matches!(map_g(&point_pair_dataset()).unwrap().truncation(0), Err(Error::InvalidArgument(_))));
}

#[test]
fn g_needs_regular_upstairs_data() {
    let mut e = canonical_trn_equivariant(2).unwrap();
    e.regular = false;
    assert!(matches!(map_g(&e), Err(Error::InvalidArgument(_))));
    let mut e = canonical_trn_equivariant(2).unwrap();
    e.upstairs = None;
    assert!(matches!(map_g(&e), Err(Error::MissingData(_))));
}

#[test]
fn broken_coincidence_is_not_a_chain_map() {
    let mut e = canonical_trn_equivariant(1).unwrap();
    // Upstairs x is now a cycle, while downstairs (x, 0) still reaches y1.
    let up = e.upstairs.take().unwrap();
    e.upstairs = Some(FreeComplex::graded(up.labels().to_vec(), up.grading().unwrap().to_vec(), RingMatrix::zeros(3, 3)).unwrap());
    assert!(e.validate().is_ok());
    assert!(matches!(map_g(&e), Err(Error::NotChainMap(_))));
}

#[test]
fn canonical_truncations() {
    let e = canonical_trn_equivariant(2).unwrap();
    let one = ss_truncate(&e, 1).unwrap();
    assert_eq!(one, ModuleReport::new(0, &[F2Poly::monomial(1)]));
    assert_eq!(one.torsion_dimension(), 1);
    assert!(matches!(ss_truncate(&e, 0), Err(Error::InvalidArgument(_))));
    let g = map_g(&e).unwrap();
    for n in 1..=3 {
        assert!(g.truncation(n).unwrap().is_iso());
    }
    let tower = ss_tower(&e, 4).unwrap();
    assert_eq!((tower.free_rank, tower.torsion_bound), (1, 0));
    assert!(tower.stabilizes() && tower.compatible() && tower.chain_matches_model());
}

#[test]
fn free_action_truncation_keeps_torsion() {
    // A free orbit y with y -> z weighted 1 + ι: a free circle, so
    // Ȟ = F2[t]/t^2 and each level is two copies of F2[t]/t^min(n, 2).
    let e = EquivariantDataset {
        pairs: vec![PairPoint::new("y", 0), PairPoint::new("z", 1)],
        interior: vec![InteriorCount::new(Endpoint::Pair("z".into()), Endpoint::Pair("y".into()), 1, GroupRingElem::NORM)],
        ..Default::default()
    };
    let tower = ss_tower(&e, 3).unwrap();
    assert_eq!((tower.free_rank, tower.torsion_bound), (0, 2));
    for l in &tower.levels {
        let k = l.n.min(2);
        assert_eq!(l.report, ModuleReport::new(0, &[F2Poly::monomial(k), F2Poly::monomial(k)]));
        assert_eq!(l.chain_dim, 2 * k);
    }
    assert!(tower.stabilizes() && tower.compatible());
}

#[test]
fn smith_reports_both_sides() {
    let r = smith_report(&canonical_trn_equivariant(3).unwrap()).unwrap();
    assert_eq!((r.upstairs_dim, r.twisted_rank), (1, 1));
    let r = smith_report(&point_pair_dataset()).unwrap();
    assert_eq!((r.upstairs_dim, r.twisted_rank), (2, 0));
    assert!(r.holds());
    let mut e = point_pair_dataset();
    e.upstairs = None;
    assert!(matches!(smith_report(&e), Err(Error::MissingData(_))));
    // The self-product of a single generator: Sq is an isomorphism, and
    // both sides are one.
    let v = complex(&["a"], &[0], &[]);
    let r = smith_report(&diagonal_dataset(&v).unwrap()).unwrap();
    assert_eq!((r.upstairs_dim, r.twisted_rank), (1, 1));
}

#[test]
fn single_generator_square() {
    let v = complex(&["a"], &[3], &[]);
    let r = steenrod_square(&v).unwrap();
    assert!(r.is_iso() && r.doubles_degree && r.degenerates_at_e2());
    let c = &r.classes[0];
    assert_eq!((c.degree, c.image_degree), (3, 6));
    assert!(c.sq0_is_identity() && c.higher_vanish());
    assert_eq!(c.squares.get(&0), Some(&vec!["a".to_string()]));
}

#[test]
fn product_model_matches_the_pipeline() {
    // For one generator the diagonal dataset is one fixed point and no
    // pairs; its localization agrees with the square.
    let v = complex(&["a"], &[1], &[]);
    let e = diagonal_dataset(&v).unwrap();
    assert!(e.pairs.is_empty());
    let l = localization_map(&e).unwrap();
    assert_eq!(l.localized.2, steenrod_square(&v).unwrap().twisted_rank);
    assert!(map_g(&e).unwrap().chain_identity());
}

#[test]
fn diagonal_counts() {
    // a -> b: (a, 0) -> {a, b}, and a ⊗ b -> b ⊗ b at level -1.
    let v = complex(&["a", "b"], &[0, 1], &[(1, 0)]);
    let e = diagonal_dataset(&v).unwrap();
    assert_eq!(e.pairs, vec![PairPoint::new("a|b", 1)]);
    let mut got: Vec<(String, String)> = e.interior.iter().map(|c| (c.minus.to_string(), c.plus.to_string())).collect();
    got.sort();
    assert_eq!(got, vec![("a|b".to_string(), "a@0".to_string()), ("b@-1".to_string(), "a|b".to_string())]);
    assert!(assemble_equivariant(&e).is_ok());
    assert!(map_g(&e).unwrap().chain_identity());
    let r = steenrod_square(&v).unwrap();
    assert_eq!((r.h_dim, r.twisted_rank), (0, 0));
    assert!(r.is_iso());
}

#[test]
fn branching_diagonal_breaks_relations() {
    // a -> b and a -> c: the forced counts leave the os relation unbalanced,
    // yet the square is still an isomorphism.
    let v = complex(&["a", "b", "c"], &[0, 1, 1], &[(1, 0), (2, 0)]);
    assert!(matches!(assemble_equivariant(&diagonal_dataset(&v).unwrap()), Err(Error::Relation { .. })));
    let r = steenrod_square(&v).unwrap();
    assert_eq!(r.h_dim, 1);
    assert!(r.is_iso() && r.doubles_degree);
}

#[test]
fn square_needs_grading() {
    let v = FreeComplex::<Gf2>::zero(2);
    assert!(matches!(steenrod_square(&v), Err(Error::MissingData(_))));
    assert!(matches!(diagonal_dataset(&v), Err(Error::MissingData(_))));
}

#[test]
fn kunneth_on_points() {
    let k = kunneth_point_model(0);
    let a = F2Laurent::from_exponents([0, 3]);
    let b = F2Laurent::from_exponents([-1]);
    assert_eq!(k.apply(&a, &b), a.mul(&b));
    let k = kunneth_point_model(2);
    assert_eq!(k.apply(&F2Laurent::one(), &F2Laurent::one()), F2Laurent::monomial(2));
    assert_eq!(k.derived_rank(), 1);
    assert!(k.is_iso());
}

#[test]
fn tags_and_shifts_keep_validity() {
    let e = canonical_trn_equivariant(2).unwrap().tagged("q").shifted(3);
    assert!(e.pairs.iter().all(|p| p.label.ends_with("_q")));
    assert_eq!(e.pairs[0].degree, 4);
    assert!(map_g(&e).unwrap().chain_identity());
    let sum = e.direct_sum(&dual_trn_equivariant(1).unwrap());
    assert_eq!(localization_map(&sum).unwrap().localized, (2, 0, 2));
}

#[test]
fn generated_datasets_mix_pieces() {
    let (mut regular, mut boundary_only, mut with_pairs) = (0, 0, 0);
    for seed in 0..40 {
        let e = random_equivariant(&mut seeded(seed), 4);
        if e.regular {
            regular += 1;
        } else {
            boundary_only += 1;
        }
        if !e.pairs.is_empty() && !e.boundary.points.is_empty() {
            with_pairs += 1;
        }
    }
    assert!(regular >= 5 && boundary_only >= 5 && with_pairs >= 5, "{regular} {boundary_only} {with_pairs}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_localization(seed in any::<u64>()) {
        let e = random_equivariant(&mut seeded(seed), 4);
        let t = assemble_equivariant(&e).unwrap();
        prop_assert!(verify_triangle(&t.triple).is_exact());
        let l = localize::localize_triple(&t).unwrap();
        prop_assert_eq!(l.localized.1, 0);
        prop_assert!(l.ranks_agree(), "{:?}", l.localized);
        prop_assert!(l.hat_nilpotent && l.stable_iso);
        prop_assert!(l.hat.is_torsion());
        prop_assert!(!t.triple.bars().unwrap().hat.bars.iter().any(|b| matches!(b.kind, BarKind::UpOpen | BarKind::BothOpen)));
        if let Some(tw) = &t.twisted {
            prop_assert_eq!(tw.rank(), l.localized.2);
        }
    }

    #[test]
    fn generated_g_is_a_chain_map(seed in any::<u64>()) {
        let e = random_equivariant(&mut seeded(seed), 4);
        prop_assume!(e.regular);
        let g = map_g(&e).unwrap();
        prop_assert!(g.chain_identity());
        let r = g.truncation(2).unwrap();
        prop_assert!(r.is_iso(), "{:?}", r);
    }

    #[test]
    fn generated_towers_stabilize(seed in any::<u64>()) {
        let e = random_equivariant(&mut seeded(seed), 4);
        let t = ss_tower(&e, 3).unwrap();
        prop_assert!(t.stabilizes() && t.compatible() && t.chain_matches_model());
        // Oracle: r n + 2 Σ min(k, n).
        for l in &t.levels {
            prop_assert_eq!(l.report.free_rank, 0);
        }
    }

    #[test]
    fn squares_are_isomorphisms(seed in any::<u64>()) {
        let v = random_graded_complex(&mut seeded(seed), 10);
        let r = steenrod_square(&v).unwrap();
        prop_assert_eq!(r.h_dim, homology(&v).unwrap().dimension());
        prop_assert!(r.is_iso() && r.doubles_degree && r.degenerates_at_e2());
        prop_assert!(r.classes.iter().all(|c| c.sq0_is_identity() && c.higher_vanish()));
    }
}

