use proptest::prelude::*;

use super::*;
use crate::coeff_algebra::{laurent_inverse_series, F2Poly};
use crate::complexes::spectral_pages;
use crate::generate::{random_twisted, seeded};

fn point(label: &str, index: i64) -> CriticalPoint {
    CriticalPoint::new(label, index).with_s(0)
}

fn dataset(points: Vec<CriticalPoint>, classes: Vec<TrajectoryClass>) -> TwistedDataset {
    TwistedDataset { points, classes, compositions: Vec::new(), window: 3 }
}

#[test]
fn single_point_is_laurent_line() {
    let tw = dataset(vec![point("x", 0)], Vec::new());
    let c = build_twisted(&tw).unwrap();
    assert_eq!(c.homology(), ModuleReport::free(1));
    let w = c.windowed.as_ref().unwrap();
    // constant trajectories: two solutions per step, one of them negative
    assert!(w.complex.d().is_zero());
    for j in 0..w.complex.len() {
        for i in 0..w.complex.len() {
            assert_eq!(w.t.get(i, j).0, i == j + 1);
        }
    }
    let r = c.window_report().unwrap();
    assert_eq!(r.bars.pattern(), "F2[t,t^-1]");
    assert_eq!(r.laurent_rank, 1);
    assert!(verify_t_invertible(&c));
}

#[test]
fn unit_trajectory_is_acyclic() {
    let tw = dataset(
        vec![point("p", 0), point("q", 1)],
        vec![TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false)],
    );
    let c = build_twisted(&tw).unwrap();
    assert!(c.homology().is_zero());
    let r = c.window_report().unwrap();
    assert_eq!(r.laurent_rank, 0);
    assert!(r.is_periodic());
}

#[test]
fn equal_shift_trajectories_cancel() {
    let tw = dataset(
        vec![point("p", 0), point("q", 1)],
        vec![
            TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false),
            TrajectoryClass::new("v", "q", "p", 0).with_count(0, true, false),
        ],
    );
    let c = build_twisted(&tw).unwrap();
    assert!(c.laurent.d().is_zero());
    assert_eq!(c.homology(), ModuleReport::free(2));
}

#[test]
fn rejects_bad_counts() {
    let pts = || vec![point("p", 0), point("q", 1)];
    let wrong_shift = dataset(pts(), vec![TrajectoryClass::new("u", "q", "p", 0).with_count(1, true, false)]);
    assert!(matches!(wrong_shift.validate(), Err(Error::Admissibility(_))));
    let mut uneven = TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false);
    uneven.counts.push(CountEntry { shift: 0, pos: false, neg: true, level: Some(4) });
    assert!(matches!(dataset(pts(), vec![uneven]).validate(), Err(Error::NonEquivariant(_))));
    let backwards = dataset(pts(), vec![TrajectoryClass::new("u", "p", "q", 0).with_count(0, true, false)]);
    assert!(matches!(backwards.validate(), Err(Error::Index(_))));
    let dangling = dataset(pts(), vec![TrajectoryClass::new("u", "r", "p", 0)]);
    assert_eq!(dangling.validate().unwrap_err(), Error::UnknownLabel("r".into()));
    let mut lowered = pts();
    lowered[0].action = Some(Rational64::from_integer(5));
    lowered[1].action = Some(Rational64::from_integer(2));
    let lowered = dataset(lowered, vec![TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false)]);
    assert!(matches!(lowered.validate(), Err(Error::Action(_))));
}

#[test]
fn noncommuting_negative_part_is_rejected() {
    // d = 0 but T_L d + d T_L fails once a chain p -> q -> r has only one negative link
    let tw = dataset(
        vec![point("p", 0), point("q", 1), point("r", 2)],
        vec![
            TrajectoryClass::new("a", "q", "p", 0).with_count(0, true, false),
            TrajectoryClass::new("b", "r", "q", 0).with_count(0, true, true),
        ],
    );
    assert!(matches!(tw.validate(), Err(Error::NotChainMap(_))));
}

#[test]
fn zeroed_negative_counts_keep_t_invertible() {
    let tw = dataset(
        vec![point("p", 0), point("q", 1), point("r", 3)],
        vec![TrajectoryClass::new("u", "r", "p", 0).with_count(-2, true, false)],
    );
    let c = build_twisted(&tw).unwrap();
    assert!(verify_t_invertible(&c));
    assert_eq!(c.rank(), 1);
}

#[test]
fn ungraded_loop_has_no_window_model() {
    let tw = dataset(
        vec![CriticalPoint::new("p", 0), CriticalPoint::new("q", 1)],
        vec![
            TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false),
            TrajectoryClass::new("v", "q", "p", 1).with_count(-1, false, true),
        ],
    );
    let c = build_twisted(&tw).unwrap();
    assert!(c.data.degrees.is_none());
    assert!(c.windowed.is_none());
    // d = 1 + S^-1, so H = F2[t,t^-1]/(1 + t)
    assert_eq!(c.homology(), ModuleReport::new(0, &[F2Laurent::parse("1+t").unwrap()]));
    assert!(verify_t_invertible(&c));
}

#[test]
fn explicit_grading_must_match_spectral_flow() {
    let tw = dataset(
        vec![point("p", 0), CriticalPoint::new("q", 1).with_s(3)],
        vec![TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false)],
    );
    assert!(matches!(tw.validate(), Err(Error::InvalidArgument(_))));
}

#[test]
fn e2_page_examples() {
    let trivial = dataset(
        vec![point("p", 0), point("q", 1), point("r", 1)],
        vec![TrajectoryClass::new("u", "q", "p", 0).with_count(0, true, false)],
    );
    // Morse homology of p -> q, r is one class, tensored up
    assert_eq!(e2_page(&trivial).unwrap(), ModuleReport::free(1));
    let twisted = dataset(
        vec![point("p", 0), CriticalPoint::new("q", 1).with_s(1)],
        vec![TrajectoryClass::new("u", "q", "p", 1).with_count(-1, false, true)],
    );
    assert!(e2_page(&twisted).unwrap().is_zero());
    let flat = dataset(vec![point("p", 0), point("q", 2), point("r", 4)], Vec::new());
    assert_eq!(e2_page(&flat).unwrap(), ModuleReport::free(3));
}

#[test]
fn jump_two_differential_degenerates_at_page_three() {
    let tw = dataset(
        vec![point("p", 0), point("q", 2)],
        vec![TrajectoryClass::new("u", "q", "p", 0).with_count(-1, true, false)],
    );
    let c = build_twisted(&tw).unwrap();
    let s = spectral_pages(&c.laurent, 3).unwrap();
    assert_eq!(s.page(2).unwrap(), &ModuleReport::free(2));
    assert!(s.page(3).unwrap().is_zero());
    assert_eq!(s.degeneration_page, 3);
}

#[test]
fn porteous_examples() {
    let one = F2Poly::one();
    for n in 1..6 {
        assert!(!porteous_coefficient(&one, n, &[true; 8]).unwrap());
    }
    let w = F2Poly::parse("1+t").unwrap();
    for n in 1..6 {
        assert!(porteous_coefficient(&w, n, &[true; 8]).unwrap());
    }
    let w = F2Poly::parse("1+t+t^2").unwrap();
    assert!(!porteous_coefficient(&w, 2, &[true; 3]).unwrap());
    // multiply-back oracle: w * w^-1 = 1 to the truncation order
    let inv = laurent_inverse_series(&w, 10).unwrap();
    assert_eq!(w.mul(&inv).truncate(11), F2Poly::one());
    assert!(porteous_coefficient(&F2Poly::parse("t").unwrap(), 1, &[true; 2]).is_err());
}

#[test]
fn porteous_is_linear_in_pairing() {
    let w = F2Poly::parse("1+t+t^3").unwrap();
    let a = [true, false, true, true, false];
    let b = [false, true, true, false, true];
    let sum: Vec<bool> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
    for n in 0..5 {
        let lhs = porteous_coefficient(&w, n, &sum).unwrap();
        let rhs = porteous_coefficient(&w, n, &a).unwrap() ^ porteous_coefficient(&w, n, &b).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn two_point_dichotomy() {
    for n in 1..=6 {
        assert!(two_point_twisted(n, true).unwrap().is_zero());
        assert_eq!(two_point_twisted(n, false).unwrap(), ModuleReport::free(2));
    }
    assert!(two_point_twisted(0, true).is_err());
}

#[test]
fn local_system_additivity() {
    let mut tw = dataset(
        vec![point("p", 0), point("q", 1), CriticalPoint::new("r", 2)],
        vec![
            TrajectoryClass::new("a", "q", "p", 0),
            TrajectoryClass::new("b", "r", "q", 2),
            TrajectoryClass::new("c", "r", "p", 2),
        ],
    );
    tw.compositions.push(("a".into(), "b".into(), "c".into()));
    assert!(LocalSystemXi::from_dataset(&tw).verify().is_ok());
    tw.classes[2].sf = 1;
    assert!(tw.validate().is_err());
    assert_eq!(LocalSystemXi::from_dataset(&tw).monodromy("b"), Some(F2Laurent::monomial(2)));
}

#[test]
fn generated_datasets_are_valid() {
    let mut ranks = std::collections::BTreeSet::new();
    let (mut with_d, mut with_neg, mut long) = (0, 0, 0);
    for seed in 0..40 {
        let tw = random_twisted(&mut seeded(seed), 7);
        let c = build_twisted(&tw).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(c.windowed.is_some());
        ranks.insert(c.rank());
        with_d += (!c.laurent.d().is_zero()) as usize;
        with_neg += c.data.classes.iter().any(|k| k.neg) as usize;
        long += c.data.classes.iter().any(|k| k.mu(&c.data.points) >= 2 && k.pos != k.neg) as usize;
    }
    assert!(ranks.len() >= 3, "ranks {ranks:?}");
    assert!(with_d >= 20 && with_neg >= 10 && long >= 5, "{with_d} {with_neg} {long}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn e2_matches_spectral_page(seed in 0u64..10_000) {
        let tw = random_twisted(&mut seeded(seed), 7);
        let c = build_twisted(&tw).unwrap();
        let s = spectral_pages(&c.laurent, 2).unwrap();
        prop_assert_eq!(s.page(2).unwrap(), &conjugate_report(&e2_page(&tw).unwrap()));
    }

    #[test]
    fn t_invertible_and_window_stable(seed in 0u64..10_000) {
        let tw = random_twisted(&mut seeded(seed), 7);
        let c = build_twisted(&tw).unwrap();
        prop_assert!(verify_t_invertible(&c));
        prop_assert!(window_stability(&tw).unwrap());
        let r = c.window_report().unwrap();
        prop_assert!(r.is_periodic());
        // the F2 windowed computation agrees with the Laurent Smith form
        prop_assert_eq!(r.laurent_rank, c.rank());
    }

    #[test]
    fn constant_part_is_the_ladder(seed in 0u64..10_000) {
        let tw = random_twisted(&mut seeded(seed), 7);
        let c = build_twisted(&tw).unwrap();
        let w = c.windowed.unwrap();
        let labels = w.complex.labels().to_vec();
        let split = |l: &str| {
            let (x, i) = l.split_once('@').unwrap();
            (x.to_string(), i.parse::<i64>().unwrap())
        };
        for j in 0..labels.len() {
            for i in 0..labels.len() {
                let (xi, ii) = split(&labels[i]);
                let (xj, ij) = split(&labels[j]);
                if xi == xj {
                    prop_assert!(!w.complex.d().get(i, j).0);
                    prop_assert_eq!(w.t.get(i, j).0, ii == ij + 1);
                }
            }
        }
    }
}
