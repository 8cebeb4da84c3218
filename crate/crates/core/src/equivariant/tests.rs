use proptest::prelude::*;

use super::*;
use crate::coeff_algebra::{BitMatrix, BitVec, F2Poly, GroupRingElem, RingMatrix};
use crate::complexes::{homology, verify_homotopy, BarKind, ChainMap, ModuleReport};
use crate::generate::{random_finite_type, seeded, unitriangular_inverse};

fn block(kind: BlockKind, n: usize) -> Z2FreeComplex {
    finite_type_blocks(kind, n).unwrap()
}

#[test]
fn b0_quotient_and_borel() {
    let b = block(BlockKind::B0, 1);
    let af = a_f2(&b);
    assert!(af.complex.d().is_zero());
    assert!(af.t.is_zero());
    assert_eq!(af.homology().dimension(), 1);
    // F2[t]/(t), computed independently as the cokernel of x ↦ t(x + ιx)
    assert_eq!(homology(&borel(&b, 1).unwrap()).unwrap(), ModuleReport::new(0, &[F2Poly::monomial(1)]));
}

#[test]
fn binfty_quotient_is_shift() {
    let b = block(BlockKind::Binfty, 3);
    let af = a_f2(&b);
    assert!(af.complex.d().is_zero());
    for j in 0..b.len() {
        for i in 0..b.len() {
            assert_eq!(af.t.get(i, j).0, i == j + 1);
        }
    }
    assert_eq!(af.bars().unwrap().pattern(), "F2[t,t^-1]");
}

#[test]
fn norm_arrow_quotient() {
    let mut d = RingMatrix::zeros(2, 2);
    d.set(1, 0, GroupRingElem::NORM);
    let a = Z2FreeComplex::new(vec!["x0".into(), "x1".into()], d).unwrap();
    let af = a_f2(&a);
    assert!(af.complex.d().is_zero());
    assert!(af.t.get(1, 0).0 && !af.t.get(0, 1).0);
}

#[test]
fn block_shapes() {
    assert_eq!(block(BlockKind::B0, 5).len(), 1);
    let bp = block(BlockKind::Bplus, 3);
    assert_eq!(bp.len(), 3);
    assert_eq!(bp.d().nonzero_entries().count(), 2);
    let bi = block(BlockKind::Binfty, 1);
    assert_eq!(bi.len(), 3);
    assert_eq!(bi.grading().unwrap(), &[-1, 0, 1]);
    assert!(finite_type_blocks(BlockKind::Bplus, 0).is_err());
    assert!(finite_type_blocks(BlockKind::Binfty, 0).is_err());
}

#[test]
fn block_patterns_and_quasi_isomorphism() {
    let expect = [
        (BlockKind::B0, "F2"),
        (BlockKind::Bplus, "F2[t]"),
        (BlockKind::Bminus, "t^-1F2[t^-1]"),
        (BlockKind::Binfty, "F2[t,t^-1]"),
    ];
    for (kind, pattern) in expect {
        let b = block(kind, 6);
        assert_eq!(a_f2(&b).bars().unwrap().pattern(), pattern, "{kind}");
        assert_eq!(borel_bars(&b).unwrap().pattern(), pattern, "{kind} borel");
        assert!(quasi_iso_certificate(&b).unwrap().holds(), "{kind}");
    }
}

#[test]
fn bminus_classes_are_t_torsion() {
    let r = borel_bars(&block(BlockKind::Bminus, 5)).unwrap();
    assert!(r.is_t_torsion());
    assert_eq!(r.bars[0].kind, BarKind::DownOpen);
}

#[test]
fn regular_representation_borel() {
    // one free generator with d = 0: Borel homology is F2
    let a = Z2FreeComplex::new(vec!["x".into()], RingMatrix::zeros(1, 1)).unwrap();
    let h = homology(&borel(&a, 3).unwrap()).unwrap();
    assert_eq!(h.torsion_dimension(), 1);
    assert_eq!(h.free_rank, 0);
}

#[test]
fn borel_requires_positive_truncation() {
    assert!(borel(&block(BlockKind::B0, 1), 0).is_err());
}

#[test]
fn truncated_borel_dimensions() {
    // B0 mod t^n: Borel homology F2[t]/(t) ⊗^L F2[t]/(t^n) has dimension 2
    let c = borel_truncated(&block(BlockKind::B0, 1), 4).unwrap();
    assert_eq!(homology(&c).unwrap().dimension(), 2);
}

#[test]
fn ainfty_examples() {
    let t1 = BitMatrix::from_ring(&RingMatrix::from_bits(2, 2, |i, j| i == 1 && j == 0));
    let t2 = BitMatrix::from_ring(&RingMatrix::from_bits(2, 2, |i, j| i == j));
    let h = BitMatrix::from_ring(&RingMatrix::from_bits(2, 2, |i, j| i == 0 && j == 0));
    let b = BitVec::from_bools(&[true, false]);
    assert!(ainfty_f2(0, &b, &t1, &t2, &h).is_zero());
    assert_eq!(ainfty_f2(1, &b, &t1, &t2, &h), h.mul_vec(&b));
    let two = t1.mul_vec(&h.mul_vec(&b));
    let mut expected = two;
    expected.xor_assign(&h.mul_vec(&t2.mul_vec(&b)));
    assert_eq!(ainfty_f2(2, &b, &t1, &t2, &h), expected);
}

#[test]
fn tensor_examples() {
    let b0 = block(BlockKind::B0, 1);
    let t = tensor_z2(&b0, &b0).unwrap();
    assert_eq!(t.len(), 2);
    assert!(t.d().is_zero());
    let t = tensor_z2(&b0, &block(BlockKind::Bplus, 2)).unwrap();
    assert_eq!(t.len(), 4);
    // x ⊗ x'_0 ↦ x ⊗ x'_1 + x ⊗ ιx'_1
    assert_eq!(*t.d().get(1, 0), GroupRingElem::ONE);
    assert_eq!(*t.d().get(3, 0), GroupRingElem::ONE);
    let empty = Z2FreeComplex::new(vec![], RingMatrix::zeros(0, 0)).unwrap();
    assert!(tensor_z2(&b0, &empty).unwrap().is_empty());
}

fn presentation(n: usize) -> crate::complexes::FreeComplex<F2Poly> {
    let mut d = RingMatrix::zeros(2, 2);
    d.set(1, 0, F2Poly::monomial(n));
    crate::complexes::FreeComplex::anonymous(d).unwrap()
}

#[test]
fn derived_tensor_examples() {
    // Tor of F2 with itself over F2[t]: Tor_0 = Tor_1 = F2
    let h = homology(&derived_tensor(&presentation(1), &presentation(1))).unwrap();
    assert_eq!(h.torsion, vec![F2Poly::monomial(1), F2Poly::monomial(1)]);
    let unit = crate::complexes::FreeComplex::<F2Poly>::zero(1);
    assert_eq!(homology(&derived_tensor(&presentation(3), &unit)).unwrap(), homology(&presentation(3)).unwrap());
    assert_eq!(homology(&derived_tensor(&unit, &unit)).unwrap(), ModuleReport::free(1));
}

#[test]
fn d_tensor_model_is_borel_tensor() {
    let a = block(BlockKind::Bplus, 2);
    let b = block(BlockKind::Binfty, 1);
    let model = d_tensor_model(&a, &b).unwrap();
    let tensor = derived_tensor(&borel(&a, 1).unwrap(), &borel(&b, 1).unwrap());
    assert_eq!(model.d(), tensor.d());
}

#[test]
fn monoidal_examples() {
    let b0 = block(BlockKind::B0, 1);
    let r = verify_monoidal(&b0, &b0).unwrap();
    assert!(r.agree());
    // B0 ⊗ B0 is free of rank two, so each side is two copies of F2
    assert_eq!(r.lhs.unwrap().torsion, vec![F2Poly::monomial(1); 2]);
    assert!(verify_monoidal(&block(BlockKind::Bplus, 4), &b0).unwrap().agree());
    let bi = block(BlockKind::Binfty, 2);
    let r = verify_monoidal(&bi, &bi).unwrap();
    assert!(r.agree());
    assert!(r.edge_affected);
}

#[test]
fn relabel_changes_t_by_exact_term() {
    let a = random_finite_type(&mut seeded(7), 12);
    let flip: Vec<usize> = [0, 2, 3].into_iter().filter(|&i| i < a.len()).collect();
    let (b, h) = a.relabel(&flip).unwrap();
    let (fa, fb) = (a_f2(&a), a_f2(&b));
    assert_eq!(fa.complex.d(), fb.complex.d());
    let c = &fa.complex;
    let t1 = ChainMap::new(c.clone(), c.clone(), fa.t.clone()).unwrap();
    let t2 = ChainMap::new(c.clone(), c.clone(), fb.t.clone()).unwrap();
    assert!(verify_homotopy(&t1, &t2, &h).unwrap());
}

fn finite_type() -> impl Strategy<Value = Z2FreeComplex> {
    any::<u64>().prop_map(|s| random_finite_type(&mut seeded(s), 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witness_identity_exact(a in finite_type()) {
        let cmp = comparison_f(&a);
        prop_assert!(cmp.chain_map().is_ok());
        prop_assert!(cmp.witness_holds());
    }

    #[test]
    fn comparison_is_quasi_isomorphism(a in finite_type()) {
        let cert = quasi_iso_certificate(&a).unwrap();
        prop_assert!(cert.holds(), "{:?}", cert);
    }

    #[test]
    fn relabel_homotopy(a in finite_type(), mask in any::<u32>()) {
        let flip: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).collect();
        let (b, h) = a.relabel(&flip).unwrap();
        let (fa, fb) = (a_f2(&a), a_f2(&b));
        let c = &fa.complex;
        let t1 = ChainMap::new(c.clone(), c.clone(), fa.t.clone()).unwrap();
        let t2 = ChainMap::new(c.clone(), c.clone(), fb.t.clone()).unwrap();
        prop_assert!(verify_homotopy(&t1, &t2, &h).unwrap());
    }

    #[test]
    fn a_f2_functorial(a in finite_type(), seed in any::<u64>()) {
        // two automorphisms of the underlying module, composed
        let g = a.grading().unwrap().to_vec();
        let mut rng = seeded(seed);
        let n1 = crate::generate::degree_preserving_nilpotent(&mut rng, &g, 0.5, crate::generate::random_group_elem);
        let n2 = crate::generate::degree_preserving_nilpotent(&mut rng, &g, 0.5, crate::generate::random_group_elem);
        let id = RingMatrix::identity(a.len());
        let (p, q) = (id.add(&n1), id.add(&n2));
        prop_assert_eq!(a_f2_map(&p.mul(&q)), a_f2_map(&p).mul(&a_f2_map(&q)));
        let b = a.conjugate(&p, &unitriangular_inverse(&n1)).unwrap();
        let fp = a_f2_map(&p);
        prop_assert!(ChainMap::new(a_f2(&a).complex, a_f2(&b).complex, fp).is_ok());
    }

    #[test]
    fn derived_tensor_symmetric(a in finite_type(), b in finite_type()) {
        let (ba, bb) = (borel(&a, 1).unwrap(), borel(&b, 1).unwrap());
        prop_assume!(ba.len() * bb.len() <= 300);
        let x = homology(&derived_tensor(&ba, &bb)).unwrap();
        let y = homology(&derived_tensor(&bb, &ba)).unwrap();
        prop_assert_eq!(x, y);
    }
}
