use polarfloer_core::coeff_algebra::{laurent_inverse_series, snf_f2t, f2_rank, F2Poly, RingMatrix};
use polarfloer_core::complexes::{homology, spectral_pages, verify_homotopy, ChainMap, ModuleReport};
use polarfloer_core::equiv_floer::{
    canonical_trn_equivariant, invariant_point_dataset, localization_map, map_g, point_pair_dataset, ss_tower,
    steenrod_square,
};
use polarfloer_core::equivariant::{
    a_f2, borel_bars, comparison_f, finite_type_blocks, quasi_iso_certificate, verify_monoidal, BlockKind,
};
use polarfloer_core::generate::{
    random_equivariant, random_finite_type, random_graded_complex, random_km, random_twisted, seeded,
};
use polarfloer_core::morse_km::{canonical_trn_dataset, verify_triangle};
use polarfloer_core::twisted::{
    build_twisted, conjugate_report, e2_page, two_point_twisted, verify_t_invertible, window_stability,
};
use rand::Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn blocks() -> Outcome {
    let expect = [
        (BlockKind::B0, "F2"),
        (BlockKind::Bplus, "F2[t]"),
        (BlockKind::Bminus, "t^-1F2[t^-1]"),
        (BlockKind::Binfty, "F2[t,t^-1]"),
    ];
    for (kind, pattern) in expect {
        let b = finite_type_blocks(kind, 8).map_err(|e| e.to_string())?;
        let q = a_f2(&b).bars().map(|r| r.pattern());
        let p = borel_bars(&b).map(|r| r.pattern());
        ensure(q.as_deref() == Some(pattern), || format!("{kind}: a_f2 gives {q:?}"))?;
        ensure(p.as_deref() == Some(pattern), || format!("{kind}: Borel gives {p:?}"))?;
        let cert = quasi_iso_certificate(&b).map_err(|e| e.to_string())?;
        ensure(cert.holds(), || format!("{kind}: F is not a quasi-isomorphism"))?;
    }
    Ok(())
}

fn ainfty_and_relabel() -> Outcome {
    for seed in 0..50 {
        let mut rng = seeded(seed);
        let a = random_finite_type(&mut rng, 20);
        let cmp = comparison_f(&a);
        ensure(cmp.chain_map().is_ok() && cmp.witness_holds(), || format!("seed {seed}: witness identity fails"))?;
        let flip: Vec<usize> = (0..a.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let (b, h) = a.relabel(&flip).map_err(|e| e.to_string())?;
        let (fa, fb) = (a_f2(&a), a_f2(&b));
        let c = &fa.complex;
        let t1 = ChainMap::new(c.clone(), c.clone(), fa.t.clone()).map_err(|e| e.to_string())?;
        let t2 = ChainMap::new(c.clone(), c.clone(), fb.t.clone()).map_err(|e| e.to_string())?;
        ensure(verify_homotopy(&t1, &t2, &h).unwrap_or(false), || format!("seed {seed}: relabel homotopy fails"))?;
    }
    Ok(())
}

fn monoidal() -> Outcome {
    let kinds = [(BlockKind::B0, 1), (BlockKind::Bplus, 4), (BlockKind::Bminus, 4), (BlockKind::Binfty, 4)];
    let mut checked = 0;
    for i in 0..kinds.len() {
        for j in i..kinds.len() {
            let a = finite_type_blocks(kinds[i].0, kinds[i].1).map_err(|e| e.to_string())?;
            let b = finite_type_blocks(kinds[j].0, kinds[j].1).map_err(|e| e.to_string())?;
            let r = verify_monoidal(&a, &b).map_err(|e| e.to_string())?;
            ensure(r.agree(), || format!("{} ⊗ {}: {r:?}", kinds[i].0, kinds[j].0))?;
            checked += 1;
        }
    }
    ensure(checked == 10, || format!("{checked} pairs"))
}

fn km_triangles() -> Outcome {
    for seed in 0..100 {
        let ds = random_km(&mut seeded(seed), 30);
        let rel = ds.validate_relations().map_err(|e| e.to_string())?;
        ensure(rel.all_hold(), || format!("seed {seed}: {:?}", rel.first_failure()))?;
        let k = ds.assemble().map_err(|e| e.to_string())?;
        let r = verify_triangle(&k);
        ensure(r.slots.iter().all(|s| s.composite_zero), || format!("seed {seed}: maps do not compose to zero"))?;
        ensure(r.is_exact(), || format!("seed {seed}: {r:?}"))?;
    }
    Ok(())
}

fn canonical_trn() -> Outcome {
    for n in 1..=5 {
        let k = canonical_trn_dataset(n).and_then(|d| d.assemble()).map_err(|e| e.to_string())?;
        let bars = k.bars().ok_or("no graded bars")?;
        ensure(bars.check.to_module_report() == ModuleReport::free(1), || format!("n = {n}: Ȟ"))?;
        ensure(bars.hat.is_t_torsion(), || format!("n = {n}: Ĥ is not torsion"))?;
        ensure(bars.bar.pattern() == "F2[t,t^-1]", || format!("n = {n}: H̄ is {}", bars.bar.pattern()))?;
        ensure(bars.localized_ranks() == (1, 0, 1), || format!("n = {n}: {:?}", bars.localized_ranks()))?;
        let l = canonical_trn_equivariant(n).and_then(|e| localization_map(&e)).map_err(|e| e.to_string())?;
        ensure(l.localized == (1, 0, 1), || format!("n = {n}: equivariant {:?}", l.localized))?;
    }
    Ok(())
}

fn localization() -> Outcome {
    for seed in 0..60 {
        let e = random_equivariant(&mut seeded(seed), 4);
        let l = localization_map(&e).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(l.localized.1 == 0 && l.hat_nilpotent, || format!("seed {seed}: Ĥ[t^-1] ≠ 0"))?;
        ensure(l.ranks_agree(), || format!("seed {seed}: {:?}", l.localized))?;
    }
    Ok(())
}

fn twisted_points() -> Outcome {
    for n in 1..=6 {
        let on = two_point_twisted(n, true).map_err(|e| e.to_string())?;
        let off = two_point_twisted(n, false).map_err(|e| e.to_string())?;
        ensure(on.is_zero(), || format!("n = {n}: sw = 1 gives {on:?}"))?;
        ensure(off == ModuleReport::free(2), || format!("n = {n}: sw = 0 gives {off:?}"))?;
    }
    let mut rng = seeded(7);
    for _ in 0..50 {
        let bits: Vec<bool> = (0..12).map(|i| i == 0 || rng.gen_bool(0.5)).collect();
        let w = F2Poly::from_bits(&bits);
        let inv = laurent_inverse_series(&w, 32).map_err(|e| e.to_string())?;
        ensure(w.mul(&inv).truncate(33) == F2Poly::one(), || format!("{w}: inverse fails"))?;
    }
    Ok(())
}

fn steenrod() -> Outcome {
    for seed in 0..20 {
        let v = random_graded_complex(&mut seeded(seed), 10);
        let r = steenrod_square(&v).map_err(|e| format!("seed {seed}: {e}"))?;
        let h = homology(&v).map_err(|e| e.to_string())?.dimension();
        ensure(r.h_dim == h && r.is_iso(), || format!("seed {seed}: {} vs {}", r.h_dim, r.twisted_rank))?;
        ensure(r.doubles_degree, || format!("seed {seed}: degrees not doubled"))?;
        ensure(r.degenerates_at_e2(), || format!("seed {seed}: page {}", r.degeneration_page))?;
    }
    Ok(())
}

fn towers() -> Outcome {
    let mut sets = vec![canonical_trn_equivariant(2).map_err(|e| e.to_string())?];
    sets.extend((0..20).map(|s| random_equivariant(&mut seeded(1000 + s), 4)));
    for (i, e) in sets.iter().enumerate() {
        let t = ss_tower(e, 3).map_err(|err| format!("dataset {i}: {err}"))?;
        ensure(t.stabilizes(), || format!("dataset {i}: tower does not stabilize"))?;
        ensure(t.compatible(), || format!("dataset {i}: quotients not compatible"))?;
        ensure(t.chain_matches_model(), || format!("dataset {i}: chain level disagrees with model"))?;
    }
    for (name, e) in [("point pair", point_pair_dataset()), ("invariant point", invariant_point_dataset())] {
        let g = map_g(&e).map_err(|err| format!("{name}: {err}"))?;
        ensure(g.chain_identity(), || format!("{name}: chain identity fails"))?;
        for n in 1..=4 {
            let r = g.truncation(n).map_err(|err| err.to_string())?;
            ensure(r.is_iso(), || format!("{name}: truncation {n} is not an isomorphism"))?;
        }
    }
    Ok(())
}

fn twisted_spectral() -> Outcome {
    for seed in 0..30 {
        let tw = random_twisted(&mut seeded(seed), 7);
        let c = build_twisted(&tw).map_err(|e| format!("seed {seed}: {e}"))?;
        let s = spectral_pages(&c.laurent, 2).map_err(|e| e.to_string())?;
        let e2 = conjugate_report(&e2_page(&tw).map_err(|e| e.to_string())?);
        ensure(s.page(2) == Some(&e2), || format!("seed {seed}: E2 mismatch"))?;
        ensure(verify_t_invertible(&c), || format!("seed {seed}: T not invertible"))?;
        ensure(window_stability(&tw).unwrap_or(false), || format!("seed {seed}: window unstable"))?;
    }
    Ok(())
}

/// Fraction-free elimination over F2[t].
fn det(m: &RingMatrix<F2Poly>) -> F2Poly {
    let n = m.rows();
    let mut a: Vec<Vec<F2Poly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = F2Poly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return F2Poly::zero() };
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).add(&a[i][k].mul(&a[k][j]));
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    prev
}

fn bit_rank(m: &RingMatrix<F2Poly>, at_one: bool) -> usize {
    let (r, c) = m.shape();
    f2_rank(&RingMatrix::from_bits(r, c, |i, j| m.get(i, j).eval(at_one)))
}

fn smith() -> Outcome {
    let mut rng = seeded(11);
    for case in 0..200 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let density = rng.gen_range(0.1..0.9);
        let m = RingMatrix::from_fn(r, c, |_, _| {
            if rng.gen_bool(density) {
                F2Poly::from_bits(&(0..=4).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
            } else {
                F2Poly::zero()
            }
        });
        let s = snf_f2t(&m);
        ensure(s.u.mul(&m).mul(&s.v) == s.diagonal(), || format!("case {case}: u m v is not diagonal"))?;
        ensure(det(&s.u).is_one() && det(&s.v).is_one(), || format!("case {case}: transforms not invertible"))?;
        ensure(s.factors.windows(2).all(|w| w[1].div_rem(&w[0]).1.is_zero()), || format!("case {case}: chain broken"))?;
        // Factors coprime to t (resp. 1 + t) count the rank at t = 0 (resp. 1).
        for at_one in [false, true] {
            let units = s.factors.iter().filter(|f| f.eval(at_one)).count();
            ensure(units == bit_rank(&m, at_one), || format!("case {case}: rank at t = {} differs", at_one as u8))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("block table with F quasi-isomorphism", blocks),
        ("A-infinity witness and relabel homotopy", ainfty_and_relabel),
        ("monoidal comparison on block pairs", monoidal),
        ("KM exact triangles", km_triangles),
        ("canonical T*R^n", canonical_trn),
        ("localization on equivariant datasets", localization),
        ("two-point twisted dichotomy and inverse series", twisted_points),
        ("Steenrod squares", steenrod),
        ("truncation towers and map G", towers),
        ("twisted spectral sequence and windows", twisted_spectral),
        ("Smith normal form over F2[t]", smith),
    ];
    // Optional criterion numbers on the command line restrict the run.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = std::time::Instant::now();
        let outcome = run();
        eprintln!("criterion {} took {:.1?}", i + 1, start.elapsed());
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
