//! Seeded generators of valid random inputs, used by property tests and the
//! `blocks` command.

use num_rational::Rational64;
use rand::Rng;

use crate::coeff_algebra::{F2Laurent, Gf2, GroupRingElem, Ring, RingMatrix};
use crate::complexes::FreeComplex;
use crate::equiv_floer::{
    canonical_trn_equivariant, dual_trn_equivariant, invariant_point_dataset, partner_label, point_pair_dataset, Endpoint,
    EquivariantDataset, InteriorCount, PairPoint,
};
use crate::equivariant::{finite_type_blocks, BlockKind, Z2FreeComplex};
use crate::morse_km::{canonical_trn_with_window, dual_trn_dataset, KMDataset, KMGrading, KMMatrices};
use crate::twisted::{CountEntry, CriticalPoint, TrajectoryClass, TwistedDataset};

pub use rand_chacha::ChaCha8Rng as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}

pub(crate) fn random_group_elem<R: Rng>(rng: &mut R) -> GroupRingElem {
    GroupRingElem::new(rng.gen(), rng.gen())
}

/// Inverse of a unitriangular matrix `I + N` with nilpotent `N`.
pub fn unitriangular_inverse<T: Ring>(nil: &RingMatrix<T>) -> RingMatrix<T> {
    let n = nil.rows();
    let mut inv = RingMatrix::identity(n);
    let mut pw = RingMatrix::identity(n);
    for _ in 1..n.max(1) {
        pw = pw.mul(nil);
        if pw.is_zero() {
            break;
        }
        inv = inv.add(&pw);
    }
    inv
}

/// A strictly upper-triangular matrix whose entries only join generators of
/// equal degree.
pub fn degree_preserving_nilpotent<R: Rng, T: Ring>(
    rng: &mut R,
    grading: &[i64],
    density: f64,
    mut entry: impl FnMut(&mut R) -> T,
) -> RingMatrix<T> {
    let n = grading.len();
    let mut nil = RingMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if grading[i] == grading[j] && rng.gen_bool(density) {
                nil.set(i, j, entry(rng));
            }
        }
    }
    nil
}

fn shifted_block(kind: BlockKind, size: usize, shift: i64, tag: usize) -> Z2FreeComplex {
    let b = finite_type_blocks(kind, size).expect("valid block");
    let labels = b.labels().iter().map(|l| format!("{l}_{tag}")).collect();
    let g = b.grading().unwrap().iter().map(|x| x + shift).collect();
    Z2FreeComplex::graded(labels, g, b.d().clone()).expect("shifted block")
}

/// A graded finite-type complex: a direct sum of finite blocks and unit
/// pairs, conjugated by a random degree-preserving unitriangular change of
/// basis. At most `max_gens` generators.
pub fn random_finite_type<R: Rng>(rng: &mut R, max_gens: usize) -> Z2FreeComplex {
    let mut pieces: Vec<Z2FreeComplex> = Vec::new();
    let mut used = 0;
    let target = rng.gen_range(1..=max_gens.max(1));
    while used < target {
        let tag = pieces.len();
        let shift = rng.gen_range(-2..=2);
        let piece = match rng.gen_range(0..3) {
            0 => shifted_block(BlockKind::B0, 1, shift, tag),
            1 => {
                let len = rng.gen_range(1..=3).min(target - used).max(1);
                shifted_block(BlockKind::Bplus, len, shift, tag)
            }
            _ => {
                let c = if rng.gen() { GroupRingElem::ONE } else { GroupRingElem::IOTA };
                let mut d = RingMatrix::zeros(2, 2);
                d.set(1, 0, c);
                Z2FreeComplex::graded(vec![format!("p_{tag}"), format!("q_{tag}")], vec![shift, shift + 1], d).unwrap()
            }
        };
        if used + piece.len() > max_gens {
            if used == 0 {
                continue;
            }
            break;
        }
        used += piece.len();
        pieces.push(piece);
    }
    let mut sum = pieces[0].clone();
    for p in &pieces[1..] {
        sum = sum.direct_sum(p);
    }
    let g = sum.grading().unwrap().to_vec();
    let nil = degree_preserving_nilpotent(rng, &g, 0.5, random_group_elem);
    let p = RingMatrix::identity(sum.len()).add(&nil);
    let p_inv = unitriangular_inverse(&nil);
    sum.conjugate(&p, &p_inv).expect("conjugation preserves the complex")
}

/// A graded twisted dataset on at most `max_points` critical points.
///
/// Pieces are isolated points and pairs joined by one class whose counts are
/// either all positive or all negative. The Laurent data `(d, N)` with
/// `N` the negative part is then conjugated by a random homogeneous
/// unitriangular matrix that strictly raises Morse index, and counts are read
/// back off the conjugated monomials.
pub fn random_twisted<R: Rng>(rng: &mut R, max_points: usize) -> TwistedDataset {
    twisted_impl(rng, max_points, false)
}

/// As [`random_twisted`], but always graded and with every count at a
/// non-negative shift, so no count runs from a stable to an unstable level.
/// Such data is a valid boundary with no interior.
pub fn random_boundary_twisted<R: Rng>(rng: &mut R, max_points: usize) -> TwistedDataset {
    twisted_impl(rng, max_points, true)
}

fn twisted_impl<R: Rng>(rng: &mut R, max_points: usize, boundary: bool) -> TwistedDataset {
    let target = rng.gen_range(1..=max_points.max(1));
    let mut index: Vec<i64> = Vec::new();
    let mut s: Vec<i64> = Vec::new();
    let mut pairs: Vec<(usize, usize, bool)> = Vec::new();
    while index.len() < target {
        if index.len() + 2 <= target && rng.gen_bool(0.6) {
            let a = rng.gen_range(0..3);
            let b = rng.gen_range(a + 1..=3);
            let k = index.len();
            index.extend([a, b]);
            let sp = rng.gen_range(-2..=2);
            let sm = if boundary { sp + 1 - (b - a) - rng.gen_range(0..=1) } else { rng.gen_range(-2..=2) };
            s.extend([sp, sm]);
            pairs.push((k + 1, k, rng.gen()));
        } else {
            index.push(rng.gen_range(0..=3));
            s.push(rng.gen_range(-2..=2));
        }
    }
    let n = index.len();
    let g: Vec<i64> = (0..n).map(|k| index[k] + s[k]).collect();
    let mut d = RingMatrix::<F2Laurent>::zeros(n, n);
    let mut neg = RingMatrix::<F2Laurent>::zeros(n, n);
    for &(m, p, negative) in &pairs {
        let e = F2Laurent::monomial(1 + g[p] - g[m]);
        d.set(m, p, e.clone());
        if negative {
            neg.set(m, p, e);
        }
    }
    let mut nil = RingMatrix::<F2Laurent>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if index[i] > index[j] && (!boundary || g[j] >= g[i]) && rng.gen_bool(0.3) {
                nil.set(i, j, F2Laurent::monomial(g[j] - g[i]));
            }
        }
    }
    let p = RingMatrix::identity(n).add(&nil);
    let p_inv = unitriangular_inverse(&nil);
    let d = p.mul(&d).mul(&p_inv);
    let neg = p.mul(&neg).mul(&p_inv);
    let points = (0..n)
        .map(|k| {
            let mut c = CriticalPoint::new(format!("x{k}"), index[k]).with_action(Rational64::from_integer(index[k]));
            if boundary || rng.gen_bool(0.8) {
                c = c.with_s(s[k]);
            }
            c
        })
        .collect();
    let mut classes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if index[i] <= index[j] {
                continue;
            }
            let delta = 1 + g[j] - g[i];
            let total = d.get(i, j).coeff(delta);
            let ng = neg.get(i, j).coeff(delta);
            let pos = total ^ ng;
            if !total && !ng && !rng.gen_bool(0.1) {
                continue;
            }
            let mut class = TrajectoryClass::new(format!("u{i}_{j}"), format!("x{i}"), format!("x{j}"), s[i] - s[j])
                .with_count(delta, pos, ng);
            if rng.gen_bool(0.3) {
                let level = rng.gen_range(-3..=3);
                class.counts.push(CountEntry { shift: delta, pos, neg: ng, level: Some(level) });
            }
            classes.push(class);
        }
    }
    TwistedDataset { points, classes, compositions: Vec::new(), window: rng.gen_range(2..=3) }
}

fn tag_km(mut ds: KMDataset, tag: usize) -> KMDataset {
    for l in ds.o.iter_mut().chain(ds.s.iter_mut()).chain(ds.u.iter_mut()) {
        *l = format!("{l}_{tag}");
    }
    ds
}

fn lifted_km(o: Vec<String>, s: Vec<String>, u: Vec<String>, grading: KMGrading, lift: KMMatrices<GroupRingElem>) -> KMDataset {
    KMDataset { o, s, u, grading: Some(grading), counts: lift.map(|c| Gf2(c.augment())), lift: Some(lift), window: None }
}

/// A graded KM dataset with an F2[Z/2] lift and at most `max_gens`
/// generators: a direct sum of canonical and mirrored ladders, free interior
/// complexes and single `d_us` pairs, optionally tensored with a small F2
/// complex, then conjugated on each generator type.
pub fn random_km<R: Rng>(rng: &mut R, max_gens: usize) -> KMDataset {
    let max_gens = max_gens.max(2);
    let mut sum: Option<KMDataset> = None;
    let mut used = 0;
    let target = rng.gen_range(2..=max_gens);
    let mut tries = 0;
    while used < target && tries < 20 {
        tries += 1;
        let tag = tries;
        let piece = match rng.gen_range(0..4) {
            0 => {
                let n = rng.gen_range(1..=2);
                canonical_trn_with_window(n, n + 1).expect("valid window")
            }
            1 => dual_trn_dataset(1, 3).expect("valid window"),
            2 => {
                let a = random_finite_type(rng, 4);
                let mut lift = KMMatrices::zeros(a.len(), 0, 0);
                lift.d_oo = a.d().clone();
                let g = KMGrading { o: a.grading().unwrap().to_vec(), s: Vec::new(), u: Vec::new() };
                lifted_km(a.labels().to_vec(), Vec::new(), Vec::new(), g, lift)
            }
            _ => {
                let k = rng.gen_range(-2..=2);
                let mut lift = KMMatrices::zeros(0, 1, 1);
                lift.d_us.set(0, 0, random_group_elem(rng));
                let g = KMGrading { o: Vec::new(), s: vec![k], u: vec![k + 1] };
                lifted_km(Vec::new(), vec!["a".into()], vec!["b".into()], g, lift)
            }
        };
        let len = piece.o.len() + piece.s.len() + piece.u.len();
        if used + len > max_gens {
            continue;
        }
        used += len;
        let piece = tag_km(piece, tag);
        sum = Some(match sum {
            Some(s) => s.direct_sum(&piece),
            None => piece,
        });
    }
    let mut ds = sum.unwrap_or_else(|| {
        let mut lift = KMMatrices::zeros(1, 0, 0);
        lift.d_oo = RingMatrix::zeros(1, 1);
        lifted_km(vec!["p".into()], Vec::new(), Vec::new(), KMGrading { o: vec![0], s: Vec::new(), u: Vec::new() }, lift)
    });
    if used * 2 <= max_gens && rng.gen_bool(0.3) {
        let shift = rng.gen_range(0..=1);
        let v = FreeComplex::graded(vec!["e".into(), "f".into()], vec![0, shift], RingMatrix::<Gf2>::zeros(2, 2))
            .expect("zero differential");
        ds = ds.tensor(&v);
    }
    let g = ds.grading.clone().expect("generated datasets are graded");
    let mut unit = |grading: &[i64]| {
        let nil = degree_preserving_nilpotent(rng, grading, 0.4, random_group_elem);
        (RingMatrix::identity(grading.len()).add(&nil), unitriangular_inverse(&nil))
    };
    let (po, ps, pu) = (unit(&g.o), unit(&g.s), unit(&g.u));
    let lift = ds.lift.as_ref().expect("generated datasets are lifted").conjugate((&po.0, &po.1), (&ps.0, &ps.1), (&pu.0, &pu.1));
    ds.counts = lift.map(|c| Gf2(c.augment()));
    ds.lift = Some(lift);
    ds
}

/// A graded F2 complex on at most `max_gens` generators: isolated
/// generators and acyclic pairs, conjugated by a random degree-preserving
/// unitriangular matrix.
pub fn random_graded_complex<R: Rng>(rng: &mut R, max_gens: usize) -> FreeComplex<Gf2> {
    let target = rng.gen_range(1..=max_gens.max(1));
    let mut grading = Vec::new();
    let mut edges = Vec::new();
    while grading.len() < target {
        let k = rng.gen_range(-2..=2);
        if grading.len() + 2 <= target && rng.gen_bool(0.5) {
            edges.push((grading.len() + 1, grading.len()));
            grading.extend([k, k + 1]);
        } else {
            grading.push(k);
        }
    }
    let n = grading.len();
    let d = RingMatrix::from_bits(n, n, |i, j| edges.contains(&(i, j)));
    let nil = degree_preserving_nilpotent(rng, &grading, 0.5, |_| Gf2(true));
    let p = RingMatrix::identity(n).add(&nil);
    let labels = (0..n).map(|k| format!("e{k}")).collect();
    FreeComplex::graded(labels, grading, p.mul(&d).mul(&unitriangular_inverse(&nil))).expect("conjugate of a complex")
}

fn free_equivariant(a: &Z2FreeComplex) -> EquivariantDataset {
    let g = a.grading().expect("generated complexes are graded");
    let pairs = a.labels().iter().zip(g).map(|(l, &k)| PairPoint::new(l, k)).collect();
    let interior = a
        .d()
        .nonzero_entries()
        .map(|(i, j, c)| InteriorCount::new(Endpoint::Pair(a.labels()[i].clone()), Endpoint::Pair(a.labels()[j].clone()), 1, *c))
        .collect();
    EquivariantDataset { pairs, interior, upstairs: Some(upstairs_of(a)), regular: true, ..Default::default() }
}

/// `y` at `2k` and `ιy` at `2k + 1`; `a + bι` becomes `[[a, b], [b, a]]`.
fn upstairs_of(a: &Z2FreeComplex) -> FreeComplex<Gf2> {
    let n = a.len();
    let labels = a.labels().iter().flat_map(|l| [l.clone(), partner_label(l)]).collect();
    let grading = a.grading().expect("generated complexes are graded").iter().flat_map(|&k| [k, k]).collect();
    let d = RingMatrix::from_bits(2 * n, 2 * n, |i, j| {
        let c = a.d().get(i / 2, j / 2);
        if i % 2 == j % 2 { c.a } else { c.b }
    });
    FreeComplex::graded(labels, grading, d).expect("underlying complex of a Z/2 complex")
}

/// Changes the basis of the pairs by `y'_j = Σ P_ij y_i` with `P` unitriangular
/// and degree-preserving, rewriting interior counts and the upstairs
/// complex to match.
fn conjugate_pairs<R: Rng>(rng: &mut R, e: &EquivariantDataset) -> EquivariantDataset {
    let np = e.pairs.len();
    if np == 0 {
        return e.clone();
    }
    let grading: Vec<i64> = e.pairs.iter().map(|p| p.degree).collect();
    let nil = degree_preserving_nilpotent(rng, &grading, 0.4, random_group_elem);
    let p = RingMatrix::identity(np).add(&nil);
    let p_inv = unitriangular_inverse(&nil);
    let ix = |l: &str| e.pairs.iter().position(|p| p.label == l);
    let mut d_oo = RingMatrix::<GroupRingElem>::zeros(np, np);
    let mut into: Vec<(Endpoint, i64, Vec<GroupRingElem>)> = Vec::new();
    let mut out_of: Vec<(Endpoint, i64, Vec<GroupRingElem>)> = Vec::new();
    let mut rest = Vec::new();
    for c in &e.interior {
        match (&c.minus, &c.plus) {
            (Endpoint::Pair(m), Endpoint::Pair(q)) => d_oo.add_to(ix(m).unwrap(), ix(q).unwrap(), &c.coeff),
            (Endpoint::Pair(m), lvl) => {
                let slot = match into.iter().position(|(l, _, _)| l == lvl) {
                    Some(s) => s,
                    None => {
                        into.push((lvl.clone(), c.mu - grading[ix(m).unwrap()], vec![GroupRingElem::ZERO; np]));
                        into.len() - 1
                    }
                };
                let v = &mut into[slot].2[ix(m).unwrap()];
                *v = v.plus(&c.coeff);
            }
            (lvl, Endpoint::Pair(q)) => {
                let slot = match out_of.iter().position(|(l, _, _)| l == lvl) {
                    Some(s) => s,
                    None => {
                        out_of.push((lvl.clone(), c.mu + grading[ix(q).unwrap()], vec![GroupRingElem::ZERO; np]));
                        out_of.len() - 1
                    }
                };
                let v = &mut out_of[slot].2[ix(q).unwrap()];
                *v = v.plus(&c.coeff);
            }
            _ => rest.push(c.clone()),
        }
    }
    let mut interior = rest;
    let d_oo = p_inv.mul(&d_oo).mul(&p);
    for (i, j, c) in d_oo.nonzero_entries() {
        interior.push(InteriorCount::new(Endpoint::Pair(e.pairs[i].label.clone()), Endpoint::Pair(e.pairs[j].label.clone()), 1, *c));
    }
    // A level -> pair count has μ = deg(pair) - G(x); a pair -> level count
    // has μ = G(x) - deg(pair). The stored offsets recover G(x).
    for (lvl, g_minus, col) in into {
        let col = p_inv.mul_vec(&col);
        for (i, c) in col.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            interior.push(InteriorCount::new(Endpoint::Pair(e.pairs[i].label.clone()), lvl.clone(), grading[i] + g_minus, *c));
        }
    }
    for (lvl, g_plus, row) in out_of {
        for j in 0..np {
            let c = (0..np).fold(GroupRingElem::ZERO, |acc, i| acc.plus(&row[i].times(p.get(i, j))));
            if !c.is_zero() {
                interior.push(InteriorCount::new(lvl.clone(), Endpoint::Pair(e.pairs[j].label.clone()), g_plus - grading[j], c));
            }
        }
    }
    let upstairs = e.upstairs.as_ref().map(|u| {
        let lift = |m: &RingMatrix<GroupRingElem>| {
            let mut q = RingMatrix::<Gf2>::identity(u.len());
            for (j, pj) in e.pairs.iter().enumerate() {
                let (yj, ij) = (u.index_of(&pj.label).unwrap(), u.index_of(&partner_label(&pj.label)).unwrap());
                q.set(yj, yj, Gf2(false));
                q.set(ij, ij, Gf2(false));
                for (i, pi) in e.pairs.iter().enumerate() {
                    let c = m.get(i, j);
                    let (yi, ii) = (u.index_of(&pi.label).unwrap(), u.index_of(&partner_label(&pi.label)).unwrap());
                    q.add_to(yi, yj, &Gf2(c.a));
                    q.add_to(ii, yj, &Gf2(c.b));
                    q.add_to(ii, ij, &Gf2(c.a));
                    q.add_to(yi, ij, &Gf2(c.b));
                }
            }
            q
        };
        u.conjugate(&lift(&p_inv), &lift(&p)).expect("equivariant change of basis")
    });
    EquivariantDataset { interior, upstairs, ..e.clone() }
}

/// A valid equivariant dataset: tagged, shifted copies of the canonical and
/// mirrored ladders, free interior complexes, isolated orbits and fixed
/// points, and boundary-only twisted data, followed by a change of basis of
/// the pairs. Marked regular unless it contains boundary-only data.
pub fn random_equivariant<R: Rng>(rng: &mut R, max_pieces: usize) -> EquivariantDataset {
    let count = rng.gen_range(1..=max_pieces.max(1));
    let mut sum = EquivariantDataset { regular: true, upstairs: Some(FreeComplex::zero(0).with_grading(Vec::new()).unwrap()), ..Default::default() };
    for tag in 0..count {
        let shift = rng.gen_range(-1..=1);
        let piece = match rng.gen_range(0..6) {
            0 => canonical_trn_equivariant(rng.gen_range(1..=2)).expect("n >= 1").shifted(shift),
            1 => dual_trn_equivariant(rng.gen_range(1..=2)).expect("n >= 1").shifted(shift),
            2 => free_equivariant(&random_finite_type(rng, 4)),
            3 => point_pair_dataset().shifted(shift),
            4 => invariant_point_dataset().shifted(shift),
            _ => EquivariantDataset { boundary: random_boundary_twisted(rng, 3), ..Default::default() },
        };
        sum = sum.direct_sum(&piece.tagged(&tag.to_string()));
    }
    conjugate_pairs(rng, &sum)
}
