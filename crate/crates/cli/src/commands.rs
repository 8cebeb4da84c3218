use clap::ValueEnum;
use polarfloer_core::complexes::{graded_homology, homology, FreeComplex};
use polarfloer_core::coeff_algebra::Gf2;
use polarfloer_core::equiv_floer::{
    assemble_equivariant, kunneth_point_model, localization_map, map_g, smith_report, ss_tower, ss_truncate,
    steenrod_square, EquivariantDataset,
};
use polarfloer_core::equivariant::{a_f2, borel, borel_bars, verify_monoidal, Z2FreeComplex};
use polarfloer_core::morse_km::{verify_triangle, KMTriple};
use polarfloer_core::twisted::{
    build_twisted_with_window, conjugate_report, e2_page, verify_t_invertible, window_stability, TwistedDataset,
};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::report::{bars, dims, dims_text, module, opt, Report};
use crate::schema::Dataset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Homology,
    Km,
    Twisted,
    Localize,
    Steenrod,
    Kunneth,
    SsCompare,
    Smith,
    Porteous,
    Blocks,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Km => "km",
            Command::Twisted => "twisted",
            Command::Localize => "localize",
            Command::Steenrod => "steenrod",
            Command::Kunneth => "kunneth",
            Command::SsCompare => "ss-compare",
            Command::Smith => "smith",
            Command::Porteous => "porteous",
            Command::Blocks => "blocks",
        }
    }
}

/// Numeric options shared by the commands.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub window: Option<usize>,
    pub truncate: Option<usize>,
    pub grading: bool,
}

fn wrong_kind(cmd: Command, ds: &Dataset) -> CliError {
    CliError::Kind { command: cmd.name(), kind: ds.kind() }
}

pub fn run(cmd: Command, ds: Dataset, opts: Options) -> Result<Report> {
    let mut r = Report::new(cmd.name(), ds.kind());
    match cmd {
        Command::Validate => validate(&mut r, &ds)?,
        Command::Homology => homology_cmd(&mut r, &ds, opts)?,
        Command::Km => match &ds {
            Dataset::Km(k) => km_triple(&mut r, &k.assemble()?),
            Dataset::Equivariant(e) => km_triple(&mut r, &assemble_equivariant(&windowed(e, opts))?.triple),
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Twisted => match &ds {
            Dataset::Twisted(t) => twisted(&mut r, t, opts)?,
            Dataset::Equivariant(e) => twisted(&mut r, &e.boundary, opts)?,
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Localize => localize(&mut r, &ds, opts)?,
        Command::Steenrod => match &ds {
            Dataset::Floer(v) => steenrod(&mut r, v)?,
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Kunneth => match &ds {
            Dataset::Z2Complex(a) => kunneth(&mut r, a, opts)?,
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::SsCompare => match &ds {
            Dataset::Equivariant(e) => ss_compare(&mut r, &windowed(e, opts), opts)?,
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Smith => match &ds {
            Dataset::Equivariant(e) => {
                let s = smith_report(&windowed(e, opts))?;
                r.line(format!("dim HF(upstairs) = {}", s.upstairs_dim));
                r.line(format!("rank HF_tw = {}", s.twisted_rank));
                r.set("upstairs_dim", s.upstairs_dim);
                r.set("twisted_rank", s.twisted_rank);
                r.verdict("inequality_holds", s.holds());
            }
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Porteous => match &ds {
            Dataset::Twisted(t) => porteous(&mut r, t, opts)?,
            _ => return Err(wrong_kind(cmd, &ds)),
        },
        Command::Blocks => return Err(CliError::Usage("blocks takes a block kind, not a dataset".into())),
    }
    Ok(r)
}

fn windowed(e: &EquivariantDataset, opts: Options) -> EquivariantDataset {
    let mut e = e.clone();
    if let Some(w) = opts.window {
        e.boundary.window = w;
    }
    e
}

fn validate(r: &mut Report, ds: &Dataset) -> Result<()> {
    match ds {
        Dataset::Z2Complex(a) => {
            r.line(format!("{} generators, d^2 = 0", a.len()));
            r.set("generators", a.len());
            r.set("graded", a.grading().is_some());
        }
        Dataset::Floer(c) => {
            r.line(format!("{} generators, d^2 = 0", c.len()));
            r.set("generators", c.len());
            r.set("graded", c.grading().is_some());
        }
        Dataset::Km(k) => {
            let (o, s, u) = k.dims();
            r.line(format!("o = {o}, s = {s}, u = {u}"));
            r.set("dims", json!([o, s, u]));
            let rel = k.validate_relations()?;
            let mut checks = Vec::new();
            for c in &rel.checks {
                match &c.witness {
                    Some(w) if !c.holds => r.line(format!("relation {}: FAILS, witness {w}", c.name)),
                    _ => r.line(format!("relation {}: holds", c.name)),
                }
                checks.push(json!({"name": c.name, "holds": c.holds, "witness": c.witness}));
            }
            r.set("relations", checks);
            if rel.all_hold() {
                k.assemble()?;
            } else {
                r.fail();
            }
        }
        Dataset::Twisted(t) => {
            let v = t.validate()?;
            build_twisted_with_window(t, t.window)?;
            r.line(format!("{} points, {} classes", v.points.len(), v.classes.len()));
            r.set("points", v.points.len());
            r.set("classes", v.classes.len());
            r.set("graded", v.degrees.is_some());
        }
        Dataset::Equivariant(e) => {
            let t = assemble_equivariant(e)?;
            let (o, s, u) = t.km.dims();
            r.line(format!("{} pairs, {} invariant points", e.pairs.len(), e.boundary.points.len()));
            r.line(format!("assembled o = {o}, s = {s}, u = {u} at twisted window {}", t.window));
            r.set("pairs", e.pairs.len());
            r.set("points", e.boundary.points.len());
            r.set("dims", json!([o, s, u]));
            r.set("window", t.window);
        }
    }
    Ok(())
}

fn f2_homology(r: &mut Report, key: &str, c: &FreeComplex<Gf2>, opts: Options) -> Result<()> {
    let h = homology(c)?;
    r.line(format!("{key}: dim {}", h.dimension()));
    let mut v = json!({"dim": h.dimension()});
    if opts.grading {
        if let Some(g) = graded_homology(c) {
            r.line(format!("{key} by degree: {}", dims_text(&g)));
            v["by_degree"] = dims(&g);
        }
    }
    r.set(key, v);
    Ok(())
}

fn homology_cmd(r: &mut Report, ds: &Dataset, opts: Options) -> Result<()> {
    match ds {
        Dataset::Z2Complex(a) => z2_homology(r, a, opts)?,
        Dataset::Floer(c) => f2_homology(r, "homology", c, opts)?,
        Dataset::Twisted(t) => {
            let c = build_twisted_with_window(t, opts.window.unwrap_or(t.window))?;
            let h = c.homology();
            r.line(format!("H over F2[t,t^-1]: {h}"));
            r.set("laurent", module(&h));
            if let Some(w) = c.window_report() {
                r.line(format!("window bars: {}", w.bars.pattern()));
                r.set("window_bars", bars(&w.bars));
                if opts.grading {
                    r.line(format!("interior by degree: {}", dims_text(&w.interior_dims)));
                    r.set("interior_by_degree", dims(&w.interior_dims));
                }
            }
        }
        Dataset::Km(k) => {
            let t = k.assemble()?;
            for (key, c) in [("check", &t.check), ("hat", &t.hat), ("bar", &t.bar)] {
                f2_homology(r, key, c, opts)?;
            }
            if let Some(b) = t.bars() {
                for (key, w) in [("check_bars", &b.check), ("hat_bars", &b.hat), ("bar_bars", &b.bar)] {
                    r.line(format!("{key}: {}", w.pattern()));
                    r.set(key, bars(w));
                }
            }
        }
        Dataset::Equivariant(e) => {
            let l = localization_map(&windowed(e, opts))?;
            let pats = [&l.patterns.0, &l.patterns.1, &l.patterns.2];
            for ((key, m), p) in [("check", &l.check), ("hat", &l.hat), ("bar", &l.bar)].into_iter().zip(pats) {
                r.line(format!("{key}: {m}   pattern {p}"));
                let mut v = module(m);
                v["pattern"] = Value::from(p.as_str());
                r.set(key, v);
            }
        }
    }
    Ok(())
}

fn z2_homology(r: &mut Report, a: &Z2FreeComplex, opts: Options) -> Result<()> {
    let t = a_f2(a);
    f2_homology(r, "a_f2", &t.complex, opts)?;
    if let Some(b) = t.bars() {
        r.line(format!("a_f2 pattern: {}", b.pattern()));
        r.set("a_f2_bars", bars(&b));
    }
    match borel_bars(a) {
        Some(b) => {
            r.line(format!("borel pattern: {}", b.pattern()));
            r.set("borel_bars", bars(&b));
        }
        None if a.window().is_none() => {
            let h = homology(&borel(a, 1)?)?;
            r.line(format!("borel over F2[t]: {h}"));
            r.set("borel", module(&h));
        }
        None => {}
    }
    Ok(())
}

fn km_triple(r: &mut Report, t: &KMTriple) {
    let tri = verify_triangle(t);
    for s in &tri.slots {
        r.detail(format!(
            "slot {}: composite zero {}, rank in {}, rank out {}, dim {}",
            s.name, s.composite_zero, s.rank_in, s.rank_out, s.dim
        ));
    }
    r.line(format!("dims (check, hat, bar) = {:?}", tri.dims));
    r.set("dims", json!([tri.dims.0, tri.dims.1, tri.dims.2]));
    r.verdict("triangle_exact", tri.is_exact());
    if let Some(b) = t.bars() {
        let (c, h, l) = b.localized_ranks();
        r.line(format!("patterns: {} / {} / {}", b.check.pattern(), b.hat.pattern(), b.bar.pattern()));
        r.line(format!("localized ranks: {c} / {h} / {l}"));
        r.set("localized", json!([c, h, l]));
        r.set("bars", json!({"check": bars(&b.check), "hat": bars(&b.hat), "bar": bars(&b.bar)}));
    }
    if let Some(nil) = t.hat_t_nilpotent() {
        r.verdict("hat_t_nilpotent", nil);
    }
}

fn twisted(r: &mut Report, t: &TwistedDataset, opts: Options) -> Result<()> {
    let mut t = t.clone();
    if let Some(w) = opts.window {
        t.window = w;
    }
    let c = build_twisted_with_window(&t, t.window)?;
    let h = c.homology();
    r.line(format!("H over F2[t,t^-1]: {h}"));
    r.set("rank", c.rank());
    r.set("laurent", module(&h));
    let e2 = conjugate_report(&e2_page(&t)?);
    r.line(format!("E2 page: {e2}"));
    r.set("e2", module(&e2));
    r.verdict("t_invertible", verify_t_invertible(&c));
    if let Some(w) = c.window_report() {
        r.line(format!("window {}: {} (edge artifacts {})", t.window, w.bars.pattern(), w.edge_artifacts));
        r.set("window_bars", bars(&w.bars));
        r.set("edge_artifacts", w.edge_artifacts);
        r.verdict("window_stable", window_stability(&t)?);
    }
    Ok(())
}

fn localize(r: &mut Report, ds: &Dataset, opts: Options) -> Result<()> {
    match ds {
        Dataset::Km(k) => {
            let t = k.assemble()?;
            let b = t.bars().ok_or_else(|| CliError::Usage("localize needs a lift and a grading".into()))?;
            let (c, h, l) = b.localized_ranks();
            r.line(format!("localized ranks (check, hat, bar): {c} / {h} / {l}"));
            r.set("localized", json!([c, h, l]));
            r.verdict("hat_vanishes", h == 0);
            r.verdict("ranks_equal", c == l);
        }
        Dataset::Equivariant(e) => {
            let l = localization_map(&windowed(e, opts))?;
            let (c, h, b) = l.localized;
            r.line(format!("localized ranks (check, hat, bar): {c} / {h} / {b}"));
            r.line(format!("patterns: {} / {} / {}", l.patterns.0, l.patterns.1, l.patterns.2));
            r.set("localized", json!([c, h, b]));
            for d in &l.i_star {
                r.detail(format!("i_* in degree {}: {} -> {} rank {}", d.degree, d.source_dim, d.target_dim, d.rank));
            }
            r.set(
                "i_star",
                Value::Array(l.i_star.iter().map(|d| json!([d.degree, d.source_dim, d.target_dim, d.rank])).collect()),
            );
            r.verdict("hat_vanishes", h == 0);
            r.verdict("ranks_equal", l.ranks_agree());
            r.verdict("stable_iso", l.stable_iso);
        }
        _ => return Err(CliError::Kind { command: "localize", kind: ds.kind() }),
    }
    Ok(())
}

fn steenrod(r: &mut Report, v: &FreeComplex<Gf2>) -> Result<()> {
    let s = steenrod_square(v)?;
    r.line(format!("dim H(v) = {}, rank HF_tw = {}", s.h_dim, s.twisted_rank));
    r.set("h_dim", s.h_dim);
    r.set("twisted_rank", s.twisted_rank);
    let mut classes = Vec::new();
    for c in &s.classes {
        let sq: Vec<String> = c.squares.iter().map(|(i, v)| format!("Sq^{i} = {}", v.join("+"))).collect();
        r.detail(format!("[{}] in degree {}: {}", c.class.join("+"), c.degree, sq.join(", ")));
        classes.push(json!({
            "class": c.class,
            "degree": c.degree,
            "image_degree": c.image_degree,
            "squares": c.squares.iter().map(|(i, v)| (i.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        }));
    }
    r.set("classes", classes);
    r.set("degeneration_page", s.degeneration_page);
    r.verdict("iso", s.is_iso());
    r.verdict("doubles_degree", s.doubles_degree);
    r.verdict("degenerates_at_e2", s.degenerates_at_e2());
    Ok(())
}

fn kunneth(r: &mut Report, a: &Z2FreeComplex, opts: Options) -> Result<()> {
    let m = verify_monoidal(a, a)?;
    r.line(format!("tensor side: {}", opt(m.lhs.as_ref())));
    r.line(format!("derived side: {}", opt(m.rhs.as_ref())));
    r.set("lhs", m.lhs.as_ref().map_or(Value::Null, module));
    r.set("rhs", m.rhs.as_ref().map_or(Value::Null, module));
    if let (Some(a), Some(b)) = (&m.lhs_bars, &m.rhs_bars) {
        r.line(format!("patterns: {} / {}", a.pattern(), b.pattern()));
        r.set("lhs_bars", bars(a));
        r.set("rhs_bars", bars(b));
    }
    r.verdict("monoidal", m.agree());
    let shift = opts.truncate.unwrap_or(0) as i64;
    let k = kunneth_point_model(shift);
    r.line(format!("point model at shift {shift}: derived rank {}", k.derived_rank()));
    r.set("point_shift", shift);
    r.set("point_derived_rank", k.derived_rank());
    r.verdict("point_kunneth_iso", k.is_iso());
    Ok(())
}

fn ss_compare(r: &mut Report, e: &EquivariantDataset, opts: Options) -> Result<()> {
    let n = opts.truncate.unwrap_or(1);
    let h = ss_truncate(e, n)?;
    r.line(format!("mod t^{n}: {h}"));
    r.set("n", n);
    r.set("truncated", module(&h));
    let tower = ss_tower(e, n.max(4))?;
    for l in &tower.levels {
        r.detail(format!("level {}: {} (chain dim {}, compatible {})", l.n, l.report, l.chain_dim, l.compatible));
    }
    r.line(format!("tower: free rank {}, torsion bound {}", tower.free_rank, tower.torsion_bound));
    r.set("free_rank", tower.free_rank);
    r.set("torsion_bound", tower.torsion_bound);
    r.set(
        "levels",
        Value::Array(tower.levels.iter().map(|l| json!({"n": l.n, "report": module(&l.report), "chain_dim": l.chain_dim})).collect()),
    );
    r.verdict("stabilizes", tower.stabilizes());
    r.verdict("compatible", tower.compatible());
    if e.regular {
        let g = map_g(e)?;
        r.verdict("g_chain_map", g.chain_identity());
        let t = g.truncation(n)?;
        for d in &t.degrees {
            r.detail(format!("degree {}: {} -> {} rank {}", d.degree, d.source_dim, d.target_dim, d.rank));
        }
        r.verdict("truncation_iso", t.is_iso());
    }
    Ok(())
}

/// Two points and one class: the twisted homology is zero when the
/// class counts an odd number of solutions and free of rank two otherwise.
fn porteous(r: &mut Report, t: &TwistedDataset, opts: Options) -> Result<()> {
    if t.points.len() != 2 || t.classes.len() != 1 {
        return Err(CliError::Usage("porteous needs a twisted dataset with two points and one class".into()));
    }
    let sw = t.classes[0].counts.iter().fold(false, |acc, e| acc ^ e.pos ^ e.neg);
    let c = build_twisted_with_window(t, opts.window.unwrap_or(t.window))?;
    let predicted = if sw { 0 } else { 2 };
    r.line(format!("Stiefel-Whitney number {}", u8::from(sw)));
    r.line(format!("twisted rank {} (predicted {predicted})", c.rank()));
    r.set("sw_number", sw);
    r.set("rank", c.rank());
    r.set("predicted", predicted);
    r.verdict("dichotomy_holds", c.rank() == predicted);
    Ok(())
}

pub fn blocks(kind: &str, size: usize) -> Result<Z2FreeComplex> {
    let kind = kind.parse().map_err(|e: polarfloer_core::Error| CliError::Usage(e.to_string()))?;
    Ok(polarfloer_core::equivariant::finite_type_blocks(kind, size)?)
}
