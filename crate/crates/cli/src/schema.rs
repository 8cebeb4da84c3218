//! The JSON dataset format.
//!
//! Every file is one object with `"schema": 1` and a `"kind"` tag. Matrix
//! entries are `[row, col, value]` triples with the value written in the
//! ring of the matrix: `"1"` over F2, `"1"`, `"i"` or `"1+i"` over F2[Z/2].
//! The canonical form sorts generators by label and entries by
//! `(row, col)`, drops zero entries and prints ring elements normalized.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_rational::Rational64;
use polarfloer_core::coeff_algebra::{Gf2, GroupRingElem, Ring, RingMatrix};
use polarfloer_core::complexes::{FreeComplex, Window};
use polarfloer_core::equiv_floer::{Endpoint, EquivariantDataset, InteriorCount, PairPoint};
use polarfloer_core::equivariant::Z2FreeComplex;
use polarfloer_core::morse_km::{KMDataset, KMGrading, KMMatrices};
use polarfloer_core::twisted::{CountEntry, CriticalPoint, TrajectoryClass, TwistedDataset};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub enum Dataset {
    Z2Complex(Z2FreeComplex),
    Km(KMDataset),
    Twisted(TwistedDataset),
    Equivariant(EquivariantDataset),
    /// A graded F2 chain complex, e.g. the Floer complex of a manifold.
    Floer(FreeComplex<Gf2>),
}

impl Dataset {
    pub fn kind(&self) -> &'static str {
        match self {
            Dataset::Z2Complex(_) => "z2complex",
            Dataset::Km(_) => "km",
            Dataset::Twisted(_) => "twisted",
            Dataset::Equivariant(_) => "equivariant",
            Dataset::Floer(_) => "floer",
        }
    }
}

type Entry = (String, String, String);

/// Labels, optional degrees and differential of a parsed complex.
type ComplexParts<R> = (Vec<String>, Option<Vec<i64>>, RingMatrix<R>);

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Generator {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lo: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hi: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    generators: Vec<Generator>,
    #[serde(default)]
    differential: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<WindowDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KmDoc {
    o: Vec<Generator>,
    s: Vec<Generator>,
    u: Vec<Generator>,
    /// Omitted when they are the augmentation of the lift, or zero without one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counts: Option<BTreeMap<String, Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lift: Option<BTreeMap<String, Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<(i64, i64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    label: String,
    index: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountDoc {
    shift: i64,
    #[serde(default)]
    pos: bool,
    #[serde(default)]
    neg: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    label: String,
    minus: String,
    plus: String,
    sf: i64,
    #[serde(default)]
    counts: Vec<CountDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistedDoc {
    points: Vec<PointDoc>,
    #[serde(default)]
    classes: Vec<ClassDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    compositions: Vec<(String, String, String)>,
    window: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    label: String,
    degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<String>,
}

/// `[minus, plus, coeff]`, or with an explicit `mu` as a fourth element.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum InteriorDoc {
    Plain(String, String, String),
    WithMu(String, String, String, i64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivariantDoc {
    #[serde(default)]
    pairs: Vec<PairDoc>,
    boundary: TwistedDoc,
    #[serde(default)]
    interior: Vec<InteriorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    upstairs: Option<ComplexDoc>,
    #[serde(default)]
    regular: bool,
}

// ---------------------------------------------------------------- parsing

fn schema_err(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn typed<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            schema_err(inner.to_string())
        } else {
            schema_err(format!("at {path}: {inner}"))
        }
    })
}

/// Parses a dataset document. Structural problems are schema errors;
/// mathematical ones (such as `d * d != 0`) come back as validation errors.
pub fn parse(text: &str) -> Result<Dataset> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| schema_err(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let Value::Object(mut obj) = v else {
        return Err(schema_err("the document must be a JSON object"));
    };
    match obj.shift_remove("schema") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(schema_err(format!("unsupported schema version {other}"))),
        None => return Err(schema_err("missing field `schema`")),
    }
    let kind = match obj.shift_remove("kind") {
        Some(Value::String(k)) => k,
        Some(other) => return Err(schema_err(format!("`kind` must be a string, got {other}"))),
        None => return Err(schema_err("missing field `kind`")),
    };
    let body = Value::Object(obj);
    match kind.as_str() {
        "z2complex" => z2_from_doc(typed(body)?).map(Dataset::Z2Complex),
        "floer" => floer_from_doc(typed(body)?).map(Dataset::Floer),
        "km" => km_from_doc(typed(body)?).map(Dataset::Km),
        "twisted" => twisted_from_doc(typed(body)?, "").map(Dataset::Twisted),
        "equivariant" => equivariant_from_doc(typed(body)?).map(Dataset::Equivariant),
        other => Err(schema_err(format!(
            "unknown kind '{other}' (expected z2complex, km, twisted, equivariant or floer)"
        ))),
    }
}

fn parse_gf2(s: &str) -> std::result::Result<Gf2, String> {
    match s.trim() {
        "0" => Ok(Gf2::ZERO),
        "1" => Ok(Gf2::ONE),
        _ => Err(format!("'{s}' is not an element of F2")),
    }
}

fn parse_action(s: &str, at: &str) -> Result<Rational64> {
    s.trim().parse().map_err(|_| schema_err(format!("at {at}: '{s}' is not a rational number")))
}

fn check_unique<'a>(labels: impl IntoIterator<Item = &'a str>, at: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() {
            return Err(schema_err(format!("at {at}: empty label")));
        }
        if l.contains('@') {
            return Err(schema_err(format!("at {at}: label '{l}' contains '@'")));
        }
        if !seen.insert(l) {
            return Err(schema_err(format!("at {at}: duplicate label '{l}'")));
        }
    }
    Ok(())
}

/// Either every generator has a degree or none does.
fn degrees(gens: &[&[Generator]], at: &str) -> Result<Option<Vec<Vec<i64>>>> {
    let all: Vec<&Generator> = gens.iter().flat_map(|g| g.iter()).collect();
    let graded = all.iter().filter(|g| g.degree.is_some()).count();
    if graded == 0 && !all.is_empty() {
        return Ok(None);
    }
    if graded != all.len() {
        return Err(schema_err(format!("at {at}: either every generator has a degree or none does")));
    }
    Ok(Some(gens.iter().map(|g| g.iter().map(|x| x.degree.unwrap()).collect()).collect()))
}

fn matrix<R: Ring>(
    entries: &[Entry],
    rows: &[String],
    cols: &[String],
    parse: impl Fn(&str) -> std::result::Result<R, String>,
    at: &str,
) -> Result<RingMatrix<R>> {
    let index = |labels: &[String]| -> HashMap<String, usize> {
        labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
    };
    let (ri, ci) = (index(rows), index(cols));
    let mut m = RingMatrix::zeros(rows.len(), cols.len());
    let mut seen = HashSet::new();
    for (k, (r, c, v)) in entries.iter().enumerate() {
        let here = format!("{at}[{k}]");
        let i = *ri.get(r).ok_or_else(|| schema_err(format!("at {here}: unknown label '{r}'")))?;
        let j = *ci.get(c).ok_or_else(|| schema_err(format!("at {here}: unknown label '{c}'")))?;
        if !seen.insert((i, j)) {
            return Err(schema_err(format!("at {here}: second entry for ({r}, {c})")));
        }
        let x = parse(v).map_err(|e| schema_err(format!("at {here}: {e}")))?;
        m.set(i, j, x);
    }
    Ok(m)
}

fn labels(gens: &[Generator]) -> Vec<String> {
    gens.iter().map(|g| g.label.clone()).collect()
}

fn complex_parts<R: Ring>(
    doc: &ComplexDoc,
    parse: impl Fn(&str) -> std::result::Result<R, String>,
    at: &str,
) -> Result<ComplexParts<R>> {
    check_unique(doc.generators.iter().map(|g| g.label.as_str()), &format!("{at}generators"))?;
    let grading = degrees(&[&doc.generators], &format!("{at}generators"))?.map(|mut g| g.remove(0));
    let names = labels(&doc.generators);
    let d = matrix(&doc.differential, &names, &names, parse, &format!("{at}differential"))?;
    Ok((names, grading, d))
}

fn f2_complex(doc: &ComplexDoc, at: &str) -> Result<FreeComplex<Gf2>> {
    if doc.window.is_some() {
        return Err(schema_err(format!("at {at}window: only z2complex datasets carry a window")));
    }
    let (names, grading, d) = complex_parts(doc, parse_gf2, at)?;
    Ok(match grading {
        Some(g) => FreeComplex::graded(names, g, d)?,
        None => FreeComplex::new(names, d)?,
    })
}

fn z2_from_doc(doc: ComplexDoc) -> Result<Z2FreeComplex> {
    let (names, grading, d) = complex_parts(&doc, GroupRingElem::parse, "")?;
    let a = match grading {
        Some(g) => Z2FreeComplex::graded(names, g, d)?,
        None => Z2FreeComplex::new(names, d)?,
    };
    Ok(match doc.window {
        Some(w) => a.with_window(Window::new(w.lo, w.hi)),
        None => a,
    })
}

fn floer_from_doc(doc: ComplexDoc) -> Result<FreeComplex<Gf2>> {
    f2_complex(&doc, "")
}

const KM_MATRICES: [&str; 8] = ["d_oo", "d_os", "d_uo", "d_us", "dbar_ss", "dbar_su", "dbar_us", "dbar_uu"];

/// Row and column generator lists of each named count matrix.
fn km_shape<'a>(name: &str, o: &'a [String], s: &'a [String], u: &'a [String]) -> (&'a [String], &'a [String]) {
    match name {
        "d_oo" => (o, o),
        "d_os" => (o, s),
        "d_uo" => (u, o),
        "d_us" => (u, s),
        "dbar_ss" => (s, s),
        "dbar_su" => (s, u),
        "dbar_us" => (u, s),
        _ => (u, u),
    }
}

fn km_matrices<R: Ring>(
    map: &BTreeMap<String, Vec<Entry>>,
    (o, s, u): (&[String], &[String], &[String]),
    parse: impl Fn(&str) -> std::result::Result<R, String> + Copy,
    at: &str,
) -> Result<KMMatrices<R>> {
    let mut m = KMMatrices::zeros(o.len(), s.len(), u.len());
    for (name, entries) in map {
        if !KM_MATRICES.contains(&name.as_str()) {
            return Err(schema_err(format!("at {at}: unknown count matrix '{name}'")));
        }
        let (rows, cols) = km_shape(name, o, s, u);
        let x = matrix(entries, rows, cols, parse, &format!("{at}.{name}"))?;
        *km_slot(&mut m, name) = x;
    }
    Ok(m)
}

fn km_slot<'a, R: Ring>(m: &'a mut KMMatrices<R>, name: &str) -> &'a mut RingMatrix<R> {
    match name {
        "d_oo" => &mut m.d_oo,
        "d_os" => &mut m.d_os,
        "d_uo" => &mut m.d_uo,
        "d_us" => &mut m.d_us,
        "dbar_ss" => &mut m.dbar_ss,
        "dbar_su" => &mut m.dbar_su,
        "dbar_us" => &mut m.dbar_us,
        _ => &mut m.dbar_uu,
    }
}

fn km_get<'a, R: Ring>(m: &'a KMMatrices<R>, name: &str) -> &'a RingMatrix<R> {
    match name {
        "d_oo" => &m.d_oo,
        "d_os" => &m.d_os,
        "d_uo" => &m.d_uo,
        "d_us" => &m.d_us,
        "dbar_ss" => &m.dbar_ss,
        "dbar_su" => &m.dbar_su,
        "dbar_us" => &m.dbar_us,
        _ => &m.dbar_uu,
    }
}

fn km_from_doc(doc: KmDoc) -> Result<KMDataset> {
    let all = doc.o.iter().chain(&doc.s).chain(&doc.u).map(|g| g.label.as_str());
    check_unique(all, "o/s/u")?;
    let grading = degrees(&[&doc.o, &doc.s, &doc.u], "o/s/u")?.map(|mut g| {
        let u = g.pop().unwrap();
        let s = g.pop().unwrap();
        KMGrading { o: g.pop().unwrap(), s, u }
    });
    let (o, s, u) = (labels(&doc.o), labels(&doc.s), labels(&doc.u));
    let shape = (o.as_slice(), s.as_slice(), u.as_slice());
    let lift = match &doc.lift {
        Some(map) => Some(km_matrices(map, shape, GroupRingElem::parse, "lift")?),
        None => None,
    };
    let counts = match (&doc.counts, &lift) {
        (Some(map), _) => km_matrices(map, shape, parse_gf2, "counts")?,
        (None, Some(l)) => l.map(|c| Gf2(c.augment())),
        (None, None) => KMMatrices::zeros(o.len(), s.len(), u.len()),
    };
    if let Some((lo, hi)) = doc.window {
        if lo > hi {
            return Err(schema_err(format!("at window: empty band [{lo}, {hi}]")));
        }
    }
    Ok(KMDataset { o, s, u, grading, counts, lift, window: doc.window })
}

fn twisted_from_doc(doc: TwistedDoc, at: &str) -> Result<TwistedDataset> {
    check_unique(doc.points.iter().map(|p| p.label.as_str()), &format!("{at}points"))?;
    check_unique(doc.classes.iter().map(|c| c.label.as_str()), &format!("{at}classes"))?;
    let points: HashSet<&str> = doc.points.iter().map(|p| p.label.as_str()).collect();
    let classes: HashSet<&str> = doc.classes.iter().map(|c| c.label.as_str()).collect();
    let mut out = TwistedDataset { window: doc.window, ..Default::default() };
    for (k, p) in doc.points.iter().enumerate() {
        let mut cp = CriticalPoint::new(p.label.clone(), p.index);
        cp.s = p.s;
        if let Some(a) = &p.action {
            cp.action = Some(parse_action(a, &format!("{at}points[{k}].action"))?);
        }
        out.points.push(cp);
    }
    for (k, c) in doc.classes.iter().enumerate() {
        for end in [&c.minus, &c.plus] {
            if !points.contains(end.as_str()) {
                return Err(schema_err(format!("at {at}classes[{k}]: unknown label '{end}'")));
            }
        }
        let mut tc = TrajectoryClass::new(c.label.clone(), c.minus.clone(), c.plus.clone(), c.sf);
        tc.counts = c.counts.iter().map(|e| CountEntry { shift: e.shift, pos: e.pos, neg: e.neg, level: e.level }).collect();
        out.classes.push(tc);
    }
    for (k, (a, b, c)) in doc.compositions.iter().enumerate() {
        for l in [a, b, c] {
            if !classes.contains(l.as_str()) {
                return Err(schema_err(format!("at {at}compositions[{k}]: unknown label '{l}'")));
            }
        }
        out.compositions.push((a.clone(), b.clone(), c.clone()));
    }
    Ok(out)
}

fn parse_endpoint(s: &str, pairs: &HashSet<&str>, points: &HashSet<&str>, at: &str) -> Result<Endpoint> {
    if let Some((x, i)) = s.rsplit_once('@') {
        let level = i.parse().map_err(|_| schema_err(format!("at {at}: bad level in '{s}'")))?;
        if !points.contains(x) {
            return Err(schema_err(format!("at {at}: unknown label '{x}'")));
        }
        return Ok(Endpoint::Level(x.to_string(), level));
    }
    if !pairs.contains(s) {
        return Err(schema_err(format!("at {at}: unknown label '{s}'")));
    }
    Ok(Endpoint::Pair(s.to_string()))
}

/// The index of an interior trajectory is fixed by its endpoints.
fn expected_mu(minus: &Endpoint, plus: &Endpoint) -> i64 {
    match (minus, plus) {
        (Endpoint::Pair(_), Endpoint::Pair(_)) => 1,
        (Endpoint::Pair(_), Endpoint::Level(_, i)) => i + 1,
        (Endpoint::Level(_, i), Endpoint::Pair(_)) => -i,
        (Endpoint::Level(_, i), Endpoint::Level(_, j)) => j - i,
    }
}

fn equivariant_from_doc(doc: EquivariantDoc) -> Result<EquivariantDataset> {
    let boundary = twisted_from_doc(doc.boundary, "boundary.")?;
    let labels = doc.pairs.iter().map(|p| p.label.as_str()).chain(boundary.points.iter().map(|p| p.label.as_str()));
    check_unique(labels, "pairs")?;
    let pairs: HashSet<&str> = doc.pairs.iter().map(|p| p.label.as_str()).collect();
    let points: HashSet<&str> = boundary.points.iter().map(|p| p.label.as_str()).collect();
    let mut out = EquivariantDataset { regular: doc.regular, ..Default::default() };
    for (k, p) in doc.pairs.iter().enumerate() {
        let mut pp = PairPoint::new(p.label.clone(), p.degree);
        if let Some(a) = &p.action {
            pp.action = Some(parse_action(a, &format!("pairs[{k}].action"))?);
        }
        out.pairs.push(pp);
    }
    for (k, entry) in doc.interior.iter().enumerate() {
        let at = format!("interior[{k}]");
        let (minus, plus, coeff, mu) = match entry {
            InteriorDoc::Plain(m, p, c) => (m, p, c, None),
            InteriorDoc::WithMu(m, p, c, mu) => (m, p, c, Some(*mu)),
        };
        let minus = parse_endpoint(minus, &pairs, &points, &at)?;
        let plus = parse_endpoint(plus, &pairs, &points, &at)?;
        let coeff = GroupRingElem::parse(coeff).map_err(|e| schema_err(format!("at {at}: {e}")))?;
        let mu = mu.unwrap_or_else(|| expected_mu(&minus, &plus));
        out.interior.push(InteriorCount::new(minus, plus, mu, coeff));
    }
    if let Some(up) = &doc.upstairs {
        out.upstairs = Some(f2_complex(up, "upstairs.")?);
    }
    out.boundary = boundary;
    Ok(out)
}

// --------------------------------------------------------------- emitting

fn generators(names: &[String], grading: Option<&[i64]>) -> Vec<Generator> {
    let mut out: Vec<Generator> = names
        .iter()
        .enumerate()
        .map(|(i, l)| Generator { label: l.clone(), degree: grading.map(|g| g[i]) })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

fn entries<R: Ring + std::fmt::Display>(m: &RingMatrix<R>, rows: &[String], cols: &[String]) -> Vec<Entry> {
    let mut out: Vec<Entry> =
        m.nonzero_entries().map(|(i, j, v)| (rows[i].clone(), cols[j].clone(), v.to_string())).collect();
    out.sort();
    out
}

fn complex_doc<R: Ring + std::fmt::Display>(c: &FreeComplex<R>, window: Option<WindowDoc>) -> ComplexDoc {
    ComplexDoc {
        generators: generators(c.labels(), c.grading()),
        differential: entries(c.d(), c.labels(), c.labels()),
        window,
    }
}

fn km_doc(ds: &KMDataset) -> KmDoc {
    let g = ds.grading.as_ref();
    let shape = (ds.o.as_slice(), ds.s.as_slice(), ds.u.as_slice());
    let named = |f: &dyn Fn(&str) -> Vec<Entry>| -> BTreeMap<String, Vec<Entry>> {
        KM_MATRICES.iter().map(|n| (n.to_string(), f(n))).filter(|(_, e)| !e.is_empty()).collect()
    };
    let lift = ds.lift.as_ref().map(|l| {
        named(&|n| {
            let (r, c) = km_shape(n, shape.0, shape.1, shape.2);
            entries(km_get(l, n), r, c)
        })
    });
    let implied = match &ds.lift {
        Some(l) => l.map(|c| Gf2(c.augment())) == ds.counts,
        None => KM_MATRICES.iter().all(|n| km_get(&ds.counts, n).is_zero()),
    };
    let counts = (!implied).then(|| {
        named(&|n| {
            let (r, c) = km_shape(n, shape.0, shape.1, shape.2);
            entries(km_get(&ds.counts, n), r, c)
        })
    });
    KmDoc {
        o: generators(&ds.o, g.map(|g| g.o.as_slice())),
        s: generators(&ds.s, g.map(|g| g.s.as_slice())),
        u: generators(&ds.u, g.map(|g| g.u.as_slice())),
        counts,
        lift,
        window: ds.window,
    }
}

fn twisted_doc(tw: &TwistedDataset) -> TwistedDoc {
    let mut points: Vec<PointDoc> = tw
        .points
        .iter()
        .map(|p| PointDoc { label: p.label.clone(), index: p.index, s: p.s, action: p.action.map(|a| a.to_string()) })
        .collect();
    points.sort_by(|a, b| a.label.cmp(&b.label));
    let mut classes: Vec<ClassDoc> = tw
        .classes
        .iter()
        .map(|c| {
            let mut counts: Vec<CountDoc> = c
                .counts
                .iter()
                .map(|e| CountDoc { shift: e.shift, pos: e.pos, neg: e.neg, level: e.level })
                .collect();
            counts.sort_by_key(|e| (e.shift, e.level, e.pos, e.neg));
            ClassDoc { label: c.label.clone(), minus: c.minus.clone(), plus: c.plus.clone(), sf: c.sf, counts }
        })
        .collect();
    classes.sort_by(|a, b| a.label.cmp(&b.label));
    let mut compositions = tw.compositions.clone();
    compositions.sort();
    TwistedDoc { points, classes, compositions, window: tw.window }
}

fn equivariant_doc(e: &EquivariantDataset) -> EquivariantDoc {
    let mut pairs: Vec<PairDoc> = e
        .pairs
        .iter()
        .map(|p| PairDoc { label: p.label.clone(), degree: p.degree, action: p.action.map(|a| a.to_string()) })
        .collect();
    pairs.sort_by(|a, b| a.label.cmp(&b.label));
    let mut interior: Vec<InteriorDoc> = e
        .interior
        .iter()
        .filter(|c| !c.coeff.is_zero())
        .map(|c| {
            let (m, p, v) = (c.minus.to_string(), c.plus.to_string(), c.coeff.to_string());
            if c.mu == expected_mu(&c.minus, &c.plus) {
                InteriorDoc::Plain(m, p, v)
            } else {
                InteriorDoc::WithMu(m, p, v, c.mu)
            }
        })
        .collect();
    let key = |d: &InteriorDoc| match d {
        InteriorDoc::Plain(m, p, _) | InteriorDoc::WithMu(m, p, _, _) => (m.clone(), p.clone()),
    };
    interior.sort_by_key(key);
    EquivariantDoc {
        pairs,
        boundary: twisted_doc(&e.boundary),
        interior,
        upstairs: e.upstairs.as_ref().map(|u| complex_doc(u, None)),
        regular: e.regular,
    }
}

/// The canonical text of a dataset, newline-terminated.
pub fn emit(ds: &Dataset) -> String {
    let body = match ds {
        Dataset::Z2Complex(a) => {
            let w = a.window();
            let window = (!w.is_none()).then_some(WindowDoc { lo: w.lo, hi: w.hi });
            serde_json::to_value(complex_doc(a.complex(), window))
        }
        Dataset::Floer(c) => serde_json::to_value(complex_doc(c, None)),
        Dataset::Km(k) => serde_json::to_value(km_doc(k)),
        Dataset::Twisted(t) => serde_json::to_value(twisted_doc(t)),
        Dataset::Equivariant(e) => serde_json::to_value(equivariant_doc(e)),
    }
    .expect("dataset documents serialize");
    let mut obj = Map::new();
    obj.insert("schema".into(), Value::from(SCHEMA_VERSION));
    obj.insert("kind".into(), Value::from(ds.kind()));
    if let Value::Object(fields) = body {
        obj.extend(fields);
    }
    let mut out = to_text(&Value::Object(obj));
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Pretty JSON where arrays and objects of scalars stay on one line.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        Value::Object(map) if map.values().all(is_scalar) => {
            let parts: Vec<String> = map.iter().map(|(k, x)| format!("{}: {x}", Value::from(k.as_str()))).collect();
            let _ = write!(out, "{{{}}}", parts.join(", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, indent + 2);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", " ".repeat(indent));
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::from(k.as_str()));
                write_value(out, x, indent + 2);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", " ".repeat(indent));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests;
