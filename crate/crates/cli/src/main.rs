//! `raydiag` command-line tool.
//!
//! Exit status: 0 on success, 2 when an input file or argument does not
//! parse, 3 when the input parses but violates a precondition.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raydiag::bounds::{bound_basic, bound_refined, bound_strengthened, extract_constants, extract_constants_quasi, BoundReport, Constants};
use raydiag::catalog::{build_family, listing_note, list, predicted_class, sweep, ChainSpec, EnumOptions, FamilyId, FamilySpec};
use raydiag::classifier::{oracle_classify, semi_elliptic_decomposition, Classification, DiagramClass};
use raydiag::polytope::{parse_polytope, vinberg_check};
use raydiag::raygraph::{distance_a_matrix, distance_matrix, diameter, parse_rayset, prune_special};
use raydiag::scalar::{mixed, parse_scalar, primitive};
use raydiag::shapes::{lints, shape_type_checked, special_components, ShapeType};
use raydiag::{classify, Error, Mode, RaySet, Rational};
use report::{qjson, qvec_human, qvec_json, sets_human, Report};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "raydiag", version, about = "Exact combinatorics of extremal-ray diagrams")]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Override the mode of input ray sets.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Classify by Fourier-Motzkin feasibility only.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cy,
    General,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a `rayset v1` file.
    Classify { path: String },
    /// Semi-elliptic decomposition into parabolic parts and an elliptic rest.
    Decompose { path: String },
    /// Grammar shape type, special components and lints.
    Shape { path: String },
    /// Oriented distances, diameter and the pruned symmetric distance.
    Distance { path: String },
    /// Build a catalog family, list the families, or sweep them all.
    Catalog(CatalogArgs),
    /// Diagram constants over the catalog.
    Constants {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_weight: i64,
        /// Also run the quasi-Lanner search.
        #[arg(long)]
        quasi: bool,
        /// Size limit for the quasi-Lanner search.
        #[arg(long, default_value_t = 11)]
        quasi_max_n: usize,
    },
    /// Evaluate the Picard-number bound formulas.
    Bounds(BoundsArgs),
    /// Angle-counting check on a `polytope v1` file.
    Vinberg {
        path: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "D", allow_hyphen_values = true, default_value = "0")]
        d: String,
    },
}

#[derive(Args)]
struct CatalogArgs {
    /// Sweep every family up to this size and weight.
    #[arg(long, num_args = 2, value_names = ["MAX_N", "MAX_WEIGHT"])]
    sweep: Option<Vec<String>>,
    /// Family mnemonic, or `list`.
    family: Option<String>,
    /// Parameters as `--name value`, `--name=value` or `name=value`;
    /// type (B) takes `--chains A3,B2rw2`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// `cy`, `verygood`, or a path to a preset JSON file.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    c1: Option<String>,
    #[arg(long)]
    c2: Option<String>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    l2: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    n_d: Option<i64>,
    #[arg(long)]
    n_c: Option<i64>,
    #[arg(long)]
    n_a: Option<i64>,
    #[arg(long)]
    c_a: Option<String>,
}

/// Failure with its exit status.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let parse = e.is_parse() || matches!(e, Error::UnknownFamily(_) | Error::InvalidParams(_));
        Fail { code: if parse { 2 } else { 3 }, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type Out = Result<Report, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Classify { path } => cmd_classify(cli, path),
        Cmd::Decompose { path } => cmd_decompose(cli, path),
        Cmd::Shape { path } => cmd_shape(cli, path),
        Cmd::Distance { path } => cmd_distance(cli, path),
        Cmd::Catalog(a) => cmd_catalog(cli, a),
        Cmd::Constants { max_n, max_weight, quasi, quasi_max_n } => cmd_constants(*max_n, *max_weight, *quasi, *quasi_max_n),
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::Vinberg { path, c, d } => cmd_vinberg(path, c, d),
    }
}

fn read(path: &str) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
}

fn load(cli: &Cli, path: &str) -> Result<RaySet, Fail> {
    let rs: RaySet = parse_rayset(&read(path)?)?;
    Ok(match cli.mode {
        Some(ModeArg::Cy) => rs.with_mode(Mode::Cy)?,
        Some(ModeArg::General) => rs.with_mode(Mode::General)?,
        None => rs,
    })
}

fn rational(name: &str, s: &str) -> Result<Rational, Fail> {
    parse_scalar(s).ok_or_else(|| usage(format!("{name}: `{s}` is not a rational")))
}

fn matrix_human(rs: &RaySet) -> String {
    rs.matrix().iter().map(|r| qvec_human(r)).collect::<Vec<_>>().join("; ")
}

fn matrix_json(rs: &RaySet) -> Value {
    Value::Array(rs.matrix().iter().map(|r| qvec_json(r)).collect())
}

/// Classification fields shared by `classify` and `catalog`.
fn put_classification(r: &mut Report, c: &Classification) {
    r.text("class", c.class);
    if let Some(w) = &c.witness {
        let key = match c.class {
            DiagramClass::ConnectedParabolic | DiagramClass::Parabolic => "kernel",
            _ => "witness",
        };
        let v = primitive(&w.coefficients);
        r.put(key, qvec_human(&v), qvec_json(&v));
        let signs: Vec<&str> = w.signs.iter().map(|s| s.symbol()).collect();
        r.put("signs", signs.join(" "), json!(signs));
    }
    if let Some(d) = &c.decomposition {
        put_decomposition(r, &d.parabolic_parts, &d.elliptic_part);
    }
    if let Some(reason) = &c.reason {
        r.text("reason", reason);
    }
}

fn put_decomposition(r: &mut Report, parabolic: &[Vec<usize>], elliptic: &[usize]) {
    r.put("parabolic_parts", sets_human(parabolic), json!(parabolic));
    r.put("elliptic_part", format!("{elliptic:?}"), json!(elliptic));
}

fn cmd_classify(cli: &Cli, path: &str) -> Out {
    let rs = load(cli, path)?;
    let mut r = Report::new(format!("classify {path}"));
    r.int("n", rs.n() as i64);
    if cli.oracle {
        r.text("class", oracle_classify(&rs)?);
        r.text("path", "fourier-motzkin");
    } else {
        put_classification(&mut r, &classify(&rs)?);
    }
    Ok(r)
}

fn cmd_decompose(cli: &Cli, path: &str) -> Out {
    let rs = load(cli, path)?;
    let mut r = Report::new(format!("decompose {path}"));
    match semi_elliptic_decomposition(&rs)? {
        Some(d) => {
            r.flag("semi_elliptic", true);
            put_decomposition(&mut r, &d.parabolic_parts, &d.elliptic_part);
        }
        None => r.flag("semi_elliptic", false),
    }
    Ok(r)
}

fn cmd_shape(cli: &Cli, path: &str) -> Out {
    let rs = load(cli, path)?;
    let mut r = Report::new(format!("shape {path}"));
    if rs.dotted().is_empty() && raydiag::raygraph::is_connected(&rs) {
        let st = shape_type_checked(&rs)?;
        let detail = match &st {
            ShapeType::B { hub, chains } => format!("hub {hub}, chains {}", sets_human(chains)),
            ShapeType::C { order } => format!("order {order:?}"),
            ShapeType::D { chain } => format!("chain {chain:?}"),
            ShapeType::E { q } | ShapeType::EPrime { q } => format!("Q {q:?}"),
            ShapeType::Unclassified { reason } => reason.clone(),
            ShapeType::A => String::new(),
        };
        r.text("shape", st.letter());
        if !detail.is_empty() {
            r.text("shape_detail", detail);
        }
    } else {
        r.text("shape", "n/a (dotted pairs or disconnected)");
    }
    if rs.mode() == Mode::Cy {
        match special_components(&rs) {
            Ok(comps) => {
                let h: Vec<String> = comps.iter().map(|c| format!("{} {:?}", c.kind, c.vertices)).collect();
                let j: Vec<Value> = comps.iter().map(|c| json!({"type": c.kind.to_string(), "vertices": c.vertices})).collect();
                r.put("special_components", if h.is_empty() { "none".into() } else { h.join(", ") }, Value::Array(j));
            }
            Err(e) => r.text("special_components", format!("error: {e}")),
        }
        for l in lints(&rs)? {
            r.put("lint[]", format!("{:?} {:?}: {}", l.rule, l.vertices, l.message), json!({"rule": format!("{:?}", l.rule), "vertices": l.vertices, "message": l.message}));
        }
    }
    Ok(r)
}

fn cmd_distance(cli: &Cli, path: &str) -> Out {
    let rs = load(cli, path)?;
    let mut r = Report::new(format!("distance {path}"));
    let fmt = |m: Vec<Vec<raydiag::Dist>>| {
        let h = m.iter().map(|row| row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ");
        let j: Vec<Vec<Value>> = m.iter().map(|row| row.iter().map(|d| d.finite().map_or(Value::Null, |x| json!(x))).collect()).collect();
        (h, json!(j))
    };
    let (h, j) = fmt(distance_matrix(&rs));
    r.put("rho", h, j);
    let dm = diameter(&rs);
    r.put("diameter", dm.to_string(), dm.finite().map_or(Value::Null, |x| json!(x)));
    let (_, kept) = prune_special(&rs);
    r.put("pruned_vertices", format!("{kept:?}"), json!(kept));
    let (h, j) = fmt(distance_a_matrix(&rs));
    r.put("rho_a", h, j);
    Ok(r)
}

/// `--n 2`, `--n=2`, `n=2`.
fn parse_params(raw: &[String]) -> Result<Vec<(String, String)>, Fail> {
    let mut out = vec![];
    let mut i = 0;
    while i < raw.len() {
        let t = raw[i].trim_start_matches('-');
        if let Some((k, v)) = t.split_once('=') {
            out.push((k.to_string(), v.to_string()));
            i += 1;
        } else if raw[i].starts_with("--") && i + 1 < raw.len() {
            out.push((t.to_string(), raw[i + 1].clone()));
            i += 2;
        } else {
            return Err(usage(format!("cannot read parameter `{}`", raw[i])));
        }
    }
    Ok(out)
}

fn cmd_catalog(cli: &Cli, a: &CatalogArgs) -> Out {
    if let Some(sw) = &a.sweep {
        let n: usize = sw[0].parse().map_err(|_| usage("sweep MAX_N must be a number"))?;
        let w: i64 = sw[1].parse().map_err(|_| usage("sweep MAX_WEIGHT must be a number"))?;
        let mut r = Report::new(format!("catalog --sweep {n} {w}"));
        let rep = sweep(n, w, EnumOptions::default());
        r.int("entries", rep.entries as i64);
        for (o, c) in &rep.by_origin {
            r.int(format!("entries.{o:?}"), *c as i64);
        }
        r.int("disagreements", rep.disagreements.len() as i64);
        for d in &rep.disagreements {
            let actual = match &d.actual {
                Ok(c) => c.to_string(),
                Err(e) => format!("error: {e}"),
            };
            r.put(
                "disagreement[]",
                format!("{} predicted {} actual {actual}", d.spec, d.predicted),
                json!({"spec": d.spec.to_string(), "predicted": d.predicted.name(), "actual": actual}),
            );
        }
        return Ok(r);
    }
    let Some(name) = &a.family else {
        return Err(usage("catalog needs a family name, `list`, or --sweep"));
    };
    if name == "list" {
        let mut r = Report::new("catalog list");
        for (n, label, params) in list() {
            let sig = if params.is_empty() { n.to_string() } else { format!("{n}({})", params.join(",")) };
            r.put("family[]", format!("{sig} = {label}"), json!({"name": n, "label": label, "params": params}));
        }
        return Ok(r);
    }
    let id = FamilyId::from_name(name).ok_or_else(|| Error::UnknownFamily(name.clone()))?;
    let mut spec = FamilySpec::new(id, &[]);
    for (k, v) in parse_params(&a.params)? {
        if k == "chains" && id == FamilyId::TypeB {
            spec.chains = v
                .split(',')
                .map(|c| ChainSpec::parse(c).ok_or_else(|| usage(format!("bad chain `{c}`"))))
                .collect::<Result<_, _>>()?;
        } else if id.params().contains(&k.as_str()) {
            spec.params.insert(k.clone(), rational(&k, &v)?);
        } else {
            return Err(Error::InvalidParams(format!("{id} has no parameter `{k}`")).into());
        }
    }
    let rs = build_family(&spec)?;
    let mut r = Report::new(format!("catalog {spec}"));
    r.text("family", &spec);
    r.text("label", id.label());
    r.int("n", rs.n() as i64);
    r.put("matrix", matrix_human(&rs), matrix_json(&rs));
    let predicted = predicted_class(&spec)?;
    r.text("predicted", predicted);
    let actual = if cli.oracle { oracle_classify(&rs)? } else { classify(&rs)?.class };
    r.text("actual", actual);
    r.flag("agree", predicted == actual);
    if let Some(note) = listing_note(&spec) {
        r.text("listed", note.listed.map_or("none".into(), |c| c.to_string()));
        r.text("note", note.note);
    }
    Ok(r)
}

/// Caps the constants are checked against, from the `cy` preset.
fn cy_caps() -> Vec<(String, Rational)> {
    let p: Value = serde_json::from_str(include_str!("../data/cy.json")).expect("bundled preset is JSON");
    p["caps"]
        .as_object()
        .map(|m| m.iter().filter_map(|(k, v)| Some((k.clone(), parse_scalar(v.as_str()?)?))).collect())
        .unwrap_or_default()
}

fn put_constants(r: &mut Report, prefix: &str, c: &Constants, caps: &[(String, Rational)]) {
    for (k, v) in [("q", c.q), ("d", c.d), ("n_D", c.n_d), ("n_C", c.n_c), ("n_A", c.n_a), ("d_A", c.d_a)] {
        r.int(format!("{prefix}{k}"), v);
    }
    for (k, v) in [("C1", &c.c1), ("C2", &c.c2), ("C_A", &c.c_a)] {
        match caps.iter().find(|(n, _)| n == k) {
            Some((_, cap)) => {
                let ok = if v <= cap { "OK" } else { "FAIL" };
                r.put(format!("{prefix}{k}"), format!("{} (<= {} {ok})", mixed(v), mixed(cap)), qjson(v));
            }
            None => r.q(format!("{prefix}{k}"), v),
        }
    }
}

fn cmd_constants(max_n: usize, w: i64, quasi: bool, quasi_max_n: usize) -> Out {
    let mut cmd = format!("constants --max-n {max_n} --max-weight {w}");
    if quasi {
        cmd.push_str(&format!(" --quasi --quasi-max-n {quasi_max_n}"));
    }
    let mut r = Report::new(cmd);
    let rep = extract_constants(max_n, w)?;
    r.int("entries", rep.entries as i64);
    put_constants(&mut r, "", &rep.constants, &cy_caps());
    for (name, wit) in &rep.attained_by {
        let spec = wit.spec.as_ref().map_or("-".to_string(), |s| s.to_string());
        r.put(format!("witness.{name}"), format!("{spec}: {}", wit.detail), json!({"spec": spec, "detail": wit.detail, "matrix": matrix_json(&wit.rs)}));
    }
    if quasi {
        let q = extract_constants_quasi(quasi_max_n, w)?;
        r.int("quasi_count", q.count as i64);
        r.int("quasi_max_size", q.max_size as i64);
        r.int("quasi_max_diam", q.max_diameter as i64);
        for (k, wit) in [("quasi_size_witness", &q.size_witness), ("quasi_diam_witness", &q.diameter_witness)] {
            if let Some(wit) = wit {
                r.put(k, wit.detail.clone(), json!({"detail": wit.detail, "matrix": matrix_json(&wit.rs)}));
            }
        }
        put_constants(&mut r, "quasi_implied.", &q.implied, &[]);
    }
    Ok(r)
}

fn load_preset(name: &str) -> Result<Value, Fail> {
    let text = match name {
        "cy" => include_str!("../data/cy.json").to_string(),
        "verygood" => include_str!("../data/verygood.json").to_string(),
        path => read(path)?,
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("preset {name}: {e}")))
}

fn json_q(v: &Value) -> Option<Rational> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => n.as_i64().map(raydiag::qi),
        _ => None,
    }
}

/// Check a value against a preset headline and render it.
fn headline(value: &Rational, h: Option<&Value>) -> (String, Option<bool>) {
    let v = mixed(value);
    let Some(h) = h else { return (v, None) };
    let rule = |k: &str| h.get(k).and_then(json_q);
    if let Some(f) = rule("floor") {
        let ok = Rational::from_integer(value.floor().to_integer()) == f;
        return (format!("{v} (headline {} {})", mixed(&f), if ok { "OK" } else { "FAIL" }), Some(ok));
    }
    if let Some(e) = rule("eq") {
        let ok = *value == e;
        return (format!("{v} (headline {} {})", mixed(&e), if ok { "OK" } else { "FAIL" }), Some(ok));
    }
    if let Some(l) = rule("lt") {
        let ok = *value < l;
        return (format!("{v} (<{} {})", mixed(&l), if ok { "OK" } else { "FAIL" }), Some(ok));
    }
    if let Some(l) = rule("le") {
        let ok = *value <= l;
        return (format!("{v} (<= {} {})", mixed(&l), if ok { "OK" } else { "FAIL" }), Some(ok));
    }
    (v, None)
}

fn put_bound(r: &mut Report, key: &str, b: &BoundReport, h: Option<&Value>) {
    let (human, ok) = headline(&b.value, h);
    r.put(key, human, json!({"value": qjson(&b.value), "headline_ok": ok, "notes": b.notes}));
}

fn cmd_bounds(a: &BoundsArgs) -> Out {
    let preset = a.preset.as_deref().map(load_preset).transpose()?;
    let input = |key: &str, flag: &Option<String>| -> Result<Option<Rational>, Fail> {
        if let Some(s) = flag {
            return rational(key, s).map(Some);
        }
        Ok(preset.as_ref().and_then(|p| p["inputs"].get(key)).and_then(json_q))
    };
    let int_input = |key: &str, flag: Option<i64>| -> Option<i64> {
        flag.or_else(|| preset.as_ref().and_then(|p| p["inputs"].get(key)).and_then(|v| v.as_i64()))
    };
    let heads = preset.as_ref().map(|p| p["headlines"].clone()).unwrap_or(Value::Null);
    let mut cmd = String::from("bounds");
    if let Some(p) = &a.preset {
        cmd.push_str(&format!(" --preset {p}"));
    }
    let mut r = Report::new(cmd);
    if let Some(p) = &preset {
        r.text("preset", p["name"].as_str().unwrap_or("?"));
    }
    let c1 = input("C1", &a.c1)?;
    let c2 = input("C2", &a.c2)?;
    match (&c1, &c2) {
        (Some(c1), Some(c2)) => {
            r.q("C1", c1);
            r.q("C2", c2);
            put_bound(&mut r, "basic", &bound_basic(c1, c2)?, heads.get("basic"));
        }
        _ => return Err(usage("bounds needs --preset or both --c1 and --c2")),
    }
    let k = int_input("k", a.k);
    let l2 = int_input("l2", a.l2);
    let consts = (
        int_input("q", a.q),
        int_input("n_D", a.n_d),
        int_input("n_C", a.n_c),
        int_input("n_A", a.n_a),
        input("C_A", &a.c_a)?,
    );
    if let (Some(k), Some(l2)) = (k, l2) {
        if let (Some(q), Some(n_d), Some(n_c), Some(n_a), Some(c_a)) = consts {
            let c = Constants { q, d: 0, n_d, n_c, n_a, d_a: 0, c1: c1.clone().unwrap_or_default(), c2: c2.clone().unwrap_or_default(), c_a };
            let (refined, coarse) = bound_refined(k, l2, &c)?;
            put_bound(&mut r, "refined", &refined, heads.get("refined"));
            put_bound(&mut r, "coarse", &coarse, heads.get("coarse"));
        }
        if k + l2 <= 2 {
            let (s29, s30) = bound_strengthened(k, l2)?;
            let ok = [&s29, &s30].iter().all(|b| b.claim.as_ref().is_some_and(|c| c.holds));
            let cap = s29.claim.as_ref().map_or("40".to_string(), |c| mixed(&c.bound));
            r.put(
                "strengthened",
                format!("{}|{} (<= {cap} {})", mixed(&s29.value), mixed(&s30.value), if ok { "OK" } else { "FAIL" }),
                json!({"value_29": qjson(&s29.value), "value_30": qjson(&s30.value), "holds": ok}),
            );
            r.text("strengthened_note", s29.notes.join("; "));
        }
    }
    Ok(r)
}

fn cmd_vinberg(path: &str, c: &str, d: &str) -> Out {
    let p = parse_polytope(&read(path)?)?;
    let (c, d) = (rational("C", c)?, rational("D", d)?);
    let rep = vinberg_check(&p, &c, &d)?;
    let mut r = Report::new(format!("vinberg {path} --C {} --D {}", mixed(&c), mixed(&d)));
    r.int("dim", p.dim as i64);
    r.int("vertices", p.vertices.len() as i64);
    r.int("faces2", p.faces2.len() as i64);
    let cap = c.clone() * raydiag::qi(p.dim as i64) + d.clone();
    match &rep.vertex_violation {
        None => r.put("condition1", "PASS", json!({"pass": true})),
        Some((v, s)) => r.put(
            "condition1",
            format!("FAIL vertex#{v} (sum {} > {})", mixed(s), mixed(&cap)),
            json!({"pass": false, "vertex": v, "sum": qjson(s), "cap": qjson(&cap)}),
        ),
    }
    match &rep.face_violation {
        None => r.put("condition2", "PASS", json!({"pass": true})),
        Some((i, s)) => {
            let need = raydiag::qi(5 - p.faces2[*i].k() as i64);
            r.put(
                "condition2",
                format!("FAIL face#{i} (sum {} < {})", mixed(s), mixed(&need)),
                json!({"pass": false, "face": i, "sum": qjson(s), "needed": qjson(&need)}),
            );
        }
    }
    match &rep.bound {
        Some(b) => {
            r.put("bound", format!("n < {}", mixed(&b.value)), json!({"limit": qjson(&b.value), "holds": b.claim.as_ref().map(|c| c.holds)}));
            if let Some(c) = &b.claim {
                r.text("claim", c);
            }
            for n in &b.notes {
                r.put("note[]", n.clone(), json!(n));
            }
        }
        None => r.text("bound", "none (a condition fails)"),
    }
    Ok(r)
}
