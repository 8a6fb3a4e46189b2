//! The `khoworks` command line.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 size limit exceeded,
//! 3 a checked guarantee failed (analyze, annulus `--oracle`, selftest).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{analyze, Assumptions};
use crate::annulus::{
    kbsm_torus2_oracle, stratified_euler, torus_knot_skein_polynomial, AnnulusDiagram,
};
use crate::diagram::{parse_pd, LinkDiagram, Orientation};
use crate::error::{Error, Result};
use crate::fixtures::{family, torus_annulus_params};
use crate::homology::{
    coreduced_with, khovanov_with, reduced_with, AbelianGroup, BigradedHomology, ChainComplex, HomologyConfig,
    StratifiedHomology,
};
use crate::polynomial::{jones, kauffman_bracket, qt_convert, qt_grading, unnormalized_bracket, LaurentPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "khoworks", version, about = "Integral Khovanov homology of link diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bigraded homology H_{i,j}, optionally reduced or co-reduced.
    Homology(HomologyArgs),
    /// Kauffman bracket and Jones polynomial.
    Bracket(InputArgs),
    /// Torsion predictions, thickness and alternating identities.
    Analyze(AnalyzeArgs),
    /// Stratified homology and skein module coefficients of an annulus diagram.
    Annulus(AnnulusArgs),
    /// Run the built-in consistency suite.
    Selftest(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Largest crossing count accepted.
    #[arg(long, env = "KHOWORKS_LIMIT", value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: Option<u64>,
    /// Worker threads for the homology engine.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// PD code file (`X(a,b,c,d)` and `O` tokens; annulus files add `W label weight` lines).
    #[arg(long, value_name = "FILE")]
    pub pd: Option<PathBuf>,
    /// Built-in diagram, e.g. torus2:-3, hopf_chain:2, braid:3:1,-2, torus_annulus:1,2.
    #[arg(long, value_name = "NAME:ARGS", allow_hyphen_values = true)]
    pub family: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Components to reverse from the PD orientation, e.g. 0,2.
    #[arg(long, value_delimiter = ',')]
    pub reverse: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, conflicts_with = "coreduced")]
    pub reduced: bool,
    #[arg(long)]
    pub coreduced: bool,
    /// Arc label of the basepoint; defaults to the first arc.
    #[arg(long, value_name = "ARC")]
    pub basepoint: Option<String>,
    /// Report in (q, t) gradings.
    #[arg(long)]
    pub qt: bool,
    /// Writhe for --qt; defaults to the writhe of the chosen orientation.
    #[arg(long, requires = "qt", allow_hyphen_values = true)]
    pub writhe: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Crossing changes to an alternating diagram; alternating diagrams default to 0.
    #[arg(long, value_name = "K")]
    pub almost_alternating: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct AnnulusArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Compare against the closed form for torus_annulus families.
    #[arg(long)]
    pub oracle: bool,
}

/// Resolved settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub homology: HomologyConfig,
}

impl RunConfig {
    pub fn from_args(c: &CommonArgs) -> Self {
        let mut homology = HomologyConfig::default();
        if let Some(l) = c.limit {
            homology.max_crossings = l.min(usize::MAX as u64) as usize;
        }
        homology.jobs = c.jobs.map(|j| j as usize);
        RunConfig { format: c.format, homology }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimit(_) => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

/// Parse `args` and run, writing the report to `out` and diagnostics to `err`.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// The report text and exit code of a parsed command.
pub fn run(cmd: &Command) -> Result<(String, i32)> {
    match cmd {
        Command::Homology(a) => cmd_homology(a),
        Command::Bracket(a) => cmd_bracket(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Annulus(a) => cmd_annulus(a),
        Command::Selftest(c) => cmd_selftest(&RunConfig::from_args(c)),
    }
}

fn read_source(s: &Source) -> Result<std::result::Result<String, String>> {
    match (&s.pd, &s.family) {
        (Some(p), _) => std::fs::read_to_string(p).map(Ok).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        (None, Some(f)) => Ok(Err(f.clone())),
        _ => Err(Error::InvalidParameter("give --pd FILE or --family NAME:ARGS".into())),
    }
}

fn load_link(s: &Source) -> Result<LinkDiagram> {
    match read_source(s)? {
        Ok(text) => parse_pd(&text),
        Err(spec) => family(&spec)?.into_link(),
    }
}

fn load_annulus(s: &Source) -> Result<AnnulusDiagram> {
    match read_source(s)? {
        Ok(text) => AnnulusDiagram::parse(&text),
        Err(spec) => family(&spec)?.into_annulus(),
    }
}

fn orientation(d: &LinkDiagram, reverse: &[usize]) -> Result<Orientation> {
    let mut o = Orientation::from_pd_convention(d);
    for &c in reverse {
        let slot = o
            .reversed
            .get_mut(c)
            .ok_or_else(|| Error::InvalidParameter(format!("no component {c}")))?;
        *slot = !*slot;
    }
    Ok(o)
}

fn default_basepoint(d: &LinkDiagram) -> Result<String> {
    d.arc_labels()
        .next()
        .map(str::to_string)
        .or_else(|| d.free_loop_labels().iter().flatten().next().cloned())
        .ok_or_else(|| Error::InvalidParameter("diagram has no labelled arc for a basepoint".into()))
}

fn groups_json(h: &BigradedHomology, keys: [&str; 2], map: impl Fn(i64, i64) -> Result<(i64, i64)>) -> Result<Value> {
    let mut rows = Vec::new();
    for (&[i, j], g) in h.iter() {
        let (a, b) = map(i, j)?;
        rows.push((a, b, g.clone()));
    }
    rows.sort_by_key(|r| (r.0, r.1));
    let groups: Vec<Value> = rows
        .iter()
        .map(|(a, b, g)| {
            let t: Vec<String> = g.torsion().iter().map(|d| d.to_string()).collect();
            json!({ keys[0]: a, keys[1]: b, "free_rank": g.free_rank, "torsion": t })
        })
        .collect();
    Ok(Value::Array(groups))
}

pub fn cmd_homology(a: &HomologyArgs) -> Result<(String, i32)> {
    let cfg = RunConfig::from_args(&a.input.common);
    let d = load_link(&a.input.source)?;
    let h = if a.reduced || a.coreduced {
        let bp = match &a.basepoint {
            Some(b) => b.clone(),
            None => default_basepoint(&d)?,
        };
        if a.reduced {
            reduced_with(&d, &bp, &cfg.homology)?
        } else {
            coreduced_with(&d, &bp, &cfg.homology)?
        }
    } else {
        khovanov_with(&d, &cfg.homology)?
    };
    let mut out = String::new();
    if a.qt {
        let w = match a.writhe {
            Some(w) => w,
            None => d.writhe(&orientation(&d, &a.input.reverse)?),
        };
        match cfg.format {
            Format::Table => {
                let t = qt_convert(&h, w)?;
                let _ = writeln!(out, "writhe {w}");
                let _ = writeln!(out, "free     {}", t.display_free());
                let _ = writeln!(out, "torsion  {}", t.display_torsion());
            }
            Format::Json => {
                let v = json!({ "writhe": w, "groups": groups_json(&h, ["q", "t"], |i, j| qt_grading(i, j, w))? });
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            }
            Format::Csv => {
                out.push_str("q,t,free_rank,torsion\n");
                let v = groups_json(&h, ["q", "t"], |i, j| qt_grading(i, j, w))?;
                for g in v.as_array().unwrap() {
                    let t: Vec<&str> = g["torsion"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
                    let _ = writeln!(out, "{},{},{},{}", g["q"], g["t"], g["free_rank"], t.join(";"));
                }
            }
        }
    } else {
        out = match cfg.format {
            Format::Table => h.table(None),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&h.to_json()).expect("json")),
            Format::Csv => h.to_csv(),
        };
    }
    Ok((out, EXIT_OK))
}

pub fn cmd_bracket(a: &InputArgs) -> Result<(String, i32)> {
    let cfg = RunConfig::from_args(&a.common);
    let d = load_link(&a.source)?;
    if d.n_crossings() > cfg.homology.max_crossings {
        return Err(Error::SizeLimit(format!("{} crossings exceed the limit {}", d.n_crossings(), cfg.homology.max_crossings)));
    }
    let o = orientation(&d, &a.reverse)?;
    let unnorm = unnormalized_bracket(&d)?;
    let bracket = kauffman_bracket(&d)?;
    let w = d.writhe(&o);
    let v = jones(&d, &o)?;
    let rows = [
        ("bracket", bracket.display_in("A")),
        ("unnormalized", unnorm.display_in("A")),
        ("writhe", w.to_string()),
        ("jones", v.to_string()),
    ];
    let out = match cfg.format {
        Format::Table => rows.iter().map(|(k, v)| format!("{k:<13}{v}\n")).collect(),
        Format::Json => {
            // the Jones polynomial is keyed by doubled t-exponents
            let v = json!({
                "bracket": bracket,
                "unnormalized": unnorm,
                "writhe": w,
                "jones": { "display": v.to_string(), "doubled_exponents": v.half },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{v}");
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Result<(String, i32)> {
    let cfg = RunConfig::from_args(&a.input.common);
    let d = load_link(&a.input.source)?;
    let h = khovanov_with(&d, &cfg.homology)?;
    let almost = a.almost_alternating.or(d.is_alternating().then_some(0));
    let o = orientation(&d, &a.input.reverse)?;
    let r = analyze(&d, &h, &Assumptions { almost_alternating: almost, orientation: Some(o) });
    let code = if r.all_passed() { EXIT_OK } else { EXIT_VIOLATION };
    let out = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("json")),
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for c in &r.checks {
                let _ = writeln!(s, "\"{}\",{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'"));
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "crossings      {}", r.crossings);
            let _ = writeln!(s, "|s+| |s-|      {} {}", r.s_plus, r.s_minus);
            let ad = r.adequacy;
            let _ = writeln!(s, "adequate       plus={} minus={}", ad.plus, ad.minus);
            if r.predictions.is_empty() {
                let tors: Vec<String> =
                    h.torsion_part().iter().map(|(k, g)| format!("({},{}) {}", k[0], k[1], g)).collect();
                if tors.is_empty() {
                    s.push_str("no torsion predicted; none found\n");
                } else {
                    let _ = writeln!(s, "no torsion predicted; found {}", tors.join(", "));
                }
            }
            for p in &r.predictions {
                let g = h.get(p.i, p.j);
                let verdict = if g.contains_z2() { "CONFIRMED" } else { "VIOLATED" };
                let reason = serde_json::to_value(p.reason).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
                let _ = writeln!(s, "predicted Z_2 at ({},{}) [{}]: {} {}", p.i, p.j, reason, g, verdict);
            }
            if let Some(t) = &r.thickness.full {
                let _ = writeln!(s, "thickness      k1={} k2={} k={}", t.k1, t.k2, t.k);
            }
            if let Some(t) = &r.thickness.torsion {
                let _ = writeln!(s, "torsion thick. k1={} k2={} k={}", t.k1, t.k2, t.k);
            }
            let diags: Vec<String> = r.torsion_diagonals.iter().map(i64::to_string).collect();
            let _ = writeln!(s, "torsion diag.  {}", if diags.is_empty() { "-".into() } else { diags.join(" ") });
            if let Some(sig) = r.signature {
                let _ = writeln!(s, "signature      {sig}");
            }
            for c in &r.checks {
                let _ = writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            s
        }
    };
    Ok((out, code))
}

fn kbsm_json(c: &BTreeMap<u32, LaurentPoly>) -> Value {
    Value::Array(c.iter().rev().map(|(m, p)| json!({ "m": m, "terms": json!(p)["terms"] })).collect())
}

/// `A·x^2 + (-A - A^-3)·∅` style rendering.
pub fn kbsm_display(c: &BTreeMap<u32, LaurentPoly>) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = c
        .iter()
        .rev()
        .map(|(m, p)| {
            let base = match m {
                0 => "∅".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{m}"),
            };
            if *p == LaurentPoly::one() {
                return base;
            }
            let coeff = if p.len() == 1 { p.display_in("A") } else { format!("({})", p.display_in("A")) };
            format!("{coeff}·{base}")
        })
        .collect();
    terms.join(" + ")
}

fn stratified_csv(h: &StratifiedHomology) -> String {
    h.to_csv()
}

pub fn cmd_annulus(a: &AnnulusArgs) -> Result<(String, i32)> {
    let cfg = RunConfig::from_args(&a.common);
    let ad = load_annulus(&a.source)?;
    let cx = ad.complex(&cfg.homology)?;
    let h = cx.stratified_homology();
    let euler = stratified_euler(&cx);
    let kbsm = crate::annulus::expand_in_core_powers(&euler)?;
    let mut code = EXIT_OK;
    let mut oracle_line = None;
    if a.oracle {
        let (r, k) = a
            .source
            .family
            .as_deref()
            .and_then(torus_annulus_params)
            .ok_or_else(|| Error::InvalidParameter("--oracle needs --family torus_annulus:R,K".into()))?;
        let pass = if k == 2 {
            kbsm_torus2_oracle(r)? == kbsm
        } else {
            torus_knot_skein_polynomial(r, k)? == euler
        };
        if !pass {
            code = EXIT_VIOLATION;
        }
        oracle_line = Some(pass);
    }
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    let out = match cfg.format {
        Format::Table => {
            let mut s = h.table();
            let _ = writeln!(s, "kbsm     {}", kbsm_display(&kbsm));
            if let Some(p) = oracle_line {
                let _ = writeln!(s, "oracle   {}", verdict(p));
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "homology": h.to_json(), "kbsm": kbsm_json(&kbsm) });
            if let Some(p) = oracle_line {
                v["oracle"] = json!(verdict(p));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = stratified_csv(&h);
            s.push_str("\nm,coefficient\n");
            for (m, p) in &kbsm {
                let _ = writeln!(s, "{m},{}", p.display_in("A"));
            }
            if let Some(p) = oracle_line {
                let _ = writeln!(s, "\noracle,{}", verdict(p));
            }
            s
        }
    };
    Ok((out, code))
}

/// One selftest result.
#[derive(Clone, Debug)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
}

pub fn selftest_checks(cfg: &HomologyConfig) -> Result<Vec<SelfCheck>> {
    let mut out = Vec::new();
    let mut push = |name, passed| out.push(SelfCheck { name, passed });
    let z = AbelianGroup::free;

    let t = crate::fixtures::trefoil();
    let h = khovanov_with(&t, cfg)?;
    let mut table = BigradedHomology::new();
    for (i, j) in [(3, 9), (1, 1), (-3, -3), (-3, -7)] {
        table.insert(i, j, z(1));
    }
    table.insert(1, 5, AbelianGroup::new(0, [2u32]));
    push("trefoil homology", h == table);
    push("trefoil json round trip", BigradedHomology::from_json(&h.to_json()).as_ref() == Ok(&h));

    let cx = ChainComplex::new(&t, cfg)?;
    let dd = cx.gradings().into_iter().all(|(i, j, _)| {
        let a = cx.differential(i, j);
        let b = cx.differential(i + 2, j);
        a.cols() == 0 || b.rows() == 0 || a.mul(&b).is_zero()
    });
    push("trefoil d∘d = 0", dd);
    let chi = crate::polynomial::homology_euler_characteristic(&h);
    push("trefoil Euler characteristic", chi == unnormalized_bracket(&t)?);

    let hopf = crate::diagram::hopf_chain(2)?;
    let hh = khovanov_with(&hopf, cfg)?;
    push("hopf_chain(2) torsion free", hh.is_torsion_free() && hh.total_free_rank() == 8);

    let l = crate::fixtures::l6a2();
    let r = analyze(&l, &khovanov_with(&l, cfg)?, &Assumptions { almost_alternating: Some(0), orientation: None });
    let mut pred: Vec<(i64, i64)> = r.predictions.iter().map(|p| (p.i, p.j)).collect();
    pred.sort_unstable();
    push("6^2_2 torsion predictions", pred == vec![(-4, -6), (2, 6)] && r.all_passed());

    let exact = (0..t.n_crossings()).all(|v| {
        crate::homology::skein_maps(&t, v, cfg).is_ok_and(|m| {
            m.are_chain_maps() && cx.gradings().iter().all(|&(i, j, _)| m.exact_at(i, j))
        })
    });
    push("trefoil skein sequences exact", exact);

    for (name, r) in [("annulus oracle r=1", 1), ("annulus oracle r=-3", -3)] {
        let ad = crate::annulus::torus_annulus(r, 2)?;
        push(name, crate::annulus::kbsm_coefficients_with(&ad, cfg)? == kbsm_torus2_oracle(r)?);
    }
    Ok(out)
}

pub fn cmd_selftest(cfg: &RunConfig) -> Result<(String, i32)> {
    let checks = selftest_checks(&cfg.homology)?;
    let ok = checks.iter().all(|c| c.passed);
    let out = match cfg.format {
        Format::Json => {
            let v: Vec<Value> = checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect();
            format!("{}\n", serde_json::to_string_pretty(&Value::Array(v)).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("check,passed\n");
            for c in &checks {
                let _ = writeln!(s, "{},{}", c.name, c.passed);
            }
            s
        }
        Format::Table => checks.iter().map(|c| format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name)).collect(),
    };
    Ok((out, if ok { EXIT_OK } else { EXIT_VIOLATION }))
}
