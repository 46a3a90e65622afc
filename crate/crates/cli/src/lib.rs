//! Command implementations for the `tamedeg` binary.
//!
//! Each command renders to a [`Response`] holding the text to print and the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | constructed and verified, or verification passed |
//! | 1 | usage or parse error |
//! | 2 | no construction applies (unknown) |
//! | 3 | verification failure |

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use tamedeg::construct::{ConstructError, Parameters};
use tamedeg::text::format_factor;
use tamedeg::verify::verify_plan_with_map;
use tamedeg::{
    apply_word, certify_pair, parse_word, plan, sylvester_bound, theorem_threshold, verify_word,
    Case, Check, ConstructionPlan, Factor, Multidegree, Outcome, PolyMap, TameWord,
    VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tamedeg", version, about = "Tame automorphisms of 3-space with a prescribed multidegree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) | Err(_) => Err(format!("`{s}` is not a positive decimal integer")),
        Ok(n) => Ok(n),
    }
}

fn triple(s: &str) -> Result<[u32; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a,b,c, got `{s}`"));
    }
    let mut out = [0; 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = positive(p.trim())?;
    }
    Ok(out)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify a tame automorphism with multidegree (a, b, c).
    Construct {
        #[arg(value_parser = positive)]
        a: u32,
        #[arg(value_parser = positive)]
        b: u32,
        #[arg(value_parser = positive)]
        c: u32,
        #[arg(long)]
        json: bool,
        /// Omit the expanded coordinates from the output.
        #[arg(long)]
        no_expand: bool,
        /// Append the coordinate permutation so the map has the degrees in
        /// the order given instead of sorted order.
        #[arg(long)]
        input_order: bool,
    },
    /// Print lcm, r, c0 and the Sylvester bound for a pair.
    Threshold {
        #[arg(value_parser = positive)]
        a: u32,
        #[arg(value_parser = positive)]
        b: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify a word file.
    Verify {
        word_file: PathBuf,
        /// Expected multidegree, e.g. `4,6,7`.
        #[arg(long, value_parser = triple)]
        expect: Option<[u32; 3]>,
        #[arg(long)]
        json: bool,
    },
    /// Which construction handles each c in (b, cmax].
    Atlas {
        #[arg(value_parser = positive)]
        a: u32,
        #[arg(value_parser = positive)]
        b: u32,
        #[arg(long, value_parser = positive)]
        cmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// Check whether every c > b is realized for the pair (a, b).
    CertifyPair {
        #[arg(value_parser = positive)]
        a: u32,
        #[arg(value_parser = positive)]
        b: u32,
        /// How far past the threshold to probe.
        #[arg(long, default_value_t = 10)]
        probe: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Response {
    fn out(stdout: String, code: i32) -> Self {
        Response {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Response {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Response {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            } else {
                Response::out(rendered, code)
            }
        }
    }
}

pub fn run(cmd: Command) -> Response {
    match cmd {
        Command::Construct {
            a,
            b,
            c,
            json,
            no_expand,
            input_order,
        } => cmd_construct(a, b, c, json, !no_expand, input_order),
        Command::Threshold { a, b, json } => cmd_threshold(a, b, json),
        Command::Verify {
            word_file,
            expect,
            json,
        } => cmd_verify(&word_file, expect.map(Multidegree), json),
        Command::Atlas { a, b, cmax, json } => cmd_atlas(a, b, cmax, json),
        Command::CertifyPair { a, b, probe, json } => cmd_certify(a, b, probe, json),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorJson {
    Elementary { axis: String, poly: String },
    Linear { rows: Vec<Vec<String>> },
}

impl From<&Factor> for FactorJson {
    fn from(f: &Factor) -> Self {
        match f {
            Factor::Elementary { axis, g } => FactorJson::Elementary {
                axis: axis.to_string(),
                poly: g.to_string(),
            },
            Factor::Linear(m) => FactorJson::Linear {
                rows: m
                    .0
                    .iter()
                    .map(|row| row.iter().map(|r| r.to_string()).collect())
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub passed: bool,
    pub multidegree: Option<[u32; 3]>,
    pub expected: Option<[u32; 3]>,
    pub multidegree_ok: bool,
    pub jacobian_constant: Option<String>,
    pub jacobian_ok: bool,
    pub inverse_identity_ok: bool,
    pub cancellation_ok: &'static str,
    pub leading_term_ok: &'static str,
    pub details: Vec<String>,
}

fn check_str(c: Check) -> &'static str {
    match c {
        Check::Pass => "pass",
        Check::Fail => "fail",
        Check::NotApplicable => "not-applicable",
    }
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            passed: r.passed(),
            multidegree: r.multidegree.map(|m| m.0),
            expected: r.expected.map(|m| m.0),
            multidegree_ok: r.multidegree_ok,
            jacobian_constant: r.jacobian_constant.as_ref().map(|c| c.to_string()),
            jacobian_ok: r.jacobian_ok,
            inverse_identity_ok: r.inverse_identity_ok,
            cancellation_ok: check_str(r.cancellation_ok),
            leading_term_ok: check_str(r.leading_term_ok),
            details: r.details.clone(),
        }
    }
}

/// Case parameters; every number is an exact decimal or `p/q` string.
#[derive(Debug, Default, Serialize)]
pub struct ParamsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<String>>,
}

impl From<&Parameters> for ParamsJson {
    fn from(p: &Parameters) -> Self {
        let s = |n: &u32| Some(n.to_string());
        match p {
            Parameters::Semigroup(w) => ParamsJson {
                k: s(&w.k),
                l: s(&w.l),
                ..Default::default()
            },
            Parameters::Divisible { d } => ParamsJson {
                d: s(d),
                ..Default::default()
            },
            Parameters::Step1 { e, k, m } => ParamsJson {
                e: s(e),
                k: s(k),
                m: s(m),
                ..Default::default()
            },
            Parameters::Step2 { e, m, u } => ParamsJson {
                e: s(e),
                m: s(m),
                u: Some(u.0.iter().map(|r| r.to_string()).collect()),
                ..Default::default()
            },
        }
    }
}

fn params_text(p: &Parameters) -> String {
    match p {
        Parameters::Semigroup(w) => format!("k={} l={}", w.k, w.l),
        Parameters::Divisible { d } => format!("d={d}"),
        Parameters::Step1 { e, k, m } => format!("e={e} k={k} m={m}"),
        Parameters::Step2 { e, m, u } => {
            let u: Vec<String> = u.0.iter().map(|r| r.to_string()).collect();
            format!("e={e} m={m} u=[{}]", u.join(", "))
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstructJson {
    pub status: &'static str,
    pub input: [u32; 3],
    pub sorted: [u32; 3],
    pub permutation: [usize; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ParamsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<FactorJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<[u32; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<ReportJson>,
}

fn report_text(out: &mut String, r: &VerificationReport) {
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    let ok = |b: bool| if b { "pass" } else { "fail" };
    let jac = r
        .jacobian_constant
        .as_ref()
        .map_or("not constant".to_string(), |c| c.to_string());
    writeln!(out, "verification: {verdict}").unwrap();
    writeln!(out, "  multidegree   {}", ok(r.multidegree_ok)).unwrap();
    writeln!(out, "  jacobian      {} ({jac})", ok(r.jacobian_ok)).unwrap();
    writeln!(out, "  inverse       {}", ok(r.inverse_identity_ok)).unwrap();
    writeln!(out, "  cancellation  {}", r.cancellation_ok).unwrap();
    writeln!(out, "  leading term  {}", r.leading_term_ok).unwrap();
    for d in &r.details {
        writeln!(out, "  - {d}").unwrap();
    }
}

fn word_and_map(
    plan: &ConstructionPlan,
    map: PolyMap,
    input_order: bool,
) -> (TameWord, PolyMap, Multidegree) {
    if !input_order {
        return (plan.word.clone(), map, plan.target.sorted());
    }
    let word = plan.word_in_input_order();
    let tail = TameWord::new(word.factors[plan.word.len()..].to_vec());
    let map = apply_word(map, &tail).expect("permutation factor is valid");
    (word, map, plan.target.input())
}

fn cmd_construct(a: u32, b: u32, c: u32, json: bool, expand: bool, input_order: bool) -> Response {
    let outcome = match plan(a, b, c) {
        Ok(o) => o,
        Err(e) => return Response::usage(e),
    };
    let plan = match outcome {
        Outcome::Unknown(t) => {
            let text = if json {
                to_json(&ConstructJson {
                    status: "unknown",
                    input: [a, b, c],
                    sorted: t.sorted().0,
                    permutation: t.permutation,
                    case: None,
                    parameters: None,
                    word: None,
                    expanded: None,
                    multidegree: None,
                    verification: None,
                })
            } else {
                format!("{}: unknown (no construction applies)\n", t.sorted())
            };
            return Response::out(text, EXIT_UNKNOWN);
        }
        Outcome::Constructed(p) => p,
    };
    let (report, map) = verify_plan_with_map(&plan, &plan.target);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    let map = map.unwrap_or_else(PolyMap::identity);
    let (word, map, mdeg) = word_and_map(&plan, map, input_order);
    let text = if json {
        to_json(&ConstructJson {
            status: if report.passed() { "constructed" } else { "verification-failed" },
            input: [a, b, c],
            sorted: plan.target.sorted().0,
            permutation: plan.target.permutation,
            case: Some(plan.case.name()),
            parameters: Some(ParamsJson::from(&plan.params)),
            word: Some(word.factors.iter().map(FactorJson::from).collect()),
            expanded: expand.then(|| map.coords.clone().map(|p| p.to_string())),
            multidegree: Some(mdeg.0),
            verification: Some(ReportJson::from(&report)),
        })
    } else {
        let mut out = String::new();
        writeln!(out, "target      {}", plan.target.sorted()).unwrap();
        if plan.target.is_permuted() {
            writeln!(out, "input       {}", plan.target.input()).unwrap();
        }
        writeln!(out, "case        {}", plan.case).unwrap();
        writeln!(out, "parameters  {}", params_text(&plan.params)).unwrap();
        writeln!(out, "word (applied top to bottom):").unwrap();
        for f in &word.factors {
            writeln!(out, "  {}", format_factor(f)).unwrap();
        }
        if expand {
            writeln!(out, "expanded:").unwrap();
            for (i, p) in map.coords.iter().enumerate() {
                writeln!(out, "  F{} = {p}", i + 1).unwrap();
            }
        }
        writeln!(out, "multidegree {mdeg}").unwrap();
        report_text(&mut out, &report);
        out
    };
    Response::out(text, code)
}

#[derive(Debug, Serialize)]
pub struct ThresholdJson {
    pub a: u32,
    pub b: u32,
    pub e: u32,
    pub r: u32,
    pub c0: u32,
    pub remark1_applied: bool,
    pub step1_from: u32,
    pub step2_from: u32,
    pub sylvester_bound: Option<u32>,
}

fn cmd_threshold(a: u32, b: u32, json: bool) -> Response {
    let th = match theorem_threshold(a, b) {
        Ok(t) => t,
        Err(e) => return Response::usage(e),
    };
    let sylvester = sylvester_bound(a, b).ok();
    let doc = ThresholdJson {
        a,
        b,
        e: th.e,
        r: th.r,
        c0: th.c0,
        remark1_applied: th.remark1_applied,
        step1_from: th.step1_start(a),
        step2_from: th.step2_start(),
        sylvester_bound: sylvester,
    };
    let text = if json {
        to_json(&doc)
    } else {
        let mut out = String::new();
        writeln!(out, "pair        ({a},{b})").unwrap();
        writeln!(out, "e = lcm     {}", doc.e).unwrap();
        writeln!(out, "r           {}", doc.r).unwrap();
        writeln!(out, "c0          {}", doc.c0).unwrap();
        writeln!(out, "remark1     {}", doc.remark1_applied).unwrap();
        writeln!(out, "step1 from  {}", doc.step1_from).unwrap();
        writeln!(out, "step2 from  {}", doc.step2_from).unwrap();
        match sylvester {
            Some(s) => writeln!(out, "sylvester   {s}").unwrap(),
            None => writeln!(out, "sylvester   n/a (gcd > 1)").unwrap(),
        }
        out
    };
    Response::out(text, EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub factors: usize,
    pub expanded: Option<[String; 3]>,
    pub verification: ReportJson,
}

fn cmd_verify(path: &std::path::Path, expect: Option<Multidegree>, json: bool) -> Response {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Response::usage(format!("{}: {e}", path.display())),
    };
    let word = match parse_word(&text) {
        Ok(w) => w,
        Err(e) => return Response::usage(format!("{}:{e}", path.display())),
    };
    let (report, map) = verify_word(&word, expect);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    let out = if json {
        to_json(&VerifyJson {
            factors: word.len(),
            expanded: map.map(|m| m.coords.map(|p| p.to_string())),
            verification: ReportJson::from(&report),
        })
    } else {
        let mut out = String::new();
        writeln!(out, "factors     {}", word.len()).unwrap();
        if let Some(m) = &map {
            for (i, p) in m.coords.iter().enumerate() {
                writeln!(out, "  F{} = {p}", i + 1).unwrap();
            }
        }
        report_text(&mut out, &report);
        out
    };
    Response::out(out, code)
}

#[derive(Debug, Serialize)]
pub struct AtlasRow {
    pub c: u32,
    /// Construction case, or `"Unknown"`.
    pub case: String,
}

fn atlas_rows(a: u32, b: u32, cmax: u32) -> Result<Vec<AtlasRow>, ConstructError> {
    ((b + 1)..=cmax)
        .into_par_iter()
        .map(|c| {
            let (o, _) = tamedeg::construct_with_report(a, b, c)?;
            let case = o.plan().map_or("Unknown", |p| p.case.name());
            Ok(AtlasRow {
                c,
                case: case.to_string(),
            })
        })
        .collect()
}

fn cmd_atlas(a: u32, b: u32, cmax: u32, json: bool) -> Response {
    let rows = match atlas_rows(a, b, cmax) {
        Ok(r) => r,
        Err(e @ ConstructError::VerificationFailed { .. }) => {
            return Response {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: EXIT_VERIFY_FAILED,
            }
        }
        Err(e) => return Response::usage(e),
    };
    let text = if json {
        to_json(&rows)
    } else {
        rows.iter()
            .map(|r| format!("{:>6}  {}\n", r.c, r.case))
            .collect()
    };
    Response::out(text, EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct CertifyJson {
    pub a: u32,
    pub b: u32,
    pub certified: bool,
    pub c0: u32,
    pub window_end: u32,
    pub uncovered: Vec<u32>,
    pub cases: Vec<AtlasRow>,
}

fn cmd_certify(a: u32, b: u32, probe: u32, json: bool) -> Response {
    let report = match certify_pair(a, b, probe) {
        Ok(r) => r,
        Err(e @ ConstructError::VerificationFailed { .. }) => {
            return Response {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: EXIT_VERIFY_FAILED,
            }
        }
        Err(e) => return Response::usage(e),
    };
    let code = if report.certified() {
        EXIT_OK
    } else {
        EXIT_UNKNOWN
    };
    let text = if json {
        let mut cases: Vec<AtlasRow> = report
            .covered
            .iter()
            .map(|&(c, case): &(u32, Case)| AtlasRow {
                c,
                case: case.name().to_string(),
            })
            .chain(report.uncovered.iter().map(|&c| AtlasRow {
                c,
                case: "Unknown".into(),
            }))
            .collect();
        cases.sort_by_key(|r| r.c);
        to_json(&CertifyJson {
            a,
            b,
            certified: report.certified(),
            c0: report.c0(),
            window_end: report.window_end,
            uncovered: report.uncovered.clone(),
            cases,
        })
    } else if report.certified() {
        format!(
            "({a},{b}): certified (every c in ({b}, {}] constructed; c >= {} covered by threshold)\n",
            report.window_end,
            report.c0()
        )
    } else {
        let list: Vec<String> = report.uncovered.iter().map(u32::to_string).collect();
        format!("({a},{b}): not certified; uncovered c = {{{}}}\n", list.join(", "))
    };
    Response::out(text, code)
}
