//! Argument definitions and command dispatch.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use artinloc::checks::{self, Status};
use artinloc::localization::{
    classify_element, duality_report, idempotent_denominator_check, localization_report, monoid_denominator_decision,
    powers_denominator_criterion, two_sided_report, working_algebra,
};
use artinloc::oracle::{brute_denominator_check, monoid_closure, FiniteSet};
use artinloc::{Algebra, Element, Error, Options, Side, DEFAULT_GUARD};

use crate::input::{parse_algebra, parse_element_str, parse_generators, InputError};
use crate::output::{render_json, render_text, to_json, DescriptorJson, DualJson, ReportJson, TwoSidedJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "artinloc", version, about = "Denominator sets and localizations of finite-dimensional algebras over GF(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Triangular idempotents, localizations, maximal denominator sets and radicals.
    Report,
    /// Is the monoid of powers of --element a denominator set?
    CheckPowers,
    /// Is the monoid generated by --generators a denominator set?
    CheckMonoid,
    /// Is {1, e} a denominator set for the idempotent --element?
    CheckIdempotent,
    /// Left localizable and completely localizable status of --element.
    ClassifyElement,
    /// Left and right reports side by side.
    Dual,
    /// Two-sided localizations; with --element, the two-sided powers criterion.
    Twosided,
    /// Run the whole invariant suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Algebra description (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Element as a JSON coefficient vector or matrix literal.
    #[arg(long, global = true)]
    pub element: Option<String>,
    /// JSON file holding an array of elements.
    #[arg(long, global = true)]
    pub generators: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Left)]
    pub side: SideArg,
    /// Also run the brute-force oracle and compare.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Enumeration limit for brute-force work.
    #[arg(long, global = true, env = "ARTINLOC_GUARD")]
    pub guard: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// What a command produced: exit code, rendered output, and a bug report
/// for exit code 3.
#[derive(Debug)]
pub struct Execution {
    pub code: i32,
    pub output: String,
    pub bug_report: Option<String>,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Algebra(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => Failure::Internal(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Ctx<'a> {
    a: Algebra,
    common: &'a Common,
    opts: Options,
}

impl Ctx<'_> {
    fn element(&self) -> Result<Element, Failure> {
        let s = self.common.element.as_deref().ok_or_else(|| Failure::Input("--element is required".into()))?;
        Ok(parse_element_str(&self.a, s)?)
    }

    fn sides(&self) -> Vec<Side> {
        match self.common.side {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Left, Side::Right],
        }
    }
}

/// A command's JSON value, its verdict, and an oracle disagreement if any.
struct Outcome {
    value: Value,
    verdict: bool,
    disagreement: Option<String>,
}

impl Outcome {
    fn plain(value: Value) -> Self {
        Outcome { value, verdict: true, disagreement: None }
    }
}

fn keyed(sides: &[Side], mut per_side: Vec<Value>) -> Value {
    if per_side.len() == 1 {
        return per_side.remove(0);
    }
    Value::Object(sides.iter().map(|s| s.to_string()).zip(per_side).collect())
}

fn report(ctx: &Ctx) -> Result<Outcome, Failure> {
    let sides = ctx.sides();
    let mut values = Vec::new();
    for &side in &sides {
        let r = localization_report(&ctx.a, side, &ctx.opts)?;
        values.push(to_json(&ReportJson::new(&ctx.a, &r)));
    }
    Ok(Outcome::plain(keyed(&sides, values)))
}

fn brute_json(a: &Algebra, set: &FiniteSet, side: Side, opts: &Options) -> Result<Value, Failure> {
    if set.contains_zero {
        return Ok(json!({"closure_size": set.len(), "contains_zero": true, "is_den": false}));
    }
    let b = brute_denominator_check(a, set, side, opts)?;
    Ok(json!({
        "closure_size": set.len(),
        "contains_zero": false,
        "is_ore": b.is_ore,
        "is_reversible": b.is_reversible,
        "is_den": b.is_den,
        "ass_dim": b.ass.as_ref().map(|i| i.dim()),
        "core_size": b.is_den.then_some(b.core.len()),
        "counterexample": b.counterexample.map(|(s, r)| json!([s.coeffs(), r.coeffs()])),
    }))
}

fn check_powers(ctx: &Ctx) -> Result<Outcome, Failure> {
    let s = ctx.element()?;
    let sides = ctx.sides();
    let (mut values, mut verdict, mut disagreement) = (Vec::new(), true, None);
    for &side in &sides {
        let w = working_algebra(&ctx.a, side)?;
        let v = powers_denominator_criterion(&w, &s)?;
        verdict &= v.is_den;
        let mut out = json!({
            "verdict": v.is_den,
            "side": side.to_string(),
            "associated_idempotent": v.associated.e.coeffs(),
            "nilpotent": v.associated.nilpotent,
            "triangular": v.triangular,
            "corner_nilpotent": v.corner_nilpotent,
            "descriptor": v.descriptor.as_ref().map(|d| to_json(&DescriptorJson::new(d))),
            "ass_dim": v.descriptor.as_ref().map(|d| d.ass.dim()),
            "quotient_dim": v.descriptor.as_ref().map(|d| d.quotient.algebra().dim()),
        });
        if ctx.common.oracle {
            let agreement = checks::powers_vs_oracle(&w, &s, &ctx.opts)?;
            let closure = monoid_closure(&w, std::slice::from_ref(&s), ctx.opts.guard)?;
            out["oracle"] = brute_json(&w, &closure, Side::Left, &ctx.opts)?;
            out["agrees"] = json!(agreement.is_none());
            disagreement = disagreement.or(agreement);
        }
        values.push(out);
    }
    Ok(Outcome { value: keyed(&sides, values), verdict, disagreement })
}

fn check_monoid(ctx: &Ctx) -> Result<Outcome, Failure> {
    let path = ctx.common.generators.as_ref().ok_or_else(|| Failure::Input("--generators is required".into()))?;
    let doc = read(path)?;
    let gens = parse_generators(&ctx.a, &doc)?;
    let sides = ctx.sides();
    let (mut values, mut verdict, mut disagreement) = (Vec::new(), true, None);
    for &side in &sides {
        let w = working_algebra(&ctx.a, side)?;
        let v = monoid_denominator_decision(&w, &gens, &ctx.opts)?;
        verdict &= v.is_den;
        let mut out = json!({
            "verdict": v.is_den,
            "side": side.to_string(),
            "closure_size": v.closure_size,
            "contains_zero": v.contains_zero,
            "witness": v.witness.as_ref().map(Element::coeffs),
            "witness_count": v.witness_count,
            "descriptor": v.descriptor.as_ref().map(|d| to_json(&DescriptorJson::new(d))),
        });
        if ctx.common.oracle {
            let agreement = checks::monoid_vs_oracle(&w, &gens, &ctx.opts)?;
            let closure = monoid_closure(&w, &gens, ctx.opts.guard)?;
            out["oracle"] = brute_json(&w, &closure, Side::Left, &ctx.opts)?;
            out["agrees"] = json!(agreement.is_none());
            disagreement = disagreement.or(agreement);
        }
        values.push(out);
    }
    Ok(Outcome { value: keyed(&sides, values), verdict, disagreement })
}

fn check_idempotent(ctx: &Ctx) -> Result<Outcome, Failure> {
    let e = ctx.element()?;
    let v = idempotent_denominator_check(&ctx.a, &e)?;
    let (side, verdict) = match ctx.common.side {
        SideArg::Left => (Side::Left, v.left),
        SideArg::Right => (Side::Right, v.right),
        SideArg::Both => (Side::TwoSided, v.twosided),
    };
    let mut out = json!({
        "verdict": verdict,
        "side": side.to_string(),
        "left": v.left,
        "right": v.right,
        "twosided": v.twosided,
        "central": v.central,
    });
    let mut disagreement = None;
    if ctx.common.oracle {
        let set = FiniteSet::new(vec![ctx.a.one(), e.clone()]);
        let b = brute_denominator_check(&ctx.a, &set, side, &ctx.opts)?;
        out["oracle"] = brute_json(&ctx.a, &set, side, &ctx.opts)?;
        out["agrees"] = json!(b.is_den == verdict);
        if b.is_den != verdict {
            disagreement = Some(format!("idempotent {e:?}: criterion {verdict}, oracle {}", b.is_den));
        }
    }
    Ok(Outcome { value: out, verdict, disagreement })
}

fn classify(ctx: &Ctx) -> Result<Outcome, Failure> {
    let r = ctx.element()?;
    let basic = ctx.a.classify_element_basic(&r)?;
    let sides = ctx.sides();
    let mut values = Vec::new();
    for &side in &sides {
        let report = localization_report(&ctx.a, side, &ctx.opts)?;
        let v = classify_element(&report.algebra, &r, &report)?;
        values.push(json!({
            "side": side.to_string(),
            "localizable": v.left_localizable,
            "completely_localizable": v.completely,
            "witnesses": v.witnesses.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::plain(json!({
        "element": r.coeffs(),
        "unit": basic.is_unit,
        "inverse": basic.inverse.as_ref().map(Element::coeffs),
        "nilpotent": basic.is_nilpotent,
        "idempotent": basic.is_idempotent,
        "left_regular": basic.is_left_regular,
        "localization": keyed(&sides, values),
    })))
}

fn dual(ctx: &Ctx) -> Result<Outcome, Failure> {
    let d = duality_report(&ctx.a, &ctx.opts)?;
    Ok(Outcome::plain(to_json(&DualJson::new(&ctx.a, &d))))
}

fn twosided(ctx: &Ctx) -> Result<Outcome, Failure> {
    let t = two_sided_report(&ctx.a, &ctx.opts)?;
    let mut out = to_json(&TwoSidedJson::new(&ctx.a, &t));
    let (mut verdict, mut disagreement) = (true, None);
    if ctx.common.element.is_some() {
        let r = ctx.element()?;
        verdict = t.powers_criterion(&ctx.a, &r);
        let components: Vec<Value> = (0..t.factors())
            .map(|i| {
                let c = t.component(&ctx.a, &r, i);
                json!({"unit_in_factor": ctx.a.is_unit(&ctx.a.add(&c, &ctx.a.complement(&t.central_idempotents[i]))), "nilpotent": ctx.a.is_nilpotent(&c)})
            })
            .collect();
        out["powers"] = json!({"element": r.coeffs(), "verdict": verdict, "components": components});
        if ctx.common.oracle {
            let agreement = checks::twosided_powers_vs_oracle(&ctx.a, &t, &r, &ctx.opts)?;
            let closure = monoid_closure(&ctx.a, std::slice::from_ref(&r), ctx.opts.guard)?;
            out["powers"]["oracle"] = brute_json(&ctx.a, &closure, Side::TwoSided, &ctx.opts)?;
            out["powers"]["agrees"] = json!(agreement.is_none());
            disagreement = agreement;
        }
    }
    Ok(Outcome { value: out, verdict, disagreement })
}

fn verify(ctx: &Ctx) -> Result<Outcome, Failure> {
    let outcomes = checks::run_all(&ctx.a, &ctx.opts);
    let failed: Vec<String> =
        outcomes.iter().filter(|o| o.status == Status::Fail).map(|o| format!("{}: {}", o.name, o.detail)).collect();
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"name": o.name, "status": o.status.to_string().to_lowercase(), "detail": o.detail}))
        .collect();
    let value = json!({"algebra": to_json(&crate::output::AlgebraJson::new(&ctx.a)), "checks": checks, "ok": failed.is_empty()});
    Ok(Outcome { value, verdict: true, disagreement: (!failed.is_empty()).then(|| failed.join("; ")) })
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn render(format: Format, v: &Value) -> String {
    match format {
        Format::Json => render_json(v),
        Format::Text => render_text(v),
    }
}

fn bug_report(cli: &Cli, input: Option<&str>, message: &str) -> String {
    let blob = json!({
        "bug_report": {
            "version": env!("CARGO_PKG_VERSION"),
            "command": format!("{:?}", cli.command),
            "input": input.and_then(|s| serde_json::from_str::<Value>(s).ok()),
            "element": cli.common.element,
            "side": format!("{:?}", cli.common.side),
            "guard": cli.common.guard,
            "message": message,
        }
    });
    render_json(&to_json(&blob))
}

/// Runs one command. Never panics on bad input; exit codes follow
/// 0 = true/ok, 1 = false verdict, 2 = input error, 3 = internal error.
pub fn execute(cli: &Cli) -> Execution {
    let input = match cli.common.input.as_ref().ok_or_else(|| Failure::Input("--input is required".into())).and_then(read) {
        Ok(s) => s,
        Err(f) => return failure(cli, None, f),
    };
    let a = match parse_algebra(&input) {
        Ok(a) => a,
        Err(e) => return failure(cli, Some(&input), e.into()),
    };
    let opts = Options::default().with_guard(cli.common.guard.unwrap_or(DEFAULT_GUARD));
    let ctx = Ctx { a, common: &cli.common, opts };
    let result = match cli.command {
        Command::Report => report(&ctx),
        Command::CheckPowers => check_powers(&ctx),
        Command::CheckMonoid => check_monoid(&ctx),
        Command::CheckIdempotent => check_idempotent(&ctx),
        Command::ClassifyElement => classify(&ctx),
        Command::Dual => dual(&ctx),
        Command::Twosided => twosided(&ctx),
        Command::Verify => verify(&ctx),
    };
    match result {
        Ok(o) => {
            let output = render(cli.common.format, &to_json(&o.value));
            match o.disagreement {
                Some(msg) => Execution { code: EXIT_INTERNAL, output, bug_report: Some(bug_report(cli, Some(&input), &msg)) },
                None => Execution { code: if o.verdict { EXIT_OK } else { EXIT_FALSE }, output, bug_report: None },
            }
        }
        Err(f) => failure(cli, Some(&input), f),
    }
}

fn failure(cli: &Cli, input: Option<&str>, f: Failure) -> Execution {
    match f {
        Failure::Input(msg) => Execution { code: EXIT_INPUT, output: format!("error: {msg}\n"), bug_report: None },
        Failure::Internal(msg) => Execution {
            code: EXIT_INTERNAL,
            output: format!("internal error: {msg}\n"),
            bug_report: Some(bug_report(cli, input, &msg)),
        },
    }
}
