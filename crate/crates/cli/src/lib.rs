//! Command-line front end for `expfield`: pair and configuration documents
//! in, verdicts out, as text or as one JSON object.

pub mod doc;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expfield::algebra::{Polynomial, Rational};
use expfield::ideal::{default_step_limit, set_default_step_limit, MonomialOrder, DEFAULT_STEP_LIMIT};
use expfield::lattice::IntMatrix;
use expfield::pairs::{
    associated_preimage, cut_with, linear_form, monomial_form, reduce, AdditiveVerdict, CutOptions,
    MultiplicativeVerdict, NormalityVerdict,
};
use expfield::predim::{kernel_demo, Configuration, StrongVerdict, SubsetSpec};
use expfield::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use doc::{ConfigDocument, DocError, Document, PairDocument};

/// Environment variable overriding the default Gröbner step limit.
pub const STEP_LIMIT_VAR: &str = "EXPFIELD_STEP_LIMIT";
pub const DEFAULT_HEIGHT: u64 = 3;
pub const DEFAULT_K_CAP: u32 = 5;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "expfield", version, about = "Predimension and variety-pair checks on exact algebraic data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Height bound for lattice enumerations (demonstration scale; default 3).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub height: Option<u64>,
    /// Largest exponent tried by `reduce` (default 5).
    #[arg(long = "k-cap", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub k_cap: Option<u32>,
    /// Monomial order for `dim`.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Seed for `cut` (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print a single JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    /// Step limit for each Gröbner basis computation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: Option<u64>,
    /// Leave timings out of the JSON report.
    #[arg(long = "no-timings", global = true)]
    pub no_timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

impl OrderArg {
    fn order(self) -> MonomialOrder {
        match self {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Document file; standard input when omitted or `-`.
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CommandArgs {
    /// Dimensions of V and of the torus part of W.
    Dim(Input),
    /// Predimension of a subset of a configuration (all generators by default).
    Delta {
        #[command(flatten)]
        input: Input,
        /// `x1,x3`, rows `[1,-1,0];[0,0,1]`, or empty.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Relative predimension of `--subset` over `--base`.
    DeltaRel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        base: Option<String>,
    },
    /// Partial dimension of a subset.
    PartialDim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Whether `--subset` (empty by default) is strong in the configuration.
    StrongExt {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Additive and multiplicative freeness.
    Free(Input),
    /// Normality up to the height bound.
    Normal(Input),
    /// Whether the pair is an instance of the existential axiom scheme.
    CheckAxiom(Input),
    /// Removes V' and W' by adjoining inverted coordinates.
    Reduce(Input),
    /// Intersects V with a seeded generic hyperplane.
    Cut {
        #[command(flatten)]
        input: Input,
        /// Allow cutting a curve down to points.
        #[arg(long)]
        terminal: bool,
    },
    /// Preimage of W under the l-th power map.
    Root {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        l: u64,
    },
    /// Lower bound dim V + dim W - n for a qualifying pair.
    Adim(Input),
    /// Prints the standard kernel fragment {pi, pi/2, ..., pi/N} as a config document.
    KernelDemo {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        size: u64,
    },
}

impl CommandArgs {
    pub fn name(&self) -> &'static str {
        match self {
            CommandArgs::Dim(_) => "dim",
            CommandArgs::Delta { .. } => "delta",
            CommandArgs::DeltaRel { .. } => "delta-rel",
            CommandArgs::PartialDim { .. } => "partial-dim",
            CommandArgs::StrongExt { .. } => "strong-ext",
            CommandArgs::Free(_) => "free",
            CommandArgs::Normal(_) => "normal",
            CommandArgs::CheckAxiom(_) => "check-axiom",
            CommandArgs::Reduce(_) => "reduce",
            CommandArgs::Cut { .. } => "cut",
            CommandArgs::Root { .. } => "root",
            CommandArgs::Adim(_) => "adim",
            CommandArgs::KernelDemo { .. } => "kernel-demo",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            CommandArgs::Dim(i)
            | CommandArgs::Free(i)
            | CommandArgs::Normal(i)
            | CommandArgs::CheckAxiom(i)
            | CommandArgs::Reduce(i)
            | CommandArgs::Adim(i) => Some(i),
            CommandArgs::Delta { input, .. }
            | CommandArgs::DeltaRel { input, .. }
            | CommandArgs::PartialDim { input, .. }
            | CommandArgs::StrongExt { input, .. }
            | CommandArgs::Cut { input, .. }
            | CommandArgs::Root { input, .. } => Some(input),
            CommandArgs::KernelDemo { .. } => None,
        }
    }
}

/// What a run produced: the exit code and both renderings.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub json: Value,
    pub human: String,
}

impl Outcome {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).unwrap())
        } else {
            self.human.clone()
        }
    }
}

#[derive(Debug)]
enum Failure {
    Parse(DocError),
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Failure {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Usage(_) => EXIT_PARSE,
            Failure::Core(Error::StepLimit { .. }) => EXIT_RESOURCE,
            Failure::Core(_) | Failure::Io(_) => EXIT_PRECONDITION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
            Failure::Core(e) => match e {
                Error::StepLimit { .. } => "step_limit",
                Error::Precondition(_) => "precondition",
                Error::InvalidConfiguration(_) => "invalid_configuration",
                Error::EmptyVariety { .. } | Error::EmptyTorusPart => "empty_variety",
                Error::Inconsistent(_) => "inconsistent",
                Error::ReductionFailed(_) => "reduction_failed",
                Error::DegenerateCut(_) => "degenerate_cut",
                Error::RingMismatch { .. } => "ring_mismatch",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e @ Error::DegenerateCut(_)) => format!("{e}; retry with another --seed"),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// A successful computation: verdict, echoed bound and payload.
struct Report {
    status: String,
    height: Option<u64>,
    result: Map<String, Value>,
    human: String,
}

fn report(status: impl Into<String>, height: Option<u64>, result: Value, human: String) -> Report {
    let Value::Object(result) = result else { unreachable!("results are objects") };
    Report { status: status.into(), height, result, human }
}

/// Resolves the step limit: flag, then environment, then the default.
fn step_limit(options: &Options, env: Option<&str>) -> Result<u64, Failure> {
    if let Some(s) = options.steps {
        return Ok(s);
    }
    match env {
        None => Ok(DEFAULT_STEP_LIMIT),
        Some(v) => match v.trim().parse::<u64>() {
            Ok(s) if s > 0 => Ok(s),
            _ => Err(Failure::Usage(format!("{STEP_LIMIT_VAR} must be a positive integer, found '{v}'"))),
        },
    }
}

/// Runs a parsed command line. `read_stdin` is called only when the
/// document comes from standard input; `env_steps` is the value of
/// [`STEP_LIMIT_VAR`], if set.
pub fn run(cli: &Cli, env_steps: Option<&str>, read_stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome {
    let start = Instant::now();
    let command = cli.command.name();
    let limit = step_limit(&cli.options, env_steps);
    let outcome = limit.and_then(|limit| {
        set_default_step_limit(limit);
        let source = match cli.command.input() {
            None => None,
            Some(Input { file: Some(path) }) if path.as_os_str() != "-" => Some(
                std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?,
            ),
            Some(_) => Some(read_stdin().map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?),
        };
        let document = source.as_deref().map(doc::parse).transpose()?;
        execute(&cli.command, &cli.options, document)
    });
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;

    let mut obj = Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("step_limit".into(), json!(default_step_limit()));
    if !cli.options.no_timings {
        obj.insert("timings".into(), json!({ "total_ms": (elapsed * 1000.0).round() / 1000.0 }));
    }
    match outcome {
        Ok(r) => {
            obj.insert("status".into(), json!(r.status));
            obj.insert("height".into(), json!(r.height));
            obj.insert("exit_code".into(), json!(EXIT_OK));
            obj.insert("result".into(), Value::Object(r.result));
            let mut human = String::new();
            if !matches!(cli.command, CommandArgs::KernelDemo { .. }) {
                let _ = write!(human, "{command}: {}", r.status);
                if let Some(h) = r.height {
                    let _ = write!(human, " (height bound {h})");
                }
                human.push('\n');
            }
            human.push_str(&r.human);
            Outcome { exit_code: EXIT_OK, json: Value::Object(obj), human }
        }
        Err(f) => {
            let code = f.exit_code();
            let mut err = Map::new();
            err.insert("kind".into(), json!(f.kind()));
            err.insert("message".into(), json!(f.message()));
            if let Failure::Parse(e) = &f {
                err.insert("line".into(), json!(e.line));
                err.insert("column".into(), json!(e.column));
            }
            obj.insert("status".into(), json!("error"));
            obj.insert("height".into(), Value::Null);
            obj.insert("exit_code".into(), json!(code));
            obj.insert("error".into(), Value::Object(err));
            Outcome { exit_code: code, json: Value::Object(obj), human: format!("error: {}\n", f.message()) }
        }
    }
}

fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.rows().map(vector_json).collect())
}

fn polys_json(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.to_string())).collect())
}

fn rational_json(c: &Rational) -> Value {
    json!(c.to_string())
}

fn spec_json(s: &SubsetSpec, n: usize) -> Value {
    matrix_json(&s.rows(n))
}

fn expect_pair(d: Option<Document>) -> Result<PairDocument, Failure> {
    match d {
        Some(Document::Pair(p)) => Ok(p),
        _ => Err(Failure::Parse(DocError { line: 1, column: 1, message: "this command needs a pair document".into() })),
    }
}

fn expect_config(d: Option<Document>) -> Result<ConfigDocument, Failure> {
    match d {
        Some(Document::Config(c)) => Ok(c),
        _ => Err(Failure::Parse(DocError { line: 1, column: 1, message: "this command needs a config document".into() })),
    }
}

/// Builds the configuration; invariant violations are load errors.
fn load_config(c: &ConfigDocument, height: u64) -> Result<Configuration, Failure> {
    c.configuration(height).map_err(|e| match e {
        Error::InvalidConfiguration(m) => Failure::Parse(DocError { line: 1, column: 1, message: m }),
        e => Failure::Core(e),
    })
}

fn subset(text: Option<&str>, n: usize, default: SubsetSpec) -> Result<SubsetSpec, Failure> {
    match text {
        None => Ok(default),
        Some(t) => doc::parse_subset(t, n).map_err(Failure::Usage),
    }
}

fn additive_json(v: &AdditiveVerdict) -> (Value, String) {
    match v {
        AdditiveVerdict::Free => (json!({ "status": "Free" }), "additive: free".into()),
        AdditiveVerdict::Dependent { m, c } => {
            let relation = format!("{} = {c}", linear_form(m));
            let line = format!("additive: dependent, {relation}");
            (json!({ "status": "Dependent", "m": vector_json(m), "c": rational_json(c), "relation": relation }), line)
        }
    }
}

fn multiplicative_json(v: &MultiplicativeVerdict) -> (Value, String) {
    match v {
        MultiplicativeVerdict::FreeUpTo(h) => {
            (json!({ "status": "FreeUpTo", "height": h }), format!("multiplicative: free over Q up to height {h}"))
        }
        MultiplicativeVerdict::Dependent { m, c, height } => {
            let relation = format!("{} = {c}", monomial_form(m));
            let line = format!("multiplicative: dependent, {relation}");
            (
                json!({ "status": "Dependent", "m": vector_json(m), "c": rational_json(c), "relation": relation, "height": height }),
                line,
            )
        }
    }
}

fn normality_json(v: &NormalityVerdict) -> (Value, String) {
    match v {
        NormalityVerdict::NormalUpTo(h) => (json!({ "status": "NormalUpTo", "height": h }), format!("normal up to height {h}")),
        NormalityVerdict::NotNormal { witness, dim_v, dim_w, k, height } => (
            json!({
                "status": "NotNormal",
                "witness": matrix_json(witness.basis()),
                "dim_v": dim_v,
                "dim_w": dim_w,
                "k": k,
                "height": height,
            }),
            format!("not normal: lattice {witness} gives dim V' + dim W' = {dim_v} + {dim_w} < {k}"),
        ),
    }
}

fn execute(command: &CommandArgs, options: &Options, document: Option<Document>) -> Result<Report, Failure> {
    match command {
        CommandArgs::KernelDemo { size } => {
            let c = kernel_demo(*size as usize)?;
            let text = ConfigDocument::from_configuration(&c).to_string();
            Ok(report(
                "computed",
                Some(c.height()),
                json!({ "size": size, "generators": c.names(), "document": text }),
                format!("{text}\n"),
            ))
        }
        CommandArgs::Delta { subset: s, .. }
        | CommandArgs::DeltaRel { subset: s, .. }
        | CommandArgs::PartialDim { subset: s, .. }
        | CommandArgs::StrongExt { subset: s, .. } => {
            let cd = expect_config(document)?;
            let height = options.height.or(cd.height).unwrap_or(DEFAULT_HEIGHT);
            let c = load_config(&cd, height)?;
            let n = c.n();
            match command {
                CommandArgs::Delta { .. } => {
                    let x = subset(s.as_deref(), n, SubsetSpec::all(n))?;
                    let (d, q, tx, ty) = (c.delta(&x)?, c.dim_q(&x)?, c.trdeg_x(&x)?, c.trdeg_y(&x)?);
                    Ok(report(
                        "computed",
                        None,
                        json!({ "subset": spec_json(&x, n), "delta": d, "dim_q": q, "trdeg_x": tx, "trdeg_y": ty }),
                        format!("delta = {d}\ntrdeg X = {tx}, trdeg ex(X) = {ty}, dim_Q X = {q}\n"),
                    ))
                }
                CommandArgs::DeltaRel { base, .. } => {
                    let x = subset(s.as_deref(), n, SubsetSpec::all(n))?;
                    let b = subset(base.as_deref(), n, SubsetSpec::empty())?;
                    let d = c.delta_rel(&x, &b)?;
                    Ok(report(
                        "computed",
                        None,
                        json!({ "subset": spec_json(&x, n), "base": spec_json(&b, n), "delta_rel": d }),
                        format!("delta(X/X') = {d}\n"),
                    ))
                }
                CommandArgs::PartialDim { .. } => {
                    let x = subset(s.as_deref(), n, SubsetSpec::empty())?;
                    let p = c.partial_dim_at(&x, height)?;
                    Ok(report(
                        "computed",
                        Some(height),
                        json!({ "subset": spec_json(&x, n), "partial_dim": p.value, "witness": spec_json(&p.witness, n) }),
                        format!("partial dimension = {}\nattained at {}\n", p.value, p.witness.rows(n)),
                    ))
                }
                _ => {
                    let a = subset(s.as_deref(), n, SubsetSpec::empty())?;
                    match c.strong_ext(&a, height)? {
                        StrongVerdict::StrongUpTo(h) => Ok(report(
                            "StrongUpTo",
                            Some(h),
                            json!({ "subset": spec_json(&a, n) }),
                            format!("{} is strong up to height {h}\n", a.rows(n)),
                        )),
                        StrongVerdict::NotStrong { witness, relative_delta, height } => Ok(report(
                            "NotStrong",
                            Some(height),
                            json!({
                                "subset": spec_json(&a, n),
                                "witness": spec_json(&witness, n),
                                "relative_delta": relative_delta,
                            }),
                            format!("not strong: delta(X/A) = {relative_delta} for X = {}\n", witness.rows(n)),
                        )),
                    }
                }
            }
        }
        _ => {
            let pd = expect_pair(document)?;
            let height = options.height.or(pd.height).unwrap_or(DEFAULT_HEIGHT);
            let p = pd.pair()?;
            match command {
                CommandArgs::Dim(_) => {
                    let order = options.order.order();
                    let dv = p.iv().dim_with(order)?;
                    let dw = p.torus_w().dim_with(order)?;
                    let names = |w: &[usize], prefix: &str| -> Vec<String> { w.iter().map(|i| format!("{prefix}{}", i + 1)).collect() };
                    Ok(report(
                        "computed",
                        None,
                        json!({
                            "order": order.to_string(),
                            "dim_v": dv.dim,
                            "dim_w": dw.dim,
                            "independent_v": names(&dv.witness, "x"),
                            "independent_w": names(&dw.witness, "y"),
                        }),
                        format!("dim V = {}\ndim W = {}\n", dv.dim, dw.dim),
                    ))
                }
                CommandArgs::Free(_) => {
                    let (a, al) = additive_json(&p.additive_free()?);
                    let m = p.multiplicative_free(height)?;
                    let free = p.additive_free()?.is_free() && m.is_free();
                    let (m, ml) = multiplicative_json(&m);
                    Ok(report(
                        if free { "Free" } else { "Dependent" },
                        Some(height),
                        json!({ "additive": a, "multiplicative": m }),
                        format!("{al}\n{ml}\n"),
                    ))
                }
                CommandArgs::Normal(_) => {
                    let v = p.normal_check(height)?;
                    let status = if v.is_normal() { "NormalUpTo" } else { "NotNormal" };
                    let (mut j, line) = normality_json(&v);
                    j.as_object_mut().unwrap().remove("status");
                    Ok(report(status, Some(height), j, format!("{line}\n")))
                }
                CommandArgs::CheckAxiom(_) => {
                    let r = p.axiom_instance(height)?;
                    let (a, al) = additive_json(&r.additive);
                    let (m, ml) = multiplicative_json(&r.multiplicative);
                    let (nv, nl) = normality_json(&r.normality);
                    let qualifies = r.qualifies();
                    let instance = qualifies.then(|| PairDocument::from_pair(&p).to_string());
                    let mut human = format!("{al}\n{ml}\n{nl}\nirreducible V (assumed): {}\nirreducible W (assumed): {}\n", r.irreducible_v, r.irreducible_w);
                    for o in r.obstructions() {
                        let _ = writeln!(human, "obstruction: {o}");
                    }
                    if qualifies {
                        let _ = writeln!(human, "the pair is an instance of the axiom scheme at height {height}");
                    }
                    Ok(report(
                        if qualifies { "Qualifies" } else { "Disqualified" },
                        Some(height),
                        json!({
                            "additive": a,
                            "multiplicative": m,
                            "normality": nv,
                            "irreducible_v": r.irreducible_v,
                            "irreducible_w": r.irreducible_w,
                            "obstructions": r.obstructions(),
                            "instance": instance,
                        }),
                        human,
                    ))
                }
                CommandArgs::Reduce(_) => {
                    let k_cap = options.k_cap.or(pd.k_cap).unwrap_or(DEFAULT_K_CAP);
                    let (iv, iw) = pd.removed();
                    let r = reduce(&p, &iv, &iw, k_cap, height)?;
                    let out = PairDocument::from_pair(&r.pair);
                    let text = out.to_string();
                    let coord = |c: Option<usize>, prefix: &str| c.map(|i| format!("{prefix}{}", i + 1));
                    let mut human = String::new();
                    if let (Some(f), Some(k)) = (&r.f, r.k) {
                        let _ = writeln!(human, "V side: ({f})*x{}^{k} = 1", r.v_coordinate.unwrap() + 1);
                    }
                    if let (Some(g), Some(w)) = (&r.g, r.w_coordinate) {
                        let _ = writeln!(human, "W side: ({g})*y{} = 1", w + 1);
                    }
                    if r.w_side_dropped {
                        let _ = writeln!(human, "W side: nothing to remove on the torus");
                    }
                    let _ = writeln!(human, "exact: V {}, W {}\n{text}", r.exact_v, r.exact_w);
                    Ok(report(
                        "Reduced",
                        Some(height),
                        json!({
                            "k": r.k,
                            "k_cap": k_cap,
                            "f": r.f.as_ref().map(|f| f.to_string()),
                            "g": r.g.as_ref().map(|g| g.to_string()),
                            "v_coordinate": coord(r.v_coordinate, "x"),
                            "w_coordinate": coord(r.w_coordinate, "y"),
                            "exact_v": r.exact_v,
                            "exact_w": r.exact_w,
                            "w_side_dropped": r.w_side_dropped,
                            "n": out.n,
                            "V": polys_json(&out.v),
                            "W": polys_json(&out.w),
                            "document": text,
                        }),
                        human,
                    ))
                }
                CommandArgs::Cut { terminal, .. } => {
                    let seed = options.seed.or(pd.seed).unwrap_or(0);
                    let r = cut_with(&p, seed, CutOptions { height, allow_terminal: *terminal })?;
                    let text = PairDocument::from_pair(&r.pair).to_string();
                    let coefficients: Vec<Value> = r.coefficients.iter().map(rational_json).collect();
                    let human = format!(
                        "dim V: {} -> {}\nd: {} -> {}\n{}\n{text}\n",
                        r.dim_v_before,
                        r.dim_v_after,
                        r.d_before,
                        r.d_after,
                        if r.preserved() { "normal and free at the bound".to_string() } else { r.failures().join("\n") }
                    );
                    Ok(report(
                        if r.preserved() { "Preserved" } else { "NotPreserved" },
                        Some(height),
                        json!({
                            "seed": seed,
                            "coefficients": coefficients,
                            "dim_v_before": r.dim_v_before,
                            "dim_v_after": r.dim_v_after,
                            "dim_w": r.dim_w,
                            "d_before": r.d_before,
                            "d_after": r.d_after,
                            "failures": r.failures(),
                            "document": text,
                        }),
                        human,
                    ))
                }
                CommandArgs::Root { l, .. } => {
                    let i = associated_preimage(&p, *l)?;
                    let gens: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
                    let human = format!("W^(1/{l}) is cut out by:\n{}\n", gens.iter().map(|g| format!("  {g}")).collect::<Vec<_>>().join("\n"));
                    Ok(report("computed", None, json!({ "l": l, "generators": gens }), human))
                }
                CommandArgs::Adim(_) => {
                    let r = p.adim_bound(height)?;
                    let mut facts = Vec::new();
                    if r.full_v {
                        facts.push(format!("V is the full space: adim V = dim V = {}", r.dim_v));
                    }
                    if r.full_w {
                        facts.push(format!("W is the full torus: adim ln W = dim W = {}", r.dim_w));
                    }
                    let mut human = format!("adim(V ∩ ln W) >= {} (dim V = {}, dim W = {})\n", r.bound, r.dim_v, r.dim_w);
                    for f in &facts {
                        let _ = writeln!(human, "{f}");
                    }
                    Ok(report(
                        "computed",
                        Some(height),
                        json!({
                            "bound": r.bound,
                            "dim_v": r.dim_v,
                            "dim_w": r.dim_w,
                            "full_v": r.full_v,
                            "full_w": r.full_w,
                            "facts": facts,
                        }),
                        human,
                    ))
                }
                _ => unreachable!("config commands are handled above"),
            }
        }
    }
}
