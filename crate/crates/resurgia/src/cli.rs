//! Command-line front end: ideal/family/package parsing, job dispatch, and
//! deterministic text/JSON output.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{
    family_from_json_value, family_to_json_value, FamilyRule, GradedFamily, DEFAULT_BODY_BUDGET,
};
use crate::monomials::{set_generator_ceiling, MonomialIdeal, Ring};
use crate::reespkg::{
    explicit_from_json_value, rees_resurgence, symmetric_minors_family, veronese_resurgence,
    ReesPackageData, ReesValuedFamily,
};
use crate::resurgence::{
    duality_check, resurgence_search, truncation_resurgence_profile,
    waldschmidt, DEFAULT_SEARCH_R, DEFAULT_SEARCH_S, DEFAULT_TRUNCATION_N,
};

/// Exit codes: 0 success, 1 specification error, 2 budget exceeded.
pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC_ERROR: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct IdealInput {
    /// Ideal in the inline grammar `vars=x,y,z; gens=x*y*z^3, x^2*z^3` or JSON
    #[arg(long)]
    ideal: Option<String>,
    /// File containing the ideal (same formats)
    #[arg(long)]
    ideal_file: Option<String>,
}

impl IdealInput {
    fn load(&self) -> Result<MonomialIdeal> {
        let text = match (&self.ideal, &self.ideal_file) {
            (Some(t), _) => t.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)?,
            (None, None) => {
                return Err(Error::Invalid("provide --ideal or --ideal-file".into()))
            }
        };
        parse_ideal(&text)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "resurgia",
    about = "Exact resurgence numbers and convex bodies of graded families of monomial ideals",
    version
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton polyhedron of a monomial ideal
    Np {
        #[command(flatten)]
        ideal: IdealInput,
    },
    /// Symbolic polyhedron of a monomial ideal
    Sp {
        #[command(flatten)]
        ideal: IdealInput,
    },
    /// Alexander dual of a squarefree monomial ideal
    Dual {
        #[command(flatten)]
        ideal: IdealInput,
    },
    /// Generators of the m-th symbolic power
    SymbolicPower {
        #[command(flatten)]
        ideal: IdealInput,
        #[arg(long)]
        power: u32,
    },
    /// Newton-Okounkov body of a graded family, with certificate
    Okounkov {
        #[command(flatten)]
        ideal: IdealInput,
        /// Family shorthand, e.g. `powers:I`, `symbolic:I`, `truncate:powers:I:5`
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_BODY_BUDGET)]
        budget_body: u32,
    },
    /// Finite (s, r) search for the resurgence of a pair of families
    Resurgence {
        #[command(flatten)]
        ideal: IdealInput,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_S)]
        budget_search_s: u32,
        #[arg(long, default_value_t = DEFAULT_SEARCH_R)]
        budget_search_r: u32,
        /// Test membership in integral closures instead of the members
        #[arg(long)]
        closure: bool,
    },
    /// Asymptotic resurgence via the convex-body formula
    AsymptoticResurgence {
        #[command(flatten)]
        ideal: IdealInput,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_BODY_BUDGET)]
        budget_body: u32,
    },
    /// Skew Waldschmidt constant of a family for a weight vector
    Waldschmidt {
        #[command(flatten)]
        ideal: IdealInput,
        #[arg(long)]
        family: String,
        /// Comma-separated nonnegative integer weights, e.g. `1,1,1`
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = DEFAULT_BODY_BUDGET)]
        budget_body: u32,
    },
    /// Resurgence search values of the truncations of the first family
    TruncateProfile {
        #[command(flatten)]
        ideal: IdealInput,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION_N)]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_SEARCH_S)]
        budget_search_s: u32,
        #[arg(long, default_value_t = DEFAULT_SEARCH_R)]
        budget_search_r: u32,
    },
    /// Rees-package resurgence from a builtin or an explicit value table
    Rees {
        #[command(flatten)]
        rees: ReesInput,
        #[arg(long, default_value_t = DEFAULT_BODY_BUDGET)]
        budget_body: u32,
    },
    /// Rees-package resurgence against the k-th Veronese
    Veronese {
        #[command(flatten)]
        rees: ReesInput,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_BODY_BUDGET)]
        budget_body: u32,
    },
    /// Alexander-duality invariance of the self-resurgence
    DualityCheck {
        #[command(flatten)]
        ideal: IdealInput,
    },
}

#[derive(Args, Debug)]
struct ReesInput {
    /// Builtin family name (`symmetric-minors`)
    #[arg(long)]
    builtin: Option<String>,
    /// Matrix size for the builtin
    #[arg(long)]
    m: Option<u32>,
    /// Explicit value-table JSON file
    #[arg(long)]
    table_file: Option<String>,
}

impl ReesInput {
    fn load(&self) -> Result<(ReesPackageData, ReesValuedFamily)> {
        match (&self.builtin, &self.table_file) {
            (Some(name), None) => {
                if name != "symmetric-minors" {
                    return Err(Error::Invalid(format!("unknown builtin `{name}`")));
                }
                let m = self
                    .m
                    .ok_or_else(|| Error::Invalid("builtin symmetric-minors needs --m".into()))?;
                symmetric_minors_family(m)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                explicit_from_json_value(&serde_json::from_str(&text)?)
            }
            _ => Err(Error::Invalid("provide exactly one of --builtin or --table-file".into())),
        }
    }
}

/// Parses the inline ideal grammar, or JSON when the text is a JSON object.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return MonomialIdeal::from_json_value(&serde_json::from_str(trimmed)?);
    }
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut gens: Option<(usize, String)> = None;
    let mut offset = 0usize;
    for stmt in text.split(';') {
        let start = offset;
        offset += stmt.len() + 1;
        if stmt.trim().is_empty() {
            continue;
        }
        let eq = stmt
            .find('=')
            .ok_or_else(|| err(start, "expected `vars=...` or `gens=...`"))?;
        let key = stmt[..eq].trim();
        let val = &stmt[eq + 1..];
        let val_pos = start + eq + 1;
        match key {
            "vars" => {
                let names: Vec<String> =
                    val.split(',').map(|v| v.trim().to_string()).collect();
                if names.iter().any(String::is_empty) {
                    return Err(err(val_pos, "empty variable name"));
                }
                vars = Some((val_pos, names));
            }
            "gens" => gens = Some((val_pos, val.to_string())),
            other => return Err(err(start, &format!("unknown key `{other}`"))),
        }
    }
    let (vars_pos, names) = vars.ok_or_else(|| err(0, "missing `vars=`"))?;
    let ring = Ring::new(names.clone()).map_err(|e| err(vars_pos, &e.to_string()))?;
    let (gens_pos, gens_text) = gens.ok_or_else(|| err(0, "missing `gens=`"))?;
    let mut exponents: Vec<Vec<u32>> = Vec::new();
    let mut mono_offset = gens_pos;
    for mono in gens_text.split(',') {
        let mono_pos = mono_offset;
        mono_offset += mono.len() + 1;
        let mono = mono.trim();
        if mono.is_empty() {
            return Err(err(mono_pos, "empty generator"));
        }
        let mut exp = vec![0u32; ring.n()];
        if mono == "1" {
            exponents.push(exp);
            continue;
        }
        for factor in mono.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                None => (factor, 1u32),
                Some((n, p)) => {
                    let power: u32 = p.trim().parse().map_err(|_| {
                        err(mono_pos, &format!("invalid exponent `{p}` (nonnegative integer required)"))
                    })?;
                    (n.trim(), power)
                }
            };
            let idx = ring
                .var_index(name)
                .ok_or_else(|| err(mono_pos, &format!("unknown variable `{name}`")))?;
            exp[idx] += power;
        }
        exponents.push(exp);
    }
    MonomialIdeal::new(ring, exponents)
}

/// Parses the family shorthand grammar. `I` refers to the supplied base ideal.
///
/// Forms: `powers:I`, `symbolic:I`, `closure-powers:I`,
/// `piecewise:<alpha>,<beta>,<gamma>[:<idx>=<power>,...]`,
/// `truncate:<family>:<n>`; JSON objects are also accepted.
pub fn parse_family(text: &str, ideal: &MonomialIdeal) -> Result<GradedFamily> {
    let text = text.trim();
    if text.starts_with('{') {
        return family_from_json_value(&serde_json::from_str(text)?);
    }
    let bad = |msg: String| Error::Invalid(msg);
    if let Some(rest) = text.strip_prefix("truncate:") {
        let (inner, n) = rest
            .rsplit_once(':')
            .ok_or_else(|| bad("truncate needs `truncate:<family>:<n>`".into()))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid truncation index `{n}`")))?;
        return parse_family(inner, ideal)?.truncate(n);
    }
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| bad(format!("unknown family shorthand `{text}`")))?;
    match kind {
        "powers" | "symbolic" | "closure-powers" => {
            if rest.trim() != "I" {
                return Err(bad(format!("expected `I` after `{kind}:`, got `{rest}`")));
            }
            match kind {
                "powers" => GradedFamily::powers(ideal.clone()),
                "symbolic" => GradedFamily::symbolic_powers(ideal.clone()),
                _ => GradedFamily::closure_powers(ideal.clone()),
            }
        }
        "piecewise" => {
            let (params, overrides_text) = match rest.split_once(':') {
                Some((p, o)) => (p, Some(o)),
                None => (rest, None),
            };
            let nums: Vec<&str> = params.split(',').collect();
            if nums.len() != 3 {
                return Err(bad("piecewise needs `piecewise:<alpha>,<beta>,<gamma>`".into()));
            }
            let parse_u32 = |s: &str| -> Result<u32> {
                s.trim()
                    .parse()
                    .map_err(|_| bad(format!("invalid integer `{}`", s.trim())))
            };
            let mut overrides = BTreeMap::new();
            if let Some(list) = overrides_text {
                for item in list.split(',') {
                    let (idx, power) = item
                        .split_once('=')
                        .ok_or_else(|| bad("overrides use `<idx>=<power>`".into()))?;
                    overrides.insert(parse_u32(idx)?, ideal.power(parse_u32(power)?)?);
                }
            }
            GradedFamily::new(FamilyRule::Piecewise {
                base: ideal.clone(),
                alpha: parse_u32(nums[0])?,
                beta: parse_u32(nums[1])?,
                gamma: parse_u32(nums[2])?,
                overrides,
            })
        }
        other => Err(bad(format!("unknown family kind `{other}`"))),
    }
}

fn parse_weights(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("invalid weight `{}`", w.trim())))
        })
        .collect()
}

fn provenance(budgets: Value, certificates: Value) -> Value {
    json!({"budgets": budgets, "certificates": certificates})
}

fn emit(mode: OutputMode, body: Value, text: String) -> String {
    match mode {
        OutputMode::Json => serde_json::to_string_pretty(&body).expect("serializable"),
        OutputMode::Text => text,
    }
}

fn polyhedron_text(p: &crate::exactgeom::QPolyhedron) -> String {
    if p.is_empty() {
        return "empty".into();
    }
    let vertices = p
        .vertices()
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(", ");
    let facets = p
        .facets()
        .iter()
        .map(|h| {
            format!(
                "{} >= {}",
                h.normal()
                    .iter()
                    .zip(0..)
                    .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
                    .map(|(c, i)| format!("{c}*x{i}"))
                    .collect::<Vec<_>>()
                    .join(" + "),
                h.offset()
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    format!("vertices: {vertices}\nfacets: {facets}")
}

fn ideal_text(i: &MonomialIdeal) -> String {
    i.generators()
        .iter()
        .map(|g| i.format_monomial(g))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Executes a parsed command line and returns `(exit_code, output)`.
pub fn execute(cli: Cli) -> (i32, String) {
    match run_command(&cli) {
        Ok(output) => (EXIT_OK, output),
        Err(e @ Error::BudgetExceeded(_)) => (EXIT_BUDGET, format!("error: {e}")),
        Err(e) => (EXIT_SPEC_ERROR, format!("error: {e}")),
    }
}

/// Parses argv and executes; the binary's whole behavior.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Ok(ceiling) = std::env::var("RESURGIA_GEN_CEILING") {
        match ceiling.parse() {
            Ok(v) => set_generator_ceiling(v),
            Err(_) => {
                return (
                    EXIT_SPEC_ERROR,
                    format!("error: invalid RESURGIA_GEN_CEILING `{ceiling}`"),
                )
            }
        }
    }
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            // clap handles --help/--version as "errors" with zero exit
            let code = if e.use_stderr() { EXIT_SPEC_ERROR } else { EXIT_OK };
            (code, e.to_string())
        }
    }
}

fn run_command(cli: &Cli) -> Result<String> {
    let mode = cli.output;
    match &cli.command {
        Command::Np { ideal } => {
            let i = ideal.load()?;
            let np = i.newton_polyhedron()?;
            Ok(emit(
                mode,
                json!({"command": "np", "ideal": i.to_json_value(), "result": np.to_json_value()}),
                polyhedron_text(&np),
            ))
        }
        Command::Sp { ideal } => {
            let i = ideal.load()?;
            let sp = i.symbolic_polyhedron()?;
            Ok(emit(
                mode,
                json!({"command": "sp", "ideal": i.to_json_value(), "result": sp.to_json_value()}),
                polyhedron_text(&sp),
            ))
        }
        Command::Dual { ideal } => {
            let i = ideal.load()?;
            let dual = i.alexander_dual()?;
            Ok(emit(
                mode,
                json!({"command": "dual", "ideal": i.to_json_value(), "result": dual.to_json_value()}),
                ideal_text(&dual),
            ))
        }
        Command::SymbolicPower { ideal, power } => {
            let i = ideal.load()?;
            let s = i.symbolic_power(*power)?;
            Ok(emit(
                mode,
                json!({
                    "command": "symbolic-power",
                    "ideal": i.to_json_value(),
                    "power": power,
                    "result": s.to_json_value(),
                }),
                ideal_text(&s),
            ))
        }
        Command::Okounkov { ideal, family, budget_body } => {
            let i = ideal.load()?;
            let f = parse_family(family, &i)?;
            let cert = f.okounkov_body(*budget_body)?;
            Ok(emit(
                mode,
                json!({
                    "command": "okounkov",
                    "family": family_to_json_value(&f),
                    "result": cert.to_json_value(),
                    "provenance": provenance(
                        json!({"budget_body": budget_body}),
                        json!({"body": cert.status.label()}),
                    ),
                }),
                format!("{}\ncertificate: {}", polyhedron_text(&cert.body), cert.status.label()),
            ))
        }
        Command::Resurgence { ideal, a, b, budget_search_s, budget_search_r, closure } => {
            let i = ideal.load()?;
            let fa = parse_family(a, &i)?;
            let fb = parse_family(b, &i)?;
            let res = resurgence_search(&fa, &fb, *budget_search_s, *budget_search_r, *closure)?;
            Ok(emit(
                mode,
                json!({
                    "command": "resurgence",
                    "a": family_to_json_value(&fa),
                    "b": family_to_json_value(&fb),
                    "result": res.to_json_value(),
                    "provenance": provenance(
                        json!({
                            "budget_search_s": budget_search_s,
                            "budget_search_r": budget_search_r,
                            "closure": closure,
                        }),
                        json!({}),
                    ),
                }),
                res.value.to_string(),
            ))
        }
        Command::AsymptoticResurgence { ideal, a, b, budget_body } => {
            let i = ideal.load()?;
            let fa = parse_family(a, &i)?;
            let fb = parse_family(b, &i)?;
            let cert_a = fa.okounkov_body(*budget_body)?;
            let cert_b = fb.okounkov_body(*budget_body)?;
            let res = crate::resurgence::body_resurgence(&cert_a, &cert_b)?;
            Ok(emit(
                mode,
                json!({
                    "command": "asymptotic-resurgence",
                    "a": family_to_json_value(&fa),
                    "b": family_to_json_value(&fb),
                    "result": res.to_json_value(),
                    "provenance": provenance(
                        json!({"budget_body": budget_body}),
                        json!({"a": cert_a.status.label(), "b": cert_b.status.label()}),
                    ),
                }),
                res.value.to_string(),
            ))
        }
        Command::Waldschmidt { ideal, family, weights, budget_body } => {
            let i = ideal.load()?;
            let f = parse_family(family, &i)?;
            let w = parse_weights(weights)?;
            let value = waldschmidt(&f, &w, *budget_body)?;
            Ok(emit(
                mode,
                json!({
                    "command": "waldschmidt",
                    "family": family_to_json_value(&f),
                    "weights": w,
                    "result": {"value": crate::rational::format_rational(&value)},
                    "provenance": provenance(json!({"budget_body": budget_body}), json!({})),
                }),
                crate::rational::format_rational(&value),
            ))
        }
        Command::TruncateProfile { ideal, a, b, n_max, budget_search_s, budget_search_r } => {
            let i = ideal.load()?;
            let fa = parse_family(a, &i)?;
            let fb = parse_family(b, &i)?;
            let profile =
                truncation_resurgence_profile(&fa, &fb, *n_max, *budget_search_s, *budget_search_r)?;
            let rows: Vec<Value> = profile
                .iter()
                .map(|(n, r)| json!({"n": n, "result": r.to_json_value()}))
                .collect();
            let text = profile
                .iter()
                .map(|(n, r)| format!("n={n}: {}", r.value))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(emit(
                mode,
                json!({
                    "command": "truncate-profile",
                    "a": family_to_json_value(&fa),
                    "b": family_to_json_value(&fb),
                    "result": rows,
                    "provenance": provenance(
                        json!({
                            "n_max": n_max,
                            "budget_search_s": budget_search_s,
                            "budget_search_r": budget_search_r,
                        }),
                        json!({}),
                    ),
                }),
                text,
            ))
        }
        Command::Rees { rees, budget_body } => {
            let (pkg, vf) = rees.load()?;
            let res = rees_resurgence(&vf, &pkg, *budget_body)?;
            Ok(emit(
                mode,
                json!({
                    "command": "rees",
                    "package": pkg.label,
                    "result": res.to_json_value(),
                    "provenance": provenance(json!({"budget_body": budget_body}), json!({})),
                }),
                res.value.to_string(),
            ))
        }
        Command::Veronese { rees, k, budget_body } => {
            let (pkg, vf) = rees.load()?;
            let res = veronese_resurgence(&vf, &pkg, *k, *budget_body)?;
            Ok(emit(
                mode,
                json!({
                    "command": "veronese",
                    "package": pkg.label,
                    "k": k,
                    "result": res.to_json_value(),
                    "provenance": provenance(json!({"budget_body": budget_body}), json!({})),
                }),
                res.value.to_string(),
            ))
        }
        Command::DualityCheck { ideal } => {
            let i = ideal.load()?;
            let ok = duality_check(&i)?;
            Ok(emit(
                mode,
                json!({"command": "duality-check", "ideal": i.to_json_value(), "result": ok}),
                ok.to_string(),
            ))
        }
    }
}
