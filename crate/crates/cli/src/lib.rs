//! Command-line front end for `uprime-core`: every subcommand produces one
//! JSON report and an exit code.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use uprime_core::algebra::{check_td_relations, check_uprime_relations, phi_s_image, td_delta};
use uprime_core::intertwiner::{build_intertwiner, intertwiner_space, verify_intertwiner};
use uprime_core::modules::build;
use uprime_core::structure::{
    drinfeld_polynomial, exceptional_polynomials, irreducible_as_td_module,
    irreducible_by_criterion, irreducible_by_oracle, td_irreducible_by_oracle, DEFAULT_ORACLE_CAP,
};
use uprime_core::{Error, ModuleSpec, QContext, RelationReport, Representation, Scalar};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "uprime", version)]
#[command(about = "Build and certify representations of U'_q with exact rational arithmetic")]
pub struct Cli {
    /// Deformation parameter, a rational other than 0, 1, -1
    #[arg(long, global = true, default_value = "2")]
    pub q: Scalar,

    /// Module spec as JSON, e.g. '{"ell0":0,"factors":[[1,"1"],[1,"16"]]}'
    #[arg(long, global = true)]
    pub spec: Option<ModuleSpec>,

    /// TD-embedding parameter
    #[arg(long, global = true)]
    pub s: Option<Scalar>,

    #[arg(long, global = true)]
    pub l: Option<usize>,

    #[arg(long, global = true)]
    pub m: Option<usize>,

    /// Evaluation parameter of V(l,a) for the intertwiner
    #[arg(long, global = true)]
    pub a: Option<Scalar>,

    /// Largest dimension on which the Burnside oracle runs
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build the representation of a spec
    Build,
    /// Certify the defining relations of a spec or of a representation file
    CheckRelations {
        /// Representation JSON file, used instead of --spec
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Compare the q-string criterion with the Burnside oracle
    Irreducible,
    /// Drinfel'd polynomial of a spec
    Drinfeld,
    /// Certify the TD-algebra embedding for a given s
    TdEmbed,
    /// Build and verify R: V(l,a) ⊗ V(m) -> V(m) ⊗ V(l,a)
    Intertwine,
    /// Everything above for one spec
    FullReport,
}

/// A finished job: the JSON report and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub exit_code: u8,
    pub json: Value,
}

impl Report {
    fn new(exit_code: u8, json: Value) -> Self {
        Report { exit_code, json }
    }
}

/// Malformed requests; these map to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type Job<T> = std::result::Result<T, UsageError>;

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Job<&'a T> {
    v.as_ref()
        .ok_or_else(|| UsageError(format!("missing required flag --{flag}")))
}

fn context(cli: &Cli) -> Job<QContext> {
    Ok(QContext::new(cli.q.clone())?)
}

fn spec_module<'a>(cli: &'a Cli, ctx: &QContext) -> Job<(&'a ModuleSpec, Representation)> {
    let spec = require(&cli.spec, "spec")?;
    let rep = build(spec, ctx)?;
    Ok((spec, rep))
}

fn verdict(report: &RelationReport) -> u8 {
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn relations_json(report: &RelationReport) -> Value {
    let failures: Vec<&str> = report.failures().map(|c| c.relation.as_str()).collect();
    json!({ "pass": report.all_pass(), "failures": failures, "checks": report.to_json() })
}

pub fn run(cli: &Cli) -> Job<Report> {
    match &cli.command {
        Command::Build => {
            let ctx = context(cli)?;
            let (_, rep) = spec_module(cli, &ctx)?;
            Ok(Report::new(EXIT_OK, rep.to_json(&ctx)))
        }
        Command::CheckRelations { rep } => check_relations(cli, rep.as_ref()),
        Command::Irreducible => {
            let ctx = context(cli)?;
            let (spec, rep) = spec_module(cli, &ctx)?;
            irreducible(spec, &rep, cli.oracle_cap, &ctx)
        }
        Command::Drinfeld => {
            let ctx = context(cli)?;
            let spec = require(&cli.spec, "spec")?;
            Ok(Report::new(EXIT_OK, drinfeld(spec, &ctx)))
        }
        Command::TdEmbed => {
            let ctx = context(cli)?;
            let (spec, rep) = spec_module(cli, &ctx)?;
            td_embed(spec, &rep, &td_parameter(cli), cli.oracle_cap, &ctx)
        }
        Command::Intertwine => {
            let ctx = context(cli)?;
            intertwine(
                *require(&cli.l, "l")?,
                *require(&cli.m, "m")?,
                require(&cli.a, "a")?,
                &ctx,
            )
        }
        Command::FullReport => full_report(cli),
    }
}

fn td_parameter(cli: &Cli) -> Scalar {
    cli.s.clone().unwrap_or_else(Scalar::one)
}

fn check_relations(cli: &Cli, file: Option<&PathBuf>) -> Job<Report> {
    let (rep, ctx) = match file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Representation::from_json(&value)?
        }
        None => {
            let ctx = context(cli)?;
            let (_, rep) = spec_module(cli, &ctx)?;
            (rep, ctx)
        }
    };
    let report = check_uprime_relations(&rep, &ctx);
    Ok(Report::new(verdict(&report), relations_json(&report)))
}

fn oracle_value(result: uprime_core::Result<bool>) -> Job<Value> {
    match result {
        Ok(b) => Ok(Value::Bool(b)),
        Err(Error::OracleCap { .. }) => Ok(json!("skipped")),
        Err(e) => Err(e.into()),
    }
}

fn irreducible(spec: &ModuleSpec, rep: &Representation, cap: usize, ctx: &QContext) -> Job<Report> {
    let criterion = irreducible_by_criterion(spec, ctx);
    let oracle = oracle_value(irreducible_by_oracle(rep, cap))?;
    let exceptional: Vec<Vec<String>> = exceptional_polynomials(rep, ctx)?
        .iter()
        .map(|p| p.coeff_strings())
        .collect();
    let code = match oracle.as_bool() {
        Some(o) if o != criterion => EXIT_DISAGREEMENT,
        _ => EXIT_OK,
    };
    let drinfeld = drinfeld_polynomial(spec, ctx).coeff_strings();
    Ok(Report::new(
        code,
        json!({
            "criterion": criterion,
            "oracle": oracle,
            "drinfeld": drinfeld,
            "exceptional": exceptional,
        }),
    ))
}

fn drinfeld(spec: &ModuleSpec, ctx: &QContext) -> Value {
    let p = drinfeld_polynomial(spec, ctx);
    json!({ "drinfeld": p.coeff_strings(), "polynomial": p.render("λ") })
}

fn td_embed(
    spec: &ModuleSpec,
    rep: &Representation,
    s: &Scalar,
    cap: usize,
    ctx: &QContext,
) -> Job<Report> {
    let mut code = EXIT_OK;
    let mut reports = Map::new();
    for (eps, eps_star) in [(1u8, 0u8), (0, 0)] {
        let triple = phi_s_image(rep, s, eps, eps_star, ctx)?;
        let report = check_td_relations(&triple, ctx);
        code = code.max(verdict(&report));
        reports.insert(format!("eps{eps}_{eps_star}"), relations_json(&report));
    }
    let criterion = irreducible_as_td_module(spec, s, ctx)?;
    let oracle = oracle_value(td_irreducible_by_oracle(rep, s, ctx, cap))?;
    if oracle.as_bool().is_some_and(|o| o != criterion) {
        code = EXIT_DISAGREEMENT;
    }
    Ok(Report::new(
        code,
        json!({
            "s": s.to_string(),
            "delta": td_delta(ctx).to_string(),
            "relations": reports,
            "irreducible": { "criterion": criterion, "oracle": oracle },
        }),
    ))
}

fn intertwine(l: usize, m: usize, a: &Scalar, ctx: &QContext) -> Job<Report> {
    let it = build_intertwiner(l, m, a, ctx)?;
    let report = verify_intertwiner(&it, ctx)?;
    let invertible = !it.r.determinant()?.is_zero();
    let space = intertwiner_space(&it.source(ctx)?, &it.target(ctx)?);
    let unique = space.dim() == 1 && space.contains(it.r.as_flat());
    let mut json = it.to_json();
    let obj = json.as_object_mut().expect("intertwiner JSON is an object");
    obj.insert("verification".into(), relations_json(&report));
    obj.insert("invertible".into(), Value::Bool(invertible));
    obj.insert("space_dim".into(), json!(space.dim()));
    let code = if report.all_pass() && invertible && unique {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Report::new(code, json))
}

fn full_report(cli: &Cli) -> Job<Report> {
    let ctx = context(cli)?;
    let (spec, rep) = spec_module(cli, &ctx)?;
    let relations = check_uprime_relations(&rep, &ctx);
    let irr = irreducible(spec, &rep, cli.oracle_cap, &ctx)?;
    let td = td_embed(spec, &rep, &td_parameter(cli), cli.oracle_cap, &ctx)?;
    let mut sections = Map::new();
    sections.insert("spec".into(), spec.to_json());
    sections.insert("q".into(), json!(ctx.q().to_string()));
    sections.insert("dim".into(), json!(rep.dim()));
    sections.insert("relations".into(), relations_json(&relations));
    sections.insert("irreducible".into(), irr.json);
    sections.insert("drinfeld".into(), drinfeld(spec, &ctx));
    sections.insert("td_embed".into(), td.json);
    let mut code = verdict(&relations).max(irr.exit_code).max(td.exit_code);
    if let (Some(l), Some(m), Some(a)) = (cli.l, cli.m, cli.a.as_ref()) {
        let it = intertwine(l, m, a, &ctx)?;
        code = code.max(it.exit_code);
        sections.insert("intertwiner".into(), it.json);
    }
    Ok(Report::new(code, Value::Object(sections)))
}

/// Canonical rendering: sorted keys, two-space indentation, trailing newline.
pub fn render(json: &Value) -> String {
    let mut s = serde_json::to_string_pretty(json).expect("JSON values serialize");
    s.push('\n');
    s
}
