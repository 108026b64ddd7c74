//! `cubicmon`: line solves, loop tracking, monodromy campaigns and the claim
//! suite, with JSON reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_monodromy::flexes::{self, collinear_triples, flex_monodromy_campaign, solve_flexes, PlaneCubicForm};
use cubic_monodromy::homotopy::TrackOptions;
use cubic_monodromy::linesolver::{incidence_graph, solve_lines};
use cubic_monodromy::monodromy::{
    attach_verdicts, claim_suite, inconclusive, run_campaign, solve_base, structured_loops, Campaign,
    MonodromyReport, Status, Verdict, SCHEMA_VERSION,
};
use cubic_monodromy::numeric::C;
use cubic_monodromy::schlafli::{label_lines, IncidenceModel};
use cubic_monodromy::surfaces::{CubicForm, Family};
use cubic_monodromy::tracker::{random_polygon_loop, track_loop, LoopSpec};

#[derive(Parser)]
#[command(name = "cubicmon", version, about = "Monodromy of the 27 lines and the 9 flexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the 27 lines of one surface.
    Solve(Common),
    /// Solve, then check the incidence graph and label the lines.
    SchlafliCheck(Common),
    /// Track the lines around one loop.
    Track {
        #[command(flatten)]
        common: Common,
        #[arg(long = "loop", value_enum, default_value = "random")]
        kind: LoopArg,
        /// Which structured loop to use with `--loop structured`.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Run a monodromy campaign on one family.
    Campaign(Common),
    /// Run every claim and exit 0 iff all pass.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Comma-separated claim ids; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
    },
    /// Solve the flexes of a plane cubic; with a budget, also run the flex campaign.
    Flexes(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "generic20")]
    family: FamilyArg,
    /// Parameter value as "re,im" (or "re"); repeat once per parameter.
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Generic20,
    Fermat,
    S4,
    S3,
    S3xc2,
    C2even,
    Flexp9,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopArg {
    Constant,
    Random,
    Structured,
}

const DEFAULT_BUDGET: usize = 80;

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Generic20 | FamilyArg::Fermat => Family::Generic20,
            FamilyArg::S4 => Family::S4,
            FamilyArg::S3 => Family::S3,
            FamilyArg::S3xc2 => Family::S3xC2,
            FamilyArg::C2even => Family::C2Even,
            FamilyArg::Flexp9 => Family::FlexP9,
        }
    }
}

fn parse_complex(s: &str) -> Result<C> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().with_context(|| format!("bad number {p:?} in {s:?}"));
    match parts.as_slice() {
        [re] => Ok(C::new(num(re)?, 0.0)),
        [re, im] => Ok(C::new(num(re)?, num(im)?)),
        _ => bail!("expected \"re,im\", got {s:?}"),
    }
}

impl Common {
    fn budget(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    /// Explicit parameters, or the standard basepoint for the seed.
    fn parameters(&self) -> Result<Vec<C>> {
        let family = self.family.family();
        if matches!(self.family, FamilyArg::Fermat) {
            if !self.params.is_empty() {
                bail!("--family fermat takes no parameters");
            }
            return Ok(CubicForm::fermat().coefficients().to_vec());
        }
        if self.params.is_empty() {
            return Ok(Campaign::standard(family, self.seed, self.budget()).basepoint);
        }
        let p: Vec<C> = self.params.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
        if p.len() != family.parameter_dim() {
            bail!("{family:?} takes {} parameters, got {}", family.parameter_dim(), p.len());
        }
        Ok(p)
    }

    fn campaign(&self) -> Result<Campaign> {
        let mut c = Campaign::standard(self.family.family(), self.seed, self.budget());
        c.basepoint = self.parameters()?;
        Ok(c)
    }
}

/// Writes `value` to `out` through a temporary file and a rename, or to stdout.
fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn envelope(command: &str, common: &Common, body: Value) -> Result<Value> {
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "family": common.family.family(),
        "parameters": common.parameters()?,
        "seed": common.seed,
        "result": body,
    }))
}

fn cmd_solve(common: &Common) -> Result<Value> {
    let form = common.family.family().form(&common.parameters()?)?;
    let report = solve_lines(&form, common.seed)?;
    envelope("solve", common, serde_json::to_value(&report)?)
}

fn cmd_schlafli_check(common: &Common) -> Result<Value> {
    let form = common.family.family().form(&common.parameters()?)?;
    let report = solve_lines(&form, common.seed)?;
    let adj = incidence_graph(&report.lines)?;
    let model = IncidenceModel::from_adjacency(adj.clone())?;
    let strongly_regular = model.check_strongly_regular().is_ok();
    let labeling = label_lines(&adj)?;
    let labels: Vec<String> = labeling.labels().iter().map(|l| format!("{l:?}")).collect();
    envelope(
        "schlafli-check",
        common,
        json!({
            "edges": model.edge_count(),
            "triangles": model.triangles().len(),
            "strongly_regular_27_10_1_5": strongly_regular,
            "labels": labels,
            "max_residual": report.max_residual,
            "min_pairwise_distance": report.min_pairwise_distance,
        }),
    )
}

fn cmd_track(common: &Common, kind: LoopArg, index: usize) -> Result<Value> {
    let family = common.family.family();
    let basepoint = common.parameters()?;
    let (base, labeling) = solve_base(family, &basepoint, common.seed)?;
    let spec = match kind {
        LoopArg::Constant => LoopSpec::constant(family, basepoint.clone()),
        LoopArg::Random => random_polygon_loop(family, &basepoint, 1.0, common.seed),
        LoopArg::Structured => structured_loops(family, &basepoint)?
            .into_iter()
            .nth(index)
            .with_context(|| format!("{family:?} has no structured loop {index}"))?,
    };
    let tracked = track_loop(&spec, &base, &labeling, &TrackOptions::default())?;
    let cycles = tracked.perm.cycles();
    envelope(
        "track",
        common,
        json!({ "tracked": tracked, "cycles": cycles, "identity": tracked.perm.is_identity() }),
    )
}

fn family_report(family: Family, common: &Common) -> Result<MonodromyReport> {
    if family == Family::FlexP9 {
        return Ok(flex_monodromy_campaign(common.budget(), common.seed)?);
    }
    let mut c = Campaign::standard(family, common.seed, common.budget());
    if common.family.family() == family && !common.params.is_empty() {
        c.basepoint = common.parameters()?;
    }
    let mut report = run_campaign(&c)?;
    attach_verdicts(&mut report)?;
    Ok(report)
}

fn cmd_campaign(common: &Common) -> Result<(Value, bool)> {
    let family = common.family.family();
    let report = if family == Family::FlexP9 {
        flex_monodromy_campaign(common.budget(), common.seed)?
    } else {
        let mut r = run_campaign(&common.campaign()?)?;
        attach_verdicts(&mut r)?;
        r
    };
    let ok = report.verdicts.iter().all(|v| v.status == Status::Pass);
    Ok((envelope("campaign", common, serde_json::to_value(&report)?)?, ok))
}

fn summary(report: &MonodromyReport) -> Value {
    json!({
        "family": report.family,
        "order": report.group.order() as u64,
        "combined_order": report.combined_group.as_ref().map(|g| g.order() as u64),
        "fingerprint": report.fingerprint,
        "combined_fingerprint": report.combined_fingerprint,
        "loops_attempted": report.loops_attempted,
        "loops_failed": report.failures.len(),
        "plateau_reached": report.plateau_reached,
        "order_history": report.order_history,
        "checks": report.checks,
        "tolerances": report.tolerances,
        "max_corrector_residual": report.tracked.iter().map(|t| t.max_corrector_residual).fold(0.0, f64::max),
        "min_separation": report.tracked.iter().map(|t| t.min_separation).fold(f64::INFINITY, f64::min),
        "min_matching_gap": report.tracked.iter().map(|t| t.matching_gap).fold(f64::INFINITY, f64::min),
    })
}

fn cmd_verify_all(common: &Common, only: &[String]) -> Result<(Value, bool)> {
    let claims: Vec<_> = claim_suite()
        .into_iter()
        .filter(|c| only.is_empty() || only.iter().any(|id| id == c.id))
        .collect();
    if claims.is_empty() {
        bail!("no claim matches {only:?}");
    }
    let mut families: Vec<Family> = claims.iter().map(|c| c.family).collect();
    families.dedup();
    let mut verdicts: Vec<Verdict> = Vec::new();
    let mut campaigns = Vec::new();
    for family in families {
        let mine: Vec<_> = claims.iter().filter(|c| c.family == family).collect();
        match family_report(family, common) {
            Ok(report) => {
                for c in &mine {
                    match report.verdicts.iter().find(|v| v.claim == c.id) {
                        Some(v) => verdicts.push(v.clone()),
                        None => verdicts.push(inconclusive(c, "no verdict produced".into())),
                    }
                }
                campaigns.push(summary(&report));
            }
            Err(e) => {
                for c in &mine {
                    verdicts.push(inconclusive(c, format!("campaign did not run: {e}")));
                }
            }
        }
    }
    let ok = verdicts.iter().all(|v| v.status == Status::Pass);
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify-all",
        "seed": common.seed,
        "budget": common.budget(),
        "all_pass": ok,
        "verdicts": verdicts,
        "campaigns": campaigns,
    });
    Ok((value, ok))
}

fn cmd_flexes(common: &Common) -> Result<(Value, bool)> {
    let coeffs = if common.params.is_empty() {
        Campaign::standard(Family::FlexP9, common.seed, 0).basepoint
    } else {
        let p: Vec<C> = common.params.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
        if p.len() != 10 {
            bail!("a plane cubic takes 10 coefficients, got {}", p.len());
        }
        p
    };
    let set = solve_flexes(&PlaneCubicForm::new(&coeffs)?, common.seed)?;
    let triples = collinear_triples(&set.points);
    let mut ok = triples.len() == flexes::HESSE_LINES;
    let campaign = match common.budget {
        Some(b) => {
            let report = flex_monodromy_campaign(b, common.seed)?;
            ok &= report.verdicts.iter().all(|v| v.status == Status::Pass);
            Some(report)
        }
        None => None,
    };
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "flexes",
        "coefficients": coeffs,
        "seed": common.seed,
        "flexes": set,
        "collinear_triples": triples,
        "campaign": campaign,
    });
    Ok((value, ok))
}

fn run(cli: Cli) -> Result<bool> {
    let (value, ok, out) = match &cli.command {
        Command::Solve(c) => (cmd_solve(c)?, true, c.out.clone()),
        Command::SchlafliCheck(c) => {
            let v = cmd_schlafli_check(c)?;
            let ok = v["result"]["strongly_regular_27_10_1_5"] == json!(true);
            (v, ok, c.out.clone())
        }
        Command::Track { common, kind, index } => (cmd_track(common, *kind, *index)?, true, common.out.clone()),
        Command::Campaign(c) => {
            let (v, ok) = cmd_campaign(c)?;
            (v, ok, c.out.clone())
        }
        Command::VerifyAll { common, claims } => {
            let (v, ok) = cmd_verify_all(common, claims)?;
            (v, ok, common.out.clone())
        }
        Command::Flexes(c) => {
            let (v, ok) = cmd_flexes(c)?;
            (v, ok, c.out.clone())
        }
    };
    emit(&value, out.as_deref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
