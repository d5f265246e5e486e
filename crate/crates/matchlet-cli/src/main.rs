//! `matchlet` — design, verify, and sample interpolating wavelets.
//!
//! Exit codes: 0 on success/acceptance, 1 when a design is mathematically
//! rejected (the report is still written), 2 on schema or usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use matchlet_core::io::{
    design_from_spec, model_from_artifact, run_suite, sample_csv, to_json_pretty, write_atomic,
    DesignArtifact, GammaSpec, GammaValue, PipelineError, ProblemSpec,
};
use matchlet_core::meyer::{check_admissibility, project_feasible, MeyerTargetSequence};
use matchlet_core::quadrature::QuadratureSpec;
use matchlet_core::roots::perturb_roots;
use matchlet_core::sequence::DataSequence;

#[derive(Parser)]
#[command(name = "matchlet", version, about = "Wavelets interpolating data on uniform lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the designer for a problem spec; write artifact and report.
    Design(DesignArgs),
    /// Re-run the verification suite on a persisted artifact.
    Verify(VerifyArgs),
    /// Sample the designed wavelet to CSV.
    Sample(SampleArgs),
    /// Move on-circle roots outward and write the adjusted spec.
    Perturb(PerturbArgs),
    /// Adjust two free entries to satisfy the lattice feasibility conditions.
    Feasible(FeasibleArgs),
    /// Pretty-print a verification report.
    Report(ReportArgs),
}

#[derive(Args)]
struct DesignArgs {
    /// Problem spec JSON.
    #[arg(long)]
    spec: PathBuf,
    /// Output artifact path.
    #[arg(long)]
    out: PathBuf,
    /// Output report path (default: artifact path with .report.json).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    artifact: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    artifact: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    t_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    t_max: f64,
    #[arg(long)]
    n_points: usize,
}

#[derive(Args)]
struct PerturbArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Outward displacement for roots within this distance of the unit circle.
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FeasibleArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Two free indices, comma separated (e.g. --free 0,1).
    #[arg(long, value_parser = parse_index_pair)]
    free: (usize, usize),
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    report: PathBuf,
}

fn parse_index_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated indices, e.g. 0,1".to_string());
    }
    let i = parts[0].trim().parse().map_err(|e| format!("bad index {:?}: {e}", parts[0]))?;
    let j = parts[1].trim().parse().map_err(|e| format!("bad index {:?}: {e}", parts[1]))?;
    Ok((i, j))
}

/// Outcome classes mapped to exit codes.
enum Failure {
    /// Mathematical rejection: exit 1.
    Rejected(String),
    /// Schema, IO, or usage problems: exit 2.
    Usage(String),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Spec(s) => Failure::Usage(s.to_string()),
            PipelineError::Design(d) => Failure::Rejected(d.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Design(args) => cmd_design(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Perturb(args) => cmd_perturb(args),
        Command::Feasible(args) => cmd_feasible(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("rejected: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<ProblemSpec, Failure> {
    let text = read_to_string(path)?;
    let spec: ProblemSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid spec {}: {e}", path.display())))?;
    spec.validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(spec)
}

fn load_artifact(path: &Path) -> Result<DesignArtifact, Failure> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid artifact {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    write_atomic(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Quadrature override from the environment, applied when the spec has none.
/// Format: MATCHLET_QUAD="panels=16,nodes=48".
fn apply_env_quadrature(spec: &mut ProblemSpec) -> Result<(), Failure> {
    if spec.quadrature.is_some() {
        return Ok(());
    }
    let Ok(raw) = std::env::var("MATCHLET_QUAD") else {
        return Ok(());
    };
    let mut quad = QuadratureSpec::default();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((key, value)) = part.split_once('=') else {
            return Err(Failure::Usage(format!(
                "bad MATCHLET_QUAD entry {part:?}; expected key=value"
            )));
        };
        let parse = |v: &str| -> Result<usize, Failure> {
            v.trim()
                .parse()
                .map_err(|e| Failure::Usage(format!("bad MATCHLET_QUAD value {v:?}: {e}")))
        };
        match key.trim() {
            "panels" => quad.panels_per_band = parse(value)?,
            "nodes" => quad.nodes_per_panel = parse(value)?,
            other => {
                return Err(Failure::Usage(format!(
                    "unknown MATCHLET_QUAD key {other:?}; known: panels, nodes"
                )))
            }
        }
    }
    spec.quadrature = Some(quad);
    Ok(())
}

fn cmd_design(args: DesignArgs) -> Result<(), Failure> {
    let mut spec = load_spec(&args.spec)?;
    apply_env_quadrature(&mut spec)?;
    let report_path = args
        .report
        .unwrap_or_else(|| args.out.with_extension("report.json"));
    match design_from_spec(&spec) {
        Ok((model, artifact)) => {
            let report = run_suite(&model).map_err(|e| Failure::Rejected(e.to_string()))?;
            write_file(&args.out, &to_json_pretty(&artifact))?;
            write_file(&report_path, &to_json_pretty(&report))?;
            println!(
                "design accepted; artifact {} report {} ({})",
                args.out.display(),
                report_path.display(),
                if report.overall_pass {
                    "all checks pass"
                } else {
                    "some checks failed"
                }
            );
            Ok(())
        }
        Err(PipelineError::Spec(e)) => Err(Failure::Usage(e.to_string())),
        Err(PipelineError::Design(e)) => {
            // rejection: still write a minimal report naming the cause
            let rejection = serde_json::json!({
                "suite": "design",
                "overall_pass": false,
                "checks": [{
                    "name": "design_accepted",
                    "measured": 0.0,
                    "target": 1.0,
                    "tolerance": 0.0,
                    "pass": false,
                    "oracle": e.to_string(),
                }],
            });
            write_file(
                &report_path,
                &(serde_json::to_string_pretty(&rejection).unwrap() + "\n"),
            )?;
            Err(Failure::Rejected(e.to_string()))
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let artifact = load_artifact(&args.artifact)?;
    let model = model_from_artifact(&artifact).map_err(Failure::from)?;
    let report = run_suite(&model).map_err(|e| Failure::Rejected(e.to_string()))?;
    write_file(&args.report, &to_json_pretty(&report))?;
    println!(
        "verified {}: {}",
        args.artifact.display(),
        if report.overall_pass {
            "all checks pass"
        } else {
            "some checks failed"
        }
    );
    Ok(())
}

fn cmd_sample(args: SampleArgs) -> Result<(), Failure> {
    let artifact = load_artifact(&args.artifact)?;
    let model = model_from_artifact(&artifact).map_err(Failure::from)?;
    let csv = sample_csv(&model, args.t_min, args.t_max, args.n_points)
        .map_err(|e| Failure::Rejected(e.to_string()))?;
    write_file(&args.out, &csv)?;
    println!("wrote {} samples to {}", args.n_points, args.out.display());
    Ok(())
}

fn cmd_perturb(args: PerturbArgs) -> Result<(), Failure> {
    let spec = load_spec(&args.spec)?;
    if spec.lattice != matchlet_core::io::Lattice::HalfInteger {
        return Err(Failure::Usage(
            "perturb applies to the half-integer lattice only".to_string(),
        ));
    }
    let GammaSpec::Values { values, offset } = &spec.gamma else {
        return Err(Failure::Usage(
            "perturb requires explicit finite gamma values".to_string(),
        ));
    };
    let gamma = DataSequence::finite(
        *offset,
        values.iter().map(|v| gamma_value_to_complex(*v)).collect(),
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let adjusted = perturb_roots(&gamma, args.delta).map_err(|e| Failure::Usage(e.to_string()))?;

    let DataSequence::Finite {
        offset: new_offset,
        values: new_values,
    } = &adjusted
    else {
        unreachable!("perturb_roots returns finite data");
    };
    let mut max_change = 0.0f64;
    for k in *new_offset..new_offset + new_values.len() as i64 {
        max_change = max_change.max((adjusted.value(k) - gamma.value(k)).norm());
    }
    let new_gamma: Vec<GammaValue> = new_values
        .iter()
        .map(|c| {
            if c.im == 0.0 {
                GammaValue::Real(c.re)
            } else {
                GammaValue::Complex([c.re, c.im])
            }
        })
        .collect();
    let mut new_spec = spec.clone();
    new_spec.gamma = GammaSpec::Values {
        values: new_gamma,
        offset: *new_offset,
    };
    write_file(&args.out, &to_json_pretty(&new_spec))?;
    if max_change == 0.0 {
        println!(
            "no on-circle roots; spec copied unchanged to {}",
            args.out.display()
        );
    } else {
        println!(
            "perturbed spec written to {}; max coefficient change {max_change:.6e}",
            args.out.display()
        );
    }
    Ok(())
}

fn gamma_value_to_complex(v: GammaValue) -> num_complex::Complex64 {
    match v {
        GammaValue::Real(x) => num_complex::Complex64::new(x, 0.0),
        GammaValue::Complex([re, im]) => num_complex::Complex64::new(re, im),
    }
}

fn cmd_feasible(args: FeasibleArgs) -> Result<(), Failure> {
    let spec = load_spec(&args.spec)?;
    if spec.lattice != matchlet_core::io::Lattice::Meyer3 {
        return Err(Failure::Usage(
            "feasible applies to the meyer3 lattice only".to_string(),
        ));
    }
    let GammaSpec::Values { values, .. } = &spec.gamma else {
        return Err(Failure::Usage(
            "feasible requires explicit finite gamma values".to_string(),
        ));
    };
    let desired = MeyerTargetSequence::finite(
        values
            .iter()
            .map(|v| gamma_value_to_complex(*v).re)
            .collect(),
    );
    let adjusted =
        project_feasible(&desired, args.free).map_err(|e| Failure::Rejected(e.to_string()))?;
    let len = adjusted.finite_support().unwrap_or(0) + 1;
    let new_values: Vec<f64> = (0..len).map(|k| adjusted.value(k)).collect();

    let report = check_admissibility(&adjusted, (2 * new_values.len()).max(2), 1e-12)
        .map_err(|e| Failure::Rejected(e.to_string()))?;
    let mut new_spec = spec.clone();
    new_spec.gamma = GammaSpec::Values {
        values: new_values.iter().map(|&v| GammaValue::Real(v)).collect(),
        offset: 0,
    };
    write_file(&args.out, &to_json_pretty(&new_spec))?;
    if report.pass[2] {
        println!("feasible spec written to {}", args.out.display());
    } else {
        println!(
            "feasible spec written to {}; warning: magnitude bound fails (lhs3 = {:.6})",
            args.out.display(),
            report.lhs[2]
        );
    }
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), Failure> {
    let text = read_to_string(&args.report)?;
    let report: matchlet_core::verify::VerificationReport = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid report {}: {e}", args.report.display())))?;
    println!("suite: {}", report.suite);
    for check in &report.checks {
        println!(
            "  [{}] {}: measured {:.12e}, target {:.12e}, tol {:.1e} ({})",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.measured,
            check.target,
            check.tolerance,
            check.oracle
        );
    }
    println!(
        "overall: {}",
        if report.overall_pass { "PASS" } else { "FAIL" }
    );
    if report.overall_pass {
        Ok(())
    } else {
        Err(Failure::Rejected(
            "report contains failing checks".to_string(),
        ))
    }
}
