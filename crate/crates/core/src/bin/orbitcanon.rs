// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orbitcanon::linalg::ComplexMatrix;
use orbitcanon::models::ModelKind;
use orbitcanon::report::{
    parse_matrix, parse_spec, run_report, run_single, run_suite, ConfigOverrides, OutputFormat, PointSpec, Report,
    ReportError, ScenarioConfig, SingleCommand, Suite,
};

#[derive(Parser, Debug)]
#[command(name = "orbitcanon", version, about = "Canonical coordinates on adjoint orbits: verification reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every suite for one model.
    Report {
        model: ModelKind,
        #[command(flatten)]
        common: Common,
    },
    /// Run one named suite.
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        model: Option<ModelKind>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the potential at one point.
    Potential(SingleArgs),
    /// Evaluate ψ at one point.
    Nagano(SingleArgs),
    /// Evaluate the Wick map at Pauli coordinates e,f,z.
    Wick(SingleArgs),
    /// Evaluate the Gelfand–Zeitlin map.
    Gz(SingleArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "tol-scale")]
    tol_scale: Option<f64>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Report file; `-` writes the report body to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value file; flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Orbit eigenvalues, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    spec: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SingleArgs {
    #[arg(long)]
    model: Option<ModelKind>,
    /// Chart coordinate a of exp((a + ib)·J₀).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Flags-curve parameter.
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<f64>,
    /// Witness matrix: rows split by `;`, entries `re` or `re:im`.
    #[arg(long, allow_hyphen_values = true)]
    witness: Option<String>,
    /// Raw matrix, same syntax as the witness.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Diagonal entries of a raw diagonal matrix.
    #[arg(long, allow_hyphen_values = true)]
    diag: Option<String>,
    /// Pauli coordinates e,f,z of e·σz + f·σx + z·σy.
    #[arg(long, allow_hyphen_values = true)]
    efz: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    spec: Option<String>,
    #[arg(long = "tol-scale")]
    tol_scale: Option<f64>,
    #[arg(long)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn overrides(model: Option<ModelKind>, c: &Common) -> Result<ConfigOverrides, ReportError> {
    let file = match &c.config {
        Some(p) => ConfigOverrides::from_file(p)?,
        None => ConfigOverrides::default(),
    };
    let flags = ConfigOverrides {
        model,
        orbit_spec: c.spec.as_deref().map(parse_spec).transpose()?,
        samples: c.samples,
        seed: c.seed,
        tol_scale: c.tol_scale,
        format: c.format,
        output_path: c.out.clone(),
    };
    Ok(file.merge(flags))
}

fn emit(report: &Report, format: OutputFormat, out: Option<&PathBuf>) -> Result<(), ReportError> {
    print!("{}", report.human_summary());
    match out {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.render(format)?),
        Some(p) => report.write_to(p, format)?,
        None => {}
    }
    Ok(())
}

fn point_of(args: &SingleArgs) -> Result<PointSpec, ReportError> {
    let spec_vec = |s: &str| parse_spec(s);
    if let Some(w) = &args.witness {
        return Ok(PointSpec::Witness(parse_matrix(w)?));
    }
    if let Some(m) = &args.matrix {
        return Ok(PointSpec::Raw(parse_matrix(m)?));
    }
    if let Some(d) = &args.diag {
        return Ok(PointSpec::Raw(ComplexMatrix::from_real_diag(&spec_vec(d)?)));
    }
    if let Some(e) = &args.efz {
        let v = spec_vec(e)?;
        if v.len() != 3 {
            return Err(ReportError::ConfigInvalid("--efz takes three numbers".into()));
        }
        let m = ComplexMatrix::from_rows(&[
            vec![orbitcanon::linalg::c(v[0], 0.0), orbitcanon::linalg::c(v[1], -v[2])],
            vec![orbitcanon::linalg::c(v[1], v[2]), orbitcanon::linalg::c(-v[0], 0.0)],
        ]);
        return Ok(PointSpec::Raw(m));
    }
    if let Some(b) = args.curve {
        return Ok(PointSpec::Curve { b });
    }
    match (args.a, args.b) {
        (Some(a), Some(b)) => Ok(PointSpec::Chart { a, b }),
        (None, Some(b)) => Ok(PointSpec::Chart { a: 0.0, b }),
        _ => Err(ReportError::ConfigInvalid(
            "give a point: --a/--b, --curve, --witness, --matrix, --diag or --efz".into(),
        )),
    }
}

fn single(command: SingleCommand, args: &SingleArgs) -> Result<bool, ReportError> {
    let default_model = match command {
        SingleCommand::Potential | SingleCommand::Nagano => ModelKind::Su2Weyl,
        SingleCommand::Wick => ModelKind::Sl2cWick,
        SingleCommand::Gz => ModelKind::Su3Flags,
    };
    let kind = args.model.unwrap_or(default_model);
    let spec = match &args.spec {
        Some(s) => parse_spec(s)?,
        None => kind.default_spec(),
    };
    let point = point_of(args)?;
    let report = run_single(command, kind, &spec, &point, args.tol_scale.unwrap_or(1.0))?;
    emit(&report, args.format.unwrap_or(OutputFormat::Json), args.out.as_ref())?;
    Ok(report.all_passed())
}

fn run(cli: Cli) -> Result<bool, ReportError> {
    match cli.command {
        Command::Report { model, common } => {
            let cfg = ScenarioConfig::from_overrides(overrides(Some(model), &common)?)?;
            let report = run_report(&cfg)?;
            emit(&report, cfg.format, cfg.output_path.as_ref())?;
            Ok(report.all_passed())
        }
        Command::Check { suite, model, common } => {
            let mut o = overrides(model, &common)?;
            if o.model.is_none() {
                o.model = Some(match suite {
                    Suite::Wick | Suite::Appendix => ModelKind::Sl2cWick,
                    Suite::Gz | Suite::FlagsCurve => ModelKind::Su3Flags,
                    _ => ModelKind::Su2Weyl,
                });
            }
            let cfg = ScenarioConfig::from_overrides(o)?;
            let report = run_suite(suite, &cfg)?;
            emit(&report, cfg.format, cfg.output_path.as_ref())?;
            Ok(report.all_passed())
        }
        Command::Potential(a) => single(SingleCommand::Potential, &a),
        Command::Nagano(a) => single(SingleCommand::Nagano, &a),
        Command::Wick(a) => single(SingleCommand::Wick, &a),
        Command::Gz(a) => single(SingleCommand::Gz, &a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("orbitcanon: {e}");
            ExitCode::from(2)
        }
    }
}
