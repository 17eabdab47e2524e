use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tvbound::report::{exit_code, run, serialize_report, BoundReport, RunConfig};
use tvbound::{Error, Result};

/// Compute explicit p-adic distance bounds between torsion points and a
/// curve embedded in its Jacobian.
#[derive(Parser, Debug)]
#[command(name = "tvbound", version)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Use a built-in curve instead of a config file.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Grid points per real dimension for the Θ_Max search.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    jmax: Option<u32>,
    #[arg(long)]
    residue_degree: Option<u32>,
    /// Check the bound on the torsion list.
    #[arg(long)]
    verify: bool,
    /// Report destination; `-` for stdout.
    #[arg(long)]
    out: Option<String>,
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match (&cli.config, &cli.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::ConfigRejected(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        (None, Some(name)) => {
            let p = cli.p.ok_or_else(|| Error::ConfigRejected("--preset needs --p".into()))?;
            let mut cfg = RunConfig::preset(p);
            cfg.curve = tvbound::report::CurveSpec::Preset(name.clone());
            cfg
        }
        (None, None) => return Err(Error::ConfigRejected("give --config or --preset".into())),
    };
    if let Some(p) = cli.p {
        cfg.p = p;
    }
    if let Some(bits) = cli.precision_bits {
        cfg.precision_bits = bits;
    }
    if let Some(n) = cli.grid {
        cfg.grid_points_per_dim = Some(n);
    }
    if let Some(j) = cli.jmax {
        cfg.jmax = j;
    }
    if let Some(f) = cli.residue_degree {
        cfg.residue_degree = Some(f);
    }
    if cli.verify {
        cfg.verify = true;
    }
    if let Some(out) = &cli.out {
        cfg.output_path = Some(out.clone());
    }
    Ok(cfg)
}

fn summarize(report: &BoundReport) {
    let log10 = |x: &tvbound::report::LogScaledJson| {
        x.log10
            .as_ref()
            .and_then(|d| d.value.parse::<f64>().ok())
            .map_or("-".to_string(), |v| format!("{v:.6}"))
    };
    eprintln!("curve            {}", report.curve);
    eprintln!("p                {}", report.input.p);
    eprintln!("Theta_Max        {}", report.theta_max.value.value);
    eprintln!("D                {}", report.constant_d.value);
    eprintln!("log10 H_p        {}", log10(&report.h_p));
    eprintln!("log10 exponent   {}", log10(&report.main_exponent));
    eprintln!("log10 sharp      {}", log10(&report.sharp_exponent));
    for row in &report.verification {
        eprintln!(
            "torsion order {:>4}  v_p {:>9}  {}",
            row.order.map_or("-".into(), |n| n.to_string()),
            row.v_p.as_deref().unwrap_or("-"),
            row.verdict
        );
    }
    eprintln!("status           {}", report.status);
    for v in &report.violations {
        eprintln!("violated         {v}");
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = load(cli)?;
    let report = run(&cfg)?;
    let text = serialize_report(&report);
    match cfg.output_path.as_deref() {
        None | Some("-") => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("cannot write report: {e}")))?;
        }
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
        }
    }
    summarize(&report);
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
