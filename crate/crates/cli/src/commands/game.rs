use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use kickout::game::{
    build_payoff, compare_empirical, sweep_alpha, validate_alpha, AlphaEquilibrium,
    EmpiricalComparison, GameConfig,
};
use kickout::plot;

use super::input_name;
use crate::config::{read_text, ConfigRoot};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;
use crate::GlobalArgs;

#[derive(Debug, Args)]
pub struct GameArgs {
    /// Game config JSON; its contest curve is read from the same directory.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated alphas (each > 1). Defaults to the config's alpha.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    /// Observed closest-defender distances of the corner defender, one per line.
    #[arg(long)]
    pub observed: Option<PathBuf>,
}

#[derive(Serialize)]
struct GameReport<'a> {
    schema_version: u32,
    config: &'a GameConfig,
    results: &'a [AlphaEquilibrium],
}

#[derive(Serialize)]
struct ComparisonReport {
    schema_version: u32,
    input: String,
    comparisons: Vec<AlphaComparison>,
}

#[derive(Serialize)]
struct AlphaComparison {
    alpha: f64,
    #[serde(flatten)]
    comparison: EmpiricalComparison,
}

pub fn run(global: &GlobalArgs, root: &ConfigRoot, args: &GameArgs) -> CliResult<Vec<PathBuf>> {
    let (cfg, spec) = root.game(args.config.as_deref())?;
    let alphas = if args.alphas.is_empty() {
        vec![cfg.alpha]
    } else {
        args.alphas.clone()
    };
    for &a in &alphas {
        validate_alpha(a).map_err(|_| {
            CliError::usage(format!("alpha = {a} is outside the valid domain alpha > 1"))
        })?;
    }
    let observed = args.observed.as_deref().map(read_observed).transpose()?;

    let sweep = sweep_alpha(&spec, &alphas)?;
    let mut out = Outputs::new(&global.out, global.force);
    for r in &sweep {
        let m = build_payoff(&spec.with_alpha(r.alpha))?;
        out.add(format!("payoff_alpha_{}.csv", r.alpha), m.to_csv());
        out.add(format!("equilibrium_alpha_{}.csv", r.alpha), r.equilibrium.to_csv());
    }
    out.add_json(
        "equilibria.json",
        &GameReport {
            schema_version: kickout::SCHEMA_VERSION,
            config: &GameConfig {
                alpha: alphas[0],
                ..cfg.clone()
            },
            results: &sweep,
        },
    );
    out.add("strategies.svg", plot::strategies_svg(&sweep));
    if let (Some(obs), Some(path)) = (&observed, &args.observed) {
        let comparisons = sweep
            .iter()
            .map(|r| {
                Ok(AlphaComparison {
                    alpha: r.alpha,
                    comparison: compare_empirical(&r.equilibrium, obs)?,
                })
            })
            .collect::<Result<Vec<_>, kickout::game::GameError>>()?;
        out.add_json(
            "comparison.json",
            &ComparisonReport {
                schema_version: kickout::SCHEMA_VERSION,
                input: input_name(path),
                comparisons,
            },
        );
    }
    out.commit()
}

/// One distance per line; the first comma-separated field is used, `#` lines
/// and a non-numeric header are skipped.
fn read_observed(path: &Path) -> CliResult<Vec<f64>> {
    let text = read_text(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split(',').next().unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => values.push(v),
            Ok(v) => {
                return Err(CliError::usage(format!(
                    "{} line {}: distance {v} must be finite and >= 0",
                    path.display(),
                    i + 1
                )))
            }
            Err(_) if values.is_empty() && field.chars().any(char::is_alphabetic) => {}
            Err(_) => {
                return Err(CliError::usage(format!(
                    "{} line {}: cannot parse {field:?} as a distance",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::data(format!("{} holds no distances", path.display())));
    }
    Ok(values)
}
