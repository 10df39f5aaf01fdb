//! Command-line surface: `run`, `fuzz`, `duel`, and `table`.
//!
//! Reports go to stdout as JSON (or CSV for `table`); `--out FILE`
//! redirects. Exit codes: 0 when every checked bound is respected, 1 when a
//! violation or unreached duel bound was found, 2 on usage or IO errors.

use crate::adversary::{duel, AdversaryConfig, AdversaryKind};
use crate::algorithms::AlgorithmId;
use crate::exact::{parse_rat, Rat};
use crate::harness::{
    duel_report, fuzz_upper_bound, ratio_table, run_selected, run_simulation, FuzzConfig,
    SizeDistribution, Variant,
};
use crate::model::Instance;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "bufferknap",
    about = "Online knapsack with a resource buffer: algorithms, exact oracles, adversaries, and bound certification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on an instance file and report the ratio.
    Run(RunArgs),
    /// Fuzz an algorithm against its bound with seeded random instances.
    Fuzz(FuzzArgs),
    /// Play a lower-bound adversary against an algorithm.
    Duel(DuelArgs),
    /// Emit the lower/upper bound table on a capacity grid as CSV.
    Table(TableArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    /// Algorithm id (alg1, alg2, alg4..alg8) or "auto" for the selector.
    #[arg(long, default_value = "auto")]
    alg: String,
}

#[derive(Args)]
struct FuzzArgs {
    /// Variant: prop-removable, prop-nonremovable, gen-removable, gen-nonremovable.
    #[arg(long)]
    variant: Variant,
    /// Buffer capacity as p/q.
    #[arg(long, value_parser = parse_rat_arg)]
    r: Rat,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long = "n-max", default_value_t = 10)]
    n_max: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Sample half the sizes inside ±10⁻³ bands around class boundaries.
    #[arg(long = "knife-edge", default_value_t = false)]
    knife_edge: bool,
    /// Denominator bound for uniform rational sizes.
    #[arg(long = "denominator-bound", default_value_t = 10_000)]
    denominator_bound: u32,
    /// Explicit algorithm; defaults to the variant selector's choice.
    #[arg(long)]
    alg: Option<AlgorithmId>,
}

#[derive(Args)]
struct DuelArgs {
    /// Adversary kind (e.g. prop-nonrem-small, gen-rem-mid, prop-rem-iii).
    #[arg(long)]
    kind: AdversaryKind,
    #[arg(long, value_parser = parse_rat_arg)]
    r: Rat,
    /// The theorem's ε as p/q.
    #[arg(long, value_parser = parse_rat_arg)]
    eps: Rat,
    #[arg(long)]
    alg: AlgorithmId,
    /// Growth factor for gen-nonrem.
    #[arg(long, value_parser = parse_rat_arg, default_value = "10")]
    c: Rat,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    variant: Variant,
    #[arg(long = "r-min", value_parser = parse_rat_arg)]
    r_min: Rat,
    #[arg(long = "r-max", value_parser = parse_rat_arg)]
    r_max: Rat,
    #[arg(long, default_value_t = 50)]
    steps: u32,
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s)
}

fn parse_algorithm(s: &str) -> Result<Option<AlgorithmId>, String> {
    if s.eq_ignore_ascii_case("auto") {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version through this path
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(all_bounds_ok) => {
            if all_bounds_ok {
                0
            } else {
                1
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Run(args) => {
            let text = std::fs::read_to_string(&args.instance)
                .map_err(|e| format!("read {:?}: {e}", args.instance))?;
            let instance = Instance::from_json(&text).map_err(|e| e.to_string())?;
            let outcome = match parse_algorithm(&args.alg)? {
                Some(alg) => run_simulation(alg, &instance),
                None => run_selected(&instance),
            }
            .map_err(|e| e.to_string())?;
            let payload = serde_json::to_string_pretty(&outcome.report).unwrap();
            emit(&cli.out, &payload)?;
            Ok(outcome.report.within_bound)
        }
        Command::Fuzz(args) => {
            let distribution = if args.knife_edge {
                SizeDistribution::KnifeEdge { denominator_bound: args.denominator_bound }
            } else {
                SizeDistribution::UniformRational { denominator_bound: args.denominator_bound }
            };
            let config = FuzzConfig {
                trials: args.trials,
                n_max: args.n_max,
                seed: args.seed,
                distribution,
                mode: args.variant.mode,
                removability: args.variant.removability,
                r: args.r.clone(),
                algorithm: args.alg,
            };
            let outcome = fuzz_upper_bound(&config).map_err(|e| e.to_string())?;
            let payload = serde_json::to_string_pretty(&serde_json::json!({
                "algorithm": outcome.algorithm,
                "trials": outcome.trials,
                "bound": outcome.bound.to_decimal(crate::harness::report_precision()),
                "violations": outcome.violations.len(),
                "worst": outcome.worst.as_ref().map(|(trial, report)| serde_json::json!({
                    "trial": trial,
                    "report": report,
                })),
            }))
            .unwrap();
            emit(&cli.out, &payload)?;
            Ok(outcome.violations.is_empty())
        }
        Command::Duel(args) => {
            let mut config = AdversaryConfig::new(args.kind, args.r.clone(), args.eps.clone());
            config.growth_c = args.c.clone();
            let result = duel(&config, args.alg).map_err(|e| e.to_string())?;
            let payload = serde_json::to_string_pretty(&duel_report(&result)).unwrap();
            emit(&cli.out, &payload)?;
            Ok(result.achieved)
        }
        Command::Table(args) => {
            let rows = ratio_table(
                args.variant.mode,
                args.variant.removability,
                &args.r_min,
                &args.r_max,
                args.steps,
            );
            let payload = crate::harness::table_csv(&rows);
            emit(&cli.out, payload.trim_end())?;
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duel_subcommand_exit_codes() {
        let code = main_with_args([
            "bufferknap",
            "duel",
            "--kind",
            "prop-nonrem-small",
            "--r",
            "5/4",
            "--eps",
            "1/100",
            "--alg",
            "alg1",
        ]);
        assert_eq!(code, 0);
        // unknown kind is a usage error
        let code = main_with_args([
            "bufferknap",
            "duel",
            "--kind",
            "nope",
            "--r",
            "5/4",
            "--eps",
            "1/100",
            "--alg",
            "alg1",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn table_subcommand_writes_csv() {
        let dir = std::env::temp_dir().join("bufferknap-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("table.csv");
        let code = main_with_args([
            "bufferknap",
            "--out",
            out.to_str().unwrap(),
            "table",
            "--variant",
            "prop-removable",
            "--r-min",
            "1",
            "--r-max",
            "3/2",
            "--steps",
            "11",
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("R,lower,upper,algorithm"));
        assert_eq!(text.lines().count(), 12);
    }

    #[test]
    fn fuzz_subcommand_smoke() {
        let code = main_with_args([
            "bufferknap",
            "fuzz",
            "--variant",
            "prop-removable",
            "--r",
            "1/1",
            "--trials",
            "50",
            "--n-max",
            "6",
            "--seed",
            "7",
            "--alg",
            "alg5",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn run_subcommand_roundtrip() {
        let dir = std::env::temp_dir().join("bufferknap-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let inst = dir.join("instance.json");
        std::fs::write(
            &inst,
            r#"{"R":"3/2","mode":"proportional","removability":"non-removable",
               "items":[{"size":"3/5","value":"3/5"},{"size":"4/5","value":"4/5"},{"size":"2/5","value":"2/5"}]}"#,
        )
        .unwrap();
        let code =
            main_with_args(["bufferknap", "run", "--instance", inst.to_str().unwrap(), "--alg", "alg1"]);
        assert_eq!(code, 0);
        // missing file is an IO error
        let code = main_with_args([
            "bufferknap",
            "run",
            "--instance",
            "/nonexistent/instance.json",
            "--alg",
            "alg1",
        ]);
        assert_eq!(code, 2);
    }
}
