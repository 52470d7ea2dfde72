use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use divclass::curve::{parse_model, parse_points};
use divclass::report::{parse_level_range, render_text, run, run_corpus, RunConfig};
use divclass::Result;

/// Lower bounds on the p-part of the class number of Q(E[p^n]).
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "corpus")]
    curve: Option<String>,
    /// Mordell-Weil generators, e.g. "(-6,38);(6,-1)".
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    gens: String,
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Level or range of levels, e.g. 3 or 1..5.
    #[arg(long, default_value = "1..5")]
    n: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    verify_group_theory: bool,
    /// Run a JSON-lines corpus instead of a single curve.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    precision_guard: u32,
    #[arg(long, default_value_t = 10_000)]
    prime_budget: u64,
}

fn single(cli: &Cli, curve: &str) -> Result<i32> {
    let model = parse_model(curve)?;
    let gens = parse_points(&cli.gens)?;
    let (a, b) = parse_level_range(&cli.n)?;
    let mut cfg = RunConfig::new(model, gens, cli.p, a, b);
    cfg.precision_guard = cli.precision_guard;
    cfg.prime_budget = cli.prime_budget;
    cfg.verify_group_theory = cli.verify_group_theory;
    let report = run(&cfg)?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    Ok(report.exit_code())
}

fn corpus(cli: &Cli, path: &PathBuf) -> Result<i32> {
    let out = run_corpus(path, cli.prime_budget)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("outcome serialises"));
    } else {
        print!("{}", out.table());
    }
    Ok(if out.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match (&cli.corpus, &cli.curve) {
        (Some(p), _) => corpus(&cli, p),
        (None, Some(c)) => single(&cli, c),
        (None, None) => unreachable!("clap enforces --curve or --corpus"),
    };
    match res {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
