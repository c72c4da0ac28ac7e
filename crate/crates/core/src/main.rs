use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use itwrc::gaussian::{quantize_to_dm, GaussianItwrc, Placement};
use itwrc::io::{self, frontier_csv, frontier_json, polytope_json, to_versioned_json};
use itwrc::schemes::{evaluate, SchemeInput, SchemeKind};
use itwrc::search::{trace_frontier, Cardinalities, SearchBudget};
use itwrc::verify::{run_verification, VerifyConfig};
use itwrc::{svg, Error};

/// Rate regions of the three-end-node interference two-way relay channel.
#[derive(Parser)]
#[command(name = "itwrc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scheme for a fixed input distribution.
    Evaluate {
        #[arg(long)]
        channel: PathBuf,
        /// cutset, df_nors, df_rs, pdfcf or cf
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace best-known frontiers by searching over input distributions.
    Frontier {
        #[arg(long)]
        channel: PathBuf,
        /// Comma-separated list of schemes.
        #[arg(long, default_value = "cutset,df_nors,df_rs,pdfcf")]
        schemes: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Number of weight directions.
        #[arg(long, default_value_t = 9)]
        weights: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG overlay of all frontiers.
        #[arg(long)]
        svg: bool,
    },
    /// Cross-check closed-form regions against their projected systems.
    Verify {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantize a Gaussian scenario into a discrete channel file.
    Gaussian {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels_in: usize,
        #[arg(long, default_value_t = 8)]
        levels_out: usize,
        #[arg(long, default_value_t = 4.0)]
        clip: f64,
        /// gauss_quantile or uniform
        #[arg(long, default_value = "gauss_quantile")]
        placement: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// JSON budget file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    /// Cardinality of every U and V auxiliary.
    #[arg(long)]
    aux: Option<usize>,
    /// Compression alphabet size.
    #[arg(long)]
    yhat: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> itwrc::Result<SearchBudget> {
        let mut b: SearchBudget = match &self.config {
            Some(p) => io::read_versioned(p)?,
            None => SearchBudget::default(),
        };
        b.seed = self.seed.unwrap_or(b.seed);
        b.restarts = self.restarts.unwrap_or(b.restarts);
        b.sweeps = self.sweeps.unwrap_or(b.sweeps);
        b.grid_resolution = self.grid.unwrap_or(b.grid_resolution);
        if let Some(n) = self.aux {
            b.cardinalities = Cardinalities {
                u0: n,
                u2: n,
                u2c: n,
                u2p: n,
                v0: n,
                v2: n,
                ..b.cardinalities
            };
        }
        if self.yhat.is_some() {
            b.cardinalities.yhat = self.yhat;
        }
        b.validate()?;
        Ok(b)
    }
}

enum Failure {
    Error(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn parse_schemes(list: &str) -> itwrc::Result<Vec<SchemeKind>> {
    let mut v: Vec<SchemeKind> = list.split(',').map(|s| s.trim().parse()).collect::<itwrc::Result<_>>()?;
    v.dedup();
    if v.is_empty() {
        return Err(Error::InvalidParameter("no schemes given".into()));
    }
    Ok(v)
}

fn cmd_evaluate(channel: &Path, scheme: &str, input: &Path, out: &Path) -> itwrc::Result<()> {
    let spec = io::read_channel(channel)?;
    let input: SchemeInput = io::read_scheme_input(input)?;
    if input.scheme_name() != scheme {
        return Err(Error::InvalidInput(format!(
            "input file holds a {} input but --scheme is {scheme}",
            input.scheme_name()
        )));
    }
    let e = evaluate(&spec, &input)?;
    let body = json!({
        "scheme": scheme,
        "region": polytope_json(&e.region)?,
        "compression": e.compression,
    });
    io::write(&out.join("region.json"), &to_versioned_json(&body)?)?;
    if let Some(c) = &e.compression {
        println!(
            "compression {}: max side-information rate {:.9} vs min relay rate {:.9}",
            if c.feasible { "feasible" } else { "INFEASIBLE (region empty)" },
            c.lhs,
            c.rhs
        );
    }
    for c in e.region.constraints() {
        println!("{:>14.9}  {}", c.bound, c.label);
    }
    Ok(())
}

fn cmd_frontier(channel: &Path, schemes: &str, budget: &SearchBudget, weights: usize, out: &Path, with_svg: bool) -> itwrc::Result<()> {
    let spec = io::read_channel(channel)?;
    let kinds = parse_schemes(schemes)?;
    let mut traced = Vec::new();
    for kind in kinds {
        let t = trace_frontier(kind, &spec, budget, weights)?;
        io::write(&out.join(format!("{kind}.csv")), &frontier_csv(&t.frontier))?;
        io::write(&out.join(format!("{kind}.json")), &to_versioned_json(&frontier_json(&t))?)?;
        println!("{kind}: {} frontier points", t.frontier.points.len());
        traced.push(t);
    }
    if with_svg {
        let series: Vec<(&str, &itwrc::RegionFrontier)> = traced.iter().map(|t| (t.scheme.name(), &t.frontier)).collect();
        io::write(&out.join("frontier.svg"), &svg::render(&series))?;
    }
    Ok(())
}

fn cmd_verify(channel: &Path, config: VerifyConfig, out: Option<&Path>) -> Result<(), Failure> {
    let spec = io::read_channel(channel)?;
    let report = run_verification(&spec, &config, &SearchBudget::default())?;
    for c in &report.checks {
        eprintln!(
            "{} {} (max deviation {:e}, tolerance {:e}, {} instances)",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.max_deviation,
            c.tolerance,
            c.instances
        );
    }
    let text = to_versioned_json(&report).map_err(Failure::Error)?;
    match out {
        Some(p) => io::write(p, &text)?,
        None => print!("{text}"),
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_gaussian(scenario: &Path, n_in: usize, n_out: usize, clip: f64, placement: &str, out: &Path) -> itwrc::Result<()> {
    let g: GaussianItwrc = io::read_versioned(scenario)?;
    let placement: Placement = serde_json::from_value(json!(placement))
        .map_err(|_| Error::InvalidParameter(format!("unknown placement '{placement}'")))?;
    let spec = quantize_to_dm(&g, n_in, n_out, clip, placement)?;
    io::write(out, &to_versioned_json(&spec)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Evaluate {
            channel,
            scheme,
            input,
            out,
        } => cmd_evaluate(&channel, &scheme, &input, &out)?,
        Command::Frontier {
            channel,
            schemes,
            budget,
            weights,
            out,
            svg,
        } => cmd_frontier(&channel, &schemes, &budget.resolve()?, weights, &out, svg)?,
        Command::Verify {
            channel,
            samples,
            seed,
            grid,
            out,
        } => {
            let config = VerifyConfig {
                samples,
                seed,
                grid,
                ..VerifyConfig::default()
            };
            cmd_verify(&channel, config, out.as_deref())?
        }
        Command::Gaussian {
            scenario,
            levels_in,
            levels_out,
            clip,
            placement,
            out,
        } => cmd_gaussian(&scenario, levels_in, levels_out, clip, &placement, &out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(4),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
