use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use threefree::decycler::DecycleConfig;
use threefree::family::FamilySpec;
use threefree::mu::{BISECTION_TOL, DEFAULT_MU};
use threefree_cli::report::InputDescriptor;
use threefree_cli::*;

/// Certified decycling of 3-free digraphs.
#[derive(Parser)]
#[command(name = "threefree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a family and write it as an edge list.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report n, m, gamma, 3-freeness and acyclicity of an edge-list file.
    Verify { input: PathBuf },
    /// Dump per-vertex neighbourhood statistics and canonical partitions.
    Stats {
        input: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MU)]
        mu: f64,
        /// Emit one CSV row per vertex instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Remove a certified decycling set.
    Decycle {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MU)]
        mu: f64,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum feedback arc set.
    Exact {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
    },
    /// Evaluate the margin conditions at mu, or find the largest admissible mu.
    CertifyMu {
        #[arg(long, default_value_t = DEFAULT_MU, conflicts_with = "maximize")]
        mu: f64,
        #[arg(long)]
        maximize: bool,
        #[arg(long, default_value_t = DEFAULT_MU)]
        lo: f64,
        #[arg(long, default_value_t = 0.17)]
        hi: f64,
        #[arg(long, default_value_t = BISECTION_TOL)]
        tol: f64,
    },
    /// Decycle many generated graphs and emit one row per trial.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_MU)]
        mu: f64,
        #[command(flatten)]
        caps: CapArgs,
        /// Compute exact beta for graphs up to this size.
        #[arg(long, default_value_t = 16)]
        exact_max_n: usize,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a saved decycle report against its graph.
    VerifyCert { graph: PathBuf, report: PathBuf },
}

#[derive(Args)]
struct FamilyArgs {
    /// circulant, cycle_blowup (blowup), random_repaired (repaired), random_dag (dag)
    #[arg(long)]
    family: Option<String>,
    /// Full family text instead of individual flags, e.g. "circulant n=9 steps=1,2".
    #[arg(long, conflicts_with = "family")]
    spec: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    steps: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, default_value_t = DecycleConfig::default().exhaustive_split_cap)]
    split_cap: usize,
    #[arg(long, default_value_t = DecycleConfig::default().exact_cap)]
    exact_cap: usize,
}

impl CapArgs {
    fn config(&self) -> DecycleConfig {
        DecycleConfig { exhaustive_split_cap: self.split_cap, exact_cap: self.exact_cap }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dp,
    Brute,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, CliError> {
        let bad = |e: threefree::FamilyError| CliError::Validation(e.to_string());
        if let Some(text) = &self.spec {
            return text.parse().map_err(bad);
        }
        let family = self.family.as_deref().ok_or_else(|| CliError::Validation("need --family or --spec".into()))?;
        let need_n = || self.n.ok_or_else(|| CliError::Validation(format!("{family} needs --n")));
        let need_p = || self.p.ok_or_else(|| CliError::Validation(format!("{family} needs --p")));
        let spec = match family {
            "circulant" => FamilySpec::Circulant { n: need_n()?, steps: self.steps.clone() },
            "cycle_blowup" | "blowup" => FamilySpec::CycleBlowup { sizes: self.sizes.clone() },
            "random_repaired" | "repaired" => FamilySpec::RandomRepaired { n: need_n()?, p: need_p()?, seed: self.seed },
            "random_dag" | "dag" => FamilySpec::RandomDag { n: need_n()?, p: need_p()?, seed: self.seed },
            other => return Err(CliError::Validation(format!("unknown family {other:?}"))),
        };
        spec.validate().map_err(bad)?;
        Ok(spec)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn file_input(path: &Path) -> InputDescriptor {
    InputDescriptor::File(path.display().to_string())
}

fn configure_threads() {
    if let Some(n) = std::env::var("THREEFREE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { family, out } => emit(out.as_deref(), &cmd_gen(&family.spec()?)?),
        Command::Verify { input } => {
            let (g, collapsed) = load_graph(&input)?;
            emit(None, &json(&cmd_verify(&g, collapsed, file_input(&input))))
        }
        Command::Stats { input, vertex, mu, csv } => {
            let (g, _) = load_graph(&input)?;
            let r = cmd_stats(&g, file_input(&input), vertex, mu)?;
            if csv {
                let mut text = String::from("v,a,b,c,g,t,big_m,rho,tau,e\n");
                for entry in &r.payload.vertices {
                    let s = &entry.stats;
                    let p = &entry.canonical;
                    text.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}\n",
                        s.v,
                        s.a.len(),
                        s.b.len(),
                        s.c.len(),
                        s.g,
                        s.t,
                        s.big_m,
                        p.rho,
                        p.tau,
                        p.e
                    ));
                }
                emit(None, &text)
            } else {
                emit(None, &json(&r))
            }
        }
        Command::Decycle { input, mu, caps, out } => {
            let (g, _) = load_graph(&input)?;
            let r = cmd_decycle(&g, file_input(&input), mu, caps.config())?;
            emit(out.as_deref(), &json(&r))?;
            decycle_failure(&r).map_or(Ok(()), Err)
        }
        Command::Exact { input, method } => {
            let (g, _) = load_graph(&input)?;
            let method = match method {
                MethodArg::Dp => ExactMethod::SubsetDp,
                MethodArg::Brute => ExactMethod::BruteForce,
            };
            emit(None, &json(&cmd_exact(&g, file_input(&input), method)?))
        }
        Command::CertifyMu { mu, maximize, lo, hi, tol } => {
            let request = if maximize { MuRequest::Maximize { lo, hi, tol } } else { MuRequest::Evaluate(mu) };
            let r = cmd_certify_mu(request)?;
            emit(None, &json(&r))?;
            if !r.payload.report.feasible {
                return Err(CliError::InfeasibleMu(threefree::MuError::Infeasible(
                    r.payload.report.mu,
                    r.payload.report.violated()[0],
                )));
            }
            match r.payload.analytic.iter().find(|c| !c.pass) {
                Some(c) => Err(CliError::CheckFailed(format!("{:?}", c.name))),
                None => Ok(()),
            }
        }
        Command::Bench { family, trials, mu, caps, exact_max_n, json: as_json, out } => {
            let spec = family.spec()?;
            let seed = spec.seed().unwrap_or(family.seed);
            let rows = bench(&spec, trials, seed, mu, caps.config(), exact_max_n)?;
            eprintln!("{}", bench_summary(&rows));
            let text = if as_json { json(&rows) } else { bench_csv(&spec, seed, &rows) };
            emit(out.as_deref(), &text)?;
            let failures = rows.iter().filter(|r| !r.bound_ok).count();
            if failures > 0 {
                return Err(CliError::CheckFailed(format!("{failures} trials violated the bound")));
            }
            Ok(())
        }
        Command::VerifyCert { graph, report } => {
            let (g, _) = load_graph(&graph)?;
            let text = read_text(&report)?;
            let verification = cmd_verify_cert(&g, &text)?;
            emit(None, &json(&verification))?;
            if verification.ok {
                Ok(())
            } else {
                let names: Vec<_> = verification.failures().map(|c| c.name.clone()).collect();
                Err(CliError::CheckFailed(names.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("threefree: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
