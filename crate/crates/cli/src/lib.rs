//! Command implementations behind the `threefree` binary.
//!
//! Each command returns a typed report; `main` only parses arguments,
//! serializes and maps errors to exit codes.

pub mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use threefree::decycler::{decycle, verify_certificate, within_bound, DecycleConfig, VerificationReport};
use threefree::digraph::Digraph;
use threefree::edgelist::{self, ParseError};
use threefree::exact::{beta_bruteforce, beta_subset_dp, SUBSET_DP_MAX_N};
use threefree::family::FamilySpec;
use threefree::mu::{
    condition3_check, derivative_iff_check, f_monotonicity_check, ineq_values, max_feasible_mu, BOUND_CONSTANT,
    GRID_POINTS, PRIOR_CONSTANTS,
};
use threefree::stats::{canonical_partition, margin_threshold, local_stats};
use threefree::{DecycleError, GraphError, MuError};

use report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    InfeasibleMu(MuError),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    /// 1 I/O, 2 usage (reserved for argument parsing), 3 parse, 4 validation,
    /// 5 infeasible mu, 6 failed check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse { .. } | CliError::Json(_) => 3,
            CliError::Validation(_) => 4,
            CliError::InfeasibleMu(_) => 5,
            CliError::CheckFailed(_) => 6,
        }
    }
}

impl From<DecycleError> for CliError {
    fn from(e: DecycleError) -> Self {
        match e {
            DecycleError::Mu(m) => CliError::InfeasibleMu(m),
            DecycleError::Graph(g) => CliError::Validation(g.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_graph(path: &Path) -> Result<(Digraph, usize), CliError> {
    let text = read_text(path)?;
    let loaded = edgelist::parse(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    Ok((loaded.graph, loaded.collapsed))
}

fn elapsed(start: Instant) -> Timings {
    Timings { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }
}

fn report<P>(command: &str, input: Option<InputDescriptor>, g: Option<&Digraph>, payload: P, start: Instant) -> Report<P> {
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        input,
        graph: g.map(GraphFacts::of),
        payload,
        timings: elapsed(start),
    }
}

pub fn cmd_gen(spec: &FamilySpec) -> Result<String, CliError> {
    let g = spec.generate().map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(edgelist::to_text(&g))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VerifyPayload {
    pub collapsed_duplicates: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
}

pub fn cmd_verify(g: &Digraph, collapsed: usize, input: InputDescriptor) -> Report<VerifyPayload> {
    let start = Instant::now();
    let cycle = match g.acyclicity() {
        threefree::digraph::Acyclicity::Cyclic(c) => Some(c),
        threefree::digraph::Acyclicity::Acyclic(_) => None,
    };
    report("verify", Some(input), Some(g), VerifyPayload { collapsed_duplicates: collapsed, cycle }, start)
}

pub fn cmd_stats(g: &Digraph, input: InputDescriptor, vertex: Option<usize>, mu: f64) -> Result<Report<StatsPayload>, CliError> {
    let start = Instant::now();
    if let Some(w) = g.three_free_check() {
        return Err(GraphError::NotThreeFree(w).into());
    }
    let pivots: Vec<usize> = match vertex {
        Some(v) if v >= g.n() => return Err(CliError::Validation(format!("vertex {v} is outside 0..{}", g.n()))),
        Some(v) => vec![v],
        None => (0..g.n()).collect(),
    };
    let vertices = pivots
        .into_iter()
        .map(|v| {
            let stats = local_stats(g, v)?;
            let canonical = canonical_partition(g, v)?;
            Ok(VertexEntry {
                margin_threshold: margin_threshold(stats.c.len(), canonical.e, mu),
                canonical: canonical.metrics(),
                stats,
            })
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    Ok(report("stats", Some(input), Some(g), StatsPayload { vertices }, start))
}

pub fn cmd_decycle(
    g: &Digraph,
    input: InputDescriptor,
    mu: f64,
    config: DecycleConfig,
) -> Result<Report<DecyclePayload>, CliError> {
    let start = Instant::now();
    let certificate = decycle(g, mu, config)?;
    let verification = verify_certificate(g, &certificate);
    Ok(report("decycle", Some(input), Some(g), DecyclePayload { config, certificate, verification }, start))
}

/// Outcome of a decycle run as a failure, if its certificate did not verify.
pub fn decycle_failure(r: &Report<DecyclePayload>) -> Option<CliError> {
    let failed: Vec<String> = r
        .payload
        .verification
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
        .collect();
    (!failed.is_empty()).then(|| CliError::CheckFailed(failed.join("; ")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    SubsetDp,
    BruteForce,
}

pub fn cmd_exact(g: &Digraph, input: InputDescriptor, method: ExactMethod) -> Result<Report<ExactPayload>, CliError> {
    let start = Instant::now();
    let (name, result) = match method {
        ExactMethod::SubsetDp => ("subset-dp", beta_subset_dp(g)),
        ExactMethod::BruteForce => ("bruteforce", beta_bruteforce(g)),
    };
    let result = result.map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(report("exact", Some(input), Some(g), ExactPayload { method: name.into(), result }, start))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuRequest {
    Evaluate(f64),
    Maximize { lo: f64, hi: f64, tol: f64 },
}

pub fn cmd_certify_mu(request: MuRequest) -> Result<Report<MuPayload>, CliError> {
    let start = Instant::now();
    let (mu_report, bracket) = match request {
        MuRequest::Evaluate(mu) => (ineq_values(mu).map_err(CliError::InfeasibleMu)?, None),
        MuRequest::Maximize { lo, hi, tol } => {
            (max_feasible_mu(lo, hi, tol).map_err(|e| CliError::Validation(e.to_string()))?, Some((lo, hi, tol)))
        }
    };
    let analytic = vec![
        condition3_check(0.0, 0.3, GRID_POINTS),
        f_monotonicity_check(mu_report.mu, 1000),
        derivative_iff_check(0.0, 0.3, GRID_POINTS),
    ];
    let payload = MuPayload {
        binding: mu_report.binding().into(),
        violated: mu_report.violated().into_iter().map(String::from).collect(),
        report: mu_report,
        bracket,
        published_constant: BOUND_CONSTANT,
        prior_constants: PRIOR_CONSTANTS.to_vec(),
        analytic,
    };
    Ok(report("certify-mu", None, None, payload, start))
}

/// Seed used for trial `trial` of a bench started at `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// Runs `trials` decycles of `spec`, in parallel, ordered by trial index.
/// Random families use [`trial_seed`]; `beta_exact` is filled in for graphs
/// with at most `exact_max_n` vertices.
pub fn bench(
    spec: &FamilySpec,
    trials: usize,
    seed: u64,
    mu: f64,
    config: DecycleConfig,
    exact_max_n: usize,
) -> Result<Vec<BenchRow>, CliError> {
    spec.validate().map_err(|e| CliError::Validation(e.to_string()))?;
    threefree::mu::require_feasible(mu).map_err(CliError::InfeasibleMu)?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let this = spec.with_seed(trial_seed(seed, trial));
            let g = this.generate().map_err(|e| CliError::Validation(e.to_string()))?;
            let cert = decycle(&g, mu, config)?;
            let x = cert.removed.len();
            let gamma = g.gamma();
            let beta = (g.n() <= exact_max_n.min(SUBSET_DP_MAX_N)).then(|| beta_subset_dp(&g).expect("size checked").beta);
            Ok(BenchRow {
                trial,
                seed: this.seed(),
                n: g.n(),
                m: g.edge_count(),
                gamma,
                x_size: x,
                beta_exact: beta,
                ratio_to_gamma: (gamma > 0).then(|| x as f64 / gamma as f64),
                ratio_to_beta: beta.filter(|&b| b > 0).map(|b| x as f64 / b as f64),
                bound_ok: within_bound(x, gamma) && cert.checks.acyclic_after_removal,
                rung_hits: cert.rung_hits,
            })
        })
        .collect()
}

pub fn bench_csv(spec: &FamilySpec, seed: u64, rows: &[BenchRow]) -> String {
    let mut out = format!("# schema_version={BENCH_SCHEMA_VERSION} family=\"{spec}\" seed={seed}\n");
    out.push_str(BenchRow::CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// One-line comparison of the worst observed `|X| / gamma` against the
/// published and earlier constants.
pub fn bench_summary(rows: &[BenchRow]) -> String {
    let worst = rows.iter().filter_map(|r| r.ratio_to_gamma).fold(0.0f64, f64::max);
    let failures = rows.iter().filter(|r| !r.bound_ok).count();
    let mut hits = threefree::decycler::RungHits::default();
    for r in rows {
        hits.add(&r.rung_hits);
    }
    format!(
        "{} trials, worst |X|/gamma = {worst:.4} (bound {BOUND_CONSTANT}, earlier bounds {:?}), {failures} bound failures, rung hits {}/{}/{}/{}",
        rows.len(),
        PRIOR_CONSTANTS,
        hits.canonical,
        hits.exhaustive_split,
        hits.exact_fallback,
        hits.best_effort
    )
}

pub fn cmd_verify_cert(g: &Digraph, report_json: &str) -> Result<VerificationReport, CliError> {
    let r: Report<DecyclePayload> =
        serde_json::from_str(report_json).map_err(|e| CliError::Json(format!("bad decycle report: {e}")))?;
    Ok(verify_certificate(g, &r.payload.certificate))
}
