//! JSON report and CSV row schemas.

use serde::{Deserialize, Serialize};

use threefree::decycler::{DecycleConfig, DecyclingCertificate, RungHits, VerificationReport};
use threefree::digraph::{Digraph, FreenessWitness};
use threefree::exact::ExactResult;
use threefree::mu::{AnalyticCheck, MuReport};
use threefree::stats::{PartitionMetrics, VertexStats};

pub const SCHEMA_VERSION: u32 = 1;
pub const BENCH_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputDescriptor {
    File(String),
    /// Canonical family text, e.g. `random_repaired n=12 p=0.4 seed=7`.
    Family(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFacts {
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub three_free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FreenessWitness>,
    pub acyclic: bool,
}

impl GraphFacts {
    pub fn of(g: &Digraph) -> Self {
        let witness = g.three_free_check();
        GraphFacts {
            n: g.n(),
            m: g.edge_count(),
            gamma: g.gamma(),
            three_free: witness.is_none(),
            witness,
            acyclic: g.is_acyclic(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<P> {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFacts>,
    pub payload: P,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecyclePayload {
    pub config: DecycleConfig,
    pub certificate: DecyclingCertificate,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactPayload {
    pub method: String,
    pub result: ExactResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuPayload {
    pub report: MuReport,
    /// Condition with the least slack.
    pub binding: String,
    pub violated: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64, f64)>,
    pub published_constant: f64,
    pub prior_constants: Vec<f64>,
    pub analytic: Vec<AnalyticCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    #[serde(flatten)]
    pub stats: VertexStats,
    pub canonical: PartitionMetrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsPayload {
    pub vertices: Vec<VertexEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub trial: usize,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub x_size: usize,
    pub beta_exact: Option<usize>,
    pub ratio_to_gamma: Option<f64>,
    pub ratio_to_beta: Option<f64>,
    pub bound_ok: bool,
    pub rung_hits: RungHits,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str =
        "trial,seed,n,m,gamma,x_size,beta_exact,ratio_to_gamma,ratio_to_beta,bound_ok,rung_hits";

    /// `rung_hits` is `canonical;exhaustive_split;exact_fallback;best_effort`.
    pub fn to_csv(&self) -> String {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let h = &self.rung_hits;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{};{};{};{}",
            self.trial,
            opt(self.seed),
            self.n,
            self.m,
            self.gamma,
            self.x_size,
            opt(self.beta_exact),
            opt(self.ratio_to_gamma.map(|r| format!("{r:.6}"))),
            opt(self.ratio_to_beta.map(|r| format!("{r:.6}"))),
            self.bound_ok,
            h.canonical,
            h.exhaustive_split,
            h.exact_fallback,
            h.best_effort
        )
    }
}
