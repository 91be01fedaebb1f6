//! Numeric certification of the margin parameter `mu`.
//!
//! A margin `mu` is admissible when the four polynomial conditions
//!
//! ```text
//! (I)   4mu^2 + 5mu - 1                      <= 0
//! (II)  24mu^4 + 49mu^3 + 8mu^2 - 19mu + 2    <= 0
//! (III) 8mu^3 + 20mu^2 + 13mu - 5             <= 0
//! (IV)  32mu^4 - 8mu^3 - 159mu^2 - 130mu + 25 >= 0
//! ```
//!
//! all hold. Each admissible `mu` yields the decycling bound `1/(1+mu) * gamma`.
//! Polynomials are evaluated in Horner form, highest coefficient first.

use serde::{Deserialize, Serialize};

use crate::error::MuError;

/// The published margin.
pub const DEFAULT_MU: f64 = 0.16065;
/// The published bound constant: `|X| <= 0.8616 * gamma`.
pub const BOUND_CONSTANT: f64 = 0.8616;
/// [`BOUND_CONSTANT`] as an exact fraction, for integer bound checks.
pub const BOUND_NUMERATOR: u64 = 8616;
pub const BOUND_DENOMINATOR: u64 = 10_000;
/// Earlier constants, reported for comparison only.
pub const PRIOR_CONSTANTS: [f64; 2] = [1.0, 0.88];

pub const BISECTION_TOL: f64 = 1e-9;
pub const MONOTONICITY_SLACK: f64 = 1e-12;
pub const GRID_POINTS: usize = 10_001;

const P1: [f64; 3] = [4.0, 5.0, -1.0];
const P2: [f64; 5] = [24.0, 49.0, 8.0, -19.0, 2.0];
const P3: [f64; 4] = [8.0, 20.0, 13.0, -5.0];
const P4: [f64; 5] = [32.0, -8.0, -159.0, -130.0, 25.0];

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

pub fn p1(mu: f64) -> f64 {
    horner(&P1, mu)
}

pub fn p2(mu: f64) -> f64 {
    horner(&P2, mu)
}

pub fn p3(mu: f64) -> f64 {
    horner(&P3, mu)
}

pub fn p4(mu: f64) -> f64 {
    horner(&P4, mu)
}

pub fn is_feasible(mu: f64) -> bool {
    p1(mu) <= 0.0 && p2(mu) <= 0.0 && p3(mu) <= 0.0 && p4(mu) >= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuReport {
    pub mu: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub feasible: bool,
    /// `1/(1+mu)`.
    pub constant: f64,
}

impl MuReport {
    /// Name of the condition with the least slack.
    pub fn binding(&self) -> &'static str {
        let slacks = [(self.p1.abs(), "I"), (self.p2.abs(), "II"), (self.p3.abs(), "III"), (self.p4.abs(), "IV")];
        slacks
            .iter()
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|&(_, name)| name)
            .unwrap()
    }

    /// Names of the violated conditions.
    pub fn violated(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.p1 > 0.0 {
            out.push("I");
        }
        if self.p2 > 0.0 {
            out.push("II");
        }
        if self.p3 > 0.0 {
            out.push("III");
        }
        if self.p4 < 0.0 {
            out.push("IV");
        }
        out
    }
}

pub fn ineq_values(mu: f64) -> Result<MuReport, MuError> {
    if mu < 0.0 || mu.is_nan() {
        return Err(MuError::Negative(mu));
    }
    Ok(MuReport {
        mu,
        p1: p1(mu),
        p2: p2(mu),
        p3: p3(mu),
        p4: p4(mu),
        feasible: is_feasible(mu),
        constant: 1.0 / (1.0 + mu),
    })
}

/// Rejects a margin that fails any of the four conditions.
pub fn require_feasible(mu: f64) -> Result<MuReport, MuError> {
    let report = ineq_values(mu)?;
    match report.violated().first() {
        None => Ok(report),
        Some(name) => Err(MuError::Infeasible(mu, name)),
    }
}

/// Bisection on feasibility between a feasible `lo` and an infeasible `hi`.
/// Returns a feasible `mu` within `tol` of the boundary.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
pub fn max_feasible_mu(lo: f64, hi: f64, tol: f64) -> Result<MuReport, MuError> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(MuError::Bracket { lo, hi, reason: "need lo < hi and tol > 0" });
    }
    if !ineq_values(lo)?.feasible {
        return Err(MuError::Bracket { lo, hi, reason: "lo is infeasible" });
    }
    if ineq_values(hi)?.feasible {
        return Err(MuError::Bracket { lo, hi, reason: "hi is feasible" });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if is_feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ineq_values(lo)
}

/// `f(x) = mu(1+mu) (1+mu + sqrt((1+mu)^2 + 4(1+mu)x)) / 2 + (4mu^2+5mu-1) x / 4`
/// on `x ∈ [0, 1/4]`.
pub fn f_eval(x: f64, mu: f64) -> Result<f64, MuError> {
    if !(0.0..=0.25).contains(&x) {
        return Err(MuError::OutOfRange(x));
    }
    Ok(f_unchecked(x, mu))
}

fn f_unchecked(x: f64, mu: f64) -> f64 {
    let s = 1.0 + mu;
    mu * s * (s + (s * s + 4.0 * s * x).sqrt()) / 2.0 + p1(mu) * x / 4.0
}

/// `f'(x) = mu(1+mu)^2 / sqrt((1+mu)^2 + 4(1+mu)x) + (4mu^2+5mu-1)/4`.
pub fn f_derivative(x: f64, mu: f64) -> f64 {
    let s = 1.0 + mu;
    mu * s * s / (s * s + 4.0 * s * x).sqrt() + p1(mu) / 4.0
}

/// `f(1/4) - 1/4`. The strict inequality `1/4 < f(1/4)` is the condition that
/// must fail at an admissible `mu`.
pub fn condition3_margin(mu: f64) -> f64 {
    f_unchecked(0.25, mu) - 0.25
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Condition3Equivalence,
    FMonotonicity,
    DerivativeIff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCheck {
    pub name: CheckName,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub grid_points: usize,
    /// Grid points where the claim applied (hypotheses held).
    pub evaluated: usize,
    /// Grid points where the claim failed.
    pub disagreements: usize,
    pub worst_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = if points > 1 { (hi - lo) / (points - 1) as f64 } else { 0.0 };
    (0..points).map(move |i| lo + step * i as f64)
}

struct Tally {
    evaluated: usize,
    disagreements: usize,
    worst: f64,
}

impl Tally {
    fn new() -> Self {
        Tally { evaluated: 0, disagreements: 0, worst: 0.0 }
    }

    /// Records a sign comparison; `margin` is how far the disagreeing point
    /// sits from either side's boundary.
    fn record(&mut self, agree: bool, margin: f64) {
        self.evaluated += 1;
        if !agree {
            self.disagreements += 1;
            self.worst = self.worst.max(margin);
        }
    }

    fn finish(self, name: CheckName, lo: f64, hi: f64, points: usize, tolerance: f64) -> AnalyticCheck {
        AnalyticCheck {
            name,
            grid_lo: lo,
            grid_hi: hi,
            grid_points: points,
            evaluated: self.evaluated,
            disagreements: self.disagreements,
            worst_violation: self.worst,
            tolerance,
            pass: self.worst <= tolerance,
        }
    }
}

/// Over a `mu` grid, wherever (III) holds: `1/4 < f(1/4)` iff `p4 < 0`.
pub fn condition3_check(lo: f64, hi: f64, points: usize) -> AnalyticCheck {
    let mut tally = Tally::new();
    for mu in grid(lo, hi, points).filter(|&mu| p3(mu) <= 0.0) {
        let margin = condition3_margin(mu);
        tally.record((margin > 0.0) == (p4(mu) < 0.0), margin.abs().min(p4(mu).abs()));
    }
    tally.finish(CheckName::Condition3Equivalence, lo, hi, points, MONOTONICITY_SLACK)
}

/// Over a `mu` grid, wherever (I) holds: `f'(1/4) >= 0` iff `p2 <= 0`.
pub fn derivative_iff_check(lo: f64, hi: f64, points: usize) -> AnalyticCheck {
    let mut tally = Tally::new();
    for mu in grid(lo, hi, points).filter(|&mu| p1(mu) <= 0.0) {
        let d = f_derivative(0.25, mu);
        tally.record((d >= 0.0) == (p2(mu) <= 0.0), d.abs().min(p2(mu).abs()));
    }
    tally.finish(CheckName::DerivativeIff, lo, hi, points, MONOTONICITY_SLACK)
}

/// `f(., mu)` is nondecreasing on `[0, 1/4]`: forward differences on a
/// `points`-point grid are all `>= -slack`, and the analytic derivative at
/// every grid point is at least its value at `x = 1/4`, which is `>= 0`.
pub fn f_monotonicity_check(mu: f64, points: usize) -> AnalyticCheck {
    let mut tally = Tally::new();
    let xs: Vec<f64> = grid(0.0, 0.25, points).collect();
    let floor = f_derivative(0.25, mu);
    tally.record(floor >= 0.0, -floor);
    for w in xs.windows(2) {
        let diff = f_unchecked(w[1], mu) - f_unchecked(w[0], mu);
        tally.record(diff >= -MONOTONICITY_SLACK, -diff);
    }
    for &x in &xs {
        let d = f_derivative(x, mu);
        tally.record(d >= floor - MONOTONICITY_SLACK, floor - d);
    }
    tally.finish(CheckName::FMonotonicity, 0.0, 0.25, points, MONOTONICITY_SLACK)
}
