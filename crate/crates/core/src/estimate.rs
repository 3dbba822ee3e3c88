//! Monte Carlo harness: seeded, order-independent parallel trials, summary
//! statistics, and comparison of estimates against exact targets.
//!
//! Trial `i` of an experiment with master seed `s` draws from the ChaCha8
//! stream `(s, i)`, so results do not depend on how trials are scheduled.
//! Samples are aggregated in trial order, which makes reports bit-identical
//! across worker counts.

use std::fmt;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closedform::{commute_time, cover_bounds, refined_commutes};
use crate::error::{Error, Result};
use crate::exact::edge_cover_return_time;
use crate::netmodel::{Network, Orientation, VertexId};
use crate::resistance::SplitSpec;
use crate::tours::{ordered_arc_epoch_mean, ClosedWalk};
use crate::walker::{
    EpochMode, RefinedKind, StoppingRule, TimingModel, WalkOutcome, Walker, DEFAULT_STEP_BUDGET,
};

pub const DEFAULT_SLACK_SIGMAS: f64 = 3.0;
pub const COMMUTE_TRIALS: u64 = 100_000;
pub const COVER_TRIALS: u64 = 20_000;

/// Running count, mean and sum of squared deviations. `merge` combines two
/// disjoint partial aggregates.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Summary {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Summary {
    pub fn from_samples(samples: &[f64]) -> Summary {
        let mut s = Summary::default();
        for &x in samples {
            s.push(x);
        }
        s
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&self, other: &Summary) -> Summary {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64;
        Summary { n, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}

/// Trial count, seed and parallelism for one experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Experiment {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub step_budget: u64,
}

impl Experiment {
    pub fn new(trials: u64, seed: u64) -> Experiment {
        Experiment {
            trials,
            seed,
            workers: None,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Experiment {
        self.workers = Some(workers.max(1));
        self
    }

    pub fn with_step_budget(mut self, budget: u64) -> Experiment {
        self.step_budget = budget;
        self
    }
}

/// Generator for trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs every trial, mapping each outcome through `extract`. Results come
/// back in trial order. The first failing trial (by index) is reported.
pub fn run_trials_with<T, F>(
    net: &Network,
    start: VertexId,
    rule: &StoppingRule<'_>,
    model: TimingModel,
    exp: &Experiment,
    extract: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(WalkOutcome) -> T + Sync,
{
    let walker = Walker::new(net, model).with_step_budget(exp.step_budget);
    let job = || {
        (0..exp.trials)
            .into_par_iter()
            .map(|i| {
                walker
                    .run(start, rule, &mut trial_rng(exp.seed, i))
                    .map(&extract)
                    .map_err(|e| (i, e))
            })
            .collect::<Vec<_>>()
    };
    let results = match exp.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    };
    results
        .into_iter()
        .map(|r| {
            r.map_err(|(trial, e)| Error::TrialFailed {
                trial,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn run_trials(
    net: &Network,
    start: VertexId,
    rule: &StoppingRule<'_>,
    model: TimingModel,
    exp: &Experiment,
) -> Result<Vec<WalkOutcome>> {
    run_trials_with(net, start, rule, model, exp, |o| o)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub rule: String,
    pub model: TimingModel,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
}

impl EstimateReport {
    pub fn from_summary(rule: String, model: TimingModel, seed: u64, s: &Summary) -> Self {
        let half = 1.96 * s.stderr();
        EstimateReport {
            rule,
            model,
            trials: s.count(),
            seed,
            mean: s.mean(),
            stderr: s.stderr(),
            ci95: (s.mean() - half, s.mean() + half),
        }
    }
}

fn require_trials(exp: &Experiment) -> Result<()> {
    if exp.trials < 2 {
        return Err(Error::TooFewTrials {
            needed: 2,
            got: exp.trials,
        });
    }
    Ok(())
}

/// Mean stop time of `rule` over `exp.trials` seeded walks from `start`.
pub fn estimate(
    net: &Network,
    start: VertexId,
    rule: &StoppingRule<'_>,
    model: TimingModel,
    exp: &Experiment,
) -> Result<EstimateReport> {
    require_trials(exp)?;
    let times = run_trials_with(net, start, rule, model, exp, |o| o.stop_time)?;
    Ok(EstimateReport::from_summary(
        rule.describe(),
        model,
        exp.seed,
        &Summary::from_samples(&times),
    ))
}

pub fn estimate_refined(
    spec: &SplitSpec<'_>,
    kind: RefinedKind,
    model: TimingModel,
    exp: &Experiment,
) -> Result<EstimateReport> {
    let rule = StoppingRule::RefinedCommute {
        kind,
        spec: spec.clone(),
    };
    estimate(spec.network(), spec.x(), &rule, model, exp)
}

pub fn estimate_vertex_cover(
    net: &Network,
    root: VertexId,
    with_return: bool,
    model: TimingModel,
    exp: &Experiment,
) -> Result<EstimateReport> {
    let rule = StoppingRule::VertexCover { root, with_return };
    estimate(net, root, &rule, model, exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonKind {
    Equality,
    UpperBound,
}

impl ComparisonKind {
    pub fn name(self) -> &'static str {
        match self {
            ComparisonKind::Equality => "equality",
            ComparisonKind::UpperBound => "upper_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonVerdict {
    pub estimate: EstimateReport,
    pub target: f64,
    pub kind: ComparisonKind,
    pub slack_sigmas: f64,
    pub pass: bool,
}

/// Equality passes when `|mean − target| ≤ slack·SE`; an upper bound passes
/// when `mean ≤ target + slack·SE`. A relative `1e-9` allowance absorbs
/// rounding when the estimate has zero spread.
pub fn compare(
    estimate: EstimateReport,
    target: f64,
    kind: ComparisonKind,
    slack_sigmas: f64,
) -> ComparisonVerdict {
    let allowance = slack_sigmas * estimate.stderr + 1e-9 * target.abs().max(1.0);
    let pass = match kind {
        ComparisonKind::Equality => (estimate.mean - target).abs() <= allowance,
        ComparisonKind::UpperBound => estimate.mean <= target + allowance,
    };
    ComparisonVerdict {
        estimate,
        target,
        kind,
        slack_sigmas,
        pass,
    }
}

/// A simulated quantity paired with the exact value or bound it should meet.
#[derive(Debug, Clone)]
pub enum Check<'n> {
    /// Commute time against `2 m R^{xy}`.
    Commute {
        x: VertexId,
        y: VertexId,
    },
    /// Refined commute time against its split formula.
    Refined {
        kind: RefinedKind,
        spec: SplitSpec<'n>,
    },
    /// Edge cover-and-return time against the exact absorbing-chain value.
    EdgeCoverExact {
        root: VertexId,
    },
    EdgeCoverBound {
        root: VertexId,
    },
    ArcCoverBound {
        root: VertexId,
    },
    DirectedCoverBound {
        root: VertexId,
        orientation: Orientation,
    },
    /// Final directed epoch against `2m²`.
    DirectedEpochs {
        walk: ClosedWalk,
        orientation: Orientation,
    },
    /// Final arc-mode epoch against its exact ordered-arc mean.
    ArcEpochs {
        walk: ClosedWalk,
    },
}

impl<'n> Check<'n> {
    fn rule_and_target(
        &self,
        net: &Network,
        model: TimingModel,
    ) -> Result<(VertexId, StoppingRule<'n>, f64, ComparisonKind)> {
        use ComparisonKind::*;
        let (edge_bound, arc_bound) = cover_bounds(net);
        Ok(match self {
            Check::Commute { x, y } => (
                *x,
                StoppingRule::Commute { x: *x, y: *y },
                commute_time(net, *x, *y)?,
                Equality,
            ),
            Check::Refined { kind, spec } => {
                let v = refined_commutes(spec);
                let target = match kind {
                    RefinedKind::Either => v.t_either,
                    RefinedKind::Forward => v.t_forward,
                    RefinedKind::Backward => v.t_backward,
                    RefinedKind::Both => v.t_both,
                };
                (
                    spec.x(),
                    StoppingRule::RefinedCommute {
                        kind: *kind,
                        spec: spec.clone(),
                    },
                    target,
                    Equality,
                )
            }
            Check::EdgeCoverExact { root } => (
                *root,
                StoppingRule::EdgeCoverReturn(*root),
                edge_cover_return_time(net, *root, model)?,
                Equality,
            ),
            Check::EdgeCoverBound { root } => (
                *root,
                StoppingRule::EdgeCoverReturn(*root),
                edge_bound,
                UpperBound,
            ),
            Check::ArcCoverBound { root } => (
                *root,
                StoppingRule::ArcCoverReturn(*root),
                arc_bound,
                UpperBound,
            ),
            Check::DirectedCoverBound { root, orientation } => (
                *root,
                StoppingRule::DirectedCoverReturn(*root, orientation.clone()),
                edge_bound,
                UpperBound,
            ),
            Check::DirectedEpochs { walk, orientation } => (
                walk.root(),
                StoppingRule::EpochSequence {
                    walk: walk.clone(),
                    mode: EpochMode::Directed(orientation.clone()),
                },
                edge_bound,
                Equality,
            ),
            Check::ArcEpochs { walk } => (
                walk.root(),
                StoppingRule::EpochSequence {
                    walk: walk.clone(),
                    mode: EpochMode::Arc,
                },
                ordered_arc_epoch_mean(net)?,
                Equality,
            ),
        })
    }
}

/// Estimates the check's quantity and compares it with a target computed
/// from the exact layer.
pub fn verify(
    net: &Network,
    check: &Check<'_>,
    model: TimingModel,
    exp: &Experiment,
    slack_sigmas: f64,
) -> Result<ComparisonVerdict> {
    let (start, rule, target, kind) = check.rule_and_target(net, model)?;
    let report = estimate(net, start, &rule, model, exp)?;
    Ok(compare(report, target, kind, slack_sigmas))
}

/// `%g`-style rendering with the given number of significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    // take the exponent after rounding (999999.7 → 1e6)
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, e) = sci.split_once('e').unwrap();
    let exp: i32 = e.parse().unwrap();
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One output row: an estimate, optionally judged against a target.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub estimate: EstimateReport,
    pub target: Option<(f64, ComparisonKind, bool)>,
}

impl From<EstimateReport> for ReportRow {
    fn from(estimate: EstimateReport) -> Self {
        ReportRow {
            estimate,
            target: None,
        }
    }
}

impl From<ComparisonVerdict> for ReportRow {
    fn from(v: ComparisonVerdict) -> Self {
        ReportRow {
            target: Some((v.target, v.kind, v.pass)),
            estimate: v.estimate,
        }
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "rule", "model", "trials", "seed", "mean", "stderr", "ci_lo", "ci_hi", "target", "kind", "pass",
];

impl ReportRow {
    pub fn fields(&self) -> [String; 11] {
        let e = &self.estimate;
        let g = |x: f64| format_sig(x, 6);
        let (target, kind, pass) = match self.target {
            Some((t, k, p)) => (g(t), k.name().to_string(), p.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        [
            e.rule.clone(),
            e.model.name().to_string(),
            e.trials.to_string(),
            e.seed.to_string(),
            g(e.mean),
            g(e.stderr),
            g(e.ci95.0),
            g(e.ci95.1),
            target,
            kind,
            pass,
        ]
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in CSV_HEADER.iter().zip(self.fields()) {
            if !value.is_empty() {
                writeln!(f, "{name:>7}: {value}")?;
            }
        }
        Ok(())
    }
}
