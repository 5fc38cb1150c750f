//! Random r-graphs `H^(r)(n, p)` and Monte Carlo threshold experiments.
//!
//! Every r-subset of `[n]` gets one uniform variate per trial and is an edge
//! iff its variate is below `p`. Variates come from a ChaCha8 stream indexed
//! by the subset's lexicographic rank, so samples do not depend on iteration
//! order or thread count. A trial's seed depends on the master seed, `n` and
//! the trial index but not on `p`: the same trial at a larger `p` sees a
//! superset of edges, so every monotone event is samplewise monotone in `p`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_traits::{ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrowing::{arrows, ArrowError, ArrowInstance, ArrowOutcome, SearchConfig};
use crate::classes::{classify, ClassError};
use crate::containment::{partition_condition_holds, ContainmentError};
use crate::density::{self, DensityError, Rational};
use crate::hypergraph::{contains_copy, r_subsets, Hypergraph, MAX_VERTICES};

/// Default number of trials per probe.
pub const DEFAULT_TRIALS: usize = 200;
/// Default bisection width: twelve halvings of `[0, 1]`.
pub const DEFAULT_TOL: f64 = 1.0 / 4096.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{exhausted} of {trials} trials exhausted the budget at n = {n}, p = {p}")]
    Unknown {
        n: usize,
        p: f64,
        trials: usize,
        exhausted: usize,
    },
    #[error("no crossing of 1/2 on [0, 1] at n = {n}: phat(0) = {low}, phat(1) = {high}")]
    NonBracketing { n: usize, low: f64, high: f64 },
    #[error("need at least 3 distinct n values, got {0}")]
    TooFewSizes(usize),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
    #[error(transparent)]
    Containment(ContainmentError),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for RandError {
    fn from(e: csv::Error) -> Self {
        RandError::Csv(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub r: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(r: usize, n: usize, p: f64, seed: u64) -> Result<Self, RandError> {
        if r == 0 || n < r || n > MAX_VERTICES {
            return Err(RandError::Config(format!(
                "need 1 <= r <= n <= {MAX_VERTICES}, got r = {r}, n = {n}"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(RandError::Config(format!("p = {p} is outside [0, 1]")));
        }
        Ok(SampleConfig { r, n, p, seed })
    }
}

/// Uniform variate in `[0, 1)` of the r-subset with the given
/// lexicographic rank.
pub fn subset_variate(seed: u64, rank: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * rank as u128);
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// All r-subsets of `[n]` with their variates, in rank order.
fn variates(r: usize, n: usize, seed: u64) -> Vec<(u64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    r_subsets(u64::MAX >> (64 - n), r)
        .into_iter()
        .map(|m| (m, (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)))
        .collect()
}

fn threshold(r: usize, n: usize, subsets: &[(u64, f64)], p: f64) -> Hypergraph {
    let edges = subsets.iter().filter(|&&(_, u)| u < p).map(|&(m, _)| m).collect();
    Hypergraph::from_masks(r, n, edges)
}

/// Draw `H^(r)(n, p)`.
pub fn sample(cfg: &SampleConfig) -> Hypergraph {
    threshold(cfg.r, cfg.n, &variates(cfg.r, cfg.n, cfg.seed), cfg.p)
}

/// Seed of one trial, from the master seed, `n` and the trial index.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(n as u64);
    rng.set_word_pos(2 * trial as u128);
    rng.next_u64()
}

/// A monotone (increasing) property of the random hypergraph `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// `H` contains a copy of `F`.
    ContainsCopy(Hypergraph),
    /// `H → (F_1, …, F_s)`.
    ArrowsTuple(Vec<Hypergraph>),
    /// `R(H; s) ⊆ R(Q_1, …, Q_t)`, decided by the partition condition with
    /// `s` copies of `H` as sources.
    ContainmentHolds { s: usize, qs: Vec<Hypergraph> },
}

impl Event {
    /// Check uniformity, tuple shape and the class hypothesis once.
    pub fn validate(&self, r: usize) -> Result<(), RandError> {
        let host = Hypergraph::empty(r, 0).map_err(|e| RandError::Config(e.to_string()))?;
        match self {
            Event::ContainsCopy(f) => {
                if f.r() != r {
                    return Err(RandError::Config(format!(
                        "pattern has uniformity {}, samples have {r}",
                        f.r()
                    )));
                }
            }
            Event::ArrowsTuple(targets) => {
                ArrowInstance::new(host, targets.clone())?;
            }
            Event::ContainmentHolds { s, qs } => {
                if *s == 0 {
                    return Err(RandError::Config("s must be positive".into()));
                }
                ArrowInstance::new(host, qs.clone())?;
                let outside: Vec<usize> = (0..qs.len())
                    .filter(|&j| !matches!(classify(&qs[j]), Ok(c) if c.in_either()))
                    .collect();
                if !outside.is_empty() {
                    return Err(RandError::Containment(ContainmentError::OutsideClasses {
                        violators: outside,
                    }));
                }
            }
        }
        Ok(())
    }

    /// Decide the event on one host; `None` if the budget ran out.
    pub fn holds(&self, h: &Hypergraph, cfg: &SearchConfig) -> Result<Option<bool>, RandError> {
        match self {
            Event::ContainsCopy(f) => Ok(Some(contains_copy(f, h))),
            Event::ArrowsTuple(targets) => {
                let inst = ArrowInstance::new(h.clone(), targets.clone())?;
                Ok(match arrows(&inst, cfg) {
                    ArrowOutcome::Arrows => Some(true),
                    ArrowOutcome::NotArrows(_) => Some(false),
                    ArrowOutcome::Unknown => None,
                })
            }
            Event::ContainmentHolds { s, qs } => {
                let fs = vec![h.clone(); *s];
                match partition_condition_holds(&fs, qs, cfg) {
                    Ok(v) => Ok(Some(v)),
                    Err(ContainmentError::Unknown) => Ok(None),
                    Err(e) => Err(RandError::Containment(e)),
                }
            }
        }
    }

    /// Exact exponent of the threshold: `-1/m(F)` for containment of a
    /// copy, `-1/m_r(F_1, F_2)` for the two densest targets of an arrowing
    /// tuple (`-1/m(F)` for a single target), and `-1/δ` for class
    /// containment. `None` when `δ` is undefined (`t <= s`).
    pub fn predicted_slope(&self) -> Result<Option<Rational>, RandError> {
        let neg_inv = |d: Rational| {
            if d.is_zero() {
                None
            } else {
                Some(-d.recip())
            }
        };
        match self {
            Event::ContainsCopy(f) => Ok(neg_inv(density::max_density(f)?.value)),
            Event::ArrowsTuple(targets) if targets.len() == 1 => {
                Ok(neg_inv(density::max_density(&targets[0])?.value))
            }
            Event::ArrowsTuple(targets) => {
                let sorted = by_decreasing_r_density(targets)?;
                Ok(neg_inv(density::asym_density(&sorted[0], &sorted[1])?.value))
            }
            Event::ContainmentHolds { s, qs } => {
                if *s >= qs.len() {
                    return Ok(None);
                }
                let sorted = by_decreasing_r_density(qs)?;
                Ok(neg_inv(density::delta_parameter(&sorted, *s)?.delta))
            }
        }
    }
}

fn by_decreasing_r_density(hs: &[Hypergraph]) -> Result<Vec<Hypergraph>, RandError> {
    let mut keyed = hs
        .iter()
        .map(|h| Ok((density::max_r_density(h)?.value, h.clone())))
        .collect::<Result<Vec<_>, DensityError>>()?;
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(keyed.into_iter().map(|(_, h)| h).collect())
}

/// Shared settings for estimates at a fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub r: usize,
    pub n: usize,
    pub seed: u64,
    pub budget: u64,
}

impl ExperimentConfig {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.budget,
        }
    }

    fn check(&self) -> Result<(), RandError> {
        SampleConfig::new(self.r, self.n, 0.0, self.seed).map(|_| ())
    }
}

/// The sample of one trial at edge probability `p`.
pub fn trial_sample(cfg: &ExperimentConfig, p: f64, trial: usize) -> Hypergraph {
    sample(&SampleConfig {
        r: cfg.r,
        n: cfg.n,
        p,
        seed: trial_seed(cfg.seed, cfg.n, trial),
    })
}

/// Outcome of one trial; `None` if the budget ran out.
pub fn trial_outcome(
    cfg: &ExperimentConfig,
    event: &Event,
    p: f64,
    trial: usize,
) -> Result<Option<bool>, RandError> {
    event.holds(&trial_sample(cfg, p, trial), &cfg.search())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub successes: usize,
    pub phat: f64,
}

/// Success fraction of `event` over `trials` seeded trials at `p`.
pub fn estimate_event(
    cfg: &ExperimentConfig,
    event: &Event,
    p: f64,
    trials: usize,
) -> Result<SweepRecord, RandError> {
    cfg.check()?;
    event.validate(cfg.r)?;
    estimate_checked(cfg, event, p, trials)
}

fn estimate_checked(
    cfg: &ExperimentConfig,
    event: &Event,
    p: f64,
    trials: usize,
) -> Result<SweepRecord, RandError> {
    if trials == 0 {
        return Err(RandError::Config("trials must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(RandError::Config(format!("p = {p} is outside [0, 1]")));
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| trial_outcome(cfg, event, p, t))
        .collect::<Result<Vec<_>, _>>()?;
    let exhausted = outcomes.iter().filter(|o| o.is_none()).count();
    if exhausted > 0 {
        return Err(RandError::Unknown {
            n: cfg.n,
            p,
            trials,
            exhausted,
        });
    }
    let successes = outcomes.iter().filter(|o| **o == Some(true)).count();
    Ok(SweepRecord {
        n: cfg.n,
        p,
        trials,
        successes,
        phat: successes as f64 / trials as f64,
    })
}

/// One estimate per grid point.
pub fn sweep(
    cfg: &ExperimentConfig,
    event: &Event,
    p_grid: &[f64],
    trials: usize,
) -> Result<Vec<SweepRecord>, RandError> {
    cfg.check()?;
    event.validate(cfg.r)?;
    p_grid
        .iter()
        .map(|&p| estimate_checked(cfg, event, p, trials))
        .collect()
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), RandError> {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.serialize(rec)?;
    }
    if records.is_empty() {
        w.write_record(["n", "p", "trials", "successes", "phat"])?;
    }
    w.flush().map_err(|e| RandError::Csv(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>, RandError> {
    let mut rd = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for rec in rd.deserialize() {
        let rec: SweepRecord = rec?;
        if rec.successes > rec.trials {
            return Err(RandError::Csv(format!(
                "successes {} exceed trials {}",
                rec.successes, rec.trials
            )));
        }
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub r: usize,
    pub seed: u64,
    pub budget: u64,
    pub trials: usize,
    /// Bisection stops once the bracket is at most this wide.
    pub tol: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            r: 2,
            seed: 0,
            budget: crate::arrowing::DEFAULT_NODE_BUDGET,
            trials: DEFAULT_TRIALS,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThresholdFit {
    pub p_half_by_n: BTreeMap<usize, f64>,
    pub slope: f64,
    pub predicted_slope: Option<f64>,
    /// The predicted slope as an exact fraction.
    pub predicted_exact: Option<String>,
    /// `ln p½ - (a + slope · ln n)` per `n`, in increasing `n`.
    pub residuals: Vec<f64>,
    /// Every probe made by the bisections.
    #[serde(skip)]
    pub probes: Vec<SweepRecord>,
}

/// Locate `phat = 1/2` by bisection on `[0, 1]` at one `n`.
pub fn bisect_half(
    cfg: &ExperimentConfig,
    event: &Event,
    trials: usize,
    tol: f64,
    probes: &mut Vec<SweepRecord>,
) -> Result<f64, RandError> {
    let mut probe = |p: f64| -> Result<f64, RandError> {
        let rec = estimate_checked(cfg, event, p, trials)?;
        let phat = rec.phat;
        probes.push(rec);
        Ok(phat)
    };
    let low = probe(0.0)?;
    let high = probe(1.0)?;
    if low >= 0.5 || high < 0.5 {
        return Err(RandError::NonBracketing { n: cfg.n, low, high });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Least-squares fit of `y = a + b x`; returns `(a, b)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Bisect for `p½` at every `n` and fit the slope of `ln p½` against `ln n`.
pub fn fit_threshold(
    cfg: &FitConfig,
    event: &Event,
    n_list: &[usize],
) -> Result<ThresholdFit, RandError> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 {
        return Err(RandError::TooFewSizes(ns.len()));
    }
    if !(cfg.tol > 0.0) {
        return Err(RandError::Config(format!("tol = {} must be positive", cfg.tol)));
    }
    event.validate(cfg.r)?;
    let predicted = event.predicted_slope()?;

    let mut p_half_by_n = BTreeMap::new();
    let mut probes = Vec::new();
    for &n in &ns {
        let ecfg = ExperimentConfig {
            r: cfg.r,
            n,
            seed: cfg.seed,
            budget: cfg.budget,
        };
        ecfg.check()?;
        let p = bisect_half(&ecfg, event, cfg.trials, cfg.tol, &mut probes)?;
        p_half_by_n.insert(n, p);
    }
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ns.iter().map(|n| p_half_by_n[n].ln()).collect();
    let (a, slope) = least_squares(&xs, &ys);
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (a + slope * x)).collect();
    Ok(ThresholdFit {
        p_half_by_n,
        slope,
        predicted_slope: predicted.and_then(|q| rational_to_f64(&q)),
        predicted_exact: predicted.map(|q| q.to_string()),
        residuals,
        probes,
    })
}

fn rational_to_f64(q: &Rational) -> Option<f64> {
    Some(q.numer().to_f64()? / q.denom().to_f64()?)
}

impl ThresholdFit {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("fit JSON is always representable")
    }
}
