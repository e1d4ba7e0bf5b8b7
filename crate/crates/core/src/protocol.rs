//! A reproducible referee protocol for the discrimination game, plus the
//! statistical certificate separating restricted from unrestricted players.
//!
//! Each trial the referee draws a label from the instance prior (exact
//! rational sampling), hands the corresponding pure state to the prover,
//! and records whether the guess matches. Trials are independent: trial
//! `t` runs on stream `t` of a counter-based generator seeded once, so any
//! single trial can be replayed in isolation.
//!
//! The separation logic: a player limited to stabilizer operations wins
//! the six-state game with probability at most the Fano cap (< 0.9603),
//! while the doubly-controlled-Hadamard readout wins every time. A run
//! with enough successes therefore certifies, with quantifiable
//! confidence, that the device performed something beyond stabilizer
//! operations ([`binomial_certificate`]).

use num_rational::Rational64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::factorial::ln_binomial;
use thiserror::Error;

use crate::cspo::{apply_readout, readout_table, CspoError};
use crate::discrimination::{DiscriminationError, StrategyNode};
use crate::ensemble::LabeledEnsemble;
use crate::tableau::{StabilizerState, TableauError};

/// Errors from the protocol layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    /// The null hypothesis rate must be a nondegenerate probability.
    #[error("null success rate {0} outside (0, 1)")]
    InvalidNullRate(f64),
    /// More successes than trials.
    #[error("{successes} successes reported out of {trials} trials")]
    ImpossibleCount { successes: u64, trials: u64 },
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Cspo(#[from] CspoError),
    #[error(transparent)]
    Discrimination(#[from] DiscriminationError),
}

/// A player in the discrimination game.
pub trait DiscriminationProver {
    /// Short identifier used in reports.
    fn name(&self) -> &str;
    /// Receives one drawn state and returns a label guess.
    fn run_trial(
        &self,
        state: &StabilizerState,
        rng: &mut dyn RngCore,
    ) -> Result<usize, ProtocolError>;
}

/// The unrestricted player: rotates the six-state frame onto the
/// computational basis with the doubly-controlled-Hadamard readout and
/// reads the label off the outcome. Wins every trial on member inputs.
pub struct FullQuantumProver {
    /// Label indexed by readout basis state, `None` off the frame.
    label_of_basis: Vec<Option<usize>>,
    num_labels: usize,
}

impl FullQuantumProver {
    pub fn new() -> Result<Self, ProtocolError> {
        let table = readout_table()?;
        let mut label_of_basis = vec![None; 8];
        for (label, &idx) in table.iter().enumerate() {
            label_of_basis[idx] = Some(label);
        }
        Ok(Self {
            label_of_basis,
            num_labels: table.len(),
        })
    }
}

impl DiscriminationProver for FullQuantumProver {
    fn name(&self) -> &str {
        "full-quantum-readout"
    }

    fn run_trial(
        &self,
        state: &StabilizerState,
        rng: &mut dyn RngCore,
    ) -> Result<usize, ProtocolError> {
        let image = apply_readout(&state.to_statevector()?);
        // Born sampling of the computational readout. On member inputs the
        // image is a single basis state and the draw is deterministic.
        let mut r = rng.gen::<f64>();
        let mut hit = image.amplitudes().len() - 1;
        for (idx, a) in image.amplitudes().iter().enumerate() {
            r -= a.norm_sqr();
            if r <= 0.0 {
                hit = idx;
                break;
            }
        }
        Ok(self.label_of_basis[hit].unwrap_or_else(|| rng.gen_range(0..self.num_labels)))
    }
}

/// A stabilizer-operations player following a fixed adaptive strategy
/// tree, with exact fair-coin sampling for the random outcomes.
pub struct StrategyProver {
    strategy: StrategyNode,
    name: String,
}

impl StrategyProver {
    pub fn new(name: impl Into<String>, strategy: StrategyNode) -> Self {
        Self {
            strategy,
            name: name.into(),
        }
    }

    pub fn strategy(&self) -> &StrategyNode {
        &self.strategy
    }
}

impl DiscriminationProver for StrategyProver {
    fn name(&self) -> &str {
        &self.name
    }

    fn run_trial(
        &self,
        state: &StabilizerState,
        rng: &mut dyn RngCore,
    ) -> Result<usize, ProtocolError> {
        let mut current = state.clone();
        let mut node = &self.strategy;
        loop {
            match node {
                StrategyNode::Guess { guess } => return Ok(*guess),
                StrategyNode::Measure {
                    measure,
                    on_zero,
                    on_one,
                } => {
                    // The outcome distribution is always {0, 1/2, 1}:
                    // determined outcomes read off the expectation, random
                    // ones are a fair coin.
                    let outcome = match current.expectation(measure)? {
                        1 => false,
                        -1 => true,
                        _ => rng.gen_range(0..2) == 1,
                    };
                    current = current.measure_pauli(measure, Some(outcome))?.post;
                    node = if outcome { on_one } else { on_zero };
                }
            }
        }
    }
}

/// The baseline player: ignores the state and guesses uniformly.
pub struct UniformGuessProver {
    pub num_labels: usize,
}

impl DiscriminationProver for UniformGuessProver {
    fn name(&self) -> &str {
        "uniform-guess"
    }

    fn run_trial(
        &self,
        _state: &StabilizerState,
        rng: &mut dyn RngCore,
    ) -> Result<usize, ProtocolError> {
        Ok(rng.gen_range(0..self.num_labels))
    }
}

/// One recorded trial.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub label: usize,
    pub guess: usize,
}

/// A full simulation run.
#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    pub prover: String,
    pub n_trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub seed: u64,
    /// Per-trial generator: one stream per trial index.
    pub generator: String,
    pub records: Vec<TrialRecord>,
}

/// Draws an index from exact rational weights summing to one.
fn sample_rational(weights: &[Rational64], rng: &mut dyn RngCore) -> usize {
    let denom = weights
        .iter()
        .fold(1i64, |acc, w| num_integer::lcm(acc, *w.denom()));
    let total: i64 = weights
        .iter()
        .map(|w| w.numer() * (denom / w.denom()))
        .sum();
    let mut draw = rng.gen_range(0..total);
    for (i, w) in weights.iter().enumerate() {
        draw -= w.numer() * (denom / w.denom());
        if draw < 0 {
            return i;
        }
    }
    unreachable!("weights sum to one");
}

/// Plays `n_trials` independent rounds of the discrimination game.
///
/// Trial `t` uses stream `t` of a ChaCha12 generator keyed by `seed`, so
/// runs are reproducible and individual trials replayable.
pub fn simulate(
    prover: &dyn DiscriminationProver,
    instance: &LabeledEnsemble,
    n_trials: usize,
    seed: u64,
) -> Result<SimulationReport, ProtocolError> {
    let priors: Vec<Rational64> = instance.items().iter().map(|it| it.prior).collect();
    let mut successes = 0usize;
    let mut records = Vec::with_capacity(n_trials);
    for trial in 0..n_trials {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let item = &instance.items()[sample_rational(&priors, &mut rng)];
        let component = if item.components.len() == 1 {
            0
        } else {
            let weights: Vec<Rational64> = item.components.iter().map(|c| c.weight).collect();
            sample_rational(&weights, &mut rng)
        };
        let guess = prover.run_trial(&item.components[component].state, &mut rng)?;
        if guess == item.label {
            successes += 1;
        }
        records.push(TrialRecord {
            trial,
            label: item.label,
            guess,
        });
    }
    Ok(SimulationReport {
        prover: prover.name().to_string(),
        n_trials,
        successes,
        success_rate: successes as f64 / n_trials.max(1) as f64,
        seed,
        generator: "chacha12, one stream per trial".to_string(),
        records,
    })
}

/// An exact one-sided binomial test against a null success rate.
#[derive(Debug, Clone, Serialize)]
pub struct BinomialCertificate {
    pub n_trials: u64,
    pub successes: u64,
    /// The null hypothesis: success rate at most this value.
    pub null_rate: f64,
    /// `P(X ≥ successes)` under the null, computed exactly (in log space).
    pub p_value: f64,
    /// `1 − p_value`.
    pub confidence: f64,
    /// The Gaussian quantile matching the p-value: how many “sigmas” the
    /// observation sits above the null.
    pub sigma_equivalent: f64,
}

/// Exact upper-tail binomial probability via a log-sum-exp over
/// `ln C(n,k) + k ln p + (n-k) ln(1-p)`.
///
/// The result is clamped to 1: when nearly the whole distribution lies in
/// the tail, rounding in the summation can otherwise exceed it by an ulp,
/// which downstream quantile lookups reject.
fn binomial_upper_tail(n: u64, k_min: u64, p: f64) -> f64 {
    if k_min == 0 {
        return 1.0;
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let terms: Vec<f64> = (k_min..=n)
        .map(|k| ln_binomial(n, k) + k as f64 * lp + (n - k) as f64 * lq)
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    (max + sum.ln()).exp().min(1.0)
}

/// Certifies how incompatible an observed success count is with a null
/// success rate (one-sided, exact).
pub fn binomial_certificate(
    n_trials: u64,
    successes: u64,
    null_rate: f64,
) -> Result<BinomialCertificate, ProtocolError> {
    if !(null_rate > 0.0 && null_rate < 1.0) {
        return Err(ProtocolError::InvalidNullRate(null_rate));
    }
    if successes > n_trials {
        return Err(ProtocolError::ImpossibleCount {
            successes,
            trials: n_trials,
        });
    }
    let p_value = binomial_upper_tail(n_trials, successes, null_rate);
    let sigma_equivalent = if successes == 0 {
        f64::NEG_INFINITY
    } else {
        let normal = Normal::new(0.0, 1.0).expect("standard normal");
        -normal.inverse_cdf(p_value)
    };
    Ok(BinomialCertificate {
        n_trials,
        successes,
        null_rate,
        p_value,
        confidence: 1.0 - p_value,
        sigma_equivalent,
    })
}
