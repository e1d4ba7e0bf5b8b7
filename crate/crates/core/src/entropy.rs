//! Entropy accounting for adaptive Pauli strategies: how much information
//! about the label one measurement round can extract plus leave behind,
//! and what that caps the success probability at.
//!
//! For an instance `{p(μ), ρ_μ}` and a measurement of the Hermitian Pauli
//! `P` with outcome `a`, the information available to the player after the
//! round is at most
//!
//! ```text
//!     χ_P = I(μ : a) + Σ_a p(a) · [ S(ρ̄_a) − Σ_μ p(μ|a) S(ρ_μ^a) ] ,
//! ```
//!
//! the classical information extracted now plus the Holevo quantity of the
//! conditional ensemble left behind. Before any measurement the available
//! information is the plain Holevo quantity `χ₀`. When every `P` loses a
//! fixed amount — `χ_P ≤ χ₀ − gap` — the same is true for every round of
//! any adaptive strategy, so the final accessible information is capped by
//! `χ₀ − gap`, and Fano's inequality turns that into a success-probability
//! bound ([`fano_success_bound`]).
//!
//! Everything here is floating point: the entropies are irrational, and
//! the certified quantities come with explicit tolerances at the call
//! sites.

use serde::Serialize;
use thiserror::Error;

use crate::dense::{DensityMatrix, StateVector};
use crate::ensemble::LabeledEnsemble;
use crate::pauli::{enumerate_hermitian_paulis, PauliOperator};
use crate::tableau::TableauError;

/// Tie window for reporting the measurements attaining the maximum.
pub const MAXIMIZER_TOLERANCE: f64 = 1e-12;

/// Bisection tolerance (in probability) for inverting Fano's inequality.
pub const FANO_TOLERANCE: f64 = 1e-9;

/// Errors from the entropy layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    /// Fano inversion needs `0 ≤ gap ≤ log₂ m`.
    #[error("information gap {gap} outside [0, {max}] for {labels} labels")]
    InvalidGap { gap: f64, max: f64, labels: usize },
    /// Advantage ratios compare biases over random guessing; a success
    /// probability at or below 1/2 has no bias to compare.
    #[error("success probability {0} has no bias over random guessing")]
    DegenerateBias(f64),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// `h(p) = -p log₂ p - (1-p) log₂ (1-p)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    let mut h = 0.0;
    for q in [p, 1.0 - p] {
        if q > 0.0 {
            h -= q * q.log2();
        }
    }
    h
}

/// One measurement's entropy account.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEntry {
    pub pauli: PauliOperator,
    /// `I(μ : a)`: classical information the outcome reveals.
    pub mutual_information: f64,
    /// Expected Holevo quantity of the post-measurement ensemble.
    pub residual_holevo: f64,
    /// `χ_P`, the sum of the two.
    pub total: f64,
}

/// The per-Pauli entropy audit of an instance.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyGapReport {
    pub num_labels: usize,
    /// `H(μ)`, the entropy of the prior.
    pub prior_entropy: f64,
    /// `χ₀`: the Holevo quantity before any measurement.
    pub initial_holevo: f64,
    /// `max_P χ_P` over all nontrivial Hermitian Paulis.
    pub max_after_one_round: f64,
    /// `χ₀ − max_P χ_P`: the per-round information loss.
    pub gap: f64,
    /// Every measurement attaining the maximum within
    /// [`MAXIMIZER_TOLERANCE`].
    pub maximizers: Vec<PauliOperator>,
    pub entries: Vec<EntropyEntry>,
}

impl EntropyGapReport {
    /// The success-probability cap implied by the gap via Fano.
    pub fn fano_bound(&self) -> Result<f64, EntropyError> {
        fano_success_bound(self.num_labels, self.gap)
    }

    /// Per-measurement rows: `pauli,mutual_information,residual_holevo,total`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pauli,mutual_information,residual_holevo,total\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{:.15},{:.15},{:.15}\n",
                e.pauli, e.mutual_information, e.residual_holevo, e.total
            ));
        }
        out
    }
}

fn ratf(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Weighted pure components of one label's (possibly mixed) state.
type Mixture = Vec<(f64, StateVector)>;

/// The labels of an instance as dense weighted pure components.
fn dense_components(e: &LabeledEnsemble) -> Result<Vec<(f64, Mixture)>, TableauError> {
    e.items()
        .iter()
        .map(|item| {
            let parts = item
                .components
                .iter()
                .map(|c| Ok((ratf(c.weight), c.state.to_statevector()?)))
                .collect::<Result<Vec<_>, TableauError>>()?;
            Ok((ratf(item.prior), parts))
        })
        .collect()
}

fn holevo(labels: &[(f64, Mixture)]) -> f64 {
    let mut average: Vec<(f64, StateVector)> = Vec::new();
    let mut conditional = 0.0;
    for (prior, parts) in labels {
        let rho = DensityMatrix::from_mixture(parts);
        conditional += prior * rho.von_neumann_entropy_bits();
        for (w, v) in parts {
            average.push((prior * w, v.clone()));
        }
    }
    DensityMatrix::from_mixture(&average).von_neumann_entropy_bits() - conditional
}

/// The entropy account `χ_P` of measuring one Pauli on the instance.
pub fn measurement_entry(
    e: &LabeledEnsemble,
    p: &PauliOperator,
) -> Result<EntropyEntry, EntropyError> {
    let labels = dense_components(e)?;
    Ok(entry_from_components(&labels, p))
}

fn entry_from_components(labels: &[(f64, Mixture)], p: &PauliOperator) -> EntropyEntry {
    // Joint distribution p(μ, a) and conditional ensembles per outcome.
    let mut mutual = 0.0;
    let mut residual = 0.0;
    for outcome in [false, true] {
        // Surviving labels: (p(μ,a), prior p(μ), projected components).
        let mut joint: Vec<(f64, f64, Mixture)> = Vec::new();
        let mut p_outcome = 0.0;
        for (prior, parts) in labels {
            let mut projected = Vec::new();
            let mut p_a_given_label = 0.0;
            for (w, v) in parts {
                let (prob, post) = v.project_pauli(p, outcome);
                if let Some(post) = post {
                    p_a_given_label += w * prob;
                    projected.push((w * prob, post));
                }
            }
            if p_a_given_label > 0.0 {
                for c in &mut projected {
                    c.0 /= p_a_given_label;
                }
                joint.push((prior * p_a_given_label, *prior, projected));
                p_outcome += prior * p_a_given_label;
            }
        }
        if p_outcome <= 0.0 {
            continue;
        }
        // I(μ:a) term: Σ_μ p(μ,a) log₂ [ p(μ,a) / (p(μ) p(a)) ].
        for (pj, prior, _) in &joint {
            mutual += pj * (pj / (prior * p_outcome)).log2();
        }
        // Conditional ensemble with posteriors p(μ|a).
        let conditional: Vec<(f64, Mixture)> = joint
            .into_iter()
            .map(|(pj, _, parts)| (pj / p_outcome, parts))
            .collect();
        residual += p_outcome * holevo(&conditional);
    }
    EntropyEntry {
        pauli: p.clone(),
        mutual_information: mutual,
        residual_holevo: residual,
        total: mutual + residual,
    }
}

/// Audits every nontrivial Hermitian Pauli measurement on the instance.
pub fn entropy_gap(e: &LabeledEnsemble) -> Result<EntropyGapReport, EntropyError> {
    let labels = dense_components(e)?;
    let initial_holevo = holevo(&labels);
    let entries: Vec<EntropyEntry> = enumerate_hermitian_paulis(e.num_qubits(), false)
        .map(|p| entry_from_components(&labels, &p))
        .collect();
    let max_after_one_round = entries
        .iter()
        .map(|x| x.total)
        .fold(f64::NEG_INFINITY, f64::max);
    let maximizers = entries
        .iter()
        .filter(|x| x.total >= max_after_one_round - MAXIMIZER_TOLERANCE)
        .map(|x| x.pauli.clone())
        .collect();
    // The chain rule forbids a measurement from increasing the bound, so
    // the gap is nonnegative; eigendecomposition rounding can still leave
    // an exactly-zero gap a few ulps below it.
    let gap = initial_holevo - max_after_one_round;
    let gap = if (-MAXIMIZER_TOLERANCE..0.0).contains(&gap) {
        0.0
    } else {
        gap
    };
    Ok(EntropyGapReport {
        num_labels: e.num_labels(),
        prior_entropy: e.prior_entropy_bits(),
        initial_holevo,
        max_after_one_round,
        gap,
        maximizers,
        entries,
    })
}

/// The largest success probability compatible with losing `gap` bits of
/// information about a uniformly distributed `m`-ary label.
///
/// Fano: `h(p) + (1-p)·log₂(m-1) ≥ gap` caps `p`; the left side falls
/// strictly from `log₂ m` at `p = 1/m` to `0` at `p = 1`, so the cap is
/// found by bisection to within [`FANO_TOLERANCE`].
pub fn fano_success_bound(num_labels: usize, gap: f64) -> Result<f64, EntropyError> {
    let max = (num_labels as f64).log2();
    if num_labels < 2 || !(0.0..=max).contains(&gap) {
        return Err(EntropyError::InvalidGap {
            gap,
            max,
            labels: num_labels,
        });
    }
    let fano = |p: f64| binary_entropy(p) + (1.0 - p) * ((num_labels - 1) as f64).log2();
    let (mut lo, mut hi) = (1.0 / num_labels as f64, 1.0);
    while hi - lo > FANO_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if fano(mid) > gap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// How much of the bias over random guessing survives the restriction:
/// `(p_unrestricted - 1/2) / (p_restricted - 1/2)` for a binary task.
pub fn advantage_ratio(p_unrestricted: f64, p_restricted: f64) -> Result<f64, EntropyError> {
    for p in [p_unrestricted, p_restricted] {
        if p <= 0.5 {
            return Err(EntropyError::DegenerateBias(p));
        }
    }
    Ok((p_unrestricted - 0.5) / (p_restricted - 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{data_hiding_pair, mixed_pair, six_state_set};
    use crate::tableau::StabilizerState;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        let ok = (a - b).abs() < tol;
        if !ok {
            eprintln!("actual {a:.17}, expected {b:.17}, tol {tol}");
        }
        ok
    }

    #[test]
    fn binary_entropy_knowns() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!(close(binary_entropy(0.5), 1.0, 1e-15));
        assert!(close(binary_entropy(0.25), 0.811278124459133, 1e-12));
    }

    #[test]
    #[should_panic(expected = "probability out of range")]
    fn binary_entropy_rejects_bad_input() {
        binary_entropy(1.5);
    }

    #[test]
    fn orthogonal_pair_loses_nothing() {
        // {|0⟩, |1⟩}: measuring Z extracts the full bit.
        let e = LabeledEnsemble::from_pure_states(vec![
            StabilizerState::from_generator_strs(&["+Z"]).unwrap(),
            StabilizerState::from_generator_strs(&["-Z"]).unwrap(),
        ])
        .unwrap();
        let report = entropy_gap(&e).unwrap();
        assert!(close(report.initial_holevo, 1.0, 1e-12));
        assert!(close(report.max_after_one_round, 1.0, 1e-12));
        assert!(close(report.gap, 0.0, 1e-12));
        assert!(report.maximizers.iter().any(|p| p.to_string() == "+Z"));
    }

    #[test]
    fn six_state_instance_loses_a_third_of_a_bit_per_round() {
        let report = entropy_gap(&six_state_set()).unwrap();
        assert_eq!(report.entries.len(), 63);
        assert!(close(report.prior_entropy, 6f64.log2(), 1e-12));
        assert!(close(report.initial_holevo, 6f64.log2(), 1e-12));
        assert!(close(
            report.max_after_one_round,
            6f64.log2() - 1.0 / 3.0,
            1e-9
        ));
        assert!(close(report.gap, 1.0 / 3.0, 1e-9));
        // Every single-qubit Z attains the maximum.
        for z in ["+ZII", "+IZI", "+IIZ"] {
            assert!(report.maximizers.iter().any(|p| p.to_string() == z), "{z}");
        }
    }

    #[test]
    fn six_state_fano_cap_matches_the_published_constant() {
        let report = entropy_gap(&six_state_set()).unwrap();
        let bound = report.fano_bound().unwrap();
        assert!(close(bound, 0.9602656262283175, 1e-8));
    }

    #[test]
    fn mixed_pair_gap_and_cap() {
        let report = entropy_gap(&mixed_pair()).unwrap();
        assert_eq!(report.entries.len(), 15);
        assert!(close(report.initial_holevo, 1.0, 1e-12));
        assert!(close(report.gap, 0.31596164354427225, 1e-9));
        let bound = report.fano_bound().unwrap();
        assert!(close(bound, 0.9428659175715224, 1e-8));
        assert!(close(
            advantage_ratio(1.0, bound).unwrap(),
            1.1290098880080346,
            1e-7
        ));
    }

    #[test]
    fn hiding_pair_gap_and_cap() {
        let report = entropy_gap(&data_hiding_pair()).unwrap();
        assert!(close(report.initial_holevo, 1.0, 1e-12));
        assert!(close(report.gap, 0.2075187496394214, 1e-9));
        let bound = report.fano_bound().unwrap();
        assert!(close(bound, 0.967348651488688, 1e-8));
        assert!(close(
            advantage_ratio(1.0, bound).unwrap(),
            1.0698650748371792,
            1e-7
        ));
    }

    #[test]
    fn discriminable_pair_has_exactly_zero_gap() {
        // |00⟩ vs |11⟩: one Z readout is lossless, so the gap is exactly
        // zero; the report must snap the roundoff-negative difference back
        // to it or the Fano cap would be undefined.
        let e = crate::ensemble::LabeledEnsemble::from_pure_states(vec![
            StabilizerState::basis_state(&[false, false]).unwrap(),
            StabilizerState::basis_state(&[true, true]).unwrap(),
        ])
        .unwrap();
        let report = entropy_gap(&e).unwrap();
        assert_eq!(report.gap, 0.0);
        assert!(close(report.fano_bound().unwrap(), 1.0, 1e-8));
    }

    #[test]
    fn fano_edge_cases() {
        // Zero gap: no cap below certainty.
        assert!(close(fano_success_bound(6, 0.0).unwrap(), 1.0, 1e-8));
        // Full gap: random guessing.
        assert!(close(
            fano_success_bound(6, 6f64.log2()).unwrap(),
            1.0 / 6.0,
            1e-8
        ));
        assert!(matches!(
            fano_success_bound(6, 3.0),
            Err(EntropyError::InvalidGap { .. })
        ));
        assert!(matches!(
            fano_success_bound(1, 0.0),
            Err(EntropyError::InvalidGap { .. })
        ));
    }

    #[test]
    fn advantage_ratio_rejects_no_bias() {
        assert!(matches!(
            advantage_ratio(0.5, 0.9),
            Err(EntropyError::DegenerateBias(_))
        ));
    }

    #[test]
    fn csv_has_one_row_per_measurement() {
        let report = entropy_gap(&mixed_pair()).unwrap();
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.starts_with("pauli,mutual_information,residual_holevo,total\n"));
    }
}
