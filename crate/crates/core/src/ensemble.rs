//! Labeled ensembles: the discrimination instances.
//!
//! An instance is a finite list of labels, each carrying an exact rational
//! prior and a state that is either pure or an explicit rational-weighted
//! mixture of pure stabilizer states. Keeping every probability as a
//! `Rational64` lets the search and certificate layers report success
//! probabilities exactly (e.g. `5/6`) instead of as floats.
//!
//! The JSON wire format spells rationals as strings (`"1/6"`, `"1"`) and
//! states as generator lists; deserialization re-runs all validation.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::tableau::{StabilizerState, TableauError};

/// Errors from ensemble construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnsembleError {
    /// An ensemble needs at least one labeled state.
    #[error("ensemble has no items")]
    Empty,
    /// Every state must act on the same register width.
    #[error("mixed register widths: {0} vs {1} qubits")]
    MismatchedWidths(usize, usize),
    /// Priors must be positive and sum to one.
    #[error("priors must be positive and sum to 1, got sum {0}")]
    BadPriors(String),
    /// Mixture weights must be positive and sum to one within an item.
    #[error("mixture weights for label {label} must be positive and sum to 1")]
    BadWeights { label: usize },
    /// Labels must be distinct.
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),
    /// An item must contain at least one component.
    #[error("label {0} has an empty mixture")]
    EmptyMixture(usize),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// One pure component of a mixture, with exact weight.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureComponent {
    pub weight: Rational64,
    pub state: StabilizerState,
}

/// A labeled state: a prior probability and a mixture of pure components.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleItem {
    pub label: usize,
    pub prior: Rational64,
    pub components: Vec<MixtureComponent>,
}

impl EnsembleItem {
    /// A pure labeled state.
    pub fn pure(label: usize, prior: Rational64, state: StabilizerState) -> Self {
        Self {
            label,
            prior,
            components: vec![MixtureComponent {
                weight: Rational64::one(),
                state,
            }],
        }
    }
}

/// A validated discrimination instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledEnsemble {
    n: usize,
    items: Vec<EnsembleItem>,
}

impl LabeledEnsemble {
    /// Validates and wraps a list of labeled states.
    pub fn new(items: Vec<EnsembleItem>) -> Result<Self, EnsembleError> {
        let first = items.first().ok_or(EnsembleError::Empty)?;
        let first_state = first
            .components
            .first()
            .ok_or(EnsembleError::EmptyMixture(first.label))?;
        let n = first_state.state.num_qubits();
        let mut prior_sum = Rational64::zero();
        for (i, item) in items.iter().enumerate() {
            if items[..i].iter().any(|other| other.label == item.label) {
                return Err(EnsembleError::DuplicateLabel(item.label));
            }
            if !item.prior.is_positive() {
                return Err(EnsembleError::BadPriors(item.prior.to_string()));
            }
            prior_sum += item.prior;
            if item.components.is_empty() {
                return Err(EnsembleError::EmptyMixture(item.label));
            }
            let mut weight_sum = Rational64::zero();
            for c in &item.components {
                if c.state.num_qubits() != n {
                    return Err(EnsembleError::MismatchedWidths(n, c.state.num_qubits()));
                }
                if !c.weight.is_positive() {
                    return Err(EnsembleError::BadWeights { label: item.label });
                }
                weight_sum += c.weight;
            }
            if !weight_sum.is_one() {
                return Err(EnsembleError::BadWeights { label: item.label });
            }
        }
        if !prior_sum.is_one() {
            return Err(EnsembleError::BadPriors(prior_sum.to_string()));
        }
        Ok(Self { n, items })
    }

    /// Uniform-prior ensemble of pure states labeled `0..len`.
    pub fn from_pure_states(states: Vec<StabilizerState>) -> Result<Self, EnsembleError> {
        let m = states.len() as i64;
        if m == 0 {
            return Err(EnsembleError::Empty);
        }
        let items = states
            .into_iter()
            .enumerate()
            .map(|(i, s)| EnsembleItem::pure(i, Rational64::new(1, m), s))
            .collect();
        Self::new(items)
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// The labeled states.
    pub fn items(&self) -> &[EnsembleItem] {
        &self.items
    }

    /// Number of labels.
    pub fn num_labels(&self) -> usize {
        self.items.len()
    }

    /// Shannon entropy of the prior distribution, in bits.
    pub fn prior_entropy_bits(&self) -> f64 {
        self.items
            .iter()
            .map(|it| {
                let p = *it.prior.numer() as f64 / *it.prior.denom() as f64;
                -p * p.log2()
            })
            .sum()
    }
}

pub(crate) fn rational_to_string(r: Rational64) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_from_str(s: &str) -> Result<Rational64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("bad rational {s:?}: {e}"))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse(den)?;
            if d == 0 {
                return Err(format!("bad rational {s:?}: zero denominator"));
            }
            Ok(Rational64::new(parse(num)?, d))
        }
        None => Ok(Rational64::from_integer(parse(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentWire {
    weight: String,
    state: StabilizerState,
}

#[derive(Serialize, Deserialize)]
struct ItemWire {
    label: usize,
    prior: String,
    components: Vec<ComponentWire>,
}

#[derive(Serialize, Deserialize)]
struct EnsembleWire {
    n: usize,
    states: Vec<ItemWire>,
}

impl Serialize for LabeledEnsemble {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EnsembleWire {
            n: self.n,
            states: self
                .items
                .iter()
                .map(|it| ItemWire {
                    label: it.label,
                    prior: rational_to_string(it.prior),
                    components: it
                        .components
                        .iter()
                        .map(|c| ComponentWire {
                            weight: rational_to_string(c.weight),
                            state: c.state.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledEnsemble {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = EnsembleWire::deserialize(deserializer)?;
        let mut items = Vec::with_capacity(wire.states.len());
        for iw in wire.states {
            let mut components = Vec::with_capacity(iw.components.len());
            for cw in iw.components {
                components.push(MixtureComponent {
                    weight: rational_from_str(&cw.weight).map_err(D::Error::custom)?,
                    state: cw.state,
                });
            }
            items.push(EnsembleItem {
                label: iw.label,
                prior: rational_from_str(&iw.prior).map_err(D::Error::custom)?,
                components,
            });
        }
        let ensemble = LabeledEnsemble::new(items).map_err(D::Error::custom)?;
        if ensemble.num_qubits() != wire.n {
            return Err(D::Error::custom(format!(
                "declared width {} does not match states on {} qubits",
                wire.n,
                ensemble.num_qubits()
            )));
        }
        Ok(ensemble)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(gens: &[&str]) -> StabilizerState {
        StabilizerState::from_generator_strs(gens).unwrap()
    }

    #[test]
    fn validation_catches_bad_instances() {
        let zero = state(&["+Z"]);
        let one = state(&["-Z"]);
        assert_eq!(
            LabeledEnsemble::new(vec![]).unwrap_err(),
            EnsembleError::Empty
        );

        let items = vec![
            EnsembleItem::pure(0, Rational64::new(1, 2), zero.clone()),
            EnsembleItem::pure(0, Rational64::new(1, 2), one.clone()),
        ];
        assert_eq!(
            LabeledEnsemble::new(items).unwrap_err(),
            EnsembleError::DuplicateLabel(0)
        );

        let items = vec![
            EnsembleItem::pure(0, Rational64::new(1, 3), zero.clone()),
            EnsembleItem::pure(1, Rational64::new(1, 3), one.clone()),
        ];
        assert!(matches!(
            LabeledEnsemble::new(items).unwrap_err(),
            EnsembleError::BadPriors(_)
        ));

        let items = vec![
            EnsembleItem::pure(0, Rational64::new(1, 2), zero.clone()),
            EnsembleItem::pure(1, Rational64::new(1, 2), state(&["+ZZ", "+XX"])),
        ];
        assert_eq!(
            LabeledEnsemble::new(items).unwrap_err(),
            EnsembleError::MismatchedWidths(1, 2)
        );

        let items = vec![EnsembleItem {
            label: 0,
            prior: Rational64::one(),
            components: vec![
                MixtureComponent {
                    weight: Rational64::new(1, 3),
                    state: zero,
                },
                MixtureComponent {
                    weight: Rational64::new(1, 3),
                    state: one,
                },
            ],
        }];
        assert_eq!(
            LabeledEnsemble::new(items).unwrap_err(),
            EnsembleError::BadWeights { label: 0 }
        );
    }

    #[test]
    fn uniform_construction_and_entropy() {
        let e = LabeledEnsemble::from_pure_states(vec![
            state(&["+Z"]),
            state(&["-Z"]),
            state(&["+X"]),
            state(&["-X"]),
        ])
        .unwrap();
        assert_eq!(e.num_labels(), 4);
        assert_eq!(e.items()[2].prior, Rational64::new(1, 4));
        assert!((e.prior_entropy_bits() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(Rational64::new(1, 6)), "1/6");
        assert_eq!(rational_to_string(Rational64::one()), "1");
        assert_eq!(rational_from_str("1/6").unwrap(), Rational64::new(1, 6));
        assert_eq!(rational_from_str("3").unwrap(), Rational64::from_integer(3));
        assert_eq!(rational_from_str("2/4").unwrap(), Rational64::new(1, 2));
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = LabeledEnsemble::new(vec![
            EnsembleItem::pure(0, Rational64::new(1, 2), state(&["+Z"])),
            EnsembleItem {
                label: 1,
                prior: Rational64::new(1, 2),
                components: vec![
                    MixtureComponent {
                        weight: Rational64::new(1, 2),
                        state: state(&["+X"]),
                    },
                    MixtureComponent {
                        weight: Rational64::new(1, 2),
                        state: state(&["-Z"]),
                    },
                ],
            },
        ])
        .unwrap();
        let js = serde_json::to_string_pretty(&e).unwrap();
        assert!(js.contains("\"1/2\""));
        let back: LabeledEnsemble = serde_json::from_str(&js).unwrap();
        assert_eq!(e, back);

        // Re-validation on the way in.
        let bad = r#"{"n":1,"states":[{"label":0,"prior":"1","components":[
            {"weight":"1/2","state":{"n":1,"generators":["+Z"]}}]}]}"#;
        assert!(serde_json::from_str::<LabeledEnsemble>(bad).is_err());
    }
}
