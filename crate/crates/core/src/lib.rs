//! Exact analysis of multi-copy-free stabilizer-state discrimination.
//!
//! A referee draws one of several known stabilizer states; a player
//! restricted to stabilizer operations — Clifford unitaries, Pauli
//! measurements with classical feedback, fresh |0⟩ ancillas, discarding —
//! must name it. This crate provides the machinery to settle such games
//! exactly, and packages the headline instances:
//!
//! * a six-element orthonormal set of three-qubit stabilizer states that
//!   *no* adaptive stabilizer strategy identifies with certainty, although
//!   any five of the six are perfectly distinguishable and a single
//!   doubly-controlled-Hadamard readout separates all six;
//! * two-qubit mixed-state pairs exhibiting the same obstruction in a
//!   stronger, measurement-by-measurement form (every outcome of every
//!   Pauli keeps the labels confusable);
//! * an infinite family indexed by Boolean functions with vanishing linear
//!   structure, certified Pauli-by-Pauli;
//! * a seven-outcome channel that preserves stabilizer states exhaustively
//!   yet cannot be implemented by stabilizer operations.
//!
//! # Layers
//!
//! [`pauli`], [`clifford`], and [`tableau`] form an exact stabilizer
//! engine: bit-packed Pauli operators, gate conjugation, and generator
//! tableaux with rational measurement probabilities — no floating point.
//! [`dense`] is the independent oracle: explicit state vectors and density
//! matrices used to cross-check the engine and to compute entropies.
//! [`ensemble`] and [`sets`] define labeled instances and construct the
//! named ones. [`discrimination`] decides perfect distinguishability and
//! optimizes bounded-depth strategies; [`entropy`] turns per-round
//! information loss into success-probability caps; [`ancilla`] proves
//! ancillas are useless; [`cspo`] verifies the non-implementable channel;
//! [`protocol`] runs reproducible referee games with exact binomial
//! certificates.
//!
//! # Example
//!
//! ```
//! use stabdisc::{is_perfectly_discriminable, six_state_set, Verdict};
//!
//! let six = six_state_set();
//! match is_perfectly_discriminable(&six, 3).unwrap().verdict {
//!     Verdict::No(witness) => {
//!         // Two labels stay confusable after the witnessed outcomes.
//!         assert!(witness.pair.overlap_squared > num_rational::Rational64::from_integer(0));
//!     }
//!     other => panic!("six states are not perfectly discriminable: {other:?}"),
//! }
//! ```

#![warn(clippy::all)]

pub mod ancilla;
pub mod clifford;
pub mod cspo;
pub mod dense;
pub mod discrimination;
pub mod ensemble;
pub mod entropy;
pub mod pauli;
pub mod protocol;
pub mod sets;
pub mod tableau;

pub use ancilla::{
    ancilla_reduction_check, recovery_circuit, AncillaError, AncillaReductionReport,
};
pub use clifford::{synthesize_to_z, CliffordCircuit, CliffordError, Gate};
pub use cspo::{
    channel_check, frame_identity_deviation, non_implementability_note, readout_ops, readout_table,
    ChannelReport, CspoError,
};
pub use dense::{snap_overlap_squared, DenseOp, DensityMatrix, StateVector, DENSE_QUBIT_CAP};
pub use discrimination::{
    condition_holds, evaluate_strategy, family_certificate, first_round_report,
    is_perfectly_discriminable, leave_one_out, leave_one_out_strategy,
    success_probability_lower_bound, DecisionReport, DiscriminationError, FamilyCertificate,
    FirstRoundReport, StrategyNode, Verdict,
};
pub use ensemble::{EnsembleError, EnsembleItem, LabeledEnsemble, MixtureComponent};
pub use entropy::{
    advantage_ratio, binary_entropy, entropy_gap, fano_success_bound, EntropyError,
    EntropyGapReport,
};
pub use pauli::{enumerate_hermitian_paulis, PauliError, PauliLetter, PauliOperator};
pub use protocol::{
    binomial_certificate, simulate, BinomialCertificate, DiscriminationProver, FullQuantumProver,
    ProtocolError, SimulationReport, StrategyProver, UniformGuessProver,
};
pub use sets::{
    classify_two_qubit_basis, data_hiding_pair, enumerate_pure_stabilizer_states, generalized_set,
    mixed_pair, orthogonal_subsets, six_state_circuit, six_state_set, BasisClassification,
    BasisForm, BooleanFunction, SetsError,
};
pub use tableau::{CanonicalForm, Measurement, StabilizerState, TableauError};
