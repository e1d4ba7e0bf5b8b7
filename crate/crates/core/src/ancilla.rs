//! Why fresh ancillas don't help: every Pauli measurement on a register
//! extended by |0⟩ ancillas reduces to a measurement on the register alone.
//!
//! Two cases, split by how the measured Pauli `P` touches the ancilla block:
//!
//! * **Flipping** — `P` carries an `X` or `Y` on some ancilla, so it
//!   anticommutes with that ancilla's stabilizer `Z`. The outcome is then a
//!   fair coin independent of the register state, and a fixed Clifford
//!   ([`recovery_circuit`], depending only on `P` and the outcome) maps the
//!   post-measurement state back to the exact pre-measurement state. The
//!   measurement yields no information and causes no damage.
//! * **Diagonal** — `P` acts as `I`/`Z` on every ancilla, so `P = Q ⊗ Z^w`
//!   with `Q` on the register. Since `Z^w` stabilizes `|0…0⟩`, measuring `P`
//!   is outcome-for-outcome identical to measuring `Q` on the register (and
//!   is a deterministic no-op when `Q` is trivial).
//!
//! [`ancilla_reduction_check`] verifies both claims exhaustively for the
//! six-state instance against every Hermitian Pauli on the extended
//! register.

use thiserror::Error;

use crate::clifford::{CliffordCircuit, CliffordError, Gate};
use crate::pauli::{enumerate_hermitian_paulis, PauliError, PauliLetter, PauliOperator};
use crate::sets::six_state_set;
use crate::tableau::{StabilizerState, TableauError};

/// Total qubits (register + ancillas) accepted by the exhaustive check.
pub const REDUCTION_QUBIT_CAP: usize = 6;

/// Errors from the ancilla-reduction layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AncillaError {
    /// The designated recovery qubit must carry `X` or `Y` so that the
    /// measurement flips it.
    #[error("recovery anchor qubit {anchor} carries {letter}, expected X or Y")]
    AnchorNotFlipping { anchor: usize, letter: char },
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exhaustive reduction check on {0} qubits exceeds the cap of {1}")]
    TooManyQubits(usize, usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// The Clifford that undoes a flipping Pauli measurement on a |0⟩ ancilla.
///
/// `p` is the measured Hermitian Pauli, `anchor` a qubit where `p` carries
/// `X` or `Y` (in the intended use, an ancilla prepared in |0⟩), and
/// `outcome` the observed result (`false` for +1). Writing `P = s·L_c ⊗ P'`
/// with `L_c` the anchor letter, the circuit is
///
/// 1. a controlled-`P'` from the anchor (`CNOT`/`CZ`/controlled-`Y` per
///    letter), which rewrites the measured observable as `s·L_c` on the
///    anchor alone;
/// 2. a diagonal fix-up on the anchor turning `s·L_c` into `±X`;
/// 3. `H` on the anchor, then `X` when the surviving sign times the
///    outcome is −1.
///
/// Applied to the renormalized post-measurement state of `(register ⊗ |0⟩)`,
/// it returns exactly `register ⊗ |0⟩` — no global phase left over.
pub fn recovery_circuit(
    p: &PauliOperator,
    anchor: usize,
    outcome: bool,
) -> Result<CliffordCircuit, AncillaError> {
    let n = p.num_qubits();
    if anchor >= n {
        return Err(AncillaError::IndexOutOfRange { index: anchor, n });
    }
    let anchor_letter = p.letter(anchor);
    if !matches!(anchor_letter, PauliLetter::X | PauliLetter::Y) {
        return Err(AncillaError::AnchorNotFlipping {
            anchor,
            letter: anchor_letter.to_char(),
        });
    }
    let sign = p.sign().expect("Hermitian Pauli");

    let mut gates = Vec::new();
    for j in 0..n {
        if j == anchor {
            continue;
        }
        match p.letter(j) {
            PauliLetter::I => {}
            PauliLetter::X => gates.push(Gate::Cnot(anchor, j)),
            PauliLetter::Z => gates.push(Gate::Cz(anchor, j)),
            // Controlled-Y = S_j · CNOT · S_j†, with S† written as S then Z.
            PauliLetter::Y => {
                gates.extend([Gate::S(j), Gate::Z(j), Gate::Cnot(anchor, j), Gate::S(j)])
            }
        }
    }
    // Diagonal fix-up: conjugate the leftover single-qubit observable
    // s·L_anchor into σ·X. For X the sign is absorbed (σ = +1); for Y the
    // rotation S·Y·S† = -X leaves σ = -1.
    let sigma = match anchor_letter {
        PauliLetter::X => {
            if sign < 0 {
                gates.push(Gate::Z(anchor));
            }
            1
        }
        PauliLetter::Y => {
            gates.push(Gate::S(anchor));
            if sign < 0 {
                gates.push(Gate::Z(anchor));
            }
            -1
        }
        _ => unreachable!("anchor letter checked above"),
    };
    gates.push(Gate::H(anchor));
    let eigenvalue = if outcome { -sigma } else { sigma };
    if eigenvalue < 0 {
        gates.push(Gate::X(anchor));
    }
    Ok(CliffordCircuit::from_gates(n, gates)?)
}

/// Tally of the exhaustive reduction check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AncillaReductionReport {
    pub register_qubits: usize,
    pub num_ancillas: usize,
    /// Hermitian Paulis examined on the extended register.
    pub num_paulis: usize,
    /// Paulis flipping an ancilla: coin-flip outcome plus exact recovery.
    pub flipping_cases: usize,
    /// Paulis acting as `Q ⊗ Z^w` with nontrivial `Q`: outcome and
    /// post-state match the register-only measurement of `Q`.
    pub forwarded_cases: usize,
    /// Paulis acting as `±Z^w` on the ancillas alone: deterministic no-op.
    pub trivial_cases: usize,
    /// Individual state/outcome checks performed.
    pub checks: usize,
    pub all_passed: bool,
    /// Human-readable descriptions of failed checks (empty on success).
    pub failures: Vec<String>,
}

/// Exhaustively verifies the ancilla reduction for the six-state instance
/// extended by `num_ancillas` fresh |0⟩ qubits.
pub fn ancilla_reduction_check(
    num_ancillas: usize,
) -> Result<AncillaReductionReport, AncillaError> {
    let six = six_state_set();
    let register_qubits = six.num_qubits();
    let n = register_qubits + num_ancillas;
    if num_ancillas == 0 || n > REDUCTION_QUBIT_CAP {
        return Err(AncillaError::TooManyQubits(n, REDUCTION_QUBIT_CAP));
    }

    let states: Vec<StabilizerState> = six
        .items()
        .iter()
        .map(|it| it.components[0].state.clone())
        .collect();
    let lifted: Vec<StabilizerState> = states
        .iter()
        .map(|s| s.tensor_with_zeros(num_ancillas))
        .collect();

    let mut report = AncillaReductionReport {
        register_qubits,
        num_ancillas,
        num_paulis: 0,
        flipping_cases: 0,
        forwarded_cases: 0,
        trivial_cases: 0,
        checks: 0,
        all_passed: true,
        failures: Vec::new(),
    };
    let half = num_rational::Rational64::new(1, 2);
    for p in enumerate_hermitian_paulis(n, false) {
        report.num_paulis += 1;
        let flip_anchor =
            (register_qubits..n).find(|&q| matches!(p.letter(q), PauliLetter::X | PauliLetter::Y));

        if let Some(anchor) = flip_anchor {
            report.flipping_cases += 1;
            for (i, state) in lifted.iter().enumerate() {
                for outcome in [false, true] {
                    report.checks += 1;
                    let m = state.measure_pauli(&p, Some(outcome))?;
                    if m.prob_zero != half {
                        report.failures.push(format!(
                            "{p} on state {i}: outcome not uniform ({})",
                            m.prob_zero
                        ));
                        continue;
                    }
                    let recovery = recovery_circuit(&p, anchor, outcome)?;
                    let recovered = m.post.apply_circuit(&recovery)?;
                    if recovered != *state {
                        report.failures.push(format!(
                            "{p} on state {i}, outcome {outcome}: recovery missed"
                        ));
                    }
                }
            }
            continue;
        }

        // Diagonal case: P = Q ⊗ Z^w on register ⊗ ancillas.
        let q = p.restricted(0..register_qubits)?;
        if q.is_identity_letters() {
            report.trivial_cases += 1;
            let forced = p.sign().expect("Hermitian Pauli") < 0;
            for (i, state) in lifted.iter().enumerate() {
                report.checks += 1;
                let m = state.measure_pauli(&p, None)?;
                let expected_prob = if forced {
                    num_rational::Rational64::from_integer(0)
                } else {
                    num_rational::Rational64::from_integer(1)
                };
                if m.prob_zero != expected_prob || m.outcome != forced || m.post != *state {
                    report.failures.push(format!(
                        "{p} on state {i}: ancilla-only measurement not a no-op"
                    ));
                }
            }
            continue;
        }

        report.forwarded_cases += 1;
        for (i, (state, big)) in states.iter().zip(&lifted).enumerate() {
            for outcome in [false, true] {
                report.checks += 1;
                let on_register = state.measure_pauli(&q, Some(outcome));
                let on_extended = big.measure_pauli(&p, Some(outcome));
                match (on_register, on_extended) {
                    (Ok(a), Ok(b)) => {
                        if a.prob_zero != b.prob_zero
                            || b.post != a.post.tensor_with_zeros(num_ancillas)
                        {
                            report
                                .failures
                                .push(format!("{p} on state {i}: forwarded measurement disagrees"));
                        }
                    }
                    (
                        Err(TableauError::ImpossibleOutcome { .. }),
                        Err(TableauError::ImpossibleOutcome { .. }),
                    ) => {}
                    (r, e) => {
                        report.failures.push(format!(
                            "{p} on state {i}, outcome {outcome}: register {r:?} vs \
                             extended {e:?}"
                        ));
                    }
                }
            }
        }
    }
    report.all_passed = report.failures.is_empty();
    Ok(report)
}
