//! Clifford circuits over the gate set `{H, S, X, Z, CNOT, CZ}` and their
//! action on Pauli operators by conjugation.
//!
//! Conjugation `P ↦ U P U†` is computed directly on the symplectic bits with
//! the usual update rules, so pushing a circuit of `g` gates through a Pauli
//! costs `O(g)` bit operations and stays exact, including signs. The module
//! also provides [`synthesize_to_z`], which builds a circuit mapping a list
//! of independent commuting sign-`±1` Paulis onto `+Z_0, +Z_1, …`; this is
//! the workhorse behind classifying orthogonal state families into circuit
//! normal forms.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::pauli::{PauliError, PauliLetter, PauliOperator};

/// Errors from circuit construction and synthesis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    /// Gate touches a qubit outside the register.
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    /// A two-qubit gate needs two distinct qubits.
    #[error("two-qubit gate applied to a single qubit {0}")]
    DuplicateQubit(usize),
    /// Circuit and operand act on different register widths.
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    /// Synthesis targets must be independent, commuting, and Hermitian.
    #[error("synthesis targets must be independent commuting Hermitian Paulis: {0}")]
    InvalidTargets(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// One gate from the stabilizer gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Hadamard on a qubit.
    H(usize),
    /// Phase gate `diag(1, i)` on a qubit.
    S(usize),
    /// Pauli X on a qubit.
    X(usize),
    /// Pauli Z on a qubit.
    Z(usize),
    /// Controlled-NOT with `(control, target)`.
    Cnot(usize, usize),
    /// Controlled-Z on an unordered pair.
    Cz(usize, usize),
}

impl Gate {
    /// Qubits touched by the gate.
    pub fn qubits(self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) => vec![a, b],
        }
    }

    fn validate(self, n: usize) -> Result<(), CliffordError> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n {
                return Err(CliffordError::IndexOutOfRange { index: q, n });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CliffordError::DuplicateQubit(qs[0]));
        }
        Ok(())
    }

    /// In-place conjugation `P ↦ G P G†` on the symplectic bits.
    pub fn conjugate(self, p: &mut PauliOperator) {
        match self {
            Gate::H(q) => {
                let (xb, zb) = (p.x_bit(q), p.z_bit(q));
                // X ↔ Z, Y ↦ -Y.
                p.set_x_bit(q, zb);
                p.set_z_bit(q, xb);
                if xb && zb {
                    p.add_phase(2);
                }
            }
            Gate::S(q) => {
                let (xb, zb) = (p.x_bit(q), p.z_bit(q));
                // X ↦ Y, Y ↦ -X, Z ↦ Z.
                if xb && zb {
                    p.add_phase(2);
                }
                p.set_z_bit(q, xb ^ zb);
            }
            Gate::X(q) => {
                if p.z_bit(q) {
                    p.add_phase(2);
                }
            }
            Gate::Z(q) => {
                if p.x_bit(q) {
                    p.add_phase(2);
                }
            }
            Gate::Cnot(c, t) => {
                let (xc, zc) = (p.x_bit(c), p.z_bit(c));
                let (xt, zt) = (p.x_bit(t), p.z_bit(t));
                // X_c ↦ X_c X_t, Z_t ↦ Z_c Z_t; the sign flips exactly for
                // the products that produce two Y letters, e.g. X_c Z_t.
                if xc && zt && !(xt ^ zc) {
                    p.add_phase(2);
                }
                p.set_x_bit(t, xt ^ xc);
                p.set_z_bit(c, zc ^ zt);
            }
            Gate::Cz(a, b) => {
                let (xa, za) = (p.x_bit(a), p.z_bit(a));
                let (xb, zb) = (p.x_bit(b), p.z_bit(b));
                // X_a ↦ X_a Z_b and symmetrically; sign flips when exactly
                // one side carries a Y after the exchange.
                if xa && xb && (za ^ zb) {
                    p.add_phase(2);
                }
                p.set_z_bit(a, za ^ xb);
                p.set_z_bit(b, zb ^ xa);
            }
        }
    }

    /// The inverse as a short gate sequence (`S` is the only non-involution).
    pub fn inverse_sequence(self) -> Vec<Gate> {
        match self {
            // S† = Z·S as operators, i.e. apply S first and then Z.
            Gate::S(q) => vec![Gate::S(q), Gate::Z(q)],
            g => vec![g],
        }
    }
}

/// An ordered list of gates on a fixed-width register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    /// An empty circuit on `n` qubits.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit from a gate list, validating indices.
    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self, CliffordError> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// The gate list in application order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Appends a validated gate.
    pub fn push(&mut self, g: Gate) -> Result<(), CliffordError> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends all gates of `other`.
    pub fn extend(&mut self, other: &CliffordCircuit) -> Result<(), CliffordError> {
        if self.n != other.n {
            return Err(CliffordError::DimensionMismatch(self.n, other.n));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Conjugates `p` by the whole circuit: `p ↦ U p U†`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator, CliffordError> {
        if self.n != p.num_qubits() {
            return Err(CliffordError::DimensionMismatch(self.n, p.num_qubits()));
        }
        let mut out = p.clone();
        for g in &self.gates {
            g.conjugate(&mut out);
        }
        Ok(out)
    }

    /// The inverse circuit.
    pub fn inverse(&self) -> Self {
        let gates = self
            .gates
            .iter()
            .rev()
            .flat_map(|g| g.inverse_sequence())
            .collect();
        Self { n: self.n, gates }
    }

    /// A uniformly random gate sequence of the given length, for
    /// cross-checking the tableau engine against dense simulation.
    pub fn random<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> Self {
        assert!(n >= 1);
        let mut gates = Vec::with_capacity(len);
        let qubits: Vec<usize> = (0..n).collect();
        for _ in 0..len {
            let q = *qubits.choose(rng).expect("n >= 1");
            let g = match rng.gen_range(0..6u8) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                2 => Gate::X(q),
                3 => Gate::Z(q),
                kind => {
                    if n == 1 {
                        Gate::H(q)
                    } else {
                        let mut r = *qubits.choose(rng).expect("n >= 1");
                        while r == q {
                            r = *qubits.choose(rng).expect("n >= 1");
                        }
                        if kind == 4 {
                            Gate::Cnot(q, r)
                        } else {
                            Gate::Cz(q, r)
                        }
                    }
                }
            };
            gates.push(g);
        }
        Self { n, gates }
    }
}

/// Synthesizes a circuit `U` with `U g_i U† = +Z_i` for each target.
///
/// The targets must be pairwise commuting, independent, Hermitian Paulis on
/// a common register with `k ≤ n`. The construction places one target at a
/// time: single-qubit rotations turn every letter on qubits `≥ i` into `Z`,
/// CNOTs fold the support onto the pivot qubit, and a final `X` fixes the
/// sign, never disturbing the already-placed `Z_0 … Z_{i-1}`.
pub fn synthesize_to_z(targets: &[PauliOperator]) -> Result<CliffordCircuit, CliffordError> {
    let invalid = |msg: &str| CliffordError::InvalidTargets(msg.to_string());
    let k = targets.len();
    if k == 0 {
        return Err(invalid("no targets"));
    }
    let n = targets[0].num_qubits();
    if k > n {
        return Err(invalid("more targets than qubits"));
    }
    for (i, t) in targets.iter().enumerate() {
        if t.num_qubits() != n {
            return Err(CliffordError::DimensionMismatch(n, t.num_qubits()));
        }
        if t.sign().is_none() {
            return Err(invalid("target is not Hermitian"));
        }
        if t.is_identity_letters() {
            return Err(invalid("target has identity letters"));
        }
        for u in &targets[..i] {
            if !t.commutes_with(u)? {
                return Err(invalid("targets do not commute"));
            }
        }
    }

    let mut circuit = CliffordCircuit::new(n);
    let mut images: Vec<PauliOperator> = targets.to_vec();
    let apply = |circuit: &mut CliffordCircuit, images: &mut Vec<PauliOperator>, g: Gate| {
        circuit.push(g).expect("synthesized gates are in range");
        for im in images.iter_mut() {
            g.conjugate(im);
        }
    };

    for i in 0..k {
        // Rotate every letter on the free qubits i..n into Z.
        for q in i..n {
            match images[i].letter(q) {
                PauliLetter::Y => {
                    apply(&mut circuit, &mut images, Gate::S(q));
                    apply(&mut circuit, &mut images, Gate::H(q));
                }
                PauliLetter::X => apply(&mut circuit, &mut images, Gate::H(q)),
                _ => {}
            }
        }
        // An image supported entirely on the placed Z_0..Z_{i-1} would be a
        // product of earlier targets, contradicting independence.
        let pivot = (i..n)
            .find(|&q| images[i].z_bit(q))
            .ok_or_else(|| invalid("targets are dependent"))?;
        if pivot != i {
            for g in [
                Gate::Cnot(pivot, i),
                Gate::Cnot(i, pivot),
                Gate::Cnot(pivot, i),
            ] {
                apply(&mut circuit, &mut images, g);
            }
        }
        // CNOT(m, i) maps Z_i Z_m ↦ Z_i, folding the remaining support onto
        // the pivot; the same move clears Z letters left on placed qubits.
        for m in (i + 1)..n {
            if images[i].z_bit(m) {
                apply(&mut circuit, &mut images, Gate::Cnot(m, i));
            }
        }
        for j in 0..i {
            if images[i].z_bit(j) {
                apply(&mut circuit, &mut images, Gate::Cnot(j, i));
            }
        }
        if images[i].sign() == Some(-1) {
            apply(&mut circuit, &mut images, Gate::X(i));
        }
        debug_assert_eq!(
            images[i],
            PauliOperator::single(n, i, PauliLetter::Z).expect("valid index")
        );
    }
    Ok(circuit)
}
