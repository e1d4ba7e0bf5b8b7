//! Concrete state families: the six-state instance, its two-label
//! mixed-state variants, the Boolean-function families, exhaustive
//! stabilizer-state enumeration, and the classification of orthogonal
//! two-qubit bases into circuit normal forms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::Rational64;
use thiserror::Error;

use crate::clifford::{synthesize_to_z, CliffordCircuit, CliffordError, Gate};
use crate::ensemble::{EnsembleError, EnsembleItem, LabeledEnsemble, MixtureComponent};
use crate::pauli::{enumerate_hermitian_paulis, PauliError, PauliLetter, PauliOperator};
use crate::tableau::{CanonicalForm, StabilizerState, TableauError};

/// Errors from set construction and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetsError {
    /// Exhaustive enumeration is capped: the state count grows as
    /// `2^n ∏ (2^k + 1)`.
    #[error("enumeration of {0}-qubit stabilizer states is capped at {1} qubits")]
    EnumerationTooLarge(usize, usize),
    /// A Boolean function instance was rejected.
    #[error("invalid Boolean function: {0}")]
    InvalidFunction(String),
    /// The function family needs a function with no nonzero linear
    /// structure and both level sets nonempty.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// Classification expects exactly four states.
    #[error("expected {expected} states, got {got}")]
    WrongStateCount { expected: usize, got: usize },
    /// Classification expects two-qubit states.
    #[error("expected states on {expected} qubits, got {got}")]
    WrongWidth { expected: usize, got: usize },
    /// Inputs to the basis classifier must be pairwise orthogonal.
    #[error("states {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    /// The classifier could not reach a normal form. This contradicts the
    /// structure theorem for orthogonal stabilizer bases, so seeing it
    /// means an engine bug rather than a legitimate input.
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// The six three-qubit product states that are pairwise orthogonal yet not
/// perfectly distinguishable by stabilizer operations:
///
/// ```text
///     |+10⟩, |0+1⟩, |10+⟩, |-10⟩, |0-1⟩, |10-⟩
/// ```
///
/// labeled `0..6` in that order, with uniform priors.
pub fn six_state_set() -> LabeledEnsemble {
    let gens = [
        ["+XII", "-IZI", "+IIZ"],
        ["+ZII", "+IXI", "-IIZ"],
        ["-ZII", "+IZI", "+IIX"],
        ["-XII", "-IZI", "+IIZ"],
        ["+ZII", "-IXI", "-IIZ"],
        ["-ZII", "+IZI", "-IIX"],
    ];
    let states = gens
        .iter()
        .map(|g| StabilizerState::from_generator_strs(g).expect("fixed valid generators"))
        .collect();
    LabeledEnsemble::from_pure_states(states).expect("six valid states")
}

/// The circuit preparing six-state member `(k, s)` from `|000⟩`: an `X` on
/// qubit `k+1 (mod 3)`, a Hadamard on qubit `k`, and a `Z` on qubit `k` when
/// `s` is set. Label `k + 3s` in [`six_state_set`] order.
pub fn six_state_circuit(k: usize, s: bool) -> CliffordCircuit {
    assert!(k < 3);
    let mut gates = vec![Gate::X((k + 1) % 3), Gate::H(k)];
    if s {
        gates.push(Gate::Z(k));
    }
    CliffordCircuit::from_gates(3, gates).expect("fixed valid gates")
}

/// Two equiprobable two-qubit mixed states that no stabilizer protocol can
/// tell apart perfectly, although a single joint measurement of the pair
/// swap would:
///
/// ```text
///     ρ₀ = ½|0+⟩⟨0+| + ½|+0⟩⟨+0|,   ρ₁ = ½|11⟩⟨11| + ½|--⟩⟨--|
/// ```
pub fn mixed_pair() -> LabeledEnsemble {
    let half = Rational64::new(1, 2);
    let comp = |gens: &[&str]| MixtureComponent {
        weight: half,
        state: StabilizerState::from_generator_strs(gens).expect("fixed valid generators"),
    };
    LabeledEnsemble::new(vec![
        EnsembleItem {
            label: 0,
            prior: half,
            components: vec![comp(&["+ZI", "+IX"]), comp(&["+XI", "+IZ"])],
        },
        EnsembleItem {
            label: 1,
            prior: half,
            components: vec![comp(&["-ZI", "-IZ"]), comp(&["-XI", "-IX"])],
        },
    ])
    .expect("fixed valid ensemble")
}

/// The data-hiding pair: uniform mixtures of the first three and last three
/// [`six_state_set`] members. Globally the two density operators are
/// orthogonal, but stabilizer protocols can only separate them at a reduced
/// rate.
pub fn data_hiding_pair() -> LabeledEnsemble {
    let six = six_state_set();
    let third = Rational64::new(1, 3);
    let half = Rational64::new(1, 2);
    let comps = |range: std::ops::Range<usize>| -> Vec<MixtureComponent> {
        six.items()[range]
            .iter()
            .map(|it| MixtureComponent {
                weight: third,
                state: it.components[0].state.clone(),
            })
            .collect()
    };
    LabeledEnsemble::new(vec![
        EnsembleItem {
            label: 0,
            prior: half,
            components: comps(0..3),
        },
        EnsembleItem {
            label: 1,
            prior: half,
            components: comps(3..6),
        },
    ])
    .expect("fixed valid ensemble")
}

/// A Boolean function on up to 6 variables, stored as a truth table.
/// Variable `j` is bit `j` of the argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanFunction {
    n_vars: usize,
    table: u64,
}

impl BooleanFunction {
    /// Wraps a truth table; bit `x` of `table` is `f(x)`.
    pub fn new(n_vars: usize, table: u64) -> Result<Self, SetsError> {
        if n_vars == 0 || n_vars > 6 {
            return Err(SetsError::InvalidFunction(format!(
                "need 1..=6 variables, got {n_vars}"
            )));
        }
        if n_vars < 6 && table >> (1 << n_vars) != 0 {
            return Err(SetsError::InvalidFunction(
                "truth table has bits beyond 2^n entries".into(),
            ));
        }
        Ok(Self { n_vars, table })
    }

    /// Builds a table by evaluating a closure on every input.
    pub fn from_fn(n_vars: usize, f: impl Fn(u64) -> bool) -> Result<Self, SetsError> {
        let mut table = 0u64;
        for x in 0..(1u64 << n_vars) {
            if f(x) {
                table |= 1 << x;
            }
        }
        Self::new(n_vars, table)
    }

    /// The inner-product function `x₀x₁ ⊕ x₂x₃ ⊕ …` on an even number of
    /// variables — the canonical example with no nonzero linear structure.
    pub fn inner_product(n_vars: usize) -> Result<Self, SetsError> {
        if !n_vars.is_multiple_of(2) {
            return Err(SetsError::InvalidFunction(
                "inner-product form needs an even variable count".into(),
            ));
        }
        Self::from_fn(n_vars, |x| {
            let mut acc = false;
            for i in (0..n_vars).step_by(2) {
                acc ^= (x >> i & 1) & (x >> (i + 1) & 1) == 1;
            }
            acc
        })
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.n_vars
    }

    /// Evaluates the function.
    pub fn eval(&self, x: u64) -> bool {
        debug_assert!(x < 1 << self.n_vars);
        self.table >> x & 1 == 1
    }

    /// Inputs with the given function value, ascending.
    pub fn level_set(&self, value: bool) -> Vec<u64> {
        (0..1u64 << self.n_vars)
            .filter(|&x| self.eval(x) == value)
            .collect()
    }

    /// True when no nonzero shift `γ` makes the derivative
    /// `x ↦ f(x) ⊕ f(x⊕γ)` constant, i.e. the function has no nonzero
    /// linear structure. This is the hardness precondition for
    /// [`generalized_set`].
    pub fn has_vanishing_linear_structure(&self) -> bool {
        let size = 1u64 << self.n_vars;
        (1..size).all(|gamma| {
            let first = self.eval(0) ^ self.eval(gamma);
            (1..size).any(|x| self.eval(x) ^ self.eval(x ^ gamma) != first)
        })
    }
}

/// Builds one member of the function family on `3n` qubits.
///
/// The register splits into three `n`-qubit blocks. Block `family` holds the
/// X-basis word `|α⟩ₓ` (generators `(-1)^{α_j} X`), the cyclically next
/// block holds the Z-basis word `|β₁⟩` and the remaining block `|β₀⟩`.
pub(crate) fn function_family_member(
    f: &BooleanFunction,
    family: usize,
    alpha: u64,
    beta1: u64,
    beta0: u64,
) -> StabilizerState {
    let n = f.num_vars();
    debug_assert!(family < 3 && f.eval(beta1) && !f.eval(beta0));
    let mut gens = Vec::with_capacity(3 * n);
    let parts = [
        (alpha, PauliLetter::X),
        (beta1, PauliLetter::Z),
        (beta0, PauliLetter::Z),
    ];
    for (b, &(word, letter)) in parts.iter().enumerate() {
        let start = ((family + b) % 3) * n;
        for j in 0..n {
            let mut g = PauliOperator::single(3 * n, start + j, letter).expect("valid index");
            if word >> j & 1 == 1 {
                g = g.negated();
            }
            gens.push(g);
        }
    }
    StabilizerState::from_generators(gens).expect("product generators are valid")
}

/// The function-indexed family on `3n` qubits: all states
/// `|α⟩ₓ|β₁⟩|β₀⟩` and their two block rotations, over `α ∈ F₂ⁿ`,
/// `f(β₁) = 1`, `f(β₀) = 0`, labeled in `(family, α, β₁, β₀)` order with
/// uniform priors.
///
/// Requires `f` to have no nonzero linear structure and both level sets
/// nonempty; these are the conditions under which no single Pauli
/// measurement can begin to distinguish the members.
pub fn generalized_set(f: &BooleanFunction) -> Result<LabeledEnsemble, SetsError> {
    let n = f.num_vars();
    if 3 * n > crate::dense::DENSE_QUBIT_CAP {
        return Err(SetsError::EnumerationTooLarge(
            3 * n,
            crate::dense::DENSE_QUBIT_CAP,
        ));
    }
    if !f.has_vanishing_linear_structure() {
        return Err(SetsError::PreconditionViolated(
            "function has a nonzero linear structure".into(),
        ));
    }
    let ones = f.level_set(true);
    let zeros = f.level_set(false);
    if ones.is_empty() || zeros.is_empty() {
        return Err(SetsError::PreconditionViolated(
            "a level set of f is empty".into(),
        ));
    }
    let mut states = Vec::new();
    for family in 0..3 {
        for alpha in 0..1u64 << n {
            for &beta1 in &ones {
                for &beta0 in &zeros {
                    states.push(function_family_member(f, family, alpha, beta1, beta0));
                }
            }
        }
    }
    Ok(LabeledEnsemble::from_pure_states(states)?)
}

/// Cap for exhaustive stabilizer-state enumeration.
pub const ENUMERATION_QUBIT_CAP: usize = 4;

/// All pure stabilizer states on `n ≤ 4` qubits, in canonical-form order.
///
/// Computed as the closure of `|0…0⟩` under `{H, S, CNOT}`, deduplicated by
/// canonical form; the count matches `2^n ∏_{k=1..n} (2^k + 1)`.
pub fn enumerate_pure_stabilizer_states(n: usize) -> Result<Vec<StabilizerState>, SetsError> {
    if n == 0 || n > ENUMERATION_QUBIT_CAP {
        return Err(SetsError::EnumerationTooLarge(n, ENUMERATION_QUBIT_CAP));
    }
    let mut gates = Vec::new();
    for q in 0..n {
        gates.push(Gate::H(q));
        gates.push(Gate::S(q));
        for r in 0..n {
            if r != q {
                gates.push(Gate::Cnot(q, r));
            }
        }
    }
    let root = StabilizerState::zeros(n)?;
    let mut seen: BTreeMap<CanonicalForm, StabilizerState> = BTreeMap::new();
    let mut frontier = vec![root.clone()];
    seen.insert(root.canonical_form(), root);
    while let Some(s) = frontier.pop() {
        for &g in &gates {
            let t = s.apply_gate(g)?;
            let key = t.canonical_form();
            if let Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(t.clone());
                frontier.push(t);
            }
        }
    }
    let expected: usize = (1..=n).fold(1usize << n, |acc, k| acc * ((1usize << k) + 1));
    debug_assert_eq!(seen.len(), expected, "stabilizer state count formula");
    Ok(seen.into_values().collect())
}

/// All index subsets of the given size whose states are pairwise orthogonal,
/// in lexicographic order.
pub fn orthogonal_subsets(
    states: &[StabilizerState],
    size: usize,
) -> Result<Vec<Vec<usize>>, SetsError> {
    let m = states.len();
    let mut orth = vec![vec![false; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let o = states[i].overlap_squared(&states[j])? == Rational64::from_integer(0);
            orth[i][j] = o;
            orth[j][i] = o;
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn extend(
        orth: &[Vec<bool>],
        m: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for j in start..m {
            if current.iter().all(|&i| orth[i][j]) {
                current.push(j);
                extend(orth, m, size, j + 1, current, out);
                current.pop();
            }
        }
    }
    extend(&orth, m, size, 0, &mut current, &mut out);
    Ok(out)
}

/// The two circuit normal forms of an orthogonal two-qubit stabilizer
/// basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisForm {
    /// `{|00⟩, |01⟩, |10⟩, |11⟩}`: both qubits read out in the Z basis,
    /// non-adaptively.
    Product,
    /// `{|00⟩, |01⟩, |1+⟩, |1-⟩}`: the second readout basis depends on the
    /// first outcome (Z then Z-or-X).
    Adaptive,
}

impl BasisForm {
    /// The four target states of the normal form, in standard order.
    pub fn target_states(self) -> [StabilizerState; 4] {
        let s = |gens: &[&str]| StabilizerState::from_generator_strs(gens).expect("fixed");
        match self {
            BasisForm::Product => [
                s(&["+ZI", "+IZ"]),
                s(&["+ZI", "-IZ"]),
                s(&["-ZI", "+IZ"]),
                s(&["-ZI", "-IZ"]),
            ],
            BasisForm::Adaptive => [
                s(&["+ZI", "+IZ"]),
                s(&["+ZI", "-IZ"]),
                s(&["-ZI", "+IX"]),
                s(&["-ZI", "-IX"]),
            ],
        }
    }
}

/// Result of normalizing an orthogonal two-qubit basis: a Clifford circuit
/// mapping the inputs onto one of the two forms, and where each input
/// lands.
#[derive(Debug, Clone)]
pub struct BasisClassification {
    pub form: BasisForm,
    /// Circuit `U` with `U|ψ_i⟩ = target[positions[i]]` up to global phase.
    pub circuit: CliffordCircuit,
    /// `positions[i]` is the standard-order slot input `i` is mapped to.
    pub positions: [usize; 4],
}

/// The single-qubit stabilizer letter and sign of qubit 1 of a two-qubit
/// product state.
fn qubit1_letter(t: &StabilizerState) -> Result<(PauliLetter, i8), SetsError> {
    for l in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
        let e = t.expectation(&PauliOperator::single(2, 1, l)?)?;
        if e != 0 {
            return Ok((l, e));
        }
    }
    Err(SetsError::ClassificationFailed(
        "transformed state is not a product on qubit 1".into(),
    ))
}

/// Classifies an orthogonal basis of four two-qubit stabilizer states into
/// one of the two normal forms of [`BasisForm`], constructively.
///
/// The classifier finds a Pauli that takes definite values on all four
/// states, split two against two; rotating it onto `Z₀` makes every state a
/// product `|0⟩⊗φ` or `|1⟩⊗χ`, single-qubit rotations finish the job. The
/// returned circuit is verified against the targets before returning.
pub fn classify_two_qubit_basis(
    states: &[StabilizerState],
) -> Result<BasisClassification, SetsError> {
    if states.len() != 4 {
        return Err(SetsError::WrongStateCount {
            expected: 4,
            got: states.len(),
        });
    }
    for (i, s) in states.iter().enumerate() {
        if s.num_qubits() != 2 {
            return Err(SetsError::WrongWidth {
                expected: 2,
                got: s.num_qubits(),
            });
        }
        for (j, t) in states.iter().enumerate().skip(i + 1) {
            if s.overlap_squared(t)? != Rational64::from_integer(0) {
                return Err(SetsError::NotOrthogonal(i, j));
            }
        }
    }

    // A letter with definite values on all four states, two +1 and two -1.
    let mut split = None;
    for g in enumerate_hermitian_paulis(2, false) {
        let mut evals = [0i8; 4];
        for (i, s) in states.iter().enumerate() {
            evals[i] = s.expectation(&g)?;
        }
        if evals.iter().all(|&v| v != 0) && evals.iter().filter(|&&v| v == 1).count() == 2 {
            split = Some((g, evals));
            break;
        }
    }
    let (g, evals) = split.ok_or_else(|| {
        SetsError::ClassificationFailed("no Pauli splits the basis two against two".into())
    })?;
    let a_idx: Vec<usize> = (0..4).filter(|&i| evals[i] == 1).collect();
    let b_idx: Vec<usize> = (0..4).filter(|&i| evals[i] == -1).collect();

    let mut circuit = synthesize_to_z(&[g])?;
    let mut ts: Vec<StabilizerState> = states
        .iter()
        .map(|s| s.apply_circuit(&circuit))
        .collect::<Result<_, _>>()?;
    let push_gates = |circuit: &mut CliffordCircuit,
                      ts: &mut Vec<StabilizerState>,
                      gates: &[Gate]|
     -> Result<(), SetsError> {
        for &gate in gates {
            circuit.push(gate)?;
            for t in ts.iter_mut() {
                *t = t.apply_gate(gate)?;
            }
        }
        Ok(())
    };

    // Rotate the first +1-block state onto |00⟩; its partner becomes |01⟩
    // by orthogonality.
    let (l, s) = qubit1_letter(&ts[a_idx[0]])?;
    let mut gates = Vec::new();
    match l {
        PauliLetter::Z => {}
        PauliLetter::X => gates.push(Gate::H(1)),
        PauliLetter::Y => gates.extend([Gate::S(1), Gate::H(1)]),
        PauliLetter::I => unreachable!("qubit1_letter never returns I"),
    }
    // Track the sign through the rotation: S,H sends sY to -sZ; H sends sX
    // to sZ.
    let s_after = if l == PauliLetter::Y { -s } else { s };
    if s_after == -1 {
        gates.push(Gate::X(1));
    }
    push_gates(&mut circuit, &mut ts, &gates)?;

    // The -1 block decides the form; a Y-basis pair is rotated to X by an S
    // gate, which fixes the computational pair up to phase.
    let (lb, _) = qubit1_letter(&ts[b_idx[0]])?;
    if lb == PauliLetter::Y {
        push_gates(&mut circuit, &mut ts, &[Gate::S(1)])?;
    }
    let (lb, _) = qubit1_letter(&ts[b_idx[0]])?;
    let form = match lb {
        PauliLetter::Z => BasisForm::Product,
        PauliLetter::X => BasisForm::Adaptive,
        _ => {
            return Err(SetsError::ClassificationFailed(
                "second block not in Z or X basis after rotation".into(),
            ))
        }
    };

    let mut positions = [usize::MAX; 4];
    for (slot, &i) in a_idx.iter().enumerate() {
        let (la, sa) = qubit1_letter(&ts[i])?;
        if la != PauliLetter::Z {
            return Err(SetsError::ClassificationFailed(
                "first block left the computational basis".into(),
            ));
        }
        debug_assert!(slot < 2);
        positions[i] = usize::from(sa == -1);
    }
    for &i in &b_idx {
        let (_, sb) = qubit1_letter(&ts[i])?;
        positions[i] = 2 + usize::from(sb == -1);
    }

    // Verify constructively before returning.
    let targets = form.target_states();
    for (i, t) in ts.iter().enumerate() {
        if *t != targets[positions[i]] {
            return Err(SetsError::ClassificationFailed(format!(
                "verification failed: input {i} landed on {t}, expected {}",
                targets[positions[i]]
            )));
        }
    }
    Ok(BasisClassification {
        form,
        circuit,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    #[test]
    fn six_state_set_is_pairwise_orthogonal_with_uniform_priors() {
        let six = six_state_set();
        assert_eq!(six.num_labels(), 6);
        assert_eq!(six.num_qubits(), 3);
        let states: Vec<_> = six
            .items()
            .iter()
            .map(|it| it.components[0].state.clone())
            .collect();
        for (i, a) in states.iter().enumerate() {
            for b in &states[i + 1..] {
                assert_eq!(a.overlap_squared(b).unwrap(), Rational64::from_integer(0));
            }
            assert_eq!(six.items()[i].prior, Rational64::new(1, 6));
        }
    }

    #[test]
    fn six_state_circuits_prepare_the_labeled_states() {
        let six = six_state_set();
        for (label, item) in six.items().iter().enumerate() {
            let (k, s) = (label % 3, label >= 3);
            let prepared = StabilizerState::zeros(3)
                .unwrap()
                .apply_circuit(&six_state_circuit(k, s))
                .unwrap();
            assert_eq!(prepared, item.components[0].state, "label {label}");
        }
    }

    #[test]
    fn mixed_pair_components_are_orthogonal_across_labels_globally() {
        let pair = mixed_pair();
        assert_eq!(pair.num_labels(), 2);
        // Tr ρ₀ρ₁ = Σ w_i w_j |⟨ψ_i|φ_j⟩|²; the supports are not disjoint
        // pairwise, but the mixtures are globally orthogonal.
        let mut trace_product = Rational64::from_integer(0);
        for a in &pair.items()[0].components {
            for b in &pair.items()[1].components {
                trace_product += a.weight * b.weight * a.state.overlap_squared(&b.state).unwrap();
            }
        }
        assert_eq!(trace_product, Rational64::from_integer(0));
    }

    #[test]
    fn data_hiding_pair_reuses_the_six_states() {
        let pair = data_hiding_pair();
        assert_eq!(pair.num_labels(), 2);
        assert_eq!(pair.items()[0].components.len(), 3);
        let mut trace_product = Rational64::from_integer(0);
        for a in &pair.items()[0].components {
            for b in &pair.items()[1].components {
                trace_product += a.weight * b.weight * a.state.overlap_squared(&b.state).unwrap();
            }
        }
        assert_eq!(trace_product, Rational64::from_integer(0));
    }

    #[test]
    fn boolean_function_machinery() {
        let ip2 = BooleanFunction::inner_product(2).unwrap();
        assert!(!ip2.eval(0b00) && !ip2.eval(0b01) && !ip2.eval(0b10) && ip2.eval(0b11));
        assert!(ip2.has_vanishing_linear_structure());
        assert_eq!(ip2.level_set(true), vec![0b11]);
        assert_eq!(ip2.level_set(false), vec![0b00, 0b01, 0b10]);

        // A linear function is all linear structure.
        let parity = BooleanFunction::from_fn(2, |x| (x.count_ones() % 2) == 1).unwrap();
        assert!(!parity.has_vanishing_linear_structure());

        // The cubic AND on three variables qualifies.
        let and3 = BooleanFunction::from_fn(3, |x| x == 0b111).unwrap();
        assert!(and3.has_vanishing_linear_structure());

        assert!(BooleanFunction::new(0, 0).is_err());
        assert!(BooleanFunction::new(2, 0b10000).is_err());
        assert!(BooleanFunction::inner_product(3).is_err());
    }

    #[test]
    fn generalized_set_shape_and_orthogonality() {
        let f = BooleanFunction::inner_product(2).unwrap();
        let set = generalized_set(&f).unwrap();
        // 3 families × 4 α × 1 β₁ × 3 β₀.
        assert_eq!(set.num_labels(), 36);
        assert_eq!(set.num_qubits(), 6);
        // Members within a family with different α or β words are
        // orthogonal; spot-check the first family block.
        let s0 = &set.items()[0].components[0].state;
        let s1 = &set.items()[1].components[0].state;
        assert_eq!(s0.overlap_squared(s1).unwrap(), Rational64::from_integer(0));

        let parity = BooleanFunction::from_fn(2, |x| (x.count_ones() % 2) == 1).unwrap();
        assert!(matches!(
            generalized_set(&parity).unwrap_err(),
            SetsError::PreconditionViolated(_)
        ));
    }

    #[test]
    fn enumeration_counts_match_the_formula() {
        assert_eq!(enumerate_pure_stabilizer_states(1).unwrap().len(), 6);
        assert_eq!(enumerate_pure_stabilizer_states(2).unwrap().len(), 60);
        assert!(enumerate_pure_stabilizer_states(5).is_err());
    }

    #[test]
    fn orthogonal_subsets_of_single_qubit_states() {
        let states = enumerate_pure_stabilizer_states(1).unwrap();
        let pairs = orthogonal_subsets(&states, 2).unwrap();
        // {0,1}, {+,-}, {+i,-i}.
        assert_eq!(pairs.len(), 3);
        let triples = orthogonal_subsets(&states, 3).unwrap();
        assert!(triples.is_empty());
    }

    #[test]
    fn classify_product_and_adaptive_bases() {
        let product: Vec<StabilizerState> = BasisForm::Product.target_states().to_vec();
        let c = classify_two_qubit_basis(&product).unwrap();
        assert_eq!(c.form, BasisForm::Product);
        assert_eq!(c.positions, [0, 1, 2, 3]);

        let adaptive: Vec<StabilizerState> = BasisForm::Adaptive.target_states().to_vec();
        let c = classify_two_qubit_basis(&adaptive).unwrap();
        assert_eq!(c.form, BasisForm::Adaptive);

        // Bell basis: a Clifford rotation of the product form.
        let bell = vec![
            StabilizerState::from_generator_strs(&["+XX", "+ZZ"]).unwrap(),
            StabilizerState::from_generator_strs(&["-XX", "+ZZ"]).unwrap(),
            StabilizerState::from_generator_strs(&["+XX", "-ZZ"]).unwrap(),
            StabilizerState::from_generator_strs(&["-XX", "-ZZ"]).unwrap(),
        ];
        let c = classify_two_qubit_basis(&bell).unwrap();
        assert_eq!(c.form, BasisForm::Product);
        // The returned circuit maps each input onto its slot.
        let targets = c.form.target_states();
        for (i, s) in bell.iter().enumerate() {
            assert_eq!(
                s.apply_circuit(&c.circuit).unwrap(),
                targets[c.positions[i]]
            );
        }
    }

    #[test]
    fn classify_rejects_bad_inputs() {
        let product = BasisForm::Product.target_states();
        assert!(matches!(
            classify_two_qubit_basis(&product[..3]),
            Err(SetsError::WrongStateCount { .. })
        ));
        let overlapping = vec![
            product[0].clone(),
            product[1].clone(),
            product[2].clone(),
            StabilizerState::from_generator_strs(&["-ZI", "+IX"]).unwrap(),
        ];
        assert!(matches!(
            classify_two_qubit_basis(&overlapping),
            Err(SetsError::NotOrthogonal(2, 3))
        ));
    }
}
