//! Stabilizer states as generator tableaux, with exact Clifford dynamics
//! and exact Pauli measurement.
//!
//! A state on `n` qubits is the joint `+1` eigenspace of an abelian group
//! generated by `n` independent commuting Hermitian Paulis. All operations
//! here are exact: signs ride along as powers of `i` in the generators, and
//! measurement probabilities are rationals (always `0`, `1/2`, or `1` for a
//! pure stabilizer state). Measurement follows the standard tableau update:
//! a measured Pauli either commutes with the whole group — then its value is
//! determined and read off by solving for it as a product of generators over
//! GF(2) — or it anticommutes with some generator, in which case the outcome
//! is uniformly random and the tableau is patched by generator replacement.
//!
//! [`StabilizerState::canonical_form`] reduces the tableau to a unique
//! row-reduced echelon basis (column order `x_0..x_{n-1}, z_0..z_{n-1}`,
//! row operations performed as exact Pauli products so signs stay correct).
//! Two tableaux describe the same state iff their canonical forms are equal,
//! which gives cheap state equality and hashable memoization keys.

use std::fmt;

use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::clifford::{CliffordCircuit, CliffordError, Gate};
use crate::pauli::{PauliError, PauliOperator};

/// Errors from tableau construction and measurement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    /// Generators must pairwise commute.
    #[error("generators {0} and {1} anticommute")]
    NonCommutingGenerators(usize, usize),
    /// Generators must be independent (no product collapses to ±identity).
    #[error("generators are dependent")]
    DependentGenerators,
    /// Generators must be Hermitian (sign ±1, never ±i).
    #[error("generator {0} is not Hermitian")]
    NonHermitianGenerator(usize),
    /// A state on `n` qubits needs exactly `n` generators.
    #[error("expected {expected} generators, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    /// Operands act on different register widths.
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    /// A forced measurement outcome has probability zero.
    #[error("forced outcome {forced} has probability zero")]
    ImpossibleOutcome { forced: bool },
    /// Dense cross-over (state vectors, overlaps) is capped to keep memory
    /// and runtime bounded.
    #[error("operation requires a dense 2^{0}-dimensional vector; capped at {1} qubits")]
    TooManyQubitsForDense(usize, usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// Outcome of measuring a Hermitian Pauli on a stabilizer state.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    /// Exact probability of outcome `0` (the `+1` eigenvalue).
    pub prob_zero: Rational64,
    /// The realized outcome: `false` for `+1`, `true` for `-1`.
    pub outcome: bool,
    /// The post-measurement state for that outcome.
    pub post: StabilizerState,
}

/// An `n`-qubit pure stabilizer state, stored as `n` group generators.
///
/// Equality is semantic: two values compare equal iff they stabilize the
/// same state (canonical forms match), regardless of which generating set
/// is stored.
#[derive(Debug, Clone)]
pub struct StabilizerState {
    n: usize,
    gens: Vec<PauliOperator>,
}

/// The unique row-reduced generator basis of a state, usable as a hash or
/// ordering key. Equal canonical forms ⇔ equal states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<PauliOperator>);

/// Packs the symplectic rows of `ops` for GF(2) elimination; bit `j` of the
/// row is `x_j`, bit `n + j` is `z_j`.
fn symplectic_rows(ops: &[PauliOperator], n: usize) -> Vec<Vec<u64>> {
    let w = n.div_ceil(64);
    ops.iter()
        .map(|p| {
            let mut row = Vec::with_capacity(2 * w);
            row.extend_from_slice(p.x_words());
            row.extend_from_slice(p.z_words());
            row
        })
        .collect()
}

fn row_is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

fn row_xor(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_set_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// GF(2) rank of the symplectic rows.
fn symplectic_rank(ops: &[PauliOperator], n: usize) -> usize {
    let mut pivots: Vec<Vec<u64>> = Vec::new();
    for mut row in symplectic_rows(ops, n) {
        for p in &pivots {
            let b = lowest_set_bit(p).expect("pivots are nonzero");
            if row[b / 64] >> (b % 64) & 1 == 1 {
                row_xor(&mut row, p);
            }
        }
        if !row_is_zero(row.as_slice()) {
            pivots.push(row);
        }
    }
    pivots.len()
}

impl StabilizerState {
    /// The all-zeros computational basis state `|0…0⟩`.
    pub fn zeros(n: usize) -> Result<Self, TableauError> {
        if n == 0 {
            return Err(PauliError::EmptyRegister.into());
        }
        let gens = (0..n)
            .map(|q| PauliOperator::single(n, q, crate::pauli::PauliLetter::Z))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n, gens })
    }

    /// The computational basis state with the given bits (qubit 0 first).
    pub fn basis_state(bits: &[bool]) -> Result<Self, TableauError> {
        let mut s = Self::zeros(bits.len())?;
        for (q, &b) in bits.iter().enumerate() {
            if b {
                s.gens[q] = s.gens[q].negated();
            }
        }
        Ok(s)
    }

    /// Builds a state from exactly `n` independent commuting Hermitian
    /// generators on `n` qubits.
    pub fn from_generators(gens: Vec<PauliOperator>) -> Result<Self, TableauError> {
        let n = match gens.first() {
            Some(g) => g.num_qubits(),
            None => {
                return Err(TableauError::WrongGeneratorCount {
                    expected: 1,
                    got: 0,
                })
            }
        };
        if gens.len() != n {
            return Err(TableauError::WrongGeneratorCount {
                expected: n,
                got: gens.len(),
            });
        }
        for (i, g) in gens.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(TableauError::DimensionMismatch(n, g.num_qubits()));
            }
            if g.sign().is_none() {
                return Err(TableauError::NonHermitianGenerator(i));
            }
        }
        for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate().skip(i + 1) {
                if !g.commutes_with(h)? {
                    return Err(TableauError::NonCommutingGenerators(i, j));
                }
            }
        }
        if symplectic_rank(&gens, n) != n {
            return Err(TableauError::DependentGenerators);
        }
        Ok(Self { n, gens })
    }

    /// Convenience constructor from generator strings such as `"+XIZ"`.
    pub fn from_generator_strs(gens: &[&str]) -> Result<Self, TableauError> {
        let parsed = gens
            .iter()
            .map(|s| s.parse::<PauliOperator>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators(parsed)
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// The stored generating set (not necessarily canonical).
    pub fn generators(&self) -> &[PauliOperator] {
        &self.gens
    }

    /// The state after running `circuit`, by conjugating every generator.
    pub fn apply_circuit(&self, circuit: &CliffordCircuit) -> Result<Self, TableauError> {
        if circuit.num_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(
                self.n,
                circuit.num_qubits(),
            ));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| circuit.conjugate(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n: self.n, gens })
    }

    /// The state after a single gate.
    pub fn apply_gate(&self, gate: Gate) -> Result<Self, TableauError> {
        let mut c = CliffordCircuit::new(self.n);
        c.push(gate)?;
        self.apply_circuit(&c)
    }

    /// The state `P|ψ⟩` for a Hermitian Pauli `P` (a stabilizer state again,
    /// with group `P S P†`).
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<Self, TableauError> {
        if p.num_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(self.n, p.num_qubits()));
        }
        if p.sign().is_none() {
            return Err(TableauError::NonHermitianGenerator(0));
        }
        let mut gens = self.gens.clone();
        for g in &mut gens {
            if !g.commutes_with(p)? {
                *g = g.negated();
            }
        }
        Ok(Self { n: self.n, gens })
    }

    /// Exact expectation value `⟨ψ|P|ψ⟩ ∈ {-1, 0, +1}` of a Hermitian Pauli.
    pub fn expectation(&self, p: &PauliOperator) -> Result<i8, TableauError> {
        if p.num_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(self.n, p.num_qubits()));
        }
        let sign = p.sign().ok_or(TableauError::NonHermitianGenerator(0))?;
        if p.is_identity_letters() {
            return Ok(sign);
        }
        for g in &self.gens {
            if !g.commutes_with(p)? {
                return Ok(0);
            }
        }
        let member = self.group_member_with_letters(p);
        Ok(if member.phase_exp() == p.phase_exp() {
            1
        } else {
            -1
        })
    }

    /// Solves for the unique group element with the same letters as `p`
    /// (which must commute with the whole group). The stabilizer group of a
    /// pure state is its own centralizer, so the solution always exists.
    fn group_member_with_letters(&self, p: &PauliOperator) -> PauliOperator {
        let mut rows = symplectic_rows(&self.gens, self.n);
        let mut combos: Vec<u128> = (0..self.n).map(|i| 1u128 << i).collect();
        // Forward eliminate into echelon form, tracking which generators
        // were folded into each row.
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (bit, row index)
        for r in 0..rows.len() {
            for &(bit, pr) in &pivots {
                if rows[r][bit / 64] >> (bit % 64) & 1 == 1 {
                    let (a, b) = if pr < r {
                        let (lo, hi) = rows.split_at_mut(r);
                        (&mut hi[0], &lo[pr])
                    } else {
                        unreachable!("pivot rows precede the current row")
                    };
                    row_xor(a, b);
                    combos[r] ^= combos[pr];
                }
            }
            let bit = lowest_set_bit(&rows[r]).expect("generators are independent");
            pivots.push((bit, r));
        }
        let mut target = symplectic_rows(std::slice::from_ref(p), self.n)
            .pop()
            .expect("one row");
        let mut combo = 0u128;
        for &(bit, pr) in &pivots {
            if target[bit / 64] >> (bit % 64) & 1 == 1 {
                row_xor(&mut target, &rows[pr]);
                combo ^= combos[pr];
            }
        }
        debug_assert!(
            row_is_zero(&target),
            "a commuting Pauli must lie in the span of the stabilizer group"
        );
        let mut member = PauliOperator::identity(self.n).expect("n >= 1");
        for (i, g) in self.gens.iter().enumerate() {
            if combo >> i & 1 == 1 {
                member = member.mul(g).expect("same width");
            }
        }
        member
    }

    /// Measures a Hermitian Pauli.
    ///
    /// When the value is random the realized outcome is `forced_outcome`
    /// (default `false`, i.e. the `+1` branch); when it is determined,
    /// `forced_outcome` must agree or [`TableauError::ImpossibleOutcome`] is
    /// returned. The probability of outcome `0` is always exactly `0`,
    /// `1/2`, or `1`.
    pub fn measure_pauli(
        &self,
        p: &PauliOperator,
        forced_outcome: Option<bool>,
    ) -> Result<Measurement, TableauError> {
        if p.num_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(self.n, p.num_qubits()));
        }
        if p.sign().is_none() {
            return Err(TableauError::NonHermitianGenerator(0));
        }
        let anti: Vec<usize> = (0..self.gens.len())
            .filter(|&i| !self.gens[i].commutes_with(p).expect("same width"))
            .collect();
        if anti.is_empty() {
            // Determined outcome: ±P is in the group.
            let value = self.expectation(p)?;
            let outcome = value < 0;
            if let Some(f) = forced_outcome {
                if f != outcome {
                    return Err(TableauError::ImpossibleOutcome { forced: f });
                }
            }
            return Ok(Measurement {
                prob_zero: Rational64::from_integer(i64::from(!outcome)),
                outcome,
                post: self.clone(),
            });
        }
        let outcome = forced_outcome.unwrap_or(false);
        let pivot = anti[0];
        let original = self.gens[pivot].clone();
        let mut gens = self.gens.clone();
        for &i in &anti[1..] {
            // Multiplying by the replaced generator restores commutation
            // with P without changing the group.
            gens[i] = gens[i].mul(&original).expect("same width");
        }
        gens[pivot] = if outcome { p.negated() } else { p.clone() };
        Ok(Measurement {
            prob_zero: Rational64::new(1, 2),
            outcome,
            post: Self { n: self.n, gens },
        })
    }

    /// The unique row-reduced echelon generator basis, signs included.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n;
        let w = n.div_ceil(64);
        let mut gens = self.gens.clone();
        let mut rows = symplectic_rows(&gens, n);
        let mut r = 0;
        // Column order: x_0 .. x_{n-1}, then z_0 .. z_{n-1}.
        for col in 0..2 * n {
            let (word, mask) = if col < n {
                (col / 64, 1u64 << (col % 64))
            } else {
                (w + (col - n) / 64, 1u64 << ((col - n) % 64))
            };
            let Some(pivot) = (r..gens.len()).find(|&i| rows[i][word] & mask != 0) else {
                continue;
            };
            gens.swap(r, pivot);
            rows.swap(r, pivot);
            for i in 0..gens.len() {
                if i != r && rows[i][word] & mask != 0 {
                    gens[i] = gens[i].mul(&gens[r]).expect("same width");
                    let (src, dst) = (rows[r].clone(), &mut rows[i]);
                    row_xor(dst, &src);
                }
            }
            r += 1;
        }
        debug_assert_eq!(r, gens.len(), "generators are independent");
        CanonicalForm(gens)
    }

    /// Appends `extra` fresh qubits in `|0⟩`, widening every generator.
    pub fn tensor_with_zeros(&self, extra: usize) -> Self {
        let n = self.n + extra;
        let mut gens: Vec<PauliOperator> = self.gens.iter().map(|g| g.padded(extra)).collect();
        for q in self.n..n {
            gens.push(
                PauliOperator::single(n, q, crate::pauli::PauliLetter::Z).expect("valid index"),
            );
        }
        Self { n, gens }
    }
}

impl PartialEq for StabilizerState {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }
}

impl Eq for StabilizerState {}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

#[derive(Serialize, Deserialize)]
struct StateWire {
    n: usize,
    generators: Vec<String>,
}

impl Serialize for StabilizerState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        StateWire {
            n: self.n,
            generators: self.gens.iter().map(|g| g.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StabilizerState {
    /// Deserialization re-validates the group structure; malformed
    /// generator sets are rejected, not silently accepted.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = StateWire::deserialize(deserializer)?;
        let gens = wire
            .generators
            .iter()
            .map(|s| s.parse::<PauliOperator>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let state = StabilizerState::from_generators(gens).map_err(D::Error::custom)?;
        if state.num_qubits() != wire.n {
            return Err(D::Error::custom(format!(
                "declared width {} does not match generators on {} qubits",
                wire.n,
                state.num_qubits()
            )));
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::pauli::enumerate_hermitian_paulis;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn bell() -> StabilizerState {
        let c = CliffordCircuit::from_gates(2, vec![Gate::H(0), Gate::Cnot(0, 1)]).unwrap();
        StabilizerState::zeros(2)
            .unwrap()
            .apply_circuit(&c)
            .unwrap()
    }

    #[test]
    fn constructor_validation() {
        use TableauError::*;
        let err = |gens: &[&str]| StabilizerState::from_generator_strs(gens).unwrap_err();
        assert_eq!(err(&["+XI", "+ZI"]), NonCommutingGenerators(0, 1));
        assert_eq!(err(&["+ZZ", "-ZZ"]), DependentGenerators);
        assert_eq!(err(&["+iXX", "+ZZ"]), NonHermitianGenerator(0));
        assert_eq!(
            err(&["+ZZ"]),
            WrongGeneratorCount {
                expected: 2,
                got: 1
            }
        );
        assert_eq!(err(&["+ZZ", "+Z"]), DimensionMismatch(2, 1));
        assert!(StabilizerState::from_generator_strs(&["+XX", "+ZZ"]).is_ok());
    }

    #[test]
    fn bell_state_expectations() {
        let s = bell();
        assert_eq!(s.expectation(&p("+XX")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+ZZ")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+YY")).unwrap(), -1);
        assert_eq!(s.expectation(&p("-YY")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+ZI")).unwrap(), 0);
        assert_eq!(s.expectation(&p("+XY")).unwrap(), 0);
        assert_eq!(s.expectation(&p("+II")).unwrap(), 1);
        assert_eq!(s.expectation(&p("-II")).unwrap(), -1);
    }

    #[test]
    fn expectation_sign_uses_exact_group_phases() {
        // ⟨+XX, +ZZ⟩ contains -YY, not +YY; the subset solve must multiply
        // the generators as Paulis, not merely XOR bits.
        let s = StabilizerState::from_generator_strs(&["+XX", "+ZZ"]).unwrap();
        assert_eq!(s.expectation(&p("+YY")).unwrap(), -1);
        let t = StabilizerState::from_generator_strs(&["-XX", "+ZZ"]).unwrap();
        assert_eq!(t.expectation(&p("+YY")).unwrap(), 1);
    }

    #[test]
    fn deterministic_measurement_and_impossible_forcing() {
        let s = StabilizerState::zeros(1).unwrap();
        let m = s.measure_pauli(&p("+Z"), None).unwrap();
        assert_eq!(m.prob_zero, Rational64::from_integer(1));
        assert!(!m.outcome);
        assert_eq!(m.post, s);
        let err = s.measure_pauli(&p("+Z"), Some(true)).unwrap_err();
        assert_eq!(err, TableauError::ImpossibleOutcome { forced: true });
        // The -1 branch of -Z is outcome 0 on |1⟩.
        let one = StabilizerState::basis_state(&[true]).unwrap();
        let m = one.measure_pauli(&p("-Z"), None).unwrap();
        assert!(!m.outcome);
    }

    #[test]
    fn random_measurement_splits_and_collapses() {
        let s = StabilizerState::zeros(1).unwrap();
        let m0 = s.measure_pauli(&p("+X"), Some(false)).unwrap();
        assert_eq!(m0.prob_zero, Rational64::new(1, 2));
        assert_eq!(m0.post.expectation(&p("+X")).unwrap(), 1);
        let m1 = s.measure_pauli(&p("+X"), Some(true)).unwrap();
        assert_eq!(m1.post.expectation(&p("+X")).unwrap(), -1);
        // Repeating the measurement is now deterministic.
        let again = m1.post.measure_pauli(&p("+X"), None).unwrap();
        assert_eq!(again.prob_zero, Rational64::from_integer(0));
        assert!(again.outcome);
        assert_eq!(again.post, m1.post);
    }

    #[test]
    fn measurement_keeps_generators_commuting_and_independent() {
        let s = StabilizerState::from_generator_strs(&["+XXX", "+ZZI", "+IZZ"]).unwrap();
        for q in enumerate_hermitian_paulis(3, false) {
            let m = s.measure_pauli(&q, None).unwrap();
            // Rebuilding through the validating constructor checks all
            // tableau invariants of the post-measurement state.
            StabilizerState::from_generators(m.post.generators().to_vec()).unwrap();
            assert_eq!(
                m.post.expectation(&q).unwrap(),
                if m.outcome { -1 } else { 1 }
            );
        }
    }

    #[test]
    fn canonical_form_is_generating_set_independent() {
        let a = StabilizerState::from_generator_strs(&["+XX", "+ZZ"]).unwrap();
        let b = StabilizerState::from_generator_strs(&["-YY", "+ZZ"]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_eq!(a, b);
        assert_eq!(a, bell());
        let c = StabilizerState::from_generator_strs(&["+YY", "+ZZ"]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn canonical_form_is_stable_under_random_regeneration() {
        use rand::Rng as _;
        use rand::SeedableRng as _;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..50 {
            let c = CliffordCircuit::random(4, 30, &mut rng);
            let s = StabilizerState::zeros(4)
                .unwrap()
                .apply_circuit(&c)
                .unwrap();
            let canon = s.canonical_form();
            // Re-generate the group by multiplying random generator pairs.
            let mut gens = s.generators().to_vec();
            for _ in 0..10 {
                let i = rng.gen_range(0..4);
                let j = rng.gen_range(0..4);
                if i != j {
                    gens[i] = gens[i].mul(&gens[j]).unwrap();
                }
            }
            let t = StabilizerState::from_generators(gens).unwrap();
            assert_eq!(t.canonical_form(), canon);
        }
    }

    #[test]
    fn apply_pauli_flips_signs_of_anticommuting_generators() {
        // Z|+⟩ = |-⟩.
        let plus = StabilizerState::from_generator_strs(&["+X"]).unwrap();
        let minus = plus.apply_pauli(&p("+Z")).unwrap();
        assert_eq!(
            minus,
            StabilizerState::from_generator_strs(&["-X"]).unwrap()
        );
        // Global phase is irrelevant: measuring a stabilizer leaves the
        // state fixed.
        let fixed = plus.apply_pauli(&p("+X")).unwrap();
        assert_eq!(fixed, plus);
    }

    #[test]
    fn tensor_with_zeros_extends_the_register() {
        let s = bell().tensor_with_zeros(2);
        assert_eq!(s.num_qubits(), 4);
        assert_eq!(s.expectation(&p("+XXII")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+IIZI")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+IIIZ")).unwrap(), 1);
        assert_eq!(s.expectation(&p("+IIXI")).unwrap(), 0);
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let s = bell();
        let js = serde_json::to_string(&s).unwrap();
        let back: StabilizerState = serde_json::from_str(&js).unwrap();
        assert_eq!(s, back);
        // Malformed wire forms are rejected.
        let bad = r#"{"n":2,"generators":["+XI","+ZI"]}"#;
        assert!(serde_json::from_str::<StabilizerState>(bad).is_err());
        let bad_width = r#"{"n":3,"generators":["+XX","+ZZ"]}"#;
        assert!(serde_json::from_str::<StabilizerState>(bad_width).is_err());
    }
}
