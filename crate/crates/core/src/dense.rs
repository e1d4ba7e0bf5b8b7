//! Dense state-vector reference simulator.
//!
//! Everything in this module is the slow, obviously-correct oracle that the
//! tableau engine is validated against: raw `2^n` complex amplitude vectors,
//! gate-by-gate updates, Pauli action by index arithmetic, and Hermitian
//! density matrices with spectral entropy. The only piece of "cleverness" is
//! [`StabilizerState::to_statevector`], which expands a tableau into
//! amplitudes by summing the stabilizer group over a Gray-code walk
//! (`O(2^n · n)` rather than `O(4^n)`), and the exact dyadic snap in
//! [`StabilizerState::overlap_squared`]: squared overlaps of stabilizer
//! states are always `0` or `2^-s`, so the numerically computed value is
//! snapped to the nearest such rational (tolerance `1e-9`) and returned
//! exactly.
//!
//! Index convention: qubit 0 is the leftmost tensor factor, i.e. the most
//! significant bit of the amplitude index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;

use crate::clifford::Gate;
use crate::pauli::PauliOperator;
use crate::tableau::{StabilizerState, TableauError};

/// Widest register expanded densely; `2^12` amplitudes keeps every
/// exhaustive certificate comfortably in memory.
pub const DENSE_QUBIT_CAP: usize = 12;

/// Tolerance for snapping numerically computed overlaps onto exact dyadic
/// rationals, and for treating amplitudes as zero.
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// An operation the dense simulator supports: the stabilizer gate set plus
/// the doubly-controlled Hadamard (with per-control polarities) used by
/// measurement-readout circuits. The latter is not a stabilizer operation,
/// which is exactly why it only exists on the dense side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenseOp {
    /// A plain stabilizer gate.
    Gate(Gate),
    /// Hadamard on `target`, applied when qubit `c1.0` reads `c1.1` and
    /// qubit `c2.0` reads `c2.1`.
    ControlledControlledH {
        c1: (usize, bool),
        c2: (usize, bool),
        target: usize,
    },
}

/// A dense `n`-qubit pure state.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state with the given bits (qubit 0 first).
    pub fn basis(bits: &[bool]) -> Self {
        let n = bits.len();
        assert!((1..=DENSE_QUBIT_CAP).contains(&n));
        let mut idx = 0usize;
        for (q, &b) in bits.iter().enumerate() {
            if b {
                idx |= 1 << (n - 1 - q);
            }
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[idx] = Complex64::ONE;
        Self { n, amps }
    }

    /// Wraps raw amplitudes (length must be a power of two).
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        let n = amps.len().trailing_zeros() as usize;
        assert!(amps.len() == 1 << n && n >= 1);
        Self { n, amps }
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// The raw amplitudes, indexed with qubit 0 as the most significant bit.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    /// Applies one operation in place.
    pub fn apply(&mut self, op: DenseOp) {
        match op {
            DenseOp::Gate(g) => self.apply_gate(g),
            DenseOp::ControlledControlledH { c1, c2, target } => {
                assert!(c1.0 != c2.0 && c1.0 != target && c2.0 != target);
                let (m1, m2, mt) = (self.mask(c1.0), self.mask(c2.0), self.mask(target));
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for idx in 0..self.amps.len() {
                    let active = (idx & m1 != 0) == c1.1 && (idx & m2 != 0) == c2.1;
                    if active && idx & mt == 0 {
                        let (a0, a1) = (self.amps[idx], self.amps[idx | mt]);
                        self.amps[idx] = s * (a0 + a1);
                        self.amps[idx | mt] = s * (a0 - a1);
                    }
                }
            }
        }
    }

    /// Applies a stabilizer gate in place.
    pub fn apply_gate(&mut self, g: Gate) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match g {
            Gate::H(q) => {
                let m = self.mask(q);
                for idx in 0..self.amps.len() {
                    if idx & m == 0 {
                        let (a0, a1) = (self.amps[idx], self.amps[idx | m]);
                        self.amps[idx] = s * (a0 + a1);
                        self.amps[idx | m] = s * (a0 - a1);
                    }
                }
            }
            Gate::S(q) => {
                let m = self.mask(q);
                for idx in 0..self.amps.len() {
                    if idx & m != 0 {
                        self.amps[idx] *= Complex64::I;
                    }
                }
            }
            Gate::X(q) => {
                let m = self.mask(q);
                for idx in 0..self.amps.len() {
                    if idx & m == 0 {
                        self.amps.swap(idx, idx | m);
                    }
                }
            }
            Gate::Z(q) => {
                let m = self.mask(q);
                for idx in 0..self.amps.len() {
                    if idx & m != 0 {
                        self.amps[idx] = -self.amps[idx];
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (self.mask(c), self.mask(t));
                for idx in 0..self.amps.len() {
                    if idx & mc != 0 && idx & mt == 0 {
                        self.amps.swap(idx, idx | mt);
                    }
                }
            }
            Gate::Cz(a, b) => {
                let (ma, mb) = (self.mask(a), self.mask(b));
                for idx in 0..self.amps.len() {
                    if idx & ma != 0 && idx & mb != 0 {
                        self.amps[idx] = -self.amps[idx];
                    }
                }
            }
        }
    }

    /// Index-space masks `(x, z)` of a Pauli: bit `n-1-q` is set when the
    /// letter on qubit `q` has the corresponding symplectic bit.
    fn index_masks(&self, p: &PauliOperator) -> (usize, usize, u32) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        let mut ycount = 0u32;
        for q in 0..self.n {
            if p.x_bit(q) {
                xm |= self.mask(q);
            }
            if p.z_bit(q) {
                zm |= self.mask(q);
            }
            if p.x_bit(q) && p.z_bit(q) {
                ycount += 1;
            }
        }
        (xm, zm, ycount)
    }

    /// The vector `P|ψ⟩`.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Self {
        assert_eq!(p.num_qubits(), self.n);
        let (xm, zm, ycount) = self.index_masks(p);
        let phases = [Complex64::ONE, Complex64::I, -Complex64::ONE, -Complex64::I];
        let mut out = vec![Complex64::ZERO; self.amps.len()];
        for (idx, &a) in self.amps.iter().enumerate() {
            // P|b⟩ = i^(phase + #Y) (-1)^(b·z) |b ⊕ x⟩.
            let ph = (u32::from(p.phase_exp()) + ycount + 2 * (idx & zm).count_ones()) % 4;
            out[idx ^ xm] += phases[ph as usize] * a;
        }
        Self {
            n: self.n,
            amps: out,
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨ψ|P|ψ⟩` (real for Hermitian `P`).
    pub fn expectation_pauli(&self, p: &PauliOperator) -> f64 {
        self.inner(&self.apply_pauli(p)).re
    }

    /// Projects onto the `(-1)^outcome` eigenspace of a Hermitian Pauli and
    /// renormalizes. Returns the outcome probability and the post state
    /// (`None` when the probability vanishes).
    pub fn project_pauli(&self, p: &PauliOperator, outcome: bool) -> (f64, Option<Self>) {
        let pv = self.apply_pauli(p);
        let sign = if outcome { -1.0 } else { 1.0 };
        let mut post = Vec::with_capacity(self.amps.len());
        for (a, b) in self.amps.iter().zip(&pv.amps) {
            post.push(0.5 * (a + sign * b));
        }
        let prob: f64 = post.iter().map(|a| a.norm_sqr()).sum();
        if prob < SNAP_TOLERANCE {
            return (0.0, None);
        }
        let scale = prob.sqrt().recip();
        for a in &mut post {
            *a *= scale;
        }
        (
            prob,
            Some(Self {
                n: self.n,
                amps: post,
            }),
        )
    }

    /// Squared norm (1 for normalized states).
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// The (generally unnormalized) vector `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: Complex64) -> Self {
        assert_eq!(self.n, other.n);
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a + c * b)
            .collect();
        Self { n: self.n, amps }
    }

    /// The vector `c·self`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }
}

/// Snaps a numerically computed squared overlap of stabilizer states onto
/// its exact value: either `0` or `2^-s` for an integer `s ≥ 0`.
pub fn snap_overlap_squared(value: f64, n: usize) -> Rational64 {
    if value < SNAP_TOLERANCE {
        return Rational64::from_integer(0);
    }
    for s in 0..=(2 * n as i64) {
        let target = 0.5f64.powi(s as i32);
        if (value - target).abs() < SNAP_TOLERANCE {
            return Rational64::new(1, 1i64 << s);
        }
    }
    panic!("squared overlap {value} of stabilizer states is not dyadic: engine bug");
}

impl StabilizerState {
    /// Expands the tableau into a dense amplitude vector.
    ///
    /// A basis state `|b⟩` in the support is located by measuring `Z_q`
    /// qubit by qubit (taking the `+1` branch whenever the value is
    /// undetermined); the state is then `Π|b⟩` up to normalization, where
    /// the projector `Π` is the average of the full stabilizer group. The
    /// group sum walks all `2^n` elements in Gray-code order so each step
    /// costs one Pauli product.
    pub fn to_statevector(&self) -> Result<StateVector, TableauError> {
        let n = self.num_qubits();
        if n > DENSE_QUBIT_CAP {
            return Err(TableauError::TooManyQubitsForDense(n, DENSE_QUBIT_CAP));
        }
        let mut cur = self.clone();
        let mut bits = vec![false; n];
        for (q, bit) in bits.iter_mut().enumerate() {
            let zq = PauliOperator::single(n, q, crate::pauli::PauliLetter::Z)?;
            let m = cur.measure_pauli(&zq, None)?;
            *bit = m.outcome;
            cur = m.post;
        }
        let mut idx0 = 0usize;
        for (q, &b) in bits.iter().enumerate() {
            if b {
                idx0 |= 1 << (n - 1 - q);
            }
        }

        let mut out = StateVector {
            n,
            amps: vec![Complex64::ZERO; 1 << n],
        };
        let phases = [Complex64::ONE, Complex64::I, -Complex64::ONE, -Complex64::I];
        let mut acc = PauliOperator::identity(n)?;
        let mut add = |acc: &PauliOperator| {
            let (xm, zm, ycount) = out.index_masks(acc);
            let ph = (u32::from(acc.phase_exp()) + ycount + 2 * (idx0 & zm).count_ones()) % 4;
            out.amps[idx0 ^ xm] += phases[ph as usize];
        };
        add(&acc);
        for step in 1usize..1 << n {
            let flip = step.trailing_zeros() as usize;
            acc = acc.mul(&self.generators()[flip]).expect("same width");
            add(&acc);
        }
        let norm = out.norm_sqr().sqrt();
        debug_assert!(norm > 0.0, "support state must have nonzero amplitude");
        for a in &mut out.amps {
            *a /= norm;
        }
        Ok(out)
    }

    /// Exact squared overlap `|⟨self|other⟩|²` as a rational.
    ///
    /// Computed densely and snapped to the guaranteed dyadic grid, so the
    /// result is exact despite the floating-point route.
    pub fn overlap_squared(&self, other: &Self) -> Result<Rational64, TableauError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(TableauError::DimensionMismatch(
                self.num_qubits(),
                other.num_qubits(),
            ));
        }
        let a = self.to_statevector()?;
        let b = other.to_statevector()?;
        Ok(snap_overlap_squared(
            a.inner(&b).norm_sqr(),
            self.num_qubits(),
        ))
    }
}

/// A dense density operator on few qubits, for entropy computations.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    n: usize,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// `Σ w_k |ψ_k⟩⟨ψ_k|` for nonnegative weights.
    pub fn from_mixture(parts: &[(f64, StateVector)]) -> Self {
        assert!(!parts.is_empty());
        let n = parts[0].1.num_qubits();
        let dim = 1 << n;
        let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, v) in parts {
            assert!(*w >= 0.0 && v.num_qubits() == n);
            for i in 0..dim {
                for j in 0..dim {
                    mat[(i, j)] += *w * v.amplitudes()[i] * v.amplitudes()[j].conj();
                }
            }
        }
        Self { n, mat }
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// `Tr ρ`.
    pub fn trace(&self) -> f64 {
        (0..self.mat.nrows()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// `Tr ρσ` (real for Hermitian operands).
    pub fn overlap(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        let mut acc = Complex64::ZERO;
        for i in 0..self.mat.nrows() {
            for j in 0..self.mat.ncols() {
                acc += self.mat[(i, j)] * other.mat[(j, i)];
            }
        }
        acc.re
    }

    /// Von Neumann entropy `-Tr ρ log₂ ρ` in bits.
    pub fn von_neumann_entropy_bits(&self) -> f64 {
        let eig = self.mat.clone().symmetric_eigen();
        let mut h = 0.0;
        for &lambda in eig.eigenvalues.iter() {
            if lambda > 1e-12 {
                h -= lambda * lambda.log2();
            }
        }
        h
    }
}
