//! Pauli operators on an `n`-qubit register in the symplectic binary
//! representation.
//!
//! An operator is stored as a pair of packed bit vectors `(x, z)` plus a
//! power of `i`:
//!
//! ```text
//!     P = i^phase · L_0 ⊗ L_1 ⊗ … ⊗ L_{n-1},
//!     L_q = I, X, Z, Y   for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
//! ```
//!
//! Qubit 0 is the leftmost tensor factor. With the letter `Y` (not the raw
//! product `XZ`) as the `(1,1)` basis element, an operator is Hermitian
//! exactly when `phase` is even, and the sign of a Hermitian operator is
//! `(-1)^(phase/2)`. Products and commutators reduce to XORs and popcounts
//! over the packed words, so multiplication of two `n`-qubit operators costs
//! `O(n/64)` with exact phase tracking (e.g. `X·Z = -iY`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors produced by Pauli construction, parsing, and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    /// Two operands act on registers of different width.
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    /// A register of zero qubits has no Pauli group.
    #[error("register must contain at least one qubit")]
    EmptyRegister,
    /// Qubit index outside the register.
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    /// Text form did not parse.
    #[error("invalid Pauli string {0:?}: {1}")]
    Parse(String, String),
}

/// A single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// The `(x, z)` symplectic bits of this letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    /// The letter as written in operator strings.
    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// An element of the `n`-qubit Pauli group.
///
/// The phase is the exponent of `i` multiplying the tensor product of
/// letters, kept modulo 4. Hermitian elements have even phase; their sign is
/// available through [`PauliOperator::sign`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

impl PauliOperator {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        if n == 0 {
            return Err(PauliError::EmptyRegister);
        }
        let w = words_for(n);
        Ok(Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        })
    }

    /// A single letter on qubit `q` of an `n`-qubit register, sign `+1`.
    pub fn single(n: usize, q: usize, letter: PauliLetter) -> Result<Self, PauliError> {
        let mut p = Self::identity(n)?;
        p.set_letter(q, letter)?;
        Ok(p)
    }

    /// Builds an operator from one letter per qubit, with `sign = ±1`.
    pub fn from_letters(letters: &[PauliLetter], negative: bool) -> Result<Self, PauliError> {
        let mut p = Self::identity(letters.len())?;
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l)?;
        }
        if negative {
            p.phase = 2;
        }
        Ok(p)
    }

    /// Register width in qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Exponent of `i` in the phase prefix, modulo 4.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// `x` bit of qubit `q`.
    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    /// `z` bit of qubit `q`.
    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    /// The letter on qubit `q`.
    pub fn letter(&self, q: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrites the letter on qubit `q`.
    pub fn set_letter(&mut self, q: usize, letter: PauliLetter) -> Result<(), PauliError> {
        if q >= self.n {
            return Err(PauliError::IndexOutOfRange {
                index: q,
                n: self.n,
            });
        }
        let (xb, zb) = letter.bits();
        let (w, m) = (q / 64, 1u64 << (q % 64));
        if xb {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
        if zb {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
        Ok(())
    }

    pub(crate) fn set_x_bit(&mut self, q: usize, v: bool) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        if v {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
    }

    pub(crate) fn set_z_bit(&mut self, q: usize, v: bool) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        if v {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
    }

    pub(crate) fn add_phase(&mut self, k: u8) {
        self.phase = (self.phase + k) % 4;
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// True when every letter is `I` (regardless of phase).
    pub fn is_identity_letters(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// True for the exact group identity `+1·I⊗…⊗I`.
    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_letters()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    /// Hermitian elements (`P† = P`) are those with even phase.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The `±1` sign of a Hermitian element, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// The operator multiplied by `-1`.
    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    /// Exact group product `self · rhs`, with the phase tracked modulo 4.
    pub fn mul(&self, rhs: &Self) -> Result<Self, PauliError> {
        if self.n != rhs.n {
            return Err(PauliError::DimensionMismatch(self.n, rhs.n));
        }
        let w = self.x.len();
        let mut x = vec![0u64; w];
        let mut z = vec![0u64; w];
        for i in 0..w {
            x[i] = self.x[i] ^ rhs.x[i];
            z[i] = self.z[i] ^ rhs.z[i];
        }
        // Writing each factor in X^x Z^z normal form, commuting the Z block
        // of the left factor past the X block of the right one contributes
        // (-1)^|z_l & x_r|; converting between the Y-letter and the normal
        // form costs one factor of i per Y.
        let y_l = popcount_and(&self.x, &self.z);
        let y_r = popcount_and(&rhs.x, &rhs.z);
        let y_out: u32 = x.iter().zip(&z).map(|(a, b)| (a & b).count_ones()).sum();
        let swaps = popcount_and(&self.z, &rhs.x);
        let phase_u32 =
            u32::from(self.phase) + u32::from(rhs.phase) + y_l + y_r + 2 * swaps + (4 - y_out % 4);
        Ok(Self {
            n: self.n,
            x,
            z,
            phase: (phase_u32 % 4) as u8,
        })
    }

    /// Whether `self` and `rhs` commute (they otherwise anticommute).
    pub fn commutes_with(&self, rhs: &Self) -> Result<bool, PauliError> {
        if self.n != rhs.n {
            return Err(PauliError::DimensionMismatch(self.n, rhs.n));
        }
        let sym = popcount_and(&self.x, &rhs.z) + popcount_and(&self.z, &rhs.x);
        Ok(sym.is_multiple_of(2))
    }

    /// Extends the register by `extra` identity qubits on the right.
    pub fn padded(&self, extra: usize) -> Self {
        let n = self.n + extra;
        let mut p = Self {
            n,
            x: self.x.clone(),
            z: self.z.clone(),
            phase: self.phase,
        };
        p.x.resize(words_for(n), 0);
        p.z.resize(words_for(n), 0);
        p
    }

    /// Restriction of the letters to `range`, keeping the phase prefix.
    pub fn restricted(&self, range: std::ops::Range<usize>) -> Result<Self, PauliError> {
        if range.end > self.n || range.is_empty() {
            return Err(PauliError::IndexOutOfRange {
                index: range.end,
                n: self.n,
            });
        }
        let mut p = Self::identity(range.len())?;
        p.phase = self.phase;
        for (out, q) in range.enumerate() {
            p.set_letter(out, self.letter(q)).expect("index in range");
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][usize::from(self.phase)];
        write!(f, "{prefix}")?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q).to_char())?;
        }
        Ok(())
    }
}

impl serde::Serialize for PauliOperator {
    /// Serializes as the textual form, e.g. `"-IYI"`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// Parses the textual form: an optional `+`, `-`, `+i`, or `-i` prefix
    /// followed by one of `IXYZ` per qubit, e.g. `"+XIZ"` or `"-IYI"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| PauliError::Parse(s.to_string(), msg.to_string());
        let mut rest = s;
        let mut phase = 0u8;
        if let Some(r) = rest.strip_prefix("+i") {
            phase = 1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix("-i") {
            phase = 3;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            phase = 2;
            rest = r;
        }
        if rest.is_empty() {
            return Err(bad("no letters"));
        }
        let mut letters = Vec::with_capacity(rest.len());
        for c in rest.chars() {
            letters.push(match c {
                'I' => PauliLetter::I,
                'X' => PauliLetter::X,
                'Y' => PauliLetter::Y,
                'Z' => PauliLetter::Z,
                _ => return Err(bad("letters must be one of IXYZ")),
            });
        }
        let mut p = PauliOperator::from_letters(&letters, false)?;
        p.phase = phase;
        Ok(p)
    }
}

/// Deterministic enumeration of the sign-`+1` Hermitian Paulis on `n`
/// qubits.
///
/// Operators are indexed by base-4 digits with qubit 0 as the least
/// significant digit and digit values `0,1,2,3 ↦ I,X,Z,Y`; the `-P` case is
/// covered downstream by relabeling measurement outcomes. Ties between
/// candidate measurements are always broken by this order.
pub fn enumerate_hermitian_paulis(
    n: usize,
    include_identity: bool,
) -> impl Iterator<Item = PauliOperator> {
    assert!(
        n >= 1 && 2 * n < usize::BITS as usize,
        "register too wide to enumerate"
    );
    let start = usize::from(!include_identity);
    (start..1usize << (2 * n)).map(move |k| {
        let mut p = PauliOperator::identity(n).expect("n >= 1");
        for q in 0..n {
            let digit = k >> (2 * q) & 3;
            p.set_x_bit(q, digit & 1 == 1);
            p.set_z_bit(q, digit & 2 == 2);
        }
        p
    })
}
