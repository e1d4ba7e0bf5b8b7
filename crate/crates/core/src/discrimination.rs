//! Discrimination analysis: single-round no-progress certificates, the
//! exact decision procedure for perfect distinguishability under adaptive
//! Pauli strategies, optimal bounded-depth success probabilities, and the
//! constructive witnesses for the function-indexed families.
//!
//! The model: a referee draws a label from the instance's prior and hands
//! over the corresponding (possibly mixed) state. The player may adaptively
//! measure Hermitian Pauli observables — the measurements available to
//! stabilizer circuits with classical feedback — and must finally guess the
//! label. Because every branch of such a strategy keeps the conditional
//! states stabilizer states with exactly rational weights, the whole
//! analysis is carried out without floating point.
//!
//! Soundness contract of [`is_perfectly_discriminable`]:
//!
//! * `Yes(strategy)` comes with a strategy tree whose success probability
//!   evaluates to exactly 1;
//! * `No(witness)` comes with a measurement path leading to two labels
//!   whose surviving components have positive squared overlap — confusable
//!   under *any* continuation, quantum or otherwise — or exhausts every
//!   measurement by such failures;
//! * `Unknown` is returned when the depth budget runs out before either
//!   certificate appears (deeper search may still settle it).

use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dense::StateVector;
use crate::ensemble::{EnsembleError, LabeledEnsemble};
use crate::pauli::{enumerate_hermitian_paulis, PauliError, PauliOperator};
use crate::sets::{function_family_member, generalized_set, BooleanFunction, SetsError};
use crate::tableau::{CanonicalForm, StabilizerState, TableauError};

/// Errors from the discrimination layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscriminationError {
    /// A guess refers to a label absent from the instance.
    #[error("strategy guesses label {0}, which the instance does not contain")]
    UnknownLabel(usize),
    /// Exhaustive certificates over all Paulis on `3n` qubits are capped.
    #[error("certificate over {0}-qubit Paulis is capped at {1} qubits")]
    CertificateTooLarge(usize, usize),
    /// A subset that theory guarantees to be discriminable was not settled;
    /// reported honestly instead of being papered over.
    #[error("expected a perfect strategy for {0}, search returned {1}")]
    ExpectedDiscriminable(String, String),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Sets(#[from] SetsError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// An adaptive measure-then-guess strategy tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StrategyNode {
    /// Stop and announce a label.
    Guess { guess: usize },
    /// Measure a Hermitian Pauli and branch on the outcome.
    Measure {
        measure: PauliOperator,
        on_zero: Box<StrategyNode>,
        on_one: Box<StrategyNode>,
    },
}

impl StrategyNode {
    /// Number of measurement rounds along the deepest branch.
    pub fn depth(&self) -> usize {
        match self {
            StrategyNode::Guess { .. } => 0,
            StrategyNode::Measure {
                on_zero, on_one, ..
            } => 1 + on_zero.depth().max(on_one.depth()),
        }
    }
}

/// A flattened conditional ensemble: pure components with joint (label
/// posterior × mixture) weights summing to one.
#[derive(Debug, Clone)]
struct Posterior {
    components: Vec<(usize, Rational64, StabilizerState)>,
}

/// Memoization key: the multiset of labeled weighted canonical forms.
type PosteriorKey = Vec<(usize, Rational64, CanonicalForm)>;

impl Posterior {
    fn from_ensemble(e: &LabeledEnsemble) -> Self {
        let mut components = Vec::new();
        for item in e.items() {
            for c in &item.components {
                components.push((item.label, item.prior * c.weight, c.state.clone()));
            }
        }
        Self { components }
    }

    fn key(&self) -> PosteriorKey {
        let mut k: PosteriorKey = self
            .components
            .iter()
            .map(|(l, w, s)| (*l, *w, s.canonical_form()))
            .collect();
        k.sort();
        k
    }

    /// Total weight per label, ascending by label.
    fn label_masses(&self) -> Vec<(usize, Rational64)> {
        let mut acc: Vec<(usize, Rational64)> = Vec::new();
        for (l, w, _) in &self.components {
            match acc.binary_search_by_key(l, |e| e.0) {
                Ok(i) => acc[i].1 += w,
                Err(i) => acc.insert(i, (*l, *w)),
            }
        }
        acc
    }

    /// The most likely label (lowest label wins ties) and its mass.
    fn best_guess(&self) -> (usize, Rational64) {
        let masses = self.label_masses();
        let mut best = masses[0];
        for &(l, w) in &masses[1..] {
            if w > best.1 {
                best = (l, w);
            }
        }
        best
    }

    /// The positive-probability branches of measuring `p`: outcome, branch
    /// probability, and renormalized posterior.
    fn measure(
        &self,
        p: &PauliOperator,
    ) -> Result<Vec<(bool, Rational64, Posterior)>, TableauError> {
        let mut out = Vec::with_capacity(2);
        for outcome in [false, true] {
            let mut total = Rational64::zero();
            let mut comps = Vec::new();
            for (l, w, s) in &self.components {
                match s.measure_pauli(p, Some(outcome)) {
                    Ok(m) => {
                        let pa = if outcome {
                            Rational64::from_integer(1) - m.prob_zero
                        } else {
                            m.prob_zero
                        };
                        if pa.is_zero() {
                            continue;
                        }
                        total += *w * pa;
                        comps.push((*l, *w * pa, m.post));
                    }
                    Err(TableauError::ImpossibleOutcome { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            if total.is_zero() {
                continue;
            }
            for c in &mut comps {
                c.1 /= total;
            }
            out.push((outcome, total, Posterior { components: comps }));
        }
        Ok(out)
    }

    /// The first (lowest component indices) pair of distinct labels whose
    /// states are not orthogonal — an unrecoverable confusion.
    fn confusable_pair(&self) -> Result<Option<ConfusablePair>, TableauError> {
        for (i, (la, _, sa)) in self.components.iter().enumerate() {
            for (lb, _, sb) in &self.components[i + 1..] {
                if la == lb {
                    continue;
                }
                let ov = sa.overlap_squared(sb)?;
                if !ov.is_zero() {
                    return Ok(Some(ConfusablePair {
                        label_a: *la,
                        label_b: *lb,
                        overlap_squared: ov,
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// Two labels whose surviving states overlap: no continuation of any kind
/// can tell them apart with certainty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusablePair {
    pub label_a: usize,
    pub label_b: usize,
    /// Exact squared overlap of the two component states.
    pub overlap_squared: Rational64,
}

/// What one outcome of a first-round measurement leaves behind.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeSummary {
    /// `false` for the +1 outcome.
    pub outcome: bool,
    /// Exact probability of this outcome under the instance.
    pub probability: Rational64,
    /// Posterior mass per surviving label.
    pub label_masses: Vec<(usize, Rational64)>,
    /// Number of distinct post-measurement pure states across components.
    pub distinct_states: usize,
    /// A non-orthogonal cross-label pair, when one survives.
    pub confusable: Option<ConfusablePair>,
}

/// First-round analysis of a single Pauli measurement.
#[derive(Debug, Clone, Serialize)]
pub struct FirstRoundEntry {
    pub pauli: PauliOperator,
    pub outcomes: Vec<OutcomeSummary>,
    /// Every positive-probability outcome leaves a confusable pair: the
    /// measurement makes no progress toward perfect discrimination.
    pub no_progress: bool,
    /// Stronger: additionally every label survives every outcome with
    /// positive probability (nothing is even partially excluded).
    pub strong_no_progress: bool,
}

/// First-round analysis over every nontrivial Hermitian Pauli.
#[derive(Debug, Clone, Serialize)]
pub struct FirstRoundReport {
    pub entries: Vec<FirstRoundEntry>,
    /// All entries satisfy [`FirstRoundEntry::no_progress`].
    pub all_no_progress: bool,
    /// All entries satisfy [`FirstRoundEntry::strong_no_progress`].
    pub all_strong_no_progress: bool,
}

/// Analyzes a single first-round measurement on the instance.
pub fn first_round_entry(
    e: &LabeledEnsemble,
    p: &PauliOperator,
) -> Result<FirstRoundEntry, DiscriminationError> {
    let post = Posterior::from_ensemble(e);
    let num_labels = e.num_labels();
    let mut outcomes = Vec::new();
    let mut no_progress = true;
    let mut strong = true;
    let branches = post.measure(p)?;
    if branches.len() < 2 {
        // A deterministic measurement excludes one outcome entirely.
        strong = false;
    }
    for (outcome, probability, branch) in branches {
        let confusable = branch.confusable_pair()?;
        if confusable.is_none() {
            no_progress = false;
        }
        let label_masses = branch.label_masses();
        if label_masses.len() < num_labels {
            strong = false;
        }
        let mut forms: Vec<CanonicalForm> = branch
            .components
            .iter()
            .map(|(_, _, s)| s.canonical_form())
            .collect();
        forms.sort();
        forms.dedup();
        outcomes.push(OutcomeSummary {
            outcome,
            probability,
            label_masses,
            distinct_states: forms.len(),
            confusable,
        });
    }
    Ok(FirstRoundEntry {
        pauli: p.clone(),
        outcomes,
        no_progress,
        strong_no_progress: strong && no_progress,
    })
}

/// Whether measuring `p` makes no progress on the instance (every
/// positive-probability outcome keeps a confusable cross-label pair).
pub fn condition_holds(
    e: &LabeledEnsemble,
    p: &PauliOperator,
) -> Result<bool, DiscriminationError> {
    Ok(first_round_entry(e, p)?.no_progress)
}

/// Runs [`first_round_entry`] over all nontrivial Hermitian Paulis.
pub fn first_round_report(e: &LabeledEnsemble) -> Result<FirstRoundReport, DiscriminationError> {
    let mut entries = Vec::new();
    for p in enumerate_hermitian_paulis(e.num_qubits(), false) {
        entries.push(first_round_entry(e, &p)?);
    }
    let all_no_progress = entries.iter().all(|x| x.no_progress);
    let all_strong_no_progress = entries.iter().all(|x| x.strong_no_progress);
    Ok(FirstRoundReport {
        entries,
        all_no_progress,
        all_strong_no_progress,
    })
}

/// A certificate that perfect discrimination is impossible: following the
/// listed measurement outcomes (each of positive probability) ends with two
/// labels whose states overlap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonOrthogonalWitness {
    /// Measurements and outcomes leading to the confusion, in order.
    pub path: Vec<(PauliOperator, bool)>,
    pub pair: ConfusablePair,
}

/// Outcome of the decision procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    /// Perfectly discriminable; the strategy achieves success probability 1.
    Yes(StrategyNode),
    /// Not perfectly discriminable, at any depth.
    No(NonOrthogonalWitness),
    /// Undecided within the depth budget.
    Unknown,
}

/// Decision result with search statistics.
#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    /// Distinct conditional ensembles examined.
    pub nodes_explored: usize,
    pub max_depth: usize,
}

#[derive(Clone)]
enum MemoVerdict {
    Yes(StrategyNode),
    No(NonOrthogonalWitness),
    UnknownAt(usize),
}

enum BranchOutcome {
    Yes(StrategyNode),
    No(NonOrthogonalWitness),
    Unknown,
    /// The branch posterior equals the node itself: measuring made no
    /// change, so no strategy rooted here can gain from it.
    SelfLoop,
}

struct Searcher {
    memo: HashMap<PosteriorKey, MemoVerdict>,
    nodes: usize,
}

impl Searcher {
    fn resolve(
        &mut self,
        paulis: &[PauliOperator],
        post: &Posterior,
        depth: usize,
    ) -> Result<MemoVerdict, TableauError> {
        self.nodes += 1;
        let masses = post.label_masses();
        if masses.len() == 1 {
            return Ok(MemoVerdict::Yes(StrategyNode::Guess { guess: masses[0].0 }));
        }
        if let Some(pair) = post.confusable_pair()? {
            return Ok(MemoVerdict::No(NonOrthogonalWitness {
                path: Vec::new(),
                pair,
            }));
        }
        if depth == 0 {
            return Ok(MemoVerdict::UnknownAt(0));
        }
        let key = post.key();
        match self.memo.get(&key) {
            Some(MemoVerdict::Yes(s)) => return Ok(MemoVerdict::Yes(s.clone())),
            Some(MemoVerdict::No(w)) => return Ok(MemoVerdict::No(w.clone())),
            Some(MemoVerdict::UnknownAt(d)) if *d >= depth => {
                return Ok(MemoVerdict::UnknownAt(depth))
            }
            _ => {}
        }

        let mut first_failure: Option<NonOrthogonalWitness> = None;
        let mut all_proven_failed = true;
        let mut yes: Option<StrategyNode> = None;
        for p in paulis {
            let branches = post.measure(p)?;
            let mut outcomes = Vec::with_capacity(branches.len());
            let mut informative = false;
            for (a, _, branch) in &branches {
                if branch.key() == key {
                    outcomes.push((*a, BranchOutcome::SelfLoop));
                } else {
                    informative = true;
                    let r = match self.resolve(paulis, branch, depth - 1)? {
                        MemoVerdict::Yes(s) => BranchOutcome::Yes(s),
                        MemoVerdict::No(w) => BranchOutcome::No(w),
                        MemoVerdict::UnknownAt(_) => BranchOutcome::Unknown,
                    };
                    outcomes.push((*a, r));
                }
            }
            if !informative {
                // Measuring p does not change the ensemble at all; it can be
                // dropped from any strategy, so it neither helps nor counts
                // as a refuted option.
                continue;
            }
            let all_yes = outcomes
                .iter()
                .all(|(_, o)| matches!(o, BranchOutcome::Yes(_)));
            if all_yes && outcomes.len() == 2 {
                let mut children: Vec<(bool, StrategyNode)> = outcomes
                    .into_iter()
                    .map(|(a, o)| match o {
                        BranchOutcome::Yes(s) => (a, s),
                        _ => unreachable!("checked all_yes"),
                    })
                    .collect();
                children.sort_by_key(|(a, _)| *a);
                let node = StrategyNode::Measure {
                    measure: p.clone(),
                    on_zero: Box::new(children[0].1.clone()),
                    on_one: Box::new(children[1].1.clone()),
                };
                yes = Some(node);
                break;
            }
            // A No branch or a self-loop branch each rule p out: the No
            // branch is hit with positive probability and is unrecoverable;
            // a self-loop branch reduces to this very node with fewer
            // rounds, which by induction cannot succeed either.
            let mut p_failed = false;
            for (a, o) in outcomes {
                match o {
                    BranchOutcome::No(w) if first_failure.is_none() => {
                        let mut path = vec![(p.clone(), a)];
                        path.extend(w.path);
                        first_failure = Some(NonOrthogonalWitness { path, pair: w.pair });
                        p_failed = true;
                    }
                    BranchOutcome::No(_) | BranchOutcome::SelfLoop => p_failed = true,
                    _ => {}
                }
            }
            if !p_failed {
                all_proven_failed = false;
            }
        }

        let verdict = if let Some(node) = yes {
            MemoVerdict::Yes(node)
        } else if all_proven_failed {
            match first_failure {
                Some(w) => MemoVerdict::No(w),
                // Only reachable if every measurement self-loops while the
                // labels are orthogonal, which cannot happen; stay honest
                // rather than assert.
                None => MemoVerdict::UnknownAt(depth),
            }
        } else {
            MemoVerdict::UnknownAt(depth)
        };
        let entry = match &verdict {
            MemoVerdict::UnknownAt(d) => {
                // Keep the deepest failed budget.
                match self.memo.get(&key) {
                    Some(MemoVerdict::UnknownAt(prev)) if prev >= d => None,
                    _ => Some(verdict.clone()),
                }
            }
            _ => Some(verdict.clone()),
        };
        if let Some(v) = entry {
            self.memo.insert(key, v);
        }
        Ok(verdict)
    }
}

/// Decides whether the instance is perfectly discriminable by adaptive
/// Pauli strategies, searching to the given measurement depth.
///
/// `Yes`/`No` verdicts are exact and depth-independent (see the module
/// docs); `Unknown` only means the budget ran out.
pub fn is_perfectly_discriminable(
    e: &LabeledEnsemble,
    max_depth: usize,
) -> Result<DecisionReport, DiscriminationError> {
    let root = Posterior::from_ensemble(e);
    let paulis: Vec<PauliOperator> = enumerate_hermitian_paulis(e.num_qubits(), false).collect();
    let mut searcher = Searcher {
        memo: HashMap::new(),
        nodes: 0,
    };
    let verdict = match searcher.resolve(&paulis, &root, max_depth)? {
        MemoVerdict::Yes(s) => Verdict::Yes(s),
        MemoVerdict::No(w) => Verdict::No(w),
        MemoVerdict::UnknownAt(_) => Verdict::Unknown,
    };
    Ok(DecisionReport {
        verdict,
        nodes_explored: searcher.nodes,
        max_depth,
    })
}

/// Exact success probability of a fixed strategy on an instance.
pub fn evaluate_strategy(
    e: &LabeledEnsemble,
    strategy: &StrategyNode,
) -> Result<Rational64, DiscriminationError> {
    fn walk(
        e: &LabeledEnsemble,
        post: &Posterior,
        node: &StrategyNode,
    ) -> Result<Rational64, DiscriminationError> {
        match node {
            StrategyNode::Guess { guess } => {
                if !e.items().iter().any(|it| it.label == *guess) {
                    return Err(DiscriminationError::UnknownLabel(*guess));
                }
                Ok(post
                    .components
                    .iter()
                    .filter(|(l, _, _)| l == guess)
                    .map(|(_, w, _)| *w)
                    .sum())
            }
            StrategyNode::Measure {
                measure,
                on_zero,
                on_one,
            } => {
                let mut acc = Rational64::zero();
                for (outcome, prob, branch) in post.measure(measure)? {
                    let child = if outcome { on_one } else { on_zero };
                    acc += prob * walk(e, &branch, child)?;
                }
                Ok(acc)
            }
        }
    }
    walk(e, &Posterior::from_ensemble(e), strategy)
}

/// The exact optimum success probability over strategies of at most
/// `depth` adaptive Pauli measurements, with a strategy attaining it.
/// Ties prefer guessing over measuring, then the enumeration-first Pauli.
pub fn success_probability_lower_bound(
    e: &LabeledEnsemble,
    depth: usize,
) -> Result<(Rational64, StrategyNode), DiscriminationError> {
    struct Optimizer {
        memo: HashMap<(PosteriorKey, usize), (Rational64, StrategyNode)>,
    }
    impl Optimizer {
        fn best(
            &mut self,
            paulis: &[PauliOperator],
            post: &Posterior,
            depth: usize,
        ) -> Result<(Rational64, StrategyNode), TableauError> {
            let (guess, mass) = post.best_guess();
            let mut best = (mass, StrategyNode::Guess { guess });
            if depth == 0 || mass == Rational64::from_integer(1) {
                return Ok(best);
            }
            let key = (post.key(), depth);
            if let Some(hit) = self.memo.get(&key) {
                return Ok(hit.clone());
            }
            for p in paulis {
                let branches = post.measure(p)?;
                if branches.iter().all(|(_, _, b)| b.key() == key.0) {
                    continue;
                }
                debug_assert_eq!(branches.len(), 2, "informative measurements split");
                let mut value = Rational64::zero();
                let mut children: Vec<(bool, StrategyNode)> = Vec::with_capacity(2);
                for (a, prob, branch) in branches {
                    let (v, s) = self.best(paulis, &branch, depth - 1)?;
                    value += prob * v;
                    children.push((a, s));
                }
                if value > best.0 {
                    children.sort_by_key(|(a, _)| *a);
                    best = (
                        value,
                        StrategyNode::Measure {
                            measure: p.clone(),
                            on_zero: Box::new(children[0].1.clone()),
                            on_one: Box::new(children[1].1.clone()),
                        },
                    );
                }
            }
            self.memo.insert(key, best.clone());
            Ok(best)
        }
    }
    let paulis: Vec<PauliOperator> = enumerate_hermitian_paulis(e.num_qubits(), false).collect();
    let mut opt = Optimizer {
        memo: HashMap::new(),
    };
    Ok(opt.best(&paulis, &Posterior::from_ensemble(e), depth)?)
}

/// The sub-instance with one label removed, keeping the original labels and
/// uniform priors over the rest.
pub fn leave_one_out(
    e: &LabeledEnsemble,
    excluded: usize,
) -> Result<LabeledEnsemble, EnsembleError> {
    let rest: Vec<_> = e
        .items()
        .iter()
        .filter(|it| it.label != excluded)
        .cloned()
        .collect();
    let m = rest.len() as i64;
    LabeledEnsemble::new(
        rest.into_iter()
            .map(|mut it| {
                it.prior = Rational64::new(1, m);
                it
            })
            .collect(),
    )
}

/// A perfect strategy for the six-state instance with one state excluded.
///
/// Any five of the six states are perfectly discriminable. For
/// `excluded = 5` the returned tree is the explicit three-round protocol
/// (measure `Z` on qubit 2; then `Z` on qubit 1 or 0 depending on the
/// outcome; finish with an `X`-basis readout); other indices are found by
/// search. The returned probability is the exact success value, always 1.
pub fn leave_one_out_strategy(
    excluded: usize,
) -> Result<(StrategyNode, Rational64), DiscriminationError> {
    let six = crate::sets::six_state_set();
    if !six.items().iter().any(|it| it.label == excluded) {
        return Err(DiscriminationError::UnknownLabel(excluded));
    }
    let sub = leave_one_out(&six, excluded)?;
    let strategy = if excluded == 5 {
        let guess = |g: usize| Box::new(StrategyNode::Guess { guess: g });
        let measure = |s: &str, z: Box<StrategyNode>, o: Box<StrategyNode>| {
            Box::new(StrategyNode::Measure {
                measure: s.parse().expect("fixed Pauli"),
                on_zero: z,
                on_one: o,
            })
        };
        *measure(
            "+IIZ",
            measure("+IZI", guess(2), measure("+XII", guess(0), guess(3))),
            measure("+ZII", measure("+IXI", guess(1), guess(4)), guess(2)),
        )
    } else {
        match is_perfectly_discriminable(&sub, 4)?.verdict {
            Verdict::Yes(s) => s,
            other => {
                return Err(DiscriminationError::ExpectedDiscriminable(
                    format!("six-state subset without label {excluded}"),
                    format!("{other:?}"),
                ))
            }
        }
    };
    let value = evaluate_strategy(&sub, &strategy)?;
    if value != Rational64::from_integer(1) {
        return Err(DiscriminationError::ExpectedDiscriminable(
            format!("six-state subset without label {excluded}"),
            format!("strategy value {value}"),
        ));
    }
    Ok((strategy, value))
}

/// One verified no-progress witness for a Pauli against the function
/// family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyWitness {
    pub pauli: PauliOperator,
    /// Member on which the measurement outcome is uniformly random.
    pub mu: usize,
    /// Member confusable with `mu` after the measurement.
    pub mu_prime: usize,
    /// `|⟨ψ_μ'|P|ψ_μ⟩|²`, exactly `4^-n` in the X case and 1 in the Z case.
    pub transported_overlap: Rational64,
}

/// Exhaustive no-progress certificate for the function-indexed family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyCertificate {
    pub num_vars: usize,
    pub set_size: usize,
    pub num_paulis: usize,
    /// Paulis with X or Y support (balanced on a Z block).
    pub x_case: usize,
    /// Pure Z-type Paulis (balanced on the X block they shift).
    pub z_case: usize,
    /// Every witness passed both exact checks.
    pub all_verified: bool,
    /// The first few witnesses, for reporting.
    pub samples: Vec<FamilyWitness>,
    /// Human-readable descriptions of any failures (empty on success).
    pub failures: Vec<String>,
}

/// Certificate cap: `4^(3n) - 1` Paulis are checked, with two dense inner
/// products each.
pub const FAMILY_CERTIFICATE_VAR_CAP: usize = 3;

/// Proves, Pauli by Pauli, that no single measurement makes progress on
/// [`generalized_set`]: for every nontrivial `P` there are members
/// `μ, μ'` with `⟨ψ_μ|P|ψ_μ⟩ = 0` and `|⟨ψ_μ'|P|ψ_μ⟩|² > 0`.
///
/// Witnesses are constructed from the block structure of `P` (not searched
/// for), then verified exactly with the tableau engine and dense overlaps.
pub fn family_certificate(f: &BooleanFunction) -> Result<FamilyCertificate, DiscriminationError> {
    let n = f.num_vars();
    if n > FAMILY_CERTIFICATE_VAR_CAP {
        return Err(DiscriminationError::CertificateTooLarge(
            3 * n,
            3 * FAMILY_CERTIFICATE_VAR_CAP,
        ));
    }
    let set = generalized_set(f)?;
    let ones = f.level_set(true);
    let zeros = f.level_set(false);

    // Label lookup and dense cache for the members.
    let mut label_of: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut vectors: Vec<StateVector> = Vec::with_capacity(set.num_labels());
    for item in set.items() {
        let s = &item.components[0].state;
        label_of.insert(s.canonical_form(), item.label);
        vectors.push(s.to_statevector()?);
    }
    let member = |family: usize, alpha: u64, beta1: u64, beta0: u64| {
        let s = function_family_member(f, family, alpha, beta1, beta0);
        let label = label_of[&s.canonical_form()];
        (label, s)
    };

    // Per-block words of a Pauli: (x bits, z bits) of block b as integers.
    let block_words = |p: &PauliOperator, b: usize| -> (u64, u64) {
        let mut x = 0u64;
        let mut z = 0u64;
        for j in 0..n {
            if p.x_bit(b * n + j) {
                x |= 1 << j;
            }
            if p.z_bit(b * n + j) {
                z |= 1 << j;
            }
        }
        (x, z)
    };

    let expected_x_overlap = Rational64::new(1, 1i64 << (2 * n));
    let mut report = FamilyCertificate {
        num_vars: n,
        set_size: set.num_labels(),
        num_paulis: 0,
        x_case: 0,
        z_case: 0,
        all_verified: true,
        samples: Vec::new(),
        failures: Vec::new(),
    };

    for p in enumerate_hermitian_paulis(3 * n, false) {
        report.num_paulis += 1;
        let words: Vec<(u64, u64)> = (0..3).map(|b| block_words(&p, b)).collect();
        let x_block = (0..3).find(|&b| words[b].0 != 0);
        let (mu, mu_s, mu_prime, expected) = match x_block {
            Some(b) => {
                // P acts with X or Y inside block b; place a Z word there
                // whose f-derivative along the X pattern is 1.
                report.x_case += 1;
                let gamma = words[b].0;
                let beta0 = (0..1u64 << n)
                    .find(|&beta| !f.eval(beta) && f.eval(beta ^ gamma))
                    .expect("derivative of f is non-constant for every nonzero shift");
                let beta1 = beta0 ^ gamma;
                // Families putting β₀ (for μ) and β₁ (for μ') at block b.
                let (mu, mu_s) = member((b + 1) % 3, 0, ones[0], beta0);
                let (mu_prime, _) = member((b + 2) % 3, 0, beta1, zeros[0]);
                (mu, mu_s, mu_prime, expected_x_overlap)
            }
            None => {
                // Pure Z-type: shifts the X word of any member whose X block
                // meets its support.
                report.z_case += 1;
                let b = (0..3).find(|&b| words[b].1 != 0).expect("nontrivial Pauli");
                let delta = words[b].1;
                let (mu, mu_s) = member(b, 0, ones[0], zeros[0]);
                let (mu_prime, _) = member(b, delta, ones[0], zeros[0]);
                (mu, mu_s, mu_prime, Rational64::from_integer(1))
            }
        };

        let expectation = mu_s.expectation(&p)?;
        let pv = vectors[mu].apply_pauli(&p);
        let transported =
            crate::dense::snap_overlap_squared(vectors[mu_prime].inner(&pv).norm_sqr(), 3 * n);
        let ok = expectation == 0 && mu != mu_prime && transported == expected;
        if !ok {
            report.all_verified = false;
            report.failures.push(format!(
                "P = {p}: expectation {expectation} on member {mu}, transported overlap \
                 {transported} against member {mu_prime} (expected {expected})"
            ));
        } else if report.samples.len() < 3 {
            report.samples.push(FamilyWitness {
                pauli: p.clone(),
                mu,
                mu_prime,
                transported_overlap: transported,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::sets::{mixed_pair, six_state_set};

    fn pure_pair(a: &[&str], b: &[&str]) -> LabeledEnsemble {
        LabeledEnsemble::from_pure_states(vec![
            StabilizerState::from_generator_strs(a).unwrap(),
            StabilizerState::from_generator_strs(b).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn first_round_distinguishes_progress_from_no_progress() {
        let zero_one = pure_pair(&["+Z"], &["-Z"]);
        // Z separates the labels: both outcomes leave a single label.
        let z_entry = first_round_entry(&zero_one, &"+Z".parse().unwrap()).unwrap();
        assert!(!z_entry.no_progress);
        // X collapses both labels onto the same state.
        let x_entry = first_round_entry(&zero_one, &"+X".parse().unwrap()).unwrap();
        assert!(x_entry.no_progress);
        assert_eq!(x_entry.outcomes.len(), 2);
        let pair = x_entry.outcomes[0].confusable.as_ref().unwrap();
        assert_eq!(pair.overlap_squared, Rational64::from_integer(1));
    }

    #[test]
    fn six_state_set_defeats_every_first_measurement() {
        let report = first_round_report(&six_state_set()).unwrap();
        assert_eq!(report.entries.len(), 63);
        assert!(report.all_no_progress);
        // The plain condition holds everywhere, but some measurements do
        // exclude labels, so the strong form fails for the pure instance.
        assert!(!report.all_strong_no_progress);
    }

    #[test]
    fn third_qubit_z_measurement_shape_on_the_six_states() {
        // Measuring Z on the last qubit: probability 1/2 each; outcome 0
        // keeps labels {0, 2, 3, 5} with states |+10⟩, |100⟩, |-10⟩, |100⟩
        // (three distinct states; labels 2 and 5 collapse together).
        let entry = first_round_entry(&six_state_set(), &"+IIZ".parse().unwrap()).unwrap();
        let o0 = &entry.outcomes[0];
        assert_eq!(o0.probability, Rational64::new(1, 2));
        let labels: Vec<usize> = o0.label_masses.iter().map(|x| x.0).collect();
        assert_eq!(labels, vec![0, 2, 3, 5]);
        assert_eq!(o0.distinct_states, 3);
        let pair = o0.confusable.as_ref().unwrap();
        assert_eq!((pair.label_a, pair.label_b), (2, 5));
        assert_eq!(pair.overlap_squared, Rational64::from_integer(1));
    }

    #[test]
    fn mixed_pair_satisfies_the_strong_condition() {
        let report = first_round_report(&mixed_pair()).unwrap();
        assert_eq!(report.entries.len(), 15);
        assert!(report.all_strong_no_progress);
    }

    #[test]
    fn decision_procedure_on_small_instances() {
        // Orthogonal pair: measurable apart.
        let d = is_perfectly_discriminable(&pure_pair(&["+Z"], &["-Z"]), 2).unwrap();
        match d.verdict {
            Verdict::Yes(s) => {
                assert_eq!(s.depth(), 1);
                assert_eq!(
                    evaluate_strategy(&pure_pair(&["+Z"], &["-Z"]), &s).unwrap(),
                    Rational64::from_integer(1)
                );
            }
            other => panic!("expected Yes, got {other:?}"),
        }
        // Non-orthogonal pair: immediate witness.
        let d = is_perfectly_discriminable(&pure_pair(&["+Z"], &["+X"]), 3).unwrap();
        match d.verdict {
            Verdict::No(w) => {
                assert!(w.path.is_empty());
                assert_eq!(w.pair.overlap_squared, Rational64::new(1, 2));
            }
            other => panic!("expected No, got {other:?}"),
        }
        // Depth zero on an undecided orthogonal pair.
        let d = is_perfectly_discriminable(&pure_pair(&["+Z"], &["-Z"]), 0).unwrap();
        assert_eq!(d.verdict, Verdict::Unknown);
    }

    #[test]
    fn six_states_are_not_perfectly_discriminable() {
        let d = is_perfectly_discriminable(&six_state_set(), 3).unwrap();
        match d.verdict {
            Verdict::No(w) => {
                // The witness path is a single measurement leading straight
                // to a confusable pair.
                assert_eq!(w.path.len(), 1);
                assert!(!w.pair.overlap_squared.is_zero());
            }
            other => panic!("expected No, got {other:?}"),
        }
    }

    #[test]
    fn bounded_depth_optimum_on_a_biased_pair() {
        // {|0⟩, |+⟩}: no Pauli information helps beyond 3/4.
        let e = pure_pair(&["+Z"], &["+X"]);
        let (v0, s0) = success_probability_lower_bound(&e, 0).unwrap();
        assert_eq!(v0, Rational64::new(1, 2));
        assert_eq!(s0, StrategyNode::Guess { guess: 0 });
        let (v1, _) = success_probability_lower_bound(&e, 1).unwrap();
        assert_eq!(v1, Rational64::new(3, 4));
        let (v2, _) = success_probability_lower_bound(&e, 2).unwrap();
        assert_eq!(v2, Rational64::new(3, 4));
    }

    #[test]
    fn leave_one_out_all_indices() {
        for excluded in 0..6 {
            let (strategy, value) = leave_one_out_strategy(excluded).unwrap();
            assert_eq!(value, Rational64::from_integer(1), "excluded {excluded}");
            assert!(strategy.depth() <= 4);
        }
        assert!(matches!(
            leave_one_out_strategy(6),
            Err(DiscriminationError::UnknownLabel(6))
        ));
    }

    #[test]
    fn published_protocol_structure_for_the_last_index() {
        let (s, _) = leave_one_out_strategy(5).unwrap();
        let StrategyNode::Measure {
            measure,
            on_zero,
            on_one,
        } = &s
        else {
            panic!("expected a measurement root");
        };
        assert_eq!(measure.to_string(), "+IIZ");
        let StrategyNode::Measure { measure: m0, .. } = on_zero.as_ref() else {
            panic!("expected a second measurement");
        };
        let StrategyNode::Measure { measure: m1, .. } = on_one.as_ref() else {
            panic!("expected a second measurement");
        };
        assert_eq!(m0.to_string(), "+IZI");
        assert_eq!(m1.to_string(), "+ZII");
    }

    #[test]
    fn strategy_serde_round_trip() {
        let (s, _) = leave_one_out_strategy(5).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert!(js.contains("\"measure\":\"+IIZ\""));
        let back: StrategyNode = serde_json::from_str(&js).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn family_certificate_smallest_instance() {
        let f = BooleanFunction::inner_product(2).unwrap();
        let report = family_certificate(&f).unwrap();
        assert_eq!(report.num_paulis, 4095);
        assert_eq!(report.x_case + report.z_case, 4095);
        // Pure Z-type Paulis: 2^6 - 1 of them.
        assert_eq!(report.z_case, 63);
        assert!(report.all_verified, "failures: {:?}", report.failures);
        for w in &report.samples {
            assert_ne!(w.mu, w.mu_prime);
        }
    }
}
