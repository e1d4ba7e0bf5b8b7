//! Certificate suite for stabilizer-state discrimination under
//! stabilizer-restricted measurements, one subcommand per claim.
//!
//! Every subcommand computes a report, renders it as pretty text (default),
//! JSON (`--format json`), or CSV where the payload is tabular
//! (`--format csv`), and exits `0` exactly when all of its checks pass. A
//! failing check still emits the full report, with machine-readable failure
//! strings, and exits `1`. Invalid flags, unreadable inputs, or a format the
//! command cannot produce exit `2`.
//!
//! Reports go to `--output PATH` when given, otherwise to
//! `$STABDISC_OUTPUT_DIR/<command>.<ext>` when that variable is set, and
//! otherwise to stdout. JSON output wraps every report in a versioned
//! envelope:
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "command": "entropy",
//!   "config": { ...flag echo... },
//!   "passed": true,
//!   "failures": [],
//!   "report": { ...command-specific payload... }
//! }
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::json;
use stabdisc::{
    advantage_ratio, ancilla_reduction_check, binomial_certificate, channel_check,
    classify_two_qubit_basis, data_hiding_pair, entropy_gap, enumerate_pure_stabilizer_states,
    evaluate_strategy, family_certificate, first_round_report, is_perfectly_discriminable,
    leave_one_out, leave_one_out_strategy, mixed_pair, non_implementability_note,
    orthogonal_subsets, readout_table, simulate, six_state_set, success_probability_lower_bound,
    BasisForm, BooleanFunction, DiscriminationProver, FullQuantumProver, LabeledEnsemble,
    StrategyNode, StrategyProver, UniformGuessProver, Verdict,
};

/// JSON envelope version; bumped when the envelope or a payload changes
/// shape.
const SCHEMA_VERSION: u32 = 1;

/// Environment variable consulted for a default output directory when
/// `--output` is absent.
const OUTPUT_DIR_VAR: &str = "STABDISC_OUTPUT_DIR";

/// Reference readout destination for each six-state member, in label order:
/// the computational-basis index after the readout circuit, with qubit 0 as
/// the most significant bit.
const READOUT_REFERENCE: [usize; 6] = [2, 1, 4, 6, 3, 5];

/// Reference advantage ratio (unrestricted over restricted excess success)
/// and acceptance window for the two-qubit mixed pair.
const MIXED_RATIO_REFERENCE: (f64, f64) = (1.129, 2e-3);

/// Reference advantage ratio and acceptance window for the three-qubit
/// data-hiding pair.
const HIDING_RATIO_REFERENCE: (f64, f64) = (1.06987, 1e-3);

#[derive(Parser)]
#[command(
    name = "stabdisc",
    about = "Certificates for what stabilizer operations can and cannot discriminate",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report rendering: pretty text, a JSON envelope, or CSV for tabular
    /// payloads.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout (see also
    /// STABDISC_OUTPUT_DIR).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Six-state indistinguishability: every first measurement leaves a
    /// confusable pair, and the decision procedure returns a witness.
    Theorem1 {
        /// Search depth for the decision procedure.
        #[arg(long, default_value_t = 2, value_parser = parse_depth)]
        max_depth: usize,
    },
    /// Every orthogonal set of one- or two-qubit pure stabilizer states is
    /// perfectly discriminable, and every two-qubit basis normalizes to one
    /// of two circuit forms.
    Theorem2 {
        /// Search depth for the decision procedure.
        #[arg(long, default_value_t = 3, value_parser = parse_depth)]
        max_depth: usize,
    },
    /// Function-indexed family on 3n qubits: no single Pauli measurement
    /// makes progress, certified exhaustively.
    Theorem3 {
        /// Variables in the indexing Boolean function (2 or 3).
        #[arg(long, default_value_t = 2, value_parser = parse_family_vars)]
        n: usize,
    },
    /// Computational-basis ancilla measurements reduce to register-only
    /// Pauli measurements plus exact Clifford recovery.
    Lemma1 {
        /// Number of ancilla qubits appended to the three-qubit register.
        #[arg(long = "l", default_value_t = 1, value_parser = parse_ancillas)]
        num_ancillas: usize,
    },
    /// Per-measurement information loss and the Fano success cap for a
    /// built-in instance.
    Entropy {
        /// Which instance to analyze.
        #[arg(long, value_enum)]
        set: SetChoice,
        /// The gap must exceed this to certify a strictly positive
        /// per-round information loss.
        #[arg(long, default_value_t = 1e-9, value_parser = parse_positive)]
        tolerance: f64,
    },
    /// Readout circuit I/O table: each six-state member maps to a distinct
    /// computational basis state.
    CircuitTable,
    /// Any five of the six states are perfectly discriminable, with an
    /// explicit strategy of success probability exactly 1.
    LeaveOneOut,
    /// The six-state projector sum extends to a channel mapping every pure
    /// three-qubit stabilizer state to a stabilizer mixture.
    CspoCheck,
    /// Restricted-vs-unrestricted advantage ratios for the two orthogonal
    /// pairs that stabilizer protocols cannot separate perfectly.
    DataHiding {
        /// Override the acceptance window around both reference ratios.
        #[arg(long, value_parser = parse_positive)]
        tolerance: Option<f64>,
    },
    /// Decision procedure plus bound sandwich on an instance loaded from a
    /// JSON file.
    Search {
        /// Path to a JSON-serialized labeled ensemble.
        #[arg(long)]
        set: PathBuf,
        /// Search depth for both the decision procedure and the best
        /// bounded-depth strategy.
        #[arg(long, default_value_t = 3, value_parser = parse_depth)]
        depth: usize,
        /// Slack allowed when checking achievable ≤ information cap; keep
        /// above the cap solver's own 1e-9 resolution.
        #[arg(long, default_value_t = 1e-8, value_parser = parse_positive)]
        tolerance: f64,
    },
    /// Exact binomial evidence for a trial count, or a seeded simulation of
    /// the discrimination game against the six-state instance.
    Protocol {
        /// Number of trials.
        #[arg(long = "N")]
        n_trials: u64,
        /// Observed successes (exact mode).
        #[arg(long)]
        succ: Option<u64>,
        /// Null-hypothesis success rate; defaults to the computed
        /// restricted-player cap in simulation mode.
        #[arg(long)]
        p0: Option<f64>,
        /// Play the game with a seeded prover instead of scoring a given
        /// count.
        #[arg(long)]
        simulate: bool,
        /// Who plays: the unrestricted readout prover, the best depth-3
        /// stabilizer strategy, or a uniform guesser.
        #[arg(long, value_enum)]
        prover: Option<ProverChoice>,
        /// Seed for the per-trial counter-based generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetChoice {
    /// The six pairwise-orthogonal three-qubit product states.
    Six,
    /// The two-qubit orthogonal mixed pair.
    Mixed,
    /// The three-qubit data-hiding pair.
    Hiding,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProverChoice {
    /// Applies the readout circuit and measures — succeeds every trial.
    Full,
    /// Best depth-3 stabilizer strategy found by search.
    Stabilizer,
    /// Ignores the state entirely.
    Guess,
}

fn parse_depth(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=8).contains(&d) {
        Ok(d)
    } else {
        Err("depth must be between 1 and 8".into())
    }
}

fn parse_family_vars(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (2..=3).contains(&n) {
        Ok(n)
    } else {
        Err("the indexing function takes 2 or 3 variables".into())
    }
}

fn parse_ancillas(s: &str) -> Result<usize, String> {
    let l: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=2).contains(&l) {
        Ok(l)
    } else {
        Err("ancilla count must be 1 or 2".into())
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("must be a positive finite number".into())
    }
}

/// Everything a subcommand produces; rendering and exit status are handled
/// centrally.
struct CommandOutput {
    command: &'static str,
    /// Echo of the flags that shaped the run.
    config: serde_json::Value,
    passed: bool,
    failures: Vec<String>,
    /// Machine-readable payload for the JSON envelope.
    report: serde_json::Value,
    /// Human-readable body (without the final PASS/FAIL line).
    text: String,
    /// Tabular rendering, for commands that have one.
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let mut out = dispatch(&cli.command)?;
    if let Some(map) = out.config.as_object_mut() {
        map.insert("format".into(), json!(cli.format.name()));
        map.insert("output".into(), json!(cli.output));
    }
    emit(&out, cli.format, cli.output.clone())
}

fn dispatch(command: &Command) -> anyhow::Result<CommandOutput> {
    match command {
        Command::Theorem1 { max_depth } => run_theorem1(*max_depth),
        Command::Theorem2 { max_depth } => run_theorem2(*max_depth),
        Command::Theorem3 { n } => run_theorem3(*n),
        Command::Lemma1 { num_ancillas } => run_lemma1(*num_ancillas),
        Command::Entropy { set, tolerance } => run_entropy(*set, *tolerance),
        Command::CircuitTable => run_circuit_table(),
        Command::LeaveOneOut => run_leave_one_out(),
        Command::CspoCheck => run_cspo_check(),
        Command::DataHiding { tolerance } => run_data_hiding(*tolerance),
        Command::Search {
            set,
            depth,
            tolerance,
        } => run_search(set, *depth, *tolerance),
        Command::Protocol {
            n_trials,
            succ,
            p0,
            simulate,
            prover,
            seed,
        } => run_protocol(*n_trials, *succ, *p0, *simulate, *prover, *seed),
    }
}

/// Renders and writes the report, returning the process exit code.
fn emit(out: &CommandOutput, format: Format, output: Option<PathBuf>) -> anyhow::Result<u8> {
    let rendered = match format {
        Format::Text => {
            let mut t = format!(
                "command: {}\nconfig: {}\n{}",
                out.command,
                serde_json::to_string(&out.config)?,
                out.text
            );
            if out.passed {
                t.push_str("result: PASS\n");
            } else {
                t.push_str("result: FAIL\n");
                for f in &out.failures {
                    let _ = writeln!(t, "  failure: {f}");
                }
            }
            t
        }
        Format::Json => {
            let envelope = json!({
                "schema_version": SCHEMA_VERSION,
                "command": out.command,
                "config": out.config,
                "passed": out.passed,
                "failures": out.failures,
                "report": out.report,
            });
            let mut s = serde_json::to_string_pretty(&envelope)?;
            s.push('\n');
            s
        }
        Format::Csv => out
            .csv
            .clone()
            .ok_or_else(|| anyhow!("csv output is not available for `{}`", out.command))?,
    };
    let dest = output.or_else(|| {
        std::env::var_os(OUTPUT_DIR_VAR)
            .map(|dir| PathBuf::from(dir).join(format!("{}.{}", out.command, format.extension())))
    });
    match dest {
        Some(path) => {
            fs::write(&path, rendered)
                .with_context(|| format!("writing report to {}", path.display()))?;
            println!(
                "{}: {} -> {}",
                out.command,
                if out.passed { "PASS" } else { "FAIL" },
                path.display()
            );
        }
        None => print!("{rendered}"),
    }
    Ok(u8::from(!out.passed))
}

fn ratf(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Appends an indented rendering of a strategy tree, one node per line.
fn push_strategy(out: &mut String, label: &str, node: &StrategyNode, indent: usize) {
    let pad = " ".repeat(indent);
    match node {
        StrategyNode::Guess { guess } => {
            let _ = writeln!(out, "{pad}{label}guess {guess}");
        }
        StrategyNode::Measure {
            measure,
            on_zero,
            on_one,
        } => {
            let _ = writeln!(out, "{pad}{label}measure {measure}");
            push_strategy(out, "0 -> ", on_zero, indent + 2);
            push_strategy(out, "1 -> ", on_one, indent + 2);
        }
    }
}

fn run_theorem1(max_depth: usize) -> anyhow::Result<CommandOutput> {
    let six = six_state_set();
    let first = first_round_report(&six)?;
    let decision = is_perfectly_discriminable(&six, max_depth)?;

    let total = first.entries.len();
    let holding = first.entries.iter().filter(|e| e.no_progress).count();
    let strong = first
        .entries
        .iter()
        .filter(|e| e.strong_no_progress)
        .count();
    let mut failures = Vec::new();
    if !first.all_no_progress {
        failures.push(format!(
            "only {holding}/{total} measurements leave every outcome confusable"
        ));
    }
    match &decision.verdict {
        Verdict::No(_) => {}
        other => failures.push(format!(
            "decision procedure returned {} instead of a non-orthogonality witness",
            verdict_name(other)
        )),
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "six-state set: {} nontrivial Pauli measurements",
        total
    );
    let _ = writeln!(
        text,
        "  no progress (every outcome leaves a confusable pair): {holding}/{total}"
    );
    let _ = writeln!(
        text,
        "  additionally keep every label alive: {strong}/{total}"
    );
    let _ = writeln!(
        text,
        "  decision procedure at depth {max_depth}: {} ({} conditional ensembles examined)",
        verdict_name(&decision.verdict),
        decision.nodes_explored
    );
    if let Verdict::No(w) = &decision.verdict {
        for (p, a) in &w.path {
            let _ = writeln!(
                text,
                "    after measuring {p} with outcome {}:",
                u8::from(*a)
            );
        }
        let _ = writeln!(
            text,
            "    labels {} and {} survive with squared overlap {}",
            w.pair.label_a, w.pair.label_b, w.pair.overlap_squared
        );
    }

    Ok(CommandOutput {
        command: "theorem1",
        config: json!({ "max_depth": max_depth }),
        passed: failures.is_empty(),
        failures,
        report: json!({
            "measurements": total,
            "no_progress": holding,
            "strong_no_progress": strong,
            "first_round": first,
            "decision": decision,
        }),
        text,
        csv: None,
    })
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Yes(_) => "perfectly discriminable",
        Verdict::No(_) => "not perfectly discriminable",
        Verdict::Unknown => "undecided at this depth",
    }
}

fn run_theorem2(max_depth: usize) -> anyhow::Result<CommandOutput> {
    let mut failures = Vec::new();
    let mut text = String::new();
    let mut registers = Vec::new();

    for n in 1..=2usize {
        let states = enumerate_pure_stabilizer_states(n)?;
        let _ = writeln!(
            text,
            "{n}-qubit register: {} pure stabilizer states",
            states.len()
        );
        let mut sizes = Vec::new();
        let mut product_bases = 0usize;
        let mut adaptive_bases = 0usize;
        for size in 2..=(1usize << n) {
            let cliques = orthogonal_subsets(&states, size)?;
            let mut discriminable = 0usize;
            for clique in &cliques {
                let members: Vec<_> = clique.iter().map(|&i| states[i].clone()).collect();
                let e = LabeledEnsemble::from_pure_states(members.clone())?;
                match is_perfectly_discriminable(&e, max_depth)?.verdict {
                    Verdict::Yes(strategy) => {
                        if evaluate_strategy(&e, &strategy)? == Rational64::from_integer(1) {
                            discriminable += 1;
                        } else {
                            failures.push(format!(
                                "strategy for orthogonal set {clique:?} (n={n}) does not reach probability 1"
                            ));
                        }
                    }
                    other => failures.push(format!(
                        "orthogonal set {clique:?} (n={n}): {}",
                        verdict_name(&other)
                    )),
                }
                if size == 4 {
                    match classify_two_qubit_basis(&members) {
                        Ok(c) if c.form == BasisForm::Product => product_bases += 1,
                        Ok(_) => adaptive_bases += 1,
                        Err(e) => {
                            failures.push(format!("basis {clique:?} failed to normalize: {e}"))
                        }
                    }
                }
            }
            let _ = writeln!(
                text,
                "  orthogonal {size}-sets: {} found, {} perfectly discriminable",
                cliques.len(),
                discriminable
            );
            sizes.push(json!({
                "size": size,
                "count": cliques.len(),
                "discriminable": discriminable,
            }));
        }
        if n == 2 {
            let _ = writeln!(
                text,
                "  bases normalize to: {product_bases} non-adaptive (Z,Z), {adaptive_bases} adaptive (Z then Z-or-X)"
            );
            if product_bases == 0 || adaptive_bases == 0 {
                failures.push("expected both basis normal forms to occur".into());
            }
            registers.push(json!({
                "qubits": n,
                "states": states.len(),
                "cliques": sizes,
                "product_bases": product_bases,
                "adaptive_bases": adaptive_bases,
            }));
        } else {
            registers.push(json!({
                "qubits": n,
                "states": states.len(),
                "cliques": sizes,
            }));
        }
    }

    Ok(CommandOutput {
        command: "theorem2",
        config: json!({ "max_depth": max_depth }),
        passed: failures.is_empty(),
        failures,
        report: json!({ "registers": registers }),
        text,
        csv: None,
    })
}

/// The lowest truth table on `n` variables with both level sets nonempty
/// and no nonzero linear structure — a deterministic stand-in when the
/// paired-product form needs an even variable count.
fn lowest_hard_function(n: usize) -> anyhow::Result<BooleanFunction> {
    let entries = 1u64 << n;
    for table in 1..(1u64 << entries) - 1 {
        let f = BooleanFunction::new(n, table)?;
        if f.has_vanishing_linear_structure() {
            return Ok(f);
        }
    }
    bail!("no {n}-variable function with vanishing linear structure")
}

fn run_theorem3(n: usize) -> anyhow::Result<CommandOutput> {
    let f = if n.is_multiple_of(2) {
        BooleanFunction::inner_product(n)?
    } else {
        lowest_hard_function(n)?
    };
    let cert = family_certificate(&f)?;

    let expected_paulis = 4usize.pow(3 * n as u32) - 1;
    let expected_z = 2usize.pow(3 * n as u32) - 1;
    let mut failures = cert.failures.clone();
    if !cert.all_verified {
        failures.push("a witness failed its exact overlap check".into());
    }
    if cert.num_paulis != expected_paulis || cert.z_case != expected_z {
        failures.push(format!(
            "case counts {}+{} over {} measurements do not match the {expected_paulis}/{expected_z} split",
            cert.x_case, cert.z_case, cert.num_paulis
        ));
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "family over a {n}-variable function ({} members on {} qubits)",
        cert.set_size,
        3 * n
    );
    let _ = writeln!(text, "  measurements checked: {}", cert.num_paulis);
    let _ = writeln!(
        text,
        "  flipping case (X/Y support, transported overlap 4^-{n}): {}",
        cert.x_case
    );
    let _ = writeln!(
        text,
        "  diagonal case (pure Z, transported overlap 1): {}",
        cert.z_case
    );
    let _ = writeln!(text, "  sample witnesses:");
    for w in cert.samples.iter().take(4) {
        let _ = writeln!(
            text,
            "    {}: members {} and {} confusable with squared overlap {}",
            w.pauli, w.mu, w.mu_prime, w.transported_overlap
        );
    }

    Ok(CommandOutput {
        command: "theorem3",
        config: json!({ "n": n }),
        passed: failures.is_empty(),
        failures,
        report: json!({
            "function": { "vars": n, "level_set_sizes": [f.level_set(false).len(), f.level_set(true).len()] },
            "certificate": cert,
        }),
        text,
        csv: None,
    })
}

fn run_lemma1(num_ancillas: usize) -> anyhow::Result<CommandOutput> {
    let report = ancilla_reduction_check(num_ancillas)?;

    let expected_flipping =
        64 * (4usize.pow(num_ancillas as u32) - 2usize.pow(num_ancillas as u32));
    let expected_forwarded = 63 * 2usize.pow(num_ancillas as u32);
    let expected_trivial = 2usize.pow(num_ancillas as u32) - 1;
    let mut failures = report.failures.clone();
    if !report.all_passed {
        failures.push("an outcome or recovery check failed".into());
    }
    if (
        report.flipping_cases,
        report.forwarded_cases,
        report.trivial_cases,
    ) != (expected_flipping, expected_forwarded, expected_trivial)
    {
        failures.push(format!(
            "case counts {}/{}/{} do not match the expected {expected_flipping}/{expected_forwarded}/{expected_trivial}",
            report.flipping_cases, report.forwarded_cases, report.trivial_cases
        ));
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "register of {} qubits with {} ancilla(s): {} measurements",
        report.register_qubits, report.num_ancillas, report.num_paulis
    );
    let _ = writeln!(
        text,
        "  flip an ancilla (fair coin + exact Clifford recovery): {}",
        report.flipping_cases
    );
    let _ = writeln!(
        text,
        "  forward to the register (same outcome law and post-state): {}",
        report.forwarded_cases
    );
    let _ = writeln!(
        text,
        "  act on ancillas alone (deterministic no-op): {}",
        report.trivial_cases
    );
    let _ = writeln!(text, "  individual state/outcome checks: {}", report.checks);

    Ok(CommandOutput {
        command: "lemma1",
        config: json!({ "l": num_ancillas }),
        passed: failures.is_empty(),
        failures,
        report: serde_json::to_value(&report)?,
        text,
        csv: None,
    })
}

fn run_entropy(set: SetChoice, tolerance: f64) -> anyhow::Result<CommandOutput> {
    let (name, e) = match set {
        SetChoice::Six => ("six", six_state_set()),
        SetChoice::Mixed => ("mixed", mixed_pair()),
        SetChoice::Hiding => ("hiding", data_hiding_pair()),
    };
    let report = entropy_gap(&e)?;
    let fano = report.fano_bound()?;

    let mut failures = Vec::new();
    if report.gap <= tolerance {
        failures.push(format!(
            "per-round information loss {} does not exceed {tolerance}",
            report.gap
        ));
    }

    let mut text = String::new();
    let _ = writeln!(text, "instance `{name}`: {} labels", report.num_labels);
    let _ = writeln!(
        text,
        "  prior entropy:            {:.12} bits",
        report.prior_entropy
    );
    let _ = writeln!(
        text,
        "  initial Holevo bound:     {:.12} bits",
        report.initial_holevo
    );
    let _ = writeln!(
        text,
        "  best after one round:     {:.12} bits",
        report.max_after_one_round
    );
    let _ = writeln!(text, "  per-round loss (gap):     {:.12} bits", report.gap);
    let _ = writeln!(text, "  success probability cap:  {:.12}", fano);
    let maximizers: Vec<String> = report.maximizers.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(
        text,
        "  loss-minimizing measurements ({}): {}",
        maximizers.len(),
        maximizers.join(" ")
    );

    let csv = report.to_csv();
    Ok(CommandOutput {
        command: "entropy",
        config: json!({ "set": name, "tolerance": tolerance }),
        passed: failures.is_empty(),
        failures,
        report: json!({ "gap_report": report, "fano_bound": fano }),
        text,
        csv: Some(csv),
    })
}

fn run_circuit_table() -> anyhow::Result<CommandOutput> {
    let table = readout_table()?;
    let six = six_state_set();

    let mut failures = Vec::new();
    if table != READOUT_REFERENCE {
        failures.push(format!(
            "readout destinations {table:?} differ from the reference {READOUT_REFERENCE:?}"
        ));
    }
    let mut seen = vec![false; 8];
    for &idx in &table {
        if seen[idx] {
            failures.push(format!("basis state {idx} is hit twice"));
        }
        seen[idx] = true;
    }

    let mut text = String::new();
    let mut rows = Vec::new();
    let mut csv = String::from("label,generators,readout_index,readout_ket\n");
    let _ = writeln!(text, "readout circuit: three doubly-controlled Hadamards");
    let _ = writeln!(text, "  label  input stabilizers      readout");
    for (item, &idx) in six.items().iter().zip(&table) {
        let gens: Vec<String> = item.components[0]
            .state
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        let ket = format!("|{idx:03b}>");
        let _ = writeln!(text, "  {:<5}  {:<21}  {ket}", item.label, gens.join(" "));
        let _ = writeln!(csv, "{},{},{idx},{ket}", item.label, gens.join(" "));
        rows.push(json!({
            "label": item.label,
            "generators": gens,
            "readout_index": idx,
            "readout_ket": ket,
        }));
    }

    Ok(CommandOutput {
        command: "circuit-table",
        config: json!({}),
        passed: failures.is_empty(),
        failures,
        report: json!({
            "rows": rows,
            "reference": READOUT_REFERENCE,
        }),
        text,
        csv: Some(csv),
    })
}

fn run_leave_one_out() -> anyhow::Result<CommandOutput> {
    let six = six_state_set();
    let mut failures = Vec::new();
    let mut text = String::new();
    let mut cases = Vec::new();

    for excluded in 0..6 {
        let (strategy, value) = leave_one_out_strategy(excluded)?;
        let sub = leave_one_out(&six, excluded)?;
        let replayed = evaluate_strategy(&sub, &strategy)?;
        if value != Rational64::from_integer(1) || replayed != Rational64::from_integer(1) {
            failures.push(format!(
                "excluding label {excluded}: success {value} (replayed {replayed}) instead of 1"
            ));
        }
        let _ = writeln!(
            text,
            "exclude label {excluded}: success {replayed} with {} measurement rounds",
            strategy.depth()
        );
        push_strategy(&mut text, "", &strategy, 2);
        cases.push(json!({
            "excluded": excluded,
            "value": replayed.to_string(),
            "depth": strategy.depth(),
            "strategy": strategy,
        }));
    }

    Ok(CommandOutput {
        command: "leave-one-out",
        config: json!({}),
        passed: failures.is_empty(),
        failures,
        report: json!({ "cases": cases }),
        text,
        csv: None,
    })
}

fn run_cspo_check() -> anyhow::Result<CommandOutput> {
    let report = channel_check()?;
    let mut failures = report.failures.clone();
    if !report.all_passed {
        failures.push("a channel output failed its stabilizer decomposition".into());
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "projector-sum channel over {} pure inputs",
        report.num_inputs
    );
    let _ = writeln!(
        text,
        "  frame completeness deviation:   {:.3e}",
        report.frame_identity_deviation
    );
    let _ = writeln!(
        text,
        "  members pinned to themselves:   {}",
        report.members_pinned
    );
    let _ = writeln!(
        text,
        "  readout destinations:           {:?}",
        report.readout_table
    );
    let _ = writeln!(
        text,
        "  max output trace deviation:     {:.3e}",
        report.max_trace_deviation
    );
    let _ = writeln!(
        text,
        "  inputs touching the complement: {} ({} distinct images)",
        report.complement_cases, report.distinct_complement_images
    );
    let _ = writeln!(
        text,
        "  inputs left entirely fixed:     {}",
        report.fixed_inputs
    );
    let _ = writeln!(
        text,
        "  all outputs stabilizer mixtures: {}",
        report.all_outputs_stabilizer
    );
    let _ = writeln!(text, "  note: {}", non_implementability_note());

    Ok(CommandOutput {
        command: "cspo-check",
        config: json!({}),
        passed: failures.is_empty(),
        failures,
        report: serde_json::to_value(&report)?,
        text,
        csv: None,
    })
}

fn run_data_hiding(tolerance: Option<f64>) -> anyhow::Result<CommandOutput> {
    let mut failures = Vec::new();
    let mut text = String::new();
    let mut pairs = Vec::new();

    let targets = [
        ("mixed-pair", mixed_pair(), MIXED_RATIO_REFERENCE),
        ("hiding-pair", data_hiding_pair(), HIDING_RATIO_REFERENCE),
    ];
    for (name, e, (reference, default_window)) in targets {
        let window = tolerance.unwrap_or(default_window);
        let items = e.items();
        let mut orthogonal = true;
        for a in &items[0].components {
            for b in &items[1].components {
                if a.state.overlap_squared(&b.state)? != Rational64::from_integer(0) {
                    orthogonal = false;
                }
            }
        }
        if !orthogonal {
            failures.push(format!(
                "{name}: the two mixtures overlap, so an unrestricted measurement cannot separate them perfectly"
            ));
        }
        let report = entropy_gap(&e)?;
        let fano = report.fano_bound()?;
        let ratio = advantage_ratio(1.0, fano)?;
        if (ratio - reference).abs() > window {
            failures.push(format!(
                "{name}: advantage ratio {ratio:.6} outside {reference} ± {window}"
            ));
        }
        let _ = writeln!(text, "{name}:");
        let _ = writeln!(
            text,
            "  mixtures orthogonal (unrestricted success 1): {orthogonal}"
        );
        let _ = writeln!(
            text,
            "  per-round information loss: {:.12} bits",
            report.gap
        );
        let _ = writeln!(text, "  restricted success cap:     {fano:.12}");
        let _ = writeln!(
            text,
            "  advantage ratio:            {ratio:.12}  (reference {reference} ± {window})"
        );
        pairs.push(json!({
            "name": name,
            "cross_orthogonal": orthogonal,
            "gap": report.gap,
            "fano_bound": fano,
            "advantage_ratio": ratio,
            "reference": reference,
            "window": window,
        }));
    }

    Ok(CommandOutput {
        command: "data-hiding",
        config: json!({ "tolerance": tolerance }),
        passed: failures.is_empty(),
        failures,
        report: json!({ "pairs": pairs }),
        text,
        csv: None,
    })
}

fn run_search(set: &PathBuf, depth: usize, tolerance: f64) -> anyhow::Result<CommandOutput> {
    let raw = fs::read_to_string(set)
        .with_context(|| format!("reading instance from {}", set.display()))?;
    let e: LabeledEnsemble = serde_json::from_str(&raw)
        .with_context(|| format!("parsing labeled ensemble from {}", set.display()))?;

    let decision = is_perfectly_discriminable(&e, depth)?;
    let (value, best) = success_probability_lower_bound(&e, depth)?;
    let gap_report = entropy_gap(&e)?;
    let fano = gap_report.fano_bound()?;
    let achievable = ratf(value);

    let mut failures = Vec::new();
    if achievable > fano + tolerance {
        failures.push(format!(
            "depth-{depth} strategy achieves {achievable:.12}, above the information cap {fano:.12}"
        ));
    }
    if matches!(decision.verdict, Verdict::Yes(_)) && value != Rational64::from_integer(1) {
        failures.push(format!(
            "declared perfectly discriminable, yet the best depth-{depth} strategy reaches only {value}"
        ));
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "instance from {}: {} labels on {} qubits",
        set.display(),
        e.num_labels(),
        e.num_qubits()
    );
    let _ = writeln!(
        text,
        "  decision at depth {depth}: {} ({} conditional ensembles examined)",
        verdict_name(&decision.verdict),
        decision.nodes_explored
    );
    if let Verdict::No(w) = &decision.verdict {
        let _ = writeln!(
            text,
            "  witness: labels {} and {} meet with squared overlap {} after {} forced outcome(s)",
            w.pair.label_a,
            w.pair.label_b,
            w.pair.overlap_squared,
            w.path.len()
        );
    }
    let _ = writeln!(
        text,
        "  best depth-{depth} success: {value} = {achievable:.12}"
    );
    let _ = writeln!(text, "  information cap:           {fano:.12}");
    let _ = writeln!(text, "  best strategy:");
    push_strategy(&mut text, "", &best, 4);

    Ok(CommandOutput {
        command: "search",
        config: json!({ "set": set, "depth": depth, "tolerance": tolerance }),
        passed: failures.is_empty(),
        failures,
        report: json!({
            "verdict": decision.verdict,
            "nodes_explored": decision.nodes_explored,
            "best_value": value.to_string(),
            "best_value_float": achievable,
            "fano_bound": fano,
            "strategy": best,
        }),
        text,
        csv: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_protocol(
    n_trials: u64,
    succ: Option<u64>,
    p0: Option<f64>,
    simulate_game: bool,
    prover: Option<ProverChoice>,
    seed: u64,
) -> anyhow::Result<CommandOutput> {
    if !simulate_game {
        let succ = succ.ok_or_else(|| anyhow!("exact mode needs --succ (or pass --simulate)"))?;
        let p0 = p0.ok_or_else(|| anyhow!("exact mode needs --p0 (or pass --simulate)"))?;
        let cert = binomial_certificate(n_trials, succ, p0)?;
        let mut text = String::new();
        let _ = writeln!(text, "{succ}/{n_trials} successes against a cap of {p0}");
        let _ = writeln!(text, "  one-sided p-value: {:.6e}", cert.p_value);
        let _ = writeln!(text, "  confidence:        {:.10}", cert.confidence);
        let _ = writeln!(text, "  sigma equivalent:  {:.6}", cert.sigma_equivalent);
        return Ok(CommandOutput {
            command: "protocol",
            config: json!({ "N": n_trials, "succ": succ, "p0": p0, "mode": "exact" }),
            passed: true,
            failures: Vec::new(),
            report: json!({
                "N": cert.n_trials,
                "N_succ": cert.successes,
                "p0": cert.null_rate,
                "p_value": cert.p_value,
                "confidence": cert.confidence,
                "sigma_equiv": cert.sigma_equivalent,
                "seed": null,
                "generator": null,
            }),
            text,
            csv: None,
        });
    }

    let prover_choice =
        prover.ok_or_else(|| anyhow!("simulation mode needs --prover full|stabilizer|guess"))?;
    let six = six_state_set();
    let prover: Box<dyn DiscriminationProver> = match prover_choice {
        ProverChoice::Full => Box::new(FullQuantumProver::new()?),
        ProverChoice::Stabilizer => {
            let (_, strategy) = success_probability_lower_bound(&six, 3)?;
            Box::new(StrategyProver::new("stabilizer-depth-3", strategy))
        }
        ProverChoice::Guess => Box::new(UniformGuessProver {
            num_labels: six.num_labels(),
        }),
    };
    let run = simulate(prover.as_ref(), &six, n_trials as usize, seed)?;
    let null_rate = match p0 {
        Some(v) => v,
        None => entropy_gap(&six)?.fano_bound()?,
    };
    let cert = binomial_certificate(n_trials, run.successes as u64, null_rate)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "prover `{}` over {n_trials} trials (seed {seed})",
        run.prover
    );
    let _ = writeln!(
        text,
        "  successes:         {} ({:.4})",
        run.successes, run.success_rate
    );
    let _ = writeln!(text, "  null success cap:  {null_rate:.12}");
    let _ = writeln!(text, "  one-sided p-value: {:.6e}", cert.p_value);
    let _ = writeln!(text, "  confidence:        {:.10}", cert.confidence);
    let _ = writeln!(text, "  sigma equivalent:  {:.6}", cert.sigma_equivalent);
    let _ = writeln!(text, "  generator:         {}", run.generator);

    Ok(CommandOutput {
        command: "protocol",
        config: json!({
            "N": n_trials, "p0": p0, "mode": "simulate",
            "prover": run.prover, "seed": seed,
        }),
        passed: true,
        failures: Vec::new(),
        report: json!({
            "N": cert.n_trials,
            "N_succ": cert.successes,
            "p0": cert.null_rate,
            "p_value": cert.p_value,
            "confidence": cert.confidence,
            "sigma_equiv": cert.sigma_equivalent,
            "seed": seed,
            "generator": run.generator,
            "prover": run.prover,
            "success_rate": run.success_rate,
        }),
        text,
        csv: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_rendering_is_indented_by_round() {
        let node: StrategyNode =
            serde_json::from_str(r#"{"measure":"+IZ","on_zero":{"guess":0},"on_one":{"guess":1}}"#)
                .unwrap();
        let mut out = String::new();
        push_strategy(&mut out, "", &node, 0);
        assert_eq!(out, "measure +IZ\n  0 -> guess 0\n  1 -> guess 1\n");
    }

    #[test]
    fn flag_parsers_enforce_ranges() {
        assert!(parse_depth("0").is_err());
        assert!(parse_depth("8").is_ok());
        assert!(parse_family_vars("4").is_err());
        assert!(parse_ancillas("3").is_err());
        assert!(parse_positive("-1e-9").is_err());
        assert!(parse_positive("1e-9").is_ok());
    }

    #[test]
    fn lowest_hard_function_is_a_point_indicator_on_three_variables() {
        // Table 1 is the indicator of x = 0; its derivative in any nonzero
        // direction takes the value 1 at exactly two of eight points.
        let f = lowest_hard_function(3).unwrap();
        assert_eq!(f.level_set(true), vec![0]);
        assert!(f.has_vanishing_linear_structure());
    }
}
