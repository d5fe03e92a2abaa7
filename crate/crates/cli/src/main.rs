//! `nxn`: batch front end for the affine-toeplitz library.
//!
//! Every subcommand prints one JSON document (or CSV with `--format csv`).
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage
//! or input errors.

mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use affine_toeplitz::algebra::{monomial_grid, reduce, Monomial, ParseOptions, GRID_PARTS};
use affine_toeplitz::bostconnes::{
    bc_conditional_state, bc_reconstruct_check, char_euler_sum, invariance_ratio, DirichletCharacter, HeckeElement,
};
use affine_toeplitz::numtheory::{PrimeWindow, Precision};
use affine_toeplitz::representation::{relation_suite, Model};
use affine_toeplitz::semigroup::{euclid_smallest, join, JoinResult, SemigroupElement};
use affine_toeplitz::spectrum::{
    boundary_act, contains, decompose, includes, verify_hereditary_directed, BoundaryPoint, SpectrumPoint,
};
use affine_toeplitz::states::{
    conditional_mass, ground_check, kms_characterisation_check, kms_defect, measure_cylinder, reconstruct_sn, Beta,
    CircleMeasure, State, StateSpec, ToeplitzState,
};
use affine_toeplitz::Error;

use output::{complex, real, render, Format};

#[derive(Parser)]
#[command(name = "nxn", version, about = "Normal forms, spectrum and equilibrium states for the Toeplitz algebra of N x N^x")]
struct Cli {
    /// Working precision in bits for truncated series.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word in s, s*, v_p, v_p* to its normal form.
    Reduce {
        word: String,
        /// Accept composite v_a, expanded by prime factorisation.
        #[arg(long)]
        expand_composite: bool,
    },
    /// Join of (m,a) and (n,b).
    Join { m: u64, a: u64, n: u64, b: u64 },
    /// Least non-negative solution of k = alpha c − beta d.
    Euclid {
        c: u64,
        d: u64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Evaluate a state on words.
    StateEval {
        #[command(flatten)]
        state: StateArgs,
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long)]
        expand_composite: bool,
    },
    /// KMS defect and characterisation check over the monomial grid.
    KmsCheck {
        #[command(flatten)]
        state: StateArgs,
        /// Largest power of s and s* in the grid.
        #[arg(long, default_value_t = 5)]
        grid: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Inverse temperature at which to test the KMS identity; defaults
        /// to the state's own.
        #[arg(long)]
        at_beta: Option<f64>,
    },
    /// Ground-state check over the monomial grid.
    GroundCheck {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 5)]
        grid: u64,
    },
    /// Relation suite on one of the concrete representations.
    RepCheck {
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Window size: max m and a for toeplitz, max x for x, radius for z.
        #[arg(long, default_value_t = 12)]
        window: u64,
        #[arg(long, default_value = "2,3,5")]
        primes: String,
    },
    /// Mass of the cylinder m + aZ under mu_beta.
    Measure {
        #[arg(long)]
        beta: Beta,
        m: u64,
        a: u64,
    },
    /// Reconstruction of phi(s^n) from its conditional state, n = 0..=N.
    Reconstruct {
        #[command(flatten)]
        state: StateArgs,
        /// The finite prime set E.
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 12)]
        n: i64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Dirichlet characters and Euler sums.
    Bc {
        #[command(subcommand)]
        command: BcCommand,
    },
    /// Points of the Nica spectrum.
    Spectrum {
        #[command(subcommand)]
        command: SpectrumCommand,
    },
}

#[derive(Subcommand)]
enum BcCommand {
    /// Twisted Euler sum as series and as product.
    Euler {
        #[arg(long)]
        character: Option<String>,
        #[arg(long)]
        primes: String,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        truncation: u64,
    },
    /// |twisted product| / zeta_E over growing prime sets.
    Ratio {
        #[arg(long)]
        character: Option<String>,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 40)]
        k: usize,
    },
    /// Reconstruction of phi(mu_k mu_k*) from the conditional state (k = 0 means 1).
    Reconstruct {
        #[arg(long)]
        primes: String,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

#[derive(Subcommand)]
enum SpectrumCommand {
    /// Membership of (m,a).
    Contains {
        #[arg(long)]
        point: String,
        m: u64,
        a: u64,
    },
    /// Whether left is contained in right.
    Includes {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 64)]
        level: u64,
    },
    /// Hereditary and directed check on the window m, a <= bound.
    Verify {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Prime-power components of a type B point with finite N.
    Decompose {
        #[arg(long)]
        point: String,
    },
    /// Affine action (m,a)·r on a boundary point.
    Act {
        #[arg(long)]
        point: String,
        m: u64,
        a: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Toeplitz,
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum StateKind {
    PsiBeta,
    PsiBetaMu,
    Ground,
}

#[derive(Args)]
struct StateArgs {
    /// State family.
    #[arg(long, value_enum)]
    state: Option<StateKind>,
    /// Inverse temperature: a real or "inf".
    #[arg(long)]
    beta: Option<Beta>,
    /// Circle measure: "lebesgue" or JSON such as {"atoms":[["1/4",1]]}.
    #[arg(long)]
    mu: Option<String>,
    /// One-isometry state: JSON such as {"vector_state":0} or {"evaluation":"1/4"}.
    #[arg(long)]
    omega: Option<String>,
    /// A full state specification as JSON, instead of the flags above.
    #[arg(long)]
    spec: Option<String>,
}

/// A failure that is reported as JSON with exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(format!("invalid JSON: {e}"))
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

impl StateArgs {
    fn spec(&self) -> Result<StateSpec, Failure> {
        if let Some(text) = &self.spec {
            return Ok(serde_json::from_str(text)?);
        }
        let kind = self.state.ok_or_else(|| usage("a state is required: --state or --spec"))?;
        let beta = || self.beta.ok_or_else(|| usage("--beta is required for this state"));
        Ok(match kind {
            StateKind::PsiBeta => StateSpec::PsiBeta { beta: beta()? },
            StateKind::PsiBetaMu => {
                let text = self.mu.as_deref().ok_or_else(|| usage("--mu is required for psi_beta_mu"))?;
                let mu = if text.trim() == "lebesgue" { CircleMeasure::Lebesgue } else { serde_json::from_str(text)? };
                StateSpec::PsiBetaMu { beta: beta()?, mu }
            }
            StateKind::Ground => {
                let text = self.omega.as_deref().ok_or_else(|| usage("--omega is required for ground"))?;
                let omega: ToeplitzState = serde_json::from_str(text)?;
                StateSpec::Ground { omega }
            }
        })
    }

    fn build(&self, precision: Precision) -> Result<State, Failure> {
        Ok(State::new(self.spec()?, precision)?)
    }
}

fn parse_primes(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| usage(format!("not a prime list: {text:?}"))))
        .collect()
}

fn parse_window(text: &str) -> Result<PrimeWindow, Failure> {
    Ok(PrimeWindow::new(parse_primes(text)?)?)
}

fn parse_character(text: Option<&str>) -> Result<DirichletCharacter, Failure> {
    match text {
        None => Ok(DirichletCharacter::mod4()),
        Some(t) => Ok(serde_json::from_str(t)?),
    }
}

fn finite_beta(state: &State) -> Result<f64, Failure> {
    state
        .spec()
        .beta()
        .and_then(Beta::finite)
        .ok_or_else(|| usage(format!("{} has no finite inverse temperature", state.spec())))
}

fn state_json(state: &State) -> Value {
    serde_json::to_value(state.spec()).expect("serializable")
}

fn run(cli: &Cli) -> Outcome {
    let precision = Precision::new(cli.precision)?;
    let bits = cli.precision;
    match &cli.command {
        Command::Reduce { word, expand_composite } => {
            let x = reduce(word, ParseOptions { expand_composite: *expand_composite })?;
            Ok((serde_json::to_value(x)?, true))
        }
        Command::Join { m, a, n, b } => {
            let p = SemigroupElement::new(*m, *a)?;
            let q = SemigroupElement::new(*n, *b)?;
            Ok(match join(p, q) {
                JoinResult::Infinite => (json!({ "join": "infinity" }), true),
                JoinResult::Finite(j) => (json!({ "l": j.l, "lcm": j.lcm }), true),
            })
        }
        Command::Euclid { c, d, k } => {
            let (alpha, beta) = euclid_smallest(*c, *d, *k as i128)?;
            Ok((json!({ "alpha": alpha, "beta": beta }), true))
        }
        Command::StateEval { state, words, expand_composite } => {
            let phi = state.build(precision)?;
            let mut rows = Vec::new();
            for w in words {
                let x = reduce(w, ParseOptions { expand_composite: *expand_composite })?;
                let value = if x.is_zero() { Complex64::new(0.0, 0.0) } else { phi.evaluate(&x)? };
                rows.push(json!({ "word": w, "monomial": x.to_string(), "value": complex(value) }));
            }
            Ok((json!({ "state": state_json(&phi), "precision": bits, "rows": rows }), true))
        }
        Command::KmsCheck { state, grid, tolerance, at_beta } => {
            let phi = state.build(precision)?;
            let beta = match at_beta {
                Some(b) => *b,
                None => finite_beta(&phi)?,
            };
            let xs = monomial_grid(*grid, &GRID_PARTS);
            let mut max_defect = 0.0f64;
            let mut max_char = 0.0f64;
            let mut counterexample = Value::Null;
            for x in &xs {
                let c = kms_characterisation_check(&phi, x, beta)?;
                if c > max_char {
                    max_char = c;
                }
                if c > *tolerance && counterexample.is_null() {
                    counterexample = json!({ "check": "characterisation", "x": x.to_string(), "defect": real(c) });
                }
                for y in &xs {
                    let d = kms_defect(&phi, x, y, beta)?;
                    if d > max_defect {
                        max_defect = d;
                    }
                    if d > *tolerance && counterexample.is_null() {
                        counterexample =
                            json!({ "check": "kms", "x": x.to_string(), "y": y.to_string(), "defect": real(d) });
                    }
                }
            }
            let passed = counterexample.is_null();
            Ok((
                json!({
                    "state": state_json(&phi),
                    "beta": real(beta),
                    "grid": grid,
                    "monomials": xs.len(),
                    "max_defect": real(max_defect),
                    "max_characterisation": real(max_char),
                    "tolerance": real(*tolerance),
                    "precision": bits,
                    "passed": passed,
                    "counterexample": counterexample,
                }),
                passed,
            ))
        }
        Command::GroundCheck { state, grid } => {
            let phi = state.build(precision)?;
            let xs = monomial_grid(*grid, &GRID_PARTS);
            let passed = ground_check(&phi, &xs)?;
            let mut counterexample = Value::Null;
            if !passed {
                for x in &xs {
                    let (_, a, b, _) = x.parts().expect("grid monomials are nonzero");
                    let v = phi.evaluate(x)?;
                    if (a != 1 || b != 1) && v != Complex64::new(0.0, 0.0) {
                        counterexample = json!({ "x": x.to_string(), "value": complex(v) });
                        break;
                    }
                }
            }
            let range_of_s = phi.evaluate(&Monomial::new(1, 1, 1, 1))?;
            Ok((
                json!({
                    "state": state_json(&phi),
                    "grid": grid,
                    "monomials": xs.len(),
                    "passed": passed,
                    "value_s_s_star": complex(range_of_s),
                    "precision": bits,
                    "counterexample": counterexample,
                }),
                passed,
            ))
        }
        Command::RepCheck { model, window, primes } => {
            let model = match model {
                ModelKind::Toeplitz => Model::Toeplitz { max_m: *window, max_a: *window },
                ModelKind::X => Model::X { max_x: *window },
                ModelKind::Z => Model::Z {
                    radius: i64::try_from(*window).map_err(|_| usage("window too large"))?,
                },
            };
            let report = relation_suite(&model, &parse_primes(primes)?)?;
            let passed = report.passed;
            let mut value = serde_json::to_value(&report)?;
            value["counterexample"] =
                report.results.iter().find_map(|r| r.counterexample.clone()).map_or(Value::Null, Value::String);
            value["rows"] = value["results"].clone();
            Ok((value, passed))
        }
        Command::Measure { beta, m, a } => {
            let c = measure_cylinder(*beta, *m, *a, precision)?;
            let within = (c.series - c.closed_form).abs() <= c.tail_bound;
            Ok((
                json!({
                    "beta": beta.to_string(),
                    "m": m,
                    "a": a,
                    "series": real(c.series),
                    "tail_bound": real(c.tail_bound),
                    "closed_form": real(c.closed_form),
                    "within_bound": within,
                    "precision": bits,
                }),
                within,
            ))
        }
        Command::Reconstruct { state, primes, n, tolerance } => {
            let phi = state.build(precision)?;
            let e = parse_window(primes)?;
            let beta = finite_beta(&phi)?;
            let mut rows = Vec::new();
            let mut max_defect = 0.0f64;
            for k in 0..=*n {
                let r = reconstruct_sn(&phi, &e, k)?;
                max_defect = max_defect.max(r.defect);
                rows.push(json!({
                    "n": k,
                    "direct": complex(r.direct),
                    "reconstructed": complex(r.reconstructed),
                    "defect": real(r.defect),
                }));
            }
            let passed = max_defect <= *tolerance;
            Ok((
                json!({
                    "state": state_json(&phi),
                    "primes": e.primes(),
                    "conditional_mass": real(conditional_mass(beta, &e)?),
                    "max_defect": real(max_defect),
                    "tolerance": real(*tolerance),
                    "passed": passed,
                    "precision": bits,
                    "rows": rows,
                }),
                passed,
            ))
        }
        Command::Bc { command } => run_bc(command, bits),
        Command::Spectrum { command } => run_spectrum(command),
    }
}

fn run_bc(command: &BcCommand, bits: u32) -> Outcome {
    match command {
        BcCommand::Euler { character, primes, beta, truncation } => {
            let chi = parse_character(character.as_deref())?;
            let e = parse_window(primes)?;
            let s = char_euler_sum(&chi, &e, *beta, *truncation)?;
            let difference = (s.series - s.product).norm();
            let within = difference <= s.tail_bound;
            Ok((
                json!({
                    "modulus": chi.modulus(),
                    "primes": e.primes(),
                    "beta": real(*beta),
                    "truncation": truncation,
                    "series": complex(s.series),
                    "product": complex(s.product),
                    "difference": real(difference),
                    "tail_bound": real(s.tail_bound),
                    "within_tail_bound": within,
                    "precision": bits,
                }),
                within,
            ))
        }
        BcCommand::Ratio { character, beta, k } => {
            let chi = parse_character(character.as_deref())?;
            let ratios = invariance_ratio(&chi, *beta, *k)?;
            let rows: Vec<Value> =
                ratios.iter().enumerate().map(|(i, r)| json!({ "k": i + 1, "ratio": real(*r) })).collect();
            Ok((json!({ "modulus": chi.modulus(), "beta": real(*beta), "precision": bits, "rows": rows }), true))
        }
        BcCommand::Reconstruct { primes, beta, k, tolerance } => {
            let e = parse_window(primes)?;
            let element = if *k == 0 { HeckeElement::One } else { HeckeElement::RangeProjection(*k) };
            let r = bc_reconstruct_check(|j| bc_conditional_state(&e, *beta, j), &e, *beta, element)?;
            let passed = r.defect <= *tolerance;
            Ok((
                json!({
                    "primes": e.primes(),
                    "beta": real(*beta),
                    "element": serde_json::to_value(element)?,
                    "direct": real(r.direct),
                    "reconstructed": real(r.reconstructed),
                    "defect": real(r.defect),
                    "tail_bound": real(r.tail_bound),
                    "tolerance": real(*tolerance),
                    "passed": passed,
                    "precision": bits,
                }),
                passed,
            ))
        }
    }
}

fn run_spectrum(command: &SpectrumCommand) -> Outcome {
    match command {
        SpectrumCommand::Contains { point, m, a } => {
            let w: SpectrumPoint = serde_json::from_str(point)?;
            let x = SemigroupElement::new(*m, *a)?;
            Ok((json!({ "point": w.to_string(), "m": m, "a": a, "contains": contains(&w, x)? }), true))
        }
        SpectrumCommand::Includes { left, right, level } => {
            let w1: SpectrumPoint = serde_json::from_str(left)?;
            let w2: SpectrumPoint = serde_json::from_str(right)?;
            Ok((
                json!({
                    "left": w1.to_string(),
                    "right": w2.to_string(),
                    "level": level,
                    "includes": includes(&w1, &w2, *level)?,
                }),
                true,
            ))
        }
        SpectrumCommand::Verify { point, bound } => {
            let w: SpectrumPoint = serde_json::from_str(point)?;
            let passed = verify_hereditary_directed(&w, *bound)?;
            Ok((json!({ "point": w.to_string(), "bound": bound, "passed": passed }), passed))
        }
        SpectrumCommand::Decompose { point } => {
            let w: SpectrumPoint = serde_json::from_str(point)?;
            let parts = decompose(&w)?;
            let components: BTreeMap<String, Value> = parts
                .iter()
                .map(|(p, c)| (p.to_string(), json!({ "value": c.value(), "modulus": c.modulus() })))
                .collect();
            Ok((json!({ "point": w.to_string(), "components": components }), true))
        }
        SpectrumCommand::Act { point, m, a } => {
            let r: BoundaryPoint = serde_json::from_str(point)?;
            let x = SemigroupElement::new(*m, *a)?;
            Ok((serde_json::to_value(boundary_act(x, &r)?)?, true))
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, verified)) => {
            emit(&render(&value, cli.format));
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(message)) => {
            eprintln!("nxn: {message}");
            emit(&render(&json!({ "error": message }), cli.format));
            ExitCode::from(2)
        }
    }
}
