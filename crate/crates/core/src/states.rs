//! Closed-form evaluation of the equilibrium states on spanning monomials,
//! together with the checks that characterise them.
//!
//! Values are `Complex64`. Every formula is a finite sum except for
//! `ζ(β−1)`, which carries its own error bound (see [`zeta`]).

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{monomial_mul, Monomial};
use crate::error::{Error, Result};
use crate::numtheory::{
    deserialize_ratio, divisors, factorize, serialize_ratio, zeta, zeta_e, zeta_e_exact, Angle, BoundedValue,
    PrimeWindow, Precision,
};

// ---------------------------------------------------------------------------
// Inverse temperature

/// An inverse temperature, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    pub fn finite(self) -> Option<f64> {
        match self {
            Beta::Finite(b) => Some(b),
            Beta::Infinite => None,
        }
    }

    /// `a^{−β}`, with `1^{−∞} = 1` and `a^{−∞} = 0` for `a >= 2`.
    pub fn weight(self, a: u64) -> f64 {
        match self {
            _ if a == 1 => 1.0,
            Beta::Finite(b) => (a as f64).powf(-b),
            Beta::Infinite => 0.0,
        }
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Beta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Beta::Infinite),
            t => {
                let b: f64 = t.parse().map_err(|_| Error::OutOfRange(format!("not an inverse temperature: {s:?}")))?;
                if b.is_nan() {
                    return Err(Error::OutOfRange("beta is NaN".into()));
                }
                Ok(if b == f64::INFINITY { Beta::Infinite } else { Beta::Finite(b) })
            }
        }
    }
}

impl Serialize for Beta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Beta::Finite(b) => s.serialize_f64(*b),
            Beta::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Beta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(b) => Ok(Beta::Finite(b)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

// ---------------------------------------------------------------------------
// Measures on the circle

/// A probability measure on the circle: finitely many atoms at rational
/// angles, or normalised Lebesgue measure.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleMeasure {
    Atoms(Vec<(Angle, Ratio<i64>)>),
    Lebesgue,
}

impl CircleMeasure {
    /// Validates: at least one atom, positive weights summing to one,
    /// distinct angles.
    pub fn atoms(atoms: Vec<(Angle, Ratio<i64>)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let mut total = Ratio::zero();
        for (i, (theta, w)) in atoms.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::InvalidMeasure(format!("weight {w} at angle {theta} is not positive")));
            }
            if atoms[..i].iter().any(|(t, _)| t == theta) {
                return Err(Error::InvalidMeasure(format!("angle {theta} listed twice")));
            }
            total += *w;
        }
        if total != Ratio::one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(CircleMeasure::Atoms(atoms))
    }

    pub fn point_mass(theta: Angle) -> Self {
        CircleMeasure::Atoms(vec![(theta, Ratio::one())])
    }

    /// `∫ z^k dμ(z)`.
    pub fn moment(&self, k: i64) -> Complex64 {
        match self {
            CircleMeasure::Lebesgue => Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0),
            CircleMeasure::Atoms(atoms) => atoms
                .iter()
                .map(|(theta, w)| theta.times(k).to_complex() * (*w.numer() as f64 / *w.denom() as f64))
                .sum(),
        }
    }
}

/// `∫ z^k dμ(z)`.
pub fn moment(mu: &CircleMeasure, k: i64) -> Complex64 {
    mu.moment(k)
}

#[derive(Serialize, Deserialize)]
struct WeightRepr(
    #[serde(serialize_with = "serialize_ratio", deserialize_with = "deserialize_ratio")] Ratio<i64>,
);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MeasureRepr {
    Atoms { atoms: Vec<(Angle, WeightRepr)> },
    Named(String),
}

impl Serialize for CircleMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CircleMeasure::Lebesgue => MeasureRepr::Named("lebesgue".into()),
            CircleMeasure::Atoms(a) => MeasureRepr::Atoms { atoms: a.iter().map(|&(t, w)| (t, WeightRepr(w))).collect() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match MeasureRepr::deserialize(d)? {
            MeasureRepr::Named(n) if n == "lebesgue" => Ok(CircleMeasure::Lebesgue),
            MeasureRepr::Named(n) => Err(D::Error::custom(format!("unknown measure {n:?}"))),
            MeasureRepr::Atoms { atoms } => {
                CircleMeasure::atoms(atoms.into_iter().map(|(t, w)| (t, w.0)).collect()).map_err(D::Error::custom)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// States of the one-isometry Toeplitz algebra

/// A state of the Toeplitz algebra of one isometry: the vector state of
/// `e_k` in the unilateral shift representation, or evaluation at a point
/// of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToeplitzState {
    VectorState(u64),
    Evaluation(Angle),
}

impl ToeplitzState {
    /// `ω(s^m s*^n)`: `⟨S^m S*^n e_k, e_k⟩ = δ_{m,n}[k >= n]` for the vector
    /// state, `z^{m−n}` for evaluation at `z`.
    pub fn moment(&self, m: u64, n: u64) -> Complex64 {
        match *self {
            ToeplitzState::VectorState(k) => Complex64::new(if m == n && k >= n { 1.0 } else { 0.0 }, 0.0),
            ToeplitzState::Evaluation(z) => z.times(m as i64 - n as i64).to_complex(),
        }
    }
}

// ---------------------------------------------------------------------------
// State specifications

/// One of the equilibrium states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum StateSpec {
    /// The state `a^{−β}δ`-pattern, `β ∈ [1, ∞]`.
    PsiBeta { beta: Beta },
    /// The state built from a circle measure, `β ∈ (2, ∞]`.
    PsiBetaMu { beta: Beta, mu: CircleMeasure },
    /// A ground state lifted from a state of the one-isometry Toeplitz algebra.
    Ground { omega: ToeplitzState },
}

impl StateSpec {
    pub fn beta(&self) -> Option<Beta> {
        match self {
            StateSpec::PsiBeta { beta } | StateSpec::PsiBetaMu { beta, .. } => Some(*beta),
            StateSpec::Ground { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpec::PsiBeta { beta: Beta::Finite(b) } if !(*b >= 1.0) => {
                Err(Error::OutOfRange(format!("psi_beta needs beta >= 1, got {b}")))
            }
            StateSpec::PsiBetaMu { beta: Beta::Finite(b), .. } if !(*b > 2.0) => {
                Err(Error::OutOfRange(format!("psi_beta_mu needs beta > 2, got {b}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::PsiBeta { beta } => write!(f, "psi_beta({beta})"),
            StateSpec::PsiBetaMu { beta, mu } => match mu {
                CircleMeasure::Lebesgue => write!(f, "psi_beta_mu({beta}, lebesgue)"),
                CircleMeasure::Atoms(a) => {
                    let atoms: Vec<String> = a.iter().map(|(t, w)| format!("{t}:{w}")).collect();
                    write!(f, "psi_beta_mu({beta}, [{}])", atoms.join(", "))
                }
            },
            StateSpec::Ground { omega: ToeplitzState::VectorState(k) } => write!(f, "ground(vector {k})"),
            StateSpec::Ground { omega: ToeplitzState::Evaluation(z) } => write!(f, "ground(evaluation {z})"),
        }
    }
}

/// A state ready for evaluation, with `ζ(β−1)` computed once.
#[derive(Debug, Clone)]
pub struct State {
    spec: StateSpec,
    precision: Precision,
    zeta_shift: Option<BoundedValue>,
}

impl State {
    pub fn new(spec: StateSpec, precision: Precision) -> Result<Self> {
        spec.validate()?;
        Self::build(spec, precision)
    }

    /// Skips the range check on β, so that the formulas can be examined
    /// outside the range where they define states (for instance β < 1).
    pub fn formal(spec: StateSpec, precision: Precision) -> Result<Self> {
        Self::build(spec, precision)
    }

    fn build(spec: StateSpec, precision: Precision) -> Result<Self> {
        let zeta_shift = match &spec {
            StateSpec::PsiBetaMu { beta: Beta::Finite(b), .. } => Some(zeta(b - 1.0, precision)?),
            _ => None,
        };
        Ok(State { spec, precision, zeta_shift })
    }

    pub fn spec(&self) -> &StateSpec {
        &self.spec
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `ζ(β−1)` with its error bound, for the measure states at finite β.
    pub fn zeta_shift(&self) -> Option<BoundedValue> {
        self.zeta_shift
    }

    /// The value on a nonzero spanning monomial `s^m v_a v_b* s*^n`.
    pub fn evaluate(&self, x: &Monomial) -> Result<Complex64> {
        let (m, a, b, n) = x.parts().ok_or(Error::ZeroMonomial("state value"))?;
        let zero = Complex64::new(0.0, 0.0);
        Ok(match &self.spec {
            StateSpec::PsiBeta { beta } => {
                if a == b && m == n {
                    Complex64::new(beta.weight(a), 0.0)
                } else {
                    zero
                }
            }
            StateSpec::PsiBetaMu { beta: Beta::Infinite, mu } => {
                if a == 1 && b == 1 {
                    mu.moment(m as i64 - n as i64)
                } else {
                    zero
                }
            }
            StateSpec::PsiBetaMu { beta: Beta::Finite(beta), mu } => {
                let diff = m as i64 - n as i64;
                if a != b || diff.rem_euclid(a as i64) != 0 {
                    zero
                } else if diff == 0 {
                    Complex64::new((a as f64).powf(-beta), 0.0)
                } else {
                    let zeta_shift = self.zeta_shift.expect("cached at construction").value;
                    let mut sum = zero;
                    for x in divisors(diff.unsigned_abs())? {
                        if x % a == 0 {
                            sum += mu.moment(diff / x as i64) * (x as f64).powf(1.0 - beta);
                        }
                    }
                    sum / (a as f64 * zeta_shift)
                }
            }
            StateSpec::Ground { omega } => {
                if a == 1 && b == 1 {
                    omega.moment(m, n)
                } else {
                    zero
                }
            }
        })
    }

    /// Like [`State::evaluate`], but the zero monomial evaluates to zero.
    pub fn evaluate_or_zero(&self, x: &Monomial) -> Result<Complex64> {
        if x.is_zero() {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            self.evaluate(x)
        }
    }
}

/// `φ(x)` for a state specification. Builds a [`State`] on every call; use
/// [`State`] directly when evaluating many monomials.
pub fn evaluate(phi: &StateSpec, x: &Monomial, precision: Precision) -> Result<Complex64> {
    State::new(phi.clone(), precision)?.evaluate(x)
}

/// `ψ_β(x)` for integer β as an exact rational.
pub fn psi_beta_exact(beta: u32, x: &Monomial) -> Result<BigRational> {
    let (m, a, b, n) = x.parts().ok_or(Error::ZeroMonomial("state value"))?;
    if beta == 0 {
        return Err(Error::OutOfRange("psi_beta needs beta >= 1".into()));
    }
    if a == b && m == n {
        Ok(BigRational::new(BigInt::one(), BigInt::from(a).pow(beta)))
    } else {
        Ok(BigRational::zero())
    }
}

// ---------------------------------------------------------------------------
// Characterisations

/// `|a^β φ(XY) − b^β φ(YX)|` where `X = s^m v_a v_b* s*^n`. A KMS state at
/// inverse temperature β gives zero.
pub fn kms_defect(phi: &State, x: &Monomial, y: &Monomial, beta: f64) -> Result<f64> {
    let (_, a, b, _) = x.parts().ok_or(Error::ZeroMonomial("KMS defect"))?;
    if y.is_zero() {
        return Err(Error::ZeroMonomial("KMS defect"));
    }
    let xy = phi.evaluate_or_zero(&monomial_mul(x, y))?;
    let yx = phi.evaluate_or_zero(&monomial_mul(y, x))?;
    Ok((xy * (a as f64).powf(beta) - yx * (b as f64).powf(beta)).norm())
}

/// `|φ(x) − rhs|` where rhs is `a^{−β} φ(s^{((m−n)/a)})` when `a = b` and
/// `a | m − n`, and zero otherwise. Here `s^{((k))}` is `s^k` for `k >= 0`
/// and `s*^{−k}` otherwise.
pub fn kms_characterisation_check(phi: &State, x: &Monomial, beta: f64) -> Result<f64> {
    let (m, a, b, n) = x.parts().ok_or(Error::ZeroMonomial("KMS characterisation"))?;
    let lhs = phi.evaluate(x)?;
    let diff = m as i64 - n as i64;
    let rhs = if a != b || diff.rem_euclid(a as i64) != 0 {
        Complex64::new(0.0, 0.0)
    } else {
        phi.evaluate(&Monomial::s_power(diff / a as i64))? * (a as f64).powf(-beta)
    };
    Ok((lhs - rhs).norm())
}

/// True iff `φ(x) = 0` for every supplied `x` with `a ≠ 1` or `b ≠ 1`.
pub fn ground_check(phi: &State, xs: &[Monomial]) -> Result<bool> {
    for x in xs {
        if let Some((_, a, b, _)) = x.parts() {
            if (a != 1 || b != 1) && phi.evaluate(x)? != Complex64::new(0.0, 0.0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a·a^{−β} − 1`: the mass by which the orthogonal projections
/// `s^k v_a v_a* s*^k`, `0 <= k < a`, would exceed 1 under a KMS state at
/// β < 1. Positive output is the contradiction.
pub fn no_kms_witness(beta: f64, a: u64) -> Result<f64> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::OutOfRange(format!("witness needs 0 <= beta < 1, got {beta}")));
    }
    if a < 2 {
        return Err(Error::OutOfRange(format!("witness needs a >= 2, got {a}")));
    }
    let a = a as f64;
    Ok(a * a.powf(-beta) - 1.0)
}

// ---------------------------------------------------------------------------
// Measures on the integral adeles

/// The mass of the cylinder `m + aẐ`, computed as a truncated product of
/// per-prime geometric series, beside the closed form `a^{−β}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderMass {
    pub series: f64,
    pub tail_bound: f64,
    pub closed_form: f64,
}

/// `μ_β(m + aẐ)`. For β > 1 each prime `p^e ‖ a` contributes
/// `(1 − p^{1−β}) Σ_{k>=e} p^{(1−β)k} p^{−e}`, summed until the tail falls
/// under the working tolerance; β = 1 is Haar measure, `1/a`.
pub fn measure_cylinder(beta: Beta, m: u64, a: u64, precision: Precision) -> Result<CylinderMass> {
    if a == 0 {
        return Err(Error::NotPositive { what: "cylinder modulus" });
    }
    let _ = m; // the measure is translation invariant
    let closed_form = beta.weight(a);
    let beta = match beta {
        Beta::Infinite => return Ok(CylinderMass { series: closed_form, tail_bound: 0.0, closed_form }),
        Beta::Finite(b) if !(b >= 1.0) => {
            return Err(Error::OutOfRange(format!("cylinder measure needs beta >= 1, got {b}")))
        }
        Beta::Finite(b) => b,
    };
    if beta == 1.0 {
        return Ok(CylinderMass { series: 1.0 / a as f64, tail_bound: 0.0, closed_form });
    }
    let tol = precision.tolerance();
    let mut series = 1.0;
    let mut tail_bound = 0.0;
    for (p, e) in factorize(a)?.iter() {
        let p = p as f64;
        let q = p.powf(1.0 - beta);
        let scale = p.powi(-(e as i32));
        let mut term = q.powi(e as i32) * scale;
        let mut sum = 0.0;
        // the tail after the current term is term·q/(1−q)
        loop {
            sum += term;
            term *= q;
            if term / (1.0 - q) <= tol || term == 0.0 {
                break;
            }
        }
        let factor = (1.0 - q) * sum;
        tail_bound += term;
        series *= factor;
    }
    tail_bound += 4.0 * f64::EPSILON;
    Ok(CylinderMass { series, tail_bound, closed_form })
}

/// `φ(Q_E) = ζ_E(β−1)^{−1} = ∏_{p∈E} (1 − p^{1−β})`.
pub fn conditional_mass(beta: f64, e: &PrimeWindow) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::OutOfRange(format!("conditional mass needs beta > 1, got {beta}")));
    }
    Ok(e.primes().iter().map(|&p| 1.0 - (p as f64).powf(1.0 - beta)).product())
}

/// [`conditional_mass`] for integer β >= 2, exactly.
pub fn conditional_mass_exact(beta: u32, e: &PrimeWindow) -> Result<BigRational> {
    if beta < 2 {
        return Err(Error::OutOfRange(format!("exact conditional mass needs beta >= 2, got {beta}")));
    }
    Ok(zeta_e_exact(beta - 1, e)?.recip())
}

fn conditioning_beta(phi: &State) -> Result<f64> {
    match phi.spec() {
        StateSpec::PsiBeta { beta: Beta::Finite(b) } | StateSpec::PsiBetaMu { beta: Beta::Finite(b), .. }
            if *b > 1.0 =>
        {
            Ok(*b)
        }
        other => Err(Error::Unsupported(format!("conditional states need psi_beta or psi_beta_mu with finite beta > 1, got {other}"))),
    }
}

/// The conditional state `φ_{Q_E}(s^k) = φ(Q_E s^k)/φ(Q_E)`.
///
/// `Q_E` is the projection onto the fibers `x` coprime to every prime of
/// `E`, so for the measure states
/// `φ_{Q_E}(s^k) = (ζ_E(β−1)/ζ(β−1)) Σ_{x | k, (x,E)=1} x^{1−β} ∫ z^{k/x} dμ`
/// for `k ≠ 0`, and `φ_{Q_E}(1) = 1`. For `ψ_β` it is `δ_{k,0}`.
pub fn conditional_state_sn(phi: &State, e: &PrimeWindow, k: i64) -> Result<Complex64> {
    let beta = conditioning_beta(phi)?;
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    match phi.spec() {
        StateSpec::PsiBetaMu { mu, .. } => {
            let zeta_shift = phi.zeta_shift().expect("cached at construction").value;
            let mut sum = Complex64::new(0.0, 0.0);
            for x in divisors(k.unsigned_abs())? {
                if e.is_coprime(x) {
                    sum += mu.moment(k / x as i64) * (x as f64).powf(1.0 - beta);
                }
            }
            Ok(sum * (zeta_e(beta - 1.0, e)? / zeta_shift))
        }
        _ => Ok(Complex64::new(0.0, 0.0)),
    }
}

/// Both sides of the reconstruction of `φ(s^n)` from its conditional state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reconstruction {
    pub direct: Complex64,
    pub reconstructed: Complex64,
    pub defect: f64,
}

/// `φ(s^n)` against `(1/ζ_E(β−1)) Σ_{a∈ℕ×_E, a|n} a^{1−β} φ_{Q_E}(s^{n/a})`.
/// For `n = 0` every `a ∈ ℕ×_E` divides; the sum `Σ_{a∈ℕ×_E} a^{1−β}` is
/// then taken prime by prime as geometric series, summed term by term.
pub fn reconstruct_sn(phi: &State, e: &PrimeWindow, n: i64) -> Result<Reconstruction> {
    let beta = conditioning_beta(phi)?;
    let direct = phi.evaluate(&Monomial::s_power(n))?;
    let zeta_e_value = zeta_e(beta - 1.0, e)?;
    let reconstructed = if n == 0 {
        let mut smooth_sum = 1.0;
        for &p in e.primes() {
            let ratio = (p as f64).powf(1.0 - beta);
            let (mut term, mut series) = (1.0, 0.0);
            while term > f64::EPSILON * 1e-3 {
                series += term;
                term *= ratio;
            }
            smooth_sum *= series;
        }
        conditional_state_sn(phi, e, 0)? * (smooth_sum / zeta_e_value)
    } else {
        let mut sum = Complex64::new(0.0, 0.0);
        for a in divisors(n.unsigned_abs())? {
            if e.is_smooth(a) {
                sum += conditional_state_sn(phi, e, n / a as i64)? * (a as f64).powf(1.0 - beta);
            }
        }
        sum / zeta_e_value
    };
    Ok(Reconstruction { direct, reconstructed, defect: (direct - reconstructed).norm() })
}

/// Recovers `∫ z^k dμ` for `k = 1..=K` from the values `ψ_{β,μ}(s^k)`
/// (`values[k−1]`) by solving the triangular divisor system
/// `ζ(β−1) ψ(s^k) = Σ_{x | k} x^{1−β} M(k/x)`.
pub fn recover_moments(values: &[Complex64], beta: f64, precision: Precision) -> Result<Vec<Complex64>> {
    if !(beta > 2.0) {
        return Err(Error::OutOfRange(format!("moment recovery needs beta > 2, got {beta}")));
    }
    let z = zeta(beta - 1.0, precision)?.value;
    let mut moments: Vec<Complex64> = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        let k = i as u64 + 1;
        let mut m = v * z;
        for x in divisors(k)? {
            if x > 1 {
                m -= moments[(k / x) as usize - 1] * (x as f64).powf(1.0 - beta);
            }
        }
        moments.push(m);
    }
    Ok(moments)
}

// ---------------------------------------------------------------------------
// Positivity and the partition function

/// The matrix `G_{ij} = φ(x_i* x_j)` and its least eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    pub matrix: DMatrix<Complex64>,
    pub min_eigenvalue: f64,
}

/// Gram matrix of a state on a family of at most 64 monomials. A state is
/// positive, so the least eigenvalue is nonnegative up to rounding.
pub fn gram_matrix(phi: &State, xs: &[Monomial]) -> Result<Gram> {
    if xs.len() > 64 {
        return Err(Error::OutOfRange(format!("gram matrix limited to 64 monomials, got {}", xs.len())));
    }
    if xs.iter().any(Monomial::is_zero) {
        return Err(Error::ZeroMonomial("gram entry"));
    }
    let k = xs.len();
    let mut matrix = DMatrix::from_element(k, k, Complex64::new(0.0, 0.0));
    for i in 0..k {
        let xi = xs[i].adjoint();
        for j in 0..k {
            matrix[(i, j)] = phi.evaluate_or_zero(&monomial_mul(&xi, &xs[j]))?;
        }
    }
    let min_eigenvalue = if k == 0 {
        f64::INFINITY
    } else {
        matrix.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(Gram { matrix, min_eigenvalue })
}

/// `Σ_{x <= N} x·x^{−β}`: the eigenvalue `ln x` of the Hamiltonian has
/// multiplicity `x`. `tail_bound` is `∫_N^∞ t^{1−β} dt = N^{2−β}/(β−2)`.
pub fn partition_function(beta: f64, truncation: u64) -> Result<BoundedValue> {
    if !(beta > 2.0) {
        return Err(Error::OutOfRange(format!("partition function converges only for beta > 2, got {beta}")));
    }
    if truncation == 0 {
        return Err(Error::NotPositive { what: "truncation" });
    }
    let value: f64 = (1..=truncation).rev().map(|x| (x as f64).powf(1.0 - beta)).sum();
    let n = truncation as f64;
    Ok(BoundedValue { value, error_bound: n.powf(2.0 - beta) / (beta - 2.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{reduce, ParseOptions};

    fn word(text: &str) -> Monomial {
        reduce(text, ParseOptions::default()).unwrap()
    }

    fn state(spec: StateSpec) -> State {
        State::new(spec, Precision::default()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn moments() {
        let two = CircleMeasure::atoms(vec![(Angle::ZERO, Ratio::new(1, 2)), (Angle::new(1, 2).unwrap(), Ratio::new(1, 2))])
            .unwrap();
        assert!(close(two.moment(1), Complex64::new(0.0, 0.0), 1e-15));
        assert!(close(two.moment(2), Complex64::new(1.0, 0.0), 1e-15));
        assert_eq!(CircleMeasure::Lebesgue.moment(3), Complex64::new(0.0, 0.0));
        assert_eq!(CircleMeasure::point_mass(Angle::ZERO).moment(5), Complex64::new(1.0, 0.0));
        assert!(CircleMeasure::atoms(vec![(Angle::ZERO, Ratio::new(1, 2))]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let psi = state(StateSpec::PsiBeta { beta: Beta::Finite(2.0) });
        assert!(close(psi.evaluate(&word("s v3 v3* s*")).unwrap(), Complex64::new(1.0 / 9.0, 0.0), 1e-16));

        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let z = Angle::new(1, 3).unwrap();
        let mu = state(StateSpec::PsiBetaMu { beta: Beta::Finite(3.0), mu: CircleMeasure::point_mass(z) });
        assert!(close(mu.evaluate(&Monomial::S).unwrap(), z.to_complex() / zeta2, 1e-14));
        assert!(close(mu.evaluate(&word("s^2 v2 v2*")).unwrap(), z.to_complex() / (8.0 * zeta2), 1e-14));

        let ground = state(StateSpec::Ground { omega: ToeplitzState::Evaluation(z) });
        assert_eq!(ground.evaluate(&word("v2 v2*")).unwrap(), Complex64::new(0.0, 0.0));
        assert!(State::new(StateSpec::PsiBetaMu { beta: Beta::Finite(2.0), mu: CircleMeasure::Lebesgue }, Precision::default()).is_err());
        assert!(psi.evaluate(&Monomial::Zero).is_err());
    }

    #[test]
    fn kms_examples() {
        let psi = state(StateSpec::PsiBeta { beta: Beta::Finite(1.5) });
        assert!(kms_defect(&psi, &Monomial::v(2), &Monomial::v_star(2), 1.5).unwrap() < 1e-15);
        assert!(kms_characterisation_check(&psi, &word("s v3 v3* s*"), 1.5).unwrap() < 1e-15);
        let formal = State::formal(StateSpec::PsiBeta { beta: Beta::Finite(0.9) }, Precision::default()).unwrap();
        assert!(kms_defect(&formal, &Monomial::v(2), &Monomial::v_star(2), 0.9).unwrap() < 1e-15);
    }

    #[test]
    fn ground_examples() {
        let g = state(StateSpec::Ground { omega: ToeplitzState::VectorState(0) });
        assert!(ground_check(&g, &[Monomial::v(2)]).unwrap());
        let inf = state(StateSpec::PsiBetaMu { beta: Beta::Infinite, mu: CircleMeasure::point_mass(Angle::ZERO) });
        assert!(ground_check(&inf, &[word("s v2 v2* s*")]).unwrap());
        let psi = state(StateSpec::PsiBeta { beta: Beta::Finite(1.5) });
        assert!(!ground_check(&psi, &[word("v2 v2*")]).unwrap());
    }

    #[test]
    fn witness_examples() {
        assert!((no_kms_witness(0.9, 2).unwrap() - (2f64.powf(0.1) - 1.0)).abs() < 1e-15);
        assert_eq!(no_kms_witness(0.0, 2).unwrap(), 1.0);
        assert_eq!(no_kms_witness(0.5, 4).unwrap(), 1.0);
        assert!(no_kms_witness(1.0, 2).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let p = Precision::default();
        assert_eq!(measure_cylinder(Beta::Finite(2.0), 5, 1, p).unwrap().series, 1.0);
        let c = measure_cylinder(Beta::Finite(2.0), 0, 2, p).unwrap();
        assert!((c.series - 0.25).abs() <= c.tail_bound);
        assert_eq!(measure_cylinder(Beta::Finite(1.0), 3, 6, p).unwrap().series, 1.0 / 6.0);
        assert!(measure_cylinder(Beta::Finite(0.5), 0, 2, p).is_err());
    }

    #[test]
    fn conditional_mass_examples() {
        let e2 = PrimeWindow::new([2]).unwrap();
        let e23 = PrimeWindow::new([2, 3]).unwrap();
        assert_eq!(conditional_mass(2.0, &e2).unwrap(), 0.5);
        assert_eq!(conditional_mass_exact(3, &e23).unwrap(), BigRational::new(2.into(), 3.into()));
        assert!(conditional_mass(1.0, &e2).is_err());
    }

    #[test]
    fn reconstruction_examples() {
        let e = PrimeWindow::up_to(50).unwrap();
        let psi = state(StateSpec::PsiBeta { beta: Beta::Finite(2.0) });
        assert!(reconstruct_sn(&psi, &e, 0).unwrap().defect < 1e-13);
        let mu = state(StateSpec::PsiBetaMu { beta: Beta::Finite(3.0), mu: CircleMeasure::point_mass(Angle::ZERO) });
        for n in 1..=60 {
            assert!(reconstruct_sn(&mu, &e, n).unwrap().defect < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn gram_examples() {
        let psi = state(StateSpec::PsiBeta { beta: Beta::Finite(2.0) });
        let g = gram_matrix(&psi, &[Monomial::ONE, Monomial::S, Monomial::v(2)]).unwrap();
        assert_eq!(g.matrix, DMatrix::identity(3, 3));
        assert!((g.min_eigenvalue - 1.0).abs() < 1e-12);

        let mu = state(StateSpec::PsiBetaMu { beta: Beta::Finite(3.0), mu: CircleMeasure::point_mass(Angle::ZERO) });
        let g = gram_matrix(&mu, &[Monomial::ONE, Monomial::S]).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((g.min_eigenvalue - (1.0 - 1.0 / zeta2)).abs() < 1e-12);
    }

    #[test]
    fn spec_json() {
        let spec: StateSpec = serde_json::from_str(r#"{"variant":"psi_beta_mu","beta":3,"mu":{"atoms":[[0,1]]}}"#).unwrap();
        assert_eq!(spec, StateSpec::PsiBetaMu { beta: Beta::Finite(3.0), mu: CircleMeasure::point_mass(Angle::ZERO) });
        let spec: StateSpec = serde_json::from_str(r#"{"variant":"ground","omega":{"evaluation":"1/4"}}"#).unwrap();
        assert_eq!(spec, StateSpec::Ground { omega: ToeplitzState::Evaluation(Angle::new(1, 4).unwrap()) });
        let spec: StateSpec = serde_json::from_str(r#"{"variant":"psi_beta","beta":"inf"}"#).unwrap();
        assert_eq!(spec, StateSpec::PsiBeta { beta: Beta::Infinite });
        let back: StateSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
