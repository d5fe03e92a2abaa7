//! Dirichlet characters evaluated on the units `u_n`, partial Euler sums
//! `Σ_{n∈ℕ×_E} n^{−β} χ(u_n)`, the decay of twisted Euler products relative
//! to `ζ_E(β)`, and reconstruction of a state on the Bost–Connes range
//! projections from its conditional state.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, first_primes_excluding, gcd, lcm, zeta_e, Angle, PrimeWindow};

/// A Dirichlet character modulo `m`, stored as its table of angles on the
/// units of ℤ/m: `χ(a) = e^{2πiθ_a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: BTreeMap<u64, Angle>,
}

impl DirichletCharacter {
    /// Validates that the table covers exactly the units, sends 1 to 1 and is
    /// multiplicative.
    pub fn new(modulus: u64, values: BTreeMap<u64, Angle>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NotPositive { what: "character modulus" });
        }
        let units: Vec<u64> = (0..modulus).filter(|&a| gcd(a, modulus) == 1).collect();
        if values.keys().copied().collect::<Vec<_>>() != units {
            return Err(Error::InvalidCharacter(format!("table must list exactly the units mod {modulus}")));
        }
        if values[&(1 % modulus)] != Angle::ZERO {
            return Err(Error::InvalidCharacter("value at 1 must be 1".into()));
        }
        for &a in &units {
            for &b in &units {
                let ab = (a as u128 * b as u128 % modulus as u128) as u64;
                if values[&ab] != values[&a].add(values[&b]) {
                    return Err(Error::InvalidCharacter(format!("not multiplicative at {a}·{b}")));
                }
            }
        }
        Ok(DirichletCharacter { modulus, values })
    }

    /// The principal character.
    pub fn principal(modulus: u64) -> Result<Self> {
        let values = (0..modulus.max(1)).filter(|&a| gcd(a, modulus) == 1).map(|a| (a, Angle::ZERO)).collect();
        Self::new(modulus, values)
    }

    /// The character with `χ(g) = e^{2πiθ}` for a generator `g` of a cyclic
    /// unit group.
    pub fn from_cyclic_generator(modulus: u64, generator: u64, theta: Angle) -> Result<Self> {
        let order = (0..modulus).filter(|&a| gcd(a, modulus) == 1).count() as u64;
        let mut values = BTreeMap::new();
        let mut power = 1 % modulus;
        for k in 0..order {
            if values.insert(power, theta.times(k as i64)).is_some() {
                return Err(Error::InvalidCharacter(format!("{generator} does not generate the units mod {modulus}")));
            }
            power = (power as u128 * generator as u128 % modulus as u128) as u64;
        }
        if power != 1 % modulus {
            return Err(Error::InvalidCharacter(format!("{generator} does not generate the units mod {modulus}")));
        }
        if theta.times(order as i64) != Angle::ZERO {
            return Err(Error::InvalidCharacter(format!("angle {theta} has order not dividing {order}")));
        }
        Self::new(modulus, values)
    }

    /// The nontrivial character modulo 4.
    pub fn mod4() -> Self {
        Self::from_cyclic_generator(4, 3, Angle::new(1, 2).expect("valid")).expect("valid character")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &BTreeMap<u64, Angle> {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|&v| v == Angle::ZERO)
    }

    /// The primes dividing the modulus.
    pub fn primes(&self) -> Vec<u64> {
        factorize(self.modulus).expect("positive").primes().collect()
    }

    /// `θ` with `χ(a) = e^{2πiθ}`, or `None` off the units.
    pub fn angle(&self, a: u64) -> Option<Angle> {
        self.values.get(&(a % self.modulus)).copied()
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterRepr {
    modulus: u64,
    values: BTreeMap<String, Angle>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRepr { modulus: self.modulus, values: self.values.iter().map(|(a, t)| (a.to_string(), *t)).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CharacterRepr::deserialize(d)?;
        let mut values = BTreeMap::new();
        for (a, t) in repr.values {
            let a: u64 = a.parse().map_err(|_| D::Error::custom(format!("bad residue {a:?}")))?;
            values.insert(a, t);
        }
        DirichletCharacter::new(repr.modulus, values).map_err(D::Error::custom)
    }
}

/// The symbol `u_n`: the idele equal to `n` at primes not dividing `n` and 1
/// at primes dividing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitElement(pub u64);

/// `χ(u_n)` as an angle. Defined when no prime of `n` divides the modulus,
/// where it equals `χ(n mod m)`.
pub fn char_angle_at_un(chi: &DirichletCharacter, n: UnitElement) -> Result<Angle> {
    let UnitElement(n) = n;
    if n == 0 {
        return Err(Error::NotPositive { what: "unit index" });
    }
    if gcd(n, chi.modulus) != 1 {
        return Err(Error::SupportOverlap { n, modulus: chi.modulus });
    }
    Ok(chi.angle(n).expect("n is a unit"))
}

/// `χ(u_n)`.
pub fn char_at_un(chi: &DirichletCharacter, n: UnitElement) -> Result<Complex64> {
    Ok(char_angle_at_un(chi, n)?.to_complex())
}

fn check_disjoint(chi: &DirichletCharacter, e: &PrimeWindow) -> Result<()> {
    for &p in e.primes() {
        if chi.modulus % p == 0 {
            return Err(Error::SupportOverlap { n: p, modulus: chi.modulus });
        }
    }
    Ok(())
}

/// The twisted Euler sum as a truncated series and as a product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerSum {
    /// `Σ_{n∈ℕ×_E, n<=T} n^{−β} χ(u_n)`
    pub series: Complex64,
    /// `∏_{p∈E} (1 − p^{−β} χ(u_p))^{−1}`
    pub product: Complex64,
    /// `ζ_E(β) − Σ_{n∈ℕ×_E, n<=T} n^{−β}`, which bounds the omitted terms
    pub tail_bound: f64,
}

/// Evaluates both sides of `Σ_{n∈ℕ×_E} n^{−β} χ(u_n) = ∏_{p∈E} (1 − p^{−β}χ(u_p))^{−1}`.
pub fn char_euler_sum(chi: &DirichletCharacter, e: &PrimeWindow, beta: f64, truncation: u64) -> Result<EulerSum> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::OutOfRange(format!("Euler sum needs finite beta > 0, got {beta}")));
    }
    if truncation == 0 {
        return Err(Error::NotPositive { what: "truncation" });
    }
    check_disjoint(chi, e)?;
    let mut smooth = e.smooth_numbers(truncation);
    smooth.sort_unstable_by(|a, b| b.cmp(a));
    let mut series = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for n in smooth {
        let w = (n as f64).powf(-beta);
        series += char_at_un(chi, UnitElement(n))? * w;
        mass += w;
    }
    let mut product = Complex64::new(1.0, 0.0);
    for &p in e.primes() {
        product /= Complex64::new(1.0, 0.0) - char_at_un(chi, UnitElement(p))? * (p as f64).powf(-beta);
    }
    let tail_bound = (zeta_e(beta, e)? - mass).max(0.0) + 1e-15 * mass;
    Ok(EulerSum { series, product, tail_bound })
}

/// `|∏_{p∈E}(1 − p^{−β}χ(u_p))^{−1}| / ζ_E(β)` for `E` the first `k`
/// primes not dividing the modulus, `k = 1..=K`.
pub fn invariance_ratio(chi: &DirichletCharacter, beta: f64, k_max: usize) -> Result<Vec<f64>> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::OutOfRange(format!("invariance ratio needs 0 < beta <= 1, got {beta}")));
    }
    let primes = first_primes_excluding(k_max, &chi.primes());
    let mut twisted = Complex64::new(1.0, 0.0);
    let mut plain = 1.0;
    let mut out = Vec::with_capacity(k_max);
    for p in primes {
        let w = (p as f64).powf(-beta);
        twisted /= Complex64::new(1.0, 0.0) - char_at_un(chi, UnitElement(p))? * w;
        plain /= 1.0 - w;
        out.push(twisted.norm() / plain);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Reconstruction on range projections

/// Test elements on which conjugation by `μ_n` resolves in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeckeElement {
    One,
    /// `μ_k μ_k*`
    RangeProjection(u64),
}

impl HeckeElement {
    fn index(self) -> Result<u64> {
        match self {
            HeckeElement::One => Ok(1),
            HeckeElement::RangeProjection(0) => Err(Error::NotPositive { what: "range projection index" }),
            HeckeElement::RangeProjection(k) => Ok(k),
        }
    }
}

/// `μ_n* μ_k μ_k* μ_n = μ_{k/(k,n)} μ_{k/(k,n)}*`, returned as the index.
pub fn conjugate_range_projection(k: u64, n: u64) -> u64 {
    k / gcd(k, n)
}

/// `φ_{Q_E}(μ_j μ_j*)` for the model state `φ(μ_k μ_k*) = k^{−β}`, where
/// `Q_E = ∏_{p∈E}(1 − μ_p μ_p*)`. The projections `μ_k μ_k*` multiply by
/// `lcm`, so `φ(Q_E μ_jμ_j*) = Σ_{F⊆E} (−1)^{|F|} lcm(j, ∏F)^{−β}`, and
/// `φ(Q_E) = ζ_E(β)^{−1}`.
pub fn bc_conditional_state(e: &PrimeWindow, beta: f64, j: u64) -> Result<f64> {
    if e.len() > 20 {
        return Err(Error::OutOfRange(format!("inclusion-exclusion limited to 20 primes, got {}", e.len())));
    }
    if j == 0 {
        return Err(Error::NotPositive { what: "range projection index" });
    }
    let primes = e.primes();
    let mut sum = 0.0;
    for mask in 0u32..(1 << primes.len()) {
        let mut l = j;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                l = lcm(l, p);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (l as f64).powf(-beta);
    }
    Ok(sum * zeta_e(beta, e)?)
}

/// Outcome of [`bc_reconstruct_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BcReconstruction {
    pub direct: f64,
    pub reconstructed: f64,
    pub defect: f64,
    pub tail_bound: f64,
}

/// Compares `φ(T)` with `Σ_{n∈ℕ×_E} n^{−β}/ζ_E(β) · φ_{Q_E}(μ_n* T μ_n)` for
/// the model state `φ(μ_kμ_k*) = k^{−β}`, with the conditional state given
/// by `conditional` on range projection indices.
///
/// The sum runs over `n ∈ ℕ×_E` up to a bound that grows until the omitted
/// weight `1 − Σ_{n<=B} n^{−β}/ζ_E(β)` falls below `1e-13` (or two million
/// terms are reached). Conditional values of projections lie in `[0, 1]`, so
/// that weight bounds the omitted terms.
pub fn bc_reconstruct_check(
    conditional: impl Fn(u64) -> Result<f64>,
    e: &PrimeWindow,
    beta: f64,
    element: HeckeElement,
) -> Result<BcReconstruction> {
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::OutOfRange(format!("reconstruction needs finite beta > 1, got {beta}")));
    }
    let k = element.index()?;
    let direct = (k as f64).powf(-beta);
    let zeta_value = zeta_e(beta, e)?;

    let mut bound = 1024u64;
    let terms = loop {
        let terms = e.smooth_numbers(bound);
        let mass: f64 = terms.iter().rev().map(|&n| (n as f64).powf(-beta)).sum();
        if 1.0 - mass / zeta_value <= 1e-13 || terms.len() > 2_000_000 || bound > u64::MAX / 8 {
            break terms;
        }
        bound *= 8;
    };
    let mut reconstructed = 0.0;
    let mut mass = 0.0;
    for &n in terms.iter().rev() {
        let w = (n as f64).powf(-beta);
        reconstructed += w * conditional(conjugate_range_projection(k, n))?;
        mass += w;
    }
    reconstructed /= zeta_value;
    let tail_bound = (1.0 - mass / zeta_value).max(0.0) + 1e-15;
    Ok(BcReconstruction { direct, reconstructed, defect: (direct - reconstructed).abs(), tail_bound })
}
