//! Integer and prime arithmetic: factorizations, supernatural numbers,
//! residue classes and the Chinese remainder theorem, rational angles on the
//! circle, and numerical values of the Riemann zeta function and its
//! partial Euler products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Primes

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `p <= n`, by sieving.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The first `k` primes, skipping those in `exclude`.
pub fn first_primes_excluding(k: usize, exclude: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut p = 1u64;
    while out.len() < k {
        p += 1;
        if is_prime(p) && !exclude.contains(&p) {
            out.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Factorization

/// Prime factorization `n = ∏ p^e`, primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: BTreeMap<u64, u32>,
}

impl Factorization {
    /// The empty factorization, representing 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from explicit prime/exponent pairs.
    pub fn from_factors(pairs: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self { factors })
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The integer this factorization represents, if it fits in a `u64`.
    pub fn value(&self) -> Option<u64> {
        self.iter()
            .try_fold(1u64, |acc, (p, e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Factors `n` by trial division, stopping early once the cofactor is prime.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NotPositive { what: "factorize argument" });
    }
    let mut factors = BTreeMap::new();
    let mut rest = n;
    for p in [2u64, 3] {
        while rest % p == 0 {
            *factors.entry(p).or_insert(0) += 1;
            rest /= p;
        }
    }
    let mut p = 5u64;
    let mut step = 2u64;
    while rest > 1 {
        if is_prime(rest) {
            *factors.entry(rest).or_insert(0) += 1;
            break;
        }
        match p.checked_mul(p) {
            Some(sq) if sq <= rest => {}
            _ => {
                *factors.entry(rest).or_insert(0) += 1;
                break;
            }
        }
        while rest % p == 0 {
            *factors.entry(p).or_insert(0) += 1;
            rest /= p;
        }
        p += step;
        step = 6 - step;
    }
    Ok(Factorization { factors })
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for (p, e) in f.iter() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

// ---------------------------------------------------------------------------
// Finite prime sets

/// A nonempty finite set of distinct primes E, indexing the semigroup ℕ×_E of
/// positive integers whose prime factors all lie in E.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeWindow {
    primes: Vec<u64>,
}

impl PrimeWindow {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if !set.insert(p) {
                return Err(Error::OutOfRange(format!("prime {p} listed twice")));
            }
        }
        if set.is_empty() {
            return Err(Error::OutOfRange("prime window must be nonempty".into()));
        }
        Ok(Self { primes: set.into_iter().collect() })
    }

    /// All primes up to and including `n`.
    pub fn up_to(n: u64) -> Result<Self> {
        Self::new(primes_up_to(n))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// True iff every prime factor of `n` lies in the window.
    pub fn is_smooth(&self, n: u64) -> bool {
        let mut rest = n;
        for &p in &self.primes {
            while rest % p == 0 {
                rest /= p;
            }
        }
        rest == 1
    }

    /// True iff `n` has no prime factor in the window.
    pub fn is_coprime(&self, n: u64) -> bool {
        self.primes.iter().all(|&p| n % p != 0)
    }

    /// The elements of ℕ×_E not exceeding `bound`, in increasing order.
    pub fn smooth_numbers(&self, bound: u64) -> Vec<u64> {
        let mut out = vec![1u64];
        for &p in &self.primes {
            let len = out.len();
            for i in 0..len {
                let mut x = out[i];
                while let Some(next) = x.checked_mul(p).filter(|&v| v <= bound) {
                    out.push(next);
                    x = next;
                }
            }
        }
        out.retain(|&x| x <= bound);
        out.sort_unstable();
        out
    }
}

// ---------------------------------------------------------------------------
// Supernatural numbers

/// Exponent of a prime in a supernatural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

/// Exponent carried by every prime not listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefaultExponent {
    Zero,
    Infinite,
}

impl DefaultExponent {
    fn exponent(self) -> Exponent {
        match self {
            DefaultExponent::Zero => Exponent::Finite(0),
            DefaultExponent::Infinite => Exponent::Infinite,
        }
    }
}

/// A formal product `∏ p^{e_p}` with `e_p ∈ ℕ ∪ {∞}`. Only finitely many
/// exponents differ from the default, which is either 0 or ∞; `∇` is the
/// value with default ∞ and nothing listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    listed: BTreeMap<u64, Exponent>,
    default: DefaultExponent,
}

impl SupernaturalNumber {
    pub fn new(listed: impl IntoIterator<Item = (u64, Exponent)>, default: DefaultExponent) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, e) in listed {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            map.insert(p, e);
        }
        Ok(Self::canonical(map, default))
    }

    fn canonical(mut listed: BTreeMap<u64, Exponent>, default: DefaultExponent) -> Self {
        let d = default.exponent();
        listed.retain(|_, e| *e != d);
        Self { listed, default }
    }

    /// The supernatural number of a positive integer.
    pub fn from_integer(n: u64) -> Result<Self> {
        let f = factorize(n)?;
        Ok(Self::canonical(
            f.iter().map(|(p, e)| (p, Exponent::Finite(e))).collect(),
            DefaultExponent::Zero,
        ))
    }

    /// `∇ = ∏ p^∞`, the largest supernatural number.
    pub fn nabla() -> Self {
        Self { listed: BTreeMap::new(), default: DefaultExponent::Infinite }
    }

    /// `p^∞`.
    pub fn prime_power_infinite(p: u64) -> Result<Self> {
        Self::new([(p, Exponent::Infinite)], DefaultExponent::Zero)
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.listed.get(&p).copied().unwrap_or(self.default.exponent())
    }

    pub fn default_exponent(&self) -> DefaultExponent {
        self.default
    }

    pub fn listed(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.listed.iter().map(|(&p, &e)| (p, e))
    }

    /// True iff N is a positive integer (an element of ℕ×).
    pub fn is_finite(&self) -> bool {
        self.default == DefaultExponent::Zero && self.listed.values().all(|e| *e != Exponent::Infinite)
    }

    pub fn to_integer(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.listed.iter().try_fold(1u64, |acc, (&p, e)| match e {
            Exponent::Finite(k) => acc.checked_mul(p.checked_pow(*k)?),
            Exponent::Infinite => None,
        })
    }

    /// `a | N` for a positive integer `a`.
    pub fn divisible_by(&self, a: u64) -> bool {
        if a == 0 {
            return false;
        }
        match factorize(a) {
            Ok(f) => f.iter().all(|(p, e)| Exponent::Finite(e) <= self.exponent(p)),
            Err(_) => false,
        }
    }

    fn pointwise(
        &self,
        other: &Self,
        pick: impl Fn(Exponent, Exponent) -> Exponent,
    ) -> Self {
        let default = match pick(self.default.exponent(), other.default.exponent()) {
            Exponent::Infinite => DefaultExponent::Infinite,
            Exponent::Finite(_) => DefaultExponent::Zero,
        };
        let keys: BTreeSet<u64> = self.listed.keys().chain(other.listed.keys()).copied().collect();
        let listed = keys
            .into_iter()
            .map(|p| (p, pick(self.exponent(p), other.exponent(p))))
            .collect();
        Self::canonical(listed, default)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.pointwise(other, std::cmp::min)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.pointwise(other, std::cmp::max)
    }

    /// `self | other`: pointwise comparison of exponents.
    pub fn divides(&self, other: &Self) -> bool {
        if self.default.exponent() > other.default.exponent() {
            return false;
        }
        self.listed
            .keys()
            .chain(other.listed.keys())
            .all(|&p| self.exponent(p) <= other.exponent(p))
    }

    /// The divisors `a <= bound` of N, for quantifiers truncated at a level.
    pub fn divisors_up_to(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&a| self.divisible_by(a)).collect()
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .listed
            .iter()
            .map(|(p, e)| match e {
                Exponent::Infinite => format!("{p}^∞"),
                Exponent::Finite(1) => p.to_string(),
                Exponent::Finite(k) => format!("{p}^{k}"),
            })
            .collect();
        match self.default {
            DefaultExponent::Infinite if parts.is_empty() => return write!(f, "∇"),
            DefaultExponent::Infinite => parts.push("(others)^∞".into()),
            DefaultExponent::Zero if parts.is_empty() => return write!(f, "1"),
            DefaultExponent::Zero => {}
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// `sn_divides(M, N)`: pointwise `e_p(M) <= e_p(N)`.
pub fn sn_divides(m: &SupernaturalNumber, n: &SupernaturalNumber) -> bool {
    m.divides(n)
}

pub fn sn_gcd(m: &SupernaturalNumber, n: &SupernaturalNumber) -> SupernaturalNumber {
    m.gcd(n)
}

pub fn sn_lcm(m: &SupernaturalNumber, n: &SupernaturalNumber) -> SupernaturalNumber {
    m.lcm(n)
}

/// JSON form: an integer for finite values, `"nabla"` for `∇`, otherwise
/// `{"factors": {"2": "inf", "3": 1}, "default": 0}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SupernaturalRepr {
    Integer(u64),
    Named(String),
    Full { factors: BTreeMap<String, ExponentRepr>, default: ExponentRepr },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Finite(u32),
    Named(String),
}

impl ExponentRepr {
    fn parse(&self) -> std::result::Result<Exponent, String> {
        match self {
            ExponentRepr::Finite(k) => Ok(Exponent::Finite(*k)),
            ExponentRepr::Named(s) if s == "inf" || s == "∞" => Ok(Exponent::Infinite),
            ExponentRepr::Named(s) => Err(format!("bad exponent {s:?}")),
        }
    }

    fn from(e: Exponent) -> Self {
        match e {
            Exponent::Finite(k) => ExponentRepr::Finite(k),
            Exponent::Infinite => ExponentRepr::Named("inf".into()),
        }
    }
}

impl Serialize for SupernaturalNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = if let Some(n) = self.to_integer() {
            SupernaturalRepr::Integer(n)
        } else if *self == SupernaturalNumber::nabla() {
            SupernaturalRepr::Named("nabla".into())
        } else {
            SupernaturalRepr::Full {
                factors: self.listed.iter().map(|(p, e)| (p.to_string(), ExponentRepr::from(*e))).collect(),
                default: ExponentRepr::from(self.default.exponent()),
            }
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupernaturalNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (factors, default) = match SupernaturalRepr::deserialize(d)? {
            SupernaturalRepr::Integer(n) => return SupernaturalNumber::from_integer(n).map_err(D::Error::custom),
            SupernaturalRepr::Named(s) if s == "nabla" || s == "∇" => return Ok(SupernaturalNumber::nabla()),
            SupernaturalRepr::Named(s) => return Err(D::Error::custom(format!("unknown supernatural number {s:?}"))),
            SupernaturalRepr::Full { factors, default } => (factors, default),
        };
        let default = match default.parse().map_err(D::Error::custom)? {
            Exponent::Finite(0) => DefaultExponent::Zero,
            Exponent::Infinite => DefaultExponent::Infinite,
            Exponent::Finite(k) => {
                return Err(D::Error::custom(format!("default exponent must be 0 or inf, got {k}")))
            }
        };
        let mut listed = Vec::new();
        for (p, e) in &factors {
            let p: u64 = p.parse().map_err(|_| D::Error::custom(format!("bad prime {p:?}")))?;
            listed.push((p, e.parse().map_err(D::Error::custom)?));
        }
        SupernaturalNumber::new(listed, default).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Residues and CRT

/// A class `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClass {
    modulus: u64,
    value: u64,
}

/// An element of ℤ/N truncated at a finite level: the residue class modulo
/// that level.
pub type TruncatedAdele = ResidueClass;

impl ResidueClass {
    pub fn new(value: i128, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NotPositive { what: "modulus" });
        }
        let v = value.rem_euclid(modulus as i128) as u64;
        Ok(Self { modulus, value: v })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Image under ℤ/modulus → ℤ/divisor.
    pub fn reduce(&self, divisor: u64) -> Result<Self> {
        if divisor == 0 || self.modulus % divisor != 0 {
            return Err(Error::NotADivisor { divisor, modulus: self.modulus });
        }
        Ok(Self { modulus: divisor, value: self.value % divisor })
    }

    pub fn contains(&self, n: i128) -> bool {
        n.rem_euclid(self.modulus as i128) as u64 == self.value
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Splits a class modulo N into its components modulo the prime powers of N,
/// ordered by prime.
pub fn crt_split(r: &ResidueClass) -> Result<Vec<ResidueClass>> {
    let f = factorize(r.modulus)?;
    f.iter()
        .map(|(p, e)| r.reduce(p.pow(e)))
        .collect()
}

/// Inverse of [`crt_split`]: combines classes with pairwise coprime moduli.
pub fn crt_combine(parts: &[ResidueClass]) -> Result<ResidueClass> {
    let mut acc = ResidueClass { modulus: 1, value: 0 };
    for part in parts {
        let g = gcd(acc.modulus, part.modulus);
        if g != 1 {
            return Err(Error::ModuliNotCoprime(acc.modulus, part.modulus));
        }
        let m1 = acc.modulus as i128;
        let m2 = part.modulus as i128;
        let modulus = m1.checked_mul(m2).filter(|&m| m <= u64::MAX as i128).ok_or(Error::Overflow("crt_combine"))?;
        // x = v1 + m1 * t with m1 t ≡ v2 - v1 (mod m2)
        let ext = m1.extended_gcd(&m2);
        let inv = ext.x.rem_euclid(m2);
        let diff = (part.value as i128 - acc.value as i128).rem_euclid(m2);
        let t = (diff * inv).rem_euclid(m2);
        acc = ResidueClass::new(acc.value as i128 + m1 * t, modulus as u64)?;
    }
    Ok(acc)
}

/// The injection ℤ/b → ℤ/ab, n ↦ an.
pub fn times_a_embed(n: &ResidueClass, a: u64) -> Result<ResidueClass> {
    if a == 0 {
        return Err(Error::NotPositive { what: "multiplier" });
    }
    let modulus = n.modulus.checked_mul(a).ok_or(Error::Overflow("times_a_embed"))?;
    ResidueClass::new(n.value as i128 * a as i128, modulus)
}

// ---------------------------------------------------------------------------
// Rational angles

/// A point `e^{2πiθ}` of the circle with rational angle θ ∈ [0, 1), measured
/// in turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Ratio<i64>);

impl Angle {
    pub const ZERO: Angle = Angle(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::NotPositive { what: "angle denominator" });
        }
        Ok(Self::from_ratio(Ratio::new(numer, denom)))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let d = *r.denom() as i128;
        let n = (*r.numer() as i128).rem_euclid(d);
        Angle(Ratio::new(n as i64, d as i64))
    }

    pub fn turns(&self) -> Ratio<i64> {
        self.0
    }

    /// `kθ mod 1`, computed exactly.
    pub fn times(self, k: i64) -> Angle {
        let d = *self.0.denom() as i128;
        let n = (*self.0.numer() as i128 * k as i128).rem_euclid(d);
        Angle(Ratio::new(n as i64, d as i64))
    }

    pub fn add(self, other: Angle) -> Angle {
        let (a, b) = (self.0, other.0);
        let d = (*a.denom() as i128).lcm(&(*b.denom() as i128));
        let n = (*a.numer() as i128 * (d / *a.denom() as i128)
            + *b.numer() as i128 * (d / *b.denom() as i128))
            .rem_euclid(d);
        Angle(Ratio::new(n as i64, d as i64))
    }

    pub fn neg(self) -> Angle {
        self.times(-1)
    }

    /// The root of unity `e^{2πiθ}`. Quarter turns are returned exactly.
    pub fn to_complex(self) -> Complex64 {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if 4 % d == 0 {
            return match n * (4 / d) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let t = std::f64::consts::TAU * n as f64 / d as f64;
        Complex64::new(t.cos(), t.sin())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_ratio(&self.0))
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Angle::from_ratio(parse_ratio(s)?))
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when q = 1.
pub fn format_ratio(r: &Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, an integer, or a decimal literal (taken at its exact
/// binary value) into a rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::OutOfRange(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Ratio::from_integer(n));
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    float_to_ratio(x).ok_or_else(bad)
}

/// Exact conversion of a finite float whose numerator and denominator fit in `i64`.
pub fn float_to_ratio(x: f64) -> Option<Ratio<i64>> {
    let r = BigRational::from_float(x)?;
    Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Converts an exact rational to `f64`.
pub fn big_ratio_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale both down to keep the quotient representable
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let n2: BigInt = n >> shift;
            let d2: BigInt = d >> shift;
            n2.to_f64().unwrap_or(f64::NAN) / d2.to_f64().unwrap_or(f64::NAN)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatioRepr {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RatioRepr {
    fn into_ratio(self) -> Result<Ratio<i64>> {
        match self {
            RatioRepr::Int(n) => Ok(Ratio::from_integer(n)),
            RatioRepr::Float(x) => {
                float_to_ratio(x).ok_or_else(|| Error::OutOfRange(format!("not a rational number: {x}")))
            }
            RatioRepr::Text(s) => parse_ratio(&s),
        }
    }
}

/// Deserializes a rational written as an integer, `"p/q"` or a float.
pub fn deserialize_ratio<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Ratio<i64>, D::Error> {
    use serde::de::Error as _;
    RatioRepr::deserialize(d)?.into_ratio().map_err(D::Error::custom)
}

/// Serializes a rational as `"p/q"`.
pub fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ratio(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        deserialize_ratio(d).map(Angle::from_ratio)
    }
}

// ---------------------------------------------------------------------------
// Zeta values

/// Working precision for real evaluations, in fractional bits. Values are
/// computed in `f64`, so requests beyond 53 bits only tighten truncation
/// targets and never the final rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 64 }
    }
}

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::NotPositive { what: "precision" });
        }
        Ok(Precision { bits })
    }

    /// Target absolute error for truncated series.
    pub fn tolerance(&self) -> f64 {
        2f64.powi(-(self.bits.min(1000) as i32)).max(1e-17)
    }
}

/// A real value together with a rigorous bound on its truncation and
/// rounding error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundedValue {
    pub value: f64,
    pub error_bound: f64,
}

// B_2, B_4, ..., B_20
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `ζ(s)` from the partial sum `Σ_{k<n} k^{-s}`, the integral tail
/// `n^{1-s}/(s-1)` and `order` Euler-Maclaurin corrections. The error bound is
/// the first omitted correction (all derivatives of `x^{-s}` have fixed sign)
/// plus a rounding allowance.
pub fn zeta_euler_maclaurin(s: f64, n: u64, order: usize) -> Result<BoundedValue> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::OutOfRange(format!("zeta needs finite s > 1, got {s}")));
    }
    let n = n.max(2);
    let order = order.min(BERNOULLI_EVEN.len() - 1);
    let nf = n as f64;
    let head: f64 = (1..n).rev().map(|k| (k as f64).powf(-s)).sum();
    let mut value = head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = nf.powf(-s - 1.0);
    for k in 1..=order {
        value += BERNOULLI_EVEN[k - 1] / factorial * rising * power;
        let (a, b) = (2.0 * k as f64 - 1.0, 2.0 * k as f64);
        rising *= (s + a) * (s + b);
        factorial *= (b + 1.0) * (b + 2.0);
        power /= nf * nf;
    }
    let omitted = (BERNOULLI_EVEN[order] / factorial * rising * power).abs();
    let rounding = 4.0 * (n as f64 + order as f64 + 4.0) * f64::EPSILON * value.abs();
    Ok(BoundedValue { value, error_bound: omitted + rounding })
}

/// `ζ(s)` to within the target absolute error of `precision` (or as close as
/// `f64` rounding allows).
pub fn zeta(s: f64, precision: Precision) -> Result<BoundedValue> {
    let tol = precision.tolerance();
    let mut n = 8u64;
    let mut best = zeta_euler_maclaurin(s, n, 8)?;
    // Double N until the bound meets the target or rounding stops it shrinking.
    while best.error_bound > tol && n < 1 << 16 {
        n *= 2;
        let v = zeta_euler_maclaurin(s, n, 8)?;
        if v.error_bound >= best.error_bound {
            break;
        }
        best = v;
    }
    Ok(best)
}

/// The partial Euler product `ζ_E(s) = ∏_{p∈E} (1 - p^{-s})^{-1}`.
pub fn zeta_e(s: f64, e: &PrimeWindow) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::OutOfRange(format!("zeta_E needs s > 0, got {s}")));
    }
    Ok(e.primes().iter().map(|&p| 1.0 / (1.0 - (p as f64).powf(-s))).product())
}

/// `ζ_E(s)` for integer `s >= 1` as an exact rational.
pub fn zeta_e_exact(s: u32, e: &PrimeWindow) -> Result<BigRational> {
    if s == 0 {
        return Err(Error::OutOfRange("zeta_E needs s > 0".into()));
    }
    let mut acc = BigRational::one();
    for &p in e.primes() {
        let ps = BigInt::from(p).pow(s);
        acc *= BigRational::new(ps.clone(), ps - BigInt::one());
    }
    Ok(acc)
}
