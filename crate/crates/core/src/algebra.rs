//! The rewriting engine. Every product of generators `s`, `s*`, `v_p`,
//! `v_p*` reduces to a single spanning monomial `s^m v_a v_b* s*^n` or to
//! zero; this module computes that normal form, the adjoint, the time
//! evolution `σ_t`, and the two conditional expectations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, is_prime};
use crate::semigroup::euclid_smallest;

/// A spanning monomial `s^m v_a v_b* s*^n`, or zero.
///
/// Each nonzero spanning element has exactly one tuple `(m, a, b, n)`, so
/// equality of normal forms is equality of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MonomialRepr", into = "MonomialRepr")]
pub enum Monomial {
    Zero,
    Mono { m: u64, a: u64, b: u64, n: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum MonomialRepr {
    Zero,
    Mono { m: u64, a: u64, b: u64, n: u64 },
}

impl TryFrom<MonomialRepr> for Monomial {
    type Error = Error;
    fn try_from(r: MonomialRepr) -> Result<Self> {
        match r {
            MonomialRepr::Zero => Ok(Monomial::Zero),
            MonomialRepr::Mono { m, a, b, n } => Monomial::try_new(m, a, b, n),
        }
    }
}

impl From<Monomial> for MonomialRepr {
    fn from(x: Monomial) -> Self {
        match x {
            Monomial::Zero => MonomialRepr::Zero,
            Monomial::Mono { m, a, b, n } => MonomialRepr::Mono { m, a, b, n },
        }
    }
}

fn add(x: u64, y: u64) -> u64 {
    x.checked_add(y).expect("monomial exponent overflows u64")
}

fn mul(x: u64, y: u64) -> u64 {
    x.checked_mul(y).expect("monomial exponent overflows u64")
}

impl Monomial {
    pub const ONE: Monomial = Monomial::Mono { m: 0, a: 1, b: 1, n: 0 };
    pub const S: Monomial = Monomial::Mono { m: 1, a: 1, b: 1, n: 0 };
    pub const S_STAR: Monomial = Monomial::Mono { m: 0, a: 1, b: 1, n: 1 };

    /// `s^m v_a v_b* s*^n`.
    ///
    /// # Panics
    /// Panics if `a` or `b` is zero.
    pub fn new(m: u64, a: u64, b: u64, n: u64) -> Self {
        Self::try_new(m, a, b, n).expect("multiplicative parts must be positive")
    }

    pub fn try_new(m: u64, a: u64, b: u64, n: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NotPositive { what: "multiplicative part" });
        }
        Ok(Monomial::Mono { m, a, b, n })
    }

    /// `v_a`, for any positive `a`.
    pub fn v(a: u64) -> Self {
        Self::new(0, a, 1, 0)
    }

    /// `v_b*`.
    pub fn v_star(b: u64) -> Self {
        Self::new(0, 1, b, 0)
    }

    /// `s^k` for `k >= 0` and `s*^{−k}` for `k < 0`.
    pub fn s_power(k: i64) -> Self {
        if k >= 0 {
            Self::new(k as u64, 1, 1, 0)
        } else {
            Self::new(0, 1, 1, k.unsigned_abs())
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Monomial::Zero)
    }

    /// `(m, a, b, n)` for a nonzero monomial.
    pub fn parts(&self) -> Option<(u64, u64, u64, u64)> {
        match *self {
            Monomial::Zero => None,
            Monomial::Mono { m, a, b, n } => Some((m, a, b, n)),
        }
    }

    /// `(s^m v_a v_b* s*^n)* = s^n v_b v_a* s*^m`.
    pub fn adjoint(&self) -> Monomial {
        match *self {
            Monomial::Zero => Monomial::Zero,
            Monomial::Mono { m, a, b, n } => Monomial::Mono { m: n, a: b, b: a, n: m },
        }
    }

    /// The scalar `(a/b)^{it}` with `σ_t(x) = (a/b)^{it} x`.
    pub fn sigma_phase(&self, t: f64) -> Result<Complex64> {
        let (_, a, b, _) = self.parts().ok_or(Error::ZeroMonomial("time evolution"))?;
        let theta = t * ((a as f64).ln() - (b as f64).ln());
        Ok(Complex64::new(theta.cos(), theta.sin()))
    }

    /// The scalar `(a/b)^{−β}` with `σ_{iβ}(x) = (a/b)^{−β} x`.
    pub fn sigma_analytic_factor(&self, beta: f64) -> Result<f64> {
        let (_, a, b, _) = self.parts().ok_or(Error::ZeroMonomial("time evolution"))?;
        Ok((-beta * ((a as f64).ln() - (b as f64).ln())).exp())
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        monomial_mul(&self, &rhs)
    }
}

impl fmt::Display for Monomial {
    /// Writes the monomial as a word, e.g. `s^2 v3 v2* s*`; `1` for the
    /// identity and `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, a, b, n) = match self.parts() {
            None => return write!(f, "0"),
            Some(p) => p,
        };
        let mut terms = Vec::new();
        let pow = |k: u64| if k == 1 { String::new() } else { format!("^{k}") };
        if m > 0 {
            terms.push(format!("s{}", pow(m)));
        }
        if a > 1 {
            terms.push(format!("v{a}"));
        }
        if b > 1 {
            terms.push(format!("v{b}*"));
        }
        if n > 0 {
            terms.push(format!("s{}*", pow(n)));
        }
        if terms.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

/// Normal form of `v_a* s*^m s^n v_b`: zero unless `m ≡ n (mod gcd(a,b))`,
/// otherwise `s^α v_{b'} v_{a'}* s*^β` where `(α, β)` is the least solution of
/// `(n − m)/gcd = αa' − βb'`.
///
/// ```
/// use affine_toeplitz::algebra::{covariance_reduce, Monomial};
/// assert_eq!(covariance_reduce(2, 1, 2, 3), Monomial::new(2, 3, 2, 1));
/// assert_eq!(covariance_reduce(2, 0, 1, 2), Monomial::Zero);
/// ```
pub fn covariance_reduce(a: u64, m: u64, n: u64, b: u64) -> Monomial {
    assert!(a > 0 && b > 0, "multiplicative parts must be positive");
    let g = gcd(a, b);
    let diff = n as i128 - m as i128;
    if diff.rem_euclid(g as i128) != 0 {
        return Monomial::Zero;
    }
    let (a1, b1) = (a / g, b / g);
    let (alpha, beta) = euclid_smallest(a1, b1, diff / g as i128).expect("a/g and b/g are coprime");
    Monomial::Mono { m: alpha, a: b1, b: a1, n: beta }
}

/// Product of two spanning monomials, which is again spanning or zero.
///
/// For `L = (m,a,b,n)` and `R = (q,c,d,r)` the middle factor
/// `v_b* s*^n s^q v_c` is reduced by [`covariance_reduce`] and the outer
/// factors are absorbed using `v_a s^k = s^{ak} v_a`.
///
/// # Panics
/// Panics if an exponent of the product overflows `u64`.
pub fn monomial_mul(l: &Monomial, r: &Monomial) -> Monomial {
    let ((m, a, b, n), (q, c, d, r)) = match (l.parts(), r.parts()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Monomial::Zero,
    };
    match covariance_reduce(b, n, q, c) {
        Monomial::Zero => Monomial::Zero,
        Monomial::Mono { m: beta, a: c1, b: b1, n: gamma } => Monomial::Mono {
            m: add(m, mul(beta, a)),
            a: mul(a, c1),
            b: mul(d, b1),
            n: add(r, mul(gamma, d)),
        },
    }
}

/// Adjoint of a monomial; see [`Monomial::adjoint`].
pub fn adjoint(x: &Monomial) -> Monomial {
    x.adjoint()
}

/// Multiplicative parts used by the standard verification grid.
pub const GRID_PARTS: [u64; 5] = [1, 2, 3, 4, 6];

/// All `s^m v_a v_b* s*^n` with `m, n <= max_power` and `a, b` from `parts`,
/// ordered by `(m, a, b, n)`.
pub fn monomial_grid(max_power: u64, parts: &[u64]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for m in 0..=max_power {
        for &a in parts {
            for &b in parts {
                for n in 0..=max_power {
                    out.push(Monomial::new(m, a, b, n));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Words

/// A generator of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    S,
    SStar,
    V(u64),
    VStar(u64),
}

impl Generator {
    pub fn star(self) -> Generator {
        match self {
            Generator::S => Generator::SStar,
            Generator::SStar => Generator::S,
            Generator::V(p) => Generator::VStar(p),
            Generator::VStar(p) => Generator::V(p),
        }
    }
}

/// A generator raised to a positive power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorToken {
    pub kind: Generator,
    pub power: u32,
}

impl GeneratorToken {
    pub fn new(kind: Generator, power: u32) -> Self {
        Self { kind, power }
    }

    /// The monomial this token denotes.
    pub fn monomial(&self) -> Result<Monomial> {
        let k = self.power;
        let prime_power = |p: u64| p.checked_pow(k).ok_or(Error::Overflow("generator power"));
        Ok(match self.kind {
            Generator::S => Monomial::new(k as u64, 1, 1, 0),
            Generator::SStar => Monomial::new(0, 1, 1, k as u64),
            Generator::V(p) => Monomial::new(0, prime_power(p)?, 1, 0),
            Generator::VStar(p) => Monomial::new(0, 1, prime_power(p)?, 0),
        })
    }
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = if self.power == 1 { String::new() } else { format!("^{}", self.power) };
        match self.kind {
            Generator::S => write!(f, "s{pow}"),
            Generator::SStar => write!(f, "s{pow}*"),
            Generator::V(p) => write!(f, "v{p}{pow}"),
            Generator::VStar(p) => write!(f, "v{p}{pow}*"),
        }
    }
}

/// Parser options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `v_a` for composite `a` (and `v1`), expanding it into prime
    /// factors.
    pub expand_composite: bool,
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { position: start, message: format!("{what} too large") })
    }
}

/// Parses a word such as `"s^2 v3 v2* s*"`.
///
/// Grammar: `word := term (ws term)*`, `term := base power? star?`,
/// `base := "s" | "v" uint`, `power := "^" uint`, `star := "*"`. The star
/// applies to the whole powered term.
pub fn parse_word(text: &str, options: ParseOptions) -> Result<Vec<GeneratorToken>> {
    let mut sc = Scanner { text, pos: 0 };
    let mut out = Vec::new();
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(sc.error("empty word"));
    }
    while sc.peek().is_some() {
        let base = match sc.peek() {
            Some('s') => {
                sc.bump();
                None
            }
            Some('v') => {
                sc.bump();
                let idx_pos = sc.pos;
                let a = sc.uint("generator index")?;
                Some((a, idx_pos))
            }
            Some(c) => return Err(sc.error(format!("unexpected character {c:?}"))),
            None => unreachable!(),
        };
        let mut power = 1u32;
        if sc.peek() == Some('^') {
            sc.bump();
            let p_pos = sc.pos;
            let p = sc.uint("exponent")?;
            if p == 0 {
                return Err(Error::Parse { position: p_pos, message: "exponent must be positive".into() });
            }
            power = u32::try_from(p)
                .map_err(|_| Error::Parse { position: p_pos, message: "exponent too large".into() })?;
        }
        let star = if sc.peek() == Some('*') {
            sc.bump();
            true
        } else {
            false
        };
        match sc.peek() {
            None => {}
            Some(c) if c.is_whitespace() => {}
            Some(c) => return Err(sc.error(format!("unexpected character {c:?} after term"))),
        }
        let mut tokens = match base {
            None => vec![GeneratorToken::new(Generator::S, power)],
            Some((a, idx_pos)) => {
                let at = |message: String| Error::Parse { position: idx_pos, message };
                if a == 0 {
                    return Err(at("v0 is not a generator".into()));
                }
                if is_prime(a) {
                    vec![GeneratorToken::new(Generator::V(a), power)]
                } else if options.expand_composite {
                    let f = factorize(a)?;
                    f.iter()
                        .map(|(p, e)| {
                            e.checked_mul(power)
                                .map(|k| GeneratorToken::new(Generator::V(p), k))
                                .ok_or_else(|| at("exponent too large".into()))
                        })
                        .collect::<Result<Vec<_>>>()?
                } else {
                    return Err(at(format!("v{a}: {a} is not prime (composite generators need expand_composite)")));
                }
            }
        };
        if star {
            tokens.reverse();
            for t in &mut tokens {
                t.kind = t.kind.star();
            }
        }
        out.extend(tokens);
        sc.skip_ws();
    }
    Ok(out)
}

/// Folds [`monomial_mul`] over the tokens, left to right.
pub fn reduce_word(tokens: &[GeneratorToken]) -> Result<Monomial> {
    tokens.iter().try_fold(Monomial::ONE, |acc, t| Ok(monomial_mul(&acc, &t.monomial()?)))
}

/// Parses and reduces a word in one step.
///
/// ```
/// use affine_toeplitz::algebra::{reduce, Monomial, ParseOptions};
/// let opts = ParseOptions::default();
/// assert_eq!(reduce("v2 s", opts).unwrap(), Monomial::new(2, 2, 1, 0));
/// assert_eq!(reduce("v2* s v2", opts).unwrap(), Monomial::Zero);
/// ```
pub fn reduce(text: &str, options: ParseOptions) -> Result<Monomial> {
    reduce_word(&parse_word(text, options)?)
}

// ---------------------------------------------------------------------------
// Linear combinations

/// A finite linear combination of nonzero spanning monomials with complex
/// coefficients over `T` (exact rationals or floats).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T: Clone + Num + Neg<Output = T>> {
    terms: BTreeMap<Monomial, Complex<T>>,
}

/// Elements with exact complex-rational coefficients.
pub type ExactElement = AlgebraElement<BigRational>;
/// Elements with floating-point coefficients.
pub type FloatElement = AlgebraElement<f64>;

impl<T: Clone + Num + Neg<Output = T>> Default for AlgebraElement<T> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<T: Clone + Num + Neg<Output = T>> AlgebraElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    /// The monomial with coefficient 1 (the zero element for `Monomial::Zero`).
    pub fn monomial(x: Monomial) -> Self {
        Self::term(x, Complex::one())
    }

    pub fn term(x: Monomial, c: Complex<T>) -> Self {
        let mut out = Self::zero();
        out.add_term(x, c);
        out
    }

    /// Adds `c·x` in place, dropping zero coefficients.
    pub fn add_term(&mut self, x: Monomial, c: Complex<T>) {
        if x.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x).or_insert_with(Complex::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &Monomial) -> Complex<T> {
        self.terms.get(x).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Complex<T>) -> Self {
        let mut out = Self::zero();
        for (x, d) in &self.terms {
            out.add_term(*x, d.clone() * c.clone());
        }
        out
    }

    pub fn element_add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(*x, c.clone());
        }
        out
    }

    pub fn element_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                out.add_term(monomial_mul(x, y), c.clone() * d.clone());
            }
        }
        out
    }

    /// Conjugate-linear star operation.
    pub fn element_adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_term(x.adjoint(), c.conj());
        }
        out
    }

    fn filter(&self, keep: impl Fn(u64, u64, u64, u64) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(x, _)| {
                    let (m, a, b, n) = x.parts().expect("zero is never stored");
                    keep(m, a, b, n)
                })
                .map(|(x, c)| (*x, c.clone()))
                .collect(),
        }
    }

    /// Expectation onto the fixed-point algebra of the coaction of ℚ⋊ℚ*₊:
    /// keeps the monomials with `a = b` and `m = n`.
    pub fn expectation_coaction(&self) -> Self {
        self.filter(|m, a, b, n| a == b && m == n)
    }

    /// Expectation onto the fixed points of the dual action: keeps the
    /// monomials with `a = b`.
    pub fn expectation_dual_action(&self) -> Self {
        self.filter(|_, a, b, _| a == b)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Add for AlgebraElement<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.element_add(&rhs)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mul for AlgebraElement<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.element_mul(&rhs)
    }
}

impl<T: Clone + Num + Neg<Output = T>> From<Monomial> for AlgebraElement<T> {
    fn from(x: Monomial) -> Self {
        Self::monomial(x)
    }
}

pub fn expectation_coaction<T: Clone + Num + Neg<Output = T>>(x: &AlgebraElement<T>) -> AlgebraElement<T> {
    x.expectation_coaction()
}

pub fn expectation_dual_action<T: Clone + Num + Neg<Output = T>>(x: &AlgebraElement<T>) -> AlgebraElement<T> {
    x.expectation_dual_action()
}

#[cfg(test)]
mod tests {
    use super::*;

    const OPTS: ParseOptions = ParseOptions { expand_composite: false };

    #[test]
    fn covariance_examples() {
        assert_eq!(covariance_reduce(2, 0, 1, 2), Monomial::Zero);
        assert_eq!(covariance_reduce(2, 0, 0, 3), Monomial::new(0, 3, 2, 0));
        assert_eq!(covariance_reduce(2, 1, 2, 3), Monomial::new(2, 3, 2, 1));
    }

    #[test]
    fn product_examples() {
        assert_eq!(Monomial::v(2) * Monomial::S, Monomial::new(2, 2, 1, 0));
        assert_eq!(Monomial::S_STAR * Monomial::v(2), Monomial::new(1, 2, 1, 1));
        assert_eq!(Monomial::v_star(2) * Monomial::new(1, 3, 1, 0), Monomial::new(2, 3, 2, 1));
        assert_eq!(Monomial::Zero * Monomial::S, Monomial::Zero);
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(Monomial::new(2, 2, 1, 0).adjoint(), Monomial::new(0, 1, 2, 2));
        assert_eq!(Monomial::Zero.adjoint(), Monomial::Zero);
        let s = FloatElement::monomial(Monomial::S);
        let s_star = FloatElement::monomial(Monomial::S_STAR);
        assert_eq!(s * s_star, FloatElement::monomial(Monomial::new(1, 1, 1, 1)));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(reduce("v2 s", OPTS).unwrap(), Monomial::new(2, 2, 1, 0));
        assert_eq!(reduce("v2* s v2", OPTS).unwrap(), Monomial::Zero);
        assert_eq!(reduce("s^2 v3 v2* s*", OPTS).unwrap(), Monomial::new(2, 3, 2, 1));
        assert_eq!(reduce("s^3*", OPTS).unwrap(), Monomial::new(0, 1, 1, 3));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_word("s v6", OPTS) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("s x", OPTS) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_word("", OPTS).is_err());
        assert!(parse_word("s^0", OPTS).is_err());
        assert!(parse_word("ss", OPTS).is_err());
    }

    #[test]
    fn composite_expansion() {
        let opts = ParseOptions { expand_composite: true };
        assert_eq!(reduce("v6", opts).unwrap(), Monomial::v(6));
        assert_eq!(reduce("v12^2*", opts).unwrap(), Monomial::v_star(144));
        assert_eq!(reduce("v1 s", opts).unwrap(), Monomial::S);
        assert_eq!(Monomial::new(2, 3, 2, 1).to_string(), "s^2 v3 v2* s*");
        let shown = Monomial::new(0, 6, 4, 3).to_string();
        assert_eq!(reduce(&shown, opts).unwrap(), Monomial::new(0, 6, 4, 3));
    }

    #[test]
    fn sigma_examples() {
        let z = Monomial::v(2).sigma_phase(0.7).unwrap();
        let expected = Complex64::new(0.0, 0.7 * 2f64.ln()).exp();
        assert!((z - expected).norm() < 1e-15);
        assert_eq!(Monomial::new(3, 1, 1, 2).sigma_phase(1.3).unwrap(), Complex64::new(1.0, 0.0));
        let f = Monomial::new(0, 2, 3, 0).sigma_analytic_factor(2.0).unwrap();
        assert!((f - 9.0 / 4.0).abs() < 1e-14);
        assert!(Monomial::Zero.sigma_phase(1.0).is_err());
    }

    #[test]
    fn expectations() {
        let mut x = FloatElement::zero();
        x.add_term(Monomial::new(1, 2, 2, 1), Complex::new(1.0, 0.0));
        x.add_term(Monomial::S, Complex::new(2.0, 0.0));
        x.add_term(Monomial::new(2, 2, 2, 1), Complex::new(3.0, 0.0));
        let ec = x.expectation_coaction();
        assert_eq!(ec, FloatElement::monomial(Monomial::new(1, 2, 2, 1)));
        let ed = x.expectation_dual_action();
        assert_eq!(ed.len(), 3);
        assert_eq!(ed.coefficient(&Monomial::new(2, 2, 2, 1)), Complex::new(3.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let x = Monomial::new(2, 3, 2, 1);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"kind":"mono","m":2,"a":3,"b":2,"n":1}"#);
        assert_eq!(serde_json::from_str::<Monomial>(&text).unwrap(), x);
        assert_eq!(serde_json::to_string(&Monomial::Zero).unwrap(), r#"{"kind":"zero"}"#);
        assert!(serde_json::from_str::<Monomial>(r#"{"kind":"mono","m":0,"a":0,"b":1,"n":0}"#).is_err());
    }
}
