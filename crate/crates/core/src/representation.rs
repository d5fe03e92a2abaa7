//! Exact basis-level actions of three concrete representations:
//!
//! - the Toeplitz representation on ℓ²(ℕ⋊ℕ×), `T_y e_x = e_{yx}`;
//! - the model on ℓ²(X), `X = {(r, x) : x ∈ ℕ×, r ∈ ℤ/x}`, where `s` cycles
//!   each fiber and picks up the circle parameter `z` on wrapping;
//! - the model on ℓ²(ℤ), `s e_n = e_{n+1}`, `v_p e_n = e_{pn}`.
//!
//! Every generator maps a basis vector to a scalar multiple of a basis vector
//! or to zero, so operators are handled as partial maps on indices. On
//! ℓ²(X) the scalar is always a power `z^w`; we record the integer `w`
//! ("winding") rather than a number, which makes every identity exact for
//! all `z` at once.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Generator, Monomial};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, zeta, Angle, PrimeWindow, Precision};
use crate::semigroup::SemigroupElement;

fn prime_factors_with_multiplicity(a: u64) -> Vec<u64> {
    let f = factorize(a).expect("positive");
    f.iter().flat_map(|(p, e)| std::iter::repeat(p).take(e as usize)).collect()
}

/// Applies a nonzero monomial generator by generator: `s*^n`, then the
/// prime factors of `v_b*`, then those of `v_a`, then `s^m`.
fn stepwise<V>(x: &Monomial, v: V, apply: impl Fn(Generator, V) -> Option<V>) -> Option<V> {
    let (m, a, b, n) = x.parts()?;
    let mut v = v;
    for _ in 0..n {
        v = apply(Generator::SStar, v)?;
    }
    for p in prime_factors_with_multiplicity(b) {
        v = apply(Generator::VStar(p), v)?;
    }
    for p in prime_factors_with_multiplicity(a) {
        v = apply(Generator::V(p), v)?;
    }
    for _ in 0..m {
        v = apply(Generator::S, v)?;
    }
    Some(v)
}

// ---------------------------------------------------------------------------
// ℓ²(ℕ⋊ℕ×)

/// Basis vector `e_x` of ℓ²(ℕ⋊ℕ×).
pub type ToeplitzBasis = SemigroupElement;

/// An isometry `T_y` or its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToeplitzOp {
    Iso(SemigroupElement),
    Adj(SemigroupElement),
}

/// `T_y e_x = e_{yx}`; `T_y* e_x = e_{y⁻¹x}` if `y ≤ x`, else zero (`None`).
pub fn toeplitz_apply(op: ToeplitzOp, e: ToeplitzBasis) -> Option<ToeplitzBasis> {
    match op {
        ToeplitzOp::Iso(y) => Some(y.mul(e)),
        ToeplitzOp::Adj(y) => y.left_quotient(e),
    }
}

/// A generator on ℓ²(ℕ⋊ℕ×): `s = T_{(1,1)}`, `v_p = T_{(0,p)}`.
pub fn toeplitz_generator(g: Generator, e: ToeplitzBasis) -> Option<ToeplitzBasis> {
    let op = match g {
        Generator::S => ToeplitzOp::Iso(SemigroupElement { m: 1, a: 1 }),
        Generator::SStar => ToeplitzOp::Adj(SemigroupElement { m: 1, a: 1 }),
        Generator::V(p) => ToeplitzOp::Iso(SemigroupElement { m: 0, a: p }),
        Generator::VStar(p) => ToeplitzOp::Adj(SemigroupElement { m: 0, a: p }),
    };
    toeplitz_apply(op, e)
}

/// A monomial on ℓ²(ℕ⋊ℕ×), generator by generator.
pub fn toeplitz_monomial_apply(x: &Monomial, e: ToeplitzBasis) -> Option<ToeplitzBasis> {
    stepwise(x, e, toeplitz_generator)
}

/// A monomial on ℓ²(ℕ⋊ℕ×) in one step: `s^m v_a v_b* s*^n = T_{(m,a)} T_{(n,b)}*`.
pub fn toeplitz_monomial_apply_direct(x: &Monomial, e: ToeplitzBasis) -> Option<ToeplitzBasis> {
    let (m, a, b, n) = x.parts()?;
    let inner = SemigroupElement { m: n, a: b }.left_quotient(e)?;
    Some(SemigroupElement { m, a }.mul(inner))
}

// ---------------------------------------------------------------------------
// ℓ²(X)

/// Basis vector `e_{r,x}` of ℓ²(X), `0 <= r < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XBasis {
    pub r: u64,
    pub x: u64,
}

impl XBasis {
    pub fn new(r: i128, x: u64) -> Result<Self> {
        if x == 0 {
            return Err(Error::NotPositive { what: "fiber index x" });
        }
        Ok(Self { r: r.rem_euclid(x as i128) as u64, x })
    }
}

impl fmt::Display for XBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({} mod {})", self.r, self.x)
    }
}

/// The vector `z^winding · e_{r,x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XTerm {
    pub winding: i64,
    pub basis: XBasis,
}

impl XTerm {
    pub fn basis(basis: XBasis) -> Self {
        Self { winding: 0, basis }
    }

    /// The scalar `z^winding` for `z = e^{2πiθ}`, as an exact angle.
    pub fn phase(&self, z: Angle) -> Angle {
        z.times(self.winding)
    }
}

impl fmt::Display for XTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.winding {
            0 => write!(f, "{}", self.basis),
            w => write!(f, "z^{w}·{}", self.basis),
        }
    }
}

/// One generator on ℓ²(X):
/// `s e_{r,x} = e_{r+1,x}` unless `r + 1 ≡ 0`, when it is `z e_{0,x}`;
/// `s* e_{r,x} = e_{r−1,x}` unless `r = 0`, when it is `z̄ e_{x−1,x}`;
/// `v_p e_{r,x} = e_{pr,px}`; `v_p* e_{r,x} = e_{r/p,x/p}` if `p | x` and
/// `p | r`, else zero.
pub fn x_apply(g: Generator, t: XTerm) -> Option<XTerm> {
    let XTerm { winding, basis: XBasis { r, x } } = t;
    Some(match g {
        Generator::S if r + 1 == x => XTerm { winding: winding + 1, basis: XBasis { r: 0, x } },
        Generator::S => XTerm { winding, basis: XBasis { r: r + 1, x } },
        Generator::SStar if r == 0 => XTerm { winding: winding - 1, basis: XBasis { r: x - 1, x } },
        Generator::SStar => XTerm { winding, basis: XBasis { r: r - 1, x } },
        Generator::V(p) => XTerm {
            winding,
            basis: XBasis { r: r.checked_mul(p)?, x: x.checked_mul(p)? },
        },
        Generator::VStar(p) => {
            if x % p != 0 || r % p != 0 {
                return None;
            }
            XTerm { winding, basis: XBasis { r: r / p, x: x / p } }
        }
    })
}

/// A monomial on ℓ²(X), generator by generator.
pub fn x_monomial_apply(x: &Monomial, t: XTerm) -> Option<XTerm> {
    stepwise(x, t, x_apply)
}

fn x_shift(t: XTerm, k: i128) -> XTerm {
    let x = t.basis.x as i128;
    let s = t.basis.r as i128 + k;
    XTerm {
        winding: t.winding + s.div_euclid(x) as i64,
        basis: XBasis { r: s.rem_euclid(x) as u64, x: t.basis.x },
    }
}

/// A monomial on ℓ²(X) in closed form: shifts by `−n` and `m` wrap
/// `⌊(r ± k)/x⌋` times, and `v_b*` needs `b | x` and `b | r`.
pub fn x_monomial_apply_direct(x: &Monomial, t: XTerm) -> Option<XTerm> {
    let (m, a, b, n) = x.parts()?;
    let t = x_shift(t, -(n as i128));
    let XBasis { r, x } = t.basis;
    if x % b != 0 || r % b != 0 {
        return None;
    }
    let t = XTerm {
        winding: t.winding,
        basis: XBasis { r: (r / b).checked_mul(a)?, x: (x / b).checked_mul(a)? },
    };
    Some(x_shift(t, m as i128))
}

/// `∏_{p∈E} ∏_{j<p} (1 − s^j v_p v_p* s*^j)` on a basis vector. Each factor
/// is a diagonal projection, so the result is the vector or zero.
pub fn q_projector_apply(e: &PrimeWindow, t: XTerm) -> Result<Option<XTerm>> {
    for &p in e.primes() {
        for j in 0..p {
            let range = Monomial::new(j, p, p, j);
            match x_monomial_apply(&range, t) {
                None => {}
                Some(u) if u == t => return Ok(None),
                Some(u) => {
                    return Err(Error::Unsupported(format!(
                        "range projection moved {t} to {u}; not diagonal"
                    )))
                }
            }
        }
    }
    Ok(Some(t))
}

/// Checks the finite product over `E` on all `e_{r,x}` with `x <= max_x`:
/// `e_{0,1}` is fixed and every `e_{r,x}` with `x ≠ 1` in ℕ×_E is killed.
pub fn q_projector_check(e: &PrimeWindow, max_x: u64) -> Result<bool> {
    for x in 1..=max_x {
        for r in 0..x {
            let t = XTerm::basis(XBasis { r, x });
            let out = q_projector_apply(e, t)?;
            if x == 1 && out != Some(t) {
                return Ok(false);
            }
            if x != 1 && e.is_smooth(x) && out.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// ℓ²(ℤ)

/// Basis vector `e_n` of ℓ²(ℤ).
pub type ZBasis = i64;

/// One generator on ℓ²(ℤ): `s e_n = e_{n+1}`, `v_p e_n = e_{pn}`,
/// `v_p* e_n = e_{n/p}` if `p | n`, else zero.
pub fn z_apply(g: Generator, n: ZBasis) -> Option<ZBasis> {
    match g {
        Generator::S => n.checked_add(1),
        Generator::SStar => n.checked_sub(1),
        Generator::V(p) => n.checked_mul(i64::try_from(p).ok()?),
        Generator::VStar(p) => {
            let p = i64::try_from(p).ok()?;
            (n % p == 0).then(|| n / p)
        }
    }
}

/// A monomial on ℓ²(ℤ), generator by generator.
pub fn z_monomial_apply(x: &Monomial, n: ZBasis) -> Option<ZBasis> {
    stepwise(x, n, z_apply)
}

// ---------------------------------------------------------------------------
// Relation suites

/// A representation together with a finite window of basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// ℓ²(ℕ⋊ℕ×) on `e_{(m,a)}` with `m <= max_m`, `a <= max_a`.
    Toeplitz { max_m: u64, max_a: u64 },
    /// ℓ²(X) on `e_{r,x}` with `x <= max_x`.
    X { max_x: u64 },
    /// ℓ²(ℤ) on `e_n` with `|n| <= radius`.
    Z { radius: i64 },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Toeplitz { .. } => "toeplitz",
            Model::X { .. } => "x",
            Model::Z { .. } => "z",
        }
    }
}

/// Outcome of one family of relation instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResult {
    pub relation: String,
    pub instances: usize,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Outcome of a relation suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub model: String,
    pub primes: Vec<u64>,
    pub results: Vec<RelationResult>,
    pub passed: bool,
}

/// A word in the generators, written left to right as an operator product;
/// the rightmost generator acts first.
type Word = Vec<Generator>;

enum Rhs {
    Word(Word),
    Zero,
}

struct Instance {
    label: String,
    lhs: Word,
    rhs: Rhs,
}

fn apply_word<V: Copy>(word: &[Generator], v: V, apply: &impl Fn(Generator, V) -> Option<V>) -> Option<V> {
    word.iter().rev().try_fold(v, |v, &g| apply(g, v))
}

fn power(g: Generator, k: u64) -> Word {
    vec![g; k as usize]
}

fn concat(parts: &[Word]) -> Word {
    parts.concat()
}

fn toeplitz_relations(primes: &[u64]) -> Vec<(String, Vec<Instance>)> {
    use Generator::*;
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut t4 = Vec::new();
    let mut t5 = Vec::new();
    let mut iso = vec![Instance { label: "s* s".into(), lhs: vec![SStar, S], rhs: Rhs::Word(vec![]) }];
    for &p in primes {
        t1.push(Instance {
            label: format!("v{p} s = s^{p} v{p}"),
            lhs: vec![V(p), S],
            rhs: Rhs::Word(concat(&[power(S, p), vec![V(p)]])),
        });
        t4.push(Instance {
            label: format!("s* v{p} = s^{} v{p} s*", p - 1),
            lhs: vec![SStar, V(p)],
            rhs: Rhs::Word(concat(&[power(S, p - 1), vec![V(p), SStar]])),
        });
        for k in 1..p {
            t5.push(Instance {
                label: format!("v{p}* s^{k} v{p} = 0"),
                lhs: concat(&[vec![VStar(p)], power(S, k), vec![V(p)]]),
                rhs: Rhs::Zero,
            });
        }
        iso.push(Instance { label: format!("v{p}* v{p}"), lhs: vec![VStar(p), V(p)], rhs: Rhs::Word(vec![]) });
        for &q in primes {
            if p < q {
                t2.push(Instance {
                    label: format!("v{p} v{q} = v{q} v{p}"),
                    lhs: vec![V(p), V(q)],
                    rhs: Rhs::Word(vec![V(q), V(p)]),
                });
            }
            if p != q {
                t3.push(Instance {
                    label: format!("v{p}* v{q} = v{q} v{p}*"),
                    lhs: vec![VStar(p), V(q)],
                    rhs: Rhs::Word(vec![V(q), VStar(p)]),
                });
            }
        }
    }
    vec![
        ("T1".into(), t1),
        ("T2".into(), t2),
        ("T3".into(), t3),
        ("T4".into(), t4),
        ("T5".into(), t5),
        ("isometry".into(), iso),
    ]
}

fn boundary_relations(primes: &[u64]) -> Vec<(String, Vec<Instance>)> {
    use Generator::*;
    let mut q1 = Vec::new();
    let mut q2 = Vec::new();
    for &p in primes {
        q1.push(Instance {
            label: format!("v{p} s = s^{p} v{p}"),
            lhs: vec![V(p), S],
            rhs: Rhs::Word(concat(&[power(S, p), vec![V(p)]])),
        });
        for &q in primes {
            if p < q {
                q2.push(Instance {
                    label: format!("v{p} v{q} = v{q} v{p}"),
                    lhs: vec![V(p), V(q)],
                    rhs: Rhs::Word(vec![V(q), V(p)]),
                });
            }
        }
    }
    let q6 = vec![Instance { label: "s s* = 1".into(), lhs: vec![S, SStar], rhs: Rhs::Word(vec![]) }];
    vec![("Q1".into(), q1), ("Q2".into(), q2), ("Q6".into(), q6)]
}

fn run_family<V: Copy + PartialEq + fmt::Display>(
    name: &str,
    instances: &[Instance],
    window: &[V],
    apply: &impl Fn(Generator, V) -> Option<V>,
) -> RelationResult {
    let mut checks = 0;
    for inst in instances {
        for &v in window {
            checks += 1;
            let left = apply_word(&inst.lhs, v, apply);
            let right = match &inst.rhs {
                Rhs::Word(w) => apply_word(w, v, apply),
                Rhs::Zero => None,
            };
            if left != right {
                let show = |o: Option<V>| o.map_or("0".to_string(), |u| u.to_string());
                return RelationResult {
                    relation: name.to_string(),
                    instances: instances.len(),
                    checks,
                    passed: false,
                    counterexample: Some(format!(
                        "{} on {v}: left {} vs right {}",
                        inst.label,
                        show(left),
                        show(right)
                    )),
                };
            }
        }
    }
    RelationResult { relation: name.to_string(), instances: instances.len(), checks, passed: true, counterexample: None }
}

/// The range projections `s^k v_p v_p* s*^k`, `0 <= k < p`, partition ℓ²(ℤ):
/// each `e_n` is fixed by exactly one of them and killed by the others.
fn partition_family(primes: &[u64], radius: i64) -> RelationResult {
    let mut checks = 0;
    for &p in primes {
        for n in -radius..=radius {
            checks += 1;
            let mut fixed = Vec::new();
            for k in 0..p {
                match z_monomial_apply(&Monomial::new(k, p, p, k), n) {
                    None => {}
                    Some(m) if m == n => fixed.push(k),
                    Some(m) => {
                        return RelationResult {
                            relation: "Q5".into(),
                            instances: primes.len(),
                            checks,
                            passed: false,
                            counterexample: Some(format!("s^{k} v{p} v{p}* s*^{k} moves e_{n} to e_{m}")),
                        }
                    }
                }
            }
            if fixed.len() != 1 {
                return RelationResult {
                    relation: "Q5".into(),
                    instances: primes.len(),
                    checks,
                    passed: false,
                    counterexample: Some(format!("e_{n} fixed by k in {fixed:?} for p = {p}")),
                };
            }
        }
    }
    RelationResult { relation: "Q5".into(), instances: primes.len(), checks, passed: true, counterexample: None }
}

#[derive(Clone, Copy, PartialEq)]
struct ShowZ(i64);

impl fmt::Display for ShowZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{}", self.0)
    }
}

/// Checks the defining relations on every window vector, exactly.
///
/// All three models satisfy (T1)-(T5) and the isometry relations; the
/// ℓ²(ℤ) model additionally satisfies (Q1), (Q2), (Q5) and (Q6).
pub fn relation_suite(model: &Model, primes: &[u64]) -> Result<RelationReport> {
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let mut results = Vec::new();
    match *model {
        Model::Toeplitz { max_m, max_a } => {
            let window: Vec<SemigroupElement> = (1..=max_a)
                .flat_map(|a| (0..=max_m).map(move |m| SemigroupElement { m, a }))
                .collect();
            for (name, family) in toeplitz_relations(primes) {
                results.push(run_family(&name, &family, &window, &toeplitz_generator));
            }
        }
        Model::X { max_x } => {
            let window: Vec<XTerm> =
                (1..=max_x).flat_map(|x| (0..x).map(move |r| XTerm::basis(XBasis { r, x }))).collect();
            for (name, family) in toeplitz_relations(primes) {
                results.push(run_family(&name, &family, &window, &x_apply));
            }
        }
        Model::Z { radius } => {
            let window: Vec<ShowZ> = (-radius..=radius).map(ShowZ).collect();
            let apply = |g: Generator, v: ShowZ| z_apply(g, v.0).map(ShowZ);
            for (name, family) in toeplitz_relations(primes).into_iter().chain(boundary_relations(primes)) {
                results.push(run_family(&name, &family, &window, &apply));
            }
            results.push(partition_family(primes, radius));
        }
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(RelationReport { model: model.name().into(), primes: primes.to_vec(), results, passed })
}

// ---------------------------------------------------------------------------
// Truncated trace

/// The diagonal of a monomial on ℓ²(X) over the fibers `x' <= N`, grouped by
/// fiber and winding. It does not depend on β or z, so one profile serves
/// every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceProfile {
    truncation: u64,
    /// `(x', winding, number of r with ⟨x e_{r,x'}, e_{r,x'}⟩ = z^winding)`
    diagonal: Vec<(u64, i64, u64)>,
}

/// A truncated trace value and a bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

impl TraceProfile {
    pub fn new(x: &Monomial, truncation: u64) -> Self {
        let mut diagonal = Vec::new();
        for xp in 1..=truncation {
            let mut counts: Vec<(i64, u64)> = Vec::new();
            for r in 0..xp {
                let t = XTerm::basis(XBasis { r, x: xp });
                if let Some(u) = x_monomial_apply_direct(x, t) {
                    if u.basis == t.basis {
                        match counts.iter_mut().find(|(w, _)| *w == u.winding) {
                            Some(entry) => entry.1 += 1,
                            None => counts.push((u.winding, 1)),
                        }
                    }
                }
            }
            counts.sort_unstable();
            diagonal.extend(counts.into_iter().map(|(w, c)| (xp, w, c)));
        }
        Self { truncation, diagonal }
    }

    /// `(1/ζ(β−1)) Σ_{x' ≤ N} x'^{−β} Σ_r ⟨x e_{r,x'}, e_{r,x'}⟩` at `z`, with
    /// tail bound `N^{2−β} / ((β−2) ζ(β−1))` plus the error of ζ.
    pub fn evaluate(&self, beta: f64, z: Angle, precision: Precision) -> Result<TraceValue> {
        if !(beta > 2.0) || !beta.is_finite() {
            return Err(Error::OutOfRange(format!("trace formula needs finite beta > 2, got {beta}")));
        }
        let zeta_value = zeta(beta - 1.0, precision)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for &(xp, w, c) in &self.diagonal {
            sum += z.times(w).to_complex() * (c as f64 * (xp as f64).powf(-beta));
        }
        let n = self.truncation as f64;
        let tail = n.powf(2.0 - beta) / ((beta - 2.0) * zeta_value.value);
        let zeta_err = sum.norm() * zeta_value.error_bound / (zeta_value.value * (zeta_value.value - zeta_value.error_bound));
        Ok(TraceValue { value: sum / zeta_value.value, tail_bound: tail + zeta_err + 1e-14 })
    }
}

/// The Gibbs trace of `x` in the ℓ²(X) model at fiber value `z`, truncated
/// at `x' <= N`.
pub fn trace_state(x: &Monomial, beta: f64, z: Angle, truncation: u64, precision: Precision) -> Result<TraceValue> {
    TraceProfile::new(x, truncation).evaluate(beta, z, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn se(m: u64, a: u64) -> SemigroupElement {
        SemigroupElement { m, a }
    }

    #[test]
    fn toeplitz_examples() {
        assert_eq!(toeplitz_apply(ToeplitzOp::Iso(se(1, 2)), se(0, 3)), Some(se(1, 6)));
        assert_eq!(toeplitz_apply(ToeplitzOp::Iso(se(0, 1)), se(4, 5)), Some(se(4, 5)));
        assert_eq!(toeplitz_apply(ToeplitzOp::Adj(se(0, 2)), se(1, 2)), None);
    }

    #[test]
    fn x_examples() {
        let e = |r, x| XTerm::basis(XBasis { r, x });
        assert_eq!(x_apply(Generator::S, e(1, 3)), Some(e(2, 3)));
        assert_eq!(x_apply(Generator::S, e(2, 3)), Some(XTerm { winding: 1, basis: XBasis { r: 0, x: 3 } }));
        assert_eq!(x_apply(Generator::V(2), e(1, 3)), Some(e(2, 6)));
        assert_eq!(x_monomial_apply(&Monomial::new(0, 2, 2, 0), e(1, 2)), None);
        assert_eq!(x_monomial_apply(&Monomial::Zero, e(0, 1)), None);
    }

    #[test]
    fn z_partition_example() {
        assert_eq!(z_monomial_apply(&Monomial::new(0, 2, 2, 0), 4), Some(4));
        assert_eq!(z_monomial_apply(&Monomial::new(1, 2, 2, 1), 5), Some(5));
        assert_eq!(z_monomial_apply(&Monomial::new(0, 2, 2, 0), 5), None);
    }

    #[test]
    fn q_projector_examples() {
        let two = PrimeWindow::new([2]).unwrap();
        let e = |r, x| XTerm::basis(XBasis { r, x });
        assert_eq!(q_projector_apply(&two, e(0, 1)).unwrap(), Some(e(0, 1)));
        assert_eq!(q_projector_apply(&two, e(1, 2)).unwrap(), None);
        assert_eq!(q_projector_apply(&two, e(0, 3)).unwrap(), Some(e(0, 3)));
        assert!(q_projector_check(&PrimeWindow::new([2, 3, 5]).unwrap(), 40).unwrap());
    }

    #[test]
    fn small_suites_pass() {
        for model in [Model::Toeplitz { max_m: 8, max_a: 8 }, Model::X { max_x: 12 }, Model::Z { radius: 50 }] {
            let report = relation_suite(&model, &[2, 3, 5]).unwrap();
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn trace_of_identity_is_nearly_one() {
        let v = trace_state(&Monomial::ONE, 3.0, Angle::ZERO, 200, Precision::default()).unwrap();
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() <= v.tail_bound);
    }
}
