//! The Nica spectrum: the hereditary directed sets `A(k, N)` and `B(r, N)`,
//! membership and inclusion, the boundary `Ẑ` with its affine action, and
//! the prime-by-prime decomposition of points of type B.
//!
//! A residue `r ∈ ℤ/N` for supernatural `N` is a coherent family of residues
//! `r(a) ∈ ℤ/a` for the finite divisors `a | N`. Families come either from
//! an integer (every level available) or from a table up to a declared
//! level; queries beyond the level fail with [`Error::LevelExceeded`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{crt_combine, crt_split, factorize, sn_divides, ResidueClass, SupernaturalNumber};
use crate::semigroup::{join, SemigroupElement};

/// A coherent family of residues `r(a) ∈ ℤ/a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueFamily {
    /// `r(a) = g mod a` at every level.
    Integer(i64),
    /// `values[a − 1] = r(a)` for `a <= values.len()`.
    Table(Vec<u64>),
}

impl ResidueFamily {
    /// Validates `r(a) < a` and `r(b) mod a = r(a)` for `a | b` within the table.
    pub fn table(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NotPositive { what: "residue table level" });
        }
        let level = values.len() as u64;
        for a in 1..=level {
            let ra = values[a as usize - 1];
            if ra >= a {
                return Err(Error::Incoherent(format!("r({a}) = {ra} is not reduced")));
            }
            for b in (2 * a..=level).step_by(a as usize) {
                let rb = values[b as usize - 1];
                if rb % a != ra {
                    return Err(Error::Incoherent(format!("r({b}) = {rb} but r({a}) = {ra}")));
                }
            }
        }
        Ok(ResidueFamily::Table(values))
    }

    /// The table of `g mod a` for `a <= level`.
    pub fn truncated(generator: i64, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::NotPositive { what: "residue table level" });
        }
        Ok(ResidueFamily::Table((1..=level).map(|a| generator.rem_euclid(a as i64) as u64).collect()))
    }

    /// The declared level, or `None` when every level is available.
    pub fn level(&self) -> Option<u64> {
        match self {
            ResidueFamily::Integer(_) => None,
            ResidueFamily::Table(v) => Some(v.len() as u64),
        }
    }

    /// `r(a)`.
    pub fn value(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::NotPositive { what: "residue level" });
        }
        match self {
            ResidueFamily::Integer(g) => Ok((*g as i128).rem_euclid(a as i128) as u64),
            ResidueFamily::Table(v) => v
                .get(a as usize - 1)
                .copied()
                .ok_or(Error::LevelExceeded { needed: a, available: v.len() as u64 }),
        }
    }
}

impl fmt::Display for ResidueFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueFamily::Integer(g) => write!(f, "{g}"),
            ResidueFamily::Table(v) => write!(f, "r(≤{})", v.len()),
        }
    }
}

/// A point of the Nica spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumPoint {
    /// `A(k, N) = {(m, a) : a | N, (k − m)/a ∈ ℕ}`.
    A { k: u64, n: SupernaturalNumber },
    /// `B(r, N) = {(m, a) : a | N, m ≡ r(a) mod a}`.
    B { r: ResidueFamily, n: SupernaturalNumber },
}

impl fmt::Display for SpectrumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumPoint::A { k, n } => write!(f, "A({k}, {n})"),
            SpectrumPoint::B { r, n } => write!(f, "B({r}, {n})"),
        }
    }
}

/// Membership of `(m, a)`.
pub fn contains(w: &SpectrumPoint, x: SemigroupElement) -> Result<bool> {
    let SemigroupElement { m, a } = x;
    Ok(match w {
        SpectrumPoint::A { k, n } => n.divisible_by(a) && *k >= m && (k - m) % a == 0,
        SpectrumPoint::B { r, n } => n.divisible_by(a) && m % a == r.value(a)?,
    })
}

/// The finite divisors of `n` at which residue conditions are checked: `n`
/// itself when finite (coherence gives the rest), otherwise every divisor up
/// to `level`.
fn check_levels(n: &SupernaturalNumber, level: u64) -> Vec<u64> {
    match n.to_integer() {
        Some(v) => vec![v],
        None => n.divisors_up_to(level),
    }
}

/// Whether `w1 ⊆ w2`.
///
/// - `A(k,N) ⊆ A(l,M)` iff `N | M`, `k <= l` and `a | l − k` for all `a | N`;
///   for infinite `N` this forces `k = l`.
/// - `A(k,N) ⊆ B(r,M)` iff `N | M` and `r(a) ≡ k` for all `a | N`.
/// - `B(r,N) ⊆ B(t,M)` iff `N | M` and `t(a) = r(a)` for all `a | N`.
/// - `B(r,N)` is never inside `A(k,M)`: it contains `(m, 1)` for every `m`.
///
/// Divisor quantifiers over infinite `N` are truncated at `level`.
pub fn includes(w1: &SpectrumPoint, w2: &SpectrumPoint, level: u64) -> Result<bool> {
    if level == 0 {
        return Err(Error::NotPositive { what: "inclusion level" });
    }
    Ok(match (w1, w2) {
        (SpectrumPoint::A { k, n }, SpectrumPoint::A { k: l, n: m }) => {
            sn_divides(n, m)
                && k <= l
                && match n.to_integer() {
                    Some(v) => (l - k) % v == 0,
                    None => k == l,
                }
        }
        (SpectrumPoint::A { k, n }, SpectrumPoint::B { r, n: m }) => {
            if !sn_divides(n, m) {
                return Ok(false);
            }
            for a in check_levels(n, level) {
                if r.value(a)? != k % a {
                    return Ok(false);
                }
            }
            true
        }
        (SpectrumPoint::B { r, n }, SpectrumPoint::B { r: t, n: m }) => {
            if !sn_divides(n, m) {
                return Ok(false);
            }
            for a in check_levels(n, level) {
                if r.value(a)? != t.value(a)? {
                    return Ok(false);
                }
            }
            true
        }
        (SpectrumPoint::B { .. }, SpectrumPoint::A { .. }) => false,
    })
}

/// The members `(m, a)` with `m, a <= bound`.
pub fn members(w: &SpectrumPoint, bound: u64) -> Result<Vec<SemigroupElement>> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for m in 0..=bound {
            let x = SemigroupElement { m, a };
            if contains(w, x)? {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Checks a finite set for being nonempty, hereditary and directed inside
/// the window `m, a <= bound`: everything below a member is a member, and
/// every pair of members has a finite join, which is a member whenever it
/// lies in the window.
pub fn verify_hereditary_directed_set(set: &[SemigroupElement], bound: u64) -> bool {
    if set.is_empty() {
        return false;
    }
    let lookup: HashSet<SemigroupElement> = set.iter().copied().collect();
    let inside = |x: SemigroupElement| lookup.contains(&x);
    for &y in set {
        for a in 1..=y.a {
            if y.a % a != 0 {
                continue;
            }
            for m in 0..=y.m {
                let x = SemigroupElement { m, a };
                if x.leq(y) && !inside(x) {
                    return false;
                }
            }
        }
    }
    for (i, &p) in set.iter().enumerate() {
        for &q in &set[i + 1..] {
            match join(p, q).finite() {
                None => return false,
                Some(j) => {
                    let l = j.element();
                    if l.m <= bound && l.a <= bound && !inside(l) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// [`verify_hereditary_directed_set`] on the members of `w` within the window.
pub fn verify_hereditary_directed(w: &SpectrumPoint, bound: u64) -> Result<bool> {
    Ok(verify_hereditary_directed_set(&members(w, bound)?, bound))
}

// ---------------------------------------------------------------------------
// The boundary

/// A point of the boundary `B(r, ∇) ≅ Ẑ`, given by its residue family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub r: ResidueFamily,
}

impl BoundaryPoint {
    pub fn integer(g: i64) -> Self {
        BoundaryPoint { r: ResidueFamily::Integer(g) }
    }

    pub fn to_spectrum_point(&self) -> SpectrumPoint {
        SpectrumPoint::B { r: self.r.clone(), n: SupernaturalNumber::nabla() }
    }
}

/// `(m, a)·r = m + ar`. An integer generator stays an integer; a table keeps
/// its level, since `(m + a r(ℓ)) mod ℓ` needs only `r(ℓ)`.
pub fn boundary_act(x: SemigroupElement, r: &BoundaryPoint) -> Result<BoundaryPoint> {
    let SemigroupElement { m, a } = x;
    Ok(BoundaryPoint {
        r: match &r.r {
            ResidueFamily::Integer(g) => {
                let v = (a as i128)
                    .checked_mul(*g as i128)
                    .and_then(|ag| ag.checked_add(m as i128))
                    .and_then(|v| i64::try_from(v).ok())
                    .ok_or(Error::Overflow("boundary_act"))?;
                ResidueFamily::Integer(v)
            }
            ResidueFamily::Table(values) => ResidueFamily::Table(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, &rl)| {
                        let l = i as u128 + 1;
                        ((m as u128 + a as u128 * rl as u128) % l) as u64
                    })
                    .collect(),
            ),
        },
    })
}

// ---------------------------------------------------------------------------
// Prime decomposition

/// Splits `B(r, N)` for finite `N` into its prime-power components
/// `p ↦ r mod p^{e_p(N)}`.
pub fn decompose(w: &SpectrumPoint) -> Result<BTreeMap<u64, ResidueClass>> {
    let SpectrumPoint::B { r, n } = w else {
        return Err(Error::Unsupported("only points of type B decompose".into()));
    };
    let modulus = n.to_integer().ok_or_else(|| Error::InfiniteSupernatural(n.to_string()))?;
    let whole = ResidueClass::new(r.value(modulus)? as i128, modulus)?;
    let primes = factorize(modulus)?.primes().collect::<Vec<_>>();
    Ok(primes.into_iter().zip(crt_split(&whole)?).collect())
}

/// Inverse of [`decompose`]: glues prime-power components into `B(r, N)`.
pub fn recompose(parts: &BTreeMap<u64, ResidueClass>) -> Result<SpectrumPoint> {
    let classes: Vec<ResidueClass> = parts.values().copied().collect();
    let whole = crt_combine(&classes)?;
    let n = SupernaturalNumber::from_integer(whole.modulus())?;
    Ok(SpectrumPoint::B { r: ResidueFamily::Integer(whole.value() as i64), n })
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum PointRepr {
    A {
        k: u64,
        #[serde(rename = "N")]
        n: SupernaturalNumber,
    },
    B {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        residues: Option<Vec<u64>>,
        #[serde(rename = "N")]
        n: SupernaturalNumber,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<u64>,
    },
}

impl Serialize for SpectrumPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpectrumPoint::A { k, n } => PointRepr::A { k: *k, n: n.clone() },
            SpectrumPoint::B { r: ResidueFamily::Integer(g), n } => {
                PointRepr::B { generator: Some(*g), residues: None, n: n.clone(), level: None }
            }
            SpectrumPoint::B { r: ResidueFamily::Table(v), n } => {
                PointRepr::B { generator: None, residues: Some(v.clone()), n: n.clone(), level: Some(v.len() as u64) }
            }
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectrumPoint {
    /// `generator` alone gives every level; `generator` with `level` gives
    /// the table truncated there; `residues` gives an explicit table.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match PointRepr::deserialize(d)? {
            PointRepr::A { k, n } => Ok(SpectrumPoint::A { k, n }),
            PointRepr::B { generator, residues, n, level } => {
                let r = match (generator, residues, level) {
                    (Some(g), None, None) => ResidueFamily::Integer(g),
                    (Some(g), None, Some(l)) => ResidueFamily::truncated(g, l).map_err(D::Error::custom)?,
                    (None, Some(v), l) => {
                        if l.is_some_and(|l| l != v.len() as u64) {
                            return Err(D::Error::custom("level differs from the number of residues"));
                        }
                        ResidueFamily::table(v).map_err(D::Error::custom)?
                    }
                    _ => return Err(D::Error::custom("type B point needs exactly one of generator or residues")),
                };
                Ok(SpectrumPoint::B { r, n })
            }
        }
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spectrum_point().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match SpectrumPoint::deserialize(d)? {
            SpectrumPoint::B { r, n } if n == SupernaturalNumber::nabla() => Ok(BoundaryPoint { r }),
            other => Err(D::Error::custom(format!("{other} is not a boundary point"))),
        }
    }
}
