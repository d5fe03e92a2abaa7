//! The affine semigroup ℕ⋊ℕ× inside the group ℚ⋊ℚ*₊, its quasi-lattice
//! order, the euclidean algorithm that finds least solutions of
//! `k = αc − βd`, and joins.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::gcd;

/// An element `(m, a)` of ℕ⋊ℕ×, acting on ℕ by `n ↦ m + an`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupElement {
    pub m: u64,
    pub a: u64,
}

impl SemigroupElement {
    pub const IDENTITY: SemigroupElement = SemigroupElement { m: 0, a: 1 };

    pub fn new(m: u64, a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::NotPositive { what: "multiplicative part" });
        }
        Ok(Self { m, a })
    }

    /// `(m,a)(n,b) = (m + an, ab)`.
    ///
    /// # Panics
    /// Panics if a coordinate overflows `u64`.
    pub fn mul(self, other: Self) -> Self {
        let m = self
            .a
            .checked_mul(other.m)
            .and_then(|an| self.m.checked_add(an))
            .expect("semigroup product overflows u64");
        let a = self.a.checked_mul(other.a).expect("semigroup product overflows u64");
        Self { m, a }
    }

    /// `self ≤ other`, i.e. `other ∈ self·(ℕ⋊ℕ×)`.
    pub fn leq(self, other: Self) -> bool {
        other.m >= self.m && (other.m - self.m) % self.a == 0 && other.a % self.a == 0
    }

    /// `self⁻¹ other` when `self ≤ other`.
    pub fn left_quotient(self, other: Self) -> Option<Self> {
        self.leq(other).then(|| Self { m: (other.m - self.m) / self.a, a: other.a / self.a })
    }

    pub fn to_group(self) -> GroupElement {
        GroupElement::new(BigRational::from_integer(self.m.into()), BigRational::from_integer(self.a.into()))
            .expect("a >= 1")
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.a)
    }
}

/// An element `(r, x)` of ℚ⋊ℚ*₊ with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    r: BigRational,
    x: BigRational,
}

impl GroupElement {
    pub fn new(r: BigRational, x: BigRational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::NotPositive { what: "multiplicative part" });
        }
        Ok(Self { r, x })
    }

    pub fn from_ints(r: i64, x: u64) -> Result<Self> {
        Self::new(BigRational::from_integer(r.into()), BigRational::from_integer(x.into()))
    }

    pub fn identity() -> Self {
        Self { r: BigRational::zero(), x: BigRational::one() }
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    /// The element as a semigroup element, when it lies in ℕ⋊ℕ×.
    pub fn to_semigroup(&self) -> Option<SemigroupElement> {
        use num_traits::ToPrimitive;
        if !self.r.is_integer() || !self.x.is_integer() || self.r.is_negative() {
            return None;
        }
        Some(SemigroupElement { m: self.r.to_integer().to_u64()?, a: self.x.to_integer().to_u64()? })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.x)
    }
}

/// `(r,x)(s,y) = (r + xs, xy)`.
pub fn group_mul(g: &GroupElement, h: &GroupElement) -> GroupElement {
    GroupElement { r: &g.r + &g.x * &h.r, x: &g.x * &h.x }
}

/// `(r,x)⁻¹ = (−r/x, 1/x)`.
pub fn group_inv(g: &GroupElement) -> GroupElement {
    GroupElement { r: -&g.r / &g.x, x: g.x.recip() }
}

/// `g ≤ h` iff `g⁻¹h ∈ ℕ⋊ℕ×`, i.e. `(s−r)/x ∈ ℕ` and `y/x ∈ ℕ×`.
pub fn leq(g: &GroupElement, h: &GroupElement) -> bool {
    let t = (&h.r - &g.r) / &g.x;
    let q = &h.x / &g.x;
    t.is_integer() && !t.is_negative() && q.is_integer()
}

// ---------------------------------------------------------------------------
// The euclidean algorithm

fn check_coprime(c: u64, d: u64) -> Result<()> {
    if c == 0 || d == 0 {
        return Err(Error::NotPositive { what: "euclid argument" });
    }
    let g = gcd(c, d);
    if g != 1 {
        return Err(Error::NotCoprime { c, d, gcd: g });
    }
    Ok(())
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

fn to_u64(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow("euclid"))
}

/// The alternating sequences for `k >= 0`: α₀ brings the remainder into
/// `(−c, 0]`, each βₙ lifts it into `[0, d)`, each αₙ₊₁ pushes it back into
/// `(−c, 0]`, until both increments vanish.
fn euclid_sequences(c: i128, d: i128, k: i128) -> Result<(i128, i128)> {
    let mut alpha_sum = ceil_div(k, c);
    let mut beta_sum = 0i128;
    let mut rem = k - alpha_sum * c;
    // The remainders live in a window of size c + d, so the loop is short.
    for _ in 0..=(c + d + 2) {
        let beta = ceil_div(-rem, d);
        beta_sum += beta;
        rem += beta * d;
        let alpha = ceil_div(rem, c);
        alpha_sum += alpha;
        rem -= alpha * c;
        if alpha == 0 && beta == 0 {
            return Ok((alpha_sum, beta_sum));
        }
    }
    Err(Error::OutOfRange(format!("euclid sequences failed to stabilise for ({c}, {d}, {k})")))
}

/// The smallest non-negative solution of `k = αc − βd` for coprime `c, d`:
/// α is minimal when `k >= 0`, β is minimal when `k < 0` (in which case the
/// roles of `c` and `d` are swapped and `−k` is solved).
///
/// ```
/// use affine_toeplitz::semigroup::euclid_smallest;
/// assert_eq!(euclid_smallest(3, 5, 1).unwrap(), (2, 1));
/// assert_eq!(euclid_smallest(5, 3, -2).unwrap(), (2, 4));
/// ```
pub fn euclid_smallest(c: u64, d: u64, k: i128) -> Result<(u64, u64)> {
    check_coprime(c, d)?;
    let (c, d) = (c as i128, d as i128);
    let (alpha, beta) = if k >= 0 {
        euclid_sequences(c, d, k)?
    } else {
        let (beta, alpha) = euclid_sequences(d, c, -k)?;
        (alpha, beta)
    };
    Ok((to_u64(alpha)?, to_u64(beta)?))
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    use num_integer::Integer;
    if m == 1 {
        return 0;
    }
    a.extended_gcd(&m).x.rem_euclid(m)
}

/// Same result as [`euclid_smallest`], from the congruence `αc ≡ k (mod d)`
/// with `αc >= k` (or `βd ≡ −k (mod c)` with `βd >= −k` when `k < 0`).
pub fn euclid_direct(c: u64, d: u64, k: i128) -> Result<(u64, u64)> {
    check_coprime(c, d)?;
    fn least(c: i128, d: i128, k: i128) -> (i128, i128) {
        let base = (k.rem_euclid(d) * mod_inverse(c, d)).rem_euclid(d);
        let alpha = if base * c >= k { base } else { base + d * ceil_div(k - base * c, c * d) };
        (alpha, (alpha * c - k) / d)
    }
    let (c, d) = (c as i128, d as i128);
    let (alpha, beta) = if k >= 0 {
        least(c, d, k)
    } else {
        let (beta, alpha) = least(d, c, -k);
        (alpha, beta)
    };
    Ok((to_u64(alpha)?, to_u64(beta)?))
}

// ---------------------------------------------------------------------------
// Joins

/// A finite join `p ∨ q = (l, lcm(a,b))` together with the complements
/// `(α, b')` and `(β, a')` satisfying `p·(α,b') = q·(β,a') = p ∨ q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Join {
    pub l: u64,
    pub lcm: u64,
    pub alpha: u64,
    pub b_prime: u64,
    pub beta: u64,
    pub a_prime: u64,
}

impl Join {
    pub fn element(&self) -> SemigroupElement {
        SemigroupElement { m: self.l, a: self.lcm }
    }

    /// `(α, b')`, the complement on the left operand's side.
    pub fn left_complement(&self) -> SemigroupElement {
        SemigroupElement { m: self.alpha, a: self.b_prime }
    }

    /// `(β, a')`, the complement on the right operand's side.
    pub fn right_complement(&self) -> SemigroupElement {
        SemigroupElement { m: self.beta, a: self.a_prime }
    }
}

/// Result of a join: either no common upper bound exists, or the least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinResult {
    Infinite,
    Finite(Join),
}

impl JoinResult {
    pub fn finite(self) -> Option<Join> {
        match self {
            JoinResult::Finite(j) => Some(j),
            JoinResult::Infinite => None,
        }
    }
}

/// `(m,a) ∨ (n,b)`. Infinite exactly when `gcd(a,b) ∤ (m − n)`; otherwise
/// `l` is the least element of `(m + aℕ) ∩ (n + bℕ)`.
///
/// ```
/// use affine_toeplitz::semigroup::{join, SemigroupElement};
/// let j = join(SemigroupElement { m: 0, a: 2 }, SemigroupElement { m: 1, a: 3 }).finite().unwrap();
/// assert_eq!((j.l, j.lcm), (4, 6));
/// ```
pub fn join(p: SemigroupElement, q: SemigroupElement) -> JoinResult {
    let (m, a, n, b) = (p.m as i128, p.a, q.m as i128, q.a);
    let g = gcd(a, b);
    if (n - m).rem_euclid(g as i128) != 0 {
        return JoinResult::Infinite;
    }
    let (a_prime, b_prime) = (a / g, b / g);
    let (alpha, beta) =
        euclid_smallest(a_prime, b_prime, (n - m) / g as i128).expect("a/g and b/g are coprime");
    let l = a
        .checked_mul(alpha)
        .and_then(|x| p.m.checked_add(x))
        .expect("join overflows u64");
    debug_assert_eq!(Some(l), b.checked_mul(beta).and_then(|x| q.m.checked_add(x)));
    JoinResult::Finite(Join { l, lcm: a_prime * b, alpha, b_prime, beta, a_prime })
}

/// Exact rational from a signed integer, for tests and callers building group elements.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn se(m: u64, a: u64) -> SemigroupElement {
        SemigroupElement::new(m, a).unwrap()
    }

    #[test]
    fn group_examples() {
        let g = GroupElement::from_ints(1, 1).unwrap();
        let h = GroupElement::from_ints(0, 2).unwrap();
        assert_eq!(group_mul(&g, &h), GroupElement::from_ints(1, 2).unwrap());
        assert_eq!(group_mul(&h, &g), GroupElement::from_ints(2, 2).unwrap());
        let inv = group_inv(&GroupElement::from_ints(1, 2).unwrap());
        assert_eq!(inv, GroupElement::new(rational(-1, 2), rational(1, 2)).unwrap());
        assert_eq!(group_mul(&inv, &GroupElement::from_ints(1, 2).unwrap()), GroupElement::identity());
    }

    #[test]
    fn order_examples() {
        assert!(leq(&se(0, 2).to_group(), &se(4, 6).to_group()));
        assert!(!leq(&se(1, 1).to_group(), &se(0, 2).to_group()));
        assert!(se(0, 2).leq(se(4, 6)));
        assert!(!se(1, 1).leq(se(0, 2)));
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_smallest(3, 5, 1).unwrap(), (2, 1));
        assert_eq!(euclid_smallest(3, 5, 0).unwrap(), (0, 0));
        assert_eq!(euclid_smallest(5, 3, -2).unwrap(), (2, 4));
        assert!(matches!(euclid_smallest(4, 6, 1), Err(Error::NotCoprime { .. })));
        assert_eq!(euclid_direct(5, 3, -2).unwrap(), (2, 4));
    }

    #[test]
    fn join_examples() {
        let j = join(se(0, 2), se(1, 3)).finite().unwrap();
        assert_eq!((j.l, j.lcm), (4, 6));
        assert_eq!(se(0, 2).mul(j.left_complement()), j.element());
        assert_eq!(se(1, 3).mul(j.right_complement()), j.element());
        assert_eq!(join(se(0, 2), se(1, 2)), JoinResult::Infinite);
        let j = join(se(1, 1), se(0, 2)).finite().unwrap();
        assert_eq!((j.l, j.lcm), (2, 2));
    }
}
