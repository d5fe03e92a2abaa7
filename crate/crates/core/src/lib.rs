//! Normal forms, Nica spectrum, concrete representations and equilibrium
//! states for the Toeplitz algebra of the affine semigroup ℕ⋊ℕ×.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: primes, supernatural numbers, residues, CRT, zeta values.
//! - [`semigroup`]: ℕ⋊ℕ× inside ℚ⋊ℚ*₊, the order, euclid and joins.
//! - [`algebra`]: spanning monomials `s^m v_a v_b* s*^n` and their products.
//! - [`spectrum`]: the hereditary directed sets `A(k,N)` and `B(r,N)`.
//! - [`representation`]: exact basis actions on ℓ²(ℕ⋊ℕ×), ℓ²(X) and ℓ²(ℤ).
//! - [`states`]: KMS and ground states in closed form, with their checks.
//! - [`bostconnes`]: Dirichlet characters and the Euler-sum mechanism.
//!
//! ```
//! use affine_toeplitz::algebra::{reduce, Monomial, ParseOptions};
//!
//! let x = reduce("s* v2", ParseOptions::default()).unwrap();
//! assert_eq!(x, Monomial::new(1, 2, 1, 1));
//! ```

pub mod algebra;
pub mod bostconnes;
pub mod error;
pub mod numtheory;
pub mod representation;
pub mod semigroup;
pub mod spectrum;
pub mod states;

pub use error::{Error, Result};
