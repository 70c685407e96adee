//! Exact arithmetic toolkit for polynomial sumset experiments over ℚ and ℤ.
//!
//! The modules build on each other bottom-up:
//!
//! - [`exactq`]: rationals and binomial-basis polynomials.
//! - [`adele`]: p-adic digits with tracked precision, the adele class group
//!   𝔸/ℚ, and its distinguished character.
//! - [`phasepoly`]: polynomial phases ℚ → S¹ in tuple form.
//! - [`folner`]: Følner sets in ℚ, densities and return-time sets.
//! - [`dynsys`]: skew-product ℚ-systems, orbit averages and progression search.
//! - [`colorings`]: the explicit 5-coloring of ℕ and its checkers.
//! - [`ramseycomb`]: ordered Ramsey numbers, corner counts, greedy sumsets.

pub mod adele;
pub mod colorings;
pub mod dynsys;
pub mod error;
pub mod exactq;
pub mod folner;
pub mod phasepoly;
pub mod ramseycomb;

pub use error::{Error, Result};
pub use exactq::{BinomPoly, Rational};
