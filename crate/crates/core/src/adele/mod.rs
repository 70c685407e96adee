//! p-adic numbers with tracked precision, the adele class group 𝔸/ℚ, and
//! its distinguished character `e_ℚ`, all in exact arithmetic.

mod circle;
mod class;
mod padic;
mod source;

pub use circle::CircleValue;
pub use class::{e_q, AdeleClassElement, CharacterConvention};
pub use padic::{frac_p_rational, PAdicNumber};
pub use source::DigitSource;

/// `frac_p` of a p-adic number: see [`PAdicNumber::frac_p`].
pub fn frac_p(x: &PAdicNumber) -> crate::Result<crate::Rational> {
    x.frac_p()
}
