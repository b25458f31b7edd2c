//! Exact arithmetic for the Riordan group, its Lie algebra, and the
//! exponential map between them.
//!
//! * [`fps`]: truncated formal power series over the rationals.
//! * [`riordan`]: Riordan matrices `T(f|g)`, their products, inverses, action
//!   on series, A-sequences, and the involutions `M` and `-M`.
//! * [`lie`]: Lie algebra elements `L(chi, alpha)`, brackets, conjugation, and
//!   the exponential in closed form and by finite projections.
//! * [`flows`]: the finite linear systems obtained by projecting a generator,
//!   with their symmetries and time-reversal symmetries.
//!
//! ```
//! use riordan::lie::{exp_monomial, MonomialGenerator};
//! use riordan::rational::int;
//! use riordan::riordan::RiordanMatrix;
//!
//! // The creation matrix exponentiates to Pascal's triangle.
//! let e = exp_monomial(&MonomialGenerator::creation(), &int(1), 8).unwrap();
//! assert_eq!(e, RiordanMatrix::pascal(8));
//! ```

pub mod error;
pub mod flows;
pub mod fps;
pub mod lie;
pub mod matrix;
pub mod rational;
pub mod riordan;
pub mod sample;

pub use error::{Error, Result};
pub use flows::{ApproachingProblem, StateVector};
pub use fps::{Fps, Order};
pub use lie::{LieElement, MonomialGenerator};
pub use matrix::{FMatrix, QMatrix, TriMatrix};
pub use rational::Rational;
pub use riordan::{Involution, RiordanMatrix};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/riordan-group.md")]
    mod riordan_group {}
    #[doc = include_str!("../../../book/src/lie-algebra.md")]
    mod lie_algebra {}
    #[doc = include_str!("../../../book/src/exponential.md")]
    mod exponential {}
    #[doc = include_str!("../../../book/src/characteristics.md")]
    mod characteristics {}
    #[doc = include_str!("../../../book/src/symmetries.md")]
    mod symmetries {}
    #[doc = include_str!("../../../book/src/flows.md")]
    mod flows {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
