//! Integral binary cubic forms and the Shintani zeta functions.
//!
//! The crate is organised around six areas:
//!
//! * [`forms`]: exact arithmetic on integral cubic forms, canonical class
//!   representatives and class enumeration by discriminant.
//! * [`coords`]: the homogeneous coordinates `(u, t, θ, λ)` of a real form,
//!   fundamental-domain reduction, Jacobians and log-discriminant derivatives.
//! * [`specfun`]: log-gamma, `K_ν` of complex order, `₂F₁` on its Euler
//!   integral region, and Mellin transforms of Bessel products.
//! * [`afe`]: the approximate functional equation on the critical line.
//! * [`expsum`]: van der Corput differencing and discriminant phase averages.
//! * [`maass`]: Maass cusp form data, evaluation and twisted Dirichlet sums.
//!
//! The guide in `book/` is compiled into this crate's doc-tests, so every
//! snippet in it is exercised by `cargo test`.

pub mod afe;
pub mod coords;
pub mod expsum;
pub mod forms;
pub mod maass;
pub mod quad;
pub mod specfun;

mod error;
pub use error::{Error, Result};

pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/coordinates.md")]
    mod coordinates {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/critical-line.md")]
    mod critical_line {}
    #[doc = include_str!("../../../book/src/exponential-sums.md")]
    mod exponential_sums {}
    #[doc = include_str!("../../../book/src/maass.md")]
    mod maass {}
}
