//! Special functions: complex `log Γ`, `K_ν` of complex order, Gauss `₂F₁`
//! in the Euler-integral region, and the Mellin transform of a pair of
//! `K`-Bessel functions.

mod bessel;
mod gamma;
mod hyper;
mod identities;
mod mellin;

pub use bessel::bessel_k;
pub use gamma::{gamma, log_gamma};
pub use hyper::{euler_integral, hyp2f1, hyp2f1_with};
pub use identities::{bessel_cosine_integral, bessel_power_integral, bessel_product_integral};
pub use mellin::{
    mellin_bessel_bound, mellin_bessel_closed_form, mellin_bessel_pair, mellin_bessel_quadrature, MellinBound,
    MellinPairReport,
};

pub use crate::quad::QuadratureConfig;
