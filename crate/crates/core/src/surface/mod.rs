//! Words in free groups, Fourier coefficients against the surface relator, Witten zeta
//! partial sums, truncated Wilson-loop expectations and their majorants.

mod bounds;
mod expectation;
mod fourier;
mod word;
mod zeta;

pub use bounds::{
    glm_exponents, glm_lower_bound, single_lambda_majorant, tail_majorant, BoundReport, GlmExponents,
    OrbitTerm, TailMajorant,
};
pub use expectation::{expected_trace, omega_representatives, ExpectedTrace, OmegaRep};
pub use fourier::{
    character_route_coefficient, fourier_coefficient, fourier_coefficient_poly,
    fourier_coefficient_rational, FourierCoefficient, Rep, Route,
};
pub use word::{Letter, Word};
pub use zeta::{su_irreps_up_to_dim, witten_zeta_partial, Cutoff, ZetaPartial};
