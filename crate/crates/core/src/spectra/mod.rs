//! Finite spaces, the R-spectrum of a distributive join-strong proximity
//! lattice, and the duality between the two.
//!
//! Every finite T0 space is sober and spectral, and all of its saturated
//! sets are compact. Statements that separate stably compact from spectral
//! spaces are therefore vacuous here; what remains testable is recorded on
//! the individual checks.

mod duality;
mod karoubi;
mod presentation;
mod space;
mod spectrum;

pub use duality::{canext_via_duality, spectral_case_check, DualExtension, SpectralCaseReport};
pub use karoubi::{karoubi_check, retract_image, SpectralProximitySpace};
pub use presentation::{
    compsat_basis_presentation, open_basis_presentation, pairs_presentation, presentation_round_trip,
};
pub use space::{all_t0_spaces, find_homeomorphism, FiniteSpace};
pub use spectrum::{
    dual_map, is_prime_round_filter, prime_filter_between, prime_round_filters, prime_round_filters_unchecked,
    primality_failure, spectrum, DualMap, PrimalityFailure, SpectrumResult,
};
