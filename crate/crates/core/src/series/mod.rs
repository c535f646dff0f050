//! Truncated Puiseux series over Q(√2)[b] and the profile expansion chain.

pub mod param;
pub mod profile;
pub mod puiseux;

pub use param::ParamCoeff;
pub use profile::{
    check_s_of_r, expand_profile_chain, expand_profile_chain_with, float_w, series_cross_check,
    verify_asymptotic_claim, verify_asymptotic_claim_perturbed, AsymptoticVerdict, ProfileReport,
};
pub use puiseux::{
    series_compose, series_div, series_log1p, series_mul, series_nth_root, PuiseuxSeries, SeriesVar,
};
