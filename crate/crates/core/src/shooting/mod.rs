//! Numeric integration from the singular point, asymptotic fits and envelope checks.

pub mod dopri;
pub mod estimate;
pub mod fit;
pub mod trajectory;

pub use dopri::StepStats;
pub use estimate::{
    builtin_bounds, envelope_check, estimate_b, estimate_from, implied_bound, sum_report, tail_c23,
    BBound, BEstimate, EnvelopeReport, Side, SumReport, DEFAULT_S_MAX, DEFAULT_TOL, DEFAULT_WINDOW,
};
pub use fit::{
    b_from_c23, c23_from_b, fit_asymptotics, k13, k23, predicted_c13, AsymFit, C13_TOLERANCE,
};
pub use trajectory::{
    davini_cross_check, integrate, integrate_davini, integrate_with_stops, series_start, Trajectory,
};
