//! ODE forms, coordinate identities and indicial degrees.

pub mod identities;
pub mod indicial;
pub mod system;

pub use identities::{check_transform_identities, check_transform_identities_with, IdentityCheck};
pub use indicial::{
    indicial_degrees, indicial_gap_check, GapReport, IndicialQuery, IndicialResult,
};
pub use system::{
    davini_rhs, denominator, g_operator, leaf_phi, leaf_phi_dw, linearized_slope, radicand, rhs,
    s_of_t, second_order_coefficient, t0, OdeSystem, COS_2T0,
};
