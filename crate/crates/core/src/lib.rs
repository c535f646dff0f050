//! Exact barrier certificates, series expansions and shooting estimates for the
//! profile equations of the Hardt-Simon leaves of the cone over S⁴×S².

pub mod artifacts;
pub mod barriers;
pub mod certfile;
pub mod error;
pub mod exactnum;
pub mod leaf;
pub mod odes;
pub mod report;
pub mod series;
pub mod shooting;
pub mod synth;

pub use error::{Error, Result};
pub use leaf::Leaf;
