//! Exact arithmetic: Q(√2), polynomials, Sturm sequences and radical signs.

pub mod certify;
pub mod numexpr;
pub mod poly;
pub mod qsqrt2;
pub mod ratfunc;
pub mod rational;
pub mod sturm;

pub use certify::{certify_sign_on_interval, certify_strict, SignEvidence};
pub use numexpr::{sign_number_expr, NumberExpr, Term, DEFAULT_PRECISION_CAP};
pub use poly::{QPoly, Var};
pub use qsqrt2::{sign_qsqrt2, QSqrt2};
pub use ratfunc::{QuadExt, RatFunc};
pub use rational::{int, parse_rational, rat, Rational};
pub use sturm::{rational_between, sign_at, sturm_count, Endpoint, Interval, SturmChain};
