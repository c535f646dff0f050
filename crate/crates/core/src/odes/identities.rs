//! Exact checks of the trigonometric substitution behind the leaf equations.
//!
//! With `cot 2t = (x + 3σ)/(2√2 x)` and `Q = √(9x² + 6σx + 9)`:
//! `sin 2t = 2√2x/Q`, `cos 2t = (x + 3σ)/Q`. Expressions involving `Q` live in
//! Q(√2)(x)[Q] and are compared componentwise.

use serde::Serialize;

use crate::exactnum::{QPoly, QSqrt2, QuadExt, RatFunc};
use crate::leaf::Leaf;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub leaf: Leaf,
    pub pass: bool,
}

fn c(n: i64) -> QSqrt2 {
    QSqrt2::from_int(n)
}

fn rf(p: QPoly) -> RatFunc {
    RatFunc::poly(p)
}

/// 9x² + 6σx + 9.
pub fn trig_radicand(leaf: Leaf) -> QPoly {
    QPoly::from_ints(&[9, 6 * leaf.sigma(), 9])
}

/// Run every identity for both leaves.
pub fn check_transform_identities() -> Vec<IdentityCheck> {
    [Leaf::Plus, Leaf::Minus]
        .into_iter()
        .flat_map(|l| check_transform_identities_with(l, &trig_radicand(l)))
        .collect()
}

/// The identities with the radicand `Q²` supplied by the caller (for fault injection).
pub fn check_transform_identities_with(leaf: Leaf, q2: &QPoly) -> Vec<IdentityCheck> {
    let sg = leaf.sigma();
    let x = QPoly::x();
    let two_sqrt2 = QSqrt2::from_ratios(0, 1, 2, 1);
    let sqrt2 = QSqrt2::sqrt2();
    let zero = rf(QPoly::zero());
    let one = rf(QPoly::one());
    let x_plus = QPoly::from_ints(&[3 * sg, 1]);

    // (i) (2√2x)² + (x + 3σ)² = Q²
    let lhs = &x.scale(&two_sqrt2).pow(2) + &x_plus.pow(2);
    let i_pass = lhs == *q2;

    // (ii) sin²2t = 1/(1 + cot²2t)
    let cot = RatFunc::new(x_plus.clone(), x.scale(&two_sqrt2));
    let sin2 = RatFunc::new(x.scale(&two_sqrt2).pow(2), q2.clone());
    let ii_pass = sin2 == (&one / &(&one + &(&cot * &cot)));

    // (iii) (2 − 6cos2t)/sin2t = (Q − 3x − 9σ)/(√2 x)
    let inv_q2 = RatFunc::new(QPoly::one(), q2.clone());
    let sin = QuadExt::new(zero.clone(), &rf(x.scale(&two_sqrt2)) * &inv_q2);
    let cos = QuadExt::new(zero.clone(), &rf(x_plus.clone()) * &inv_q2);
    let lhs = QuadExt::rational(rf(QPoly::constant(c(2))))
        .sub(&QuadExt::new(
            &rf(QPoly::constant(c(6))) * &cos.a,
            &rf(QPoly::constant(c(6))) * &cos.b,
        ))
        .div(&sin, q2);
    let sx = x.scale(&sqrt2);
    let rhs = QuadExt::new(
        RatFunc::new(QPoly::from_ints(&[-9 * sg, -3]), sx.clone()),
        RatFunc::new(QPoly::one(), sx.clone()),
    );
    let iii_pass = lhs == rhs;

    // (iv) dx/dt = −2(1 + cot²)/(d cot/dx) = σ(3x² + 2σx + 3)/√2
    let dxdt = &(&rf(QPoly::constant(c(-2))) * &(&one + &(&cot * &cot))) / &cot.derivative();
    let expect = RatFunc::new(
        QPoly::from_ints(&[3, 2 * sg, 3]).scale(&c(sg)),
        QPoly::constant(sqrt2.clone()),
    );
    let iv_pass = dxdt == expect;

    // (v) x⁻² dx/dt = (3x² + 2σx + 3)/(σ√2 x²)
    let lhs = &dxdt / &rf(x.pow(2));
    let expect = RatFunc::new(
        QPoly::from_ints(&[3, 2 * sg, 3]),
        x.pow(2).scale(&sqrt2.scale(&crate::exactnum::int(sg))),
    );
    let v_pass = lhs == expect;

    let names = [
        ("sin² + cos² radicand", i_pass),
        ("sin 2t from cot 2t", ii_pass),
        ("bracket (2 − 6cos 2t)/sin 2t", iii_pass),
        ("derivative dx/dt", iv_pass),
        ("scaled derivative x⁻² dx/dt", v_pass),
    ];
    names
        .into_iter()
        .map(|(n, p)| IdentityCheck {
            name: n.to_string(),
            leaf,
            pass: p,
        })
        .collect()
}
