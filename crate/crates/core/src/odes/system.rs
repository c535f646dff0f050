//! The three ODE forms: Davini's t-form and the two leaf equations in s and ŝ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QPoly, QSqrt2};
use crate::leaf::Leaf;

/// cos(2t₀), with tan t₀ = 1/√2.
pub const COS_2T0: f64 = 1.0 / 3.0;

/// t₀ = atan(1/√2).
pub fn t0() -> f64 {
    (1.0 / std::f64::consts::SQRT_2).atan()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OdeSystem {
    Davini,
    PlusLeaf,
    MinusLeaf,
}

impl OdeSystem {
    pub fn leaf(self) -> Option<Leaf> {
        match self {
            OdeSystem::PlusLeaf => Some(Leaf::Plus),
            OdeSystem::MinusLeaf => Some(Leaf::Minus),
            OdeSystem::Davini => None,
        }
    }
}

impl From<Leaf> for OdeSystem {
    fn from(l: Leaf) -> Self {
        match l {
            Leaf::Plus => OdeSystem::PlusLeaf,
            Leaf::Minus => OdeSystem::MinusLeaf,
        }
    }
}

/// R = x² + (2σ/3)x + 1.
pub fn radicand(leaf: Leaf) -> QPoly {
    QPoly::new(vec![
        QSqrt2::from_int(1),
        QSqrt2::from_ratios(2 * leaf.sigma(), 3, 0, 1),
        QSqrt2::from_int(1),
    ])
}

/// D = 3x² + 2σx + 3.
pub fn denominator(leaf: Leaf) -> QPoly {
    QPoly::from_ints(&[3, 2 * leaf.sigma(), 3])
}

/// Right-hand side `Φ(x, w)` of `x·w' = Φ(x, w)` for a leaf.
pub fn leaf_phi(leaf: Leaf, x: f64, w: f64) -> f64 {
    let sg = leaf.sigma() as f64;
    let root = (9.0 * x * x + 6.0 * sg * x + 9.0).sqrt();
    let d = 3.0 * x * x + 2.0 * sg * x + 3.0;
    sg * (1.0 + w * w) * (7.0 * std::f64::consts::SQRT_2 * x + (root - 3.0 * x - 9.0 * sg) * w) / d
}

/// `∂Φ/∂w`.
pub fn leaf_phi_dw(leaf: Leaf, x: f64, w: f64) -> f64 {
    let sg = leaf.sigma() as f64;
    let root = (9.0 * x * x + 6.0 * sg * x + 9.0).sqrt();
    let d = 3.0 * x * x + 2.0 * sg * x + 3.0;
    let a = root - 3.0 * x - 9.0 * sg;
    sg * (2.0 * w * (7.0 * std::f64::consts::SQRT_2 * x + a * w) + (1.0 + w * w) * a) / d
}

/// Davini's equation: φ'' as a function of `(t, φ')`.
pub fn davini_rhs(t: f64, dphi: f64) -> Result<f64> {
    let s2 = (2.0 * t).sin();
    if s2 == 0.0 {
        return Err(Error::Domain(format!("sin(2t) = 0 at t = {t}")));
    }
    let c2 = (2.0 * t).cos();
    Ok((1.0 + dphi * dphi) * (7.0 + (2.0 - 6.0 * c2) / s2 * dphi))
}

/// `dy/dx` at `(x, y)`: `Φ(x, y)/x` for the leaf forms, φ'' for Davini.
pub fn rhs(system: OdeSystem, x: f64, y: f64) -> Result<f64> {
    match system.leaf() {
        Some(leaf) => {
            if x <= 0.0 {
                return Err(Error::Domain(format!(
                    "leaf equation is singular at x = {x}"
                )));
            }
            Ok(leaf_phi(leaf, x, y) / x)
        }
        None => davini_rhs(x, y),
    }
}

/// s as a function of t: sin 2t / sin(2(t₀ − t)).
pub fn s_of_t(t: f64) -> f64 {
    (2.0 * t).sin() / (2.0 * (t0() - t)).sin()
}

/// Exact start slope `c₁` of `w ≈ c₁x` at 0.
pub fn linearized_slope(leaf: Leaf) -> QSqrt2 {
    let sg = leaf.sigma();
    let a0 = 3 - 9 * sg;
    // c₁ = σ(7√2 + A₀c₁)/3
    QSqrt2::from_ratios(0, 1, 7 * sg, 3 - sg * a0)
}

/// Exact second-order coefficient `c₂` of `w ≈ c₁x + c₂x²`.
pub fn second_order_coefficient(leaf: Leaf) -> QSqrt2 {
    let sg = leaf.sigma();
    let a0 = 3 - 9 * sg;
    let a1 = sg - 3;
    linearized_slope(leaf).scale(&crate::exactnum::rat(sg * (a1 - 2), 6 - sg * a0))
}

/// `G(s, w) = s·w' − (7√2/3)s + 2w` evaluated on a polynomial `w`.
pub fn g_operator(w: &QPoly) -> QPoly {
    let sw = w.derivative().shift(1);
    let lin = QPoly::monomial(QSqrt2::from_ratios(0, 1, 7, 3), 1);
    &(&sw - &lin) + &w.scale(&QSqrt2::from_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_examples() {
        let v = rhs(OdeSystem::PlusLeaf, 1.0, 0.0).unwrap();
        assert!((v - 7.0 * 2f64.sqrt() / 8.0).abs() < 1e-14);
        let v = rhs(OdeSystem::MinusLeaf, 3.0, 0.0).unwrap();
        assert!((v + 7.0 * 2f64.sqrt() / 24.0).abs() < 1e-14);
        assert_eq!(rhs(OdeSystem::Davini, 0.3, 0.0).unwrap(), 7.0);
        assert!(rhs(OdeSystem::PlusLeaf, 0.0, 0.0).is_err());
        assert!(rhs(OdeSystem::Davini, 0.0, 1.0).is_err());
    }

    #[test]
    fn slopes() {
        assert_eq!(
            linearized_slope(Leaf::Plus),
            QSqrt2::from_ratios(0, 1, 7, 9)
        );
        assert_eq!(
            linearized_slope(Leaf::Minus),
            QSqrt2::from_ratios(0, 1, -7, 15)
        );
        assert_eq!(
            second_order_coefficient(Leaf::Plus),
            QSqrt2::from_ratios(0, 1, -7, 27)
        );
        assert_eq!(
            second_order_coefficient(Leaf::Minus),
            QSqrt2::from_ratios(0, 1, -7, 45)
        );
    }

    #[test]
    fn g_vanishes_on_linear_solution() {
        let w = QPoly::monomial(linearized_slope(Leaf::Plus), 1);
        assert!(g_operator(&w).is_zero());
    }

    #[test]
    fn series_start_is_second_order_accurate() {
        for leaf in [Leaf::Plus, Leaf::Minus] {
            let c1 = linearized_slope(leaf).to_f64();
            let c2 = second_order_coefficient(leaf).to_f64();
            let x = 1e-3;
            let w = c1 * x + c2 * x * x;
            let lhs = x * (c1 + 2.0 * c2 * x);
            assert!((lhs - leaf_phi(leaf, x, w)).abs() < 1e-7, "{leaf}");
        }
    }

    #[test]
    fn t0_constants() {
        assert!(((2.0 * t0()).cos() - COS_2T0).abs() < 1e-15);
        assert!(s_of_t(1e-9).abs() < 1e-8);
    }

    #[test]
    fn dw_partial() {
        let (x, w) = (2.0, 0.7);
        let h = 1e-6;
        let fd = (leaf_phi(Leaf::Plus, x, w + h) - leaf_phi(Leaf::Plus, x, w - h)) / (2.0 * h);
        assert!((fd - leaf_phi_dw(Leaf::Plus, x, w)).abs() < 1e-8);
    }
}
