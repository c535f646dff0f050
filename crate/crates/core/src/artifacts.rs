//! Built-in barriers for the two leaves and reference polynomials used as goldens.

use crate::barriers::{Barrier, BarrierKind, BarrierPiece};
use crate::exactnum::{int, rat, Endpoint, QPoly, QSqrt2, Rational, Var};
use crate::leaf::Leaf;

fn q(a: Rational, b: Rational) -> QSqrt2 {
    QSqrt2::new(a, b)
}

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn at(n: i64, d: i64) -> Endpoint {
    Endpoint::Rational(rat(n, d))
}

fn tau(cs: Vec<QSqrt2>) -> QPoly {
    QPoly::new(cs).with_var(Var::Tau)
}

/// Breakpoints of the plus-leaf subsolution `g`.
pub fn g_breakpoints() -> [Rational; 3] {
    [int(1), r(81, 20), int(37)]
}

/// Pieces of `g`, each with its stated margins.
pub fn g_pieces() -> Vec<BarrierPiece> {
    let zero = QSqrt2::from_int(0);
    // (104/95)s − (1/5)s^(3/2), τ = s^(1/2)
    let p0 = BarrierPiece::new(
        at(0, 1),
        at(1, 1),
        2,
        tau(vec![
            zero.clone(),
            zero.clone(),
            QSqrt2::from_ratios(104, 95, 0, 1),
            QSqrt2::from_ratios(-1, 5, 0, 1),
        ]),
        QPoly::one(),
    )
    .unwrap()
    .with_ftilde_claim(-1, r(1, 100));
    let p1 = BarrierPiece::polynomial(
        at(1, 1),
        at(81, 20),
        QPoly::from_rationals(&[r(1, 20), r(83, 91), r(-9, 110), r(1, 64), r(-1, 840)]),
    )
    .unwrap()
    .with_ftilde_claim(-1, r(1, 10))
    .with_f_margin(r(1, 10_000));
    // (√2/2)s + 1/4 − (3/250)(s − 81/20) − (2/10⁵)(s − 81/20)²
    let u = QPoly::from_rationals(&[r(-81, 20), int(1)]);
    let p2 = &(&QPoly::monomial(QSqrt2::from_ratios(0, 1, 1, 2), 1)
        + &QPoly::from_rationals(&[r(1, 4)]))
        - &(&u.scale_rational(&r(3, 250)) + &(&u * &u).scale_rational(&r(2, 100_000)));
    let p2 = BarrierPiece::polynomial(at(81, 20), at(37, 1), p2)
        .unwrap()
        .with_f_margin(r(1, 1000));
    // (√2/2)s − (1/10)s^(2/3) + (√2/5)s^(1/3), τ = s^(1/3)
    let p3 = BarrierPiece::new(
        at(37, 1),
        Endpoint::PosInf,
        3,
        tau(vec![
            zero,
            QSqrt2::from_ratios(0, 1, 1, 5),
            QSqrt2::from_ratios(-1, 10, 0, 1),
            QSqrt2::from_ratios(0, 1, 1, 2),
        ]),
        QPoly::one(),
    )
    .unwrap()
    .with_ftilde_claim(-1, int(0));
    vec![p0, p1, p2, p3]
}

/// Separating values at the breakpoints of `g`.
pub fn g_separators() -> Vec<Option<QSqrt2>> {
    vec![
        Some(QSqrt2::from_ratios(17, 19, 0, 1)),
        Some(q(r(1, 4) + r(1, 10_000), r(81, 40))),
        Some(QSqrt2::from_rational(int(26) - r(45, 10_000))),
    ]
}

/// Plus-leaf subsolution `g`.
pub fn builtin_g() -> Barrier {
    Barrier::new(Leaf::Plus, BarrierKind::Subsolution, g_pieces())
        .unwrap()
        .with_separators(g_separators())
}

/// Minus-leaf supersolution `ĝ` in the variable `ŝ`.
pub fn builtin_g_hat() -> Barrier {
    let zero = QSqrt2::from_int(0);
    let half = QSqrt2::from_ratios(0, 1, -1, 2);
    let p0 = BarrierPiece::new(
        at(0, 1),
        at(3, 1),
        3,
        tau(vec![
            zero.clone(),
            QSqrt2::from_ratios(3, 10, 0, 1),
            QSqrt2::from_ratios(-2, 5, 0, 1),
            half.clone(),
        ]),
        QPoly::one(),
    )
    .unwrap();
    // −(√2/2)ŝ − 0.11ŝ^(2/3) − 5√2(0.11)²ŝ^(1/3)
    let p1 = BarrierPiece::new(
        at(3, 1),
        Endpoint::PosInf,
        3,
        tau(vec![
            zero,
            QSqrt2::from_ratios(0, 1, -121, 2000),
            QSqrt2::from_ratios(-11, 100, 0, 1),
            half,
        ]),
        QPoly::one(),
    )
    .unwrap();
    Barrier::new(Leaf::Minus, BarrierKind::Supersolution, vec![p0, p1])
        .unwrap()
        .with_separators(vec![Some(QSqrt2::from_ratios(-5, 2, 0, 1))])
}

/// Plus-leaf supersolution `h = (√2/2)s + 2s/(2+5s)`.
pub fn builtin_h() -> Barrier {
    let p = QPoly::from_ints(&[2, 5]);
    let n =
        &(&QPoly::monomial(QSqrt2::from_ratios(0, 1, 1, 2), 1) * &p) + &QPoly::from_ints(&[0, 2]);
    let piece = BarrierPiece::new(at(0, 1), Endpoint::PosInf, 1, n, p).unwrap();
    Barrier::new(Leaf::Plus, BarrierKind::Supersolution, vec![piece]).unwrap()
}

/// The degree-10 polynomial `R₁² − R₂²(s² + (2/3)s + 1)` for `h`, as a reference table.
pub fn golden_f_tilde_h() -> QPoly {
    let c = |a: i64, b: i64| QSqrt2::from_ratios(a, 1, b, 1);
    QPoly::new(vec![
        c(8480, -2112),
        c(32 * 2467, -32 * 707),
        c(286776, -82496),
        c(112 * 4061, -112 * 730),
        c(2 * 71761, 2 * 97590),
        c(-382130, 517938),
        QSqrt2::from_ratios(-5 * 99677, 2, 5 * 122924, 2),
        c(86075, -42225),
        QSqrt2::from_ratios(-125 * 395, 2, 125 * 162, 2),
        QSqrt2::from_ratios(625 * 41, 2, -625 * 44, 2),
        c(6250 * 5, -6250 * 3),
    ])
}

/// Cofactor `Q₃` of `F̃ = τ²Q₃` for the tail piece of `g`, as a reference table.
pub fn golden_q3_tail() -> QPoly {
    let c = |a: Rational, b: Rational| QSqrt2::new(a, b);
    tau(vec![
        c(r(182, 25), int(0)),
        c(int(0), r(-101, 25)),
        c(r(-5902, 625), int(0)),
        c(r(404, 75), r(2543, 1250)),
        c(r(24677, 31250), r(-233, 75)),
        c(r(10181, 625), r(-132731, 62500)),
        c(r(-439979, 112500), r(-17969, 3750)),
        c(r(-351548, 46875), r(383491, 225000)),
        c(r(-196903, 112500), r(-739537, 187500)),
        c(r(80003, 7500), r(-3137, 187500)),
        c(r(251359, 125000), r(-125969, 25000)),
        c(r(71021, 37500), r(3379, 10000)),
        c(r(-867, 2500), r(-301283, 187500)),
        c(r(-18443, 15625), r(-17, 1000)),
        c(r(29, 20), r(-67671, 50000)),
        c(r(5721, 5000), r(-1, 2)),
        c(int(2), r(-477, 1000)),
        c(r(-9, 20), int(0)),
    ])
}

/// The cubic lower bound `16 − 7s − 6s² + 3s³` for `F̃(h)/((3125/2)s⁷)`.
pub fn positivity_cubic() -> QPoly {
    QPoly::from_ints(&[16, -7, -6, 3])
}

/// Minorant `25000s⁷ − (125/2)·175s⁸ − (625/2)·30s⁹ + (3/4)·6250s¹⁰` of `F̃(h)`.
pub fn f_tilde_h_minorant() -> QPoly {
    QPoly::from_rationals(&[
        int(0),
        int(0),
        int(0),
        int(0),
        int(0),
        int(0),
        int(0),
        int(25000),
        r(-125 * 175, 2),
        r(-625 * 30, 2),
        r(3 * 6250, 4),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barriers::{compute_f, compute_f_tilde};
    use crate::exactnum::{certify_strict, sturm_count, Interval};

    #[test]
    fn f_tilde_of_h_matches_golden() {
        let ft = compute_f_tilde(&builtin_h().pieces[0], Leaf::Plus);
        assert_eq!(ft.k, 2);
        assert_eq!(ft.cofactor, golden_f_tilde_h());
    }

    #[test]
    fn tail_q3_matches_golden() {
        let ft = compute_f_tilde(&g_pieces()[3], Leaf::Plus);
        assert_eq!(ft.k, 2);
        assert_eq!(ft.cofactor, golden_q3_tail());
    }

    #[test]
    fn degree_26_terms_cancel() {
        let f = compute_f(&g_pieces()[1], Leaf::Plus);
        assert_eq!((f.q1.degree(), f.q2.degree()), (Some(13), Some(12)));
        let sq = &f.q1 * &f.q1;
        let rest = &(&f.q2 * &f.q2) * &f.radicand;
        assert_eq!(sq.degree(), Some(26));
        assert_eq!(sq.lc(), rest.lc());
        assert!(
            compute_f_tilde(&g_pieces()[1], Leaf::Plus)
                .full
                .degree()
                .unwrap()
                < 26
        );
    }

    #[test]
    fn first_piece_cofactor_shape() {
        let ft = compute_f_tilde(&g_pieces()[0], Leaf::Plus);
        assert_eq!((ft.k, ft.cofactor.degree()), (4, Some(16)));
    }

    #[test]
    fn h_positivity_chain() {
        let pos = Interval::open_lo(Endpoint::Rational(int(0)), Endpoint::PosInf);
        assert_eq!(
            sturm_count(&positivity_cubic(), &pos.lo, &pos.hi).unwrap(),
            0
        );
        let shifted = positivity_cubic().shift(7).scale_rational(&r(3125, 2));
        assert_eq!(shifted, f_tilde_h_minorant());
        // F̃(h) minus its minorant is non-negative on (0, ∞)
        certify_strict(&(&golden_f_tilde_h() - &f_tilde_h_minorant()), &pos, 1).unwrap();
    }
}
