use hsleaf::artifacts::{builtin_g, builtin_g_hat};
use hsleaf::barriers::{certify_barrier, BarrierKind};
use hsleaf::exactnum::{rat, QSqrt2};
use hsleaf::shooting::{implied_bound, integrate, Side, DEFAULT_TOL};
use hsleaf::synth::{
    improve_bound, side_violation, synthesize, tail_coefficients, with_tail_c23, SynthConfig,
};
use hsleaf::Leaf;

#[test]
fn plus_subsolution_certifies_and_stays_below() {
    let (b, cert) = synthesize(&SynthConfig::new(Leaf::Plus, BarrierKind::Subsolution)).unwrap();
    assert!(cert.pass);
    assert!(cert.reverify(&b).unwrap());
    let (c23, _, _) = tail_coefficients(&b).unwrap();
    assert!(c23 < rat(0, 1));
    let bound = implied_bound(&b, "synth").unwrap();
    assert_eq!(bound.side, Side::Upper);
    let traj = integrate(Leaf::Plus, 1e6, DEFAULT_TOL).unwrap();
    assert!(side_violation(&b, &traj) <= 0.0);
}

#[test]
fn plus_supersolution_certifies_positive_b() {
    let (b, cert) = synthesize(&SynthConfig::new(Leaf::Plus, BarrierKind::Supersolution)).unwrap();
    assert!(cert.pass);
    let bound = implied_bound(&b, "synth").unwrap();
    assert_eq!(bound.side, Side::Lower);
    assert!(bound.scaled.sign() > 0, "{:?}", bound);
    let traj = integrate(Leaf::Plus, 1e6, DEFAULT_TOL).unwrap();
    assert!(side_violation(&b, &traj) <= 0.0);
}

#[test]
fn minus_supersolution_certifies_negative_b() {
    let (b, cert) = synthesize(&SynthConfig::new(Leaf::Minus, BarrierKind::Supersolution)).unwrap();
    assert!(cert.pass);
    let bound = implied_bound(&b, "synth").unwrap();
    assert_eq!(bound.side, Side::Upper);
    assert!(bound.scaled.sign() < 0);
    let traj = integrate(Leaf::Minus, 1e6, DEFAULT_TOL).unwrap();
    assert!(side_violation(&b, &traj) <= 0.0);
}

#[test]
fn synthesis_is_reproducible() {
    let cfg = SynthConfig::new(Leaf::Minus, BarrierKind::Supersolution);
    let a = synthesize(&cfg).unwrap().0;
    let b = synthesize(&cfg).unwrap().0;
    assert_eq!(a, b);
}

#[test]
fn seeded_tail_reproduces_the_tenth_bound() {
    let cfg = SynthConfig::new(Leaf::Plus, BarrierKind::Subsolution)
        .with_tail_seed(rat(-1, 10), QSqrt2::from_ratios(0, 1, 1, 5));
    let (b, cert) = synthesize(&cfg).unwrap();
    assert!(cert.pass);
    let bound = implied_bound(&b, "seed").unwrap();
    assert_eq!(bound.scaled, QSqrt2::from_ratios(1, 10, 0, 1));
}

#[test]
fn improving_the_plus_subsolution() {
    let g = builtin_g();
    let better = improve_bound(&g, -0.045516, 10_000).unwrap();
    assert!(certify_barrier(&better).unwrap().pass);
    let bound = implied_bound(&better, "improved").unwrap();
    assert!(bound.scaled.to_f64() < 0.1, "{}", bound.scaled.to_f64());
    // past the numeric value the tail can no longer lie below the solution
    assert!(with_tail_c23(&better, &rat(-440, 10_000), 10_000)
        .unwrap()
        .is_none());
}

#[test]
fn improving_the_minus_supersolution() {
    let g = builtin_g_hat();
    let better = improve_bound(&g, -0.174214, 10_000).unwrap();
    assert!(certify_barrier(&better).unwrap().pass);
    let bound = implied_bound(&better, "improved").unwrap();
    assert!(bound.scaled.to_f64() <= -0.11);
    assert!(with_tail_c23(&better, &rat(-1760, 10_000), 10_000)
        .unwrap()
        .is_none());
}
