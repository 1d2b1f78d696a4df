//! A frozen instance where the cycle supremum is not yet an eigenvector.
//!
//! Most orbits close on a cycle whose supremum is already fixed, and the
//! solvers return it without further work. This 2x3 system is different:
//! at rate 0 the orbit from the recorded start enters a 4-cycle whose
//! supremum moves (one coordinate strictly increases under the map), so
//! the solvers must run their continuation phase. One extra step settles
//! it. Found by randomized search, then verified by hand; kept exact here
//! so the continuation path always has coverage.

use mmpx_core::{
    solve_fixedpoint, solve_power, verify_eigenpair, BipartiteSystem, ExtendedValue, Rational,
    StateVector, TropicalMatrix, TropicalVector,
};

fn fin(n: i64) -> ExtendedValue {
    ExtendedValue::integer(n)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn state(u: &[i64], w: &[i64]) -> StateVector {
    StateVector::new(
        TropicalVector::new(u.iter().map(|&v| fin(v)).collect()),
        TropicalVector::new(w.iter().map(|&v| fin(v)).collect()),
    )
}

fn continuation_system() -> BipartiteSystem {
    use ExtendedValue::{NegInf as E, PosInf as T};
    let a = TropicalMatrix::new(2, 3, vec![fin(2), E, fin(-2), E, E, fin(0)]);
    let b = TropicalMatrix::new(3, 2, vec![fin(0), fin(-2), fin(1), fin(1), fin(0), T]);
    BipartiteSystem::new(a, b).unwrap()
}

fn start() -> StateVector {
    state(&[-2, -1], &[0, -1, 1])
}

#[test]
fn the_cycle_supremum_moves_and_settles_in_one_step() {
    let sys = continuation_system();
    let nsys = sys.normalize(&rat(0));

    // the orbit: x(5) = x(1), a 4-cycle after one transient step
    let mut orbit = vec![start()];
    for _ in 0..5 {
        orbit.push(nsys.apply(orbit.last().unwrap()).unwrap());
    }
    assert_eq!(orbit[1], state(&[2, 1], &[-3, -1, -2]));
    assert_eq!(orbit[2], state(&[-1, -2], &[-1, 2, 2]));
    assert_eq!(orbit[3], state(&[1, 2], &[-4, -1, -1]));
    assert_eq!(orbit[4], state(&[-2, -1], &[0, 2, 1]));
    assert_eq!(orbit[5], orbit[1]);

    // the supremum of the cycle is strictly below its own image
    let v = mmpx_core::state_sup(&orbit[1..5]).unwrap();
    assert_eq!(v, state(&[2, 2], &[0, 2, 2]));
    let image = nsys.apply(&v).unwrap();
    assert_eq!(image, state(&[2, 2], &[0, 3, 2]));
    assert!(v.le(&image));
    assert_ne!(v, image);

    // one more application fixes it
    assert_eq!(nsys.apply(&image).unwrap(), image);
}

#[test]
fn fixed_point_solver_runs_the_continuation_phase() {
    let sys = continuation_system();
    let (pair, trace) = solve_fixedpoint(&sys, &rat(0), &start(), 100).unwrap();

    assert_eq!((trace.s, trace.r), (1, 5));
    assert_eq!(trace.continuation_steps, 1);
    // 5 detection steps, 1 fixed-point check, 1 continuation step
    assert_eq!(trace.map_applications, 7);
    assert_eq!(pair.v, state(&[2, 2], &[0, 3, 2]));

    let check = verify_eigenpair(&sys, &pair).unwrap();
    assert!(check.valid, "residual {:?}", check.residual);
}

#[test]
fn power_solver_runs_the_continuation_phase_too() {
    // rate 0 means the raw orbit repeats exactly; the power solver sees
    // the same cycle as an affine repeat with shift 0
    let sys = continuation_system();
    let (pair, trace) = solve_power(&sys, &start(), 100).unwrap();

    assert_eq!((trace.s, trace.r), (1, 5));
    assert_eq!(trace.c, Some(rat(0)));
    assert_eq!(pair.lambda, rat(0));
    assert_eq!(trace.continuation_steps, 1);
    assert_eq!(pair.v, state(&[2, 2], &[0, 3, 2]));

    let check = verify_eigenpair(&sys, &pair).unwrap();
    assert!(check.valid, "residual {:?}", check.residual);
}
