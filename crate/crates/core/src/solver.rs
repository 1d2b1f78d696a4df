//! Eigensolvers for bipartite min-max-plus systems.
//!
//! All three solvers look for a finite state `v` and scalar `lambda` with
//! `M(v) = lambda ⊗ v`, where `M` is the system's one-step map.
//!
//! * [`solve_fixedpoint`] takes a candidate `lambda`, iterates the
//!   normalized map until the orbit revisits a state exactly, takes the
//!   supremum of the cycle, and (rarely) continues iterating from that
//!   supremum until it stops moving.
//! * [`solve_latin`] derives `lambda` from the half-sum formula for systems
//!   built out of Latin squares, then runs the fixed-point solver.
//! * [`solve_power`] needs no `lambda`: it iterates the raw map until some
//!   iterate is a uniform shift of an earlier one, reads the growth rate
//!   off that pair, and assembles the eigenvector from the affine cycle.
//!
//! Iteration is exact, so repeats are exact equalities of rational states;
//! there is no tolerance anywhere. Orbits that exceed `max_iter` states in
//! a phase abort with [`Error::NonConvergence`] naming the phase. This is
//! the expected outcome of running the fixed-point solver with a `lambda`
//! that is not an eigenvalue: the normalized orbit then drifts forever.

use std::collections::HashMap;

use num::BigInt;

use crate::error::{Error, Result, SolvePhase};
use crate::matrix::TropicalVector;
use crate::system::{state_sup, BipartiteSystem, StateVector};
use crate::value::{ExtendedValue, Rational};

/// A verified or candidate solution of `M(v) = lambda ⊗ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub lambda: Rational,
    pub v: StateVector,
}

/// What a solver did: the detection-phase orbit and the phase statistics.
///
/// `iterates` holds `x(0) ..= x(r)` inclusive, so the detected repeat is
/// visible in the trace itself: `iterates[r]` equals `iterates[s]` for the
/// fixed-point solvers and `iterates[s]` shifted by `c` for the power
/// solver. Continuation iterates are not recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverTrace {
    pub iterates: Vec<StateVector>,
    pub s: usize,
    pub r: usize,
    /// Shift of the affine repeat; `None` for the fixed-point solvers.
    pub c: Option<Rational>,
    pub continuation_steps: usize,
    /// Total map applications across both phases, the cost currency all
    /// algorithms share.
    pub map_applications: usize,
}

/// Residual of a candidate pair: `M(v) - lambda - v`, coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    pub residual: TropicalVector,
}

fn check_entry(sys: &BipartiteSystem, x0: &StateVector) -> Result<()> {
    if x0.m() != sys.m() || x0.n() != sys.n() {
        return Err(Error::DimensionMismatch {
            expected_rows: sys.m() + sys.n(),
            expected_cols: 1,
            found_rows: x0.m() + x0.n(),
            found_cols: 1,
        });
    }
    if !x0.is_finite() {
        return Err(Error::NonFiniteState);
    }
    Ok(())
}

fn first_coord(x: &StateVector) -> &Rational {
    x.u()
        .get(0)
        .as_rational()
        .expect("orbit states of a valid system stay finite")
}

/// The state translated so its first coordinate is 0. Two finite states
/// have equal keys exactly when they differ by a uniform shift.
fn affine_key(x: &StateVector) -> StateVector {
    x.shift(&-first_coord(x))
}

/// Eigensolver for a given `lambda` (the normalized fixed-point method).
///
/// Phase one iterates the normalized map from `x0`, recording every state,
/// until a state recurs exactly; with an exact repeat at `(s, r)` the
/// supremum `v` of the cycle states `x(s) .. x(r-1)` is the candidate.
/// The candidate can only move upward under the normalized map, so when it
/// is not already fixed, phase two iterates from it (a nondecreasing
/// sequence) until it pins down.
pub fn solve_fixedpoint(
    sys: &BipartiteSystem,
    lambda: &Rational,
    x0: &StateVector,
    max_iter: usize,
) -> Result<(EigenPair, SolverTrace)> {
    assert!(max_iter >= 1, "max_iter must be positive");
    check_entry(sys, x0)?;
    let nsys = sys.normalize(lambda);

    let mut history: Vec<StateVector> = vec![x0.clone()];
    let mut seen: HashMap<StateVector, usize> = HashMap::new();
    seen.insert(x0.clone(), 0);
    let mut apps = 0usize;

    let (s, r) = loop {
        if history.len() > max_iter {
            return Err(Error::NonConvergence {
                phase: SolvePhase::Detection,
                max_iter,
                applications: apps,
            });
        }
        let next = nsys.apply(history.last().unwrap())?;
        apps += 1;
        if let Some(&s) = seen.get(&next) {
            let r = history.len();
            history.push(next);
            break (s, r);
        }
        seen.insert(next.clone(), history.len());
        history.push(next);
    };

    let v = state_sup(&history[s..r])?;
    let mut prev = v;
    let mut cur = nsys.apply(&prev)?;
    apps += 1;
    assert!(
        prev.le(&cur),
        "cycle supremum must not decrease under the normalized map"
    );
    let mut steps = 0usize;
    let v_star = loop {
        if cur == prev {
            break prev;
        }
        if steps == max_iter {
            return Err(Error::NonConvergence {
                phase: SolvePhase::Continuation,
                max_iter,
                applications: apps,
            });
        }
        steps += 1;
        prev = cur;
        cur = nsys.apply(&prev)?;
        apps += 1;
        assert!(
            prev.le(&cur),
            "continuation iterates must be non-decreasing"
        );
    };

    Ok((
        EigenPair {
            lambda: lambda.clone(),
            v: v_star,
        },
        SolverTrace {
            iterates: history,
            s,
            r,
            c: None,
            continuation_steps: steps,
            map_applications: apps,
        },
    ))
}

/// The closed-form eigenvalue of Latin-square systems: the mean of the
/// largest finite entry of A and the smallest finite entry of B.
///
/// The formula is meaningful for systems assembled from (possibly masked)
/// Latin squares; the function itself only needs one finite entry per
/// matrix and will compute the half-sum for any system.
pub fn latin_eigenvalue(sys: &BipartiteSystem) -> Result<Rational> {
    let max_a = sys
        .a()
        .entries()
        .filter_map(ExtendedValue::as_rational)
        .max()
        .ok_or(Error::NoFiniteEntry { matrix: "A" })?;
    let min_b = sys
        .b()
        .entries()
        .filter_map(ExtendedValue::as_rational)
        .min()
        .ok_or(Error::NoFiniteEntry { matrix: "B" })?;
    Ok((max_a + min_b) / Rational::from_integer(BigInt::from(2)))
}

/// Specialized solver for Latin-square systems: the eigenvalue comes from
/// [`latin_eigenvalue`], the eigenvector from [`solve_fixedpoint`].
pub fn solve_latin(
    sys: &BipartiteSystem,
    x0: &StateVector,
    max_iter: usize,
) -> Result<(EigenPair, SolverTrace)> {
    let lambda = latin_eigenvalue(sys)?;
    solve_fixedpoint(sys, &lambda, x0, max_iter)
}

/// Power-type eigensolver: discovers `lambda` instead of assuming it.
///
/// Iterates the raw map until some iterate equals an earlier one shifted
/// uniformly by `c`; over that affine cycle of length `p = r - s` the rate
/// is `lambda = c / p`, and the candidate eigenvector is the supremum of
/// the cycle states rescaled onto a common footing. As in the fixed-point
/// method, a candidate that is not yet periodic is iterated further until
/// `M(v) = lambda ⊗ v` holds exactly.
pub fn solve_power(
    sys: &BipartiteSystem,
    x0: &StateVector,
    max_iter: usize,
) -> Result<(EigenPair, SolverTrace)> {
    assert!(max_iter >= 1, "max_iter must be positive");
    check_entry(sys, x0)?;

    let mut history: Vec<StateVector> = vec![x0.clone()];
    let mut seen: HashMap<StateVector, usize> = HashMap::new();
    seen.insert(affine_key(x0), 0);
    let mut apps = 0usize;

    let (s, r, c) = loop {
        if history.len() > max_iter {
            return Err(Error::NonConvergence {
                phase: SolvePhase::Detection,
                max_iter,
                applications: apps,
            });
        }
        let next = sys.apply(history.last().unwrap())?;
        apps += 1;
        let key = affine_key(&next);
        if let Some(&s) = seen.get(&key) {
            let c = first_coord(&next) - first_coord(&history[s]);
            let r = history.len();
            history.push(next);
            break (s, r, c);
        }
        seen.insert(key, history.len());
        history.push(next);
    };

    let p = r - s;
    let lambda = &c / Rational::from_integer(BigInt::from(p));

    // v = sup over j in 1..=p of lambda^(p-j) ⊗ x(s+j-1): later cycle
    // states enter as they are, earlier ones pre-scaled by the rate.
    let terms: Vec<StateVector> = (1..=p)
        .map(|j| {
            let scale = &lambda * Rational::from_integer(BigInt::from(p - j));
            history[s + j - 1].shift(&scale)
        })
        .collect();
    let v = state_sup(&terms)?;

    let mut prev = v;
    let mut cur = sys.apply(&prev)?;
    apps += 1;
    let mut steps = 0usize;
    let v_star = loop {
        if cur == prev.shift(&lambda) {
            break prev;
        }
        if steps == max_iter {
            return Err(Error::NonConvergence {
                phase: SolvePhase::Continuation,
                max_iter,
                applications: apps,
            });
        }
        steps += 1;
        prev = cur;
        cur = sys.apply(&prev)?;
        apps += 1;
    };

    Ok((
        EigenPair { lambda, v: v_star },
        SolverTrace {
            iterates: history,
            s,
            r,
            c: Some(c),
            continuation_steps: steps,
            map_applications: apps,
        },
    ))
}

/// Earliest index `s` such that `x_new = c ⊗ history[s]` for a uniform
/// shift `c`, together with that shift. Definition-level scan; the solvers
/// keep an equivalent hash index instead.
pub fn detect_affine_repeat(
    history: &[StateVector],
    x_new: &StateVector,
) -> Option<(usize, Rational)> {
    history
        .iter()
        .enumerate()
        .find_map(|(s, x)| constant_difference(x_new, x).map(|c| (s, c)))
}

fn constant_difference(a: &StateVector, b: &StateVector) -> Option<Rational> {
    if a.m() != b.m() || a.n() != b.n() {
        return None;
    }
    let mut diff: Option<Rational> = None;
    for (x, y) in a.entries().zip(b.entries()) {
        let (x, y) = (x.as_rational()?, y.as_rational()?);
        let d = x - y;
        match &diff {
            None => diff = Some(d),
            Some(c) if *c == d => {}
            Some(_) => return None,
        }
    }
    diff
}

/// Exact residual check of `M(v) = lambda ⊗ v`.
///
/// The residual holds `M(v)_i - lambda - v_i` per coordinate, all finite
/// because valid systems map finite states to finite states. `valid` is
/// true exactly when every residual coordinate is zero.
pub fn verify_eigenpair(sys: &BipartiteSystem, pair: &EigenPair) -> Result<Verification> {
    check_entry(sys, &pair.v)?;
    let image = sys.apply(&pair.v)?;
    let expected = pair.v.shift(&pair.lambda);
    let residual: Vec<ExtendedValue> = image
        .entries()
        .zip(expected.entries())
        .map(|(got, want)| {
            let got = got
                .as_rational()
                .expect("image of a finite state is finite");
            let want = want
                .as_rational()
                .expect("shift of a finite state is finite");
            ExtendedValue::Finite(got - want)
        })
        .collect();
    let valid = residual.iter().all(|e| *e == ExtendedValue::integer(0));
    Ok(Verification {
        valid,
        residual: TropicalVector::new(residual),
    })
}
