//! Definition-level reference implementations for differential testing.
//!
//! Nothing here shares arithmetic with the optimized paths: the update map
//! is re-derived straight from its defining formulas with local handling
//! of the infinity cases, and the residual search enumerates a lattice
//! instead of iterating anything. These exist to catch bugs in the main
//! code paths, so they stay deliberately naive.

use crate::error::{Error, Result};
use crate::matrix::{TropicalMatrix, TropicalVector};
use crate::solver::EigenPair;
use crate::system::{BipartiteSystem, StateVector};
use crate::value::{ExtendedValue, Rational};

/// Largest state dimension (m + n) the grid search accepts.
pub const MAX_GRID_DIM: usize = 5;
/// Largest search radius the grid search accepts.
pub const MAX_GRID_RADIUS: usize = 6;

/// One step of the bipartite update, computed from the definitions:
/// `u'_i = max_k (a_ik + w_k)` and `w'_j = min_k (b_jk + u_k)`.
///
/// Takes raw matrices rather than a validated system so it can also serve
/// as the reference for the two matrix-vector products on arbitrary
/// inputs. Only conjugate shapes are required.
pub fn naive_apply_m(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    x: &StateVector,
) -> Result<StateVector> {
    if b.rows() != a.cols() || b.cols() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected_rows: a.cols(),
            expected_cols: a.rows(),
            found_rows: b.rows(),
            found_cols: b.cols(),
        });
    }
    if x.m() != a.rows() || x.n() != a.cols() {
        return Err(Error::DimensionMismatch {
            expected_rows: a.rows() + a.cols(),
            expected_cols: 1,
            found_rows: x.m() + x.n(),
            found_cols: 1,
        });
    }
    let m = a.rows();
    let n = a.cols();

    let mut u_next = Vec::with_capacity(m);
    for i in 0..m {
        let mut best: Option<ExtendedValue> = None;
        for k in 0..n {
            let term = plus_resolving_to_neg_inf(a.get(i, k), x.w().get(k));
            best = Some(match best {
                None => term,
                Some(b) => bigger(b, term),
            });
        }
        u_next.push(best.expect("n >= 1"));
    }

    let mut w_next = Vec::with_capacity(n);
    for j in 0..n {
        let mut best: Option<ExtendedValue> = None;
        for k in 0..m {
            let term = plus_resolving_to_pos_inf(b.get(j, k), x.u().get(k));
            best = Some(match best {
                None => term,
                Some(b) => smaller(b, term),
            });
        }
        w_next.push(best.expect("m >= 1"));
    }

    Ok(StateVector::new(
        TropicalVector::new(u_next),
        TropicalVector::new(w_next),
    ))
}

// The four helpers below re-derive scalar semantics locally so that this
// module cannot inherit a bug from the value module.

fn plus_resolving_to_neg_inf(a: &ExtendedValue, b: &ExtendedValue) -> ExtendedValue {
    use ExtendedValue::{Finite, NegInf, PosInf};
    match (a, b) {
        (NegInf, _) | (_, NegInf) => NegInf,
        (PosInf, _) | (_, PosInf) => PosInf,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

fn plus_resolving_to_pos_inf(a: &ExtendedValue, b: &ExtendedValue) -> ExtendedValue {
    use ExtendedValue::{Finite, NegInf, PosInf};
    match (a, b) {
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

fn bigger(a: ExtendedValue, b: ExtendedValue) -> ExtendedValue {
    use ExtendedValue::{Finite, NegInf, PosInf};
    match (&a, &b) {
        (PosInf, _) | (_, NegInf) => a,
        (NegInf, _) | (_, PosInf) => b,
        (Finite(x), Finite(y)) => {
            if x >= y {
                a
            } else {
                b
            }
        }
    }
}

fn smaller(a: ExtendedValue, b: ExtendedValue) -> ExtendedValue {
    use ExtendedValue::{Finite, NegInf, PosInf};
    match (&a, &b) {
        (NegInf, _) | (_, PosInf) => a,
        (PosInf, _) | (_, NegInf) => b,
        (Finite(x), Finite(y)) => {
            if x <= y {
                a
            } else {
                b
            }
        }
    }
}

/// Exhaustive eigenvector search over a lattice of candidate states.
///
/// The first coordinate is pinned to 0 (eigenvectors tolerate uniform
/// shifts, so each shift class contributes one representative); every
/// other coordinate ranges over `-radius, -radius+step, ..., radius`.
/// A candidate qualifies when its residual against `lambda` vanishes
/// exactly. Results come back lexicographically ordered by coordinates.
///
/// The lattice explodes combinatorially, so instances beyond
/// [`MAX_GRID_DIM`] total coordinates or [`MAX_GRID_RADIUS`] are refused.
pub fn brute_residual_grid(
    sys: &BipartiteSystem,
    lambda: &Rational,
    radius: usize,
    step: &Rational,
) -> Result<Vec<StateVector>> {
    let dim = sys.m() + sys.n();
    if dim > MAX_GRID_DIM {
        return Err(Error::TooLarge {
            what: "state dimension",
            value: dim,
            max: MAX_GRID_DIM,
        });
    }
    if radius > MAX_GRID_RADIUS {
        return Err(Error::TooLarge {
            what: "grid radius",
            value: radius,
            max: MAX_GRID_RADIUS,
        });
    }
    assert!(
        *step > Rational::from_integer(0.into()),
        "step must be positive"
    );

    let radius = Rational::from_integer(num::BigInt::from(radius));
    let mut axis: Vec<Rational> = Vec::new();
    let mut tick = -radius.clone();
    while tick <= radius {
        axis.push(tick.clone());
        tick += step;
    }

    let mut hits = Vec::new();
    let mut coords: Vec<Rational> = vec![Rational::from_integer(0.into()); dim];
    search(sys, lambda, &axis, &mut coords, 1, &mut hits)?;
    Ok(hits)
}

fn search(
    sys: &BipartiteSystem,
    lambda: &Rational,
    axis: &[Rational],
    coords: &mut Vec<Rational>,
    depth: usize,
    hits: &mut Vec<StateVector>,
) -> Result<()> {
    if depth == coords.len() {
        let candidate = assemble(coords, sys.m());
        if zero_residual(sys, lambda, &candidate)? {
            hits.push(candidate);
        }
        return Ok(());
    }
    for tick in axis {
        coords[depth] = tick.clone();
        search(sys, lambda, axis, coords, depth + 1, hits)?;
    }
    Ok(())
}

fn assemble(coords: &[Rational], m: usize) -> StateVector {
    let to_vec = |slice: &[Rational]| {
        TropicalVector::new(
            slice
                .iter()
                .map(|q| ExtendedValue::Finite(q.clone()))
                .collect(),
        )
    };
    StateVector::new(to_vec(&coords[..m]), to_vec(&coords[m..]))
}

/// Residual test routed through [`naive_apply_m`], keeping the oracle
/// independent of the optimized update path. Equivalent to asking
/// [`crate::solver::verify_eigenpair`] for a zero residual.
fn zero_residual(sys: &BipartiteSystem, lambda: &Rational, v: &StateVector) -> Result<bool> {
    let image = naive_apply_m(sys.a(), sys.b(), v)?;
    let expected = v.shift(lambda);
    Ok(image == expected)
}

/// Convenience wrapper pairing the grid search with [`EigenPair`].
pub fn grid_contains(
    sys: &BipartiteSystem,
    pair: &EigenPair,
    radius: usize,
    step: &Rational,
) -> Result<bool> {
    let hits = brute_residual_grid(sys, &pair.lambda, radius, step)?;
    Ok(hits.contains(&pair.v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TropicalMatrix;
    use crate::value::ExtendedValue::{NegInf, PosInf};

    fn fin(n: i64) -> ExtendedValue {
        ExtendedValue::integer(n)
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn unit_system() -> BipartiteSystem {
        BipartiteSystem::new(
            TropicalMatrix::new(1, 1, vec![fin(3)]),
            TropicalMatrix::new(1, 1, vec![fin(1)]),
        )
        .unwrap()
    }

    #[test]
    fn naive_map_handles_mixed_infinities_by_semiring() {
        // A row of -inf against a +inf state coordinate stays -inf
        let a = TropicalMatrix::new(1, 2, vec![NegInf, NegInf]);
        let b = TropicalMatrix::new(2, 1, vec![fin(0), PosInf]);
        let x = StateVector::new(
            TropicalVector::new(vec![NegInf]),
            TropicalVector::new(vec![PosInf, fin(1)]),
        );
        let next = naive_apply_m(&a, &b, &x).unwrap();
        assert_eq!(*next.u().get(0), NegInf);
        // B row 0: 0 + (-inf) = -inf; row 1: +inf + (-inf) = +inf
        assert_eq!(*next.w().get(0), NegInf);
        assert_eq!(*next.w().get(1), PosInf);
    }

    #[test]
    fn naive_map_rejects_shape_mismatches() {
        let a = TropicalMatrix::new(1, 2, vec![fin(0), fin(0)]);
        let b = TropicalMatrix::new(1, 2, vec![fin(0), fin(0)]);
        let x = StateVector::zeros(1, 2);
        assert!(matches!(
            naive_apply_m(&a, &b, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn grid_finds_the_unit_eigenvectors_at_the_true_rate() {
        // u - w = 1 characterizes eigenvectors at lambda = 2; pinned first
        // coordinate leaves exactly (0; -1)
        let sys = unit_system();
        let hits = brute_residual_grid(&sys, &q(2, 1), 3, &q(1, 2)).unwrap();
        let expected = StateVector::new(
            TropicalVector::new(vec![fin(0)]),
            TropicalVector::new(vec![fin(-1)]),
        );
        assert_eq!(hits, vec![expected]);
    }

    #[test]
    fn grid_is_empty_at_a_wrong_rate() {
        let sys = unit_system();
        assert!(brute_residual_grid(&sys, &q(3, 1), 3, &q(1, 2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn grid_refuses_oversized_instances() {
        let l = crate::latin::LatinSquare::cyclic(3).unwrap();
        let sys = crate::latin::build_system(
            &l,
            &l,
            &crate::latin::MaskSpec::none(),
            &crate::latin::MaskSpec::none(),
        )
        .unwrap();
        // m + n = 6 > 5
        assert!(matches!(
            brute_residual_grid(&sys, &q(2, 1), 2, &q(1, 1)),
            Err(Error::TooLarge { .. })
        ));
        let small = unit_system();
        assert!(matches!(
            brute_residual_grid(&small, &q(2, 1), 7, &q(1, 1)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn every_grid_hit_passes_the_main_verifier() {
        let l = crate::latin::LatinSquare::cyclic(2).unwrap();
        let sys = crate::latin::build_system(
            &l,
            &l,
            &crate::latin::MaskSpec::none(),
            &crate::latin::MaskSpec::none(),
        )
        .unwrap();
        let lambda = q(3, 2);
        let hits = brute_residual_grid(&sys, &lambda, 2, &q(1, 2)).unwrap();
        assert!(!hits.is_empty(), "expected eigenvectors on the lattice");
        for v in hits {
            let pair = EigenPair {
                lambda: lambda.clone(),
                v,
            };
            assert!(crate::solver::verify_eigenpair(&sys, &pair).unwrap().valid);
        }
    }
}
