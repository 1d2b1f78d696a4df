//! Bipartite min-max-plus systems and their state space.
//!
//! A system couples two matrices over one synchronous update: the first
//! block of the state advances through the max-plus product with A, the
//! second through the min-plus product with B, both reading the previous
//! state. With `A` of shape m×n and `B` of shape n×m, states are stacked
//! pairs `(u; w)` with `u` of length m and `w` of length n.
//!
//! Construction enforces the sign convention (`A` over `Q ∪ {-inf}`, `B`
//! over `Q ∪ {+inf}`) and rejects rows without a finite entry: such a row
//! would pin a coordinate at an infinity forever, and every orbit question
//! about the system would degenerate with it.

use crate::error::{Error, Result};
use crate::matrix::{TropicalMatrix, TropicalVector};
use crate::value::{ExtendedValue, Rational};

/// State `(u; w)` of a bipartite system: `u` feeds B, `w` feeds A.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVector {
    u: TropicalVector,
    w: TropicalVector,
}

impl StateVector {
    pub fn new(u: TropicalVector, w: TropicalVector) -> Self {
        StateVector { u, w }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        StateVector::new(TropicalVector::zeros(m), TropicalVector::zeros(n))
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn u(&self) -> &TropicalVector {
        &self.u
    }

    pub fn w(&self) -> &TropicalVector {
        &self.w
    }

    /// All m + n coordinates, `u` first.
    pub fn entries(&self) -> impl Iterator<Item = &ExtendedValue> {
        self.u.iter().chain(self.w.iter())
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.w.is_finite()
    }

    /// Tropical scaling of the state: adds `c` to every coordinate.
    pub fn shift(&self, c: &Rational) -> Self {
        StateVector::new(self.u.shift(c), self.w.shift(c))
    }

    /// Entrywise maximum with a state of the same dimensions.
    pub fn sup(&self, other: &Self) -> Self {
        StateVector::new(self.u.sup(&other.u), self.w.sup(&other.w))
    }

    /// Entrywise `<=` against a state of the same dimensions.
    pub fn le(&self, other: &Self) -> bool {
        self.u.le(&other.u) && self.w.le(&other.w)
    }

    fn check_dims(&self, m: usize, n: usize) -> Result<()> {
        if self.m() != m || self.n() != n {
            return Err(Error::DimensionMismatch {
                expected_rows: m + n,
                expected_cols: 1,
                found_rows: self.m() + self.n(),
                found_cols: 1,
            });
        }
        Ok(())
    }
}

/// Entrywise supremum of a nonempty list of equally-shaped states.
pub fn state_sup(states: &[StateVector]) -> Result<StateVector> {
    let (first, rest) = states.split_first().ok_or(Error::EmptyList)?;
    let mut acc = first.clone();
    for x in rest {
        x.check_dims(acc.m(), acc.n())?;
        acc = acc.sup(x);
    }
    Ok(acc)
}

/// A bipartite min-max-plus system with update map
/// `u' = A ⊗ w`, `w' = B ⊗' u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSystem {
    a: TropicalMatrix,
    b: TropicalMatrix,
}

impl BipartiteSystem {
    /// Validates shape conjugacy (A m×n, B n×m), the sign convention, and
    /// row support in both matrices.
    pub fn new(a: TropicalMatrix, b: TropicalMatrix) -> Result<Self> {
        if b.rows() != a.cols() || b.cols() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected_rows: a.cols(),
                expected_cols: a.rows(),
                found_rows: b.rows(),
                found_cols: b.cols(),
            });
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if *a.get(i, j) == ExtendedValue::PosInf {
                    return Err(Error::InvalidEntry {
                        matrix: "A",
                        row: i,
                        col: j,
                        value: "+inf",
                    });
                }
            }
            if !a.row(i).iter().any(ExtendedValue::is_finite) {
                return Err(Error::DegenerateSystem {
                    matrix: "A",
                    row: i,
                });
            }
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                if *b.get(i, j) == ExtendedValue::NegInf {
                    return Err(Error::InvalidEntry {
                        matrix: "B",
                        row: i,
                        col: j,
                        value: "-inf",
                    });
                }
            }
            if !b.row(i).iter().any(ExtendedValue::is_finite) {
                return Err(Error::DegenerateSystem {
                    matrix: "B",
                    row: i,
                });
            }
        }
        Ok(BipartiteSystem { a, b })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &TropicalMatrix {
        &self.a
    }

    pub fn b(&self) -> &TropicalMatrix {
        &self.b
    }

    /// One synchronous step: both blocks read the incoming state.
    pub fn apply(&self, x: &StateVector) -> Result<StateVector> {
        x.check_dims(self.m(), self.n())?;
        let u_next = self.a.maxplus_matvec(x.w())?;
        let w_next = self.b.minplus_matvec(x.u())?;
        Ok(StateVector::new(u_next, w_next))
    }

    /// The system scaled by `-lambda` in both matrices. A state is fixed by
    /// the normalized map exactly when the original map scales it by
    /// `lambda`.
    pub fn normalize(&self, lambda: &Rational) -> NormalizedSystem {
        let neg = -lambda;
        NormalizedSystem {
            a: self.a.scalar_mul(&neg, crate::value::Context::MaxPlus),
            b: self.b.scalar_mul(&neg, crate::value::Context::MinPlus),
            lambda: lambda.clone(),
        }
    }
}

/// A system shifted by `-lambda`, kept with the shift that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSystem {
    a: TropicalMatrix,
    b: TropicalMatrix,
    lambda: Rational,
}

impl NormalizedSystem {
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a_lambda(&self) -> &TropicalMatrix {
        &self.a
    }

    pub fn b_lambda(&self) -> &TropicalMatrix {
        &self.b
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// One step of the normalized map.
    pub fn apply(&self, x: &StateVector) -> Result<StateVector> {
        x.check_dims(self.m(), self.n())?;
        let u_next = self.a.maxplus_matvec(x.w())?;
        let w_next = self.b.minplus_matvec(x.u())?;
        Ok(StateVector::new(u_next, w_next))
    }
}
