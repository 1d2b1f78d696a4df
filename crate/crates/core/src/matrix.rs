//! Dense matrices and vectors over [`ExtendedValue`].
//!
//! One matrix type serves both semirings; the operation chooses the
//! semiring. `oplus`/`maxplus_*` run max-plus, `oplus_prime`/`minplus_*`
//! run min-plus. Storage is row-major and shapes are always positive in
//! both dimensions.

use crate::error::{Error, Result};
use crate::value::{Context, ExtendedValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtendedValue>,
}

impl TropicalMatrix {
    /// Row-major construction. Panics when a dimension is zero or the entry
    /// count disagrees with the shape; parsers validate before calling.
    pub fn new(rows: usize, cols: usize, entries: Vec<ExtendedValue>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        TropicalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExtendedValue,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        TropicalMatrix::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-indexed access; panics outside the shape.
    pub fn get(&self, i: usize, j: usize) -> &ExtendedValue {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ExtendedValue] {
        assert!(i < self.rows, "row index out of bounds");
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &ExtendedValue> {
        self.entries.iter()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                found_rows: other.rows,
                found_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Entrywise max-plus sum: componentwise maximum.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.tmax(b))
            .collect();
        Ok(TropicalMatrix::new(self.rows, self.cols, entries))
    }

    /// Entrywise min-plus sum: componentwise minimum.
    pub fn oplus_prime(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.tmin(b))
            .collect();
        Ok(TropicalMatrix::new(self.rows, self.cols, entries))
    }

    /// Tropical scaling: adds the finite scalar `alpha` to every entry.
    /// Infinite entries are unchanged in either context.
    pub fn scalar_mul(&self, alpha: &Rational, ctx: Context) -> Self {
        let alpha = ExtendedValue::Finite(alpha.clone());
        let entries = self.entries.iter().map(|e| e.tadd(&alpha, ctx)).collect();
        TropicalMatrix::new(self.rows, self.cols, entries)
    }

    fn check_operand_len(&self, len: usize) -> Result<()> {
        if self.cols != len {
            return Err(Error::DimensionMismatch {
                expected_rows: self.cols,
                expected_cols: 1,
                found_rows: len,
                found_cols: 1,
            });
        }
        Ok(())
    }

    /// Max-plus matrix-vector product: `y_i = max_k (a_ik + w_k)`.
    pub fn maxplus_matvec(&self, w: &TropicalVector) -> Result<TropicalVector> {
        self.check_operand_len(w.len())?;
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(w.iter())
                    .map(|(a, x)| a.tadd(x, Context::MaxPlus))
                    .fold(ExtendedValue::NegInf, |acc, t| acc.tmax(&t))
            })
            .collect();
        Ok(TropicalVector::new(entries))
    }

    /// Min-plus matrix-vector product: `y_i = min_k (b_ik + u_k)`.
    pub fn minplus_matvec(&self, u: &TropicalVector) -> Result<TropicalVector> {
        self.check_operand_len(u.len())?;
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(u.iter())
                    .map(|(b, x)| b.tadd(x, Context::MinPlus))
                    .fold(ExtendedValue::PosInf, |acc, t| acc.tmin(&t))
            })
            .collect();
        Ok(TropicalVector::new(entries))
    }

    /// Max-plus matrix product: `c_ij = max_k (a_ik + b_kj)`.
    pub fn maxplus_matmul(&self, other: &Self) -> Result<Self> {
        self.check_operand_len(other.rows)?;
        let entries = (0..self.rows)
            .flat_map(|i| (0..other.cols).map(move |j| (i, j)))
            .map(|(i, j)| {
                (0..self.cols)
                    .map(|k| self.get(i, k).tadd(other.get(k, j), Context::MaxPlus))
                    .fold(ExtendedValue::NegInf, |acc, t| acc.tmax(&t))
            })
            .collect();
        Ok(TropicalMatrix::new(self.rows, other.cols, entries))
    }

    /// Min-plus matrix product: `c_ij = min_k (a_ik + b_kj)`.
    pub fn minplus_matmul(&self, other: &Self) -> Result<Self> {
        self.check_operand_len(other.rows)?;
        let entries = (0..self.rows)
            .flat_map(|i| (0..other.cols).map(move |j| (i, j)))
            .map(|(i, j)| {
                (0..self.cols)
                    .map(|k| self.get(i, k).tadd(other.get(k, j), Context::MinPlus))
                    .fold(ExtendedValue::PosInf, |acc, t| acc.tmin(&t))
            })
            .collect();
        Ok(TropicalMatrix::new(self.rows, other.cols, entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalVector {
    entries: Vec<ExtendedValue>,
}

impl TropicalVector {
    /// Panics on an empty entry list; vectors always have positive length.
    pub fn new(entries: Vec<ExtendedValue>) -> Self {
        assert!(!entries.is_empty(), "vector must have positive length");
        TropicalVector { entries }
    }

    pub fn zeros(len: usize) -> Self {
        TropicalVector::new(vec![ExtendedValue::integer(0); len])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &ExtendedValue {
        &self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExtendedValue> {
        self.entries.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(ExtendedValue::is_finite)
    }

    /// Adds the finite scalar `c` to every entry; infinities are unchanged.
    pub fn shift(&self, c: &Rational) -> Self {
        let c = ExtendedValue::Finite(c.clone());
        TropicalVector::new(
            self.entries
                .iter()
                .map(|e| e.tadd(&c, Context::MaxPlus))
                .collect(),
        )
    }

    /// Entrywise maximum. Panics on length mismatch; callers validate.
    pub fn sup(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "length mismatch in sup");
        TropicalVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.tmax(b))
                .collect(),
        )
    }

    /// Entrywise `<=`. Panics on length mismatch; callers validate.
    pub fn le(&self, other: &Self) -> bool {
        assert_eq!(self.len(), other.len(), "length mismatch in comparison");
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}
