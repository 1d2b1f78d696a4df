use thiserror::Error;

/// Phase of an eigensolver run, reported when the iteration cap is hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolvePhase {
    /// Repeat detection: no state (or affine) repeat occurred in time.
    Detection,
    /// Continuation from the cycle supremum: no fixed point occurred in time.
    Continuation,
}

impl std::fmt::Display for SolvePhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolvePhase::Detection => f.write_str("detection"),
            SolvePhase::Continuation => f.write_str("continuation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand shapes are incompatible. Shapes are `(rows, cols)`; vectors
    /// and states report as single-column shapes.
    #[error("dimension mismatch: expected {expected_rows}x{expected_cols}, found {found_rows}x{found_cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    /// An iterative solver exhausted its iteration budget.
    /// `applications` counts map applications performed before giving up.
    #[error("no convergence in {phase} phase within {max_iter} iterations")]
    NonConvergence {
        phase: SolvePhase,
        max_iter: usize,
        applications: usize,
    },

    /// A supremum was requested over an empty list of states.
    #[error("supremum of an empty state list is undefined")]
    EmptyList,

    /// An eigenvalue formula needed a finite entry and found none.
    #[error("matrix {matrix} has no finite entry")]
    NoFiniteEntry { matrix: &'static str },

    /// Latin square order must be at least 1.
    #[error("invalid latin square order {n}")]
    InvalidOrder { n: usize },

    /// Latin square candidates must be square grids.
    #[error("grid is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    /// A square grid whose rows or columns fail the permutation property.
    #[error("grid is not a latin square")]
    NotLatin,

    /// A mask names a symbol outside `{1..n}`.
    #[error("mask symbol {symbol} out of range for order {order}")]
    SymbolOutOfRange { symbol: usize, order: usize },

    /// The two squares feeding a system must share one order.
    #[error("latin square orders differ: {a} vs {b}")]
    OrderMismatch { a: usize, b: usize },

    /// A mask direction that the system shape forbids (tau in A, eps in B).
    #[error("matrix {matrix} may not carry a {kind} mask")]
    InvalidMask {
        matrix: &'static str,
        kind: &'static str,
    },

    /// A matrix entry violates the system sign convention
    /// (`+inf` in A or `-inf` in B).
    #[error("matrix {matrix} entry ({row},{col}) is {value}, which the system forbids")]
    InvalidEntry {
        matrix: &'static str,
        row: usize,
        col: usize,
        value: &'static str,
    },

    /// A row with no finite entry would absorb the whole orbit into an
    /// infinity, so such systems are rejected at construction.
    #[error("matrix {matrix} row {row} has no finite entry")]
    DegenerateSystem { matrix: &'static str, row: usize },

    /// Brute-force enumeration refused an instance beyond its safety bounds.
    #[error("enumeration bound exceeded: {what} is {value}, limit {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },

    /// Solvers and verifiers require every coordinate of the state finite.
    #[error("state vector has a non-finite entry")]
    NonFiniteState,

    /// Text input rejected; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
