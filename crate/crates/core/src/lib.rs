//! Exact tropical linear algebra and eigensolvers for bipartite
//! min-max-plus systems.
//!
//! A bipartite system couples a max-plus matrix A with a min-plus matrix B
//! over the synchronous update `u' = A ⊗ w`, `w' = B ⊗' u`. The
//! eigenproblem asks for a finite state `v` and rate `lambda` with
//! `M(v) = lambda ⊗ v`, i.e. one step advances the whole state by a
//! uniform shift. This crate provides:
//!
//! * exact scalars ([`value`]): arbitrary-precision rationals extended
//!   with both infinities,
//! * dense tropical matrices and the four products ([`matrix`]),
//! * systems, states, and normalization ([`system`]),
//! * Latin-square instance generators ([`latin`]),
//! * three eigensolvers and the residual verifier ([`solver`]),
//! * naive reference implementations for differential tests ([`oracle`]),
//! * the text formats of the command-line tools ([`format`]).
//!
//! Everything is exact; no floating point or tolerances are involved
//! anywhere, so "equal" always means equal.
//!
//! ```
//! use mmpx_core::{random_system, solve_power, verify_eigenpair, MaskSpec, StateVector};
//!
//! let sys = random_system(4, 7, &MaskSpec::eps_default(), &MaskSpec::tau_default())?;
//! let x0 = StateVector::zeros(sys.m(), sys.n());
//! let (pair, trace) = solve_power(&sys, &x0, 10_000)?;
//! assert!(verify_eigenpair(&sys, &pair)?.valid);
//! # Ok::<(), mmpx_core::Error>(())
//! ```

pub mod error;
pub mod format;
pub mod latin;
pub mod matrix;
pub mod oracle;
pub mod solver;
pub mod system;
pub mod value;

pub use error::{Error, Result, SolvePhase};
pub use latin::{build_system, random_system, validate_latin, LatinSquare, MaskKind, MaskSpec};
pub use matrix::{TropicalMatrix, TropicalVector};
pub use solver::{
    detect_affine_repeat, latin_eigenvalue, solve_fixedpoint, solve_latin, solve_power,
    verify_eigenpair, EigenPair, SolverTrace, Verification,
};
pub use system::{state_sup, BipartiteSystem, NormalizedSystem, StateVector};
pub use value::{Context, ExtendedValue, Rational};
