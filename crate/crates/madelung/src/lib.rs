//! N-dimensional Madelung constants
//!
//! The alternating lattice sum over the simple cubic lattice,
//!
//! ```text
//! M_N(s) = Σ'_{i ∈ ℤ^N \ {0}} (-1)^{i_1+…+i_N} / (i_1²+…+i_N²)^s,
//! ```
//!
//! is only conditionally convergent for s ≤ N/2, but admits two convergent
//! expansions in modified Bessel functions, one direct and one recursive in
//! the dimension. This crate implements both, together with everything
//! needed to validate them:
//!
//! * [`special`] — Γ, 1/Γ, ζ, η, β with analytic continuation, and K_ν(x)
//!   for arbitrary real order;
//! * [`squares`] — exact representation counts r_N(m), r_N^odd(m) with
//!   unbounded integers, plus a brute-force enumeration oracle;
//! * [`series`] — the two Bessel expansions with adaptive truncation,
//!   backwards summation and term pairing;
//! * [`closed_form`] — Zucker's even-dimension closed forms and the three
//!   classical M_3(1/2) formulas, used as oracles;
//! * [`qseries`] / [`cusp`] — exact q-series arithmetic, the Jacobi and
//!   Glaisher sums-of-squares identities, and the cusp-form route to
//!   M_12(s).
//!
//! ```
//! use madelung::{madelung, MadelungQuery};
//!
//! let v = madelung(&MadelungQuery::new(3, 0.5)).unwrap();
//! assert!((v.value - -1.74756459463318).abs() < 1e-13);
//! ```

pub mod closed_form;
pub mod cusp;
mod error;
pub mod qseries;
pub mod series;
pub mod special;
pub mod squares;

pub use error::{Error, Result};
pub use series::{
    convergence_trace, madelung, madelung_direct, madelung_recursive, ConvergenceTrace, Evaluator,
    MadelungQuery, MadelungValue, Method, ResolvedMethod,
};
