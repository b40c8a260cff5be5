use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation at a pole of the function (e.g. Γ at 0, −1, −2, … or ζ at 1).
    #[error("{function} has a pole at {argument}")]
    Pole { function: &'static str, argument: f64 },

    /// Argument outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bounded enumeration or a fixed-size table was exceeded.
    #[error("bounds error: {0}")]
    Bounds(String),

    /// A series failed to reach the requested remainder within its term budget.
    #[error("series did not reach remainder {target:e} within m_max = {m_max}")]
    Convergence { target: f64, m_max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
