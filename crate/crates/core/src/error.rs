use thiserror::Error;

pub type Result<T> = std::result::Result<T, QiError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QiError {
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unstable cooperativities: gamma_o = {gamma_o} must be below 1 + gamma_w = {}", 1.0 + gamma_w)]
    Unstable { gamma_o: f64, gamma_w: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("low-reflectivity regime violated: sqrt(n_ci) = {sqrt_n_ci} exceeds n_cs = {n_cs}")]
    Regime { sqrt_n_ci: f64, n_cs: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("infinite SNR: both variances vanish while the means differ")]
    InfiniteSnr,

    #[error("invalid bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("non-physical two-mode moments: {0}")]
    NonPhysical(String),
}

pub(crate) fn require(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(QiError::Domain {
            name,
            value,
            reason,
        })
    }
}
