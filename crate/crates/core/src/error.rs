use thiserror::Error;

/// Errors produced across the library. Domain errors describe inputs the
/// underlying representation cannot handle; numerical errors describe a
/// computation that started but could not be completed to tolerance.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// alpha lies in Z + 1/2, where the Riemann-Hilbert representation of the
    /// tritronquee solution is indeterminate.
    #[error("alpha = {0} lies in Z + 1/2; the representation is indeterminate there")]
    HalfIntegerAlpha(String),

    /// p in iZ, where the jump data degenerates (no solution for p in iZ \ {0}).
    #[error("parameter p = {0} lies in iZ; the jump data degenerates")]
    DegenerateParameter(String),

    /// Asymptotic formula requested in a regime it does not cover.
    #[error("unsupported regime {regime} for {what}")]
    UnsupportedRegime { regime: String, what: String },

    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma pole at z = {0}")]
    GammaPole(String),

    #[error("seed point x0 = {0} is below the trusted series range (x0 >= 20 required)")]
    SeedQuality(f64),

    #[error("integration failure at x = {x}: {msg}")]
    IntegrationFailure { x: f64, msg: String },

    /// Reciprocal-variable slope at a detected pole is not a unit residue.
    #[error("inconsistent pole at x = {x}: |w'| deviates from 1 by {dev:.3e}")]
    InconsistentPole { x: f64, dev: f64 },

    #[error("configuration error: {0}")]
    Configuration(String),

    /// Collocation system is too ill-conditioned to trust (possible pole in y).
    #[error("near-non-solvable collocation system: condition estimate {0:.3e}")]
    NearNonSolvable(f64),

    /// The potential V(y) vanishes, so Q = V'/V has a pole.
    #[error("V(y) vanishes at y = {0}; Q is singular there")]
    ZeroOfV(f64),
}

impl Error {
    /// Exit-code category used by the CLI: 2 for domain exclusions, 1 for
    /// numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::HalfIntegerAlpha(_)
                | Error::DegenerateParameter(_)
                | Error::UnsupportedRegime { .. }
                | Error::Domain { .. }
                | Error::GammaPole(_)
                | Error::SeedQuality(_)
                | Error::Configuration(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
