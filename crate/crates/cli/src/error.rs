use cone_spectra::cone::ConeError;
use cone_spectra::deficiency::DeficiencyError;
use cone_spectra::quad::QuadError;
use cone_spectra::sal::SalError;
use cone_spectra::specfun::SpecfunError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    /// Numerical failures surface through several wrapped error types, so
    /// anything whose message reports a convergence failure maps to exit 3.
    fn numeric(msg: String) -> Self {
        if msg.contains("converge") {
            CliError::NonConvergence(msg)
        } else {
            CliError::Other(msg)
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Invalid(_) | ConeError::Missing(_) => CliError::Schema(e.to_string()),
            ConeError::Specfun(SpecfunError::Domain(_)) => CliError::Schema(e.to_string()),
            ConeError::Sal(SalError::OrderTooHigh(_)) => CliError::Schema(e.to_string()),
            ConeError::Quad(QuadError::NonConvergence { .. }) => CliError::NonConvergence(e.to_string()),
            _ => CliError::numeric(e.to_string()),
        }
    }
}

impl From<SalError> for CliError {
    fn from(e: SalError) -> Self {
        match e {
            SalError::OrderTooHigh(_) => CliError::Schema(e.to_string()),
            _ => CliError::numeric(e.to_string()),
        }
    }
}

impl From<DeficiencyError> for CliError {
    fn from(e: DeficiencyError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}
