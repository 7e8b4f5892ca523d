use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),

    #[error("invariant violation{}: {message}", fmt_index(.index))]
    Invariant {
        index: Option<usize>,
        message: String,
    },

    #[error("element is not loxodromic (trace {trace}){}", fmt_word(.word))]
    NotLoxodromic {
        word: Option<String>,
        trace: Complex64,
    },

    #[error("invalid group presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("unknown generator symbol '{0}'")]
    UnknownSymbol(char),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("s = {s} lies outside the convergence region (Re(s) must exceed {abscissa})")]
    ConvergenceRegion { s: Complex64, abscissa: f64 },

    #[error("sigma is Weyl-invariant (case (a)); the requested quantity needs case (b)")]
    CaseA,

    #[error("class {index} carries no word but the twist is not trivial")]
    MissingWord { index: usize },

    #[error("manifold volume is required but missing")]
    MissingVolume,

    #[error("quadrature did not reach tolerance {tolerance:e} (error estimate {estimate:e})")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("degenerate resolvent shifts: {0}")]
    DegenerateShifts(String),

    #[error("s = {s} is within the exclusion radius of the singularity at {location}")]
    AtSingularity { s: Complex64, location: Complex64 },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error(
        "parity violation at lambda = {lambda}: super multiplicity {super_multiplicity} \
         and Laplace multiplicity {laplace_multiplicity} differ mod 2"
    )]
    ParityViolation {
        lambda: Complex64,
        super_multiplicity: i64,
        laplace_multiplicity: u32,
    },

    #[error("integration path passes through the singularity at {location}")]
    PathThroughSingularity { location: Complex64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_index(index: &Option<usize>) -> String {
    index.map(|i| format!(" at class {i}")).unwrap_or_default()
}

fn fmt_word(word: &Option<String>) -> String {
    word.as_ref()
        .map(|w| format!(" for word \"{w}\""))
        .unwrap_or_default()
}

impl Error {
    pub(crate) fn invariant(index: Option<usize>, message: impl Into<String>) -> Self {
        Error::Invariant {
            index,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
