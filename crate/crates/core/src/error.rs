use thiserror::Error;

/// Errors raised by curve construction, caustic evaluation and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid angle interval [{lo}, {hi}] with {n_samples} samples")]
    InvalidInterval { lo: f64, hi: f64, n_samples: usize },

    #[error("interval [{lo}, {hi}] leaves the curve domain [{domain_lo}, {domain_hi}]")]
    OutsideDomain {
        lo: f64,
        hi: f64,
        domain_lo: f64,
        domain_hi: f64,
    },

    #[error("radius of curvature has a pole at theta = {theta} inside the requested interval")]
    Pole { theta: f64 },

    #[error("radius of curvature is not finite at theta = {theta}")]
    Evaluation { theta: f64 },

    #[error("degenerate sampling: {0}")]
    DegenerateSampling(String),

    #[error("caustic flattens at theta = {theta} (phi' = 1)")]
    FlatCaustic { theta: f64 },

    #[error("curve has a cusp at theta = {theta} (R = 0)")]
    Cusp { theta: f64 },

    #[error("caustic point is at infinity at theta = {theta}")]
    CausticAtInfinity { theta: f64 },

    #[error("argument {argument} (from theta = {theta}) leaves the curve domain")]
    ArgumentOutsideDomain { theta: f64, argument: f64 },

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("real Lambert branch {requested} unavailable; available real branches: {available:?}")]
    BranchUnavailable { requested: i64, available: Vec<i64> },

    #[error("Lambert W has a pole at z = 0 on branch {branch}")]
    LambertPole { branch: i64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("recursion resonance at n = {n}: denominator vanishes, supply the secondary coefficient")]
    Resonance { n: i64 },

    #[error("continuation to theta = {theta} needs jet order {required}, configured {configured}; raise jet_order")]
    Depth {
        theta: f64,
        required: usize,
        configured: usize,
    },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Validation errors map to exit status 2 in the CLI, everything numeric to 3.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInterval { .. }
                | Error::OutsideDomain { .. }
                | Error::InvalidParameter(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Shape(_)
                | Error::DegenerateCurve(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
