use thiserror::Error;

/// Errors produced by the geometry pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid signature: index {s} exceeds dimension {m}")]
    InvalidSignature { m: usize, s: usize },

    /// A Gram–Schmidt pivot was (numerically) null. Carries the offending input index.
    #[error("null pivot at input vector {index}")]
    NullPivot { index: usize },

    #[error("input vector {index} is linearly dependent on its predecessors")]
    LinearlyDependent { index: usize },

    #[error("degenerate induced metric (|det g| = {det:e})")]
    DegenerateMetric { det: f64 },

    #[error("immersion is not a hypersurface of its sphere (n = {n}, m = {m})")]
    NotHypersurface { n: usize, m: usize },

    /// The fitted eigenvalue vanished while the Laplacian did not.
    #[error("no 1-type fit: fitted eigenvalue {lambda:e} is numerically zero")]
    NoOneTypeFit { lambda: f64, null_type: bool },

    #[error("degenerate samples: {0}")]
    DegenerateSamples(String),

    #[error("flat totally umbilical hypersurface: 1 + ε α̂² = {value:e}")]
    FlatUmbilical { value: f64 },

    #[error("totally geodesic hypersurface: constant-component decomposition is degenerate")]
    TotallyGeodesic,

    #[error("mean curvature vector is null at a sample point")]
    NullMeanCurvature,

    #[error("chart is singular near {0:?}")]
    DomainSingularity(Vec<f64>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("chart parse error on line {line}: {message}")]
    ChartParse { line: usize, message: String },

    #[error("unknown surface '{0}'")]
    UnknownSurface(String),

    #[error("null curve rejected: {0}")]
    NullCurveRejected(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl GeomError {
    /// Process exit code used by the command line tool.
    ///
    /// 2: configuration, 3: numeric degeneracy, 4: I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            GeomError::UnknownSurface(_)
            | GeomError::ChartParse { .. }
            | GeomError::InvalidParameter(_)
            | GeomError::InvalidSignature { .. }
            | GeomError::NullCurveRejected(_)
            | GeomError::NotHypersurface { .. }
            | GeomError::DimensionMismatch { .. } => 2,
            GeomError::Io(_) => 4,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::DimensionMismatch { .. } => "dimension_mismatch",
            GeomError::InvalidSignature { .. } => "invalid_signature",
            GeomError::NullPivot { .. } => "null_pivot",
            GeomError::LinearlyDependent { .. } => "linearly_dependent",
            GeomError::DegenerateMetric { .. } => "degenerate_metric",
            GeomError::NotHypersurface { .. } => "not_hypersurface",
            GeomError::NoOneTypeFit { .. } => "no_one_type_fit",
            GeomError::DegenerateSamples(_) => "degenerate_samples",
            GeomError::FlatUmbilical { .. } => "flat_umbilical",
            GeomError::TotallyGeodesic => "totally_geodesic",
            GeomError::NullMeanCurvature => "null_mean_curvature",
            GeomError::DomainSingularity(_) => "domain_singularity",
            GeomError::InvalidParameter(_) => "invalid_parameter",
            GeomError::ChartParse { .. } => "chart_parse",
            GeomError::UnknownSurface(_) => "unknown_surface",
            GeomError::NullCurveRejected(_) => "null_curve_rejected",
            GeomError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
