use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("grid too coarse: {0}")]
    Resolution(String),
    #[error("probe support B(y, rho/delta) leaves [-L/2, L/2]")]
    ProbeSupport,
    #[error("symbol value not finite at xi = {0}")]
    SymbolNotFinite(f64),
    #[error("weight exceeds 1e300 on the support of f")]
    WeightOverflow,
    #[error("eigenvalue iteration did not converge; residual {0:.3e}")]
    NoConvergence(f64),
    #[error("quadrature did not reach tolerance; achieved {0:.3e}")]
    Quadrature(f64),
    #[error("weight not accepted here: {0}")]
    UnsupportedWeight(String),
    #[error("convolution hypothesis fails at (x, y) = ({x}, {y}): {value} < 1")]
    HypothesisViolated { x: f64, y: f64, value: f64 },
    #[error("fat Cantor depth {0} exceeds the supported maximum 30")]
    DepthOverflow(u32),
    #[error("calibration residual {0:.3e} above 1e-4")]
    Calibration(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
