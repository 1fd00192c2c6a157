use thiserror::Error;

/// Failure modes shared by every wavelab operation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {0} is not a power of two")]
    NonPowerOfTwo(usize),
    #[error("grid needs at least 8 samples per axis, got {0}")]
    TooFewSamples(usize),
    #[error("degenerate interval [{0}, {1}]: upper bound must exceed lower bound")]
    DegenerateInterval(f64, f64),
    #[error("packet width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("mode index {mode} outside [-{half}, {half})")]
    ModeOutOfRange { mode: i64, half: i64 },
    #[error("wave function has zero norm")]
    ZeroFunction,
    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("wavenumber must be nonzero")]
    ZeroWavenumber,
    #[error("need at least {needed} distinct nonzero wavenumbers, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("bad potential spec: {0}")]
    BadPotentialSpec(String),
    #[error("potential kind `{0}` requires a 2D grid")]
    KindRequires2D(&'static str),
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("operation is only defined on 1D grids")]
    Only1D,
    #[error("operation is only defined on 2D grids")]
    Only2D,
    #[error("time step must be finite and non-negative, got {0}")]
    BadTimeStep(f64),
    #[error("step count must be at least 1")]
    NoSteps,
    #[error("snapshot_every = {every} does not divide steps = {steps}")]
    SnapshotScheduleInvalid { every: usize, steps: usize },
    #[error("packet never reached the screen: peak probability beyond it was {0:e}")]
    ScreenNotReached(f64),
    #[error("interval [{a}, {b}] leaves the grid span [{min}, {max}]")]
    IntervalOutOfGrid { a: f64, b: f64, min: f64, max: f64 },
    #[error("interval is reversed: a = {a} > b = {b}")]
    ReversedInterval { a: f64, b: f64 },
    #[error("momentum {p} is not hbar * 2 pi j / L for an integer j in the grid ladder")]
    CommensurabilityError { p: f64 },
    #[error("momentum must be nonzero")]
    ZeroMomentum,
    #[error("wavelength must be positive, got {0}")]
    NonPositiveWavelength(f64),
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("quantum number must be at least 1")]
    NonPositiveQuantumNumber,
    #[error("operation needs SI electromagnetic constants")]
    NaturalUnitsUnsupported,
    #[error("need 1 <= lower < upper, got lower = {lower}, upper = {upper}")]
    BadQuantumNumbers { lower: u64, upper: u64 },
    #[error("work function must be positive, got {0}")]
    NonPositiveWorkFunction(f64),
    #[error("expectation value {re} + {im}i is not real within {tol:e}")]
    NotReal { re: f64, im: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
