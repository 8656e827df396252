use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the core operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Seed dimension below the smallest meaningful model (N = 2).
    #[error("invalid dimension N = {0}, need N >= 2")]
    InvalidDimension(usize),

    /// Matrix/vector operands of incompatible size.
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    /// Reciprocal of a jet whose value vanishes at the base point.
    #[error("division by zero at base point")]
    DivisionByZeroAtBasePoint,

    /// A field vector vanishes at the base point (common root of the seed).
    #[error("field vector vanishes at the base point")]
    ZeroVector,

    /// The ladder collapsed before reaching the top rung.
    #[error("degenerate seed: ladder collapses at rung {rung}")]
    DegenerateSeed { rung: usize },

    /// The 0/0 case of the recurrence operators at a ladder end.
    #[error("ladder end reached at rung {rung}: recurrence denominator vanishes")]
    LadderEnd { rung: usize },

    /// A matrix fails the rank-1 projector invariants.
    #[error("matrix is not a rank-1 projector (residual {residual:.3e})")]
    InvalidProjector { residual: f64 },

    /// Spectral-parameter pole or singular wave function.
    #[error("spectral pole at lambda = {lambda}")]
    SpectralPole { lambda: Complex64 },

    /// Rung index outside 0..N-1 or a gap in a rung sequence.
    #[error("rung {rung} out of range for N = {dim}")]
    Rung { rung: usize, dim: usize },

    /// Operation expected a different wave-sample kind.
    #[error("wave sample has the wrong kind for this operation")]
    WaveKind,

    /// A surface does not reproduce a valid projector.
    #[error("surface is inconsistent: reconstructed matrix is not a projector")]
    InconsistentSurface,

    /// Induced metric too small to divide by.
    #[error("degenerate metric: g12 = {g12:.3e} at the sample point")]
    DegenerateMetric { g12: f64 },

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: partial value {partial:.6e}, error estimate {estimate:.3e}")]
    Quadrature { partial: f64, estimate: f64 },

    /// A quantity that must be an integer missed the snap tolerance.
    #[error("invariant {value:.8} is not within snap tolerance of an integer")]
    IntegerSnap { value: f64 },
}
