//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bounding box too small: the sublevel set reaches the frame margin")]
    BoxTooSmall,
    #[error("basepoint ({x}, {y}) is not inside the sublevel set")]
    BasepointOutside { x: f64, y: f64 },
    #[error("degenerate level not resolvable within {steps} perturbation steps")]
    DegenerateLevel { steps: u32 },
    #[error("interior nodes do not form a single 4-connected component")]
    DisconnectedInterior,
    #[error("domain has a feature narrower than 3h")]
    NarrowNeck,
    #[error("mask touches the grid frame; a one-node margin is required")]
    FrameMargin,
    #[error("disk (center ({x}, {y}), radius {r}) is not contained in the domain")]
    DiskNotContained { x: f64, y: f64, r: f64 },
    #[error("evaluation point lies outside the open unit disk")]
    OutsideDisk,
    #[error("direct solver limited to {max} unknowns, got {n}")]
    DirectSizeExceeded { n: usize, max: usize },
    #[error("singular linear system (zero pivot at row {row})")]
    SingularSystem { row: usize },
    #[error("solver did not converge within {sweeps} sweeps (last change {last_change:e})")]
    SolverDiverged { sweeps: usize, last_change: f64 },
    #[error("monotonicity violated: a node dropped by {drop:e} (slack {slack:e})")]
    MonotonicityViolated { drop: f64, slack: f64 },
    #[error("seed boundary trace exceeds the boundary data by {excess:e}")]
    SeedIncompatible { excess: f64 },
    #[error("seed is not subharmonic: mean-value deficit {deficit:e}")]
    SeedNotSubharmonic { deficit: f64 },
    #[error("barrier window (Ba, B - log 2) is empty: measured a = {a}")]
    BarrierWindowEmpty { a: f64 },
    #[error("sandwich bound violated by {excess:e} (slack {slack:e})")]
    SandwichViolated { excess: f64, slack: f64 },
    #[error("pole clearance below {need_cells} grid cells")]
    PoleClearance { need_cells: f64 },
    #[error("path clearance below {need_cells} grid cells")]
    PathClearance { need_cells: f64 },
    #[error("path vertices ({x0}, {y0}) -> ({x1}, {y1}) farther apart than one cell diagonal")]
    PathStride { x0: f64, y0: f64, x1: f64, y1: f64 },
    #[error("conjugate period {period} is not an integer multiple of -2pi within {tol}")]
    PeriodMismatch { period: f64, tol: f64 },
    #[error("contour passes within {dist:e} of a zero of phi - w")]
    NearZeroOnContour { dist: f64 },
    #[error("winding residual {residual} exceeds 0.1")]
    WindingResidual { residual: f64 },
    #[error("degenerate pole derivative |d| = {magnitude:e}")]
    DegeneratePole { magnitude: f64 },
    #[error("exhaustion levels must be strictly increasing")]
    LevelsNotIncreasing,
    #[error("exhaustion nesting violated at level index {index}")]
    NestingViolated { index: usize },
    #[error("conformal radius decreased by {drop:e} at level index {index}")]
    RadiusNotMonotone { index: usize, drop: f64 },
    #[error("point ({x}, {y}) has no fully interior interpolation cell")]
    InterpOutside { x: f64, y: f64 },
    #[error("oracle admission check failed: {0}")]
    OracleAdmission(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code class: 2 for configuration/contract errors, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            SolverDiverged { .. }
            | MonotonicityViolated { .. }
            | SandwichViolated { .. }
            | PeriodMismatch { .. }
            | NearZeroOnContour { .. }
            | WindingResidual { .. }
            | DegeneratePole { .. }
            | RadiusNotMonotone { .. }
            | SingularSystem { .. }
            | OracleAdmission(_) => 3,
            _ => 2,
        }
    }
}
