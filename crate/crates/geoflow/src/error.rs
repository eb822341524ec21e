use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoflowError {
    #[error("index {0} out of range for 4-dimensional phase space")]
    IndexOutOfRange(usize),

    #[error("projection onto the constraint surface did not converge after {iterations} iterations (|C1| = {c1:e}, |C2| = {c2:e})")]
    ProjectionFailure { iterations: usize, c1: f64, c2: f64 },

    #[error("semi-axes {0} and {1} coincide; the generic integral is not defined (use the case-specific combination)")]
    DegenerateAxes(usize, usize),

    #[error("symmetry tag {tag} is inconsistent with semi-axes {alphas:?}")]
    CaseMismatch { tag: String, alphas: [f64; 4] },

    #[error("invalid ellipsoid semi-axes: {0}")]
    InvalidAxes(String),

    #[error("step size underflow at t = {t}: the flow appears stiff (h = {h:e})")]
    Stiffness { t: f64, h: f64 },

    #[error("tolerance {0:e} outside the supported range [1e-14, 1e-4]")]
    InvalidTolerance(f64),

    #[error("rotation-block coordinate vanished with nonzero momentum j = {0}")]
    SingularPotential(f64),

    #[error("angle {0} lies on a chart boundary where the potential blows up")]
    ChartBoundary(f64),

    #[error("coordinate singularity: point lies on a coordinate plane, confocal chart undefined")]
    CoordinateSingularity,

    #[error("elliptic integral parameter out of domain: {0}")]
    EllipticDomain(f64),

    #[error("evaluation at a pole of the momentum polynomial (lambda = {0})")]
    PolynomialPole(f64),

    #[error("momenta ({0}, {1}) outside the admissible region")]
    OutsideDiagram(f64, f64),

    #[error("momenta lie on a coordinate axis; use the one-sided limits instead")]
    AxisLimit,

    #[error("zero momentum passed where j1 j2 != 0 is required")]
    ZeroMomentum,

    #[error("point is not critical: projected gradients have full rank (smallest singular value {0:e})")]
    NotCritical(f64),

    #[error("value ({0}, {1}) outside the closure of the bifurcation diagram")]
    OutOfRange(f64, f64),

    #[error("no separatrix exists: j^2 = {0} exceeds the tangency value {1}")]
    EmptySeparatrix(f64, f64),

    #[error("section curve sampling too coarse to classify; refine the resolution")]
    Resolution,

    #[error("operation {op} is not available for symmetry case {case}")]
    WrongCase { op: &'static str, case: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GeoflowError>;
