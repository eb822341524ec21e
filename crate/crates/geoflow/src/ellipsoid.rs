//! The constrained phase space of the geodesic flow on a 3-ellipsoid.
//!
//! The ellipsoid lives in R^4 with semi-axes squared `alphas`; phase points
//! carry ambient coordinates (x, y) restricted to the two constraint surfaces
//! C1 = sum x_i^2/alpha_i - 1 = 0 (the ellipsoid) and
//! C2 = sum x_i y_i/alpha_i = 0 (tangency). Both are Casimirs of the Dirac
//! bracket implemented here, so the flow never leaves the surface.

use crate::error::{GeoflowError, Result};

/// Default tolerance to which phase points must satisfy the constraints.
pub const EPS_CONSTRAINT: f64 = 1e-10;

/// Equality pattern of the semi-axes squared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryCase {
    /// All four semi-axes distinct.
    Generic,
    /// a0 = a1 < a2 = a3 (torus symmetry).
    C22,
    /// a0 < a1 < a2 = a3 (equal largest).
    C112,
    /// a0 = a1 < a2 < a3 (equal smallest).
    C211,
    /// a0 < a1 = a2 = a3 (rotation group on the upper triple).
    C13,
    /// a0 = a1 = a2 < a3 (rotation group on the lower triple).
    C31,
}

impl SymmetryCase {
    pub fn tag(self) -> &'static str {
        match self {
            SymmetryCase::Generic => "generic",
            SymmetryCase::C22 => "c22",
            SymmetryCase::C112 => "c112",
            SymmetryCase::C211 => "c211",
            SymmetryCase::C13 => "c13",
            SymmetryCase::C31 => "c31",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "generic" => Some(SymmetryCase::Generic),
            "c22" | "22" => Some(SymmetryCase::C22),
            "c112" | "112" => Some(SymmetryCase::C112),
            "c211" | "211" => Some(SymmetryCase::C211),
            "c13" | "13" => Some(SymmetryCase::C13),
            "c31" | "31" => Some(SymmetryCase::C31),
            _ => None,
        }
    }

    /// Number of distinct semi-axis values the case expects.
    pub fn distinct_count(self) -> usize {
        match self {
            SymmetryCase::Generic => 4,
            SymmetryCase::C22 => 2,
            SymmetryCase::C112 | SymmetryCase::C211 => 3,
            SymmetryCase::C13 | SymmetryCase::C31 => 2,
        }
    }

    /// Expand distinct values into the full non-decreasing 4-vector.
    pub fn expand(self, vals: &[f64]) -> Result<[f64; 4]> {
        if vals.len() != self.distinct_count() {
            return Err(GeoflowError::InvalidAxes(format!(
                "case {} expects {} distinct values, got {}",
                self.tag(),
                self.distinct_count(),
                vals.len()
            )));
        }
        Ok(match self {
            SymmetryCase::Generic => [vals[0], vals[1], vals[2], vals[3]],
            SymmetryCase::C22 => [vals[0], vals[0], vals[1], vals[1]],
            SymmetryCase::C112 => [vals[0], vals[1], vals[2], vals[2]],
            SymmetryCase::C211 => [vals[0], vals[0], vals[1], vals[2]],
            SymmetryCase::C13 => [vals[0], vals[1], vals[1], vals[1]],
            SymmetryCase::C31 => [vals[0], vals[0], vals[0], vals[1]],
        })
    }
}

/// Semi-axes squared with their symmetry tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidSpec {
    pub alphas: [f64; 4],
    pub case: SymmetryCase,
}

/// Tolerance used when checking that a case tag matches the axes pattern.
const AXIS_EQ_TOL: f64 = 1e-12;

fn eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= AXIS_EQ_TOL * (1.0 + a.abs())
}

impl EllipsoidSpec {
    pub fn new(alphas: [f64; 4], case: SymmetryCase) -> Result<Self> {
        if alphas.iter().any(|&a| a <= 0.0 || !a.is_finite()) {
            return Err(GeoflowError::InvalidAxes(format!(
                "semi-axes squared must be positive and finite, got {alphas:?}"
            )));
        }
        for i in 0..3 {
            if alphas[i] > alphas[i + 1] + AXIS_EQ_TOL {
                return Err(GeoflowError::InvalidAxes(format!(
                    "semi-axes squared must be non-decreasing, got {alphas:?}"
                )));
            }
        }
        let [a0, a1, a2, a3] = alphas;
        let pattern_ok = match case {
            SymmetryCase::Generic => !eq(a0, a1) && !eq(a1, a2) && !eq(a2, a3),
            SymmetryCase::C22 => eq(a0, a1) && !eq(a1, a2) && eq(a2, a3),
            SymmetryCase::C112 => !eq(a0, a1) && !eq(a1, a2) && eq(a2, a3),
            SymmetryCase::C211 => eq(a0, a1) && !eq(a1, a2) && !eq(a2, a3),
            SymmetryCase::C13 => !eq(a0, a1) && eq(a1, a2) && eq(a2, a3),
            SymmetryCase::C31 => eq(a0, a1) && eq(a1, a2) && !eq(a2, a3),
        };
        if !pattern_ok {
            return Err(GeoflowError::CaseMismatch {
                tag: case.tag().to_string(),
                alphas,
            });
        }
        Ok(Self { alphas, case })
    }

    /// Build from the case's distinct values, e.g. `c22` from `(a1, a2)`.
    pub fn from_distinct(case: SymmetryCase, vals: &[f64]) -> Result<Self> {
        Self::new(case.expand(vals)?, case)
    }

    /// The two distinct values of a c22 ellipsoid, `(a1, a2)`.
    pub fn c22_axes(&self) -> (f64, f64) {
        (self.alphas[0], self.alphas[2])
    }

    /// The triple-axis value for the c13/c31 rotation cases.
    pub fn triple_axis(&self) -> f64 {
        match self.case {
            SymmetryCase::C13 => self.alphas[1],
            SymmetryCase::C31 => self.alphas[0],
            _ => panic!("triple_axis only defined for c13/c31"),
        }
    }

    /// Indices of the three coordinates the rotation group acts on (c13/c31).
    pub fn triple_block(&self) -> [usize; 3] {
        match self.case {
            SymmetryCase::C13 => [1, 2, 3],
            SymmetryCase::C31 => [0, 1, 2],
            _ => panic!("triple_block only defined for c13/c31"),
        }
    }
}

/// Ambient position/momentum pair, normally constrained to C1 = C2 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: [f64; 4],
    pub y: [f64; 4],
}

impl PhasePoint {
    pub fn new(x: [f64; 4], y: [f64; 4]) -> Self {
        Self { x, y }
    }

    pub fn energy(&self) -> f64 {
        0.5 * self.y.iter().map(|y| y * y).sum::<f64>()
    }

    /// Max constraint violation at this point.
    pub fn constraint_residual(&self, spec: &EllipsoidSpec) -> f64 {
        let (c1, c2, _) = constraint_values(spec, self);
        c1.abs().max(c2.abs())
    }

    pub fn is_constrained(&self, spec: &EllipsoidSpec, eps: f64) -> bool {
        self.constraint_residual(spec) <= eps
    }

    /// Flatten to the 8-vector (x, y) used by the integrator.
    pub fn to_array(&self) -> [f64; 8] {
        let mut z = [0.0; 8];
        z[..4].copy_from_slice(&self.x);
        z[4..].copy_from_slice(&self.y);
        z
    }

    pub fn from_array(z: &[f64; 8]) -> Self {
        let mut x = [0.0; 4];
        let mut y = [0.0; 4];
        x.copy_from_slice(&z[..4]);
        y.copy_from_slice(&z[4..]);
        Self { x, y }
    }
}

/// Phase-space tangent vector at some base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub dx: [f64; 4],
    pub dy: [f64; 4],
}

/// Evaluate C1, C2 and the factor D = sum x_i^2/alpha_i^2.
///
/// Accepts unconstrained points; the projection routine relies on that.
pub fn constraint_values(spec: &EllipsoidSpec, p: &PhasePoint) -> (f64, f64, f64) {
    let a = &spec.alphas;
    let mut c1 = -1.0;
    let mut c2 = 0.0;
    let mut d = 0.0;
    for i in 0..4 {
        c1 += p.x[i] * p.x[i] / a[i];
        c2 += p.x[i] * p.y[i] / a[i];
        d += p.x[i] * p.x[i] / (a[i] * a[i]);
    }
    (c1, c2, d)
}

/// Which pair of coordinates a basis bracket refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    XX,
    XY,
    YY,
}

/// Closed-form Dirac bracket of two coordinate functions.
///
/// {x_i, x_k} = 0,
/// {x_i, y_k} = delta_ik - x_i x_k / (D a_i a_k),
/// {y_i, y_k} = -(x_i y_k - x_k y_i) / (D a_i a_k).
pub fn dirac_bracket_basis(
    spec: &EllipsoidSpec,
    p: &PhasePoint,
    kind: BracketKind,
    i: usize,
    k: usize,
) -> Result<f64> {
    if i >= 4 {
        return Err(GeoflowError::IndexOutOfRange(i));
    }
    if k >= 4 {
        return Err(GeoflowError::IndexOutOfRange(k));
    }
    let a = &spec.alphas;
    let (_, _, d) = constraint_values(spec, p);
    Ok(match kind {
        BracketKind::XX => 0.0,
        BracketKind::XY => {
            let delta = if i == k { 1.0 } else { 0.0 };
            delta - p.x[i] * p.x[k] / (d * a[i] * a[k])
        }
        BracketKind::YY => -(p.x[i] * p.y[k] - p.x[k] * p.y[i]) / (d * a[i] * a[k]),
    })
}

/// The Hamiltonian vector field of H = |y|^2/2 under the Dirac bracket.
///
/// Closed form: dx_i = y_i - x_i C2/(D a_i),
/// dy_i = (-x_i W + y_i C2)/(D a_i) with W = sum y_k^2/a_k.
/// Both expressions annihilate (grad C1, grad C2) identically, so the
/// field is tangent to the constraint surface even slightly off it.
pub fn hamiltonian_vector_field(spec: &EllipsoidSpec, p: &PhasePoint) -> TangentVector {
    let a = &spec.alphas;
    let (_, c2, d) = constraint_values(spec, p);
    let w: f64 = (0..4).map(|k| p.y[k] * p.y[k] / a[k]).sum();
    let mut dx = [0.0; 4];
    let mut dy = [0.0; 4];
    for i in 0..4 {
        dx[i] = p.y[i] - p.x[i] * c2 / (d * a[i]);
        dy[i] = (-p.x[i] * w + p.y[i] * c2) / (d * a[i]);
    }
    TangentVector { dx, dy }
}

/// Project an unconstrained point onto C1 = C2 = 0.
///
/// Newton iterations along grad C1 bring x onto the ellipsoid; C2 is linear
/// in y so a single linear projection per sweep removes it exactly.
pub fn project(spec: &EllipsoidSpec, p_raw: &PhasePoint, eps: f64) -> Result<PhasePoint> {
    let a = &spec.alphas;
    let mut p = *p_raw;
    const MAX_ITER: usize = 50;
    for _ in 0..MAX_ITER {
        let (c1, c2, _) = constraint_values(spec, &p);
        if c1.abs() <= eps && c2.abs() <= eps {
            return Ok(p);
        }
        // x-step: Newton along the constraint gradient.
        if c1.abs() > eps {
            let mut g2 = 0.0;
            for i in 0..4 {
                let gi = 2.0 * p.x[i] / a[i];
                g2 += gi * gi;
            }
            let lam = c1 / g2;
            for i in 0..4 {
                p.x[i] -= lam * 2.0 * p.x[i] / a[i];
            }
        }
        // y-step: remove the component of y along grad_y C2 = x/alpha.
        let (_, c2, _) = constraint_values(spec, &p);
        let mut n2 = 0.0;
        for i in 0..4 {
            let ni = p.x[i] / a[i];
            n2 += ni * ni;
        }
        if n2 > 0.0 {
            let mu = c2 / n2;
            for i in 0..4 {
                p.y[i] -= mu * p.x[i] / a[i];
            }
        }
    }
    let (c1, c2, _) = constraint_values(spec, &p);
    if c1.abs() <= eps && c2.abs() <= eps {
        Ok(p)
    } else {
        Err(GeoflowError::ProjectionFailure {
            iterations: MAX_ITER,
            c1,
            c2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_constrained;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c22_spec() -> EllipsoidSpec {
        EllipsoidSpec::from_distinct(SymmetryCase::C22, &[1.0, 2.0]).unwrap()
    }

    #[test]
    fn constraint_values_examples() {
        let spec = c22_spec();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        let (c1, c2, d) = constraint_values(&spec, &p);
        assert_eq!((c1, c2, d), (0.0, 0.0, 1.0));

        let spec = EllipsoidSpec::from_distinct(SymmetryCase::C112, &[1.0, 2.0, 3.0]).unwrap();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
        let (c1, c2, d) = constraint_values(&spec, &p);
        assert_eq!((c1, c2, d), (0.0, 0.0, 1.0));

        let spec = c22_spec();
        let p = PhasePoint::new([0.0, 0.0, 2f64.sqrt(), 0.0], [0.0, 1.0, 0.0, 0.0]);
        let (c1, c2, d) = constraint_values(&spec, &p);
        assert!(c1.abs() < 1e-15);
        assert_eq!(c2, 0.0);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn basis_brackets_at_pole() {
        let spec = c22_spec();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(
            dirac_bracket_basis(&spec, &p, BracketKind::XX, 2, 3).unwrap(),
            0.0
        );
        // {x0, y0} = 1 - x0^2/(D a0^2) = 0 at the pole.
        assert_eq!(
            dirac_bracket_basis(&spec, &p, BracketKind::XY, 0, 0).unwrap(),
            0.0
        );
        assert_eq!(
            dirac_bracket_basis(&spec, &p, BracketKind::XY, 1, 1).unwrap(),
            1.0
        );
        assert!(dirac_bracket_basis(&spec, &p, BracketKind::XY, 4, 0).is_err());
    }

    #[test]
    fn vector_field_examples() {
        let spec = c22_spec();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
        let v = hamiltonian_vector_field(&spec, &p);
        for i in 0..4 {
            let expect = if i == 1 { 1.0 } else { 0.0 };
            assert!((v.dx[i] - expect).abs() < 1e-15, "dx[{i}] = {}", v.dx[i]);
        }
        // y = 0 freezes the flow.
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0; 4]);
        let v = hamiltonian_vector_field(&spec, &p);
        assert!(v.dx.iter().chain(v.dy.iter()).all(|&c| c == 0.0));
    }

    #[test]
    fn vector_field_is_tangent() {
        let spec = c22_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = sample_constrained(&spec, &mut rng);
            let v = hamiltonian_vector_field(&spec, &p);
            let a = &spec.alphas;
            // dC1/dt and dC2/dt along the field.
            let dc1: f64 = (0..4).map(|i| 2.0 * p.x[i] * v.dx[i] / a[i]).sum();
            let dc2: f64 = (0..4)
                .map(|i| (v.dx[i] * p.y[i] + p.x[i] * v.dy[i]) / a[i])
                .sum();
            assert!(dc1.abs() < 1e-12, "dC1/dt = {dc1:e}");
            assert!(dc2.abs() < 1e-12, "dC2/dt = {dc2:e}");
        }
    }

    #[test]
    fn projection_fixed_point_and_newton() {
        let spec = c22_spec();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        let q = project(&spec, &p, EPS_CONSTRAINT).unwrap();
        assert_eq!(p, q);

        let p = PhasePoint::new([1.0 + 1e-6, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        let q = project(&spec, &p, EPS_CONSTRAINT).unwrap();
        let (c1, _, _) = constraint_values(&spec, &q);
        assert!(c1.abs() < 1e-10);
        assert!((q.x[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn projection_recovers_perturbed_points() {
        let spec = c22_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = sample_constrained(&spec, &mut rng);
            let mut raw = p;
            for i in 0..4 {
                raw.x[i] += 1e-4 * ((i as f64 + 1.0) * 0.37).sin();
                raw.y[i] += 1e-4 * ((i as f64 + 2.0) * 0.71).cos();
            }
            let q = project(&spec, &raw, EPS_CONSTRAINT).unwrap();
            assert!(q.constraint_residual(&spec) < 1e-10);
            let dist: f64 = (0..4)
                .map(|i| (q.x[i] - p.x[i]).powi(2) + (q.y[i] - p.y[i]).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(dist < 1e-3, "projection moved too far: {dist:e}");
        }
    }

    #[test]
    fn case_validation() {
        assert!(EllipsoidSpec::new([1.0, 1.0, 2.0, 2.0], SymmetryCase::C22).is_ok());
        assert!(EllipsoidSpec::new([1.0, 1.0, 2.0, 3.0], SymmetryCase::C22).is_err());
        assert!(EllipsoidSpec::new([1.0, 2.0, 3.0, 3.0], SymmetryCase::C112).is_ok());
        assert!(EllipsoidSpec::new([-1.0, 1.0, 2.0, 2.0], SymmetryCase::C22).is_err());
        assert!(EllipsoidSpec::new([2.0, 1.0, 3.0, 4.0], SymmetryCase::Generic).is_err());
    }
}
