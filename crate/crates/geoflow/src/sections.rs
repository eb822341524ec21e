//! Poincare sections of the singly symmetric reduced flow and the
//! classification of the singular fibers they reveal.
//!
//! The reduced system with one rotational momentum j has two degrees of
//! freedom. The section plane is the zero set of the distinguished
//! coordinate, taken with positive velocity, and is charted by an angle phi
//! on the remaining ellipse and its conjugate momentum.

use crate::ellipsoid::{EllipsoidSpec, PhasePoint, SymmetryCase};
use crate::error::{GeoflowError, Result};
use crate::integrate::event_crossings;

/// Shape of the singular level set seen in the section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    /// Figure eight: two lobes joined at one hyperbolic crossing.
    B,
    /// Two curves joined at two hyperbolic crossings, exchanged by the
    /// residual reflection symmetry.
    C2,
    /// The level set meets the section in isolated points.
    Point,
    /// A regular oval; the level is not critical.
    RegularOval,
}

/// Image of an atom under the residual reflection quotient.
pub fn quotient_atom(atom: Atom) -> Atom {
    match atom {
        Atom::C2 => Atom::B,
        other => other,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SectionParams {
    pub axes: [f64; 3],
    pub h: f64,
    pub j: f64,
}

/// A sampled curve in the section plane.
#[derive(Debug, Clone)]
pub struct SectionCurve {
    pub params: SectionParams,
    /// (phi, p_phi) pairs tracing the curve.
    pub samples: Vec<[f64; 2]>,
}

fn tangency_j_sq(axes: &[f64; 3], h: f64) -> f64 {
    let [a0, a1, a2] = *axes;
    2.0 * h * a2 * (a2 - a1) / (a2 - a0)
}

/// Squared section momentum of the critical level through the hyperbolic
/// orbit, as a function of the section angle.
pub fn separatrix_momentum_sq(axes: &[f64; 3], h: f64, j: f64, phi: f64) -> f64 {
    let [a0, a1, a2] = *axes;
    let (s, c) = phi.sin_cos();
    let d = a1 * s * s + a2 * c * c;
    let radial = if j == 0.0 {
        2.0 * h * a2 / (a2 - a0)
    } else {
        2.0 * h * a2 / (a2 - a0) - j * j / ((a2 - a1) * s * s)
    };
    radial * (a2 - a0) * (a2 - a1) * d * c * c / (a2 * (d - a0))
}

/// Sample the section of the critical level set with `n` points per
/// momentum branch.
pub fn analytic_section_curve(
    axes: &[f64; 3],
    h: f64,
    j: f64,
    n: usize,
) -> Result<SectionCurve> {
    let [a0, a1, a2] = *axes;
    if !(a0 < a1 && a1 < a2) {
        return Err(GeoflowError::InvalidAxes(format!(
            "reduced semi-axes {axes:?} must be strictly increasing"
        )));
    }
    let jt_sq = tangency_j_sq(axes, h);
    let params = SectionParams { axes: *axes, h, j };
    if j * j > jt_sq * (1.0 + 1e-12) {
        return Err(GeoflowError::EmptySeparatrix(j * j, jt_sq));
    }
    if j * j >= jt_sq * (1.0 - 1e-12) {
        return Ok(SectionCurve {
            params,
            samples: vec![[std::f64::consts::FRAC_PI_2, 0.0]],
        });
    }
    let mut samples = Vec::with_capacity(2 * n);
    if j == 0.0 {
        // no centrifugal barrier: the curve wraps the whole angle circle
        for k in 0..n {
            let phi = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let p_sq = separatrix_momentum_sq(axes, h, j, phi).max(0.0);
            samples.push([phi, p_sq.sqrt()]);
        }
        for k in 0..n {
            let phi = std::f64::consts::PI - 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let p_sq = separatrix_momentum_sq(axes, h, j, phi).max(0.0);
            samples.push([phi, -p_sq.sqrt()]);
        }
    } else {
        // the curve lives where the radial barrier admits real momentum
        let s_min_sq = j * j * (a2 - a0) / (2.0 * h * a2 * (a2 - a1));
        let phi_min = s_min_sq.sqrt().min(1.0).asin();
        for k in 0..n {
            let phi = phi_min
                + (std::f64::consts::PI - 2.0 * phi_min) * k as f64 / (n - 1) as f64;
            let p_sq = separatrix_momentum_sq(axes, h, j, phi).max(0.0);
            samples.push([phi, p_sq.sqrt()]);
        }
        for k in 0..n {
            let phi = std::f64::consts::PI
                - phi_min
                - (std::f64::consts::PI - 2.0 * phi_min) * k as f64 / (n - 1) as f64;
            let p_sq = separatrix_momentum_sq(axes, h, j, phi).max(0.0);
            samples.push([phi, -p_sq.sqrt()]);
        }
    }
    Ok(SectionCurve { params, samples })
}

/// Identify the atom traced by a section curve.
pub fn classify_atom(curve: &SectionCurve) -> Result<Atom> {
    let samples = &curve.samples;
    if samples.len() == 1 {
        return Ok(Atom::Point);
    }
    if samples.len() < 16 {
        return Err(GeoflowError::Resolution);
    }
    let p_max = samples.iter().map(|s| s[1].abs()).fold(0.0f64, f64::max);
    let phi_lo = samples.iter().map(|s| s[0]).fold(f64::INFINITY, f64::min);
    let phi_hi = samples.iter().map(|s| s[0]).fold(f64::NEG_INFINITY, f64::max);
    if p_max < 1e-9 && phi_hi - phi_lo < 1e-9 {
        return Ok(Atom::Point);
    }
    // hyperbolic crossings are interior zeros of the momentum branch,
    // seen on a finite grid as local minima dipping to the resolution
    // floor; turning points at the ends of the angular range do not count
    let mut branch: Vec<[f64; 2]> = samples.iter().filter(|s| s[1] >= 0.0).copied().collect();
    branch.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    if branch.len() < 8 {
        return Err(GeoflowError::Resolution);
    }
    let margin = 4.0 * (phi_hi - phi_lo) / branch.len() as f64;
    let floor = p_max * 20.0 / branch.len() as f64 + 1e-9;
    let mut crossings = 0usize;
    for w in branch.windows(3) {
        let ([_, pl], [phi, p], [_, pr]) = (w[0], w[1], w[2]);
        let interior = phi > phi_lo + margin && phi < phi_hi - margin;
        if interior && p <= pl && p < pr && p < floor {
            crossings += 1;
        }
    }
    match crossings {
        0 => Ok(Atom::RegularOval),
        1 => Ok(Atom::B),
        2 => Ok(Atom::C2),
        _ => Err(GeoflowError::Resolution),
    }
}

/// Lift a section point to the constrained phase space, taking the branch
/// with positive velocity through the section.
pub fn lift_section_point(
    spec: &EllipsoidSpec,
    h: f64,
    j: f64,
    phi: f64,
    p_phi: f64,
) -> Result<PhasePoint> {
    if spec.case != SymmetryCase::C112 {
        return Err(GeoflowError::WrongCase {
            op: "lift_section_point",
            case: spec.case.tag().to_string(),
        });
    }
    let [a0, a1, a2, _] = spec.alphas;
    let (s, c) = phi.sin_cos();
    let (xi1, xi2) = (a1.sqrt() * c, a2.sqrt() * s);
    if j != 0.0 && xi2.abs() < 1e-12 {
        return Err(GeoflowError::SingularPotential(j));
    }
    // eta1, eta2 from the section momentum and the tangency constraint
    let det = -(a1 * s * s + a2 * c * c) / (a1 * a2).sqrt();
    let eta1 = (p_phi * s / a2.sqrt()) / det;
    let eta2 = (-p_phi * c / a1.sqrt()) / det;
    let centrifugal = if j == 0.0 { 0.0 } else { j * j / (xi2 * xi2) };
    let eta0_sq = 2.0 * h - centrifugal - eta1 * eta1 - eta2 * eta2;
    if eta0_sq < -1e-10 * (1.0 + h) {
        return Err(GeoflowError::OutsideDiagram(phi, p_phi));
    }
    let eta0 = eta0_sq.max(0.0).sqrt();
    let y3 = if j == 0.0 { 0.0 } else { j / xi2 };
    let p = PhasePoint::new([0.0, xi1, xi2, 0.0], [eta0, eta1, eta2, y3]);
    debug_assert!((p.energy() - h).abs() < 1e-9 * (1.0 + h));
    let _ = a0;
    Ok(p)
}

/// Section coordinates of a constrained phase point with x0 = 0.
pub fn section_coordinates(spec: &EllipsoidSpec, p: &PhasePoint) -> Result<[f64; 2]> {
    if spec.case != SymmetryCase::C112 {
        return Err(GeoflowError::WrongCase {
            op: "section_coordinates",
            case: spec.case.tag().to_string(),
        });
    }
    let [_, a1, a2, _] = spec.alphas;
    let xi1 = p.x[1];
    let xi2 = (p.x[2] * p.x[2] + p.x[3] * p.x[3]).sqrt();
    let phi = (xi2 / a2.sqrt()).atan2(xi1 / a1.sqrt());
    if xi2 < 1e-12 {
        return Err(GeoflowError::CoordinateSingularity);
    }
    let eta1 = p.y[1];
    let eta2 = (p.x[2] * p.y[2] + p.x[3] * p.y[3]) / xi2;
    let (s, c) = phi.sin_cos();
    let p_phi = -a1.sqrt() * s * eta1 + a2.sqrt() * c * eta2;
    Ok([phi, p_phi])
}

/// Integrate from a section point and collect the successive returns to
/// the section plane.
pub fn numeric_section(
    spec: &EllipsoidSpec,
    h: f64,
    j: f64,
    phi0: f64,
    p_phi0: f64,
    t_max: f64,
    tol: f64,
    max_crossings: usize,
) -> Result<Vec<[f64; 2]>> {
    let p0 = lift_section_point(spec, h, j, phi0, p_phi0)?;
    let crossings = event_crossings(
        spec,
        &p0,
        t_max,
        tol,
        max_crossings,
        |p| p.x[0],
        |p| p.y[0] > 1e-8,
    )?;
    crossings
        .iter()
        .map(|(_, p)| section_coordinates(spec, p))
        .collect()
}
