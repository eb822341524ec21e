//! Symmetry reduction: rotation-plane invariants, reduced coordinates and
//! Hamiltonians for each symmetric case, and the singular-reduction
//! relations cutting out the reduced phase spaces.

use crate::ellipsoid::{EllipsoidSpec, PhasePoint, SymmetryCase};
use crate::error::{GeoflowError, Result};

/// Polynomial invariants of one rotation plane (or of the SO(3) block,
/// where `pi4` is absent and the relation closes with j^2 instead).
#[derive(Debug, Clone, Copy)]
pub struct InvariantBlock {
    pub pi1: f64,
    pub pi2: f64,
    pub pi3: f64,
    pub pi4: Option<f64>,
}

impl InvariantBlock {
    fn from_plane(p: &PhasePoint, a: usize, b: usize) -> Self {
        InvariantBlock {
            pi1: p.x[a] * p.x[a] + p.x[b] * p.x[b],
            pi2: p.y[a] * p.y[a] + p.y[b] * p.y[b],
            pi3: p.x[a] * p.y[a] + p.x[b] * p.y[b],
            pi4: Some(p.x[a] * p.y[b] - p.x[b] * p.y[a]),
        }
    }

    fn from_triple(p: &PhasePoint, idx: [usize; 3]) -> Self {
        let mut b = InvariantBlock { pi1: 0.0, pi2: 0.0, pi3: 0.0, pi4: None };
        for &i in &idx {
            b.pi1 += p.x[i] * p.x[i];
            b.pi2 += p.y[i] * p.y[i];
            b.pi3 += p.x[i] * p.y[i];
        }
        b
    }

    /// Residual of pi1 pi2 - pi3^2 - pi4^2 = 0 (SO(2) planes) or of
    /// pi1 pi2 - pi3^2 = j^2 (SO(3) block, pass the momentum).
    pub fn relation_residual(&self, j: f64) -> f64 {
        let m2 = match self.pi4 {
            Some(pi4) => pi4 * pi4,
            None => j * j,
        };
        self.pi1 * self.pi2 - self.pi3 * self.pi3 - m2
    }
}

/// The invariant blocks of the group action for the case of `spec`.
pub fn invariants(spec: &EllipsoidSpec, p: &PhasePoint) -> Vec<InvariantBlock> {
    match spec.case {
        SymmetryCase::Generic => vec![],
        SymmetryCase::C22 => vec![
            InvariantBlock::from_plane(p, 0, 1),
            InvariantBlock::from_plane(p, 2, 3),
        ],
        SymmetryCase::C112 => vec![InvariantBlock::from_plane(p, 2, 3)],
        SymmetryCase::C211 => vec![InvariantBlock::from_plane(p, 0, 1)],
        SymmetryCase::C13 | SymmetryCase::C31 => {
            vec![InvariantBlock::from_triple(p, spec.triple_block())]
        }
    }
}

/// Point of the reduced system. Coordinates live on the reduced
/// configuration (circle or 2-ellipsoid); `singular` marks points on a
/// zero-momentum stratum where a square-rooted invariant vanished.
#[derive(Debug, Clone, Copy)]
pub enum ReducedPoint {
    /// Reduced c22 point on the ellipse with axes (a1, a2).
    C22 { xi: [f64; 2], eta: [f64; 2], j1: f64, j2: f64, singular: bool },
    /// Reduced c112 point on the 2-ellipsoid with axes (a0, a1, a2);
    /// the rotation-block coordinate is xi[2].
    C112 { xi: [f64; 3], eta: [f64; 3], j: f64, singular: bool },
    /// Reduced c211 point on the 2-ellipsoid with axes (a0, a2, a3);
    /// the rotation-block coordinate is xi[0].
    C211 { xi: [f64; 3], eta: [f64; 3], j: f64, singular: bool },
    /// Reduced c13/c31 point on the ellipse (a_single, a_triple) in
    /// block order (fixed coordinate first).
    C13 { xi: [f64; 2], eta: [f64; 2], j: f64, singular: bool },
}

impl ReducedPoint {
    pub fn is_singular(&self) -> bool {
        match *self {
            ReducedPoint::C22 { singular, .. }
            | ReducedPoint::C112 { singular, .. }
            | ReducedPoint::C211 { singular, .. }
            | ReducedPoint::C13 { singular, .. } => singular,
        }
    }
}

fn root_pair(b: &InvariantBlock) -> (f64, f64, bool) {
    if b.pi1 <= 0.0 {
        (0.0, 0.0, true)
    } else {
        let xi = b.pi1.sqrt();
        (xi, b.pi3 / xi, false)
    }
}

/// Map a constrained phase point to the reduced system of its case.
pub fn reduce(spec: &EllipsoidSpec, p: &PhasePoint) -> Result<ReducedPoint> {
    let blocks = invariants(spec, p);
    Ok(match spec.case {
        SymmetryCase::Generic => {
            return Err(GeoflowError::WrongCase {
                op: "reduce",
                case: spec.case.tag().to_string(),
            })
        }
        SymmetryCase::C22 => {
            let (xi1, eta1, s1) = root_pair(&blocks[0]);
            let (xi2, eta2, s2) = root_pair(&blocks[1]);
            let j1 = blocks[0].pi4.unwrap();
            let j2 = blocks[1].pi4.unwrap();
            ReducedPoint::C22 {
                xi: [xi1, xi2],
                eta: [eta1, eta2],
                j1,
                j2,
                singular: s1 || s2 || j1 * j2 == 0.0,
            }
        }
        SymmetryCase::C112 => {
            let (xi2, eta2, s) = root_pair(&blocks[0]);
            let j = blocks[0].pi4.unwrap();
            ReducedPoint::C112 {
                xi: [p.x[0], p.x[1], xi2],
                eta: [p.y[0], p.y[1], eta2],
                j,
                singular: s || j == 0.0,
            }
        }
        SymmetryCase::C211 => {
            let (xi0, eta0, s) = root_pair(&blocks[0]);
            let j = blocks[0].pi4.unwrap();
            ReducedPoint::C211 {
                xi: [xi0, p.x[2], p.x[3]],
                eta: [eta0, p.y[2], p.y[3]],
                j,
                singular: s || j == 0.0,
            }
        }
        SymmetryCase::C13 | SymmetryCase::C31 => {
            let b = &blocks[0];
            let fixed = if spec.case == SymmetryCase::C13 { 0 } else { 3 };
            let (xi1, eta1, s) = root_pair(b);
            let j2 = b.relation_residual(0.0); // pi1 pi2 - pi3^2
            let j = j2.max(0.0).sqrt();
            ReducedPoint::C13 {
                xi: [p.x[fixed], xi1],
                eta: [p.y[fixed], eta1],
                j,
                singular: s || j == 0.0,
            }
        }
    })
}

/// Semi-axes of the reduced configuration, in coordinate order.
pub fn reduced_axes(spec: &EllipsoidSpec) -> Vec<f64> {
    let a = &spec.alphas;
    match spec.case {
        SymmetryCase::Generic => a.to_vec(),
        SymmetryCase::C22 => vec![a[0], a[2]],
        SymmetryCase::C112 => vec![a[0], a[1], a[2]],
        SymmetryCase::C211 => vec![a[0], a[2], a[3]],
        SymmetryCase::C13 => vec![a[0], a[1]],
        SymmetryCase::C31 => vec![a[3], a[0]],
    }
}

/// Value of the reduced Hamiltonian: kinetic term in the reduced
/// coordinates plus the centrifugal potential of each rotation block.
pub fn reduced_hamiltonian(_spec: &EllipsoidSpec, r: &ReducedPoint) -> Result<f64> {
    let pot = |xi: f64, j: f64| -> Result<f64> {
        if j != 0.0 && xi == 0.0 {
            return Err(GeoflowError::SingularPotential(j));
        }
        Ok(if j == 0.0 { 0.0 } else { j * j / (2.0 * xi * xi) })
    };
    Ok(match *r {
        ReducedPoint::C22 { xi, eta, j1, j2, .. } => {
            0.5 * (eta[0] * eta[0] + eta[1] * eta[1]) + pot(xi[0], j1)? + pot(xi[1], j2)?
        }
        ReducedPoint::C112 { xi, eta, j, .. } => {
            0.5 * (eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]) + pot(xi[2], j)?
        }
        ReducedPoint::C211 { xi, eta, j, .. } => {
            0.5 * (eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]) + pot(xi[0], j)?
        }
        ReducedPoint::C13 { xi, eta, j, .. } => {
            0.5 * (eta[0] * eta[0] + eta[1] * eta[1]) + pot(xi[1], j)?
        }
    })
}

/// Reduced counterpart of the extra integral G for the rank-one rotation
/// cases (c112, c211).
pub fn reduced_g(spec: &EllipsoidSpec, r: &ReducedPoint) -> Result<f64> {
    let a = &spec.alphas;
    match *r {
        ReducedPoint::C112 { xi, eta, j, .. } => {
            if xi[2] == 0.0 {
                return Err(GeoflowError::SingularPotential(j));
            }
            let d0 = a[2] - a[0];
            let d1 = a[2] - a[1];
            Ok(eta[2] * eta[2]
                + (xi[2] * eta[0] - xi[0] * eta[2]).powi(2) / d0
                + (xi[2] * eta[1] - xi[1] * eta[2]).powi(2) / d1
                + j * j / (xi[2] * xi[2])
                    * (1.0 + xi[0] * xi[0] / d0 + xi[1] * xi[1] / d1))
        }
        ReducedPoint::C211 { xi, eta, j, .. } => {
            if xi[0] == 0.0 {
                return Err(GeoflowError::SingularPotential(j));
            }
            let d2 = a[0] - a[2];
            let d3 = a[0] - a[3];
            Ok(eta[0] * eta[0]
                + (xi[0] * eta[1] - xi[1] * eta[0]).powi(2) / d2
                + (xi[0] * eta[2] - xi[2] * eta[0]).powi(2) / d3
                + j * j / (xi[0] * xi[0])
                    * (1.0 + xi[1] * xi[1] / d2 + xi[2] * xi[2] / d3))
        }
        _ => Err(GeoflowError::WrongCase {
            op: "reduced_g",
            case: spec.case.tag().to_string(),
        }),
    }
}

/// The c22 symplectic chart on the reduced ellipse:
/// (phi, p_phi) -> (xi1, xi2, eta1, eta2).
pub fn symplectic_chart_22(
    a1: f64,
    a2: f64,
    phi: f64,
    p_phi: f64,
) -> Result<([f64; 2], [f64; 2])> {
    let (s, c) = phi.sin_cos();
    let d = a1 * s * s + a2 * c * c;
    Ok((
        [a1.sqrt() * c, a2.sqrt() * s],
        [-a1.sqrt() * s * p_phi / d, a2.sqrt() * c * p_phi / d],
    ))
}

/// Inverse of the chart on the physical quarter 0 < phi < pi/2.
pub fn chart_from_reduced_22(a1: f64, a2: f64, xi: &[f64; 2], eta: &[f64; 2]) -> Result<(f64, f64)> {
    let c = xi[0] / a1.sqrt();
    let s = xi[1] / a2.sqrt();
    let phi = s.atan2(c);
    // p_phi is the pairing of eta with the phi-tangent of the ellipse
    let p_phi = -a1.sqrt() * s * eta[0] + a2.sqrt() * c * eta[1];
    Ok((phi, p_phi))
}

/// Reduced Hamiltonian in the c22 chart. Blows up on the coordinate axes
/// when the corresponding momentum is nonzero.
pub fn chart_hamiltonian_22(a1: f64, a2: f64, j1: f64, j2: f64, phi: f64, p_phi: f64) -> Result<f64> {
    let (s, c) = phi.sin_cos();
    let d = a1 * s * s + a2 * c * c;
    if (c.abs() < 1e-12 && j1 != 0.0) || (s.abs() < 1e-12 && j2 != 0.0) {
        return Err(GeoflowError::ChartBoundary(phi));
    }
    let mut h = 0.5 * p_phi * p_phi / d;
    if j1 != 0.0 {
        h += 0.5 * j1 * j1 / (a1 * c * c);
    }
    if j2 != 0.0 {
        h += 0.5 * j2 * j2 / (a2 * s * s);
    }
    Ok(h)
}

/// Residuals of the singular-reduction relations defining the reduced
/// energy surface, evaluated from a full phase point. One residual per
/// defining equation of the case.
pub fn singular_relation_residual(spec: &EllipsoidSpec, p: &PhasePoint, h: f64) -> Result<Vec<f64>> {
    let blocks = invariants(spec, p);
    let a = &spec.alphas;
    Ok(match spec.case {
        SymmetryCase::Generic => {
            return Err(GeoflowError::WrongCase {
                op: "singular_relation_residual",
                case: spec.case.tag().to_string(),
            })
        }
        SymmetryCase::C22 => {
            let (a1, a2) = spec.c22_axes();
            let b1 = &blocks[0];
            let j1 = b1.pi4.unwrap();
            let j2 = blocks[1].pi4.unwrap();
            let q1 = b1.pi1 * b1.pi2 - b1.pi3 * b1.pi3 - j1 * j1;
            let q2 = a2 * (1.0 - b1.pi1 / a1) * (2.0 * h - b1.pi2)
                - (a2 * a2) / (a1 * a1) * b1.pi3 * b1.pi3
                - j2 * j2;
            vec![q1, q2]
        }
        SymmetryCase::C112 => {
            let b = &blocks[0];
            let j = b.pi4.unwrap();
            let r = a[2] * (1.0 - p.x[0] * p.x[0] / a[0] - p.x[1] * p.x[1] / a[1]) * b.pi2
                - a[2] * a[2] * (p.x[0] * p.y[0] / a[0] + p.x[1] * p.y[1] / a[1]).powi(2)
                - j * j;
            vec![r]
        }
        SymmetryCase::C211 => {
            let b = &blocks[0];
            let j = b.pi4.unwrap();
            let r = a[0] * (1.0 - p.x[2] * p.x[2] / a[2] - p.x[3] * p.x[3] / a[3]) * b.pi2
                - a[0] * a[0] * (p.x[2] * p.y[2] / a[2] + p.x[3] * p.y[3] / a[3]).powi(2)
                - j * j;
            vec![r]
        }
        SymmetryCase::C13 | SymmetryCase::C31 => {
            let fixed = if spec.case == SymmetryCase::C13 { 0 } else { 3 };
            let a0 = a[fixed];
            let a1 = spec.triple_axis();
            let b = &blocks[0];
            let j2 = b.pi1 * b.pi2 - b.pi3 * b.pi3;
            let (x0, y0) = (p.x[fixed], p.y[fixed]);
            let r = a1 * (1.0 - x0 * x0 / a0) * (2.0 * h - y0 * y0)
                - a1 * a1 * x0 * x0 * y0 * y0 / (a0 * a0)
                - j2;
            vec![r]
        }
    })
}
