//! Bifurcation diagrams of the energy-momentum maps: closed-form boundary
//! curves, landmark points, critical-point classification by linearized
//! flow, equilibria of the doubly symmetric reduced system, and fiber
//! labels with chamber multiplicities.

use nalgebra::{Complex, DMatrix};

use crate::conserved::EMValue;
use crate::ellipsoid::{EllipsoidSpec, PhasePoint, SymmetryCase};
use crate::error::{GeoflowError, Result};
use crate::observables::{observable_vector_field, Observable, PhaseFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    PolygonEdge,
    CurveA,
    CurveB,
    CurveC,
    Interval,
}

/// One boundary (or wall) curve of a bifurcation diagram, stored in closed
/// form: polygon edges are lines j2(j1), the quadratic curves evaluate
/// g(j) = c0 + c1 |j| + c2 j^2.
#[derive(Debug, Clone)]
pub struct DiagramCurve {
    pub kind: CurveKind,
    pub label: String,
    pub coeffs: [f64; 3],
    pub j_range: (f64, f64),
}

impl DiagramCurve {
    /// Second coordinate of the curve at the given first coordinate.
    pub fn value(&self, j: f64) -> f64 {
        let [c0, c1, c2] = self.coeffs;
        match self.kind {
            CurveKind::PolygonEdge => c0 + c1 * j,
            CurveKind::Interval => 0.0,
            _ => c0 + c1 * j.abs() + c2 * j * j,
        }
    }

    /// Uniform sampling of the curve over its validity range.
    pub fn sample(&self, n: usize) -> Vec<[f64; 2]> {
        let (lo, hi) = self.j_range;
        (0..n)
            .map(|k| {
                let j = lo + (hi - lo) * k as f64 / (n.max(2) - 1) as f64;
                [j, self.value(j)]
            })
            .collect()
    }
}

fn quad_curves(a_low: f64, a_mid: f64, a_rot: f64, h: f64, sign: f64) -> Vec<DiagramCurve> {
    // shared shape of the singly symmetric diagrams; `sign` = +1 when the
    // rotation axis is the largest, -1 when it is the smallest
    let jmax = (2.0 * a_rot * h).sqrt();
    let jtan = (2.0 * h * a_rot * (a_rot - a_mid).abs() / (a_rot - a_low).abs()).sqrt();
    let a = DiagramCurve {
        kind: CurveKind::CurveA,
        label: "A".into(),
        coeffs: [
            2.0 * a_rot * h / (a_rot - a_mid),
            0.0,
            -a_mid / (a_rot * (a_rot - a_mid)),
        ],
        j_range: (-jmax, jmax),
    };
    let b = DiagramCurve {
        kind: CurveKind::CurveB,
        label: "B".into(),
        coeffs: [
            2.0 * a_rot * h / (a_rot - a_low),
            0.0,
            -a_low / (a_rot * (a_rot - a_low)),
        ],
        j_range: (-jmax, jmax),
    };
    let c = DiagramCurve {
        kind: CurveKind::CurveC,
        label: "C".into(),
        coeffs: [
            0.0,
            sign * (8.0 * a_rot * h / ((a_rot - a_low) * (a_rot - a_mid))).sqrt(),
            -(a_rot * a_rot - a_low * a_mid) / (a_rot * (a_rot - a_low) * (a_rot - a_mid)),
        ],
        j_range: (-jtan, jtan),
    };
    vec![a, b, c]
}

/// Closed-form boundary curves of the bifurcation diagram for the case.
pub fn boundary_curves(spec: &EllipsoidSpec, h: f64) -> Result<Vec<DiagramCurve>> {
    if h <= 0.0 {
        return Err(GeoflowError::InvalidAxes(format!("energy {h} must be positive")));
    }
    let a = &spec.alphas;
    Ok(match spec.case {
        SymmetryCase::Generic => {
            return Err(GeoflowError::WrongCase {
                op: "boundary_curves",
                case: spec.case.tag().to_string(),
            })
        }
        SymmetryCase::C22 => {
            let (a1, a2) = spec.c22_axes();
            let mut curves = Vec::new();
            for s1 in [1.0f64, -1.0] {
                for s2 in [1.0f64, -1.0] {
                    // s1 j1/sqrt(a1) + s2 j2/sqrt(a2) = sqrt(2h)
                    let c0 = s2 * (2.0 * h * a2).sqrt();
                    let c1 = -s1 * s2 * (a2 / a1).sqrt();
                    let v = s1 * (2.0 * h * a1).sqrt();
                    let range = if v > 0.0 { (0.0, v) } else { (v, 0.0) };
                    curves.push(DiagramCurve {
                        kind: CurveKind::PolygonEdge,
                        label: format!(
                            "edge{}{}",
                            if s1 > 0.0 { '+' } else { '-' },
                            if s2 > 0.0 { '+' } else { '-' }
                        ),
                        coeffs: [c0, c1, 0.0],
                        j_range: range,
                    });
                }
            }
            curves
        }
        SymmetryCase::C112 => quad_curves(a[0], a[1], a[2], h, 1.0),
        SymmetryCase::C211 => quad_curves(a[3], a[2], a[0], h, -1.0),
        SymmetryCase::C13 | SymmetryCase::C31 => {
            let jmax = (2.0 * spec.triple_axis() * h).sqrt();
            vec![DiagramCurve {
                kind: CurveKind::Interval,
                label: "interval".into(),
                coeffs: [0.0; 3],
                j_range: (-jmax, jmax),
            }]
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberTopology {
    T3,
    T2,
    S1,
    TwoS1,
    BCrossT2,
    S2CrossS1,
    SO3,
    T2BundleOverS2,
}

impl std::fmt::Display for FiberTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FiberTopology::T3 => "T3",
            FiberTopology::T2 => "T2",
            FiberTopology::S1 => "S1",
            FiberTopology::TwoS1 => "2S1",
            FiberTopology::BCrossT2 => "BxT2",
            FiberTopology::S2CrossS1 => "S2xS1",
            FiberTopology::SO3 => "SO(3)",
            FiberTopology::T2BundleOverS2 => "T2-bundle-over-S2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberLabel {
    pub topology: FiberTopology,
    pub multiplicity: u32,
}

impl FiberLabel {
    fn new(topology: FiberTopology, multiplicity: u32) -> Self {
        FiberLabel { topology, multiplicity }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalType {
    Elliptic,
    Hyperbolic,
    EllipticElliptic,
    Degenerate,
}

/// A labeled special point of a bifurcation diagram.
#[derive(Debug, Clone)]
pub struct Landmark {
    pub label: String,
    pub point: [f64; 2],
    pub fiber: FiberLabel,
    pub class: CriticalType,
}

/// Corners, tangencies, and origins of the diagram for the case.
pub fn landmarks(spec: &EllipsoidSpec, h: f64) -> Result<Vec<Landmark>> {
    let curves = boundary_curves(spec, h)?;
    let mut out = Vec::new();
    match spec.case {
        SymmetryCase::Generic => unreachable!(),
        SymmetryCase::C22 => {
            let (a1, a2) = spec.c22_axes();
            for (pt, label) in [
                ([(2.0 * h * a1).sqrt(), 0.0], "vertex+0"),
                ([-(2.0 * h * a1).sqrt(), 0.0], "vertex-0"),
                ([0.0, (2.0 * h * a2).sqrt()], "vertex0+"),
                ([0.0, -(2.0 * h * a2).sqrt()], "vertex0-"),
            ] {
                out.push(Landmark {
                    label: label.into(),
                    point: pt,
                    fiber: FiberLabel::new(FiberTopology::S1, 1),
                    class: CriticalType::EllipticElliptic,
                });
            }
        }
        SymmetryCase::C112 | SymmetryCase::C211 => {
            let (a, b, c) = (&curves[0], &curves[1], &curves[2]);
            let jc = a.j_range.1;
            let jt = c.j_range.1;
            for s in [1.0f64, -1.0] {
                out.push(Landmark {
                    label: "corner".into(),
                    point: [s * jc, a.value(jc)],
                    fiber: FiberLabel::new(FiberTopology::S1, 1),
                    class: CriticalType::EllipticElliptic,
                });
                out.push(Landmark {
                    label: "tangency".into(),
                    point: [s * jt, b.value(jt)],
                    fiber: FiberLabel::new(FiberTopology::T2, 1),
                    class: CriticalType::Degenerate,
                });
            }
            out.push(Landmark {
                label: "origin".into(),
                point: [0.0, c.value(0.0)],
                fiber: FiberLabel::new(FiberTopology::TwoS1, 1),
                class: CriticalType::EllipticElliptic,
            });
        }
        SymmetryCase::C13 | SymmetryCase::C31 => {
            let jmax = curves[0].j_range.1;
            for s in [1.0f64, -1.0] {
                out.push(Landmark {
                    label: "extremal".into(),
                    point: [s * jmax, 0.0],
                    fiber: FiberLabel::new(FiberTopology::SO3, 1),
                    class: CriticalType::Elliptic,
                });
            }
            out.push(Landmark {
                label: "zero-momentum".into(),
                point: [0.0, 0.0],
                fiber: FiberLabel::new(FiberTopology::S2CrossS1, 1),
                class: CriticalType::Degenerate,
            });
        }
    }
    Ok(out)
}

/// Fiber topology and chamber multiplicity over an energy-momentum value.
pub fn fiber_label(spec: &EllipsoidSpec, em: &EMValue) -> Result<FiberLabel> {
    let h = em.h();
    let tol = 1e-9 * (1.0 + h.abs());
    use FiberTopology::*;
    match (*em, spec.case) {
        (EMValue::C22 { j1, j2, .. }, SymmetryCase::C22) => {
            let (a1, a2) = spec.c22_axes();
            let s = j1.abs() / a1.sqrt() + j2.abs() / a2.sqrt() - (2.0 * h).sqrt();
            if s > tol {
                Err(GeoflowError::OutOfRange(j1, j2))
            } else if s > -tol {
                if j1.abs() < tol || j2.abs() < tol {
                    Ok(FiberLabel::new(S1, 1))
                } else {
                    Ok(FiberLabel::new(T2, 1))
                }
            } else {
                Ok(FiberLabel::new(T3, 1))
            }
        }
        (EMValue::C112 { j, g, .. }, SymmetryCase::C112)
        | (EMValue::C211 { j, g, .. }, SymmetryCase::C211) => {
            // treat the c211 diagram through the mirror g -> -g so that A
            // is always the outer parabola and C the curve through zero
            let flip = if spec.case == SymmetryCase::C211 { -1.0 } else { 1.0 };
            let curves = boundary_curves(spec, h)?;
            let (ca, cb, cc) = (&curves[0], &curves[1], &curves[2]);
            let (g, ga, gb) = (flip * g, flip * ca.value(j), flip * cb.value(j));
            let jmax = ca.j_range.1;
            let jt = cc.j_range.1;
            let lower = if j.abs() <= jt { flip * cc.value(j) } else { gb };
            if j.abs() > jmax + tol || g > ga + tol || g < lower - tol {
                return Err(GeoflowError::OutOfRange(j, flip * g));
            }
            if (g - ga).abs() <= tol {
                return Ok(if jmax - j.abs() <= tol {
                    FiberLabel::new(S1, 1)
                } else {
                    FiberLabel::new(T2, 1)
                });
            }
            if (g - lower).abs() <= tol {
                return Ok(if j.abs() <= tol {
                    FiberLabel::new(TwoS1, 1)
                } else if (j.abs() - jt).abs() <= tol {
                    FiberLabel::new(T2, 1)
                } else if j.abs() < jt {
                    FiberLabel::new(T2, 2)
                } else {
                    // elliptic stretch of curve B past the tangency
                    FiberLabel::new(T2, 1)
                });
            }
            if (g - gb).abs() <= tol {
                return Ok(if j.abs() < jt {
                    FiberLabel::new(BCrossT2, 1)
                } else {
                    FiberLabel::new(T2, 1)
                });
            }
            Ok(if g > gb {
                FiberLabel::new(T3, 1)
            } else {
                FiberLabel::new(T3, 2)
            })
        }
        (EMValue::C13 { j, .. }, SymmetryCase::C13)
        | (EMValue::C31 { j, .. }, SymmetryCase::C31) => {
            let jmax_sq = 2.0 * spec.triple_axis() * h;
            if j * j > jmax_sq + tol {
                Err(GeoflowError::OutOfRange(j, h))
            } else if jmax_sq - j * j <= tol {
                Ok(FiberLabel::new(SO3, 1))
            } else if j.abs() <= tol {
                Ok(FiberLabel::new(S2CrossS1, 1))
            } else {
                Ok(FiberLabel::new(T2BundleOverS2, 1))
            }
        }
        (EMValue::Generic { .. }, SymmetryCase::Generic) => Ok(FiberLabel::new(T3, 1)),
        _ => Err(GeoflowError::WrongCase {
            op: "fiber_label",
            case: spec.case.tag().to_string(),
        }),
    }
}

/// Classification of a critical point of the energy-momentum map.
#[derive(Debug, Clone)]
pub struct CriticalClassification {
    pub corank: usize,
    pub kind: CriticalType,
    pub eigenvalues: Vec<Complex<f64>>,
}

fn case_observables(spec: &EllipsoidSpec) -> Vec<Observable> {
    match spec.case {
        SymmetryCase::Generic => vec![
            Observable::H,
            Observable::F(0),
            Observable::F(1),
            Observable::F(2),
            Observable::F(3),
        ],
        SymmetryCase::C22 => vec![
            Observable::H,
            Observable::G1,
            Observable::G2,
            Observable::J1,
            Observable::J2,
        ],
        SymmetryCase::C112 => vec![
            Observable::H,
            Observable::F(0),
            Observable::F(1),
            Observable::G,
            Observable::L(2, 3),
        ],
        SymmetryCase::C211 => vec![
            Observable::H,
            Observable::F(2),
            Observable::F(3),
            Observable::G,
            Observable::L(0, 1),
        ],
        SymmetryCase::C13 => vec![
            Observable::H,
            Observable::L(1, 2),
            Observable::L(1, 3),
            Observable::L(2, 3),
        ],
        SymmetryCase::C31 => vec![
            Observable::H,
            Observable::L(0, 1),
            Observable::L(0, 2),
            Observable::L(1, 2),
        ],
    }
}

fn expected_rank(case: SymmetryCase) -> usize {
    match case {
        SymmetryCase::C13 | SymmetryCase::C31 => 4,
        _ => 3,
    }
}

fn dot8(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gradient8(spec: &EllipsoidSpec, f: &dyn PhaseFunction, p: &PhasePoint) -> [f64; 8] {
    let (gx, gy) = f.gradient(spec, p);
    let mut v = [0.0; 8];
    v[..4].copy_from_slice(&gx);
    v[4..].copy_from_slice(&gy);
    v
}

/// Orthonormal basis of the tangent space of the constraint manifold.
fn tangent_basis(spec: &EllipsoidSpec, p: &PhasePoint) -> Vec<[f64; 8]> {
    let mut held = vec![
        gradient8(spec, &Observable::C1, p),
        gradient8(spec, &Observable::C2, p),
    ];
    for v in &mut held {
        let copy = *v;
        let n = dot8(&copy, &copy).sqrt();
        v.iter_mut().for_each(|c| *c /= n);
    }
    // second constraint gradient orthonormalized against the first
    let proj = dot8(&held[0].clone(), &held[1].clone());
    let h0 = held[0];
    for (c, c0) in held[1].iter_mut().zip(h0.iter()) {
        *c -= proj * c0;
    }
    let n = dot8(&held[1].clone(), &held[1].clone()).sqrt();
    held[1].iter_mut().for_each(|c| *c /= n);

    let mut basis = Vec::with_capacity(6);
    for k in 0..8 {
        let mut e = [0.0; 8];
        e[k] = 1.0;
        for q in held.iter().chain(basis.iter()) {
            let c = dot8(&e, q);
            for (ei, qi) in e.iter_mut().zip(q.iter()) {
                *ei -= c * qi;
            }
        }
        let n = dot8(&e, &e).sqrt();
        if n > 1e-8 {
            e.iter_mut().for_each(|c| *c /= n);
            basis.push(e);
            if basis.len() == 6 {
                break;
            }
        }
    }
    basis
}

/// Eigenvalues of the Jacobian of the observable's Dirac flow, restricted
/// to the tangent space of the constraint manifold.
pub fn flow_jacobian_spectrum(
    spec: &EllipsoidSpec,
    f: &dyn PhaseFunction,
    p: &PhasePoint,
) -> Vec<Complex<f64>> {
    let field = |z: &[f64; 8]| {
        let q = PhasePoint::from_array(z);
        let v = observable_vector_field(spec, f, &q);
        let mut out = [0.0; 8];
        out[..4].copy_from_slice(&v.dx);
        out[4..].copy_from_slice(&v.dy);
        out
    };
    let z0 = p.to_array();
    let step = 1e-6;
    let mut jac = [[0.0f64; 8]; 8];
    for c in 0..8 {
        let mut zp = z0;
        let mut zm = z0;
        zp[c] += step;
        zm[c] -= step;
        let (fp, fm) = (field(&zp), field(&zm));
        for r in 0..8 {
            jac[r][c] = (fp[r] - fm[r]) / (2.0 * step);
        }
    }
    let basis = tangent_basis(spec, p);
    let n = basis.len();
    let mut reduced = DMatrix::<f64>::zeros(n, n);
    for (i, bi) in basis.iter().enumerate() {
        for (k, bk) in basis.iter().enumerate() {
            let mut acc = 0.0;
            for r in 0..8 {
                let mut jb = 0.0;
                for c in 0..8 {
                    jb += jac[r][c] * bk[c];
                }
                acc += bi[r] * jb;
            }
            reduced[(i, k)] = acc;
        }
    }
    reduced.complex_eigenvalues().iter().copied().collect()
}

/// Squared eigenvalue of the 2x2 transverse block of the flow of F_i at a
/// point of the sub-ellipsoid x_i = y_i = 0.
pub fn transverse_block_eigensq(spec: &EllipsoidSpec, i: usize, p: &PhasePoint) -> Result<f64> {
    if i > 3 {
        return Err(GeoflowError::IndexOutOfRange(i));
    }
    let a = &spec.alphas;
    let pairing = |u: &[f64; 4], v: &[f64; 4]| {
        let mut s = 0.0;
        for k in 0..4 {
            if k != i {
                s += u[k] * v[k] / (a[k] - a[i]);
            }
        }
        s
    };
    let kxy = pairing(&p.x, &p.y);
    let kxx = pairing(&p.x, &p.x);
    let kyy = pairing(&p.y, &p.y);
    Ok(4.0 * (kxy * kxy - kyy * (kxx - 1.0)))
}

fn eigs_from_sq(lambda_sq: f64, deg_tol: f64) -> (Vec<Complex<f64>>, CriticalType) {
    if lambda_sq.abs() < deg_tol {
        (vec![Complex::new(0.0, 0.0); 2], CriticalType::Degenerate)
    } else if lambda_sq > 0.0 {
        let l = lambda_sq.sqrt();
        (
            vec![Complex::new(l, 0.0), Complex::new(-l, 0.0)],
            CriticalType::Hyperbolic,
        )
    } else {
        let l = (-lambda_sq).sqrt();
        (
            vec![Complex::new(0.0, l), Complex::new(0.0, -l)],
            CriticalType::Elliptic,
        )
    }
}

fn type_from_spectrum(eigs: &[Complex<f64>], scale: f64, corank: usize) -> CriticalType {
    let nonzero: Vec<_> = eigs.iter().filter(|l| l.norm() > 1e-5 * scale).collect();
    if nonzero.is_empty() {
        return CriticalType::Degenerate;
    }
    if nonzero.iter().any(|l| l.re.abs() > 1e-4 * scale) {
        return CriticalType::Hyperbolic;
    }
    if corank >= 2 {
        CriticalType::EllipticElliptic
    } else {
        CriticalType::Elliptic
    }
}

/// Classify a critical point of the energy-momentum map by the linearized
/// flows of the integrals that degenerate there.
pub fn classify_critical(spec: &EllipsoidSpec, p: &PhasePoint) -> Result<CriticalClassification> {
    let h = p.energy();
    let scale = 1.0 + h;
    let basis = tangent_basis(spec, p);
    let obs = case_observables(spec);

    let mut grad = DMatrix::<f64>::zeros(obs.len(), basis.len());
    for (r, o) in obs.iter().enumerate() {
        let g = gradient8(spec, o, p);
        for (c, b) in basis.iter().enumerate() {
            grad[(r, c)] = dot8(&g, b);
        }
    }
    let svals = grad.svd(false, false).singular_values;
    let smax = svals.iter().cloned().fold(0.0f64, f64::max);
    let rank = svals.iter().filter(|s| **s > 1e-6 * (1.0 + smax)).count();
    let expected = expected_rank(spec.case);
    if rank >= expected {
        return Err(GeoflowError::NotCritical(
            svals.iter().cloned().fold(f64::INFINITY, f64::min),
        ));
    }
    let corank = (expected - rank).clamp(1, 2);

    let ztol = 1e-6 * scale;
    let pair_zero = |i: usize| p.x[i].abs() < ztol && p.y[i].abs() < ztol;
    let deg_tol = 1e-8 * scale;

    let (eigenvalues, kind) = match spec.case {
        SymmetryCase::C22 => {
            let j1 = p.x[0] * p.y[1] - p.x[1] * p.y[0];
            let j2 = p.x[2] * p.y[3] - p.x[3] * p.y[2];
            if j1.abs() < ztol || j2.abs() < ztol {
                let o = if j1.abs() < ztol { Observable::G1 } else { Observable::G2 };
                let eigs = flow_jacobian_spectrum(spec, &o, p);
                let kind = type_from_spectrum(&eigs, scale, corank);
                (eigs, kind)
            } else {
                let k = Observable::K { s1: j1.signum(), s2: j2.signum() };
                let eigs = flow_jacobian_spectrum(spec, &k, p);
                let kind = type_from_spectrum(&eigs, scale, corank);
                (eigs, kind)
            }
        }
        SymmetryCase::C112 | SymmetryCase::C211 => {
            let (lo, hi, rot) = if spec.case == SymmetryCase::C112 {
                (0, 1, [2usize, 3])
            } else {
                (2, 3, [0usize, 1])
            };
            let rot_zero = rot
                .iter()
                .all(|&i| p.x[i].abs() < ztol && p.y[i].abs() < ztol);
            if pair_zero(lo) && pair_zero(hi) {
                let mut eigs = Vec::new();
                for i in [lo, hi] {
                    let (mut e, _) = eigs_from_sq(transverse_block_eigensq(spec, i, p)?, deg_tol);
                    eigs.append(&mut e);
                }
                let kind = type_from_spectrum(&eigs, scale, 2);
                (eigs, kind)
            } else if rot_zero {
                let mut eigs = flow_jacobian_spectrum(spec, &Observable::G, p);
                eigs.extend(flow_jacobian_spectrum(
                    spec,
                    &Observable::L(rot[0], rot[1]),
                    p,
                ));
                let kind = type_from_spectrum(&eigs, scale, 2);
                (eigs, kind)
            } else if pair_zero(lo) || pair_zero(hi) {
                let i = if pair_zero(lo) { lo } else { hi };
                let (eigs, kind) = eigs_from_sq(transverse_block_eigensq(spec, i, p)?, deg_tol);
                (eigs, kind)
            } else {
                let eigs = flow_jacobian_spectrum(spec, &Observable::G, p);
                let kind = type_from_spectrum(&eigs, scale, corank);
                (eigs, kind)
            }
        }
        SymmetryCase::C13 | SymmetryCase::C31 => {
            let fixed = if spec.case == SymmetryCase::C13 { 0 } else { 3 };
            if pair_zero(fixed) {
                let (eigs, kind) = eigs_from_sq(transverse_block_eigensq(spec, fixed, p)?, deg_tol);
                (eigs, kind)
            } else {
                (Vec::new(), CriticalType::Degenerate)
            }
        }
        SymmetryCase::Generic => {
            let eigs = flow_jacobian_spectrum(spec, &Observable::F(0), p);
            let kind = type_from_spectrum(&eigs, scale, corank);
            (eigs, kind)
        }
    };

    Ok(CriticalClassification { corank, kind, eigenvalues })
}

/// Relative equilibrium of the doubly symmetric reduced system at the
/// given momenta, with the minimal energy at which it exists.
#[derive(Debug, Clone, Copy)]
pub struct Equilibrium22 {
    pub xi_sq: [f64; 2],
    pub h_min: f64,
}

pub fn equilibria_22(a1: f64, a2: f64, j1: f64, j2: f64) -> Result<Equilibrium22> {
    if j1 == 0.0 || j2 == 0.0 {
        return Err(GeoflowError::ZeroMomentum);
    }
    let s = j1.abs() / a1.sqrt() + j2.abs() / a2.sqrt();
    Ok(Equilibrium22 {
        xi_sq: [
            (a1 * j1 * j1).sqrt() / s,
            (a2 * j2 * j2).sqrt() / s,
        ],
        h_min: 0.5 * s * s,
    })
}
