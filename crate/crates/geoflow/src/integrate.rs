//! Adaptive integration of the constrained geodesic flow.
//!
//! Dormand-Prince 5(4) on the ambient 8-dimensional system, projecting back
//! onto the constraint surface after every accepted step. Steps are clamped
//! so requested sample times are hit exactly.

use std::io::Write;

use crate::conserved::conserved_set;
use crate::ellipsoid::{hamiltonian_vector_field, project, EllipsoidSpec, PhasePoint, EPS_CONSTRAINT};
use crate::error::{GeoflowError, Result};

/// Sampled solution of the flow with a conservation report.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
    pub drift: DriftReport,
}

/// Worst-case deviations observed along a trajectory.
#[derive(Debug, Clone, Default)]
pub struct DriftReport {
    /// Per-integral max relative deviation from the initial value.
    pub integrals: Vec<(&'static str, f64)>,
    /// Max relative energy deviation.
    pub energy: f64,
    /// Max constraint violation seen before projection.
    pub constraint_pre_projection: f64,
}

fn rhs(spec: &EllipsoidSpec, z: &[f64; 8]) -> [f64; 8] {
    let p = PhasePoint::from_array(z);
    let v = hamiltonian_vector_field(spec, &p);
    let mut out = [0.0; 8];
    out[..4].copy_from_slice(&v.dx);
    out[4..].copy_from_slice(&v.dy);
    out
}

fn axpy(out: &mut [f64; 8], a: f64, v: &[f64; 8]) {
    for i in 0..8 {
        out[i] += a * v[i];
    }
}

/// One Dormand-Prince 5(4) step from `z` with step `h`. Returns the 5th
/// order solution and the embedded error estimate norm (scaled by tol).
fn dp45_step(spec: &EllipsoidSpec, z: &[f64; 8], h: f64, k1: &[f64; 8], tol: f64) -> ([f64; 8], f64, [f64; 8]) {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    // b5 - b4 difference for the embedded error estimate
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let mut k = [[0.0; 8]; 7];
    k[0] = *k1;
    for s in 0..6 {
        let mut zs = *z;
        for (j, kj) in k.iter().enumerate().take(s + 1) {
            if A[s][j] != 0.0 {
                axpy(&mut zs, h * A[s][j], kj);
            }
        }
        k[s + 1] = rhs(spec, &zs);
    }
    // the 6th stage row of A is also b5, so k[6] is evaluated at the solution
    let mut z5 = *z;
    for (j, kj) in k.iter().enumerate().take(6) {
        if A[5][j] != 0.0 {
            axpy(&mut z5, h * A[5][j], kj);
        }
    }
    let mut err = 0.0f64;
    for i in 0..8 {
        let mut e = 0.0;
        for (j, kj) in k.iter().enumerate() {
            e += E[j] * kj[i];
        }
        e *= h;
        let sc = tol * (1.0 + z[i].abs().max(z5[i].abs()));
        err = err.max((e / sc).abs());
    }
    (z5, err, k[6])
}

/// Integrate from `p0` to `t_end`, sampling at `n_samples` equally spaced
/// times (including both endpoints).
pub fn integrate(
    spec: &EllipsoidSpec,
    p0: &PhasePoint,
    t_end: f64,
    tol: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    let sample_times: Vec<f64> = if n_samples < 2 {
        vec![0.0, t_end]
    } else {
        (0..n_samples)
            .map(|i| t_end * i as f64 / (n_samples - 1) as f64)
            .collect()
    };
    integrate_at(spec, p0, &sample_times, tol)
}

/// Integrate hitting the given strictly increasing sample times exactly.
pub fn integrate_at(
    spec: &EllipsoidSpec,
    p0: &PhasePoint,
    sample_times: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    if !(1e-14..=1e-4).contains(&tol) {
        return Err(GeoflowError::InvalidTolerance(tol));
    }
    let p0 = project(spec, p0, EPS_CONSTRAINT)?;
    let set0 = conserved_set(spec, &p0)?;
    let h0 = p0.energy();

    let mut points = Vec::with_capacity(sample_times.len());
    let mut drift = DriftReport {
        integrals: set0.values.iter().map(|(l, _)| (*l, 0.0)).collect(),
        ..Default::default()
    };

    let mut t = 0.0;
    let mut z = p0.to_array();
    let mut k1 = rhs(spec, &z);
    let mut h: f64 = 1e-3;
    let record = |p: &PhasePoint, drift: &mut DriftReport| {
        let set = conserved_set(spec, p).expect("case fixed along flow");
        for (i, (_, v)) in set.values.iter().enumerate() {
            let (_, v0) = set0.values[i];
            let rel = (v - v0).abs() / (1.0 + v0.abs());
            if rel > drift.integrals[i].1 {
                drift.integrals[i].1 = rel;
            }
        }
        let e = (p.energy() - h0).abs() / (1.0 + h0.abs());
        drift.energy = drift.energy.max(e);
    };

    let mut times_iter = sample_times.iter().peekable();
    // emit t = 0 if requested first
    while let Some(&&ts) = times_iter.peek() {
        if ts <= 0.0 {
            points.push(p0);
            times_iter.next();
        } else {
            break;
        }
    }

    while let Some(&&t_next) = times_iter.peek() {
        while t < t_next {
            let h_try = h.min(t_next - t);
            let (z5, err, k_last) = dp45_step(spec, &z, h_try, &k1, tol);
            if err <= 1.0 {
                t += h_try;
                let raw = PhasePoint::from_array(&z5);
                drift.constraint_pre_projection = drift
                    .constraint_pre_projection
                    .max(raw.constraint_residual(spec));
                let proj = project(spec, &raw, EPS_CONSTRAINT)?;
                z = proj.to_array();
                // projection moved the point, so refresh the first stage
                k1 = rhs(spec, &z);
                let _ = k_last;
                record(&proj, &mut drift);
            }
            let fac = if err > 0.0 {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            h = (h_try * fac).min(1.0);
            if h < 1e-14 {
                return Err(GeoflowError::Stiffness { t, h });
            }
        }
        points.push(PhasePoint::from_array(&z));
        times_iter.next();
    }

    Ok(Trajectory {
        times: sample_times.to_vec(),
        points,
        drift,
    })
}

/// Recompute the report from the stored samples.
pub fn drift_report(spec: &EllipsoidSpec, traj: &Trajectory) -> Result<DriftReport> {
    let set0 = conserved_set(spec, &traj.points[0])?;
    let h0 = traj.points[0].energy();
    let mut report = DriftReport {
        integrals: set0.values.iter().map(|(l, _)| (*l, 0.0)).collect(),
        constraint_pre_projection: traj.drift.constraint_pre_projection,
        ..Default::default()
    };
    for p in &traj.points {
        let set = conserved_set(spec, p)?;
        for (i, (_, v)) in set.values.iter().enumerate() {
            let rel = (v - set0.values[i].1).abs() / (1.0 + set0.values[i].1.abs());
            report.integrals[i].1 = report.integrals[i].1.max(rel);
        }
        report.energy = report
            .energy
            .max((p.energy() - h0).abs() / (1.0 + h0.abs()));
    }
    Ok(report)
}

impl Trajectory {
    /// CSV export, one row per sample, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,x0,x1,x2,x3,y0,y1,y2,y3")?;
        for (t, p) in self.times.iter().zip(&self.points) {
            write!(w, "{:.16e}", t)?;
            for v in p.x.iter().chain(p.y.iter()) {
                write!(w, ",{:.16e}", v)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Integrate until `event(p)` crosses zero from negative to positive while
/// `guard(p)` holds, up to `max_crossings` crossings or `t_max`. Returns the
/// crossing points, refined by bisection in time.
pub fn event_crossings<F, G>(
    spec: &EllipsoidSpec,
    p0: &PhasePoint,
    t_max: f64,
    tol: f64,
    max_crossings: usize,
    event: F,
    guard: G,
) -> Result<Vec<(f64, PhasePoint)>>
where
    F: Fn(&PhasePoint) -> f64,
    G: Fn(&PhasePoint) -> bool,
{
    // dense sampling, then bisect each bracketing interval with short
    // re-integrations from the left sample
    let n = ((t_max * 200.0) as usize).clamp(1000, 200_000);
    let traj = integrate(spec, p0, t_max, tol, n)?;
    let mut out = Vec::new();
    for i in 1..traj.points.len() {
        let (pa, pb) = (&traj.points[i - 1], &traj.points[i]);
        let (ea, eb) = (event(pa), event(pb));
        if ea < 0.0 && eb >= 0.0 && guard(pa) && guard(pb) {
            let mut lo = 0.0;
            let mut hi = traj.times[i] - traj.times[i - 1];
            let mut pc = *pb;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let t = integrate(spec, pa, mid, tol, 2)?;
                pc = t.points[1];
                if event(&pc) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-12 {
                    break;
                }
            }
            out.push((traj.times[i - 1] + 0.5 * (lo + hi), pc));
            if out.len() >= max_crossings {
                break;
            }
        }
    }
    Ok(out)
}
