//! Separation of variables for the singly symmetric case: confocal
//! coordinates on the reduced 2-ellipsoid, the separated constants, and the
//! momentum polynomial whose quartic curve carries both separated pairs.

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeoflowError, Result};

/// A point in separation coordinates: confocal pair (lambda1, lambda2)
/// interlacing the reduced semi-axes, conjugate momenta, and the rotation
/// momentum conjugate to the symmetry angle.
#[derive(Debug, Clone, Copy)]
pub struct ConfocalPoint {
    pub lambda: [f64; 2],
    pub p: [f64; 2],
    pub p_theta: f64,
}

fn ellipsoid_residual(axes: &[f64; 3], xi: &[f64; 3], lam: f64) -> f64 {
    xi.iter().zip(axes).map(|(x, a)| x * x / (a - lam)).sum::<f64>() - 1.0
}

fn bisect_root(axes: &[f64; 3], xi: &[f64; 3], mut lo: f64, mut hi: f64) -> f64 {
    // the residual increases monotonically between consecutive poles
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if ellipsoid_residual(axes, xi, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Map a reduced point (coordinates on the 2-ellipsoid with semi-axes
/// `axes`, cotangent momenta, rotation momentum) to confocal coordinates.
pub fn confocal_from_reduced(
    axes: &[f64; 3],
    xi: &[f64; 3],
    eta: &[f64; 3],
    j: f64,
) -> Result<ConfocalPoint> {
    if xi.iter().any(|x| x.abs() < 1e-9) {
        return Err(GeoflowError::CoordinateSingularity);
    }
    let l1 = bisect_root(axes, xi, axes[0], axes[1]);
    let l2 = bisect_root(axes, xi, axes[1], axes[2]);
    let momentum = |lam: f64| {
        -0.5
            * xi.iter()
                .zip(eta)
                .zip(axes)
                .map(|((x, e), a)| x * e / (a - lam))
                .sum::<f64>()
    };
    Ok(ConfocalPoint {
        lambda: [l1, l2],
        p: [momentum(l1), momentum(l2)],
        p_theta: j,
    })
}

/// Invert the confocal chart. The chart forgets coordinate signs, so the
/// caller picks the sheet with `signs`.
pub fn reduced_from_confocal(
    axes: &[f64; 3],
    cp: &ConfocalPoint,
    signs: &[f64; 3],
) -> Result<([f64; 3], [f64; 3], f64)> {
    let [l1, l2] = cp.lambda;
    if !(axes[0] < l1 && l1 < axes[1] && l2 > axes[1] && l2 < axes[2]) {
        return Err(GeoflowError::CoordinateSingularity);
    }
    let mut xi = [0.0f64; 3];
    for i in 0..3 {
        let mut num = axes[i] * (axes[i] - l1) * (axes[i] - l2);
        for k in 0..3 {
            if k != i {
                num /= axes[i] - axes[k];
            }
        }
        xi[i] = signs[i].signum() * num.max(0.0).sqrt();
    }
    // recover eta from the two momentum pairings and tangency to the
    // ellipsoid
    let row = |lam: f64| Vector3::from_fn(|i, _| -0.5 * xi[i] / (axes[i] - lam));
    let m = Matrix3::from_rows(&[
        row(l1).transpose(),
        row(l2).transpose(),
        Vector3::from_fn(|i, _| xi[i] / axes[i]).transpose(),
    ]);
    let rhs = Vector3::new(cp.p[0], cp.p[1], 0.0);
    let eta = m
        .lu()
        .solve(&rhs)
        .ok_or(GeoflowError::CoordinateSingularity)?;
    Ok((xi, [eta[0], eta[1], eta[2]], cp.p_theta))
}

/// The Hamiltonian in separation coordinates.
pub fn separated_hamiltonian(axes: &[f64; 3], cp: &ConfocalPoint) -> f64 {
    let [a0, a1, a2] = *axes;
    let [l1, l2] = cp.lambda;
    let [p1, p2] = cp.p;
    let b = |l: f64| (a0 - l) * (a1 - l) * (a2 - l);
    -2.0 * b(l1) / (l1 * (l2 - l1)) * p1 * p1 - 2.0 * b(l2) / (l2 * (l1 - l2)) * p2 * p2
        + (a0 - a2) * (a1 - a2) / (2.0 * a2 * (l1 - a2) * (l2 - a2)) * cp.p_theta * cp.p_theta
}

/// The two separated constants. On any orbit both take the same value.
pub fn separated_constants(axes: &[f64; 3], cp: &ConfocalPoint) -> [f64; 2] {
    let [a0, a1, a2] = *axes;
    let h = separated_hamiltonian(axes, cp);
    let one = |l: f64, p: f64| {
        2.0 * (a0 - l) * (a1 - l) * (a2 - l) / l * p * p - h * l
            - (a0 - a2) * (a1 - a2) / (2.0 * a2 * (l - a2)) * cp.p_theta * cp.p_theta
    };
    [one(cp.lambda[0], cp.p[0]), one(cp.lambda[1], cp.p[1])]
}

/// Residual of the identity tying the separated constants to the reduced
/// integral g and the energy.
pub fn constants_relation_residual(axes: &[f64; 3], cp: &ConfocalPoint, g: f64) -> f64 {
    let [a0, a1, a2] = *axes;
    let h = separated_hamiltonian(axes, cp);
    let [g1, g2] = separated_constants(axes, cp);
    let jsq = cp.p_theta * cp.p_theta;
    g1 + g2 - ((a2 - a0) * (a2 - a1) * g / a2 - 2.0 * a2 * h + (a2 * a2 - a0 * a1) * jsq / (a2 * a2))
}

/// The momentum polynomial: both separated pairs lie on the curve
/// p^2 = -Q(lambda) / (4 A(lambda)), with Q assembled from the values of
/// the four integrals and A the denominator polynomial of their
/// partial-fraction decomposition.
#[derive(Debug, Clone, Copy)]
pub struct MomentumPolynomial {
    pub axes: [f64; 3],
    pub f0: f64,
    pub f1: f64,
    pub g: f64,
    pub j_sq: f64,
}

impl MomentumPolynomial {
    pub fn q(&self, z: f64) -> f64 {
        let [a0, a1, a2] = self.axes;
        self.f0 * (z - a1) * (z - a2) * (z - a2)
            + self.f1 * (z - a0) * (z - a2) * (z - a2)
            + self.g * (z - a0) * (z - a1) * (z - a2)
            + self.j_sq * (z - a0) * (z - a1)
    }

    pub fn denominator(&self, z: f64) -> f64 {
        let [a0, a1, a2] = self.axes;
        (z - a0) * (z - a1) * (z - a2) * (z - a2)
    }

    /// Squared separated momentum at lambda. Negative values mean lambda
    /// lies outside the oscillation interval.
    pub fn p_sq(&self, lambda: f64) -> Result<f64> {
        let den = self.denominator(lambda);
        if den.abs() < 1e-12 {
            return Err(GeoflowError::PolynomialPole(lambda));
        }
        Ok(-self.q(lambda) / (4.0 * den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conserved::conserved_set;
    use crate::ellipsoid::{EllipsoidSpec, PhasePoint, SymmetryCase};
    use crate::integrate::integrate;
    use crate::reduction::{reduce, reduced_axes, reduced_g, reduced_hamiltonian, ReducedPoint};
    use crate::sample::sample_constrained;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c112() -> EllipsoidSpec {
        EllipsoidSpec::from_distinct(SymmetryCase::C112, &[1.0, 2.0, 3.0]).unwrap()
    }

    fn axes3(spec: &EllipsoidSpec) -> [f64; 3] {
        let v = reduced_axes(spec);
        [v[0], v[1], v[2]]
    }

    fn regular_reduced(
        spec: &EllipsoidSpec,
        rng: &mut ChaCha8Rng,
    ) -> ([f64; 3], [f64; 3], f64, PhasePoint) {
        loop {
            let p = sample_constrained(spec, rng);
            if let ReducedPoint::C112 { xi, eta, j, singular } = reduce(spec, &p).unwrap() {
                if !singular && xi.iter().all(|x| x.abs() > 1e-3) {
                    return (xi, eta, j, p);
                }
            }
        }
    }

    #[test]
    fn interlacing_and_roundtrip() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..300 {
            let (xi, eta, j, _) = regular_reduced(&spec, &mut rng);
            let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
            assert!(axes[0] < cp.lambda[0] && cp.lambda[0] < axes[1]);
            assert!(axes[1] < cp.lambda[1] && cp.lambda[1] < axes[2]);
            let (xi2, eta2, j2) = reduced_from_confocal(&axes, &cp, &xi).unwrap();
            for i in 0..3 {
                assert!((xi[i] - xi2[i]).abs() < 1e-9, "xi{i}: {} vs {}", xi[i], xi2[i]);
                assert!((eta[i] - eta2[i]).abs() < 1e-8, "eta{i}: {} vs {}", eta[i], eta2[i]);
            }
            assert_eq!(j, j2);
        }
    }

    #[test]
    fn hamiltonian_matches_reduced_energy() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..500 {
            let (xi, eta, j, _) = regular_reduced(&spec, &mut rng);
            let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
            let r = ReducedPoint::C112 { xi, eta, j, singular: false };
            let h_red = reduced_hamiltonian(&spec, &r).unwrap();
            let h_sep = separated_hamiltonian(&axes, &cp);
            assert!(
                (h_red - h_sep).abs() < 1e-9 * (1.0 + h_red),
                "{h_red} vs {h_sep}"
            );
        }
    }

    #[test]
    fn constants_coincide_and_satisfy_relation() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let (xi, eta, j, _) = regular_reduced(&spec, &mut rng);
            let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
            let [g1, g2] = separated_constants(&axes, &cp);
            let scale = 1.0 + g1.abs();
            assert!((g1 - g2).abs() < 1e-7 * scale, "{g1} vs {g2}");
            let r = ReducedPoint::C112 { xi, eta, j, singular: false };
            let g = reduced_g(&spec, &r).unwrap();
            let res = constants_relation_residual(&axes, &cp, g);
            assert!(res.abs() < 1e-8 * scale, "{res:e}");
        }
    }

    #[test]
    fn constants_conserved_along_flow() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let (_, _, _, p0) = regular_reduced(&spec, &mut rng);
        let traj = integrate(&spec, &p0, 20.0, 1e-11, 400).unwrap();
        let mut reference = None;
        for p in &traj.points {
            if let ReducedPoint::C112 { xi, eta, j, singular } = reduce(&spec, p).unwrap() {
                if singular || xi.iter().any(|x| x.abs() < 1e-3) {
                    continue;
                }
                let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
                let [g1, _] = separated_constants(&axes, &cp);
                let r = *reference.get_or_insert(g1);
                assert!((g1 - r).abs() < 1e-7 * (1.0 + r.abs()), "{g1} vs {r}");
            }
        }
        assert!(reference.is_some());
    }

    #[test]
    fn momentum_polynomial_matches_separated_momenta() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..200 {
            let (xi, eta, j, p) = regular_reduced(&spec, &mut rng);
            let set = conserved_set(&spec, &p).unwrap();
            let poly = MomentumPolynomial {
                axes,
                f0: set.get("F0").unwrap(),
                f1: set.get("F1").unwrap(),
                g: set.get("G").unwrap(),
                j_sq: set.get("J").unwrap().powi(2),
            };
            // the polynomial vanishes at 0 and matches the rotation residue
            assert!(poly.q(0.0).abs() < 1e-10 * (1.0 + set.h.abs()));
            let want = poly.j_sq * (axes[2] - axes[0]) * (axes[2] - axes[1]);
            assert!((poly.q(axes[2]) - want).abs() < 1e-10 * (1.0 + want.abs()));

            let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
            for k in 0..2 {
                let got = poly.p_sq(cp.lambda[k]).unwrap();
                let expect = cp.p[k] * cp.p[k];
                assert!(
                    (got - expect).abs() < 1e-8 * (1.0 + expect),
                    "p{k}^2: {got} vs {expect}"
                );
            }
            assert!(poly.p_sq(axes[1]).is_err());
        }
    }

    #[test]
    fn momentum_polynomial_sign_between_turning_points() {
        let spec = c112();
        let axes = axes3(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let (_, _, _, p0) = regular_reduced(&spec, &mut rng);
        let set = conserved_set(&spec, &p0).unwrap();
        let poly = MomentumPolynomial {
            axes,
            f0: set.get("F0").unwrap(),
            f1: set.get("F1").unwrap(),
            g: set.get("G").unwrap(),
            j_sq: set.get("J").unwrap().powi(2),
        };
        let traj = integrate(&spec, &p0, 40.0, 1e-10, 800).unwrap();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &traj.points {
            if let ReducedPoint::C112 { xi, eta, j, singular } = reduce(&spec, p).unwrap() {
                if singular || xi.iter().any(|x| x.abs() < 1e-3) {
                    continue;
                }
                let cp = confocal_from_reduced(&axes, &xi, &eta, j).unwrap();
                for k in 0..2 {
                    lo[k] = lo[k].min(cp.lambda[k]);
                    hi[k] = hi[k].max(cp.lambda[k]);
                }
            }
        }
        // the squared momentum is nonnegative on the visited intervals
        for k in 0..2 {
            assert!(lo[k] < hi[k]);
            for step in 0..=50 {
                let lam = lo[k] + (hi[k] - lo[k]) * step as f64 / 50.0;
                assert!(poly.p_sq(lam).unwrap() > -1e-9);
            }
        }
    }
}
