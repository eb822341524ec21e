//! Seeded sampling of constrained phase points.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::ellipsoid::{EllipsoidSpec, PhasePoint};

/// Draw a random constrained point: x from a normalized Gaussian direction
/// scaled onto C1 = 0, y Gaussian with its C2 component removed.
pub fn sample_constrained<R: Rng>(spec: &EllipsoidSpec, rng: &mut R) -> PhasePoint {
    let a = &spec.alphas;
    let mut x = [0.0; 4];
    loop {
        let mut s = 0.0;
        for xi in x.iter_mut() {
            *xi = rng.sample(StandardNormal);
            s += *xi * *xi;
        }
        if s > 1e-12 {
            break;
        }
    }
    let scale: f64 = (0..4).map(|i| x[i] * x[i] / a[i]).sum();
    let scale = scale.sqrt();
    for xi in x.iter_mut() {
        *xi /= scale;
    }

    let mut y = [0.0; 4];
    for yi in y.iter_mut() {
        *yi = rng.sample(StandardNormal);
    }
    // remove the grad_y C2 = x/alpha component
    let c2: f64 = (0..4).map(|i| x[i] * y[i] / a[i]).sum();
    let n2: f64 = (0..4).map(|i| (x[i] / a[i]).powi(2)).sum();
    for i in 0..4 {
        y[i] -= c2 * x[i] / a[i] / n2;
    }
    PhasePoint::new(x, y)
}

/// Same, but rescale y so the energy is exactly `h`.
pub fn sample_constrained_at_energy<R: Rng>(
    spec: &EllipsoidSpec,
    h: f64,
    rng: &mut R,
) -> PhasePoint {
    loop {
        let mut p = sample_constrained(spec, rng);
        let e = p.energy();
        if e > 1e-12 {
            let s = (h / e).sqrt();
            for yi in p.y.iter_mut() {
                *yi *= s;
            }
            return p;
        }
    }
}
