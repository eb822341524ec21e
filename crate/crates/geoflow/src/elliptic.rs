//! Complete elliptic integrals via Carlson symmetric forms.
//!
//! All three Legendre integrals reduce to the Carlson forms RF, RD, RJ,
//! which are computed by the duplication theorem to relative accuracy
//! better than 1e-12.

use crate::error::{GeoflowError, Result};

const ERRTOL: f64 = 1e-4;

/// Carlson's degenerate elliptic integral of the first kind.
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let dx = (mu - x) / mu;
        let dy = (mu - y) / mu;
        let dz = (mu - z) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
    }
}

/// Carlson's elliptic integral of the second kind RD(x, y, z).
pub fn carlson_rd(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + 3.0 * z) / 5.0;
        let dx = (mu - x) / mu;
        let dy = (mu - y) / mu;
        let dz = (mu - z) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + fac * (1.0 + s) / (mu * mu.sqrt());
        }
    }
}

/// Carlson's elliptic integral of the third kind RJ(x, y, z, p) for p > 0.
pub fn carlson_rj(mut x: f64, mut y: f64, mut z: f64, mut p: f64) -> f64 {
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        let alpha = (p * (sx + sy + sz) + sx * sy * sz).powi(2);
        let beta = p * (p + lam).powi(2);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        let mu = (x + y + z + 2.0 * p) / 5.0;
        let dx = (mu - x) / mu;
        let dy = (mu - y) / mu;
        let dz = (mu - z) / mu;
        let dp = (mu - p) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()).max(dp.abs()) < ERRTOL {
            let ea = dx * (dy + dz) + dy * dz;
            let eb = dx * dy * dz;
            let ec = dp * dp;
            let ed = ea - 3.0 * ec;
            let ee = eb + 2.0 * dp * (ea - ec);
            let s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * ee)
                + eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0))
                + dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0)
                - 1.0 / 3.0 * dp * ec;
            return 3.0 * sum + fac * (1.0 + s) / (mu * mu.sqrt());
        }
    }
}

/// Carlson's degenerate integral RC(x, y) for y > 0.
pub fn carlson_rc(mut x: f64, mut y: f64) -> f64 {
    loop {
        let lam = 2.0 * x.sqrt() * y.sqrt() + y;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        let mu = (x + 2.0 * y) / 3.0;
        let s = (y - x) / (3.0 * mu);
        if s.abs() < 1e-4 {
            return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0))))
                / mu.sqrt();
        }
    }
}

fn check_modulus(k2: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k2) {
        return Err(GeoflowError::EllipticDomain(k2));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind, parameter m = k^2.
pub fn elliptic_k(k2: f64) -> Result<f64> {
    check_modulus(k2)?;
    Ok(carlson_rf(0.0, 1.0 - k2, 1.0))
}

/// Complete elliptic integral of the second kind, parameter m = k^2.
pub fn elliptic_e(k2: f64) -> Result<f64> {
    check_modulus(k2)?;
    Ok(carlson_rf(0.0, 1.0 - k2, 1.0) - k2 / 3.0 * carlson_rd(0.0, 1.0 - k2, 1.0))
}

/// Complete elliptic integral of the third kind with characteristic n
/// (convention: integrand 1/((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t))).
pub fn elliptic_pi(n: f64, k2: f64) -> Result<f64> {
    check_modulus(k2)?;
    if n >= 1.0 {
        return Err(GeoflowError::EllipticDomain(n));
    }
    Ok(carlson_rf(0.0, 1.0 - k2, 1.0) + n / 3.0 * carlson_rj(0.0, 1.0 - k2, 1.0, 1.0 - n))
}
