//! The third action of the doubly symmetric case: branch roots, the action
//! integral in quadrature and Legendre normal form, its momentum
//! derivatives, quadrant gluing matrices, and the energy surface in action
//! space.

use crate::elliptic::{elliptic_e, elliptic_pi};
use crate::error::{GeoflowError, Result};

/// Branch roots and Legendre parameters of the action integrand.
#[derive(Debug, Clone, Copy)]
pub struct EllipticArgs {
    pub s1_sq: f64,
    pub s2_sq: f64,
    pub k2: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

/// Signed distance from the polygon boundary: negative inside.
fn polygon_excess(a1: f64, a2: f64, h: f64, j1: f64, j2: f64) -> f64 {
    j1.abs() / a1.sqrt() + j2.abs() / a2.sqrt() - (2.0 * h).sqrt()
}

/// Roots s1^2 <= s2^2 of the quartic factor of the action integrand, and
/// the derived Legendre parameters.
pub fn branch_roots(a1: f64, a2: f64, h: f64, j1: f64, j2: f64) -> Result<EllipticArgs> {
    if polygon_excess(a1, a2, h, j1, j2) > 1e-14 {
        return Err(GeoflowError::OutsideDiagram(j1, j2));
    }
    let b = (a1 * j2 * j2 - a2 * j1 * j1 - 2.0 * h * a1 * a2) / (2.0 * h * a2);
    let c = j1 * j1 * a1 / (2.0 * h);
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return Err(GeoflowError::OutsideDiagram(j1, j2));
    }
    let s2_sq = 0.5 * (-b + disc.sqrt());
    let s1_sq = if s2_sq > 0.0 { c / s2_sq } else { 0.0 };
    let w2 = a1 * a1 + (a2 - a1) * s2_sq;
    let k2 = (a2 - a1) * (s2_sq - s1_sq) / w2;
    let alpha2 = if s1_sq > 0.0 {
        -a1 * a1 / (s1_sq * (a2 - a1)) * k2
    } else {
        f64::NEG_INFINITY
    };
    let beta2 = if s1_sq < a1 {
        a1 * a2 / ((a1 - s1_sq) * (a2 - a1)) * k2
    } else {
        f64::INFINITY
    };
    Ok(EllipticArgs { s1_sq, s2_sq, k2, alpha2, beta2 })
}

/// Squared momentum of the reduced chart at angle phi.
pub fn p_phi_sq(a1: f64, a2: f64, h: f64, j1: f64, j2: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let d = a1 * s * s + a2 * c * c;
    let mut u = 2.0 * h;
    if j1 != 0.0 {
        u -= j1 * j1 / (a1 * c * c);
    }
    if j2 != 0.0 {
        u -= j2 * j2 / (a2 * s * s);
    }
    u * d
}

/// Tanh-sinh quadrature: nodes accumulate double-exponentially at the
/// endpoints, which resolves the boundary layers the integrands develop
/// near the momentum axes.
fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (b + a);
    let r = 0.5 * (b - a);
    let g = |u: f64| {
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        let x = c + r * s.tanh();
        let w = r * std::f64::consts::FRAC_PI_2 * u.cosh() / s.cosh().powi(2);
        if w == 0.0 || !w.is_finite() {
            0.0
        } else {
            w * f(x)
        }
    };
    let umax = 4.0;
    let mut h = 1.0;
    let mut sum = g(0.0);
    let mut k = 1.0;
    while k <= umax {
        sum += g(k) + g(-k);
        k += 1.0;
    }
    let mut prev = sum * h;
    for level in 0..12 {
        h *= 0.5;
        let mut k = h;
        while k <= umax {
            sum += g(k) + g(-k);
            k += 2.0 * h;
        }
        let cur = sum * h;
        if level > 2 && (cur - prev).abs() < tol * (1.0 + cur.abs()) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// How to evaluate the action integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionMethod {
    Quadrature,
    Legendre,
}

/// The third action I = (1/2pi) closed integral of p_phi d phi over the
/// oscillation cycle. Zero on the polygon boundary.
pub fn action_i(a1: f64, a2: f64, h: f64, j1: f64, j2: f64, method: ActionMethod) -> Result<f64> {
    let excess = polygon_excess(a1, a2, h, j1, j2);
    if excess > 1e-14 {
        return Err(GeoflowError::OutsideDiagram(j1, j2));
    }
    if excess > -1e-14 {
        return Ok(0.0);
    }
    let args = branch_roots(a1, a2, h, j1, j2)?;
    match method {
        ActionMethod::Quadrature => Ok(action_quadrature(a1, a2, h, &args)),
        ActionMethod::Legendre => action_legendre(a1, a2, h, &args),
    }
}

/// Quadrature in the s = sqrt(a1) cos(phi) variable with the turning-point
/// desingularization s = s1 + (s2 - s1) sin^2 u.
fn action_quadrature(a1: f64, a2: f64, h: f64, args: &EllipticArgs) -> f64 {
    let s1 = args.s1_sq.sqrt();
    let s2 = args.s2_sq.sqrt();
    let w = s2 - s1;
    let f = |u: f64| {
        let (su, cu) = u.sin_cos();
        let s = s1 + w * su * su;
        // sqrt((s - s1)(s2 - s)) = w sin u cos u, ds = 2 w sin u cos u du
        let rad = (s + s1) * (s2 + s) * (a1 * a1 + (a2 - a1) * s * s);
        if s <= 0.0 || s * s >= a1 {
            return 0.0;
        }
        2.0 * w * w * su * su * cu * cu * (2.0 * h * rad / a1).sqrt() / (s * (a1 - s * s))
    };
    // the reduced orbit runs through the oscillation twice per period
    2.0 * tanh_sinh(&f, 0.0, std::f64::consts::FRAC_PI_2, 1e-13) / std::f64::consts::PI
}

/// Legendre normal form of the action. Needs both momenta nonzero so the
/// characteristics stay finite.
fn action_legendre(a1: f64, a2: f64, h: f64, args: &EllipticArgs) -> Result<f64> {
    let EllipticArgs { s1_sq, s2_sq, k2, alpha2, beta2 } = *args;
    if !alpha2.is_finite() || !beta2.is_finite() {
        return Err(GeoflowError::AxisLimit);
    }
    let w1 = a1 * a1 + (a2 - a1) * s1_sq;
    let w2 = a1 * a1 + (a2 - a1) * s2_sq;
    let e = elliptic_e(k2)?;
    let pi_a = elliptic_pi(alpha2, k2)?;
    let pi_b = elliptic_pi(beta2, k2)?;
    let pref = 4.0 * (2.0 * h).sqrt() / (2.0 * std::f64::consts::PI * a1.sqrt());
    Ok(pref
        * (w2.sqrt() * e - w1 * s2_sq / (a1 * w2.sqrt()) * pi_a
            + (s2_sq - a1) * w1 / (a1 * w2.sqrt()) * pi_b))
}

/// Derivative of the action with respect to J1 (`which` = 1) or J2
/// (`which` = 2), by the contour integral between the turning points.
pub fn di_dj(a1: f64, a2: f64, h: f64, j1: f64, j2: f64, which: usize) -> Result<f64> {
    if polygon_excess(a1, a2, h, j1, j2) > -1e-14 {
        return Err(GeoflowError::OutsideDiagram(j1, j2));
    }
    if (which == 1 && j1 == 0.0) || (which == 2 && j2 == 0.0) {
        return Err(GeoflowError::AxisLimit);
    }
    let args = branch_roots(a1, a2, h, j1, j2)?;
    let s1 = args.s1_sq.sqrt();
    let s2 = args.s2_sq.sqrt();
    let w = s2 - s1;
    let f = |u: f64| {
        let (su, cu) = u.sin_cos();
        let s = s1 + w * su * su;
        if s <= 0.0 || s * s >= a1 {
            return 0.0;
        }
        // 1/sqrt((s^2 - s1^2)(s2^2 - s^2)) with the sin^2 u substitution
        let den = ((s + s1) * (s2 + s)).sqrt();
        let core = ((a1 * a1 + (a2 - a1) * s * s) / (2.0 * h * a1)).sqrt() / den;
        let weight = 2.0 * core;
        match which {
            1 => weight * a1 / s,
            _ => weight * a1 * s / (a1 - s * s),
        }
    };
    let int = tanh_sinh(&f, 0.0, std::f64::consts::FRAC_PI_2, 1e-12);
    let pref = match which {
        1 => -2.0 * j1 / (std::f64::consts::PI * a1),
        _ => -2.0 * j2 / (std::f64::consts::PI * a2),
    };
    Ok(pref * int)
}

/// The quadrant reflection and gluing matrices, and their loop product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingMatrices {
    pub s1: [[i64; 3]; 3],
    pub s2: [[i64; 3]; 3],
    pub m1: [[i64; 3]; 3],
    pub m2: [[i64; 3]; 3],
    pub m3: [[i64; 3]; 3],
    pub m4: [[i64; 3]; 3],
    pub m_total: [[i64; 3]; 3],
}

fn mat_mul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                c[i][j] += a[i][k] * bk[j];
            }
        }
    }
    c
}

pub fn mat_det(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn mat_inv_unimodular(m: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let det = mat_det(m);
    assert!(det == 1 || det == -1);
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let mut inv = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            inv[i][j] = det * adj[i][j];
        }
    }
    inv
}

/// Exact integer gluing data of the four quadrants. The loop product
/// around the origin is the identity, so the system has no monodromy.
pub fn transition_matrices() -> GluingMatrices {
    let s1 = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let s2 = [[1, 0, 0], [0, -1, 0], [0, 0, 1]];
    let m1 = [[1, 0, 0], [0, 1, 0], [2, 0, 1]];
    let m2 = m1;
    let m3 = [[1, 0, 0], [0, 1, 0], [0, -2, 1]];
    let m4 = m3;
    let m_total = mat_mul(
        &mat_mul(
            &mat_inv_unimodular(&mat_mul(&m4, &s2)),
            &mat_inv_unimodular(&mat_mul(&m2, &s1)),
        ),
        &mat_mul(&mat_mul(&m3, &s2), &mat_mul(&m1, &s1)),
    );
    GluingMatrices { s1, s2, m1, m2, m3, m4, m_total }
}

/// Globally smooth third action, glued across the momentum axes so that
/// values and first derivatives are continuous. Returns (j1, j2, glued I).
pub fn smooth_action(a1: f64, a2: f64, h: f64, j1: f64, j2: f64) -> Result<[f64; 3]> {
    let i = action_i(a1, a2, h, j1, j2, ActionMethod::Quadrature)?;
    // the natural action has slope -1 kinks in |j1| and |j2|; the gluing
    // matrices add back twice the negative parts
    Ok([j1, j2, i + (j1.abs() - j1) + (j2.abs() - j2)])
}

/// Sample the energy surface in action space over the momentum polygon.
/// Each entry is (j1, j2, I, I + |j1| + |j2|).
pub fn energy_surface_grid(a1: f64, a2: f64, h: f64, n: usize) -> Result<Vec<[f64; 4]>> {
    if n < 3 {
        return Err(GeoflowError::Resolution);
    }
    let mut out = Vec::with_capacity(n * n);
    let sqrt2h = (2.0 * h).sqrt();
    for iu in 0..n {
        for iv in 0..n {
            let u = -1.0 + 2.0 * iu as f64 / (n - 1) as f64;
            let v = -1.0 + 2.0 * iv as f64 / (n - 1) as f64;
            // rotate the square onto the polygon (a diamond in scaled momenta)
            let a = 0.5 * (u + v);
            let b = 0.5 * (v - u);
            let j1 = sqrt2h * a1.sqrt() * a;
            let j2 = sqrt2h * a2.sqrt() * b;
            let i = action_i(a1, a2, h, j1, j2, ActionMethod::Quadrature)?;
            out.push([j1, j2, i, i + j1.abs() + j2.abs()]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: f64 = 1.0;
    const A2: f64 = 2.0;
    const H: f64 = 1.0;

    #[test]
    fn branch_root_example() {
        let args = branch_roots(A1, A2, H, 1.0, 0.4).unwrap();
        assert!((args.s1_sq - 0.548_616_5).abs() < 1e-6, "{}", args.s1_sq);
        assert!((args.s2_sq - 0.911_383_5).abs() < 1e-6, "{}", args.s2_sq);
        assert!((args.k2 - 0.189_784).abs() < 1e-5);
        assert!((args.alpha2 - (-0.345_93)).abs() < 1e-4);
        assert!((args.beta2 - 0.840_99).abs() < 1e-4);
        // p_phi vanishes at the matching turning angles
        for ssq in [args.s1_sq, args.s2_sq] {
            let phi = (ssq / A1).sqrt().acos();
            assert!(p_phi_sq(A1, A2, H, 1.0, 0.4, phi).abs() < 1e-10);
        }
    }

    #[test]
    fn branch_root_limits() {
        let args = branch_roots(A1, A2, H, 0.0, 0.4).unwrap();
        assert!(args.s1_sq.abs() < 1e-14);
        let args = branch_roots(A1, A2, H, 1.0, 0.0).unwrap();
        assert!((args.s2_sq - A1).abs() < 1e-12);
        assert!(branch_roots(A1, A2, H, 2.0, 2.0).is_err());
    }

    #[test]
    fn action_methods_agree() {
        let q = action_i(A1, A2, H, 1.0, 0.4, ActionMethod::Quadrature).unwrap();
        let l = action_i(A1, A2, H, 1.0, 0.4, ActionMethod::Legendre).unwrap();
        assert!(q > 0.0);
        assert!((q - l).abs() < 1e-9, "quadrature {q} vs legendre {l}");
    }

    #[test]
    fn action_grid_agreement() {
        let sqrt2h = (2.0 * H).sqrt();
        for iu in 1..20 {
            for iv in 1..20 {
                let u = -1.0 + 2.0 * iu as f64 / 20.0;
                let v = -1.0 + 2.0 * iv as f64 / 20.0;
                let j1 = sqrt2h * A1.sqrt() * 0.5 * (u + v);
                let j2 = sqrt2h * A2.sqrt() * 0.5 * (v - u);
                if j1 == 0.0 || j2 == 0.0 {
                    continue;
                }
                let q = action_i(A1, A2, H, j1, j2, ActionMethod::Quadrature).unwrap();
                let l = action_i(A1, A2, H, j1, j2, ActionMethod::Legendre).unwrap();
                assert!((q - l).abs() < 1e-9, "({j1}, {j2}): {q} vs {l}");
            }
        }
    }

    #[test]
    fn boundary_action_zero() {
        let j1 = 0.5;
        let j2 = A2.sqrt() * ((2.0 * H).sqrt() - j1 / A1.sqrt());
        let i = action_i(A1, A2, H, j1, j2, ActionMethod::Quadrature).unwrap();
        assert_eq!(i, 0.0);
    }

    #[test]
    fn action_scales_with_energy() {
        let i1 = action_i(A1, A2, H, 1.0, 0.4, ActionMethod::Quadrature).unwrap();
        let i4 = action_i(A1, A2, 4.0 * H, 2.0, 0.8, ActionMethod::Quadrature).unwrap();
        assert!((i4 - 2.0 * i1).abs() < 1e-9);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let delta = 1e-4;
        for (j1, j2) in [(1.0, 0.4), (0.3, 0.7), (-0.6, 0.5), (0.4, -0.9)] {
            for which in [1, 2] {
                let d = di_dj(A1, A2, H, j1, j2, which).unwrap();
                let (dj1, dj2) = if which == 1 { (delta, 0.0) } else { (0.0, delta) };
                let ip = action_i(A1, A2, H, j1 + dj1, j2 + dj2, ActionMethod::Quadrature).unwrap();
                let im = action_i(A1, A2, H, j1 - dj1, j2 - dj2, ActionMethod::Quadrature).unwrap();
                let fd = (ip - im) / (2.0 * delta);
                assert!((d - fd).abs() < 1e-5, "dI/dJ{which} at ({j1},{j2}): {d} vs {fd}");
            }
        }
    }

    #[test]
    fn residue_limits_and_jumps() {
        // the action loses a unit of slope through each residue; the jump
        // across either axis is 2 in magnitude
        let eps = 1e-5;
        let dp = di_dj(A1, A2, H, eps, 0.4, 1).unwrap();
        let dm = di_dj(A1, A2, H, -eps, 0.4, 1).unwrap();
        assert!((dp.abs() - 1.0).abs() < 1e-3, "{dp}");
        assert!((dm.abs() - 1.0).abs() < 1e-3);
        assert!(((dp - dm).abs() - 2.0).abs() < 1e-3);

        let dp = di_dj(A1, A2, H, 0.4, eps, 2).unwrap();
        let dm = di_dj(A1, A2, H, 0.4, -eps, 2).unwrap();
        assert!((dp.abs() - 1.0).abs() < 1e-3);
        assert!((dm.abs() - 1.0).abs() < 1e-3);
        assert!(((dp - dm).abs() - 2.0).abs() < 1e-3);

        assert!(di_dj(A1, A2, H, 0.0, 0.4, 1).is_err());
    }

    #[test]
    fn gluing_matrices_exact() {
        let g = transition_matrices();
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(g.m_total, id);
        for m in [g.s1, g.s2, g.m1, g.m2, g.m3, g.m4] {
            assert_eq!(mat_det(&m).abs(), 1);
        }
        assert_eq!(g.m1[2][0], 2);
        assert_eq!(g.m3[2][1], -2);
    }

    #[test]
    fn smooth_action_straddle() {
        // value continuity across j1 = 0
        let eps = 1e-6;
        let p = smooth_action(A1, A2, H, eps, 0.4).unwrap();
        let m = smooth_action(A1, A2, H, -eps, 0.4).unwrap();
        assert!((p[2] - m[2]).abs() < 1e-5);
        // slope continuity across j2 = 0
        let d = 1e-3;
        let f = |j2: f64| smooth_action(A1, A2, H, 0.5, j2).unwrap()[2];
        let slope_p = (f(2.0 * d) - f(d)) / d;
        let slope_m = (f(-d) - f(-2.0 * d)) / d;
        assert!((slope_p - slope_m).abs() < 1e-3, "{slope_p} vs {slope_m}");
        // natural action in the (+,+) quadrant
        let i = action_i(A1, A2, H, 1.0, 0.4, ActionMethod::Quadrature).unwrap();
        assert_eq!(smooth_action(A1, A2, H, 1.0, 0.4).unwrap(), [1.0, 0.4, i]);
    }

    #[test]
    fn grid_properties() {
        let grid = energy_surface_grid(A1, A2, H, 11).unwrap();
        assert_eq!(grid.len(), 121);
        for row in &grid {
            assert!(row[2] >= 0.0);
            assert!((row[3] - (row[2] + row[0].abs() + row[1].abs())).abs() < 1e-14);
        }
        // corners of the square map to polygon vertices where I = 0
        assert!(grid[0][2].abs() < 1e-12);
        assert!(energy_surface_grid(A1, A2, H, 2).is_err());
    }

    #[test]
    fn smoothing_removes_kinks() {
        // discrete second differences across the j1 axis, at fixed j2
        let j2 = 0.7;
        let d = 1e-2;
        let kink = |f: &dyn Fn(f64) -> f64| (f(d) - 2.0 * f(0.0) + f(-d)).abs() / d;
        let natural = kink(&|j1| action_i(A1, A2, H, j1, j2, ActionMethod::Quadrature).unwrap());
        let smoothed =
            kink(&|j1| action_i(A1, A2, H, j1, j2, ActionMethod::Quadrature).unwrap() + j1.abs());
        assert!(smoothed < natural / 10.0, "natural {natural} smoothed {smoothed}");
    }
}
