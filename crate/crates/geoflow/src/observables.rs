//! Observables on phase space with analytic gradients, and the Dirac
//! bracket of two observables.
//!
//! Every integral of motion used anywhere in the crate lives here as a
//! variant of [`Observable`], so bracket residual checks and the flow
//! Jacobians in the bifurcation module all share one gradient source.

use crate::ellipsoid::{constraint_values, EllipsoidSpec, PhasePoint, TangentVector};
use crate::error::{GeoflowError, Result};

/// Phase-space gradient, split into x- and y-parts.
pub type Gradient = ([f64; 4], [f64; 4]);

/// Anything with a value and a gradient at a phase point.
pub trait PhaseFunction {
    fn value(&self, spec: &EllipsoidSpec, p: &PhasePoint) -> f64;

    /// Central finite differences by default, step 1e-6 * (1 + |coordinate|).
    fn gradient(&self, spec: &EllipsoidSpec, p: &PhasePoint) -> Gradient {
        let mut gx = [0.0; 4];
        let mut gy = [0.0; 4];
        for i in 0..4 {
            let hx = 1e-6 * (1.0 + p.x[i].abs());
            let mut pp = *p;
            pp.x[i] = p.x[i] + hx;
            let fp = self.value(spec, &pp);
            pp.x[i] = p.x[i] - hx;
            let fm = self.value(spec, &pp);
            gx[i] = (fp - fm) / (2.0 * hx);

            let hy = 1e-6 * (1.0 + p.y[i].abs());
            let mut pp = *p;
            pp.y[i] = p.y[i] + hy;
            let fp = self.value(spec, &pp);
            pp.y[i] = p.y[i] - hy;
            let fm = self.value(spec, &pp);
            gy[i] = (fp - fm) / (2.0 * hy);
        }
        (gx, gy)
    }
}

/// Wrap a closure as an observable (finite-difference gradients).
pub struct FnObservable<F: Fn(&EllipsoidSpec, &PhasePoint) -> f64>(pub F);

impl<F: Fn(&EllipsoidSpec, &PhasePoint) -> f64> PhaseFunction for FnObservable<F> {
    fn value(&self, spec: &EllipsoidSpec, p: &PhasePoint) -> f64 {
        (self.0)(spec, p)
    }
}

/// Built-in observables with closed-form gradients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observable {
    /// Kinetic energy |y|^2 / 2.
    H,
    /// Ellipsoid constraint sum x_i^2/a_i - 1.
    C1,
    /// Tangency constraint sum x_i y_i / a_i.
    C2,
    /// Generic-case integral F_i (requires pairwise distinct axes).
    F(usize),
    /// c22 integral G_1 = lim F_0 + F_1.
    G1,
    /// c22 integral G_2 = lim F_2 + F_3.
    G2,
    /// c112 integral G = lim F_2 + F_3; c211 integral G = lim F_0 + F_1.
    G,
    /// Angular momentum x_p y_q - x_q y_p.
    L(usize, usize),
    /// Total angular momentum of the c13/c31 rotation block (positive root).
    Jtot,
    /// c22 edge integral s1 J1/sqrt(a1) + s2 J2/sqrt(a2) - sqrt(2H).
    K { s1: f64, s2: f64 },
}

/// Coefficients of an integral of the form
/// sum c_i y_i^2 + sum_{p<q} e_pq (x_p y_q - x_q y_p)^2.
struct QuadraticForm {
    ysq: [f64; 4],
    pair: [[f64; 4]; 4], // symmetric, zero diagonal
}

impl QuadraticForm {
    fn value(&self, p: &PhasePoint) -> f64 {
        let mut v = 0.0;
        for i in 0..4 {
            v += self.ysq[i] * p.y[i] * p.y[i];
        }
        for a in 0..4 {
            for b in (a + 1)..4 {
                if self.pair[a][b] != 0.0 {
                    let w = p.x[a] * p.y[b] - p.x[b] * p.y[a];
                    v += self.pair[a][b] * w * w;
                }
            }
        }
        v
    }

    fn gradient(&self, p: &PhasePoint) -> Gradient {
        let mut gx = [0.0; 4];
        let mut gy = [0.0; 4];
        for i in 0..4 {
            gy[i] = 2.0 * self.ysq[i] * p.y[i];
        }
        for j in 0..4 {
            for k in 0..4 {
                if k != j && self.pair[j][k] != 0.0 {
                    let w = p.x[j] * p.y[k] - p.x[k] * p.y[j];
                    gx[j] += 2.0 * self.pair[j][k] * w * p.y[k];
                    gy[j] -= 2.0 * self.pair[j][k] * w * p.x[k];
                }
            }
        }
        (gx, gy)
    }
}

impl Observable {
    /// Angular momenta generating the torus action in the c22 case.
    pub const J1: Observable = Observable::L(0, 1);
    pub const J2: Observable = Observable::L(2, 3);

    fn quadratic_form(&self, spec: &EllipsoidSpec) -> Option<QuadraticForm> {
        let a = &spec.alphas;
        let mut q = QuadraticForm {
            ysq: [0.0; 4],
            pair: [[0.0; 4]; 4],
        };
        let set = |q: &mut QuadraticForm, p: usize, r: usize, c: f64| {
            q.pair[p][r] = c;
            q.pair[r][p] = c;
        };
        match self {
            Observable::H => {
                q.ysq = [0.5; 4];
            }
            Observable::F(i) => {
                let i = *i;
                q.ysq[i] = 1.0;
                for k in 0..4 {
                    if k != i {
                        set(&mut q, i, k, 1.0 / (a[i] - a[k]));
                    }
                }
            }
            Observable::G1 => {
                // limit of F_0 + F_1 as a0 -> a1; the 01 cross-terms cancel
                q.ysq[0] = 1.0;
                q.ysq[1] = 1.0;
                let c = 1.0 / (a[0] - a[2]);
                set(&mut q, 0, 2, c);
                set(&mut q, 0, 3, c);
                set(&mut q, 1, 2, c);
                set(&mut q, 1, 3, c);
            }
            Observable::G2 => {
                q.ysq[2] = 1.0;
                q.ysq[3] = 1.0;
                let c = 1.0 / (a[2] - a[0]);
                set(&mut q, 0, 2, c);
                set(&mut q, 0, 3, c);
                set(&mut q, 1, 2, c);
                set(&mut q, 1, 3, c);
            }
            Observable::G => {
                use crate::ellipsoid::SymmetryCase::*;
                match spec.case {
                    C112 => {
                        q.ysq[2] = 1.0;
                        q.ysq[3] = 1.0;
                        set(&mut q, 0, 2, 1.0 / (a[2] - a[0]));
                        set(&mut q, 0, 3, 1.0 / (a[2] - a[0]));
                        set(&mut q, 1, 2, 1.0 / (a[2] - a[1]));
                        set(&mut q, 1, 3, 1.0 / (a[2] - a[1]));
                    }
                    C211 => {
                        q.ysq[0] = 1.0;
                        q.ysq[1] = 1.0;
                        set(&mut q, 0, 2, 1.0 / (a[0] - a[2]));
                        set(&mut q, 1, 2, 1.0 / (a[0] - a[2]));
                        set(&mut q, 0, 3, 1.0 / (a[0] - a[3]));
                        set(&mut q, 1, 3, 1.0 / (a[0] - a[3]));
                    }
                    _ => return None,
                }
            }
            _ => return None,
        }
        Some(q)
    }
}

impl PhaseFunction for Observable {
    fn value(&self, spec: &EllipsoidSpec, p: &PhasePoint) -> f64 {
        match self {
            Observable::H => p.energy(),
            Observable::C1 => constraint_values(spec, p).0,
            Observable::C2 => constraint_values(spec, p).1,
            Observable::L(i, k) => p.x[*i] * p.y[*k] - p.x[*k] * p.y[*i],
            Observable::Jtot => {
                let b = spec.triple_block();
                let l = |p0: usize, q0: usize| p.x[p0] * p.y[q0] - p.x[q0] * p.y[p0];
                (l(b[0], b[1]).powi(2) + l(b[0], b[2]).powi(2) + l(b[1], b[2]).powi(2)).sqrt()
            }
            Observable::K { s1, s2 } => {
                let (a1, a2) = spec.c22_axes();
                let j1 = Observable::J1.value(spec, p);
                let j2 = Observable::J2.value(spec, p);
                s1 * j1 / a1.sqrt() + s2 * j2 / a2.sqrt() - (2.0 * p.energy()).sqrt()
            }
            _ => self
                .quadratic_form(spec)
                .expect("quadratic observable")
                .value(p),
        }
    }

    fn gradient(&self, spec: &EllipsoidSpec, p: &PhasePoint) -> Gradient {
        let mut gx = [0.0; 4];
        let mut gy = [0.0; 4];
        match self {
            Observable::H => {
                gy = p.y;
            }
            Observable::C1 => {
                for i in 0..4 {
                    gx[i] = 2.0 * p.x[i] / spec.alphas[i];
                }
            }
            Observable::C2 => {
                for i in 0..4 {
                    gx[i] = p.y[i] / spec.alphas[i];
                    gy[i] = p.x[i] / spec.alphas[i];
                }
            }
            Observable::L(i, k) => {
                gx[*i] = p.y[*k];
                gx[*k] = -p.y[*i];
                gy[*i] = -p.x[*k];
                gy[*k] = p.x[*i];
            }
            Observable::Jtot => {
                let b = spec.triple_block();
                let j = self.value(spec, p);
                for &(p0, q0) in &[(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
                    let l = Observable::L(p0, q0);
                    let lv = l.value(spec, p);
                    let (lgx, lgy) = l.gradient(spec, p);
                    for i in 0..4 {
                        gx[i] += lv * lgx[i] / j;
                        gy[i] += lv * lgy[i] / j;
                    }
                }
            }
            Observable::K { s1, s2 } => {
                let (a1, a2) = spec.c22_axes();
                let (g1x, g1y) = Observable::J1.gradient(spec, p);
                let (g2x, g2y) = Observable::J2.gradient(spec, p);
                let sqrt2h = (2.0 * p.energy()).sqrt();
                for i in 0..4 {
                    gx[i] = s1 * g1x[i] / a1.sqrt() + s2 * g2x[i] / a2.sqrt();
                    gy[i] = s1 * g1y[i] / a1.sqrt() + s2 * g2y[i] / a2.sqrt()
                        - p.y[i] / sqrt2h;
                }
            }
            _ => {
                return self
                    .quadratic_form(spec)
                    .expect("quadratic observable")
                    .gradient(p)
            }
        }
        (gx, gy)
    }
}

/// Check that a generic-case F_i is well defined: all axis differences
/// from index i must stay away from zero.
pub fn check_generic_f(spec: &EllipsoidSpec, i: usize) -> Result<()> {
    for k in 0..4 {
        if k != i && (spec.alphas[i] - spec.alphas[k]).abs() < 1e-8 {
            return Err(GeoflowError::DegenerateAxes(i.min(k), i.max(k)));
        }
    }
    Ok(())
}

/// The closed-form Dirac bracket tables at a point:
/// `bxy[i][k] = {x_i, y_k}` and `byy[i][k] = {y_i, y_k}`.
pub fn bracket_tables(spec: &EllipsoidSpec, p: &PhasePoint) -> ([[f64; 4]; 4], [[f64; 4]; 4]) {
    let a = &spec.alphas;
    let (_, _, d) = constraint_values(spec, p);
    let mut bxy = [[0.0; 4]; 4];
    let mut byy = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let delta = if i == k { 1.0 } else { 0.0 };
            bxy[i][k] = delta - p.x[i] * p.x[k] / (d * a[i] * a[k]);
            byy[i][k] = -(p.x[i] * p.y[k] - p.x[k] * p.y[i]) / (d * a[i] * a[k]);
        }
    }
    (bxy, byy)
}

/// Dirac bracket {f, g} at a constrained point, via the chain rule over the
/// closed-form basis brackets.
pub fn poisson_bracket(
    spec: &EllipsoidSpec,
    f: &dyn PhaseFunction,
    g: &dyn PhaseFunction,
    p: &PhasePoint,
) -> f64 {
    let (fx, fy) = f.gradient(spec, p);
    let (gx, gy) = g.gradient(spec, p);
    bracket_of_gradients(spec, p, &(fx, fy), &(gx, gy))
}

/// Bracket evaluated directly from two gradients.
pub fn bracket_of_gradients(
    spec: &EllipsoidSpec,
    p: &PhasePoint,
    f: &Gradient,
    g: &Gradient,
) -> f64 {
    let (bxy, byy) = bracket_tables(spec, p);
    let (fx, fy) = f;
    let (gx, gy) = g;
    let mut v = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            // {x_i, y_k} terms, both orders
            v += fx[i] * gy[k] * bxy[i][k];
            v -= fy[k] * gx[i] * bxy[i][k];
            // {y_i, y_k} terms
            v += fy[i] * gy[k] * byy[i][k];
        }
    }
    v
}

/// The vector field generated by an observable through the Dirac bracket:
/// dz = {z, F}.
pub fn observable_vector_field(
    spec: &EllipsoidSpec,
    f: &dyn PhaseFunction,
    p: &PhasePoint,
) -> TangentVector {
    let (fx, fy) = f.gradient(spec, p);
    let (bxy, byy) = bracket_tables(spec, p);
    let mut dx = [0.0; 4];
    let mut dy = [0.0; 4];
    for i in 0..4 {
        for k in 0..4 {
            dx[i] += bxy[i][k] * fy[k];
            dy[i] += -bxy[k][i] * fx[k] + byy[i][k] * fy[k];
        }
    }
    TangentVector { dx, dy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipsoid::SymmetryCase;
    use crate::sample::sample_constrained;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c22() -> EllipsoidSpec {
        EllipsoidSpec::from_distinct(SymmetryCase::C22, &[1.0, 2.0]).unwrap()
    }

    #[test]
    fn bracket_antisymmetry_and_hh() {
        let spec = c22();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = sample_constrained(&spec, &mut rng);
            assert!(poisson_bracket(&spec, &Observable::H, &Observable::H, &p).abs() < 1e-14);
            let fg = poisson_bracket(&spec, &Observable::G1, &Observable::J1, &p);
            let gf = poisson_bracket(&spec, &Observable::J1, &Observable::G1, &p);
            assert!((fg + gf).abs() < 1e-14);
        }
    }

    #[test]
    fn casimir_property() {
        let spec = c22();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let obs = [
            Observable::H,
            Observable::G1,
            Observable::G2,
            Observable::J1,
            Observable::J2,
        ];
        for _ in 0..1000 {
            let p = sample_constrained(&spec, &mut rng);
            for f in &obs {
                let b1 = poisson_bracket(&spec, &Observable::C1, f, &p);
                let b2 = poisson_bracket(&spec, &Observable::C2, f, &p);
                assert!(b1.abs() < 1e-10, "{{C1, {f:?}}} = {b1:e}");
                assert!(b2.abs() < 1e-10, "{{C2, {f:?}}} = {b2:e}");
            }
        }
    }

    #[test]
    fn analytic_gradients_match_finite_differences() {
        let spec = EllipsoidSpec::from_distinct(SymmetryCase::C112, &[1.0, 2.0, 3.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let obs = [
            Observable::H,
            Observable::C1,
            Observable::C2,
            Observable::F(0),
            Observable::F(1),
            Observable::G,
            Observable::L(2, 3),
        ];
        for _ in 0..20 {
            let p = sample_constrained(&spec, &mut rng);
            for f in &obs {
                let (ax, ay) = f.gradient(&spec, &p);
                let wrapped = FnObservable(|s: &EllipsoidSpec, q: &PhasePoint| f.value(s, q));
                let (nx, ny) = PhaseFunction::gradient(&wrapped, &spec, &p);
                for i in 0..4 {
                    assert!((ax[i] - nx[i]).abs() < 1e-7, "{f:?} x{i}");
                    assert!((ay[i] - ny[i]).abs() < 1e-7, "{f:?} y{i}");
                }
            }
        }
    }

    #[test]
    fn non_involutive_so3_witness() {
        // {L12, L13} = L23 on the c13 rotation block (1,2,3)
        let spec = EllipsoidSpec::from_distinct(SymmetryCase::C13, &[1.0, 2.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let p = sample_constrained(&spec, &mut rng);
            let b = poisson_bracket(&spec, &Observable::L(1, 2), &Observable::L(1, 3), &p);
            let l23 = Observable::L(2, 3).value(&spec, &p);
            assert!((b - l23).abs() < 1e-10, "residual {:e}", (b - l23).abs());
        }
    }

    #[test]
    fn dirac_bracket_example_point() {
        let spec = c22();
        let p = PhasePoint::new([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        // {x0,y0} = 0 and {x1,y1} = 1 at the pole; sanity for observable route
        let x0 = FnObservable(|_: &EllipsoidSpec, q: &PhasePoint| q.x[0]);
        let y0 = FnObservable(|_: &EllipsoidSpec, q: &PhasePoint| q.y[0]);
        let x1 = FnObservable(|_: &EllipsoidSpec, q: &PhasePoint| q.x[1]);
        let y1 = FnObservable(|_: &EllipsoidSpec, q: &PhasePoint| q.y[1]);
        assert!(poisson_bracket(&spec, &x0, &y0, &p).abs() < 1e-9);
        assert!((poisson_bracket(&spec, &x1, &y1, &p) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_axes_refused() {
        let spec = c22();
        assert!(check_generic_f(&spec, 0).is_err());
        let spec = EllipsoidSpec::from_distinct(
            SymmetryCase::Generic,
            &[0.25, 0.5, 1.0, 2.0],
        )
        .unwrap();
        assert!(check_generic_f(&spec, 0).is_ok());
    }
}
