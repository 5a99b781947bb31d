//! Modified Prüfer variables and the oscillatory kernel functions.
//!
//! The substitution `y = r·sinθ`, `y^[1] = √λ·r·cosθ` turns the
//! quasi-derivative system into the scalar phase equation
//!
//! ```text
//! θ' = √λ + λ^{-1/2}·u²(x)·sin²θ + u(x)·sin 2θ
//! ```
//!
//! which is independent of `r`; the amplitude follows by quadrature,
//! `log r(x) = log c₁ - ∫₀ˣ [u·cos 2θ + ½λ^{-1/2}u²·sin 2θ] dt`.
//!
//! The kernel functions `b, a, B, A, U, w` are cumulative oscillatory
//! integrals of `u` and `u²` against `sin/cos(2c + 2√λ t)`;  `υ` combines
//! them into the second-order phase correction and `Υ` is the remainder
//! gauge whose square bounds all asymptotic remainders.  Phase integration
//! is restricted to real `λ > 0` (the self-adjoint shooting path); complex
//! `λ` goes through [`crate::quasi`].

use crate::error::{Error, Result};
use crate::potential::{Primitive, UPow};
use crate::quad::oscillation_cuts;
use crate::quasi::{build_grid, QuasiState};
use crate::scalar::Scalar;
use num_complex::Complex;

type C<S> = Complex<S>;

/// Phase/amplitude trajectory for fixed `λ > 0` and initial angle `c`.
#[derive(Debug, Clone)]
pub struct PrueferTrajectory<S: Scalar> {
    pub lambda: S,
    /// Initial angle `θ(0) = c`.
    pub c: S,
    /// Initial amplitude `r(0) = c₁ > 0`.
    pub r0: S,
    pub grid: Vec<S>,
    pub theta: Vec<S>,
    /// `θ'` at the grid nodes (used for Hermite interpolation in quadratures).
    pub dtheta: Vec<S>,
    /// `log r` accumulated jointly with the phase (ODE route).
    pub log_r: Vec<S>,
}

impl<S: Scalar> PrueferTrajectory<S> {
    pub fn theta_end(&self) -> S {
        *self.theta.last().unwrap()
    }
}

fn theta_rhs<S: Scalar>(u: S, sqrt_l: S, theta: S) -> S {
    let s = theta.sin();
    sqrt_l + u * u * s * s / sqrt_l + u * (S::two() * theta).sin()
}

fn logr_rhs<S: Scalar>(u: S, sqrt_l: S, theta: S) -> S {
    -(u * (S::two() * theta).cos() + u * u * (S::two() * theta).sin() * S::half() / sqrt_l)
}

// Cash–Karp embedded Runge–Kutta 4(5) tableau.
const CK_A: [[f64; 5]; 5] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
    [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
    [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
    [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ],
];
const CK_B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const CK_B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
];

/// Integrate `θ` (and `log r` alongside) for `λ > 0`.
///
/// Adaptive Cash–Karp steps inside each smooth cell, hard breaks at the
/// primitive's mesh points, local tolerance `1e-11`, accepted points kept
/// dense enough for 512-point sampling.
pub fn theta_trajectory<S: Scalar>(p: &Primitive<S>, lambda: S, c: S) -> Result<PrueferTrajectory<S>> {
    theta_trajectory_with(p, lambda, c, S::one())
}

pub fn theta_trajectory_with<S: Scalar>(
    p: &Primitive<S>,
    lambda: S,
    c: S,
    r0: S,
) -> Result<PrueferTrajectory<S>> {
    if !(lambda > S::zero()) {
        return Err(Error::domain("Prüfer integration requires real λ > 0"));
    }
    if !(r0 > S::zero()) {
        return Err(Error::domain("initial amplitude must be positive"));
    }
    let (a, b) = p.interval();
    let sqrt_l = lambda.sqrt();
    let tol = S::of(1e-11);
    let max_h = (b - a) / S::of(512.0);

    let mut cuts: Vec<S> = p.mesh_points().into_iter().filter(|&q| q > a && q < b).collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.push(b);

    let mut grid = vec![a];
    let mut theta = vec![c];
    let mut logr = vec![S::zero()];
    let mut dtheta = vec![theta_rhs(p.eval_u(a)?, sqrt_l, c)];

    let mut x = a;
    let mut th = c;
    let mut lr = S::zero();
    // initial step guess: resolve the phase oscillation
    let mut h = (S::of(0.1) / sqrt_l).min(max_h);

    for cut in cuts {
        while x < cut {
            h = h.min(cut - x).min(max_h);
            loop {
                // one Cash–Karp attempt on the state (θ, log r)
                let mut k = [[S::zero(); 2]; 6];
                let u0 = p.eval_u(x)?;
                k[0] = [theta_rhs(u0, sqrt_l, th), logr_rhs(u0, sqrt_l, th)];
                for stage in 1..6 {
                    let mut ty = th;
                    let mut _tl = lr;
                    for j in 0..stage {
                        let aij = S::of(CK_A[stage - 1][j]);
                        ty = ty + h * aij * k[j][0];
                        _tl = _tl + h * aij * k[j][1];
                    }
                    let xs = x + h * S::of(CK_A[stage - 1][..stage].iter().sum::<f64>());
                    let us = p.eval_u(xs.min(b))?;
                    k[stage] = [theta_rhs(us, sqrt_l, ty), logr_rhs(us, sqrt_l, ty)];
                }
                let mut th5 = th;
                let mut lr5 = lr;
                let mut th4 = th;
                for (j, kj) in k.iter().enumerate() {
                    th5 = th5 + h * S::of(CK_B5[j]) * kj[0];
                    lr5 = lr5 + h * S::of(CK_B5[j]) * kj[1];
                    th4 = th4 + h * S::of(CK_B4[j]) * kj[0];
                }
                let err = (th5 - th4).abs();
                let scale = S::one() + th.abs();
                if err <= tol * scale {
                    x = x + h;
                    th = th5;
                    lr = lr5;
                    grid.push(x);
                    theta.push(th);
                    logr.push(lr);
                    dtheta.push(theta_rhs(p.eval_u(x.min(b))?, sqrt_l, th));
                    // step growth, capped
                    let grow = if err > S::zero() {
                        (tol * scale / err).powf(S::of(0.2)) * S::of(0.9)
                    } else {
                        S::two()
                    };
                    h = (h * grow.min(S::two())).min(max_h);
                    break;
                }
                let shrink = (tol * scale / err).powf(S::of(0.25)) * S::of(0.9);
                h = h * shrink.max(S::of(0.1));
                if h < S::of(1e-14) {
                    return Err(Error::accuracy(
                        format!("phase step underflow near x = {x}"),
                        err.to_f64().unwrap_or(f64::NAN),
                    ));
                }
            }
        }
        x = cut;
    }
    Ok(PrueferTrajectory {
        lambda,
        c,
        r0,
        grid,
        theta,
        dtheta,
        log_r: logr,
    })
}

/// `log r` by direct quadrature of the exponent over the trajectory grid
/// (independent of the jointly integrated ODE route).
///
/// Simpson panels with the midpoint phase from cubic Hermite interpolation;
/// `u` is sampled one-sidedly so jump cells stay exact.
pub fn log_r_trajectory<S: Scalar>(p: &Primitive<S>, traj: &PrueferTrajectory<S>) -> Result<Vec<S>> {
    let sqrt_l = traj.lambda.sqrt();
    let n = traj.grid.len();
    let mut out = Vec::with_capacity(n);
    let mut acc = S::zero();
    out.push(acc);
    for i in 1..n {
        let (t0, t1) = (traj.grid[i - 1], traj.grid[i]);
        let h = t1 - t0;
        let mid = (t0 + t1) * S::half();
        // cubic Hermite midpoint of θ
        let th_mid = (traj.theta[i - 1] + traj.theta[i]) * S::half()
            + h * (traj.dtheta[i - 1] - traj.dtheta[i]) * S::of(0.125);
        let eps = h * S::of(1e-9);
        let g0 = logr_rhs(p.eval_u(t0)?, sqrt_l, traj.theta[i - 1]);
        let gm = logr_rhs(p.eval_u(mid)?, sqrt_l, th_mid);
        let g1 = logr_rhs(p.eval_u(t1 - eps)?, sqrt_l, traj.theta[i]);
        acc = acc + h / S::of(6.0) * (g0 + S::of(4.0) * gm + g1);
        out.push(acc);
    }
    Ok(out)
}

/// `(y, y^[1])` samples reconstructed from a trajectory:
/// `y = r sinθ`, `y^[1] = √λ·r·cosθ`.
pub fn reconstruct_solution<S: Scalar>(traj: &PrueferTrajectory<S>) -> Vec<QuasiState<S>> {
    let sqrt_l = traj.lambda.sqrt();
    traj.grid
        .iter()
        .zip(traj.theta.iter().zip(traj.log_r.iter()))
        .map(|(&x, (&th, &lr))| {
            let r = traj.r0 * lr.exp();
            QuasiState::new(
                x,
                C::new(r * th.sin(), S::zero()),
                C::new(sqrt_l * r * th.cos(), S::zero()),
            )
        })
        .collect()
}

/// Kernel values at `(c, x, λ)` plus the global gauge `Υ(c, λ)`.
#[derive(Debug, Clone, Copy)]
pub struct KernelValues<S: Scalar> {
    /// `b = ∫₀ˣ u(t)·sin(2c + 2√λ t) dt`
    pub b: C<S>,
    /// `a = ∫₀ˣ u(t)·cos(2c + 2√λ t) dt`
    pub a: C<S>,
    /// `A = ∫₀ˣ u²(t)·cos(2c + 2√λ t) dt`
    pub big_a: C<S>,
    /// `B = ∫₀ˣ u²(t)·sin(2c + 2√λ t) dt`
    pub big_b: C<S>,
    /// `U = ∫₀ˣ u² dt`
    pub u_int: S,
    /// Iterated kernel `w = ∫₀ˣ u(t)cos(2c+2√λt)·∫₀ᵗ u(s)sin(2c+2√λs) ds dt`
    pub w: C<S>,
    /// `υ = b + ½λ^{-1/2}·U + 2w - ½λ^{-1/2}·A`
    pub upsilon_small: C<S>,
    /// `Υ(c,λ) = sup_x(|b|+|a|+2|w|+½|λ^{-1/2}A|) + |λ|^{-1/2}‖u‖²`
    pub upsilon_cap: S,
}

/// Cumulative kernel sweep over a grid.
#[derive(Debug, Clone)]
pub struct KernelSweep<S: Scalar> {
    pub grid: Vec<S>,
    pub b: Vec<C<S>>,
    pub a: Vec<C<S>>,
    pub big_a: Vec<C<S>>,
    pub big_b: Vec<C<S>>,
    pub u_int: Vec<S>,
    pub w: Vec<C<S>>,
    pub lambda: C<S>,
    pub c: S,
    pub u_norm2: S,
}

impl<S: Scalar> KernelSweep<S> {
    pub fn upsilon(&self) -> S {
        let inv_sqrt = S::one() / self.lambda.norm().sqrt();
        let mut sup = S::zero();
        for i in 0..self.grid.len() {
            let v = self.b[i].norm()
                + self.a[i].norm()
                + S::two() * self.w[i].norm()
                + S::half() * inv_sqrt * self.big_a[i].norm();
            sup = sup.max(v);
        }
        sup + inv_sqrt * self.u_norm2
    }

    pub fn values_at(&self, idx: usize) -> KernelValues<S> {
        let z = self.lambda.sqrt();
        let inv = C::new(S::one(), S::zero()) / z;
        let upsilon_small = self.b[idx]
            + inv * S::half() * self.u_int[idx]
            + self.w[idx] * S::two()
            - inv * S::half() * self.big_a[idx];
        KernelValues {
            b: self.b[idx],
            a: self.a[idx],
            big_a: self.big_a[idx],
            big_b: self.big_b[idx],
            u_int: self.u_int[idx],
            w: self.w[idx],
            upsilon_small,
            upsilon_cap: self.upsilon(),
        }
    }
}

/// Run the cumulative kernel sweep for `(c, λ)` over the whole interval.
///
/// The panel grid is the union of a ≥512-point uniform base, the primitive's
/// mesh points and half-period oscillation cuts; within a panel the iterated
/// `w`-integral keeps the inner integral as a running accumulator, so the
/// sweep is `O(panels)` per `λ`.
pub fn kernel_sweep<S: Scalar>(
    p: &Primitive<S>,
    c: S,
    lambda: C<S>,
    extra_points: &[S],
) -> Result<KernelSweep<S>> {
    if lambda.norm() == S::zero() {
        return Err(Error::domain("kernels need λ ≠ 0"));
    }
    let (x_lo, x_hi) = p.interval();
    let z = lambda.sqrt();
    let two_z = z * S::two();
    let mut pts = p.mesh_points();
    pts.extend_from_slice(extra_points);
    pts.extend(oscillation_cuts(two_z, x_lo, x_hi, 8192));
    let grid = build_grid(x_lo, x_hi, 512, &pts);

    let i_unit = C::new(S::zero(), S::one());
    let e_plus = (i_unit * S::two() * c).exp(); // e^{2ic}
    let e_minus = (-i_unit * S::two() * c).exp();
    let half = S::half();

    // trig(2c + 2zt) from the two one-sided exponential integrals
    let combine_sin = |ip: C<S>, im: C<S>| (e_plus * ip - e_minus * im) / (i_unit * S::two());
    let combine_cos = |ip: C<S>, im: C<S>| (e_plus * ip + e_minus * im) * half;

    let n = grid.len();
    let zero = C::new(S::zero(), S::zero());
    let mut out = KernelSweep {
        grid: grid.clone(),
        b: vec![zero; n],
        a: vec![zero; n],
        big_a: vec![zero; n],
        big_b: vec![zero; n],
        u_int: vec![S::zero(); n],
        w: vec![zero; n],
        lambda,
        c,
        u_norm2: p.integrate_u2(x_lo, x_hi)?,
    };

    let unit_w = (S::one(), S::zero());
    for i in 1..n {
        let (t0, t1) = (grid[i - 1], grid[i]);
        let ip = p.osc_integral(UPow::One, unit_w, two_z, t0, t1)?;
        let im = p.osc_integral(UPow::One, unit_w, -two_z, t0, t1)?;
        let ip2 = p.osc_integral(UPow::Two, unit_w, two_z, t0, t1)?;
        let im2 = p.osc_integral(UPow::Two, unit_w, -two_z, t0, t1)?;
        let db = combine_sin(ip, im);
        let da = combine_cos(ip, im);
        out.b[i] = out.b[i - 1] + db;
        out.a[i] = out.a[i - 1] + da;
        out.big_b[i] = out.big_b[i - 1] + combine_sin(ip2, im2);
        out.big_a[i] = out.big_a[i - 1] + combine_cos(ip2, im2);
        out.u_int[i] = out.u_int[i - 1] + p.integrate_u2(t0, t1)?;

        // w-panel: carry the inner integral from the left panel edge and add
        // the panel-local double term by Gauss–Kronrod with exact inner values
        let b_left = out.b[i - 1];
        let local = {
            let g = |t: S| -> C<S> {
                let ipl = p
                    .osc_integral(UPow::One, unit_w, two_z, t0, t)
                    .unwrap_or(zero);
                let iml = p
                    .osc_integral(UPow::One, unit_w, -two_z, t0, t)
                    .unwrap_or(zero);
                let inner = combine_sin(ipl, iml);
                let u = p.eval_u(t).unwrap_or(S::zero());
                let phase = combine_cos((i_unit * two_z * t).exp(), (-i_unit * two_z * t).exp());
                inner * phase * u
            };
            crate::quad::gk_adaptive(&g, t0, t1, &[], S::of(1e-10), 2000)?
        };
        out.w[i] = out.w[i - 1] + b_left * da + local;
    }
    Ok(out)
}

/// Kernel values at a single `(c, x, λ)` (sweeps the whole interval so the
/// sup in `Υ` is available).
pub fn kernels<S: Scalar>(p: &Primitive<S>, c: S, x: S, lambda: C<S>) -> Result<KernelValues<S>> {
    let (a, b) = p.interval();
    if !(x >= a && x <= b) {
        return Err(Error::domain("x outside interval"));
    }
    let sweep = kernel_sweep(p, c, lambda, &[x])?;
    let idx = sweep
        .grid
        .iter()
        .position(|&g| (g - x).abs() < S::of(1e-12))
        .ok_or_else(|| Error::domain("x not found on sweep grid"))?;
    Ok(sweep.values_at(idx))
}

/// The remainder gauge `Υ(c, λ)` alone.
pub fn upsilon<S: Scalar>(p: &Primitive<S>, c: S, lambda: C<S>) -> Result<S> {
    Ok(kernel_sweep(p, c, lambda, &[])?.upsilon())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{ScaledPrimitive, SmoothnessClass};
    use crate::quasi;

    const PI: f64 = std::f64::consts::PI;

    fn cx(re: f64, im: f64) -> C<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn free_phase_is_linear() {
        let p = Primitive::zero((0.0, PI));
        let traj = theta_trajectory(&p, 9.0, 0.7).unwrap();
        for (i, &x) in traj.grid.iter().enumerate() {
            assert!((traj.theta[i] - (0.7 + 3.0 * x)).abs() < 1e-10);
            assert!(traj.log_r[i].abs() < 1e-12);
        }
    }

    #[test]
    fn step_phase_continuous_through_jump() {
        let p = Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap();
        let traj = theta_trajectory(&p, 25.0, 0.0).unwrap();
        // grid contains the breakpoint; θ values on both sides stay close
        let idx = traj
            .grid
            .iter()
            .position(|&x| (x - PI / 2.0).abs() < 1e-12)
            .expect("breakpoint on grid");
        let before = traj.theta[idx - 1];
        let after = traj.theta[idx + 1];
        let gap = traj.grid[idx + 1] - traj.grid[idx - 1];
        assert!((after - before).abs() < 10.0 * gap * 6.0); // θ' bounded by √λ + |u| + u²/√λ
    }

    #[test]
    fn log_r_two_routes_agree() {
        let p = Primitive::constant((0.0, PI), 1.0);
        let traj = theta_trajectory(&p, 100.0, 0.3).unwrap();
        let quad_route = log_r_trajectory(&p, &traj).unwrap();
        for i in 0..traj.grid.len() {
            assert!(
                (quad_route[i] - traj.log_r[i]).abs() < 1e-8,
                "node {i}: {} vs {}",
                quad_route[i],
                traj.log_r[i]
            );
        }
        // r > 0 always
        assert!(traj.log_r.iter().all(|lr| lr.exp() > 0.0));
    }

    #[test]
    fn reconstruct_free_pair() {
        let p = Primitive::zero((0.0, PI));
        let lambda = 16.0;
        // c = 0, c₁ = λ^{-1/2}: y = Ψ
        let traj = theta_trajectory_with(&p, lambda, 0.0, 0.25).unwrap();
        let states = reconstruct_solution(&traj);
        for s in &states {
            assert!((s.y.re - (4.0 * s.x).sin() / 4.0).abs() < 1e-10);
            assert!((s.y1.re - (4.0 * s.x).cos()).abs() < 1e-9);
        }
        // c = π/2, c₁ = 1: y = Φ
        let traj = theta_trajectory_with(&p, lambda, PI / 2.0, 1.0).unwrap();
        let states = reconstruct_solution(&traj);
        for s in &states {
            assert!((s.y.re - (4.0 * s.x).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn pruefer_matches_quasi_propagation() {
        let p = Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap();
        let lambda = 25.0;
        let traj = theta_trajectory_with(&p, lambda, 0.0, 0.2).unwrap();
        let states = reconstruct_solution(&traj);
        let u = ScaledPrimitive::real(p);
        let s0 = quasi::QuasiState::new(0.0, states[0].y, states[0].y1);
        for target in [0.8, PI / 2.0 + 0.3, PI] {
            let direct = quasi::propagate(&u, cx(lambda, 0.0), 0.0, target, &s0).unwrap();
            let idx = traj
                .grid
                .iter()
                .position(|&x| (x - target).abs() < 2e-3)
                .expect("target near grid");
            let got = &states[idx];
            let dx = traj.grid[idx] - target;
            // compare after a tiny correction step: |θ'|·dx ≤ 6·|dx|
            assert!(
                (got.y - direct.y).norm() < 1e-7 + 8.0 * dx.abs(),
                "target {target}"
            );
        }
    }

    #[test]
    fn kernels_closed_forms_for_unit_u() {
        let p = Primitive::constant((0.0, PI), 1.0);
        for &z in &[3.0f64, 7.5] {
            let lambda = cx(z * z, 0.0);
            let x = 1.3;
            let kv = kernels(&p, 0.0, x, lambda).unwrap();
            let b_expect = (1.0 - (2.0 * z * x).cos()) / (2.0 * z);
            let a_expect = (2.0 * z * x).sin() / (2.0 * z);
            assert!((kv.b.re - b_expect).abs() < 1e-11, "b: {} vs {b_expect}", kv.b.re);
            assert!((kv.a.re - a_expect).abs() < 1e-11);
            assert!((kv.u_int - x).abs() < 1e-12);
            // υ recomposition identity
            let inv = 1.0 / z;
            let expect = kv.b + cx(0.5 * inv * kv.u_int, 0.0) + kv.w * 2.0 - kv.big_a * 0.5 * inv;
            assert!((kv.upsilon_small - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn kernels_zero_for_zero_potential() {
        let p = Primitive::zero((0.0, PI));
        let kv = kernels(&p, 0.4, 2.0, cx(25.0, 0.0)).unwrap();
        assert!(kv.b.norm() + kv.a.norm() + kv.w.norm() + kv.big_a.norm() < 1e-14);
        assert!(kv.upsilon_cap < 1e-14);
        assert!(kernels(&p, 0.0, 1.0, cx(0.0, 0.0)).is_err());
    }

    #[test]
    fn w_kernel_closed_form_unit_u() {
        // w(0, π, n²) = -π/(4n) for u ≡ 1
        let p = Primitive::constant((0.0, PI), 1.0);
        for n in [2u32, 5] {
            let kv = kernels(&p, 0.0, PI, cx((n * n) as f64, 0.0)).unwrap();
            let expect = -PI / (4.0 * n as f64);
            assert!(
                (kv.w.re - expect).abs() < 1e-10,
                "n={n}: {} vs {expect}",
                kv.w.re
            );
        }
    }

    #[test]
    fn theta_remainder_scales_like_upsilon_squared() {
        // step potential: θ(x) - (c + √λx + υ) bounded by K·Υ² with stable K
        let p = Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap();
        let c = 0.0;
        let mut ks = Vec::new();
        for &m in &[20.0f64, 40.0, 80.0] {
            let lambda = m * m;
            let traj = theta_trajectory(&p, lambda, c).unwrap();
            let sweep = kernel_sweep(&p, c, cx(lambda, 0.0), &[]).unwrap();
            let ups = sweep.upsilon();
            let mut worst = 0.0f64;
            for (i, &x) in sweep.grid.iter().enumerate() {
                // nearest trajectory sample
                let j = traj
                    .grid
                    .binary_search_by(|g| g.partial_cmp(&x).unwrap())
                    .unwrap_or_else(|e| e.min(traj.grid.len() - 1));
                let dx = traj.grid[j] - x;
                if dx.abs() > 1e-4 {
                    continue;
                }
                let theta = traj.theta[j] - traj.dtheta[j] * dx;
                let model = c + lambda.sqrt() * x + sweep.values_at(i).upsilon_small.re;
                worst = worst.max((theta - model).abs());
            }
            ks.push(worst / (ups * ups));
        }
        let kmax = ks.iter().cloned().fold(f64::MIN, f64::max);
        let kmin = ks.iter().cloned().fold(f64::MAX, f64::min);
        assert!(
            kmax / kmin < 4.0,
            "remainder constant unstable: {ks:?}"
        );
    }

    #[test]
    fn amplitude_remainder_scales_like_upsilon_squared() {
        let p = Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap();
        let c = 0.0;
        let mut ks = Vec::new();
        for &m in &[20.0f64, 40.0, 80.0] {
            let lambda = m * m;
            let traj = theta_trajectory(&p, lambda, c).unwrap();
            let sweep = kernel_sweep(&p, c, cx(lambda, 0.0), &[]).unwrap();
            let ups = sweep.upsilon();
            let mut worst = 0.0f64;
            for (i, &x) in sweep.grid.iter().enumerate() {
                let j = traj
                    .grid
                    .binary_search_by(|g| g.partial_cmp(&x).unwrap())
                    .unwrap_or_else(|e| e.min(traj.grid.len() - 1));
                if (traj.grid[j] - x).abs() > 1e-4 {
                    continue;
                }
                let r = traj.log_r[j].exp();
                let kv = sweep.values_at(i);
                let model = 1.0 - kv.a.re - 0.5 / m * kv.big_b.re;
                worst = worst.max((r - model).abs());
            }
            ks.push(worst / (ups * ups));
        }
        let kmax = ks.iter().cloned().fold(f64::MIN, f64::max);
        let kmin = ks.iter().cloned().fold(f64::MAX, f64::min);
        assert!(kmax / kmin < 4.0, "amplitude constant unstable: {ks:?}");
    }

    #[test]
    fn fundamental_solution_deviation_bounded_by_upsilon() {
        // sup_x |Φ(x,λ) - cos(√λ x)| ≤ K·Υ(π/2, λ), K stable along the ladder
        let p = Primitive::closed_form(
            (0.0, PI),
            |x: f64| 0.4 * (1.0 + x).ln(),
            vec![],
            SmoothnessClass::Lipschitz(1.0),
        )
        .unwrap();
        let u = ScaledPrimitive::real(p.clone());
        let mut ks = Vec::new();
        for &m in &[12.0f64, 24.0, 48.0] {
            let lambda = cx(m * m, 0.0);
            let pair = quasi::fundamental_pair(&u, lambda, 256).unwrap();
            let ups = upsilon(&p, PI / 2.0, lambda).unwrap();
            let mut sup = 0.0f64;
            for (i, &x) in pair.grid.iter().enumerate() {
                sup = sup.max((pair.phi[i].re - (m * x).cos()).abs());
            }
            ks.push(sup / ups);
        }
        let kmax = ks.iter().cloned().fold(f64::MIN, f64::max);
        let kmin = ks.iter().cloned().fold(f64::MAX, f64::min);
        assert!(kmax / kmin < 4.0, "Φ deviation constants: {ks:?}");
    }

    #[test]
    fn theta_asymptote_for_unit_u() {
        // u ≡ 1: θ(π) - (c + √λ π) → 0 along λ = 10², 10⁴
        let p = Primitive::constant((0.0, PI), 1.0);
        let mut gaps = Vec::new();
        for &lambda in &[100.0f64, 10_000.0] {
            let traj = theta_trajectory(&p, lambda, 0.2).unwrap();
            gaps.push((traj.theta_end() - (0.2 + lambda.sqrt() * PI)).abs());
        }
        assert!(gaps[1] < gaps[0] && gaps[1] < 1e-2, "gaps: {gaps:?}");
    }
}
