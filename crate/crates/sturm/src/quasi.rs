//! Propagation of the first-order quasi-derivative system.
//!
//! With `y₁ = y`, `y₂ = y^[1] = y' - u·y` the eigenvalue equation
//! `-y'' + u'(x)y = λy` becomes `Y' = A(x)Y` with
//!
//! ```text
//! A(x) = ( u          1 )
//!        ( -λ - u²   -u )
//! ```
//!
//! whose entries are merely integrable, so pointwise evaluation of `u` at a
//! jump never enters: each mesh cell is advanced by the exponential of the
//! cell-averaged matrix (exact for piecewise-constant `u`), with breakpoints
//! of the primitive as hard cell boundaries and Richardson halving for error
//! control.  The matrix is trace free, hence
//! `exp(M) = cos(w)·I + sinc(w)·M` with `w² = det M` and the Wronskian of a
//! jointly propagated pair is conserved exactly up to roundoff.

use crate::error::{Error, Result};
use crate::potential::ScaledPrimitive;
use crate::scalar::{cos_sinc_of_square, Scalar};
use num_complex::Complex;

type C<S> = Complex<S>;

/// Solution state `(y, y^[1])` at a location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiState<S: Scalar> {
    pub x: S,
    pub y: C<S>,
    pub y1: C<S>,
}

impl<S: Scalar> QuasiState<S> {
    pub fn new(x: S, y: C<S>, y1: C<S>) -> Self {
        QuasiState { x, y, y1 }
    }

    pub fn magnitude(&self) -> S {
        self.y.norm() + self.y1.norm()
    }
}

/// Fundamental pair `Φ, Ψ` with initial data
/// `Φ(x_a)=1, Φ^[1](x_a)=0, Ψ(x_a)=0, Ψ^[1](x_a)=1`, sampled on a shared grid.
#[derive(Debug, Clone)]
pub struct FundamentalPair<S: Scalar> {
    pub lambda: C<S>,
    pub grid: Vec<S>,
    pub phi: Vec<C<S>>,
    pub phi1: Vec<C<S>>,
    pub psi: Vec<C<S>>,
    pub psi1: Vec<C<S>>,
}

impl<S: Scalar> FundamentalPair<S> {
    /// Endpoint samples `(Φ, Φ^[1], Ψ, Ψ^[1])` at the right end of the grid.
    pub fn endpoint(&self) -> (C<S>, C<S>, C<S>, C<S>) {
        let i = self.grid.len() - 1;
        (self.phi[i], self.phi1[i], self.psi[i], self.psi1[i])
    }

    /// Largest deviation of the Wronskian `Φ·Ψ^[1] - Ψ·Φ^[1]` from 1 on the grid.
    pub fn wronskian_defect(&self) -> S {
        let one = C::new(S::one(), S::zero());
        let mut worst = S::zero();
        for i in 0..self.grid.len() {
            let w = self.phi[i] * self.psi1[i] - self.psi[i] * self.phi1[i];
            worst = worst.max((w - one).norm());
        }
        worst
    }
}

/// 2×2 trace-free cell generator: the averaged matrix is
/// `(d 1; l -d)` and the step is `exp(h·(d 1; l -d))`.
#[derive(Debug, Clone, Copy)]
pub struct CellAverages<S: Scalar> {
    pub diag: C<S>,
    pub lower: C<S>,
}

/// Apply `exp(h·(d 1; l -d))` to `(y, y1)`.
pub fn exp_step<S: Scalar>(avg: CellAverages<S>, h: S, y: C<S>, y1: C<S>) -> (C<S>, C<S>) {
    let d = avg.diag * h;
    let l = avg.lower * h;
    let hh = C::new(h, S::zero());
    // det M = -d² - h·l with M = (d h; l·h? ) -- assemble explicitly:
    // M = (d, h; l, -d) where d = h·diag, l = h·lower
    let det = -d * d - hh * l;
    let (cw, sw) = cos_sinc_of_square(det);
    let ny = cw * y + sw * (d * y + hh * y1);
    let ny1 = cw * y1 + sw * (l * y - d * y1);
    (ny, ny1)
}

/// Provider of cell averages for the propagation driver.
pub trait AveragedSystem<S: Scalar> {
    /// Averages of the diagonal and lower-left entries over `[lo, hi]`.
    fn averages(&self, lo: S, hi: S) -> Result<CellAverages<S>>;
    /// Points where cells must break.
    fn mesh_points(&self) -> Vec<S>;
}

/// The quasi-derivative system for a (possibly complex-scaled) primitive.
pub struct QuasiSystem<'a, S: Scalar> {
    pub u: &'a ScaledPrimitive<S>,
    pub lambda: C<S>,
}

impl<'a, S: Scalar> AveragedSystem<S> for QuasiSystem<'a, S> {
    fn averages(&self, lo: S, hi: S) -> Result<CellAverages<S>> {
        let h = hi - lo;
        let m1 = self.u.int_u(lo, hi)? / h;
        let m2 = self.u.int_u2(lo, hi)? / h;
        Ok(CellAverages {
            diag: m1,
            lower: -self.lambda - m2,
        })
    }

    fn mesh_points(&self) -> Vec<S> {
        self.u.mesh_points()
    }
}

fn advance_cell<S: Scalar>(
    sys: &dyn AveragedSystem<S>,
    lo: S,
    hi: S,
    y: C<S>,
    y1: C<S>,
    tol: S,
    depth: u32,
) -> Result<(C<S>, C<S>)> {
    let h = hi - lo;
    let avg = sys.averages(lo, hi)?;
    let full = exp_step(avg, h, y, y1);
    let mid = lo + h * S::half();
    let a1 = sys.averages(lo, mid)?;
    let a2 = sys.averages(mid, hi)?;
    let half1 = exp_step(a1, mid - lo, y, y1);
    let half2 = exp_step(a2, hi - mid, half1.0, half1.1);
    let err = (full.0 - half2.0).norm() + (full.1 - half2.1).norm();
    let scale = S::one() + half2.0.norm() + half2.1.norm();
    let finite = half2.0.re.is_finite()
        && half2.0.im.is_finite()
        && half2.1.re.is_finite()
        && half2.1.im.is_finite();
    if !finite {
        return Err(Error::Instability {
            x: lo.to_f64().unwrap_or(f64::NAN),
            msg: "non-finite state during propagation".into(),
        });
    }
    if err <= tol * scale || err == S::zero() {
        return Ok(half2);
    }
    if depth >= 42 {
        return Err(Error::accuracy(
            format!("step-size underflow near x = {lo}"),
            (err / scale).to_f64().unwrap_or(f64::NAN),
        ));
    }
    let left = advance_cell(sys, lo, mid, y, y1, tol, depth + 1)?;
    advance_cell(sys, mid, hi, left.0, left.1, tol, depth + 1)
}

/// Local relative tolerance of the propagation driver.
pub const LOCAL_TOL: f64 = 1e-10;

/// Propagate a state from `state.x = x0` to `x1` (either direction) over an
/// averaged system, breaking cells at the system's mesh points.
pub fn propagate_averaged<S: Scalar>(
    sys: &dyn AveragedSystem<S>,
    x0: S,
    x1: S,
    state: &QuasiState<S>,
    tol: S,
) -> Result<QuasiState<S>> {
    if (state.x - x0).abs() > S::of(1e-12) * (S::one() + x0.abs()) {
        return Err(Error::domain("state location does not match x0"));
    }
    if x0 == x1 {
        return Ok(*state);
    }
    let forward = x1 > x0;
    let mut cuts: Vec<S> = sys
        .mesh_points()
        .into_iter()
        .filter(|&p| {
            if forward {
                p > x0 && p < x1
            } else {
                p < x0 && p > x1
            }
        })
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    if !forward {
        cuts.reverse();
    }
    cuts.push(x1);
    let mut y = state.y;
    let mut y1 = state.y1;
    let mut lo = x0;
    for hi in cuts {
        if hi == lo {
            continue;
        }
        let (ny, ny1) = advance_cell(sys, lo, hi, y, y1, tol, 0)?;
        y = ny;
        y1 = ny1;
        lo = hi;
    }
    Ok(QuasiState::new(x1, y, y1))
}

/// Propagate `(y, y^[1])` through `-y'' + u'y = λy`.
pub fn propagate<S: Scalar>(
    u: &ScaledPrimitive<S>,
    lambda: C<S>,
    x0: S,
    x1: S,
    state: &QuasiState<S>,
) -> Result<QuasiState<S>> {
    let (a, b) = u.interval();
    if x0 < a - S::of(1e-12) || x1 > b + S::of(1e-12) || x1 < a - S::of(1e-12) || x0 > b + S::of(1e-12)
    {
        return Err(Error::domain("propagation endpoints outside the interval"));
    }
    let sys = QuasiSystem { u, lambda };
    propagate_averaged(&sys, x0, x1, state, S::of(LOCAL_TOL))
}

/// Jointly propagate the fundamental pair on a shared grid: `grid_hint`
/// uniform base points refined at the primitive's mesh points.
pub fn fundamental_pair<S: Scalar>(
    u: &ScaledPrimitive<S>,
    lambda: C<S>,
    grid_hint: usize,
) -> Result<FundamentalPair<S>> {
    if grid_hint < 16 {
        return Err(Error::domain("grid_hint must be at least 16"));
    }
    let (a, b) = u.interval();
    let grid = build_grid(a, b, grid_hint, &u.mesh_points());
    let sys = QuasiSystem { u, lambda };
    let n = grid.len();
    let mut phi = Vec::with_capacity(n);
    let mut phi1 = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    let mut psi1 = Vec::with_capacity(n);
    let one = C::new(S::one(), S::zero());
    let zero = C::new(S::zero(), S::zero());
    let (mut p, mut p1, mut q, mut q1) = (one, zero, zero, one);
    phi.push(p);
    phi1.push(p1);
    psi.push(q);
    psi1.push(q1);
    let tol = S::of(LOCAL_TOL);
    for w in grid.windows(2).map(|w| (w[0], w[1])) {
        let (np, np1) = advance_cell(&sys, w.0, w.1, p, p1, tol, 0)?;
        let (nq, nq1) = advance_cell(&sys, w.0, w.1, q, q1, tol, 0)?;
        p = np;
        p1 = np1;
        q = nq;
        q1 = nq1;
        phi.push(p);
        phi1.push(p1);
        psi.push(q);
        psi1.push(q1);
    }
    Ok(FundamentalPair {
        lambda,
        grid,
        phi,
        phi1,
        psi,
        psi1,
    })
}

/// Uniform grid with extra points merged in (sorted, deduplicated).
pub fn build_grid<S: Scalar>(a: S, b: S, base: usize, extra: &[S]) -> Vec<S> {
    let mut grid: Vec<S> = (0..=base)
        .map(|i| a + (b - a) * S::of(i as f64) / S::of(base as f64))
        .collect();
    grid.extend(extra.iter().copied().filter(|&p| p > a && p < b));
    grid.sort_by(|p, q| p.partial_cmp(q).unwrap());
    grid.dedup_by(|p, q| (*p - *q).abs() < S::of(1e-13));
    grid
}

/// Particular solution of the system `Y' = A(x)Y + (0, f)ᵀ` with
/// `z(x_a) = z^[1](x_a) = 0`, i.e. of `-z'' + u'z - λz = -f`:
///
/// `z(x) = ∫ [Ψ(x)Φ(t) - Φ(x)Ψ(t)]·f(t) dt`, accumulated by the trapezoid
/// rule on the pair's grid.  `f` must be sampled on exactly that grid.
pub fn solve_inhomogeneous<S: Scalar>(
    pair: &FundamentalPair<S>,
    f: &[C<S>],
) -> Result<(Vec<C<S>>, Vec<C<S>>)> {
    let n = pair.grid.len();
    if f.len() != n {
        return Err(Error::domain(format!(
            "rhs sampled on {} points, pair grid has {n}",
            f.len()
        )));
    }
    let zero = C::new(S::zero(), S::zero());
    let mut int_phi_f = zero; // ∫ Φ f
    let mut int_psi_f = zero; // ∫ Ψ f
    let mut z = Vec::with_capacity(n);
    let mut z1 = Vec::with_capacity(n);
    z.push(zero);
    z1.push(zero);
    for i in 1..n {
        let h = C::new((pair.grid[i] - pair.grid[i - 1]) * S::half(), S::zero());
        int_phi_f += (pair.phi[i - 1] * f[i - 1] + pair.phi[i] * f[i]) * h;
        int_psi_f += (pair.psi[i - 1] * f[i - 1] + pair.psi[i] * f[i]) * h;
        z.push(pair.psi[i] * int_phi_f - pair.phi[i] * int_psi_f);
        z1.push(pair.psi1[i] * int_phi_f - pair.phi1[i] * int_psi_f);
    }
    Ok((z, z1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Primitive, ScaledPrimitive, SmoothnessClass};
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;
    type Cx = Complex<f64>;

    fn cx(re: f64, im: f64) -> Cx {
        Complex::new(re, im)
    }

    fn free() -> ScaledPrimitive<f64> {
        ScaledPrimitive::real(Primitive::zero((0.0, PI)))
    }

    #[test]
    fn free_equation_gives_sine() {
        let s0 = QuasiState::new(0.0, cx(0.0, 0.0), cx(1.0, 0.0));
        for &x in &[0.5, 1.0, 2.2, PI] {
            let s = propagate(&free(), cx(1.0, 0.0), 0.0, x, &s0).unwrap();
            assert!((s.y.re - x.sin()).abs() < 1e-12, "y at {x}");
            assert!((s.y1.re - x.cos()).abs() < 1e-12, "y' at {x}");
        }
    }

    #[test]
    fn constant_solution_at_lambda_zero() {
        let s0 = QuasiState::new(0.0, cx(1.0, 0.0), cx(0.0, 0.0));
        let s = propagate(&free(), cx(0.0, 0.0), 0.0, PI, &s0).unwrap();
        assert!((s.y - cx(1.0, 0.0)).norm() < 1e-13);
        assert!(s.y1.norm() < 1e-13);
    }

    #[test]
    fn delta_matches_transfer_matrix_oracle() {
        // q = δ(x - π/2): u = χ_{[π/2, π]}, λ = 1, start (0, 1).
        // Classically y = sin x up to π/2, then y' jumps by y(π/2):
        // y(π) = 1, y'(π) = -1, hence y^[1](π) = y' - u·y = -2.
        let u = ScaledPrimitive::real(Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap());
        let s0 = QuasiState::new(0.0, cx(0.0, 0.0), cx(1.0, 0.0));
        let s = propagate(&u, cx(1.0, 0.0), 0.0, PI, &s0).unwrap();
        assert!((s.y - cx(1.0, 0.0)).norm() < 1e-10, "y(π) = {}", s.y);
        assert!((s.y1 - cx(-2.0, 0.0)).norm() < 1e-10, "y1(π) = {}", s.y1);

        // y and y^[1] are continuous through the jump
        let before = propagate(&u, cx(1.0, 0.0), 0.0, PI / 2.0 - 1e-9, &s0).unwrap();
        let after = propagate(&u, cx(1.0, 0.0), 0.0, PI / 2.0 + 1e-9, &s0).unwrap();
        assert!((before.y - after.y).norm() < 1e-7);
        assert!((before.y1 - after.y1).norm() < 1e-7);
    }

    #[test]
    fn fundamental_pair_free_closed_forms() {
        let pair = fundamental_pair(&free(), cx(4.0, 0.0), 64).unwrap();
        for (i, &x) in pair.grid.iter().enumerate() {
            assert!((pair.phi[i].re - (2.0 * x).cos()).abs() < 1e-11);
            assert!((pair.psi[i].re - (2.0 * x).sin() / 2.0).abs() < 1e-11);
        }
        assert!(pair.wronskian_defect() < 1e-12);

        let pair0 = fundamental_pair(&free(), cx(0.0, 0.0), 32).unwrap();
        for (i, &x) in pair0.grid.iter().enumerate() {
            assert!((pair0.phi[i].re - 1.0).abs() < 1e-12);
            assert!((pair0.psi[i].re - x).abs() < 1e-12);
        }
    }

    #[test]
    fn smooth_potential_matches_classical_rk4() {
        // u = sin x so q = u' = cos x; compare against a classical fourth-order
        // integration of -y'' + cos(x)·y = λ·y (independent oracle path).
        let u = ScaledPrimitive::real(
            Primitive::closed_form((0.0, PI), |x: f64| x.sin(), vec![], SmoothnessClass::Lipschitz(1.0))
                .unwrap(),
        );
        let lambda = 7.0;
        let s0 = QuasiState::new(0.0, cx(1.0, 0.0), cx(0.0, 0.0));
        // quasi-state (1, 0) means y(0)=1, y'(0) = y1 + u(0)y = 0
        let got = propagate(&u, cx(lambda, 0.0), 0.0, PI, &s0).unwrap();

        let rhs = |x: f64, y: f64| (x.cos() - lambda) * y;
        let (mut y, mut dy) = (1.0f64, 0.0f64);
        let n = 200_000;
        let h = PI / n as f64;
        let mut x = 0.0;
        for _ in 0..n {
            let k1 = (dy, rhs(x, y));
            let k2 = (dy + 0.5 * h * k1.1, rhs(x + 0.5 * h, y + 0.5 * h * k1.0));
            let k3 = (dy + 0.5 * h * k2.1, rhs(x + 0.5 * h, y + 0.5 * h * k2.0));
            let k4 = (dy + h * k3.1, rhs(x + h, y + h * k3.0));
            y += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            dy += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            x += h;
        }
        let y1_expect = dy - PI.sin() * y; // u(π) = sin π = 0
        assert!((got.y.re - y).abs() < 1e-7, "{} vs {y}", got.y.re);
        assert!((got.y1.re - y1_expect).abs() < 1e-7);
    }

    #[test]
    fn inhomogeneous_free_cases() {
        let pair = fundamental_pair(&free(), cx(0.0, 0.0), 2048).unwrap();
        let zeros = vec![cx(0.0, 0.0); pair.grid.len()];
        let (z, _) = solve_inhomogeneous(&pair, &zeros).unwrap();
        assert!(z.iter().all(|v| v.norm() == 0.0));

        let ones = vec![cx(1.0, 0.0); pair.grid.len()];
        let (z, z1) = solve_inhomogeneous(&pair, &ones).unwrap();
        for (i, &x) in pair.grid.iter().enumerate() {
            assert!((z[i].re - x * x / 2.0).abs() < 1e-7, "x={x}");
            assert!((z1[i].re - x).abs() < 1e-7);
        }

        let pair = fundamental_pair(&free(), cx(1.0, 0.0), 2048).unwrap();
        let f: Vec<Cx> = pair.grid.iter().map(|&x| cx(x.sin(), 0.0)).collect();
        let (z, _) = solve_inhomogeneous(&pair, &f).unwrap();
        for (i, &x) in pair.grid.iter().enumerate() {
            let expect = (x.sin() - x * x.cos()) / 2.0;
            assert!((z[i].re - expect).abs() < 1e-6, "x={x}: {} vs {expect}", z[i].re);
        }

        let bad = vec![cx(0.0, 0.0); 3];
        assert!(solve_inhomogeneous(&pair, &bad).is_err());
    }

    #[test]
    fn approximation_continuity_under_mollification() {
        // ‖solution(u_ε) - solution(u)‖ tracks ‖u_ε - u‖_{L₂}: error roughly
        // halves when the L₂ distance halves.
        let step = Primitive::step((0.0, PI), PI / 2.0, 1.0).unwrap();
        let u = ScaledPrimitive::real(step.clone());
        let s0 = QuasiState::new(0.0, cx(0.0, 0.0), cx(1.0, 0.0));
        let reference = propagate(&u, cx(4.0, 0.0), 0.0, PI, &s0).unwrap();
        let mut rows = Vec::new();
        for &eps in &[0.2, 0.1, 0.05] {
            let ue = ScaledPrimitive::real(step.mollify(eps).unwrap());
            let se = propagate(&ue, cx(4.0, 0.0), 0.0, PI, &s0).unwrap();
            let udist = step.l2_distance(&ue.base).unwrap();
            let ydist = (se.y - reference.y).norm() + (se.y1 - reference.y1).norm();
            rows.push((udist, ydist));
        }
        for w in rows.windows(2) {
            let (u0, y0) = w[0];
            let (u1, y1) = w[1];
            assert!(y1 < y0, "solution error decreases");
            let ratio = (y0 / y1) / (u0 / u1);
            assert!(ratio > 0.4 && ratio < 2.5, "error tracks u-distance: {ratio}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn wronskian_is_conserved(
            heights in proptest::collection::vec(-1.5f64..1.5, 1..4),
            re in -30.0f64..900.0,
            im in -6.0f64..6.0,
            kind in 0u8..3,
        ) {
            let n = heights.len();
            let positions: Vec<f64> = (1..=n).map(|i| PI * i as f64 / (n as f64 + 1.0)).collect();
            let p = match kind {
                0 => Primitive::from_delta_sum((0.0, PI), &positions, &heights).unwrap(),
                1 => {
                    let coeffs: Vec<f64> = std::iter::once(0.2).chain(heights.iter().copied()).collect();
                    Primitive::cosine_series(coeffs, SmoothnessClass::L2).unwrap()
                }
                _ => Primitive::piecewise_poly(
                    (0.0, PI),
                    positions.clone(),
                    (0..=n).map(|i| vec![heights[i.min(n - 1)], 0.3 * i as f64 / (n as f64)]).collect(),
                    SmoothnessClass::BoundedVariation,
                ).unwrap(),
            };
            let u = ScaledPrimitive::real(p);
            let pair = fundamental_pair(&u, cx(re, im), 48).unwrap();
            prop_assert!(pair.wronskian_defect() < 1e-8);
        }
    }
}
