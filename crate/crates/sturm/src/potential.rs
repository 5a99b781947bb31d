//! Primitives `u(x) = ∫ q` of distributional potentials.
//!
//! The potential `q = u'` itself is never evaluated: a delta `c·δ(x-x₀)` is
//! stored exactly as a jump of `u` of height `c` at `x₀`, and every consumer
//! works with integrals of `u` and `u²`.  Evaluation at a jump follows the
//! right-limit convention.

use crate::error::{Error, Result};
use crate::quad::{
    gk_adaptive, int_poly_exp, oscillation_cuts, poly_eval, poly_mul, ABS_FLOOR,
};
use crate::scalar::Scalar;
use num_complex::Complex;
use std::sync::Arc;

/// Smoothness class of `u`; metadata that drives expected decay rates of
/// spectral remainders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothnessClass<S: Scalar> {
    BoundedVariation,
    /// Lipschitz order `α`, `0 < α ≤ 1`.
    Lipschitz(S),
    /// Integral Lipschitz order `α` in `L_p`.
    LipschitzIntegral(S, S),
    L2,
    /// Sobolev order `θ`, `0 ≤ θ < 1/2`.
    Sobolev(S),
    /// Σ a_k² ln k < ∞ (square-summable coefficients with a log weight).
    Ksp,
}

impl<S: Scalar> SmoothnessClass<S> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SmoothnessClass::Lipschitz(a) => {
                if a <= S::zero() || a > S::one() {
                    return Err(Error::domain("Lipschitz order must satisfy 0 < α ≤ 1"));
                }
            }
            SmoothnessClass::LipschitzIntegral(a, p) => {
                if a <= S::zero() || a > S::one() || p < S::one() {
                    return Err(Error::domain(
                        "integral Lipschitz requires 0 < α ≤ 1 and p ≥ 1",
                    ));
                }
            }
            SmoothnessClass::Sobolev(t) => {
                if t < S::zero() || t >= S::half() {
                    return Err(Error::domain("Sobolev order must satisfy 0 ≤ θ < 1/2"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Majorant exponent `β` with `|a_k| ≲ k^{-β}` for tail bounds of
    /// coefficient series; `None` when no pointwise decay is implied.
    pub fn coeff_decay(&self) -> Option<S> {
        match *self {
            SmoothnessClass::BoundedVariation => Some(S::one()),
            SmoothnessClass::Lipschitz(a) | SmoothnessClass::LipschitzIntegral(a, _) => Some(a),
            SmoothnessClass::Sobolev(t) => Some(t + S::half()),
            SmoothnessClass::L2 | SmoothnessClass::Ksp => None,
        }
    }
}

type DynFn<S> = Arc<dyn Fn(S) -> S + Send + Sync>;

/// Per-cell data of a piecewise-smooth primitive.
#[derive(Clone)]
pub enum PiecewiseCell<S: Scalar> {
    /// Ascending polynomial coefficients in the global variable.
    Poly(Vec<S>),
    /// Smooth callable on the cell.
    Func(DynFn<S>),
}

#[derive(Clone)]
enum Cell<S: Scalar> {
    Poly(Vec<S>),
    Func(DynFn<S>),
}

#[derive(Clone)]
enum Repr<S: Scalar> {
    Piecewise {
        /// Strictly increasing interior breakpoints.
        breakpoints: Vec<S>,
        /// `breakpoints.len() + 1` cells.
        cells: Vec<Cell<S>>,
        /// `(location, height)` of the jumps of `u`, i.e. the delta content of `q`.
        jumps: Vec<(S, S)>,
    },
    ClosedForm {
        f: DynFn<S>,
        /// Interior points requiring mesh refinement (singularities,
        /// oscillation centers).  Supplied by the constructor; not detected.
        singular: Vec<S>,
    },
    CosineSeries {
        /// `u(x) = Σ_k coeffs[k]·cos(kx)` on `[0, π]`.
        coeffs: Vec<S>,
    },
}

/// Which power of `u` enters an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UPow {
    One,
    Two,
}

/// The primitive `u` of a potential on an interval.
#[derive(Clone)]
pub struct Primitive<S: Scalar> {
    a: S,
    b: S,
    repr: Repr<S>,
    class: SmoothnessClass<S>,
}

impl<S: Scalar> std::fmt::Debug for Primitive<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match &self.repr {
            Repr::Piecewise { breakpoints, .. } => format!("piecewise[{} bp]", breakpoints.len()),
            Repr::ClosedForm { .. } => "closed-form".to_string(),
            Repr::CosineSeries { coeffs } => format!("cosine[{}]", coeffs.len()),
        };
        write!(
            f,
            "Primitive({kind} on [{}, {}], {:?})",
            self.a, self.b, self.class
        )
    }
}

impl<S: Scalar> Primitive<S> {
    fn check_interval(a: S, b: S) -> Result<()> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("interval endpoints must satisfy a < b"));
        }
        Ok(())
    }

    /// Constant primitive `u ≡ v` (gauge copy of the free potential).
    pub fn constant(interval: (S, S), v: S) -> Self {
        Self::check_interval(interval.0, interval.1).expect("valid interval");
        Primitive {
            a: interval.0,
            b: interval.1,
            repr: Repr::Piecewise {
                breakpoints: vec![],
                cells: vec![Cell::Poly(vec![v])],
                jumps: vec![],
            },
            class: SmoothnessClass::BoundedVariation,
        }
    }

    pub fn zero(interval: (S, S)) -> Self {
        Self::constant(interval, S::zero())
    }

    /// `q = Σ strengths[i]·δ(x - positions[i])`: `u` is the piecewise-constant
    /// function that is 0 left of the first position and jumps by
    /// `strengths[i]` at `positions[i]`.
    pub fn from_delta_sum(interval: (S, S), positions: &[S], strengths: &[S]) -> Result<Self> {
        Self::check_interval(interval.0, interval.1)?;
        if positions.len() != strengths.len() {
            return Err(Error::domain("positions and strengths must have equal length"));
        }
        for w in positions.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::domain("delta positions must be strictly increasing"));
            }
        }
        for &p in positions {
            if !(p > interval.0 && p < interval.1) {
                return Err(Error::domain("delta position on or outside the boundary"));
            }
        }
        let mut cells = Vec::with_capacity(positions.len() + 1);
        let mut level = S::zero();
        cells.push(Cell::Poly(vec![level]));
        for &s in strengths {
            level = level + s;
            cells.push(Cell::Poly(vec![level]));
        }
        Ok(Primitive {
            a: interval.0,
            b: interval.1,
            repr: Repr::Piecewise {
                breakpoints: positions.to_vec(),
                cells,
                jumps: positions.iter().copied().zip(strengths.iter().copied()).collect(),
            },
            class: SmoothnessClass::BoundedVariation,
        })
    }

    /// Unit-style step: `u = height·χ_{[x0, b]}`, i.e. `q = height·δ(x - x0)`.
    pub fn step(interval: (S, S), x0: S, height: S) -> Result<Self> {
        Self::from_delta_sum(interval, &[x0], &[height])
    }

    /// Piecewise polynomial `u`: `cells.len() == breakpoints.len() + 1`,
    /// each cell given by ascending coefficients in the global variable.
    pub fn piecewise_poly(
        interval: (S, S),
        breakpoints: Vec<S>,
        cell_polys: Vec<Vec<S>>,
        class: SmoothnessClass<S>,
    ) -> Result<Self> {
        Self::check_interval(interval.0, interval.1)?;
        class.validate()?;
        if cell_polys.len() != breakpoints.len() + 1 {
            return Err(Error::domain("need breakpoints.len() + 1 cells"));
        }
        for w in breakpoints.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::domain("breakpoints must be strictly increasing"));
            }
        }
        if let (Some(&first), Some(&last)) = (breakpoints.first(), breakpoints.last()) {
            if first <= interval.0 || last >= interval.1 {
                return Err(Error::domain("breakpoints must be interior"));
            }
        }
        let mut jumps = Vec::new();
        for (i, &bp) in breakpoints.iter().enumerate() {
            let left = poly_eval(&cell_polys[i], bp);
            let right = poly_eval(&cell_polys[i + 1], bp);
            if (right - left).abs() > S::of(1e-300) {
                jumps.push((bp, right - left));
            }
        }
        Ok(Primitive {
            a: interval.0,
            b: interval.1,
            repr: Repr::Piecewise {
                breakpoints,
                cells: cell_polys.into_iter().map(Cell::Poly).collect(),
                jumps,
            },
            class,
        })
    }

    /// Continuous piecewise-linear `u` through `nodes` (sorted by abscissa,
    /// first and last at the interval endpoints).
    pub fn piecewise_linear(nodes: &[(S, S)]) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::domain("need at least two nodes"));
        }
        let a = nodes[0].0;
        let b = nodes[nodes.len() - 1].0;
        let mut breakpoints = Vec::new();
        let mut cells = Vec::new();
        for w in nodes.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if !(x0 < x1) {
                return Err(Error::domain("nodes must be strictly increasing in x"));
            }
            let slope = (y1 - y0) / (x1 - x0);
            cells.push(vec![y0 - slope * x0, slope]);
            if x1 < b {
                breakpoints.push(x1);
            }
        }
        Self::piecewise_poly((a, b), breakpoints, cells, SmoothnessClass::BoundedVariation)
    }

    /// Piecewise-smooth `u` with mixed polynomial and callable cells.
    pub fn piecewise_smooth(
        interval: (S, S),
        breakpoints: Vec<S>,
        cells: Vec<PiecewiseCell<S>>,
        class: SmoothnessClass<S>,
    ) -> Result<Self> {
        Self::check_interval(interval.0, interval.1)?;
        class.validate()?;
        if cells.len() != breakpoints.len() + 1 {
            return Err(Error::domain("need breakpoints.len() + 1 cells"));
        }
        for w in breakpoints.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::domain("breakpoints must be strictly increasing"));
            }
        }
        if let (Some(&first), Some(&last)) = (breakpoints.first(), breakpoints.last()) {
            if first <= interval.0 || last >= interval.1 {
                return Err(Error::domain("breakpoints must be interior"));
            }
        }
        let eval_cell = |cell: &PiecewiseCell<S>, x: S| -> S {
            match cell {
                PiecewiseCell::Poly(p) => poly_eval(p, x),
                PiecewiseCell::Func(f) => f(x),
            }
        };
        let mut jumps = Vec::new();
        for (i, &bp) in breakpoints.iter().enumerate() {
            let gap = eval_cell(&cells[i + 1], bp) - eval_cell(&cells[i], bp);
            if gap.abs() > S::of(1e-300) {
                jumps.push((bp, gap));
            }
        }
        Ok(Primitive {
            a: interval.0,
            b: interval.1,
            repr: Repr::Piecewise {
                breakpoints,
                cells: cells
                    .into_iter()
                    .map(|c| match c {
                        PiecewiseCell::Poly(p) => Cell::Poly(p),
                        PiecewiseCell::Func(f) => Cell::Func(f),
                    })
                    .collect(),
                jumps,
            },
            class,
        })
    }

    /// Closed-form `u` with a user-supplied list of interior refinement points.
    pub fn closed_form(
        interval: (S, S),
        f: impl Fn(S) -> S + Send + Sync + 'static,
        singular: Vec<S>,
        class: SmoothnessClass<S>,
    ) -> Result<Self> {
        Self::check_interval(interval.0, interval.1)?;
        class.validate()?;
        Ok(Primitive {
            a: interval.0,
            b: interval.1,
            repr: Repr::ClosedForm {
                f: Arc::new(f),
                singular,
            },
            class,
        })
    }

    /// `u(x) = Σ_k coeffs[k]·cos(kx)` on `[0, π]`.
    pub fn cosine_series(coeffs: Vec<S>, class: SmoothnessClass<S>) -> Result<Self> {
        class.validate()?;
        Ok(Primitive {
            a: S::zero(),
            b: S::pi(),
            repr: Repr::CosineSeries { coeffs },
            class,
        })
    }

    pub fn interval(&self) -> (S, S) {
        (self.a, self.b)
    }

    pub fn class(&self) -> SmoothnessClass<S> {
        self.class
    }

    pub fn with_class(mut self, class: SmoothnessClass<S>) -> Result<Self> {
        class.validate()?;
        self.class = class;
        Ok(self)
    }

    /// Jump list `(location, height)`: the delta content of `q = u'`.
    pub fn jumps(&self) -> &[(S, S)] {
        match &self.repr {
            Repr::Piecewise { jumps, .. } => jumps,
            _ => &[],
        }
    }

    /// All interior points where propagation meshes must break: breakpoints
    /// of piecewise representations and declared singular points.
    pub fn mesh_points(&self) -> Vec<S> {
        match &self.repr {
            Repr::Piecewise { breakpoints, .. } => breakpoints.clone(),
            Repr::ClosedForm { singular, .. } => singular.clone(),
            Repr::CosineSeries { .. } => Vec::new(),
        }
    }

    /// Indices of the nonzero cosine coefficients (cosine-series primitives).
    fn nonzero_coeffs(coeffs: &[S]) -> Vec<(usize, S)> {
        coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| *c != S::zero())
            .collect()
    }

    /// Value of `u` at `x`, right-continuous at jumps.
    pub fn eval_u(&self, x: S) -> Result<S> {
        if !(x >= self.a && x <= self.b) {
            return Err(Error::domain(format!(
                "x = {x} outside interval [{}, {}]",
                self.a, self.b
            )));
        }
        Ok(match &self.repr {
            Repr::Piecewise {
                breakpoints, cells, ..
            } => {
                let idx = breakpoints.partition_point(|&bp| bp <= x);
                match &cells[idx] {
                    Cell::Poly(p) => poly_eval(p, x),
                    Cell::Func(f) => f(x),
                }
            }
            Repr::ClosedForm { f, .. } => f(x),
            Repr::CosineSeries { coeffs } => {
                let mut acc = S::zero();
                for (k, c) in Self::nonzero_coeffs(coeffs) {
                    acc = acc + c * (S::of(k as f64) * x).cos();
                }
                acc
            }
        })
    }

    /// `∫_{x0}^{x1} u^pow(t)·(w0 + w1·t)·e^{iωt} dt`.
    ///
    /// Exact for polynomial cells and cosine series; adaptive Gauss–Kronrod
    /// with oscillation-aware panels otherwise.  This is the single quadrature
    /// path used by the Prüfer kernels and all asymptotic coefficients.
    pub fn osc_integral(
        &self,
        pow: UPow,
        weight: (S, S),
        omega: Complex<S>,
        x0: S,
        x1: S,
    ) -> Result<Complex<S>> {
        if !(x0 >= self.a - S::of(1e-12) && x1 <= self.b + S::of(1e-12) && x0 <= x1) {
            return Err(Error::domain("integration bounds outside interval"));
        }
        if x0 == x1 {
            return Ok(Complex::new(S::zero(), S::zero()));
        }
        let wpoly = [weight.0, weight.1];
        match &self.repr {
            Repr::Piecewise {
                breakpoints, cells, ..
            } => {
                let mut acc = Complex::new(S::zero(), S::zero());
                let mut lo = x0;
                let mut idx = breakpoints.partition_point(|&bp| bp <= x0);
                loop {
                    let hi = if idx < breakpoints.len() {
                        breakpoints[idx].min(x1)
                    } else {
                        x1
                    };
                    if hi > lo {
                        acc += match &cells[idx] {
                            Cell::Poly(p) => {
                                let up = match pow {
                                    UPow::One => p.clone(),
                                    UPow::Two => poly_mul(p, p),
                                };
                                let integrand = poly_mul(&up, &wpoly);
                                int_poly_exp(&integrand, omega, lo, hi)
                            }
                            Cell::Func(f) => {
                                let g = |t: S| {
                                    let v = f(t);
                                    let v = match pow {
                                        UPow::One => v,
                                        UPow::Two => v * v,
                                    };
                                    Complex::new(v * (weight.0 + weight.1 * t), S::zero())
                                        * (Complex::new(S::zero(), S::one()) * omega * t).exp()
                                };
                                let cuts = oscillation_cuts(omega, lo, hi, 8192);
                                gk_adaptive(&g, lo, hi, &cuts, S::of(1e-10), 60_000)?
                            }
                        };
                    }
                    if hi >= x1 {
                        break;
                    }
                    lo = hi;
                    idx += 1;
                }
                Ok(acc)
            }
            Repr::CosineSeries { coeffs } => {
                let nz = Self::nonzero_coeffs(coeffs);
                let mut acc = Complex::new(S::zero(), S::zero());
                let quarter = S::of(0.25);
                match pow {
                    UPow::One => {
                        for &(k, c) in &nz {
                            let k = S::of(k as f64);
                            for sgn in [S::one(), -S::one()] {
                                let om = omega + Complex::new(k * sgn, S::zero());
                                acc += int_poly_exp(&wpoly, om, x0, x1) * (c * S::half());
                            }
                        }
                    }
                    UPow::Two => {
                        for &(j, cj) in &nz {
                            for &(k, ck) in &nz {
                                let (j, k) = (S::of(j as f64), S::of(k as f64));
                                let factor = cj * ck * quarter;
                                for m in [j + k, j - k] {
                                    for sgn in [S::one(), -S::one()] {
                                        let om = omega + Complex::new(m * sgn, S::zero());
                                        acc += int_poly_exp(&wpoly, om, x0, x1) * factor;
                                    }
                                }
                            }
                        }
                    }
                }
                Ok(acc * S::half())
            }
            Repr::ClosedForm { f, singular } => {
                let g = |t: S| {
                    let v = f(t);
                    let v = match pow {
                        UPow::One => v,
                        UPow::Two => v * v,
                    };
                    Complex::new(v * (weight.0 + weight.1 * t), S::zero())
                        * (Complex::new(S::zero(), S::one()) * omega * t).exp()
                };
                let mut cuts = oscillation_cuts(omega, x0, x1, 8192);
                cuts.extend(singular.iter().copied());
                gk_adaptive(&g, x0, x1, &cuts, S::of(1e-10), 60_000)
            }
        }
    }

    /// `∫_{x0}^{x1} u dt`.
    pub fn integrate_u(&self, x0: S, x1: S) -> Result<S> {
        Ok(self
            .osc_integral(UPow::One, (S::one(), S::zero()), Complex::new(S::zero(), S::zero()), x0, x1)?
            .re)
    }

    /// `∫_{x0}^{x1} u² dt`.
    pub fn integrate_u2(&self, x0: S, x1: S) -> Result<S> {
        Ok(self
            .osc_integral(UPow::Two, (S::one(), S::zero()), Complex::new(S::zero(), S::zero()), x0, x1)?
            .re)
    }

    /// `‖u‖_{L₂}` over the whole interval.
    pub fn norm_l2(&self) -> Result<S> {
        Ok(self.integrate_u2(self.a, self.b)?.max(S::zero()).sqrt())
    }

    /// `‖u‖_{L_p}` over the whole interval, `p ≥ 1` (numeric quadrature).
    pub fn lp_norm(&self, p: S) -> Result<S> {
        if p < S::one() {
            return Err(Error::domain("p ≥ 1 required"));
        }
        let g = |t: S| {
            let v = self.eval_u(t).unwrap_or(S::zero()).abs();
            Complex::new(v.powf(p), S::zero())
        };
        let seeds = self.mesh_points();
        let v = gk_adaptive(&g, self.a, self.b, &seeds, S::of(1e-10), 40_000)?;
        Ok(v.re.max(S::zero()).powf(S::one() / p))
    }

    /// `‖u - v‖_{L₂}` (both on the same interval).
    pub fn l2_distance(&self, other: &Primitive<S>) -> Result<S> {
        if (self.a - other.a).abs() > S::of(1e-12) || (self.b - other.b).abs() > S::of(1e-12) {
            return Err(Error::domain("primitives live on different intervals"));
        }
        let g = |t: S| {
            let d = self.eval_u(t).unwrap_or(S::zero()) - other.eval_u(t).unwrap_or(S::zero());
            Complex::new(d * d, S::zero())
        };
        let mut seeds = self.mesh_points();
        seeds.extend(other.mesh_points());
        let v = gk_adaptive(&g, self.a, self.b, &seeds, S::of(1e-10), 40_000)?;
        Ok(v.re.max(S::zero()).sqrt())
    }

    /// Cosine coefficients `a_k = (2/π)∫₀^π u(t)cos(kt) dt`, `k = 0..=kmax`.
    ///
    /// Requires the canonical interval `[0, π]`.
    pub fn cosine_coeffs(&self, kmax: usize) -> Result<Vec<S>> {
        if self.a.abs() > S::of(1e-12) || (self.b - S::pi()).abs() > S::of(1e-12) {
            return Err(Error::domain("cosine coefficients need the interval [0, π]"));
        }
        // exact shortcut when u is already a cosine series
        if let Repr::CosineSeries { coeffs } = &self.repr {
            let mut out = vec![S::zero(); kmax + 1];
            for (k, c) in Self::nonzero_coeffs(coeffs) {
                if k <= kmax {
                    out[k] = c;
                }
            }
            // a_0 convention: u = Σ a_k cos(kx) including k = 0, so the stored
            // k = 0 coefficient is (1/π)∫u while (2/π)∫u is reported.
            if let Some(c0) = coeffs.first() {
                out[0] = *c0 * S::two();
            }
            return Ok(out);
        }
        let two_over_pi = S::two() / S::pi();
        (0..=kmax)
            .map(|k| {
                let om = Complex::new(S::of(k as f64), S::zero());
                Ok(self
                    .osc_integral(UPow::One, (S::one(), S::zero()), om, self.a, self.b)?
                    .re
                    * two_over_pi)
            })
            .collect()
    }

    /// Mollification `u_ε = u * φ_ε` with a compactly supported smooth bump of
    /// width `ε`, boundary-clamped: `u` is extended by its endpoint values.
    ///
    /// `‖u_ε - u‖_{L₂} → 0` as `ε → 0`; constants of the convergence depend on
    /// the bump, the limit does not.
    pub fn mollify(&self, eps: S) -> Result<Primitive<S>> {
        if !(eps > S::zero()) {
            return Err(Error::domain("mollifier width must be positive"));
        }
        let bump = |s: S| -> S {
            let s2 = s * s;
            if s2 >= S::one() {
                S::zero()
            } else {
                (-(S::one() / (S::one() - s2))).exp()
            }
        };
        let norm = gk_adaptive(
            &|s: S| Complex::new(bump(s), S::zero()),
            -S::one(),
            S::one(),
            &[S::zero()],
            S::of(1e-13),
            4000,
        )?
        .re;
        let base = self.clone();
        let (a, b) = (self.a, self.b);
        let breaks = self.mesh_points();
        let f = move |x: S| -> S {
            let g = |s: S| {
                let t = (x - eps * s).max(a).min(b);
                Complex::new(bump(s) * base.eval_u(t).unwrap_or(S::zero()), S::zero())
            };
            // integrand kinks where x - εs crosses a breakpoint or an endpoint
            let mut seeds: Vec<S> = breaks
                .iter()
                .map(|&bp| (x - bp) / eps)
                .filter(|&s| s > -S::one() && s < S::one())
                .collect();
            for &edge in &[a, b] {
                let s = (x - edge) / eps;
                if s > -S::one() && s < S::one() {
                    seeds.push(s);
                }
            }
            gk_adaptive(&g, -S::one(), S::one(), &seeds, S::of(1e-11), 4000)
                .map(|v| v.re / norm)
                .unwrap_or(S::nan())
        };
        let mut singular = Vec::new();
        for bp in self.mesh_points() {
            singular.push(bp - eps);
            singular.push(bp);
            singular.push(bp + eps);
        }
        singular.retain(|&s| s > a && s < b);
        singular.sort_by(|p, q| p.partial_cmp(q).unwrap());
        Primitive::closed_form((a, b), f, singular, SmoothnessClass::Lipschitz(S::one()))
    }
}

/// A primitive scaled by a complex factor: `u(x) = factor·base(x)`.
///
/// This is the complex-potential surface of the crate: `∫u = factor·∫base`
/// and `∫u² = factor²·∫base²`, so the quasi-derivative system can be driven
/// by complex potentials without a complex quadrature path.
#[derive(Clone, Debug)]
pub struct ScaledPrimitive<S: Scalar> {
    pub base: Primitive<S>,
    pub factor: Complex<S>,
}

impl<S: Scalar> ScaledPrimitive<S> {
    pub fn new(base: Primitive<S>, factor: Complex<S>) -> Self {
        ScaledPrimitive { base, factor }
    }

    pub fn real(base: Primitive<S>) -> Self {
        ScaledPrimitive {
            base,
            factor: Complex::new(S::one(), S::zero()),
        }
    }

    pub fn interval(&self) -> (S, S) {
        self.base.interval()
    }

    pub fn mesh_points(&self) -> Vec<S> {
        self.base.mesh_points()
    }

    pub fn eval_u(&self, x: S) -> Result<Complex<S>> {
        Ok(self.factor * self.base.eval_u(x)?)
    }

    pub fn int_u(&self, x0: S, x1: S) -> Result<Complex<S>> {
        Ok(self.factor * self.base.integrate_u(x0, x1)?)
    }

    pub fn int_u2(&self, x0: S, x1: S) -> Result<Complex<S>> {
        Ok(self.factor * self.factor * self.base.integrate_u2(x0, x1)?)
    }
}

impl<S: Scalar> From<&Primitive<S>> for ScaledPrimitive<S> {
    fn from(p: &Primitive<S>) -> Self {
        ScaledPrimitive::real(p.clone())
    }
}

/// Trapezoid value of `∫ f` on a sampled grid (helper shared by tests and
/// normalization).
pub fn trapezoid<S: Scalar>(xs: &[S], fs: &[S]) -> S {
    let mut acc = S::zero();
    for i in 1..xs.len() {
        acc = acc + (fs[i - 1] + fs[i]) * (xs[i] - xs[i - 1]) * S::half();
    }
    acc
}

/// Quadrature floor re-exported for callers pinning tolerances.
pub fn abs_floor<S: Scalar>() -> S {
    S::of(ABS_FLOOR)
}

/// Richardson-style L₂ sanity check: `u` is square integrable when two mesh
/// resolutions of `∫u²` agree to relative 1e-6.
pub fn check_square_integrable<S: Scalar>(p: &Primitive<S>) -> Result<()> {
    let (a, b) = p.interval();
    let coarse = {
        let n = 64;
        let mut acc = S::zero();
        for i in 0..n {
            let lo = a + (b - a) * S::of(i as f64) / S::of(n as f64);
            let hi = a + (b - a) * S::of((i + 1) as f64) / S::of(n as f64);
            acc = acc + p.integrate_u2(lo, hi)?;
        }
        acc
    };
    let fine = p.integrate_u2(a, b)?;
    let denom = S::one() + fine.abs();
    if ((coarse - fine) / denom).abs() > S::of(1e-6) {
        return Err(Error::accuracy(
            "u² quadrature did not stabilize; u may not be square integrable",
            ((coarse - fine) / denom).abs().to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}
