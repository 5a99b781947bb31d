//! Quadrature engine.
//!
//! Three primitives cover every integral in the crate:
//!
//! * [`int_poly_exp`] — exact `∫ p(t)·e^{iωt} dt` for a polynomial `p` and
//!   complex frequency `ω` (midpoint-shifted moment recurrence, series branch
//!   for small `|ω|h`),
//! * [`gk_adaptive`] — adaptive Gauss–Kronrod 7–15 bisection for everything
//!   without a closed form, with an absolute floor of `1e-14` and an explicit
//!   panel budget so oscillatory blowups surface as accuracy errors,
//! * [`cumulative_fourth_order`] — fourth-order cumulative panel rule on a
//!   uniform grid, used by Volterra iterations.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex;

/// Absolute floor below which refinement stops.
pub const ABS_FLOOR: f64 = 1e-14;

/// `∫_a^b t^k·e^{iωt} dt` for `k = 0..=deg`, midpoint-shifted for stability.
///
/// Returns moments of the *shifted* variable `s = t - m`, `m = (a+b)/2`,
/// already multiplied by `e^{iωm}`: entry `k` is `e^{iωm}·∫_{-h}^{h} s^k e^{iωs} ds`.
fn shifted_moments<S: Scalar>(deg: usize, omega: Complex<S>, a: S, b: S) -> Vec<Complex<S>> {
    let m = (a + b) * S::half();
    let h = (b - a) * S::half();
    let iw = Complex::new(S::zero(), S::one()) * omega;
    let phase = (iw * m).exp();
    let wh = (omega * h).norm();
    let mut mom = vec![Complex::new(S::zero(), S::zero()); deg + 1];

    if wh < S::of(4.0).max(S::of(deg as f64)) {
        // series: ∫_{-h}^{h} s^k e^{iωs} ds = Σ_j (iω)^j / j! · (h^{k+j+1} - (-h)^{k+j+1})/(k+j+1)
        for (k, slot) in mom.iter_mut().enumerate() {
            let mut term = Complex::new(S::one(), S::zero()); // (iω)^j / j!
            let mut acc = Complex::new(S::zero(), S::zero());
            for j in 0..64 {
                let p = k + j + 1;
                // h^p - (-h)^p: zero for even p, 2h^p for odd p
                if p % 2 == 1 {
                    let contrib = term * (S::two() * h.powi(p as i32) / S::of(p as f64));
                    acc += contrib;
                    if contrib.norm() < acc.norm() * S::of(1e-18) + S::of(1e-300) && j > 2 {
                        break;
                    }
                }
                term = term * iw / S::of((j + 1) as f64);
            }
            *slot = acc;
        }
    } else {
        // upward by-parts recurrence, stable for |ω|h ≳ k
        let ep = (iw * h).exp();
        let em = (-iw * h).exp();
        mom[0] = (ep - em) / iw;
        let mut hp = S::one(); // h^k
        let mut hm = S::one(); // (-h)^k
        for k in 1..=deg {
            hp = hp * h;
            hm = hm * (-h);
            mom[k] = (ep * hp - em * hm) / iw - mom[k - 1] * S::of(k as f64) / iw;
        }
    }
    for v in mom.iter_mut() {
        *v = *v * phase;
    }
    mom
}

/// Exact `∫_a^b p(t) e^{iωt} dt` with `p(t) = Σ coeffs[k]·t^k`.
pub fn int_poly_exp<S: Scalar>(coeffs: &[S], omega: Complex<S>, a: S, b: S) -> Complex<S> {
    if coeffs.is_empty() || a == b {
        return Complex::new(S::zero(), S::zero());
    }
    // re-expand p around the midpoint: p(m+s) = Σ c'_k s^k
    let m = (a + b) * S::half();
    let n = coeffs.len();
    let mut shifted = vec![S::zero(); n];
    // c'_k = Σ_{j>=k} coeffs[j] C(j,k) m^{j-k}
    for j in 0..n {
        let mut binom = S::one();
        let mut mp = S::one();
        // iterate k = j down to 0 accumulating binomials: C(j,k) m^{j-k}
        // simpler: k from j down, C(j,j)=1, update by *(k)/(j-k+1)*m
        for k in (0..=j).rev() {
            shifted[k] = shifted[k] + coeffs[j] * binom * mp;
            if k > 0 {
                binom = binom * S::of(k as f64) / S::of((j - k + 1) as f64);
                mp = mp * m;
            }
        }
    }
    let mom = shifted_moments(n - 1, omega, a, b);
    let mut acc = Complex::new(S::zero(), S::zero());
    for (k, &c) in shifted.iter().enumerate() {
        acc += mom[k] * c;
    }
    acc
}

/// Plain `∫_a^b p(t) dt`.
pub fn int_poly<S: Scalar>(coeffs: &[S], a: S, b: S) -> S {
    let mut acc = S::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        let p = S::of((k + 1) as f64);
        acc = acc + c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / p;
    }
    acc
}

/// Product of two polynomials (ascending coefficients).
pub fn poly_mul<S: Scalar>(p: &[S], q: &[S]) -> Vec<S> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] = out[i + j] + a * b;
        }
    }
    out
}

pub fn poly_eval<S: Scalar>(coeffs: &[S], x: S) -> S {
    let mut acc = S::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

// Gauss–Kronrod 7–15 nodes and weights on [-1, 1] (positive half; symmetric).
const GK_NODES: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss–Kronrod 7–15 panel; returns (integral, error estimate).
fn gk15<S, F>(f: &F, a: S, b: S) -> (Complex<S>, S)
where
    S: Scalar,
    F: Fn(S) -> Complex<S> + ?Sized,
{
    let c = (a + b) * S::half();
    let h = (b - a) * S::half();
    let mut kronrod = Complex::new(S::zero(), S::zero());
    let mut gauss = Complex::new(S::zero(), S::zero());
    for (i, &xi) in GK_NODES.iter().enumerate() {
        let x = S::of(xi);
        let wk = S::of(GK_WEIGHTS[i]);
        let v = if i == 7 {
            f(c)
        } else {
            f(c - h * x) + f(c + h * x)
        };
        kronrod += v * wk;
        // odd-indexed nodes plus the center form the embedded 7-point Gauss rule
        if i % 2 == 1 || i == 7 {
            gauss += v * S::of(GAUSS_WEIGHTS[i / 2]);
        }
    }
    let integral = kronrod * h;
    let err = ((kronrod - gauss) * h).norm();
    (integral, err)
}

/// Adaptive bisection Gauss–Kronrod integration of a complex-valued function.
///
/// `seeds` are interior points where the panel structure must break
/// (singular or kink points).  Relative tolerance with absolute floor
/// [`ABS_FLOOR`]; if `max_panels` is exhausted the achieved error is reported
/// in an accuracy error.
pub fn gk_adaptive<S, F>(f: &F, a: S, b: S, seeds: &[S], rel_tol: S, max_panels: usize) -> Result<Complex<S>>
where
    S: Scalar,
    F: Fn(S) -> Complex<S> + ?Sized,
{
    if a == b {
        return Ok(Complex::new(S::zero(), S::zero()));
    }
    let mut cuts: Vec<S> = vec![a];
    let mut interior: Vec<S> = seeds
        .iter()
        .copied()
        .filter(|&s| s > a && s < b)
        .collect();
    interior.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.extend(interior);
    cuts.push(b);

    let mut stack: Vec<(S, S, u32)> = cuts.windows(2).map(|w| (w[0], w[1], 0u32)).collect();
    let mut total = Complex::new(S::zero(), S::zero());
    let mut err_total = S::zero();
    let mut panels = 0usize;
    let mut coarse = S::zero();
    for &(lo, hi, _) in &stack {
        coarse = coarse + gk15(f, lo, hi).0.norm();
    }
    let scale = coarse.max(S::of(ABS_FLOOR));

    while let Some((lo, hi, depth)) = stack.pop() {
        panels += 1;
        if panels > max_panels {
            return Err(Error::accuracy(
                "oscillatory budget exceeded in adaptive quadrature",
                err_total.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let (val, err) = gk15(f, lo, hi);
        let tol_here = (rel_tol * scale).max(S::of(ABS_FLOOR)) * ((hi - lo) / (b - a)).abs();
        if err <= tol_here || depth >= 48 {
            total += val;
            err_total = err_total + err;
        } else {
            let mid = (lo + hi) * S::half();
            if mid <= lo || mid >= hi {
                total += val;
                err_total = err_total + err;
                continue;
            }
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok(total)
}

/// Split `[a, b]` so every panel spans at most a half period of `e^{iωt}`,
/// capped at `max_cuts` interior cuts.
pub fn oscillation_cuts<S: Scalar>(omega: Complex<S>, a: S, b: S, max_cuts: usize) -> Vec<S> {
    let freq = omega.re.abs().max(omega.im.abs());
    if freq <= S::one() {
        return Vec::new();
    }
    let half_period = S::pi() / freq;
    let n = ((b - a) / half_period).to_f64().unwrap_or(0.0).ceil() as usize;
    let n = n.min(max_cuts);
    (1..n)
        .map(|k| a + (b - a) * S::of(k as f64) / S::of(n as f64))
        .collect()
}

/// Fourth-order cumulative integral of samples on a uniform grid.
///
/// Returns `F` with `F[0] = 0` and `F[i] ≈ ∫_{x0}^{x_i} f`.
pub fn cumulative_fourth_order<S: Scalar>(h: S, f: &[Complex<S>]) -> Vec<Complex<S>> {
    let n = f.len();
    let mut out = vec![Complex::new(S::zero(), S::zero()); n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        // trapezoid fallback for tiny grids
        for i in 1..n {
            out[i] = out[i - 1] + (f[i - 1] + f[i]) * (h * S::half());
        }
        return out;
    }
    let c = |a: f64| S::of(a / 24.0);
    for i in 0..n - 1 {
        let panel = if i == 0 {
            (f[0] * c(9.0) + f[1] * c(19.0) - f[2] * c(5.0) + f[3] * c(1.0)) * h
        } else if i == n - 2 {
            (f[n - 1] * c(9.0) + f[n - 2] * c(19.0) - f[n - 3] * c(5.0) + f[n - 4] * c(1.0)) * h
        } else {
            (-f[i - 1] * c(1.0) + f[i] * c(13.0) + f[i + 1] * c(13.0) - f[i + 2] * c(1.0)) * h
        };
        out[i + 1] = out[i] + panel;
    }
    out
}

/// Least-squares slope of `ln(seq)` against `ln(n)`; returns `(slope, half-width)`.
///
/// Zero or non-finite entries are dropped; fewer than 5 usable points is an
/// error.  The half-width is the standard error of the fitted slope.
pub fn loglog_slope<S: Scalar>(pairs: &[(S, S)]) -> Result<(S, S)> {
    let pts: Vec<(S, S)> = pairs
        .iter()
        .filter(|(n, v)| *v > S::zero() && v.is_finite() && *n > S::zero())
        .map(|&(n, v)| (n.ln(), v.ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::Search(format!(
            "decay fit needs at least 5 positive points, got {}",
            pts.len()
        )));
    }
    let n = S::of(pts.len() as f64);
    let sx: S = pts.iter().map(|p| p.0).sum();
    let sy: S = pts.iter().map(|p| p.1).sum();
    let mx = sx / n;
    let my = sy / n;
    let mut sxx = S::zero();
    let mut sxy = S::zero();
    for &(x, y) in &pts {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let mut ss_res = S::zero();
    for &(x, y) in &pts {
        let r = y - my - slope * (x - mx);
        ss_res = ss_res + r * r;
    }
    let dof = (pts.len() as f64 - 2.0).max(1.0);
    let se = (ss_res / S::of(dof) / sxx).sqrt();
    Ok((slope, se))
}
