//! Boundary forms, their Birkhoff classification and the characteristic
//! determinant.
//!
//! A pair of linear forms
//! `U_j(y) = a_{j1}·y(0) + a_{j2}·y^[1](0) + b_{j1}·y(π) + b_{j2}·y^[1](π)`
//! is classified through the 2×2 column minors `J_{αβ}` of its 2×4
//! coefficient matrix:
//!
//! 1. `J₄₂ ≠ 0`                                            → `Regular1`
//! 2. `J₄₂ = 0`, `J₁₄ + J₃₂ ≠ 0`                           → `Regular2`
//! 3. `J₄₂ = J₁₄ = J₃₂ = 0`, `J₁₂ + J₃₄ = 0`, `J₁₃ ≠ 0`     → `Regular3`
//!
//! everything else is degenerate and unsupported.  For `Regular2` the
//! strengthened-regularity flag is `J₀ = (J₁₂+J₃₄)/(J₁₄+J₃₂) ≠ ±1`
//! (note `J₁₄ - J₂₃ = J₁₄ + J₃₂` by antisymmetry); `Regular1`/`Regular3`
//! have simple unperturbed ladders and are flagged strengthened.

use crate::error::{Error, Result};
use crate::quasi::FundamentalPair;
use crate::scalar::Scalar;
use num_complex::Complex;

type C<S> = Complex<S>;

/// Two boundary forms given by their 2×4 coefficient matrix
/// (columns: `y(0)`, `y^[1](0)`, `y(π)`, `y^[1](π)`).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryForms<S: Scalar> {
    pub rows: [[C<S>; 4]; 2],
}

/// Regularity class per the minor-based case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityClass {
    Regular1,
    Regular2,
    Regular3,
    Degenerate,
}

/// All column minors, antisymmetric in the (1-based) column indices.
#[derive(Debug, Clone, Copy)]
pub struct Minors<S: Scalar> {
    j: [[C<S>; 4]; 4],
}

impl<S: Scalar> Minors<S> {
    /// `J_{αβ}`, 1-based column indices.
    pub fn j(&self, alpha: usize, beta: usize) -> C<S> {
        self.j[alpha - 1][beta - 1]
    }

    pub fn magnitude(&self) -> S {
        let mut m = S::zero();
        for row in &self.j {
            for v in row {
                m = m.max(v.norm());
            }
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct RegularityReport<S: Scalar> {
    pub minors: Minors<S>,
    pub class: RegularityClass,
    pub strengthened: bool,
    pub selfadjoint: bool,
    /// `J₀ = (J₁₂+J₃₄)/(J₁₄+J₃₂)` for `Regular2` conditions.
    pub j0: Option<C<S>>,
}

fn c<S: Scalar>(re: f64) -> C<S> {
    C::new(S::of(re), S::zero())
}

impl<S: Scalar> BoundaryForms<S> {
    pub fn new(rows: [[C<S>; 4]; 2]) -> Self {
        BoundaryForms { rows }
    }

    pub fn from_real(rows: [[f64; 4]; 2]) -> Self {
        let conv = |r: [f64; 4]| [c(r[0]), c(r[1]), c(r[2]), c(r[3])];
        BoundaryForms {
            rows: [conv(rows[0]), conv(rows[1])],
        }
    }

    /// `y(0) = y(π) = 0`.
    pub fn dirichlet() -> Self {
        Self::from_real([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]])
    }

    /// `y^[1](0) = y^[1](π) = 0` (Neumann-type in the quasi-derivative).
    pub fn neumann_quasi() -> Self {
        Self::from_real([[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
    }

    /// `y(0) = y(π)`, `y^[1](0) = y^[1](π)`.
    pub fn periodic() -> Self {
        Self::from_real([[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]])
    }

    /// `y(0) = -y(π)`, `y^[1](0) = -y^[1](π)`.
    pub fn antiperiodic() -> Self {
        Self::from_real([[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])
    }

    /// Separated Sturm-type forms
    /// `cos α·y(0) + sin α·y^[1](0) = 0`, `cos β·y(π) + sin β·y^[1](π) = 0`.
    pub fn sturm_separated(alpha: S, beta: S) -> Self {
        let z = C::new(S::zero(), S::zero());
        BoundaryForms {
            rows: [
                [
                    C::new(alpha.cos(), S::zero()),
                    C::new(alpha.sin(), S::zero()),
                    z,
                    z,
                ],
                [
                    z,
                    z,
                    C::new(beta.cos(), S::zero()),
                    C::new(beta.sin(), S::zero()),
                ],
            ],
        }
    }

    /// Self-adjoint forms from a 2×2 unitary `U`:
    /// `(U - 1)·(y^[1](0), -y^[1](π))ᵀ + i(U + 1)·(y(0), y(π))ᵀ = 0`.
    ///
    /// Sweeping `U` over the unitary group parametrizes every self-adjoint
    /// extension.
    pub fn selfadjoint_from_unitary(u: [[C<S>; 2]; 2]) -> Self {
        let one = C::new(S::one(), S::zero());
        let zero = C::new(S::zero(), S::zero());
        let i = C::new(S::zero(), S::one());
        let mut rows = [[zero; 4]; 2];
        for j in 0..2 {
            for k in 0..2 {
                let delta = if j == k { one } else { zero };
                let um1 = u[j][k] - delta;
                let up1 = u[j][k] + delta;
                // k = 0 pairs with (y(0), y^[1](0)), k = 1 with (y(π), y^[1](π))
                rows[j][2 * k] = i * up1;
                rows[j][2 * k + 1] = if k == 0 { um1 } else { -um1 };
            }
        }
        BoundaryForms { rows }
    }

    /// `U_j(y)` from endpoint data `(y(0), y^[1](0), y(π), y^[1](π))`.
    pub fn apply(&self, j: usize, end: (C<S>, C<S>, C<S>, C<S>)) -> C<S> {
        let r = &self.rows[j];
        r[0] * end.0 + r[1] * end.1 + r[2] * end.2 + r[3] * end.3
    }

    /// All column minors `J_{αβ}`.
    pub fn minors(&self) -> Minors<S> {
        let mut j = [[C::new(S::zero(), S::zero()); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                j[a][b] = self.rows[0][a] * self.rows[1][b] - self.rows[0][b] * self.rows[1][a];
            }
        }
        Minors { j }
    }

    fn row_scale(&self) -> S {
        let mut m = S::zero();
        for row in &self.rows {
            for v in row {
                m = m.max(v.norm());
            }
        }
        m.max(S::of(1e-300))
    }

    /// Classify the forms; errors when the coefficient matrix has rank < 2.
    pub fn classify(&self) -> Result<RegularityReport<S>> {
        let minors = self.minors();
        let scale = minors.magnitude().max(self.row_scale() * self.row_scale());
        let tol = S::of(1e-12) * scale;
        if minors.magnitude() <= tol {
            return Err(Error::InvalidForms(
                "coefficient matrix has rank < 2 (all 2×2 minors vanish)".into(),
            ));
        }
        let j42 = minors.j(4, 2);
        let j14 = minors.j(1, 4);
        let j32 = minors.j(3, 2);
        let j13 = minors.j(1, 3);
        let j12 = minors.j(1, 2);
        let j34 = minors.j(3, 4);
        let selfadjoint = self.is_selfadjoint();

        let (class, strengthened, j0) = if j42.norm() > tol {
            (RegularityClass::Regular1, true, None)
        } else if (j14 + j32).norm() > tol {
            let j0 = (j12 + j34) / (j14 + j32);
            let is_pm_one = (j0 - c::<S>(1.0)).norm() <= S::of(1e-10)
                || (j0 + c::<S>(1.0)).norm() <= S::of(1e-10);
            (RegularityClass::Regular2, !is_pm_one, Some(j0))
        } else if j14.norm() <= tol
            && j32.norm() <= tol
            && (j12 + j34).norm() <= tol
            && j13.norm() > tol
        {
            (RegularityClass::Regular3, true, None)
        } else {
            (RegularityClass::Degenerate, false, None)
        };
        Ok(RegularityReport {
            minors,
            class,
            strengthened,
            selfadjoint,
            j0,
        })
    }

    /// Self-adjointness test `A·J·A* = B·J·B*` with `A`, `B` the left and
    /// right 2×2 blocks and `J = ((0,1),(-1,0))`; residual gate `1e-12`.
    pub fn is_selfadjoint(&self) -> bool {
        let a = [[self.rows[0][0], self.rows[0][1]], [self.rows[1][0], self.rows[1][1]]];
        let b = [[self.rows[0][2], self.rows[0][3]], [self.rows[1][2], self.rows[1][3]]];
        let sympl = |m: [[C<S>; 2]; 2]| -> [[C<S>; 2]; 2] {
            // M·J·M* with J = ((0,1),(-1,0)): (M·J)_{ik} = m_{i1}·J_{1k}+m_{i2}J_{2k}
            // M·J = (-m12, m11; -m22, m21)
            let mj = [[-m[0][1], m[0][0]], [-m[1][1], m[1][0]]];
            let mut out = [[C::new(S::zero(), S::zero()); 2]; 2];
            for i in 0..2 {
                for k in 0..2 {
                    out[i][k] = mj[i][0] * m[k][0].conj() + mj[i][1] * m[k][1].conj();
                }
            }
            out
        };
        let lhs = sympl(a);
        let rhs = sympl(b);
        let mut resid = S::zero();
        for i in 0..2 {
            for k in 0..2 {
                resid = resid.max((lhs[i][k] - rhs[i][k]).norm());
            }
        }
        let scale = self.row_scale();
        resid <= S::of(1e-12) * (S::one() + scale * scale)
    }

    /// Characteristic determinant
    /// `Δ(λ) = J₁₂+J₃₄ + J₁₃·Ψ(π) + J₁₄·Ψ^[1](π) + J₃₂·Φ(π) + J₄₂·Φ^[1](π)`
    /// from the endpoint samples of a fundamental pair.
    pub fn char_determinant(&self, pair: &FundamentalPair<S>) -> C<S> {
        let m = self.minors();
        let (phi, phi1, psi, psi1) = pair.endpoint();
        m.j(1, 2) + m.j(3, 4) + m.j(1, 3) * psi + m.j(1, 4) * psi1 + m.j(3, 2) * phi
            + m.j(4, 2) * phi1
    }

    /// `Δ₀(λ)`: the determinant for the free problem `u ≡ 0` using entire
    /// closed forms (`cos π√λ`, `sin(π√λ)/√λ`, `-√λ sin π√λ`).
    pub fn char_determinant_free(&self, lambda: C<S>) -> C<S> {
        let m = self.minors();
        let (phi, phi1, psi, psi1) = free_endpoint(lambda);
        m.j(1, 2) + m.j(3, 4) + m.j(1, 3) * psi + m.j(1, 4) * psi1 + m.j(3, 2) * phi
            + m.j(4, 2) * phi1
    }

    /// Magnitude scale of Δ at `λ` (for relative residual gates).
    pub fn det_scale(&self, pair: &FundamentalPair<S>) -> S {
        let m = self.minors();
        let (phi, phi1, psi, psi1) = pair.endpoint();
        let mut s = (m.j(1, 2) + m.j(3, 4)).norm();
        s = s + (m.j(1, 3) * psi).norm();
        s = s + (m.j(1, 4) * psi1).norm();
        s = s + (m.j(3, 2) * phi).norm();
        s = s + (m.j(4, 2) * phi1).norm();
        s.max(S::of(1e-30))
    }

    /// Eigenvalues of the free operator with these boundary conditions,
    /// ordered by modulus, with multiplicity.  Returns `(λ, multiplicity)`
    /// pairs totaling `n_max` eigenvalues.
    pub fn unperturbed_spectrum(&self, n_max: usize) -> Result<Vec<(C<S>, usize)>> {
        let report = self.classify()?;
        if report.class == RegularityClass::Degenerate {
            return Err(Error::Unsupported(
                "degenerate boundary conditions have no supported unperturbed ladder".into(),
            ));
        }
        let m = self.minors();
        let mut roots: Vec<C<S>> = Vec::new();
        match report.class {
            RegularityClass::Regular3 => {
                // Δ₀ = J₁₃·sin(π√λ)/√λ exactly: λ = n², n ≥ 1
                for n in 1..=(n_max + 2) {
                    roots.push(c::<S>((n * n) as f64));
                }
            }
            RegularityClass::Regular2 => {
                let j0 = report.j0.unwrap();
                let j13 = m.j(1, 3);
                // seeds from cos(πz) = -J₀
                let w0 = acos_c(-j0) / S::pi();
                let mut seeds: Vec<C<S>> = Vec::new();
                for k in 0..=(n_max / 2 + 3) {
                    let base = c::<S>(2.0 * k as f64);
                    for sgn in [S::one(), -S::one()] {
                        let z = base + w0 * sgn;
                        if z.re >= -S::of(1e-9) {
                            seeds.push(z * z);
                        }
                    }
                }
                if j13.norm() <= S::of(1e-12) * m.magnitude() {
                    roots.extend(seeds);
                } else {
                    for s in seeds {
                        if let Some(r) = self.refine_free_root(s) {
                            roots.push(r);
                        }
                    }
                }
            }
            RegularityClass::Regular1 => {
                // dominated by -J₄₂·√λ·sin(π√λ): seeds λ = k²
                for k in 0..=(n_max + 3) {
                    let seed = c::<S>((k * k) as f64);
                    if let Some(r) = self.refine_free_root(seed) {
                        roots.push(r);
                    }
                }
            }
            RegularityClass::Degenerate => unreachable!(),
        }
        // dedupe into multiplicity groups
        roots.sort_by(|p, q| {
            p.norm()
                .partial_cmp(&q.norm())
                .unwrap()
                .then(p.re.partial_cmp(&q.re).unwrap())
        });
        let mut grouped: Vec<(C<S>, usize)> = Vec::new();
        for r in roots {
            match grouped.last_mut() {
                Some((v, mult)) if (*v - r).norm() <= S::of(1e-8) * (S::one() + r.norm()) => {
                    *mult += 1;
                }
                _ => grouped.push((r, 1)),
            }
        }
        let mut out = Vec::new();
        let mut count = 0usize;
        for (v, mult) in grouped {
            if count >= n_max {
                break;
            }
            let take = mult.min(n_max - count).max(1);
            out.push((v, take));
            count += take;
        }
        Ok(out)
    }

    /// Secant refinement of `Δ₀(λ) = 0` from a seed; `None` when it diverges.
    fn refine_free_root(&self, seed: C<S>) -> Option<C<S>> {
        let mut z0 = seed;
        let mut z1 = seed + C::new(S::of(1e-3) * (S::one() + seed.norm()), S::of(1e-4));
        let mut f0 = self.char_determinant_free(z0);
        let mut f1 = self.char_determinant_free(z1);
        for _ in 0..80 {
            let denom = f1 - f0;
            if denom.norm() < S::of(1e-300) {
                break;
            }
            let z2 = z1 - f1 * (z1 - z0) / denom;
            if !(z2.re.is_finite() && z2.im.is_finite()) {
                return None;
            }
            z0 = z1;
            f0 = f1;
            z1 = z2;
            f1 = self.char_determinant_free(z1);
            if (z1 - z0).norm() <= S::of(1e-12) * (S::one() + z1.norm()) {
                return Some(z1);
            }
        }
        if f1.norm() < S::of(1e-8) {
            Some(z1)
        } else {
            None
        }
    }
}

/// Endpoint samples `(Φ(π), Φ^[1](π), Ψ(π), Ψ^[1](π))` of the free problem,
/// entire in `λ` (series near `λ = 0`).
pub fn free_endpoint<S: Scalar>(lambda: C<S>) -> (C<S>, C<S>, C<S>, C<S>) {
    let pi = S::pi();
    let z2 = lambda * pi * pi; // (π√λ)²
    if z2.norm() < S::of(1e-8) {
        let one = C::new(S::one(), S::zero());
        // cos(πz) = 1 - z²π²/2 + ..., sin(πz)/z = π(1 - z²π²/6 + ...)
        let cosv = one - z2 * S::half() + z2 * z2 * S::of(1.0 / 24.0);
        let sincv = (one - z2 * S::of(1.0 / 6.0) + z2 * z2 * S::of(1.0 / 120.0)) * pi;
        let dsin = -(one - z2 * S::of(1.0 / 6.0)) * lambda * pi; // -λ·π·sinc-ish = -z·sin(πz)/π·...
        return (cosv, dsin, sincv, cosv);
    }
    let z = lambda.sqrt();
    let pz = z * pi;
    let cosv = pz.cos();
    let sinv = pz.sin();
    (cosv, -z * sinv, sinv / z, cosv)
}

/// Principal branch arccos for complex arguments.
fn acos_c<S: Scalar>(w: C<S>) -> C<S> {
    let one = C::new(S::one(), S::zero());
    let i = C::new(S::zero(), S::one());
    let root = (one - w * w).sqrt();
    -i * (w + i * root).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Primitive, ScaledPrimitive};
    use crate::quasi;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI: f64 = std::f64::consts::PI;
    type Cx = Complex<f64>;

    fn cx(re: f64, im: f64) -> Cx {
        Complex::new(re, im)
    }

    #[test]
    fn dirichlet_minors_by_hand() {
        // rows (1,0,0,0) and (0,0,1,0): J₁₃ = 1, everything touching
        // columns 2 or 4 vanishes
        let f = BoundaryForms::<f64>::dirichlet();
        let m = f.minors();
        assert_eq!(m.j(1, 3), cx(1.0, 0.0));
        assert_eq!(m.j(4, 2), cx(0.0, 0.0));
        assert_eq!(m.j(1, 4), cx(0.0, 0.0));
        assert_eq!(m.j(3, 2), cx(0.0, 0.0));
        // antisymmetry incl. J_{αα} = 0
        for a in 1..=4 {
            assert_eq!(m.j(a, a), cx(0.0, 0.0));
            for b in 1..=4 {
                assert_eq!(m.j(a, b), -m.j(b, a));
            }
        }
    }

    #[test]
    fn neumann_minors_and_class() {
        let f = BoundaryForms::<f64>::neumann_quasi();
        let m = f.minors();
        // columns 4 and 2 of rows (0,1,0,0),(0,0,0,1): J₄₂ = det((0,1),(1,0)) = -1
        assert_eq!(m.j(4, 2), cx(-1.0, 0.0));
        let rep = f.classify().unwrap();
        assert_eq!(rep.class, RegularityClass::Regular1);
        assert!(rep.strengthened);
    }

    #[test]
    fn dirichlet_class_and_selfadjoint() {
        let rep = BoundaryForms::<f64>::dirichlet().classify().unwrap();
        assert_eq!(rep.class, RegularityClass::Regular3);
        assert!(rep.strengthened);
        assert!(rep.selfadjoint);
    }

    #[test]
    fn periodic_class_j0() {
        let rep = BoundaryForms::<f64>::periodic().classify().unwrap();
        assert_eq!(rep.class, RegularityClass::Regular2);
        assert_eq!(rep.j0.unwrap(), cx(-1.0, 0.0));
        assert!(!rep.strengthened, "J₀ = ±1 is not strengthened");

        let rep = BoundaryForms::<f64>::antiperiodic().classify().unwrap();
        assert_eq!(rep.class, RegularityClass::Regular2);
        assert_eq!(rep.j0.unwrap(), cx(1.0, 0.0));
        assert!(!rep.strengthened);
    }

    #[test]
    fn classify_rejects_rank_deficient() {
        let f = BoundaryForms::<f64>::from_real([[1.0, 0.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0]]);
        assert!(matches!(f.classify(), Err(Error::InvalidForms(_))));
    }

    #[test]
    fn selfadjoint_examples() {
        assert!(BoundaryForms::<f64>::dirichlet().is_selfadjoint());
        assert!(BoundaryForms::<f64>::neumann_quasi().is_selfadjoint());
        assert!(BoundaryForms::<f64>::periodic().is_selfadjoint());
        for (alpha, beta) in [(0.3, 1.1), (0.0, 0.5), (1.2, 0.0)] {
            assert!(
                BoundaryForms::<f64>::sturm_separated(alpha, beta).is_selfadjoint(),
                "({alpha}, {beta})"
            );
        }
        // U₁ = y(0), U₂ = y^[1](π) + i·y(π): not self-adjoint
        let f = BoundaryForms::new([
            [cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)],
            [cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 1.0), cx(1.0, 0.0)],
        ]);
        assert!(!f.is_selfadjoint());
    }

    #[test]
    fn class_invariant_under_row_mixing() {
        // replacing (U₁,U₂) by an invertible combination scales all minors by
        // the same nonzero determinant
        let f = BoundaryForms::<f64>::periodic();
        let g = BoundaryForms::new([
            [
                f.rows[0][0] * 2.0 + f.rows[1][0],
                f.rows[0][1] * 2.0 + f.rows[1][1],
                f.rows[0][2] * 2.0 + f.rows[1][2],
                f.rows[0][3] * 2.0 + f.rows[1][3],
            ],
            [
                f.rows[0][0] - f.rows[1][0] * 3.0,
                f.rows[0][1] - f.rows[1][1] * 3.0,
                f.rows[0][2] - f.rows[1][2] * 3.0,
                f.rows[0][3] - f.rows[1][3] * 3.0,
            ],
        ]);
        let rf = f.classify().unwrap();
        let rg = g.classify().unwrap();
        assert_eq!(rf.class, rg.class);
        assert_eq!(rf.strengthened, rg.strengthened);
    }

    #[test]
    fn char_determinant_free_dirichlet() {
        let f = BoundaryForms::<f64>::dirichlet();
        let u = ScaledPrimitive::real(Primitive::zero((0.0, PI)));
        for n in 1..=4u32 {
            let lam = cx((n * n) as f64, 0.0);
            let pair = quasi::fundamental_pair(&u, lam, 64).unwrap();
            assert!(f.char_determinant(&pair).norm() < 1e-10, "n={n}");
            // matches the entire closed form
            let probe = cx(n as f64 * n as f64 + 0.371, 0.0);
            let pair = quasi::fundamental_pair(&u, probe, 64).unwrap();
            let d_num = f.char_determinant(&pair);
            let d_free = f.char_determinant_free(probe);
            assert!((d_num - d_free).norm() < 1e-10);
        }
    }

    #[test]
    fn unperturbed_ladders() {
        let dir = BoundaryForms::<f64>::dirichlet().unperturbed_spectrum(6).unwrap();
        let flat: Vec<f64> = dir.iter().map(|(l, _)| l.re).collect();
        assert_eq!(flat, vec![1.0, 4.0, 9.0, 16.0, 25.0, 36.0]);

        let per = BoundaryForms::<f64>::periodic().unperturbed_spectrum(5).unwrap();
        // 0 simple, then (2k)² doubled
        assert!((per[0].0.norm()) < 1e-9 && per[0].1 == 1);
        assert!((per[1].0.re - 4.0).abs() < 1e-9 && per[1].1 == 2);
        assert!((per[2].0.re - 16.0).abs() < 1e-9 && per[2].1 == 2);

        let anti = BoundaryForms::<f64>::antiperiodic().unperturbed_spectrum(4).unwrap();
        assert!((anti[0].0.re - 1.0).abs() < 1e-9 && anti[0].1 == 2);
        assert!((anti[1].0.re - 9.0).abs() < 1e-9 && anti[1].1 == 2);

        let neu = BoundaryForms::<f64>::neumann_quasi().unperturbed_spectrum(4).unwrap();
        let flat: Vec<f64> = neu.iter().map(|(l, _)| l.re).collect();
        for (got, expect) in flat.iter().zip([0.0, 1.0, 4.0, 9.0]) {
            assert!((got - expect).abs() < 1e-8, "{flat:?}");
        }
    }

    #[test]
    fn random_selfadjoint_forms_are_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            // random unitary via two angles + phase structure: U = e^{iφ}·R
            let (t, p1, p2): (f64, f64, f64) = (
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..2.0 * PI),
            );
            let u = [
                [
                    cx(0.0, p1).exp() * t.cos(),
                    cx(0.0, p2).exp() * t.sin(),
                ],
                [
                    -cx(0.0, -p2).exp() * t.sin(),
                    cx(0.0, -p1).exp() * t.cos(),
                ],
            ];
            let f = BoundaryForms::selfadjoint_from_unitary(u);
            assert!(f.is_selfadjoint(), "trial {trial}");
            let rep = f.classify().unwrap();
            assert_ne!(rep.class, RegularityClass::Degenerate, "trial {trial}");
        }
    }
}
