//! Geometry of the Lefschetz fibration `Π_n : S_n → ℂ` on the base plane.
//!
//! `S_n = {z^{n+1} + 2xy = 1}` projects to the z-coordinate with critical
//! values at the (n+1)-th roots of unity. A matching torus over a closed
//! embedded base curve γ carries a monotonicity constant
//!
//! ```text
//! τ_γ = ∮_γ (i/4)(z dz̄ − z̄ dz) + ∮_{f∘γ} ½ r² dθ ,
//! f(z) = (1 − z^{n+1}) / sqrt(2 |1 − z^{n+1}|),
//! ```
//!
//! which is also the area enclosed by γ with respect to the singular form
//! σ = σ₀ + f*(r dr ∧ dθ). Everything here is expressed through those two
//! routes: contour quadrature along polylines and the closed-form density of
//! σ.

use crate::curve::{cabs, CurveError, PlanarCurve};
use crate::quad::{Adaptive, QuadError};
use crate::scalar::{real, Real};
use crate::tol;
use num_complex::Complex;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("singular input: |1 - z^(n+1)| = {0} is below the clearance threshold")]
    SingularInput(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bisection bracket failure: {0}")]
    BracketFailure(String),
    #[error("sample is not on the matching torus: {0}")]
    SampleNotOnTorus(String),
    #[error("point does not satisfy the defining equation of the surface: residual {0}")]
    PointNotOnSurface(f64),
}

/// Parameters of the fibration: `S_n` has n+1 critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibreParams {
    pub n: u32,
}

impl FibreParams {
    pub fn new(n: u32) -> Self {
        FibreParams { n }
    }

    /// The n+1 critical values `e^{2πik/(n+1)}`, k = 0..n.
    pub fn critical_values<T: Real>(&self) -> Vec<Complex<T>> {
        let m = self.n + 1;
        (0..m)
            .map(|k| {
                let th = real::<T>(2.0) * T::PI() * real::<T>(k as f64) / real::<T>(m as f64);
                Complex::new(th.cos(), th.sin())
            })
            .collect()
    }
}

/// The monotonicity constant τ of a matching torus: twice the symplectic
/// area equals τ times the Maslov index on every disk class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityConstant<T>(pub T);

impl<T: Real> MonotonicityConstant<T> {
    pub fn value(&self) -> T {
        self.0
    }
}

/// `1 - z^{n+1}` and its directional derivative along `dz`.
#[inline]
fn p_and_deriv<T: Real>(z: Complex<T>, dz: Complex<T>, n: u32) -> (Complex<T>, Complex<T>) {
    let zn = z.powu(n); // z^n
    let p = Complex::new(T::one(), T::zero()) - zn * z;
    let dp = -zn * dz * real::<T>(n as f64 + 1.0);
    (p, dp)
}

/// The base-change map `f(z) = (1 - z^{n+1}) / sqrt(2 |1 - z^{n+1}|)`.
pub fn f_map<T: Real>(z: Complex<T>, params: &FibreParams) -> Complex<T> {
    let (p, _) = p_and_deriv(z, Complex::new(T::zero(), T::zero()), params.n);
    let ap = cabs(p);
    p / (real::<T>(2.0) * ap).sqrt()
}

/// Density of σ with respect to the Euclidean area form:
/// `1 + (n+1)² |z|^{2n} / (4 |1 - z^{n+1}|)`.
pub fn sigma_density<T: Real>(z: Complex<T>, params: &FibreParams) -> Result<T, FibrationError> {
    let n = params.n;
    let zn1 = z.powu(n + 1);
    let p = Complex::new(T::one(), T::zero()) - zn1;
    let ap = cabs(p);
    if ap < real(tol::EPS_CRIT) {
        return Err(FibrationError::SingularInput(ap.to_f64().unwrap_or(f64::NAN)));
    }
    let m: T = real(n as f64 + 1.0);
    let pow = z.norm_sqr().powi(n as i32); // |z|^{2n}
    Ok(T::one() + m * m * pow / (real::<T>(4.0) * ap))
}

fn admissible<T: Real>(curve: &PlanarCurve<T>, params: &FibreParams) -> Result<(), FibrationError> {
    let crit = params.critical_values::<T>();
    curve.check_clearance(&crit, real(tol::EPS_CRIT))?;
    Ok(())
}

/// Monotonicity constant of the matching torus over `curve`, by composite
/// adaptive Gauss–Legendre quadrature along the polyline.
///
/// The first summand of τ is the Euclidean area (evaluated exactly by the
/// shoelace formula, which is what per-segment quadrature of the 1-form
/// reduces to on straight segments). The second summand integrates
/// `Im(p̄ ṗ) / (4|p|)` with `p = 1 - z^{n+1}`, the pullback of ½ r² dθ under
/// f; it is strictly positive for admissible curves.
pub fn tau<T: Real>(
    curve: &PlanarCurve<T>,
    params: &FibreParams,
    tol_tau: T,
) -> Result<MonotonicityConstant<T>, FibrationError> {
    admissible(curve, params)?;
    let euclid = curve.signed_area();

    let quad = Adaptive::<T>::default_rule();
    let n_seg = curve.len();
    let seg_tol = tol_tau / real::<T>(n_seg as f64) * real::<T>(0.5);
    let mut image_part = T::zero();
    for i in 0..n_seg {
        let (a, b) = curve.segment(i);
        let d = b - a;
        let mut integrand = |t: T| {
            let z = a + d * t;
            let (p, dp) = p_and_deriv(z, d, params.n);
            let ap = cabs(p);
            (p.conj() * dp).im / (real::<T>(4.0) * ap)
        };
        image_part = image_part + quad.integrate(T::zero(), T::one(), seg_tol, &mut integrand)?;
    }
    Ok(MonotonicityConstant(euclid + image_part))
}

/// Number of polygon vertices used when this module manufactures round
/// circles internally (bisection in [`radius_for_tau`]).
pub const CIRCLE_VERTICES: usize = 4096;

fn tau_circle<T: Real>(r: T, params: &FibreParams, tol_tau: T) -> Result<T, FibrationError> {
    let circle = PlanarCurve::circle(Complex::new(T::zero(), T::zero()), r, CIRCLE_VERTICES);
    Ok(tau(&circle, params, tol_tau)?.0)
}

/// Radius of the unique origin-centred circle whose matching torus has the
/// requested monotonicity constant. Fails for targets at or below the
/// round limit π + n + 1, and for targets below what the smallest admissible
/// circle reaches.
pub fn radius_for_tau<T: Real>(
    params: &FibreParams,
    tau_target: T,
    tol_tau: T,
) -> Result<T, FibrationError> {
    let limit = T::PI() + real::<T>(params.n as f64 + 1.0);
    if !(tau_target > limit) {
        return Err(FibrationError::Precondition(format!(
            "target {} must exceed the round limit {}",
            tau_target, limit
        )));
    }
    let mut probes: Vec<(T, T)> = Vec::new();
    let mut lo = T::one() + real::<T>(tol::EPS_CRIT) * real::<T>(2.0);
    let tau_lo = tau_circle(lo, params, tol_tau)?;
    probes.push((lo, tau_lo));
    if tau_lo > tau_target {
        return Err(FibrationError::BracketFailure(format!(
            "target {} is below tau({}) = {} of the smallest admissible circle",
            tau_target, lo, tau_lo
        )));
    }
    let mut hi = real::<T>(2.0);
    let mut tau_hi = tau_circle(hi, params, tol_tau)?;
    probes.push((hi, tau_hi));
    let mut grow = 0;
    while tau_hi < tau_target {
        hi = hi * real(2.0);
        tau_hi = tau_circle(hi, params, tol_tau)?;
        probes.push((hi, tau_hi));
        grow += 1;
        if grow > 24 {
            return Err(FibrationError::BracketFailure(format!(
                "no circle up to radius {} reaches tau = {}",
                hi, tau_target
            )));
        }
    }
    let mut result = (lo + hi) * real(0.5);
    for _ in 0..200 {
        let mid = (lo + hi) * real(0.5);
        let tau_mid = tau_circle(mid, params, tol_tau)?;
        probes.push((mid, tau_mid));
        result = mid;
        if (tau_mid - tau_target).abs() <= tol_tau {
            break;
        }
        if tau_mid < tau_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) < real(1e-14) {
            break;
        }
    }
    // Monotonicity of tau(circle_r) in r on everything we probed.
    probes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for pair in probes.windows(2) {
        if pair[1].0 > pair[0].0 && pair[1].1 + tol_tau < pair[0].1 {
            return Err(FibrationError::BracketFailure(format!(
                "tau(circle_r) failed to be monotone between r = {} and r = {}",
                pair[0].0, pair[1].0
            )));
        }
    }
    Ok(result)
}

/// Indices of the critical values the curve winds around once; every other
/// winding number must be zero for a simple positively oriented curve.
pub fn enclosed_criticals<T: Real>(
    curve: &PlanarCurve<T>,
    params: &FibreParams,
) -> Result<BTreeSet<u32>, FibrationError> {
    admissible(curve, params)?;
    let mut out = BTreeSet::new();
    for (k, v) in params.critical_values::<T>().into_iter().enumerate() {
        match curve.winding_number(v)? {
            0 => {}
            1 => {
                out.insert(k as u32);
            }
            w => {
                return Err(FibrationError::Precondition(format!(
                    "winding number {} around critical value {} (curve not simple or not positive)",
                    w, k
                )))
            }
        }
    }
    Ok(out)
}

/// Outcome of the Hamiltonian-isotopy comparison of two matching tori.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotopyVerdict {
    Isotopic,
    NotIsotopic,
    Unknown,
}

impl std::fmt::Display for IsotopyVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsotopyVerdict::Isotopic => write!(f, "Isotopic"),
            IsotopyVerdict::NotIsotopic => write!(f, "NotIsotopic"),
            IsotopyVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Classifies the matching tori over two curves up to Hamiltonian isotopy.
///
/// Equal τ together with equal enclosed critical sets is sufficient for an
/// isotopy; differing τ obstructs one (τ is the area of a tracked disk
/// class, a Hamiltonian invariant). Equal τ over different critical subsets
/// is genuinely undecided and reported as such.
pub fn same_hamiltonian_class<T: Real>(
    c0: &PlanarCurve<T>,
    c1: &PlanarCurve<T>,
    params: &FibreParams,
    tol_tau: T,
) -> Result<IsotopyVerdict, FibrationError> {
    let tau0 = tau(c0, params, tol_tau)?.0;
    let tau1 = tau(c1, params, tol_tau)?.0;
    if (tau0 - tau1).abs() > tol_tau {
        return Ok(IsotopyVerdict::NotIsotopic);
    }
    let e0 = enclosed_criticals(c0, params)?;
    let e1 = enclosed_criticals(c1, params)?;
    if e0 == e1 {
        Ok(IsotopyVerdict::Isotopic)
    } else {
        Ok(IsotopyVerdict::Unknown)
    }
}

/// Point of the round matching torus over the circle of radius `r`:
/// `z = r e^{iφ}`, fibre phase `β` along the vanishing cycle.
pub fn round_torus_point<T: Real>(
    params: &FibreParams,
    r: T,
    phi: T,
    beta: T,
) -> [Complex<T>; 3] {
    let z = Complex::new(r * phi.cos(), r * phi.sin());
    let w = Complex::new(T::one(), T::zero()) - z.powu(params.n + 1);
    let mag = (cabs(w) / real::<T>(2.0)).sqrt();
    let half = w.arg() / real::<T>(2.0);
    let x = Complex::from_polar(mag, half + beta);
    let y = Complex::from_polar(mag, half - beta);
    [x, y, z]
}

const ON_SURFACE_TOL: f64 = 1e-7;

/// |Im Ω(ξ, X_H)| at a point of the round matching torus, where
/// Ω = dx∧dy / (2xy − 1), ξ = (ix, −iy, 0) spans the vanishing-cycle
/// direction and X_H is the Hamiltonian field of H = |2xy − 1|² restricted
/// to the surface. The matching torus is special Lagrangian for Ω, so the
/// result is pure numerical residue and must stay below [`tol::TOL_SLAG`].
pub fn special_lagrangian_residual<T: Real>(
    params: &FibreParams,
    r: T,
    sample: &[Complex<T>; 3],
) -> Result<T, FibrationError> {
    if !(r > T::one()) {
        return Err(FibrationError::Precondition(format!(
            "round torus radius must exceed 1, got {}",
            r
        )));
    }
    let [x, y, z] = *sample;
    let n = params.n;
    let f_val = z.powu(n + 1) + x * y * real::<T>(2.0);
    let res = cabs(f_val - Complex::new(T::one(), T::zero()));
    let tol_t: T = real(ON_SURFACE_TOL);
    if res > tol_t {
        return Err(FibrationError::SampleNotOnTorus(format!(
            "surface equation residual {}",
            res
        )));
    }
    if (cabs(z) - r).abs() > tol_t * r.max(T::one()) {
        return Err(FibrationError::SampleNotOnTorus(format!(
            "|z| = {} but the base circle has radius {}",
            cabs(z),
            r
        )));
    }
    if (cabs(x) - cabs(y)).abs() > tol_t {
        return Err(FibrationError::SampleNotOnTorus(format!(
            "|x| - |y| = {}",
            cabs(x) - cabs(y)
        )));
    }

    // Complex tangent basis of T S_n = ker dF, F = z^{n+1} + 2xy:
    // dF = (2y, 2x, (n+1) z^n).
    let gx = y * real::<T>(2.0);
    let gz = z.powu(n) * real::<T>(n as f64 + 1.0);
    let e1 = [x * real::<T>(2.0), -y * real::<T>(2.0), Complex::new(T::zero(), T::zero())];
    let e2 = [gz, Complex::new(T::zero(), T::zero()), -gx];
    let i_c = Complex::new(T::zero(), T::one());
    let basis = [e1, scale3(e1, i_c), e2, scale3(e2, i_c)];

    // omega(u, v) = sum Im(conj(u_j) v_j); dH(v) = 2 Re(conj(g) dg(v)) with
    // g = 2xy - 1, dg(v) = 2y v_x + 2x v_y.
    let g = x * y * real::<T>(2.0) - Complex::new(T::one(), T::zero());
    let omega = |u: &[Complex<T>; 3], v: &[Complex<T>; 3]| -> T {
        let mut acc = T::zero();
        for j in 0..3 {
            acc = acc + (u[j].conj() * v[j]).im;
        }
        acc
    };
    let dh = |v: &[Complex<T>; 3]| -> T {
        let dg = y * v[0] * real::<T>(2.0) + x * v[1] * real::<T>(2.0);
        real::<T>(2.0) * (g.conj() * dg).re
    };

    // Solve omega(X, b_j) = dH(b_j) for X in the span of the basis.
    let mut a = [[T::zero(); 4]; 4];
    let mut rhs = [T::zero(); 4];
    for j in 0..4 {
        for k in 0..4 {
            a[j][k] = omega(&basis[k], &basis[j]);
        }
        rhs[j] = dh(&basis[j]);
    }
    let coeffs = solve4(a, rhs).ok_or_else(|| {
        FibrationError::Precondition("degenerate tangent frame at the sample".into())
    })?;
    let mut xh = [Complex::new(T::zero(), T::zero()); 3];
    for k in 0..4 {
        for j in 0..3 {
            xh[j] = xh[j] + basis[k][j] * coeffs[k];
        }
    }
    let norm = (xh.iter().map(|c| c.norm_sqr()).fold(T::zero(), |s, v| s + v)).sqrt();
    if norm == T::zero() {
        return Err(FibrationError::Precondition(
            "Hamiltonian vector vanished at the sample".into(),
        ));
    }
    for c in xh.iter_mut() {
        *c = *c / norm;
    }

    let xi = [x * i_c, -(y * i_c), Complex::new(T::zero(), T::zero())];
    let omega_form = (xi[0] * xh[1] - xi[1] * xh[0]) / g;
    Ok(omega_form.im.abs())
}

fn scale3<T: Real>(v: [Complex<T>; 3], s: Complex<T>) -> [Complex<T>; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Gaussian elimination with partial pivoting for a 4×4 system.
fn solve4<T: Real>(mut a: [[T; 4]; 4], mut b: [T; 4]) -> Option<[T; 4]> {
    for col in 0..4 {
        let mut piv = col;
        for row in (col + 1)..4 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < T::epsilon() * real(16.0) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = [T::zero(); 4];
    for col in (0..4).rev() {
        let mut acc = b[col];
        for k in (col + 1)..4 {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Point of `T*S² = {(v, u) : |v| = 1, ⟨v, u⟩ = 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotangentPoint<T> {
    pub v: [T; 3],
    pub u: [T; 3],
}

/// Identifies `S_1 = {z² + 2xy = 1}` with `T*S²`: after the coordinate
/// change `x = (z₁ + i z₂)/√2`, `y = (z₁ − i z₂)/√2`, `z = z₀`, the surface
/// becomes `{z₀² + z₁² + z₂² = 1}` and `(v, u) = (s/|s|, t·|s|)` with
/// s, t the real and imaginary parts.
pub fn milnor_to_cotangent<T: Real>(
    point: &[Complex<T>; 3],
) -> Result<CotangentPoint<T>, FibrationError> {
    let [x, y, z] = *point;
    let sqrt2 = real::<T>(2.0).sqrt();
    let i_c = Complex::new(T::zero(), T::one());
    let z0 = z;
    let z1 = (x + y) / sqrt2;
    let z2 = -(i_c * (x - y)) / sqrt2;
    let check = z0 * z0 + z1 * z1 + z2 * z2 - Complex::new(T::one(), T::zero());
    let res = cabs(check);
    if res > real(1e-8) {
        return Err(FibrationError::PointNotOnSurface(
            res.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let s = [z0.re, z1.re, z2.re];
    let t = [z0.im, z1.im, z2.im];
    let s_norm = norm3(s);
    let v = [s[0] / s_norm, s[1] / s_norm, s[2] / s_norm];
    let u = [t[0] * s_norm, t[1] * s_norm, t[2] * s_norm];
    Ok(CotangentPoint { v, u })
}

/// Inverse of [`milnor_to_cotangent`]: `|s|² = (1 + sqrt(1 + 4|u|²))/2`.
pub fn cotangent_to_milnor<T: Real>(
    cp: &CotangentPoint<T>,
) -> Result<[Complex<T>; 3], FibrationError> {
    let vn = norm3(cp.v);
    if (vn - T::one()).abs() > real(1e-8) {
        return Err(FibrationError::Precondition(format!(
            "|v| = {} is not 1",
            vn
        )));
    }
    let dot = cp.v[0] * cp.u[0] + cp.v[1] * cp.u[1] + cp.v[2] * cp.u[2];
    if dot.abs() > real(1e-8) {
        return Err(FibrationError::Precondition(format!(
            "<v, u> = {} is not 0",
            dot
        )));
    }
    let u2 = cp.u[0] * cp.u[0] + cp.u[1] * cp.u[1] + cp.u[2] * cp.u[2];
    let s_norm2 = (T::one() + (T::one() + real::<T>(4.0) * u2).sqrt()) / real::<T>(2.0);
    let s_norm = s_norm2.sqrt();
    let s = [cp.v[0] * s_norm, cp.v[1] * s_norm, cp.v[2] * s_norm];
    let t = [cp.u[0] / s_norm, cp.u[1] / s_norm, cp.u[2] / s_norm];
    let zc = [
        Complex::new(s[0], t[0]),
        Complex::new(s[1], t[1]),
        Complex::new(s[2], t[2]),
    ];
    let sqrt2 = real::<T>(2.0).sqrt();
    let i_c = Complex::new(T::zero(), T::one());
    let x = (zc[1] + i_c * zc[2]) / sqrt2;
    let y = (zc[1] - i_c * zc[2]) / sqrt2;
    let z = zc[0];
    Ok([x, y, z])
}

fn norm3<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
