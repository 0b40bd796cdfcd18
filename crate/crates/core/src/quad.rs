//! One-dimensional Gauss–Legendre quadrature with adaptive bisection.
//!
//! All integrands in this crate are smooth on the (sub)intervals they are
//! fed, so a fixed-order rule compared against its two-half refinement gives
//! a reliable error estimate and spectral convergence. Node computation and
//! refinement follow a fixed deterministic schedule: repeated evaluation is
//! bitwise reproducible.

use crate::scalar::{real, Real};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    /// The error estimate failed to reach the requested tolerance before the
    /// depth cap.
    #[error("adaptive quadrature did not converge (residual {residual})")]
    NoConvergence { residual: f64 },
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds the `order`-point rule. Nodes are the roots of the Legendre
    /// polynomial P_order, found by Newton iteration from the Chebyshev
    /// initial guesses; a fixed iteration count keeps the result
    /// deterministic.
    pub fn new(order: usize) -> Self {
        assert!(order >= 2, "quadrature order must be at least 2");
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        let n = order;
        for i in 0..n {
            // Chebyshev-like initial guess for the i-th root.
            let k = real::<T>(i as f64 + 0.75) / real::<T>(n as f64 + 0.5);
            let mut x = (T::PI() * k).cos();
            for _ in 0..64 {
                let (p, d) = legendre_with_deriv(n, x);
                x = x - p / d;
            }
            let (_, dp) = legendre_with_deriv(n, x);
            let w = real::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrates `f` over `[a, b]` with the fixed rule.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, f: &mut F) -> T {
        let half = (b - a) * real(0.5);
        let mid = (a + b) * real(0.5);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + *w * f(mid + half * *x);
        }
        acc * half
    }
}

/// Legendre polynomial P_n and its derivative at `x`, by the three-term
/// recurrence.
fn legendre_with_deriv<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf: T = real(k as f64);
        let p2 = ((real::<T>(2.0 * k as f64 - 1.0)) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let nf: T = real(n as f64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Adaptive integrator reusing one fixed-order rule.
#[derive(Debug, Clone)]
pub struct Adaptive<T> {
    rule: GaussLegendre<T>,
    max_depth: u32,
}

impl<T: Real> Adaptive<T> {
    pub fn new(order: usize, max_depth: u32) -> Self {
        Adaptive {
            rule: GaussLegendre::new(order),
            max_depth,
        }
    }

    /// Standard 15-point rule, depth 40.
    pub fn default_rule() -> Self {
        Adaptive::new(15, 40)
    }

    /// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, tol: T, f: &mut F) -> Result<T, QuadError> {
        let coarse = self.rule.integrate(a, b, f);
        self.refine(a, b, coarse, tol, 0, f)
    }

    fn refine<F: FnMut(T) -> T>(
        &self,
        a: T,
        b: T,
        coarse: T,
        tol: T,
        depth: u32,
        f: &mut F,
    ) -> Result<T, QuadError> {
        let mid = (a + b) * real(0.5);
        let left = self.rule.integrate(a, mid, f);
        let right = self.rule.integrate(mid, b, f);
        let fine = left + right;
        let err = (fine - coarse).abs();
        // Floor the tolerance at the rounding noise of the partial sums.
        let noise = (fine.abs() + coarse.abs()) * T::epsilon() * real(8.0);
        if err <= tol.max(noise) {
            return Ok(fine);
        }
        if depth >= self.max_depth {
            return Err(QuadError::NoConvergence {
                residual: err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let half_tol = tol * real(0.5);
        let l = self.refine(a, mid, left, half_tol, depth + 1, f)?;
        let r = self.refine(mid, b, right, half_tol, depth + 1, f)?;
        Ok(l + r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let rule = GaussLegendre::<f64>::new(8);
        // An 8-point rule integrates degree <= 15 exactly.
        let mut f = |x: f64| x.powi(14) + 3.0 * x.powi(7) - x;
        let got = rule.integrate(-1.0, 1.0, &mut f);
        assert!((got - 2.0 / 15.0).abs() < 1e-13, "got {got}");
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let quad = Adaptive::<f64>::default_rule();
        // int_0^1 1/sqrt(x) dx = 2, steep but integrable after splitting.
        let mut f = |x: f64| 1.0 / (x + 1e-6).sqrt();
        let exact = 2.0 * ((1.0f64 + 1e-6).sqrt() - 1e-3);
        let got = quad.integrate(0.0, 1.0, 1e-10, &mut f).unwrap();
        assert!((got - exact).abs() < 1e-9, "got {got}, want {exact}");
    }

    #[test]
    fn adaptive_reports_nonconvergence() {
        let quad = Adaptive::<f64>::new(4, 3);
        let mut f = |x: f64| 1.0 / (x.abs() + 1e-15);
        let err = quad.integrate(-1.0, 1.0, 1e-12, &mut f).unwrap_err();
        assert!(matches!(err, QuadError::NoConvergence { .. }));
    }

    #[test]
    fn generic_over_f32() {
        let rule = GaussLegendre::<f32>::new(6);
        let mut f = |x: f32| x * x;
        let got = rule.integrate(0.0, 1.0, &mut f);
        assert!((got - 1.0 / 3.0).abs() < 1e-6);
    }
}
