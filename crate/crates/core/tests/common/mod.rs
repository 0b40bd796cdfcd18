//! Shared test oracles, independent of the library's integration paths.
//!
//! * closed-form monotonicity constants of round circles through complete
//!   elliptic integrals (AGM),
//! * a two-dimensional area quadrature of the σ form over polygon regions,
//!   evaluating the density from its product form and peeling the
//!   singular core off analytically in polar coordinates,
//! * deterministic random generators for admissible star-shaped curves.

#![allow(dead_code)]

use milnorkit_core::curve::PlanarCurve;
use milnorkit_core::fibration::FibreParams;
use milnorkit_core::quad::Adaptive;
use num_complex::Complex;
use std::f64::consts::PI;

/// Deterministic xorshift generator for reproducible sampling.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// Complete elliptic integral of the first kind K(m), parameter m = k².
pub fn elliptic_k(m: f64) -> f64 {
    assert!((0.0..1.0).contains(&m));
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() < 1e-17 * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    PI / (2.0 * a)
}

/// Complete elliptic integral of the second kind E(m), parameter m = k².
pub fn elliptic_e(m: f64) -> f64 {
    assert!((0.0..=1.0).contains(&m));
    if m == 1.0 {
        return 1.0;
    }
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut sum = 0.5 * c * c;
    let mut pow = 1.0f64; // 2^{n-1} at n = 1 after first doubling
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        let cn = 0.5 * (a - b);
        a = an;
        b = bn;
        c = cn;
        sum += pow * c * c;
        pow *= 2.0;
        if c.abs() < 1e-17 {
            break;
        }
    }
    elliptic_k(m) * (1.0 - sum)
}

/// Closed form for the monotonicity constant of the circle of radius r > 1:
/// τ = πr² + (n+1)·ρ·E(1/ρ²) with ρ = r^{n+1}. The image-area part comes
/// from the (n+1)-fold covering z ↦ z^{n+1} and the polar-coordinate
/// integral of 1/|w| over the shifted disk D(1, ρ).
pub fn tau_circle_closed_form(r: f64, n: u32) -> f64 {
    assert!(r > 1.0);
    let rho = r.powi(n as i32 + 1);
    PI * r * r + (n as f64 + 1.0) * rho * elliptic_e(1.0 / (rho * rho))
}

/// σ density minus 1, evaluated from the product form
/// (n+1)² |z|^{2n} / (4 Π_k |z − ζ_k|); an evaluation path disjoint from the
/// library's |1 − z^{n+1}| form.
fn jacobian_density(z: Complex<f64>, crit: &[Complex<f64>], n: u32) -> f64 {
    let m = n as f64 + 1.0;
    let mut denom = 4.0;
    for &zeta in crit {
        denom *= (z - zeta).norm();
    }
    m * m * z.norm_sqr().powi(n as i32) / denom
}

/// Region described by a polygon, scanned in polar coordinates about the
/// origin. Rays are intersected with every edge; parity gives the inside
/// intervals.
struct PolarScan<'a> {
    points: &'a [Complex<f64>],
    origin_inside: bool,
}

impl<'a> PolarScan<'a> {
    fn new(curve: &'a PlanarCurve<f64>) -> Self {
        let origin_inside = curve
            .winding_number(Complex::new(0.0, 0.0))
            .map(|w| w != 0)
            .unwrap_or(false);
        PolarScan {
            points: curve.points(),
            origin_inside,
        }
    }

    /// Sorted radii where the ray at angle θ crosses the polygon.
    fn crossings(&self, theta: f64) -> Vec<f64> {
        let u = Complex::new(theta.cos(), theta.sin());
        let n = self.points.len();
        let mut out = Vec::new();
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            let d = b - a;
            // Solve t·u = a + s·d for t ≥ 0, s ∈ [0, 1).
            let det = u.re * (-d.im) - (-d.re) * u.im;
            if det.abs() < 1e-15 {
                continue;
            }
            let ex = a.re;
            let ey = a.im;
            let t = (ex * (-d.im) + d.re * ey) / det;
            let s = (u.re * ey - u.im * ex) / det;
            if (0.0..1.0).contains(&s) && t > 0.0 {
                out.push(t);
            }
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        out
    }

    /// Inside intervals of the ray, clipped to radii ≥ r_min.
    fn inside_intervals(&self, theta: f64, r_min: f64) -> Vec<(f64, f64)> {
        let cross = self.crossings(theta);
        let mut intervals = Vec::new();
        let mut inside = self.origin_inside;
        let mut start = 0.0f64;
        for t in cross {
            if inside {
                intervals.push((start, t));
            }
            start = t;
            inside = !inside;
        }
        intervals
            .into_iter()
            .filter_map(|(a, b)| {
                let a = a.max(r_min);
                (b > a).then_some((a, b))
            })
            .collect()
    }

    /// Angles of all vertices, sorted: the panel boundaries for the outer
    /// integration.
    fn panel_angles(&self) -> Vec<f64> {
        let mut angles: Vec<f64> = self
            .points
            .iter()
            .map(|p| p.im.atan2(p.re))
            .collect();
        angles.push(-PI);
        angles.push(PI);
        angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        angles
    }
}

/// Independent 2-D quadrature of σ over the region bounded by `curve`.
///
/// Handles the two shapes the random-curve generators produce: regions
/// containing every critical value together with the disk of radius
/// `core_radius`, and regions containing none. The singular core
/// ∫_{D(0, core)} J dA collapses under the covering substitution to the
/// smooth 1-D polar integral (n+1)/4 ∮ (cos θ + sqrt(ρ² − sin²θ)) dθ with
/// ρ = core^{n+1}; the rest of the density is smooth and is scanned in
/// polar coordinates panel by panel.
pub fn sigma_area_oracle(curve: &PlanarCurve<f64>, params: &FibreParams, tol: f64) -> f64 {
    let core_radius = 1.1f64;
    let crit = params.critical_values::<f64>();
    let scan = PolarScan::new(curve);
    let enclosed: Vec<bool> = crit
        .iter()
        .map(|&zeta| curve.winding_number(zeta).unwrap() != 0)
        .collect();
    let all = enclosed.iter().all(|&e| e);
    let none = enclosed.iter().all(|&e| !e);
    assert!(
        all || none,
        "oracle supports curves enclosing all critical values or none"
    );

    let quad = Adaptive::<f64>::default_rule();
    let mut area = curve.signed_area();

    let r_min = if all {
        // The core disk must sit inside the region.
        let min_radius = curve
            .points()
            .iter()
            .map(|p| p.norm())
            .fold(f64::INFINITY, f64::min);
        assert!(
            min_radius > core_radius + 0.05,
            "region must contain the singular core disk"
        );
        let rho = core_radius.powi(params.n as i32 + 1);
        let mut f = |th: f64| th.cos() + (rho * rho - th.sin().powi(2)).sqrt();
        let disk_part = quad.integrate(-PI, PI, tol * 0.05, &mut f).unwrap();
        area += (params.n as f64 + 1.0) / 4.0 * disk_part;
        core_radius
    } else {
        0.0
    };

    // Smooth remainder: polar scan of the density outside the core.
    let panels = scan.panel_angles();
    for w in panels.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 < 1e-14 {
            continue;
        }
        let panel_tol = tol * 0.9 * (t1 - t0) / (2.0 * PI);
        let inner_tol = (panel_tol / (t1 - t0)).max(1e-13) * 0.25;
        let mut outer = |theta: f64| -> f64 {
            let mut acc = 0.0;
            for (a, b) in scan.inside_intervals(theta, r_min) {
                let u = Complex::new(theta.cos(), theta.sin());
                let mut integrand = |r: f64| r * jacobian_density(u * r, &crit, params.n);
                acc += quad.integrate(a, b, inner_tol, &mut integrand).unwrap();
            }
            acc
        };
        area += quad.integrate(t0, t1, panel_tol, &mut outer).unwrap();
    }
    area
}

/// Random star-shaped curve about the origin with radius
/// `base + Σ_{k≤3} (a_k cos kθ + b_k sin kθ)`, total wiggle ≤ `amp`.
pub fn star_curve(rng: &mut XorShift, base: f64, amp: f64, n_pts: usize) -> PlanarCurve<f64> {
    let mut coeffs = [0.0f64; 6];
    let mut total = 0.0;
    for c in coeffs.iter_mut() {
        *c = rng.range(-1.0, 1.0);
        total += c.abs();
    }
    if total > 0.0 {
        for c in coeffs.iter_mut() {
            *c *= amp / total;
        }
    }
    let pts = (0..n_pts)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / n_pts as f64;
            let mut rho = base;
            for k in 0..3 {
                rho += coeffs[2 * k] * ((k as f64 + 1.0) * th).cos()
                    + coeffs[2 * k + 1] * ((k as f64 + 1.0) * th).sin();
            }
            Complex::from_polar(rho, th)
        })
        .collect();
    PlanarCurve::new_unchecked(pts)
}

/// Random admissible curve enclosing every critical value (radius band well
/// outside the unit circle).
pub fn random_enclosing_curve(rng: &mut XorShift, n_pts: usize) -> PlanarCurve<f64> {
    let base = rng.range(1.45, 1.7);
    star_curve(rng, base, 0.12, n_pts)
}

/// Random admissible curve enclosing no critical value (radius band well
/// inside the unit circle).
pub fn random_small_curve(rng: &mut XorShift, n_pts: usize) -> PlanarCurve<f64> {
    let base = rng.range(0.45, 0.6);
    star_curve(rng, base, 0.1, n_pts)
}

/// Binomial coefficients C(n, k) as exact u64, Pascal's rule.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n as usize + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..row.len()).rev() {
            row[j] = row[j].checked_add(row[j - 1]).expect("binomial overflow");
        }
    }
    row[k as usize]
}
