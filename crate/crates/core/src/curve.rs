//! Closed polylines in the base plane of the fibration.
//!
//! Curves are simple, positively oriented closed polygons. This is the shape
//! every contour integral in [`crate::fibration`] runs over, and the shape
//! the CLI reads from curve files:
//!
//! ```json
//! {"closed": true, "points": [[re, im], ...]}
//! ```
//!
//! with at least 8 points.

use crate::scalar::{real, Real};
use crate::tol;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("curve must have at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("curve file must set \"closed\": true")]
    NotClosed,
    #[error("curve coordinates must be finite")]
    NonFinite,
    #[error("curve must be positively oriented (signed area {area} <= 0)")]
    NegativelyOriented { area: f64 },
    #[error("curve is not simple: segments {i} and {j} intersect")]
    SelfIntersection { i: usize, j: usize },
    #[error("curve passes within {dist} of critical value {index} (minimum {min})")]
    TooCloseToCritical { index: usize, dist: f64, min: f64 },
    #[error("winding number is ambiguous near {value} (tangency?)")]
    AmbiguousWinding { value: f64 },
    #[error("invalid curve JSON: {0}")]
    Json(String),
}

/// Serialized form of a curve file.
#[derive(Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub closed: bool,
    pub points: Vec<[f64; 2]>,
}

/// A simple, positively oriented closed polyline.
#[derive(Debug, Clone)]
pub struct PlanarCurve<T> {
    points: Vec<Complex<T>>,
}

impl<T: Real> PlanarCurve<T> {
    /// Validates orientation and simplicity. Points are the polygon
    /// vertices; the closing edge from the last point back to the first is
    /// implicit.
    pub fn new(points: Vec<Complex<T>>) -> Result<Self, CurveError> {
        if points.len() < 3 {
            return Err(CurveError::TooFewPoints {
                min: 3,
                got: points.len(),
            });
        }
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(CurveError::NonFinite);
        }
        let curve = PlanarCurve { points };
        let area = curve.signed_area();
        if area <= T::zero() {
            return Err(CurveError::NegativelyOriented {
                area: area.to_f64().unwrap_or(f64::NAN),
            });
        }
        curve.check_simple()?;
        Ok(curve)
    }

    /// Skips the O(N²) simplicity scan; for internally generated curves that
    /// are simple by construction (circles, ellipses, star-shaped radius
    /// graphs).
    pub fn new_unchecked(points: Vec<Complex<T>>) -> Self {
        debug_assert!(points.len() >= 3);
        PlanarCurve { points }
    }

    /// Parses the JSON curve-file format (≥ 8 points, `closed: true`).
    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let file: CurveFile =
            serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
        if !file.closed {
            return Err(CurveError::NotClosed);
        }
        if file.points.len() < 8 {
            return Err(CurveError::TooFewPoints {
                min: 8,
                got: file.points.len(),
            });
        }
        let points = file
            .points
            .iter()
            .map(|&[re, im]| Complex::new(real(re), real(im)))
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vertices of segment `i`, with wrap-around.
    #[inline]
    pub fn segment(&self, i: usize) -> (Complex<T>, Complex<T>) {
        let a = self.points[i];
        let b = self.points[(i + 1) % self.points.len()];
        (a, b)
    }

    /// Shoelace signed area; positive for counterclockwise curves.
    pub fn signed_area(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.points.len() {
            let (a, b) = self.segment(i);
            acc = acc + (a.re * b.im - a.im * b.re);
        }
        acc * real(0.5)
    }

    /// +1 for positively oriented curves (the only kind the constructor
    /// admits).
    pub fn orientation(&self) -> i8 {
        if self.signed_area() > T::zero() {
            1
        } else {
            -1
        }
    }

    fn check_simple(&self) -> Result<(), CurveError> {
        let n = self.points.len();
        for i in 0..n {
            let (a, b) = self.segment(i);
            for j in (i + 1)..n {
                // Adjacent segments share a vertex by construction.
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (c, d) = self.segment(j);
                if segments_cross(a, b, c, d) {
                    return Err(CurveError::SelfIntersection { i, j });
                }
            }
        }
        Ok(())
    }

    /// Minimum distance from the polyline to `pt`.
    pub fn distance_to(&self, pt: Complex<T>) -> T {
        let mut best = T::infinity();
        for i in 0..self.points.len() {
            let (a, b) = self.segment(i);
            let d = point_segment_distance(pt, a, b);
            if d < best {
                best = d;
            }
        }
        best
    }

    /// Rejects curves passing within `min_dist` of any of `values`.
    pub fn check_clearance(
        &self,
        values: &[Complex<T>],
        min_dist: T,
    ) -> Result<(), CurveError> {
        for (index, &v) in values.iter().enumerate() {
            let d = self.distance_to(v);
            if d < min_dist {
                return Err(CurveError::TooCloseToCritical {
                    index,
                    dist: d.to_f64().unwrap_or(f64::NAN),
                    min: min_dist.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    /// Winding number of the curve around `pt`, as the total signed turning
    /// of the vertex directions divided by 2π. The fractional residue must
    /// stay below [`tol::WINDING_SLACK`]; larger residues signal a
    /// near-tangency and are rejected.
    pub fn winding_number(&self, pt: Complex<T>) -> Result<i32, CurveError> {
        let mut total = T::zero();
        let n = self.points.len();
        for i in 0..n {
            let (a, b) = self.segment(i);
            let u = a - pt;
            let v = b - pt;
            let cross = u.re * v.im - u.im * v.re;
            let dot = u.re * v.re + u.im * v.im;
            total = total + cross.atan2(dot);
        }
        let turns = total / (real::<T>(2.0) * T::PI());
        let turns_f = turns.to_f64().unwrap_or(f64::NAN);
        let rounded = turns_f.round();
        if (turns_f - rounded).abs() > tol::WINDING_SLACK {
            return Err(CurveError::AmbiguousWinding { value: turns_f });
        }
        Ok(rounded as i32)
    }

    /// Translates every vertex by `offset`.
    pub fn translated(&self, offset: Complex<T>) -> Self {
        PlanarCurve {
            points: self.points.iter().map(|p| p + offset).collect(),
        }
    }

    /// Regular `n_pts`-gon inscribed in the circle of radius `r` about
    /// `center`, counterclockwise.
    pub fn circle(center: Complex<T>, r: T, n_pts: usize) -> Self {
        let mut points = Vec::with_capacity(n_pts);
        for i in 0..n_pts {
            let th = real::<T>(2.0) * T::PI() * real::<T>(i as f64) / real::<T>(n_pts as f64);
            points.push(center + Complex::new(r * th.cos(), r * th.sin()));
        }
        PlanarCurve { points }
    }

    /// Axis-aligned ellipse about `center` with semi-axes `a` (along x) and
    /// `b` (along y), counterclockwise.
    pub fn ellipse(center: Complex<T>, a: T, b: T, n_pts: usize) -> Self {
        let mut points = Vec::with_capacity(n_pts);
        for i in 0..n_pts {
            let th = real::<T>(2.0) * T::PI() * real::<T>(i as f64) / real::<T>(n_pts as f64);
            points.push(center + Complex::new(a * th.cos(), b * th.sin()));
        }
        PlanarCurve { points }
    }
}

/// Proper crossing test for closed segments [a,b] and [c,d]: endpoints
/// touching or collinear overlap count as crossings here, which is the
/// conservative choice for a simplicity check.
pub(crate) fn segments_cross<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > T::zero() && d2 < T::zero()) || (d1 < T::zero() && d2 > T::zero()))
        && ((d3 > T::zero() && d4 < T::zero()) || (d3 < T::zero() && d4 > T::zero()))
    {
        return true;
    }
    (d1 == T::zero() && on_segment(c, d, a))
        || (d2 == T::zero() && on_segment(c, d, b))
        || (d3 == T::zero() && on_segment(a, b, c))
        || (d4 == T::zero() && on_segment(a, b, d))
}

#[inline]
pub(crate) fn orient<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> T {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn on_segment<T: Real>(a: Complex<T>, b: Complex<T>, p: Complex<T>) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

pub(crate) fn point_segment_distance<T: Real>(p: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.re * ab.re + ab.im * ab.im;
    if len2 == T::zero() {
        return cabs(p - a);
    }
    let ap = p - a;
    let t = ((ap.re * ab.re + ap.im * ab.im) / len2)
        .max(T::zero())
        .min(T::one());
    cabs(p - (a + ab * t))
}

/// |z| via sqrt(re² + im²). `Complex::norm` routes through `hypot`, whose
/// last-bit behaviour differs between libm builds; this keeps the CLI's
/// byte-reproducibility contract on a single platform honest.
#[inline]
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}
