//! Arithmetic and topology of the rational homology balls
//! `B_{p,q} = S_{p-1} / Γ_{p,q}`.
//!
//! `Γ_{p,q}` is the free Z_p action `ξ·(x, y, z) = (ξx, ξ⁻¹y, ξ^q z)` on the
//! Milnor fibre of `F = z^p + 2xy`. The quotient is a rational homology ball
//! with boundary the lens space `L(p², pq−1)`; the Milnor filling of that
//! lens space is the linear plumbing `C_{p,q}` whose Euler numbers come from
//! the Hirzebruch–Jung expansion of `p²/(pq−1)`. Continued fractions and
//! determinants run in exact big-integer arithmetic; only the group-action
//! checks are floating point.

use crate::scalar::{real, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuotientError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed handle diagram: {0}")]
    MalformedDiagram(String),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Coprime pair p > q > 0 defining the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientParams {
    p: u64,
    q: u64,
}

impl QuotientParams {
    pub fn new(p: u64, q: u64) -> Result<Self, QuotientError> {
        if !(p > q && q > 0) {
            return Err(QuotientError::InvalidParams(format!(
                "need p > q > 0, got p = {p}, q = {q}"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(QuotientError::InvalidParams(format!(
                "p = {p} and q = {q} must be coprime"
            )));
        }
        Ok(QuotientParams { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Applies the k-th power of the generator of `Γ_{p,q}`:
/// `(x, y, z) ↦ (ξx, ξ⁻¹y, ξ^q z)` with `ξ = e^{2πik/p}`. The defining
/// function `F = z^p + 2xy` is invariant, and the action is free away from
/// the origin (which never lies on F = 1).
pub fn act<T: Real>(params: &QuotientParams, k: i64, point: &[Complex<T>; 3]) -> [Complex<T>; 3] {
    let p = params.p as f64;
    let unit = |mult: f64| -> Complex<T> {
        let th = real::<T>(2.0) * T::PI() * real::<T>(mult) / real::<T>(p);
        Complex::new(th.cos(), th.sin())
    };
    let k = k.rem_euclid(params.p as i64) as f64;
    let xi = unit(k);
    let xi_inv = unit(-k);
    let xi_q = unit(k * params.q as f64);
    [point[0] * xi, point[1] * xi_inv, point[2] * xi_q]
}

/// `F(x, y, z) = z^p + 2xy`, the invariant defining function.
pub fn invariant_function<T: Real>(params: &QuotientParams, point: &[Complex<T>; 3]) -> Complex<T> {
    point[2].powu(params.p as u32) + point[0] * point[1] * real::<T>(2.0)
}

/// Linear plumbing chain with Euler numbers `[-b_k, ..., -b_1]`, all
/// `b_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    euler_numbers: Vec<i64>,
}

impl PlumbingGraph {
    pub fn euler_numbers(&self) -> &[i64] {
        &self.euler_numbers
    }

    /// The positive coefficients `[b_k, ..., b_1]`.
    pub fn coefficients(&self) -> Vec<i64> {
        self.euler_numbers.iter().map(|&e| -e).collect()
    }

    pub fn len(&self) -> usize {
        self.euler_numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.euler_numbers.is_empty()
    }
}

/// Hirzebruch–Jung expansion of `p²/(pq−1)`: repeatedly
/// `a/b ↦ ⌈a/b⌉ − 1/(…)`, producing the unique representation
/// `[b_k, …, b_1]` with every `b_i ≥ 2`.
pub fn hj_expansion(params: &QuotientParams) -> PlumbingGraph {
    let p = BigInt::from(params.p);
    let numer = &p * &p;
    let denom = BigInt::from(params.p * params.q - 1);
    let coeffs = hj_coefficients(BigRational::new(numer, denom));
    PlumbingGraph {
        euler_numbers: coeffs.into_iter().map(|b| -b).collect(),
    }
}

fn hj_coefficients(mut x: BigRational) -> Vec<i64> {
    let mut out = Vec::new();
    loop {
        let b = x.ceil().to_integer();
        let b_i64 = i64::try_from(&b).expect("continued-fraction coefficient overflow");
        out.push(b_i64);
        let rem = BigRational::from_integer(b) - &x;
        if rem.is_zero() {
            return out;
        }
        x = rem.recip();
    }
}

/// Evaluates `[b_k, …, b_1]` back to `b_k − 1/(b_{k−1} − 1/(… − 1/b_1))`
/// in exact rational arithmetic.
pub fn continued_fraction_eval(coefficients: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &b in coefficients.iter().rev() {
        let b_rat = BigRational::from_integer(BigInt::from(b));
        acc = Some(match acc {
            None => b_rat,
            Some(prev) => b_rat - prev.recip(),
        });
    }
    acc.expect("empty continued fraction")
}

/// Intersection matrix of the linear plumbing: tridiagonal with the Euler
/// numbers on the diagonal and 1 off it. Its determinant has absolute value
/// p², the order of H₁ of the lens-space boundary.
pub fn plumbing_matrix(g: &PlumbingGraph) -> Vec<Vec<i64>> {
    let k = g.euler_numbers.len();
    let mut m = vec![vec![0i64; k]; k];
    for i in 0..k {
        m[i][i] = g.euler_numbers[i];
        if i + 1 < k {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    m
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "determinant needs a square matrix");
            row.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// A 2-handle: how many times its attaching circle runs through the
/// 1-handle, and its framing (the `tb − 1` integer of the Legendrian
/// realisation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoHandle {
    pub strands: i64,
    pub framing: i64,
}

/// Handle decomposition with one 0-handle, `one_handles` 1-handles and the
/// listed 2-handles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleDiagram {
    pub one_handles: u32,
    pub two_handles: Vec<TwoHandle>,
}

impl HandleDiagram {
    pub fn empty() -> Self {
        HandleDiagram {
            one_handles: 0,
            two_handles: Vec::new(),
        }
    }

    /// Diagram of `B_{p,q}`: one 1-handle and a single 2-handle passing
    /// through it p times with framing `−pq − 1`.
    pub fn rational_ball(params: &QuotientParams) -> Self {
        HandleDiagram {
            one_handles: 1,
            two_handles: vec![TwoHandle {
                strands: params.p as i64,
                framing: -((params.p * params.q) as i64) - 1,
            }],
        }
    }

    /// Diagram of the p-fold cover `S_{p−1}` in the twisted form that makes
    /// the Z_p symmetry visible: one 1-handle and p 2-handles, each passing
    /// through once with framing `−1 − q`.
    pub fn milnor_cover(params: &QuotientParams) -> Self {
        HandleDiagram {
            one_handles: 1,
            two_handles: vec![
                TwoHandle {
                    strands: 1,
                    framing: -1 - params.q as i64,
                };
                params.p as usize
            ],
        }
    }
}

/// Finitely generated abelian group as free rank plus invariant factors
/// (each > 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelian {
    pub rank: u32,
    pub torsion: Vec<u64>,
}

impl FiniteAbelian {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of the 4-manifold described by a handle diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleHomology {
    pub h1: FiniteAbelian,
    pub h2_rank: u32,
    pub chi: i64,
}

/// Chain complex of the handle decomposition: `C₂ → C₁ → C₀` with the
/// 2-handle boundary map given by strand counts through the 1-handles;
/// Smith normal form over Z yields H₁ and H₂.
pub fn handle_homology(d: &HandleDiagram) -> Result<HandleHomology, QuotientError> {
    if d.one_handles > 1 {
        return Err(QuotientError::MalformedDiagram(format!(
            "diagrams with {} 1-handles need per-handle strand data",
            d.one_handles
        )));
    }
    if d.one_handles == 0 && d.two_handles.iter().any(|h| h.strands != 0) {
        return Err(QuotientError::MalformedDiagram(
            "2-handle runs through a non-existent 1-handle".into(),
        ));
    }
    let chi = 1 - d.one_handles as i64 + d.two_handles.len() as i64;
    if d.one_handles == 0 {
        // No 1-handles: every 2-handle attaches along a null-homotopic
        // circle and contributes freely to H₂.
        return Ok(HandleHomology {
            h1: FiniteAbelian {
                rank: 0,
                torsion: Vec::new(),
            },
            h2_rank: d.two_handles.len() as u32,
            chi,
        });
    }
    // Boundary matrix: rows = 1-handles (here one), cols = 2-handles.
    let matrix: Vec<Vec<i128>> = vec![d.two_handles.iter().map(|h| h.strands as i128).collect()];
    let diag = smith_diagonal(matrix.clone());
    let rank = diag.iter().filter(|&&v| v != 0).count() as u32;
    let torsion: Vec<u64> = diag
        .iter()
        .filter(|&&v| v != 0 && v.unsigned_abs() > 1)
        .map(|&v| v.unsigned_abs() as u64)
        .collect();
    let h1 = FiniteAbelian {
        rank: d.one_handles - rank,
        torsion,
    };
    let h2_rank = d.two_handles.len() as u32 - rank;
    Ok(HandleHomology { h1, h2_rank, chi })
}

/// Diagonal of the Smith normal form of an integer matrix.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // Find the smallest nonzero pivot in the remaining block.
        let mut piv: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in left..cols {
                if m[r][c] != 0
                    && piv.map_or(true, |(pr, pc)| m[r][c].abs() < m[pr][pc].abs())
                {
                    piv = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = piv else { break };
        m.swap(top, pr);
        for row in m.iter_mut() {
            row.swap(left, pc);
        }
        // Clear the pivot row and column; restart if a remainder appears.
        loop {
            let mut clean = true;
            for r in top + 1..rows {
                let f = m[r][left] / m[top][left];
                if f != 0 {
                    for c in left..cols {
                        m[r][c] -= f * m[top][c];
                    }
                }
                if m[r][left] != 0 {
                    // Remainder smaller than the pivot: swap up and retry.
                    m.swap(top, r);
                    clean = false;
                }
            }
            for c in left + 1..cols {
                let f = m[top][c] / m[top][left];
                if f != 0 {
                    for r in top..rows {
                        m[r][c] -= f * m[r][left];
                    }
                }
                if m[top][c] != 0 {
                    for row in m.iter_mut() {
                        row.swap(left, c);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len().saturating_sub(1) {
            if diag[i + 1] % diag[i] != 0 {
                let a = diag[i];
                let b = diag[i + 1];
                let g = gcd_i128(a, b);
                diag[i] = g;
                diag[i + 1] = a / g * b;
                changed = true;
            }
        }
    }
    diag
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Lens-space boundary data of `B_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LensSpace {
    /// |H₁| of the boundary.
    pub order: u64,
    /// The pair (p², pq − 1).
    pub lens_type: (u64, u64),
}

/// `∂B_{p,q} = L(p², pq − 1)`; the order matches the plumbing determinant.
pub fn lens_boundary(params: &QuotientParams) -> LensSpace {
    let p2 = params.p * params.p;
    LensSpace {
        order: p2,
        lens_type: (p2, params.p * params.q - 1),
    }
}
