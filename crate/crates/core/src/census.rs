//! Maslov-index-2 holomorphic disks with boundary on a matching torus.
//!
//! Over a curve enclosing a single critical value there are exactly two
//! holomorphic sections through each torus point, in boundary classes L and
//! L + V. Gluing along a curve enclosing n+1 critical values convolves
//! these counts, producing `C(n+1, k)` disks in class `k·V + L`. The census
//! here is always produced by that gluing recursion; the binomial formula is
//! reserved for test oracles.
//!
//! The basis class `L_n` is canonicalised as the glue of n+1 base classes,
//! left to right; `V` is the vanishing-cycle class.

use crate::curve::cabs;
use crate::fibration::MonotonicityConstant;
use crate::scalar::{real, Real};
use num_complex::Complex;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CensusError {
    #[error("point is not on the model torus: {0}")]
    OffTorus(String),
    #[error("|w| = {got} exceeds the disk radius {r}")]
    OutsideDisk { got: f64, r: f64 },
}

/// Class `v·V + l·L` in H₁ of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusH1Class {
    pub v: i64,
    pub l: i64,
}

impl TorusH1Class {
    pub fn new(v: i64, l: i64) -> Self {
        TorusH1Class { v, l }
    }

    /// Mod-2 reduction, as a separate view.
    pub fn mod2(&self) -> Mod2Class {
        Mod2Class {
            v: self.v.rem_euclid(2) == 1,
            l: self.l.rem_euclid(2) == 1,
        }
    }
}

impl std::ops::Add for TorusH1Class {
    type Output = TorusH1Class;
    fn add(self, rhs: Self) -> Self {
        TorusH1Class {
            v: self.v + rhs.v,
            l: self.l + rhs.l,
        }
    }
}

/// Element of H₁(T²; Z₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mod2Class {
    pub v: bool,
    pub l: bool,
}

impl Mod2Class {
    pub fn is_zero(&self) -> bool {
        !self.v && !self.l
    }
}

/// Counts of Maslov-2 disks per boundary class; every class has L-coefficient
/// one in the census's own `L_n` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskCensus {
    n: u32,
    /// V-coefficient -> number of disks in class kV + L.
    counts: BTreeMap<i64, u64>,
}

impl DiskCensus {
    /// Census with no disks at all.
    pub fn empty(n: u32) -> Self {
        DiskCensus {
            n,
            counts: BTreeMap::new(),
        }
    }

    /// Base case: one critical value enclosed, two sections through each
    /// point, classes L and L + V.
    pub fn base() -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(0, 1);
        counts.insert(1, 1);
        DiskCensus { n: 0, counts }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn count(&self, k: i64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (TorusH1Class, u64)> + '_ {
        self.counts
            .iter()
            .map(|(&k, &c)| (TorusH1Class::new(k, 1), c))
    }

    pub fn total_count(&self) -> u64 {
        self.counts.values().fold(0u64, |acc, &c| {
            acc.checked_add(c).expect("census count overflow")
        })
    }

    /// Builds a census with explicit counts; only for tests and fuzzing.
    pub fn from_counts(n: u32, counts: BTreeMap<i64, u64>) -> Self {
        let mut c = counts;
        c.retain(|_, v| *v > 0);
        DiskCensus { n, counts: c }
    }
}

/// Census of the torus over a curve enclosing n+1 critical values, by
/// iterated gluing of n+1 single-critical-value pieces.
pub fn census(n: u32) -> DiskCensus {
    assert!(n <= 57, "disk counts overflow 64-bit arithmetic for n > 57");
    let mut acc = DiskCensus::base();
    for _ in 0..n {
        acc = glue(&acc, &DiskCensus::base());
    }
    acc
}

/// Fibre-product gluing of two censuses: V-coefficients add, the glued
/// L-basis is `L_{a+b+1}` for inputs in bases `L_a`, `L_b`, and counts
/// multiply and accumulate (a convolution in the V-coefficient).
pub fn glue(left: &DiskCensus, right: &DiskCensus) -> DiskCensus {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for (&k1, &c1) in &left.counts {
        for (&k2, &c2) in &right.counts {
            let prod = c1.checked_mul(c2).expect("census count overflow");
            let slot = counts.entry(k1 + k2).or_insert(0);
            *slot = slot.checked_add(prod).expect("census count overflow");
        }
    }
    DiskCensus {
        n: left.n + right.n + 1,
        counts,
    }
}

/// Total boundary class over the integers: Σ count·class.
pub fn total_boundary(c: &DiskCensus) -> TorusH1Class {
    let mut v: i64 = 0;
    let mut l: i64 = 0;
    for (&k, &cnt) in &c.counts {
        let cnt_i = i64::try_from(cnt).expect("census count overflow");
        v = v
            .checked_add(k.checked_mul(cnt_i).expect("boundary overflow"))
            .expect("boundary overflow");
        l = l.checked_add(cnt_i).expect("boundary overflow");
    }
    TorusH1Class::new(v, l)
}

/// The class `c(T)`: the mod-2 total boundary of Maslov-2 disks through a
/// generic point. Nonzero exactly when the torus bounds an odd total.
pub fn c_class(c: &DiskCensus) -> Mod2Class {
    total_boundary(c).mod2()
}

/// Maslov index: μ(kV + lL) = 2l. Section classes have index 2, the
/// thimble class V has index 0, and μ is additive.
pub fn maslov(cl: &TorusH1Class) -> i64 {
    2 * cl.l
}

/// Symplectic area of a class from monotonicity: ω = τ·μ/2.
pub fn symplectic_area<T: Real>(cl: &TorusH1Class, tau: &MonotonicityConstant<T>) -> T {
    tau.0 * real::<T>(cl.l as f64)
}

/// Sign of a model section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionSign {
    Plus,
    Minus,
}

/// A holomorphic section `u_{a,±}` of the model fibration
/// `π(x₁, x₂) = x₁² + x₂²` over the disk of radius `r`, with boundary on the
/// matching torus over the circle of radius `r`. The parameter `a` has
/// |a| = 1/2 exactly and is stored as its angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSection<T> {
    pub angle: T,
    pub sign: SectionSign,
    pub r: T,
}

impl<T: Real> ModelSection<T> {
    pub fn a(&self) -> Complex<T> {
        Complex::from_polar(real::<T>(0.5), self.angle)
    }

    /// Boundary class in H₁ of the torus: the two families differ by the
    /// vanishing-cycle class V; we write the Plus family as L and the Minus
    /// family as L + V.
    pub fn boundary_class(&self) -> TorusH1Class {
        match self.sign {
            SectionSign::Plus => TorusH1Class::new(0, 1),
            SectionSign::Minus => TorusH1Class::new(1, 1),
        }
    }
}

/// Evaluates `u_{a,±}(w) = (r^{-1/2} a w + r^{1/2} ā, ±i (r^{-1/2} a w − r^{1/2} ā))`.
/// Satisfies π(u(w)) = w identically, and maps the boundary circle onto the
/// torus {|x₁|² + |x₂|² = r} ∩ {|x₁ + i x₂| = |x₁ − i x₂|}.
pub fn model_section_eval<T: Real>(
    s: &ModelSection<T>,
    w: Complex<T>,
) -> Result<(Complex<T>, Complex<T>), CensusError> {
    let aw = cabs(w);
    if aw > s.r * (T::one() + real(1e-12)) {
        return Err(CensusError::OutsideDisk {
            got: aw.to_f64().unwrap_or(f64::NAN),
            r: s.r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let a = s.a();
    let rs = s.r.sqrt();
    let head = a * w / rs;
    let tail = a.conj() * rs;
    let first = head + tail;
    let second = (head - tail) * Complex::new(T::zero(), T::one());
    let second = match s.sign {
        SectionSign::Plus => second,
        SectionSign::Minus => -second,
    };
    Ok((first, second))
}

/// The model fibration `π(x₁, x₂) = x₁² + x₂²`.
pub fn model_projection<T: Real>(x1: Complex<T>, x2: Complex<T>) -> Complex<T> {
    x1 * x1 + x2 * x2
}

/// All model sections whose boundary passes through `pt`, a point of the
/// model torus over the circle of radius `r`. There are exactly two, one of
/// each sign, and their boundary circles meet transversely at `pt`.
///
/// In the fibre coordinates ξ = x₁ + i x₂, η = x₁ − i x₂ the Plus boundary
/// is {ξ = const} and the Minus boundary is {η = const}, so the solution is
/// a closed-form phase match.
pub fn sections_through<T: Real>(
    pt: (Complex<T>, Complex<T>),
    r: T,
) -> Result<Vec<ModelSection<T>>, CensusError> {
    let i_c = Complex::new(T::zero(), T::one());
    let xi = pt.0 + i_c * pt.1;
    let eta = pt.0 - i_c * pt.1;
    let rs = r.sqrt();
    let tol_t: T = real(1e-9);
    if (cabs(xi) - rs).abs() > tol_t * rs.max(T::one())
        || (cabs(eta) - rs).abs() > tol_t * rs.max(T::one())
    {
        return Err(CensusError::OffTorus(format!(
            "|xi| = {}, |eta| = {}, expected sqrt(r) = {}",
            cabs(xi),
            cabs(eta),
            rs
        )));
    }
    // Plus section boundary: xi = sqrt(r) e^{-i chi}; Minus: eta = sqrt(r) e^{-i chi}.
    let plus = ModelSection {
        angle: -xi.arg(),
        sign: SectionSign::Plus,
        r,
    };
    let minus = ModelSection {
        angle: -eta.arg(),
        sign: SectionSign::Minus,
        r,
    };
    Ok(vec![plus, minus])
}

/// Point of the model torus over the circle of radius r, parametrised by the
/// base angle θ and a fibre phase ψ.
pub fn model_torus_point<T: Real>(r: T, theta: T, psi: T) -> (Complex<T>, Complex<T>) {
    // xi = sqrt(r) e^{i psi}, eta = sqrt(r) e^{i(theta - psi)}, so that
    // xi * eta = r e^{i theta} lies on the base circle.
    let rs = r.sqrt();
    let xi = Complex::from_polar(rs, psi);
    let eta = Complex::from_polar(rs, theta - psi);
    let i_c = Complex::new(T::zero(), T::one());
    let x1 = (xi + eta) * real::<T>(0.5);
    let x2 = ((xi - eta) * real::<T>(0.5)) / i_c;
    (x1, x2)
}
