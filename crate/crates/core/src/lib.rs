//! Computational invariants of the A_n Milnor fibres `S_n = {z^{n+1} + 2xy = 1}`
//! and of the rational homology balls `B_{p,q} = S_{p-1} / Γ_{p,q}`.
//!
//! The library is organised around the Lefschetz fibration `Π_n : S_n → ℂ`
//! (projection to the z-coordinate, critical values at the (n+1)-th roots of
//! unity) and the monotone Lagrangian matching tori living over closed curves
//! in the base:
//!
//! * [`fibration`] — base-plane geometry: the singular area form σ, the
//!   monotonicity constant τ of a matching torus, classification of tori up
//!   to Hamiltonian isotopy, and the `T*S²` identification for n = 1.
//! * [`census`] — Maslov-index-2 holomorphic disk counts with boundary on a
//!   matching torus, built by the gluing recursion, together with the
//!   explicit model sections over round circles.
//! * [`pearl`] — pearl-complex Floer cohomology over `Z₂[t, t⁻¹]` for the
//!   matching tori, and the p-fold transfer argument for the quotient tori.
//! * [`quotient`] — arithmetic and topology of `B_{p,q}`: the `Γ_{p,q}`
//!   action, Hirzebruch–Jung continued fractions, linear plumbings, handle
//!   homology and lens-space boundaries.
//! * [`pairing`] — relative homology classes of arcs in the p-punctured
//!   plane, the Z_p-equivariant intersection pairing and the
//!   exact-Lagrangian verdict.
//!
//! All floating-point geometry is generic over the scalar type through the
//! [`scalar::Real`] trait (`f32` or `f64`); continued fractions, plumbing
//! determinants and handle homology use exact big-integer arithmetic.

pub mod census;
pub mod curve;
pub mod fibration;
pub mod pairing;
pub mod pearl;
pub mod quad;
pub mod quotient;
pub mod scalar;
pub mod tol;

pub use num_complex::Complex;

/// Base-plane point with scalar type `T`.
pub type Point<T> = Complex<T>;

/// Default double-precision point type used by the CLI.
pub type Point64 = Complex<f64>;
/// Double-precision closed curve.
pub type Curve64 = curve::PlanarCurve<f64>;
/// Double-precision monotonicity constant.
pub type Tau64 = fibration::MonotonicityConstant<f64>;
