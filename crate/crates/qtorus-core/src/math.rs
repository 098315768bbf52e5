//! Scalar helpers routed through `num_traits::Float` so the crate builds
//! without `std`. Callers use these instead of the inherent `f64` methods.

pub use core::f64::consts::{PI, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    <f64 as num_traits::Float>::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    <f64 as num_traits::Float>::abs(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    <f64 as num_traits::Float>::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    <f64 as num_traits::Float>::sin(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    <f64 as num_traits::Float>::floor(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    <f64 as num_traits::Float>::hypot(x, y)
}

#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    <f64 as num_traits::Float>::powi(x, k)
}

/// `e^{2\pi i t}` as a complex number.
#[inline]
pub fn unit_phase(t: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(cos(TAU * t), sin(TAU * t))
}

/// Representative of `t` in `[-1/2, 1/2)` modulo 1.
#[inline]
pub fn wrap_half(t: f64) -> f64 {
    let f = t - floor(t);
    if f >= 0.5 {
        f - 1.0
    } else {
        f
    }
}
