//! Finite Fourier polynomials on an `n`-dimensional quantum torus.
//!
//! The algebra is generated by unitaries `u_1, ..., u_n` subject to
//! `u_k u_j = e^{2 pi i theta_jk} u_j u_k` for an antisymmetric real matrix
//! `theta`. Elements are finite sums `sum_k c_k u^k` over `k` in `Z^n`, with
//! the monomial `u^k = u_1^{k_1} ... u_n^{k_n}` read left to right. Moving a
//! product into this normal form yields the cocycle
//! `u^p u^q = lambda(p, q) u^{p+q}` with
//! `lambda(p, q) = exp(2 pi i * sum_{j<k} theta_jk p_k q_j)`,
//! which is the single piece of phase bookkeeping everything else relies on.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::math;

/// Coefficients smaller than this in modulus are dropped after arithmetic.
pub const PRUNE_EPS: f64 = 1e-15;

/// Tolerance used by structural predicates (self-adjointness and friends).
pub const STRUCT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("twist matrix needs at least one generator")]
    EmptyMatrix,
    #[error("twist matrix expects {expected} entries, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("twist matrix is not antisymmetric at ({j},{k}): {defect}")]
    NotAntisymmetric { j: usize, k: usize, defect: f64 },
    #[error("lattice point has {got} coordinates, expected {expected}")]
    KeyLength { expected: usize, got: usize },
    #[error("operands live over different twist matrices")]
    ThetaMismatch,
    #[error("generator index {axis} out of range for {n} generators")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("torus action parameter has {got} coordinates, expected {expected}")]
    ActionLength { expected: usize, got: usize },
}

/// Antisymmetric real twist matrix. Stored canonically: the strict upper
/// triangle is taken as given, the lower triangle is its exact negation and
/// the diagonal is exactly zero, so phase formulas see a bitwise
/// antisymmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ThetaMatrix {
    pub fn new(n: usize, entries: &[f64]) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(AlgebraError::BadShape {
                expected: n * n,
                got: entries.len(),
            });
        }
        for j in 0..n {
            for k in j..n {
                let defect = math::abs(entries[j * n + k] + entries[k * n + j]);
                if defect > STRUCT_TOL {
                    return Err(AlgebraError::NotAntisymmetric { j, k, defect });
                }
            }
        }
        let mut canon = vec![0.0; n * n];
        for j in 0..n {
            for k in (j + 1)..n {
                canon[j * n + k] = entries[j * n + k];
                canon[k * n + j] = -entries[j * n + k];
            }
        }
        Ok(ThetaMatrix { n, entries: canon })
    }

    pub fn zero(n: usize) -> Self {
        ThetaMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.n + k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    /// Cocycle of the normal-form product: `u^p u^q = lambda(p,q) u^{p+q}`.
    pub fn lambda(&self, p: &[i32], q: &[i32]) -> Complex64 {
        let mut s = 0.0;
        for j in 0..self.n {
            if q[j] == 0 {
                continue;
            }
            for k in (j + 1)..self.n {
                if p[k] != 0 {
                    s += self.entry(j, k) * (p[k] as i64 * q[j] as i64) as f64;
                }
            }
        }
        math::unit_phase(s)
    }

    /// Phase carried by the adjoint of a monomial:
    /// `(u^p)^* = adjoint_phase(p) u^{-p}`.
    pub fn adjoint_phase(&self, p: &[i32]) -> Complex64 {
        self.lambda(p, &p.iter().map(|x| -x).collect::<Vec<_>>()).conj()
    }
}

/// A finite Fourier polynomial `sum_k c_k u^k` over a shared twist matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    theta: Arc<ThetaMatrix>,
    coeffs: BTreeMap<Vec<i32>, Complex64>,
}

fn add_keys(p: &[i32], q: &[i32]) -> Vec<i32> {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

impl TorusElement {
    pub fn zero(theta: &Arc<ThetaMatrix>) -> Self {
        TorusElement {
            theta: Arc::clone(theta),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(theta: &Arc<ThetaMatrix>) -> Self {
        Self::monomial(theta, &vec![0; theta.n()], Complex64::new(1.0, 0.0))
            .expect("zero key always fits")
    }

    pub fn monomial(
        theta: &Arc<ThetaMatrix>,
        k: &[i32],
        c: Complex64,
    ) -> Result<Self, AlgebraError> {
        if k.len() != theta.n() {
            return Err(AlgebraError::KeyLength {
                expected: theta.n(),
                got: k.len(),
            });
        }
        let mut coeffs = BTreeMap::new();
        if c.norm_sqr() >= PRUNE_EPS * PRUNE_EPS {
            coeffs.insert(k.to_vec(), c);
        }
        Ok(TorusElement {
            theta: Arc::clone(theta),
            coeffs,
        })
    }

    /// The generator `u_j` (zero-based axis).
    pub fn generator(theta: &Arc<ThetaMatrix>, axis: usize) -> Result<Self, AlgebraError> {
        if axis >= theta.n() {
            return Err(AlgebraError::AxisOutOfRange {
                axis,
                n: theta.n(),
            });
        }
        let mut k = vec![0; theta.n()];
        k[axis] = 1;
        Self::monomial(theta, &k, Complex64::new(1.0, 0.0))
    }

    pub fn from_coeffs<I>(theta: &Arc<ThetaMatrix>, it: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<i32>, Complex64)>,
    {
        let mut out = Self::zero(theta);
        for (k, c) in it {
            if k.len() != theta.n() {
                return Err(AlgebraError::KeyLength {
                    expected: theta.n(),
                    got: k.len(),
                });
            }
            *out.coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn theta(&self) -> &Arc<ThetaMatrix> {
        &self.theta
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }

    pub fn coeff(&self, k: &[i32]) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i32>, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|k_j|` over the support (0 for the zero element).
    pub fn support_radius(&self) -> i32 {
        self.coeffs
            .keys()
            .flat_map(|k| k.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() >= PRUNE_EPS);
    }

    fn same_theta(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.theta == other.theta || Arc::ptr_eq(&self.theta, &other.theta) {
            Ok(())
        } else {
            Err(AlgebraError::ThetaMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_theta(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            *out.coeffs.entry(k.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= z;
        }
        out.prune();
        out
    }

    pub fn scale_re(&self, r: f64) -> Self {
        self.scale(Complex64::new(r, 0.0))
    }

    /// Twisted product: `(ab)_{p+q} += a_p b_q lambda(p,q)`.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_theta(other)?;
        let mut out = Self::zero(&self.theta);
        for (p, cp) in &self.coeffs {
            for (q, cq) in &other.coeffs {
                let lam = self.theta.lambda(p, q);
                let key = add_keys(p, q);
                *out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0)) += cp * cq * lam;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Adjoint: conjugate coefficients, negate exponents, and pick up the
    /// phase from reversing each generator string.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(&self.theta);
        for (p, c) in &self.coeffs {
            let phase = self.theta.adjoint_phase(p);
            let key: Vec<i32> = p.iter().map(|x| -x).collect();
            *out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c.conj() * phase;
        }
        out.prune();
        out
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// The canonical tracial state: the coefficient at `k = 0`.
    pub fn trace(&self) -> Complex64 {
        self.coeff(&vec![0; self.n()])
    }

    /// Canonical derivation along `axis`: `c_k -> 2 pi i k_axis c_k`.
    pub fn derive(&self, axis: usize) -> Result<Self, AlgebraError> {
        if axis >= self.n() {
            return Err(AlgebraError::AxisOutOfRange {
                axis,
                n: self.n(),
            });
        }
        let mut out = self.clone();
        out.coeffs = out
            .coeffs
            .into_iter()
            .map(|(k, c)| {
                let f = Complex64::new(0.0, math::TAU * k[axis] as f64);
                (k, c * f)
            })
            .collect();
        out.prune();
        Ok(out)
    }

    /// Combination `sum_j r_j * derive(j)`.
    pub fn derive_along(&self, r: &[f64]) -> Result<Self, AlgebraError> {
        if r.len() != self.n() {
            return Err(AlgebraError::ActionLength {
                expected: self.n(),
                got: r.len(),
            });
        }
        let mut out = self.clone();
        out.coeffs = out
            .coeffs
            .into_iter()
            .map(|(k, c)| {
                let dot: f64 = r.iter().zip(&k).map(|(rj, kj)| rj * *kj as f64).sum();
                (k, c * Complex64::new(0.0, math::TAU * dot))
            })
            .collect();
        out.prune();
        Ok(out)
    }

    /// Torus action: `c_k -> e^{2 pi i s . k} c_k`.
    pub fn act(&self, s: &[f64]) -> Result<Self, AlgebraError> {
        if s.len() != self.n() {
            return Err(AlgebraError::ActionLength {
                expected: self.n(),
                got: s.len(),
            });
        }
        let mut out = self.clone();
        out.coeffs = out
            .coeffs
            .into_iter()
            .map(|(k, c)| {
                let dot: f64 = s.iter().zip(&k).map(|(sj, kj)| sj * *kj as f64).sum();
                let ph = math::unit_phase(dot);
                (k, c * ph)
            })
            .collect();
        out.prune();
        Ok(out)
    }

    /// Fejer smoothing at level `m`:
    /// `c_k -> c_k * prod_j max(0, 1 - |k_j|/(m+1))`.
    ///
    /// This is the average of the torus action against the product Fejer
    /// kernel, so it is completely positive, unital, and never increases the
    /// Lipschitz seminorm.
    pub fn fejer_smooth(&self, m: u32) -> Self {
        let cap = (m + 1) as f64;
        let mut out = Self::zero(&self.theta);
        for (k, c) in &self.coeffs {
            let mut w = 1.0;
            for &kj in k {
                w *= (1.0 - kj.abs() as f64 / cap).max(0.0);
            }
            if w > 0.0 {
                out.coeffs.insert(k.clone(), c * w);
            }
        }
        out.prune();
        out
    }

    /// Drops every coefficient outside the box `{|k_j| <= radius}`.
    pub fn truncate_support(&self, radius: i32) -> Self {
        let mut out = Self::zero(&self.theta);
        for (k, c) in &self.coeffs {
            if k.iter().all(|&kj| kj.abs() <= radius) {
                out.coeffs.insert(k.clone(), *c);
            }
        }
        out
    }

    pub fn real_part(&self) -> Self {
        self.add(&self.adjoint())
            .expect("same theta")
            .scale_re(0.5)
    }

    pub fn imag_part(&self) -> Self {
        self.sub(&self.adjoint())
            .expect("same theta")
            .scale(Complex64::new(0.0, -0.5))
    }

    /// Removes the trace component: `a - tau(a) 1`.
    pub fn traceless_part(&self) -> Self {
        let t = self.trace();
        let one = Self::one(&self.theta);
        self.sub(&one.scale(t)).expect("same theta")
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.sub(&self.adjoint())
            .map(|d| d.max_coeff_norm() <= tol)
            .unwrap_or(false)
    }

    pub fn is_skew_adjoint(&self, tol: f64) -> bool {
        self.add(&self.adjoint())
            .map(|d| d.max_coeff_norm() <= tol)
            .unwrap_or(false)
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol
    }

    /// The coefficient l1 norm, an upper bound for the operator norm.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().fold(0.0, |acc, c| acc + c.norm())
    }

    /// The GNS 2-norm `sqrt(tau(a^* a)) = sqrt(sum |c_k|^2)`.
    pub fn l2_norm(&self) -> f64 {
        math::sqrt(self.coeffs.values().fold(0.0, |acc, c| acc + c.norm_sqr()))
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_coeff_diff(&self, other: &Self) -> Result<f64, AlgebraError> {
        Ok(self.sub(other)?.max_coeff_norm())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_coeff_diff(other).map(|d| d <= tol).unwrap_or(false)
    }

    /// If the support lies on a single lattice line `Z * d` (for a primitive
    /// direction `d`), returns `d` and the integer positions `m` with their
    /// coefficients. Scalars report direction `None`.
    pub fn line_support(&self) -> Option<(Option<Vec<i32>>, Vec<(i32, Complex64)>)> {
        let nonzero: Vec<&Vec<i32>> = self
            .coeffs
            .keys()
            .filter(|k| k.iter().any(|&x| x != 0))
            .collect();
        if nonzero.is_empty() {
            return Some((None, self.coeffs.iter().map(|(_, c)| (0, *c)).collect()));
        }
        let first = nonzero[0];
        let g = first.iter().fold(0i32, |acc, &x| gcd(acc, x.abs()));
        let mut dir: Vec<i32> = first.iter().map(|x| x / g).collect();
        if dir.iter().find(|&&x| x != 0).map_or(false, |&x| x < 0) {
            for x in dir.iter_mut() {
                *x = -*x;
            }
        }
        let mut points = Vec::new();
        for (k, c) in &self.coeffs {
            if k.iter().all(|&x| x == 0) {
                points.push((0, *c));
                continue;
            }
            let m = ratio_along(k, &dir)?;
            points.push((m, *c));
        }
        Some((Some(dir), points))
    }
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integer `m` with `k = m * dir`, if one exists.
fn ratio_along(k: &[i32], dir: &[i32]) -> Option<i32> {
    let mut m: Option<i32> = None;
    for (kj, dj) in k.iter().zip(dir) {
        if *dj == 0 {
            if *kj != 0 {
                return None;
            }
            continue;
        }
        if kj % dj != 0 {
            return None;
        }
        let mj = kj / dj;
        match m {
            None => m = Some(mj),
            Some(prev) if prev != mj => return None,
            _ => {}
        }
    }
    m
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let key: String = k
                .iter()
                .map(|x| alloc::format!("{x}"))
                .collect::<Vec<_>>()
                .join(",");
            write!(f, "({:.6}{:+.6}i)u^[{key}]", c.re, c.im)?;
        }
        Ok(())
    }
}
