//! Certified operator-norm intervals through the tracial GNS representation.
//!
//! The trace `tau(a) = c_0(a)` represents the algebra on `l^2(Z^n)` by
//! twisted convolution. Compressing to a finite lattice box gives computable
//! quadratic forms that never exceed the true operator norm, while the
//! coefficient l1 sum bounds it from above. Elements supported on a single
//! lattice line generate a commutative subalgebra isomorphic to continuous
//! functions on the circle (the spectral measure of `u^d` under `tau` is
//! Haar), so for those a dense evaluation of the circle symbol provides an
//! additional sound lower bound that does not suffer from box truncation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{AlgebraError, TorusElement};
use crate::linalg::{
    self, CMatrix, LanczosConfig, LinOp, C64,
};
use crate::math;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GnsError {
    #[error("truncation radius must be at least 1, got {0}")]
    BadRadius(i32),
    #[error("radius schedule must be nonempty and strictly increasing")]
    BadSchedule,
    #[error("grid must be square over a shared twist matrix")]
    BadGrid,
    #[error("grid is not self-adjoint: defect {0}")]
    NonHermitian(f64),
    #[error("compression has eigenvalue {0} below the negativity tolerance")]
    NegativeEigenvalue(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The lattice box `{k : |k_j| <= R}` indexing a truncated GNS space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationBox {
    n: usize,
    radius: i32,
    side: usize,
    size: usize,
}

impl TruncationBox {
    pub fn new(n: usize, radius: i32) -> Result<Self, GnsError> {
        if radius < 1 {
            return Err(GnsError::BadRadius(radius));
        }
        let side = (2 * radius + 1) as usize;
        let size = side.pow(n as u32);
        Ok(TruncationBox {
            n,
            radius,
            side,
            size,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, k: &[i32]) -> bool {
        k.iter().all(|&x| x.abs() <= self.radius)
    }

    /// Lexicographic index of a box point.
    pub fn index(&self, k: &[i32]) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let mut idx = 0usize;
        for &kj in k {
            idx = idx * self.side + (kj + self.radius) as usize;
        }
        Some(idx)
    }

    pub fn point(&self, mut idx: usize) -> Vec<i32> {
        let mut k = vec![0i32; self.n];
        for j in (0..self.n).rev() {
            k[j] = (idx % self.side) as i32 - self.radius;
            idx /= self.side;
        }
        k
    }
}

/// Interval enclosure of an operator norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormInterval {
    pub lower: f64,
    pub upper: f64,
    /// Largest truncation radius that contributed to the lower bound
    /// (0 when no box was needed).
    pub radius: i32,
    pub converged: bool,
}

impl NormInterval {
    pub fn new(lower: f64, upper: f64, radius: i32, converged: bool) -> Self {
        let upper = upper.max(0.0);
        let lower = lower.max(0.0).min(upper);
        NormInterval {
            lower,
            upper,
            radius,
            converged,
        }
    }

    pub fn exact(v: f64) -> Self {
        Self::new(v, v, 0, true)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn overlaps(&self, other: &NormInterval) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Enclosure of `s` times the quantity, `s >= 0`.
    pub fn scale(&self, s: f64) -> Self {
        Self::new(
            self.lower * s,
            self.upper * s,
            self.radius,
            self.converged,
        )
    }

    /// Enclosure of the square root of the quantity.
    pub fn sqrt(&self) -> Self {
        Self::new(
            math::sqrt(self.lower.max(0.0)),
            math::sqrt(self.upper.max(0.0)),
            self.radius,
            self.converged,
        )
    }

    /// Enclosure of the maximum of the two quantities.
    pub fn join_max(&self, other: &NormInterval) -> Self {
        Self::new(
            self.lower.max(other.lower),
            self.upper.max(other.upper),
            self.radius.max(other.radius),
            self.converged && other.converged,
        )
    }

    /// Enclosure of the sum of the two quantities.
    pub fn add(&self, other: &NormInterval) -> Self {
        Self::new(
            self.lower + other.lower,
            self.upper + other.upper,
            self.radius.max(other.radius),
            self.converged && other.converged,
        )
    }

    /// Enclosure shifted by an exactly known nonnegative scalar.
    pub fn offset(&self, s: f64) -> Self {
        Self::new(self.lower + s, self.upper + s, self.radius, self.converged)
    }
}

/// Evidence about positivity of a grid from one compression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityEvidence {
    pub min_eig: f64,
    pub radius: i32,
    pub dim: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Necessary condition held; not a proof of positivity.
    Plausible,
    /// A compression eigenvalue is genuinely negative, so the grid is not positive.
    NonPositive,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Plausible => "plausible",
            Verdict::NonPositive => "non-positive",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Configuration for norm estimation.
#[derive(Debug, Clone)]
pub struct GnsConfig {
    pub radii: Vec<i32>,
    pub tol: f64,
    pub seed: u64,
    /// Stop enlarging boxes once lower bounds improve by less than this.
    pub early_stop_gap: f64,
    /// Boxes above this dimension are skipped.
    pub max_box_dim: usize,
    pub lanczos: LanczosConfig,
    /// Grid density for circle-symbol evaluation.
    pub circle_grid: usize,
}

impl Default for GnsConfig {
    fn default() -> Self {
        GnsConfig {
            radii: vec![4, 8, 12],
            tol: 1e-9,
            seed: 42,
            early_stop_gap: 1e-8,
            max_box_dim: 40_000,
            lanczos: LanczosConfig::default(),
            circle_grid: 8192,
        }
    }
}

impl GnsConfig {
    /// Default radius schedule for the generator count.
    pub fn for_dimension(n: usize) -> Self {
        let mut cfg = GnsConfig::default();
        if n >= 3 {
            cfg.radii = vec![2, 4, 6];
        }
        cfg
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_radii(mut self, radii: Vec<i32>) -> Self {
        self.radii = radii;
        self
    }

    pub fn validate(&self) -> Result<(), GnsError> {
        if self.radii.is_empty() {
            return Err(GnsError::BadSchedule);
        }
        for w in self.radii.windows(2) {
            if w[0] >= w[1] {
                return Err(GnsError::BadSchedule);
            }
        }
        if self.radii[0] < 1 {
            return Err(GnsError::BadRadius(self.radii[0]));
        }
        Ok(())
    }
}

/// Sparse compressed operator stored as triplets.
struct SparseOp {
    dim: usize,
    triplets: Vec<(u32, u32, C64)>,
}

impl LinOp for SparseOp {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[C64], y: &mut [C64]) {
        y.fill(C64::new(0.0, 0.0));
        for &(r, c, z) in &self.triplets {
            y[r as usize] += z * x[c as usize];
        }
    }
}

/// Triplets of the left-action compression `P a P` on one box.
fn left_compression(a: &TorusElement, bx: &TruncationBox) -> SparseOp {
    let mut triplets = Vec::new();
    let theta = a.theta();
    for (p, c) in a.iter() {
        for col in 0..bx.size() {
            let q = bx.point(col);
            let target: Vec<i32> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
            if let Some(row) = bx.index(&target) {
                let z = c * theta.lambda(p, &q);
                triplets.push((row as u32, col as u32, z));
            }
        }
    }
    SparseOp {
        dim: bx.size(),
        triplets,
    }
}

/// Dense left-action compression, plus a flag telling whether the box is
/// large enough to hold every shifted column (false, and columns near the
/// boundary are truncated).
pub fn represent_dense(a: &TorusElement, bx: &TruncationBox) -> (CMatrix, bool) {
    let op = left_compression(a, bx);
    let mut m = CMatrix::zeros(bx.size());
    for (r, c, z) in op.triplets {
        m.add_at(r as usize, c as usize, z);
    }
    let covers = a.support_radius() <= bx.radius();
    (m, covers)
}

/// Circle-symbol bounds for elements supported on one lattice line: the
/// subalgebra generated by a single unitary is commutative with full-circle
/// spectrum, so the symbol sup equals the norm. Returns `(lower, upper)`.
fn circle_bounds(a: &TorusElement, grid: usize) -> Option<(f64, f64)> {
    let (dir, pts) = a.line_support()?;
    let dir = match dir {
        None => {
            let v = pts.iter().map(|(_, c)| c.norm()).sum::<f64>();
            let v = if pts.is_empty() { 0.0 } else { v };
            return Some((v, v));
        }
        Some(d) => d,
    };
    let theta = a.theta();
    let m_min = pts.iter().map(|(m, _)| *m).min()?;
    let m_max = pts.iter().map(|(m, _)| *m).max()?;

    // Phases phi_m with (u^dir)^m = phi_m * u^{m dir}; the symbol coefficient
    // at m is then c_m * conj(phi_m).
    let mut phi = alloc::collections::BTreeMap::new();
    phi.insert(0i32, Complex64::new(1.0, 0.0));
    let scaled = |m: i32| -> Vec<i32> { dir.iter().map(|d| d * m).collect() };
    for m in 1..=m_max.max(0) {
        let prev = phi[&(m - 1)];
        let lam = theta.lambda(&dir, &scaled(m - 1));
        phi.insert(m, prev * lam);
    }
    if m_min < 0 {
        let neg_dir: Vec<i32> = dir.iter().map(|d| -d).collect();
        let adj = theta.adjoint_phase(&dir);
        for m in (m_min..=-1).rev() {
            let next = phi[&(m + 1)];
            let lam = theta.lambda(&neg_dir, &scaled(m + 1));
            phi.insert(m, next * adj * lam);
        }
    }

    let coeffs: Vec<(i32, Complex64)> = pts
        .iter()
        .map(|(m, c)| (*m, c * phi[m].conj()))
        .collect();
    let eval = |t: f64| -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (m, d) in &coeffs {
            s += d * math::unit_phase(*m as f64 * t);
        }
        s.norm()
    };

    let g = grid.max(16);
    let mut best_t = 0.0;
    let mut best = -1.0f64;
    for i in 0..g {
        let t = i as f64 / g as f64;
        let v = eval(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let lip: f64 = math::TAU
        * coeffs
            .iter()
            .map(|(m, d)| m.abs() as f64 * d.norm())
            .sum::<f64>();
    let upper = best + lip * 0.5 / g as f64;

    // Golden-section refinement around the best grid cell; every evaluation
    // stays a sound lower bound.
    let gr = (math::sqrt(5.0) - 1.0) / 2.0;
    let mut lo = best_t - 1.0 / g as f64;
    let mut hi = best_t + 1.0 / g as f64;
    let mut x1 = hi - gr * (hi - lo);
    let mut x2 = lo + gr * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    for _ in 0..64 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
        }
        best = best.max(f1.max(f2));
    }
    Some((best, upper))
}

/// Per-radius certified lower bounds for `‖a‖` from box compressions of the
/// Hermitian square `a* a` (quadratic form exact on box vectors).
pub fn compression_lowers(a: &TorusElement, cfg: &GnsConfig) -> Result<Vec<(i32, f64, bool)>, GnsError> {
    cfg.validate()?;
    let b = a.adjoint().multiply(a)?;
    let mut out = Vec::new();
    let mut prev = 0.0f64;
    for &r in &cfg.radii {
        let bx = TruncationBox::new(a.n(), r)?;
        if bx.size() > cfg.max_box_dim {
            break;
        }
        let op = left_compression(&b, &bx);
        let mut lcfg = cfg.lanczos;
        lcfg.rel_tol = cfg.tol;
        let est = linalg::max_eig_lower(&op, cfg.seed, &lcfg);
        let lower = math::sqrt(est.lower.max(0.0)).max(prev);
        out.push((r, lower, est.converged));
        if lower - prev < cfg.early_stop_gap && out.len() > 1 {
            break;
        }
        prev = lower;
    }
    Ok(out)
}

/// Sound two-sided enclosure of the operator norm of `a`.
pub fn norm_interval(a: &TorusElement, cfg: &GnsConfig) -> Result<NormInterval, GnsError> {
    cfg.validate()?;
    if a.is_zero() {
        return Ok(NormInterval::new(0.0, 0.0, 0, true));
    }
    let mut upper = a.l1_norm();
    let mut lower = a.l2_norm();
    let mut radius = 0;
    let mut converged = true;

    if let Some((cl, cu)) = circle_bounds(a, cfg.circle_grid) {
        lower = lower.max(cl);
        upper = upper.min(cu);
        if upper - lower <= 1e-12 * upper.max(1.0) {
            return Ok(NormInterval::new(lower, upper, 0, true));
        }
    }

    for (r, l, conv) in compression_lowers(a, cfg)? {
        if l > lower {
            lower = l;
        }
        radius = r;
        converged = conv;
    }
    Ok(NormInterval::new(lower, upper, radius, converged))
}

fn validate_grid(entries: &[TorusElement], n: usize) -> Result<(), GnsError> {
    if n == 0 || entries.len() != n * n {
        return Err(GnsError::BadGrid);
    }
    let theta = entries[0].theta();
    if entries.iter().any(|e| e.theta() != theta) {
        return Err(GnsError::BadGrid);
    }
    Ok(())
}

fn grid_entry<'a>(entries: &'a [TorusElement], n: usize, j: usize, k: usize) -> &'a TorusElement {
    &entries[j * n + k]
}

/// Self-adjointness defect of a grid: `max |m_jk - (m_kj)^*|` coefficientwise.
pub fn grid_hermitian_defect(entries: &[TorusElement], n: usize) -> Result<f64, GnsError> {
    validate_grid(entries, n)?;
    let mut d = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let diff = grid_entry(entries, n, j, k)
                .sub(&grid_entry(entries, n, k, j).adjoint())?
                .max_coeff_norm();
            d = d.max(diff);
        }
    }
    Ok(d)
}

/// Grid product `(ab)_{jl} = sum_k a_jk b_kl`.
pub fn grid_mul(
    a: &[TorusElement],
    b: &[TorusElement],
    n: usize,
) -> Result<Vec<TorusElement>, GnsError> {
    validate_grid(a, n)?;
    validate_grid(b, n)?;
    let theta = a[0].theta();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for l in 0..n {
            let mut acc = TorusElement::zero(theta);
            for k in 0..n {
                acc = acc.add(&grid_entry(a, n, j, k).multiply(grid_entry(b, n, k, l))?)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// Conjugate transpose of a grid.
pub fn grid_adjoint(a: &[TorusElement], n: usize) -> Vec<TorusElement> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            out.push(grid_entry(a, n, k, j).adjoint());
        }
    }
    out
}

/// Triplets of the compressed right-action operator `P T_m P` on the direct
/// sum of `n` box copies: component `j`, basis `u^q`, sends
/// `delta_{j,q} -> sum_k sum_p (m_jk)_p lambda(q,p) delta_{k,q+p}`.
fn right_action_compression(
    entries: &[TorusElement],
    n: usize,
    bx: &TruncationBox,
) -> SparseOp {
    let theta = entries[0].theta();
    let b = bx.size();
    let mut triplets = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let e = grid_entry(entries, n, j, k);
            for (p, c) in e.iter() {
                for col_q in 0..b {
                    let q = bx.point(col_q);
                    let target: Vec<i32> = q.iter().zip(p).map(|(a, b)| a + b).collect();
                    if let Some(row_q) = bx.index(&target) {
                        let z = c * theta.lambda(&q, p);
                        triplets.push(((k * b + row_q) as u32, (j * b + col_q) as u32, z));
                    }
                }
            }
        }
    }
    SparseOp {
        dim: n * b,
        triplets,
    }
}

/// Dense Hermitian compression of the right action of a self-adjoint grid.
fn dense_right_compression(
    entries: &[TorusElement],
    n: usize,
    bx: &TruncationBox,
) -> Result<CMatrix, GnsError> {
    let defect = grid_hermitian_defect(entries, n)?;
    if defect > 1e-10 {
        return Err(GnsError::NonHermitian(defect));
    }
    let op = right_action_compression(entries, n, bx);
    let mut m = CMatrix::zeros(op.dim);
    for (r, c, z) in op.triplets {
        m.add_at(r as usize, c as usize, z);
    }
    let herm_defect = m.hermitian_defect();
    if herm_defect > 1e-9 {
        return Err(GnsError::NonHermitian(herm_defect));
    }
    m.hermitize();
    Ok(m)
}

/// Sound upper bound of `‖m‖_{M_n(A)}`: the spectral norm of the scalar
/// matrix of entrywise l1 norms, which dominates the right action.
pub fn l1_envelope_norm(entries: &[TorusElement], n: usize) -> Result<f64, GnsError> {
    validate_grid(entries, n)?;
    let mut env = CMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            env.set(j, k, C64::new(grid_entry(entries, n, j, k).l1_norm(), 0.0));
        }
    }
    Ok(linalg::spectral_norm_dense(&env))
}

/// Sound enclosure of `‖m‖_{M_n(A)}`, the norm of the right-action operator.
pub fn matrix_norm_interval(
    entries: &[TorusElement],
    n: usize,
    cfg: &GnsConfig,
) -> Result<NormInterval, GnsError> {
    cfg.validate()?;
    let upper = l1_envelope_norm(entries, n)?;

    // Scalar grids act as a constant matrix block, with exactly its norm.
    if entries.iter().all(|e| e.support_radius() == 0) {
        let mut m = CMatrix::zeros(n);
        for j in 0..n {
            for k in 0..n {
                // Right action by the scalar grid maps component j to k via
                // multiplication by the (j,k) coefficient.
                m.set(k, j, grid_entry(entries, n, j, k).trace());
            }
        }
        let v = linalg::spectral_norm_dense(&m);
        return Ok(NormInterval::new(v, v, 0, true));
    }

    let gg = grid_mul(entries, &grid_adjoint(entries, n), n)?;
    let mut lower = 0.0f64;
    let mut radius = 0;
    let mut converged = true;
    let mut prev = 0.0f64;
    for &r in &cfg.radii {
        let bx = TruncationBox::new(entries[0].n(), r)?;
        if n * bx.size() > cfg.max_box_dim {
            break;
        }
        let op = right_action_compression(&gg, n, &bx);
        let mut lcfg = cfg.lanczos;
        lcfg.rel_tol = cfg.tol;
        let est = linalg::max_eig_lower(&op, cfg.seed, &lcfg);
        let l = math::sqrt(est.lower.max(0.0));
        if l > lower {
            lower = l;
        }
        radius = r;
        converged = est.converged;
        if lower - prev < cfg.early_stop_gap && prev > 0.0 {
            break;
        }
        prev = lower;
    }
    Ok(NormInterval::new(lower, upper, radius, converged))
}

/// Smallest eigenvalue of the Hermitian compression of a self-adjoint grid.
pub fn positivity_check(
    entries: &[TorusElement],
    n: usize,
    bx: &TruncationBox,
    tol: f64,
) -> Result<PositivityEvidence, GnsError> {
    let m = dense_right_compression(entries, n, bx)?;
    let min_eig = linalg::hermitian_min_eig(&m);
    let verdict = if min_eig > tol {
        Verdict::Plausible
    } else if min_eig < -tol {
        Verdict::NonPositive
    } else {
        Verdict::Inconclusive
    };
    Ok(PositivityEvidence {
        min_eig,
        radius: bx.radius(),
        dim: m.dim,
        verdict,
    })
}

/// Hermitian square root of the compression of a self-adjoint grid.
/// Rejects grids whose compression has an eigenvalue below `-tol`.
pub fn compression_sqrt(
    entries: &[TorusElement],
    n: usize,
    bx: &TruncationBox,
    tol: f64,
) -> Result<CMatrix, GnsError> {
    let m = dense_right_compression(entries, n, bx)?;
    let min_eig = linalg::hermitian_min_eig(&m);
    if min_eig < -tol {
        return Err(GnsError::NegativeEigenvalue(min_eig));
    }
    Ok(linalg::hermitian_sqrt(&m))
}

/// Heuristic equivalence constant `‖sqrt(a_c) sqrt(b_c)‖` between the norms
/// induced by two positive grids, computed at the compression level
/// (compressions do not commute with products, so this is an estimate, not
/// a certificate).
pub fn compression_sqrt_norm(
    a: &[TorusElement],
    b: &[TorusElement],
    n: usize,
    bx: &TruncationBox,
    tol: f64,
) -> Result<f64, GnsError> {
    let ra = compression_sqrt(a, n, bx, tol)?;
    let rb = compression_sqrt(b, n, bx, tol)?;
    Ok(linalg::spectral_norm_dense(&ra.mul(&rb)))
}

/// Identity grid over a twist matrix.
pub fn identity_grid(theta: &Arc<crate::algebra::ThetaMatrix>, n: usize) -> Vec<TorusElement> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            if j == k {
                out.push(TorusElement::one(theta));
            } else {
                out.push(TorusElement::zero(theta));
            }
        }
    }
    out
}

/// Entrywise scaling of a grid by a nonnegative real.
pub fn grid_scale(entries: &[TorusElement], s: f64) -> Vec<TorusElement> {
    entries.iter().map(|e| e.scale_re(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ThetaMatrix;
    use crate::rng::DetRng;
    use alloc::sync::Arc;

    fn theta(n: usize, vals: &[f64]) -> Arc<ThetaMatrix> {
        let mut entries = vec![0.0; n * n];
        let mut it = vals.iter();
        for j in 0..n {
            for k in (j + 1)..n {
                let v = *it.next().unwrap();
                entries[j * n + k] = v;
                entries[k * n + j] = -v;
            }
        }
        Arc::new(ThetaMatrix::new(n, &entries).unwrap())
    }

    fn random_element(
        rng: &mut DetRng,
        th: &Arc<ThetaMatrix>,
        terms: usize,
        radius: i32,
    ) -> TorusElement {
        let n = th.n();
        let coeffs = (0..terms)
            .map(|_| {
                let k: Vec<i32> = (0..n).map(|_| rng.int_in(-radius, radius)).collect();
                (k, rng.complex())
            })
            .collect::<Vec<_>>();
        TorusElement::from_coeffs(th, coeffs).unwrap()
    }

    #[test]
    fn box_indexing_roundtrip() {
        let bx = TruncationBox::new(2, 3).unwrap();
        assert_eq!(bx.size(), 49);
        for i in 0..bx.size() {
            let p = bx.point(i);
            assert_eq!(bx.index(&p), Some(i));
        }
        assert_eq!(bx.index(&[4, 0]), None);
        assert!(TruncationBox::new(2, 0).is_err());
    }

    #[test]
    fn represent_identity_and_monomial() {
        let th = theta(2, &[0.37]);
        let one = TorusElement::one(&th);
        let bx = TruncationBox::new(2, 2).unwrap();
        let (m, covers) = represent_dense(&one, &bx);
        assert!(covers);
        for i in 0..bx.size() {
            for j in 0..bx.size() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((m.get(i, j) - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        // Columns of represent(u^k) match the twisted product u^k * u^q.
        let k = [1i32, -1];
        let uk = TorusElement::monomial(&th, &k, Complex64::new(1.0, 0.0)).unwrap();
        let (m, _) = represent_dense(&uk, &bx);
        for q_idx in 0..bx.size() {
            let q = bx.point(q_idx);
            let uq = TorusElement::monomial(&th, &q, Complex64::new(1.0, 0.0)).unwrap();
            let prod = uk.multiply(&uq).unwrap();
            for r_idx in 0..bx.size() {
                let r = bx.point(r_idx);
                let want = if bx.contains(&r) { prod.coeff(&r) } else { Complex64::new(0.0, 0.0) };
                assert!((m.get(r_idx, q_idx) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn represent_multiplicative_in_the_interior() {
        let th = theta(2, &[0.21]);
        let mut rng = DetRng::new(31, 0);
        let a = random_element(&mut rng, &th, 3, 1);
        let b = random_element(&mut rng, &th, 3, 1);
        let ab = a.multiply(&b).unwrap();
        let bx = TruncationBox::new(2, 5).unwrap();
        let (ma, _) = represent_dense(&a, &bx);
        let (mb, _) = represent_dense(&b, &bx);
        let (mab, _) = represent_dense(&ab, &bx);
        let prod = ma.mul(&mb);
        let interior = bx.radius() - a.support_radius() - b.support_radius();
        for q_idx in 0..bx.size() {
            let q = bx.point(q_idx);
            if q.iter().any(|x| x.abs() > interior) {
                continue;
            }
            for r_idx in 0..bx.size() {
                assert!(
                    (prod.get(r_idx, q_idx) - mab.get(r_idx, q_idx)).norm() < 1e-12,
                    "mismatch at column {q:?}"
                );
            }
        }
    }

    #[test]
    fn monomial_norm_is_tight() {
        let th = theta(2, &[0.58]);
        let uk = TorusElement::monomial(&th, &[2, -1], Complex64::new(1.0, 0.0)).unwrap();
        let iv = norm_interval(&uk, &GnsConfig::default()).unwrap();
        assert!(iv.contains(1.0));
        assert!(iv.width() < 1e-9, "width {}", iv.width());
    }

    #[test]
    fn commutative_oracle_one_plus_u() {
        let th = theta(1, &[]);
        let one = TorusElement::one(&th);
        let u = TorusElement::generator(&th, 0).unwrap();
        let a = one.add(&u).unwrap();
        let iv = norm_interval(&a, &GnsConfig::default()).unwrap();
        assert!((iv.upper - 2.0).abs() < 1e-12);
        assert!(iv.lower >= 2.0 - 1e-9, "lower {}", iv.lower);
        assert!(iv.lower <= iv.upper);
    }

    #[test]
    fn commutative_oracle_sine() {
        let th = theta(1, &[]);
        let u = TorusElement::generator(&th, 0).unwrap();
        let a = u.sub(&u.adjoint()).unwrap();
        let iv = norm_interval(&a, &GnsConfig::default()).unwrap();
        assert!(iv.contains(2.0));
        assert!(iv.lower >= 2.0 - 1e-9);
    }

    #[test]
    fn compression_lower_bounds_are_monotone() {
        let th = theta(2, &[0.31]);
        let mut rng = DetRng::new(77, 0);
        for _ in 0..5 {
            let a = random_element(&mut rng, &th, 4, 2);
            let cfg = GnsConfig {
                radii: vec![2, 4, 6],
                ..GnsConfig::default()
            };
            let lowers = compression_lowers(&a, &cfg).unwrap();
            for w in lowers.windows(2) {
                assert!(w[0].1 <= w[1].1 + 1e-12);
            }
            let iv = norm_interval(&a, &cfg).unwrap();
            assert!(iv.lower <= iv.upper);
            assert!(iv.lower >= a.l2_norm() - 1e-12);
        }
    }

    #[test]
    fn cstar_identity_overlap() {
        let th = theta(2, &[0.47]);
        let mut rng = DetRng::new(13, 0);
        let cfg = GnsConfig {
            radii: vec![3, 5],
            ..GnsConfig::default()
        };
        for _ in 0..5 {
            let a = random_element(&mut rng, &th, 3, 1);
            let asq = a.adjoint().multiply(&a).unwrap();
            let iv_a = norm_interval(&a, &cfg).unwrap();
            let iv_sq = norm_interval(&asq, &cfg).unwrap();
            let sq = NormInterval::new(iv_a.lower * iv_a.lower, iv_a.upper * iv_a.upper, 0, true);
            let slack = 1e-9 * (1.0 + sq.upper.max(iv_sq.upper));
            assert!(
                sq.lower <= iv_sq.upper + slack && iv_sq.lower <= sq.upper + slack,
                "C* identity violated: [{},{}] vs [{},{}]",
                sq.lower,
                sq.upper,
                iv_sq.lower,
                iv_sq.upper
            );
        }
    }

    #[test]
    fn schedule_validation() {
        let th = theta(1, &[]);
        let a = TorusElement::one(&th);
        let bad = GnsConfig {
            radii: vec![4, 4],
            ..GnsConfig::default()
        };
        assert!(matches!(
            compression_lowers(&a, &bad),
            Err(GnsError::BadSchedule)
        ));
        let empty = GnsConfig {
            radii: vec![],
            ..GnsConfig::default()
        };
        assert!(matches!(norm_interval(&a, &empty), Err(GnsError::BadSchedule)));
    }

    #[test]
    fn matrix_norm_identity_and_isometry() {
        let th = theta(2, &[0.27]);
        let id = identity_grid(&th, 2);
        let cfg = GnsConfig {
            radii: vec![2, 4],
            ..GnsConfig::default()
        };
        let iv = matrix_norm_interval(&id, 2, &cfg).unwrap();
        assert!(iv.contains(1.0));
        assert!(iv.width() < 1e-9);

        let uk = TorusElement::monomial(&th, &[1, 1], Complex64::new(1.0, 0.0)).unwrap();
        let zero = TorusElement::zero(&th);
        let one = TorusElement::one(&th);
        let grid = vec![uk, zero.clone(), zero, one];
        let iv = matrix_norm_interval(&grid, 2, &cfg).unwrap();
        assert!(iv.contains(1.0), "[{}, {}]", iv.lower, iv.upper);
    }

    #[test]
    fn matrix_norm_scalar_grid_matches_dense_oracle() {
        let th = theta(2, &[0.64]);
        let mut rng = DetRng::new(5, 0);
        let vals: Vec<Complex64> = (0..9).map(|_| rng.complex()).collect();
        let grid: Vec<TorusElement> = vals
            .iter()
            .map(|z| {
                TorusElement::monomial(&th, &[0, 0], *z).unwrap()
            })
            .collect();
        let cfg = GnsConfig::default();
        let iv = matrix_norm_interval(&grid, 3, &cfg).unwrap();
        // Independent oracle: plain power iteration on M* M.
        let mm = {
            let mut m = CMatrix::zeros(3);
            for j in 0..3 {
                for k in 0..3 {
                    m.set(j, k, vals[j * 3 + k]);
                }
            }
            m.adjoint().mul(&m)
        };
        let mut v = vec![C64::new(1.0, 0.3), C64::new(-0.2, 0.7), C64::new(0.5, -0.1)];
        let mut w = vec![C64::new(0.0, 0.0); 3];
        let mut lam = 0.0;
        for _ in 0..4000 {
            mm.matvec(&v, &mut w);
            let nw = linalg::vec_norm(&w);
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi = wi / nw;
            }
            lam = nw;
        }
        let want = math::sqrt(lam);
        assert!((iv.lower - want).abs() < 1e-9, "{} vs {}", iv.lower, want);
        assert!(iv.upper + 1e-9 >= want);
    }

    #[test]
    fn positivity_and_sqrt() {
        let th = theta(2, &[0.4]);
        let bx = TruncationBox::new(2, 2).unwrap();
        let id = identity_grid(&th, 2);
        let ev = positivity_check(&id, 2, &bx, 1e-9).unwrap();
        assert!((ev.min_eig - 1.0).abs() < 1e-10);
        assert_eq!(ev.verdict, Verdict::Plausible);

        // eps*I + d* d is structurally at least eps.
        let mut rng = DetRng::new(21, 0);
        let d: Vec<TorusElement> = (0..2).map(|_| random_element(&mut rng, &th, 2, 1)).collect();
        let eps = 0.5;
        let mut entries = Vec::new();
        for j in 0..2 {
            for k in 0..2 {
                let mut e = d[j].adjoint().multiply(&d[k]).unwrap();
                if j == k {
                    e = e.add(&TorusElement::one(&th).scale_re(eps)).unwrap();
                }
                entries.push(e);
            }
        }
        let ev = positivity_check(&entries, 2, &bx, 1e-9).unwrap();
        assert!(ev.min_eig >= eps - 1e-9, "min_eig {}", ev.min_eig);

        let neg = vec![TorusElement::one(&th).scale_re(-1.0)];
        let bx1 = TruncationBox::new(2, 2).unwrap();
        let ev = positivity_check(&neg, 1, &bx1, 1e-9).unwrap();
        assert!((ev.min_eig + 1.0).abs() < 1e-10);
        assert_eq!(ev.verdict, Verdict::NonPositive);
        assert!(compression_sqrt(&neg, 1, &bx1, 1e-9).is_err());
    }

    #[test]
    fn sqrt_of_scalar_grids() {
        let th = theta(1, &[]);
        let four = vec![TorusElement::one(&th).scale_re(4.0)];
        let bx = TruncationBox::new(1, 3).unwrap();
        let r = compression_sqrt(&four, 1, &bx, 1e-9).unwrap();
        for i in 0..r.dim {
            for j in 0..r.dim {
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((r.get(i, j) - C64::new(want, 0.0)).norm() < 1e-10);
            }
        }
        // Scaling: ||sqrt(2g) sqrt(g^{-1})|| = sqrt(2) for scalar g.
        let g = vec![TorusElement::one(&th).scale_re(3.0)];
        let h = grid_scale(&g, 2.0);
        let ginv = vec![TorusElement::one(&th).scale_re(1.0 / 3.0)];
        let v = compression_sqrt_norm(&h, &ginv, 1, &bx, 1e-9).unwrap();
        assert!((v - math::sqrt(2.0)).abs() < 1e-10);
    }

    #[test]
    fn non_hermitian_grid_rejected() {
        let th = theta(2, &[0.3]);
        let u = TorusElement::generator(&th, 0).unwrap();
        let zero = TorusElement::zero(&th);
        let one = TorusElement::one(&th);
        let grid = vec![one.clone(), u, zero, one];
        let bx = TruncationBox::new(2, 2).unwrap();
        assert!(matches!(
            positivity_check(&grid, 2, &bx, 1e-9),
            Err(GnsError::NonHermitian(_))
        ));
    }
}
