//! Dense complex linear algebra sized for truncated representations:
//! a cyclic Jacobi eigensolver for Hermitian matrices and a Lanczos
//! estimator whose reported maximum is always an explicit Rayleigh
//! quotient, hence a sound lower bound for the largest eigenvalue.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::rng::DetRng;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense square complex matrix, row major.
#[derive(Debug, Clone)]
pub struct CMatrix {
    pub dim: usize,
    pub data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        let n = self.dim;
        for i in 0..n {
            let mut acc = ZERO;
            let row = &self.data[i * n..(i + 1) * n];
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y[i] = acc;
        }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        d
    }

    /// Averages the matrix with its adjoint.
    pub fn hermitize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                self.set(i, j, v);
                self.set(j, i, v.conj());
            }
        }
    }
}

pub fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    math::sqrt(x.iter().map(|a| a.norm_sqr()).sum())
}

pub fn scale_in_place(x: &mut [C64], s: f64) {
    for v in x {
        *v *= s;
    }
}

pub fn axpy(y: &mut [C64], a: C64, x: &[C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in ascending order with matching eigenvector columns.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let n = m.dim;
    let mut a = m.clone();
    a.hermitize();
    let mut v = CMatrix::identity(n);
    let scale: f64 = a
        .data
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= tol * 1e-2 {
                    continue;
                }
                let phase = apq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                // Unitary: column p <- c*col_p - s*conj(phase)*col_q,
                //          column q <- s*phase*col_p + c*col_q  (up to the
                // diagonal phase absorbed below). Derived from diagonalizing
                // the 2x2 block diag(1, conj(phase)) * rotation.
                let e = phase.conj();
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c - aiq * (e * s));
                    a.set(i, q, aip * s + aiq * (e * c));
                }
                let eb = phase;
                for i in 0..n {
                    let api = a.get(p, i);
                    let aqi = a.get(q, i);
                    a.set(p, i, api * c - aqi * (eb * s));
                    a.set(q, i, api * s + aqi * (eb * c));
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c - viq * (e * s));
                    v.set(i, q, vip * s + viq * (e * c));
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    HermitianEigen { values, vectors }
}

pub fn hermitian_min_eig(m: &CMatrix) -> f64 {
    hermitian_eigen(m).values[0]
}

/// Hermitian square root with negative eigenvalues clamped to zero.
pub fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    let eig = hermitian_eigen(m);
    let n = m.dim;
    let mut out = CMatrix::zeros(n);
    for k in 0..n {
        let s = math::sqrt(eig.values[k].max(0.0));
        if s == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = eig.vectors.get(i, k);
            if vik == ZERO {
                continue;
            }
            for j in 0..n {
                out.add_at(i, j, vik * eig.vectors.get(j, k).conj() * s);
            }
        }
    }
    out
}

/// Largest singular value of a dense matrix via the Hermitian square.
pub fn spectral_norm_dense(m: &CMatrix) -> f64 {
    let h = m.adjoint().mul(m);
    let top = hermitian_eigen(&h).values.last().copied().unwrap_or(0.0);
    math::sqrt(top.max(0.0))
}

/// A Hermitian positive semidefinite operator given by its action.
pub trait LinOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[C64], y: &mut [C64]);
}

impl LinOp for CMatrix {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.matvec(x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosConfig {
    pub restarts: usize,
    pub max_steps: usize,
    pub rel_tol: f64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        LanczosConfig {
            restarts: 3,
            max_steps: 200,
            rel_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectralEstimate {
    /// Certified: an explicit Rayleigh quotient of the operator.
    pub lower: f64,
    pub converged: bool,
    pub steps: usize,
}

fn rayleigh(op: &dyn LinOp, x: &[C64], work: &mut [C64]) -> f64 {
    op.apply(x, work);
    let num = dot(x, work).re;
    let den: f64 = x.iter().map(|a| a.norm_sqr()).sum();
    if den <= 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Largest-eigenvalue lower bound for a Hermitian PSD operator: Lanczos with
/// full reorthogonalization and random restarts; the returned value is the
/// best explicit Rayleigh quotient encountered, so it never exceeds the true
/// maximum regardless of how well the iteration converged.
pub fn max_eig_lower(op: &dyn LinOp, seed: u64, cfg: &LanczosConfig) -> SpectralEstimate {
    let n = op.dim();
    if n == 0 {
        return SpectralEstimate {
            lower: 0.0,
            converged: true,
            steps: 0,
        };
    }
    let mut best = 0.0f64;
    let mut converged = false;
    let mut total_steps = 0usize;

    for restart in 0..cfg.restarts {
        let mut rng = DetRng::new(seed, 0x9e37 + restart as u64);
        let mut q = vec![ZERO; n];
        for v in q.iter_mut() {
            *v = rng.complex();
        }
        let nq = vec_norm(&q);
        if nq == 0.0 {
            continue;
        }
        scale_in_place(&mut q, 1.0 / nq);

        let mut basis: Vec<Vec<C64>> = Vec::new();
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut w = vec![ZERO; n];
        let mut prev_ritz = -1.0f64;
        let steps = cfg.max_steps.min(n);

        for step in 0..steps {
            total_steps += 1;
            basis.push(q.clone());
            op.apply(&q, &mut w);
            let alpha = dot(&q, &w).re;
            alphas.push(alpha);
            // w <- w - alpha*q - beta*q_prev, then full reorthogonalization.
            for (i, b) in basis.iter().enumerate() {
                let coeff = if i + 1 == basis.len() {
                    C64::new(alpha, 0.0)
                } else if i + 2 == basis.len() {
                    C64::new(*betas.last().unwrap_or(&0.0), 0.0)
                } else {
                    ZERO
                };
                if coeff != ZERO {
                    axpy(&mut w, -coeff, b);
                }
            }
            for b in &basis {
                let c = dot(b, &w);
                if c.norm() > 0.0 {
                    axpy(&mut w, -c, b);
                }
            }
            let beta = vec_norm(&w);

            let check = step + 1 == steps || beta <= 1e-13 || (step + 1) % 8 == 0;
            if check {
                let m = alphas.len();
                let mut t = CMatrix::zeros(m);
                for i in 0..m {
                    t.set(i, i, C64::new(alphas[i], 0.0));
                    if i + 1 < m {
                        t.set(i, i + 1, C64::new(betas[i], 0.0));
                        t.set(i + 1, i, C64::new(betas[i], 0.0));
                    }
                }
                let eig = hermitian_eigen(&t);
                let top = eig.values[m - 1];
                let mut y = vec![ZERO; n];
                for (i, b) in basis.iter().enumerate() {
                    axpy(&mut y, eig.vectors.get(i, m - 1), b);
                }
                let rq = rayleigh(op, &y, &mut w.clone());
                if rq > best {
                    best = rq;
                }
                let scale = top.abs().max(best.abs()).max(1e-30);
                if (top - prev_ritz).abs() <= cfg.rel_tol * scale {
                    converged = true;
                    break;
                }
                prev_ritz = top;
            }
            if beta <= 1e-13 {
                converged = true;
                break;
            }
            betas.push(beta);
            scale_in_place(&mut w, 1.0 / beta);
            core::mem::swap(&mut q, &mut w);
            w.fill(ZERO);
        }
    }

    SpectralEstimate {
        lower: best.max(0.0),
        converged,
        steps: total_steps,
    }
}
