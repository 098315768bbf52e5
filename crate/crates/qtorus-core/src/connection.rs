//! Metric inversion inside the algebra, Christoffel data of the compatible
//! torsion-free connection, covariant derivatives along derivations, and a
//! residual-quantified axiom checker.
//!
//! Truncated inverses make every connection identity hold only up to the
//! recorded residual `eta`, so all checks report defects against `eta`
//! rather than claiming exact zeros.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{AlgebraError, ThetaMatrix, TorusElement};
use crate::geometry::{self, GeometryError, MetricMatrix, ModuleVector};
use crate::gns::{self, GnsConfig, GnsError, NormInterval};
use crate::norms::NormChoice;
use crate::rng::DetRng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConnectionError {
    #[error("metric is too close to singular for inversion (evidence eigenvalue {0})")]
    Degenerate(f64),
    #[error("inversion did not reach the tolerance; last residual {0}")]
    NotConverged(f64),
    #[error("inverse was computed for a different metric")]
    StaleInverse,
    #[error("derivation element must be skew-adjoint and traceless (defect {0})")]
    BadDerivation(f64),
    #[error("index out of range")]
    BadIndex,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gns(#[from] GnsError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Truncated inverse of a metric, with its certified residual.
#[derive(Debug, Clone)]
pub struct InverseApprox {
    entries: Vec<TorusElement>,
    n: usize,
    /// Sound upper bound of the residual norm of `g * ghat_inv - I`.
    eta: f64,
    support_radius: i32,
    metric_entries: Vec<TorusElement>,
}

impl InverseApprox {
    pub fn entries(&self) -> &[TorusElement] {
        &self.entries
    }

    pub fn entry(&self, j: usize, k: usize) -> &TorusElement {
        &self.entries[j * self.n + k]
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn support_radius(&self) -> i32 {
        self.support_radius
    }

    pub fn matches(&self, g: &MetricMatrix) -> bool {
        self.n == g.n() && self.metric_entries == g.entries()
    }
}

/// Default truncation radius for inverses: four times the metric support.
pub fn default_inverse_radius(g: &MetricMatrix) -> i32 {
    4 * g.support_radius().max(1)
}

fn grid_sub_identity(
    grid: &[TorusElement],
    n: usize,
    theta: &Arc<ThetaMatrix>,
) -> Result<Vec<TorusElement>, AlgebraError> {
    let one = TorusElement::one(theta);
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let e = &grid[j * n + k];
            out.push(if j == k { e.sub(&one)? } else { e.clone() });
        }
    }
    Ok(out)
}

fn grid_truncate(grid: &[TorusElement], radius: i32) -> Vec<TorusElement> {
    grid.iter().map(|e| e.truncate_support(radius)).collect()
}

/// Newton iteration `X <- X (2I - g X)` in truncated matrix polynomials,
/// starting from `(1/u) I` with `u` the l1-envelope bound of `‖g‖`.
pub fn invert_metric(
    g: &MetricMatrix,
    support_radius: i32,
    tol: f64,
) -> Result<InverseApprox, ConnectionError> {
    let n = g.n();
    let theta = g.theta().clone();
    if !(tol > 0.0) {
        return Err(ConnectionError::NotConverged(f64::INFINITY));
    }
    if g.evidence().min_eig < 10.0 * tol.min(1e-3) {
        return Err(ConnectionError::Degenerate(g.evidence().min_eig));
    }

    let u = gns::l1_envelope_norm(g.entries(), n)?;
    let mut x = gns::grid_scale(&gns::identity_grid(&theta, n), 1.0 / u);
    let residual = |x: &[TorusElement]| -> Result<f64, ConnectionError> {
        let gx = gns::grid_mul(g.entries(), x, n)?;
        let r = grid_sub_identity(&gx, n, &theta)?;
        Ok(gns::l1_envelope_norm(&r, n)?)
    };
    let mut eta = residual(&x)?;
    for _ in 0..100 {
        if eta <= tol {
            return Ok(InverseApprox {
                entries: x.clone(),
                n,
                eta,
                support_radius,
                metric_entries: g.entries().to_vec(),
            });
        }
        let gx = grid_truncate(&gns::grid_mul(g.entries(), &x, n)?, support_radius);
        let two_minus = {
            let two = gns::grid_scale(&gns::identity_grid(&theta, n), 2.0);
            let mut out = Vec::with_capacity(n * n);
            for (t, e) in two.iter().zip(&gx) {
                out.push(t.sub(e)?);
            }
            out
        };
        let next = grid_truncate(&gns::grid_mul(&x, &two_minus, n)?, support_radius);
        let next_eta = residual(&next)?;
        if next_eta >= eta {
            return Err(ConnectionError::NotConverged(eta.min(next_eta)));
        }
        x = next;
        eta = next_eta;
    }
    if eta <= tol {
        return Ok(InverseApprox {
            entries: x.clone(),
            n,
            eta,
            support_radius,
            metric_entries: g.entries().to_vec(),
        });
    }
    Err(ConnectionError::NotConverged(eta))
}

/// The symbol `g♮_{jkl} = (1/2) [∂_j g_kl + ∂_k g_jl - ∂_l g_jk]`.
pub fn g_natural(
    g: &MetricMatrix,
    j: usize,
    k: usize,
    l: usize,
) -> Result<TorusElement, ConnectionError> {
    let n = g.n();
    if j >= n || k >= n || l >= n {
        return Err(ConnectionError::BadIndex);
    }
    let a = g.entry(k, l).derive(j)?;
    let b = g.entry(j, l).derive(k)?;
    let c = g.entry(j, k).derive(l)?;
    Ok(a.add(&b)?.sub(&c)?.scale_re(0.5))
}

/// Christoffel data `Γ^m_{jk}` of the metric-compatible torsion-free
/// connection, built from a truncated inverse.
#[derive(Debug, Clone)]
pub struct ChristoffelTensor {
    n: usize,
    /// Flat layout `[(j n + k) n + m]` holding `Γ^m_{jk}`.
    gamma: Vec<TorusElement>,
    eta: f64,
    metric: MetricMatrix,
}

impl ChristoffelTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, m: usize, j: usize, k: usize) -> &TorusElement {
        &self.gamma[(j * self.n + k) * self.n + m]
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn metric(&self) -> &MetricMatrix {
        &self.metric
    }

    /// `∇_{∂_m}(e_j)` as a module vector.
    pub fn basis_derivative(&self, m: usize, j: usize) -> Result<ModuleVector, ConnectionError> {
        if m >= self.n || j >= self.n {
            return Err(ConnectionError::BadIndex);
        }
        let comps = (0..self.n).map(|l| self.gamma(l, m, j).clone()).collect();
        Ok(ModuleVector::new(comps)?)
    }

    /// Largest coefficientwise asymmetry `Γ^m_{jk} - Γ^m_{kj}`.
    pub fn torsion_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for j in 0..self.n {
            for k in 0..self.n {
                for m in 0..self.n {
                    let diff = self
                        .gamma(m, j, k)
                        .max_coeff_diff(self.gamma(m, k, j))
                        .unwrap_or(f64::INFINITY);
                    d = d.max(diff);
                }
            }
        }
        d
    }
}

/// `Γ^m_{jk} = Σ_l g♮_{jkl} (ghat_inv)_{lm}`, mirrored over `j <-> k` so the
/// stored tensor is symmetric to the bit.
pub fn christoffel(
    g: &MetricMatrix,
    ginv: &InverseApprox,
) -> Result<ChristoffelTensor, ConnectionError> {
    if !ginv.matches(g) {
        return Err(ConnectionError::StaleInverse);
    }
    let n = g.n();
    let theta = g.theta().clone();
    let mut gamma = vec![TorusElement::zero(&theta); n * n * n];
    for j in 0..n {
        for k in j..n {
            for m in 0..n {
                let mut acc = TorusElement::zero(&theta);
                for l in 0..n {
                    acc = acc.add(&g_natural(g, j, k, l)?.multiply(ginv.entry(l, m))?)?;
                }
                gamma[(j * n + k) * n + m] = acc.clone();
                gamma[(k * n + j) * n + m] = acc;
            }
        }
    }
    Ok(ChristoffelTensor {
        n,
        gamma,
        eta: ginv.eta(),
        metric: g.clone(),
    })
}

/// A derivation `δ = Σ r_j ∂_j + ad(b)` with `b` skew-adjoint and traceless.
#[derive(Debug, Clone)]
pub struct Derivation {
    r: Vec<f64>,
    b: TorusElement,
}

impl Derivation {
    pub fn new(r: Vec<f64>, b: TorusElement) -> Result<Self, ConnectionError> {
        if r.len() != b.n() {
            return Err(ConnectionError::DimensionMismatch);
        }
        let skew_defect = b.add(&b.adjoint())?.max_coeff_norm();
        let trace_defect = b.trace().norm();
        let defect = skew_defect.max(trace_defect);
        if defect > 1e-12 {
            return Err(ConnectionError::BadDerivation(defect));
        }
        // Canonicalize: exact skew part, trace coefficient removed exactly.
        let b = b.sub(&b.adjoint())?.scale_re(0.5).traceless_part();
        Ok(Derivation { r, b })
    }

    /// The coordinate derivation `∂_axis`.
    pub fn partial(theta: &Arc<ThetaMatrix>, axis: usize) -> Result<Self, ConnectionError> {
        if axis >= theta.n() {
            return Err(ConnectionError::BadIndex);
        }
        let mut r = vec![0.0; theta.n()];
        r[axis] = 1.0;
        Ok(Derivation {
            r,
            b: TorusElement::zero(theta),
        })
    }

    /// The inner derivation `ad(b)`.
    pub fn inner(b: TorusElement) -> Result<Self, ConnectionError> {
        let n = b.n();
        Derivation::new(vec![0.0; n], b)
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn b(&self) -> &TorusElement {
        &self.b
    }

    /// `δ(a) = Σ r_j ∂_j a + (b a - a b)`.
    pub fn apply(&self, a: &TorusElement) -> Result<TorusElement, ConnectionError> {
        let grad = a.derive_along(&self.r)?;
        let ad = self.b.multiply(a)?.sub(&a.multiply(&self.b)?)?;
        Ok(grad.add(&ad)?)
    }

    /// Enclosure of the derivation norm `N(r) + ‖b‖`.
    pub fn norm(&self, n_choice: NormChoice, cfg: &GnsConfig) -> Result<NormInterval, ConnectionError> {
        let nr = n_choice.eval(&self.r);
        if self.b.is_zero() {
            return Ok(NormInterval::new(nr, nr, 0, true));
        }
        Ok(gns::norm_interval(&self.b, cfg)?.offset(nr))
    }

    /// Rescaled derivation `s * δ`.
    pub fn scale(&self, s: f64) -> Self {
        Derivation {
            r: self.r.iter().map(|x| x * s).collect(),
            b: self.b.scale_re(s),
        }
    }
}

/// `∇_δ X`: coefficients are differentiated by `δ`, the gradient part acts on
/// the basis through `Γ`, and the inner part acts through the left action.
pub fn covariant_derivative(
    gamma: &ChristoffelTensor,
    delta: &Derivation,
    x: &ModuleVector,
) -> Result<ModuleVector, ConnectionError> {
    let n = gamma.n();
    if x.rank() != n || delta.r().len() != n {
        return Err(ConnectionError::DimensionMismatch);
    }
    let theta = x.theta().clone();
    let mut comps = Vec::with_capacity(n);
    for l in 0..n {
        let mut c = delta.apply(x.component(l))?;
        for m in 0..n {
            let rm = delta.r()[m];
            if rm == 0.0 {
                continue;
            }
            for j in 0..n {
                let term = x.component(j).multiply(gamma.gamma(l, m, j))?.scale_re(rm);
                c = c.add(&term)?;
            }
        }
        if !delta.b().is_zero() {
            c = c.add(&x.component(l).multiply(delta.b())?)?;
        }
        comps.push(c);
    }
    let _ = theta;
    Ok(ModuleVector::new(comps)?)
}

/// Compatibility sample of the axiom report.
#[derive(Debug, Clone)]
pub struct CompatSample {
    pub index: usize,
    pub descr: String,
    pub residual_upper: f64,
}

/// Residual-quantified connection axioms.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Exact coefficientwise torsion asymmetry.
    pub torsion_defect: f64,
    /// Upper bound on the anti-self-adjoint part of `<∇_{∂_j} e_k | e_l>_g`.
    pub self_adjoint_defect: f64,
    pub compatibility: Vec<CompatSample>,
    pub eta: f64,
}

fn random_skew_traceless(rng: &mut DetRng, theta: &Arc<ThetaMatrix>) -> TorusElement {
    let n = theta.n();
    let k: Vec<i32> = (0..n).map(|_| rng.int_in(-1, 1)).collect();
    let z = rng.complex();
    let m = TorusElement::monomial(theta, &k, z).expect("key length");
    m.sub(&m.adjoint())
        .expect("same theta")
        .scale_re(0.5)
        .traceless_part()
}

fn random_unit_vector(rng: &mut DetRng, theta: &Arc<ThetaMatrix>) -> ModuleVector {
    let n = theta.n();
    let comps: Vec<TorusElement> = (0..n)
        .map(|_| {
            let k: Vec<i32> = (0..n).map(|_| rng.int_in(-1, 1)).collect();
            let z = rng.complex();
            let z = if z.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                z / z.norm()
            };
            TorusElement::monomial(theta, &k, z).expect("key length")
        })
        .collect();
    ModuleVector::new(comps).expect("rank")
}

/// Checks the connection axioms on deterministic samples and reports all
/// defects together with the inverse residual.
pub fn check_axioms(
    g: &MetricMatrix,
    gamma: &ChristoffelTensor,
    samples: usize,
    cfg: &GnsConfig,
) -> Result<AxiomReport, ConnectionError> {
    let n = g.n();
    let theta = g.theta().clone();
    let torsion_defect = gamma.torsion_defect();

    let mut self_adjoint_defect = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let row = gamma.basis_derivative(j, k)?;
            for l in 0..n {
                let el = ModuleVector::basis(&theta, l)?;
                let w = geometry::inner_g(g, &row, &el)?;
                let anti = w.sub(&w.adjoint())?.scale_re(0.5);
                self_adjoint_defect = self_adjoint_defect.max(anti.l1_norm());
            }
        }
    }

    let mut rng = DetRng::new(cfg.seed, 0x6178);
    let mut compatibility = Vec::with_capacity(samples);
    for index in 0..samples {
        let r: Vec<f64> = (0..n).map(|_| rng.signed_unit()).collect();
        let b = random_skew_traceless(&mut rng, &theta);
        let delta = Derivation::new(r, b)?;
        let dn = delta.norm(NormChoice::L2, cfg)?;
        let delta = if dn.upper > 0.0 {
            delta.scale(1.0 / dn.upper)
        } else {
            delta
        };
        let x = random_unit_vector(&mut rng, &theta);
        let y = random_unit_vector(&mut rng, &theta);

        let m = geometry::inner_g(g, &x, &y)?;
        let lhs = delta.apply(&m)?;
        let dx = covariant_derivative(gamma, &delta, &x)?;
        let dy = covariant_derivative(gamma, &delta, &y)?;
        let rhs = geometry::inner_g(g, &dx, &y)?.add(&geometry::inner_g(g, &x, &dy)?)?;
        let residual = lhs.sub(&rhs)?;
        let residual_upper = gns::norm_interval(&residual, cfg)?.upper;
        compatibility.push(CompatSample {
            index,
            descr: format!("unit derivation sample {index}"),
            residual_upper,
        });
    }

    Ok(AxiomReport {
        torsion_defect,
        self_adjoint_defect: self_adjoint_defect.abs(),
        compatibility,
        eta: gamma.eta(),
    })
}
