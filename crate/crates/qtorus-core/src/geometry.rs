//! The free module `A^n` with its standard and metric-weighted inner
//! products, the right-action operator of a metric, and structured
//! constructors for positive metrics.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{AlgebraError, ThetaMatrix, TorusElement};
use crate::connection::InverseApprox;
use crate::gns::{self, GnsConfig, GnsError, NormInterval, PositivityEvidence, TruncationBox, Verdict};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("module vectors must have one component per generator")]
    BadRank,
    #[error("dimension mismatch between module data")]
    DimensionMismatch,
    #[error("components must share one twist matrix")]
    MixedTwist,
    #[error("metric entry ({0},{1}) is not self-adjoint (defect {2})")]
    EntryNotSelfAdjoint(usize, usize, f64),
    #[error("rotation matrix is not orthogonal (defect {0})")]
    NotOrthogonal(f64),
    #[error("metric positivity rejected: compression eigenvalue {0}")]
    NotPositive(f64),
    #[error("scale factor must be positive, got {0}")]
    BadScale(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gns(#[from] GnsError),
}

/// Element of the free module `A^n`, written `X = sum_j a_j . e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleVector {
    components: Vec<TorusElement>,
}

impl ModuleVector {
    pub fn new(components: Vec<TorusElement>) -> Result<Self, GeometryError> {
        if components.is_empty() {
            return Err(GeometryError::BadRank);
        }
        let theta = components[0].theta().clone();
        if components.len() != theta.n() {
            return Err(GeometryError::BadRank);
        }
        if components.iter().any(|c| c.theta() != &theta) {
            return Err(GeometryError::MixedTwist);
        }
        Ok(ModuleVector { components })
    }

    pub fn zero(theta: &Arc<ThetaMatrix>) -> Self {
        ModuleVector {
            components: (0..theta.n()).map(|_| TorusElement::zero(theta)).collect(),
        }
    }

    /// Standard basis vector `e_j`.
    pub fn basis(theta: &Arc<ThetaMatrix>, j: usize) -> Result<Self, GeometryError> {
        if j >= theta.n() {
            return Err(GeometryError::DimensionMismatch);
        }
        let mut v = Self::zero(theta);
        v.components[j] = TorusElement::one(theta);
        Ok(v)
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn theta(&self) -> &Arc<ThetaMatrix> {
        self.components[0].theta()
    }

    pub fn component(&self, j: usize) -> &TorusElement {
        &self.components[j]
    }

    pub fn components(&self) -> &[TorusElement] {
        &self.components
    }

    pub fn add(&self, other: &Self) -> Result<Self, GeometryError> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GeometryError> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&TorusElement, &TorusElement) -> Result<TorusElement, AlgebraError>,
    ) -> Result<Self, GeometryError> {
        if self.rank() != other.rank() {
            return Err(GeometryError::DimensionMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleVector { components })
    }

    /// Left action `a . X`, componentwise left multiplication.
    pub fn left_mul(&self, a: &TorusElement) -> Result<Self, GeometryError> {
        let components = self
            .components
            .iter()
            .map(|c| a.multiply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleVector { components })
    }

    pub fn scale_re(&self, s: f64) -> Self {
        ModuleVector {
            components: self.components.iter().map(|c| c.scale_re(s)).collect(),
        }
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.max_coeff_norm())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise coefficient deviation from `other`.
    pub fn max_coeff_diff(&self, other: &Self) -> Result<f64, GeometryError> {
        if self.rank() != other.rank() {
            return Err(GeometryError::DimensionMismatch);
        }
        let mut worst = 0.0f64;
        for (a, b) in self.components.iter().zip(&other.components) {
            worst = worst.max(a.max_coeff_diff(b)?);
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rank() == other.rank()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.sub(b).map(|d| d.max_coeff_norm() <= tol).unwrap_or(false))
    }
}

/// Positive matrix of algebra elements acting on the module from the right.
#[derive(Debug, Clone)]
pub struct MetricMatrix {
    n: usize,
    entries: Vec<TorusElement>,
    evidence: PositivityEvidence,
    inverse: Option<Arc<InverseApprox>>,
}

/// Structured constructors for metrics.
#[derive(Debug, Clone)]
pub enum MetricSpec {
    /// `(eps*1 + h^2) * I` for a self-adjoint h.
    Conformal { h: TorusElement, epsilon: f64 },
    /// `O^T diag(eps*1 + d_j^2) O` for self-adjoint d_j and constant real orthogonal O.
    RotatedDiagonal {
        d: Vec<TorusElement>,
        epsilon: f64,
        o: Vec<f64>,
    },
    /// Arbitrary entries, accepted only after validation.
    Explicit { entries: Vec<TorusElement> },
}

const POSITIVITY_TOL: f64 = 1e-9;

fn default_evidence_radius(n: usize) -> i32 {
    if n <= 3 {
        2
    } else {
        1
    }
}

impl MetricMatrix {
    /// Build a metric from a structured description. The positivity box
    /// radius defaults per dimension when not given.
    pub fn make(spec: &MetricSpec, evidence_radius: Option<i32>) -> Result<Self, GeometryError> {
        let (n, theta, raw) = match spec {
            MetricSpec::Conformal { h, epsilon } => {
                let theta = h.theta().clone();
                let n = theta.n();
                let defect = h.sub(&h.adjoint())?.max_coeff_norm();
                if defect > 1e-10 {
                    return Err(GeometryError::EntryNotSelfAdjoint(0, 0, defect));
                }
                let scalar = h
                    .multiply(h)?
                    .add(&TorusElement::one(&theta).scale_re(*epsilon))?
                    .real_part();
                let mut raw = Vec::with_capacity(n * n);
                for j in 0..n {
                    for k in 0..n {
                        raw.push(if j == k {
                            scalar.clone()
                        } else {
                            TorusElement::zero(&theta)
                        });
                    }
                }
                (n, theta, raw)
            }
            MetricSpec::RotatedDiagonal { d, epsilon, o } => {
                if d.is_empty() {
                    return Err(GeometryError::BadRank);
                }
                let theta = d[0].theta().clone();
                let n = theta.n();
                if d.len() != n || o.len() != n * n {
                    return Err(GeometryError::DimensionMismatch);
                }
                if d.iter().any(|x| x.theta() != &theta) {
                    return Err(GeometryError::MixedTwist);
                }
                for (l, dl) in d.iter().enumerate() {
                    let defect = dl.sub(&dl.adjoint())?.max_coeff_norm();
                    if defect > 1e-10 {
                        return Err(GeometryError::EntryNotSelfAdjoint(l, l, defect));
                    }
                }
                let mut ortho_defect = 0.0f64;
                for j in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for l in 0..n {
                            s += o[l * n + j] * o[l * n + k];
                        }
                        let want = if j == k { 1.0 } else { 0.0 };
                        ortho_defect = ortho_defect.max((s - want).abs());
                    }
                }
                if ortho_defect > 1e-12 {
                    return Err(GeometryError::NotOrthogonal(ortho_defect));
                }
                let diag: Vec<TorusElement> = d
                    .iter()
                    .map(|dl| {
                        Ok(dl
                            .multiply(dl)?
                            .add(&TorusElement::one(&theta).scale_re(*epsilon))?
                            .real_part())
                    })
                    .collect::<Result<Vec<_>, AlgebraError>>()?;
                let mut raw = Vec::with_capacity(n * n);
                for j in 0..n {
                    for k in 0..n {
                        let mut acc = TorusElement::zero(&theta);
                        for l in 0..n {
                            acc = acc.add(&diag[l].scale_re(o[l * n + j] * o[l * n + k]))?;
                        }
                        raw.push(acc);
                    }
                }
                (n, theta, raw)
            }
            MetricSpec::Explicit { entries } => {
                if entries.is_empty() {
                    return Err(GeometryError::BadRank);
                }
                let theta = entries[0].theta().clone();
                let n = theta.n();
                if entries.len() != n * n {
                    return Err(GeometryError::DimensionMismatch);
                }
                if entries.iter().any(|x| x.theta() != &theta) {
                    return Err(GeometryError::MixedTwist);
                }
                (n, theta, entries.clone())
            }
        };

        // Validate self-adjointness entrywise, then mirror the upper triangle
        // so that g_jk and g_kj are the same stored object.
        let mut entries = raw;
        for j in 0..n {
            for k in 0..n {
                let defect = entries[j * n + k]
                    .sub(&entries[j * n + k].adjoint())?
                    .max_coeff_norm();
                if defect > 1e-10 {
                    return Err(GeometryError::EntryNotSelfAdjoint(j, k, defect));
                }
                let sym = entries[j * n + k]
                    .sub(&entries[k * n + j])?
                    .max_coeff_norm();
                if sym > 1e-10 {
                    return Err(GeometryError::EntryNotSelfAdjoint(j, k, sym));
                }
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                entries[k * n + j] = entries[j * n + k].clone();
            }
        }

        let radius = evidence_radius.unwrap_or_else(|| default_evidence_radius(theta.n()));
        let bx = TruncationBox::new(theta.n(), radius)?;
        let evidence = gns::positivity_check(&entries, n, &bx, POSITIVITY_TOL)?;
        let structural = matches!(spec, MetricSpec::Conformal { .. } | MetricSpec::RotatedDiagonal { .. });
        if !structural && evidence.verdict != Verdict::Plausible {
            return Err(GeometryError::NotPositive(evidence.min_eig));
        }
        if structural && evidence.verdict == Verdict::NonPositive {
            return Err(GeometryError::NotPositive(evidence.min_eig));
        }
        Ok(MetricMatrix {
            n,
            entries,
            evidence,
            inverse: None,
        })
    }

    pub fn identity(theta: &Arc<ThetaMatrix>) -> Self {
        let n = theta.n();
        let entries = gns::identity_grid(theta, n);
        MetricMatrix {
            n,
            entries,
            evidence: PositivityEvidence {
                min_eig: 1.0,
                radius: 0,
                dim: n,
                verdict: Verdict::Plausible,
            },
            inverse: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &Arc<ThetaMatrix> {
        self.entries[0].theta()
    }

    pub fn entry(&self, j: usize, k: usize) -> &TorusElement {
        &self.entries[j * self.n + k]
    }

    pub fn entries(&self) -> &[TorusElement] {
        &self.entries
    }

    pub fn evidence(&self) -> &PositivityEvidence {
        &self.evidence
    }

    pub fn inverse(&self) -> Option<&Arc<InverseApprox>> {
        self.inverse.as_ref()
    }

    pub fn with_inverse(mut self, inv: Arc<InverseApprox>) -> Self {
        self.inverse = Some(inv);
        self
    }

    /// Largest support radius over the entries.
    pub fn support_radius(&self) -> i32 {
        self.entries
            .iter()
            .map(|e| e.support_radius())
            .max()
            .unwrap_or(0)
    }

    /// The metric `r * g` for `r > 0`; evidence rescales exactly.
    pub fn scale(&self, r: f64) -> Result<Self, GeometryError> {
        if !(r > 0.0) {
            return Err(GeometryError::BadScale(r));
        }
        Ok(MetricMatrix {
            n: self.n,
            entries: gns::grid_scale(&self.entries, r),
            evidence: PositivityEvidence {
                min_eig: self.evidence.min_eig * r,
                radius: self.evidence.radius,
                dim: self.evidence.dim,
                verdict: self.evidence.verdict,
            },
            inverse: None,
        })
    }

    /// Coefficientwise distance to another metric.
    pub fn max_coeff_diff(&self, other: &MetricMatrix) -> Result<f64, GeometryError> {
        if self.n != other.n {
            return Err(GeometryError::DimensionMismatch);
        }
        let mut d = 0.0f64;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            d = d.max(a.sub(b)?.max_coeff_norm());
        }
        Ok(d)
    }
}

/// `<X|Y>_st = sum_j a_j b_j^*`.
pub fn inner_st(x: &ModuleVector, y: &ModuleVector) -> Result<TorusElement, GeometryError> {
    if x.rank() != y.rank() {
        return Err(GeometryError::DimensionMismatch);
    }
    if x.theta() != y.theta() {
        return Err(GeometryError::MixedTwist);
    }
    let theta = x.theta();
    let mut acc = TorusElement::zero(theta);
    for j in 0..x.rank() {
        acc = acc.add(&x.component(j).multiply(&y.component(j).adjoint())?)?;
    }
    Ok(acc)
}

/// `T_g X`, with k-th component `sum_j a_j g_jk`.
pub fn apply_tg(g: &MetricMatrix, x: &ModuleVector) -> Result<ModuleVector, GeometryError> {
    if g.n() != x.rank() {
        return Err(GeometryError::DimensionMismatch);
    }
    if g.theta() != x.theta() {
        return Err(GeometryError::MixedTwist);
    }
    let theta = x.theta();
    let mut components = Vec::with_capacity(g.n());
    for k in 0..g.n() {
        let mut acc = TorusElement::zero(theta);
        for j in 0..g.n() {
            acc = acc.add(&x.component(j).multiply(g.entry(j, k))?)?;
        }
        components.push(acc);
    }
    Ok(ModuleVector { components })
}

/// `<X|Y>_g = <T_g X|Y>_st`.
pub fn inner_g(
    g: &MetricMatrix,
    x: &ModuleVector,
    y: &ModuleVector,
) -> Result<TorusElement, GeometryError> {
    inner_st(&apply_tg(g, x)?, y)
}

/// Certified enclosure of the module norm `‖X‖_g = ‖<X|X>_g‖^{1/2}`.
pub fn norm_g(
    g: &MetricMatrix,
    x: &ModuleVector,
    cfg: &GnsConfig,
) -> Result<NormInterval, GeometryError> {
    let s = inner_g(g, x, x)?;
    Ok(gns::norm_interval(&s, cfg)?.sqrt())
}

/// Standard module norm `‖X‖_st`.
pub fn norm_st(x: &ModuleVector, cfg: &GnsConfig) -> Result<NormInterval, GeometryError> {
    let s = inner_st(x, x)?;
    Ok(gns::norm_interval(&s, cfg)?.sqrt())
}
