//! On-disk fixture format: the twist matrix, norm and engine settings, an
//! optional metric, and task payloads, all as plain JSON.

use std::sync::Arc;

use qtorus_core::Complex64;
use serde::{Deserialize, Serialize};

use qtorus_core::algebra::{ThetaMatrix, TorusElement};
use qtorus_core::connection::Derivation;
use qtorus_core::geometry::{MetricMatrix, MetricSpec, ModuleVector};
use qtorus_core::gns::GnsConfig;
use qtorus_core::norms::NormChoice;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffDto {
    pub k: Vec<i32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaDto {
    pub n: usize,
    /// Row-major antisymmetric matrix, `n * n` entries.
    pub entries: Vec<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GnsDto {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetricDto {
    Identity,
    Conformal {
        h: Vec<CoeffDto>,
        epsilon: f64,
    },
    RotatedDiagonal {
        d: Vec<Vec<CoeffDto>>,
        epsilon: f64,
        /// Row-major orthogonal matrix, `n * n` entries.
        o: Vec<f64>,
    },
    Explicit {
        /// Row-major upper triangle included; full `n * n` grid.
        entries: Vec<Vec<CoeffDto>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivationDto {
    pub r: Vec<f64>,
    pub b: Vec<CoeffDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub theta: ThetaDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gns: Option<GnsDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<CoeffDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_b: Option<Vec<CoeffDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Vec<CoeffDto>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Vec<CoeffDto>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Residual target for metric inversion when the task needs a
    /// connection but `tol` means something else (check tolerance).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_tol: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read fixture: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse fixture: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("fixture rejected: {0}")]
    Invalid(String),
}

impl Fixture {
    pub fn load(path: &std::path::Path) -> Result<Fixture, FixtureError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn theta(&self) -> Result<Arc<ThetaMatrix>, FixtureError> {
        ThetaMatrix::new(self.theta.n, &self.theta.entries)
            .map(Arc::new)
            .map_err(|e| FixtureError::Invalid(e.to_string()))
    }

    pub fn norm_choice(&self, flag: Option<&str>) -> Result<NormChoice, FixtureError> {
        let name = flag
            .map(str::to_owned)
            .or_else(|| self.norm.clone())
            .unwrap_or_else(|| "l2".to_owned());
        parse_norm(&name)
    }

    /// Engine settings from the fixture with flag overrides applied.
    pub fn gns_config(
        &self,
        radius: Option<i32>,
        tol: Option<f64>,
        seed: Option<u64>,
    ) -> Result<GnsConfig, FixtureError> {
        let mut cfg = GnsConfig::for_dimension(self.theta.n);
        if let Some(dto) = &self.gns {
            if let Some(radii) = &dto.radii {
                cfg.radii = radii.clone();
            }
            if let Some(t) = dto.tol {
                cfg.tol = t;
            }
            if let Some(s) = dto.seed {
                cfg.seed = s;
            }
        }
        if let Some(r) = radius.or(self.radius) {
            cfg.radii = vec![r];
        }
        if let Some(t) = tol.or(self.tol) {
            cfg.tol = t;
        }
        if let Some(s) = seed {
            cfg.seed = s;
        }
        cfg.validate()
            .map_err(|e| FixtureError::Invalid(e.to_string()))?;
        Ok(cfg)
    }

    pub fn element(&self, theta: &Arc<ThetaMatrix>) -> Result<TorusElement, FixtureError> {
        let dto = self
            .element
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `element`".into()))?;
        build_element(theta, dto)
    }

    pub fn element_b(&self, theta: &Arc<ThetaMatrix>) -> Result<TorusElement, FixtureError> {
        let dto = self
            .element_b
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `element_b`".into()))?;
        build_element(theta, dto)
    }

    pub fn vector_x(&self, theta: &Arc<ThetaMatrix>) -> Result<ModuleVector, FixtureError> {
        let dto = self
            .x
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `x`".into()))?;
        build_vector(theta, dto)
    }

    pub fn vector_y(&self, theta: &Arc<ThetaMatrix>) -> Result<ModuleVector, FixtureError> {
        let dto = self
            .y
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `y`".into()))?;
        build_vector(theta, dto)
    }

    pub fn metric(
        &self,
        theta: &Arc<ThetaMatrix>,
        evidence_radius: Option<i32>,
    ) -> Result<MetricMatrix, FixtureError> {
        let dto = self
            .metric
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `metric`".into()))?;
        let spec = match dto {
            MetricDto::Identity => return Ok(MetricMatrix::identity(theta)),
            MetricDto::Conformal { h, epsilon } => MetricSpec::Conformal {
                h: build_element(theta, h)?,
                epsilon: *epsilon,
            },
            MetricDto::RotatedDiagonal { d, epsilon, o } => MetricSpec::RotatedDiagonal {
                d: d.iter()
                    .map(|c| build_element(theta, c))
                    .collect::<Result<Vec<_>, _>>()?,
                epsilon: *epsilon,
                o: o.clone(),
            },
            MetricDto::Explicit { entries } => MetricSpec::Explicit {
                entries: entries
                    .iter()
                    .map(|c| build_element(theta, c))
                    .collect::<Result<Vec<_>, _>>()?,
            },
        };
        MetricMatrix::make(&spec, evidence_radius).map_err(|e| FixtureError::Invalid(e.to_string()))
    }

    pub fn derivation(&self, theta: &Arc<ThetaMatrix>) -> Result<Derivation, FixtureError> {
        let dto = self
            .derivation
            .as_ref()
            .ok_or_else(|| FixtureError::Invalid("fixture has no `derivation`".into()))?;
        let b = build_element(theta, &dto.b)?;
        Derivation::new(dto.r.clone(), b).map_err(|e| FixtureError::Invalid(e.to_string()))
    }
}

pub fn parse_norm(name: &str) -> Result<NormChoice, FixtureError> {
    match name {
        "l1" => Ok(NormChoice::L1),
        "l2" => Ok(NormChoice::L2),
        "linf" => Ok(NormChoice::LInf),
        other => Err(FixtureError::Invalid(format!(
            "unknown norm `{other}` (expected l1, l2, or linf)"
        ))),
    }
}

pub fn build_element(
    theta: &Arc<ThetaMatrix>,
    coeffs: &[CoeffDto],
) -> Result<TorusElement, FixtureError> {
    TorusElement::from_coeffs(
        theta,
        coeffs
            .iter()
            .map(|c| (c.k.clone(), Complex64::new(c.re, c.im))),
    )
    .map_err(|e| FixtureError::Invalid(e.to_string()))
}

pub fn build_vector(
    theta: &Arc<ThetaMatrix>,
    comps: &[Vec<CoeffDto>],
) -> Result<ModuleVector, FixtureError> {
    let components = comps
        .iter()
        .map(|c| build_element(theta, c))
        .collect::<Result<Vec<_>, _>>()?;
    ModuleVector::new(components).map_err(|e| FixtureError::Invalid(e.to_string()))
}

pub fn element_dto(a: &TorusElement) -> Vec<CoeffDto> {
    let mut out: Vec<CoeffDto> = a
        .iter()
        .map(|(k, c)| CoeffDto {
            k: k.clone(),
            re: c.re,
            im: c.im,
        })
        .collect();
    out.sort_by(|a, b| a.k.cmp(&b.k));
    out
}
