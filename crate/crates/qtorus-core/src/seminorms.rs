//! The Lipschitz seminorm over a chosen direction norm, the connection
//! seminorm and D-norm with interval semantics, and sound-mode inequality
//! checkers.
//!
//! Every reported lower bound is an evaluated objective value at a stored
//! witness; every upper bound combines per-direction norm upper bounds with
//! an explicit covering argument, so intervals stay sound even when the
//! search has not located the true maximizer.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{AlgebraError, TorusElement};
use crate::connection::{self, ChristoffelTensor, ConnectionError, Derivation};
use crate::geometry::{self, GeometryError, MetricMatrix, ModuleVector};
use crate::gns::{self, GnsConfig, GnsError, NormInterval};
use crate::math;
use crate::norms::NormChoice;
use crate::rng::DetRng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeminormError {
    #[error("input must be self-adjoint (defect {0})")]
    NotSelfAdjoint(f64),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gns(#[from] GnsError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
}

/// Search budget and inner norm-engine configuration.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub gns: GnsConfig,
    /// Grid density for the Euclidean sphere search.
    pub sphere_points: usize,
    /// Local refinement rounds around the best grid point.
    pub ascent_rounds: usize,
    /// How many ranked candidates receive a full certified evaluation.
    pub full_certs: usize,
    /// Lattice radius for commutator-part candidate directions.
    pub ad_support_radius: i32,
    /// Random restarts for the commutator-part coefficient search.
    pub ad_restarts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            gns: GnsConfig::default(),
            sphere_points: 256,
            ascent_rounds: 24,
            full_certs: 3,
            ad_support_radius: 2,
            ad_restarts: 6,
        }
    }
}

impl SearchConfig {
    pub fn for_dimension(n: usize) -> Self {
        SearchConfig {
            gns: GnsConfig::for_dimension(n),
            ..SearchConfig::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.gns.seed = seed;
        self
    }

    /// Smaller budget for batch runs: shorter compression schedule and a
    /// lighter eigensolver. Bounds stay sound, they are just wider.
    pub fn economical() -> Self {
        let mut cfg = SearchConfig::default();
        cfg.gns.radii = vec![2, 3];
        cfg.gns.lanczos.restarts = 1;
        cfg.gns.lanczos.max_steps = 80;
        cfg.gns.lanczos.rel_tol = 1e-9;
        cfg.sphere_points = 96;
        cfg.ascent_rounds = 10;
        cfg.full_certs = 2;
        cfg.ad_support_radius = 1;
        cfg.ad_restarts = 3;
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactVertex,
    Grid,
    Sampled,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ExactVertex => "exact-vertex",
            Method::Grid => "grid",
            Method::Sampled => "sampled",
        }
    }
}

/// Maximizer data backing a reported lower bound.
#[derive(Debug, Clone, Default)]
pub struct Witness {
    pub r: Option<Vec<f64>>,
    pub b: Option<TorusElement>,
    pub t: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct SeminormEstimate {
    pub interval: NormInterval,
    pub witness: Witness,
    pub method: Method,
    /// Certification slack added on top of the best evaluated upper bound.
    pub gap: f64,
}

/// Objective `r -> ‖ linear-or-quadratic combination(r) ‖` on the unit
/// sphere of the direction norm.
trait SphereObjective {
    /// Cheap sound upper bound at one point, used for ranking and for the
    /// covering-argument certificate.
    fn cheap_upper(&self, r: &[f64]) -> f64;
    /// Full certified enclosure at one point.
    fn certify(&self, r: &[f64]) -> Result<NormInterval, SeminormError>;
    /// Sound Lipschitz constant of the objective w.r.t. Euclidean distance;
    /// also a global upper bound since the objective vanishes at r = 0.
    fn lipschitz(&self) -> f64;
}

/// Combination `sum_j r_j c_j` of fixed elements.
struct LinearObjective<'a> {
    terms: &'a [TorusElement],
    uppers: Vec<f64>,
    gns: &'a GnsConfig,
}

impl LinearObjective<'_> {
    fn combine(&self, r: &[f64]) -> Result<TorusElement, SeminormError> {
        let theta = self.terms[0].theta().clone();
        let mut acc = TorusElement::zero(&theta);
        for (rj, c) in r.iter().zip(self.terms) {
            if *rj != 0.0 {
                acc = acc.add(&c.scale_re(*rj))?;
            }
        }
        Ok(acc)
    }
}

impl SphereObjective for LinearObjective<'_> {
    fn cheap_upper(&self, r: &[f64]) -> f64 {
        self.combine(r).map(|e| e.l1_norm()).unwrap_or(f64::INFINITY)
    }
    fn certify(&self, r: &[f64]) -> Result<NormInterval, SeminormError> {
        Ok(gns::norm_interval(&self.combine(r)?, self.gns)?)
    }
    fn lipschitz(&self) -> f64 {
        math::sqrt(self.uppers.iter().map(|u| u * u).sum())
    }
}

/// Norm of `sum_m r_m W_m` in a weighted module, evaluated through the
/// precomputed pairing grid `S_{m m'} = <W_m|W_m'>_g`.
struct QuadraticObjective<'a> {
    pairings: &'a [TorusElement],
    n: usize,
    uppers: Vec<f64>,
    gns: &'a GnsConfig,
}

impl QuadraticObjective<'_> {
    fn combine(&self, r: &[f64]) -> Result<TorusElement, SeminormError> {
        let theta = self.pairings[0].theta().clone();
        let mut acc = TorusElement::zero(&theta);
        for m in 0..self.n {
            for mp in 0..self.n {
                let w = r[m] * r[mp];
                if w != 0.0 {
                    acc = acc.add(&self.pairings[m * self.n + mp].scale_re(w))?;
                }
            }
        }
        Ok(acc)
    }
}

impl SphereObjective for QuadraticObjective<'_> {
    fn cheap_upper(&self, r: &[f64]) -> f64 {
        self.combine(r)
            .map(|e| math::sqrt(e.l1_norm()))
            .unwrap_or(f64::INFINITY)
    }
    fn certify(&self, r: &[f64]) -> Result<NormInterval, SeminormError> {
        Ok(gns::norm_interval(&self.combine(r)?, self.gns)?.sqrt())
    }
    fn lipschitz(&self) -> f64 {
        math::sqrt(self.uppers.iter().map(|u| u * u).sum())
    }
}

fn normalize(r: &mut [f64]) -> bool {
    let n2: f64 = r.iter().map(|x| x * x).sum();
    if n2 <= 0.0 {
        return false;
    }
    let inv = 1.0 / math::sqrt(n2);
    for x in r.iter_mut() {
        *x *= inv;
    }
    true
}

/// Euclidean-sphere grid with a certified covering radius (chordal).
fn sphere_grid(n: usize, points: usize) -> (Vec<Vec<f64>>, f64) {
    match n {
        1 => (vec![vec![1.0]], 0.0),
        2 => {
            let g = points.max(16);
            let mut out = Vec::with_capacity(g);
            for i in 0..g {
                let t = i as f64 / g as f64;
                out.push(vec![math::cos(math::TAU * t), math::sin(math::TAU * t)]);
            }
            (out, math::PI / g as f64)
        }
        3 => {
            let rings = (math::sqrt(points as f64 / 2.0) as usize).max(6);
            let mut out = Vec::new();
            for i in 0..rings {
                let th = math::PI * (i as f64 + 0.5) / rings as f64;
                for j in 0..(2 * rings) {
                    let ph = math::TAU * j as f64 / (2 * rings) as f64;
                    out.push(vec![
                        math::sin(th) * math::cos(ph),
                        math::sin(th) * math::sin(ph),
                        math::cos(th),
                    ]);
                }
            }
            let delta = math::PI * math::sqrt(2.0) / (2.0 * rings as f64);
            (out, delta)
        }
        _ => {
            // No certified covering; the global Cauchy-Schwarz bound still
            // provides a sound upper bound and the result is tagged sampled.
            let mut rng = DetRng::new(0x5f3759df, n as u64);
            let mut out: Vec<Vec<f64>> = Vec::with_capacity(points);
            for _ in 0..points {
                let mut r: Vec<f64> = (0..n).map(|_| rng.signed_unit()).collect();
                if normalize(&mut r) {
                    out.push(r);
                }
            }
            (out, f64::INFINITY)
        }
    }
}

fn axis_vector(n: usize, j: usize) -> Vec<f64> {
    let mut r = vec![0.0; n];
    r[j] = 1.0;
    r
}

/// Certified maximization of a convex, symmetric objective over the
/// Euclidean unit sphere.
fn sup_over_sphere(
    obj: &dyn SphereObjective,
    n: usize,
    cfg: &SearchConfig,
) -> Result<(NormInterval, Vec<f64>, f64, Method), SeminormError> {
    let lip = obj.lipschitz();
    if n == 1 {
        let iv = obj.certify(&[1.0])?;
        return Ok((iv, vec![1.0], 0.0, Method::ExactVertex));
    }

    let (grid, delta) = sphere_grid(n, cfg.sphere_points);
    let mut best_cheap = 0.0f64;
    let mut ranked: Vec<(f64, usize)> = Vec::with_capacity(grid.len());
    for (i, r) in grid.iter().enumerate() {
        let v = obj.cheap_upper(r);
        best_cheap = best_cheap.max(v);
        ranked.push((v, i));
    }
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));

    let mut candidates: Vec<Vec<f64>> = (0..n).map(|j| axis_vector(n, j)).collect();
    for (_, i) in ranked.iter().take(cfg.full_certs) {
        candidates.push(grid[*i].clone());
    }

    let mut best_lower = 0.0f64;
    let mut best_eval_upper = 0.0f64;
    let mut witness = axis_vector(n, 0);
    let mut converged = true;
    for r in &candidates {
        let iv = obj.certify(r)?;
        if iv.lower > best_lower {
            best_lower = iv.lower;
            witness = r.clone();
        }
        best_eval_upper = best_eval_upper.max(iv.upper);
        converged &= iv.converged;
    }

    // Local refinement: rank by the cheap bound, certify the end point.
    let mut current = witness.clone();
    let mut step = 0.25f64;
    for _ in 0..cfg.ascent_rounds {
        let base = obj.cheap_upper(&current);
        let mut improved = false;
        for j in 0..n {
            for sign in [1.0, -1.0] {
                let mut trial = current.clone();
                trial[j] += sign * step;
                if !normalize(&mut trial) {
                    continue;
                }
                if obj.cheap_upper(&trial) > base {
                    current = trial;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-6 {
                break;
            }
        }
    }
    let iv = obj.certify(&current)?;
    if iv.lower > best_lower {
        best_lower = iv.lower;
        witness = current;
    }
    best_eval_upper = best_eval_upper.max(iv.upper);
    converged &= iv.converged;

    let (gap, method) = if delta.is_finite() {
        (delta * lip, Method::Grid)
    } else {
        (f64::INFINITY, Method::Sampled)
    };
    let covered_upper = if delta.is_finite() {
        best_cheap.max(best_eval_upper) + gap
    } else {
        f64::INFINITY
    };
    let upper = lip.min(covered_upper);
    let iv = NormInterval::new(best_lower, upper, self_radius(&candidates), converged);
    Ok((iv, witness, upper - best_eval_upper.max(best_lower), method))
}

fn self_radius(_c: &[Vec<f64>]) -> i32 {
    0
}

/// Certified sup of a norm objective over the unit ball of the chosen
/// direction norm. Convexity puts the maximum on extreme points: vertices
/// for the l1 and max norms, the sphere for the Euclidean norm.
fn sup_over_ball(
    obj: &dyn SphereObjective,
    n: usize,
    n_choice: NormChoice,
    cfg: &SearchConfig,
) -> Result<(NormInterval, Vec<f64>, f64, Method), SeminormError> {
    match n_choice.vertices(n) {
        Some(vertices) => {
            let mut best = NormInterval::new(0.0, 0.0, 0, true);
            let mut witness = axis_vector(n, 0);
            let mut first = true;
            for v in vertices {
                // The objective is symmetric under r -> -r; skip mirrored
                // vertices.
                if v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0) {
                    continue;
                }
                let iv = obj.certify(&v)?;
                if first || iv.lower > best.lower {
                    witness = v.clone();
                }
                best = if first { iv } else { best.join_max(&iv) };
                first = false;
            }
            Ok((best, witness, 0.0, Method::ExactVertex))
        }
        None => sup_over_sphere(obj, n, cfg),
    }
}

/// The Lipschitz seminorm `L(a) = sup { ‖sum_j r_j ∂_j a‖ : N(r) <= 1 }`.
pub fn lipschitz_l(
    a: &TorusElement,
    n_choice: NormChoice,
    cfg: &SearchConfig,
) -> Result<SeminormEstimate, SeminormError> {
    let defect = a.sub(&a.adjoint())?.max_coeff_norm();
    if defect > 1e-10 {
        return Err(SeminormError::NotSelfAdjoint(defect));
    }
    let n = a.n();
    if a.support_radius() == 0 {
        return Ok(SeminormEstimate {
            interval: NormInterval::new(0.0, 0.0, 0, true),
            witness: Witness {
                r: Some(axis_vector(n, 0)),
                ..Witness::default()
            },
            method: Method::ExactVertex,
            gap: 0.0,
        });
    }
    let terms: Vec<TorusElement> = (0..n)
        .map(|j| a.derive(j))
        .collect::<Result<Vec<_>, _>>()?;
    let uppers: Vec<f64> = terms
        .iter()
        .map(|c| gns::norm_interval(c, &cfg.gns).map(|iv| iv.upper))
        .collect::<Result<Vec<_>, _>>()?;
    let obj = LinearObjective {
        terms: &terms,
        uppers,
        gns: &cfg.gns,
    };
    let (interval, r, gap, method) = sup_over_ball(&obj, n, n_choice, cfg)?;
    Ok(SeminormEstimate {
        interval,
        witness: Witness {
            r: Some(r),
            ..Witness::default()
        },
        method,
        gap,
    })
}

/// Evaluates the Lipschitz objective at a stored direction witness.
pub fn lipschitz_objective(
    a: &TorusElement,
    r: &[f64],
    gns_cfg: &GnsConfig,
) -> Result<NormInterval, SeminormError> {
    Ok(gns::norm_interval(&a.derive_along(r)?, gns_cfg)?)
}

/// Defining-sup lower bound: max over translation samples of
/// `‖act(a,t) - a‖ / N(t̂)` with `t̂` the representative in `[-1/2, 1/2)^n`.
pub fn lipschitz_l_def(
    a: &TorusElement,
    n_choice: NormChoice,
    samples: &[Vec<f64>],
    gns_cfg: &GnsConfig,
) -> Result<f64, SeminormError> {
    let defect = a.sub(&a.adjoint())?.max_coeff_norm();
    if defect > 1e-10 {
        return Err(SeminormError::NotSelfAdjoint(defect));
    }
    let mut best = 0.0f64;
    for t in samples {
        if t.len() != a.n() {
            return Err(SeminormError::DimensionMismatch);
        }
        let rep: Vec<f64> = t.iter().map(|&x| math::wrap_half(x)).collect();
        let len = n_choice.eval(&rep);
        if len <= 1e-12 {
            continue;
        }
        let diff = a.act(t)?.sub(a)?;
        let lower = gns::norm_interval(&diff, gns_cfg)?.lower;
        best = best.max(lower / len);
    }
    Ok(best)
}

/// Deterministic default translation samples for the defining sup.
pub fn default_translation_samples(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = DetRng::new(seed, 0x7453);
    let mut out = Vec::with_capacity(count + 2 * n);
    for j in 0..n {
        for mag in [1e-4, 1e-3] {
            let mut t = vec![0.0; n];
            t[j] = mag;
            out.push(t);
        }
    }
    for _ in 0..count {
        out.push((0..n).map(|_| 0.5 * rng.signed_unit()).collect());
    }
    out
}

/// Gradient and commutator contributions to the connection seminorm.
#[derive(Debug, Clone)]
pub struct OpSeminorm {
    pub estimate: SeminormEstimate,
    pub gradient_part: SeminormEstimate,
    pub commutator_part: SeminormEstimate,
}

fn commutator_candidates(
    theta: &alloc::sync::Arc<crate::algebra::ThetaMatrix>,
    radius: i32,
) -> Vec<TorusElement> {
    let n = theta.n();
    let mut keys: Vec<Vec<i32>> = Vec::new();
    let mut cursor = vec![-radius; n];
    loop {
        if cursor.iter().any(|&x| x != 0) {
            // Keep one representative of each +-k pair.
            if cursor.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
                keys.push(cursor.clone());
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                return build_candidates(theta, &keys);
            }
            j -= 1;
            if cursor[j] < radius {
                cursor[j] += 1;
                for c in cursor.iter_mut().skip(j + 1) {
                    *c = -radius;
                }
                break;
            }
        }
    }
}

fn build_candidates(
    theta: &alloc::sync::Arc<crate::algebra::ThetaMatrix>,
    keys: &[Vec<i32>],
) -> Vec<TorusElement> {
    let phases = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(core::f64::consts::FRAC_1_SQRT_2, core::f64::consts::FRAC_1_SQRT_2),
    ];
    let mut out = Vec::new();
    for k in keys {
        for z in phases {
            if let Ok(m) = TorusElement::monomial(theta, k, z) {
                let b = m
                    .sub(&m.adjoint())
                    .expect("same theta")
                    .scale_re(0.5)
                    .traceless_part();
                if !b.is_zero() {
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Cheap sound lower proxy for `‖Z‖_g`: the square root of the trace of the
/// self-pairing (a state evaluation).
fn module_norm_proxy(
    g: &MetricMatrix,
    z: &ModuleVector,
) -> Result<f64, SeminormError> {
    let t = geometry::inner_g(g, z, z)?.trace();
    Ok(math::sqrt(t.re.max(0.0)))
}

fn certify_commutator(
    g: &MetricMatrix,
    x: &ModuleVector,
    b: &TorusElement,
    cfg: &SearchConfig,
) -> Result<(NormInterval, TorusElement), SeminormError> {
    let upper_b = gns::norm_interval(b, &cfg.gns)?.upper;
    if upper_b <= 1e-14 {
        return Ok((NormInterval::new(0.0, 0.0, 0, true), b.clone()));
    }
    let unit = b.scale_re(1.0 / upper_b);
    let iv = geometry::norm_g(g, &x.left_mul(&unit)?, &cfg.gns)?;
    Ok((iv, unit))
}

/// The connection seminorm `sup { ‖∇_δ X‖_g : ‖δ‖ <= 1 }`, split as the
/// maximum of its gradient and commutator faces: the unit ball of
/// `N(r) + ‖b‖` is the convex hull of the two coordinate balls and the
/// objective is convex and vanishes at zero, so the sup is attained on the
/// faces (checked against a brute-force joint grid in the tests).
pub fn op_seminorm(
    g: &MetricMatrix,
    gamma: &ChristoffelTensor,
    x: &ModuleVector,
    n_choice: NormChoice,
    cfg: &SearchConfig,
) -> Result<OpSeminorm, SeminormError> {
    let n = g.n();
    if x.rank() != n {
        return Err(SeminormError::DimensionMismatch);
    }
    let theta = x.theta().clone();

    // Gradient face: pairings of the covariant derivatives along the axes.
    let w: Vec<ModuleVector> = (0..n)
        .map(|m| {
            let d = Derivation::partial(&theta, m)?;
            connection::covariant_derivative(gamma, &d, x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairings = Vec::with_capacity(n * n);
    for m in 0..n {
        for mp in 0..n {
            pairings.push(geometry::inner_g(g, &w[m], &w[mp])?);
        }
    }
    let uppers: Vec<f64> = w
        .iter()
        .map(|wm| geometry::norm_g(g, wm, &cfg.gns).map(|iv| iv.upper))
        .collect::<Result<Vec<_>, _>>()?;
    let all_zero = w.iter().all(|wm| wm.components().iter().all(|c| c.is_zero()));
    let gradient_part = if all_zero {
        SeminormEstimate {
            interval: NormInterval::new(0.0, 0.0, 0, true),
            witness: Witness {
                r: Some(axis_vector(n, 0)),
                ..Witness::default()
            },
            method: Method::ExactVertex,
            gap: 0.0,
        }
    } else {
        let obj = QuadraticObjective {
            pairings: &pairings,
            n,
            uppers,
            gns: &cfg.gns,
        };
        let (interval, r, gap, method) = sup_over_ball(&obj, n, n_choice, cfg)?;
        SeminormEstimate {
            interval,
            witness: Witness {
                r: Some(r),
                ..Witness::default()
            },
            method,
            gap,
        }
    };

    // Commutator face: lower bounds from normalized skew-adjoint traceless
    // candidates, upper bound from ‖b . X‖_g <= ‖b‖ ‖X‖_g.
    let x_norm = geometry::norm_g(g, x, &cfg.gns)?;
    let mut ranked: Vec<(f64, TorusElement)> = Vec::new();
    for b in commutator_candidates(&theta, cfg.ad_support_radius) {
        let upper_b = b.l1_norm();
        if upper_b <= 1e-14 {
            continue;
        }
        let unit = b.scale_re(1.0 / upper_b);
        let proxy = module_norm_proxy(g, &x.left_mul(&unit)?)?;
        ranked.push((proxy, b));
    }
    let mut rng = DetRng::new(cfg.gns.seed, 0xad);
    for _ in 0..cfg.ad_restarts {
        let mut acc = TorusElement::zero(&theta);
        for _ in 0..3 {
            let k: Vec<i32> = (0..theta.n())
                .map(|_| rng.int_in(-cfg.ad_support_radius, cfg.ad_support_radius))
                .collect();
            let m = TorusElement::monomial(&theta, &k, rng.complex())?;
            acc = acc.add(&m.sub(&m.adjoint())?.scale_re(0.5))?;
        }
        let b = acc.traceless_part();
        if b.is_zero() {
            continue;
        }
        let upper_b = b.l1_norm();
        let unit = b.scale_re(1.0 / upper_b);
        let proxy = module_norm_proxy(g, &x.left_mul(&unit)?)?;
        ranked.push((proxy, b));
    }
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));

    let mut ad_lower = 0.0f64;
    let mut ad_witness = None;
    let mut converged = true;
    for (_, b) in ranked.iter().take(cfg.full_certs) {
        let (iv, unit) = certify_commutator(g, x, b, cfg)?;
        if iv.lower > ad_lower {
            ad_lower = iv.lower;
            ad_witness = Some(unit);
        }
        converged &= iv.converged;
    }
    let commutator_part = SeminormEstimate {
        interval: NormInterval::new(ad_lower, x_norm.upper, x_norm.radius, converged),
        witness: Witness {
            b: ad_witness,
            ..Witness::default()
        },
        method: Method::Sampled,
        gap: x_norm.upper - ad_lower,
    };

    let interval = gradient_part.interval.join_max(&commutator_part.interval);
    let estimate = SeminormEstimate {
        interval,
        witness: if gradient_part.interval.lower >= commutator_part.interval.lower {
            gradient_part.witness.clone()
        } else {
            commutator_part.witness.clone()
        },
        method: Method::Sampled,
        gap: gradient_part.gap.max(commutator_part.gap),
    };
    Ok(OpSeminorm {
        estimate,
        gradient_part,
        commutator_part,
    })
}

/// The D-norm `max(‖X‖_g, sup ‖∇_δ X‖_g)` with its pieces, plus the
/// gradient-only surrogate that drops the commutator face.
#[derive(Debug, Clone)]
pub struct DNorm {
    pub estimate: SeminormEstimate,
    pub module_norm: NormInterval,
    pub gradient_part: SeminormEstimate,
    pub commutator_part: SeminormEstimate,
    pub gradient_surrogate: NormInterval,
}

pub fn d_norm(
    g: &MetricMatrix,
    gamma: &ChristoffelTensor,
    x: &ModuleVector,
    n_choice: NormChoice,
    cfg: &SearchConfig,
) -> Result<DNorm, SeminormError> {
    let module_norm = geometry::norm_g(g, x, &cfg.gns)?;
    let op = op_seminorm(g, gamma, x, n_choice, cfg)?;
    let interval = module_norm.join_max(&op.estimate.interval);
    let gradient_surrogate = module_norm.join_max(&op.gradient_part.interval);
    Ok(DNorm {
        estimate: SeminormEstimate {
            interval,
            witness: op.estimate.witness.clone(),
            method: op.estimate.method,
            gap: op.estimate.gap,
        },
        module_norm,
        gradient_part: op.gradient_part,
        commutator_part: op.commutator_part,
        gradient_surrogate,
    })
}

/// One sound-mode comparison `lower(LHS) <= upper(RHS) + tol`.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub name: String,
    pub lhs_lower: f64,
    pub rhs_upper: f64,
    pub tol: f64,
    pub passed: bool,
    /// Midpoint comparison, advisory only.
    pub advisory: Option<(f64, f64)>,
}

impl InequalityReport {
    fn new(name: &str, lhs_lower: f64, rhs_upper: f64, tol: f64) -> Self {
        InequalityReport {
            name: String::from(name),
            lhs_lower,
            rhs_upper,
            tol,
            passed: lhs_lower <= rhs_upper + tol,
            advisory: None,
        }
    }
}

/// `D(a . X) <= (3 ‖a‖ + L(a)) D(X)` in sound mode.
pub fn check_g_inequality(
    g: &MetricMatrix,
    gamma: &ChristoffelTensor,
    a: &TorusElement,
    x: &ModuleVector,
    n_choice: NormChoice,
    cfg: &SearchConfig,
    tol: f64,
) -> Result<InequalityReport, SeminormError> {
    let lhs = d_norm(g, gamma, &x.left_mul(a)?, n_choice, cfg)?;
    let dx = d_norm(g, gamma, x, n_choice, cfg)?;
    let na = gns::norm_interval(a, &cfg.gns)?;
    let la = lipschitz_l(a, n_choice, cfg)?;
    let rhs_upper = (3.0 * na.upper + la.interval.upper) * dx.estimate.interval.upper;
    let mut report = InequalityReport::new("G", lhs.estimate.interval.lower, rhs_upper, tol);
    let mid = |iv: &NormInterval| 0.5 * (iv.lower + iv.upper);
    report.advisory = Some((
        mid(&lhs.estimate.interval),
        (3.0 * mid(&na) + mid(&la.interval)) * mid(&dx.estimate.interval),
    ));
    Ok(report)
}

/// `max(L(Re<X|Y>_g), L(Im<X|Y>_g)) <= 2 D(X) D(Y)`, with the sharper
/// gradient-level bound `S_∂(X) ‖Y‖_g + ‖X‖_g S_∂(Y)` as a second check.
pub fn check_h_inequality(
    g: &MetricMatrix,
    gamma: &ChristoffelTensor,
    x: &ModuleVector,
    y: &ModuleVector,
    n_choice: NormChoice,
    cfg: &SearchConfig,
    tol: f64,
) -> Result<(InequalityReport, InequalityReport), SeminormError> {
    let m = geometry::inner_g(g, x, y)?;
    let l_re = lipschitz_l(&m.real_part(), n_choice, cfg)?;
    let l_im = lipschitz_l(&m.imag_part(), n_choice, cfg)?;
    let lhs_lower = l_re.interval.lower.max(l_im.interval.lower);

    let dx = d_norm(g, gamma, x, n_choice, cfg)?;
    let dy = d_norm(g, gamma, y, n_choice, cfg)?;
    let main = InequalityReport::new(
        "H",
        lhs_lower,
        2.0 * dx.estimate.interval.upper * dy.estimate.interval.upper,
        tol,
    );
    let sharp_rhs = dx.gradient_part.interval.upper * dy.module_norm.upper
        + dx.module_norm.upper * dy.gradient_part.interval.upper;
    let sharp = InequalityReport::new("H-gradient", lhs_lower, sharp_rhs, tol);
    Ok((main, sharp))
}

/// Leibniz bounds for the Jordan and Lie products:
/// `L(product) <= ‖a‖ L(b) + L(a) ‖b‖`.
pub fn check_leibniz(
    a: &TorusElement,
    b: &TorusElement,
    n_choice: NormChoice,
    cfg: &SearchConfig,
    tol: f64,
) -> Result<(InequalityReport, InequalityReport), SeminormError> {
    let ab = a.multiply(b)?;
    let ba = b.multiply(a)?;
    let jordan = ab.add(&ba)?.scale_re(0.5);
    let lie = ab.sub(&ba)?.scale(Complex64::new(0.0, -0.5));

    let na = gns::norm_interval(a, &cfg.gns)?;
    let nb = gns::norm_interval(b, &cfg.gns)?;
    let la = lipschitz_l(a, n_choice, cfg)?;
    let lb = lipschitz_l(b, n_choice, cfg)?;
    let rhs = na.upper * lb.interval.upper + la.interval.upper * nb.upper;

    let l_jordan = lipschitz_l(&jordan, n_choice, cfg)?;
    let l_lie = lipschitz_l(&lie, n_choice, cfg)?;
    Ok((
        InequalityReport::new("Leibniz-Jordan", l_jordan.interval.lower, rhs, tol),
        InequalityReport::new("Leibniz-Lie", l_lie.interval.lower, rhs, tol),
    ))
}

/// `‖δ(a)‖ <= (2 ‖a‖ + L(a)) ‖δ‖` in sound mode.
pub fn check_derivation_bound(
    a: &TorusElement,
    delta: &Derivation,
    n_choice: NormChoice,
    cfg: &SearchConfig,
    tol: f64,
) -> Result<InequalityReport, SeminormError> {
    let lhs = gns::norm_interval(&delta.apply(a)?, &cfg.gns)?;
    let na = gns::norm_interval(a, &cfg.gns)?;
    let la = lipschitz_l(a, n_choice, cfg)?;
    let dn = delta.norm(n_choice, &cfg.gns)?;
    let rhs = (2.0 * na.upper + la.interval.upper) * dn.upper;
    Ok(InequalityReport::new("derivation-bound", lhs.lower, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ThetaMatrix;
    use crate::geometry::MetricSpec;
    use alloc::sync::Arc;

    fn theta1() -> Arc<ThetaMatrix> {
        Arc::new(ThetaMatrix::new(1, &[0.0]).unwrap())
    }

    fn theta2(v: f64) -> Arc<ThetaMatrix> {
        Arc::new(ThetaMatrix::new(2, &[0.0, v, -v, 0.0]).unwrap())
    }

    fn quick_cfg() -> SearchConfig {
        SearchConfig::economical()
    }

    fn random_self_adjoint(rng: &mut DetRng, th: &Arc<ThetaMatrix>, terms: usize) -> TorusElement {
        let n = th.n();
        let coeffs: Vec<(Vec<i32>, Complex64)> = (0..terms)
            .map(|_| {
                let k: Vec<i32> = (0..n).map(|_| rng.int_in(-1, 1)).collect();
                (k, rng.complex())
            })
            .collect();
        TorusElement::from_coeffs(th, coeffs).unwrap().real_part()
    }

    #[test]
    fn scalars_have_zero_seminorm() {
        let th = theta2(0.31);
        let a = TorusElement::one(&th).scale_re(-3.4);
        for nc in [NormChoice::L1, NormChoice::L2, NormChoice::LInf] {
            let est = lipschitz_l(&a, nc, &quick_cfg()).unwrap();
            assert_eq!(est.interval.lower, 0.0);
            assert_eq!(est.interval.upper, 0.0);
        }
    }

    #[test]
    fn cosine_seminorm_hits_two_pi() {
        let th = theta2(0.47);
        let u1 = TorusElement::generator(&th, 0).unwrap();
        let a = u1.add(&u1.adjoint()).unwrap().scale_re(0.5);
        let est = lipschitz_l(&a, NormChoice::L2, &quick_cfg()).unwrap();
        assert!(
            (est.interval.lower - math::TAU).abs() < 1e-6,
            "lower {}",
            est.interval.lower
        );
        assert!(est.interval.contains(math::TAU));
        let w = est.witness.r.unwrap();
        assert!((w[0].abs() - 1.0).abs() < 1e-9, "witness {w:?}");
    }

    #[test]
    fn non_self_adjoint_rejected() {
        let th = theta1();
        let u = TorusElement::generator(&th, 0).unwrap();
        assert!(matches!(
            lipschitz_l(&u, NormChoice::L2, &quick_cfg()),
            Err(SeminormError::NotSelfAdjoint(_))
        ));
    }

    #[test]
    fn smoothing_never_increases_the_seminorm() {
        let th = theta2(0.23);
        let mut rng = DetRng::new(71, 0);
        let cfg = quick_cfg();
        for _ in 0..8 {
            let a = random_self_adjoint(&mut rng, &th, 4);
            let sm = a.fejer_smooth(2);
            let la = lipschitz_l(&a, NormChoice::L2, &cfg).unwrap();
            let lsm = lipschitz_l(&sm, NormChoice::L2, &cfg).unwrap();
            assert!(
                lsm.interval.lower <= la.interval.upper + 1e-9,
                "{} > {}",
                lsm.interval.lower,
                la.interval.upper
            );
        }
    }

    #[test]
    fn axis_norm_width_matches_dominant_axis() {
        let th = theta2(0.4);
        let u1 = TorusElement::generator(&th, 0).unwrap();
        let a = u1.add(&u1.adjoint()).unwrap().scale_re(0.5);
        let cfg = quick_cfg();
        let est = lipschitz_l(&a, NormChoice::L1, &cfg).unwrap();
        let axis = gns::norm_interval(&a.derive(0).unwrap(), &cfg.gns).unwrap();
        assert!((est.interval.width() - axis.width()).abs() < 1e-15);
        assert!((est.interval.lower - axis.lower).abs() < 1e-15);
    }

    #[test]
    fn seminorm_axioms_on_lower_bounds() {
        let th = theta2(0.36);
        let mut rng = DetRng::new(83, 0);
        let cfg = quick_cfg();
        for _ in 0..4 {
            let a = random_self_adjoint(&mut rng, &th, 3);
            let b = random_self_adjoint(&mut rng, &th, 3);
            let lab = lipschitz_l(&a.add(&b).unwrap(), NormChoice::L2, &cfg).unwrap();
            let la = lipschitz_l(&a, NormChoice::L2, &cfg).unwrap();
            let lb = lipschitz_l(&b, NormChoice::L2, &cfg).unwrap();
            assert!(
                lab.interval.lower <= la.interval.upper + lb.interval.upper + 1e-9,
                "subadditivity"
            );
            let l3 = lipschitz_l(&a.scale_re(-2.5), NormChoice::L2, &cfg).unwrap();
            let scaled = la.interval.scale(2.5);
            let slack = 1e-9 * (1.0 + scaled.upper);
            assert!(
                l3.interval.lower <= scaled.upper + slack
                    && scaled.lower <= l3.interval.upper + slack,
                "homogeneity: [{},{}] vs [{},{}]",
                l3.interval.lower,
                l3.interval.upper,
                scaled.lower,
                scaled.upper
            );
        }
    }

    #[test]
    fn witness_reproduces_lower_bound() {
        let th = theta2(0.52);
        let mut rng = DetRng::new(97, 0);
        let cfg = quick_cfg();
        for _ in 0..3 {
            let a = random_self_adjoint(&mut rng, &th, 4);
            let est = lipschitz_l(&a, NormChoice::L2, &cfg).unwrap();
            let r = est.witness.r.clone().unwrap();
            let again = lipschitz_objective(&a, &r, &cfg.gns).unwrap();
            assert!(
                (again.lower - est.interval.lower).abs() <= 1e-9,
                "{} vs {}",
                again.lower,
                est.interval.lower
            );
        }
    }

    #[test]
    fn defining_sup_is_consistent() {
        let th = theta2(0.29);
        let cfg = quick_cfg();
        let one = TorusElement::one(&th);
        let samples = default_translation_samples(2, 16, 5);
        assert_eq!(
            lipschitz_l_def(&one, NormChoice::L2, &samples, &cfg.gns).unwrap(),
            0.0
        );

        let u1 = TorusElement::generator(&th, 0).unwrap();
        let a = u1.add(&u1.adjoint()).unwrap().scale_re(0.5);
        let lower = lipschitz_l_def(&a, NormChoice::L2, &samples, &cfg.gns).unwrap();
        assert!(lower <= math::TAU + 1e-6, "lower {lower}");
        let est = lipschitz_l(&a, NormChoice::L2, &cfg).unwrap();
        assert!(lower <= est.interval.upper + 1e-6);

        let mut more = samples.clone();
        more.extend(default_translation_samples(2, 16, 6));
        let lower2 = lipschitz_l_def(&a, NormChoice::L2, &more, &cfg.gns).unwrap();
        assert!(lower2 + 1e-15 >= lower);

        let mut rng = DetRng::new(31, 0);
        for _ in 0..3 {
            let a = random_self_adjoint(&mut rng, &th, 3);
            let lower = lipschitz_l_def(&a, NormChoice::L2, &samples, &cfg.gns).unwrap();
            let est = lipschitz_l(&a, NormChoice::L2, &cfg).unwrap();
            assert!(lower <= est.interval.upper + 1e-6);
        }
    }

    fn flat_context(th: &Arc<ThetaMatrix>) -> (MetricMatrix, ChristoffelTensor) {
        let g = MetricMatrix::identity(th);
        let inv = connection::invert_metric(&g, 4, 1e-10).unwrap();
        let gamma = connection::christoffel(&g, &inv).unwrap();
        (g, gamma)
    }

    #[test]
    fn connection_seminorm_on_flat_basis() {
        let th = theta2(0.44);
        let (g, gamma) = flat_context(&th);
        let cfg = quick_cfg();
        let zero = ModuleVector::zero(&th);
        let est = op_seminorm(&g, &gamma, &zero, NormChoice::L2, &cfg).unwrap();
        assert_eq!(est.estimate.interval.lower, 0.0);
        assert_eq!(est.estimate.interval.upper, 0.0);

        let ek = ModuleVector::basis(&th, 1).unwrap();
        let est = op_seminorm(&g, &gamma, &ek, NormChoice::L2, &cfg).unwrap();
        assert_eq!(est.gradient_part.interval.upper, 0.0);
        assert!(est.estimate.interval.upper <= 1.0 + 1e-9);
        assert!(est.commutator_part.interval.lower >= 0.0);

        let d = d_norm(&g, &gamma, &ek, NormChoice::L2, &cfg).unwrap();
        assert!(d.estimate.interval.contains(1.0));
        assert!((d.estimate.interval.lower - 1.0).abs() < 1e-9);
        assert!((d.estimate.interval.upper - 1.0).abs() < 1e-9);
    }

    #[test]
    fn joint_ball_never_beats_the_face_decomposition() {
        let th = theta1();
        let u = TorusElement::generator(&th, 0).unwrap();
        let x_el = TorusElement::from_coeffs(
            &th,
            [
                (vec![0], Complex64::new(0.4, 0.0)),
                (vec![1], Complex64::new(0.3, 0.2)),
                (vec![-1], Complex64::new(0.3, -0.2)),
                (vec![2], Complex64::new(-0.15, 0.1)),
                (vec![-2], Complex64::new(-0.15, -0.1)),
            ],
        )
        .unwrap();
        let x = ModuleVector::new(vec![x_el]).unwrap();
        let g = MetricMatrix::make(
            &MetricSpec::Explicit {
                entries: vec![TorusElement::one(&th)
                    .scale_re(2.0)
                    .add(&u.add(&u.adjoint()).unwrap().scale_re(0.5))
                    .unwrap()],
            },
            Some(6),
        )
        .unwrap();
        let inv = connection::invert_metric(&g, 16, 1e-7).unwrap();
        let gamma = connection::christoffel(&g, &inv).unwrap();
        let cfg = quick_cfg();
        let op = op_seminorm(&g, &gamma, &x, NormChoice::L2, &cfg).unwrap();
        let combined = op.estimate.interval.upper;

        // Brute-force joint grid over the mixed ball N(r) + ‖b‖ <= 1.
        let mut rng = DetRng::new(12, 0);
        let mut worst = 0.0f64;
        for i in 0..12 {
            let w = i as f64 / 11.0;
            for _ in 0..6 {
                let r = vec![w * if rng.unit() < 0.5 { -1.0 } else { 1.0 }];
                let k = vec![1 + (rng.next_u64() % 2) as i32];
                let m = TorusElement::monomial(&th, &k, rng.complex()).unwrap();
                let b_raw = m.sub(&m.adjoint()).unwrap().scale_re(0.5).traceless_part();
                if b_raw.is_zero() {
                    continue;
                }
                let ub = gns::norm_interval(&b_raw, &cfg.gns).unwrap().upper;
                let b = b_raw.scale_re((1.0 - w) / ub);
                let delta = Derivation::new(r, b).unwrap();
                let dz = connection::covariant_derivative(&gamma, &delta, &x).unwrap();
                let val = geometry::norm_g(&g, &dz, &cfg.gns).unwrap().lower;
                worst = worst.max(val);
            }
        }
        assert!(
            worst <= combined + 1e-6,
            "joint grid {} exceeds decomposition {}",
            worst,
            combined
        );
    }

    #[test]
    fn d_norm_scaling_law() {
        let th = theta2(0.37);
        let mut rng = DetRng::new(21, 0);
        let h = random_self_adjoint(&mut rng, &th, 2).scale_re(0.5);
        let g = MetricMatrix::make(&MetricSpec::Conformal { h, epsilon: 1.0 }, Some(2)).unwrap();
        let cfg = quick_cfg();

        let build = |r: f64| {
            let gr = g.scale(r).unwrap();
            let inv = connection::invert_metric(&gr, 8, 1e-5 / r).unwrap();
            let gamma = connection::christoffel(&gr, &inv).unwrap();
            (gr, gamma)
        };
        let (g2, gamma2) = build(2.0);
        let (g5, gamma5) = build(5.0);

        for _ in 0..3 {
            let comps: Vec<TorusElement> = (0..2)
                .map(|_| {
                    TorusElement::from_coeffs(
                        &th,
                        (0..2).map(|_| {
                            (vec![rng.int_in(-1, 1), rng.int_in(-1, 1)], rng.complex())
                        }),
                    )
                    .unwrap()
                })
                .collect();
            let x = ModuleVector::new(comps).unwrap();
            let d2 = d_norm(&g2, &gamma2, &x, NormChoice::L2, &cfg).unwrap();
            let d5 = d_norm(&g5, &gamma5, &x, NormChoice::L2, &cfg).unwrap();
            let a = d2.estimate.interval.scale(1.0 / math::sqrt(2.0));
            let b = d5.estimate.interval.scale(1.0 / math::sqrt(5.0));
            let slack = 1e-9 * (1.0 + a.upper.max(b.upper));
            assert!(
                a.lower <= b.upper + slack && b.lower <= a.upper + slack,
                "scaling: [{},{}] vs [{},{}]",
                a.lower,
                a.upper,
                b.lower,
                b.upper
            );
        }
    }

    #[test]
    fn inequality_checks_on_simple_inputs() {
        let th = theta2(0.3);
        let (g, gamma) = flat_context(&th);
        let cfg = quick_cfg();
        let ek = ModuleVector::basis(&th, 0).unwrap();

        let one = TorusElement::one(&th);
        let rep = check_g_inequality(&g, &gamma, &one, &ek, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert!(rep.passed, "{rep:?}");

        let zero = TorusElement::zero(&th);
        let rep = check_g_inequality(&g, &gamma, &zero, &ek, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert_eq!(rep.lhs_lower, 0.0);
        assert!(rep.passed);

        let (main, sharp) =
            check_h_inequality(&g, &gamma, &ek, &ek, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert_eq!(main.lhs_lower, 0.0);
        assert!(main.passed && sharp.passed);

        let mut rng = DetRng::new(44, 0);
        let a = random_self_adjoint(&mut rng, &th, 3);
        let (jordan, lie) = check_leibniz(&a, &one, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert!(jordan.passed && lie.passed);
        let (_, lie) = check_leibniz(&a, &a, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert_eq!(lie.lhs_lower, 0.0);
    }

    #[test]
    fn random_fixture_inequalities_hold() {
        let th = theta2(0.58);
        let mut rng = DetRng::new(7, 0);
        let cfg = quick_cfg();
        let h = random_self_adjoint(&mut rng, &th, 2).scale_re(0.5);
        let g = MetricMatrix::make(&MetricSpec::Conformal { h, epsilon: 1.0 }, Some(2)).unwrap();
        let inv = connection::invert_metric(&g, 8, 1e-4).unwrap();
        let gamma = connection::christoffel(&g, &inv).unwrap();

        for _ in 0..3 {
            let a = random_self_adjoint(&mut rng, &th, 3);
            let comps: Vec<TorusElement> = (0..2)
                .map(|_| {
                    TorusElement::from_coeffs(
                        &th,
                        (0..2).map(|_| {
                            (vec![rng.int_in(-1, 1), rng.int_in(-1, 1)], rng.complex())
                        }),
                    )
                    .unwrap()
                })
                .collect();
            let x = ModuleVector::new(comps).unwrap();
            let y = {
                let comps: Vec<TorusElement> = (0..2)
                    .map(|_| {
                        TorusElement::from_coeffs(
                            &th,
                            (0..2).map(|_| {
                                (vec![rng.int_in(-1, 1), rng.int_in(-1, 1)], rng.complex())
                            }),
                        )
                        .unwrap()
                    })
                    .collect();
                ModuleVector::new(comps).unwrap()
            };

            let rep = check_g_inequality(&g, &gamma, &a, &x, NormChoice::L2, &cfg, 1e-6).unwrap();
            assert!(rep.passed, "G failed: {rep:?}");
            let (main, sharp) =
                check_h_inequality(&g, &gamma, &x, &y, NormChoice::L2, &cfg, 1e-6).unwrap();
            assert!(main.passed, "H failed: {main:?}");
            assert!(sharp.passed, "H gradient form failed: {sharp:?}");

            let b = random_self_adjoint(&mut rng, &th, 3);
            let (jordan, lie) = check_leibniz(&a, &b, NormChoice::L2, &cfg, 1e-6).unwrap();
            assert!(jordan.passed && lie.passed);

            let bb = {
                let m = TorusElement::monomial(&th, &[1, 0], rng.complex()).unwrap();
                m.sub(&m.adjoint()).unwrap().scale_re(0.5).traceless_part()
            };
            let delta = Derivation::new(vec![rng.signed_unit(), rng.signed_unit()], bb).unwrap();
            let rep = check_derivation_bound(&a, &delta, NormChoice::L2, &cfg, 1e-6).unwrap();
            assert!(rep.passed, "derivation bound failed: {rep:?}");
        }
    }

    #[test]
    fn h_inequality_is_swap_symmetric() {
        let th = theta2(0.26);
        let mut rng = DetRng::new(64, 0);
        let (g, gamma) = flat_context(&th);
        let cfg = quick_cfg();
        let mk = |rng: &mut DetRng| {
            let comps: Vec<TorusElement> = (0..2)
                .map(|_| {
                    TorusElement::from_coeffs(
                        &th,
                        (0..2).map(|_| {
                            (vec![rng.int_in(-1, 1), rng.int_in(-1, 1)], rng.complex())
                        }),
                    )
                    .unwrap()
                })
                .collect();
            ModuleVector::new(comps).unwrap()
        };
        let x = mk(&mut rng);
        let y = mk(&mut rng);
        let (a, _) = check_h_inequality(&g, &gamma, &x, &y, NormChoice::L2, &cfg, 1e-6).unwrap();
        let (b, _) = check_h_inequality(&g, &gamma, &y, &x, NormChoice::L2, &cfg, 1e-6).unwrap();
        assert!((a.lhs_lower - b.lhs_lower).abs() < 1e-9);
        assert!((a.rhs_upper - b.rhs_upper).abs() < 1e-9);
    }
}
