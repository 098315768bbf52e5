//! Command execution: builds core objects from a fixture plus flag
//! overrides, runs the requested check, and renders one report record.
//!
//! Structured output is a single JSON object with sorted keys and no
//! timing data, so a fixed fixture and seed reproduce it byte for byte.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use qtorus_core::algebra::{ThetaMatrix, TorusElement};
use qtorus_core::connection::{self, Derivation};
use qtorus_core::geometry::MetricMatrix;
use qtorus_core::gns::{self, GnsConfig, NormInterval};
use qtorus_core::norms::NormChoice;
use qtorus_core::propinquity::{self, QuantityConfig};
use qtorus_core::rng::DetRng;
use qtorus_core::seminorms::{self, SearchConfig};

use crate::fixture::{Fixture, FixtureError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    AlgebraCheck,
    Norm,
    MetricValidate,
    ConnectionCompute,
    ConnectionCheck,
    SeminormL,
    SeminormD,
    InequalityG,
    InequalityH,
    InequalityLeibniz,
    InequalityLemma45,
    BridgeScaling,
    BridgeReport,
    IsometryCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::AlgebraCheck => "algebra check",
            Command::Norm => "norm",
            Command::MetricValidate => "metric validate",
            Command::ConnectionCompute => "connection compute",
            Command::ConnectionCheck => "connection check",
            Command::SeminormL => "seminorm L",
            Command::SeminormD => "seminorm D",
            Command::InequalityG => "inequality G",
            Command::InequalityH => "inequality H",
            Command::InequalityLeibniz => "inequality leibniz",
            Command::InequalityLemma45 => "inequality lemma45",
            Command::BridgeScaling => "bridge scaling",
            Command::BridgeReport => "bridge report",
            Command::IsometryCheck => "isometry check",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: Command,
    pub fixture_path: PathBuf,
    pub radius: Option<i32>,
    pub tol: Option<f64>,
    pub norm: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub record: Value,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// Bad fixture or flags: exit code 2.
    #[error("{0}")]
    Input(String),
    /// The computation itself failed on valid input: exit code 1.
    #[error("{0}")]
    Compute(String),
}

impl From<FixtureError> for RunError {
    fn from(e: FixtureError) -> Self {
        RunError::Input(e.to_string())
    }
}

fn compute_err<E: std::fmt::Display>(e: E) -> RunError {
    RunError::Compute(e.to_string())
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(format!("{x}"))
    }
}

fn interval_json(iv: &NormInterval) -> Value {
    json!({
        "lower": finite(iv.lower),
        "upper": finite(iv.upper),
        "width": finite(iv.width()),
        "radius": iv.radius,
        "converged": iv.converged,
    })
}

fn estimate_json(est: &seminorms::SeminormEstimate) -> Value {
    let mut m = Map::new();
    m.insert("interval".into(), interval_json(&est.interval));
    m.insert("method".into(), json!(est.method.name()));
    m.insert("gap".into(), finite(est.gap));
    if let Some(r) = &est.witness.r {
        m.insert("witness_r".into(), json!(r));
    }
    Value::Object(m)
}

fn inequality_json(rep: &seminorms::InequalityReport) -> Value {
    json!({
        "name": rep.name,
        "lhs_lower": finite(rep.lhs_lower),
        "rhs_upper": finite(rep.rhs_upper),
        "tol": finite(rep.tol),
        "passed": rep.passed,
    })
}

struct Context {
    fixture: Fixture,
    theta: Arc<ThetaMatrix>,
    gns: GnsConfig,
    norm_choice: NormChoice,
    tol: f64,
    inv: Invocation,
}

impl Context {
    fn build(inv: &Invocation) -> Result<Context, RunError> {
        let fixture = Fixture::load(&inv.fixture_path)?;
        let theta = fixture.theta()?;
        let gns = fixture.gns_config(inv.radius, inv.tol, inv.seed)?;
        let norm_choice = fixture.norm_choice(inv.norm.as_deref())?;
        let tol = inv.tol.or(fixture.tol).unwrap_or(1e-6);
        Ok(Context {
            fixture,
            theta,
            gns,
            norm_choice,
            tol,
            inv: inv.clone(),
        })
    }

    fn search_config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::economical();
        cfg.gns = self.gns.clone();
        cfg
    }

    fn metric(&self) -> Result<MetricMatrix, RunError> {
        Ok(self.fixture.metric(&self.theta, None)?)
    }

    /// Builds the Christoffel data. `tol_is_residual` is set by the
    /// connection commands, where the `--tol` flag addresses the inversion
    /// itself; other commands treat `--tol` as their check tolerance and
    /// fall back to `inverse_tol`.
    fn connection(
        &self,
        g: &MetricMatrix,
        tol_is_residual: bool,
    ) -> Result<qtorus_core::connection::ChristoffelTensor, RunError> {
        let radius = self
            .inv
            .radius
            .or(self.fixture.radius)
            .unwrap_or_else(|| connection::default_inverse_radius(g).max(8));
        let tol = if tol_is_residual {
            self.inv.tol.or(self.fixture.tol).unwrap_or(1e-4)
        } else {
            self.fixture.inverse_tol.unwrap_or(1e-4)
        };
        let inv = connection::invert_metric(g, radius, tol).map_err(compute_err)?;
        connection::christoffel(g, &inv).map_err(compute_err)
    }
}

pub fn execute(inv: &Invocation) -> Result<Outcome, RunError> {
    let ctx = Context::build(inv)?;
    let (passed, result) = match inv.command {
        Command::AlgebraCheck => run_algebra_check(&ctx)?,
        Command::Norm => run_norm(&ctx)?,
        Command::MetricValidate => run_metric_validate(&ctx)?,
        Command::ConnectionCompute => run_connection_compute(&ctx)?,
        Command::ConnectionCheck => run_connection_check(&ctx)?,
        Command::SeminormL => run_seminorm_l(&ctx)?,
        Command::SeminormD => run_seminorm_d(&ctx)?,
        Command::InequalityG => run_inequality_g(&ctx)?,
        Command::InequalityH => run_inequality_h(&ctx)?,
        Command::InequalityLeibniz => run_inequality_leibniz(&ctx)?,
        Command::InequalityLemma45 => run_inequality_derivation_bound(&ctx)?,
        Command::BridgeScaling => run_bridge_scaling(&ctx)?,
        Command::BridgeReport => run_bridge_report(&ctx)?,
        Command::IsometryCheck => run_isometry_check(&ctx)?,
    };
    let record = json!({
        "command": inv.command.name(),
        "fixture": inv.fixture_path.display().to_string(),
        "seed": ctx.gns.seed,
        "status": if passed { "pass" } else { "fail" },
        "result": result,
    });
    Ok(Outcome { passed, record })
}

/// Renders the sorted-key single-record structured report.
pub fn render_structured(outcome: &Outcome) -> String {
    let mut s = serde_json::to_string(&outcome.record).expect("report is serializable");
    s.push('\n');
    s
}

/// Renders an indented human-readable report (timing is added by the
/// binary, never part of the record).
pub fn render_text(outcome: &Outcome) -> String {
    let mut out = String::new();
    fn walk(out: &mut String, key: &str, v: &Value, depth: usize) {
        let pad = "  ".repeat(depth);
        match v {
            Value::Object(m) => {
                let _ = writeln!(out, "{pad}{key}:");
                for (k, v) in m {
                    walk(out, k, v, depth + 1);
                }
            }
            Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
                let flat: Vec<String> = items.iter().map(render_scalar).collect();
                let _ = writeln!(out, "{pad}{key}: [{}]", flat.join(", "));
            }
            Value::Array(items) => {
                let _ = writeln!(out, "{pad}{key}:");
                for (i, item) in items.iter().enumerate() {
                    walk(out, &i.to_string(), item, depth + 1);
                }
            }
            other => {
                let _ = writeln!(out, "{pad}{key}: {}", render_scalar(other));
            }
        }
    }
    fn render_scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    if let Value::Object(m) = &outcome.record {
        for (k, v) in m {
            walk(&mut out, k, v, 0);
        }
    }
    out
}

fn random_element(
    rng: &mut DetRng,
    theta: &Arc<ThetaMatrix>,
    terms: usize,
    radius: i32,
) -> TorusElement {
    let n = theta.n();
    let coeffs: Vec<(Vec<i32>, qtorus_core::Complex64)> = (0..terms)
        .map(|_| {
            let k: Vec<i32> = (0..n).map(|_| rng.int_in(-radius, radius)).collect();
            (k, rng.complex())
        })
        .collect();
    TorusElement::from_coeffs(theta, coeffs).expect("coefficients are valid")
}

fn run_algebra_check(ctx: &Context) -> Result<(bool, Value), RunError> {
    let theta = &ctx.theta;
    let n = theta.n();
    let instances = ctx.fixture.instances.unwrap_or(100);
    let tol = ctx.inv.tol.unwrap_or(1e-12);
    let mut rng = DetRng::new(ctx.gns.seed, 0xa1);
    let mut worst = 0.0f64;

    for _ in 0..instances {
        let p: Vec<i32> = (0..n).map(|_| rng.int_in(-3, 3)).collect();
        let q: Vec<i32> = (0..n).map(|_| rng.int_in(-3, 3)).collect();
        let one = qtorus_core::Complex64::new(1.0, 0.0);
        let up = TorusElement::monomial(theta, &p, one).map_err(compute_err)?;
        let uq = TorusElement::monomial(theta, &q, one).map_err(compute_err)?;
        let prod = up.multiply(&uq).map_err(compute_err)?;
        let pq: Vec<i32> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
        let expected =
            TorusElement::monomial(theta, &pq, theta.lambda(&p, &q)).map_err(compute_err)?;
        worst = worst.max(prod.max_coeff_diff(&expected).map_err(compute_err)?);

        let a = random_element(&mut rng, theta, 3, 2);
        let b = random_element(&mut rng, theta, 3, 2);
        let scale = 1.0 + a.l1_norm() * b.l1_norm();

        let adj = a.multiply(&b).map_err(compute_err)?.adjoint();
        let rev = b.adjoint().multiply(&a.adjoint()).map_err(compute_err)?;
        worst = worst.max(adj.max_coeff_diff(&rev).map_err(compute_err)? / scale);

        let sq = a.adjoint().multiply(&a).map_err(compute_err)?.trace();
        let direct: f64 = a.iter().map(|(_, c)| c.norm_sqr()).sum();
        worst = worst.max((sq.re - direct).abs() / (1.0 + direct));
        worst = worst.max(sq.im.abs() / (1.0 + direct));

        let lhs = a.multiply(&b).map_err(compute_err)?.derive(0).map_err(compute_err)?;
        let rhs = a
            .derive(0)
            .map_err(compute_err)?
            .multiply(&b)
            .map_err(compute_err)?
            .add(&a.multiply(&b.derive(0).map_err(compute_err)?).map_err(compute_err)?)
            .map_err(compute_err)?;
        let dscale = 1.0 + lhs.l1_norm();
        worst = worst.max(lhs.max_coeff_diff(&rhs).map_err(compute_err)? / dscale);

        let s: Vec<f64> = (0..n).map(|_| 0.5 * rng.signed_unit()).collect();
        let t: Vec<f64> = (0..n).map(|_| 0.5 * rng.signed_unit()).collect();
        let both = a
            .act(&s)
            .map_err(compute_err)?
            .act(&t)
            .map_err(compute_err)?;
        let sum: Vec<f64> = s.iter().zip(&t).map(|(x, y)| x + y).collect();
        let direct = a.act(&sum).map_err(compute_err)?;
        worst = worst.max(both.max_coeff_diff(&direct).map_err(compute_err)? / (1.0 + a.l1_norm()));
    }

    let passed = worst <= tol;
    Ok((
        passed,
        json!({
            "instances": instances,
            "max_defect": finite(worst),
            "tol": finite(tol),
        }),
    ))
}

fn run_norm(ctx: &Context) -> Result<(bool, Value), RunError> {
    let a = ctx.fixture.element(&ctx.theta)?;
    let iv = gns::norm_interval(&a, &ctx.gns).map_err(compute_err)?;
    Ok((true, interval_json(&iv)))
}

fn run_metric_validate(ctx: &Context) -> Result<(bool, Value), RunError> {
    if ctx.fixture.metric.is_none() {
        return Err(RunError::Input("fixture has no `metric`".into()));
    }
    match ctx.fixture.metric(&ctx.theta, ctx.inv.radius) {
        Ok(g) => {
            let ev = g.evidence();
            Ok((
                true,
                json!({
                    "accepted": true,
                    "min_eig": finite(ev.min_eig),
                    "verdict": ev.verdict.name(),
                    "dim": ev.dim,
                    "radius": ev.radius,
                }),
            ))
        }
        Err(e) => Ok((false, json!({ "accepted": false, "reason": e.to_string() }))),
    }
}

fn run_connection_compute(ctx: &Context) -> Result<(bool, Value), RunError> {
    let g = ctx.metric()?;
    let gamma = ctx.connection(&g, true)?;
    let n = g.n();
    let mut max_l1 = 0.0f64;
    for m in 0..n {
        for j in 0..n {
            for k in 0..n {
                max_l1 = max_l1.max(gamma.gamma(m, j, k).l1_norm());
            }
        }
    }
    Ok((
        true,
        json!({
            "eta": finite(gamma.eta()),
            "torsion_defect": finite(gamma.torsion_defect()),
            "max_entry_l1": finite(max_l1),
        }),
    ))
}

fn run_connection_check(ctx: &Context) -> Result<(bool, Value), RunError> {
    let g = ctx.metric()?;
    let gamma = ctx.connection(&g, true)?;
    let samples = ctx.fixture.samples.unwrap_or(6);
    let report = connection::check_axioms(&g, &gamma, samples, &ctx.gns).map_err(compute_err)?;
    let worst = report
        .compatibility
        .iter()
        .map(|s| s.residual_upper)
        .fold(0.0f64, f64::max);
    let bound = 10.0 * report.eta + 1e-12;
    let passed = report.torsion_defect <= 1e-12 && worst <= bound;
    Ok((
        passed,
        json!({
            "torsion_defect": finite(report.torsion_defect),
            "self_adjoint_defect": finite(report.self_adjoint_defect),
            "eta": finite(report.eta),
            "worst_compatibility_residual": finite(worst),
            "compatibility_bound": finite(bound),
            "samples": report.compatibility.len(),
        }),
    ))
}

fn run_seminorm_l(ctx: &Context) -> Result<(bool, Value), RunError> {
    let a = ctx.fixture.element(&ctx.theta)?;
    let cfg = ctx.search_config();
    let est = seminorms::lipschitz_l(&a, ctx.norm_choice, &cfg).map_err(compute_err)?;
    Ok((true, estimate_json(&est)))
}

fn run_seminorm_d(ctx: &Context) -> Result<(bool, Value), RunError> {
    let g = ctx.metric()?;
    let gamma = ctx.connection(&g, false)?;
    let x = ctx.fixture.vector_x(&ctx.theta)?;
    let cfg = ctx.search_config();
    let d = seminorms::d_norm(&g, &gamma, &x, ctx.norm_choice, &cfg).map_err(compute_err)?;
    Ok((
        true,
        json!({
            "d": estimate_json(&d.estimate),
            "module_norm": interval_json(&d.module_norm),
            "gradient_part": estimate_json(&d.gradient_part),
            "commutator_part": estimate_json(&d.commutator_part),
            "gradient_surrogate": interval_json(&d.gradient_surrogate),
        }),
    ))
}

fn run_inequality_g(ctx: &Context) -> Result<(bool, Value), RunError> {
    let g = ctx.metric()?;
    let gamma = ctx.connection(&g, false)?;
    let a = ctx.fixture.element(&ctx.theta)?;
    let x = ctx.fixture.vector_x(&ctx.theta)?;
    let cfg = ctx.search_config();
    let rep = seminorms::check_g_inequality(&g, &gamma, &a, &x, ctx.norm_choice, &cfg, ctx.tol)
        .map_err(compute_err)?;
    Ok((rep.passed, inequality_json(&rep)))
}

fn run_inequality_h(ctx: &Context) -> Result<(bool, Value), RunError> {
    let g = ctx.metric()?;
    let gamma = ctx.connection(&g, false)?;
    let x = ctx.fixture.vector_x(&ctx.theta)?;
    let y = ctx.fixture.vector_y(&ctx.theta)?;
    let cfg = ctx.search_config();
    let (main, sharp) =
        seminorms::check_h_inequality(&g, &gamma, &x, &y, ctx.norm_choice, &cfg, ctx.tol)
            .map_err(compute_err)?;
    let passed = main.passed && sharp.passed;
    Ok((
        passed,
        json!({
            "main": inequality_json(&main),
            "gradient_form": inequality_json(&sharp),
        }),
    ))
}

fn run_inequality_leibniz(ctx: &Context) -> Result<(bool, Value), RunError> {
    let a = ctx.fixture.element(&ctx.theta)?;
    let b = ctx.fixture.element_b(&ctx.theta)?;
    let cfg = ctx.search_config();
    let (jordan, lie) =
        seminorms::check_leibniz(&a, &b, ctx.norm_choice, &cfg, ctx.tol).map_err(compute_err)?;
    let passed = jordan.passed && lie.passed;
    Ok((
        passed,
        json!({
            "jordan": inequality_json(&jordan),
            "lie": inequality_json(&lie),
        }),
    ))
}

fn run_inequality_derivation_bound(ctx: &Context) -> Result<(bool, Value), RunError> {
    let a = ctx.fixture.element(&ctx.theta)?;
    let delta = if ctx.fixture.derivation.is_some() {
        ctx.fixture.derivation(&ctx.theta)?
    } else {
        Derivation::partial(&ctx.theta, 0).map_err(compute_err)?
    };
    let cfg = ctx.search_config();
    let rep = seminorms::check_derivation_bound(&a, &delta, ctx.norm_choice, &cfg, ctx.tol)
        .map_err(compute_err)?;
    Ok((rep.passed, inequality_json(&rep)))
}

fn scaling_inputs(ctx: &Context) -> Result<(MetricMatrix, f64, f64), RunError> {
    let g = ctx.metric()?;
    let r = ctx
        .fixture
        .r
        .ok_or_else(|| RunError::Input("fixture has no `r`".into()))?;
    let s = ctx
        .fixture
        .s
        .ok_or_else(|| RunError::Input("fixture has no `s`".into()))?;
    Ok((g, r, s))
}

fn run_bridge_scaling(ctx: &Context) -> Result<(bool, Value), RunError> {
    let (g, r, s) = scaling_inputs(ctx)?;
    let anchors = ctx.fixture.anchors.unwrap_or(8);
    let cfg = ctx.search_config();
    let bridge = propinquity::scaling_bridge(&g, r, s, anchors, &cfg).map_err(compute_err)?;
    let bounds: Vec<Value> = bridge
        .anchors
        .iter()
        .map(|p| json!([finite(p.alpha_bound), finite(p.beta_bound)]))
        .collect();
    Ok((
        true,
        json!({
            "r": finite(r),
            "s": finite(s),
            "anchor_count": bridge.anchors.len(),
            "pivot_norm": interval_json(&bridge.pivot_norm),
            "anchor_bounds": bounds,
        }),
    ))
}

fn run_bridge_report(ctx: &Context) -> Result<(bool, Value), RunError> {
    let (g, r, s) = scaling_inputs(ctx)?;
    let anchors = ctx.fixture.anchors.unwrap_or(8);
    let cfg = ctx.search_config();
    let bridge = propinquity::scaling_bridge(&g, r, s, anchors, &cfg).map_err(compute_err)?;
    let qcfg = QuantityConfig {
        gns: ctx.gns.clone(),
        seed: ctx.gns.seed,
        ..QuantityConfig::default()
    };
    let report = propinquity::bridge_quantities(&bridge, &qcfg).map_err(compute_err)?;
    let quantity = |q: &propinquity::QuantityValue| {
        json!({
            "value": finite(q.value),
            "structural": q.structural,
            "justification": q.justification,
        })
    };
    let deck: Vec<Value> = report.deck.iter().map(|d| finite(*d)).collect();
    let passed = match ctx.inv.tol.or(ctx.fixture.tol) {
        Some(tol) => report.length.value <= tol,
        None => true,
    };
    Ok((
        passed,
        json!({
            "pivot_norm": interval_json(&report.pivot_norm),
            "basic_reach": quantity(&report.basic_reach),
            "height": quantity(&report.height),
            "deck": deck,
            "modular_reach": quantity(&report.modular_reach),
            "imprint": quantity(&report.imprint),
            "reach": quantity(&report.reach),
            "length": quantity(&report.length),
        }),
    ))
}

fn run_isometry_check(ctx: &Context) -> Result<(bool, Value), RunError> {
    let (g, r, s) = scaling_inputs(ctx)?;
    let samples = ctx.fixture.samples.unwrap_or(3);
    let cfg = ctx.search_config();
    let report = propinquity::isometry_check(&g, r, s, samples, &cfg).map_err(compute_err)?;
    let passed = report.lipschitz_defect <= 1e-12
        && report.action_defect <= 1e-12
        && report.inner_defect <= 1e-12
        && report.dnorm_overlap;
    let pairs: Vec<Value> = report
        .dnorm_pairs
        .iter()
        .map(|(a, b)| json!({ "mapped": interval_json(a), "source": interval_json(b) }))
        .collect();
    Ok((
        passed,
        json!({
            "lipschitz_defect": finite(report.lipschitz_defect),
            "action_defect": finite(report.action_defect),
            "inner_defect": finite(report.inner_defect),
            "dnorm_overlap": report.dnorm_overlap,
            "dnorm_pairs": pairs,
            "samples": samples,
        }),
    ))
}
