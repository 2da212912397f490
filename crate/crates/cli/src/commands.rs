//! The data-producing commands.

use std::io::Write;

use funk_finsler::curvature::{riemann_closed, riemann_numeric, s_curvature_numeric};
use funk_finsler::geodesic::{integrate_geodesic, GeodesicOptions, GeodesicSample, GeodesicTrace};
use funk_finsler::parse::{GridSpec, MetricName, XiMode};
use funk_finsler::{Point2, Result, Vec2};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::num::{field, json, json_pair};
use crate::registry::Model;
use crate::{CliError, Verdict};

/// Tolerance of `distance --verify`.
pub const VERIFY_TOL: f64 = 1e-6;
/// Tolerance on the collinearity residual of a geodesic trace.
pub const COLLINEARITY_TOL: f64 = 1e-6;

fn emit(out: &mut dyn Write, record: Map<String, Value>) -> std::io::Result<()> {
    writeln!(out, "{}", Value::Object(record))
}

pub fn eval(metric: MetricName, x: Point2, xi: Vec2, out: &mut dyn Write) -> std::result::Result<Verdict, CliError> {
    let model = Model::new(metric)?;
    model.check(x)?;
    let f = model.metric.eval(x, xi)?;
    let (alpha, beta) = model.metric.randers_split(x, xi).unzip();
    let mut rec = Map::new();
    rec.insert("metric".into(), metric.to_string().into());
    rec.insert("x".into(), json_pair(x));
    rec.insert("xi".into(), json_pair(xi));
    rec.insert("F".into(), json(f));
    rec.insert("alpha".into(), alpha.map_or(Value::Null, json));
    rec.insert("beta".into(), beta.map_or(Value::Null, json));
    emit(out, rec)?;
    Ok(Verdict::Pass)
}

pub fn distance(
    metric: MetricName,
    x: Point2,
    y: Point2,
    verify: bool,
    out: &mut dyn Write,
) -> std::result::Result<Verdict, CliError> {
    let model = Model::new(metric)?;
    let d = model.distance(x, y)?;
    let mut rec = Map::new();
    rec.insert("metric".into(), metric.to_string().into());
    rec.insert("x".into(), json_pair(x));
    rec.insert("y".into(), json_pair(y));
    rec.insert("distance".into(), json(d));
    let mut verdict = Verdict::Pass;
    if verify {
        let length = model.geodesic_length(x, y)?;
        let diff = (length - d).abs();
        rec.insert("length".into(), json(length));
        rec.insert("difference".into(), json(diff));
        rec.insert("tolerance".into(), json(VERIFY_TOL));
        verdict = Verdict::from_pass(diff <= VERIFY_TOL);
    }
    emit(out, rec)?;
    Ok(verdict)
}

/// The trace as seen in the straightening chart, where it should be a line.
fn straightened(model: &Model, trace: &GeodesicTrace) -> Result<GeodesicTrace> {
    let samples = trace
        .samples
        .iter()
        .map(|s| {
            Ok(GeodesicSample {
                t: s.t,
                x: model.to_straight(s.x)?,
                v: model.to_straight_jacobian(s.x)? * s.v,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GeodesicTrace {
        samples,
        terminated: trace.terminated,
    })
}

pub fn geodesic(
    metric: MetricName,
    x0: Point2,
    v0: Vec2,
    t_end: f64,
    step: f64,
    margin: f64,
    out: &mut dyn Write,
) -> std::result::Result<Verdict, CliError> {
    let model = Model::new(metric)?;
    model.check(x0)?;
    let opts = GeodesicOptions {
        t_end,
        step,
        boundary_margin: margin,
    };
    let trace = integrate_geodesic(&*model.metric, x0, v0, &opts)?;
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(["t", "x1", "x2", "v1", "v2", "F"])?;
    for s in &trace.samples {
        let f = model.metric.eval_unchecked(s.x, s.v);
        w.write_record([s.t, s.x.x, s.x.y, s.v.x, s.v.y, f].map(|v| field(Some(v))))?;
    }
    w.flush()?;
    drop(w);
    let residual = straightened(&model, &trace)?.collinearity_residual();
    let drift = trace.speed_drift(&*model.metric);
    writeln!(
        out,
        "# terminated_reason={},collinearity_residual={},speed_drift={},samples={}",
        trace.terminated.as_str(),
        field(Some(residual)),
        field(Some(drift)),
        trace.samples.len()
    )?;
    Ok(Verdict::from_pass(residual <= COLLINEARITY_TOL))
}

/// `(S, Ric, K)` at one grid cell; `None` outside the domain.
fn cell(model: &Model, x: Point2, xi: Vec2, numeric: bool) -> Option<[f64; 3]> {
    if !model.metric.in_domain(x) {
        return None;
    }
    if model.name == MetricName::KleinFunk && !numeric {
        let rep = riemann_closed(x, xi).ok()?;
        return Some([rep.s, rep.ric, rep.k]);
    }
    let s = s_curvature_numeric(&*model.metric, |p| model.density(p), x, xi).ok()?;
    let ric = riemann_numeric(&*model.metric, x, xi).ok()?.trace();
    let f = model.metric.eval_unchecked(x, xi);
    let values = [s, ric, ric / (f * f)];
    values.iter().all(|v| v.is_finite()).then_some(values)
}

pub fn curvature_grid(
    metric: MetricName,
    grid: &GridSpec,
    mode: XiMode,
    numeric: bool,
    out: &mut dyn Write,
) -> std::result::Result<Verdict, CliError> {
    let model = Model::new(metric)?;
    let nodes: Vec<Point2> = grid.nodes().collect();
    let rows: Vec<Option<[f64; 3]>> = nodes
        .par_iter()
        .map(|&x| cell(&model, x, mode.direction(x), numeric))
        .collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x1", "x2", "S", "Ric", "K"])?;
    for (x, row) in nodes.iter().zip(&rows) {
        let [s, ric, k] = row.map_or([None; 3], |r| r.map(Some));
        w.write_record([Some(x.x), Some(x.y), s, ric, k].map(field))?;
    }
    w.flush()?;
    Ok(Verdict::Pass)
}
