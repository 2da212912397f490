//! Sampled verification suites.

use std::io::Write;

use funk_finsler::curvature::{
    classify, funk_density, riemann_closed, riemann_numeric, s_curvature_closed, s_curvature_numeric,
};
use funk_finsler::geodesic::{segment_length, spray_closed, spray_numeric};
use funk_finsler::klein::{self, funk_distance, funk_metric, funk_metric_cothdef};
use funk_finsler::models::{
    funk_poincare, funk_poincare_pullback, funk_upper, funk_upper_printed, funk_upper_pullback, isometry_check,
    poincare_radius, pullback, upper_disc, Ambient, AmbientMetric, ChartMap, PoincareNorm, UpperHalfNorm,
};
use funk_finsler::parse::SuiteName;
use funk_finsler::zermelo::{from_navigation, to_navigation, wind_norm_sq_printed};
use funk_finsler::{klein_radius, KleinFunk, KleinNorm, Point2, Vec2};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::num::{field, text};
use crate::sample::{point, rng, vector};
use crate::{CliError, Verdict};

/// Sampled points stay this far inside the boundary of their domain.
pub const MARGIN: f64 = 1e-3;

/// Outcome of one check: the largest residual seen and its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub max: f64,
    pub tol: f64,
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        self.max <= self.tol
    }
}

/// Largest value of `f` over the samples; a failed or non-finite
/// evaluation counts as infinite.
fn worst<T: Sync>(samples: &[T], f: impl Fn(&T) -> Option<f64> + Sync) -> f64 {
    samples
        .par_iter()
        .map(|s| f(s).filter(|v| v.is_finite()).unwrap_or(f64::INFINITY))
        .reduce(|| 0.0, f64::max)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn klein_samples(rng: &mut ChaCha8Rng, n: usize) -> Vec<(Point2, Vec2)> {
    (0..n)
        .map(|_| (point(rng, Vec2::ZERO, klein_radius() - MARGIN), vector(rng)))
        .collect()
}

fn samples_in(rng: &mut ChaCha8Rng, n: usize, center: Point2, radius: f64) -> Vec<(Point2, Vec2)> {
    (0..n).map(|_| (point(rng, center, radius), vector(rng))).collect()
}

pub fn pullbacks(seed: u64, n: usize) -> Vec<CheckResult> {
    let fl = AmbientMetric::lorentz_randers();
    let fp = AmbientMetric::hemisphere_randers();
    let (eta, psi) = (ChartMap::hyperboloid(), ChartMap::hemisphere());
    let s1 = klein_samples(&mut rng(seed, 1), n);
    let s2 = klein_samples(&mut rng(seed, 2), n);
    let s3 = samples_in(&mut rng(seed, 3), n, Vec2::ZERO, poincare_radius() - MARGIN);
    let (c, rad) = upper_disc();
    let s4 = samples_in(&mut rng(seed, 4), n, c, rad - MARGIN);
    let r = |suite, name, max| CheckResult {
        suite,
        name,
        max,
        tol: 1e-9,
    };
    vec![
        r(
            "pullbacks",
            "eta_lorentz_randers",
            worst(&s1, |&(x, xi)| {
                let v = pullback(&eta, Ambient::Space(&fl), x, xi).ok().filter(|v| *v > 0.0)?;
                Some(rel(v, funk_metric(x, xi).ok()?))
            }),
        ),
        r(
            "pullbacks",
            "psi_hemisphere_randers",
            worst(&s2, |&(x, xi)| {
                Some(rel(
                    pullback(&psi, Ambient::Space(&fp), x, xi).ok()?,
                    funk_metric(x, xi).ok()?,
                ))
            }),
        ),
        r(
            "pullbacks",
            "f_poincare_funk",
            worst(&s3, |&(x, xi)| {
                Some(rel(funk_poincare(x, xi).ok()?, funk_poincare_pullback(x, xi).ok()?))
            }),
        ),
        r(
            "pullbacks",
            "g_inv_upper_funk",
            worst(&s4, |&(x, xi)| {
                Some(rel(funk_upper(x, xi).ok()?, funk_upper_pullback(x, xi).ok()?))
            }),
        ),
    ]
}

pub fn isometries(seed: u64, n: usize) -> Vec<CheckResult> {
    let s1 = samples_in(&mut rng(seed, 11), n, Vec2::ZERO, 0.9);
    let s2 = samples_in(&mut rng(seed, 12), n, Vec2::ZERO, 0.9);
    let unit = KleinNorm::unit();
    vec![
        CheckResult {
            suite: "isometries",
            name: "g_klein_to_upper_half",
            max: isometry_check(&ChartMap::klein_to_upper(), &unit, &UpperHalfNorm, &s1),
            tol: 1e-9,
        },
        CheckResult {
            suite: "isometries",
            name: "f_poincare_to_klein",
            max: isometry_check(&ChartMap::poincare_to_klein(), &PoincareNorm, &unit, &s2),
            tol: 1e-9,
        },
    ]
}

pub fn oracles(seed: u64, n: usize) -> Vec<CheckResult> {
    let s = klein_samples(&mut rng(seed, 21), n);
    let mut pr = rng(seed, 22);
    let pairs: Vec<(Point2, Point2)> = (0..n)
        .map(|_| {
            let a = point(&mut pr, Vec2::ZERO, klein_radius() - MARGIN);
            (a, point(&mut pr, Vec2::ZERO, klein_radius() - MARGIN))
        })
        .collect();
    let r = |name, max, tol| CheckResult {
        suite: "oracles",
        name,
        max,
        tol,
    };
    let classified = worst(&s, |&(x, _)| {
        let c = classify(x).ok()?;
        Some(if c.douglas && !c.berwald { 0.0 } else { 1.0 })
    });
    vec![
        r(
            "cothdef_definition",
            worst(&s, |&(x, xi)| {
                Some(rel(funk_metric_cothdef(x, xi).ok()?, funk_metric(x, xi).ok()?))
            }),
            1e-9,
        ),
        r(
            "distance_segment_length",
            worst(&pairs, |&(a, b)| {
                Some((funk_distance(a, b).ok()? - segment_length(&KleinFunk, a, b).ok()?).abs())
            }),
            1e-6,
        ),
        r(
            "spray_numeric",
            worst(&s, |&(x, xi)| {
                let c = spray_closed(x, xi).ok()?;
                Some((spray_numeric(&KleinFunk, x, xi).ok()? - c).norm() / c.norm())
            }),
            1e-5,
        ),
        r(
            "s_curvature_numeric",
            worst(&s, |&(x, xi)| {
                let c = s_curvature_closed(x, xi).ok()?;
                Some((s_curvature_numeric(&KleinFunk, funk_density, x, xi).ok()? - c).abs() / c.abs().max(1.0))
            }),
            1e-4,
        ),
        r(
            "flag_curvature_numeric",
            worst(&s, |&(x, xi)| {
                let rep = riemann_closed(x, xi).ok()?;
                let k = riemann_numeric(&KleinFunk, x, xi).ok()?.trace() / (rep.f * rep.f);
                Some((k - rep.k).abs() / rep.k.abs().max(1.0))
            }),
            1e-3,
        ),
        r("douglas_not_berwald", classified, 0.0),
    ]
}

pub fn zermelo(seed: u64, n: usize) -> Vec<CheckResult> {
    let s = klein_samples(&mut rng(seed, 31), n);
    vec![
        CheckResult {
            suite: "zermelo",
            name: "navigation_round_trip",
            max: worst(&s, |&(x, xi)| {
                let f = funk_metric(x, xi).ok()?;
                Some((from_navigation(&to_navigation(x).ok()?, xi).ok()? - f).abs() / f.max(1.0))
            }),
            tol: 1e-10,
        },
        CheckResult {
            suite: "zermelo",
            name: "wind_norm_equals_beta_norm",
            max: worst(&s, |&(x, _)| {
                let beta = klein::randers_data_at(x).ok()?.beta_norm_sq;
                Some((to_navigation(x).ok()?.wind_norm_sq() - beta).abs())
            }),
            tol: 1e-10,
        },
    ]
}

/// Diagnostic comparison of two commonly printed formulas with the
/// computed ones. Never fails.
fn typo_ledger(seed: u64, n: usize, out: &mut dyn Write) -> std::io::Result<()> {
    let x = Vec2::new(0.3, 0.0);
    let printed = wind_norm_sq_printed(x).ok();
    let computed = to_navigation(x).ok().map(|nav| nav.wind_norm_sq());
    writeln!(
        out,
        "typo-ledger wind_norm_sq x=(0.3,0) printed={} computed={} (diagnostic)",
        field(printed),
        field(computed)
    )?;
    let (c, rad) = upper_disc();
    let s = samples_in(&mut rng(seed, 41), n, c, rad - MARGIN);
    let dev_printed = worst(&s, |&(u, xi)| {
        Some(rel(funk_upper_printed(u, xi).ok()?, funk_upper_pullback(u, xi).ok()?))
    });
    let dev_fixed = worst(&s, |&(u, xi)| {
        Some(rel(funk_upper(u, xi).ok()?, funk_upper_pullback(u, xi).ok()?))
    });
    writeln!(
        out,
        "typo-ledger upper_funk max_rel_dev printed={} corrected={} (diagnostic)",
        field(Some(dev_printed)),
        field(Some(dev_fixed))
    )
}

/// Runs `suite`, one line per check, `typo-ledger` lines last.
pub fn run(suite: SuiteName, seed: u64, samples: usize, out: &mut dyn Write) -> Result<Verdict, CliError> {
    if samples == 0 {
        return Err(funk_finsler::GeomError::InvalidInput("--samples must be positive".into()).into());
    }
    let mut results = Vec::new();
    let all = suite == SuiteName::All;
    if all || suite == SuiteName::Pullbacks {
        results.extend(pullbacks(seed, samples));
    }
    if all || suite == SuiteName::Isometries {
        results.extend(isometries(seed, samples));
    }
    if all || suite == SuiteName::Oracles {
        results.extend(oracles(seed, samples));
    }
    if all || suite == SuiteName::Zermelo {
        results.extend(zermelo(seed, samples));
    }
    for r in &results {
        writeln!(
            out,
            "{} {} max={} tol={} {}",
            r.suite,
            r.name,
            text(r.max),
            text(r.tol),
            if r.pass() { "PASS" } else { "FAIL" }
        )?;
    }
    if all || suite == SuiteName::TypoLedger {
        typo_ledger(seed, samples, out)?;
    }
    Ok(Verdict::from_pass(results.iter().all(CheckResult::pass)))
}
