#![allow(dead_code)]

use funk_finsler::{klein_radius, Point2, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 42;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Uniform point in the centred disc of the given radius.
pub fn point_in_disc(rng: &mut impl Rng, radius: f64) -> Point2 {
    let rho = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Vec2::new(rho * theta.cos(), rho * theta.sin())
}

/// Uniform point in `|x| ≤ tanh 1 − margin`.
pub fn klein_point(rng: &mut impl Rng, margin: f64) -> Point2 {
    point_in_disc(rng, klein_radius() - margin)
}

/// Uniform point in the disc `D_E(c, radius)`.
pub fn point_in_disc_at(rng: &mut impl Rng, center: Point2, radius: f64) -> Point2 {
    center + point_in_disc(rng, radius)
}

/// Random direction with length in `[0.2, 2]`.
pub fn vector(rng: &mut impl Rng) -> Vec2 {
    let len = rng.gen_range(0.2..2.0);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Vec2::new(len * theta.cos(), len * theta.sin())
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
