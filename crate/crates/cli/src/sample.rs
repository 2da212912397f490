use funk_finsler::{Point2, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform point in the disc of the given centre and radius.
pub fn point(rng: &mut impl Rng, center: Point2, radius: f64) -> Point2 {
    let rho = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    center + Vec2::new(rho * theta.cos(), rho * theta.sin())
}

/// Random vector with length in `[0.2, 2]`.
pub fn vector(rng: &mut impl Rng) -> Vec2 {
    let len = rng.gen_range(0.2..2.0);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Vec2::new(len * theta.cos(), len * theta.sin())
}
