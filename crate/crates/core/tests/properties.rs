mod common;

use funk_finsler::curvature::{covariant_data, riemann_closed};
use funk_finsler::diff::{self, Stencil};
use funk_finsler::disc::{funk_distance_disc, hilbert_distance_disc, EuclideanDisc};
use funk_finsler::finsler::check_homogeneity;
use funk_finsler::geodesic::{spray_closed, spray_numeric};
use funk_finsler::klein::{self, funk_metric};
use funk_finsler::models::{map_eval, poincare_radius, ChartMap, Image, Jacobian};
use funk_finsler::parse::{parse_grid, parse_vec2, parse_xi_mode, GridSpec, MetricName, SuiteName, XiMode};
use funk_finsler::zermelo::{epsilon, to_navigation};
use funk_finsler::{klein_radius, FinslerMetric, KleinFunk, Mat2, Mat32, Point2, Vec2, Vec3};
use proptest::prelude::*;

const MARGIN: f64 = 1e-3;

fn polar(radius: f64) -> impl Strategy<Value = Point2> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(move |(u, t)| {
        let rho = radius * u.sqrt();
        Vec2::new(rho * t.cos(), rho * t.sin())
    })
}

fn klein_point() -> impl Strategy<Value = Point2> {
    polar(klein_radius() - MARGIN)
}

fn direction() -> impl Strategy<Value = Vec2> {
    (0.2..2.0f64, 0.0..std::f64::consts::TAU).prop_map(|(l, t)| Vec2::new(l * t.cos(), l * t.sin()))
}

/// `Γ̄^k_ij` of `a` from finite differences of `a_ij`.
fn christoffel_numeric(x: Point2) -> [[[f64; 2]; 2]; 2] {
    let h = 1e-4;
    let a = |p: Point2| klein::randers_data_at(p).unwrap().a;
    let da = [0, 1].map(|l| diff::d1(|s| a(x + Vec2::basis(l) * s), h, Stencil::Fourth));
    let a_inv = a(x).inverse().unwrap();
    let mut g = [[[0.0; 2]; 2]; 2];
    for (k, gk) in g.iter_mut().enumerate() {
        for (i, row) in gk.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..2)
                    .map(|l| 0.5 * a_inv.get(k, l) * (da[i].get(l, j) + da[j].get(l, i) - da[l].get(i, j)))
                    .sum();
            }
        }
    }
    g
}

/// `b_{i|j}` from finite differences of `b_i` and of `a_ij`.
fn db_numeric(x: Point2) -> Mat2 {
    let h = 1e-4;
    let b = |p: Point2| klein::randers_data_at(p).unwrap().b;
    let gamma = christoffel_numeric(x);
    let bx = b(x);
    let jac = diff::jacobian(b, x, h, Stencil::Fourth);
    Mat2::from_fn(|i, j| jac.get(i, j) - (0..2).map(|k| bx[k] * gamma[k][i][j]).sum::<f64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn funk_metric_is_positively_homogeneous(x in klein_point(), xi in direction()) {
        let err = check_homogeneity(&KleinFunk, x, xi, &[0.1, 0.5, 2.0, 10.0]).unwrap();
        prop_assert!(err <= 1e-13, "{err}");
    }

    #[test]
    fn funk_metric_is_positive_and_asymmetric_outward(x in klein_point(), xi in direction()) {
        let f = funk_metric(x, xi).unwrap();
        let back = funk_metric(x, -xi).unwrap();
        prop_assert!(f > 0.0 && back > 0.0);
        // the outward direction is the more expensive one
        prop_assert!((f - back) * x.dot(xi) >= -1e-12 * f);
    }

    #[test]
    fn spray_is_two_homogeneous(x in klein_point(), xi in direction()) {
        let g = spray_closed(x, xi).unwrap();
        let gn = spray_numeric(&KleinFunk, x, xi).unwrap();
        for l in [0.5, 2.0] {
            let scaled = spray_closed(x, xi * l).unwrap();
            prop_assert!((scaled - g * (l * l)).norm() <= 1e-9 * (l * l) * g.norm().max(1.0));
            let scaled = spray_numeric(&KleinFunk, x, xi * l).unwrap();
            prop_assert!((scaled - gn * (l * l)).norm() <= 1e-5 * (l * l) * gn.norm().max(1.0));
        }
    }

    #[test]
    fn flag_curvature_is_negative(x in klein_point(), xi in direction()) {
        prop_assert!(riemann_closed(x, xi).unwrap().k < 0.0);
    }

    #[test]
    fn tau_annihilates_the_flagpole(x in klein_point(), xi in direction()) {
        let rep = riemann_closed(x, xi).unwrap();
        prop_assert!(rep.tau.dot(xi).abs() <= 1e-10 * rep.tau.norm().max(1.0) * xi.norm());
    }

    #[test]
    fn ricci_is_trace_of_riemann(x in klein_point(), xi in direction()) {
        let rep = riemann_closed(x, xi).unwrap();
        prop_assert!((rep.ric - rep.r.trace()).abs() <= 1e-9 * rep.ric.abs().max(1.0));
        prop_assert!((rep.k - rep.ric / (rep.f * rep.f)).abs() <= 1e-12 * rep.k.abs());
    }

    #[test]
    fn riemann_annihilates_the_flagpole(x in klein_point(), xi in direction()) {
        let rep = riemann_closed(x, xi).unwrap();
        let r_xi = rep.r * xi;
        prop_assert!(r_xi.norm() <= 1e-9 * rep.r.max_abs().max(1.0) * xi.norm());
    }

    #[test]
    fn phi_is_contraction_of_covariant_derivative(x in klein_point(), xi in direction()) {
        let rep = riemann_closed(x, xi).unwrap();
        let phi = covariant_data(x).unwrap().db.quad(xi);
        prop_assert!((rep.phi - phi).abs() <= 1e-9 * phi.abs().max(1.0), "{} vs {phi}", rep.phi);
    }

    #[test]
    fn psi_matches_second_covariant_derivative(x in polar(klein_radius() - 2e-2), xi in direction()) {
        // ψ = ξ^k ∂_k(b_{i|j} ξ^i ξ^j) − 2 b_{l|j} ξ^j Γ̄^l_ik ξ^i ξ^k
        let phi = |p: Point2| covariant_data(p).unwrap().db.quad(xi);
        let h = 1e-4;
        let dir = xi * (1.0 / xi.norm());
        let transport = diff::d1(|s| phi(x + dir * s), h, Stencil::Fourth) * xi.norm();
        let db = covariant_data(x).unwrap().db;
        let gamma = christoffel_numeric(x);
        let xv = xi.to_array();
        let corr: f64 = gamma
            .iter()
            .enumerate()
            .map(|(l, gl)| {
                let dl: f64 = (0..2).map(|j| db.get(l, j) * xv[j]).sum();
                let gq: f64 = (0..2).flat_map(|i| (0..2).map(move |k| (i, k))).map(|(i, k)| gl[i][k] * xv[i] * xv[k]).sum();
                dl * gq
            })
            .sum();
        let psi = transport - 2.0 * corr;
        let rep = riemann_closed(x, xi).unwrap();
        prop_assert!((rep.psi - psi).abs() <= 1e-5 * psi.abs().max(1.0), "{} vs {psi}", rep.psi);
    }

    #[test]
    fn covariant_derivative_matches_finite_differences(x in polar(klein_radius() - 2e-2)) {
        let closed = covariant_data(x).unwrap().db;
        let numeric = db_numeric(x);
        prop_assert!((closed - numeric).max_abs() <= 1e-6 * closed.max_abs().max(1.0));
    }

    #[test]
    fn closed_jacobians_match_numeric(name in prop::sample::select(vec!["f", "g_inv", "eta", "psi", "id"]), x in polar(0.95)) {
        let map = ChartMap::by_name(name).unwrap();
        prop_assume!(map.in_domain(x) && map.in_domain(x * 1.001));
        let closed = map.jacobian_closed(x).unwrap().unwrap();
        let numeric = map.numeric_jacobian(x).unwrap();
        let scale = match closed {
            Jacobian::Plane(m) => m.max_abs(),
            Jacobian::Space(m) => m.max_abs_diff(&Mat32::from_cols(Vec3::default(), Vec3::default())),
        };
        prop_assert!(closed.max_abs_diff(&numeric) <= 1e-6 * scale.max(1.0));
    }

    #[test]
    fn poincare_chart_lands_in_klein_disc(x in polar(poincare_radius() * (1.0 - 1e-12))) {
        match map_eval(&ChartMap::poincare_to_klein(), x).unwrap() {
            Image::Plane(y) => prop_assert!(y.norm() < klein_radius()),
            Image::Space(_) => prop_assert!(false, "planar map returned a space point"),
        }
    }

    #[test]
    fn sea_metric_is_positive_definite(x in klein_point()) {
        let nav = to_navigation(x).unwrap();
        prop_assert!(nav.h.is_spd());
        let eps = epsilon(x).unwrap();
        prop_assert!(eps > 0.0 && eps <= 1.0);
        prop_assert!((eps - nav.eps).abs() <= 1e-12);
        prop_assert!(nav.wind_norm_sq() < 1.0);
    }

    #[test]
    fn hilbert_is_symmetrized_funk(x in polar(0.99), y in polar(0.99)) {
        let disc = EuclideanDisc::unit();
        let fxy = funk_distance_disc(&disc, x, y).unwrap();
        let fyx = funk_distance_disc(&disc, y, x).unwrap();
        let h = hilbert_distance_disc(&disc, x, y).unwrap();
        prop_assert!((h - 0.5 * (fxy + fyx)).abs() <= 1e-12 * h.max(1.0));
    }

    #[test]
    fn funk_distance_triangle_inequality(x in klein_point(), y in klein_point(), z in klein_point()) {
        let d = |p, q| klein::funk_distance(p, q).unwrap();
        prop_assert!(d(x, z) <= d(x, y) + d(y, z) + 1e-12);
    }

    #[test]
    fn metric_in_domain_agrees_with_boundary_distance(x in polar(1.2)) {
        let inside = KleinFunk.in_domain(x);
        prop_assert_eq!(inside, KleinFunk.boundary_distance(x) > 0.0);
    }

    #[test]
    fn vec2_round_trips(a in -1e6..1e6f64, b in -1e6..1e6f64) {
        let v = parse_vec2(&format!("{a},{b}")).unwrap();
        prop_assert_eq!(v, Vec2::new(a, b));
    }

    #[test]
    fn grid_round_trips(
        xmin in -2.0..0.0f64, dx in 1e-3..2.0f64, nx in 2usize..500,
        ymin in -2.0..0.0f64, dy in 1e-3..2.0f64, ny in 2usize..500,
    ) {
        let g = GridSpec::new(xmin, xmin + dx, ymin, ymin + dy, nx, ny).unwrap();
        prop_assert_eq!(parse_grid(&g.to_string()).unwrap(), g);
        prop_assert_eq!(g.nodes().count(), nx * ny);
    }

    #[test]
    fn metric_names_round_trip(radius in 1e-3..1e3f64, pick in 0usize..8) {
        let names = [
            MetricName::KleinFunk,
            MetricName::Klein,
            MetricName::PoincareFunk,
            MetricName::UpperFunk,
            MetricName::DiscFunk { radius },
            MetricName::Poincare,
            MetricName::UpperHalf,
            MetricName::Euclidean,
        ];
        let name = names[pick];
        prop_assert_eq!(name.to_string().parse::<MetricName>().unwrap(), name);
    }

    #[test]
    fn fixed_direction_round_trips(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        prop_assume!(a != 0.0 || b != 0.0);
        prop_assert_eq!(parse_xi_mode(&format!("fixed:{a},{b}")).unwrap(), XiMode::Fixed(Vec2::new(a, b)));
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,40}") {
        let _ = parse_vec2(&s);
        let _ = parse_grid(&s);
        let _ = s.parse::<MetricName>();
        let _ = s.parse::<SuiteName>();
        let _ = parse_xi_mode(&s);
    }
}

#[test]
fn suite_names_round_trip() {
    for s in SuiteName::ALL {
        assert_eq!(s.parse::<SuiteName>().unwrap().as_str(), *s);
    }
}
