mod common;

use antipodal_core::certify::{certify_set, check_certificate, pair_margin, separation, PointSet};
use antipodal_core::construct::{lp_basis_family, plus_minus_family, strict_convex_family, AuerbachSystem};
use antipodal_core::convex_engine::{
    lp_solve, min_norm_over_polyhedron, operator_norm, project_polyhedron, Constraint, DualView, LinearProgram,
    LpStatus, MinNormOutcome, Polyhedron, Projection,
};
use antipodal_core::normed_space::{norming_functional, polyhedral_approx};
use antipodal_core::search::{anneal_bsa, brute_force_margin, SearchConfig};
use antipodal_core::{Matrix, NormSpec, Vector};
use common::{gaussian, random_points, random_polytope, random_space};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_points(space: &NormSpec, rng: &mut ChaCha8Rng, count: usize) -> Vec<Vector> {
    random_points(rng, space.dim(), count).iter().map(|p| space.normalize(p).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_axioms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng);
        let n = space.dim();
        let (x, y) = (gaussian(&mut rng, n), gaussian(&mut rng, n));
        let alpha: f64 = rng.random_range(-3.0..3.0);
        let (nx, ny) = (space.norm(&x).unwrap(), space.norm(&y).unwrap());
        prop_assert!(nx > 0.0);
        prop_assert!(space.norm(&(&x + &y)).unwrap() <= nx + ny + 1e-9);
        prop_assert!((space.norm(&x.scale(alpha)).unwrap() - alpha.abs() * nx).abs() <= 1e-9 * (1.0 + nx));
        prop_assert!((space.norm(&-&x).unwrap() - nx).abs() <= 1e-9 * (1.0 + nx));
    }

    #[test]
    fn duality_consistency(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng);
        let n = space.dim();
        let (x, f) = (gaussian(&mut rng, n), gaussian(&mut rng, n));
        let (nx, nf) = (space.norm(&x).unwrap(), space.dual_norm(&f).unwrap());
        prop_assert!(f.dot(&x).abs() <= nx * nf + 1e-9 * (1.0 + nx * nf));

        let s = space.support_point(&f).unwrap();
        prop_assert!((space.norm(&s).unwrap() - 1.0).abs() <= 1e-9);
        prop_assert!((f.dot(&s) - nf).abs() <= 1e-9 * (1.0 + nf));

        let g = norming_functional(&space, &x).unwrap();
        prop_assert!((space.dual_norm(&g).unwrap() - 1.0).abs() <= 1e-8);
        prop_assert!((g.dot(&x) - nx).abs() <= 1e-8 * (1.0 + nx));
    }

    #[test]
    fn polytope_matches_lp(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = rng(seed);
        let x = gaussian(&mut rng, dim);
        let pairs = [
            (NormSpec::lp(1.0, dim).unwrap(), NormSpec::cross_polytope(dim).unwrap()),
            (NormSpec::linf(dim), NormSpec::cube(dim).unwrap()),
        ];
        for (lp, poly) in pairs {
            let (a, b) = (lp.norm(&x).unwrap(), poly.norm(&x).unwrap());
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
            let (a, b) = (lp.dual_norm(&x).unwrap(), poly.dual_norm(&x).unwrap());
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
        }
    }

    #[test]
    fn polytope_vertices_have_norm_one(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dim = rng.random_range(2..4);
        let space = random_polytope(&mut rng, dim);
        for v in space.explicit_vertices().unwrap() {
            prop_assert!((space.norm(&v).unwrap() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn polyhedral_approx_bound(seed in any::<u64>(), p in 1.2f64..5.0, dim in 2usize..4) {
        let mut rng = rng(seed);
        let space = NormSpec::lp(p, dim).unwrap();
        let approx = polyhedral_approx(&space, if dim == 2 { 48 } else { 120 }).unwrap();
        let x = gaussian(&mut rng, dim);
        let (exact, coarse) = (space.norm(&x).unwrap(), approx.space.norm(&x).unwrap());
        prop_assert!(exact <= coarse + 1e-9);
        prop_assert!(coarse <= (1.0 + approx.ratio_bound) * exact + 1e-9);
    }

    #[test]
    fn projection_is_feasible_fixed_point(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(2..5);
        let anchor = gaussian(&mut rng, n);
        let rows: Vec<Constraint> = (0..rng.random_range(1..7))
            .map(|_| {
                let a = gaussian(&mut rng, n);
                let slack: f64 = rng.random_range(0.0..1.0);
                Constraint::le(a.clone(), a.dot(&anchor) + slack)
            })
            .collect();
        let poly = Polyhedron::new(n, rows).unwrap();
        let point = gaussian(&mut rng, n).scale(3.0);
        let Projection::Converged(p) = project_polyhedron(&point, &poly, 100_000).unwrap() else {
            return Err(TestCaseError::fail("projection did not converge"));
        };
        prop_assert!(poly.residual(&p) <= 1e-8);
        let again = project_polyhedron(&p, &poly, 100_000).unwrap();
        prop_assert!((again.point() - &p).max_abs() <= 1e-9);
    }

    #[test]
    fn l2_min_norm_is_projection_distance(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(2..5);
        let space = NormSpec::lp(2.0, n).unwrap();
        let mut rows = vec![Constraint::eq(gaussian(&mut rng, n), 1.0)];
        for _ in 0..rng.random_range(0..4) {
            let a = gaussian(&mut rng, n);
            rows.push(Constraint::ge(a, -rng.random_range(0.0..1.0)));
        }
        let poly = Polyhedron::new(n, rows).unwrap();
        let MinNormOutcome::Optimal(m) = min_norm_over_polyhedron(&DualView::new(&space), &poly).unwrap() else {
            return Err(TestCaseError::reject("infeasible instance"));
        };
        let Projection::Converged(p) = project_polyhedron(&Vector::zeros(n), &poly, 100_000).unwrap() else {
            return Err(TestCaseError::fail("projection did not converge"));
        };
        prop_assert!((m.value - p.euclidean_norm()).abs() <= 1e-8);
    }

    #[test]
    fn operator_norm_dominates_ratios(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dim = rng.random_range(2..4);
        let domain = random_polytope(&mut rng, dim);
        let codomain = random_space(&mut rng);
        let codomain = if codomain.dim() == dim { codomain } else { NormSpec::lp(2.0, dim).unwrap() };
        let t = Matrix::from_fn(dim, dim, |_, _| rng.random_range(-2.0..2.0));
        let norm = operator_norm(&t, &domain, &codomain).unwrap();
        for _ in 0..100 {
            let v = gaussian(&mut rng, dim);
            let tv = Vector::from((&t * nalgebra::DVector::from_column_slice(v.coords())).as_slice());
            let ratio = codomain.norm(&tv).unwrap() / domain.norm(&v).unwrap();
            prop_assert!(norm >= ratio - 1e-9);
        }
    }
}

/// Best value over all basic points of `max c.x, A x <= b`.
fn brute_force_lp(c: &Vector, rows: &[(Vector, f64)]) -> Option<f64> {
    let n = c.dim();
    let m = rows.len();
    let mut best: Option<f64> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let a = Matrix::from_fn(n, n, |i, j| rows[subset[i]].0[j]);
        let b = nalgebra::DVector::from_fn(n, |i, _| rows[subset[i]].1);
        if let Some(x) = a.lu().solve(&b) {
            let x = Vector::from(x.as_slice());
            if rows.iter().all(|(a, b)| a.dot(&x) <= b + 1e-9) {
                let value = c.dot(&x);
                best = Some(best.map_or(value, |v: f64| v.max(value)));
            }
        }
        // next n-subset in lexicographic order
        let Some(k) = (0..n).rev().find(|&k| subset[k] < m - n + k) else {
            return best;
        };
        subset[k] += 1;
        for j in k + 1..n {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[test]
fn simplex_matches_basic_point_enumeration() {
    let mut rng = rng(2024);
    for _ in 0..100 {
        let n = rng.random_range(1..7);
        let m = rng.random_range(1..13);
        let c = gaussian(&mut rng, n);
        let mut rows: Vec<(Vector, f64)> = (0..m).map(|_| (gaussian(&mut rng, n), rng.random_range(0.1..2.0))).collect();
        // a box keeps every instance bounded
        for i in 0..n {
            rows.push((Vector::basis(n, i), 5.0));
            rows.push((-&Vector::basis(n, i), 5.0));
        }
        let mut lp = LinearProgram::new(c.clone()).all_free();
        for (a, b) in &rows {
            lp.push(Constraint::le(a.clone(), *b));
        }
        let LpStatus::Optimal(sol) = lp_solve(&lp).unwrap() else { panic!("bounded feasible LP not solved") };
        let oracle = brute_force_lp(&c, &rows).unwrap();
        assert!((sol.value - oracle).abs() <= 1e-7, "simplex {} vs enumeration {oracle}", sol.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn margin_bounded_by_distance_and_symmetric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng);
        let count = rng.random_range(2..5);
        let set = PointSet::new(space.clone(), unit_points(&space, &mut rng, count)).unwrap();
        let (y, x) = (0, 1);
        let forward = pair_margin(&set, y, x).unwrap();
        let backward = pair_margin(&set, x, y).unwrap();
        let distance = space.norm(&(&set.points()[y] - &set.points()[x])).unwrap();
        prop_assert!(forward.margin <= distance + 1e-8);
        prop_assert!(backward.margin <= distance + 1e-8);
        // -f certifies the swapped orientation with the same margin
        if forward.margin > 0.0 {
            let g = -forward.functional.coeffs();
            let swapped = g.dot(&set.points()[x]) - g.dot(&set.points()[y]);
            prop_assert!((swapped - forward.margin).abs() <= 1e-9);
            prop_assert!(backward.margin >= forward.margin - 1e-6 || forward.approximate);
        }
        let certified = certify_set(&set).unwrap();
        let best = forward.margin.max(backward.margin);
        prop_assert!((certified.report.margins[&(0, 1)] - best).abs() <= 1e-9);
    }

    #[test]
    fn certify_output_passes_check(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng);
        let count = rng.random_range(2..6);
        let set = PointSet::new(space.clone(), unit_points(&space, &mut rng, count)).unwrap();
        let c = certify_set(&set).unwrap();
        prop_assert!(c.report.ka_lower <= c.report.k_lower + 1e-9);
        prop_assert!(c.report.d <= c.report.separation + 1e-9);
        if c.report.d > 0.0 {
            prop_assert!(check_certificate(&c.certificate, 1e-7).unwrap().valid);
        }
    }

    #[test]
    fn brute_force_is_a_lower_bound(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dim = rng.random_range(2..4);
        let space = random_polytope(&mut rng, dim);
        let set = PointSet::new(space.clone(), unit_points(&space, &mut rng, 4)).unwrap();
        for (y, x) in [(0, 1), (1, 0), (2, 3)] {
            let exact = pair_margin(&set, y, x).unwrap().margin;
            let grid = brute_force_margin(&set, y, x, if dim == 2 { 180 } else { 24 }).unwrap();
            prop_assert!(grid <= exact + 1e-9, "grid {grid} above exact {exact}");
        }
    }
}

#[test]
fn oracle_gap_shrinks_with_grid() {
    // l_3 has no dual vertices, so the oracle relies on the grid alone
    let space = NormSpec::lp(3.0, 2).unwrap();
    let points: Vec<Vector> =
        [[1.0, 0.2], [-0.3, 1.0], [-1.0, -0.5], [0.4, -1.0]].iter().map(|p| space.normalize(&Vector::from(*p)).unwrap()).collect();
    let set = PointSet::new(space, points).unwrap();
    let mut total = [0.0; 3];
    for y in 0..4 {
        for x in 0..4 {
            if x == y {
                continue;
            }
            let exact = pair_margin(&set, y, x).unwrap().margin;
            for (k, grid) in [90, 180, 360].into_iter().enumerate() {
                let approx = brute_force_margin(&set, y, x, grid).unwrap();
                assert!(approx <= exact + 1e-9);
                total[k] += exact - approx;
            }
        }
    }
    assert!(total[0] >= total[1] && total[1] >= total[2], "gaps {total:?}");
}

#[test]
fn named_families_certify_at_least_claimed() {
    let mut families = Vec::new();
    for p in [1.0, 1.5, 2.0, 3.0] {
        families.push(lp_basis_family(p, 4).unwrap());
    }
    for p in [1.5, 2.0, 4.0] {
        let system = AuerbachSystem::canonical(NormSpec::lp(p, 3).unwrap()).unwrap();
        families.push(strict_convex_family(&system).unwrap());
        families.push(plus_minus_family(&system).unwrap());
    }
    for family in families {
        assert!(family.check(1e-7).unwrap().valid, "{}", family.provenance);
        let d = certify_set(&family.set).unwrap().report.d;
        assert!(d >= family.claimed.2 - 1e-6, "{}: {d} < {}", family.provenance, family.claimed.2);
    }
}

#[test]
fn lp_basis_claim_equals_equilateral_lambda() {
    for p in [1.0, 1.5, 2.0, 3.0, 7.0] {
        let family = lp_basis_family(p, 5).unwrap();
        let lambda = separation(&family.set).unwrap();
        assert!((family.claimed.2 - lambda).abs() <= 1e-12);
    }
}

#[test]
fn anneal_is_deterministic_and_monotone() {
    let space = NormSpec::lp(2.0, 2).unwrap();
    let config = SearchConfig { seed: 11, restarts: 2, iterations: 300, ..SearchConfig::default() };
    let a = anneal_bsa(&space, 4, &config).unwrap();
    let b = anneal_bsa(&space, 4, &config).unwrap();
    assert_eq!(a, b);
    let mut last = 0.0;
    for iterations in [50, 150, 300, 600] {
        let run = anneal_bsa(&space, 4, &SearchConfig { iterations, ..config.clone() }).unwrap();
        assert!(run.report.d >= last, "best d decreased at {iterations} iterations");
        last = run.report.d;
    }
}
