//! Worked examples for every public operation.

use antipodal_core::certify::{
    certify_set, check_certificate, is_antipodal, is_equilateral, pair_margin, separation, transport_certificate,
    BsaCertificate, Functional, PairCertificate, PointSet,
};
use antipodal_core::construct::{
    auerbach_ascent, lp_basis_family, normalize_biorthogonal, plus_minus_family, renorm_equilateral_family,
    strict_convex_family, summing_family, AuerbachSystem,
};
use antipodal_core::convex_engine::{
    lp_solve, min_norm_over_polyhedron, operator_norm, project_polyhedron, Constraint, DualView, LinearProgram,
    MinNormOutcome, Polyhedron, Projection,
};
use antipodal_core::normed_space::{dual_norm_eval, norm_eval, renorm_union, support_point, validate_space};
use antipodal_core::search::{
    anneal_bsa, brute_force_margin, greedy_separated, ka_lower_bound, max_antipodal_search, SearchConfig,
};
use antipodal_core::{Error, Exponent, Matrix, NormSpec, Vector};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn v<const N: usize>(c: [f64; N]) -> Vector {
    Vector::from(c)
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

fn basis(n: usize) -> Vec<Vector> {
    (0..n).map(|i| Vector::basis(n, i)).collect()
}

fn square() -> NormSpec {
    NormSpec::cube(2).unwrap()
}

fn hexagon() -> NormSpec {
    NormSpec::polytope(vec![v([1.0, 0.0]), v([-1.0, 0.0]), v([0.0, 1.0]), v([0.0, -1.0]), v([1.0, 1.0]), v([-1.0, -1.0])])
        .unwrap()
}

fn square_vertex_set(space: NormSpec, scale: f64) -> PointSet {
    let pts = [[1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]].map(|p| v(p).scale(scale));
    PointSet::new(space, pts.to_vec()).unwrap()
}

// normed_space

#[test]
fn norm_examples() {
    let l3 = NormSpec::lp(3.0, 2).unwrap();
    close(norm_eval(&l3, &v([1.0, 1.0])).unwrap(), 2f64.powf(1.0 / 3.0), 1e-12);
    close(norm_eval(&NormSpec::linf(3), &v([1.0, -3.0, 2.0])).unwrap(), 3.0, 0.0);
    close(norm_eval(&hexagon(), &v([2.0, 1.0])).unwrap(), 2.0, 1e-9);
    close(norm_eval(&hexagon(), &v([1.0, -1.0])).unwrap(), 2.0, 1e-9);
}

#[test]
fn dual_norm_examples() {
    close(dual_norm_eval(&NormSpec::lp(1.0, 3).unwrap(), &v([1.0, -2.0, 0.5])).unwrap(), 2.0, 0.0);
    close(dual_norm_eval(&NormSpec::lp(2.0, 2).unwrap(), &v([3.0, 4.0])).unwrap(), 5.0, 1e-12);
    close(dual_norm_eval(&square(), &v([1.0, 1.0])).unwrap(), 2.0, 1e-12);
}

#[test]
fn support_point_examples() {
    let l2 = NormSpec::lp(2.0, 2).unwrap();
    let s = support_point(&l2, &v([3.0, 4.0])).unwrap();
    close(s[0], 0.6, 1e-12);
    close(s[1], 0.8, 1e-12);
    // ties go to the lowest index
    assert_eq!(support_point(&NormSpec::lp(1.0, 2).unwrap(), &v([3.0, 3.0])).unwrap(), v([1.0, 0.0]));
    assert_eq!(support_point(&l2, &v([0.0, 0.0])), Err(Error::ZeroFunctional));
}

#[test]
fn validate_space_examples() {
    assert_eq!(
        validate_space(NormSpec::Lp { p: Exponent::Finite(0.5), dim: 2 }),
        Err(Error::BadExponent(0.5))
    );
    assert!(matches!(NormSpec::polytope(vec![v([1.0, 0.0]), v([0.0, 1.0]), v([-1.0, 0.0])]), Err(Error::NotSymmetric(_))));
    assert_eq!(NormSpec::polytope(vec![v([1.0, 0.0]), v([-1.0, 0.0])]), Err(Error::DegenerateBall));
    let NormSpec::Polytope { vertices } =
        NormSpec::polytope(vec![v([1.0, 0.0]), v([-1.0, 0.0]), v([0.0, 1.0]), v([0.0, -1.0]), v([0.2, 0.2]), v([-0.2, -0.2])])
            .unwrap()
    else {
        unreachable!()
    };
    assert_eq!(vertices.len(), 4);
}

#[test]
fn renorm_union_square() {
    let union = renorm_union(&square(), &[v([2.0, 0.0]), v([0.0, 2.0])]).unwrap();
    for p in [v([2.0, 0.0]), v([0.0, -2.0])] {
        close(norm_eval(&union, &p).unwrap(), 1.0, 1e-9);
    }
    close(norm_eval(&union, &v([2.0, -2.0])).unwrap(), 2.0, 1e-9);
}

// convex_engine

#[test]
fn lp_examples() {
    let mut lp = LinearProgram::new(v([1.0])).all_free();
    lp.push(Constraint::le(v([1.0]), 1.0));
    let s = lp_solve(&lp).unwrap().optimal().unwrap();
    close(s.value, 1.0, 1e-12);
    close(s.x[0], 1.0, 1e-12);

    let mut lp = LinearProgram::new(v([1.0, -1.0, 0.0])).all_free();
    for i in 0..3 {
        lp.push(Constraint::le(Vector::basis(3, i), 1.0));
        lp.push(Constraint::ge(Vector::basis(3, i), -1.0));
    }
    let s = lp_solve(&lp).unwrap().optimal().unwrap();
    close(s.value, 2.0, 1e-12);
    close(s.x[0], 1.0, 1e-12);
    close(s.x[1], -1.0, 1e-12);
}

#[test]
fn projection_examples() {
    let poly = Polyhedron::new(2, vec![Constraint::eq(v([1.0, 0.0]), 1.0)]).unwrap();
    let Projection::Converged(p) = project_polyhedron(&v([0.0, 0.0]), &poly, 100_000).unwrap() else {
        panic!("projection did not converge")
    };
    close((&p - &v([1.0, 0.0])).max_abs(), 0.0, 1e-10);

    let poly = Polyhedron::new(2, vec![Constraint::le(v([1.0, 0.0]), 1.0), Constraint::ge(v([0.0, 1.0]), 0.0)]).unwrap();
    let p = project_polyhedron(&v([2.0, 0.0]), &poly, 100_000).unwrap();
    close((p.point() - &v([1.0, 0.0])).max_abs(), 0.0, 1e-10);

    // margin polyhedron of (y = e1, x = e2) in {e1, e2, e3}
    let (x, y, z) = (Vector::basis(3, 1), Vector::basis(3, 0), Vector::basis(3, 2));
    let poly = Polyhedron::new(
        3,
        vec![Constraint::eq(&y - &x, 1.0), Constraint::ge(&z - &x, 0.0), Constraint::ge(&y - &z, 0.0)],
    )
    .unwrap();
    let p = project_polyhedron(&Vector::zeros(3), &poly, 100_000).unwrap();
    close((p.point() - &v([0.5, -0.5, 0.0])).max_abs(), 0.0, 1e-8);
    close(p.point().euclidean_norm(), 1.0 / SQRT2, 1e-8);
}

fn min_norm_value(base: &NormSpec, poly: &Polyhedron) -> (f64, Vector) {
    match min_norm_over_polyhedron(&DualView::new(base), poly).unwrap() {
        MinNormOutcome::Optimal(m) => (m.value, m.argmin),
        MinNormOutcome::Infeasible => panic!("unexpectedly infeasible"),
    }
}

#[test]
fn min_norm_examples() {
    let l2 = NormSpec::lp(2.0, 2).unwrap();
    let (value, at) = min_norm_value(&l2, &Polyhedron::new(2, vec![Constraint::eq(v([1.0, 0.0]), 1.0)]).unwrap());
    close(value, 1.0, 1e-9);
    close((&at - &v([1.0, 0.0])).max_abs(), 0.0, 1e-8);

    let row = vec![Constraint::eq(v([1.0, -1.0, 0.0]), 1.0)];
    let (value, _) = min_norm_value(&NormSpec::lp(2.0, 3).unwrap(), &Polyhedron::new(3, row.clone()).unwrap());
    close(value, 1.0 / SQRT2, 1e-8);

    // l1 primal: the dual ball is the box
    let (value, at) = min_norm_value(&NormSpec::lp(1.0, 3).unwrap(), &Polyhedron::new(3, row).unwrap());
    close(value, 0.5, 1e-9);
    close((&at - &v([0.5, -0.5, 0.0])).max_abs(), 0.0, 1e-9);
}

#[test]
fn operator_norm_examples() {
    let id = Matrix::identity(2, 2);
    close(operator_norm(&id, &square(), &square()).unwrap(), 1.0, 1e-12);
    let l2 = NormSpec::lp(2.0, 2).unwrap();
    close(operator_norm(&Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0])), &l2, &l2).unwrap(), 2.0, 1e-9);
    let t = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.7]));
    close(operator_norm(&t, &square(), &square()).unwrap(), 1.7, 1e-12);
    assert_eq!(operator_norm(&id, &l2, &NormSpec::lp(3.0, 2).unwrap()), Err(Error::UnsupportedNormPair));
}

// certify

#[test]
fn check_certificate_examples() {
    for p in [1.0, 1.5, 2.0, 3.0] {
        let family = lp_basis_family(p, 4).unwrap();
        assert!(family.check(1e-9).unwrap().valid, "p = {p}");

        let mut cert = family.certificate();
        cert.d += 0.1;
        let verdict = check_certificate(&cert, 1e-9).unwrap();
        assert!(!verdict.valid);
        assert_eq!(verdict.violations.len(), 6);
    }

    let l2 = NormSpec::lp(2.0, 3).unwrap();
    let set = PointSet::new(l2.clone(), vec![Vector::basis(3, 0), -&Vector::basis(3, 0)]).unwrap();
    let pair = PairCertificate::new(&set, 0, 1, Functional::new(&l2, Vector::basis(3, 0)).unwrap());
    let cert = BsaCertificate::from_pairs(set, vec![pair], 1.0, 1.0, 2.0);
    assert!(check_certificate(&cert, 1e-12).unwrap().valid);
}

#[test]
fn pair_margin_examples() {
    let set = PointSet::new(NormSpec::lp(2.0, 3).unwrap(), basis(3)).unwrap();
    let m = pair_margin(&set, 0, 1).unwrap();
    close(m.margin, SQRT2, 1e-7);
    close((m.functional.coeffs() - &v([1.0 / SQRT2, -1.0 / SQRT2, 0.0])).max_abs(), 0.0, 1e-6);

    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
        let set = PointSet::new(NormSpec::lp(p, 2).unwrap(), vec![v([1.0, 0.0]), v([-1.0, 0.0])]).unwrap();
        close(pair_margin(&set, 0, 1).unwrap().margin, 2.0, 1e-7);
    }

    let set = square_vertex_set(NormSpec::linf(2), 1.0);
    let m = pair_margin(&set, 0, 1).unwrap();
    close(m.margin, 2.0, 1e-9);
    close((m.functional.coeffs() - &v([0.0, 1.0])).max_abs(), 0.0, 1e-9);
    close(brute_force_margin(&set, 0, 1, 720).unwrap(), 2.0, 1e-2);
}

#[test]
fn certify_set_examples() {
    for p in [1.0, 1.5, 2.0, 3.0] {
        let set = PointSet::new(NormSpec::lp(p, 4).unwrap(), basis(4)).unwrap();
        let c = certify_set(&set).unwrap();
        close(c.report.d, 2f64.powf(1.0 / p), 1e-6);
        assert!(check_certificate(&c.certificate, 1e-7).unwrap().valid);
    }
    close(certify_set(&summing_family(5).unwrap().set).unwrap().report.d, 2.0, 1e-6);
    let x = v([0.3, -0.8, 0.1]);
    let l3 = NormSpec::lp(3.0, 3).unwrap();
    let x = l3.normalize(&x).unwrap();
    let set = PointSet::new(l3, vec![x.clone(), -&x]).unwrap();
    close(certify_set(&set).unwrap().report.d, 2.0, 1e-6);
}

#[test]
fn is_antipodal_examples() {
    assert!(is_antipodal(&square_vertex_set(NormSpec::lp(2.0, 2).unwrap(), 1.0 / SQRT2), 1e-9).unwrap());

    let l1 = NormSpec::lp(1.0, 2).unwrap();
    let set = PointSet::new(l1, vec![v([1.0, 0.0]), v([0.0, 1.0]), v([0.5, 0.5])]).unwrap();
    assert!(!is_antipodal(&set, 1e-9).unwrap());

    let set = PointSet::new(NormSpec::lp(2.0, 2).unwrap(), vec![v([0.3, 0.1]), v([-0.2, 0.7])]).unwrap();
    assert!(is_antipodal(&set, 1e-9).unwrap());
}

#[test]
fn is_equilateral_examples() {
    for p in [1.0, 2.0, 3.0] {
        let set = PointSet::new(NormSpec::lp(p, 3).unwrap(), basis(3)).unwrap();
        let e = is_equilateral(&set, 1e-9).unwrap();
        assert!(e.flag);
        close(e.lambda, 2f64.powf(1.0 / p), 1e-12);
    }
    let e = is_equilateral(&summing_family(5).unwrap().set, 1e-9).unwrap();
    assert!(e.flag);
    close(e.lambda, 2.0, 0.0);
    let set = PointSet::new(NormSpec::lp(2.0, 3).unwrap(), vec![v([1.0, 0.0, 0.0]), v([0.0, 2.0, 0.0]), v([0.0, 0.0, 3.0])])
        .unwrap();
    assert!(!is_equilateral(&set, 1e-9).unwrap().flag);
}

#[test]
fn separation_examples() {
    close(separation(&PointSet::new(NormSpec::lp(2.0, 3).unwrap(), basis(3)).unwrap()).unwrap(), SQRT2, 1e-12);
    close(separation(&PointSet::new(NormSpec::lp(1.0, 3).unwrap(), basis(3)).unwrap()).unwrap(), 2.0, 0.0);
    let x = v([0.2, 0.4]);
    let set = PointSet::new(NormSpec::lp(3.0, 2).unwrap(), vec![x.clone(), x.axpy(1e-3, &v([1.0, 0.0]))]).unwrap();
    close(separation(&set).unwrap(), 1e-3, 1e-15);
}

#[test]
fn transport_examples() {
    let cube = NormSpec::cube(3).unwrap();
    let set = PointSet::new(cube.clone(), basis(3).into_iter().flat_map(|b| [-&b, b]).collect()).unwrap();
    let cert = certify_set(&set).unwrap().certificate;

    let same = transport_certificate(&cert, &Matrix::identity(3, 3), &cube).unwrap();
    close(same.d, cert.d, 1e-12);
    for (a, b) in same.set.points().iter().zip(cert.set.points()) {
        close((a - b).max_abs(), 0.0, 1e-12);
    }

    let t = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.1, 1.0, 1.0]));
    let moved = transport_certificate(&cert, &t, &cube).unwrap();
    assert!(moved.d >= cert.d / 1.1 - 1e-6);
    assert!(check_certificate(&moved, 1e-7).unwrap().valid);

    let l2 = NormSpec::lp(2.0, 2).unwrap();
    let set = PointSet::new(l2.clone(), vec![v([1.0, 0.0]), v([0.0, 1.0]), v([-0.6, -0.8])]).unwrap();
    let before = certify_set(&set).unwrap();
    let (s, c) = (30f64.to_radians().sin(), 30f64.to_radians().cos());
    let rotation = Matrix::from_row_slice(2, 2, &[c, -s, s, c]);
    let rotated = transport_certificate(&before.certificate, &rotation, &l2).unwrap();
    let after = certify_set(&rotated.set).unwrap();
    for (key, m) in &before.report.margins {
        close(after.report.margins[key], *m, 1e-9);
    }
}

// construct

#[test]
fn lp_basis_examples() {
    let f = lp_basis_family(2.0, 3).unwrap();
    close(f.claimed.2, SQRT2, 1e-15);
    for pair in f.pairs.values() {
        close(pair.functional.dual_norm(), 1.0, 1e-12);
    }
    let f = lp_basis_family(1.0, 3).unwrap();
    close(f.claimed.2, 2.0, 0.0);
    let f = lp_basis_family(3.0, 2).unwrap();
    close(certify_set(&f.set).unwrap().report.d, 2f64.powf(1.0 / 3.0), 1e-6);
    assert_eq!(lp_basis_family(f64::INFINITY, 3).unwrap_err(), Error::UseSummingFamily);
}

#[test]
fn summing_examples() {
    let f = summing_family(4).unwrap();
    assert_eq!(f.set.len(), 3);
    assert_eq!(separation(&f.set).unwrap(), 2.0);
    let f = summing_family(3).unwrap();
    let pair = &f.pairs[&(0, 1)];
    assert_eq!(pair.functional.coeffs(), &Vector::basis(3, 1));
    close(pair.margin, 2.0, 0.0);
    assert_eq!(summing_family(2).unwrap_err(), Error::TooSmall(2));
}

fn assert_auerbach(system: &AuerbachSystem) {
    let space = system.space();
    for (i, (x, f)) in system.vectors().iter().zip(system.functionals()).enumerate() {
        close(space.norm(x).unwrap(), 1.0, 1e-8);
        close(space.dual_norm(f).unwrap(), 1.0, 1e-8);
        for (j, y) in system.vectors().iter().enumerate() {
            close(f.dot(y), if i == j { 1.0 } else { 0.0 }, 1e-8);
        }
    }
}

#[test]
fn auerbach_examples() {
    let system = auerbach_ascent(&NormSpec::lp(3.0, 3).unwrap(), 0).unwrap();
    close(system.determinant().abs(), 1.0, 1e-12);
    assert_auerbach(&system);
    assert_auerbach(&auerbach_ascent(&hexagon(), 7).unwrap());
    let system = auerbach_ascent(&square(), 0).unwrap();
    close(system.determinant().abs(), 2.0, 1e-9);
    assert_auerbach(&system);
}

#[test]
fn strict_convex_examples() {
    let f = strict_convex_family(&AuerbachSystem::canonical(NormSpec::lp(2.0, 3).unwrap()).unwrap()).unwrap();
    close(f.claimed.2, SQRT2, 1e-12);
    for p in [1.5, 3.0, 5.0] {
        let f = strict_convex_family(&AuerbachSystem::canonical(NormSpec::lp(p, 3).unwrap()).unwrap()).unwrap();
        for lambda in f.pair_constants.values() {
            close(*lambda, 2f64.powf(1.0 / p), 1e-8);
        }
    }
    let cube = AuerbachSystem::canonical(NormSpec::cube(2).unwrap()).unwrap();
    assert!(matches!(strict_convex_family(&cube), Err(Error::NotStrictlyConvexEvidence { .. })));
}

#[test]
fn plus_minus_examples() {
    let f = plus_minus_family(&AuerbachSystem::canonical(NormSpec::lp(2.0, 2).unwrap()).unwrap()).unwrap();
    assert_eq!(f.set.len(), 4);
    close(f.claimed.2, SQRT2, 1e-12);
    assert!(f.check(1e-9).unwrap().valid);
    let pair = &f.pairs[&(0, 1)];
    close(pair.margin, 2.0, 1e-12);
    assert_eq!(pair.functional.coeffs(), &Vector::basis(2, 0));

    let f = plus_minus_family(&AuerbachSystem::canonical(NormSpec::lp(3.0, 3).unwrap()).unwrap()).unwrap();
    assert_eq!(f.set.len(), 6);
    assert!(f.claimed.2 > 1.0);
    assert!(f.check(1e-7).unwrap().valid);
}

#[test]
fn renorm_equilateral_examples() {
    let (space, f) = renorm_equilateral_family(&square(), &AuerbachSystem::canonical(square()).unwrap()).unwrap();
    for p in f.set.points() {
        close(norm_eval(&space, p).unwrap(), 1.0, 1e-9);
    }
    close(norm_eval(&space, &v([2.0, -2.0])).unwrap(), 2.0, 1e-9);
    close(certify_set(&f.set).unwrap().report.d, 2.0, 1e-6);
    assert!(f.check(1e-7).unwrap().valid);
}

#[test]
fn biorthogonal_examples() {
    let l2 = NormSpec::lp(2.0, 2).unwrap();
    let f = normalize_biorthogonal(&basis(2), &basis(2), &l2).unwrap();
    assert_eq!(f.claimed, (1.0, 1.0, 1.0));

    let vectors = vec![v([2.0, 0.0]), v([0.0, 3.0])];
    let functionals = vec![v([0.5, 0.0]), v([0.0, 1.0 / 3.0])];
    let f = normalize_biorthogonal(&vectors, &functionals, &l2).unwrap();
    close(f.claimed.1, 1.0, 1e-12);
    assert!(f.check(1e-9).unwrap().valid);

    let bad = vec![v([1.0, 1.0]), v([0.0, 1.0])];
    assert!(matches!(normalize_biorthogonal(&basis(2), &bad, &l2), Err(Error::NotBiorthogonal { .. })));
}

// search

#[test]
fn brute_force_examples() {
    let set = PointSet::new(NormSpec::lp(2.0, 2).unwrap(), vec![v([1.0, 0.0]), v([-1.0, 0.0])]).unwrap();
    let m = brute_force_margin(&set, 0, 1, 360).unwrap();
    assert!(m <= 2.0 && m > 2.0 - 1e-3);

    let set = PointSet::new(NormSpec::lp(2.0, 3).unwrap(), basis(3)).unwrap();
    close(brute_force_margin(&set, 0, 1, 64).unwrap(), SQRT2, 1e-2);

    let set = PointSet::new(NormSpec::lp(2.0, 4).unwrap(), basis(4)).unwrap();
    assert_eq!(brute_force_margin(&set, 0, 1, 8), Err(Error::UnsupportedDimension(4)));
}

#[test]
fn greedy_examples() {
    let s = greedy_separated(&NormSpec::lp(2.0, 2).unwrap(), 2, 400, 0).unwrap();
    assert!(separation(&s).unwrap() > 2.0 - 1e-3);
    let s = greedy_separated(&NormSpec::linf(2), 4, 2000, 0).unwrap();
    assert!(separation(&s).unwrap() >= 2.0 - 1e-2);
    let s = greedy_separated(&NormSpec::lp(2.0, 3).unwrap(), 4, 2000, 0).unwrap();
    assert!(separation(&s).unwrap() >= 1.5);
}

#[test]
fn anneal_examples() {
    let config = SearchConfig { iterations: 1500, ..SearchConfig::default() };
    let run = anneal_bsa(&NormSpec::lp(2.0, 2).unwrap(), 4, &config).unwrap();
    assert!(run.report.d >= SQRT2 - 1e-2, "d = {}", run.report.d);
    let run = anneal_bsa(&NormSpec::lp(1.0, 3).unwrap(), 3, &config).unwrap();
    assert!(run.report.d >= 2.0 - 1e-2, "d = {}", run.report.d);
    let run = anneal_bsa(&hexagon(), 2, &SearchConfig::default()).unwrap();
    close(run.report.d, 2.0, 1e-6);
}

#[test]
fn antipodal_search_examples() {
    let l2 = NormSpec::lp(2.0, 2).unwrap();
    let config = SearchConfig { restarts: 2, iterations: 2000, decay: 0.8, ..SearchConfig::default() };
    let found = max_antipodal_search(&l2, 4, &config).unwrap();
    assert!(found.found);
    assert!(found.best.report.d >= SQRT2 - 1e-2);
    assert!(max_antipodal_search(&l2, 2, &SearchConfig::default()).unwrap().found);
    let none = max_antipodal_search(&l2, 5, &SearchConfig { restarts: 2, iterations: 300, ..SearchConfig::default() })
        .unwrap();
    assert!(!none.found);
    assert!(none.witness().is_none());
}

#[test]
fn ka_lower_bound_examples() {
    let config = SearchConfig { restarts: 2, iterations: 600, ..SearchConfig::default() };
    let bound = ka_lower_bound(&NormSpec::lp(2.0, 3).unwrap(), 6, &config).unwrap();
    assert!(bound.best_d >= SQRT2 - 1e-2);
    assert!(check_certificate(&bound.witness, 1e-7).unwrap().valid);

    let union = renorm_union(&square(), &[v([2.0, 0.0]), v([0.0, 2.0])]).unwrap();
    assert!(ka_lower_bound(&union, 4, &config).unwrap().best_d >= 2.0 - 1e-2);
    close(ka_lower_bound(&union, 2, &config).unwrap().best_d, 2.0, 1e-6);
}
