//! Stochastic extremal search and a brute-force margin oracle.
//!
//! Searches only ever exhibit finite sets, so everything here is a lower
//! bound. Every reported value comes from [`certify_set`] on the returned
//! witness.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::certify::{certify_set, check_certificate, BsaCertificate, MarginReport, PointSet};
use crate::linalg::Vector;
use crate::normed_space::{fibonacci_sphere, Exponent, NormSpec};
use crate::{Error, Result};

/// Annealing parameters. The temperature starts at `initial_temperature`
/// and is multiplied by `decay` every `decay_interval` proposals; proposals
/// move one point by a Gaussian step of scale `step_scale * temperature`
/// (its antipode, if present in the set, moves with it), or with
/// probability `antipode_rate` to the antipode of another point. When the
/// unit ball has explicit vertices, half of those jumps go to the vertex
/// nearest the moved point instead.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Proposals per restart.
    pub iterations: usize,
    pub initial_temperature: f64,
    pub decay: f64,
    pub decay_interval: usize,
    pub step_scale: f64,
    pub antipode_rate: f64,
    /// Margin threshold for antipodality.
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 4,
            iterations: 500,
            initial_temperature: 0.3,
            decay: 0.95,
            decay_interval: 100,
            step_scale: 0.5,
            antipode_rate: 0.1,
            tolerance: 1e-6,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.iterations == 0 || self.decay_interval == 0 {
            return Err(Error::InvalidConfig("restarts, iterations and decay_interval must be positive"));
        }
        if !(self.initial_temperature > 0.0) || !(self.step_scale > 0.0) || !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("temperature, step scale and tolerance must be positive"));
        }
        if !(0.0..=1.0).contains(&self.antipode_rate) {
            return Err(Error::InvalidConfig("antipode_rate must lie in [0, 1]"));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidConfig("decay must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Largest `f(y) - f(x)` over sampled unit functionals that respect the
/// order constraints of the other points within `1e-9`.
///
/// Samples are `u / |u|_*` for `u` on a Euclidean sphere grid: `grid`
/// equally spaced angles in dimension 2, a Fibonacci grid of `grid^2 / 2`
/// points in dimension 3. The grid is augmented with the edges of the
/// constraint cone (so a thin feasible cone is never missed) and, for
/// polyhedral norms, with the vertices of the dual ball and the crossings of
/// cone planes with segments between them. Together these contain every
/// vertex of the feasible region, so polyhedral margins are found exactly.
pub fn brute_force_margin(set: &PointSet, y: usize, x: usize, grid: usize) -> Result<f64> {
    let space = set.space();
    let dim = space.dim();
    for i in [y, x] {
        if i >= set.len() {
            return Err(Error::IndexError(i));
        }
    }
    if y == x {
        return Err(Error::IndexError(y));
    }
    if grid == 0 {
        return Err(Error::InvalidConfig("grid must be positive"));
    }
    let pts = set.points();
    // f . a >= 0 for each row
    let rows: Vec<Vector> = pts
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != y && *k != x)
        .flat_map(|(_, z)| [z - &pts[x], &pts[y] - z])
        .collect();
    let mut samples: Vec<Vector> = match dim {
        1 => Vec::from([Vector::from([1.0]), Vector::from([-1.0])]),
        2 => (0..grid)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / grid as f64;
                Vector::from([t.cos(), t.sin()])
            })
            .collect(),
        3 => fibonacci_sphere((grid * grid / 2).max(4)),
        _ => return Err(Error::UnsupportedDimension(dim)),
    };
    // vertices of the dual ball, and in space the points where a cone plane
    // crosses a segment between two of them
    let dual_vertices = dual_ball_vertices(space);
    samples.extend(dual_vertices.iter().cloned());
    if dim == 3 {
        for a in &rows {
            for (i, h) in dual_vertices.iter().enumerate() {
                for g in &dual_vertices[i + 1..] {
                    let (ah, ag) = (a.dot(h), a.dot(g));
                    if (ah > 0.0) != (ag > 0.0) && ah != ag {
                        samples.push(h.axpy(ah / (ah - ag), &(g - h)));
                    }
                }
            }
        }
    }
    match dim {
        2 => {
            for a in &rows {
                let perp = Vector::from([-a[1], a[0]]);
                samples.push(-&perp);
                samples.push(perp);
            }
        }
        3 => {
            for (i, a) in rows.iter().enumerate() {
                for b in &rows[i + 1..] {
                    let c = Vector::from([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]);
                    if !c.is_zero() {
                        samples.push(-&c);
                        samples.push(c);
                    }
                }
            }
        }
        _ => {}
    }
    let diff = &pts[y] - &pts[x];
    let mut best = 0.0_f64;
    for u in &samples {
        let gain = u.dot(&diff);
        if gain <= 0.0 {
            continue;
        }
        let dual = space.dual_norm(u)?;
        if dual == 0.0 || gain / dual <= best {
            continue;
        }
        if rows.iter().all(|a| a.dot(u) / dual >= -1e-9) {
            best = gain / dual;
        }
    }
    Ok(best)
}

fn dual_ball_vertices(space: &NormSpec) -> Vec<Vector> {
    let n = space.dim();
    match space {
        NormSpec::Polytope { .. } => space.facet_normals().unwrap_or_default(),
        NormSpec::Lp { p: Exponent::Infinity, .. } => {
            (0..n).flat_map(|i| [Vector::basis(n, i), -&Vector::basis(n, i)]).collect()
        }
        NormSpec::Lp { p: Exponent::Finite(p), .. } if *p == 1.0 => (0..1usize << n)
            .map(|m| Vector::from((0..n).map(|i| if m >> i & 1 == 1 { -1.0 } else { 1.0 }).collect::<Vec<f64>>()))
            .collect(),
        NormSpec::Lp { .. } => Vec::new(),
    }
}

fn random_unit(space: &NormSpec, rng: &mut ChaCha8Rng) -> Result<Vector> {
    loop {
        let g: Vec<f64> = (0..space.dim()).map(|_| StandardNormal.sample(&mut *rng)).collect();
        let g = Vector::from(g);
        if !g.is_zero() {
            return space.normalize(&g);
        }
    }
}

fn min_distance(space: &NormSpec, p: &Vector, others: &[&Vector]) -> Result<f64> {
    let mut m = f64::INFINITY;
    for q in others {
        m = m.min(space.norm(&(p - *q))?);
    }
    Ok(m)
}

/// Farthest-point greedy packing on the unit sphere, followed by
/// re-seating passes that move each point to the pool candidate farthest
/// from the rest while that improves the separation.
///
/// The candidate pool is `candidate_pool` random unit vectors plus, for
/// polytope balls, the ball's vertices.
pub fn greedy_separated(space: &NormSpec, count: usize, candidate_pool: usize, seed: u64) -> Result<PointSet> {
    if count < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = random_unit(space, &mut rng)?;
    let mut pool = Vec::with_capacity(candidate_pool);
    for _ in 0..candidate_pool.max(count) {
        pool.push(random_unit(space, &mut rng)?);
    }
    if let Some(vertices) = space.explicit_vertices() {
        pool.extend(vertices);
    }
    let mut chosen = Vec::from([start]);
    while chosen.len() < count {
        let refs: Vec<&Vector> = chosen.iter().collect();
        let mut best: Option<(f64, usize)> = None;
        for (k, c) in pool.iter().enumerate() {
            let d = min_distance(space, c, &refs)?;
            if best.is_none_or(|(b, _)| d > b) {
                best = Some((d, k));
            }
        }
        let (_, k) = best.ok_or(Error::TooFewPoints(count))?;
        chosen.push(pool[k].clone());
    }
    for _ in 0..64 {
        let mut improved = false;
        for i in 0..count {
            let others: Vec<&Vector> = chosen.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v).collect();
            let current = min_distance(space, &chosen[i], &others)?;
            let mut best = (current, None);
            for (k, c) in pool.iter().enumerate() {
                let d = min_distance(space, c, &others)?;
                if d > best.0 * (1.0 + 1e-12) {
                    best = (d, Some(k));
                }
            }
            if let (_, Some(k)) = best {
                chosen[i] = pool[k].clone();
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    PointSet::new(space.clone(), chosen)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Annealed {
    pub set: PointSet,
    pub report: MarginReport,
    pub certificate: BsaCertificate,
}

fn random_configuration(space: &NormSpec, count: usize, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let mut points: Vec<Vector> = Vec::with_capacity(count);
    while points.len() < count {
        let p = random_unit(space, rng)?;
        let refs: Vec<&Vector> = points.iter().collect();
        if min_distance(space, &p, &refs)? >= 1e-9 {
            points.push(p);
        }
    }
    PointSet::new(space.clone(), points)
}

/// One annealing run; `stop` ends it early once the best objective passes.
fn anneal_run(
    space: &NormSpec,
    count: usize,
    config: &SearchConfig,
    restart: usize,
    stop: Option<f64>,
) -> Result<Annealed> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(restart as u64));
    let mut set = random_configuration(space, count, &mut rng)?;
    let mut current = certify_set(&set)?;
    let mut best = current.clone();
    let mut temperature = config.initial_temperature;
    let vertices = space.explicit_vertices();
    // with ball vertices available, half of the jump budget snaps to one
    let antipode_rate = if vertices.is_some() { config.antipode_rate / 2.0 } else { config.antipode_rate };
    for step in 0..config.iterations {
        if stop.is_some_and(|t| best.report.d > t) {
            break;
        }
        if step > 0 && step % config.decay_interval == 0 {
            temperature *= config.decay;
        }
        let i = rng.random_range(0..count);
        let jump: f64 = rng.random();
        let moved = if jump < antipode_rate {
            let j = (i + rng.random_range(1..count)) % count;
            -&set.points()[j]
        } else if let Some(vertices) = vertices.as_ref().filter(|_| jump < config.antipode_rate) {
            nearest(space, &set.points()[i], vertices)?.clone()
        } else {
            let scale = config.step_scale * temperature;
            let g: Vec<f64> = (0..space.dim()).map(|_| StandardNormal.sample(&mut rng)).collect();
            set.points()[i].axpy(scale, &Vector::from(g))
        };
        let uniform: f64 = rng.random();
        if moved.is_zero() || !moved.is_finite() {
            continue;
        }
        let moved = space.normalize(&moved)?;
        let others: Vec<&Vector> = set.points().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v).collect();
        if min_distance(space, &moved, &others)? < 1e-9 {
            continue;
        }
        let mut points = set.points().to_vec();
        // an antipodal partner of x_i follows it, keeping {x, -x} pairs intact
        if jump >= antipode_rate {
            if let Some(j) = (0..count).find(|&j| j != i && (&points[j] + &points[i]).max_abs() <= 1e-12) {
                points[j] = -&moved;
            }
        }
        points[i] = moved;
        let proposal = match PointSet::new(space.clone(), points) {
            Ok(p) => p,
            Err(Error::DuplicatePoint(..)) => continue,
            Err(e) => return Err(e),
        };
        let scored = certify_set(&proposal)?;
        let delta = scored.report.d - current.report.d;
        if delta >= 0.0 || uniform < (delta / temperature).exp() {
            set = proposal;
            current = scored;
            if current.report.d > best.report.d {
                best = current.clone();
            }
        }
    }
    Ok(Annealed { set: best.certificate.set.clone(), report: best.report, certificate: best.certificate })
}

fn nearest<'a>(space: &NormSpec, x: &Vector, candidates: &'a [Vector]) -> Result<&'a Vector> {
    let mut best = (f64::INFINITY, &candidates[0]);
    for c in candidates {
        let d = space.norm(&(c - x))?;
        if d < best.0 {
            best = (d, c);
        }
    }
    Ok(best.1)
}

fn anneal(space: &NormSpec, count: usize, config: &SearchConfig, stop: Option<f64>) -> Result<Annealed> {
    config.validate()?;
    if count < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let mut best: Option<Annealed> = None;
    for restart in 0..config.restarts {
        let run = anneal_run(space, count, config, restart, stop)?;
        let better = best.as_ref().is_none_or(|b| run.report.d > b.report.d);
        if better {
            best = Some(run);
        }
        if stop.is_some_and(|t| best.as_ref().is_some_and(|b| b.report.d > t)) {
            break;
        }
    }
    let best = best.ok_or(Error::InvalidConfig("no restarts"))?;
    // d = 0 claims nothing; any positive d must be certified
    if best.report.d > 0.0 && !check_certificate(&best.certificate, 1e-7)?.valid {
        return Err(Error::NumericalBreakdown("search witness failed re-verification"));
    }
    Ok(best)
}

/// Simulated annealing of `count` unit vectors maximizing the b.s.a.
/// constant `d` of [`certify_set`]. Deterministic given the config.
pub fn anneal_bsa(space: &NormSpec, count: usize, config: &SearchConfig) -> Result<Annealed> {
    anneal(space, count, config, None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntipodalSearch {
    pub found: bool,
    /// Best configuration seen, antipodal or not.
    pub best: Annealed,
}

impl AntipodalSearch {
    pub fn witness(&self) -> Option<&PointSet> {
        self.found.then_some(&self.best.set)
    }
}

/// Annealing on the smallest pair margin. A configuration whose margins all
/// exceed `config.tolerance` is an antipodal witness; all restarts run to
/// completion so the witness returned is the best one seen.
pub fn max_antipodal_search(space: &NormSpec, cardinality: usize, config: &SearchConfig) -> Result<AntipodalSearch> {
    let dim = space.dim();
    if dim > 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    if cardinality > (1usize << dim) + 1 {
        return Err(Error::InvalidConfig("cardinality above 2^dim + 1"));
    }
    let best = anneal(space, cardinality, config, None)?;
    Ok(AntipodalSearch { found: best.report.d > config.tolerance, best })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KaBound {
    pub best_d: f64,
    pub witness: BsaCertificate,
    /// Best `d` found for each cardinality `2..=max_count`.
    pub per_count: Vec<(usize, f64)>,
}

/// Runs [`anneal_bsa`] for every cardinality in `2..=max_count` and keeps
/// the best certified `d` (the smallest cardinality wins ties).
pub fn ka_lower_bound(space: &NormSpec, max_count: usize, config: &SearchConfig) -> Result<KaBound> {
    if max_count < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let mut per_count = Vec::new();
    let mut best: Option<Annealed> = None;
    for count in 2..=max_count {
        let run = anneal_bsa(space, count, config)?;
        per_count.push((count, run.report.d));
        if best.as_ref().is_none_or(|b| run.report.d > b.report.d) {
            best = Some(run);
        }
    }
    let best = best.ok_or(Error::TooFewPoints(2))?;
    Ok(KaBound { best_d: best.report.d, witness: best.certificate, per_count })
}
