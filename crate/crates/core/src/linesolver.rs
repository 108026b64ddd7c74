//! The 27 lines of a smooth cubic surface by continuation from the Fermat cubic.
//!
//! A line in chart `(i, j)` is spanned by `v0 = e_i + a e_k + c e_l` and
//! `v1 = e_j + b e_k + d e_l`, where `k < l` are the remaining coordinates.
//! It lies on `F` iff the four coefficients of `F(s v0 + t v1)` vanish.

use nalgebra::{SMatrix, SVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homotopy::{self, ChartedSystem, Eval, PathStats, TrackError, TrackOptions};
use crate::numeric::{
    self, chordal_distance, projective_normalize, random_unit_complex, random_unitary, zeta3, SymTensor, C,
    ONE, ZERO,
};
use crate::permgrp::Permutation;
use crate::schlafli::{IncidenceModel, SchlafliError};
use crate::surfaces::{CubicForm, ProjectiveMatrix};

pub const MEET_TOL: f64 = 1e-8;
pub const MEET_REJECT: f64 = 1e-4;
pub const DISTINCT_TOL: f64 = 1e-6;
pub const MATCH_GAP: f64 = 1e3;
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Plücker index pairs in storage order.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("path {path} failed: {source}")]
    PathFailure { path: usize, source: TrackError },
    #[error("only {distinct} distinct endpoints (probable singular surface)")]
    Collision { distinct: usize },
    #[error("residual {residual:e} after polishing")]
    Residual { residual: f64 },
    #[error("lines meet ambiguously (pairing {pairing:e})")]
    AmbiguousMeet { pairing: f64 },
    #[error("bad incidence graph: {0}")]
    Incidence(#[from] SchlafliError),
    #[error("endpoint matching is ambiguous (gap ratio {gap:e})")]
    AmbiguousMatch { gap: f64 },
}

/// Coordinate chart: the two coordinates used as line parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineChart {
    pub i: u8,
    pub j: u8,
}

impl LineChart {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j && j < 4);
        LineChart {
            i: i as u8,
            j: j as u8,
        }
    }

    /// The two dependent coordinates `k < l`.
    pub fn others(self) -> (usize, usize) {
        let rest: Vec<usize> = (0..4).filter(|&m| m != self.i as usize && m != self.j as usize).collect();
        (rest[0], rest[1])
    }

    pub fn basis(self, params: &[C; 4]) -> [[C; 4]; 2] {
        let (k, l) = self.others();
        let (i, j) = (self.i as usize, self.j as usize);
        let mut v0 = [ZERO; 4];
        let mut v1 = [ZERO; 4];
        v0[i] = ONE;
        v1[j] = ONE;
        v0[k] = params[0];
        v1[k] = params[1];
        v0[l] = params[2];
        v1[l] = params[3];
        [v0, v1]
    }
}

fn plucker_raw(u: &[C; 4], v: &[C; 4]) -> [C; 6] {
    PLUCKER_PAIRS.map(|(i, j)| u[i] * v[j] - u[j] * v[i])
}

/// A line in projective 3-space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub chart: LineChart,
    pub params: [C; 4],
    pub plucker: [C; 6],
}

impl Line {
    pub fn from_chart(chart: LineChart, params: [C; 4]) -> Line {
        let [v0, v1] = chart.basis(&params);
        let p = projective_normalize(&plucker_raw(&v0, &v1));
        Line {
            chart,
            params,
            plucker: p.try_into().unwrap(),
        }
    }

    /// The line spanned by two independent vectors, in its best chart.
    pub fn from_span(u: &[C; 4], v: &[C; 4]) -> Line {
        let p = plucker_raw(u, v);
        let best = (0..6)
            .max_by(|&a, &b| p[a].norm().partial_cmp(&p[b].norm()).unwrap())
            .unwrap();
        let (i, j) = PLUCKER_PAIRS[best];
        Self::from_span_in_chart(u, v, LineChart::new(i, j))
    }

    fn from_span_in_chart(u: &[C; 4], v: &[C; 4], chart: LineChart) -> Line {
        let (i, j) = (chart.i as usize, chart.j as usize);
        let (k, l) = chart.others();
        // rows (u, v); new basis = S^{-1} (u; v) with S the (i, j) columns
        let det = u[i] * v[j] - u[j] * v[i];
        let inv = [[v[j] / det, -u[j] / det], [-v[i] / det, u[i] / det]];
        let comb = |r: usize, m: usize| inv[r][0] * u[m] + inv[r][1] * v[m];
        let params = [comb(0, k), comb(1, k), comb(0, l), comb(1, l)];
        Line::from_chart(chart, params)
    }

    pub fn basis(&self) -> [[C; 4]; 2] {
        self.chart.basis(&self.params)
    }

    pub fn point(&self, s: C, t: C) -> [C; 4] {
        let [v0, v1] = self.basis();
        std::array::from_fn(|m| s * v0[m] + t * v1[m])
    }

    pub fn transform(&self, m: &ProjectiveMatrix) -> Line {
        let [v0, v1] = self.basis();
        Line::from_span(&m.apply(&v0), &m.apply(&v1))
    }

    /// Same line re-expressed in the chart with the largest Plücker entry.
    pub fn rechart(&self) -> Line {
        let [v0, v1] = self.basis();
        Line::from_span(&v0, &v1)
    }

    /// Chordal distance between Plücker points.
    pub fn distance(&self, other: &Line) -> f64 {
        chordal_distance(&self.plucker, &other.plucker)
    }

    /// Symmetric bilinear Plücker pairing; zero iff the lines meet.
    pub fn pairing(&self, other: &Line) -> C {
        let p = &self.plucker;
        let q = &other.plucker;
        p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[5] * q[0] - p[4] * q[1] + p[3] * q[2]
    }

    /// Point of intersection with a meeting line.
    pub fn intersection(&self, other: &Line) -> [C; 4] {
        let [u0, u1] = self.basis();
        let [w0, w1] = other.basis();
        let m = SMatrix::<C, 4, 4>::from_fn(|r, col| match col {
            0 => u0[r],
            1 => u1[r],
            2 => -w0[r],
            _ => -w1[r],
        });
        let svd = m.svd(false, true);
        let vt = svd.v_t.unwrap();
        let (min_idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let kernel = vt.row(min_idx).adjoint();
        let p = self.point(kernel[0], kernel[1]);
        projective_normalize(&p).try_into().unwrap()
    }

    /// Scale-normalized residual `max |F(p)|` over sample points of the line.
    pub fn residual_on(&self, form: &CubicForm) -> f64 {
        let samples = [
            (ONE, ZERO),
            (ZERO, ONE),
            (ONE, ONE),
            (ONE, C::new(-0.7, 0.4)),
            (C::new(0.3, -1.1), ONE),
        ];
        samples
            .iter()
            .map(|&(s, t)| {
                let p = numeric::normalized(&self.point(s, t));
                form.eval(&p).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `[T(v0,v0,v0), 3T(v0,v0,v1), 3T(v0,v1,v1), T(v1,v1,v1)]` and its gradients
/// with respect to `v0` and `v1`.
fn line_equations(t: &SymTensor<4>, v0: &[C; 4], v1: &[C; 4]) -> ([C; 4], [[C; 4]; 4], [[C; 4]; 4]) {
    let a = t.contract(v0);
    let b = t.contract(v1);
    let mv = |m: &[[C; 4]; 4], v: &[C; 4]| numeric::mat_vec(m, v);
    let dot = |u: &[C; 4], v: &[C; 4]| (0..4).map(|m| u[m] * v[m]).sum::<C>();
    let p = mv(&a, v0);
    let q = mv(&a, v1);
    let r = mv(&b, v1);
    let e = [dot(v0, &p), 3.0 * dot(v0, &q), 3.0 * dot(v1, &q), dot(v1, &r)];
    let g0 = [p.map(|z| 3.0 * z), q.map(|z| 6.0 * z), r.map(|z| 3.0 * z), [ZERO; 4]];
    let g1 = [[ZERO; 4], p.map(|z| 3.0 * z), q.map(|z| 6.0 * z), r.map(|z| 3.0 * z)];
    (e, g0, g1)
}

fn line_values(t: &SymTensor<4>, v0: &[C; 4], v1: &[C; 4]) -> [C; 4] {
    line_equations(t, v0, v1).0
}

/// Lines on the cubic `start + τ·delta`, τ ∈ [0, 1].
pub struct LinePath {
    pub start: SymTensor<4>,
    pub delta: SymTensor<4>,
}

impl LinePath {
    pub fn between(a: &SymTensor<4>, b: &SymTensor<4>) -> Self {
        LinePath {
            start: *a,
            delta: b.axpy(C::from(-1.0), a),
        }
    }

    pub fn constant(a: &SymTensor<4>) -> Self {
        LinePath {
            start: *a,
            delta: SymTensor::zero(),
        }
    }

    fn at(&self, t: f64) -> SymTensor<4> {
        self.start.axpy(C::from(t), &self.delta)
    }
}

impl ChartedSystem<4> for LinePath {
    type Chart = LineChart;

    fn evaluate(&self, chart: LineChart, x: &SVector<C, 4>, t: f64) -> Eval<4> {
        let params = [x[0], x[1], x[2], x[3]];
        let [v0, v1] = chart.basis(&params);
        let (e, g0, g1) = line_equations(&self.at(t), &v0, &v1);
        let (k, l) = chart.others();
        // unknown order (a, b, c, d) = (v0_k, v1_k, v0_l, v1_l)
        let jac = SMatrix::<C, 4, 4>::from_fn(|row, col| match col {
            0 => g0[row][k],
            1 => g1[row][k],
            2 => g0[row][l],
            _ => g1[row][l],
        });
        let dt = line_values(&self.delta, &v0, &v1);
        Eval {
            value: SVector::from(e),
            jac,
            dt: SVector::from(dt),
        }
    }

    fn rechart(&self, chart: LineChart, x: &SVector<C, 4>) -> Option<(LineChart, SVector<C, 4>)> {
        if x.iter().all(|z| z.norm() <= 2.0) {
            return None;
        }
        let line = Line::from_chart(chart, [x[0], x[1], x[2], x[3]]).rechart();
        if line.chart == chart {
            return None;
        }
        Some((line.chart, SVector::from(line.params)))
    }
}

/// Continues one line along a coefficient path.
pub fn continue_line(path: &LinePath, line: &Line, opts: &TrackOptions) -> Result<(Line, PathStats), TrackError> {
    let start = line.rechart();
    let (chart, x, stats) = homotopy::track(path, start.chart, SVector::from(start.params), opts)?;
    Ok((Line::from_chart(chart, [x[0], x[1], x[2], x[3]]), stats))
}

/// Newton polish of a line on a fixed cubic.
pub fn polish_line(t: &SymTensor<4>, line: &Line, tol: f64) -> Result<(Line, f64), TrackError> {
    let sys = LinePath::constant(t);
    let l = line.rechart();
    let (x, res) = homotopy::polish(&sys, l.chart, SVector::from(l.params), 0.0, tol)?;
    Ok((Line::from_chart(l.chart, [x[0], x[1], x[2], x[3]]), res))
}

/// The 27 lines `{x_p + ζ^a x_q = 0, x_r + ζ^b x_s = 0}` of `x³+y³+z³+w³`,
/// indexed `9f + 3a + b` over the three pairings `f`.
pub fn fermat_start_lines() -> Vec<Line> {
    let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
    let z = zeta3();
    let mut out = Vec::with_capacity(27);
    for &(p, q, r, s) in &pairings {
        for a in 0..3 {
            for b in 0..3 {
                let mut u = [ZERO; 4];
                u[p] = -z.powi(a);
                u[q] = ONE;
                let mut v = [ZERO; 4];
                v[r] = -z.powi(b);
                v[s] = ONE;
                out.push(Line::from_span(&u, &v));
            }
        }
    }
    out
}

/// Outcome of a 27-line solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub lines: Vec<Line>,
    pub max_residual: f64,
    pub min_pairwise_distance: f64,
    pub path_failures: usize,
    pub seed: u64,
    pub attempts: usize,
    pub gamma: C,
    pub stats: PathStats,
}

pub fn min_pairwise_distance(lines: &[Line]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            best = best.min(lines[i].distance(&lines[j]));
        }
    }
    best
}

fn solve_attempt(
    form: &CubicForm,
    rng: &mut ChaCha8Rng,
    opts: &TrackOptions,
) -> (Result<Vec<Line>, SolveError>, usize, C, PathStats) {
    let u = ProjectiveMatrix::from_nalgebra(random_unitary::<4, _>(rng)).expect("unitary");
    let gamma = random_unit_complex(rng);
    let target = form.tensor().compose_linear(u.entries());
    let start = CubicForm::fermat().tensor().scale(gamma);
    let path = LinePath::between(&start, &target);
    let results: Vec<Result<(Line, PathStats), TrackError>> = fermat_start_lines()
        .par_iter()
        .map(|l| continue_line(&path, l, opts))
        .collect();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let mut stats = PathStats::default();
    let mut lines = Vec::with_capacity(27);
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok((l, s)) => {
                stats.merge(&s);
                lines.push(l.transform(&u));
            }
            Err(e) => return (Err(SolveError::PathFailure { path: k, source: e }), failures, gamma, stats),
        }
    }
    (Ok(lines), failures, gamma, stats)
}

/// Solves for the 27 lines of `form`. The seed fixes the random coordinate
/// change and γ; failed attempts are retried with fresh randomness and then
/// with stricter step control.
pub fn solve_lines(form: &CubicForm, seed: u64) -> Result<SolveReport, SolveError> {
    solve_lines_with(form, seed, &TrackOptions::default())
}

pub fn solve_lines_with(form: &CubicForm, seed: u64, opts: &TrackOptions) -> Result<SolveReport, SolveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tensor = form.tensor();
    let mut last_err = None;
    let mut total_failures = 0;
    let strict = opts.stricter();
    for attempt in 0..4 {
        let o = if attempt < 2 { opts } else { &strict };
        let (res, failures, gamma, stats) = solve_attempt(form, &mut rng, o);
        total_failures += failures;
        let lines = match res {
            Ok(l) => l,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let mut polished = Vec::with_capacity(27);
        let mut max_residual: f64 = 0.0;
        for l in &lines {
            match polish_line(&tensor, l, 1e-15) {
                Ok((p, res)) => {
                    max_residual = max_residual.max(res);
                    polished.push(p);
                }
                Err(e) => {
                    last_err = Some(SolveError::PathFailure { path: polished.len(), source: e });
                    break;
                }
            }
        }
        if polished.len() < 27 {
            continue;
        }
        let min_dist = min_pairwise_distance(&polished);
        if min_dist <= DISTINCT_TOL {
            last_err = Some(SolveError::Collision {
                distinct: count_distinct(&polished),
            });
            continue;
        }
        let cert = polished.iter().map(|l| l.residual_on(form)).fold(0.0, f64::max);
        if max_residual > 1e-12 || cert > RESIDUAL_TOL {
            last_err = Some(SolveError::Residual {
                residual: max_residual.max(cert),
            });
            continue;
        }
        return Ok(SolveReport {
            lines: polished,
            max_residual: max_residual.max(cert),
            min_pairwise_distance: min_dist,
            path_failures: total_failures,
            seed,
            attempts: attempt + 1,
            gamma,
            stats,
        });
    }
    Err(last_err.expect("at least one attempt"))
}

fn count_distinct(lines: &[Line]) -> usize {
    let mut reps: Vec<&Line> = Vec::new();
    for l in lines {
        if reps.iter().all(|r| r.distance(l) > DISTINCT_TOL) {
            reps.push(l);
        }
    }
    reps.len()
}

/// Whether two lines meet, with an error in the ambiguous band.
pub fn lines_meet(l1: &Line, l2: &Line) -> Result<bool, SolveError> {
    let pairing = l1.pairing(l2).norm();
    if pairing < MEET_TOL {
        Ok(true)
    } else if pairing > MEET_REJECT {
        Ok(false)
    } else {
        Err(SolveError::AmbiguousMeet { pairing })
    }
}

/// Incidence graph of 27 lines, checked to be the Schläfli graph.
pub fn incidence_graph(lines: &[Line]) -> Result<Vec<Vec<bool>>, SolveError> {
    let n = lines.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        if i + 1 < n && lines[i + 1..].iter().any(|l| l.distance(&lines[i]) <= DISTINCT_TOL) {
            return Err(SolveError::Collision {
                distinct: count_distinct(lines),
            });
        }
        for j in i + 1..n {
            let m = lines_meet(&lines[i], &lines[j])?;
            adj[i][j] = m;
            adj[j][i] = m;
        }
    }
    let model = IncidenceModel::from_adjacency(adj)?;
    model.check_strongly_regular()?;
    Ok(model.adjacency)
}

/// Matches each of `ends` to the nearest element of `reference`; requires a
/// gap ratio of at least [`MATCH_GAP`] and a bijective result. Returns the
/// matching and the smallest gap ratio seen.
pub fn match_to_reference(
    ends: &[Vec<C>],
    reference: &[Vec<C>],
) -> Result<(Vec<usize>, f64), f64> {
    let mut map = Vec::with_capacity(ends.len());
    let mut min_gap = f64::INFINITY;
    for e in ends {
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = f64::INFINITY;
        for (k, r) in reference.iter().enumerate() {
            let d = chordal_distance(e, r);
            if d < best.0 {
                second = best.0;
                best = (d, k);
            } else if d < second {
                second = d;
            }
        }
        let gap = second / best.0.max(1e-300);
        min_gap = min_gap.min(gap);
        if gap < MATCH_GAP {
            return Err(gap);
        }
        map.push(best.1);
    }
    let mut seen = vec![false; reference.len()];
    for &m in &map {
        if seen[m] {
            return Err(1.0);
        }
        seen[m] = true;
    }
    Ok((map, min_gap))
}

/// Permutation of slots sending `ends[s]`'s slot `s` to the index of the
/// matching reference line.
pub fn match_lines(ends: &[Line], reference: &[Line]) -> Result<(Permutation, f64), SolveError> {
    let e: Vec<Vec<C>> = ends.iter().map(|l| l.plucker.to_vec()).collect();
    let r: Vec<Vec<C>> = reference.iter().map(|l| l.plucker.to_vec()).collect();
    let (map, gap) = match_to_reference(&e, &r).map_err(|gap| SolveError::AmbiguousMatch { gap })?;
    Ok((Permutation::from_images(&map).expect("bijective matching"), gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::random_complex;
    use crate::schlafli::label_lines;

    #[test]
    fn fermat_lines_lie_on_fermat() {
        let f = CubicForm::fermat();
        let lines = fermat_start_lines();
        assert_eq!(lines.len(), 27);
        for l in &lines {
            assert!(l.residual_on(&f) < 1e-14);
            let [v0, v1] = l.basis();
            assert!(line_values(&f.tensor(), &v0, &v1).iter().all(|z| z.norm() < 1e-14));
        }
        assert!(min_pairwise_distance(&lines) > 0.1);
    }

    #[test]
    fn fermat_incidence_is_schlafli() {
        let adj = incidence_graph(&fermat_start_lines()).unwrap();
        let edges: usize = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2;
        assert_eq!(edges, 135);
        label_lines(&adj).unwrap();
    }

    #[test]
    fn plucker_quadric_and_chart_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let u: [C; 4] = std::array::from_fn(|_| random_complex(&mut rng));
            let v: [C; 4] = std::array::from_fn(|_| random_complex(&mut rng));
            let l = Line::from_span(&u, &v);
            assert!(l.pairing(&l).norm() < 1e-12);
            let direct = projective_normalize(&plucker_raw(&u, &v));
            assert!(chordal_distance(&direct, &l.plucker) < 1e-12);
            for chart in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                let other = Line::from_span_in_chart(&u, &v, LineChart::new(chart.0, chart.1));
                assert!(other.distance(&l) < 1e-10);
            }
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = SymTensor::<4>::from_coeffs(&(0..20).map(|_| random_complex(&mut rng)).collect::<Vec<_>>());
        let b = SymTensor::<4>::from_coeffs(&(0..20).map(|_| random_complex(&mut rng)).collect::<Vec<_>>());
        let path = LinePath::between(&a, &b);
        let chart = LineChart::new(1, 3);
        let x = SVector::<C, 4>::from_fn(|_, _| random_complex(&mut rng));
        let ev = path.evaluate(chart, &x, 0.3);
        let h = 1e-6;
        for col in 0..4 {
            let mut xp = x;
            xp[col] += h;
            let mut xm = x;
            xm[col] -= h;
            let fd = (path.evaluate(chart, &xp, 0.3).value - path.evaluate(chart, &xm, 0.3).value) / C::from(2.0 * h);
            for row in 0..4 {
                assert!((fd[row] - ev.jac[(row, col)]).norm() < 1e-6);
            }
        }
        let fdt = (path.evaluate(chart, &x, 0.3 + h).value - path.evaluate(chart, &x, 0.3 - h).value) / C::from(2.0 * h);
        assert!((fdt - ev.dt).norm() < 1e-6);
    }

    #[test]
    fn meeting_examples() {
        let z = zeta3();
        let l1 = Line::from_span(&[-ONE, ONE, ZERO, ZERO], &[ZERO, ZERO, -ONE, ONE]);
        let l2 = Line::from_span(&[-z, ONE, ZERO, ZERO], &[ZERO, ZERO, -ONE, ONE]);
        let l3 = Line::from_span(&[ONE, ZERO, ZERO, ZERO], &[ZERO, ZERO, ONE, ZERO]);
        assert!(lines_meet(&l1, &l2).unwrap());
        assert!(!lines_meet(&l1, &l3).unwrap());
        assert_eq!(l1.pairing(&l1).norm(), 0.0);
        let p = l1.intersection(&l2);
        let want = projective_normalize(&[ZERO, ZERO, ONE, -ONE]);
        assert!(chordal_distance(&p, &want) < 1e-12);
    }

    #[test]
    fn perturbed_duplicate_is_rejected() {
        let mut lines = fermat_start_lines();
        let mut dup = lines[0].clone();
        dup.params[0] += C::new(1e-9, 0.0);
        lines[1] = Line::from_chart(dup.chart, dup.params);
        assert!(incidence_graph(&lines).is_err());
    }

    #[test]
    fn solving_fermat_recovers_start_lines() {
        let f = CubicForm::fermat();
        let rep = solve_lines(&f, 11).unwrap();
        let (_, gap) = match_lines(&rep.lines, &fermat_start_lines()).unwrap();
        assert!(gap > MATCH_GAP);
        assert!(rep.max_residual < RESIDUAL_TOL);
    }

    #[test]
    fn random_cubic_solves() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let f = CubicForm::random(&mut rng);
        let rep = solve_lines(&f, 3).unwrap();
        assert_eq!(rep.lines.len(), 27);
        assert!(rep.min_pairwise_distance > DISTINCT_TOL);
        let adj = incidence_graph(&rep.lines).unwrap();
        label_lines(&adj).unwrap();
    }
}
