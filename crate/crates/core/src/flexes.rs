//! The nine flexes of a plane cubic: Hesse pencil, Hessian curve, flex
//! solving by continuation and the flex monodromy campaign.

use nalgebra::SVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homotopy::{self, ChartedSystem, Eval, PathStats, TrackError, TrackOptions};
use crate::linesolver::{DISTINCT_TOL, RESIDUAL_TOL};
use crate::monodromy::{
    derived_seed, drive_loops, Campaign, MonodromyReport, Status, Tolerances, Verdict, DEFAULT_PLATEAU,
    SCHEMA_VERSION,
};
use crate::numeric::{
    self, chordal_distance, cubic_monomials, mat_vec, random_complex, random_unit_complex,
    random_unitary, to_array, zeta3, SymTensor, C, ONE, ZERO,
};
use crate::permgrp::{asl2_f3, GroupError, PermGroup, Permutation};
use crate::surfaces::Family;
use crate::tracker::{
    fiber_loop_permutation, random_polygon_loop, Fiber, LoopDescription, TrackedPermutation, TrackerError,
};

/// Number of flexes of a smooth plane cubic.
pub const FLEX_COUNT: usize = 9;
/// Lines of the Hesse configuration.
pub const HESSE_LINES: usize = 12;
/// `|det[p q r]|` below which three unit points count as collinear.
pub const COLLINEAR_TOL: f64 = 1e-8;

const SOLVE_ATTEMPTS: u64 = 4;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FlexError {
    #[error("the zero form is not a plane cubic")]
    ZeroForm,
    #[error("hesse_form({0}) is singular (k³ = 1)")]
    SingularHesse(C),
    #[error("flex path failed: {0}")]
    Path(#[from] TrackError),
    #[error("two flexes within {0:e}")]
    Collision(f64),
    #[error("flex residual {0:e} above tolerance")]
    Residual(f64),
    #[error("found {0} collinear triples instead of 12")]
    Configuration(usize),
    #[error("loop budget must be at least 1")]
    EmptyBudget,
    #[error(transparent)]
    Tracker(#[from] TrackerError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Ternary cubic, coefficients in graded-lex order `x³, x²y, x²z, xy², ...`,
/// scaled to largest modulus 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneCubicForm {
    coefficients: Vec<C>,
}

pub fn plane_monomial_index(exps: [u8; 3]) -> usize {
    cubic_monomials::<3>()
        .iter()
        .position(|m| *m == exps)
        .expect("cubic monomial")
}

impl PlaneCubicForm {
    pub fn new(coefficients: &[C]) -> Result<PlaneCubicForm, FlexError> {
        assert_eq!(coefficients.len(), 10, "plane cubics have 10 coefficients");
        let max = coefficients.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max == 0.0 || !max.is_finite() {
            return Err(FlexError::ZeroForm);
        }
        Ok(PlaneCubicForm {
            coefficients: coefficients.iter().map(|z| z / max).collect(),
        })
    }

    pub fn fermat() -> PlaneCubicForm {
        hesse_form(ZERO).expect("Fermat curve is smooth")
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> PlaneCubicForm {
        let coeffs: Vec<C> = (0..10).map(|_| random_complex(rng)).collect();
        PlaneCubicForm::new(&coeffs).unwrap()
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coefficients
    }

    pub fn coefficient(&self, exps: [u8; 3]) -> C {
        self.coefficients[plane_monomial_index(exps)]
    }

    pub fn tensor(&self) -> SymTensor<3> {
        SymTensor::from_coeffs(&self.coefficients)
    }

    pub fn eval(&self, x: &[C; 3]) -> C {
        self.tensor().eval(x)
    }

    /// The form `x ↦ F(Ax)`.
    pub fn compose(&self, a: &[[C; 3]; 3]) -> Result<PlaneCubicForm, FlexError> {
        PlaneCubicForm::new(&self.tensor().compose_linear(a).to_coeffs())
    }

    /// `min_λ ‖other − λ·self‖ / ‖other‖`.
    pub fn proportionality_residual(&self, other: &PlaneCubicForm) -> f64 {
        let (a, b) = (&self.coefficients, &other.coefficients);
        let lambda = numeric::inner(a, b) / numeric::inner(a, a).re;
        let r: Vec<C> = a.iter().zip(b).map(|(x, y)| y - lambda * x).collect();
        numeric::norm(&r) / numeric::norm(b)
    }
}

/// `x³ + y³ + z³ − 3k·xyz`.
pub fn hesse_form(k: C) -> Result<PlaneCubicForm, FlexError> {
    if (k * k * k - ONE).norm() < 1e-12 {
        return Err(FlexError::SingularHesse(k));
    }
    let mut coeffs = vec![ZERO; 10];
    for e in [[3, 0, 0], [0, 3, 0], [0, 0, 3]] {
        coeffs[plane_monomial_index(e)] = ONE;
    }
    coeffs[plane_monomial_index([1, 1, 1])] = -3.0 * k;
    PlaneCubicForm::new(&coeffs)
}

fn det3(m: &[[C; 3]; 3]) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate3(m: &[[C; 3]; 3]) -> [[C; 3]; 3] {
    let mut adj = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    adj
}

/// Coefficients of `det(∂²F/∂x_a∂x_b)`, not normalized.
pub fn hessian_coefficients(f: &PlaneCubicForm) -> Vec<C> {
    let t = f.tensor().0;
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let mut out = vec![ZERO; 10];
    for (s, sign) in perms {
        for c0 in 0..3 {
            for c1 in 0..3 {
                for c2 in 0..3 {
                    let mut e = [0u8; 3];
                    for c in [c0, c1, c2] {
                        e[c] += 1;
                    }
                    out[plane_monomial_index(e)] += 216.0 * sign * t[0][s[0]][c0] * t[1][s[1]][c1] * t[2][s[2]][c2];
                }
            }
        }
    }
    out
}

/// The Hessian curve. Fails only when the Hessian vanishes identically
/// (cones over three collinear points).
pub fn hessian_form(f: &PlaneCubicForm) -> Result<PlaneCubicForm, FlexError> {
    PlaneCubicForm::new(&hessian_coefficients(f))
}

/// Nine flexes with their residuals `max(|F|, |Hess F|)` at unit representatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlexSet {
    pub points: Vec<[C; 3]>,
    pub residuals: Vec<f64>,
}

impl FlexSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                best = best.min(chordal_distance(&self.points[i], &self.points[j]));
            }
        }
        best
    }

    /// Residuals of these points on another curve.
    pub fn residuals_on(&self, f: &PlaneCubicForm) -> Result<Vec<f64>, FlexError> {
        let h = hessian_form(f)?;
        Ok(self
            .points
            .iter()
            .map(|p| f.eval(p).norm().max(h.eval(p).norm()))
            .collect())
    }
}

/// `(0:1:−γ), (−γ:0:1), (1:−γ:0)` for `γ³ = 1`.
pub fn hesse_flexes() -> FlexSet {
    let z = zeta3();
    let mut points = Vec::with_capacity(9);
    for g in [ONE, z, z * z] {
        points.push(numeric::normalized(&[ZERO, ONE, -g]));
        points.push(numeric::normalized(&[-g, ZERO, ONE]));
        points.push(numeric::normalized(&[ONE, -g, ZERO]));
    }
    FlexSet {
        residuals: vec![0.0; 9],
        points,
    }
}

/// All triples `i < j < k` of collinear points.
pub fn collinear_triples(points: &[[C; 3]]) -> Vec<[usize; 3]> {
    let unit: Vec<[C; 3]> = points.iter().map(numeric::normalized).collect();
    let mut out = Vec::new();
    for i in 0..unit.len() {
        for j in i + 1..unit.len() {
            for k in j + 1..unit.len() {
                if det3(&[unit[i], unit[j], unit[k]]).norm() < COLLINEAR_TOL {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// A flex in the affine chart `x_chart = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flex {
    pub chart: usize,
    pub affine: [C; 2],
    /// Unit representative.
    pub point: [C; 3],
}

fn others(chart: usize) -> [usize; 2] {
    [(chart + 1) % 3, (chart + 2) % 3]
}

fn lift(chart: usize, u: &[C; 2]) -> [C; 3] {
    let mut x = [ONE; 3];
    let o = others(chart);
    x[o[0]] = u[0];
    x[o[1]] = u[1];
    x
}

impl Flex {
    pub fn from_point(p: &[C; 3]) -> Flex {
        let chart = (0..3)
            .max_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm()))
            .unwrap();
        let o = others(chart);
        Flex {
            chart,
            affine: [p[o[0]] / p[chart], p[o[1]] / p[chart]],
            point: numeric::normalized(p),
        }
    }

    fn from_chart(chart: usize, u: &[C; 2]) -> Flex {
        Flex {
            chart,
            affine: *u,
            point: numeric::normalized(&lift(chart, u)),
        }
    }
}

/// The straight coefficient path `T(t) = start + t·delta`.
#[derive(Clone, Debug)]
pub struct FlexPath {
    pub start: SymTensor<3>,
    pub delta: SymTensor<3>,
}

impl FlexPath {
    pub fn between(a: &SymTensor<3>, b: &SymTensor<3>) -> FlexPath {
        FlexPath {
            start: *a,
            delta: b.axpy(-ONE, a),
        }
    }
}

/// `{F = 0, det(T·x) = 0}`; the second equation is the Hessian up to 216.
impl ChartedSystem<2> for FlexPath {
    type Chart = usize;

    fn evaluate(&self, chart: usize, u: &SVector<C, 2>, t: f64) -> Eval<2> {
        let tt = self.start.axpy(C::from(t), &self.delta);
        let x = lift(chart, &[u[0], u[1]]);
        let m = tt.contract(&x);
        let adj = adjugate3(&m);
        let grad = tt.gradient(&x);
        let o = others(chart);
        let dh = |c: usize, tensor: &SymTensor<3>| {
            let mut s = ZERO;
            for a in 0..3 {
                for b in 0..3 {
                    s += adj[b][a] * tensor.0[a][b][c];
                }
            }
            s
        };
        let value = SVector::<C, 2>::new(tt.eval(&x), det3(&m));
        let mut jac = nalgebra::SMatrix::<C, 2, 2>::zeros();
        for (col, &c) in o.iter().enumerate() {
            jac[(0, col)] = grad[c];
            jac[(1, col)] = dh(c, &tt);
        }
        let dm = self.delta.contract(&x);
        let mut dt_h = ZERO;
        for a in 0..3 {
            for b in 0..3 {
                dt_h += adj[b][a] * dm[a][b];
            }
        }
        Eval {
            value,
            jac,
            dt: SVector::<C, 2>::new(self.delta.eval(&x), dt_h),
        }
    }

    fn rechart(&self, chart: usize, u: &SVector<C, 2>) -> Option<(usize, SVector<C, 2>)> {
        if u[0].norm().max(u[1].norm()) <= 1.5 {
            return None;
        }
        let f = Flex::from_point(&lift(chart, &[u[0], u[1]]));
        (f.chart != chart).then(|| (f.chart, SVector::<C, 2>::new(f.affine[0], f.affine[1])))
    }
}

/// Continues one flex from `t = 0` to `t = 1` and polishes it.
pub fn continue_flex(path: &FlexPath, flex: &Flex, opts: &TrackOptions) -> Result<(Flex, PathStats), TrackError> {
    let start = SVector::<C, 2>::new(flex.affine[0], flex.affine[1]);
    let (chart, u, stats) = homotopy::track(path, flex.chart, start, opts)?;
    let (u, _) = homotopy::polish(path, chart, u, 1.0, 1e-14)?;
    Ok((Flex::from_chart(chart, &[u[0], u[1]]), stats))
}

/// Solves for the nine flexes by a γ-randomized continuation from the Fermat
/// curve, after a random unitary change of coordinates.
pub fn solve_flexes(f: &PlaneCubicForm, seed: u64) -> Result<FlexSet, FlexError> {
    let start_points = hesse_flexes();
    let opts = TrackOptions::default();
    let mut last_err = FlexError::Collision(0.0);
    for attempt in 0..SOLVE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt.wrapping_mul(0xF1E5_0000_0001)));
        let u = random_unitary::<3, _>(&mut rng);
        let ua = to_array(&u);
        let gamma = random_unit_complex(&mut rng);
        let target = f.tensor().compose_linear(&ua);
        let path = FlexPath::between(&PlaneCubicForm::fermat().tensor().scale(gamma), &target);
        match solve_attempt(&path, &start_points, &ua, f, &opts) {
            Ok(set) => return Ok(set),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn solve_attempt(
    path: &FlexPath,
    start: &FlexSet,
    u: &[[C; 3]; 3],
    f: &PlaneCubicForm,
    opts: &TrackOptions,
) -> Result<FlexSet, FlexError> {
    use rayon::prelude::*;
    let ends: Vec<Result<(Flex, PathStats), TrackError>> = start
        .points
        .par_iter()
        .map(|p| continue_flex(path, &Flex::from_point(p), opts))
        .collect();
    let mut points = Vec::with_capacity(9);
    for e in ends {
        let (flex, _) = e?;
        points.push(numeric::normalized(&mat_vec(u, &flex.point)));
    }
    let mut set = FlexSet {
        points,
        residuals: Vec::new(),
    };
    set.residuals = set.residuals_on(f)?;
    let sep = set.min_pairwise_distance();
    if sep < DISTINCT_TOL {
        return Err(FlexError::Collision(sep));
    }
    let res = set.max_residual();
    if !(res < RESIDUAL_TOL) {
        return Err(FlexError::Residual(res));
    }
    Ok(set)
}

/// Flexes over the ten-coefficient space of plane cubics.
pub struct FlexFiber;

impl Fiber for FlexFiber {
    type Sheet = Flex;
    type Segment = FlexPath;

    fn segment(&self, from: &[C], to: &[C]) -> Result<FlexPath, TrackerError> {
        let a = SymTensor::<3>::from_coeffs(&Family::FlexP9.raw_coefficients(from)?);
        let b = SymTensor::<3>::from_coeffs(&Family::FlexP9.raw_coefficients(to)?);
        Ok(FlexPath::between(&a, &b))
    }

    fn continue_sheet(&self, seg: &FlexPath, sheet: &Flex, opts: &TrackOptions) -> Result<(Flex, PathStats), TrackError> {
        continue_flex(seg, sheet, opts)
    }

    fn coordinates(&self, sheet: &Flex) -> Vec<C> {
        sheet.point.to_vec()
    }
}

fn third_point(triples: &[[usize; 3]], p: usize, q: usize) -> Option<usize> {
    triples
        .iter()
        .find(|t| t.contains(&p) && t.contains(&q))
        .and_then(|t| t.iter().copied().find(|&r| r != p && r != q))
}

/// Bijection flex ↦ `3x + y` in F₃² with `origin ↦ (0,0)`, `a ↦ (1,0)` and
/// `b ↦ (0,1)`, if the triples form an affine plane compatible with it.
pub fn f3_coordinates(triples: &[[usize; 3]], origin: usize, a: usize, b: usize) -> Option<Permutation> {
    if third_point(triples, origin, a) == Some(b) {
        return None;
    }
    let axis_x = [origin, a, third_point(triples, origin, a)?];
    let axis_y = [origin, b, third_point(triples, origin, b)?];
    let mut images = vec![usize::MAX; 9];
    for x in 0..3 {
        for y in 0..3 {
            let p = match (x, y) {
                (_, 0) => axis_x[x],
                (0, _) => axis_y[y],
                _ => third_point(triples, axis_x[(3 - x) % 3], axis_y[(3 - y) % 3])?,
            };
            if images[p] != usize::MAX {
                return None;
            }
            images[p] = 3 * x + y;
        }
    }
    let beta = Permutation::from_images(&images).ok()?;
    let affine_line = |t: &[usize; 3]| {
        let c: Vec<(usize, usize)> = t.iter().map(|&p| (beta.image(p) / 3, beta.image(p) % 3)).collect();
        c.iter().map(|p| p.0).sum::<usize>() % 3 == 0 && c.iter().map(|p| p.1).sum::<usize>() % 3 == 0
    };
    triples.iter().all(affine_line).then_some(beta)
}

/// All 432 collinearity-derived bijections onto F₃².
pub fn f3_bijections(triples: &[[usize; 3]]) -> Vec<Permutation> {
    let mut out = Vec::new();
    for o in 0..9 {
        for a in (0..9).filter(|&a| a != o) {
            for b in (0..9).filter(|&b| b != o && b != a) {
                if let Some(beta) = f3_coordinates(triples, o, a, b) {
                    out.push(beta);
                }
            }
        }
    }
    out
}

/// Whether `g` maps every collinear triple to a collinear triple.
pub fn preserves_triples(g: &Permutation, triples: &[[usize; 3]]) -> bool {
    triples.iter().all(|t| {
        let img = g.image_of_set(t);
        triples.iter().any(|s| s[..] == img[..])
    })
}

/// A bijection under which `group` equals ASL₂(F₃) literally, if any.
pub fn asl2_bijection(group: &PermGroup, triples: &[[usize; 3]]) -> Result<Option<Permutation>, GroupError> {
    let target = asl2_f3();
    for beta in f3_bijections(triples) {
        let gens: Vec<Permutation> = group.generators().iter().map(|g| g.relabel(&beta)).collect();
        if PermGroup::new(9, gens)?.same_elements(&target) {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}

/// Tracks the flexes around random triangles in the coefficient space until
/// the generated order plateaus.
pub fn flex_monodromy_campaign(budget: usize, seed: u64) -> Result<MonodromyReport, FlexError> {
    if budget == 0 {
        return Err(FlexError::EmptyBudget);
    }
    let campaign = Campaign::standard(Family::FlexP9, seed, budget);
    let basepoint = campaign.basepoint.clone();
    let base_set = solve_flexes(&PlaneCubicForm::new(&basepoint)?, seed)?;
    let triples = collinear_triples(&base_set.points);
    if triples.len() != HESSE_LINES {
        return Err(FlexError::Configuration(triples.len()));
    }
    let base: Vec<Flex> = base_set.points.iter().map(Flex::from_point).collect();
    let opts = TrackOptions::default();
    let random = |k: usize| {
        LoopDescription::Plain(random_polygon_loop(
            Family::FlexP9,
            &basepoint,
            campaign.loop_scale,
            derived_seed(seed, k),
        ))
    };
    let track = |d: &LoopDescription| -> Result<TrackedPermutation, TrackerError> {
        let LoopDescription::Plain(spec) = d else {
            return Err(TrackerError::InvalidLoop("flex loops are untwisted".into()));
        };
        let (perm, tel) = fiber_loop_permutation(&FlexFiber, &spec.waypoints, &base, &opts)?;
        Ok(TrackedPermutation {
            slot_perm: perm.clone(),
            perm,
            max_corrector_residual: tel.max_corrector_residual,
            min_separation: tel.min_separation,
            matching_gap: tel.matching_gap,
            telemetry: tel,
            description: d.clone(),
        })
    };
    let outcome = drive_loops(
        FLEX_COUNT,
        Vec::new(),
        random,
        budget,
        DEFAULT_PLATEAU,
        track,
        |p| preserves_triples(p, &triples),
    )?;
    let checks = vec![
        (
            "generators preserve the Hesse configuration".to_string(),
            outcome.tracked.iter().all(|t| preserves_triples(&t.perm, &triples)),
        ),
        ("transitive on the nine flexes".to_string(), outcome.group.is_transitive()),
    ];
    let fingerprint = outcome.group.fingerprint()?;
    let mut report = MonodromyReport {
        schema_version: SCHEMA_VERSION,
        family: Family::FlexP9,
        degree: FLEX_COUNT,
        basepoint,
        seed,
        loop_budget: budget,
        loops_attempted: outcome.attempted,
        plateau_reached: outcome.plateau_reached,
        order_history: outcome.order_history,
        tracked: outcome.tracked,
        failures: outcome.failures,
        group: outcome.group,
        deck_group: None,
        combined_group: None,
        fingerprint,
        combined_fingerprint: None,
        checks,
        verdicts: Vec::new(),
        tolerances: Tolerances::default(),
        labeling: None,
        base: None,
    };
    let verdict = flex_verdict(&report, &triples)?;
    report.verdicts.push(verdict);
    Ok(report)
}

/// Verdict of the flex claim: order 216, collinearity preserved, equality
/// with ASL₂(F₃) under a collinearity-derived bijection, stabilizer order 24.
pub fn flex_verdict(report: &MonodromyReport, triples: &[[usize; 3]]) -> Result<Verdict, GroupError> {
    let g = &report.group;
    let order = g.order() as u64;
    let mut details = vec![format!("order {order}, target 216")];
    let mut ok = order == 216;
    for (name, passed) in &report.checks {
        details.push(format!("{name}: {passed}"));
        ok &= passed;
    }
    let beta = asl2_bijection(g, triples)?;
    details.push(format!("equals ASL2(F3) under bijection {:?}", beta.as_ref().map(|b| b.images())));
    ok &= beta.is_some();
    let stab = g.point_stabilizer(0)?.order();
    details.push(format!("point stabilizer order {stab}"));
    ok &= stab == 24;
    let status = if !report.plateau_reached {
        details.push("order did not reach a plateau within the budget".into());
        Status::Inconclusive
    } else if ok {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Verdict {
        claim: "flexes-ASL2".into(),
        status,
        target_order: 216,
        observed_order: Some(order),
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    fn random_matrix(rng: &mut ChaCha8Rng) -> [[C; 3]; 3] {
        let mut m = [[ZERO; 3]; 3];
        for row in m.iter_mut() {
            for z in row.iter_mut() {
                *z = random_complex(rng);
            }
        }
        m
    }

    #[test]
    fn hesse_form_coefficients() {
        let f = hesse_form(c(2.0, 1.0)).unwrap();
        let scale = f.coefficient([3, 0, 0]);
        assert!((f.coefficient([1, 1, 1]) / scale - c(-6.0, -3.0)).norm() < 1e-14);
        assert_eq!(hesse_form(ZERO).unwrap(), PlaneCubicForm::fermat());
        assert!(matches!(hesse_form(zeta3()), Err(FlexError::SingularHesse(_))));
        assert!(hesse_form(ONE).is_err());
    }

    #[test]
    fn fermat_hessian_is_216_xyz() {
        let h = hessian_coefficients(&PlaneCubicForm::fermat());
        for (k, z) in h.iter().enumerate() {
            let want = if k == plane_monomial_index([1, 1, 1]) { 216.0 } else { 0.0 };
            assert!((z - C::from(want)).norm() < 1e-12, "{k}: {z}");
        }
    }

    #[test]
    fn hessian_of_hesse_member_is_in_the_pencil() {
        for k in [c(0.5, 0.0), c(2.0, -1.0), c(0.0, 3.0)] {
            let h = hessian_form(&hesse_form(k).unwrap()).unwrap();
            let k2 = -h.coefficient([1, 1, 1]) / (3.0 * h.coefficient([3, 0, 0]));
            assert!(hesse_form(k2).unwrap().proportionality_residual(&h) < 1e-12);
        }
    }

    #[test]
    fn hessian_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = PlaneCubicForm::random(&mut rng);
        let a = random_matrix(&mut rng);
        let lhs = hessian_coefficients(&PlaneCubicForm { coefficients: f.tensor().compose_linear(&a).to_coeffs() });
        let hf = PlaneCubicForm {
            coefficients: hessian_coefficients(&f),
        };
        let d2 = det3(&a) * det3(&a);
        let rhs: Vec<C> = hf.tensor().compose_linear(&a).to_coeffs().iter().map(|z| z * d2).collect();
        let err: f64 = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let size: f64 = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-10 * size);
    }

    #[test]
    fn hesse_flexes_lie_on_every_member() {
        let flexes = hesse_flexes();
        let target = numeric::normalized(&[ZERO, ONE, -ONE]);
        assert!(flexes.points.iter().any(|p| chordal_distance(p, &target) < 1e-15));
        for k in [c(2.0, 0.0), c(-0.3, 0.7), c(5.0, 0.0)] {
            let res = flexes.residuals_on(&hesse_form(k).unwrap()).unwrap();
            assert!(res.iter().all(|&r| r < 1e-14), "{res:?}");
        }
        let triples = collinear_triples(&flexes.points);
        assert_eq!(triples.len(), HESSE_LINES);
        for p in 0..9 {
            assert_eq!(triples.iter().filter(|t| t.contains(&p)).count(), 4);
        }
    }

    #[test]
    fn solves_hesse_member() {
        let set = solve_flexes(&hesse_form(C::from(5.0)).unwrap(), 11).unwrap();
        let expected = hesse_flexes();
        for p in &expected.points {
            let d = set.points.iter().map(|q| chordal_distance(p, q)).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-10);
        }
    }

    #[test]
    fn solves_random_cubic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = PlaneCubicForm::random(&mut rng);
        let set = solve_flexes(&f, 5).unwrap();
        assert_eq!(set.points.len(), FLEX_COUNT);
        assert!(set.max_residual() < RESIDUAL_TOL);
        assert!(set.min_pairwise_distance() > DISTINCT_TOL);
        assert_eq!(collinear_triples(&set.points).len(), HESSE_LINES);
    }

    #[test]
    fn nodal_cubic_is_rejected() {
        // y²z − x³ − x²z has a node at (0:0:1)
        let mut coeffs = vec![ZERO; 10];
        coeffs[plane_monomial_index([0, 2, 1])] = ONE;
        coeffs[plane_monomial_index([3, 0, 0])] = -ONE;
        coeffs[plane_monomial_index([2, 0, 1])] = -ONE;
        let f = PlaneCubicForm::new(&coeffs).unwrap();
        assert!(solve_flexes(&f, 1).is_err());
    }

    #[test]
    fn all_432_bijections_of_the_hesse_configuration() {
        let triples = collinear_triples(&hesse_flexes().points);
        let all = f3_bijections(&triples);
        assert_eq!(all.len(), 432);
        let g = PermGroup::new(9, asl2_f3().generators().iter().map(|p| p.relabel(&all[17].inverse())).collect()).unwrap();
        assert!(asl2_bijection(&g, &triples).unwrap().is_some());
        for p in asl2_f3().generators() {
            assert!(preserves_triples(&p.relabel(&all[5].inverse()), &triples));
        }
    }
}
