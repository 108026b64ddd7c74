//! Predictor-corrector path tracking for square systems `H(x, t) = 0`.
//!
//! The predictor is classical RK4 on the Davidenko equation
//! `H_x ẋ = -H_t`; the corrector is Newton at the new `t`. Steps are halved
//! when the corrector misbehaves and grown after successes. Systems may
//! switch affine charts between steps.

use std::fmt::Debug;

use nalgebra::{DMatrix, DVector, SMatrix, SVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::C;

/// Value, Jacobian and `t`-derivative of a homotopy at one point.
pub struct Eval<const N: usize> {
    pub value: SVector<C, N>,
    pub jac: SMatrix<C, N, N>,
    pub dt: SVector<C, N>,
}

pub trait ChartedSystem<const N: usize>: Sync {
    type Chart: Copy + Debug + PartialEq + Send + Sync;

    fn evaluate(&self, chart: Self::Chart, x: &SVector<C, N>, t: f64) -> Eval<N>;

    /// A better-conditioned chart for the same geometric point, if any.
    fn rechart(&self, _chart: Self::Chart, _x: &SVector<C, N>) -> Option<(Self::Chart, SVector<C, N>)> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Relative Newton tolerance during tracking.
    pub newton_tol: f64,
    /// Largest relative first Newton correction accepted after a prediction.
    pub max_first_correction: f64,
    /// Required ratio between consecutive Newton corrections.
    pub contraction: f64,
    pub growth: f64,
    pub max_steps: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            initial_step: 0.01,
            max_step: 0.05,
            min_step: 1e-14,
            newton_tol: 1e-10,
            max_first_correction: 1e-4,
            contraction: 0.1,
            growth: 1.5,
            max_steps: 200_000,
        }
    }
}

impl TrackOptions {
    /// Smaller steps and a tighter corrector, used when retrying a failed path.
    pub fn stricter(&self) -> Self {
        TrackOptions {
            initial_step: self.initial_step / 10.0,
            max_step: self.max_step / 5.0,
            max_first_correction: self.max_first_correction / 10.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    pub steps: usize,
    pub rejections: usize,
    pub rechartings: usize,
    pub smallest_step: f64,
    pub max_corrector_residual: f64,
}

impl PathStats {
    pub fn merge(&mut self, other: &PathStats) {
        self.smallest_step = if self.steps == 0 {
            other.smallest_step
        } else {
            self.smallest_step.min(other.smallest_step)
        };
        self.steps += other.steps;
        self.rejections += other.rejections;
        self.rechartings += other.rechartings;
        self.max_corrector_residual = self.max_corrector_residual.max(other.max_corrector_residual);
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TrackError {
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("Newton polish did not converge (residual {residual:e})")]
    PolishFailed { residual: f64 },
}

fn solve<const N: usize>(jac: &SMatrix<C, N, N>, rhs: &SVector<C, N>) -> Option<SVector<C, N>> {
    let a = DMatrix::from_fn(N, N, |i, j| jac[(i, j)]);
    let b = DVector::from_fn(N, |i, _| rhs[i]);
    let x = a.lu().solve(&b)?;
    let sol = SVector::<C, N>::from_fn(|i, _| x[i]);
    if sol.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(sol)
    } else {
        None
    }
}

fn tangent<S: ChartedSystem<N>, const N: usize>(
    sys: &S,
    chart: S::Chart,
    x: &SVector<C, N>,
    t: f64,
) -> Option<SVector<C, N>> {
    let ev = sys.evaluate(chart, x, t);
    solve(&ev.jac, &(-ev.dt))
}

fn rk4<S: ChartedSystem<N>, const N: usize>(
    sys: &S,
    chart: S::Chart,
    x: &SVector<C, N>,
    t: f64,
    h: f64,
) -> Option<SVector<C, N>> {
    let k1 = tangent(sys, chart, x, t)?;
    let k2 = tangent(sys, chart, &(x + k1 * C::from(h / 2.0)), t + h / 2.0)?;
    let k3 = tangent(sys, chart, &(x + k2 * C::from(h / 2.0)), t + h / 2.0)?;
    let k4 = tangent(sys, chart, &(x + k3 * C::from(h)), t + h)?;
    Some(x + (k1 + k2 * C::from(2.0) + k3 * C::from(2.0) + k4) * C::from(h / 6.0))
}

fn correct<S: ChartedSystem<N>, const N: usize>(
    sys: &S,
    chart: S::Chart,
    mut x: SVector<C, N>,
    t: f64,
    opts: &TrackOptions,
) -> Option<(SVector<C, N>, f64)> {
    let mut prev = f64::INFINITY;
    for k in 0..4 {
        let ev = sys.evaluate(chart, &x, t);
        let dx = solve(&ev.jac, &(-ev.value))?;
        let nd = dx.norm();
        let scale = 1.0 + x.norm();
        if k == 0 && nd > opts.max_first_correction * scale {
            return None;
        }
        if k > 0 && nd > opts.contraction * prev && nd > opts.newton_tol * scale {
            return None;
        }
        x += dx;
        if nd <= opts.newton_tol * scale {
            let res = sys.evaluate(chart, &x, t).value.norm();
            return Some((x, res));
        }
        prev = nd;
    }
    None
}

/// Tracks one solution of `sys` from `t = 0` to `t = 1`.
pub fn track<S: ChartedSystem<N>, const N: usize>(
    sys: &S,
    mut chart: S::Chart,
    mut x: SVector<C, N>,
    opts: &TrackOptions,
) -> Result<(S::Chart, SVector<C, N>, PathStats), TrackError> {
    let mut stats = PathStats {
        smallest_step: f64::INFINITY,
        ..Default::default()
    };
    let mut t = 0.0;
    let mut h = opts.initial_step;
    while t < 1.0 {
        if stats.steps + stats.rejections >= opts.max_steps {
            return Err(TrackError::TooManySteps { t });
        }
        if let Some((c2, x2)) = sys.rechart(chart, &x) {
            chart = c2;
            x = x2;
            stats.rechartings += 1;
        }
        let step = h.min(1.0 - t);
        let t1 = if step >= 1.0 - t { 1.0 } else { t + step };
        let accepted = rk4(sys, chart, &x, t, t1 - t)
            .and_then(|xp| correct(sys, chart, xp, t1, opts));
        match accepted {
            Some((xc, res)) => {
                x = xc;
                t = t1;
                stats.steps += 1;
                stats.smallest_step = stats.smallest_step.min(step);
                stats.max_corrector_residual = stats.max_corrector_residual.max(res);
                h = (h * opts.growth).min(opts.max_step);
            }
            None => {
                stats.rejections += 1;
                h /= 2.0;
                if h < opts.min_step {
                    return Err(TrackError::StepUnderflow { t });
                }
            }
        }
    }
    Ok((chart, x, stats))
}

/// Newton iteration at fixed `t` until the update is below `tol` (relative).
pub fn polish<S: ChartedSystem<N>, const N: usize>(
    sys: &S,
    chart: S::Chart,
    mut x: SVector<C, N>,
    t: f64,
    tol: f64,
) -> Result<(SVector<C, N>, f64), TrackError> {
    for _ in 0..12 {
        let ev = sys.evaluate(chart, &x, t);
        let Some(dx) = solve(&ev.jac, &(-ev.value)) else {
            break;
        };
        x += dx;
        if dx.norm() <= tol * (1.0 + x.norm()) {
            break;
        }
    }
    let residual = sys.evaluate(chart, &x, t).value.norm();
    if residual.is_finite() {
        Ok((x, residual))
    } else {
        Err(TrackError::PolishFailed { residual })
    }
}
