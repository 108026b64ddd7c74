//! Continuation of whole fibers (27 lines, or 9 flexes) along parameter
//! loops and extraction of monodromy permutations.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homotopy::{PathStats, TrackError, TrackOptions};
use crate::linesolver::{self, Line, LinePath, SolveReport, DISTINCT_TOL};
use crate::numeric::{chordal_distance, random_complex, SymTensor, C};
use crate::permgrp::Permutation;
use crate::schlafli::SchlafliLabeling;
use crate::surfaces::{invariance_residual, Family, ProjectiveMatrix, SurfaceError, INVARIANCE_TOL};

/// Vertices of each petal circle.
pub const CIRCLE_VERTICES: usize = 64;
/// Petal radius as a fraction of the distance to the nearest other puncture.
pub const DEFAULT_RADIUS_FRACTION: f64 = 1e-2;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TrackerError {
    #[error("sheet {sheet} failed on segment {segment}: {source}")]
    PathFailure {
        segment: usize,
        sheet: usize,
        source: TrackError,
    },
    #[error("two sheets within {separation:e} after segment {segment}")]
    Collision { segment: usize, separation: f64 },
    #[error("ambiguous endpoint matching (gap ratio {gap:e})")]
    AmbiguousMatch { gap: f64 },
    #[error("identification residual {0:e} too large")]
    Identification(f64),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A finite fiber that can be continued along straight parameter segments.
pub trait Fiber: Sync {
    type Sheet: Clone + Send + Sync;
    type Segment: Sync;

    fn segment(&self, from: &[C], to: &[C]) -> Result<Self::Segment, TrackerError>;

    fn continue_sheet(
        &self,
        segment: &Self::Segment,
        sheet: &Self::Sheet,
        opts: &TrackOptions,
    ) -> Result<(Self::Sheet, PathStats), TrackError>;

    /// Projective coordinates used for separation and matching.
    fn coordinates(&self, sheet: &Self::Sheet) -> Vec<C>;
}

/// The 27 lines over a surface family.
pub struct LineFiber {
    pub family: Family,
}

impl Fiber for LineFiber {
    type Sheet = Line;
    type Segment = LinePath;

    fn segment(&self, from: &[C], to: &[C]) -> Result<LinePath, TrackerError> {
        let a = SymTensor::<4>::from_coeffs(&self.family.raw_coefficients(from)?);
        let b = SymTensor::<4>::from_coeffs(&self.family.raw_coefficients(to)?);
        Ok(LinePath::between(&a, &b))
    }

    fn continue_sheet(&self, seg: &LinePath, sheet: &Line, opts: &TrackOptions) -> Result<(Line, PathStats), TrackError> {
        linesolver::continue_line(seg, sheet, opts)
    }

    fn coordinates(&self, sheet: &Line) -> Vec<C> {
        sheet.plucker.to_vec()
    }
}

/// Path telemetry of one tracked loop.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Telemetry {
    pub segments: usize,
    pub retried_segments: usize,
    pub min_separation: f64,
    pub matching_gap: f64,
    pub max_corrector_residual: f64,
    pub stats: PathStats,
}

pub fn min_separation<F: Fiber>(fiber: &F, sheets: &[F::Sheet]) -> f64 {
    let coords: Vec<Vec<C>> = sheets.iter().map(|s| fiber.coordinates(s)).collect();
    let mut best = f64::INFINITY;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            best = best.min(chordal_distance(&coords[i], &coords[j]));
        }
    }
    best
}

/// Continues all sheets along the polygon through `waypoints`. A failed
/// segment is retried once with stricter step control.
pub fn continue_fiber<F: Fiber>(
    fiber: &F,
    waypoints: &[Vec<C>],
    sheets: &[F::Sheet],
    opts: &TrackOptions,
) -> Result<(Vec<F::Sheet>, Telemetry), TrackerError> {
    let mut tel = Telemetry {
        min_separation: min_separation(fiber, sheets),
        ..Default::default()
    };
    let strict = opts.stricter();
    let mut current = sheets.to_vec();
    for (k, w) in waypoints.windows(2).enumerate() {
        if w[0] == w[1] {
            continue;
        }
        let seg = fiber.segment(&w[0], &w[1])?;
        let run = |o: &TrackOptions| -> Result<(Vec<F::Sheet>, PathStats), TrackerError> {
            let results: Vec<_> = current
                .par_iter()
                .map(|s| fiber.continue_sheet(&seg, s, o))
                .collect();
            let mut stats = PathStats::default();
            let mut out = Vec::with_capacity(results.len());
            for (sheet, r) in results.into_iter().enumerate() {
                let (s, st) = r.map_err(|source| TrackerError::PathFailure {
                    segment: k,
                    sheet,
                    source,
                })?;
                stats.merge(&st);
                out.push(s);
            }
            let sep = min_separation(fiber, &out);
            if sep < DISTINCT_TOL {
                return Err(TrackerError::Collision {
                    segment: k,
                    separation: sep,
                });
            }
            Ok((out, stats))
        };
        let (next, stats) = match run(opts) {
            Ok(r) => r,
            Err(_) => {
                tel.retried_segments += 1;
                run(&strict)?
            }
        };
        tel.segments += 1;
        tel.min_separation = tel.min_separation.min(min_separation(fiber, &next));
        tel.max_corrector_residual = tel.max_corrector_residual.max(stats.max_corrector_residual);
        tel.stats.merge(&stats);
        current = next;
    }
    Ok((current, tel))
}

/// Slot permutation `s ↦ index of the reference sheet matching end[s]`.
pub fn match_fiber<F: Fiber>(fiber: &F, ends: &[F::Sheet], reference: &[F::Sheet]) -> Result<(Permutation, f64), TrackerError> {
    let e: Vec<Vec<C>> = ends.iter().map(|s| fiber.coordinates(s)).collect();
    let r: Vec<Vec<C>> = reference.iter().map(|s| fiber.coordinates(s)).collect();
    let (map, gap) = linesolver::match_to_reference(&e, &r).map_err(|gap| TrackerError::AmbiguousMatch { gap })?;
    Ok((Permutation::from_images(&map).expect("bijective matching"), gap))
}

/// Monodromy of a closed polygon on an abstract fiber, in slot numbering.
pub fn fiber_loop_permutation<F: Fiber>(
    fiber: &F,
    waypoints: &[Vec<C>],
    base: &[F::Sheet],
    opts: &TrackOptions,
) -> Result<(Permutation, Telemetry), TrackerError> {
    check_closed(waypoints)?;
    let (ends, mut tel) = continue_fiber(fiber, waypoints, base, opts)?;
    let (perm, gap) = match_fiber(fiber, &ends, base)?;
    tel.matching_gap = gap;
    Ok((perm, tel))
}

fn check_closed(waypoints: &[Vec<C>]) -> Result<(), TrackerError> {
    if waypoints.len() < 2 {
        return Err(TrackerError::InvalidLoop("need at least two waypoints".into()));
    }
    if waypoints.first() != waypoints.last() {
        return Err(TrackerError::InvalidLoop("first and last waypoints differ".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    Plain,
    Petal { puncture: Vec<C>, radius: f64 },
    RandomPolygon { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    pub family: Family,
    pub basepoint: Vec<C>,
    pub waypoints: Vec<Vec<C>>,
    pub kind: LoopKind,
}

impl LoopSpec {
    pub fn constant(family: Family, basepoint: Vec<C>) -> LoopSpec {
        LoopSpec {
            family,
            waypoints: vec![basepoint.clone(), basepoint.clone()],
            basepoint,
            kind: LoopKind::Plain,
        }
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> LoopSpec {
        let mut w = self.waypoints.clone();
        w.reverse();
        LoopSpec {
            waypoints: w,
            kind: LoopKind::Plain,
            ..self.clone()
        }
    }

    /// `self` followed by `other`; both must share the basepoint.
    pub fn then(&self, other: &LoopSpec) -> LoopSpec {
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints.iter().skip(1).cloned());
        LoopSpec {
            waypoints: w,
            kind: LoopKind::Plain,
            ..self.clone()
        }
    }

    /// Inserts the midpoint of every segment.
    pub fn refined(&self) -> LoopSpec {
        let mut w = vec![self.waypoints[0].clone()];
        for pair in self.waypoints.windows(2) {
            let mid: Vec<C> = pair[0].iter().zip(&pair[1]).map(|(a, b)| (a + b) / 2.0).collect();
            w.push(mid);
            w.push(pair[1].clone());
        }
        LoopSpec {
            waypoints: w,
            ..self.clone()
        }
    }
}

/// Path from the basepoint to an image point that is identified with it:
/// `F_image(x) ∝ F_base(g x)`, so `g` carries lines over the image point to
/// lines over the basepoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedLoopSpec {
    pub family: Family,
    pub path: Vec<Vec<C>>,
    pub identification: ProjectiveMatrix,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum LoopDescription {
    Plain(LoopSpec),
    Twisted(TwistedLoopSpec),
}

/// A monodromy permutation in canonical labels, with telemetry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrackedPermutation {
    pub perm: Permutation,
    pub slot_perm: Permutation,
    pub max_corrector_residual: f64,
    pub min_separation: f64,
    pub matching_gap: f64,
    pub telemetry: Telemetry,
    #[serde(rename = "loop")]
    pub description: LoopDescription,
}

/// Tracks all 27 lines around a closed loop and reads off the permutation.
pub fn track_loop(
    spec: &LoopSpec,
    base: &SolveReport,
    labeling: &SchlafliLabeling,
    opts: &TrackOptions,
) -> Result<TrackedPermutation, TrackerError> {
    if spec.waypoints.first() != Some(&spec.basepoint) {
        return Err(TrackerError::InvalidLoop("loop does not start at the basepoint".into()));
    }
    let fiber = LineFiber { family: spec.family };
    let (slot_perm, tel) = fiber_loop_permutation(&fiber, &spec.waypoints, &base.lines, opts)?;
    Ok(TrackedPermutation {
        perm: labeling.to_canonical(&slot_perm),
        slot_perm,
        max_corrector_residual: tel.max_corrector_residual,
        min_separation: tel.min_separation,
        matching_gap: tel.matching_gap,
        telemetry: tel,
        description: LoopDescription::Plain(spec.clone()),
    })
}

/// Tracks along the open path, carries the endpoint lines back with the
/// identification and matches them to the base lines.
pub fn track_twisted_loop(
    spec: &TwistedLoopSpec,
    base: &SolveReport,
    labeling: &SchlafliLabeling,
    opts: &TrackOptions,
) -> Result<TrackedPermutation, TrackerError> {
    let (Some(start), Some(end)) = (spec.path.first(), spec.path.last()) else {
        return Err(TrackerError::InvalidLoop("empty path".into()));
    };
    let f_base = spec.family.form(start)?;
    let f_end = spec.family.form(end)?;
    let res = match f_base.compose(&spec.identification) {
        Ok(pulled) => f_end.proportionality_residual(&pulled),
        Err(_) => f64::INFINITY,
    };
    if !(res < INVARIANCE_TOL) {
        return Err(TrackerError::Identification(res));
    }
    let fiber = LineFiber { family: spec.family };
    let path = if spec.path.len() == 1 {
        vec![start.clone(), start.clone()]
    } else {
        spec.path.clone()
    };
    let (ends, mut tel) = continue_fiber(&fiber, &path, &base.lines, opts)?;
    let carried: Vec<Line> = ends.iter().map(|l| l.transform(&spec.identification)).collect();
    let (slot_perm, gap) = match_fiber(&fiber, &carried, &base.lines)?;
    tel.matching_gap = gap;
    Ok(TrackedPermutation {
        perm: labeling.to_canonical(&slot_perm),
        slot_perm,
        max_corrector_residual: tel.max_corrector_residual,
        min_separation: tel.min_separation,
        matching_gap: tel.matching_gap,
        telemetry: tel,
        description: LoopDescription::Twisted(spec.clone()),
    })
}

/// Whether a symmetry of the base surface is compatible with the family's
/// base fiber, i.e. a valid identification for a constant path.
pub fn is_symmetry(family: Family, basepoint: &[C], m: &ProjectiveMatrix) -> Result<bool, SurfaceError> {
    Ok(invariance_residual(&family.form(basepoint)?, m) < INVARIANCE_TOL)
}

/// One petal per puncture in a one-parameter family: out along the spoke,
/// counterclockwise around the puncture, back along the spoke. Spokes make
/// half-circle detours to the left around other punctures they pass.
pub fn petal_loops(
    family: Family,
    basepoint: C,
    punctures: &[C],
    radius: Option<f64>,
) -> Result<Vec<LoopSpec>, TrackerError> {
    if family.parameter_dim() != 1 {
        return Err(TrackerError::InvalidLoop("petals need a one-parameter family".into()));
    }
    let nearest_other = |q: C, include_base: bool| {
        let mut d = punctures
            .iter()
            .filter(|&&p| p != q)
            .map(|p| (p - q).norm())
            .fold(f64::INFINITY, f64::min);
        if include_base || d.is_infinite() {
            d = d.min((basepoint - q).norm());
        }
        d
    };
    for (i, p) in punctures.iter().enumerate() {
        if (p - basepoint).norm() == 0.0 {
            return Err(TrackerError::InvalidLoop("basepoint is a puncture".into()));
        }
        if punctures[..i].contains(p) {
            return Err(TrackerError::InvalidLoop("repeated puncture".into()));
        }
    }
    let mut out = Vec::new();
    for &q in punctures {
        let r = radius.unwrap_or(DEFAULT_RADIUS_FRACTION * nearest_other(q, false));
        if let Some(&p) = punctures.iter().find(|&&p| p != q && (p - q).norm() < 2.0 * r) {
            return Err(TrackerError::InvalidLoop(format!("punctures {p} and {q} closer than 2r")));
        }
        let u = (q - basepoint) / (q - basepoint).norm();
        let touch = q - u * r;
        // spoke with detours around intermediate punctures
        let mut spoke = vec![basepoint];
        let mut blockers: Vec<(f64, C, f64)> = punctures
            .iter()
            .filter(|&&p| p != q)
            .filter_map(|&p| {
                let s = ((p - basepoint) * u.conj()).re;
                let off = ((p - basepoint) * u.conj()).im.abs();
                let rho = 0.25 * nearest_other(p, true);
                (s > 0.0 && s < (touch - basepoint).norm() && off < rho).then_some((s, p, rho))
            })
            .collect();
        blockers.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (_, p, rho) in blockers {
            let centre = basepoint + u * ((p - basepoint) * u.conj()).re;
            for k in 0..=16 {
                let theta = PI * k as f64 / 16.0;
                spoke.push(centre - u * rho * C::from_polar(1.0, -theta));
            }
        }
        spoke.push(touch);
        let mut w: Vec<C> = spoke.clone();
        for k in 1..=CIRCLE_VERTICES {
            let theta = 2.0 * PI * k as f64 / CIRCLE_VERTICES as f64;
            w.push(q - u * r * C::from_polar(1.0, theta));
        }
        *w.last_mut().unwrap() = touch;
        w.extend(spoke.iter().rev().skip(1).copied());
        out.push(LoopSpec {
            family,
            basepoint: vec![basepoint],
            waypoints: w.into_iter().map(|z| vec![z]).collect(),
            kind: LoopKind::Petal {
                puncture: vec![q],
                radius: r,
            },
        });
    }
    Ok(out)
}

/// A random triangle `b → b + z₁d → b + z₂d → b` in a random complex line
/// through the basepoint.
pub fn random_polygon_loop(family: Family, basepoint: &[C], scale: f64, seed: u64) -> LoopSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: Vec<C> = (0..basepoint.len()).map(|_| random_complex(&mut rng) * scale).collect();
    let z1 = random_complex(&mut rng);
    let z2 = random_complex(&mut rng);
    let at = |z: C| -> Vec<C> { basepoint.iter().zip(&d).map(|(b, di)| b + z * di).collect() };
    LoopSpec {
        family,
        basepoint: basepoint.to_vec(),
        waypoints: vec![basepoint.to_vec(), at(z1), at(z2), basepoint.to_vec()],
        kind: LoopKind::RandomPolygon { seed },
    }
}

/// Straight path from `from` to `to`.
pub fn straight_path(from: &[C], to: &[C]) -> Vec<Vec<C>> {
    vec![from.to_vec(), to.to_vec()]
}

/// Path from `from` to `to` around the origin of a one-parameter family
/// along the circular arc `a ↦ e^{iθ} a`.
pub fn arc_path(from: C, turns: f64, vertices: usize) -> Vec<Vec<C>> {
    (0..=vertices)
        .map(|k| vec![from * C::from_polar(1.0, 2.0 * PI * turns * k as f64 / vertices as f64)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, ONE};
    use crate::schlafli::{label_lines, weyl_e6};
    use crate::surfaces::family_s4;

    fn base_s4() -> (SolveReport, SchlafliLabeling) {
        let rep = linesolver::solve_lines(&family_s4(ONE).unwrap(), 1).unwrap();
        let adj = linesolver::incidence_graph(&rep.lines).unwrap();
        let lab = label_lines(&adj).unwrap();
        (rep, lab)
    }

    #[test]
    fn constant_loop_is_identity() {
        let (rep, lab) = base_s4();
        let t = track_loop(&LoopSpec::constant(Family::S4, vec![ONE]), &rep, &lab, &TrackOptions::default()).unwrap();
        assert!(t.perm.is_identity());
    }

    #[test]
    fn petal_geometry() {
        let loops = petal_loops(Family::S4, ONE, &[c(0.0, 0.0), c(-0.5, 0.0)], None).unwrap();
        assert_eq!(loops.len(), 2);
        for l in &loops {
            assert_eq!(l.waypoints.first(), l.waypoints.last());
            let LoopKind::Petal { puncture, radius } = &l.kind else { panic!() };
            for w in &l.waypoints {
                for q in [c(0.0, 0.0), c(-0.5, 0.0)] {
                    let allowed = if q == puncture[0] { 0.99 * radius } else { 0.5 * radius };
                    assert!((w[0] - q).norm() >= allowed);
                }
            }
        }
        assert!(petal_loops(Family::S4, ONE, &[c(0.0, 0.0), c(0.001, 0.0)], Some(0.01)).is_err());
    }

    #[test]
    fn s4_petal_is_involution_in_weyl_group() {
        let (rep, lab) = base_s4();
        let loops = petal_loops(Family::S4, ONE, &[c(0.0, 0.0), c(-0.5, 0.0)], None).unwrap();
        let t = track_loop(&loops[1], &rep, &lab, &TrackOptions::default()).unwrap();
        assert!(!t.perm.is_identity());
        assert!(t.perm.pow(2).is_identity());
        assert!(weyl_e6().contains(&t.perm));
        assert!(t.matching_gap >= 1e3);
    }

    #[test]
    fn symmetry_as_twisted_loop() {
        let (rep, lab) = base_s4();
        let (_, m) = &Family::S4.symmetry_generators()[0];
        let spec = TwistedLoopSpec {
            family: Family::S4,
            path: vec![vec![ONE]],
            identification: m.clone(),
            label: "(12)".into(),
        };
        let t = track_twisted_loop(&spec, &rep, &lab, &TrackOptions::default()).unwrap();
        let expected = crate::surfaces::symmetry_permutation(m, &family_s4(ONE).unwrap(), &rep.lines, &lab).unwrap();
        assert_eq!(t.perm, expected);
        assert_eq!(t.perm.order(), 2);
    }
}
