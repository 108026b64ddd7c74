//! Monodromy campaigns: loop schedules, group assembly, exact-sequence
//! structure and claim verdicts.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::homotopy::TrackOptions;
use crate::linesolver::{self, SolveError, SolveReport, DISTINCT_TOL, MATCH_GAP, RESIDUAL_TOL};
use crate::numeric::{c, chordal_distance, random_complex, zeta3, C, ONE};
use crate::permgrp::{
    named_group, split_central_extension_check, GroupError, GroupFingerprint, NamedGroup, PermGroup,
    Permutation, SplitVerdict,
};
use crate::schlafli::{label_lines, weyl_e6, SchlafliError, SchlafliLabeling};
use crate::surfaces::{self, eckardt_points, symmetry_permutation, CubicForm, Family, ProjectiveMatrix, SurfaceError};
use crate::tracker::{
    arc_path, petal_loops, random_polygon_loop, track_loop, track_twisted_loop, LoopDescription, LoopKind,
    LoopSpec, TrackedPermutation, TrackerError, TwistedLoopSpec,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PLATEAU: usize = 10;
/// Loops tracked concurrently per batch; fixed so results do not depend on
/// the thread count.
pub const BATCH: usize = 8;

#[derive(Debug, Error)]
pub enum MonodromyError {
    #[error("loop budget must be at least 1")]
    EmptyBudget,
    #[error("basepoint solve failed: {0}")]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Schlafli(#[from] SchlafliError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tracker(#[from] TrackerError),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Campaign {
    pub family: Family,
    pub basepoint: Vec<C>,
    pub loop_budget: usize,
    pub seed: u64,
    pub include_twists: bool,
    pub include_symmetry_deck: bool,
    pub plateau: usize,
    /// Spread of the random polygon loops.
    pub loop_scale: f64,
}

impl Campaign {
    /// The standard configuration for a surface family.
    pub fn standard(family: Family, seed: u64, loop_budget: usize) -> Campaign {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_ba5e);
        let (basepoint, loop_scale) = match family {
            Family::Generic20 => (CubicForm::random(&mut rng).coefficients().to_vec(), 1.0),
            Family::S4 => (vec![ONE], 1.5),
            Family::S3 => (vec![ONE, c(2.0, 0.0)], 3.0),
            Family::S3xC2 => (vec![ONE], 3.0),
            Family::C2Even => ((0..13).map(|_| random_complex(&mut rng)).collect(), 4.0),
            Family::FlexP9 => ((0..10).map(|_| random_complex(&mut rng)).collect(), 1.0),
        };
        Campaign {
            family,
            basepoint,
            loop_budget,
            seed,
            include_twists: true,
            include_symmetry_deck: !family.symmetry_generators().is_empty(),
            plateau: DEFAULT_PLATEAU,
            loop_scale,
        }
    }
}

fn ser_group<S: Serializer>(g: &PermGroup, s: S) -> Result<S::Ok, S::Error> {
    g.report().map_err(serde::ser::Error::custom)?.serialize(s)
}

fn ser_opt_group<S: Serializer>(g: &Option<PermGroup>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        Some(g) => ser_group(g, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopFailure {
    pub index: usize,
    pub description: LoopDescription,
    pub error: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub status: Status,
    pub target_order: u64,
    pub observed_order: Option<u64>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub residual: f64,
    pub distinct: f64,
    pub matching_gap: f64,
    pub invariance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: RESIDUAL_TOL,
            distinct: DISTINCT_TOL,
            matching_gap: MATCH_GAP,
            invariance: surfaces::INVARIANCE_TOL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub schema_version: u32,
    pub family: Family,
    pub degree: usize,
    pub basepoint: Vec<C>,
    pub seed: u64,
    pub loop_budget: usize,
    pub loops_attempted: usize,
    pub plateau_reached: bool,
    pub order_history: Vec<u64>,
    pub tracked: Vec<TrackedPermutation>,
    pub failures: Vec<LoopFailure>,
    #[serde(serialize_with = "ser_group")]
    pub group: PermGroup,
    #[serde(serialize_with = "ser_opt_group")]
    pub deck_group: Option<PermGroup>,
    #[serde(serialize_with = "ser_opt_group")]
    pub combined_group: Option<PermGroup>,
    pub fingerprint: GroupFingerprint,
    pub combined_fingerprint: Option<GroupFingerprint>,
    /// Named structural checks (containments) and their outcomes.
    pub checks: Vec<(String, bool)>,
    pub verdicts: Vec<Verdict>,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub labeling: Option<SchlafliLabeling>,
    #[serde(skip)]
    pub base: Option<SolveReport>,
}

/// Outcome of the order-plateau loop driver.
pub struct DriveOutcome {
    pub tracked: Vec<TrackedPermutation>,
    pub failures: Vec<LoopFailure>,
    pub order_history: Vec<u64>,
    pub plateau_reached: bool,
    pub group: PermGroup,
    pub attempted: usize,
}

/// Tracks scheduled loops in fixed-size parallel batches, in schedule order,
/// until the generated order is unchanged for `plateau` consecutive loops
/// (after every structured loop has run) or the budget is spent.
/// `accept` rejects permutations that violate a known constraint.
pub fn drive_loops<T, A>(
    degree: usize,
    structured: Vec<LoopDescription>,
    random: impl Fn(usize) -> LoopDescription,
    budget: usize,
    plateau: usize,
    track: T,
    accept: A,
) -> Result<DriveOutcome, GroupError>
where
    T: Fn(&LoopDescription) -> Result<TrackedPermutation, TrackerError> + Sync,
    A: Fn(&Permutation) -> bool,
{
    let mut group = PermGroup::trivial(degree);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut out = DriveOutcome {
        tracked: Vec::new(),
        failures: Vec::new(),
        order_history: Vec::new(),
        plateau_reached: false,
        group: group.clone(),
        attempted: 0,
    };
    let n_structured = structured.len();
    let mut unchanged = 0usize;
    let mut next = 0usize;
    'outer: while next < budget {
        let end = (next + BATCH).min(budget);
        let jobs: Vec<(usize, LoopDescription)> = (next..end)
            .map(|k| {
                let d = if k < n_structured {
                    structured[k].clone()
                } else {
                    random(k - n_structured)
                };
                (k, d)
            })
            .collect();
        let results: Vec<_> = jobs.par_iter().map(|(_, d)| track(d)).collect();
        for ((k, d), r) in jobs.into_iter().zip(results) {
            out.attempted = k + 1;
            match r {
                Ok(t) if accept(&t.perm) => {
                    if !group.contains(&t.perm) {
                        gens.push(t.perm.clone());
                        group = PermGroup::new(degree, gens.clone())?;
                        unchanged = 0;
                    } else {
                        unchanged += 1;
                    }
                    out.tracked.push(t);
                }
                Ok(_) => out.failures.push(LoopFailure {
                    index: k,
                    description: d,
                    error: "permutation violates the incidence constraint".into(),
                }),
                Err(e) => out.failures.push(LoopFailure {
                    index: k,
                    description: d,
                    error: e.to_string(),
                }),
            }
            out.order_history.push(group.order() as u64);
            if k + 1 >= n_structured && unchanged >= plateau {
                out.plateau_reached = true;
                break 'outer;
            }
        }
        next = end;
    }
    out.group = group;
    Ok(out)
}

/// Solves the basepoint and labels its lines.
pub fn solve_base(family: Family, basepoint: &[C], seed: u64) -> Result<(SolveReport, SchlafliLabeling), MonodromyError> {
    let form = family.form(basepoint)?;
    let base = linesolver::solve_lines(&form, seed)?;
    let adj = linesolver::incidence_graph(&base.lines)?;
    let labeling = label_lines(&adj)?;
    Ok((base, labeling))
}

/// Permutations (canonical labels) of the family's symmetry matrices.
pub fn deck_permutations(
    family: Family,
    basepoint: &[C],
    base: &SolveReport,
    labeling: &SchlafliLabeling,
) -> Result<Vec<Permutation>, MonodromyError> {
    let form = family.form(basepoint)?;
    family
        .symmetry_generators()
        .iter()
        .map(|(_, m)| Ok(symmetry_permutation(m, &form, &base.lines, labeling)?))
        .collect()
}

fn offset_midpoint(a: &[C], b: &[C], rng: &mut ChaCha8Rng) -> Vec<C> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + y) / 2.0 + random_complex(rng) * 0.3 * (1.0 + (x - y).norm()))
        .collect()
}

/// Twisted loops realizing the quotient identifications of the family.
pub fn twisted_loops(family: Family, basepoint: &[C], seed: u64) -> Vec<TwistedLoopSpec> {
    let z = zeta3();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7715_7ed0);
    let mut out = Vec::new();
    let mut push = |label: &str, path: Vec<Vec<C>>, m: ProjectiveMatrix| {
        out.push(TwistedLoopSpec {
            family,
            path,
            identification: m,
            label: label.to_string(),
        })
    };
    match family {
        Family::S3 => {
            let (a, b) = (basepoint[0], basepoint[1]);
            let images = [
                ("swap", vec![b, a], ProjectiveMatrix::permutation([1, 0, 2, 3])),
                ("zeta_x", vec![z * a, b], ProjectiveMatrix::diagonal([z, ONE, ONE, ONE])),
                ("zeta_y", vec![a, z * b], ProjectiveMatrix::diagonal([ONE, z, ONE, ONE])),
            ];
            for (label, img, m) in images {
                let mid = offset_midpoint(basepoint, &img, &mut rng);
                push(label, vec![basepoint.to_vec(), mid, img], m);
            }
        }
        Family::S3xC2 => {
            push(
                "zeta",
                arc_path(basepoint[0], 1.0 / 3.0, 24),
                ProjectiveMatrix::diagonal([z, z, ONE, ONE]),
            );
        }
        Family::C2Even => {
            let i = c(0.0, 1.0);
            let path = (0..=32)
                .map(|k| {
                    let f = C::from_polar(1.0, PI * k as f64 / 32.0);
                    basepoint
                        .iter()
                        .enumerate()
                        .map(|(j, p)| if j < 3 { p * f } else { *p })
                        .collect()
                })
                .collect();
            push("half_scaling", path, ProjectiveMatrix::diagonal([i, ONE, ONE, ONE]));
        }
        _ => {}
    }
    out
}

/// Loops tracked before any random loop: petals at known punctures and,
/// for the even family, the closed scaling loop `L ↦ e^{iθ} L`.
pub fn structured_loops(family: Family, basepoint: &[C]) -> Result<Vec<LoopSpec>, TrackerError> {
    match family {
        Family::S4 | Family::S3xC2 => {
            let punctures: Vec<C> = family.known_punctures().into_iter().map(|p| p[0]).collect();
            petal_loops(family, basepoint[0], &punctures, None)
        }
        Family::C2Even => {
            let waypoints: Vec<Vec<C>> = (0..=64)
                .map(|k| {
                    let f = C::from_polar(1.0, 2.0 * PI * k as f64 / 64.0);
                    basepoint
                        .iter()
                        .enumerate()
                        .map(|(j, p)| if j < 3 { p * f } else { *p })
                        .collect()
                })
                .collect();
            let mut w = waypoints;
            *w.last_mut().unwrap() = basepoint.to_vec();
            Ok(vec![LoopSpec {
                family,
                basepoint: basepoint.to_vec(),
                waypoints: w,
                kind: LoopKind::Plain,
            }])
        }
        _ => Ok(Vec::new()),
    }
}

pub(crate) fn derived_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64 + 1)
}

/// Runs a campaign on a surface family.
pub fn run_campaign(c: &Campaign) -> Result<MonodromyReport, MonodromyError> {
    if c.loop_budget == 0 {
        return Err(MonodromyError::EmptyBudget);
    }
    if !c.family.is_surface_family() {
        return Err(MonodromyError::Other("use the flex campaign for plane cubics".into()));
    }
    let (base, labeling) = solve_base(c.family, &c.basepoint, c.seed)?;
    let opts = TrackOptions::default();
    let mut structured: Vec<LoopDescription> = structured_loops(c.family, &c.basepoint)?
        .into_iter()
        .map(LoopDescription::Plain)
        .collect();
    if c.include_twists {
        structured.extend(
            twisted_loops(c.family, &c.basepoint, c.seed)
                .into_iter()
                .map(LoopDescription::Twisted),
        );
    }
    let random = |k: usize| {
        LoopDescription::Plain(random_polygon_loop(
            c.family,
            &c.basepoint,
            c.loop_scale,
            derived_seed(c.seed, k),
        ))
    };
    let track = |d: &LoopDescription| match d {
        LoopDescription::Plain(l) => track_loop(l, &base, &labeling, &opts),
        LoopDescription::Twisted(t) => track_twisted_loop(t, &base, &labeling, &opts),
    };
    let w = weyl_e6();
    let outcome = drive_loops(27, structured, random, c.loop_budget, c.plateau, track, |p| w.contains(p))?;

    let deck_perms = if c.include_symmetry_deck {
        Some(deck_permutations(c.family, &c.basepoint, &base, &labeling)?)
    } else {
        None
    };
    let deck_group = deck_perms
        .as_ref()
        .map(|d| PermGroup::new(27, d.clone()))
        .transpose()?;
    let combined_group = deck_perms.as_ref().map(|d| outcome.group.join(d)).transpose()?;

    let mut checks = vec![(
        "tracked group inside W(E6)".to_string(),
        outcome.group.is_subgroup_of(w),
    )];
    if let Some(deck) = &deck_group {
        let z = w.centralizer(deck)?;
        let n = w.normalizer(deck)?;
        checks.push(("tracked group centralizes deck".into(), outcome.group.is_subgroup_of(&z)));
        if let Some(comb) = &combined_group {
            checks.push(("combined group normalizes deck".into(), comb.is_subgroup_of(&n)));
        }
    }
    let fingerprint = outcome.group.fingerprint()?;
    let combined_fingerprint = combined_group.as_ref().map(|g| g.fingerprint()).transpose()?;
    Ok(MonodromyReport {
        schema_version: SCHEMA_VERSION,
        family: c.family,
        degree: 27,
        basepoint: c.basepoint.clone(),
        seed: c.seed,
        loop_budget: c.loop_budget,
        loops_attempted: outcome.attempted,
        plateau_reached: outcome.plateau_reached,
        order_history: outcome.order_history,
        tracked: outcome.tracked,
        failures: outcome.failures,
        group: outcome.group,
        deck_group,
        combined_group,
        fingerprint,
        combined_fingerprint,
        checks,
        verdicts: Vec::new(),
        tolerances: Tolerances::default(),
        labeling: Some(labeling),
        base: Some(base),
    })
}

/// Structure of `1 → deck → combined → combined/deck → 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceReport {
    pub combined_order: u64,
    pub deck_order: u64,
    pub deck_normal: bool,
    pub quotient_order: Option<u64>,
    pub quotient_fingerprint: Option<GroupFingerprint>,
    /// Whether the candidate complement makes `combined` a direct product.
    pub direct_product: Option<bool>,
    pub central_split: Option<SplitVerdict>,
}

pub fn exact_sequence_report(
    combined: &PermGroup,
    deck: &PermGroup,
    complement: Option<&PermGroup>,
) -> Result<ExactSequenceReport, GroupError> {
    let deck_normal = deck.is_subgroup_of(combined) && combined.is_normal_subgroup(deck);
    let mut r = ExactSequenceReport {
        combined_order: combined.order() as u64,
        deck_order: deck.order() as u64,
        deck_normal,
        quotient_order: None,
        quotient_fingerprint: None,
        direct_product: None,
        central_split: None,
    };
    if !deck_normal {
        return Ok(r);
    }
    let q = combined.quotient(deck)?;
    r.quotient_order = Some(q.group.order() as u64);
    r.quotient_fingerprint = Some(q.group.fingerprint()?);
    if let Some(h) = complement {
        let meets_trivially = h.elements()?.iter().all(|g| g.is_identity() || !deck.contains(g));
        let commutes = h
            .generators()
            .iter()
            .all(|a| deck.generators().iter().all(|b| a.commutes_with(b)));
        r.direct_product = Some(
            h.is_subgroup_of(combined)
                && meets_trivially
                && commutes
                && h.order() * deck.order() == combined.order(),
        );
    }
    if deck.order() == 2 {
        let z = deck.generators()[0].clone();
        if combined.generators().iter().all(|g| g.commutes_with(&z)) {
            r.central_split = Some(split_central_extension_check(combined, &z)?);
        }
    }
    Ok(r)
}

/// What a claim measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Tracked,
    Combined,
    TrackedModDeck,
    Flexes,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub family: Family,
    pub measure: Measure,
    pub target_order: u64,
    pub target_group: Option<NamedGroup>,
    pub description: &'static str,
}

/// The monodromy claims checked by `verify-all`.
pub fn claim_suite() -> Vec<Claim> {
    use Family::*;
    use Measure::*;
    let claim = |id, family, measure, target_order, target_group, description| Claim {
        id,
        family,
        measure,
        target_order,
        target_group: (target_group != NamedGroup::C6).then_some(target_group),
        description,
    };
    vec![
        claim("W(E6)", Generic20, Tracked, 51840, NamedGroup::C6, "generic monodromy is W(E6)"),
        claim("S4-coarse", S4, Tracked, 4, NamedGroup::C2xC2, "S4 family, coarse monodromy C2xC2"),
        claim("S4-combined", S4, Combined, 96, NamedGroup::S4xC2xC2, "S4 family with deck, S4xC2xC2"),
        claim("S3-coarse", S3, Tracked, 36, NamedGroup::S3xS3, "S3 family, coarse monodromy S3xS3"),
        claim("S3-combined", S3, Combined, 216, NamedGroup::S3xS3xS3, "S3 family with deck, S3xS3xS3"),
        claim("S3xC2-coarse", S3xC2, Tracked, 12, NamedGroup::S3xC2, "S3xC2 family, coarse monodromy S3xC2"),
        claim("S3xC2-combined", S3xC2, Combined, 144, NamedGroup::S3xC2Sq, "S3xC2 family with deck, (S3xC2)^2"),
        claim("C2-GO4", C2Even, Tracked, 1152, NamedGroup::GO4p3Model, "even family, GO4+(3)"),
        claim("C2-PGO4", C2Even, TrackedModDeck, 576, NamedGroup::PGO4p3Model, "even family mod involution, PGO4+(3), non-split"),
        claim("flexes-ASL2", FlexP9, Flexes, 216, NamedGroup::ASL2F3, "nine flexes, ASL2(F3)"),
    ]
}

/// Canonical labels of the lines through the Eckardt point `point`.
pub fn eckardt_triple(report: &MonodromyReport, point: &[C]) -> Option<Vec<usize>> {
    let (base, labeling) = (report.base.as_ref()?, report.labeling.as_ref()?);
    eckardt_points(&base.lines)
        .into_iter()
        .find(|e| chordal_distance(&e.point, point) < 1e-8)
        .map(|e| {
            let mut t: Vec<usize> = e.lines.iter().map(|&s| labeling.label(s).index()).collect();
            t.sort_unstable();
            t
        })
}

fn fp_check(details: &mut Vec<String>, g: &PermGroup, target: NamedGroup) -> Result<bool, GroupError> {
    let want = named_group(target).fingerprint()?;
    let have = g.fingerprint()?;
    let ok = want == have;
    details.push(format!("fingerprint matches {target:?}: {ok}"));
    Ok(ok)
}

/// Evaluates one surface-family claim against a campaign report.
pub fn evaluate_claim(claim: &Claim, report: &MonodromyReport) -> Result<Verdict, GroupError> {
    let mut details = Vec::new();
    let mut ok = true;
    let observed: Option<&PermGroup>;
    let owned;
    match claim.measure {
        Measure::Tracked => observed = Some(&report.group),
        Measure::Combined => observed = report.combined_group.as_ref(),
        Measure::TrackedModDeck => {
            owned = match &report.deck_group {
                Some(deck) if deck.is_subgroup_of(&report.group) => {
                    let es = exact_sequence_report(&report.group, deck, None)?;
                    details.push(format!("central split verdict: {:?}", es.central_split));
                    ok &= matches!(
                        es.central_split,
                        Some(SplitVerdict::NonsplitByOrder8) | Some(SplitVerdict::NonsplitNoComplement)
                    );
                    let big8 = report.group.has_element_of_order(8)?;
                    let q = report.group.quotient(deck)?;
                    let small8 = q.group.has_element_of_order(8)?;
                    details.push(format!("order-8 elements: group {big8}, quotient {small8}"));
                    ok &= big8 && !small8;
                    Some(q.group)
                }
                _ => {
                    details.push("deck involution not in tracked group".into());
                    ok = false;
                    None
                }
            };
            observed = owned.as_ref();
        }
        Measure::Flexes => {
            return Ok(Verdict {
                claim: claim.id.into(),
                status: Status::Inconclusive,
                target_order: claim.target_order,
                observed_order: None,
                details: vec!["evaluated by the flex campaign".into()],
            })
        }
    }
    let Some(g) = observed else {
        return Ok(Verdict {
            claim: claim.id.into(),
            status: Status::Fail,
            target_order: claim.target_order,
            observed_order: None,
            details,
        });
    };
    let order = g.order() as u64;
    ok &= order == claim.target_order;
    details.push(format!("order {order}, target {}", claim.target_order));
    if let Some(target) = claim.target_group {
        ok &= fp_check(&mut details, g, target)?;
    } else {
        let eq = g.same_elements(weyl_e6());
        details.push(format!("equals W(E6): {eq}"));
        ok &= eq;
    }
    for (name, passed) in &report.checks {
        details.push(format!("{name}: {passed}"));
        ok &= passed;
    }
    match claim.id {
        "S4-coarse" => {
            let e = g.exponent()?;
            details.push(format!("exponent {e}"));
            ok &= e == 2;
        }
        "S4-combined" | "S3-combined" | "S3xC2-combined" => {
            if let Some(deck) = &report.deck_group {
                let es = exact_sequence_report(g, deck, Some(&report.group))?;
                details.push(format!(
                    "deck normal {}, quotient order {:?}, direct product {:?}",
                    es.deck_normal, es.quotient_order, es.direct_product
                ));
                ok &= es.deck_normal && es.direct_product == Some(true);
            }
        }
        "C2-GO4" => match eckardt_triple(report, &[ONE, C::from(0.0), C::from(0.0), C::from(0.0)]) {
            Some(t) => {
                let stab = weyl_e6().set_stabilizer(&t)?;
                let eq = g.same_elements(&stab);
                details.push(format!("equals stabilizer of triple {t:?} (order {}): {eq}", stab.order()));
                ok &= eq;
            }
            None => {
                details.push("Eckardt point [1:0:0:0] not found".into());
                ok = false;
            }
        },
        _ => {}
    }
    let status = if !report.plateau_reached {
        details.push("order did not reach a plateau within the budget".into());
        Status::Inconclusive
    } else if ok {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Verdict {
        claim: claim.id.into(),
        status,
        target_order: claim.target_order,
        observed_order: Some(order),
        details,
    })
}

/// Attaches verdicts for every claim on the report's family.
pub fn attach_verdicts(report: &mut MonodromyReport) -> Result<(), GroupError> {
    let claims: Vec<Claim> = claim_suite().into_iter().filter(|c| c.family == report.family).collect();
    for c in &claims {
        let v = evaluate_claim(c, report)?;
        report.verdicts.push(v);
    }
    Ok(())
}

pub fn inconclusive(claim: &Claim, reason: String) -> Verdict {
    Verdict {
        claim: claim.id.into(),
        status: Status::Inconclusive,
        target_order: claim.target_order,
        observed_order: None,
        details: vec![reason],
    }
}
