//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubic_monodromy::flexes::flex_monodromy_campaign;
use cubic_monodromy::linesolver::{incidence_graph, match_lines, solve_lines, MATCH_GAP, RESIDUAL_TOL};
use cubic_monodromy::monodromy::{
    attach_verdicts, exact_sequence_report, run_campaign, Campaign, MonodromyReport, Status,
};
use cubic_monodromy::numeric::{c, chordal_distance, zeta3, C, ONE};
use cubic_monodromy::permgrp::{
    diagonal_quotient_stabilizer, named_group, small_groups_up_to_12, NamedGroup, PermGroup, SplitVerdict,
};
use cubic_monodromy::schlafli::{label_lines, weyl_e6, IncidenceModel};
use cubic_monodromy::surfaces::{
    eckardt_points, family_s3c2, puncture_scan, s3_eckardt_points, symmetry_slot_permutation, CubicForm, Family,
    ProjectiveMatrix,
};

const SEED: u64 = 7;
const BUDGET: usize = 80;

/// Criteria whose target is known to be unreachable; see the decisions ledger.
const KNOWN_FAILING: &[u32] = &[5];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn campaign(family: Family) -> MonodromyReport {
    let mut r = run_campaign(&Campaign::standard(family, SEED, BUDGET)).expect("campaign runs");
    attach_verdicts(&mut r).expect("verdicts");
    r
}

fn verdicts_pass(r: &MonodromyReport, ids: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for id in ids {
        let v = r.verdicts.iter().find(|v| v.claim == *id).expect("verdict present");
        ok &= v.status == Status::Pass;
        detail.push(format!("{id}: {:?}, order {:?}", v.status, v.observed_order));
    }
    (ok, detail.join("; "))
}

fn tolerances_hold(r: &MonodromyReport) -> bool {
    let base_ok = r.base.as_ref().is_some_and(|b| b.max_residual < RESIDUAL_TOL);
    base_ok && r.tracked.iter().all(|t| t.matching_gap >= MATCH_GAP)
}

fn c1_weyl() -> Outcome {
    let r = campaign(Family::Generic20);
    let order = r.group.order();
    let pass = order == 51840 && r.group.same_elements(weyl_e6()) && r.loops_attempted <= BUDGET;
    Outcome {
        id: 1,
        pass,
        detail: format!("order {order} after {} loops", r.loops_attempted),
    }
}

fn c2_schlafli() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut good = 0;
    for k in 0..100 {
        let form = CubicForm::random(&mut rng);
        let ok = solve_lines(&form, k).ok().and_then(|rep| {
            let adj = incidence_graph(&rep.lines).ok()?;
            let model = IncidenceModel::from_adjacency(adj.clone()).ok()?;
            model.check_strongly_regular().ok()?;
            (model.triangles().len() == 45).then_some(())?;
            label_lines(&adj).ok()
        });
        good += ok.is_some() as usize;
    }
    Outcome {
        id: 2,
        pass: good == 100,
        detail: format!("{good}/100 cubics give srg(27,10,1,5), 45 triangles and a labeling"),
    }
}

fn c3_s4() -> Outcome {
    let scan = puncture_scan(Family::S4, &[c(-1.0, 0.0)], &[c(1.0, 0.0)], 81, SEED).expect("scan runs");
    let near = |p: f64| scan.iter().any(|s| (s.parameter[0] - C::from(p)).norm() < 1e-6);
    let scan_ok = near(0.0) && near(-0.5) && scan.len() == 2;
    let r = campaign(Family::S4);
    let (vok, vdetail) = verdicts_pass(&r, &["S4-coarse", "S4-combined"]);
    let es = exact_sequence_report(
        r.combined_group.as_ref().unwrap(),
        r.deck_group.as_ref().unwrap(),
        Some(&r.group),
    )
    .unwrap();
    let es_ok = es.combined_order == 96
        && es.deck_normal
        && es.quotient_order == Some(4)
        && es.direct_product == Some(true)
        && r.group.exponent().unwrap() == 2;
    Outcome {
        id: 3,
        pass: scan_ok && vok && es_ok && tolerances_hold(&r),
        detail: format!(
            "punctures {:?}; {vdetail}; quotient {:?}",
            scan.iter().map(|s| s.parameter[0].re).collect::<Vec<_>>(),
            es.quotient_order
        ),
    }
}

fn c4_s3() -> Outcome {
    let r = campaign(Family::S3);
    let (pass, detail) = verdicts_pass(&r, &["S3-coarse", "S3-combined"]);
    Outcome { id: 4, pass, detail }
}

fn c5_s3c2() -> Outcome {
    let r = campaign(Family::S3xC2);
    let (pass, detail) = verdicts_pass(&r, &["S3xC2-coarse", "S3xC2-combined"]);
    // the tracked group is the S3 of the cubic u³ + a u² + 1, whose
    // discriminant square root already lies in its splitting field
    assert_eq!(r.group.order(), 6);
    assert_eq!(r.fingerprint, named_group(NamedGroup::S3).fingerprint().unwrap());
    Outcome { id: 5, pass, detail }
}

fn c6_c2() -> Outcome {
    let r = campaign(Family::C2Even);
    let (vok, vdetail) = verdicts_pass(&r, &["C2-GO4", "C2-PGO4"]);
    let deck = r.deck_group.as_ref().unwrap();
    let es = exact_sequence_report(&r.group, deck, None).unwrap();
    let nonsplit = matches!(
        es.central_split,
        Some(SplitVerdict::NonsplitByOrder8) | Some(SplitVerdict::NonsplitNoComplement)
    );
    Outcome {
        id: 6,
        pass: vok && nonsplit && es.quotient_order == Some(576),
        detail: format!("{vdetail}; extension {:?}", es.central_split),
    }
}

fn c7_flexes() -> Outcome {
    let r = flex_monodromy_campaign(BUDGET, SEED).expect("flex campaign runs");
    let v = &r.verdicts[0];
    Outcome {
        id: 7,
        pass: v.status == Status::Pass,
        detail: format!("order {}, {}", r.group.order(), v.details.join("; ")),
    }
}

fn c8_fermat_symmetry() -> Outcome {
    let rep = solve_lines(&CubicForm::fermat(), SEED).unwrap();
    let z = zeta3();
    let mut gens = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 3)] {
        let mut sigma = [0, 1, 2, 3];
        sigma.swap(i, j);
        gens.push(ProjectiveMatrix::permutation(sigma));
    }
    gens.push(ProjectiveMatrix::diagonal([z, ONE, ONE, ONE]));
    let mut perms = Vec::new();
    let mut gap = f64::INFINITY;
    for m in &gens {
        let (p, g) = symmetry_slot_permutation(m, &rep.lines).unwrap();
        gap = gap.min(g);
        perms.push(p);
    }
    let g = PermGroup::new(27, perms).unwrap();
    Outcome {
        id: 8,
        pass: g.order() == 648 && gap >= MATCH_GAP,
        detail: format!("order {}, matching gap {gap:.1e}", g.order()),
    }
}

fn c9_eckardt() -> Outcome {
    let fermat = eckardt_points(&solve_lines(&CubicForm::fermat(), SEED).unwrap().lines).len();
    let s3c2 = eckardt_points(&solve_lines(&family_s3c2(c(0.7, 0.4)).unwrap(), SEED).unwrap().lines);
    let stated = s3_eckardt_points();
    let at_stated = stated
        .iter()
        .all(|p| s3c2.iter().any(|e| chordal_distance(&e.point, &p.map(|z| z / 2f64.sqrt())) < 1e-8));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let generic = eckardt_points(&solve_lines(&CubicForm::random(&mut rng), SEED).unwrap().lines).len();
    Outcome {
        id: 9,
        pass: fermat == 18 && s3c2.len() == 4 && at_stated && generic == 0,
        detail: format!("Fermat {fermat}, S3xC2 {} (stated coordinates: {at_stated}), random {generic}", s3c2.len()),
    }
}

fn c10_groups() -> Outcome {
    let r = run_campaign(&Campaign {
        loop_budget: 1,
        ..Campaign::standard(Family::S4, SEED, 1)
    })
    .unwrap();
    let deck = r.deck_group.unwrap();
    let n = weyl_e6().normalizer(&deck).unwrap();
    let n_ok = n.order() == 96 && n.fingerprint().unwrap() == named_group(NamedGroup::S4xC2xC2).fingerprint().unwrap();
    let mut regular_ok = true;
    for (_, g) in small_groups_up_to_12() {
        let r = diagonal_quotient_stabilizer(&g.multiplication_table().unwrap()).unwrap();
        regular_ok &= r.order() == g.order() && r.fingerprint().unwrap() == g.fingerprint().unwrap();
    }
    Outcome {
        id: 10,
        pass: n_ok && regular_ok,
        detail: format!("normalizer order {}, regular representations reproduce the catalog: {regular_ok}", n.order()),
    }
}

fn c11_properties() -> Outcome {
    use cubic_monodromy::homotopy::TrackOptions;
    use cubic_monodromy::monodromy::solve_base;
    use cubic_monodromy::tracker::{random_polygon_loop, track_loop, LoopSpec};
    let opts = TrackOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let base_point = CubicForm::random(&mut rng).coefficients().to_vec();
    let (base, lab) = solve_base(Family::Generic20, &base_point, SEED).unwrap();
    let l1 = random_polygon_loop(Family::Generic20, &base_point, 1.0, 1);
    let l2 = random_polygon_loop(Family::Generic20, &base_point, 1.0, 2);
    let t = |l: &LoopSpec| track_loop(l, &base, &lab, &opts).unwrap().perm;
    let (p1, p2) = (t(&l1), t(&l2));
    let laws = t(&l1.reversed()) == p1.inverse()
        && t(&l1.then(&l2)) == p1.then(&p2)
        && t(&l1.refined()) == p1
        && t(&LoopSpec::constant(Family::Generic20, base_point.clone())).is_identity();
    let form = CubicForm::new(&base_point).unwrap();
    let charts = match_lines(&solve_lines(&form, 101).unwrap().lines, &base.lines).is_ok();
    let other = run_campaign(&Campaign::standard(Family::Generic20, SEED + 100, BUDGET)).unwrap();
    let independent = other.group.same_elements(weyl_e6()) && other.basepoint != base_point;
    Outcome {
        id: 11,
        pass: laws && charts && independent,
        detail: format!("loop laws {laws}, chart independence {charts}, second basepoint W(E6) {independent}"),
    }
}

fn main() {
    let outcomes = vec![
        c1_weyl(),
        c2_schlafli(),
        c3_s4(),
        c4_s3(),
        c5_s3c2(),
        c6_c2(),
        c7_flexes(),
        c8_fermat_symmetry(),
        c9_eckardt(),
        c10_groups(),
        c11_properties(),
    ];
    for o in &outcomes {
        println!("criterion {:>2}: {} ({})", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let unexpected: Vec<u32> = outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_FAILING.contains(&o.id))
        .map(|o| o.id)
        .collect();
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
