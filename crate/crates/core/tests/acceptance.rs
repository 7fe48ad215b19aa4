//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use newton_compact_core::criteria::{
    analyze, face_sign_verdicts, numeric_compactness_probe, overall_verdict, perturb, sandwich_check,
    stable_compactness, AnalyzeOptions, Geometry, NecessaryStatus, NotCompactWitness, Overall, PerturbationMode,
    PerturbationSpec, ProbeBudget, ProbeEvidence, StabilityVerdict, StabilityWitness, SufficientStatus,
};
use newton_compact_core::newton::{
    annotated_faces, comparability_constants, face_polynomial, newton_polytope, polytope_of_points, supporting_face,
    Face, NewtonPolytope,
};
use newton_compact_core::polynomial::{
    semialgebraic_to_zero_set, substitute_monomial_curve, ExponentVector, MonomialCurve, Polynomial,
};
use newton_compact_core::signcheck::{check_nondegeneracy, Budget, CriticalVerdict, SignKind};
use newton_compact_core::Rational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn vertex_set(p: &NewtonPolytope, f: &Face) -> BTreeSet<Vec<u32>> {
    p.vertices_of(f.vertex_mask())
        .iter()
        .map(|v| v.as_slice().to_vec())
        .collect()
}

fn set(points: &[&[u32]]) -> BTreeSet<Vec<u32>> {
    points.iter().map(|p| p.to_vec()).collect()
}

/// Checks shared by the square `(x1 - x2)^2` and its semialgebraic rebuild.
fn square_example(f: &Polynomial) -> Check {
    let p = newton_polytope(f).map_err(|e| e.to_string())?;
    ensure!(
        p.dim() == 1 && vertex_set_all(&p) == set(&[&[2, 0], &[0, 2]]),
        "polytope is not the segment (2,0)-(0,2)"
    );
    let faces = annotated_faces(&p).map_err(|e| e.to_string())?;
    ensure!(faces.len() == 3, "expected 3 faces, got {}", faces.len());
    ensure!(faces.iter().all(Face::at_infinity), "some face not at infinity");
    let mut polys: Vec<String> = faces
        .iter()
        .map(|fc| face_polynomial(f, &p, fc).map(|x| x.to_string()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    polys.sort();
    let mut expected: Vec<String> = [poly("x1^2", 2), poly("x2^2", 2), poly("(x1 - x2)^2", 2)]
        .iter()
        .map(ToString::to_string)
        .collect();
    expected.sort();
    ensure!(polys == expected, "face polynomials {polys:?}");

    let a = analyze(f, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let c = &a.compactness;
    ensure!(
        c.necessary_status == NecessaryStatus::ConsistentWithCompact,
        "necessary status {:?}",
        c.necessary_status
    );
    ensure!(
        c.sufficient_status == SufficientStatus::NotApplicable,
        "sufficient status {:?}",
        c.sufficient_status
    );
    match &a.stability.verdict {
        StabilityVerdict::NotStablyCompact(StabilityWitness::Face { witnesses, kind, .. }) => {
            ensure!(*kind == SignKind::TakesZero, "stability witness kind {kind:?}");
            let w = witnesses.first().ok_or("no stability witness point")?;
            ensure!(w.point == vec![r(1), r(1)], "witness point {:?}", w.point);
            ensure!(
                f.evaluate(&w.point).is_zero() && w.value.is_zero(),
                "witness is not an exact zero"
            );
        }
        other => return Err(format!("stability verdict {other:?}")),
    }
    let probe = c.probe_evidence.as_ref().ok_or("no probe evidence")?;
    let far = probe.points_at_least(100.0).count();
    ensure!(far > 0, "no far zeros at radius 100");
    Ok(format!(
        "3 faces at infinity, witness (1,1), {far} far zeros at radius 100"
    ))
}

fn vertex_set_all(p: &NewtonPolytope) -> BTreeSet<Vec<u32>> {
    p.vertices().iter().map(|v| v.as_slice().to_vec()).collect()
}

fn criterion_1() -> Check {
    square_example(&poly("(x1 - x2)^2", 2))
}

fn criterion_2() -> Check {
    let f = poly("x1^2 + x2^2 - 1", 2);
    let a = analyze(&f, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    ensure!(
        a.compactness.sufficient_status == SufficientStatus::CompactCertified(1),
        "sufficient status {:?}",
        a.compactness.sufficient_status
    );
    ensure!(
        a.compactness.overall == Overall::CompactCertified,
        "overall {:?}",
        a.compactness.overall
    );
    ensure!(
        a.stability.verdict == StabilityVerdict::StablyCompactCertified(1),
        "stability {:?}",
        a.stability.verdict
    );
    let g = Geometry::new(&f).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<Vec<u32>>> = g
        .boundary_faces()
        .map(|(_, face, _)| vertex_set(g.polytope(), face))
        .collect();
    let want: BTreeSet<BTreeSet<Vec<u32>>> = [set(&[&[2, 0]]), set(&[&[0, 2]]), set(&[&[2, 0], &[0, 2]])].into();
    ensure!(got == want, "boundary at infinity {got:?}");
    ensure!(a.inconsistencies.is_empty(), "inconsistencies {:?}", a.inconsistencies);
    Ok("CompactCertified(+1), StablyCompactCertified(+1), boundary = two axis vertices and the hypotenuse".into())
}

fn criterion_3() -> Check {
    let f = poly("x1*x2 - 1", 2);
    let a = analyze(&f, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    ensure!(
        a.compactness.overall == Overall::NotCompactCertified,
        "overall {:?}",
        a.compactness.overall
    );
    let g = Geometry::new(&f).map_err(|e| e.to_string())?;
    let edge = g
        .faces()
        .iter()
        .position(|fc| fc.dim() == 1 && fc.at_infinity())
        .ok_or("no edge at infinity")?;
    match &a.compactness.necessary_status {
        NecessaryStatus::ViolatedNotCompact(NotCompactWitness::OppositeFaceValues {
            negative_face,
            negative,
            positive_face,
            positive,
        }) => {
            ensure!(
                *negative_face == edge && *positive_face == edge,
                "witnesses not on the edge"
            );
            let fd = face_polynomial(&f, g.polytope(), &g.faces()[edge]).map_err(|e| e.to_string())?;
            ensure!(
                fd.evaluate(&negative.point) == negative.value && negative.value.is_negative(),
                "negative witness does not recheck"
            );
            ensure!(
                fd.evaluate(&positive.point) == positive.value && positive.value.is_positive(),
                "positive witness does not recheck"
            );
        }
        other => return Err(format!("necessary status {other:?}")),
    }
    ensure!(
        matches!(a.stability.verdict, StabilityVerdict::NotStablyCompact(_)),
        "stability {:?}",
        a.stability.verdict
    );
    Ok("NotCompactCertified with an exact opposite-sign pair on the edge; NotStablyCompact".into())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    let mut nonvanishing = 0;
    for trial in 0..250 {
        let n = rng.gen_range(2..=3);
        let f = random_polynomial(&mut rng, n, 8, 6);
        let qv: Vec<i64> = loop {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            if v.iter().any(|&x| x < 0) {
                break v;
            }
        };
        let x0: Vec<Rational> = (0..n).map(|_| random_nonzero_rational(&mut rng)).collect();
        // oracle: minimum of <q, alpha> and the terms attaining it
        let value = |a: &ExponentVector| -> i64 { a.as_slice().iter().zip(&qv).map(|(&e, &w)| i64::from(e) * w).sum() };
        let d = f.support().map(value).min().unwrap();
        let face_terms: Vec<(ExponentVector, Rational)> = f
            .terms()
            .filter(|(a, _)| value(a) == d)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        let f_face = Polynomial::from_terms(n, face_terms).unwrap();
        let lead = f_face.evaluate(&x0);

        let p = newton_polytope(&f).map_err(|e| e.to_string())?;
        let qr: Vec<Rational> = qv.iter().map(|&v| r(v)).collect();
        let (d_lib, face) = supporting_face(&p, &qr).map_err(|e| e.to_string())?;
        ensure!(d_lib == r(d), "trial {trial}: library d = {d_lib}, oracle {d}");
        ensure!(
            face.at_infinity(),
            "trial {trial}: face for q {qv:?} not flagged at infinity"
        );
        let lib_face = face_polynomial(&f, &p, &face).map_err(|e| e.to_string())?;
        ensure!(lib_face == f_face, "trial {trial}: face polynomial mismatch");

        let curve = MonomialCurve::with_integer_direction(&f, x0.clone(), qv.clone()).map_err(|e| e.to_string())?;
        let series = substitute_monomial_curve(&f, &curve);
        checked += 1;
        if !lead.is_zero() {
            nonvanishing += 1;
            let (e, c) = series.leading_term().ok_or("empty substitution")?;
            ensure!(e == d, "trial {trial}: lowest exponent {e}, expected {d}");
            ensure!(*c == lead, "trial {trial}: leading coefficient {c}, expected {lead}");
        } else if let Some((e, _)) = series.leading_term() {
            ensure!(e > d, "trial {trial}: exponent {e} below d = {d}");
        }
        // independent numeric spot check at t = 1/2
        let t = q(1, 2);
        let pt: Vec<Rational> = x0
            .iter()
            .zip(&qv)
            .map(|(x, &e)| {
                let tp = num_traits::pow(t.clone(), e.unsigned_abs() as usize);
                if e < 0 {
                    x / tp
                } else {
                    x * tp
                }
            })
            .collect();
        ensure!(
            series.evaluate(&t) == f.evaluate(&pt),
            "trial {trial}: substitution disagrees with evaluation"
        );
    }
    ensure!(
        nonvanishing >= 200,
        "only {nonvanishing} instances with a nonzero leading coefficient"
    );
    Ok(format!(
        "{checked} random instances, {nonvanishing} with nonzero leading coefficient, zero failures"
    ))
}

fn criterion_5() -> Check {
    let mut notes = Vec::new();
    for text in ["x1^2 + x2^2 - 1", "x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1"] {
        let g = Geometry::new(&poly(text, 2)).map_err(|e| e.to_string())?;
        let v = face_sign_verdicts(&g, &Budget::default()).map_err(|e| e.to_string())?;
        let st = stable_compactness(&g, &v).map_err(|e| e.to_string())?;
        ensure!(
            st.verdict == StabilityVerdict::StablyCompactCertified(1),
            "{text}: stability {:?}",
            st.verdict
        );
        let est = sandwich_check(&g, 1, 10.0, 10_000, 0).map_err(|e| e.to_string())?;
        ensure!(est.c1_hat.is_positive(), "{text}: c1_hat = {}", est.c1_hat);
        ensure!(est.violations.is_empty(), "{text}: {} violations", est.violations.len());
        notes.push(format!("c1_hat ~ {:.4}", to_f64(&est.c1_hat)));
    }
    let g = Geometry::new(&poly("(x1 - x2)^2", 2)).map_err(|e| e.to_string())?;
    let est = sandwich_check(&g, 1, 10.0, 10_000, 0).map_err(|e| e.to_string())?;
    ensure!(est.c1_hat < q(1, 1_000_000), "square: min ratio {}", est.c1_hat);
    notes.push(format!("square min ratio {}", est.c1_hat));
    Ok(notes.join(", "))
}

fn to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn criterion_6() -> Check {
    let f = poly("(x1 - x2)^2", 2);
    let g = Geometry::new(&f).map_err(|e| e.to_string())?;
    for eps in [q(1, 10), q(1, 100)] {
        let spec = PerturbationSpec {
            epsilon: eps.clone(),
            mode: PerturbationMode::Directed(ExponentVector::new(vec![2, 0])),
        };
        let h = &f + &perturb(&g, &spec, 0, 0).map_err(|e| e.to_string())?;
        ensure!(
            h == poly(&format!("(x1 - x2)^2 - {eps}*x1^2"), 2),
            "directed perturbation is {h}"
        );
        let e = numeric_compactness_probe(&h, &[100.0], &ProbeBudget::default(), 0);
        ensure!(
            e.points_at_least(100.0).next().is_some(),
            "epsilon {eps}: no far zeros at radius 100"
        );
    }

    let circle = poly("x1^2 + x2^2 - 1", 2);
    let a = analyze(&circle, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let eps = a
        .stability
        .epsilon_estimate
        .ok_or("no epsilon estimate for the circle")?
        .value;
    let g = Geometry::new(&circle).map_err(|e| e.to_string())?;
    let spec = PerturbationSpec {
        epsilon: eps.clone(),
        mode: PerturbationMode::Random,
    };
    let mut far = 0;
    for t in 0..100 {
        let h = &circle + &perturb(&g, &spec, 0, t).map_err(|e| e.to_string())?;
        let e = numeric_compactness_probe(&h, &[10.0, 100.0], &ProbeBudget::default(), t);
        if matches!(e, ProbeEvidence::FarZeroEvidence { .. }) {
            far += 1;
        }
        let overall = overall_verdict(&h, &Budget::default()).map_err(|e| e.to_string())?;
        ensure!(
            overall != Overall::NotCompactCertified,
            "trial {t}: perturbed circle refuted"
        );
    }
    ensure!(far == 0, "{far} of 100 perturbed circles show far zeros");
    Ok(format!(
        "directed perturbations show far zeros; 0/100 random trials at epsilon {eps}"
    ))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total_faces = 0;
    for trial in 0..100 {
        let n = rng.gen_range(1..=3);
        let max_exp = if n == 3 { 2 } else { 4 };
        let count = rng.gen_range(1..=12);
        let support: BTreeSet<ExponentVector> = (0..count)
            .map(|_| ExponentVector::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect()))
            .collect();
        let support: Vec<ExponentVector> = support.into_iter().collect();
        let p = polytope_of_points(n, support.clone()).map_err(|e| e.to_string())?;
        let want_vertices = oracle_vertices(&support);
        let got_vertices = vertex_set_all(&p);
        ensure!(
            got_vertices == want_vertices,
            "trial {trial}: vertices {got_vertices:?} vs {want_vertices:?}"
        );

        let faces = annotated_faces(&p).map_err(|e| format!("trial {trial}, support {support:?}: {e}"))?;
        let as_list = |fc: &Face| -> Vec<Vec<u32>> { vertex_set(&p, fc).into_iter().collect() };
        let got_faces: BTreeSet<Vec<Vec<u32>>> = faces.iter().map(as_list).collect();
        let want_faces = oracle_faces(&want_vertices);
        ensure!(
            got_faces == want_faces,
            "trial {trial}: faces differ for support {support:?}"
        );

        // Every reported face must carry a normal with a negative entry whose
        // minimum over the support is attained exactly on the face; every face
        // the grid search finds must be reported.
        let mut got_inf: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
        for fc in faces.iter().filter(|fc| fc.at_infinity()) {
            let face = as_list(fc);
            let qv = fc
                .witness_normal()
                .ok_or(format!("trial {trial}: face {face:?} lacks a normal"))?;
            let value = |a: &[u32]| -> i64 { a.iter().zip(qv).map(|(&e, &w)| i64::from(e) * w).sum() };
            let d = support.iter().map(|a| value(a.as_slice())).min().unwrap();
            let argmin: Vec<Vec<u32>> = want_vertices.iter().filter(|v| value(v) == d).cloned().collect();
            ensure!(
                qv.iter().any(|&w| w < 0) && argmin == face,
                "trial {trial}: normal {qv:?} does not certify face {face:?}"
            );
            got_inf.insert(face);
        }
        let want_inf = oracle_faces_at_infinity(&support, &want_vertices, 6);
        ensure!(
            want_inf.is_subset(&got_inf),
            "trial {trial}: boundary at infinity misses {:?} for support {support:?}",
            want_inf.difference(&got_inf).collect::<Vec<_>>()
        );
        total_faces += faces.len();
    }
    Ok(format!("100 random supports, {total_faces} faces matched"))
}

fn criterion_8() -> Check {
    let fixtures = [
        ("x1^2 + x2^2 - 1", 2, 6),
        ("(x1 - x2)^2", 2, 3),
        ("x1*x2 - 1", 2, 2),
        ("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2, 10),
        ("x1^2 + x2^2 + x3^2 - 1", 3, 10),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (text, n, lattice_count) in fixtures {
        let f = poly(text, n);
        let p = newton_polytope(&f).map_err(|e| e.to_string())?;
        let lattice = p.lattice_points().map_err(|e| e.to_string())?;
        ensure!(
            lattice.len() == lattice_count,
            "{text}: {} lattice points",
            lattice.len()
        );
        // independent membership check of every box point
        let top = f.support().flat_map(|a| a.as_slice().to_vec()).max().unwrap();
        let verts: Vec<Vec<Rational>> = p
            .vertices()
            .iter()
            .map(|v| v.as_slice().iter().map(|&e| r(i64::from(e))).collect())
            .collect();
        let mut count = 0;
        for code in 0..(top as usize + 1).pow(n as u32) {
            let mut c = code;
            let pt: Vec<Rational> = (0..n)
                .map(|_| {
                    let v = c % (top as usize + 1);
                    c /= top as usize + 1;
                    r(v as i64)
                })
                .collect();
            count += usize::from(in_hull(&pt, &verts));
        }
        ensure!(count == lattice_count, "{text}: oracle counts {count} lattice points");
        let (c1, c2) = comparability_constants(&p).map_err(|e| e.to_string())?;
        ensure!(
            c1 == q(1, lattice_count as i64) && c2 == r(1),
            "{text}: constants {c1}, {c2}"
        );
        let all: Vec<Vec<u32>> = lattice.iter().map(|a| a.as_slice().to_vec()).collect();
        let vs: Vec<Vec<u32>> = p.vertices().iter().map(|a| a.as_slice().to_vec()).collect();
        for _ in 0..200 {
            let x: Vec<Rational> = (0..n)
                .map(|_| q(rng.gen_range(-1000..=1000), rng.gen_range(1..=100)))
                .collect();
            let full = abs_sum(&all, &x);
            let tilde = abs_sum(&vs, &x);
            ensure!(
                &c1 * &full <= tilde && tilde <= full,
                "{text}: comparability fails at {x:?}"
            );
        }
    }
    Ok("5 fixtures x 200 points, zero failures".into())
}

fn criterion_9() -> Check {
    let f = poly("(x1 - x2)^2", 2);
    let p = newton_polytope(&f).map_err(|e| e.to_string())?;
    let faces = annotated_faces(&p).map_err(|e| e.to_string())?;
    let report = check_nondegeneracy(&f, &p, &faces, &Budget::default()).map_err(|e| e.to_string())?;
    for (face, v) in &report.faces {
        if face.dim() == 1 {
            ensure!(
                *v == CriticalVerdict::DegeneratePoint(vec![r(1), r(1)]),
                "edge verdict {v:?}"
            );
        } else {
            ensure!(!v.is_degenerate(), "vertex face flagged {v:?}");
        }
    }
    let f = poly("x1^2 + x2^2 - 1", 2);
    let p = newton_polytope(&f).map_err(|e| e.to_string())?;
    let faces = annotated_faces(&p).map_err(|e| e.to_string())?;
    let report = check_nondegeneracy(&f, &p, &faces, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(
        report.faces.len() == 3,
        "circle has {} faces at infinity",
        report.faces.len()
    );
    for (_, v) in &report.faces {
        ensure!(
            matches!(v, CriticalVerdict::NoCriticalZeroFound { .. }),
            "circle face verdict {v:?}"
        );
    }
    Ok("edge of the square degenerate at (1,1) only; circle faces have no critical zero".into())
}

fn criterion_10() -> Check {
    let h = poly("1 - x1^2", 1);
    let agg = semialgebraic_to_zero_set(&[], &[h]).map_err(|e| e.to_string())?;
    ensure!(agg == poly("(1 - x1^2 - x2^2)^2", 2), "aggregate is {agg}");
    let e = numeric_compactness_probe(&agg, &[100.0], &ProbeBudget::default(), 0);
    ensure!(!e.found_far_zeros(), "far zeros reported for the disc aggregate");

    let g = poly("x1 - x2", 2);
    let agg = semialgebraic_to_zero_set(&[g], &[]).map_err(|e| e.to_string())?;
    ensure!(agg == poly("(x1 - x2)^2", 2), "aggregate is {agg}");
    square_example(&agg).map_err(|e| format!("diagonal aggregate: {e}"))?;
    Ok("disc aggregate has no far zeros at radius 100; diagonal aggregate reproduces the square".into())
}

fn main() {
    let checks: [(&str, Criterion); 10] = [
        ("(x1-x2)^2: geometry, verdicts, witness and far zeros", criterion_1),
        ("x1^2+x2^2-1: compact and stably compact", criterion_2),
        ("x1*x2-1: refuted with an exact witness pair", criterion_3),
        ("monomial-curve leading term law", criterion_4),
        ("sandwich estimate", criterion_5),
        ("directed and random perturbations", criterion_6),
        ("geometry against brute-force oracle", criterion_7),
        ("vertex-sum comparability", criterion_8),
        ("non-degeneracy detection", criterion_9),
        ("semialgebraic aggregation", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} [{secs:.1}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} [{secs:.1}s] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
