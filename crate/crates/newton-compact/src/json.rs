//! JSON encodings of polynomials, polytopes, verdicts and reports.
//!
//! Exact quantities are strings (`"3"`, `"-2/7"`); probe output is floating
//! point and carries `"approximate": true`.

use newton_compact_core::criteria::{
    Analysis, AnalyzeOptions, ApproximatePoint, CompactnessReport, EpsilonEstimate, EventualSign, NecessaryStatus,
    NotCompactWitness, ProbeEvidence, SandwichEstimate, StabilityReport, StabilityVerdict, StabilityWitness,
    SufficientStatus,
};
use newton_compact_core::newton::{Face, NewtonPolytope};
use newton_compact_core::polynomial::{ExponentVector, Polynomial, SubspaceMask};
use newton_compact_core::signcheck::{Budget, Certificate, CriticalVerdict, LineReduction, SignVerdict, Witness};
use newton_compact_core::Rational;
use serde_json::{json, Value};

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

fn exponent(a: &ExponentVector) -> Value {
    json!(a.as_slice())
}

fn mask(m: SubspaceMask) -> Value {
    json!(m.indices().map(|j| j + 1).collect::<Vec<_>>())
}

pub fn polynomial(f: &Polynomial) -> Value {
    json!({
        "n": f.nvars(),
        "text": f.to_string(),
        "terms": f
            .terms()
            .rev()
            .map(|(a, c)| json!({ "alpha": exponent(a), "coeff": rational(c) }))
            .collect::<Vec<_>>(),
    })
}

pub fn face(p: &NewtonPolytope, f: &Face) -> Value {
    json!({
        "vertices": p.vertices_of(f.vertex_mask()).into_iter().map(exponent).collect::<Vec<_>>(),
        "dim": f.dim(),
        "q": f.witness_normal(),
        "d": f.offset(),
        "at_infinity": f.at_infinity(),
    })
}

/// Polytope dump: vertices, facets, affine hull and the annotated faces.
pub fn polytope(p: &NewtonPolytope, faces: &[Face]) -> Value {
    json!({
        "n": p.nvars(),
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(exponent).collect::<Vec<_>>(),
        "facets": p
            .facets()
            .iter()
            .map(|f| json!({ "normal": f.normal, "offset": f.offset }))
            .collect::<Vec<_>>(),
        "affine_hull": p
            .affine_hull()
            .iter()
            .map(|(a, b)| json!({ "normal": a, "offset": b }))
            .collect::<Vec<_>>(),
        "faces": faces.iter().map(|f| face(p, f)).collect::<Vec<_>>(),
    })
}

fn witness(w: &Witness) -> Value {
    json!({ "point": point(&w.point), "value": rational(&w.value) })
}

fn line_reduction(r: &LineReduction) -> Value {
    json!({
        "base": r.base,
        "direction": r.direction,
        "inverse": r.inverse,
        "univariate": r.univariate.iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::MonomialFace { sign } | Certificate::OrthantCoefficient { sign } => {
            json!({ "type": c.kind_name(), "sign": sign })
        }
        Certificate::UnivariateSturm {
            reduction,
            positive_roots,
            sign,
            exact_roots,
        } => json!({
            "type": c.kind_name(),
            "sign": sign,
            "positive_roots": positive_roots,
            "exact_roots": point(exact_roots),
            "reduction": line_reduction(reduction),
        }),
        Certificate::Orthants(parts) => json!({
            "type": c.kind_name(),
            "orthants": parts.iter().map(certificate).collect::<Vec<_>>(),
        }),
    }
}

fn budget(b: &Budget) -> Value {
    json!({
        "samples_per_orthant": b.samples_per_orthant,
        "critical_starts": b.critical_starts,
        "critical_iterations": b.critical_iterations,
    })
}

pub fn verdict(v: &SignVerdict, b: &Budget) -> Value {
    json!({
        "kind": v.kind.as_str(),
        "witnesses": v.witnesses.iter().map(witness).collect::<Vec<_>>(),
        "certificate": v.certificate.as_ref().map(certificate),
        "budget": budget(b),
        "samples": v.samples,
        "seed": v.seed,
        "exhausted": v.exhausted,
    })
}

pub fn critical(v: &CriticalVerdict) -> Value {
    match v {
        CriticalVerdict::NoCriticalZeroFound { certified } => json!({ "kind": v.name(), "certified": certified }),
        CriticalVerdict::DegeneratePoint(p) => json!({ "kind": v.name(), "point": point(p) }),
        CriticalVerdict::DegenerateIrrational {
            orthant,
            direction,
            lower,
            upper,
        } => json!({
            "kind": v.name(),
            "orthant": orthant,
            "direction": direction,
            "interval": [rational(lower), rational(upper)],
        }),
        CriticalVerdict::Unknown => json!({ "kind": v.name() }),
    }
}

fn approximate_point(p: &ApproximatePoint) -> Value {
    json!({ "radius": p.radius, "point": p.point, "value": p.value, "approximate": true })
}

pub fn probe(e: &ProbeEvidence) -> Value {
    match e {
        ProbeEvidence::NoFarZeros { radii, circles, seed } => json!({
            "kind": e.name(),
            "radii": radii,
            "circles": circles,
            "seed": seed,
            "approximate": true,
        }),
        ProbeEvidence::FarZeroEvidence { points, seed } => json!({
            "kind": e.name(),
            "points": points.iter().map(approximate_point).collect::<Vec<_>>(),
            "seed": seed,
            "approximate": true,
        }),
    }
}

fn eventual(e: &EventualSign) -> Value {
    match e {
        EventualSign::SignChange { positive, negative } => json!({
            "kind": e.name(),
            "positive": point(positive),
            "negative": point(negative),
        }),
        _ => json!({ "kind": e.name() }),
    }
}

fn not_compact_witness(w: &NotCompactWitness, faces: &[Value]) -> Value {
    match w {
        NotCompactWitness::VanishingSubspace { subspace, axis } => json!({
            "type": "VanishingSubspace",
            "subspace": mask(*subspace),
            "axis": axis + 1,
        }),
        NotCompactWitness::OppositeFaceValues {
            negative_face,
            negative,
            positive_face,
            positive,
        } => json!({
            "type": "OppositeFaceValues",
            "negative": { "face": faces[*negative_face], "witness": witness(negative) },
            "positive": { "face": faces[*positive_face], "witness": witness(positive) },
        }),
    }
}

fn necessary(s: &NecessaryStatus, faces: &[Value]) -> Value {
    match s {
        NecessaryStatus::ConsistentWithCompact => json!({ "status": "ConsistentWithCompact" }),
        NecessaryStatus::ViolatedNotCompact(w) => json!({
            "status": "ViolatedNotCompact",
            "witness": not_compact_witness(w, faces),
        }),
        NecessaryStatus::Inconclusive => json!({ "status": "Inconclusive" }),
    }
}

fn sufficient(s: &SufficientStatus) -> Value {
    match s {
        SufficientStatus::CompactCertified(sign) => json!({ "status": "CompactCertified", "sign": sign }),
        SufficientStatus::NotApplicable => json!({ "status": "NotApplicable" }),
        SufficientStatus::Inconclusive => json!({ "status": "Inconclusive" }),
    }
}

fn sandwich(s: &SandwichEstimate) -> Value {
    json!({
        "sign": s.sign,
        "radius": s.radius,
        "seed": s.seed,
        "requested": s.requested,
        "accepted": s.accepted,
        "c1_hat": rational(&s.c1_hat),
        "c2_hat": rational(&s.c2_hat),
        "argmin": point(&s.argmin),
        "violations": s
            .violations
            .iter()
            .take(16)
            .map(|v| json!({ "point": point(&v.point), "ratio": rational(&v.ratio) }))
            .collect::<Vec<_>>(),
        "violation_count": s.violations.len(),
    })
}

fn epsilon(e: &EpsilonEstimate) -> Value {
    json!({
        "value": rational(&e.value),
        "from_sandwich": rational(&e.from_sandwich),
        "min_vertex_coefficient": rational(&e.min_vertex_coefficient),
        "heuristic": e.heuristic,
    })
}

fn stability_verdict(v: &StabilityVerdict, faces: &[Value]) -> Value {
    match v {
        StabilityVerdict::StablyCompactCertified(sign) => json!({ "status": v.name(), "sign": sign }),
        StabilityVerdict::NotStablyCompact(StabilityWitness::VanishingSubspace { subspace, axis }) => json!({
            "status": v.name(),
            "witness": { "type": "VanishingSubspace", "subspace": mask(*subspace), "axis": axis + 1 },
        }),
        StabilityVerdict::NotStablyCompact(StabilityWitness::Face { face, kind, witnesses }) => json!({
            "status": v.name(),
            "witness": {
                "type": "Face",
                "face": faces[*face],
                "kind": kind.as_str(),
                "points": witnesses.iter().map(witness).collect::<Vec<_>>(),
            },
        }),
        _ => json!({ "status": v.name() }),
    }
}

/// Face JSON for every face of the polytope, indexed like `Geometry::faces`.
pub fn face_table(p: Option<&NewtonPolytope>, faces: &[Face]) -> Vec<Value> {
    match p {
        Some(p) => faces.iter().map(|f| face(p, f)).collect(),
        None => Vec::new(),
    }
}

pub fn compactness(r: &CompactnessReport, faces: &[Value], b: &Budget) -> Value {
    json!({
        "overall": r.overall.as_str(),
        "necessary": necessary(&r.necessary_status, faces),
        "sufficient": sufficient(&r.sufficient_status),
        "support_condition": r
            .condition_i
            .iter()
            .map(|(j, holds)| json!({ "subspace": mask(*j), "restriction_nonzero": holds }))
            .collect::<Vec<_>>(),
        "origin_value": rational(&r.empty_subspace_value),
        "faces_at_infinity": r
            .face_signs
            .iter()
            .map(|s| json!({
                "face": faces[s.face],
                "polynomial": polynomial(&s.polynomial),
                "verdict": verdict(&s.verdict, b),
            }))
            .collect::<Vec<_>>(),
        "probe": r.probe_evidence.as_ref().map(probe),
        "eventual_sign": r.eventual_sign.as_ref().map(eventual),
    })
}

pub fn stability(r: &StabilityReport, faces: &[Value]) -> Value {
    json!({
        "verdict": stability_verdict(&r.verdict, faces),
        "faces_nonvanishing": r
            .condition_ii
            .iter()
            .map(|(i, ok)| json!({ "face": faces[*i], "nonvanishing": ok }))
            .collect::<Vec<_>>(),
        "common_sign": r.common_sign,
        "nondegeneracy": r
            .nondegeneracy
            .iter()
            .map(|(i, v)| json!({ "face": faces[*i], "verdict": critical(v) }))
            .collect::<Vec<_>>(),
        "sandwich": r.sandwich.as_ref().map(sandwich),
        "epsilon": r.epsilon_estimate.as_ref().map(epsilon),
    })
}

pub fn seeds(o: &AnalyzeOptions) -> Value {
    json!({
        "seed": o.seed,
        "faces": o.face_budget().seed,
        "sandwich": o.sandwich_seed(),
        "probe": o.probe_seed(),
        "eventual_sign": o.eventual_seed(),
    })
}

/// The full versioned report.
pub fn report(
    input: Value,
    digest: Option<&str>,
    polytope: Option<&NewtonPolytope>,
    faces: &[Face],
    analysis: &Analysis,
    options: &AnalyzeOptions,
    timings: Option<Value>,
) -> Value {
    let table = face_table(polytope, faces);
    json!({
        "report_version": 1,
        "input": input,
        "geometry_digest": digest,
        "compactness": compactness(&analysis.compactness, &table, &options.face_budget()),
        "stability": stability(&analysis.stability, &table),
        "inconsistencies": analysis.inconsistencies,
        "seeds": seeds(options),
        "timings": timings,
    })
}
