//! Plain-text summaries.

use std::fmt::Write;

use newton_compact_core::criteria::{
    Analysis, NecessaryStatus, NotCompactWitness, ProbeEvidence, StabilityVerdict, StabilityWitness, SufficientStatus,
};
use newton_compact_core::newton::{Face, NewtonPolytope};
use newton_compact_core::polynomial::Polynomial;
use newton_compact_core::signcheck::CriticalVerdict;
use newton_compact_core::Rational;

fn point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn face(p: &NewtonPolytope, f: &Face) -> String {
    let verts: Vec<String> = p
        .vertices_of(f.vertex_mask())
        .iter()
        .map(|v| {
            let parts: Vec<String> = v.as_slice().iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    format!("conv{{{}}}", verts.join(", "))
}

pub fn polytope(p: &NewtonPolytope, faces: &[Face]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Newton polytope: dimension {}, {} vertices",
        p.dim(),
        p.vertices().len()
    );
    for f in faces {
        let tag = if f.at_infinity() {
            "  [Newton boundary at infinity]"
        } else {
            ""
        };
        let normal = f
            .witness_normal()
            .map(|q| format!("  q = {q:?}, d = {}", f.offset().unwrap_or(0)))
            .unwrap_or_default();
        let _ = writeln!(out, "  dim {} face {}{}{}", f.dim(), face(p, f), normal, tag);
    }
    out
}

/// Multi-line summary of an analysis.
pub fn analysis(f: &Polynomial, polytope: Option<&NewtonPolytope>, faces: &[Face], a: &Analysis) -> String {
    let mut out = String::new();
    let name = |i: usize| polytope.map(|p| face(p, &faces[i])).unwrap_or_default();
    let _ = writeln!(out, "f = {f}  (n = {})", a.nvars);
    let c = &a.compactness;
    if !c.face_signs.is_empty() {
        let _ = writeln!(out, "Newton boundary at infinity:");
        for s in &c.face_signs {
            let _ = writeln!(
                out,
                "  {}  f_face = {}  sign: {}",
                name(s.face),
                s.polynomial,
                s.verdict.kind.as_str()
            );
        }
    }
    let necessary = match &c.necessary_status {
        NecessaryStatus::ConsistentWithCompact => "consistent with compactness".to_string(),
        NecessaryStatus::Inconclusive => "inconclusive".to_string(),
        NecessaryStatus::ViolatedNotCompact(NotCompactWitness::VanishingSubspace { subspace, axis }) => {
            let js: Vec<String> = subspace.indices().map(|j| format!("x{}", j + 1)).collect();
            format!(
                "violated: f vanishes on the span of {}, so the x{} axis lies in the zero set",
                js.join(", "),
                axis + 1
            )
        }
        NecessaryStatus::ViolatedNotCompact(NotCompactWitness::OppositeFaceValues {
            negative_face,
            negative,
            positive_face,
            positive,
        }) => format!(
            "violated: face {} takes {} at {}, face {} takes {} at {}",
            name(*negative_face),
            negative.value,
            point(&negative.point),
            name(*positive_face),
            positive.value,
            point(&positive.point)
        ),
    };
    let _ = writeln!(out, "Necessary condition: {necessary}");
    let sufficient = match c.sufficient_status {
        SufficientStatus::CompactCertified(s) => format!("holds with sign {s:+}"),
        SufficientStatus::NotApplicable => "not applicable".to_string(),
        SufficientStatus::Inconclusive => "inconclusive".to_string(),
    };
    let _ = writeln!(out, "Sufficient condition: {sufficient}");
    let _ = writeln!(out, "Compactness: {}", c.overall.as_str());

    let s = &a.stability;
    let stability = match &s.verdict {
        StabilityVerdict::StablyCompactCertified(sign) => format!("StablyCompactCertified (sign {sign:+})"),
        StabilityVerdict::NotStablyCompact(StabilityWitness::Face { face, kind, witnesses }) => {
            let at = witnesses
                .first()
                .map(|w| format!(" at {}", point(&w.point)))
                .unwrap_or_default();
            format!("NotStablyCompact: face {} {}{}", name(*face), kind.as_str(), at)
        }
        StabilityVerdict::NotStablyCompact(StabilityWitness::VanishingSubspace { axis, .. }) => {
            format!("NotStablyCompact: f vanishes on the x{} axis", axis + 1)
        }
        v => v.name().to_string(),
    };
    let _ = writeln!(out, "Stability: {stability}");
    for (i, v) in &s.nondegeneracy {
        let desc = match v {
            CriticalVerdict::NoCriticalZeroFound { certified: true } => "non-degenerate".to_string(),
            CriticalVerdict::NoCriticalZeroFound { certified: false } => {
                "no critical zero found (non-degenerate, not certified)".to_string()
            }
            CriticalVerdict::DegeneratePoint(p) => format!("degenerate at {}", point(p)),
            CriticalVerdict::DegenerateIrrational { .. } => "degenerate at an irrational point".to_string(),
            CriticalVerdict::Unknown => "unknown".to_string(),
        };
        let _ = writeln!(out, "  {}: {desc}", name(*i));
    }
    if let Some(e) = &s.epsilon_estimate {
        let _ = writeln!(out, "Perturbation size estimate (heuristic): {}", e.value);
    }
    if let Some(p) = &c.probe_evidence {
        let desc = match p {
            ProbeEvidence::NoFarZeros { radii, .. } => format!("no far zeros at radii {radii:?}"),
            ProbeEvidence::FarZeroEvidence { points, .. } => {
                let first = &points[0];
                format!(
                    "{} approximate far zeros, e.g. {:?} at radius {}",
                    points.len(),
                    first.point,
                    first.radius
                )
            }
        };
        let _ = writeln!(out, "Numeric probe: {desc}");
    }
    for msg in &a.inconsistencies {
        let _ = writeln!(out, "INCONSISTENT: {msg}");
    }
    out
}
