//! The aggregated classification report for one surface at the origin.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::contact::{classify_umbilic, height_jet_and_delta, ContactKind, ContactReport};
use crate::curvature::{principal_curvature_bounded, principal_direction};
use crate::dual::{dual_nullfield_witness, dual_singularity, make_dual, DualVerdict};
use crate::error::{GeomError, Result};
use crate::frames::{build_frame, FrameValues};
use crate::parallel::{predict_swallowtail, swallowtail_conditions, SwallowtailConditions};
use crate::ridge::{ridge_from_parts, RidgeReport};
use crate::singularity::Verdict;
use crate::surface::{
    extract_normal_form, validate_adapted, AdaptedReport, NormalFormCoeffs, PolySurface, ProbeGrid,
};

/// A report section that may have failed on its own preconditions.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Section<T> {
    Ok { value: T },
    NotComputed { error: String, message: String },
}

impl<T> Section<T> {
    fn from(r: Result<T>) -> Self {
        match r {
            Ok(value) => Section::Ok { value },
            Err(e) => Section::NotComputed {
                error: e.name().to_string(),
                message: e.to_string(),
            },
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok { value } => Some(value),
            Section::NotComputed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParallelSummary {
    pub t0: f64,
    pub verdict: Verdict,
    pub predicted: Verdict,
    pub eta_lambda_hat: f64,
    pub eta_eta_lambda_hat: Option<f64>,
    /// The normal-form swallowtail conditions, when `f` is in normal form.
    pub conditions: Option<SwallowtailConditions>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualSummary {
    pub c: [f64; 3],
    pub notice: Option<String>,
    pub singularity: DualVerdict,
    /// `‖df*(η*)‖` at the origin.
    pub null_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub adapted: AdaptedReport,
    pub normal_form: Option<NormalFormCoeffs>,
    /// Applied before reading off the normal form.
    pub centred_by: [f64; 3],
    pub frame: FrameValues,
    pub kappa2: f64,
    pub direction: [f64; 2],
    pub ridge: RidgeReport,
    pub parallel: Section<ParallelSummary>,
    pub contact: Section<ContactReport>,
    pub dual: Section<DualSummary>,
}

/// Runs every analysis at the origin.
///
/// Fails only when the surface is not adapted or the origin frame cannot be
/// built; later sections record their own failures.
pub fn classify_surface(p: &PolySurface, tol: &Tolerances) -> Result<ClassifyReport> {
    let adapted = validate_adapted(
        p,
        &ProbeGrid {
            domain: p.domain.unwrap_or_default(),
            ..ProbeGrid::default()
        },
        tol,
    );
    p.psi()?;
    if !adapted.passed() {
        return Err(GeomError::DegenerateFrame {
            point: adapted.rank_witness.map(|w| w.0).unwrap_or([0.0, 0.0]),
            detail: "adapted-coordinate check failed".into(),
        });
    }
    let o = [0.0, 0.0];
    let (centred, centred_by) = p.centered();
    let normal_form = extract_normal_form(&centred, tol).ok();
    let fr = build_frame(p, o, DEFAULT_ORDER, tol)?;
    let pd = principal_curvature_bounded(&fr, tol)?;
    let dir = principal_direction(&fr, &pd, tol)?;
    let mut ridge = ridge_from_parts(&fr, &pd, &dir, tol);
    ridge.closed_form = normal_form.as_ref().map(crate::ridge::ridge_closed_form);

    let parallel = Section::from(predict_swallowtail(p, o, tol).and_then(|s| {
        let conditions = match &normal_form {
            Some(n) => Some(swallowtail_conditions(n, tol)?),
            None => None,
        };
        Ok(ParallelSummary {
            t0: s.t0,
            verdict: s.verdict(),
            predicted: s.predicted,
            eta_lambda_hat: s.eta_lambda_hat,
            eta_eta_lambda_hat: s.eta_eta_lambda_hat,
            conditions,
        })
    }));

    let contact = Section::from(
        extract_normal_form(&centred, tol)
            .map_err(GeomError::from)
            .and_then(|n| {
                if n.b20.abs() <= tol.on_axis {
                    height_jet_and_delta(&n, tol).map(|(_, r)| r)
                } else {
                    classify_umbilic(&n, tol)
                }
            }),
    );

    let dual = Section::from(make_dual(p, None, tol).and_then(|d| {
        let singularity = dual_singularity(&d, o, tol)?;
        let w = dual_nullfield_witness(&d, o, tol)?;
        Ok(DualSummary {
            c: d.c,
            notice: d.notice.clone(),
            singularity,
            null_residual: w.residual,
        })
    }));

    Ok(ClassifyReport {
        adapted,
        normal_form,
        centred_by,
        frame: fr.values(),
        kappa2: pd.kappa_value(),
        direction: dir.value(),
        ridge,
        parallel,
        contact,
        dual,
    })
}

/// Formats with up to 12 significant digits, dropping trailing zeros.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", 11, x);
    let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
    let e: i32 = e.parse().unwrap_or(0);
    if (-5..12).contains(&e) {
        let digits = (11 - e).max(0) as usize;
        let s = format!("{x:.digits$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            &s
        };
        if s == "-0" {
            "0".into()
        } else {
            s.to_string()
        }
    } else {
        let m = if m.contains('.') {
            m.trim_end_matches('0').trim_end_matches('.')
        } else {
            m
        };
        format!("{m}e{e}")
    }
}

/// `message` already starts with the error name.
fn skipped(s: &mut String, what: &str, message: &str) {
    let _ = writeln!(s, "{what}: not computed ({message})");
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let a = &self.adapted;
        let _ = writeln!(
            s,
            "adapted: {} ({} samples, {})",
            if a.passed() { "ok" } else { "failed" },
            a.samples,
            a.method
        );
        match &self.normal_form {
            Some(n) => {
                let _ = writeln!(
                    s,
                    "normal form: a20={} a30={} b20={} b30={} b12={} b03={}",
                    num(n.a20),
                    num(n.a30),
                    num(n.b20),
                    num(n.b30),
                    num(n.b12),
                    num(n.b03)
                );
            }
            None => {
                let _ = writeln!(s, "normal form: no");
            }
        }
        if self.centred_by != [0.0; 3] {
            let c = self.centred_by;
            let _ = writeln!(
                s,
                "constant term: ({}, {}, {})",
                num(c[0]),
                num(c[1]),
                num(c[2])
            );
        }
        let f = &self.frame;
        let _ = writeln!(
            s,
            "frame(0): E={} F={} G={} L={} M={} N={}",
            num(f.e),
            num(f.f),
            num(f.g),
            num(f.l),
            num(f.m),
            num(f.n)
        );
        let _ = writeln!(
            s,
            "nu(0): ({}, {}, {})",
            num(f.nu[0]),
            num(f.nu[1]),
            num(f.nu[2])
        );
        let _ = writeln!(s, "kappa2(0): {}", num(self.kappa2));
        let _ = writeln!(
            s,
            "direction(0): ({}, {})",
            num(self.direction[0]),
            num(self.direction[1])
        );
        let r = &self.ridge;
        let _ = writeln!(s, "vhat kappa2(0): {}", num(r.vk1));
        if let Some(v) = r.vk2 {
            let _ = writeln!(s, "vhat^2 kappa2(0): {}", num(v));
        }
        let _ = writeln!(s, "ridge: {:?}", r.order);
        if let Some(c) = &r.closed_form {
            let _ = writeln!(s, "C1: {}", num(c.c1));
            let _ = writeln!(s, "C2: {} (exact {})", num(c.c2), num(c.c2_exact));
        }
        match &self.parallel {
            Section::Ok { value: p } => {
                let _ = writeln!(s, "t0: {}", num(p.t0));
                let _ = writeln!(s, "verdict: {} (parallel, t0={})", p.verdict, num(p.t0));
                let _ = writeln!(s, "predicted: {}", p.predicted);
                if let Some(c) = &p.conditions {
                    let _ = writeln!(
                        s,
                        "swallowtail conditions: {}",
                        if c.holds { "hold" } else { "fail" }
                    );
                }
            }
            Section::NotComputed { message, .. } => skipped(&mut s, "verdict", message),
        }
        match &self.contact {
            Section::Ok { value: c } => {
                let name = match c.kind {
                    ContactKind::DistanceSquared => "Delta_phi",
                    ContactKind::Height => "Delta_h",
                };
                let _ = writeln!(s, "{name}: {}", num(c.delta));
                let _ = writeln!(s, "D4: {}", c.d4);
            }
            Section::NotComputed { message, .. } => skipped(&mut s, "contact", message),
        }
        match &self.dual {
            Section::Ok { value: d } => {
                if let Some(n) = &d.notice {
                    let _ = writeln!(s, "note: {n}");
                }
                let v = &d.singularity;
                let _ = writeln!(s, "dual: {}", v.verdict);
                let _ = writeln!(s, "dual witness: {}", num(v.witness));
            }
            Section::NotComputed { message, .. } => skipped(&mut s, "dual", message),
        }
        out.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{example_dual, example_parallel};

    #[test]
    fn number_format() {
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(68.0), "68");
        assert_eq!(num(-352.0), "-352");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(2.0000000000001), "2");
        assert_eq!(num(-1e-17), "-1e-17");
        assert_eq!(num(1.5e20), "1.5e20");
    }

    #[test]
    fn parallel_example_report() {
        let r = classify_surface(&example_parallel(), &Tolerances::default()).unwrap();
        let text = r.to_string();
        assert!(
            text.contains("verdict: Swallowtail (parallel, t0=0.5)"),
            "{text}"
        );
        assert!(text.contains("C2: -352 (exact -480)"), "{text}");
        assert!(r.dual.ok().is_none());
    }

    #[test]
    fn dual_example_report() {
        let r = classify_surface(&example_dual(), &Tolerances::default()).unwrap();
        let text = r.to_string();
        assert!(text.contains("dual: CuspidalEdge"), "{text}");
        assert!(text.contains("Delta_h: 68"), "{text}");
        assert!(text.contains("D4: D4, type u^3+uv^2"), "{text}");
        assert!(
            text.contains("verdict: not computed (ZeroCurvature"),
            "{text}"
        );
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["dual"]["status"], "ok");
        assert_eq!(json["parallel"]["status"], "not_computed");
    }
}
