//! Coefficient sweeps over normal forms, tabulated as CSV.
//!
//! A sweep spec is a comma-separated list of `name=value` or
//! `name=min:max:steps`, e.g. `b30=-1:1:21,b12=-1:1:21,b20=1`. Unnamed
//! coefficients are 0, except `b03 = 1`.

use std::io;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::config::Tolerances;
use crate::contact::ContactKind;
use crate::report::{classify_surface, Section};
use crate::ridge::ridge_closed_form;
use crate::surface::{from_normal_form, NormalFormCoeffs};

pub const COEFF_NAMES: [&str; 6] = ["a20", "a30", "b20", "b30", "b12", "b03"];

/// Translation vector used for the dual surface in every row.
pub const SWEEP_DUAL_C: [f64; 3] = [0.0, 0.0, 1.0];

#[derive(Debug, Clone, PartialEq, Error)]
#[error("bad sweep spec: {0}")]
pub struct SweepSpecError(pub String);

/// Values taken by one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn fixed(x: f64) -> Self {
        Self {
            min: x,
            max: x,
            steps: 1,
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * k as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.value(k))
    }
}

/// One range per coefficient, in [`COEFF_NAMES`] order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub ranges: [Range; 6],
}

fn number(s: &str) -> Result<f64, SweepSpecError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| SweepSpecError(format!("invalid number {s:?}")))
}

impl FromStr for SweepSpec {
    type Err = SweepSpecError;

    fn from_str(s: &str) -> Result<Self, SweepSpecError> {
        let mut ranges = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0].map(Range::fixed);
        let mut seen = [false; 6];
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, val) = item
                .split_once('=')
                .ok_or_else(|| SweepSpecError(format!("expected name=value, got {item:?}")))?;
            let k = COEFF_NAMES
                .iter()
                .position(|&n| n == name.trim())
                .ok_or_else(|| SweepSpecError(format!("unknown coefficient {name:?}")))?;
            if seen[k] {
                return Err(SweepSpecError(format!("{name} given twice")));
            }
            seen[k] = true;
            let parts: Vec<&str> = val.split(':').collect();
            ranges[k] = match parts.as_slice() {
                [x] => Range::fixed(number(x)?),
                [a, b, n] => {
                    let (min, max) = (number(a)?, number(b)?);
                    let steps: usize = n
                        .trim()
                        .parse()
                        .map_err(|_| SweepSpecError(format!("invalid step count {n:?}")))?;
                    if min > max {
                        return Err(SweepSpecError(format!(
                            "empty range for {name}: {min} > {max}"
                        )));
                    }
                    if steps == 0 || (steps == 1 && min != max) {
                        return Err(SweepSpecError(format!(
                            "{name}: a range needs at least 2 steps"
                        )));
                    }
                    Range { min, max, steps }
                }
                _ => {
                    return Err(SweepSpecError(format!(
                        "expected value or min:max:steps for {name}"
                    )))
                }
            };
        }
        if ranges[5].values().any(|x| x == 0.0) {
            return Err(SweepSpecError("b03 must be non-zero".into()));
        }
        Ok(Self { ranges })
    }
}

impl SweepSpec {
    pub fn len(&self) -> usize {
        self.ranges.iter().map(|r| r.steps).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All coefficient tuples, the first coefficient varying slowest.
    pub fn points(&self) -> Vec<[f64; 6]> {
        let mut out = Vec::with_capacity(self.len());
        let mut idx = [0usize; 6];
        loop {
            out.push([0, 1, 2, 3, 4, 5].map(|k| self.ranges[k].value(idx[k])));
            let mut k = 6;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.ranges[k].steps {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

/// One CSV row. Verdict columns hold the error name when not computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a20: f64,
    pub a30: f64,
    pub b20: f64,
    pub b30: f64,
    pub b12: f64,
    pub b03: f64,
    pub c1: f64,
    pub c2: f64,
    pub c2_exact: f64,
    /// `phi` when `b20 ≠ 0`, `h` otherwise.
    pub delta_kind: String,
    pub delta: Option<f64>,
    pub d4: String,
    pub ridge: String,
    pub t0: Option<f64>,
    pub parallel: String,
    pub dual: String,
}

fn status<T>(s: &Section<T>, f: impl Fn(&T) -> String) -> String {
    match s {
        Section::Ok { value } => f(value),
        Section::NotComputed { error, .. } => format!("n/a:{error}"),
    }
}

pub fn sweep_row(x: [f64; 6], tol: &Tolerances) -> SweepRow {
    let n = NormalFormCoeffs::new(x[0], x[1], x[2], x[3], x[4], x[5]);
    let cf = ridge_closed_form(&n);
    let mut row = SweepRow {
        a20: x[0],
        a30: x[1],
        b20: x[2],
        b30: x[3],
        b12: x[4],
        b03: x[5],
        c1: cf.c1,
        c2: cf.c2,
        c2_exact: cf.c2_exact,
        delta_kind: if x[2].abs() <= tol.on_axis {
            "h"
        } else {
            "phi"
        }
        .into(),
        delta: None,
        d4: String::new(),
        ridge: String::new(),
        t0: None,
        parallel: String::new(),
        dual: String::new(),
    };
    let report = from_normal_form(&n).map_err(Into::into).and_then(|mut p| {
        p.translation = Some(SWEEP_DUAL_C);
        classify_surface(&p, tol)
    });
    match report {
        Ok(r) => {
            if let Some(c) = r.contact.ok() {
                row.delta = Some(c.delta);
                row.delta_kind = match c.kind {
                    ContactKind::DistanceSquared => "phi",
                    ContactKind::Height => "h",
                }
                .into();
            }
            row.d4 = status(&r.contact, |c| format!("{:?}", c.d4));
            row.ridge = format!("{:?}", r.ridge.order);
            row.t0 = r.parallel.ok().map(|p| p.t0);
            row.parallel = status(&r.parallel, |p| p.verdict.to_string());
            row.dual = status(&r.dual, |d| d.singularity.verdict.to_string());
        }
        Err(e) => {
            let s = format!("n/a:{}", e.name());
            row.d4 = s.clone();
            row.ridge = s.clone();
            row.parallel = s.clone();
            row.dual = s;
        }
    }
    row
}

pub fn run_sweep(spec: &SweepSpec, tol: &Tolerances) -> Vec<SweepRow> {
    spec.points()
        .into_iter()
        .map(|x| sweep_row(x, tol))
        .collect()
}

pub fn write_csv<W: io::Write>(rows: &[SweepRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        let s: SweepSpec = "b30=-1:1:21, b12=-1:1:21, b20=1".parse().unwrap();
        assert_eq!(s.len(), 441);
        assert_eq!(s.ranges[5], Range::fixed(1.0));
        assert_eq!(s.ranges[3].value(20), 1.0);
        for bad in [
            "b30=1:-1:3",
            "b30=0:1:0",
            "q=1",
            "b03=0",
            "b03=-1:1:3",
            "b30",
            "b30=1:2",
            "b30=x",
        ] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn points_are_lexicographic() {
        let s: SweepSpec = "a20=0:1:2,b12=0:1:3".parse().unwrap();
        let p = s.points();
        assert_eq!(p.len(), 6);
        assert_eq!((p[0][0], p[0][4]), (0.0, 0.0));
        assert_eq!((p[1][0], p[1][4]), (0.0, 0.5));
        assert_eq!((p[3][0], p[3][4]), (1.0, 0.0));
    }

    #[test]
    fn example_point_row() {
        let row = sweep_row([1.0, 2.0, 2.0, 0.0, 0.0, 2.0], &Tolerances::default());
        assert_eq!(row.c1, 0.0);
        assert_eq!(row.c2, -352.0);
        assert_eq!(row.parallel, "Swallowtail");
        assert_eq!(row.t0, Some(0.5));
        assert_eq!(row.ridge, "First");
    }

    #[test]
    fn csv_has_fixed_header() {
        let row = sweep_row([0.0, 0.0, 1.0, 0.5, 0.5, 1.0], &Tolerances::default());
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "a20,a30,b20,b30,b12,b03,c1,c2,c2_exact,delta_kind,delta,d4,ridge,t0,parallel,dual"
        );
        assert_eq!(text.lines().count(), 2);
    }
}
