//! Polynomial surfaces, the cuspidal-edge normal form, and the surface file format.
//!
//! A surface file is UTF-8 and line based; `#` starts a comment:
//!
//! ```text
//! X i j c                      # add c·u^i·v^j to the first component
//! Y i j c                      # ... second component
//! Z i j c                      # ... third component
//! C c1 c2 c3                   # translation vector for the dual surface
//! NF a20 a30 b20 b30 b12 b03   # normal-form shortcut (excludes X/Y/Z)
//! H1 i c | H2 i c | H3 i c | H4 i c   # add c·u^i to a tail series
//! H5 i j c                     # add c·u^i·v^j to h5(u, v)
//! DOMAIN umin umax vmin vmax
//! ```
//!
//! Coefficients are decimal literals or rationals `p/q`.

use serde::Serialize;
use thiserror::Error;

use crate::config::Tolerances;
use crate::poly::Poly2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("ParseError: line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ConstraintError: {0}")]
    Constraint(String),
    #[error("NotInNormalForm: component {component} has forbidden monomial u^{i}·v^{j} with coefficient {coeff}")]
    NotInNormalForm {
        component: char,
        i: u32,
        j: u32,
        coeff: f64,
    },
    #[error("NotAdapted: component {component} of f_v has monomial u^{i} (coefficient {coeff}) not divisible by v")]
    NotAdapted { component: char, i: u32, coeff: f64 },
}

pub const COMPONENT_NAMES: [char; 3] = ['X', 'Y', 'Z'];

/// Parameter-plane rectangle `[umin, umax] × [vmin, vmax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Self {
            umin: -0.4,
            umax: 0.4,
            vmin: -0.4,
            vmax: 0.4,
        }
    }
}

/// A polynomial map `(u, v) ↦ (X, Y, Z)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolySurface {
    pub components: [Poly2; 3],
    /// Translation `c` used by the dual construction.
    pub translation: Option<[f64; 3]>,
    pub domain: Option<Domain>,
}

impl PolySurface {
    pub fn new(components: [Poly2; 3]) -> Self {
        Self {
            components,
            translation: None,
            domain: None,
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> [f64; 3] {
        self.components.each_ref().map(|p| p.eval(u, v))
    }

    pub fn du(&self) -> [Poly2; 3] {
        self.components.each_ref().map(Poly2::du)
    }

    pub fn dv(&self) -> [Poly2; 3] {
        self.components.each_ref().map(Poly2::dv)
    }

    /// `ψ = f_v / v` as exact polynomials.
    pub fn psi(&self) -> Result<[Poly2; 3], SurfaceError> {
        let fv = self.dv();
        let mut out: [Poly2; 3] = Default::default();
        for (k, p) in fv.iter().enumerate() {
            out[k] = p
                .div_v()
                .map_err(|(i, _, coeff)| SurfaceError::NotAdapted {
                    component: COMPONENT_NAMES[k],
                    i,
                    coeff,
                })?;
        }
        Ok(out)
    }

    /// True when `f_v(u, 0) ≡ 0` holds exactly on the coefficients.
    pub fn is_adapted(&self) -> bool {
        self.psi().is_ok()
    }

    /// Constant term `f(0, 0)`.
    pub fn constant_term(&self) -> [f64; 3] {
        self.components.each_ref().map(|p| p.coeff(0, 0))
    }

    /// The surface with `c` added to its constant terms.
    pub fn translated(&self, c: [f64; 3]) -> Self {
        let mut out = self.clone();
        for (p, ck) in out.components.iter_mut().zip(c) {
            p.add_term(0, 0, ck);
        }
        out
    }

    /// Splits off the constant term: returns `(f − f(0), f(0))`.
    pub fn centered(&self) -> (Self, [f64; 3]) {
        let c = self.constant_term();
        (self.translated(c.map(|x| -x)), c)
    }

    pub fn max_degree(&self) -> u32 {
        self.components
            .iter()
            .map(Poly2::total_degree)
            .max()
            .unwrap_or(0)
    }
}

/// Coefficients of the normal form of a cuspidal edge.
///
/// The tail series `h1..h4` are polynomials in `u` stored as coefficient
/// vectors (`h[k]` multiplies `u^k`); `h5` is a polynomial in `(u, v)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct NormalFormCoeffs {
    pub a20: f64,
    pub a30: f64,
    pub b20: f64,
    pub b30: f64,
    pub b12: f64,
    pub b03: f64,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    pub h3: Vec<f64>,
    pub h4: Vec<f64>,
    #[serde(skip)]
    pub h5: Poly2,
}

fn series_at0(h: &[f64]) -> f64 {
    h.first().copied().unwrap_or(0.0)
}

fn add_series(h: &mut Vec<f64>, i: usize, c: f64) {
    if h.len() <= i {
        h.resize(i + 1, 0.0);
    }
    h[i] += c;
}

fn series_poly(h: &[f64]) -> Poly2 {
    Poly2::from_terms(h.iter().enumerate().map(|(k, &c)| (k as u32, 0, c)))
}

impl NormalFormCoeffs {
    /// The six leading coefficients with a zero tail.
    pub fn new(a20: f64, a30: f64, b20: f64, b30: f64, b12: f64, b03: f64) -> Self {
        Self {
            a20,
            a30,
            b20,
            b30,
            b12,
            b03,
            ..Default::default()
        }
    }

    pub fn leading(&self) -> [f64; 6] {
        [self.a20, self.a30, self.b20, self.b30, self.b12, self.b03]
    }

    pub fn h2_0(&self) -> f64 {
        series_at0(&self.h2)
    }
    pub fn h3_0(&self) -> f64 {
        series_at0(&self.h3)
    }
    pub fn h4_0(&self) -> f64 {
        series_at0(&self.h4)
    }
    pub fn h5_0(&self) -> f64 {
        self.h5.coeff(0, 0)
    }

    pub fn check(&self) -> Result<(), SurfaceError> {
        if self.b20.is_nan() || self.b20 < 0.0 {
            return Err(SurfaceError::Constraint(format!(
                "normal form requires b20 >= 0, got {}",
                self.b20
            )));
        }
        if self.b03 == 0.0 || !self.b03.is_finite() {
            return Err(SurfaceError::Constraint(format!(
                "normal form requires b03 != 0, got {}",
                self.b03
            )));
        }
        Ok(())
    }

    /// Edge inflectional curvature.
    pub fn edge_inflectional_curvature(&self) -> f64 {
        self.b30
    }
}

/// Expands the normal form into a polynomial surface with zero constant term.
pub fn from_normal_form(n: &NormalFormCoeffs) -> Result<PolySurface, SurfaceError> {
    n.check()?;
    let x = Poly2::monomial(1, 0, 1.0);
    let y = Poly2::from_terms([(2, 0, n.a20 / 2.0), (3, 0, n.a30 / 6.0), (0, 2, 0.5)])
        .add(&series_poly(&n.h1).shift_u(4));
    let z = Poly2::from_terms([
        (2, 0, n.b20 / 2.0),
        (3, 0, n.b30 / 6.0),
        (1, 2, n.b12 / 2.0),
        (0, 3, n.b03 / 6.0),
    ])
    .add(&series_poly(&n.h2).shift(4, 0))
    .add(&series_poly(&n.h3).shift(2, 2))
    .add(&series_poly(&n.h4).shift(1, 3))
    .add(&n.h5.shift(0, 4));
    Ok(PolySurface::new([x, y, z]))
}

fn nf_violation(component: usize, i: u32, j: u32, coeff: f64) -> SurfaceError {
    SurfaceError::NotInNormalForm {
        component: COMPONENT_NAMES[component],
        i,
        j,
        coeff,
    }
}

/// Reads the normal-form coefficients off a surface already in normal form.
///
/// No coordinate change is attempted; any monomial the normal form forbids
/// (beyond `tol.normal_form`) is reported.
pub fn extract_normal_form(
    p: &PolySurface,
    tol: &Tolerances,
) -> Result<NormalFormCoeffs, SurfaceError> {
    let eps = tol.normal_form;
    let mut n = NormalFormCoeffs::default();

    for (i, j, c) in p.components[0].terms() {
        let expect = if (i, j) == (1, 0) { 1.0 } else { 0.0 };
        if (c - expect).abs() > eps {
            return Err(nf_violation(0, i, j, c));
        }
    }
    if (p.components[0].coeff(1, 0) - 1.0).abs() > eps {
        return Err(nf_violation(0, 1, 0, p.components[0].coeff(1, 0)));
    }

    let mut v2 = 0.0;
    for (i, j, c) in p.components[1].terms() {
        match (i, j) {
            (2, 0) => n.a20 = 2.0 * c,
            (3, 0) => n.a30 = 6.0 * c,
            (0, 2) => v2 = c,
            (i, 0) if i >= 4 => add_series(&mut n.h1, (i - 4) as usize, c),
            _ if c.abs() > eps => return Err(nf_violation(1, i, j, c)),
            _ => {}
        }
    }
    if (v2 - 0.5).abs() > eps {
        return Err(nf_violation(1, 0, 2, v2));
    }

    for (i, j, c) in p.components[2].terms() {
        match (i, j) {
            (2, 0) => n.b20 = 2.0 * c,
            (3, 0) => n.b30 = 6.0 * c,
            (1, 2) => n.b12 = 2.0 * c,
            (0, 3) => n.b03 = 6.0 * c,
            (i, 0) if i >= 4 => add_series(&mut n.h2, (i - 4) as usize, c),
            (i, 2) if i >= 2 => add_series(&mut n.h3, (i - 2) as usize, c),
            (i, 3) if i >= 1 => add_series(&mut n.h4, (i - 1) as usize, c),
            (i, j) if j >= 4 => n.h5.add_term(i, j - 4, c),
            _ if c.abs() > eps => return Err(nf_violation(2, i, j, c)),
            _ => {}
        }
    }
    n.check()?;
    Ok(n)
}

/// Rectangular probe grid used by sampled checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeGrid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

impl Default for ProbeGrid {
    fn default() -> Self {
        Self {
            domain: Domain::default(),
            nu: 9,
            nv: 9,
        }
    }
}

impl ProbeGrid {
    pub fn points(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        let d = self.domain;
        let step = |a: f64, b: f64, n: usize, k: usize| {
            if n <= 1 {
                a
            } else {
                a + k as f64 * (b - a) / (n - 1) as f64
            }
        };
        (0..self.nv).flat_map(move |jv| {
            (0..self.nu).map(move |iu| {
                [
                    step(d.umin, d.umax, self.nu, iu),
                    step(d.vmin, d.vmax, self.nv, jv),
                ]
            })
        })
    }
}

/// Outcome of [`validate_adapted`]. The rank condition is sampled, not proven.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptedReport {
    /// `f_v(u, 0) ≡ 0` on the coefficients.
    pub null_on_axis: bool,
    /// First monomial of `f_v` with no `v` factor, as `(component, i, coeff)`.
    pub null_witness: Option<(char, u32, f64)>,
    /// `rank df = 2` at every sampled point off the `u`-axis.
    pub rank_sampled: bool,
    /// A sampled point where `‖f_u × f_v‖` fell below tolerance.
    pub rank_witness: Option<([f64; 2], f64)>,
    /// `f_u` and `ψ` independent at every sampled point on the `u`-axis.
    pub frame_on_axis: bool,
    pub samples: usize,
    pub method: &'static str,
}

impl AdaptedReport {
    pub fn passed(&self) -> bool {
        self.null_on_axis && self.rank_sampled && self.frame_on_axis
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Checks the adapted-coordinate conditions for `p`.
pub fn validate_adapted(p: &PolySurface, grid: &ProbeGrid, tol: &Tolerances) -> AdaptedReport {
    let psi = p.psi();
    let null_witness = match &psi {
        Ok(_) => None,
        Err(SurfaceError::NotAdapted {
            component,
            i,
            coeff,
        }) => Some((*component, *i, *coeff)),
        Err(_) => unreachable!(),
    };
    let fu = p.du();
    let fv = p.dv();
    let eval3 = |ps: &[Poly2; 3], q: [f64; 2]| ps.each_ref().map(|c| c.eval(q[0], q[1]));

    let mut rank_witness = None;
    let mut frame_on_axis = true;
    let mut samples = 0;
    for q in grid.points() {
        samples += 1;
        let a = eval3(&fu, q);
        if q[1].abs() > tol.on_axis {
            let n = norm(cross(a, eval3(&fv, q)));
            if n <= tol.frame && rank_witness.is_none() {
                rank_witness = Some((q, n));
            }
        }
        if let Ok(psi) = &psi {
            let n = norm(cross(a, eval3(psi, [q[0], 0.0])));
            let a0 = eval3(&fu, [q[0], 0.0]);
            let n0 = norm(cross(a0, eval3(psi, [q[0], 0.0])));
            if n.min(n0) <= tol.frame {
                frame_on_axis = false;
            }
        }
    }
    AdaptedReport {
        null_on_axis: null_witness.is_none(),
        null_witness,
        rank_sampled: rank_witness.is_none(),
        rank_witness,
        frame_on_axis: frame_on_axis && psi.is_ok(),
        samples,
        method: "sampled",
    }
}

fn parse_number(tok: &str) -> Result<f64, String> {
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| format!("invalid number {s:?}"))
            .and_then(|x| {
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(format!("non-finite number {s:?}"))
                }
            })
    };
    match tok.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse(p)?, parse(q)?);
            if q == 0.0 {
                Err(format!("zero denominator in {tok:?}"))
            } else {
                Ok(p / q)
            }
        }
        None => parse(tok),
    }
}

fn parse_exponent(tok: &str) -> Result<u32, String> {
    tok.parse::<u32>()
        .map_err(|_| format!("exponent must be a non-negative integer, got {tok:?}"))
}

/// Parses the line-based surface format described in the module docs.
pub fn parse_surface(text: &str) -> Result<PolySurface, SurfaceError> {
    let mut comps: [Poly2; 3] = Default::default();
    let mut saw_xyz = false;
    let mut nf: Option<(usize, NormalFormCoeffs)> = None;
    let mut tails: Vec<(usize, usize, u32, u32, f64)> = Vec::new();
    let mut translation = None;
    let mut domain = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| SurfaceError::Parse { line, message };
        let arity = |n: usize| {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                Err(err(format!(
                    "{} expects {n} arguments, got {}",
                    toks[0],
                    toks.len() - 1
                )))
            }
        };
        let num = |s: &str| parse_number(s).map_err(err);
        let exp = |s: &str| parse_exponent(s).map_err(err);
        match toks[0] {
            kw @ ("X" | "Y" | "Z") => {
                arity(3)?;
                let k = COMPONENT_NAMES
                    .iter()
                    .position(|&c| c.to_string() == kw)
                    .unwrap_or(0);
                comps[k].add_term(exp(toks[1])?, exp(toks[2])?, num(toks[3])?);
                saw_xyz = true;
            }
            "C" => {
                arity(3)?;
                translation = Some([num(toks[1])?, num(toks[2])?, num(toks[3])?]);
            }
            "NF" => {
                arity(6)?;
                if nf.is_some() {
                    return Err(err("duplicate NF line".into()));
                }
                let v: Vec<f64> = toks[1..].iter().map(|t| num(t)).collect::<Result<_, _>>()?;
                nf = Some((
                    line,
                    NormalFormCoeffs::new(v[0], v[1], v[2], v[3], v[4], v[5]),
                ));
            }
            kw @ ("H1" | "H2" | "H3" | "H4") => {
                arity(2)?;
                let k = kw[1..].parse::<usize>().unwrap_or(1);
                tails.push((line, k, exp(toks[1])?, 0, num(toks[2])?));
            }
            "H5" => {
                let (i, j, c) = match toks.len() {
                    3 => (exp(toks[1])?, 0, num(toks[2])?),
                    4 => (exp(toks[1])?, exp(toks[2])?, num(toks[3])?),
                    _ => return Err(err("H5 expects `i c` or `i j c`".into())),
                };
                tails.push((line, 5, i, j, c));
            }
            "DOMAIN" => {
                arity(4)?;
                let d = Domain {
                    umin: num(toks[1])?,
                    umax: num(toks[2])?,
                    vmin: num(toks[3])?,
                    vmax: num(toks[4])?,
                };
                if !(d.umin < d.umax && d.vmin < d.vmax) {
                    return Err(err("DOMAIN needs umin < umax and vmin < vmax".into()));
                }
                domain = Some(d);
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }

    let components = match nf {
        Some((line, mut n)) => {
            if saw_xyz {
                return Err(SurfaceError::Parse {
                    line,
                    message: "NF cannot be combined with X/Y/Z lines".into(),
                });
            }
            for (_, k, i, j, c) in tails {
                match k {
                    1 => add_series(&mut n.h1, i as usize, c),
                    2 => add_series(&mut n.h2, i as usize, c),
                    3 => add_series(&mut n.h3, i as usize, c),
                    4 => add_series(&mut n.h4, i as usize, c),
                    _ => n.h5.add_term(i, j, c),
                }
            }
            from_normal_form(&n)?.components
        }
        None => {
            if let Some(&(line, ..)) = tails.first() {
                return Err(SurfaceError::Parse {
                    line,
                    message: "tail lines H1..H5 require an NF line".into(),
                });
            }
            if !saw_xyz {
                return Err(SurfaceError::Parse {
                    line: text.lines().count(),
                    message: "no X/Y/Z or NF lines".into(),
                });
            }
            comps
        }
    };
    Ok(PolySurface {
        components,
        translation,
        domain,
    })
}

/// A cuspidal edge whose focal parallel surface has a swallowtail: `(u, u²/2 + u³/3 + v²/2, u² + v³/3)`.
pub fn example_parallel() -> PolySurface {
    PolySurface::new([
        Poly2::monomial(1, 0, 1.0),
        Poly2::from_terms([(2, 0, 0.5), (3, 0, 1.0 / 3.0), (0, 2, 0.5)]),
        Poly2::from_terms([(2, 0, 1.0), (0, 3, 1.0 / 3.0)]),
    ])
}

/// A cuspidal edge with vanishing bounded curvature at the origin: `(u, 2u³/3 + v²/2, 1 + u³/3 + uv² + v³/6)`.
pub fn example_dual() -> PolySurface {
    PolySurface::new([
        Poly2::monomial(1, 0, 1.0),
        Poly2::from_terms([(3, 0, 2.0 / 3.0), (0, 2, 0.5)]),
        Poly2::from_terms([
            (0, 0, 1.0),
            (3, 0, 1.0 / 3.0),
            (1, 2, 1.0),
            (0, 3, 1.0 / 6.0),
        ]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_rejected() {
        assert!(matches!(
            parse_surface("# nothing\n"),
            Err(SurfaceError::Parse { .. })
        ));
        assert!(matches!(parse_surface(""), Err(SurfaceError::Parse { .. })));
    }

    const EX31: &str = "\
# f(u,v) = (u, u^2/2 + u^3/3 + v^2/2, u^2 + v^3/3)
X 1 0 1
Y 2 0 1/2
Y 3 0 1/3
Y 0 2 0.5
Z 2 0 1
Z 0 3 1/3
";

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn parses_example_parallel() {
        assert_eq!(parse_surface(EX31).unwrap(), example_parallel());
    }

    #[test]
    fn duplicate_monomials_sum() {
        let s = parse_surface("X 1 0 1\nX 1 0 1\n").unwrap();
        assert_eq!(s.components[0].coeff(1, 0), 2.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_surface("X 1 0 1\nW 1 2 3\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { line: 2, .. }), "{e}");
        let e = parse_surface("X 1 0\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { line: 1, .. }));
        let e = parse_surface("X -1 0 1\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { line: 1, .. }));
        let e = parse_surface("Z 0 3 1/0\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { line: 1, .. }));
        let e = parse_surface("NF 1 2 2 0 0 2\nX 1 0 1\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { .. }));
        let e = parse_surface("H2 0 1\n").unwrap_err();
        assert!(matches!(e, SurfaceError::Parse { line: 1, .. }));
    }

    #[test]
    fn nf_constraints_are_enforced() {
        assert!(matches!(
            parse_surface("NF 0 0 -1 0 0 1\n"),
            Err(SurfaceError::Constraint(_))
        ));
        assert!(matches!(
            parse_surface("NF 0 0 1 0 0 0\n"),
            Err(SurfaceError::Constraint(_))
        ));
    }

    #[test]
    fn nf_line_with_tails_and_translation() {
        let s =
            parse_surface("NF 0 4 0 2 2 1\nC 0 0 1\nH2 0 0.5\nH5 1 1 2\nDOMAIN -1 1 -0.5 0.5\n")
                .unwrap();
        assert_eq!(s.translation, Some([0.0, 0.0, 1.0]));
        assert_eq!(s.components[2].coeff(4, 0), 0.5);
        assert_eq!(s.components[2].coeff(1, 5), 2.0);
        assert_eq!(s.domain.unwrap().vmax, 0.5);
    }

    #[test]
    fn standard_cuspidal_edge_from_normal_form() {
        let s = from_normal_form(&NormalFormCoeffs::new(0.0, 0.0, 0.0, 0.0, 0.0, 6.0)).unwrap();
        assert_eq!(
            s,
            PolySurface::new([
                Poly2::monomial(1, 0, 1.0),
                Poly2::monomial(0, 2, 0.5),
                Poly2::monomial(0, 3, 1.0),
            ])
        );
    }

    #[test]
    fn examples_from_normal_form() {
        let s = from_normal_form(&NormalFormCoeffs::new(1.0, 2.0, 2.0, 0.0, 0.0, 2.0)).unwrap();
        assert_eq!(s, example_parallel());
        let s = from_normal_form(&NormalFormCoeffs::new(0.0, 4.0, 0.0, 2.0, 2.0, 1.0))
            .unwrap()
            .translated([0.0, 0.0, 1.0]);
        for (a, b) in s.components.iter().zip(example_dual().components.iter()) {
            for (i, j, c) in a.terms() {
                assert!((c - b.coeff(i, j)).abs() < 1e-15);
            }
            assert_eq!(a.terms().count(), b.terms().count());
        }
    }

    #[test]
    fn extract_examples() {
        let n = extract_normal_form(&example_parallel(), &tol()).unwrap();
        assert_eq!(n.leading(), [1.0, 2.0, 2.0, 0.0, 0.0, 2.0]);
        let (centered, c) = example_dual().centered();
        assert_eq!(c, [0.0, 0.0, 1.0]);
        let n = extract_normal_form(&centered, &tol()).unwrap();
        let expect = [0.0, 4.0, 0.0, 2.0, 2.0, 1.0];
        for (a, b) in n.leading().iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn extract_rejects_uv_term() {
        let s = PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(0, 2, 0.5),
            Poly2::from_terms([(0, 3, 1.0 / 6.0), (1, 1, 1.0)]),
        ]);
        assert_eq!(
            extract_normal_form(&s, &tol()),
            Err(SurfaceError::NotInNormalForm {
                component: 'Z',
                i: 1,
                j: 1,
                coeff: 1.0
            })
        );
    }

    #[test]
    fn extract_rejects_constant_term() {
        assert!(matches!(
            extract_normal_form(&example_dual(), &tol()),
            Err(SurfaceError::NotInNormalForm {
                component: 'Z',
                i: 0,
                j: 0,
                ..
            })
        ));
    }

    #[test]
    fn normal_form_round_trip_with_tail() {
        let mut n = NormalFormCoeffs::new(0.3, -1.2, 0.7, 1.1, -0.4, 1.5);
        n.h1 = vec![0.2, -0.1];
        n.h2 = vec![1.0, 0.0, 0.5];
        n.h3 = vec![-0.3];
        n.h4 = vec![0.0, 0.25];
        n.h5 = Poly2::from_terms([(0, 0, 0.9), (1, 1, -0.6)]);
        let back = extract_normal_form(&from_normal_form(&n).unwrap(), &tol()).unwrap();
        assert_eq!(back.leading(), n.leading());
        for (a, b) in [
            (&back.h1, &n.h1),
            (&back.h2, &n.h2),
            (&back.h3, &n.h3),
            (&back.h4, &n.h4),
        ] {
            for k in 0..a.len().max(b.len()) {
                let x = a.get(k).copied().unwrap_or(0.0);
                let y = b.get(k).copied().unwrap_or(0.0);
                assert!((x - y).abs() <= 1e-12);
            }
        }
        assert_eq!(back.h5, n.h5);
    }

    #[test]
    fn validate_examples() {
        let r = validate_adapted(&example_parallel(), &ProbeGrid::default(), &tol());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.method, "sampled");

        let flipped = PolySurface::new([
            Poly2::monomial(0, 1, 1.0),
            Poly2::monomial(1, 0, 1.0),
            Poly2::zero(),
        ]);
        let r = validate_adapted(&flipped, &ProbeGrid::default(), &tol());
        assert!(!r.passed());
        assert_eq!(r.null_witness, Some(('X', 0, 1.0)));

        let s = PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(0, 2, 1.0),
            Poly2::monomial(0, 4, 1.0),
        ]);
        assert!(validate_adapted(&s, &ProbeGrid::default(), &tol()).passed());
    }

    #[test]
    fn validate_flags_rank_drop() {
        // (u, v^2, v^2·u^2): f_u × f_v vanishes only on v = 0, but (u, v^2 u, 0) degenerates at u = 0.
        let s = PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(1, 2, 1.0),
            Poly2::monomial(3, 2, 1.0),
        ]);
        let r = validate_adapted(&s, &ProbeGrid::default(), &tol());
        assert!(r.null_on_axis);
        assert!(!r.rank_sampled);
    }
}
