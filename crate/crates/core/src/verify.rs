//! Seeded cross-check battery over random normal forms.
//!
//! Each property runs a fixed number of trials on its own ChaCha stream, so
//! the report depends only on the seed and the build.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::contact::{classify_umbilic, delta_phi, height_jet, height_jet_and_delta, D4Type};
use crate::curvature::{
    gauss_mean, principal_curvature_bounded, principal_curvature_on_branch, principal_direction,
    Branch,
};
use crate::dual::{dual_singular_set, dual_singularity, make_dual};
use crate::frames::{build_frame, psi_ccr, weingarten};
use crate::grid::SampleGrid;
use crate::jets::{Jet2, JetVec3};
use crate::parallel::{
    factorisation_check, make_parallel_t0, null_residual, parallel_singular_set,
    predict_swallowtail, swallowtail_conditions,
};
use crate::poly::Poly2;
use crate::ridge::{ridge_analyze, ridge_closed_form};
use crate::singularity::{classify, Verdict};
use crate::surface::{
    extract_normal_form, from_normal_form, validate_adapted, Domain, NormalFormCoeffs, PolySurface,
    ProbeGrid,
};

pub const DEFAULT_SEED: u64 = 20240601;

/// Set to `1` to corrupt one closed form, so the battery must fail.
pub const FAULT_ENV: &str = "FRONTLAB_INJECT_FAULT";

pub fn fault_from_env() -> bool {
    std::env::var(FAULT_ENV)
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum B20 {
    Free,
    Zero,
    AtLeast(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawOptions {
    pub b20: B20,
    /// Force `C1 = 0` through `b30 = −4b12³/b03²`.
    pub ridge: bool,
    pub tails: bool,
}

impl Default for DrawOptions {
    fn default() -> Self {
        Self {
            b20: B20::Free,
            ridge: false,
            tails: true,
        }
    }
}

fn uniform(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-2.0..=2.0)
}

/// A random normal form: leading coefficients uniform in `[−2, 2]`,
/// `b20 ≥ 0`, `|b03| ≥ 0.2`, tails of total degree ≤ 5. Unforced draws keep
/// `|C1| > 1e-3`.
pub fn draw_normal_form(rng: &mut impl Rng, opts: &DrawOptions) -> NormalFormCoeffs {
    loop {
        let mut n = NormalFormCoeffs::new(
            uniform(rng),
            uniform(rng),
            uniform(rng).abs(),
            uniform(rng),
            uniform(rng),
            uniform(rng),
        );
        if n.b03.abs() < 0.2 {
            continue;
        }
        match opts.b20 {
            B20::Free => {}
            B20::Zero => n.b20 = 0.0,
            B20::AtLeast(m) if n.b20 < m => continue,
            B20::AtLeast(_) => {}
        }
        if opts.ridge {
            n.b30 = -4.0 * n.b12.powi(3) / (n.b03 * n.b03);
        } else if (4.0 * n.b12.powi(3) + n.b30 * n.b03 * n.b03).abs() <= 1e-3 {
            continue;
        }
        if opts.tails {
            let mut tail = || (0..2).map(|_| 0.5 * uniform(rng)).collect::<Vec<_>>();
            n.h1 = tail();
            n.h2 = tail();
            n.h3 = tail();
            n.h4 = tail();
            n.h5 = Poly2::from_terms([
                (0, 0, 0.5 * uniform(rng)),
                (1, 0, 0.5 * uniform(rng)),
                (0, 1, 0.5 * uniform(rng)),
            ]);
        }
        return n;
    }
}

/// A random point with `|u|, |v| ≤ r`.
pub fn random_point(rng: &mut impl Rng, r: f64) -> [f64; 2] {
    [rng.gen_range(-r..=r), rng.gen_range(-r..=r)]
}

/// A random polynomial of total degree ≤ `deg` with coefficients in `[−1, 1]`.
pub fn random_poly(rng: &mut impl Rng, deg: u32) -> Poly2 {
    let mut p = Poly2::zero();
    for d in 0..=deg {
        for i in 0..=d {
            p.add_term(i, d - i, rng.gen_range(-1.0..=1.0));
        }
    }
    p
}

type Trial = fn(&mut ChaCha8Rng, &Tolerances, bool) -> Result<(), String>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub fault_injected: bool,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed == p.trials)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        for p in &self.properties {
            let mark = if p.passed == p.trials { "PASS" } else { "FAIL" };
            write!(f, "{mark} {:<28} {}/{}", p.name, p.passed, p.trials)?;
            if let Some(e) = &p.first_failure {
                write!(f, "  first failure: {e}")?;
            }
            writeln!(f)?;
        }
        let failed = self
            .properties
            .iter()
            .filter(|p| p.passed != p.trials)
            .count();
        write!(
            f,
            "{} of {} properties passed",
            self.properties.len() - failed,
            self.properties.len()
        )
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn close(what: &str, got: f64, want: f64, rel: f64, scale: f64) -> Result<(), String> {
    if (got - want).abs() <= rel * scale.max(got.abs()).max(want.abs()).max(f64::MIN_POSITIVE) {
        Ok(())
    } else {
        Err(format!("{what}: got {got:e}, want {want:e}"))
    }
}

fn surface(n: &NormalFormCoeffs) -> Result<PolySurface, String> {
    from_normal_form(n).map_err(err)
}

fn random_jet(rng: &mut ChaCha8Rng, order: usize) -> Jet2 {
    Jet2::from_fn([0.0, 0.0], order, |_, _| rng.gen_range(-1.0..=1.0))
}

/// Richardson-extrapolated central difference of `f` along `dir`.
fn fd(f: &dyn Fn([f64; 2]) -> f64, q: [f64; 2], dir: [f64; 2], h: f64) -> f64 {
    let d = |h: f64| {
        (f([q[0] + h * dir[0], q[1] + h * dir[1]]) - f([q[0] - h * dir[0], q[1] - h * dir[1]]))
            / (2.0 * h)
    };
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

// ---- properties ----

fn jet_fd(rng: &mut ChaCha8Rng, _tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let p = random_poly(rng, 5);
    let q = random_point(rng, 0.5);
    let i = rng.gen_range(0..=3usize);
    let j = rng.gen_range(0..=(3 - i));
    let order = 4;
    let jet = Jet2::lift(&p, q, order);
    let want = jet.partial(i + 1, j);
    // differentiate the lifted coefficient (i, j) in u
    let g = |x: [f64; 2]| Jet2::lift(&p, x, order).partial(i, j);
    let got = fd(&g, q, [1.0, 0.0], 1e-4);
    close(&format!("∂u of partial ({i},{j})"), got, want, 1e-6, 1.0)
}

fn jet_algebra(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let (a, b, c) = (random_jet(rng, 4), random_jet(rng, 4), random_jet(rng, 4));
    let comm = (&a * &b).max_abs_diff(&(&b * &a));
    let assoc = (&(&a * &b) * &c).max_abs_diff(&(&a * &(&b * &c)));
    if comm.max(assoc) > 1e-12 {
        return Err(format!("mul: commutator {comm:e}, associator {assoc:e}"));
    }
    let b = b.add_const(if b.value() >= 0.0 {
        1e-3 + 1.0
    } else {
        -1e-3 - 1.0
    });
    let back = (&a * &b).div_jet(&b, tol).map_err(err)?.max_abs_diff(&a);
    let s = a.add_const(2.0 + a.value().abs());
    let r = s.sqrt(tol).map_err(err)?;
    let sq = (&r * &r).max_abs_diff(&s);
    if back.max(sq) > 1e-10 {
        return Err(format!("div round trip {back:e}, sqrt² {sq:e}"));
    }
    Ok(())
}

fn normal_form_roundtrip(
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
    _fault: bool,
) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let p = surface(&n)?;
    let m = extract_normal_form(&p, tol).map_err(err)?;
    if m.leading() != n.leading() {
        return Err(format!("leading {:?} vs {:?}", m.leading(), n.leading()));
    }
    for (x, y) in [
        (&m.h1, &n.h1),
        (&m.h2, &n.h2),
        (&m.h3, &n.h3),
        (&m.h4, &n.h4),
    ] {
        for k in 0..x.len().max(y.len()) {
            let (a, b) = (
                x.get(k).copied().unwrap_or(0.0),
                y.get(k).copied().unwrap_or(0.0),
            );
            if (a - b).abs() > 1e-12 {
                return Err(format!("tail coefficient {a} vs {b}"));
            }
        }
    }
    if m.h5.sub(&n.h5).terms().any(|(_, _, c)| c.abs() > 1e-12) {
        return Err("h5 differs".into());
    }
    let report = validate_adapted(&p, &ProbeGrid::default(), tol);
    if !report.passed() {
        return Err(format!("not adapted: {report:?}"));
    }
    Ok(())
}

fn origin_frame(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let v = build_frame(&surface(&n)?, [0.0, 0.0], DEFAULT_ORDER, tol)
        .map_err(err)?
        .values();
    let got = [v.e, v.f, v.g, v.l, v.m, v.n];
    let want = [1.0, 0.0, 1.0, n.b20, n.b12, n.b03 / 2.0];
    for k in 0..6 {
        if (got[k] - want[k]).abs() > 1e-10 {
            return Err(format!("frame quantity {k}: {} vs {}", got[k], want[k]));
        }
    }
    Ok(())
}

fn psi_ccr_forms(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let u = rng.gen_range(-0.3..=0.3);
    let r = psi_ccr(&surface(&n)?, u, tol).map_err(err)?;
    close("ψ_ccr", r.determinant, r.closed_form, 1e-9, 0.0)
}

fn weingarten_forms(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let mut q = random_point(rng, 0.3);
    if rng.gen_bool(0.3) {
        q[1] = 0.0;
    }
    let fr = build_frame(&surface(&n)?, q, DEFAULT_ORDER, tol).map_err(err)?;
    weingarten(&fr, tol).map(|_| ()).map_err(err)
}

fn off_axis_point(rng: &mut ChaCha8Rng) -> [f64; 2] {
    loop {
        let q = random_point(rng, 0.3);
        if q[1].abs() >= 1e-3 {
            return q;
        }
    }
}

fn gauss_and_mean(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let p = surface(&n)?;
    for _ in 0..16 {
        let q = off_axis_point(rng);
        let Ok(fr) = build_frame(&p, q, 3, tol) else {
            continue;
        };
        let (Ok(k2), Ok(k1)) = (
            principal_curvature_on_branch(&fr, Branch::Kappa2, tol),
            principal_curvature_on_branch(&fr, Branch::Kappa1, tol),
        ) else {
            continue;
        };
        let gm = gauss_mean(&fr, tol).map_err(err)?;
        let (a, b) = (k2.kappa_value(), k1.kappa_value());
        close("K", a * b, gm.k, 1e-8, 1.0)?;
        close("2H", a + b, 2.0 * gm.h, 1e-8, a.abs() + b.abs())?;
        return Ok(());
    }
    Err("no usable sample point".into())
}

fn direction_residual(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let p = surface(&n)?;
    let q = random_point(rng, 0.3);
    let fr = build_frame(&p, q, 3, tol).map_err(err)?;
    let Ok(pd) = principal_curvature_bounded(&fr, tol) else {
        return Ok(());
    };
    let d = principal_direction(&fr, &pd, tol).map_err(err)?;
    let r = d.residual.abs();
    if r >= 1e-8 {
        return Err(format!("principal direction residual {r:e} at {q:?}"));
    }
    Ok(())
}

fn ridge_first(rng: &mut ChaCha8Rng, tol: &Tolerances, fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let r = ridge_analyze(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    let mut want = (4.0 * n.b12.powi(3) + n.b30 * n.b03 * n.b03) / (2.0 * n.b03);
    if fault {
        want *= 1.0 + 1e-3;
    }
    close("v̂κ̂₂(0)", r.vk1, want, 1e-7, 0.0)
}

fn ridge_second_partials(
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
    _fault: bool,
) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let fr = build_frame(&surface(&n)?, [0.0, 0.0], DEFAULT_ORDER, tol).map_err(err)?;
    let k = principal_curvature_bounded(&fr, tol).map_err(err)?.kappa;
    let c = ridge_closed_form(&n);
    close("κ_uu", k.partial(2, 0), c.kappa_uu, 1e-6, 1.0)?;
    close("κ_uv", k.partial(1, 1), c.kappa_uv, 1e-6, 1.0)?;
    close("κ_vv", k.partial(0, 2), c.kappa_vv, 1e-6, 1.0)
}

fn ridge_second(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            ridge: true,
            ..DrawOptions::default()
        },
    );
    let r = ridge_analyze(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    let vk2 = r.vk2.ok_or("no second derivative")?;
    let c = ridge_closed_form(&n);
    close(
        "v̂⁽²⁾κ̂₂(0)",
        vk2,
        c.c2_exact / (4.0 * n.b03 * n.b03),
        1e-6,
        1.0,
    )
}

fn edge_is_cuspidal(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(rng, &DrawOptions::default());
    let p = surface(&n)?;
    let q = [rng.gen_range(-0.3..=0.3), 0.0];
    let fr = build_frame(&p, q, DEFAULT_ORDER, tol).map_err(err)?;
    if fr.n.value().abs() <= tol.curvature {
        return Ok(());
    }
    let lv = crate::jets::det3(&fr.f.du(), &fr.f.dv(), &fr.nu).partial(0, 1);
    if lv.abs() <= tol.sing {
        return Err(format!("λ_v = {lv:e} at {q:?}"));
    }
    let (zero, one) = (Jet2::zero(q, 3), Jet2::constant(q, 3, 1.0));
    let c = classify(&fr.f, &fr.nu, [&zero, &one], tol).map_err(err)?;
    if c.verdict != Verdict::CuspidalEdge {
        return Err(format!("{} on the edge at {q:?}", c.verdict));
    }
    Ok(())
}

fn eta_rescaling(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let ridge = rng.gen_bool(0.5);
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::AtLeast(0.1),
            ridge,
            tails: true,
        },
    );
    let ps = make_parallel_t0(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    let pp = ps.at([0.0, 0.0], tol).map_err(err)?;
    let (xi, zeta) = (&pp.direction.xi, &pp.direction.zeta);
    let o = [0.0, 0.0];
    let w = Jet2::lift(
        &Poly2::from_terms([(0, 0, 1.0), (2, 0, 1.0), (0, 2, 1.0)]),
        o,
        xi.order(),
    );
    let a = classify(&pp.map, &pp.frame.nu, [xi, zeta], tol).map_err(err)?;
    let b = classify(&pp.map, &pp.frame.nu, [&(xi * &w), &(zeta * &w)], tol).map_err(err)?;
    if a.verdict != b.verdict {
        return Err(format!("{} vs {} after rescaling η", a.verdict, b.verdict));
    }
    Ok(())
}

fn factorisation(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::AtLeast(0.1),
            ..DrawOptions::default()
        },
    );
    let ps = make_parallel_t0(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    let mut done = 0;
    for _ in 0..40 {
        let q = random_point(rng, 0.2);
        let Ok(c) = factorisation_check(&ps, q, tol) else {
            continue;
        };
        if c.relative_error() > 1e-8 {
            return Err(format!(
                "λ_t factorisation off by {:e} at {q:?}",
                c.relative_error()
            ));
        }
        done += 1;
        if done == 10 {
            return Ok(());
        }
    }
    Err("too few usable sample points".into())
}

fn small_grid(r: f64, k: usize) -> SampleGrid {
    SampleGrid::new(
        Domain {
            umin: -r,
            umax: r,
            vmin: -r,
            vmax: r,
        },
        k,
        k,
    )
}

fn parallel_null(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::AtLeast(0.5),
            ..DrawOptions::default()
        },
    );
    let ps = make_parallel_t0(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    for q in parallel_singular_set(&ps, &small_grid(0.1, 7), tol) {
        let Ok(r) = null_residual(&ps, q, tol) else {
            continue;
        };
        if r > 1e-7 {
            return Err(format!("‖df(η)‖ = {r:e} at {q:?}"));
        }
    }
    Ok(())
}

fn swallowtail_routes(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let ridge = rng.gen_bool(0.5);
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::AtLeast(0.1),
            ridge,
            tails: true,
        },
    );
    let s = predict_swallowtail(&surface(&n)?, [0.0, 0.0], tol).map_err(err)?;
    let l = swallowtail_conditions(&n, tol).map_err(err)?;
    if l.holds != (s.verdict() == Verdict::Swallowtail) {
        return Err(format!(
            "conditions {} but verdict {}",
            l.holds,
            s.verdict()
        ));
    }
    Ok(())
}

fn contact_phi(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let ridge = rng.gen_bool(0.3);
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::AtLeast(0.1),
            ridge,
            tails: true,
        },
    );
    let r = delta_phi(&n, tol).map_err(err)?;
    classify_umbilic(&n, tol).map_err(err)?;
    if (r.d4 != D4Type::NotD4) != (r.delta != 0.0 && !r.ridge) {
        return Err(format!("D4 {:?} with Δ_φ = {:e}", r.d4, r.delta));
    }
    Ok(())
}

fn contact_height(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let ridge = rng.gen_bool(0.3);
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::Zero,
            ridge,
            tails: true,
        },
    );
    let p = surface(&n)?;
    let h = height_jet(&p, [0.0, 0.0, 1.0], [0.0, 0.0], tol).map_err(err)?;
    let low = h.truncate(2).max_abs_coeff();
    if low > 1e-12 {
        return Err(format!("j²h̃ = {low:e}"));
    }
    let (_, r) = height_jet_and_delta(&n, tol).map_err(err)?;
    let d = make_dual(&p, Some([0.0, 0.0, 1.0]), tol).map_err(err)?;
    let v = dual_singularity(&d, [0.0, 0.0], tol).map_err(err)?;
    if r.d4 != D4Type::NotD4 && v.verdict != Verdict::CuspidalEdge {
        return Err(format!("{:?} but dual {}", r.d4, v.verdict));
    }
    Ok(())
}

fn dual_closed_forms(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::Zero,
            ..DrawOptions::default()
        },
    );
    let c = [
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(0.5..=1.5),
    ];
    let d = make_dual(&surface(&n)?, Some(c), tol).map_err(err)?;
    let v = dual_singularity(&d, [0.0, 0.0], tol).map_err(err)?;
    let k = c[2] * (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let su = (n.b30.abs() + (n.a20 * n.b12).abs()) * n.b03.abs() * k / 2.0;
    let sv = (4.0 * n.b12 * n.b12 + (n.a20 * n.b03 * n.b03).abs()) * k / 4.0;
    close(
        "λ*_u(0)",
        v.dlambda_star[0],
        (n.b30 - n.a20 * n.b12) * n.b03 * k / 2.0,
        1e-7,
        su,
    )?;
    close(
        "λ*_v(0)",
        v.dlambda_star[1],
        -(4.0 * n.b12 * n.b12 + n.a20 * n.b03 * n.b03) * k / 4.0,
        1e-7,
        sv,
    )
}

fn dual_singular(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    let n = draw_normal_form(
        rng,
        &DrawOptions {
            b20: B20::Zero,
            ..DrawOptions::default()
        },
    );
    let d = make_dual(&surface(&n)?, Some([0.0, 0.0, 1.0]), tol).map_err(err)?;
    for s in dual_singular_set(&d, &small_grid(0.1, 7), tol) {
        if s.front_witness <= 1e-9 {
            return Err(format!("η*ν* = {:e} at {:?}", s.front_witness, s.point));
        }
        let Ok(pt) = d.at(s.point, tol) else { continue };
        let (l, k) = (pt.lambda_star.value(), pt.kappa.value());
        let scale = 1.0
            + pt.lambda_star
                .gradient()
                .iter()
                .map(|x| x.abs())
                .sum::<f64>();
        if k.abs() <= 1e-8 && l.abs() > 1e-6 * scale {
            return Err(format!("κ̂₂ = {k:e} but λ* = {l:e} at {:?}", s.point));
        }
    }
    // away from the zero set both are non-zero
    for _ in 0..8 {
        let q = random_point(rng, 0.1);
        let Ok(pt) = d.at(q, tol) else { continue };
        let (l, k) = (pt.lambda_star.value(), pt.kappa.value());
        if (k.abs() > 1e-6) != (l.abs() > 1e-12) {
            return Err(format!("κ̂₂ = {k:e}, λ* = {l:e} at {q:?}"));
        }
    }
    Ok(())
}

fn jet_vec_consistency(rng: &mut ChaCha8Rng, tol: &Tolerances, _fault: bool) -> Result<(), String> {
    // ν from the order-5 frame agrees with the pointwise normal one step away
    let n = draw_normal_form(rng, &DrawOptions::default());
    let p = surface(&n)?;
    let q = random_point(rng, 0.2);
    let fr = build_frame(&p, q, DEFAULT_ORDER, tol).map_err(err)?;
    let nu = |x: [f64; 2]| build_frame(&p, x, 3, tol).map(|f| f.nu.value());
    let k = rng.gen_range(0..3usize);
    let g = |x: [f64; 2]| nu(x).map(|v| v[k]).unwrap_or(f64::NAN);
    let du = fd(&g, q, [1.0, 0.0], 1e-4);
    let dv = fd(&g, q, [0.0, 1.0], 1e-4);
    let want = JetVec3::du(&fr.nu).value()[k];
    close("ν_u", du, want, 1e-6, 1.0)?;
    close("ν_v", dv, fr.nu.dv().value()[k], 1e-6, 1.0)
}

const PROPERTIES: &[(&str, usize, Trial)] = &[
    ("jet-finite-difference", 50, jet_fd),
    ("jet-algebra", 50, jet_algebra),
    ("normal-frame-finite-difference", 20, jet_vec_consistency),
    ("normal-form-roundtrip", 30, normal_form_roundtrip),
    ("origin-frame", 30, origin_frame),
    ("psi-ccr-forms", 30, psi_ccr_forms),
    ("weingarten-forms", 30, weingarten_forms),
    ("gauss-mean-products", 30, gauss_and_mean),
    ("principal-direction", 30, direction_residual),
    ("ridge-first-derivative", 30, ridge_first),
    ("ridge-second-partials", 30, ridge_second_partials),
    ("ridge-second-derivative", 30, ridge_second),
    ("edge-is-cuspidal", 30, edge_is_cuspidal),
    ("null-field-rescaling", 20, eta_rescaling),
    ("parallel-factorisation", 20, factorisation),
    ("parallel-null-field", 10, parallel_null),
    ("swallowtail-routes", 30, swallowtail_routes),
    ("distance-squared-d4", 30, contact_phi),
    ("height-d4-implies-dual-edge", 30, contact_height),
    ("dual-area-density", 30, dual_closed_forms),
    ("dual-singular-set", 10, dual_singular),
];

/// Runs every property; `fault` corrupts the first-ridge closed form.
pub fn run_battery(seed: u64, tol: &Tolerances, fault: bool) -> VerifyReport {
    let properties = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, &(name, trials, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut passed = 0;
            let mut first_failure = None;
            for _ in 0..trials {
                match f(&mut rng, tol, fault) {
                    Ok(()) => passed += 1,
                    Err(e) => {
                        first_failure.get_or_insert(e);
                    }
                }
            }
            PropertyResult {
                name,
                trials,
                passed,
                first_failure,
            }
        })
        .collect();
    VerifyReport {
        seed,
        fault_injected: fault,
        properties,
    }
}
