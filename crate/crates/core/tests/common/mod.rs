//! Independent pointwise oracles shared by the integration tests.
//!
//! Everything here is evaluated with plain `f64` arithmetic on the
//! polynomials, never through the jet engine.

#![allow(dead_code)]

use std::path::PathBuf;

use frontlab::poly::Poly2;
use frontlab::{NormalFormCoeffs, PolySurface};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub type V3 = [f64; 3];

pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

fn eval3(p: &[Poly2; 3], q: [f64; 2]) -> V3 {
    [
        p[0].eval(q[0], q[1]),
        p[1].eval(q[0], q[1]),
        p[2].eval(q[0], q[1]),
    ]
}

fn d3(p: &[Poly2; 3], u: bool) -> [Poly2; 3] {
    [0, 1, 2].map(|k| if u { p[k].du() } else { p[k].dv() })
}

/// `ψ` with `f_v = vψ`, by dividing each `f_v` coefficient by `v`.
pub fn psi_poly(p: &PolySurface) -> [Poly2; 3] {
    [0, 1, 2].map(|k| {
        let fv = p.components[k].dv();
        Poly2::from_terms(fv.terms().map(|(i, j, c)| {
            assert!(j >= 1, "not adapted");
            (i, j - 1, c)
        }))
    })
}

/// Pointwise geometry of an adapted surface.
#[derive(Debug, Clone, Copy)]
pub struct Pointwise {
    pub v: f64,
    pub fu: V3,
    pub psi: V3,
    pub nu: V3,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl Pointwise {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `(α, β, α̃, β̃)`.
    pub fn weingarten(&self) -> [f64; 4] {
        let (e, f, g, l, m, n, v, d) = (
            self.e,
            self.f,
            self.g,
            self.l,
            self.m,
            self.n,
            self.v,
            self.det(),
        );
        [
            (f * m - g * l) / d,
            (f * l - e * m) / d,
            (f * n - v * g * m) / d,
            (v * f * m - e * n) / d,
        ]
    }

    /// The bounded principal curvature and `v·κ_other`.
    pub fn bounded_curvature(&self) -> (f64, f64) {
        let (e, f, g, l, m, n, v, d) = (
            self.e,
            self.f,
            self.g,
            self.l,
            self.m,
            self.n,
            self.v,
            self.det(),
        );
        let q = l * n - v * m * m;
        let a = e * n - 2.0 * v * f * m + v * g * l;
        let b = (a * a - 4.0 * v * d * q).max(0.0).sqrt();
        let s = if n > 0.0 || (n == 0.0 && a >= 0.0) {
            1.0
        } else {
            -1.0
        };
        (2.0 * q / (a + s * b), (a + s * b) / (2.0 * d))
    }

    pub fn volume(&self) -> f64 {
        norm(cross(self.fu, self.psi))
    }
}

pub fn pointwise(p: &PolySurface, q: [f64; 2]) -> Pointwise {
    let fu_p = d3(&p.components, true);
    let psi_p = psi_poly(p);
    let fu = eval3(&fu_p, q);
    let psi = eval3(&psi_p, q);
    let c = cross(fu, psi);
    let nc = norm(c);
    let nu = c.map(|x| x / nc);
    let fuu = eval3(&d3(&fu_p, true), q);
    let psi_u = eval3(&d3(&psi_p, true), q);
    let psi_v = eval3(&d3(&psi_p, false), q);
    Pointwise {
        v: q[1],
        fu,
        psi,
        nu,
        e: dot(fu, fu),
        f: dot(fu, psi),
        g: dot(psi, psi),
        l: dot(fuu, nu),
        m: dot(psi_u, nu),
        n: dot(psi_v, nu),
    }
}

/// Richardson-extrapolated central first difference along `dir`.
pub fn fd1(f: &dyn Fn([f64; 2]) -> f64, q: [f64; 2], dir: [f64; 2], h: f64) -> f64 {
    let d = |h: f64| {
        (f([q[0] + h * dir[0], q[1] + h * dir[1]]) - f([q[0] - h * dir[0], q[1] - h * dir[1]]))
            / (2.0 * h)
    };
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Richardson-extrapolated central estimate of `∂^i_u ∂^j_v f` for `i + j ≤ 2`.
pub fn fd_partial(f: &dyn Fn([f64; 2]) -> f64, q: [f64; 2], i: usize, j: usize, h: f64) -> f64 {
    let at = |du: f64, dv: f64| f([q[0] + du, q[1] + dv]);
    let est = |h: f64| match (i, j) {
        (0, 0) => at(0.0, 0.0),
        (1, 0) => (at(h, 0.0) - at(-h, 0.0)) / (2.0 * h),
        (0, 1) => (at(0.0, h) - at(0.0, -h)) / (2.0 * h),
        (2, 0) => (at(h, 0.0) - 2.0 * at(0.0, 0.0) + at(-h, 0.0)) / (h * h),
        (0, 2) => (at(0.0, h) - 2.0 * at(0.0, 0.0) + at(0.0, -h)) / (h * h),
        (1, 1) => (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h),
        _ => panic!("partial ({i},{j}) not supported"),
    };
    (4.0 * est(h / 2.0) - est(h)) / 3.0
}

pub fn rel_close(got: f64, want: f64, rel: f64, floor: f64) -> bool {
    (got - want).abs() <= rel * got.abs().max(want.abs()).max(floor)
}

/// `C1 = 4b12³ + b30b03²`.
pub fn c1(n: &NormalFormCoeffs) -> f64 {
    4.0 * n.b12.powi(3) + n.b30 * n.b03 * n.b03
}

/// The second ridge quantity in its quoted form.
pub fn c2_quoted(n: &NormalFormCoeffs) -> f64 {
    let s = 4.0 * n.b12 * n.b12 + n.a20 * n.b03 * n.b03;
    let tail = n.b03.powi(4) * n.h2_0() + 4.0 * n.b12 * n.b12 * n.b03 * n.b03 * n.h3_0()
        - 8.0 * n.b12.powi(3) * n.b03 * n.h4_0()
        + 16.0 * n.b12.powi(4) * n.h5_0();
    -2.0 * n.b20.powi(3) * n.b03.powi(4) - 3.0 * n.b20 * s * s + 24.0 * tail
}

/// Discriminant of the binary cubic `A u³ + 3B u²v + 3C uv² + D v³` (up to a
/// positive factor), with `(A, B, C, D)` the third partials.
pub fn cubic_disc(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * a * d * d - 6.0 * a * b * c * d - 3.0 * b * b * c * c
        + 4.0 * b * b * b * d
        + 4.0 * a * c * c * c
}
