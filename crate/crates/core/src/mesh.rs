//! Wavefront OBJ export of a sampled surface and its singular set.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::config::Tolerances;
use crate::dual::make_dual;
use crate::error::{GeomError, Result};
use crate::grid::{zero_segments, SampleGrid};
use crate::parallel::{make_parallel, make_parallel_t0, BISECT_TOL};
use crate::surface::{Domain, PolySurface};

/// Default grid resolution per axis.
pub const DEFAULT_GRID: usize = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    Base,
    Parallel,
    Dual,
}

impl FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "base" => Ok(Self::Base),
            "parallel" => Ok(Self::Parallel),
            "dual" => Ok(Self::Dual),
            _ => Err(format!("expected base, parallel or dual, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub which: Which,
    /// Offset for the parallel surface; `None` takes `t0` at the origin.
    pub t: Option<f64>,
    pub grid: SampleGrid,
    /// Drop cells around failed nodes instead of failing.
    pub skip_degenerate: bool,
}

impl MeshOptions {
    pub fn new(which: Which, domain: Domain) -> Self {
        Self {
            which,
            t: None,
            grid: SampleGrid::new(domain, DEFAULT_GRID, DEFAULT_GRID),
            skip_degenerate: false,
        }
    }
}

/// A sampled surface: one optional vertex per grid node, row-major.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub name: String,
    pub grid: SampleGrid,
    pub vertices: Vec<Option<[f64; 3]>>,
    /// Singular-set segments, mapped to 3-space.
    pub singular: Vec<[[f64; 3]; 2]>,
    /// The same segments in the parameter plane.
    pub singular_uv: Vec<[[f64; 2]; 2]>,
    pub warnings: Vec<String>,
}

trait Sampled {
    fn position(&self, q: [f64; 2]) -> Option<[f64; 3]>;
    /// Sign-changing function whose zero set is the singular set.
    fn indicator(&self, q: [f64; 2]) -> Option<f64>;
}

struct Base<'a> {
    p: &'a PolySurface,
    fu: [crate::poly::Poly2; 3],
    psi: [crate::poly::Poly2; 3],
}

impl Sampled for Base<'_> {
    fn position(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        self.indicator(q).map(|_| self.p.eval(q[0], q[1]))
    }

    /// `λ = v·‖f_u × ψ‖`.
    fn indicator(&self, q: [f64; 2]) -> Option<f64> {
        let a = self.fu.each_ref().map(|c| c.eval(q[0], q[1]));
        let b = self.psi.each_ref().map(|c| c.eval(q[0], q[1]));
        let c = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        (n > 0.0).then_some(q[1] * n)
    }
}

struct Wrap<P, I>(P, I);

impl<P, I> Sampled for Wrap<P, I>
where
    P: Fn([f64; 2]) -> Option<[f64; 3]>,
    I: Fn([f64; 2]) -> Option<f64>,
{
    fn position(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        (self.0)(q)
    }

    fn indicator(&self, q: [f64; 2]) -> Option<f64> {
        (self.1)(q)
    }
}

fn sample(name: String, s: &dyn Sampled, opts: &MeshOptions) -> Result<Mesh> {
    let grid = opts.grid;
    let vertices = grid.sample(|q| s.position(q).filter(|x| x.iter().all(|c| c.is_finite())));
    let mut warnings = Vec::new();
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            if vertices[grid.index(i, j)].is_none() {
                let point = grid.node(i, j);
                if !opts.skip_degenerate {
                    return Err(GeomError::DegenerateFrame {
                        point,
                        detail: "mesh node".into(),
                    });
                }
                warnings.push(format!(
                    "skipping cells around degenerate node ({}, {})",
                    point[0], point[1]
                ));
            }
        }
    }
    let f = |q: [f64; 2]| s.indicator(q);
    let values = grid.sample(f);
    let (singular_uv, singular) = zero_segments(&grid, &values, &f, BISECT_TOL)
        .into_iter()
        .filter_map(|[a, b]| Some(([a, b], [s.position(a)?, s.position(b)?])))
        .unzip();
    Ok(Mesh {
        name,
        grid,
        vertices,
        singular,
        singular_uv,
        warnings,
    })
}

pub fn build_mesh(p: &PolySurface, opts: &MeshOptions, tol: &Tolerances) -> Result<Mesh> {
    match opts.which {
        Which::Base => {
            let b = Base {
                p,
                fu: p.du(),
                psi: p.psi()?,
            };
            sample("base".into(), &b, opts)
        }
        Which::Parallel => {
            let ps = match opts.t {
                Some(t) => make_parallel(p, t)?,
                None => make_parallel_t0(p, [0.0, 0.0], tol)?,
            };
            let w = Wrap(|q| ps.position(q), |q| ps.indicator(q, tol));
            sample(format!("parallel_t{}", ps.t), &w, opts)
        }
        Which::Dual => {
            let d = make_dual(p, None, tol)?;
            let w = Wrap(|q| d.position(q), |q| d.indicator(q, tol));
            sample("dual".into(), &w, opts)
        }
    }
}

impl Mesh {
    /// Quads over cells whose four corners are all valid, counter-clockwise
    /// in the parameter plane, as 1-based OBJ vertex indices.
    pub fn faces(&self) -> Vec<[usize; 4]> {
        let g = &self.grid;
        let mut ids = vec![0; self.vertices.len()];
        let mut next = 1;
        for (k, v) in self.vertices.iter().enumerate() {
            if v.is_some() {
                ids[k] = next;
                next += 1;
            }
        }
        let mut out = Vec::new();
        for j in 0..g.nv - 1 {
            for i in 0..g.nu - 1 {
                let c = [
                    g.index(i, j),
                    g.index(i + 1, j),
                    g.index(i + 1, j + 1),
                    g.index(i, j + 1),
                ];
                if c.iter().all(|&k| self.vertices[k].is_some()) {
                    out.push(c.map(|k| ids[k]));
                }
            }
        }
        out
    }

    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        let valid = self.vertices.iter().flatten().count();
        let _ = writeln!(
            s,
            "# frontlab mesh: {}, {}x{} grid",
            self.name, self.grid.nu, self.grid.nv
        );
        let _ = writeln!(s, "o {}", self.name);
        for v in self.vertices.iter().flatten() {
            let _ = writeln!(s, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2]);
        }
        for f in self.faces() {
            let _ = writeln!(s, "f {} {} {} {}", f[0], f[1], f[2], f[3]);
        }
        let _ = writeln!(s, "o singular_set");
        for (k, seg) in self.singular.iter().enumerate() {
            for v in seg {
                let _ = writeln!(s, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2]);
            }
            let a = valid + 2 * k + 1;
            let _ = writeln!(s, "l {} {}", a, a + 1);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{example_dual, example_parallel};

    fn small(which: Which) -> MeshOptions {
        MeshOptions {
            grid: SampleGrid::new(Domain::default(), 9, 9),
            ..MeshOptions::new(which, Domain::default())
        }
    }

    #[test]
    fn base_mesh_counts() {
        let m = build_mesh(
            &example_parallel(),
            &small(Which::Base),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(m.vertices.len(), 81);
        assert_eq!(m.faces().len(), 64);
        // the singular set is the image of the u-axis
        assert!(!m.singular.is_empty());
        for v in m.singular.iter().flatten() {
            let u = v[0];
            assert!((v[1] - (u * u / 2.0 + u.powi(3) / 3.0)).abs() < 1e-9);
            assert!((v[2] - u * u).abs() < 1e-9);
        }
        let obj = m.to_obj();
        assert_eq!(
            obj.lines().filter(|l| l.starts_with("v ")).count(),
            81 + 2 * m.singular.len()
        );
    }

    #[test]
    fn obj_is_deterministic() {
        let tol = Tolerances::default();
        let a = build_mesh(&example_dual(), &small(Which::Dual), &tol)
            .unwrap()
            .to_obj();
        let b = build_mesh(&example_dual(), &small(Which::Dual), &tol)
            .unwrap()
            .to_obj();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_mesh_takes_t0() {
        let m = build_mesh(
            &example_parallel(),
            &small(Which::Parallel),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(m.name, "parallel_t0.5");
    }

    #[test]
    fn which_parses() {
        assert_eq!("dual".parse::<Which>(), Ok(Which::Dual));
        assert!("focal".parse::<Which>().is_err());
    }
}
