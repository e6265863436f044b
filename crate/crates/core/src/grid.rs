//! Rectangular parameter grids and sign-change detection on them.

use serde::Serialize;

use crate::surface::Domain;

/// `nu × nv` nodes spanning a box, stored row-major (`v` rows, `u` columns).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleGrid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

impl SampleGrid {
    pub fn new(domain: Domain, nu: usize, nv: usize) -> Self {
        assert!(nu >= 2 && nv >= 2, "a grid needs at least 2×2 nodes");
        Self { domain, nu, nv }
    }

    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        let d = &self.domain;
        let s = i as f64 / (self.nu - 1) as f64;
        let t = j as f64 / (self.nv - 1) as f64;
        [
            d.umin + s * (d.umax - d.umin),
            d.vmin + t * (d.vmax - d.vmin),
        ]
    }

    pub fn step(&self) -> [f64; 2] {
        let d = &self.domain;
        [
            (d.umax - d.umin) / (self.nu - 1) as f64,
            (d.vmax - d.vmin) / (self.nv - 1) as f64,
        ]
    }

    /// Row-major index of node `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    /// Evaluates `f` at every node in row-major order.
    pub fn sample<T>(&self, mut f: impl FnMut([f64; 2]) -> T) -> Vec<T> {
        let mut out = Vec::with_capacity(self.nu * self.nv);
        for j in 0..self.nv {
            for i in 0..self.nu {
                out.push(f(self.node(i, j)));
            }
        }
        out
    }
}

fn negative(x: f64) -> bool {
    x < 0.0
}

/// Zero of `f` on the segment `a → b`, given `f(a)` and `f(b)` of opposite
/// sign, refined until the bracket is shorter than `len_tol`.
pub fn bisect(
    f: &impl Fn([f64; 2]) -> Option<f64>,
    a: [f64; 2],
    b: [f64; 2],
    fa: f64,
    len_tol: f64,
) -> [f64; 2] {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let at = |s: f64| [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    let neg_a = negative(fa);
    while (hi - lo) * len > len_tol {
        let mid = 0.5 * (lo + hi);
        match f(at(mid)) {
            Some(0.0) => return at(mid),
            Some(fm) if negative(fm) == neg_a => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    at(0.5 * (lo + hi))
}

/// The zero crossing on each grid edge along which the sampled `values`
/// change sign, refined by bisection on `f`; edges touching a failed node are
/// skipped. Edges are visited row by row, horizontal edge before vertical.
pub fn edge_crossings(
    grid: &SampleGrid,
    values: &[Option<f64>],
    f: &impl Fn([f64; 2]) -> Option<f64>,
    len_tol: f64,
) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            let here = values[grid.index(i, j)];
            let mut nbrs = Vec::with_capacity(2);
            if i + 1 < grid.nu {
                nbrs.push((i + 1, j));
            }
            if j + 1 < grid.nv {
                nbrs.push((i, j + 1));
            }
            for (k, l) in nbrs {
                if let (Some(a), Some(b)) = (here, values[grid.index(k, l)]) {
                    if negative(a) != negative(b) {
                        out.push(bisect(f, grid.node(i, j), grid.node(k, l), a, len_tol));
                    }
                }
            }
        }
    }
    out
}

/// Marching-squares segments of the zero set of `f`, one or two per cell,
/// in row-major cell order.
pub fn zero_segments(
    grid: &SampleGrid,
    values: &[Option<f64>],
    f: &impl Fn([f64; 2]) -> Option<f64>,
    len_tol: f64,
) -> Vec<[[f64; 2]; 2]> {
    let mut out = Vec::new();
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            // corners counter-clockwise from (i, j)
            let c = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let vals: Option<Vec<f64>> = c.iter().map(|&(a, b)| values[grid.index(a, b)]).collect();
            let Some(vals) = vals else { continue };
            let mut pts = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if negative(vals[a]) != negative(vals[b]) {
                    let pa = grid.node(c[a].0, c[a].1);
                    let pb = grid.node(c[b].0, c[b].1);
                    pts.push(bisect(f, pa, pb, vals[a], len_tol));
                }
            }
            match pts.len() {
                2 => out.push([pts[0], pts[1]]),
                4 => {
                    out.push([pts[0], pts[1]]);
                    out.push([pts[2], pts[3]]);
                }
                _ => {}
            }
        }
    }
    out
}
