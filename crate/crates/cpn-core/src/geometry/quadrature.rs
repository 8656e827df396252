//! Adaptive tensor Gauss–Legendre quadrature over the Riemann sphere.
//!
//! The sphere is covered by two stereographic charts split at `|ξ| = 1`:
//! the unit disk is integrated directly in polar coordinates and the
//! outer region is pulled back through `ξ → 1/ζ` with the measure factor
//! `|ζ|⁻⁴`. Cells are recursively bisected in `(r, θ)` until the
//! parent/children discrepancy falls below the cell's share of the
//! requested tolerance; all evaluation and summation orders are fixed, so
//! results are bit-stable.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::Result;

const GL_ORDER: usize = 12;
const MAX_DEPTH: usize = 9;
const MAX_CELLS: usize = 40_000;
/// Parent/children discrepancies below this multiple of the cell's
/// absolute integral are roundoff; refining further cannot help.
const ROUNDOFF_FLOOR: f64 = 1e-13;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..64 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for m in 2..=n {
        let m = m as f64;
        let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Clone, Copy)]
enum Chart {
    Direct,
    Inverted,
}

#[derive(Clone, Copy)]
struct Cell {
    chart: Chart,
    r0: f64,
    r1: f64,
    t0: f64,
    t1: f64,
}

impl Cell {
    /// Fraction of the total parameter measure carried by this cell.
    fn fraction(&self) -> f64 {
        (self.r1 * self.r1 - self.r0 * self.r0) * (self.t1 - self.t0)
            / (2.0 * 2.0 * core::f64::consts::PI)
    }

    fn split(&self) -> [Cell; 4] {
        let rm = 0.5 * (self.r0 + self.r1);
        let tm = 0.5 * (self.t0 + self.t1);
        [
            Cell { r1: rm, t1: tm, ..*self },
            Cell { r0: rm, t1: tm, ..*self },
            Cell { r1: rm, t0: tm, ..*self },
            Cell { r0: rm, t0: tm, ..*self },
        ]
    }
}

struct Workspace<'a, F> {
    integrand: &'a F,
    components: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cells_used: usize,
}

impl<'a, F> Workspace<'a, F>
where
    F: Fn(Complex64) -> Result<Vec<f64>>,
{
    /// Tensor Gauss–Legendre rule on one cell; returns the integral per
    /// component together with the integral of |f| used for the
    /// roundoff floor.
    fn eval_cell(&mut self, cell: &Cell) -> Result<(Vec<f64>, f64)> {
        self.cells_used += 1;
        if self.cells_used > MAX_CELLS {
            return Err(Error::Quadrature {
                partial: f64::NAN,
                estimate: f64::INFINITY,
            });
        }
        let mut acc = vec![0.0; self.components];
        let mut acc_abs = 0.0;
        let hr = 0.5 * (cell.r1 - cell.r0);
        let mr = 0.5 * (cell.r1 + cell.r0);
        let ht = 0.5 * (cell.t1 - cell.t0);
        let mt = 0.5 * (cell.t1 + cell.t0);
        for (ri, rw) in self.nodes.iter().zip(&self.weights) {
            let r = mr + hr * ri;
            for (ti, tw) in self.nodes.iter().zip(&self.weights) {
                let theta = mt + ht * ti;
                let z = Complex64::new(r * theta.cos(), r * theta.sin());
                let (point, jac) = match cell.chart {
                    Chart::Direct => (z, r),
                    // pullback of the plane measure under ξ = 1/ζ
                    Chart::Inverted => (z.inv(), r / (r * r * r * r)),
                };
                let values = (self.integrand)(point)?;
                let w = rw * tw * hr * ht * jac;
                for (a, v) in acc.iter_mut().zip(&values) {
                    if !v.is_finite() {
                        return Err(Error::Quadrature {
                            partial: *v,
                            estimate: f64::INFINITY,
                        });
                    }
                    *a += w * v;
                    acc_abs += w * v.abs();
                }
            }
        }
        Ok((acc, acc_abs))
    }

    fn refine(
        &mut self,
        cell: &Cell,
        coarse: &[f64],
        tol: f64,
        depth: usize,
        totals: &mut [f64],
        errors: &mut [f64],
    ) -> Result<()> {
        let children = cell.split();
        let mut fine = vec![0.0; self.components];
        let mut fine_abs = 0.0;
        let mut child_values = Vec::with_capacity(4);
        for child in &children {
            let (v, a) = self.eval_cell(child)?;
            for (f, x) in fine.iter_mut().zip(&v) {
                *f += x;
            }
            fine_abs += a;
            child_values.push(v);
        }
        let local_tol = (tol * cell.fraction()).max(ROUNDOFF_FLOOR * fine_abs);
        let diff = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff <= local_tol.max(1e-16) || depth >= MAX_DEPTH {
            for ((t, e), f) in totals.iter_mut().zip(errors.iter_mut()).zip(&fine) {
                *t += f;
                *e += diff;
            }
            return Ok(());
        }
        for (child, v) in children.iter().zip(&child_values) {
            self.refine(child, v, tol, depth + 1, totals, errors)?;
        }
        Ok(())
    }
}

fn run_adaptive<F>(
    integrand: &F,
    components: usize,
    tol: f64,
    cells: &[Cell],
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(Complex64) -> Result<Vec<f64>>,
{
    let (nodes, weights) = gauss_legendre(GL_ORDER);
    let mut ws = Workspace {
        integrand,
        components,
        nodes,
        weights,
        cells_used: 0,
    };
    let mut totals = vec![0.0; components];
    let mut errors = vec![0.0; components];
    for cell in cells {
        let (coarse, _) = ws.eval_cell(cell)?;
        ws.refine(cell, &coarse, tol, 0, &mut totals, &mut errors)?;
    }
    let worst = errors.iter().copied().fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::Quadrature {
            partial: totals[0],
            estimate: worst,
        });
    }
    Ok((totals, errors))
}

fn sphere_cells() -> Vec<Cell> {
    let mut cells = Vec::new();
    for chart in [Chart::Direct, Chart::Inverted] {
        for (r0, r1) in [(0.0, 0.5), (0.5, 1.0)] {
            for q in 0..4 {
                let t0 = core::f64::consts::PI / 2.0 * q as f64;
                cells.push(Cell {
                    chart,
                    r0,
                    r1,
                    t0,
                    t1: t0 + core::f64::consts::PI / 2.0,
                });
            }
        }
    }
    cells
}

/// Integrate several real components of one integrand over the whole
/// sphere in a single adaptive pass; returns per-component values and
/// error estimates.
pub fn sphere_integral_multi<F>(
    integrand: &F,
    components: usize,
    tol: f64,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(Complex64) -> Result<Vec<f64>>,
{
    run_adaptive(integrand, components, tol, &sphere_cells())
}

/// Integral of a real-valued function over the Riemann sphere in
/// stereographic coordinates, `∫∫ f(ξ) dξ¹ dξ²`.
pub fn sphere_integral<F>(integrand: &F, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> f64,
{
    let wrapped = |p: Complex64| -> Result<Vec<f64>> { Ok(vec![integrand(p)]) };
    let (v, e) = sphere_integral_multi(&wrapped, 1, tol)?;
    Ok((v[0], e[0]))
}

/// Integral over the plane annulus `r_in ≤ |ξ| ≤ r_out` in the direct
/// chart; used to cross-check the two charts on their overlap.
pub fn planar_annulus_integral<F>(integrand: &F, r_in: f64, r_out: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> f64,
{
    let wrapped = |p: Complex64| -> Result<Vec<f64>> { Ok(vec![integrand(p)]) };
    let mut cells = Vec::new();
    for q in 0..4 {
        let t0 = core::f64::consts::PI / 2.0 * q as f64;
        cells.push(Cell {
            chart: Chart::Direct,
            r0: r_in,
            r1: r_out,
            t0,
            t1: t0 + core::f64::consts::PI / 2.0,
        });
    }
    let (v, e) = run_adaptive(&wrapped, 1, tol, &cells)?;
    Ok((v[0], e[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        // degree-15 polynomial x^14 over [-1,1] = 2/15
        let got: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(14))
            .sum();
        assert!((got - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn fubini_study_area_is_normalized() {
        let f = |p: Complex64| {
            let t = p.norm_sqr();
            1.0 / (core::f64::consts::PI * (1.0 + t) * (1.0 + t))
        };
        let (v, e) = sphere_integral(&f, 1e-10).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "value {v}");
        assert!(e < 1e-10);
    }

    #[test]
    fn zero_integrand_is_exactly_zero() {
        let f = |_: Complex64| 0.0;
        let (v, e) = sphere_integral(&f, 1e-12).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn annulus_matches_chart_pullback() {
        // ∫_{1≤|ξ|≤2} f = ∫_{1/2≤|ζ|≤1} f(1/ζ)·|ζ|⁻⁴
        let f = |p: Complex64| {
            let t = p.norm_sqr();
            (2.0 + p.re) / ((1.0 + t) * (1.0 + t))
        };
        let (a, _) = planar_annulus_integral(&f, 1.0, 2.0, 1e-10).unwrap();
        let g = |z: Complex64| {
            let p = z.inv();
            f(p) / z.norm_sqr().powi(2)
        };
        let (b, _) = planar_annulus_integral(&g, 0.5, 1.0, 1e-10).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn non_finite_integrand_is_a_quadrature_error() {
        let f = |p: Complex64| -> Result<Vec<f64>> {
            Ok(alloc::vec![if p.re > 0.0 { f64::NAN } else { 0.0 }])
        };
        assert!(matches!(
            sphere_integral_multi(&f, 1, 1e-8),
            Err(Error::Quadrature { .. })
        ));
    }
}
