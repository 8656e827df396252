//! Local geometry of the soliton surfaces (induced metric, fundamental
//! forms, curvatures) and the global invariants obtained by quadrature
//! over the Riemann sphere.
//!
//! In the conformal gauge forced by the vanishing of the holomorphic
//! current `J_k` the only metric component is
//! `(g_k)₁₂ = −½·tr(∂X_k·∂̄X_k)`, the Gaussian curvature collapses to
//! `𝒦 = −(1/g₁₂)·∂∂̄ ln g₁₂` and the mean curvature matrix is
//! `ℋ = (2/g₁₂)·∂∂̄X`. The topological charge, Willmore functional and
//! Euler–Poincaré characteristic are integrals of pointwise densities in
//! the projectors, evaluated chart-split at `|ξ| = 1`.

pub mod quadrature;

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::Error;
use crate::jet::Jet;
use crate::ladder::Projector;
use crate::surface::x_gy;
use crate::Result;

pub use quadrature::{planar_annulus_integral, sphere_integral, sphere_integral_multi};

/// Tolerance for snapping the integer invariants `Q` and `Δ`.
pub const INTEGER_SNAP_TOL: f64 = 1e-4;

/// Induced-metric data at one point of one rung.
#[derive(Clone, Debug)]
pub struct MetricSample {
    pub point: Complex64,
    pub rung: usize,
    /// The only nonzero induced-metric component.
    pub g12: f64,
    /// Holomorphic current `J_k`; vanishes identically on ladder data.
    pub current: Complex64,
    pub current_bar: Complex64,
}

/// Curvature data at one point of one rung.
#[derive(Clone, Debug)]
pub struct CurvatureSample {
    pub point: Complex64,
    pub rung: usize,
    pub gauss_k: f64,
    /// Mean-curvature matrix `(2/g₁₂)·∂∂̄X` at the point.
    pub mean_h: CMatrix,
    pub h_norm_sq: f64,
    pub christoffel_111: Complex64,
    pub christoffel_222: Complex64,
    /// Coefficients of `dξ²`, `dξ dξ̄` and `dξ̄²` in the second
    /// fundamental form.
    pub second_form: [CMatrix; 3],
}

/// Global invariants of one rung with quadrature error estimates.
#[derive(Clone, Debug)]
pub struct GlobalInvariants {
    pub rung: usize,
    pub willmore: f64,
    pub charge: f64,
    pub euler: f64,
    pub willmore_error: f64,
    pub charge_error: f64,
    pub euler_error: f64,
}

impl GlobalInvariants {
    pub fn charge_int(&self) -> i64 {
        libm_round(self.charge)
    }

    pub fn euler_int(&self) -> i64 {
        libm_round(self.euler)
    }
}

fn libm_round(v: f64) -> i64 {
    let r = if v >= 0.0 { v + 0.5 } else { v - 0.5 };
    r as i64
}

/// `(g_k)₁₂` as a jet (one order below the ladder), from the trace form
/// `−½·tr(∂X_k·∂̄X_k)`.
pub fn g12_jet(ladder: &[Projector], k: usize) -> Result<Jet> {
    let x = x_gy(ladder, k)?;
    let dx = x.matrix().derive_xi();
    let dxb = x.matrix().derive_xibar();
    Ok(dx.try_mul(&dxb)?.trace().scale(Complex64::new(-0.5, 0.0)))
}

/// The two independent evaluations of `(g_k)₁₂`: the trace form over the
/// surface and the projector-only form through the two recurrence
/// denominators, `½[tr(∂P·P·∂̄P) + tr(∂̄P·P·∂P)]`.
pub fn g12_routes(ladder: &[Projector], k: usize) -> Result<(f64, f64)> {
    let trace_form = g12_jet(ladder, k)?.value().re;
    let p = &ladder[k];
    let order = p.order() - 1;
    let dp = p.matrix().derive_xi();
    let dpb = p.matrix().derive_xibar();
    let pt = p.matrix().truncate(order);
    let up = dp.try_mul(&pt)?.try_mul(&dpb)?.trace().value().re;
    let down = dpb.try_mul(&pt)?.try_mul(&dp)?.trace().value().re;
    Ok((trace_form, 0.5 * (up + down)))
}

/// Metric sample at the ladder's base point.
pub fn metric_at(ladder: &[Projector], k: usize) -> Result<MetricSample> {
    if k >= ladder.len() {
        return Err(Error::Rung {
            rung: k,
            dim: ladder.len(),
        });
    }
    let x = x_gy(ladder, k)?;
    let dx = x.matrix().derive_xi();
    let dxb = x.matrix().derive_xibar();
    let g12 = dx
        .try_mul(&dxb)?
        .trace()
        .scale(Complex64::new(-0.5, 0.0))
        .value()
        .re;
    let current = dx
        .try_mul(&dx)?
        .trace()
        .scale(Complex64::new(-0.5, 0.0))
        .value();
    let current_bar = dxb
        .try_mul(&dxb)?
        .trace()
        .scale(Complex64::new(-0.5, 0.0))
        .value();
    Ok(MetricSample {
        point: ladder[0].base_point(),
        rung: k,
        g12,
        current,
        current_bar,
    })
}

/// Curvature sample at the ladder's base point; needs jet order ≥ 3.
pub fn curvature_at(ladder: &[Projector], k: usize) -> Result<CurvatureSample> {
    if k >= ladder.len() {
        return Err(Error::Rung {
            rung: k,
            dim: ladder.len(),
        });
    }
    let x = x_gy(ladder, k)?;
    assert!(x.order() >= 3, "curvature requires jet order >= 3");
    let g = g12_jet(ladder, k)?;
    let g0 = g.value().re;
    if g0 < 1e-12 {
        return Err(Error::DegenerateMetric { g12: g0 });
    }
    let ln_g = g.ln()?;
    let gauss_k = -ln_g.coeff(1, 1).re / g0;
    let christoffel_111 = ln_g.coeff(1, 0);
    let christoffel_222 = ln_g.coeff(0, 1);

    let ddx = x.matrix().coeff_matrix(1, 1);
    let mean_h = ddx.scale(Complex64::new(2.0 / g0, 0.0));
    let h_norm_sq = -0.5 * mean_h.mul(&mean_h).trace().re;

    let dx = x.matrix().coeff_matrix(1, 0);
    let dxb = x.matrix().coeff_matrix(0, 1);
    let d2x = x.matrix().coeff_matrix(2, 0).scale(Complex64::new(2.0, 0.0));
    let d2xb = x.matrix().coeff_matrix(0, 2).scale(Complex64::new(2.0, 0.0));
    let second_form = [
        d2x.sub(&dx.scale(christoffel_111)),
        ddx.scale(Complex64::new(2.0, 0.0)),
        d2xb.sub(&dxb.scale(christoffel_222)),
    ];

    Ok(CurvatureSample {
        point: ladder[0].base_point(),
        rung: k,
        gauss_k,
        mean_h,
        h_norm_sq,
        christoffel_111,
        christoffel_222,
        second_form,
    })
}

/// Pointwise densities of the three global integrals for the given
/// rungs; used by the quadrature pass. Per rung: Willmore, charge and
/// Euler–Poincaré densities in that order.
fn densities(ladder: &[Projector], rungs: &[usize]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(3 * rungs.len());
    for &k in rungs {
        let x = x_gy(ladder, k)?;
        let g = g12_jet(ladder, k)?;
        let g0 = g.value().re;
        if g0 < 1e-300 {
            return Err(Error::DegenerateMetric { g12: g0 });
        }
        // W-density: ¼‖ℋ‖²·g₁₂ with ℋ = (2/g₁₂)∂∂̄X collapses to
        // −½·tr((∂∂̄X)²)/g₁₂, the ¼ already absorbed.
        let ddx = x.matrix().coeff_matrix(1, 1);
        let w = -0.5 * ddx.mul(&ddx).trace().re / g0;
        // Q-density: −(1/π)·tr(P·[∂P, ∂̄P]).
        let p = &ladder[k];
        let order = p.order() - 1;
        let pt = p.matrix().truncate(order);
        let comm = p
            .matrix()
            .derive_xi()
            .commutator(&p.matrix().derive_xibar())?;
        let q = -pt.try_mul(&comm)?.trace().value().re / core::f64::consts::PI;
        // Δ-density: −(1/π)·∂∂̄ ln g₁₂.
        let e = -g.ln()?.coeff(1, 1).re / core::f64::consts::PI;
        out.push(w);
        out.push(q);
        out.push(e);
    }
    Ok(out)
}

/// Global invariants of one rung: Willmore functional, topological
/// charge and Euler–Poincaré characteristic, by adaptive quadrature of
/// the projector densities over the sphere. `Q` and `Δ` must land within
/// [`INTEGER_SNAP_TOL`] of an integer.
pub fn global_invariants<F>(ladder_at: &F, k: usize, tol: f64) -> Result<GlobalInvariants>
where
    F: Fn(Complex64) -> Result<Vec<Projector>>,
{
    let mut all = global_invariants_all(ladder_at, &[k], tol)?;
    Ok(all.remove(0))
}

/// Global invariants for several rungs in a single quadrature pass (the
/// ladder is rebuilt once per evaluation point and shared by all rungs).
pub fn global_invariants_all<F>(
    ladder_at: &F,
    rungs: &[usize],
    tol: f64,
) -> Result<Vec<GlobalInvariants>>
where
    F: Fn(Complex64) -> Result<Vec<Projector>>,
{
    let integrand = |point: Complex64| -> Result<Vec<f64>> {
        let ladder = ladder_at(point)?;
        densities(&ladder, rungs)
    };
    let (values, errors) = sphere_integral_multi(&integrand, 3 * rungs.len(), tol)?;
    let mut out = Vec::with_capacity(rungs.len());
    for (i, &k) in rungs.iter().enumerate() {
        let willmore = values[3 * i];
        let charge = values[3 * i + 1];
        let euler = values[3 * i + 2];
        for v in [charge, euler] {
            if (v - libm_round(v) as f64).abs() > INTEGER_SNAP_TOL {
                return Err(Error::IntegerSnap { value: v });
            }
        }
        out.push(GlobalInvariants {
            rung: k,
            willmore,
            charge,
            euler,
            willmore_error: errors[3 * i],
            charge_error: errors[3 * i + 1],
            euler_error: errors[3 * i + 2],
        });
    }
    Ok(out)
}
