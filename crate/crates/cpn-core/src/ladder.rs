//! The projector layer: the Gram–Schmidt ladder `P_0 … P_{N-1}` built by
//! the creation operator `P₊ = (I − P)∂`, the invariant recurrences `Π±`
//! acting on projectors directly, and the conservation-law residual of
//! the Euler–Lagrange equations.
//!
//! Starting from a holomorphic seed, `(N−1)`-fold application of `P₊`
//! reaches an antiholomorphic vector and one more application yields
//! zero; the rank-1 projectors onto the intermediate directions are
//! mutually orthogonal and sum to the identity. The `Π±` operators walk
//! the same ladder without ever touching homogeneous coordinates:
//!
//! `Π₊(P) = ∂P·P·∂̄P / tr(∂P·P·∂̄P)`,  `Π₋(P) = ∂̄P·P·∂P / tr(∂̄P·P·∂P)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::jet::{Jet, MatrixJet};
use crate::seed::SeedVector;
use crate::Result;

/// Tolerances of the rank-1 projector invariants.
const TOL_IDEMPOTENT: f64 = 1e-10;
const TOL_HERMITIAN: f64 = 1e-12;
const TOL_TRACE: f64 = 1e-12;

/// Relative threshold below which a recurrence denominator counts as the
/// 0/0 ladder-end case.
const EPS_LADDER_END: f64 = 1e-12;

/// Rank-1 Hermitian idempotent carried as a jet matrix, tagged with its
/// rung in the ladder.
#[derive(Clone, Debug)]
pub struct Projector {
    matrix: MatrixJet,
    rung: usize,
}

impl Projector {
    /// Wrap a matrix after checking the projector invariants.
    pub fn new(matrix: MatrixJet, rung: usize) -> Result<Self> {
        let residual = projector_residual(&matrix);
        if residual > 1.0 {
            return Err(Error::InvalidProjector { residual });
        }
        Ok(Projector { matrix, rung })
    }

    fn new_unchecked(matrix: MatrixJet, rung: usize) -> Self {
        Projector { matrix, rung }
    }

    /// `P = f ⊗ f† / (f†·f)` in jet arithmetic.
    pub fn from_vector(f: &[Jet], rung: usize) -> Result<Self> {
        let n = f.len();
        let base = f[0].base_point();
        let order = f.iter().map(|j| j.order()).min().unwrap();
        let norm = dot(f, f);
        let scale: f64 = f.iter().map(|j| j.max_abs()).fold(0.0, f64::max);
        if norm.value().re <= 64.0 * f64::EPSILON * f64::EPSILON * scale * scale {
            return Err(Error::ZeroVector);
        }
        let inv_norm = norm.reciprocal()?;
        let mut m = MatrixJet::zero(n, base, order);
        for i in 0..n {
            for j in 0..n {
                *m.get_mut(i, j) = &(&f[i] * &f[j].conj()) * &inv_norm;
            }
        }
        Ok(Projector::new_unchecked(m, rung))
    }

    pub fn matrix(&self) -> &MatrixJet {
        &self.matrix
    }

    pub fn rung(&self) -> usize {
        self.rung
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn base_point(&self) -> Complex64 {
        self.matrix.base_point()
    }

    pub fn truncate(&self, order: usize) -> Projector {
        Projector {
            matrix: self.matrix.truncate(order),
            rung: self.rung,
        }
    }

    /// Worst violation of `P² = P`, `P† = P`, `tr P = 1` relative to the
    /// per-invariant tolerances (≤ 1 means all invariants hold).
    pub fn invariant_residual(&self) -> f64 {
        projector_residual(&self.matrix)
    }
}

fn projector_residual(p: &MatrixJet) -> f64 {
    let idem = match p.try_mul(p).and_then(|pp| pp.try_sub(p)) {
        Ok(d) => d.max_abs(),
        Err(_) => return f64::INFINITY,
    };
    let herm = p
        .adjoint()
        .try_sub(p)
        .map(|d| d.max_abs())
        .unwrap_or(f64::INFINITY);
    let tr = (p.trace().value() - Complex64::new(1.0, 0.0)).norm();
    (idem / TOL_IDEMPOTENT)
        .max(herm / TOL_HERMITIAN)
        .max(tr / TOL_TRACE)
}

/// `f†·g = Σ conj(f_i)·g_i` as a jet.
pub fn dot(f: &[Jet], g: &[Jet]) -> Jet {
    let base = f[0].base_point();
    let order = f
        .iter()
        .chain(g.iter())
        .map(|j| j.order())
        .min()
        .unwrap();
    let mut acc = Jet::zero(base, order);
    for (a, b) in f.iter().zip(g) {
        acc = &acc + &(&a.conj() * b);
    }
    acc
}

/// Creation operator on field vectors: `(I − P)·∂f`, one jet order lower.
pub fn p_plus(f: &[Jet]) -> Result<Vec<Jet>> {
    ladder_step(f, true)
}

/// Annihilation operator on field vectors: `(I − P)·∂̄f`.
pub fn p_minus(f: &[Jet]) -> Result<Vec<Jet>> {
    ladder_step(f, false)
}

fn ladder_step(f: &[Jet], up: bool) -> Result<Vec<Jet>> {
    let order = f.iter().map(|j| j.order()).min().unwrap();
    assert!(order >= 1, "ladder step requires jet order >= 1");
    let df: Vec<Jet> = f
        .iter()
        .map(|j| if up { j.derive_xi() } else { j.derive_xibar() })
        .collect();
    let ft: Vec<Jet> = f.iter().map(|j| j.truncate(order - 1)).collect();
    let norm = dot(&ft, &ft);
    let scale: f64 = ft.iter().map(|j| j.max_abs()).fold(0.0, f64::max);
    if norm.value().re <= 64.0 * f64::EPSILON * f64::EPSILON * scale * scale {
        return Err(Error::ZeroVector);
    }
    let coeff = &dot(&ft, &df) * &norm.reciprocal()?;
    Ok(ft
        .iter()
        .zip(&df)
        .map(|(fi, di)| di - &(fi * &coeff))
        .collect())
}

/// Build the full ladder `P_0 … P_{N−1}` at a base point, each rung
/// carried to the requested jet order.
pub fn build_ladder(seed: &SeedVector, base: Complex64, order: usize) -> Result<Vec<Projector>> {
    let n = seed.dim();
    let mut f = seed.evaluate(base, order + n - 1);
    let mut rungs = Vec::with_capacity(n);
    for k in 0..n {
        let p = Projector::from_vector(&f, k).map_err(|_| Error::DegenerateSeed { rung: k })?;
        rungs.push(p.truncate(order));
        if k + 1 < n {
            // A genuine collapse leaves only roundoff noise relative to
            // the derivative scale of the input vector.
            let df_scale: f64 = f
                .iter()
                .map(|j| j.derive_xi().max_abs())
                .fold(0.0, f64::max);
            let g = p_plus(&f).map_err(|_| Error::DegenerateSeed { rung: k + 1 })?;
            let g_scale: f64 = g.iter().map(|j| j.max_abs()).fold(0.0, f64::max);
            if g_scale <= 1e-12 * df_scale.max(f64::MIN_POSITIVE) {
                return Err(Error::DegenerateSeed { rung: k + 1 });
            }
            // Normalize to unit max coefficient so repeated steps stay
            // conditioned for high-degree seeds.
            f = g
                .iter()
                .map(|j| j.scale(Complex64::new(1.0 / g_scale, 0.0)))
                .collect();
        }
    }
    Ok(rungs)
}

/// Creation operator on projectors, `Π₊(P) = ∂P·P·∂̄P / tr(∂P·P·∂̄P)`.
pub fn pi_plus(p: &Projector) -> Result<Projector> {
    pi_apply(p, true).map(|(q, _)| q)
}

/// Annihilation operator on projectors, `Π₋(P) = ∂̄P·P·∂P / tr(∂̄P·P·∂P)`.
pub fn pi_minus(p: &Projector) -> Result<Projector> {
    pi_apply(p, false).map(|(q, _)| q)
}

/// Verification-mode `Π₊`: also evaluates the two alternative algebraic
/// forms `(I−P)·∂P·∂̄P` and `∂P·∂̄P·(I−P)` over the same trace and
/// reports the maximum pairwise deviation.
pub fn pi_plus_forms(p: &Projector) -> Result<(Projector, f64)> {
    pi_apply_forms(p, true)
}

/// Verification-mode `Π₋`.
pub fn pi_minus_forms(p: &Projector) -> Result<(Projector, f64)> {
    pi_apply_forms(p, false)
}

fn pi_numerator(p: &Projector, up: bool) -> Result<(MatrixJet, MatrixJet, MatrixJet)> {
    assert!(p.order() >= 1, "recurrence requires jet order >= 1");
    let d = p.matrix().derive_xi();
    let db = p.matrix().derive_xibar();
    let (first, second) = if up { (d, db) } else { (db, d) };
    let pt = p.matrix().truncate(p.order() - 1);
    Ok((first, pt, second))
}

fn pi_apply(p: &Projector, up: bool) -> Result<(Projector, Jet)> {
    let (first, pt, second) = pi_numerator(p, up)?;
    let num = first.try_mul(&pt)?.try_mul(&second)?;
    let tr = num.trace();
    // Scale-free ladder-end detection against tr(∂P·∂̄P).
    let scale = first.try_mul(&second)?.trace().value().norm();
    let target = if up { p.rung() + 1 } else { p.rung().saturating_sub(1) };
    if tr.value().norm() <= EPS_LADDER_END * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::LadderEnd { rung: target });
    }
    let inv_tr = tr.reciprocal()?;
    let matrix = num.scale_jet(&inv_tr);
    let q = Projector::new(matrix, target)?;
    Ok((q, inv_tr))
}

fn pi_apply_forms(p: &Projector, up: bool) -> Result<(Projector, f64)> {
    let (q, inv_tr) = pi_apply(p, up)?;
    let (first, pt, second) = pi_numerator(p, up)?;
    let order = p.order() - 1;
    let id = MatrixJet::identity(p.dim(), p.base_point(), order);
    let complement = id.try_sub(&pt)?;
    let fs = first.try_mul(&second)?;
    let alt1 = complement.try_mul(&fs)?.scale_jet(&inv_tr);
    let alt2 = fs.try_mul(&complement)?.scale_jet(&inv_tr);
    let d1 = alt1.try_sub(q.matrix())?.max_abs();
    let d2 = alt2.try_sub(q.matrix())?.max_abs();
    let d3 = alt1.try_sub(&alt2)?.max_abs();
    Ok((q, d1.max(d2).max(d3)))
}

/// Recover a direction vector from a projector by extracting its best
/// column: the one whose diagonal entry has the largest magnitude at the
/// base point.
pub fn extract_vector(p: &Projector) -> Result<Vec<Jet>> {
    let n = p.dim();
    let mut pivot = 0;
    let mut best = 0.0;
    for j in 0..n {
        let mag = p.matrix().get(j, j).value().norm();
        if mag > best {
            best = mag;
            pivot = j;
        }
    }
    if best < 1e-12 {
        return Err(Error::InvalidProjector { residual: f64::INFINITY });
    }
    Ok((0..n).map(|i| p.matrix().get(i, pivot).clone()).collect())
}

/// Conservation-law residual `∂[∂̄P, P] + ∂̄[∂P, P]`; vanishes on ladder
/// projectors. The result is two jet orders lower.
pub fn el_residual(p: &Projector) -> Result<MatrixJet> {
    assert!(p.order() >= 2, "residual requires jet order >= 2");
    let pt = p.matrix().truncate(p.order() - 1);
    let c1 = p.matrix().derive_xibar().commutator(&pt)?;
    let c2 = p.matrix().derive_xi().commutator(&pt)?;
    c1.derive_xi().try_add(&c2.derive_xibar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ORDER;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Example fixture: the mixed-solution projector of the CP² Veronese
    /// ladder in closed form.
    pub(crate) fn cp2_p1_fixture(xi: Complex64) -> crate::CMatrix {
        let t = xi.norm_sqr();
        let r2 = 2.0f64.sqrt();
        let pref = 1.0 / ((t + 1.0) * (t + 1.0));
        let xb = xi.conj();
        let mut m = crate::CMatrix::zero(3);
        m[(0, 0)] = c(2.0 * t, 0.0);
        m[(0, 1)] = xb * r2 * (t - 1.0);
        m[(0, 2)] = xb * xb * -2.0;
        m[(1, 0)] = xi * r2 * (t - 1.0);
        m[(1, 1)] = c((t - 1.0) * (t - 1.0), 0.0);
        m[(1, 2)] = xb * -r2 * (t - 1.0);
        m[(2, 0)] = xi * xi * -2.0;
        m[(2, 1)] = xi * -r2 * (t - 1.0);
        m[(2, 2)] = c(2.0 * t, 0.0);
        m.scale(c(pref, 0.0))
    }

    #[test]
    fn veronese_projector_at_origin() {
        let s = SeedVector::veronese(3).unwrap();
        let p = Projector::from_vector(&s.evaluate(c(0.0, 0.0), 2), 0).unwrap();
        let m = p.matrix().constant_term();
        assert!((m[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                if i != 0 || j != 0 {
                    assert!(m[(i, j)].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn veronese_projector_at_one() {
        // f(1) = (1, √2, 1), f†f = 4
        let s = SeedVector::veronese(3).unwrap();
        let p = Projector::from_vector(&s.evaluate(c(1.0, 0.0), 2), 0).unwrap();
        let m = p.matrix().constant_term();
        let f = [c(1.0, 0.0), c(2.0f64.sqrt(), 0.0), c(1.0, 0.0)];
        for i in 0..3 {
            for j in 0..3 {
                let expect = f[i] * f[j].conj() / 4.0;
                assert!((m[(i, j)] - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn projector_is_hermitian() {
        let s = SeedVector::veronese(4).unwrap();
        let p = Projector::from_vector(&s.evaluate(c(0.6, -1.1), 3), 0).unwrap();
        let m = p.matrix().constant_term();
        assert!((m[(1, 2)] - m[(2, 1)].conj()).norm() < 1e-14);
        assert!(p.invariant_residual() <= 1.0);
    }

    #[test]
    fn p_plus_of_antiholomorphic_vector_vanishes() {
        let s = SeedVector::veronese(3).unwrap();
        let f: Vec<Jet> = s
            .evaluate(c(0.8, 0.3), 4)
            .iter()
            .map(|j| j.conj())
            .collect();
        let g = p_plus(&f).unwrap();
        let scale: f64 = f.iter().map(|j| j.max_abs()).fold(0.0, f64::max);
        for j in &g {
            assert!(j.max_abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn p_plus_direction_at_origin() {
        // ∂f(0) = (0, √2, 0), already orthogonal to f(0) = (1, 0, 0)
        let s = SeedVector::veronese(3).unwrap();
        let f = s.evaluate(c(0.0, 0.0), 3);
        let g = p_plus(&f).unwrap();
        assert!(g[0].value().norm() < 1e-15);
        assert!((g[1].value() - c(2.0f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!(g[2].value().norm() < 1e-15);
        assert!(dot(&f, &g).value().norm() < 1e-11);
    }

    #[test]
    fn ladder_terminates_in_antiholomorphic_vector() {
        let s = SeedVector::veronese(3).unwrap();
        let mut f = s.evaluate(c(0.4, 0.9), 4);
        for _ in 0..2 {
            f = p_plus(&f).unwrap();
        }
        // two steps from the CP² holomorphic seed: next application vanishes
        let g = p_plus(&f).unwrap();
        let scale: f64 = f.iter().map(|j| j.max_abs()).fold(0.0, f64::max);
        for j in &g {
            assert!(j.max_abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn ladder_is_orthogonal_and_complete() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.0, 0.0), 2).unwrap();
        let expect = [0usize, 1, 2];
        for (k, p) in ladder.iter().enumerate() {
            let m = p.matrix().constant_term();
            for i in 0..3 {
                let want = if i == expect[k] { 1.0 } else { 0.0 };
                assert!((m[(i, i)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn partition_of_unity_for_random_seed() {
        let s = SeedVector::new(
            alloc::vec![
                alloc::vec![c(0.3, 0.1), c(-1.0, 0.4), c(0.2, 0.0), c(0.5, -0.7)],
                alloc::vec![c(1.1, -0.2), c(0.0, 0.8)],
                alloc::vec![c(-0.4, 0.0), c(0.9, 0.9), c(0.0, -1.3)],
                alloc::vec![c(0.2, 0.6), c(0.0, 0.0), c(0.7, 0.0), c(-0.1, 0.1)],
            ],
            "random-deg3",
        )
        .unwrap();
        let ladder = build_ladder(&s, c(0.35, -0.6), 2).unwrap();
        let n = 4;
        let base = ladder[0].base_point();
        let mut sum = MatrixJet::zero(n, base, 2);
        for p in &ladder {
            sum = sum.try_add(p.matrix()).unwrap();
            assert!(p.invariant_residual() <= 1.0, "rung {}", p.rung());
        }
        let id = MatrixJet::identity(n, base, 2);
        assert!(sum.try_sub(&id).unwrap().max_abs() < 1e-9);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let prod = ladder[i].matrix().try_mul(ladder[j].matrix()).unwrap();
                    assert!(prod.max_abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn ladder_matches_printed_mixed_projector() {
        let s = SeedVector::veronese(3).unwrap();
        for &xi in &[c(0.3, 0.7), c(-1.2, 0.5), c(2.0, -0.3)] {
            let ladder = build_ladder(&s, xi, 2).unwrap();
            let got = ladder[1].matrix().constant_term();
            let want = cp2_p1_fixture(xi);
            assert!(got.sub(&want).max_abs() < 1e-10);
        }
    }

    #[test]
    fn pi_plus_walks_the_ladder() {
        let s = SeedVector::veronese(3).unwrap();
        let xi = c(0.5, -0.8);
        let ladder = build_ladder(&s, xi, DEFAULT_ORDER).unwrap();
        let (p1, dev) = pi_plus_forms(&ladder[0]).unwrap();
        assert!(dev < 1e-10);
        let want = cp2_p1_fixture(xi);
        assert!(p1.matrix().constant_term().sub(&want).max_abs() < 1e-10);
        let d = p1
            .matrix()
            .try_sub(&ladder[1].matrix().truncate(p1.order()))
            .unwrap();
        assert!(d.max_abs() < 1e-10);
    }

    #[test]
    fn pi_plus_at_top_rung_is_ladder_end() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.7, 0.1), 3).unwrap();
        assert!(matches!(
            pi_plus(&ladder[2]),
            Err(Error::LadderEnd { rung: 3 })
        ));
    }

    #[test]
    fn pi_round_trip() {
        let s = SeedVector::veronese(4).unwrap();
        let ladder = build_ladder(&s, c(-0.3, 0.9), DEFAULT_ORDER).unwrap();
        for k in 0..3 {
            let up = pi_plus(&ladder[k]).unwrap();
            let back = pi_minus(&up).unwrap();
            let d = back
                .matrix()
                .try_sub(&ladder[k].matrix().truncate(back.order()))
                .unwrap();
            assert!(d.max_abs() < 1e-9, "rung {k}");
        }
    }

    #[test]
    fn k_fold_pi_plus_equals_direct_ladder() {
        let s = SeedVector::new(
            alloc::vec![
                alloc::vec![c(1.0, 0.0), c(0.4, -0.3)],
                alloc::vec![c(0.0, 0.5), c(1.0, 1.0), c(-0.6, 0.0)],
                alloc::vec![c(0.3, 0.0), c(0.0, 0.0), c(0.0, 1.2), c(0.8, -0.4)],
            ],
            "random",
        )
        .unwrap();
        let ladder = build_ladder(&s, c(0.9, 0.2), DEFAULT_ORDER).unwrap();
        let mut walker = ladder[0].clone();
        for k in 1..3 {
            walker = pi_plus(&walker).unwrap();
            let d = walker
                .matrix()
                .try_sub(&ladder[k].matrix().truncate(walker.order()))
                .unwrap();
            assert!(d.max_abs() < 1e-9, "rung {k}");
        }
    }

    #[test]
    fn extract_vector_round_trip() {
        let s = SeedVector::veronese(3).unwrap();
        // ξ = 0 makes (P₁)₁₁ vanish: the pivot must move to column 2
        let ladder = build_ladder(&s, c(0.0, 0.0), 2).unwrap();
        let f = extract_vector(&ladder[1]).unwrap();
        assert!(f[0].value().norm() < 1e-14);
        assert!((f[1].value().norm() - 1.0).abs() < 1e-12);
        assert!(f[2].value().norm() < 1e-14);
        let rebuilt = Projector::from_vector(&f, 1).unwrap();
        let d = rebuilt.matrix().try_sub(ladder[1].matrix()).unwrap();
        assert!(d.max_abs() < 1e-10);

        // canonical projector
        let diag = Projector::from_vector(
            &[
                Jet::constant(c(1.0, 0.0), c(0.0, 0.0), 2),
                Jet::zero(c(0.0, 0.0), 2),
                Jet::zero(c(0.0, 0.0), 2),
            ],
            0,
        )
        .unwrap();
        let g = extract_vector(&diag).unwrap();
        assert!((g[0].value() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(g[1].value().norm() < 1e-15);
    }

    #[test]
    fn extract_vector_round_trip_random_rungs() {
        let s = SeedVector::new(
            alloc::vec![
                alloc::vec![c(0.7, 0.2), c(0.1, -0.9), c(0.0, 0.3)],
                alloc::vec![c(-0.2, 1.0), c(0.8, 0.0)],
                alloc::vec![c(0.5, -0.5), c(0.0, 0.0), c(1.0, 0.4)],
            ],
            "random",
        )
        .unwrap();
        let ladder = build_ladder(&s, c(-0.7, 0.4), 3).unwrap();
        for p in &ladder {
            let f = extract_vector(p).unwrap();
            let rebuilt = Projector::from_vector(&f, p.rung()).unwrap();
            let d = rebuilt.matrix().try_sub(p.matrix()).unwrap();
            assert!(d.max_abs() < 1e-10);
        }
    }

    #[test]
    fn el_residual_vanishes_on_ladder() {
        let s = SeedVector::veronese(3).unwrap();
        for &xi in &[c(0.2, 0.4), c(-1.0, 1.3)] {
            let ladder = build_ladder(&s, xi, DEFAULT_ORDER).unwrap();
            for p in &ladder {
                let r = el_residual(p).unwrap();
                assert!(r.max_abs() < 1e-8, "rung {}", p.rung());
            }
        }
    }

    #[test]
    fn el_residual_of_constant_projector_is_exactly_zero() {
        let base = c(0.3, -0.2);
        let f = [
            Jet::constant(c(1.0, 0.0), base, 3),
            Jet::constant(c(0.0, 1.0), base, 3),
        ];
        let p = Projector::from_vector(&f, 0).unwrap();
        let r = el_residual(&p).unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }

    #[test]
    fn el_residual_detects_perturbation() {
        let s = SeedVector::veronese(3).unwrap();
        let base = c(0.5, 0.5);
        let mut f = s.evaluate(base, DEFAULT_ORDER);
        // antiholomorphic contamination breaks the Euler-Lagrange structure
        let noise = Jet::variable_conj(base, DEFAULT_ORDER).scale(c(1e-3, 4e-4));
        f[1] = &f[1] + &noise;
        let p = Projector::from_vector(&f, 0).unwrap();
        let r = el_residual(&p).unwrap();
        assert!(r.max_abs() > 1e-5);
    }

    #[test]
    fn degenerate_seed_collapses() {
        // components span only two directions
        let s = SeedVector::new(
            alloc::vec![
                alloc::vec![c(1.0, 0.0)],
                alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
                alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
            ],
            "rank-deficient",
        )
        .unwrap();
        let got = build_ladder(&s, c(0.4, 0.2), 2);
        assert!(matches!(got, Err(Error::DegenerateSeed { rung: 2 })));
    }

    #[test]
    fn appendix_orthogonality_chain() {
        // f_k†·∂₊(P₊ f_k) = −(∂₊ f_k†)·(P₊ f_k) on every rung, where ∂₊
        // acts on the conjugated components of f_k†
        let s = SeedVector::veronese(4).unwrap();
        let base = c(0.6, -0.4);
        let mut f = s.evaluate(base, 5);
        for _step in 0..3 {
            let g = p_plus(&f).unwrap();
            let dg: Vec<Jet> = g.iter().map(|j| j.derive_xi()).collect();
            let lhs = dot(&f, &dg);
            let mut rhs = Jet::zero(base, 0);
            for (fi, gi) in f.iter().zip(&g) {
                rhs = &rhs + &(&fi.conj().derive_xi() * gi);
            }
            let rhs = rhs.scale(c(-1.0, 0.0));
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            assert!((lhs.value() - rhs.value()).norm() / scale < 1e-10);
            f = g;
        }
    }

    #[test]
    fn pi_denominator_never_vanishes_off_ladder_ends() {
        let s = SeedVector::veronese(4).unwrap();
        for &xi in &[c(0.1, 0.0), c(1.5, -2.0), c(-0.8, 0.9), c(3.0, 1.0)] {
            let ladder = build_ladder(&s, xi, 2).unwrap();
            for p in ladder.iter().take(3) {
                let q = pi_plus(p).unwrap();
                assert!(q.matrix().max_abs().is_finite());
            }
            for p in ladder.iter().skip(1) {
                let q = pi_minus(p).unwrap();
                assert!(q.matrix().max_abs().is_finite());
            }
        }
    }
}
