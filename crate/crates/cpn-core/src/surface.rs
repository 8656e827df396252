//! Soliton surfaces immersed in the su(N) algebra.
//!
//! The immersion `X_k` is obtained in closed form from the ladder
//! (the GY formula), from the λ-derivative of the wave function (the
//! Sym–Tafel formula) and from the large-λ asymptote of `Φ_k`; the three
//! routes agree identically. Projectors can be recovered from a single
//! surface through a quadratic identity or from the chain `X_0 … X_k`
//! linearly, and the `χ±` recurrences walk between neighbouring
//! surfaces.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math under no_std
use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::Error;
use crate::jet::MatrixJet;
use crate::ladder::{pi_minus, pi_plus, Projector};
use crate::Result;

/// Anti-Hermitian traceless immersion matrix tagged with its rung.
#[derive(Clone, Debug)]
pub struct Surface {
    matrix: MatrixJet,
    rung: usize,
}

impl Surface {
    pub fn new(matrix: MatrixJet, rung: usize) -> Self {
        Surface { matrix, rung }
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

    /// Worst violation of the surface invariants: anti-Hermiticity,
    /// tracelessness and the rung-determined value of `tr(X²)`.
    pub fn invariant_residual(&self) -> f64 {
        let anti = match self.matrix.adjoint().try_add(&self.matrix) {
            Ok(d) => d.max_abs(),
            Err(_) => return f64::INFINITY,
        };
        let tr = self.matrix.trace().value().norm();
        let n = self.dim() as f64;
        let k = self.rung as f64;
        let expect = (2.0 * k + 1.0) * (2.0 * k + 1.0) / n - (4.0 * k + 1.0);
        let tr_sq = match self.matrix.try_mul(&self.matrix) {
            Ok(sq) => (sq.trace().value() - Complex64::new(expect, 0.0)).norm(),
            Err(_) => return f64::INFINITY,
        };
        (anti / 1e-12).max(tr / 1e-12).max(tr_sq / 1e-10)
    }
}

fn check_rung(ladder: &[Projector], k: usize) -> Result<()> {
    if k >= ladder.len() {
        return Err(Error::Rung {
            rung: k,
            dim: ladder.len(),
        });
    }
    Ok(())
}

fn ladder_order(ladder: &[Projector]) -> usize {
    ladder.iter().map(|p| p.order()).min().unwrap()
}

fn partial_sum(ladder: &[Projector], k: usize, order: usize) -> Result<MatrixJet> {
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let mut acc = MatrixJet::zero(n, base, order);
    for p in ladder.iter().take(k) {
        acc = acc.try_add(&p.matrix().truncate(order))?;
    }
    Ok(acc)
}

/// GY formula: `X_k = −i(P_k + 2Σ_{j<k} P_j) + i(1+2k)/N·I`.
///
/// The top rung `k = N−1` is admitted as the same algebraic expression
/// even though the construction is usually quoted for `k ≤ N−2`.
pub fn x_gy(ladder: &[Projector], k: usize) -> Result<Surface> {
    check_rung(ladder, k)?;
    let order = ladder_order(ladder);
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let minus_i = Complex64::new(0.0, -1.0);
    let shift = Complex64::new(0.0, (1 + 2 * k) as f64 / n as f64);
    let matrix = ladder[k]
        .matrix()
        .truncate(order)
        .try_add(&partial_sum(ladder, k, order)?.scale(Complex64::new(2.0, 0.0)))?
        .scale(minus_i)
        .try_add(&MatrixJet::identity(n, base, order).scale(shift))?;
    Ok(Surface::new(matrix, k))
}

/// Sym–Tafel formula: `X_k = α(λ)·Φ_k⁻¹·∂_λΦ_k + i(1+2k)/N·I` with
/// `α(λ) = −i(1−λ²)/2`; independent of λ and equal to the GY route.
///
/// `∂_λΦ_k` is the analytic derivative of the closed form:
/// `4(1+λ)/(1−λ)³·Σ_{j<k} P_j − 2/(1−λ)²·P_k`.
pub fn x_sym_tafel(ladder: &[Projector], k: usize, lambda: Complex64) -> Result<Surface> {
    check_rung(ladder, k)?;
    let one = Complex64::new(1.0, 0.0);
    if (one - lambda).norm() < 1e-12 || (one + lambda).norm() < 1e-12 {
        return Err(Error::SpectralPole { lambda });
    }
    let order = ladder_order(ladder);
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let inv = crate::spectral::phi_inverse(ladder, k, lambda)?;
    let lm = one - lambda;
    let csum = Complex64::new(4.0, 0.0) * (one + lambda) / (lm * lm * lm);
    let cp = Complex64::new(-2.0, 0.0) / (lm * lm);
    let dphi = partial_sum(ladder, k, order)?
        .scale(csum)
        .try_add(&ladder[k].matrix().truncate(order).scale(cp))?;
    let alpha = Complex64::new(0.0, -0.5) * (one - lambda * lambda);
    let shift = Complex64::new(0.0, (1 + 2 * k) as f64 / n as f64);
    let matrix = inv
        .matrix
        .try_mul(&dphi)?
        .scale(alpha)
        .try_add(&MatrixJet::identity(n, base, order).scale(shift))?;
    Ok(Surface::new(matrix, k))
}

/// Large-λ asymptote: `X_k = i(2k+1)/N·I + (i/2)·lim_{λ→∞} λ(I − Φ_k)`,
/// with the limit evaluated analytically, `λ(I−Φ_k) → −4Σ_{j<k}P_j − 2P_k`.
pub fn x_large_lambda(ladder: &[Projector], k: usize) -> Result<Surface> {
    check_rung(ladder, k)?;
    let order = ladder_order(ladder);
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let half_i = Complex64::new(0.0, 0.5);
    let limit = partial_sum(ladder, k, order)?
        .scale(Complex64::new(-4.0, 0.0))
        .try_add(&ladder[k].matrix().truncate(order).scale(Complex64::new(-2.0, 0.0)))?;
    let shift = Complex64::new(0.0, (1 + 2 * k) as f64 / n as f64);
    let matrix = limit
        .scale(half_i)
        .try_add(&MatrixJet::identity(n, base, order).scale(shift))?;
    Ok(Surface::new(matrix, k))
}

/// Quadratic recovery of the projector from a single surface:
/// `P_k = X² − 2i((2k+1)/N − 1)X − (2k+1)/N·((2k+1)/N − 2)·I`.
pub fn projector_from_surface(x: &Surface) -> Result<Projector> {
    let n = x.dim();
    let base = x.matrix.base_point();
    let order = x.order();
    let m = (2 * x.rung + 1) as f64 / n as f64;
    let cx = Complex64::new(0.0, -2.0 * (m - 1.0));
    let ci = Complex64::new(-m * (m - 2.0), 0.0);
    let matrix = x
        .matrix
        .try_mul(&x.matrix)?
        .try_add(&x.matrix.scale(cx))?
        .try_add(&MatrixJet::identity(n, base, order).scale(ci))?;
    Projector::new(matrix, x.rung).map_err(|_| Error::InconsistentSurface)
}

/// Linear recovery of `P_k` from the chain `X_0 … X_k`:
/// `P_k = iΣ_{j=1..k}(−1)^{k−j}(X_j − X_{j−1}) + (−1)^k·i·X_0 + I/N`.
pub fn projector_from_surface_chain(surfaces: &[Surface], k: usize) -> Result<Projector> {
    if k >= surfaces.len() {
        return Err(Error::Rung {
            rung: k,
            dim: surfaces.len(),
        });
    }
    for (j, s) in surfaces.iter().take(k + 1).enumerate() {
        if s.rung != j {
            return Err(Error::Rung {
                rung: s.rung,
                dim: surfaces.len(),
            });
        }
    }
    let n = surfaces[0].dim();
    let base = surfaces[0].matrix.base_point();
    let order = surfaces
        .iter()
        .take(k + 1)
        .map(|s| s.order())
        .min()
        .unwrap();
    let i_unit = Complex64::new(0.0, 1.0);
    let mut acc = MatrixJet::identity(n, base, order).scale(Complex64::new(1.0 / n as f64, 0.0));
    let sign0 = if k % 2 == 0 { 1.0 } else { -1.0 };
    acc = acc.try_add(&surfaces[0].matrix.truncate(order).scale(i_unit * sign0))?;
    for j in 1..=k {
        let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        let diff = surfaces[j]
            .matrix
            .truncate(order)
            .try_sub(&surfaces[j - 1].matrix.truncate(order))?;
        acc = acc.try_add(&diff.scale(i_unit * sign))?;
    }
    Projector::new(acc, k).map_err(|_| Error::InconsistentSurface)
}

/// Creation recurrence on surfaces:
/// `χ₊(X_k) = X_k − i[Π₊(P_k) + P_k] + (2i/N)·I` with `P_k` recovered
/// from the surface itself.
pub fn chi_plus(x: &Surface) -> Result<Surface> {
    chi_apply(x, true)
}

/// Annihilation recurrence on surfaces:
/// `χ₋(X_k) = X_k + i[Π₋(P_k) + P_k] − (2i/N)·I`.
pub fn chi_minus(x: &Surface) -> Result<Surface> {
    chi_apply(x, false)
}

fn chi_apply(x: &Surface, up: bool) -> Result<Surface> {
    let n = x.dim();
    if !up && x.rung == 0 {
        return Err(Error::LadderEnd { rung: 0 });
    }
    let p = projector_from_surface(x)?;
    let stepped = if up { pi_plus(&p)? } else { pi_minus(&p)? };
    let order = stepped.order();
    let sign = if up { -1.0 } else { 1.0 };
    let i_s = Complex64::new(0.0, sign);
    let shift = Complex64::new(0.0, -sign * 2.0 / n as f64);
    let matrix = x
        .matrix
        .truncate(order)
        .try_add(&stepped.matrix().scale(i_s))?
        .try_add(&p.matrix().truncate(order).scale(i_s))?
        .try_add(&MatrixJet::identity(n, x.matrix.base_point(), order).scale(shift))?;
    let rung = if up { x.rung + 1 } else { x.rung - 1 };
    Ok(Surface::new(matrix, rung))
}

/// Orthonormal basis of i·su(N): the generalized Gell-Mann family of
/// traceless Hermitian matrices `B_a` with `tr(B_a·B_b) = 2δ_ab`,
/// ordered symmetric pairs first, then antisymmetric pairs, then
/// diagonal members, each pair family in lexicographic `(j, l)` order.
#[derive(Clone, Debug)]
pub struct EmbeddingBasis {
    dim: usize,
    mats: Vec<CMatrix>,
}

impl EmbeddingBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let mut mats = Vec::with_capacity(n * n - 1);
        for j in 0..n {
            for l in (j + 1)..n {
                let mut m = CMatrix::zero(n);
                m[(j, l)] = Complex64::new(1.0, 0.0);
                m[(l, j)] = Complex64::new(1.0, 0.0);
                mats.push(m);
            }
        }
        for j in 0..n {
            for l in (j + 1)..n {
                let mut m = CMatrix::zero(n);
                m[(j, l)] = Complex64::new(0.0, -1.0);
                m[(l, j)] = Complex64::new(0.0, 1.0);
                mats.push(m);
            }
        }
        for l in 1..n {
            let norm = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
            let mut m = CMatrix::zero(n);
            for j in 0..l {
                m[(j, j)] = Complex64::new(norm, 0.0);
            }
            m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
            mats.push(m);
        }
        Ok(EmbeddingBasis { dim: n, mats })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    /// Worst deviation from pairwise orthonormality under
    /// `(A, B) = −½·tr(A·B)` applied to `i·B_a`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ma) in self.mats.iter().enumerate() {
            for (b, mb) in self.mats.iter().enumerate() {
                let ip = 0.5 * ma.mul(mb).trace().re;
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((ip - want).abs());
            }
        }
        worst
    }
}

/// Coordinates of a surface in a basis of i·su(N):
/// `c_a = (X, i·B_a) = −½·tr(X·i·B_a)`, all real.
pub fn embed_coordinates(x: &Surface, basis: &EmbeddingBasis) -> Result<Vec<f64>> {
    if basis.dim() != x.dim() {
        return Err(Error::Shape {
            expected: x.dim(),
            found: basis.dim(),
        });
    }
    let m = x.matrix.constant_term();
    Ok(basis
        .matrices()
        .iter()
        .map(|b| {
            let prod = m.mul(b);
            // (X, iB) = −½ tr(X·iB) = −½·i·tr(X·B); real for X in su(N)
            (Complex64::new(0.0, -0.5) * prod.trace()).re
        })
        .collect())
}

/// Rebuild the matrix `Σ c_a·(i·B_a)` from embedding coordinates.
pub fn reconstruct_from_coordinates(coords: &[f64], basis: &EmbeddingBasis) -> CMatrix {
    let mut m = CMatrix::zero(basis.dim());
    for (c, b) in coords.iter().zip(basis.matrices()) {
        m = m.add(&b.scale(Complex64::new(0.0, *c)));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::build_ladder;
    use crate::seed::SeedVector;
    use crate::DEFAULT_ORDER;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Example fixture: the CP² Veronese `X₀ = (i/3)I − i·P₀` in closed
    /// form.
    pub(crate) fn cp2_x0_fixture(xi: Complex64) -> CMatrix {
        let f = [
            c(1.0, 0.0),
            xi * 2.0f64.sqrt(),
            xi * xi,
        ];
        let norm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        let mut m = CMatrix::outer(&f, &f).scale(c(0.0, -1.0) / norm);
        for i in 0..3 {
            m[(i, i)] += c(0.0, 1.0 / 3.0);
        }
        m
    }

    #[test]
    fn gy_constant_terms_at_origin() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.0, 0.0), 2).unwrap();
        let x0 = x_gy(&ladder, 0).unwrap().matrix().constant_term();
        let want0 = [c(0.0, -2.0 / 3.0), c(0.0, 1.0 / 3.0), c(0.0, 1.0 / 3.0)];
        for i in 0..3 {
            assert!((x0[(i, i)] - want0[i]).norm() < 1e-13);
        }
        let x1 = x_gy(&ladder, 1).unwrap().matrix().constant_term();
        let want1 = [c(0.0, -1.0), c(0.0, 0.0), c(0.0, 1.0)];
        for i in 0..3 {
            assert!((x1[(i, i)] - want1[i]).norm() < 1e-13);
            for j in 0..3 {
                if i != j {
                    assert!(x1[(i, j)].norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn gy_matches_x0_fixture_everywhere() {
        let s = SeedVector::veronese(3).unwrap();
        for &xi in &[c(0.5, -0.3), c(-1.2, 0.8), c(2.1, 1.4)] {
            let ladder = build_ladder(&s, xi, 2).unwrap();
            let x0 = x_gy(&ladder, 0).unwrap().matrix().constant_term();
            assert!(x0.sub(&cp2_x0_fixture(xi)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn surfaces_are_traceless_antihermitian_with_pinned_norm() {
        let s = SeedVector::new(
            alloc::vec![
                alloc::vec![c(0.4, 0.4), c(1.0, -0.2), c(0.0, 0.6)],
                alloc::vec![c(1.0, 0.0), c(0.0, 0.0), c(0.3, 0.3)],
                alloc::vec![c(0.0, -0.8), c(0.5, 0.0)],
                alloc::vec![c(0.2, 0.0), c(0.0, 1.1), c(-0.4, 0.0), c(0.9, 0.1)],
            ],
            "random",
        )
        .unwrap();
        let ladder = build_ladder(&s, c(0.7, -0.5), 2).unwrap();
        for k in 0..4 {
            let x = x_gy(&ladder, k).unwrap();
            assert!(x.invariant_residual() <= 1.0, "rung {k}");
        }
    }

    #[test]
    fn sym_tafel_is_lambda_independent_and_equals_gy() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.3, 0.9), 3).unwrap();
        let a = x_sym_tafel(&ladder, 1, c(2.0, 0.0)).unwrap();
        let b = x_sym_tafel(&ladder, 1, c(0.0, 0.5)).unwrap();
        assert!(a.matrix().try_sub(b.matrix()).unwrap().max_abs() < 1e-10);
        let gy = x_gy(&ladder, 1).unwrap();
        assert!(a.matrix().try_sub(gy.matrix()).unwrap().max_abs() < 1e-9);
    }

    #[test]
    fn three_routes_agree_for_cp3() {
        let s = SeedVector::veronese(4).unwrap();
        let ladder = build_ladder(&s, c(-0.4, 0.7), 2).unwrap();
        for k in 0..4 {
            let gy = x_gy(&ladder, k).unwrap();
            let lim = x_large_lambda(&ladder, k).unwrap();
            assert!(gy.matrix().try_sub(lim.matrix()).unwrap().max_abs() < 1e-10);
            for &lambda in &[c(2.0, 0.0), c(0.0, 0.5), c(-3.0, 1.0)] {
                let st = x_sym_tafel(&ladder, k, lambda).unwrap();
                assert!(gy.matrix().try_sub(st.matrix()).unwrap().max_abs() < 1e-9);
            }
        }
    }

    #[test]
    fn projector_recovery_from_surface() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.0, 0.0), 2).unwrap();
        // diag(−i, 0, i) at the origin recovers diag(0, 1, 0)
        let x1 = x_gy(&ladder, 1).unwrap();
        let p = projector_from_surface(&x1).unwrap();
        let m = p.matrix().constant_term();
        assert!((m[(1, 1)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(m[(0, 0)].norm() < 1e-12);
        assert!(m[(2, 2)].norm() < 1e-12);

        for &xi in &[c(0.8, 0.1), c(-0.9, -1.3)] {
            let ladder = build_ladder(&s, xi, 2).unwrap();
            for k in 0..3 {
                let x = x_gy(&ladder, k).unwrap();
                let q = projector_from_surface(&x).unwrap();
                let d = q.matrix().try_sub(ladder[k].matrix()).unwrap();
                assert!(d.max_abs() < 1e-10, "rung {k}");
            }
        }
    }

    #[test]
    fn chain_recovery_matches_quadratic_recovery() {
        let s = SeedVector::veronese(4).unwrap();
        let xi = c(0.6, -0.8);
        let ladder = build_ladder(&s, xi, 2).unwrap();
        let surfaces: Vec<Surface> = (0..4).map(|k| x_gy(&ladder, k).unwrap()).collect();
        for k in 0..4 {
            let chain = projector_from_surface_chain(&surfaces, k).unwrap();
            let quad = projector_from_surface(&surfaces[k]).unwrap();
            let d = chain.matrix().try_sub(quad.matrix()).unwrap();
            assert!(d.max_abs() < 1e-10, "rung {k}");
            let dl = chain.matrix().try_sub(ladder[k].matrix()).unwrap();
            assert!(dl.max_abs() < 1e-10, "rung {k} vs ladder");
        }
    }

    #[test]
    fn chain_requires_consecutive_rungs() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.2, 0.2), 2).unwrap();
        let surfaces = alloc::vec![
            x_gy(&ladder, 0).unwrap(),
            x_gy(&ladder, 2).unwrap(),
        ];
        assert!(matches!(
            projector_from_surface_chain(&surfaces, 1),
            Err(Error::Rung { .. })
        ));
    }

    #[test]
    fn chi_round_trip_and_pi_consistency() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.4, 0.5), DEFAULT_ORDER).unwrap();
        let x1 = x_gy(&ladder, 1).unwrap();
        let down = chi_minus(&x1).unwrap();
        let x0 = x_gy(&ladder, 0).unwrap();
        assert!(down
            .matrix()
            .try_sub(&x0.matrix().truncate(down.order()))
            .unwrap()
            .max_abs()
            < 1e-9);
        let back = chi_plus(&down).unwrap();
        assert!(back
            .matrix()
            .try_sub(&x1.matrix().truncate(back.order()))
            .unwrap()
            .max_abs()
            < 1e-9);
        // projector_from_surface(χ₋(X_k)) = Π₋(projector_from_surface(X_k))
        let lhs = projector_from_surface(&down).unwrap();
        let rhs = pi_minus(&projector_from_surface(&x1).unwrap()).unwrap();
        assert!(lhs
            .matrix()
            .try_sub(&rhs.matrix().truncate(lhs.order()))
            .unwrap()
            .max_abs()
            < 1e-9);
    }

    #[test]
    fn chi_plus_at_top_rung_is_ladder_end() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.3, -0.3), 3).unwrap();
        let top = x_gy(&ladder, 2).unwrap();
        assert!(matches!(chi_plus(&top), Err(Error::LadderEnd { .. })));
    }

    #[test]
    fn closedness_of_the_immersion_form() {
        // ∂̄(−[∂P, P]) = ∂([∂̄P, P]) as jets: the integrability behind the
        // contour-integral definition of X
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.9, 0.4), DEFAULT_ORDER).unwrap();
        for p in &ladder {
            let pt = p.matrix().truncate(p.order() - 1);
            let lhs = p
                .matrix()
                .derive_xi()
                .commutator(&pt)
                .unwrap()
                .scale(c(-1.0, 0.0))
                .derive_xibar();
            let rhs = p
                .matrix()
                .derive_xibar()
                .commutator(&pt)
                .unwrap()
                .derive_xi();
            assert!(lhs.try_sub(&rhs).unwrap().max_abs() < 1e-8);
        }
    }

    #[test]
    fn embedding_basis_is_orthonormal() {
        for n in 2..=5 {
            let basis = EmbeddingBasis::new(n).unwrap();
            assert_eq!(basis.len(), n * n - 1);
            assert!(basis.orthonormality_residual() < 1e-13);
        }
    }

    #[test]
    fn pauli_decomposition_for_cp1() {
        // X = −(i/2)·σ₃-like diagonal: only the diagonal coordinate fires
        let s = SeedVector::veronese(2).unwrap();
        let ladder = build_ladder(&s, c(0.0, 0.0), 2).unwrap();
        let x = x_gy(&ladder, 0).unwrap();
        // at ξ=0: X₀ = −i·diag(1,0) + (i/2)I = −(i/2)·diag(1,−1)
        let basis = EmbeddingBasis::new(2).unwrap();
        let coords = embed_coordinates(&x, &basis).unwrap();
        assert!(coords[0].abs() < 1e-13); // σ₁ direction
        assert!(coords[1].abs() < 1e-13); // σ₂ direction
        assert!((coords[2] + 0.5).abs() < 1e-13); // σ₃ direction
    }

    #[test]
    fn embedding_norm_and_round_trip() {
        let s = SeedVector::veronese(4).unwrap();
        let ladder = build_ladder(&s, c(0.7, 0.7), 2).unwrap();
        let basis = EmbeddingBasis::new(4).unwrap();
        for k in 0..4 {
            let x = x_gy(&ladder, k).unwrap();
            let coords = embed_coordinates(&x, &basis).unwrap();
            let norm_sq: f64 = coords.iter().map(|v| v * v).sum();
            let want = -0.5 * x.matrix().try_mul(x.matrix()).unwrap().trace().value().re;
            assert!((norm_sq - want).abs() < 1e-12);
            let rebuilt = reconstruct_from_coordinates(&coords, &basis);
            let d = rebuilt.sub(&x.matrix().constant_term());
            assert!(d.max_abs() < 1e-12);
        }
    }

    #[test]
    fn rung_out_of_range() {
        let s = SeedVector::veronese(3).unwrap();
        let ladder = build_ladder(&s, c(0.1, 0.1), 2).unwrap();
        assert!(matches!(x_gy(&ladder, 3), Err(Error::Rung { .. })));
    }
}
