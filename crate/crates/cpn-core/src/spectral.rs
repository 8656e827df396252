//! Wave functions of the linear spectral problem and their invariant
//! recurrences.
//!
//! The closed-form solution vanishing at complex infinity is
//!
//! `Φ_k = I + 4λ/(1−λ)² Σ_{j<k} P_j − 2/(1−λ) P_k`,
//!
//! with `Φ_k⁻¹(λ) = Φ_k(−λ)`. Recurrences are expressed through the
//! auxiliary function `Ψ_k = (1−λ)²(I − Φ_k)`, which is polynomial in the
//! projectors: `Ψ_k = −4λ Σ_{j<k} P_j + 2(1−λ) P_k`. The sum rule
//! `Ψ_k(λ) + Ψ_k(−λ) = 4 P_k` lets `Λ±` recover the projector and reuse
//! the audited `Π±` recurrence, so the operators act on `Ψ` alone.

use num_complex::Complex64;

use crate::error::Error;
use crate::jet::MatrixJet;
use crate::ladder::{pi_minus, pi_plus, Projector};
use crate::Result;

/// Which object a [`WaveSample`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveKind {
    Phi,
    PhiInverse,
    Psi,
}

/// A wave function evaluated at one `(point, λ, rung)`; the matrix is
/// jet-valued so `ξ`-derivatives remain available downstream.
#[derive(Clone, Debug)]
pub struct WaveSample {
    pub matrix: MatrixJet,
    pub lambda: Complex64,
    pub rung: usize,
    pub kind: WaveKind,
}

const POLE_TOL: f64 = 1e-12;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `Σ_{j<k} P_j` over the ladder.
fn partial_sum(ladder: &[Projector], k: usize, order: usize) -> Result<MatrixJet> {
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let mut acc = MatrixJet::zero(n, base, order);
    for p in ladder.iter().take(k) {
        acc = acc.try_add(&p.matrix().truncate(order))?;
    }
    Ok(acc)
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

/// Wave function `Φ_k(λ)` from the ladder.
pub fn phi(ladder: &[Projector], k: usize, lambda: Complex64) -> Result<WaveSample> {
    check_rung(ladder, k)?;
    if (one() - lambda).norm() < POLE_TOL {
        return Err(Error::SpectralPole { lambda });
    }
    let order = ladder.iter().map(|p| p.order()).min().unwrap();
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let csum = Complex64::new(4.0, 0.0) * lambda / ((one() - lambda) * (one() - lambda));
    let cp = Complex64::new(-2.0, 0.0) / (one() - lambda);
    let matrix = MatrixJet::identity(n, base, order)
        .try_add(&partial_sum(ladder, k, order)?.scale(csum))?
        .try_add(&ladder[k].matrix().truncate(order).scale(cp))?;
    Ok(WaveSample {
        matrix,
        lambda,
        rung: k,
        kind: WaveKind::Phi,
    })
}

/// `Φ_k(λ)⁻¹`, the mirrored closed form (equal to `Φ_k(−λ)`).
pub fn phi_inverse(ladder: &[Projector], k: usize, lambda: Complex64) -> Result<WaveSample> {
    check_rung(ladder, k)?;
    if (one() + lambda).norm() < POLE_TOL {
        return Err(Error::SpectralPole { lambda });
    }
    let order = ladder.iter().map(|p| p.order()).min().unwrap();
    let n = ladder[0].dim();
    let base = ladder[0].base_point();
    let csum = Complex64::new(-4.0, 0.0) * lambda / ((one() + lambda) * (one() + lambda));
    let cp = Complex64::new(-2.0, 0.0) / (one() + lambda);
    let matrix = MatrixJet::identity(n, base, order)
        .try_add(&partial_sum(ladder, k, order)?.scale(csum))?
        .try_add(&ladder[k].matrix().truncate(order).scale(cp))?;
    Ok(WaveSample {
        matrix,
        lambda,
        rung: k,
        kind: WaveKind::PhiInverse,
    })
}

/// Auxiliary function `Ψ_k(λ) = (1−λ)²(I − Φ_k) = −4λ Σ_{j<k} P_j + 2(1−λ) P_k`.
pub fn psi(ladder: &[Projector], k: usize, lambda: Complex64) -> Result<WaveSample> {
    check_rung(ladder, k)?;
    let order = ladder.iter().map(|p| p.order()).min().unwrap();
    let csum = Complex64::new(-4.0, 0.0) * lambda;
    let cp = Complex64::new(2.0, 0.0) * (one() - lambda);
    let matrix = partial_sum(ladder, k, order)?
        .scale(csum)
        .try_add(&ladder[k].matrix().truncate(order).scale(cp))?;
    Ok(WaveSample {
        matrix,
        lambda,
        rung: k,
        kind: WaveKind::Psi,
    })
}

/// `Ψ(−λ)` from `Ψ(λ)` alone through the symmetry `Φ⁻¹(λ) = Φ(−λ)`:
/// `Ψ(−λ) = −(1+λ)² Ψ(λ) [(1−λ)² I − Ψ(λ)]⁻¹`.
pub fn psi_negate(sample: &WaveSample) -> Result<WaveSample> {
    if sample.kind != WaveKind::Psi {
        return Err(Error::WaveKind);
    }
    let lambda = sample.lambda;
    let n = sample.matrix.dim();
    let base = sample.matrix.base_point();
    let order = sample.matrix.order();
    let a = (one() - lambda) * (one() - lambda);
    let bracket = MatrixJet::identity(n, base, order)
        .scale(a)
        .try_sub(&sample.matrix)?;
    if bracket.constant_term().cond_inf() > 1e12 {
        return Err(Error::SpectralPole { lambda });
    }
    let inv = bracket.inverse()?;
    let c = -(one() + lambda) * (one() + lambda);
    let matrix = sample.matrix.try_mul(&inv)?.scale(c);
    Ok(WaveSample {
        matrix,
        lambda: -lambda,
        rung: sample.rung,
        kind: WaveKind::Psi,
    })
}

/// The projector `¼[Ψ(λ) + Ψ(−λ)]` hidden inside a `Ψ` sample.
pub fn projector_of_psi(sample: &WaveSample) -> Result<Projector> {
    let negated = psi_negate(sample)?;
    let matrix = sample
        .matrix
        .try_add(&negated.matrix)?
        .scale(Complex64::new(0.25, 0.0));
    Projector::new(matrix, sample.rung)
}

/// Creation operator on auxiliary wave functions:
/// `Λ₊(Ψ(λ)) = ½[(1−λ)Ψ(λ) − (1+λ)Ψ(−λ)] + 2(1−λ)·Π₊(¼[Ψ(λ)+Ψ(−λ)])`.
pub fn lambda_plus(sample: &WaveSample) -> Result<WaveSample> {
    lambda_apply(sample, true)
}

/// Annihilation operator on auxiliary wave functions:
/// `Λ₋(Ψ(λ)) = ½[(1+λ)Ψ(λ) − (1−λ)Ψ(−λ)] + 2(1+λ)·Π₋(¼[Ψ(λ)+Ψ(−λ)])`.
pub fn lambda_minus(sample: &WaveSample) -> Result<WaveSample> {
    lambda_apply(sample, false)
}

fn lambda_apply(sample: &WaveSample, up: bool) -> Result<WaveSample> {
    if sample.kind != WaveKind::Psi {
        return Err(Error::WaveKind);
    }
    let n = sample.matrix.dim();
    let lambda = sample.lambda;
    // The 0/0 ladder ends surface through Pi; the rung bound only guards
    // against malformed samples.
    if sample.rung >= n {
        return Err(Error::Rung {
            rung: sample.rung,
            dim: n,
        });
    }
    let negated = psi_negate(sample)?;
    let projector = Projector::new(
        sample
            .matrix
            .try_add(&negated.matrix)?
            .scale(Complex64::new(0.25, 0.0)),
        sample.rung,
    )?;
    let stepped = if up {
        pi_plus(&projector)?
    } else {
        pi_minus(&projector)?
    };
    let order = stepped.order();
    let (ca, cb, cpi) = if up {
        (
            (one() - lambda) * 0.5,
            -(one() + lambda) * 0.5,
            (one() - lambda) * 2.0,
        )
    } else {
        (
            (one() + lambda) * 0.5,
            -(one() - lambda) * 0.5,
            (one() + lambda) * 2.0,
        )
    };
    let matrix = sample
        .matrix
        .truncate(order)
        .scale(ca)
        .try_add(&negated.matrix.truncate(order).scale(cb))?
        .try_add(&stepped.matrix().scale(cpi))?;
    Ok(WaveSample {
        matrix,
        lambda,
        rung: stepped.rung(),
        kind: WaveKind::Psi,
    })
}

/// Residuals of the linear spectral problem for `Φ_k` built from the
/// ladder:
///
/// `(∂Φ − 2/(1+λ)·[∂P,P]·Φ,  ∂̄Φ − 2/(1−λ)·[∂̄P,P]·Φ)`.
pub fn lax_residual(
    p: &Projector,
    lambda: Complex64,
    ladder: &[Projector],
) -> Result<(MatrixJet, MatrixJet)> {
    if (one() - lambda).norm() < POLE_TOL || (one() + lambda).norm() < POLE_TOL {
        return Err(Error::SpectralPole { lambda });
    }
    let k = p.rung();
    let sample = phi(ladder, k, lambda)?;
    let phi_m = &sample.matrix;
    let order = phi_m.order();
    assert!(order >= 1, "Lax residual requires jet order >= 1");
    let pm = p.matrix().truncate(order - 1);
    let phi_t = phi_m.truncate(order - 1);

    let ca = Complex64::new(2.0, 0.0) / (one() + lambda);
    let comm_xi = p.matrix().truncate(order).derive_xi().commutator(&pm)?;
    let res_xi = phi_m
        .derive_xi()
        .try_sub(&comm_xi.try_mul(&phi_t)?.scale(ca))?;

    let cb = Complex64::new(2.0, 0.0) / (one() - lambda);
    let comm_xibar = p.matrix().truncate(order).derive_xibar().commutator(&pm)?;
    let res_xibar = phi_m
        .derive_xibar()
        .try_sub(&comm_xibar.try_mul(&phi_t)?.scale(cb))?;

    Ok((res_xi, res_xibar))
}
