//! Truncated bivariate Taylor (jet) arithmetic in the independent
//! variables `(ξ, ξ̄)`, at scalar and matrix level.
//!
//! A [`Jet`] of order `J` at base point `ξ₀` stores the coefficients
//! `c_{a,b} = ∂^a ∂̄^b F(ξ₀, ξ̄₀) / (a! b!)` for all `a + b ≤ J`, so the
//! derivative operators `∂`, `∂̄` become index shifts with factorial
//! rescaling and products follow the truncated Cauchy rule. `ξ` and `ξ̄`
//! are treated as independent variables; conjugation of a jet swaps the
//! index lattice `(a,b) → (b,a)` and conjugates the coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::Error;
use crate::Result;

/// Number of coefficients of a jet of the given order.
#[inline]
pub fn coeff_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Position of the `(a, b)` coefficient in degree-major storage.
#[inline]
fn idx(a: usize, b: usize) -> usize {
    let d = a + b;
    d * (d + 1) / 2 + b
}

/// Truncated Taylor expansion of a complex scalar in `(ξ, ξ̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base: Complex64,
    order: usize,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Jet of a constant function.
    pub fn constant(value: Complex64, base: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); coeff_len(order)];
        coeffs[0] = value;
        Jet { base, order, coeffs }
    }

    /// Jet of the coordinate function `ξ` itself.
    pub fn variable(base: Complex64, order: usize) -> Self {
        let mut j = Jet::constant(base, base, order);
        if order >= 1 {
            j.coeffs[idx(1, 0)] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// Jet of the conjugate coordinate `ξ̄`.
    pub fn variable_conj(base: Complex64, order: usize) -> Self {
        let mut j = Jet::constant(base.conj(), base, order);
        if order >= 1 {
            j.coeffs[idx(0, 1)] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// The zero jet.
    pub fn zero(base: Complex64, order: usize) -> Self {
        Jet::constant(Complex64::new(0.0, 0.0), base, order)
    }

    pub fn base_point(&self) -> Complex64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient `c_{a,b}`; zero beyond the truncation order.
    pub fn coeff(&self, a: usize, b: usize) -> Complex64 {
        if a + b > self.order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx(a, b)]
        }
    }

    fn coeff_mut(&mut self, a: usize, b: usize) -> &mut Complex64 {
        debug_assert!(a + b <= self.order);
        &mut self.coeffs[idx(a, b)]
    }

    /// Value at the base point, `c_{0,0}`.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// The derivative `∂^a ∂̄^b F` at the base point (`a! b! c_{a,b}`).
    pub fn derivative(&self, a: usize, b: usize) -> Complex64 {
        let mut fac = 1.0;
        for m in 2..=a {
            fac *= m as f64;
        }
        for m in 2..=b {
            fac *= m as f64;
        }
        self.coeff(a, b) * fac
    }

    /// Drop coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            base: self.base,
            order,
            coeffs: self.coeffs[..coeff_len(order)].to_vec(),
        }
    }

    /// Jet of the complex conjugate function: swaps the index lattice and
    /// conjugates coefficients. Exact involution.
    pub fn conj(&self) -> Jet {
        let mut out = Jet::zero(self.base, self.order);
        for d in 0..=self.order {
            for b in 0..=d {
                let a = d - b;
                *out.coeff_mut(a, b) = self.coeff(b, a).conj();
            }
        }
        out
    }

    /// The `∂` derivative; order decreases by one.
    pub fn derive_xi(&self) -> Jet {
        assert!(self.order >= 1, "derive requires jet order >= 1");
        let order = self.order - 1;
        let mut out = Jet::zero(self.base, order);
        for d in 0..=order {
            for b in 0..=d {
                let a = d - b;
                *out.coeff_mut(a, b) = self.coeff(a + 1, b) * ((a + 1) as f64);
            }
        }
        out
    }

    /// The `∂̄` derivative; order decreases by one.
    pub fn derive_xibar(&self) -> Jet {
        assert!(self.order >= 1, "derive requires jet order >= 1");
        let order = self.order - 1;
        let mut out = Jet::zero(self.base, order);
        for d in 0..=order {
            for b in 0..=d {
                let a = d - b;
                *out.coeff_mut(a, b) = self.coeff(a, b + 1) * ((b + 1) as f64);
            }
        }
        out
    }

    /// Multiply by a complex scalar.
    pub fn scale(&self, s: Complex64) -> Jet {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= s;
        }
        out
    }

    /// Power-series reciprocal; requires a nonvanishing value at the base
    /// point.
    pub fn reciprocal(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if a0.norm() < 1e-300 {
            return Err(Error::DivisionByZeroAtBasePoint);
        }
        let inv0 = Complex64::new(1.0, 0.0) / a0;
        let mut out = Jet::zero(self.base, self.order);
        out.coeffs[0] = inv0;
        for d in 1..=self.order {
            for b in 0..=d {
                let a = d - b;
                let mut acc = Complex64::new(0.0, 0.0);
                for p in 0..=a {
                    for q in 0..=b {
                        if p == a && q == b {
                            continue;
                        }
                        acc += out.coeff(p, q) * self.coeff(a - p, b - q);
                    }
                }
                *out.coeff_mut(a, b) = -inv0 * acc;
            }
        }
        Ok(out)
    }

    /// Principal-branch logarithm; requires a nonvanishing value at the
    /// base point. Used for `ln g₁₂` in the curvature formulas.
    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if a0.norm() < 1e-300 {
            return Err(Error::DivisionByZeroAtBasePoint);
        }
        // ln(a0 + h) = ln a0 + sum_{m>=1} (-1)^{m+1} (h/a0)^m / m
        let mut rel = self.scale(Complex64::new(1.0, 0.0) / a0);
        rel.coeffs[0] = Complex64::new(0.0, 0.0);
        let mut out = Jet::constant(a0.ln(), self.base, self.order);
        let mut pow = Jet::constant(Complex64::new(1.0, 0.0), self.base, self.order);
        let mut sign = 1.0;
        for m in 1..=self.order {
            pow = &pow * &rel;
            out = &out + &pow.scale(Complex64::new(sign / m as f64, 0.0));
            sign = -sign;
        }
        Ok(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn assert_compatible(&self, other: &Jet) {
        assert!(
            self.base == other.base,
            "jet arithmetic requires a shared base point"
        );
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.assert_compatible(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(self.base, order);
        for i in 0..coeff_len(order) {
            out.coeffs[i] = self.coeffs[i] + rhs.coeffs[i];
        }
        out
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.assert_compatible(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(self.base, order);
        for i in 0..coeff_len(order) {
            out.coeffs[i] = self.coeffs[i] - rhs.coeffs[i];
        }
        out
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.assert_compatible(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(self.base, order);
        for d1 in 0..=order {
            for b1 in 0..=d1 {
                let a1 = d1 - b1;
                let x = self.coeff(a1, b1);
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for d2 in 0..=(order - d1) {
                    for b2 in 0..=d2 {
                        let a2 = d2 - b2;
                        let y = rhs.coeff(a2, b2);
                        *out.coeff_mut(a1 + a2, b1 + b2) += x * y;
                    }
                }
            }
        }
        out
    }
}

/// Square matrix of jets sharing base point and order.
#[derive(Clone, Debug)]
pub struct MatrixJet {
    n: usize,
    entries: Vec<Jet>,
}

impl MatrixJet {
    /// Zero matrix.
    pub fn zero(n: usize, base: Complex64, order: usize) -> Self {
        MatrixJet {
            n,
            entries: vec![Jet::zero(base, order); n * n],
        }
    }

    /// Identity matrix lifted to jets.
    pub fn identity(n: usize, base: Complex64, order: usize) -> Self {
        let mut m = MatrixJet::zero(n, base, order);
        for i in 0..n {
            *m.get_mut(i, i) = Jet::constant(Complex64::new(1.0, 0.0), base, order);
        }
        m
    }

    /// Build from row-major entries; all must share base point and order.
    pub fn from_entries(n: usize, entries: Vec<Jet>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape {
                expected: n * n,
                found: entries.len(),
            });
        }
        let base = entries[0].base_point();
        let order = entries[0].order();
        if entries
            .iter()
            .any(|e| e.base_point() != base || e.order() != order)
        {
            return Err(Error::Shape {
                expected: order,
                found: usize::MAX,
            });
        }
        Ok(MatrixJet { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn base_point(&self) -> Complex64 {
        self.entries[0].base_point()
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Jet {
        &mut self.entries[i * self.n + j]
    }

    fn check_dims(&self, rhs: &MatrixJet) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::Shape {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &MatrixJet) -> Result<MatrixJet> {
        self.check_dims(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(MatrixJet { n: self.n, entries })
    }

    pub fn try_sub(&self, rhs: &MatrixJet) -> Result<MatrixJet> {
        self.check_dims(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(MatrixJet { n: self.n, entries })
    }

    pub fn try_mul(&self, rhs: &MatrixJet) -> Result<MatrixJet> {
        self.check_dims(rhs)?;
        let n = self.n;
        let order = self.order().min(rhs.order());
        let base = self.base_point();
        let mut out = MatrixJet::zero(n, base, order);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Jet::zero(base, order);
                for l in 0..n {
                    acc = &acc + &(self.get(i, l) * rhs.get(l, j));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// `A·B − B·A`.
    pub fn commutator(&self, rhs: &MatrixJet) -> Result<MatrixJet> {
        let ab = self.try_mul(rhs)?;
        let ba = rhs.try_mul(self)?;
        ab.try_sub(&ba)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> MatrixJet {
        let n = self.n;
        let mut out = MatrixJet::zero(n, self.base_point(), self.order());
        for i in 0..n {
            for j in 0..n {
                *out.get_mut(i, j) = self.get(j, i).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Jet {
        let mut acc = Jet::zero(self.base_point(), self.order());
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn derive_xi(&self) -> MatrixJet {
        let entries = self.entries.iter().map(|e| e.derive_xi()).collect();
        MatrixJet { n: self.n, entries }
    }

    pub fn derive_xibar(&self) -> MatrixJet {
        let entries = self.entries.iter().map(|e| e.derive_xibar()).collect();
        MatrixJet { n: self.n, entries }
    }

    pub fn truncate(&self, order: usize) -> MatrixJet {
        let entries = self.entries.iter().map(|e| e.truncate(order)).collect();
        MatrixJet { n: self.n, entries }
    }

    pub fn scale(&self, s: Complex64) -> MatrixJet {
        let entries = self.entries.iter().map(|e| e.scale(s)).collect();
        MatrixJet { n: self.n, entries }
    }

    /// Entrywise multiplication by a scalar jet.
    pub fn scale_jet(&self, s: &Jet) -> MatrixJet {
        let entries = self.entries.iter().map(|e| e * s).collect();
        MatrixJet { n: self.n, entries }
    }

    /// Constant-term matrix (the value at the base point).
    pub fn constant_term(&self) -> CMatrix {
        self.coeff_matrix(0, 0)
    }

    /// Matrix of `(a, b)` jet coefficients.
    pub fn coeff_matrix(&self, a: usize, b: usize) -> CMatrix {
        let mut m = CMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.get(i, j).coeff(a, b);
            }
        }
        m
    }

    /// Left-multiply by a constant matrix.
    pub fn mul_const_left(&self, m: &CMatrix) -> Result<MatrixJet> {
        if m.dim() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                found: m.dim(),
            });
        }
        let base = self.base_point();
        let order = self.order();
        let mut out = MatrixJet::zero(self.n, base, order);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Jet::zero(base, order);
                for l in 0..self.n {
                    acc = &acc + &self.get(l, j).scale(m[(i, l)]);
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Jet-level matrix inverse: LU inverse of the constant term followed
    /// by the (terminating) Neumann series in the higher-order part.
    pub fn inverse(&self) -> Result<MatrixJet> {
        let m0 = self.constant_term();
        let m0_inv = m0.lu_inverse()?;
        let base = self.base_point();
        let order = self.order();
        // E = M0^{-1}·(M − M0) has zero constant term, so E^{order+1} = 0.
        let mut high = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *high.get_mut(i, j).coeff_mut(0, 0) = Complex64::new(0.0, 0.0);
            }
        }
        let e = high.mul_const_left(&m0_inv)?;
        let mut series = MatrixJet::identity(self.n, base, order);
        let mut pow = MatrixJet::identity(self.n, base, order);
        for _ in 0..order {
            pow = pow.try_mul(&e)?.scale(Complex64::new(-1.0, 0.0));
            series = series.try_add(&pow)?;
        }
        // (I + E)^{-1}·M0^{-1}, with M0^{-1} lifted to constant jets.
        let mut m0_inv_jet = MatrixJet::zero(self.n, base, order);
        for i in 0..self.n {
            for j in 0..self.n {
                *m0_inv_jet.get_mut(i, j) = Jet::constant(m0_inv[(i, j)], base, order);
            }
        }
        series.try_mul(&m0_inv_jet)
    }

    /// Largest coefficient magnitude over all entries.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.max_abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lift_constant() {
        let j = Jet::constant(c(5.0, 0.0), c(0.0, 0.0), 2);
        assert_eq!(j.coeff(0, 0), c(5.0, 0.0));
        for d in 1..=2 {
            for b in 0..=d {
                assert_eq!(j.coeff(d - b, b), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn lift_variable_and_conjugate() {
        let base = c(1.0, 2.0);
        let x = Jet::variable(base, 2);
        assert_eq!(x.coeff(0, 0), c(1.0, 2.0));
        assert_eq!(x.coeff(1, 0), c(1.0, 0.0));
        assert_eq!(x.coeff(0, 1), c(0.0, 0.0));

        let xb = Jet::variable_conj(base, 2);
        assert_eq!(xb.coeff(0, 0), c(1.0, -2.0));
        assert_eq!(xb.coeff(0, 1), c(1.0, 0.0));
        assert_eq!(xb.coeff(1, 0), c(0.0, 0.0));

        // conjugating the coordinate jet gives the conjugate coordinate jet
        assert_eq!(x.conj(), xb);
    }

    #[test]
    fn square_of_variable() {
        let x = Jet::variable(c(2.0, 0.0), 2);
        let sq = &x * &x;
        assert_eq!(sq.coeff(0, 0), c(4.0, 0.0));
        assert_eq!(sq.coeff(1, 0), c(4.0, 0.0));
        assert_eq!(sq.coeff(2, 0), c(1.0, 0.0));
        assert_eq!(sq.coeff(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn reciprocal_geometric_series() {
        // 1/(1 + h) = 1 − h + h² − …
        let mut j = Jet::constant(c(1.0, 0.0), c(0.0, 0.0), 2);
        *j.coeff_mut(1, 0) = c(1.0, 0.0);
        let r = j.reciprocal().unwrap();
        assert!((r.coeff(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((r.coeff(1, 0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((r.coeff(2, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn reciprocal_of_vanishing_value_fails() {
        let j = Jet::variable(c(0.0, 0.0), 2);
        assert!(matches!(
            j.reciprocal(),
            Err(Error::DivisionByZeroAtBasePoint)
        ));
    }

    #[test]
    fn ln_of_product_is_sum() {
        let base = c(0.3, -0.2);
        let x = Jet::variable(base, 4);
        let a = &Jet::constant(c(2.0, 0.0), base, 4) + &x;
        let b = &Jet::constant(c(1.5, 0.0), base, 4) + &(&x * &x.conj());
        let lhs = (&a * &b).ln().unwrap();
        let rhs = &a.ln().unwrap() + &b.ln().unwrap();
        let d = &lhs - &rhs;
        assert!(d.max_abs() < 1e-13);
    }

    #[test]
    fn trace_of_adjoint_is_conjugate_trace() {
        let base = c(0.4, 0.1);
        let mut m = MatrixJet::zero(2, base, 3);
        *m.get_mut(0, 0) = Jet::variable(base, 3);
        *m.get_mut(0, 1) = Jet::variable_conj(base, 3);
        *m.get_mut(1, 0) = Jet::constant(c(1.0, -2.0), base, 3);
        *m.get_mut(1, 1) = &Jet::variable(base, 3) * &Jet::variable_conj(base, 3);
        let t = m.trace();
        let ta = m.adjoint().trace();
        let d = &ta - &t.conj();
        assert!(d.max_abs() == 0.0);
    }

    #[test]
    fn identity_commutes() {
        let base = c(0.7, 0.2);
        let id = MatrixJet::identity(3, base, 2);
        let mut a = MatrixJet::zero(3, base, 2);
        for i in 0..3 {
            for j in 0..3 {
                *a.get_mut(i, j) =
                    Jet::variable(base, 2).scale(c(i as f64 + 0.5, j as f64 - 1.0));
            }
        }
        let comm = id.commutator(&a).unwrap();
        assert!(comm.max_abs() == 0.0);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let base = c(0.0, 0.0);
        let a = MatrixJet::identity(2, base, 2);
        let b = MatrixJet::identity(3, base, 2);
        assert!(matches!(a.try_mul(&b), Err(Error::Shape { .. })));
    }

    #[test]
    fn jet_matrix_inverse() {
        let base = c(0.3, 0.4);
        let x = Jet::variable(base, 3);
        let xb = Jet::variable_conj(base, 3);
        let mut m = MatrixJet::identity(2, base, 3);
        *m.get_mut(0, 1) = x.scale(c(0.5, 0.0));
        *m.get_mut(1, 0) = xb.scale(c(0.0, -0.3));
        *m.get_mut(1, 1) = &Jet::constant(c(2.0, 0.0), base, 3) + &(&x * &xb);
        let inv = m.inverse().unwrap();
        let prod = m.try_mul(&inv).unwrap();
        let id = MatrixJet::identity(2, base, 3);
        let d = prod.try_sub(&id).unwrap();
        assert!(d.max_abs() < 1e-13);
    }

    fn arb_jet(order: usize) -> impl Strategy<Value = Jet> {
        let coeff = (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(r, i)| Complex64::new(r, i));
        proptest::collection::vec(coeff, coeff_len(order)).prop_map(move |cs| {
            let mut j = Jet::zero(Complex64::new(0.25, -0.75), order);
            j.coeffs.copy_from_slice(&cs);
            j
        })
    }

    proptest! {
        #[test]
        fn mul_is_associative(a in arb_jet(4), b in arb_jet(4), x in arb_jet(4)) {
            let lhs = &(&a * &b) * &x;
            let rhs = &a * &(&b * &x);
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            prop_assert!((&lhs - &rhs).max_abs() / scale < 1e-13);
        }

        #[test]
        fn mul_distributes_over_add(a in arb_jet(4), b in arb_jet(4), x in arb_jet(4)) {
            let lhs = &a * &(&b + &x);
            let rhs = &(&a * &b) + &(&a * &x);
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            prop_assert!((&lhs - &rhs).max_abs() / scale < 1e-13);
        }

        #[test]
        fn conjugation_is_an_involution(a in arb_jet(4)) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn reciprocal_inverts(a in arb_jet(4)) {
            prop_assume!(a.value().norm() > 0.1);
            let r = a.reciprocal().unwrap();
            let p = &a * &r;
            let one = Jet::constant(Complex64::new(1.0, 0.0), a.base_point(), 4);
            prop_assert!((&p - &one).max_abs() < 1e-10 * (1.0 + a.max_abs().powi(4)));
        }
    }
}
