//! Holomorphic polynomial seed vectors, the homogeneous field data that
//! the whole solution ladder is built from.
//!
//! A seed is an N-component vector of polynomials in `ξ`; it is defined
//! only up to multiplication by a scalar function, so regularization
//! (clearing poles by a polynomial factor) and common-factor removal
//! leave every derived projector unchanged.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math under no_std
use num_traits::Float;

use crate::error::Error;
use crate::jet::Jet;
use crate::Result;

/// N-component vector of polynomials in `ξ`, coefficients ascending in
/// degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedVector {
    dim: usize,
    components: Vec<Vec<Complex64>>,
    label: String,
}

impl SeedVector {
    /// Build a seed, validating the dimension and that some component is
    /// a nonzero polynomial.
    pub fn new(components: Vec<Vec<Complex64>>, label: impl Into<String>) -> Result<Self> {
        let dim = components.len();
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if components
            .iter()
            .all(|c| c.iter().all(|z| z.norm() == 0.0))
        {
            return Err(Error::ZeroVector);
        }
        Ok(SeedVector {
            dim,
            components,
            label: label.into(),
        })
    }

    /// The Veronese seed `f_j = sqrt(C(N−1, j))·ξ^j`, the canonical
    /// holomorphic solution with constant-curvature surfaces.
    pub fn veronese(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let mut components = Vec::with_capacity(n);
        for j in 0..n {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); j + 1];
            coeffs[j] = Complex64::new(binomial(n - 1, j).sqrt(), 0.0);
            components.push(coeffs);
        }
        let mut label = String::from("veronese-");
        push_usize(&mut label, n);
        SeedVector::new(components, label)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    /// Degree of the highest nonvanishing coefficient over all components.
    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .map(|c| poly_degree(c))
            .max()
            .unwrap_or(0)
    }

    /// Horner evaluation lifted to jet arithmetic. Components are
    /// holomorphic, so all `∂̄` coefficients vanish identically.
    pub fn evaluate(&self, base: Complex64, order: usize) -> Vec<Jet> {
        let x = Jet::variable(base, order);
        self.components
            .iter()
            .map(|coeffs| {
                let mut acc = Jet::zero(base, order);
                for c in coeffs.iter().rev() {
                    acc = &(&acc * &x) + &Jet::constant(*c, base, order);
                }
                acc
            })
            .collect()
    }

    /// Plain (non-jet) evaluation at a point.
    pub fn evaluate_value(&self, point: Complex64) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|coeffs| poly_eval(coeffs, point))
            .collect()
    }

    /// Multiply every component by a scalar polynomial `φ(ξ)`; wherever
    /// `φ` does not vanish this leaves all projectors unchanged.
    pub fn scaled_by(&self, factor: &[Complex64]) -> SeedVector {
        let components = self
            .components
            .iter()
            .map(|c| poly_mul(c, factor))
            .collect();
        SeedVector {
            dim: self.dim,
            components,
            label: self.label.clone(),
        }
    }

    /// Multiply every component by `(ξ − pole)^p`, the singularity-removing
    /// factor for an order-`p` pole of a meromorphic seed.
    pub fn regularize(&self, pole: Complex64, p: usize) -> SeedVector {
        let mut factor = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..p {
            factor = poly_mul(&factor, &[-pole, Complex64::new(1.0, 0.0)]);
        }
        let components = self
            .components
            .iter()
            .map(|c| poly_mul(c, &factor))
            .collect();
        SeedVector {
            dim: self.dim,
            components,
            label: self.label.clone(),
        }
    }

    /// Divide all components by their polynomial GCD, detected through
    /// shared roots: the resulting seed generates the identical projector
    /// ladder.
    pub fn normalize_common_factor(&self) -> SeedVector {
        let mut components: Vec<Vec<Complex64>> =
            self.components.iter().map(|c| trim_poly(c)).collect();
        // Candidate roots come from the nonzero component of lowest degree.
        loop {
            let pivot = components
                .iter()
                .filter(|c| !is_zero_poly(c))
                .min_by_key(|c| poly_degree(c));
            let pivot = match pivot {
                Some(p) if poly_degree(p) > 0 => p.clone(),
                _ => break,
            };
            let roots = poly_roots(&pivot);
            let mut divided = false;
            for &r in &roots {
                if components.iter().all(|c| is_root_of(c, r)) {
                    for c in components.iter_mut() {
                        if !is_zero_poly(c) {
                            *c = deflate(c, r);
                        }
                    }
                    divided = true;
                    break;
                }
            }
            if !divided {
                break;
            }
        }
        SeedVector {
            dim: self.dim,
            components,
            label: self.label.clone(),
        }
    }
}

fn push_usize(s: &mut String, mut n: usize) {
    let mut digits = Vec::new();
    loop {
        digits.push(b'0' + (n % 10) as u8);
        n /= 10;
        if n == 0 {
            break;
        }
    }
    for d in digits.iter().rev() {
        s.push(*d as char);
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Horner evaluation of a coefficient list (ascending degree) at a point.
pub fn poly_eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn max_coeff(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn is_zero_poly(c: &[Complex64]) -> bool {
    max_coeff(c) == 0.0
}

/// Drop trailing coefficients that are negligible against the largest one.
fn trim_poly(c: &[Complex64]) -> Vec<Complex64> {
    let scale = max_coeff(c);
    if scale == 0.0 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    let mut out: Vec<Complex64> = c.to_vec();
    while out.len() > 1 && out.last().unwrap().norm() <= 1e-13 * scale {
        out.pop();
    }
    out
}

fn poly_degree(c: &[Complex64]) -> usize {
    trim_poly(c).len() - 1
}

fn is_root_of(c: &[Complex64], r: Complex64) -> bool {
    if is_zero_poly(c) {
        return true;
    }
    let scale: f64 = c
        .iter()
        .enumerate()
        .map(|(i, z)| z.norm() * r.norm().max(1.0).powi(i as i32))
        .sum();
    poly_eval(c, r).norm() <= 1e-9 * scale.max(1.0)
}

/// Synthetic division by `(ξ − r)`, discarding the (small) remainder.
fn deflate(c: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let c = trim_poly(c);
    let deg = c.len() - 1;
    if deg == 0 {
        return c;
    }
    let mut out = vec![Complex64::new(0.0, 0.0); deg];
    let mut carry = c[deg];
    for i in (0..deg).rev() {
        out[i] = carry;
        carry = c[i] + carry * r;
    }
    out
}

/// All roots of a low-degree polynomial by Durand–Kerner iteration.
pub(crate) fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let c = trim_poly(c);
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    // Monic normalization.
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    for _ in 0..600 {
        let mut shift = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-280 {
                continue;
            }
            let delta = poly_eval(&monic, roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 * radius {
            break;
        }
    }
    roots
}
