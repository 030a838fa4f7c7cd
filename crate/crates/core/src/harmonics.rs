//! h-harmonics on the circle for the weight `|sin(k theta)|^lambda`:
//! explicit orthogonal bases, norms, reproducing kernels, and the closed
//! Poisson kernel at the vertices of the regular polygon.
//!
//! The basis elements restrict to sieved Gegenbauer polynomials; the
//! homogeneous polynomial representation exploits their parity, so no
//! division by the radius ever occurs. Kernel series are summed through the
//! restriction evaluators (stable to high degree), while the `BiPoly`
//! representation backs the harmonicity checks.

use crate::classical::gegenbauer_poly;
use crate::dihedral::DihedralGroup;
use crate::error::{Error, Result};
use crate::operators::{intertwine_ridge_exact, RidgeFunction, RidgeProfile};
use crate::polyring::{BiPoly, UniPoly};
use crate::sieved::{
    sieved_eval, sieved_norm, sieved_norm_normalized, sieved_poly, FamilyTag, WeightFamily,
};
use std::f64::consts::PI;

/// A degree-`n` h-harmonic basis element (`i` is 1 or 2) for `I_k` with
/// multiplicity `lambda`, carried as a homogeneous bivariate polynomial.
#[derive(Debug, Clone)]
pub struct HHarmonic {
    pub n: usize,
    pub i: usize,
    pub k: usize,
    pub lambda: f64,
    pub poly: BiPoly,
}

/// Homogenizes a parity-pure univariate polynomial to total degree `n`:
/// `sum_i c_i x1^i (x1^2 + x2^2)^{(n-i)/2}`.
fn homogenize(p: &UniPoly, n: usize) -> Result<BiPoly> {
    let scale = p.max_abs_coeff();
    let mut out = BiPoly::zero();
    let norm2 = BiPoly::x1().mul(&BiPoly::x1()).add(&BiPoly::x2().mul(&BiPoly::x2()));
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if !(n - i).is_multiple_of(2) {
            if c.abs() <= 1e-11 * scale {
                continue; // parity dust from coefficient arithmetic
            }
            return Err(Error::InvalidParameter(format!(
                "homogenization needs parity (-1)^{n}, found coefficient {c} at degree {i}"
            )));
        }
        let mut term = BiPoly::constant(c);
        for _ in 0..i {
            term = term.mul(&BiPoly::x1());
        }
        for _ in 0..((n - i) / 2) {
            term = term.mul(&norm2);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Builds the basis element `Y_{n,i}`: for `i = 1` the homogenization of the
/// minus-family polynomial, for `i = 2` that of the plus-family polynomial
/// of degree `n - 1` times `x2`.
pub fn y_basis(n: usize, i: usize, k: usize, lambda: f64) -> Result<HHarmonic> {
    if k < 2 {
        return Err(Error::InvalidParameter("h-harmonics require k >= 2".into()));
    }
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "h-harmonics require lambda >= 0, got {lambda}"
        )));
    }
    let poly = match i {
        1 => {
            let family = WeightFamily::new(FamilyTag::Minus, k, lambda)?;
            homogenize(&sieved_poly(&family, n), n)?
        }
        2 => {
            if n == 0 {
                return Err(Error::InvalidParameter(
                    "basis index 2 requires degree n >= 1".into(),
                ));
            }
            let family = WeightFamily::new(FamilyTag::Plus, k, lambda)?;
            homogenize(&sieved_poly(&family, n - 1), n - 1)?.mul(&BiPoly::x2())
        }
        other => {
            return Err(Error::IndexOutOfRange(format!(
                "basis index must be 1 or 2, got {other}"
            )))
        }
    };
    Ok(HHarmonic { n, i, k, lambda, poly })
}

/// Squared norm `H_{n,i}` of `Y_{n,i}` against the normalized circle weight:
/// `H_{n,1} = h_n(w_minus)` and `H_{n,2} = (1/2) h_{n-1}(w_plus)` with the
/// plus-family norm in its own probability normalization.
pub fn h_norm(n: usize, i: usize, k: usize, lambda: f64) -> Result<f64> {
    match i {
        1 => {
            let family = WeightFamily::new(FamilyTag::Minus, k, lambda)?;
            Ok(sieved_norm(&family, n))
        }
        2 => {
            if n == 0 {
                return Err(Error::InvalidParameter(
                    "basis index 2 requires degree n >= 1".into(),
                ));
            }
            let family = WeightFamily::new(FamilyTag::Plus, k, lambda)?;
            Ok(0.5 * sieved_norm_normalized(&family, n - 1))
        }
        other => Err(Error::IndexOutOfRange(format!(
            "basis index must be 1 or 2, got {other}"
        ))),
    }
}

fn check_unit(x: [f64; 2]) -> Result<()> {
    let norm = (x[0] * x[0] + x[1] * x[1]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "point ({}, {}) is off the unit circle",
            x[0], x[1]
        )));
    }
    Ok(())
}

/// Restriction of `Y_{n,i}` to a unit vector, through the sieved evaluators
/// (stable for degrees far beyond the polynomial representation).
fn y_restricted(n: usize, i: usize, k: usize, lambda: f64, x: [f64; 2]) -> f64 {
    let t = x[0].clamp(-1.0, 1.0);
    match i {
        1 => {
            let family = WeightFamily { tag: FamilyTag::Minus, k, lambda };
            sieved_eval(&family, n, t)
        }
        _ => {
            let family = WeightFamily { tag: FamilyTag::Plus, k, lambda };
            x[1] * sieved_eval(&family, n - 1, t)
        }
    }
}

/// Reproducing kernel of the degree-`n` h-harmonic space,
/// `P_n(x, y) = sum_i Y_{n,i}(x) Y_{n,i}(y) / H_{n,i}` for unit `x`, `y`.
pub fn reproducing_kernel_n(
    n: usize,
    k: usize,
    lambda: f64,
    x: [f64; 2],
    y: [f64; 2],
) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter("h-harmonics require k >= 2".into()));
    }
    check_unit(x)?;
    check_unit(y)?;
    let mut total = y_restricted(n, 1, k, lambda, x) * y_restricted(n, 1, k, lambda, y)
        / h_norm(n, 1, k, lambda)?;
    if n >= 1 {
        total += y_restricted(n, 2, k, lambda, x) * y_restricted(n, 2, k, lambda, y)
            / h_norm(n, 2, k, lambda)?;
    }
    Ok(total)
}

/// A truncated kernel sum together with a computed tail bound.
#[derive(Debug, Clone, Copy)]
pub struct PoissonEval {
    pub value: f64,
    pub tail_bound: f64,
}

/// Poisson kernel partial sum `sum_{n <= terms} P_n(x, y) r^n`. The tail
/// bound accumulates Cauchy–Schwarz majorants
/// `sqrt(P_n(x,x) P_n(y,y)) r^n` for 200 further degrees plus a geometric
/// remainder.
pub fn poisson_series(
    k: usize,
    lambda: f64,
    x: [f64; 2],
    y: [f64; 2],
    r: f64,
    terms: usize,
) -> Result<PoissonEval> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "poisson series requires 0 <= r < 1, got {r}"
        )));
    }
    check_unit(x)?;
    check_unit(y)?;
    let mut value = 0.0;
    for n in 0..=terms {
        value += reproducing_kernel_n(n, k, lambda, x, y)? * r.powi(n as i32);
    }
    let mut tail_bound = 0.0;
    let mut last = 0.0;
    for n in (terms + 1)..=(terms + 200) {
        let pxx = reproducing_kernel_n(n, k, lambda, x, x)?;
        let pyy = reproducing_kernel_n(n, k, lambda, y, y)?;
        last = (pxx * pyy).sqrt() * r.powi(n as i32);
        tail_bound += last;
    }
    tail_bound += 2.0 * last * r / (1.0 - r);
    Ok(PoissonEval { value, tail_bound })
}

/// Closed Poisson kernel at a polygon vertex `y_{p,k}`, `0 <= p <= 2k-1`:
/// `(1 - r^2) / ((1 - 2 r <x, y_p> + r^2) (1 - 2 (-1)^p r^k T_k(x_1) + r^{2k})^lambda)`.
pub fn poisson_closed_vertex(k: usize, lambda: f64, p: usize, x: [f64; 2], r: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter("h-harmonics require k >= 2".into()));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "poisson kernel requires 0 <= r < 1, got {r}"
        )));
    }
    if p >= 2 * k {
        return Err(Error::IndexOutOfRange(format!(
            "vertex index {p} out of range for I_{k}"
        )));
    }
    check_unit(x)?;
    let angle = p as f64 * PI / k as f64;
    let dot = angle.cos() * x[0] + angle.sin() * x[1];
    let alternating = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let t_k = crate::classical::chebyshev_t(k as i64, x[0].clamp(-1.0, 1.0));
    let denom = (1.0 - 2.0 * r * dot + r * r)
        * (1.0 - 2.0 * alternating * r.powi(k as i32) * t_k + r.powi(2 * k as i32)).powf(lambda);
    Ok((1.0 - r * r) / denom)
}

/// Two-path zonal check: the reproducing kernel against
/// `((n + k lambda)/(k lambda)) V_lambda [C_n^{k lambda}(<., y_p>)](x)`
/// computed on the exact moment path. Returns `(lhs, rhs)`.
pub fn zonal_identity_check(
    k: usize,
    lambda: f64,
    n: usize,
    p: usize,
    x: [f64; 2],
) -> Result<(f64, f64)> {
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(
            "zonal check requires lambda > 0 (k lambda appears in a denominator)".into(),
        ));
    }
    let lhs = reproducing_kernel_n(n, k, lambda, x, {
        let angle = p as f64 * PI / k as f64;
        [angle.cos(), angle.sin()]
    })?;
    let group = DihedralGroup::new(k)?;
    let profile = RidgeProfile::poly(gegenbauer_poly(n as i64, k as f64 * lambda));
    let ridge = RidgeFunction::new(&group, p, profile);
    let v = intertwine_ridge_exact(&ridge, lambda)?;
    let k_lambda = k as f64 * lambda;
    let rhs = (n as f64 + k_lambda) / k_lambda * v.eval(x);
    Ok((lhs, rhs))
}
