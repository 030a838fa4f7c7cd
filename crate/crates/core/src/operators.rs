//! Dunkl operators for the dihedral groups, the h-Laplacian, and the
//! simplex-integral intertwining operator on ridge functions.
//!
//! Every Dunkl application runs on the exact polynomial path: difference
//! quotients are exact divisions in the coefficient ring, so the
//! commutativity and intertwining checks are free of cancellation noise.
//! The intertwining operator has three routes: the exact moment path for
//! polynomial profiles, deterministic simplex quadrature, and Monte Carlo
//! with an explicit random state.

use crate::classical::{factorial, pochhammer};
use crate::dihedral::DihedralGroup;
use crate::error::{Error, Result};
use crate::polyring::{BiPoly, UniPoly};
use crate::quadrature::{dirichlet_rule, dirichlet_sample, gauss_jacobi};
use rand::Rng;
use std::f64::consts::PI;
use std::sync::Arc;

/// Multiplicity pair for the two conjugacy classes of `I_{2k}`:
/// `lambda` weights the even-index roots, `mu` the odd-index ones.
#[derive(Debug, Clone, Copy)]
pub struct MultiplicityTwo {
    pub lambda: f64,
    pub mu: f64,
}

impl MultiplicityTwo {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if lambda < 0.0 || mu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "multiplicities must be nonnegative, got ({lambda}, {mu})"
            )));
        }
        Ok(MultiplicityTwo { lambda, mu })
    }
}

/// Univariate profile of a ridge function: either an exact polynomial
/// (enables the moment path) or a black-box differentiable function
/// (quadrature and Monte Carlo paths only).
#[derive(Clone)]
pub enum RidgeProfile {
    Poly(UniPoly),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl RidgeProfile {
    pub fn poly(p: UniPoly) -> Self {
        RidgeProfile::Poly(p)
    }

    pub fn function<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        RidgeProfile::Function(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RidgeProfile::Poly(p) => p.eval(t),
            RidgeProfile::Function(f) => f(t),
        }
    }

    pub fn as_poly(&self) -> Option<&UniPoly> {
        match self {
            RidgeProfile::Poly(p) => Some(p),
            RidgeProfile::Function(_) => None,
        }
    }
}

impl std::fmt::Debug for RidgeProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RidgeProfile::Poly(p) => write!(f, "RidgeProfile::Poly({:?})", p.coeffs()),
            RidgeProfile::Function(_) => write!(f, "RidgeProfile::Function(..)"),
        }
    }
}

/// `F_p(x) = f(cos(p pi/k) x_1 + sin(p pi/k) x_2)` for a vertex index
/// `0 <= p <= 2k - 1`.
#[derive(Debug, Clone)]
pub struct RidgeFunction {
    pub profile: RidgeProfile,
    pub p: usize,
    group: DihedralGroup,
}

impl RidgeFunction {
    pub fn new(group: &DihedralGroup, p: usize, profile: RidgeProfile) -> Self {
        assert!(
            p < 2 * group.order(),
            "vertex index {p} out of range for I_{}",
            group.order()
        );
        RidgeFunction {
            profile,
            p,
            group: group.clone(),
        }
    }

    pub fn group(&self) -> &DihedralGroup {
        &self.group
    }

    /// The ridge direction `y_{p,k}`.
    pub fn direction(&self) -> [f64; 2] {
        self.group.vertex(self.p).point
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let d = self.direction();
        self.profile.eval(d[0] * x[0] + d[1] * x[1])
    }

    /// The ridge function as an exact bivariate polynomial (polynomial
    /// profiles only).
    pub fn as_bipoly(&self) -> Option<BiPoly> {
        let d = self.direction();
        self.profile
            .as_poly()
            .map(|f| BiPoly::from_profile_on_form(f, d[0], d[1]))
    }

    /// `d/dx_axis F_p`, again a ridge function with the same direction
    /// (polynomial profiles only).
    pub fn partial(&self, axis: usize) -> Option<RidgeFunction> {
        assert!(axis == 1 || axis == 2);
        let d = self.direction();
        self.profile.as_poly().map(|f| RidgeFunction {
            profile: RidgeProfile::Poly(f.derivative().scale(d[axis - 1])),
            p: self.p,
            group: self.group.clone(),
        })
    }
}

/// Dunkl operator with per-root multiplicities: the shared engine for the
/// one- and two-parameter cases.
#[allow(clippy::needless_range_loop)]
fn dunkl_apply_weighted(
    group: &DihedralGroup,
    axis: usize,
    kappa: &[f64],
    f: &BiPoly,
) -> Result<BiPoly> {
    assert!(axis == 1 || axis == 2, "axis must be 1 or 2");
    assert_eq!(kappa.len(), group.order());
    let mut out = f.partial(axis);
    let scale = f.max_abs_coeff();
    for j in 0..group.order() {
        if kappa[j] == 0.0 {
            continue;
        }
        let reflected = f.compose_linear(group.reflection(j));
        let diff = f.sub(&reflected);
        // a reflection fixing f leaves only rounding dust in the difference
        if diff.max_abs_coeff() <= 1e-13 * scale {
            continue;
        }
        let v = group.root(j);
        let quotient = diff.divide_by_root_form(v)?;
        out = out.add(&quotient.scale(kappa[j] * v[axis - 1]));
    }
    Ok(out)
}

/// One-parameter Dunkl operator `D_axis` for `I_k`: maps homogeneous degree
/// `n` into degree `n - 1`.
pub fn dunkl_apply(group: &DihedralGroup, axis: usize, lambda: f64, f: &BiPoly) -> Result<BiPoly> {
    dunkl_apply_weighted(group, axis, &vec![lambda; group.order()], f)
}

/// Two-parameter Dunkl operator for `I_{2k}`: even-index roots carry
/// `lambda`, odd-index roots carry `mu`. Requires even group order.
pub fn dunkl_apply_two_param(
    group: &DihedralGroup,
    axis: usize,
    mult: MultiplicityTwo,
    f: &BiPoly,
) -> Result<BiPoly> {
    if !group.order().is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "two-parameter Dunkl operator needs even group order, got {}",
            group.order()
        )));
    }
    let kappa: Vec<f64> = (0..group.order())
        .map(|j| if j % 2 == 0 { mult.lambda } else { mult.mu })
        .collect();
    dunkl_apply_weighted(group, axis, &kappa, f)
}

/// The h-Laplacian `Delta_h = D_1^2 + D_2^2`.
pub fn h_laplacian(group: &DihedralGroup, lambda: f64, f: &BiPoly) -> Result<BiPoly> {
    let d1 = dunkl_apply(group, 1, lambda, f)?;
    let d2 = dunkl_apply(group, 2, lambda, f)?;
    Ok(dunkl_apply(group, 1, lambda, &d1)?.add(&dunkl_apply(group, 2, lambda, &d2)?))
}

/// The linear forms `l_j(x) = cos((p + 2j) pi / k) x_1 + sin((p + 2j) pi / k) x_2`
/// whose Dirichlet average realizes `V_lambda F_p`.
fn ridge_linear_forms(k: usize, p: usize) -> Vec<[f64; 2]> {
    (0..k)
        .map(|j| {
            let angle = (p + 2 * j) as f64 * PI / k as f64;
            [angle.cos(), angle.sin()]
        })
        .collect()
}

/// Exact moment path for `V_lambda F_p` on polynomial profiles: expands
/// `f(sum_j u_j l_j(x))` multinomially and replaces every `u`-monomial by its
/// closed Dirichlet moment. The result is homogeneous of the profile degree
/// componentwise, and `V_lambda 1 = 1`.
///
/// `lambda = 0` short-circuits to the identity operator (the Dirichlet
/// measure degenerates to a point mass at `u = (1, 0, ..., 0)`).
pub fn intertwine_ridge_exact(ridge: &RidgeFunction, lambda: f64) -> Result<BiPoly> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "intertwining operator requires lambda >= 0, got {lambda}"
        )));
    }
    let profile = ridge.profile.as_poly().ok_or_else(|| {
        Error::InvalidParameter("exact intertwining path requires a polynomial profile".into())
    })?;
    if lambda == 0.0 {
        return Ok(ridge.as_bipoly().expect("polynomial profile"));
    }
    let k = ridge.group().order();
    let coeffs = profile.coeffs();
    if coeffs.is_empty() {
        return Ok(BiPoly::zero());
    }
    let max_deg = coeffs.len() - 1;
    let forms: Vec<BiPoly> = ridge_linear_forms(k, ridge.p)
        .into_iter()
        .map(|d| BiPoly::linear_form(d[0], d[1]))
        .collect();
    // powers of each linear form up to the profile degree
    let mut powers: Vec<Vec<BiPoly>> = Vec::with_capacity(k);
    for form in &forms {
        let mut row = vec![BiPoly::constant(1.0)];
        for e in 1..=max_deg {
            row.push(row[e - 1].mul(form));
        }
        powers.push(row);
    }

    let mut result = BiPoly::zero();
    for (n, &a_n) in coeffs.iter().enumerate() {
        if a_n == 0.0 {
            continue;
        }
        let scale = a_n * factorial(n) / pochhammer(k as f64 * lambda + 1.0, n);
        let mut term = BiPoly::zero();
        weighted_monomial_sum(
            &powers,
            lambda,
            0,
            n,
            1.0,
            &BiPoly::constant(1.0),
            &mut term,
        );
        result = result.add(&term.scale(scale));
    }
    Ok(result)
}

/// Recursive enumeration of multi-indices `|m| = remaining` over the `k`
/// slots, accumulating `prod_j l_j^{m_j} * poch(alpha_j, m_j) / m_j!` where
/// `alpha_0 = lambda + 1` and `alpha_j = lambda` otherwise.
fn weighted_monomial_sum(
    powers: &[Vec<BiPoly>],
    lambda: f64,
    slot: usize,
    remaining: usize,
    coeff: f64,
    partial: &BiPoly,
    out: &mut BiPoly,
) {
    let k = powers.len();
    if slot == k - 1 {
        let alpha = if slot == 0 { lambda + 1.0 } else { lambda };
        let c = coeff * pochhammer(alpha, remaining) / factorial(remaining);
        *out = out.add(&partial.mul(&powers[slot][remaining]).scale(c));
        return;
    }
    let alpha = if slot == 0 { lambda + 1.0 } else { lambda };
    for e in 0..=remaining {
        let c = coeff * pochhammer(alpha, e) / factorial(e);
        let next = partial.mul(&powers[slot][e]);
        weighted_monomial_sum(powers, lambda, slot + 1, remaining - e, c, &next, out);
    }
}

/// Deterministic quadrature path for `V_lambda F_p` at a point: applies the
/// Dirichlet probability rule of the stated order to the profile.
pub fn intertwine_ridge_quad(
    ridge: &RidgeFunction,
    lambda: f64,
    x: [f64; 2],
    order: usize,
) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "intertwining operator requires lambda >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(ridge.eval(x));
    }
    let k = ridge.group().order();
    let values: Vec<f64> = ridge_linear_forms(k, ridge.p)
        .iter()
        .map(|d| d[0] * x[0] + d[1] * x[1])
        .collect();
    let rule = dirichlet_rule(k, lambda, order)?;
    Ok(rule.integrate(|u| {
        let arg: f64 = u.iter().zip(&values).map(|(&ui, &vi)| ui * vi).sum();
        ridge.profile.eval(arg)
    }))
}

/// Monte Carlo estimate with standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_err: f64,
}

/// Monte Carlo path for `V_lambda F_p` at a point, over an explicit random
/// state. Returns the sample mean and its standard error rather than
/// failing on noise.
pub fn intertwine_ridge_monte_carlo<R: Rng + ?Sized>(
    ridge: &RidgeFunction,
    lambda: f64,
    x: [f64; 2],
    samples: usize,
    rng: &mut R,
) -> Result<MonteCarloEstimate> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "intertwining operator requires lambda >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(MonteCarloEstimate {
            value: ridge.eval(x),
            std_err: 0.0,
        });
    }
    let k = ridge.group().order();
    let values: Vec<f64> = ridge_linear_forms(k, ridge.p)
        .iter()
        .map(|d| d[0] * x[0] + d[1] * x[1])
        .collect();
    let points = dirichlet_sample(k, lambda, rng, samples)?;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for point in &points {
        let u0 = 1.0 - point.iter().sum::<f64>();
        let arg = u0 * values[0]
            + point
                .iter()
                .zip(&values[1..])
                .map(|(&ui, &vi)| ui * vi)
                .sum::<f64>();
        let v = ridge.profile.eval(arg);
        mean += v;
        m2 += v * v;
    }
    let n = samples as f64;
    mean /= n;
    m2 /= n;
    let variance = (m2 - mean * mean).max(0.0);
    Ok(MonteCarloEstimate {
        value: mean,
        std_err: (variance / n).sqrt(),
    })
}

/// The classical double-integral intertwining transform for `I_2` with
/// parameters `(lambda, mu)`: tensor Gauss–Jacobi with the `(1+s)(1+t)`
/// factors folded into the integrand. Serves as an independent cross-oracle
/// for the simplex path at `k = 2`.
pub fn intertwine_z2<F: Fn(f64, f64) -> f64>(
    f: F,
    lambda: f64,
    mu: f64,
    x: [f64; 2],
    order: usize,
) -> Result<f64> {
    if lambda <= 0.0 || mu <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "intertwine_z2 requires lambda, mu > 0, got ({lambda}, {mu})"
        )));
    }
    let n = (order + 1).div_ceil(2).max(8);
    let s_rule = gauss_jacobi(n, mu - 1.0, mu - 1.0)?;
    let t_rule = gauss_jacobi(n, lambda - 1.0, lambda - 1.0)?;
    let mut total = 0.0;
    for (&s, &ws) in s_rule.nodes.iter().zip(&s_rule.weights) {
        for (&t, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
            total += ws * wt * (1.0 + s) * (1.0 + t) * f(s * x[0], t * x[1]);
        }
    }
    Ok(total / (s_rule.mass() * t_rule.mass()))
}
