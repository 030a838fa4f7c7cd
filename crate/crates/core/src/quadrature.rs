//! Integration machinery: Gauss–Jacobi interval rules, singular circle rules
//! for `|sin(k theta)|^{2 lambda}`-type weights, and simplex rules, moments
//! and samplers for Dirichlet weights.
//!
//! Circle integration never builds a rule directly on `[-1, 1]` with
//! `|U_{k-1}|` factors: the circle is split into `2k` panels on which
//! `s = cos(k theta - j pi)` turns the singular factor into
//! `(1 - s^2)^{lambda - 1/2}`, which Gauss–Jacobi absorbs exactly.

use crate::classical::{self, ln_gamma, pochhammer};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use std::f64::consts::PI;

/// Multi-exponent for simplex moments, one entry per barycentric coordinate
/// `u_0 ... u_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Weight factors a circle rule can fold into its weights, beyond the
/// singular `|sin(k theta)|^{2 lambda}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleExtra {
    None,
    /// `sin^2 theta`
    SinSq,
    /// `1 + cos theta`
    OnePlusCos,
    /// `1 - cos theta`
    OneMinusCos,
}

impl CircleExtra {
    fn eval(&self, theta: f64) -> f64 {
        match self {
            CircleExtra::None => 1.0,
            CircleExtra::SinSq => theta.sin() * theta.sin(),
            CircleExtra::OnePlusCos => 1.0 + theta.cos(),
            CircleExtra::OneMinusCos => 1.0 - theta.cos(),
        }
    }
}

/// Domain descriptor for a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// `[-1, 1]` against `(1-t)^alpha (1+t)^beta`.
    Interval { alpha: f64, beta: f64 },
    /// `[0, 2 pi]` against `|sin(k theta)|^{2 lambda}` times an extra factor.
    Circle {
        k: usize,
        lambda: f64,
        extra: CircleExtra,
    },
}

/// Node-weight list with a declared polynomial (or trigonometric) exactness
/// degree. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
    pub domain: Domain,
}

impl Rule1D {
    /// Integrates `f` against the rule's weight (unnormalized).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Total mass of the weight (the integral of 1).
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Integrates `f` against the weight normalized to unit mass.
    pub fn integrate_normalized<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.integrate(f) / self.mass()
    }
}

/// Evaluates `P_n^{(alpha,beta)}` and its derivative at `t`.
fn jacobi_with_deriv(n: usize, alpha: f64, beta: f64, t: f64) -> (f64, f64) {
    let value = classical::jacobi(n as i64, alpha, beta, t);
    let deriv = classical::jacobi_deriv(n as i64, alpha, beta, t);
    (value, deriv)
}

/// Raw `L^2` norm of `P_m^{(alpha,beta)}` against `(1-t)^alpha (1+t)^beta`.
/// The `m = 0` case is written through `Gamma(alpha + beta + 2)` so the
/// `alpha + beta = -1` boundary (Chebyshev weights) stays finite.
fn jacobi_raw_norm(m: usize, alpha: f64, beta: f64) -> f64 {
    let m_f = m as f64;
    if m == 0 {
        let log = (alpha + beta + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0)
            + ln_gamma(beta + 1.0)
            - ln_gamma(alpha + beta + 2.0);
        return log.exp();
    }
    let log = (alpha + beta + 1.0) * 2f64.ln() + ln_gamma(m_f + alpha + 1.0)
        + ln_gamma(m_f + beta + 1.0)
        - ln_gamma(m_f + alpha + beta + 1.0)
        - ln_gamma(m_f + 1.0);
    log.exp() / (2.0 * m_f + alpha + beta + 1.0)
}

/// Gauss–Jacobi rule with `n` nodes for `(1-t)^alpha (1+t)^beta` on
/// `[-1, 1]`; exact for polynomials of degree `2n - 1`.
///
/// Nodes are found by Newton iteration seeded through the interlacing of
/// consecutive Jacobi polynomials, weights through the Christoffel function
/// of the orthonormalized family.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Rule1D> {
    if n == 0 {
        return Err(Error::InvalidParameter("gauss_jacobi requires n >= 1".into()));
    }
    if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gauss_jacobi requires alpha, beta > -1, got ({alpha}, {beta})"
        )));
    }

    // roots of P_m, refined level by level through interlacing brackets
    let mut roots = vec![(beta - alpha) / (alpha + beta + 2.0)];
    for m in 2..=n {
        let mut brackets = Vec::with_capacity(m + 1);
        brackets.push(-1.0);
        brackets.extend_from_slice(&roots);
        brackets.push(1.0);
        let mut next = Vec::with_capacity(m);
        for pair in brackets.windows(2) {
            next.push(refine_root(m, alpha, beta, pair[0], pair[1]));
        }
        roots = next;
    }

    // Christoffel weights: w_i = 1 / sum_{m<n} phat_m(x_i)^2
    let norms: Vec<f64> = (0..n).map(|m| jacobi_raw_norm(m, alpha, beta)).collect();
    let weights: Vec<f64> = roots
        .iter()
        .map(|&x| {
            let mut sum = 0.0;
            for (m, h) in norms.iter().enumerate() {
                let p = classical::jacobi(m as i64, alpha, beta, x);
                sum += p * p / h;
            }
            1.0 / sum
        })
        .collect();

    Ok(Rule1D {
        nodes: roots,
        weights,
        exact_degree: 2 * n - 1,
        domain: Domain::Interval { alpha, beta },
    })
}

/// Bisection to locate the sign change, then Newton polish to ~1e-15.
fn refine_root(m: usize, alpha: f64, beta: f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = classical::jacobi(m as i64, alpha, beta, lo);
    let mut sign_lo = f_lo.signum();
    if sign_lo == 0.0 {
        sign_lo = 1.0;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let f_mid = classical::jacobi(m as i64, alpha, beta, mid);
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..12 {
        let (value, deriv) = jacobi_with_deriv(m, alpha, beta, x);
        if deriv == 0.0 {
            break;
        }
        let step = value / deriv;
        let candidate = x - step;
        if candidate <= lo || candidate >= hi {
            break;
        }
        x = candidate;
        if step.abs() < 1e-15 {
            break;
        }
    }
    x
}

/// Rule on `[0, 2 pi]` integrating
/// `g(theta) |sin(k theta)|^{2 lambda} * extra(theta) d theta`
/// by splitting into `2k` panels and substituting `s = cos` of the panel
/// phase, so the singular factor becomes `(1 - s^2)^{lambda - 1/2}`.
///
/// Exact for trigonometric polynomials `g` of degree up to `order` against
/// the singular factor (panel sums annihilate frequencies that are not
/// multiples of `2k` exactly, and the Gauss rule handles the rest).
pub fn circle_rule(k: usize, lambda: f64, extra: CircleExtra, order: usize) -> Result<Rule1D> {
    if k == 0 {
        return Err(Error::InvalidParameter("circle_rule requires k >= 1".into()));
    }
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "circle_rule requires lambda >= 0, got {lambda}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("circle_rule requires order >= 1".into()));
    }
    // per-panel polynomial degree is order/k (+2 for the extra factor)
    let n_panel = (order / (2 * k) + 4).max(16);
    let base = gauss_jacobi(n_panel, lambda - 0.5, lambda - 0.5)?;
    let k_f = k as f64;
    let mut nodes = Vec::with_capacity(2 * k * n_panel);
    let mut weights = Vec::with_capacity(2 * k * n_panel);
    for j in 0..2 * k {
        for (&s, &w) in base.nodes.iter().zip(&base.weights) {
            let phi = s.clamp(-1.0, 1.0).acos();
            let theta = (j as f64 * PI + phi) / k_f;
            nodes.push(theta);
            weights.push(w / k_f * extra.eval(theta));
        }
    }
    Ok(Rule1D {
        nodes,
        weights,
        exact_degree: order,
        domain: Domain::Circle { k, lambda, extra },
    })
}

/// Node-weight rule on the simplex `T^{k-1}`; points are stored as
/// `(u_1, ..., u_{k-1})` with `u_0 = 1 - sum u_i` implied. Weights are
/// normalized to a probability rule; `raw_mass` is the integral of 1 against
/// the bare (unnormalized) weight.
#[derive(Debug, Clone)]
pub struct SimplexRule {
    pub k: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub raw_mass: f64,
}

impl SimplexRule {
    /// Applies the probability rule to `f(u_0, ..., u_{k-1})`, with
    /// compensated summation (rules in high dimension can carry millions of
    /// nodes, where naive accumulation already costs three digits).
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        let mut full = vec![0.0; self.k];
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for (point, &w) in self.points.iter().zip(&self.weights) {
            full[0] = 1.0 - point.iter().sum::<f64>();
            full[1..].copy_from_slice(point);
            let term = w * f(&full) - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        sum
    }
}

/// Deterministic stick-breaking tensor rule for the weight
/// `prod_j u_j^{exponents[j]}` on `T^{k-1}` (exponents on all `k`
/// barycentric coordinates, each `> -1`). Per-axis Gauss–Jacobi rules carry
/// the exact endpoint exponents, so facet singularities are absorbed with no
/// regularization anywhere.
pub fn simplex_rule(exponents: &[f64], order: usize) -> Result<SimplexRule> {
    let k = exponents.len();
    if k == 0 {
        return Err(Error::InvalidParameter("simplex_rule requires k >= 1".into()));
    }
    if exponents.iter().any(|&c| c <= -1.0) {
        return Err(Error::InvalidParameter(
            "simplex_rule requires all exponents > -1".into(),
        ));
    }
    if k == 1 {
        // T^0 is a single point u_0 = 1
        return Ok(SimplexRule {
            k,
            points: vec![Vec::new()],
            weights: vec![1.0],
            raw_mass: 1.0,
        });
    }
    let n_axis = (order + 1).div_ceil(2).max(4);
    // axis i = 1..k-1 integrates s^{c_i} (1-s)^{e_i} with the tail exponent
    // e_i collecting everything that still depends on (1 - s_i)
    let mut axis_rules = Vec::with_capacity(k - 1);
    let mut raw_mass = 1.0;
    for i in 1..k {
        let c_i = exponents[i];
        let tail: f64 = exponents[i + 1..].iter().sum::<f64>() + exponents[0];
        let e_i = tail + (k - 1 - i) as f64;
        let gj = gauss_jacobi(n_axis, e_i, c_i)?;
        let scale = 0.5f64.powf(c_i + e_i + 1.0);
        let nodes: Vec<f64> = gj.nodes.iter().map(|&x| 0.5 * (1.0 + x)).collect();
        let weights: Vec<f64> = gj.weights.iter().map(|&w| w * scale).collect();
        raw_mass *= weights.iter().sum::<f64>();
        axis_rules.push((nodes, weights));
    }

    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut stack_point = vec![0.0; k - 1];
    build_tensor(
        &axis_rules,
        0,
        1.0,
        1.0,
        &mut stack_point,
        &mut points,
        &mut weights,
    );
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(SimplexRule {
        k,
        points,
        weights,
        raw_mass,
    })
}

fn build_tensor(
    axis_rules: &[(Vec<f64>, Vec<f64>)],
    depth: usize,
    remaining: f64,
    weight: f64,
    point: &mut Vec<f64>,
    points: &mut Vec<Vec<f64>>,
    weights: &mut Vec<f64>,
) {
    if depth == axis_rules.len() {
        points.push(point.clone());
        weights.push(weight);
        return;
    }
    let (nodes, ws) = &axis_rules[depth];
    for (&s, &w) in nodes.iter().zip(ws) {
        point[depth] = remaining * s;
        build_tensor(
            axis_rules,
            depth + 1,
            remaining * (1.0 - s),
            weight * w,
            point,
            points,
            weights,
        );
    }
}

/// Probability rule for the Dirichlet density with parameter vector
/// `(lambda + 1, lambda, ..., lambda)`, i.e. the normalized measure
/// `a_lambda^(k) u_0^lambda prod u_i^{lambda - 1}` on `T^{k-1}`.
pub fn dirichlet_rule(k: usize, lambda: f64, order: usize) -> Result<SimplexRule> {
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dirichlet_rule requires lambda > 0, got {lambda} (lambda = 0 degenerates to a point mass)"
        )));
    }
    let mut exponents = vec![lambda - 1.0; k];
    exponents[0] = lambda;
    simplex_rule(&exponents, order)
}

/// Closed Dirichlet moment
/// `E[prod u_j^{m_j}] = (lambda+1)_{m_0} prod_{i>=1} (lambda)_{m_i} / (k lambda + 1)_{|m|}`
/// under the normalized measure of `dirichlet_rule`.
pub fn dirichlet_moment(k: usize, lambda: f64, m: &MultiIndex) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dirichlet_moment requires lambda > 0, got {lambda}"
        )));
    }
    if m.0.len() != k {
        return Err(Error::InvalidParameter(format!(
            "multi-index length {} does not match k = {k}",
            m.0.len()
        )));
    }
    let mut numerator = pochhammer(lambda + 1.0, m.0[0]);
    for &mi in &m.0[1..] {
        numerator *= pochhammer(lambda, mi);
    }
    Ok(numerator / pochhammer(k as f64 * lambda + 1.0, m.total()))
}

/// I.i.d. draws from `Dirichlet(lambda + 1, lambda, ..., lambda)` via
/// normalized Gamma variates. Points come back as `(u_1, ..., u_{k-1})`;
/// the random state is the caller's, so a fixed seed gives a bit-identical
/// stream.
pub fn dirichlet_sample<R: Rng + ?Sized>(
    k: usize,
    lambda: f64,
    rng: &mut R,
    count: usize,
) -> Result<Vec<Vec<f64>>> {
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dirichlet_sample requires lambda > 0, got {lambda}"
        )));
    }
    let head = Gamma::new(lambda + 1.0, 1.0)
        .map_err(|e| Error::InvalidParameter(format!("gamma sampler: {e}")))?;
    let rest = Gamma::new(lambda, 1.0)
        .map_err(|e| Error::InvalidParameter(format!("gamma sampler: {e}")))?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let g0 = head.sample(rng);
        let mut gs: Vec<f64> = (1..k).map(|_| rest.sample(rng)).collect();
        let total: f64 = g0 + gs.iter().sum::<f64>();
        for g in &mut gs {
            *g /= total;
        }
        out.push(gs);
    }
    Ok(out)
}
