//! Exact algebra of univariate and bivariate real-coefficient polynomials.
//!
//! This is the substrate the Dunkl operators act on: ring arithmetic,
//! evaluation, coefficient-shift differentiation, composition with linear
//! maps, and exact division by a root linear form `<x, v>`. "Exact" always
//! means "residual below a stated tolerance", never bit-exactness, because
//! `cos(j*pi/k)` is irrational for most `k`.

use crate::error::{Error, Result};

/// Univariate polynomial in the monomial basis, `a_0 + a_1 t + ... + a_n t^n`.
///
/// The coefficient vector is kept trimmed: the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<f64>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: f64) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// `self(inner(t))` by Horner with polynomial arithmetic.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(c));
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m: f64, &c| m.max(c.abs()))
    }

    /// Parses expressions like `t^4`, `1 + 2*t^3 - 0.5*t` into a polynomial.
    pub fn parse(input: &str) -> Result<UniPoly> {
        let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::InvalidParameter("empty polynomial expression".into()));
        }
        let mut coeffs: Vec<f64> = Vec::new();
        let mut add = |deg: usize, c: f64| {
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0.0);
            }
            coeffs[deg] += c;
        };
        // split into signed terms
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.is_empty() {
                terms.push(current.clone());
                current.clear();
            }
            current.push(ch);
        }
        terms.push(current);
        for term in terms {
            let term = term.trim_start_matches('+');
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1.0, rest),
                None => (1.0, term),
            };
            let bad = || Error::InvalidParameter(format!("cannot parse term '{term}'"));
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_str, var_part) = match body.find('t') {
                Some(pos) => (&body[..pos], &body[pos..]),
                None => (body, ""),
            };
            let coeff_str = coeff_str.trim_end_matches('*');
            let coeff: f64 = if coeff_str.is_empty() {
                1.0
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let degree = if var_part.is_empty() {
                0
            } else if var_part == "t" {
                1
            } else {
                let exp = var_part.strip_prefix("t^").ok_or_else(bad)?;
                exp.parse().map_err(|_| bad())?
            };
            add(degree, sign * coeff);
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

/// Dense bivariate polynomial: `grid[i][j]` is the coefficient of
/// `x1^i x2^j`. The zero polynomial is canonical (empty grid) and the cached
/// total degree is recomputed on every construction.
#[derive(Debug, Clone)]
pub struct BiPoly {
    rows: usize,
    cols: usize,
    grid: Vec<f64>,
    degree: Option<usize>,
}

impl BiPoly {
    fn from_grid(rows: usize, cols: usize, grid: Vec<f64>) -> Self {
        debug_assert_eq!(grid.len(), rows * cols);
        let mut max_i = 0usize;
        let mut max_j = 0usize;
        let mut degree = None;
        for i in 0..rows {
            for j in 0..cols {
                if grid[i * cols + j] != 0.0 {
                    max_i = max_i.max(i);
                    max_j = max_j.max(j);
                    degree = Some(degree.unwrap_or(0).max(i + j));
                }
            }
        }
        if degree.is_none() {
            return BiPoly {
                rows: 0,
                cols: 0,
                grid: Vec::new(),
                degree: None,
            };
        }
        // shrink to the bounding box so stale zero fringes never accumulate
        let (nr, nc) = (max_i + 1, max_j + 1);
        if (nr, nc) == (rows, cols) {
            BiPoly {
                rows,
                cols,
                grid,
                degree,
            }
        } else {
            let mut g = vec![0.0; nr * nc];
            for i in 0..nr {
                for j in 0..nc {
                    g[i * nc + j] = grid[i * cols + j];
                }
            }
            BiPoly {
                rows: nr,
                cols: nc,
                grid: g,
                degree,
            }
        }
    }

    pub fn zero() -> Self {
        BiPoly {
            rows: 0,
            cols: 0,
            grid: Vec::new(),
            degree: None,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_grid(1, 1, vec![c])
    }

    pub fn x1() -> Self {
        Self::linear_form(1.0, 0.0)
    }

    pub fn x2() -> Self {
        Self::linear_form(0.0, 1.0)
    }

    /// `a*x1 + b*x2`
    pub fn linear_form(a: f64, b: f64) -> Self {
        Self::from_grid(2, 2, vec![0.0, b, a, 0.0])
    }

    /// Coefficient of `x1^i x2^j` (zero outside the stored grid).
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i < self.rows && j < self.cols {
            self.grid[i * self.cols + j]
        } else {
            0.0
        }
    }

    /// Max total degree of a nonzero entry; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    /// The coefficient grid as nested rows, `grid[i][j]` for `x1^i x2^j`.
    pub fn to_grid(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.grid[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Builds a polynomial from nested coefficient rows (`grid[i][j]` for
    /// `x1^i x2^j`); ragged rows are padded with zeros.
    pub fn from_grid_rows(rows: &[Vec<f64>]) -> BiPoly {
        let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        if rows.is_empty() || cols == 0 {
            return BiPoly::zero();
        }
        let mut grid = vec![0.0; rows.len() * cols];
        for (i, row) in rows.iter().enumerate() {
            grid[i * cols..i * cols + row.len()].copy_from_slice(row);
        }
        BiPoly::from_grid(rows.len(), cols, grid)
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        // Horner in x1, inner Horner in x2.
        let mut acc = 0.0;
        for i in (0..self.rows).rev() {
            let row = &self.grid[i * self.cols..(i + 1) * self.cols];
            let inner = row.iter().rev().fold(0.0, |a, &c| a * x[1] + c);
            acc = acc * x[0] + inner;
        }
        acc
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let rows = self.rows.max(other.rows);
        let cols = self.cols.max(other.cols);
        let mut grid = vec![0.0; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                grid[i * cols + j] += self.grid[i * self.cols + j];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                grid[i * cols + j] += other.grid[i * other.cols + j];
            }
        }
        BiPoly::from_grid(rows, cols, grid)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> BiPoly {
        BiPoly::from_grid(
            self.rows,
            self.cols,
            self.grid.iter().map(|&c| c * s).collect(),
        )
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let rows = self.rows + other.rows - 1;
        let cols = self.cols + other.cols - 1;
        let mut grid = vec![0.0; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.grid[i * self.cols + j];
                if a == 0.0 {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        grid[(i + p) * cols + (j + q)] += a * other.grid[p * other.cols + q];
                    }
                }
            }
        }
        BiPoly::from_grid(rows, cols, grid)
    }

    /// Exact coefficient-shift partial derivative; `axis` is 1 or 2.
    pub fn partial(&self, axis: usize) -> BiPoly {
        assert!(axis == 1 || axis == 2, "axis must be 1 or 2");
        if self.is_zero() {
            return BiPoly::zero();
        }
        match axis {
            1 => {
                if self.rows == 1 {
                    return BiPoly::zero();
                }
                let rows = self.rows - 1;
                let mut grid = vec![0.0; rows * self.cols];
                for i in 1..self.rows {
                    for j in 0..self.cols {
                        grid[(i - 1) * self.cols + j] = i as f64 * self.grid[i * self.cols + j];
                    }
                }
                BiPoly::from_grid(rows, self.cols, grid)
            }
            _ => {
                if self.cols == 1 {
                    return BiPoly::zero();
                }
                let cols = self.cols - 1;
                let mut grid = vec![0.0; self.rows * cols];
                for i in 0..self.rows {
                    for j in 1..self.cols {
                        grid[i * cols + (j - 1)] = j as f64 * self.grid[i * self.cols + j];
                    }
                }
                BiPoly::from_grid(self.rows, cols, grid)
            }
        }
    }

    /// `p(Mx)`: substitution of the linear map `M` (acting on column
    /// vectors), so reflections and rotations can be applied coefficientwise.
    #[allow(clippy::needless_range_loop)]
    pub fn compose_linear(&self, m: &[[f64; 2]; 2]) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let f1 = BiPoly::linear_form(m[0][0], m[0][1]);
        let f2 = BiPoly::linear_form(m[1][0], m[1][1]);
        // powers of the two substituted linear forms
        let mut pow1 = vec![BiPoly::constant(1.0)];
        for i in 1..self.rows {
            pow1.push(pow1[i - 1].mul(&f1));
        }
        let mut pow2 = vec![BiPoly::constant(1.0)];
        for j in 1..self.cols {
            pow2.push(pow2[j - 1].mul(&f2));
        }
        let mut acc = BiPoly::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self.grid[i * self.cols + j];
                if c != 0.0 {
                    acc = acc.add(&pow1[i].mul(&pow2[j]).scale(c));
                }
            }
        }
        acc
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.grid.iter().fold(0.0, |m: f64, &c| m.max(c.abs()))
    }

    /// Max absolute coefficient difference against `other`.
    pub fn coeff_distance(&self, other: &BiPoly) -> f64 {
        self.sub(other).max_abs_coeff()
    }

    /// Divides by the root linear form `<x, v>` for a unit vector `v`.
    ///
    /// The caller guarantees the numerator vanishes on the line `<x,v> = 0`
    /// (it is `f - f o sigma_v` for some `f`). Implemented by rotating
    /// coordinates so `v` maps to `(1, 0)`, stripping the then-exact factor,
    /// and rotating back. The quotient is re-multiplied to confirm the
    /// residual stays below `1e-12 * max|coeff|`.
    pub fn divide_by_root_form(&self, v: [f64; 2]) -> Result<BiPoly> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
        let v = [v[0] / norm, v[1] / norm];
        // rot maps v to e1; its transpose maps back
        let rot = [[v[0], v[1]], [-v[1], v[0]]];
        let rot_t = [[v[0], -v[1]], [v[1], v[0]]];
        let g = self.compose_linear(&rot_t);
        // strip one power of the first variable
        let rows = g.rows.max(1) - 1;
        let mut grid = vec![0.0; rows * g.cols];
        for i in 1..g.rows {
            for j in 0..g.cols {
                grid[(i - 1) * g.cols + j] = g.grid[i * g.cols + j];
            }
        }
        let quotient = BiPoly::from_grid(rows, g.cols, grid).compose_linear(&rot);

        let tolerance = 1e-12 * self.max_abs_coeff();
        let residual = quotient
            .mul(&BiPoly::linear_form(v[0], v[1]))
            .coeff_distance(self);
        if residual > tolerance {
            return Err(Error::NotDivisible {
                residual,
                tolerance,
            });
        }
        Ok(quotient)
    }

    /// Embed a univariate polynomial as a polynomial in `x1`.
    pub fn from_unipoly_x1(p: &UniPoly) -> BiPoly {
        if p.is_zero() {
            return BiPoly::zero();
        }
        let rows = p.coeffs().len();
        let mut grid = vec![0.0; rows];
        grid.copy_from_slice(p.coeffs());
        BiPoly::from_grid(rows, 1, grid)
    }

    /// `f(a*x1 + b*x2)` for a univariate profile `f`.
    pub fn from_profile_on_form(f: &UniPoly, a: f64, b: f64) -> BiPoly {
        let form = BiPoly::linear_form(a, b);
        let mut acc = BiPoly::zero();
        let mut power = BiPoly::constant(1.0);
        for (i, &c) in f.coeffs().iter().enumerate() {
            if i > 0 {
                power = power.mul(&form);
            }
            if c != 0.0 {
                acc = acc.add(&power.scale(c));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralGroup;
    use proptest::prelude::*;

    fn poly_from(entries: &[(usize, usize, f64)]) -> BiPoly {
        let mut acc = BiPoly::zero();
        for &(i, j, c) in entries {
            let mut term = BiPoly::constant(c);
            for _ in 0..i {
                term = term.mul(&BiPoly::x1());
            }
            for _ in 0..j {
                term = term.mul(&BiPoly::x2());
            }
            acc = acc.add(&term);
        }
        acc
    }

    #[test]
    fn ring_ops_basics() {
        let sum = BiPoly::x1().add(&BiPoly::x2());
        let diff = BiPoly::x1().sub(&BiPoly::x2());
        let product = sum.mul(&diff);
        let expected = poly_from(&[(2, 0, 1.0), (0, 2, -1.0)]);
        assert_eq!(product.coeff_distance(&expected), 0.0);

        let p = poly_from(&[(2, 1, 1.0)]);
        assert_eq!(p.eval([2.0, 3.0]), 12.0);

        let q = poly_from(&[(3, 2, 2.5), (0, 0, -1.0)]);
        assert_eq!(q.add(&BiPoly::zero()).coeff_distance(&q), 0.0);
    }

    #[test]
    fn evaluate_distributes() {
        let a = poly_from(&[(2, 0, 1.0), (1, 1, -3.0), (0, 0, 0.5)]);
        let b = poly_from(&[(0, 2, 2.0), (1, 0, 1.0)]);
        let x = [0.7, -1.3];
        assert!((a.add(&b).eval(x) - (a.eval(x) + b.eval(x))).abs() < 1e-12);
        assert!((a.mul(&b).eval(x) - a.eval(x) * b.eval(x)).abs() < 1e-12);
    }

    #[test]
    fn partial_derivatives() {
        let p = poly_from(&[(3, 1, 1.0)]);
        let expected = poly_from(&[(2, 1, 3.0)]);
        assert_eq!(p.partial(1).coeff_distance(&expected), 0.0);

        let q = poly_from(&[(3, 0, 1.0)]);
        assert!(q.partial(2).is_zero());

        assert_eq!(p.partial(1).degree(), Some(3));
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn compose_with_reflections() {
        let g2 = DihedralGroup::new(2).unwrap();
        // sigma_1 of I_2 sends x1 to -x1
        let composed = BiPoly::x1().compose_linear(g2.reflection(1));
        assert!(composed.coeff_distance(&BiPoly::x1().scale(-1.0)) < 1e-15);

        // x1*x2 under sigma_0 of I_2
        let p = poly_from(&[(1, 1, 1.0)]);
        assert!(p.compose_linear(g2.reflection(0)).coeff_distance(&p.scale(-1.0)) < 1e-15);

        // |x|^2 is invariant under any isometry
        let norm2 = poly_from(&[(2, 0, 1.0), (0, 2, 1.0)]);
        let g5 = DihedralGroup::new(5).unwrap();
        for j in 0..5 {
            assert!(norm2.compose_linear(g5.reflection(j)).coeff_distance(&norm2) < 1e-14);
        }
    }

    #[test]
    fn divide_simple_cases() {
        let two_x1 = poly_from(&[(1, 0, 2.0)]);
        let q = two_x1.divide_by_root_form([1.0, 0.0]).unwrap();
        assert!(q.coeff_distance(&BiPoly::constant(2.0)) < 1e-14);

        let cubic = poly_from(&[(3, 0, 2.0)]); // x1^3 - (-x1)^3
        let q = cubic.divide_by_root_form([1.0, 0.0]).unwrap();
        assert!(q.coeff_distance(&poly_from(&[(2, 0, 2.0)])) < 1e-14);

        let q = BiPoly::zero().divide_by_root_form([0.5, 0.5]).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn profile_parsing() {
        assert_eq!(UniPoly::parse("t^4").unwrap().coeffs(), &[0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            UniPoly::parse("1 + 2*t^3 - 0.5*t").unwrap().coeffs(),
            &[1.0, -0.5, 0.0, 2.0]
        );
        assert_eq!(UniPoly::parse("-t").unwrap().coeffs(), &[0.0, -1.0]);
        assert_eq!(UniPoly::parse("3").unwrap().coeffs(), &[3.0]);
        assert!(UniPoly::parse("t^").is_err());
        assert!(UniPoly::parse("q+1").is_err());
    }

    #[test]
    fn divide_rejects_non_multiple() {
        let err = BiPoly::x2().divide_by_root_form([1.0, 0.0]);
        assert!(matches!(err, Err(Error::NotDivisible { .. })));
    }

    fn arb_bipoly(max_deg: usize) -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(-3.0f64..3.0, (max_deg + 1) * (max_deg + 1)).prop_map(move |v| {
            let mut acc = BiPoly::zero();
            for i in 0..=max_deg {
                for j in 0..=max_deg {
                    if i + j <= max_deg {
                        let c = v[i * (max_deg + 1) + j];
                        acc = acc.add(&poly_from(&[(i, j, c)]));
                    }
                }
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mixed_partials_commute(p in arb_bipoly(10)) {
            let d12 = p.partial(1).partial(2);
            let d21 = p.partial(2).partial(1);
            prop_assert!(d12.coeff_distance(&d21) <= 1e-12 * (1.0 + p.max_abs_coeff()));
        }

        #[test]
        fn division_round_trip(p in arb_bipoly(10), k in 2usize..=6, j in 0usize..6) {
            let group = DihedralGroup::new(k).unwrap();
            let j = j % k;
            let reflected = p.compose_linear(group.reflection(j));
            let num = p.sub(&reflected);
            let v = group.root(j);
            let q = num.divide_by_root_form(v).unwrap();
            let back = q.mul(&BiPoly::linear_form(v[0], v[1]));
            prop_assert!(back.coeff_distance(&num) <= 1e-11 * (1.0 + num.max_abs_coeff()));
        }

        #[test]
        fn reflection_composition_involution(p in arb_bipoly(8), k in 2usize..=6, j in 0usize..6) {
            let group = DihedralGroup::new(k).unwrap();
            let j = j % k;
            let twice = p
                .compose_linear(group.reflection(j))
                .compose_linear(group.reflection(j));
            prop_assert!(twice.coeff_distance(&p) <= 1e-12 * (1.0 + p.max_abs_coeff()));
        }
    }
}
