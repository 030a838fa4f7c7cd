//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Every tolerance is pinned here, in code. Two printed identities are
//! machine-refuted rather than verified (the plus-family kernel at the
//! vertex t = 1 for k >= 2 and the modified-family kernel at 2p = k);
//! criteria 8 covers them by asserting the refutation and checking the
//! derivable vertices at the stated tolerance.

use dunkl::classical::{a_lambda_k, gegenbauer};
use dunkl::dihedral::DihedralGroup;
use dunkl::harmonics::{poisson_closed_vertex, poisson_series, y_basis, zonal_identity_check};
use dunkl::operators::{
    dunkl_apply, h_laplacian, intertwine_ridge_exact, intertwine_ridge_monte_carlo,
    intertwine_ridge_quad, intertwine_z2, RidgeFunction, RidgeProfile,
};
use dunkl::polyring::UniPoly;
use dunkl::quadrature::{dirichlet_rule, simplex_rule};
use dunkl::sieved::{
    connection_sum, poisson_closed, poisson_closed_printed_modified,
    poisson_closed_printed_plus_vertex_one, poisson_series_interval,
    resolve_modified_orientation, product_formula, sieved_eval, FamilyTag, ProductFormula,
    SievedChebKind, WeightFamily,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn report(criterion: &str, max_dev: f64, tol: f64) {
    let verdict = if max_dev <= tol { "PASS" } else { "FAIL" };
    println!("{verdict} {criterion}: max deviation {max_dev:.3e} (tolerance {tol:.1e})");
    assert!(max_dev <= tol, "{criterion}: {max_dev:.3e} > {tol:.1e}");
}

#[test]
fn criterion_01_intertwining_identity() {
    let tol = 1e-10;
    let mut max_dev = 0.0f64;
    for k in 2..=6usize {
        let group = DihedralGroup::new(k).unwrap();
        for &lambda in &[0.5, 1.0, 1.7] {
            for p in 0..2 * k {
                for n in 0..=8usize {
                    let ridge =
                        RidgeFunction::new(&group, p, RidgeProfile::poly(UniPoly::monomial(n)));
                    let v = intertwine_ridge_exact(&ridge, lambda).unwrap();
                    for axis in [1, 2] {
                        let lhs = dunkl_apply(&group, axis, lambda, &v).unwrap();
                        let rhs =
                            intertwine_ridge_exact(&ridge.partial(axis).unwrap(), lambda).unwrap();
                        max_dev = max_dev.max(lhs.coeff_distance(&rhs));
                    }
                }
            }
        }
    }
    report(
        "criterion 01 intertwining D_i V = V d_i (k<=6, lambda in {0.5,1,1.7}, n<=8)",
        max_dev,
        tol,
    );
}

#[test]
fn criterion_02_v_one() {
    let mut quad_dev = 0.0f64;
    for k in 2..=6usize {
        let group = DihedralGroup::new(k).unwrap();
        for &lambda in &[0.5, 1.0, 1.7] {
            let one = RidgeFunction::new(&group, 1, RidgeProfile::poly(UniPoly::constant(1.0)));
            let v = intertwine_ridge_quad(&one, lambda, [0.6, -0.8], 16).unwrap();
            quad_dev = quad_dev.max((v - 1.0).abs());
        }
    }
    report("criterion 02a V 1 = 1 (deterministic quadrature)", quad_dev, 1e-12);

    let group = DihedralGroup::new(3).unwrap();
    let one = RidgeFunction::new(&group, 0, RidgeProfile::poly(UniPoly::constant(1.0)));
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mc = intertwine_ridge_monte_carlo(&one, 1.0, [1.0, 0.0], 1_000_000, &mut rng).unwrap();
    let dev = (mc.value - 1.0).abs();
    let budget = (3.0 * mc.std_err).max(1e-15);
    report("criterion 02b V 1 = 1 (Monte Carlo, 3 sigma at 1e6 samples)", dev, budget);
}

#[test]
fn criterion_03_normalization_constant() {
    let mut max_dev = 0.0f64;
    for k in 2..=6usize {
        for &lambda in &[0.4, 1.0, 2.5] {
            let rule = dirichlet_rule(k, lambda, 16).unwrap();
            let a = a_lambda_k(k, lambda).unwrap();
            max_dev = max_dev.max((rule.raw_mass * a - 1.0).abs());
        }
    }
    report(
        "criterion 03 simplex mass x a_lambda^(k) = 1 (k<=6, lambda in {0.4,1,2.5})",
        max_dev,
        1e-12,
    );
}

#[test]
fn criterion_04_z2_cross_oracle() {
    let tol = 1e-10;
    let group = DihedralGroup::new(2).unwrap();
    let mut max_dev = 0.0f64;
    for &lambda in &[0.5, 1.0, 1.7] {
        for p in [0usize, 1] {
            for n in 0..=6usize {
                let ridge = RidgeFunction::new(&group, p, RidgeProfile::poly(UniPoly::monomial(n)));
                let x = [0.4f64.cos(), 0.4f64.sin()];
                let exact = intertwine_ridge_exact(&ridge, lambda).unwrap().eval(x);
                let d = ridge.direction();
                let z2 = intertwine_z2(
                    |a, b| (d[0] * a + d[1] * b).powi(n as i32),
                    lambda,
                    lambda,
                    x,
                    80,
                )
                .unwrap();
                max_dev = max_dev.max((exact - z2).abs());
            }
        }
    }
    report("criterion 04 k=2 cross-oracle (moment path vs I_2 integral)", max_dev, tol);
}

#[test]
fn criterion_05_lemmas() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut trig_dev = 0.0f64;
    for k in 2..=8usize {
        for _ in 0..1000 {
            let r: f64 = rng.random::<f64>() * 0.98;
            let theta: f64 = rng.random::<f64>() * 2.0 * PI;
            let lhs =
                1.0 - 2.0 * r.powi(k as i32) * (k as f64 * theta).cos() + r.powi(2 * k as i32);
            let mut rhs = 1.0;
            for j in 0..k {
                rhs *= 1.0 - 2.0 * r * (theta - 2.0 * j as f64 * PI / k as f64).cos() + r * r;
            }
            trig_dev = trig_dev.max((lhs - rhs).abs());
        }
    }
    report("criterion 05a trig product lemma (k<=8, 1000 samples)", trig_dev, 1e-12);

    let r = 0.4;
    let mut simplex_dev = 0.0f64;
    for k in 2..=4usize {
        for &base in &[0.6, 1.0, 1.5] {
            let exps: Vec<f64> = (0..k).map(|i| base + 0.15 * i as f64).collect();
            let total: f64 = exps.iter().sum();
            let xs: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let lhs: f64 = xs
                .iter()
                .zip(&exps)
                .map(|(&x, &l)| (1.0 - 2.0 * r * x + r * r).powf(-l))
                .product();
            let shifted: Vec<f64> = exps.iter().map(|&l| l - 1.0).collect();
            let rule = simplex_rule(&shifted, 48).unwrap();
            let rhs = rule.integrate(|u| {
                let dot: f64 = u.iter().zip(&xs).map(|(&ui, &xi)| ui * xi).sum();
                (1.0 - 2.0 * r * dot + r * r).powf(-total)
            });
            simplex_dev = simplex_dev.max((lhs - rhs).abs() / lhs.abs());
        }
    }
    report("criterion 05b simplex integral lemma (k<=4)", simplex_dev, 1e-9);
}

#[test]
fn criterion_06_orthogonality_and_norms() {
    use dunkl::quadrature::{circle_rule, CircleExtra};
    let max_degree = 12usize;
    let mut max_dev = 0.0f64;
    for tag in [FamilyTag::Minus, FamilyTag::Plus, FamilyTag::ModMinus, FamilyTag::ModPlus] {
        for k in 1..=5usize {
            for &lambda in &[0.5, 1.0, 2.5] {
                let family = WeightFamily::new(tag, k, lambda).unwrap();
                let extra = match tag {
                    FamilyTag::Minus => CircleExtra::None,
                    FamilyTag::Plus => CircleExtra::SinSq,
                    FamilyTag::ModPlus => CircleExtra::OneMinusCos,
                    FamilyTag::ModMinus => CircleExtra::OnePlusCos,
                };
                let rule = circle_rule(k, lambda, extra, 2 * max_degree + 2 * k + 8).unwrap();
                let table: Vec<Vec<f64>> = (0..=max_degree)
                    .map(|n| {
                        rule.nodes
                            .iter()
                            .map(|&theta| sieved_eval(&family, n, theta.cos()))
                            .collect()
                    })
                    .collect();
                for a in 0..=max_degree {
                    for b in 0..=a {
                        let dot: f64 = table[a]
                            .iter()
                            .zip(&table[b])
                            .zip(&rule.weights)
                            .map(|((&va, &vb), &w)| w * va * vb)
                            .sum();
                        let value = 0.5 * dot / family.reference_mass();
                        if a == b {
                            let closed = dunkl::sieved::sieved_norm(&family, a);
                            max_dev = max_dev.max((value - closed).abs() / closed);
                        } else {
                            max_dev = max_dev.max(value.abs());
                        }
                    }
                }
            }
        }
    }
    report(
        "criterion 06a family orthogonality + norms (4 families, k<=5, n<=12)",
        max_dev,
        1e-9,
    );

    // h-harmonic Gram
    let mut h_dev = 0.0f64;
    for k in 2..=5usize {
        for &lambda in &[0.5, 1.0, 2.5] {
            let rule = circle_rule(k, lambda, CircleExtra::None, 2 * max_degree + 2 * k + 8)
                .unwrap();
            let mass = rule.mass();
            let minus = WeightFamily::new(FamilyTag::Minus, k, lambda).unwrap();
            let plus = WeightFamily::new(FamilyTag::Plus, k, lambda).unwrap();
            let mut labels = vec![(0usize, 1usize)];
            for n in 1..=8usize {
                labels.push((n, 1));
                labels.push((n, 2));
            }
            let table: Vec<Vec<f64>> = labels
                .iter()
                .map(|&(n, i)| {
                    rule.nodes
                        .iter()
                        .map(|&theta| {
                            if i == 1 {
                                sieved_eval(&minus, n, theta.cos())
                            } else {
                                theta.sin() * sieved_eval(&plus, n - 1, theta.cos())
                            }
                        })
                        .collect()
                })
                .collect();
            for (a, &(n1, i1)) in labels.iter().enumerate() {
                for b in 0..=a {
                    let dot: f64 = table[a]
                        .iter()
                        .zip(&table[b])
                        .zip(&rule.weights)
                        .map(|((&va, &vb), &w)| w * va * vb)
                        .sum();
                    let value = dot / mass;
                    if a == b {
                        let closed = dunkl::harmonics::h_norm(n1, i1, k, lambda).unwrap();
                        h_dev = h_dev.max((value - closed).abs() / closed);
                    } else {
                        h_dev = h_dev.max(value.abs());
                    }
                }
            }
        }
    }
    report("criterion 06b h-harmonic orthogonality + norms (k<=5)", h_dev, 1e-9);
}

#[test]
fn criterion_07_harmonicity() {
    let mut max_dev = 0.0f64;
    for k in 2..=5usize {
        let group = DihedralGroup::new(k).unwrap();
        for &lambda in &[0.5, 1.0, 2.0] {
            for n in 0..=10usize {
                for i in [1usize, 2] {
                    if i == 2 && n == 0 {
                        continue;
                    }
                    let y = y_basis(n, i, k, lambda).unwrap();
                    let lap = h_laplacian(&group, lambda, &y.poly).unwrap();
                    max_dev = max_dev.max(lap.max_abs_coeff() / y.poly.max_abs_coeff().max(1.0));
                }
            }
        }
    }
    report("criterion 07 h-Laplacian annihilates homogenized basis (n<=10)", max_dev, 1e-9);
}

#[test]
fn criterion_08_closed_poisson_kernels() {
    let r = 0.5;
    let terms = 80;
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    // circle kernel at every vertex p in [0, 2k)
    let mut circle_dev = 0.0f64;
    let mut tail_max = 0.0f64;
    for k in 2..=4usize {
        for &lambda in &[0.5, 1.0] {
            for p in 0..2 * k {
                let y = [
                    (p as f64 * PI / k as f64).cos(),
                    (p as f64 * PI / k as f64).sin(),
                ];
                for _ in 0..15 {
                    let theta = rng.random::<f64>() * 2.0 * PI;
                    let x = [theta.cos(), theta.sin()];
                    let series = poisson_series(k, lambda, x, y, r, terms).unwrap();
                    let closed = poisson_closed_vertex(k, lambda, p, x, r).unwrap();
                    circle_dev = circle_dev.max((series.value - closed).abs());
                    tail_max = tail_max.max(series.tail_bound);
                }
            }
        }
    }
    assert!(tail_max < 1e-14, "series tail bound {tail_max:.2e} over budget");
    report("criterion 08a circle Poisson kernel at vertices (closed vs series)", circle_dev, 1e-9);

    // interval kernels at every derivable vertex; 100 random t per identity
    let mut interval_dev = 0.0f64;
    for tag in [FamilyTag::Minus, FamilyTag::Plus, FamilyTag::ModMinus, FamilyTag::ModPlus] {
        for k in 1..=4usize {
            for &lambda in &[0.5, 1.0] {
                let family = WeightFamily::new(tag, k, lambda).unwrap();
                for p in 0..k {
                    let degenerate_mod =
                        matches!(tag, FamilyTag::ModMinus | FamilyTag::ModPlus) && 2 * p == k;
                    let degenerate_plus = tag == FamilyTag::Plus && p == 0 && k >= 2;
                    if degenerate_mod || degenerate_plus {
                        continue;
                    }
                    let s = family.vertex_abscissa(p);
                    for _ in 0..50 {
                        let t = rng.random::<f64>() * 2.0 - 1.0;
                        let series = poisson_series_interval(&family, t, s, r, terms).unwrap();
                        assert!(series.tail_bound < 1e-14);
                        let closed = poisson_closed(&family, p, t, r).unwrap();
                        interval_dev = interval_dev.max((series.value - closed).abs());
                    }
                }
            }
        }
    }
    report(
        "criterion 08b interval Poisson kernels (4 families, derivable vertices)",
        interval_dev,
        1e-9,
    );

    // the two printed degenerate instances are refuted, not skipped
    let plus = WeightFamily::new(FamilyTag::Plus, 2, 0.5).unwrap();
    let mut plus_refute = f64::INFINITY;
    let modded = WeightFamily::new(FamilyTag::ModMinus, 2, 1.0).unwrap();
    let mut mod_refute = f64::INFINITY;
    for _ in 0..10 {
        let t = rng.random::<f64>() * 2.0 - 1.0;
        let series = poisson_series_interval(&plus, t, 1.0, r, terms).unwrap().value;
        plus_refute =
            plus_refute.min((series - poisson_closed_printed_plus_vertex_one(2, 0.5, t, r)).abs());
        let series = poisson_series_interval(&modded, t, -1.0, r, terms).unwrap().value;
        mod_refute = mod_refute
            .min((series - poisson_closed_printed_modified(&modded, 1, t, r).unwrap()).abs());
    }
    println!(
        "INFO criterion 08c printed degenerate kernels deviate by >= {:.3e} (plus at t=1) \
         and {:.3e} (modified at 2p=k): recorded as refuted misprints",
        plus_refute, mod_refute
    );
    assert!(plus_refute > 1e-3 && mod_refute > 1e-3);
}

#[test]
fn criterion_09_zonal_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut max_dev = 0.0f64;
    for k in [2usize, 3] {
        for n in 0..=6usize {
            for p in 0..k {
                let theta = rng.random::<f64>() * 2.0 * PI;
                let x = [theta.cos(), theta.sin()];
                let (lhs, rhs) = zonal_identity_check(k, 1.0, n, p, x).unwrap();
                max_dev = max_dev.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    report("criterion 09 zonal identity two-path agreement (n<=6, k in {2,3})", max_dev, 1e-9);
}

#[test]
fn criterion_10_connection_and_contiguous() {
    let mut max_dev = 0.0f64;
    for k in 2..=4usize {
        for &lambda in &[0.8, 1.5] {
            for m in 2..=10usize {
                for j in 1..=m {
                    for step in 0..5 {
                        let theta = 0.31 + 0.47 * step as f64;
                        for kind in [SievedChebKind::T, SievedChebKind::U] {
                            let (lhs, rhs) = connection_sum(kind, k, lambda, m, j, theta);
                            max_dev = max_dev.max((lhs - rhs).abs() / rhs.abs().max(1.0));
                        }
                    }
                }
            }
        }
    }
    report("criterion 10a connection identities (T and U, m<=10)", max_dev, 1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut recur_dev = 0.0f64;
    for &lambda in &[0.5, 1.0, 2.5] {
        for m in 0..=10i64 {
            for _ in 0..50 {
                let t = rng.random::<f64>() * 2.0 - 1.0;
                let lhs = gegenbauer(m, lambda + 1.0, t) - t * gegenbauer(m - 1, lambda + 1.0, t);
                let rhs = (m as f64 + 2.0 * lambda) / (2.0 * lambda) * gegenbauer(m, lambda, t);
                recur_dev = recur_dev.max((lhs - rhs).abs());
            }
        }
    }
    report("criterion 10b Gegenbauer contiguous relation (m<=10)", recur_dev, 1e-10);
}

#[test]
fn criterion_11_product_formulas() {
    let mut max_dev = 0.0f64;
    for k in 1..=4usize {
        for &lambda in &[0.5, 1.0] {
            for m in 0..=8usize {
                for &theta in &[0.0, 0.55, 1.9] {
                    let (lhs, rhs) = product_formula(
                        &ProductFormula::KGegenSub { k, lambda, m, theta },
                        48,
                    )
                    .unwrap();
                    max_dev = max_dev.max((lhs - rhs).abs() / lhs.abs().max(1.0));
                }
            }
        }
    }
    report("criterion 11a k-Gegenbauer substitution formula (k<=4, m<=8)", max_dev, 1e-8);

    let mut gg_dev = 0.0f64;
    for &(lambda, mu) in &[(0.5, 0.5), (0.5, 1.0), (1.0, 0.5), (1.0, 1.0)] {
        for m in 0..=6usize {
            let (lhs, rhs) = product_formula(
                &ProductFormula::Gg0 { lambda, mu, m, t: 0.42 },
                48,
            )
            .unwrap();
            gg_dev = gg_dev.max((lhs - rhs).abs());
            let (lhs, rhs) = product_formula(
                &ProductFormula::Gg { lambda, mu, m, theta: 0.3, phi: 1.1 },
                48,
            )
            .unwrap();
            gg_dev = gg_dev.max((lhs - rhs).abs());
        }
    }
    report(
        "criterion 11b generalized Gegenbauer product formulas (m<=6)",
        gg_dev,
        1e-8,
    );
}

#[test]
fn criterion_12_doubling_and_jacobi_generating() {
    let mut max_dev = 0.0f64;
    for k in 1..=4usize {
        let lambda = 1.3;
        let order2k = WeightFamily::new(FamilyTag::Minus, 2 * k, lambda).unwrap();
        let orderk = WeightFamily::new(FamilyTag::Minus, k, lambda).unwrap();
        for n in 0..=8usize {
            for step in 0..20 {
                let theta = 0.05 + step as f64 * 0.156;
                let even = sieved_eval(&order2k, 2 * n, theta.cos());
                let folded = sieved_eval(&orderk, n, (2.0 * theta).cos());
                max_dev = max_dev.max((even - folded).abs());
            }
        }
    }
    report("criterion 12a doubling relation pointwise (k<=4, n<=8)", max_dev, 1e-12);

    use dunkl::classical::{jacobi, pochhammer};
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut gen_dev = 0.0f64;
    let r: f64 = 0.4;
    let lambda = 0.9;
    for _ in 0..50 {
        let t = rng.random::<f64>() * 2.0 - 1.0;
        let mut sum1 = 0.0;
        let mut sum2 = 0.0;
        for n in 0..=90i64 {
            let coeff = (2.0 * n as f64 + 2.0 * lambda + 1.0)
                * pochhammer(2.0 * lambda + 1.0, n as usize)
                / ((2.0 * lambda + 1.0) * pochhammer(lambda + 1.5, n as usize));
            sum1 += coeff * jacobi(n, lambda - 0.5, lambda + 0.5, t) * r.powi(n as i32);
            sum2 += coeff * jacobi(n, lambda + 0.5, lambda - 0.5, t) * r.powi(n as i32);
        }
        let denom = (1.0 - 2.0 * r * t + r * r).powf(lambda + 1.0);
        gen_dev = gen_dev.max((sum1 - (1.0 - r) / denom).abs());
        gen_dev = gen_dev.max((sum2 - (1.0 + r) / denom).abs());
    }
    report("criterion 12b Jacobi generating identities (r=0.4, 50 random t)", gen_dev, 1e-10);
}

#[test]
fn criterion_13_orientation_resolution_is_decisive() {
    let mut worst_matched = 0.0f64;
    let mut worst_rejected = f64::INFINITY;
    for k in 1..=4usize {
        let res = resolve_modified_orientation(k, 1.0).unwrap();
        worst_matched = worst_matched.max(res.matched_residual);
        worst_rejected = worst_rejected.min(res.rejected_residual);
        println!(
            "INFO criterion 13 k={k}: doubling polynomials attach to (1 + t) w_minus \
             (matched residual {:.2e}, rejected residual {:.2e})",
            res.matched_residual, res.rejected_residual
        );
        assert!(res.base_attaches_to_one_plus_t);
    }
    assert!(worst_rejected > 1e-3, "rejected orientation too close: {worst_rejected:.2e}");
    report(
        "criterion 13 modified-family orientation decisive for k in {1..4}",
        worst_matched,
        1e-9,
    );
}
