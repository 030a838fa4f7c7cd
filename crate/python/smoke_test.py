#!/usr/bin/env python3
"""Smoke test for the dunkl_py extension module.

Builds are plain cargo artifacts; the script copies the cdylib next to a
temporary import name, imports it, and spot-checks the main operations
against known values. Run after:

    cargo build -p dunkl-py --release

Usage: python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_library():
    names = {
        "linux": "libdunkl_py.so",
        "darwin": "libdunkl_py.dylib",
        "win32": "dunkl_py.dll",
    }
    name = names.get(sys.platform, "libdunkl_py.so")
    candidates = [
        ROOT / "target" / "release" / name,
        ROOT / "target" / "debug" / name,
    ]
    for path in candidates:
        if path.exists():
            return path
    raise SystemExit(
        "dunkl_py library not found; run `cargo build -p dunkl-py --release` first"
    )


def import_module():
    lib = locate_library()
    staging = tempfile.mkdtemp(prefix="dunkl_py_")
    target = pathlib.Path(staging) / ("dunkl_py" + "".join(lib.suffixes))
    shutil.copy2(lib, target)
    sys.path.insert(0, staging)
    import dunkl_py

    return dunkl_py


def approx(a, b, tol=1e-10):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    d = import_module()
    checks = 0

    # dihedral geometry
    g = d.DihedralGroup(3)
    assert g.order == 3
    rx, ry = g.reflect(1, 1.0, 0.0)
    approx(rx, -0.5, 1e-14)
    approx(ry, math.sqrt(3) / 2, 1e-14)
    assert g.conjugacy_classes() == [[0, 1, 2]]
    checks += 3

    # classical families
    approx(d.chebyshev_t(3, 0.5), -1.0, 1e-14)
    approx(d.gegenbauer(2, 1.0, 0.3), 4 * 0.09 - 1, 1e-14)
    approx(d.jacobi(0, 0.3, 0.4, 0.9), 1.0)
    approx(d.a_lambda_k(2, 1.0), 2.0, 1e-13)
    checks += 4

    # quadrature
    nodes, weights = d.gauss_jacobi(3, 0.0, 0.0)
    approx(sum(w * x**4 for x, w in zip(nodes, weights)), 2 / 5, 1e-14)
    approx(d.dirichlet_moment(2, 1.0, [0, 1]), 1 / 3, 1e-14)
    samples = d.dirichlet_sample(3, 0.8, 42, 2000)
    mean_u0 = sum(1 - sum(s) for s in samples) / len(samples)
    approx(mean_u0, 1.8 / 3.4, 0.05)
    checks += 3

    # sieved families and kernels
    approx(d.sieved_eval("minus", 3, 0.7, 1, 0.25), 0.25, 1e-13)
    approx(d.sieved_norm("minus", 3, 0.7, 1), 0.5, 1e-14)
    series, tail = d.poisson_series_interval("minus", 2, 1.0, 0.3, 1.0, 0.5, 80)
    closed = d.poisson_closed_interval("minus", 2, 1.0, 0, 0.3, 0.5)
    approx(series, closed, 1e-9)
    assert tail < 1e-14
    checks += 4

    # circle kernel and harmonics
    x = (math.cos(0.7), math.sin(0.7))
    series, tail = d.poisson_series_circle(2, 1.0, x[0], x[1], 1.0, 0.0, 0.4, 80)
    closed = d.poisson_closed_circle(2, 1.0, 0, x[0], x[1], 0.4)
    approx(series, closed, 1e-9)
    y = d.y_basis(2, 1, 2, 1.0)
    approx(y.eval(x[0], x[1]), 3 * (x[0] ** 2 - x[1] ** 2), 1e-12)
    lap = d.h_laplacian(2, 1.0, y)
    assert lap.max_abs_coeff() < 1e-9
    approx(d.h_norm(1, 1, 4, 1.3), 0.5, 1e-14)
    checks += 4

    # intertwining operator: exact, quadrature and Monte Carlo paths agree
    v = d.intertwine_exact(2, 1.0, 0, [0.0, 1.0])  # profile t
    grid = v.coeffs()
    approx(grid[1][0], 1 / 3, 1e-14)  # V(t-ridge) = x1/3
    exact = d.intertwine_exact(3, 0.8, 1, [0.0, 0.0, 0.0, 1.0]).eval(0.6, 0.8)
    quad = d.intertwine_quad(3, 0.8, 1, [0.0, 0.0, 0.0, 1.0], 0.6, 0.8, 30)
    approx(exact, quad, 1e-11)
    mc, se = d.intertwine_monte_carlo(3, 0.8, 1, [0.0, 0.0, 0.0, 1.0], 0.6, 0.8, 200_000, 7)
    assert abs(mc - exact) < 5 * se, f"{mc} vs {exact} (se {se})"
    checks += 3

    # Dunkl operator: D_1 x_1 = 1 + k lambda
    x1 = d.BiPolynomial([[0.0], [1.0]])
    dx = d.dunkl_apply(4, 0.5, 1, x1)
    approx(dx.coeffs()[0][0], 1 + 4 * 0.5, 1e-13)
    checks += 1

    # a fast verification suite end to end
    passed, report = d.run_verify("products", 42)
    assert passed, report
    assert '"pass": true' in report
    checks += 1

    print(f"dunkl_py smoke test: {checks} check groups passed")


if __name__ == "__main__":
    main()
