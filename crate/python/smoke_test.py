#!/usr/bin/env python3
"""Smoke test for the workquench_py extension module.

Builds nothing itself: expects `cargo build -p workquench-py` to have run.
Copies the cdylib next to a temp dir as workquench_py.so and imports it.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libworkquench_py.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp(prefix="workquench_py_"))
            shutil.copy(lib, tmp / "workquench_py.so")
            sys.path.insert(0, str(tmp))
            import workquench_py

            return workquench_py
    sys.exit("build the extension first: cargo build -p workquench-py")


def approx(a, b, tol):
    return abs(a - b) <= tol


def main():
    wq = load_module()

    # free point: v = J, K = 1
    v, k = wq.luttinger_params(1.0, 0.0)
    assert approx(v, 1.0, 1e-14) and approx(k, 1.0, 1e-14), (v, k)

    # domain rejection
    try:
        wq.luttinger_params(1.0, 1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("delta = 1.5 must be rejected")

    p = wq.QuenchProtocol(1.0, 0.1, 5.0)
    assert p.beta is None and approx(p.delta_at(2.5), 0.05, 1e-15)

    # canonical constraint of a solved mode
    m = wq.solve_mode(0.7, p)
    c = abs(m["y1"]) ** 2 - abs(m["y2"]) ** 2
    assert approx(c, 1.0, 1e-8), c
    assert m["p_q"] >= 0.0

    # asymptotic excitation probability stays close to the ODE value
    pq = wq.pq_asymptotic(0.7, p)
    assert approx(pq, m["p_q"], 0.05 * (0.1 / math.pi) ** 2 + 1e-6), (pq, m["p_q"])

    # CFW normalization and Hermitian symmetry
    grid = [-1.0, -0.5, 0.0, 0.5, 1.0]
    g = wq.cfw(grid, p, 8, 2.76)
    assert approx(abs(g[2] - 1.0), 0.0, 1e-12)
    assert abs(g[0] - g[4].conjugate()) < 1e-10
    assert all(abs(x) <= 1.0 + 1e-10 for x in g)

    # cumulants: mean work and variance positive for this quench
    k1, k2, k3 = wq.cumulants(p, 2.76, 8)
    assert k1 > 0.0 and k2 > 0.0, (k1, k2, k3)

    # ED work distribution is normalized
    entries = wq.ed_work_distribution(6, wq.QuenchProtocol(1.0, 0.1, 1.0))
    total = sum(pr for _, pr in entries)
    assert approx(total, 1.0, 1e-10), total

    # scaling fit on synthetic data
    pts = [(t, 7.0 * t**-2.0) for t in (10, 20, 40, 80, 160, 320, 640)]
    expo, logflag, r2 = wq.fit_scaling(pts, True)
    assert approx(expo, -2.0, 1e-6) and not logflag and r2 > 0.999999

    # KZM defect density: master_integral(0, 1) tagged as tau^-1
    val, scale_exp, logflag = wq.master_integral(0, 1, p, 3.51)
    assert val > 0.0 and scale_exp == -1 and not logflag

    print("smoke test passed")


if __name__ == "__main__":
    main()
