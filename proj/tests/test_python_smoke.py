"""Smoke tests for the python bindings."""
import math
import sys

try:
    import _hulc as hulc
except ImportError:
    from hulc import _hulc as hulc  # installed-package layout


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (+-{tol})"


def main():
    b = hulc.solve_budget(0.05, 0.0)
    assert b["b"] == 6, b
    approx(b["tau"], 0.6, 1e-12)
    approx(hulc.miscoverage(6, 0.0), 0.03125)
    approx(hulc.unimodal_miscoverage(3, 1.0, 0.5), 0.25)
    approx(hulc.wendel_miscoverage(2, 1), 0.5)
    assert hulc.stability_radius(0.05, 0.0) > 0.0
    approx(hulc.normal_quantile(0.975), 1.959963985, 1e-6)

    assert hulc.pava([3.0, 1.0, 2.0]) == [2.0, 2.0, 2.0]
    fit = hulc.pava([2.0, 1.0], [3.0, 1.0])
    approx(fit[0], 1.75)

    ci = hulc.ci([0.0] * 600, estimator="mean", alpha=0.05, seed=7)
    assert ci["b_star"] in (5, 6)
    approx(ci["lo"][0], 0.0)
    approx(ci["hi"][0], 0.0)

    a1 = hulc.ci([float(i % 17) for i in range(300)], seed=3)
    a2 = hulc.ci([float(i % 17) for i in range(300)], seed=3)
    assert a1 == a2, "seeded ci must be deterministic"

    x = [[i / 100.0] for i in range(200)]
    y = [2.0 * v[0] + 1.0 for v in x]
    reg = hulc.ci_regression(x, y, coefficient=1, seed=4)
    approx(reg["lo"][0], 2.0, 1e-9)
    approx(reg["hi"][0], 2.0, 1e-9)

    de = hulc.estimate_delta(
        [math.sin(i * 0.7) for i in range(500)], subsamples=200, seed=9
    )
    assert 0.0 <= de["delta_hat"] <= 0.5

    xs, lo, hi = hulc.monotone_band([0.3, 0.6], [0.0, -0.5], [1.0, 2.0])
    approx(lo[1], 0.0)
    approx(hi[0], 1.0)

    bx = [i / 400.0 for i in range(400)]
    by = [v + 0.05 * math.sin(i * 1.3) for i, v in enumerate(bx)]
    gx, glo, ghi = hulc.band(bx, by, [0.2, 0.5, 0.8], alpha=0.05, seed=6)
    assert gx == [0.2, 0.5, 0.8]
    assert all(a <= b for a, b in zip(glo, ghi))
    assert glo == sorted(glo) and ghi == sorted(ghi)

    uni = hulc.ci([0.1, 0.9, 0.4] * 100, estimator="max", method="unimodal",
                  delta=0.5, t=0.5, seed=2)
    assert uni["method"] == "unimodal"

    print("python smoke OK")
    return 0


if __name__ == "__main__":
    sys.exit(main())
