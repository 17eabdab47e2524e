"""Smoke test for the pytvbound extension.

Build and install first:
    pip install maturin patchelf
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pytvbound-*.whl
"""

import json
import math

import pytvbound as tv


def check_theta():
    tau = tv.PeriodMatrix(1, [(0.0, 1.0)])
    re, im = tv.theta(tau, [(0.0, 0.0)])
    # θ(0, i) = π^{1/4} / Γ(3/4)
    assert abs(re - math.pi ** 0.25 / math.gamma(0.75)) < 1e-14, re
    assert abs(im) < 1e-14
    est, ref = tv.normalization_check(tau, 100 * 100)
    assert abs(est - ref) < 1e-6, (est, ref)


def check_theta_max():
    value, coords = tv.theta_max_value(tv.PeriodMatrix.bost_mestre(64), bits=64, grid=12)
    assert abs(float(value) - 1.0663927736913620667) < 1e-12, value
    assert len(coords) == 4


def check_bounds():
    assert tv.bu(3, 2) == 26244
    assert tv.bu(1, 2) == 252
    assert abs(tv.l_bound_log10(2, 1, 2) - 8064 * math.log10(2)) < 1e-3
    h = tv.h_bound_log10(3, 2, 40)
    assert 1.6e7 < h < 1.61e7, h
    assert abs(float(tv.bost_mestre_h_fal()) + 1.4525092396456446503) < 1e-15


def check_jacobian():
    jac = tv.Jacobian([1, 0, 0, 0, 0, 1])
    d = jac.point("0", "1")
    assert jac.order_of(d) == 5
    assert jac.order_of(jac.point("-1", "0")) == 2
    two_d = jac.add(d, d)
    assert two_d == (["0", "0", "1"], ["1"])
    assert jac.add(two_d, jac.neg(two_d)) == jac.zero()
    assert jac.scalar_mul(5, d) == jac.zero()
    assert jac.vp_distance(two_d, 3, 4) == "0"
    assert jac.vp_distance(d, 3, 4) == "infinite"
    u, v = jac.reduce_mod(two_d, 7, 2)
    assert not jac.on_curve_mod(u, v, 7, 2)
    assert len(jac.enumerate_points_mod(3, 1)) == 4
    try:
        tv.Jacobian([1, 0, 0, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("non-quintic model accepted")


def check_run():
    cfg = {"curve": "bost-mestre", "p": 3, "precision_bits": 64,
           "grid_points_per_dim": 12, "verify": True}
    text = tv.run(json.dumps(cfg))
    assert text == tv.run(json.dumps(cfg))
    report = json.loads(text)
    assert report["status"] == "ok"
    assert all(row["inequality_holds"] for row in report["verification"])
    report2 = json.loads(tv.run(json.dumps({**cfg, "p": 2, "verify": False})))
    assert report2["status"] == "hypothesis-violated"
    assert "p_odd" in report2["violations"]


if __name__ == "__main__":
    for check in (check_theta, check_theta_max, check_bounds, check_jacobian, check_run):
        check()
        print(f"ok  {check.__name__}")
