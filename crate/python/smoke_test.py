"""Smoke test for the pyquasilag extension module.

Build and install with `pip install ./crates/python`, or put the built
shared library on PYTHONPATH as `pyquasilag.so`, then run this script.
"""

import math

import pyquasilag as ql


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    assert "gmq-improved" in ql.schemes()

    mq = ql.Scheme("gmq-basic", c=1.0)
    doc = mq.document()
    for w, want in zip(doc["weights"], [1 / 12, -1 / 3, 1 / 2, -1 / 3, 1 / 12]):
        close(w, want, 1e-15)
    close(mq.psi(1.3), mq.psi(-1.3), 1e-15)
    close(mq.psi_hat(0.0), 1.0, 1e-12)
    assert mq.strang_fix() == 1
    fit = mq.decay()
    assert fit["kind"] == "algebraic"
    close(fit["exponent"], -5.0, 0.2)

    total = sum(mq.psi_many([0.25 - k for k in range(-300, 301)]))
    close(total, 1.0, 1e-8)

    spline = ql.Scheme("bspline-improved")
    assert spline.support_radius == 3.0
    assert spline.strang_fix() == 3

    mid = ql.Scheme("tps-intermediate")
    order, left, right, jump = mid.kink_report(-math.pi, 1)[1]
    assert order == 1 and jump
    close(left, -8 / math.pi**3, 1e-12)
    close(right, 8 / math.pi**3, 1e-12)
    try:
        mid.psi_hat(-math.pi, 1)
    except ql.NumericalError:
        pass
    else:
        raise AssertionError("expected a kink at -pi")

    report = ql.Scheme("gmq-improved", c=1.0).certify(convergence=False)
    assert report["sf_degree"] == 3
    assert report["predicted_order"] == {"kind": "log", "power": 4}

    for bad in [lambda: ql.Scheme("nope"), lambda: ql.Scheme("gmq-basic", c=-1.0)]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    cases = ql.selftest()
    assert cases and all(passed for *_, passed in cases), cases
    print(f"ok: {len(cases)} special-function checks, {len(ql.schemes())} schemes")


if __name__ == "__main__":
    main()
