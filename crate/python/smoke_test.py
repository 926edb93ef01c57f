"""Smoke test for the infrascat Python extension.

Build and install first:

    pip install maturin
    pip install --no-build-isolation -e crates/python
"""

import cmath
import math
import pathlib
import sys

import infrascat_py as ix

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "configs" / "golden.json"


def main() -> int:
    assert abs(ix.target_amplitude(2 * math.pi) - (-1)) < 1e-15
    assert abs(ix.target_amplitude(math.pi) - (-1j)) < 1e-15

    mu, residual, flagged = ix.fit_mu("sharp:1")
    gamma = 0.5772156649015329
    assert abs(mu - math.exp(gamma)) < 1e-4, mu
    assert residual < 1e-4 and not flagged

    # The antisymmetric part of the kernel does not depend on mu_v.
    a1 = ix.w_reg(0.3, 1.2, mu) - ix.w_reg(-0.3, -1.2, mu)
    a2 = ix.w_reg(0.3, 1.2) - ix.w_reg(-0.3, -1.2)
    assert cmath.isfinite(a1) and abs(a1 - a2) < 1e-14, (a1, a2)

    try:
        ix.fit_mu("bogus")
    except ValueError:
        pass
    else:
        raise AssertionError("bad regulator accepted")

    run = ix.amplitude(str(GOLDEN))
    assert run["gap"] <= 0.02, run["gap"]
    assert all(abs(s) <= 1 + 5 * err for _, s, err in run["samples"])
    print(f"mu_v = {mu:.10f}")
    print(f"S_inf = {run['extrapolated']:.6f}, target {run['target']:.6f}, gap {run['gap']:.2e}")
    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
