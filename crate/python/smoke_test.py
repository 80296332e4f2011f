"""Smoke test for the complex_susy_py extension.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/complex_susy_py-*.whl
"""

import cmath
import math

import complex_susy_py as cs

omega = cmath.exp(1j * math.pi / 6)

assert abs(cs.eigenvalue(2) - 2.5 * omega) < 1e-14

u, du = cs.seed_value(0.3)
assert math.isfinite(abs(u)) and math.isfinite(abs(du))

# Undeformed AMS seed: the partner is the oscillator shifted by -omega.
ams = cs.Chain(seed="ams", nu=0)
for x in (-2.0, 0.0, 1.5):
    assert abs(ams.potential(x) - (0.5 * omega**2 * x * x - omega)) < 1e-9

even = cs.Chain(seed="bound-even:1")
deleted = [(label, e) for label, status, e in even.spectrum() if status == "deleted"]
assert deleted == [("n=2", deleted[0][1])] and abs(deleted[0][1] - 2.5 * omega) < 1e-14
assert even.deleted_levels == [2]
try:
    even.state(2, 0.0)
except cs.SusyError:
    pass
else:
    raise AssertionError("deleted level should raise")

xs, rho = even.density(3)
area = sum(0.5 * (xs[i + 1] - xs[i]) * (rho[i] + rho[i + 1]) for i in range(len(xs) - 1))
assert abs(area - 1.0) < 1e-6, area

pair = cs.Chain(seed="ams", nu=0.9 + 0.4j, order=2)
assert all(v is not None for v in pair.potential_on([-3.0, 0.0, 3.0]))

for eps in (0.01 + 1j, 1 + 1j, 2 + 1j):
    g = cs.Chain(epsilon=eps).piv(role=2)
    for scheme in ("analytic", "finite-difference"):
        report = g.certify(scheme)
        assert report["passed"], (eps, report["max_residual"])
    bad = g.with_b(g.b + 1).certify()
    assert not bad["passed"] and bad["max_residual"] > 1e-2

# g = -1/y has a pole at the origin; stay away from it.
off_origin = [x / 10 for x in range(-60, 61) if abs(x) >= 5]
rational = cs.Chain(epsilon=-omega / 2, nu=0).piv(role=1, xs=off_origin)
assert rational.certify(xs=off_origin)["max_residual"] < 1e-12
assert abs(rational.a + 2) < 1e-10 and abs(rational.b + 2) < 1e-10
y = cmath.sqrt(omega) * 1.3
assert abs(rational.g(1.3) + 1 / y) < 1e-10

try:
    cs.Chain(theta=2.0)
except cs.SusyError:
    pass
else:
    raise AssertionError("theta outside [0, pi/2) should raise")

print("complex_susy_py", cs.__version__, "smoke test passed")
