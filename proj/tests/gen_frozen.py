#!/usr/bin/env python3
"""Regenerates tests/frozen.hpp.

Reference values come from scipy.linalg.expm and scipy.stats.chi2 so the
C++ closed forms are checked against an independent implementation.  Run
from the repository root:

    python3 tests/gen_frozen.py > tests/frozen.hpp
"""
import numpy as np
import scipy.linalg
import scipy.stats


def skew(p):
    return np.array([
        [0.0, -p[2], p[1]],
        [p[2], 0.0, -p[0]],
        [-p[1], p[0], 0.0],
    ])


def generator_rates(omega, accel):
    g = np.zeros((5, 5))
    g[0:3, 0:3] = skew(omega)
    g[0:3, 3] = accel
    g[3, 4] = 1.0
    return g


def se23_hat(xi):
    h = np.zeros((5, 5))
    h[0:3, 0:3] = skew(xi[0:3])
    h[0:3, 3] = xi[3:6]
    h[0:3, 4] = xi[6:9]
    return h


def se23_ad(xi):
    """ad matrix in (phi, nu, rho) ordering."""
    a = np.zeros((9, 9))
    ph, nu, rho = xi[0:3], xi[3:6], xi[6:9]
    a[0:3, 0:3] = skew(ph)
    a[3:6, 3:6] = skew(ph)
    a[6:9, 6:9] = skew(ph)
    a[3:6, 0:3] = skew(nu)
    a[6:9, 0:3] = skew(rho)
    return a


def left_jacobian(xi):
    """J_l = integral_0^1 expm(s ad) ds via the block-matrix trick."""
    a = se23_ad(xi)
    blk = np.zeros((18, 18))
    blk[0:9, 0:9] = a
    blk[0:9, 9:18] = np.eye(9)
    return scipy.linalg.expm(blk)[0:9, 9:18]


def fmt(x):
    return np.format_float_scientific(x, precision=16, unique=False)


def emit_array(name, values):
    flat = np.asarray(values).reshape(-1)
    print(f"inline constexpr double {name}[{len(flat)}] = {{")
    for i in range(0, len(flat), 3):
        chunk = ", ".join(fmt(v) for v in flat[i:i + 3])
        tail = "," if i + 3 < len(flat) else ""
        print(f"    {chunk}{tail}")
    print("};")


def emit_scalar(name, value):
    print(f"inline constexpr double {name} = {fmt(value)};")


CASES = [
    ("A", np.array([0.3, -0.2, 0.5]), np.array([1.2, -9.81, 0.4]), 0.01),
    ("B", np.array([-1.1, 0.7, 0.25]), np.array([0.05, 2.0, -3.3]), 0.1),
    ("C", np.array([1e-8, -2e-8, 1.5e-8]), np.array([0.5, 0.5, 0.5]), 0.02),
]

XI = np.array([0.4, -0.3, 0.2, 1.0, -2.0, 0.5, -0.7, 0.3, 1.1])

print("// Generated by tests/gen_frozen.py; do not edit by hand.")
print("// Reference values computed with scipy.linalg.expm and")
print(f"// scipy.stats.chi2 (scipy {scipy.__version__}, "
      f"numpy {np.__version__}).")
print("#pragma once")
print()
print("namespace relnav_frozen {")
print()
for tag, omega, accel, dt in CASES:
    emit_array(f"kOmega{tag}", omega)
    emit_array(f"kAccel{tag}", accel)
    emit_scalar(f"kDt{tag}", dt)
    emit_array(f"kStep{tag}", scipy.linalg.expm(dt * generator_rates(omega, accel)))
    print()
emit_array("kExpXi", XI)
emit_array("kExpMatrix", scipy.linalg.expm(se23_hat(XI)))
print()
emit_array("kLeftJacobianXi", XI)
emit_array("kLeftJacobian", left_jacobian(XI))
print()
emit_scalar("kGate997Dof1", scipy.stats.chi2.ppf(0.997, 1))
emit_scalar("kNeesLo", scipy.stats.chi2.ppf(0.025, 750) / 50.0)
emit_scalar("kNeesHi", scipy.stats.chi2.ppf(0.975, 750) / 50.0)
print()
print("}  // namespace relnav_frozen")
