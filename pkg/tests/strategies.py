"""Shared hypothesis strategies."""

import math

from hypothesis import strategies as st

finite = dict(allow_nan=False, allow_infinity=False)


def complex_in_box(lo=-2.0, hi=2.0):
    return st.builds(complex, st.floats(lo, hi, **finite), st.floats(lo, hi, **finite))


def annulus_points(r0=math.exp(-1) * 1.05, r1=math.e * 0.95):
    return st.builds(lambda lr, th: math.exp(lr) * complex(math.cos(th), math.sin(th)),
                     st.floats(math.log(r0), math.log(r1), **finite),
                     st.floats(0, 2 * math.pi, **finite))


def unit_complex():
    return st.floats(0, 2 * math.pi, **finite).map(lambda t: complex(math.cos(t), math.sin(t)))


def moebius_coeffs(scale=2.0):
    c = complex_in_box(-scale, scale)
    return st.tuples(c, c, c, c).filter(lambda q: abs(q[0] * q[3] - q[1] * q[2]) > 0.1)
