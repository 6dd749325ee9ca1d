"""Coefficient families feeding the large-argument engines.

Two families live here.  The pair coefficients b_n are the Taylor
coefficients of 1/(2i sin(pi (a - t))) about t = 0; they weight the
powers of the shifted logarithm in the pole-correction series, and the
subtracted variant b_{n,N} removes the 2N+1 poles nearest the origin so
the series keeps converging once the first N pole pairs are handled
explicitly.  The log-power coefficients weight the expansion used by
the logarithmic-series engine and are built from Hurwitz zeta values at
half-shifted arguments.

Everything here is plain double-precision arithmetic; the tables are
small (counts in the tens) and cached per (a, N, count, method).
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConditioningError
from .special_kernel import digamma, hurwitz_zeta

_TWO_PI_I = 2j * math.pi
_MAGNITUDE_CAP = 1e280
_COUNT_CAP = 200


@dataclass(frozen=True)
class CoefficientTable:
    """An immutable run of coefficients with its provenance.

    N is the subtraction depth: -1 marks the unsubtracted family, any
    N >= 0 means the poles at a + m for |m| <= N have been removed.
    """

    a: complex
    N: int
    values: tuple
    method: str  # "recurrence" | "stable-zeta" | "direct-sum"


def nearest_pole_distance(a):
    """Distance from t = 0 to the nearest pole a + m (integer m) of the
    generating function."""
    ac = complex(a)
    m = -round(ac.real)
    best = min(abs(ac + m - 1), abs(ac + m), abs(ac + m + 1))
    if best == 0.0:
        raise ConditioningError(f"a = {a} sits on a pole of the "
                                "coefficient generating function")
    return best


def _check_count(count):
    if not 1 <= count <= _COUNT_CAP:
        raise ValueError(f"count must be in [1, {_COUNT_CAP}], got {count}")


@lru_cache(maxsize=64)
def _recurrence_values(a, count):
    # quadratic recurrence equivalent to f f'' = 2 f'^2 + pi^2 f^2 for
    # f(t) = 1/(2i sin(pi (a - t)))
    nearest_pole_distance(a)  # raises when a sits exactly on a pole
    sin_pia = cmath.sin(cmath.pi * a)
    b = [0.0j] * max(count, 2)
    b[0] = 1.0 / (2j * sin_pia)
    b[1] = _TWO_PI_I * b[0] * b[0] * cmath.cos(cmath.pi * a)
    pi2 = math.pi * math.pi
    for n in range(count - 2):
        acc = 0.0j
        for m in range(n + 1):
            acc += 2.0 * (m + 1) * (n - m + 1) * b[m + 1] * b[n - m + 1]
            acc += pi2 * b[m] * b[n - m]
        for m in range(n):
            acc -= (m + 2) * (m + 1) * b[m + 2] * b[n - m]
        nxt = acc / ((n + 2) * (n + 1) * b[0])
        if abs(nxt) > _MAGNITUDE_CAP:
            raise ConditioningError(
                f"coefficient b_{n + 2} exceeds {_MAGNITUDE_CAP:.0e}; "
                "a is too close to an integer for this depth")
        b[n + 2] = nxt
    return tuple(b[:count])


def csc_coefficients(a, count):
    """b_0 .. b_{count-1} by the quadratic recurrence."""
    _check_count(count)
    return CoefficientTable(complex(a), -1, _recurrence_values(complex(a),
                                                               count),
                            "recurrence")


def csc_coefficients_contour(a, count, radius=None, nodes=512):
    """The same coefficients from a trapezoid Cauchy integral.

    Entirely independent of the recurrence: samples the generating
    function on a circle inside the nearest pole and reads the Taylor
    coefficients off the discrete Fourier sums.  Used as a cross-check;
    accuracy degrades geometrically in n, good to ~1e-10 for n <= 40
    at the default radius.
    """
    _check_count(count)
    ac = complex(a)
    if radius is None:
        radius = 0.6 * nearest_pole_distance(ac)
    samples = []
    for j in range(nodes):
        t = radius * cmath.exp(_TWO_PI_I * j / nodes)
        samples.append(1.0 / (2j * cmath.sin(cmath.pi * (ac - t))))
    out = []
    for n in range(count):
        acc = 0.0j
        for j, f in enumerate(samples):
            acc += f * cmath.exp(-_TWO_PI_I * j * n / nodes)
        out.append(acc / (nodes * radius ** n))
    return tuple(out)


def _alternating_zeta_block(p, x):
    # sum_{k>=0} (-1)^k (x + k)^(-p) for p >= 2
    return 0.5 ** p * (hurwitz_zeta(p, 0.5 * x) - hurwitz_zeta(p, 0.5 * (x + 1.0)))


def _alternating_psi_block(x):
    # sum_{k>=0} (-1)^k / (x + k)
    return 0.5 * (digamma(0.5 * (x + 1.0)) - digamma(0.5 * x))


def _remaining_pole_tail(a, N, n):
    # Partial fractions turn the generating function into an alternating
    # sum over all its poles; trimming |m| <= N leaves the tail over the
    # surviving poles, whose coefficient-n content is a pair of
    # alternating blocks anchored at N+1+a and N+1-a.  The nearest
    # surviving pole dominates every block, so nothing cancels and the
    # result is accurate at its own (tiny) scale.
    p = n + 1
    sign_n = -1.0 if N % 2 else 1.0
    if p == 1:
        blocks = (_alternating_psi_block(a + N + 1.0)
                  - _alternating_psi_block(N + 1.0 - a))
    else:
        sign_p = -1.0 if p % 2 else 1.0
        blocks = (_alternating_zeta_block(p, a + N + 1.0)
                  + sign_p * _alternating_zeta_block(p, N + 1.0 - a))
    return sign_n * (0.5j / math.pi) * blocks


@lru_cache(maxsize=64)
def _subtracted_values(a, N, count, method):
    if method == "stable-zeta":
        return tuple(_remaining_pole_tail(a, N, n) for n in range(count))
    base = _recurrence_values(a, count)
    c = 0.5j / math.pi
    out = []
    for n in range(count):
        re = [base[n].real]
        im = [base[n].imag]
        for m in range(-N, N + 1):
            sign = -1.0 if m % 2 else 1.0
            t = c * sign * complex(a + m) ** (-(n + 1))
            re.append(t.real)
            im.append(t.imag)
        out.append(complex(math.fsum(re), math.fsum(im)))
    return tuple(out)


def csc_coefficients_subtracted(a, N, count, method="stable-zeta"):
    """b_{n,N}: the coefficients after removing poles a + m, |m| <= N.

    "stable-zeta" sums the surviving-pole tail through Hurwitz zeta
    (resp. digamma for n = 0) blocks and is accurate at the
    coefficients' own scale for every n.  "direct-sum" is the
    definitional path: the unsubtracted coefficient plus the finite
    partial-fraction correction, fsum-compensated.  Its noise floor is
    ulp(|b_n|), and since |b_{n,N}| / |b_n| collapses geometrically in
    n it can only cross-check the other method near that scale; the
    tests compare the two at the unsubtracted magnitude.
    """
    _check_count(count)
    if N < 0:
        raise ValueError(f"subtraction depth N must be >= 0, got {N}")
    if method not in ("stable-zeta", "direct-sum"):
        raise ValueError(f"unknown method {method!r}")
    if complex(a).real - N - 1 >= 0:
        # the tail blocks assume the removed poles bracket the origin
        raise ConditioningError("subtraction depth too small for this a")
    return CoefficientTable(complex(a), N,
                            _subtracted_values(complex(a), N, count, method),
                            method)


def log_power_coefficients(s, a, count):
    """Weights for the logarithmic-series engine.

    Entry 0 is the digamma half-difference; entry n carries the falling
    product (s-1)(s-2)...(s-n) against a Hurwitz zeta half-difference.
    """
    _check_count(count)
    sc = complex(s)
    ac = complex(a)
    out = [0.5 * (digamma(0.5 * (ac + 1.0)) - digamma(0.5 * ac))]
    fall = 1.0 + 0.0j
    for n in range(1, count):
        fall *= sc - n
        diff = hurwitz_zeta(n + 1, 0.5 * ac) - hurwitz_zeta(n + 1,
                                                            0.5 * (ac + 1.0))
        out.append(fall * diff / 2.0 ** (n + 1))
    return tuple(out)
