"""Ground-truth engine: exact powering of the radial birth-death chain.

Projected onto distance classes, one step of the walk from class l moves

    down with probability l / (n(q-1)),
    stays with probability l(q-2) / (n(q-1)),
    up   with probability (n-l) / n,

because a vertex at distance l has l neighbours one class down, l(q-2)
sideways and (n-l)(q-1) one class up, each taken with probability
1/(n(q-1)).  The counting itself is certified against a brute-force
enumerator of the literal q**n-vertex graph (`enumerate_tiny`).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scheme import (
    ParameterError,
    RadialDistribution,
    ResourceBudgetError,
    SchemeParams,
    class_weights,
    point_mass,
)

DEFAULT_BIT_BUDGET = 10 ** 6
DEFAULT_STATE_BUDGET = 10 ** 6


@dataclass(frozen=True)
class RadialMatrix:
    """Tridiagonal transition probabilities of the distance chain."""

    params: SchemeParams
    down: tuple
    stay: tuple
    up: tuple


def radial_matrix(params: SchemeParams) -> RadialMatrix:
    """Exact down/stay/up probabilities for every current class l."""
    n, q = params.n, params.q
    d = params.degree
    down = tuple(Fraction(l, d) for l in range(n + 1))
    stay = tuple(Fraction(l * (q - 2), d) for l in range(n + 1))
    up = tuple(Fraction(n - l, n) for l in range(n + 1))
    return RadialMatrix(params, down, stay, up)


def power_step(dist: RadialDistribution, m: RadialMatrix) -> RadialDistribution:
    """One convolution step on the distance chain.

    mass'[l] = mass[l-1] up[l-1] + mass[l] stay[l] + mass[l+1] down[l+1];
    exact when the input is exact.
    """
    if dist.params != m.params:
        raise ParameterError("distribution and matrix live on different schemes")
    n = dist.params.n
    old = dist.mass
    new = []
    for l in range(n + 1):
        acc = old[l] * m.stay[l]
        if l > 0:
            acc += old[l - 1] * m.up[l - 1]
        if l < n:
            acc += old[l + 1] * m.down[l + 1]
        new.append(acc)
    return RadialDistribution(dist.params, new, dist.backend)


def _mass_bits(mass) -> int:
    bits = 0
    for v in mass:
        bits += v.numerator.bit_length() + v.denominator.bit_length()
    return bits


def kstep_oracle(
    params: SchemeParams, k: int, bit_budget: int = DEFAULT_BIT_BUDGET
) -> RadialDistribution:
    """k exact steps of the distance chain from the basepoint."""
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    m = radial_matrix(params)
    dist = point_mass(params)
    for _ in range(k):
        dist = power_step(dist, m)
        if _mass_bits(dist.mass) > bit_budget:
            raise ResourceBudgetError(
                f"rational mass vector exceeded {bit_budget} bits at n={params.n}"
            )
    return dist


def _dense_rows(m: RadialMatrix) -> list:
    n = m.params.n
    rows = []
    for l in range(n + 1):
        row = [Fraction(0)] * (n + 1)
        if l > 0:
            row[l - 1] = m.down[l]
        row[l] = m.stay[l]
        if l < n:
            row[l + 1] = m.up[l]
        rows.append(row)
    return rows


def _mat_mul(a: list, b: list) -> list:
    size = len(a)
    bt = list(zip(*b))
    return [
        [sum(x * y for x, y in zip(row, col)) for col in bt]
        for row in a
    ]


def kstep_by_squaring(params: SchemeParams, k: int) -> RadialDistribution:
    """Alternative oracle path: exact matrix exponentiation by squaring.

    Rational entries densify under squaring, so this is only sensible for
    small n; it exists to cross-check the iterative path at large k.
    """
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    n = params.n
    result = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n + 1)]
        for i in range(n + 1)
    ]
    base = _dense_rows(radial_matrix(params))
    e = k
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        e >>= 1
        if e:
            base = _mat_mul(base, base)
    return RadialDistribution(params, tuple(result[0]), "exact")


def enumerate_tiny_steps(
    params: SchemeParams, k_max: int, max_states: int = DEFAULT_STATE_BUDGET
):
    """Yield the brute-force distribution at k = 0, 1, ..., k_max in turn.

    Works on the literal q**n-vertex graph with integer numerators over the
    implicit denominator (n(q-1))**k: a step replaces the value at x by the
    sum over coordinates i of (column-sum over letter values at i) minus
    n * value(x).  Each step is compressed by distance class and must equal
    `kstep_oracle` exactly.
    """
    if k_max < 0:
        raise ParameterError("step count k must be >= 0")
    n, q = params.n, params.q
    if params.size > max_states:
        raise ResourceBudgetError(
            f"q**n = {params.size} exceeds the state budget {max_states}"
        )
    shape = (q,) * n
    state = np.zeros(shape, dtype=object)
    state[(0,) * n] = 1

    nonzero = (np.arange(q) != 0).astype(np.int64)
    dist = np.zeros(shape, dtype=np.int64)
    for axis in range(n):
        idx = [1] * n
        idx[axis] = q
        dist = dist + nonzero.reshape(idx)
    masks = [dist == l for l in range(n + 1)]

    denominator = 1
    for k in range(k_max + 1):
        if k:
            acc = np.zeros(shape, dtype=object)
            for axis in range(n):
                acc = acc + state.sum(axis=axis, keepdims=True)
            state = acc - n * state
            denominator *= params.degree
        mass = tuple(
            Fraction(int(state[m].sum()), denominator) for m in masks
        )
        yield RadialDistribution(params, mass, "exact")


def enumerate_tiny(
    params: SchemeParams, k: int, max_states: int = DEFAULT_STATE_BUDGET
) -> RadialDistribution:
    """Brute-force k-step distribution on the literal q**n-vertex graph."""
    for dist in enumerate_tiny_steps(params, k, max_states):
        pass
    return dist


def float_step_arrays(params: SchemeParams):
    """down/stay/up rows as float64 arrays, for the float powering engine."""
    m = radial_matrix(params)
    return (
        np.array([float(v) for v in m.down]),
        np.array([float(v) for v in m.stay]),
        np.array([float(v) for v in m.up]),
    )


def float_power_step(mass: np.ndarray, down, stay, up) -> np.ndarray:
    """One float radial step; all coefficients nonnegative, so no
    cancellation and errors stay at the roundoff level for any k."""
    new = mass * stay
    new[1:] += mass[:-1] * up[:-1]
    new[:-1] += mass[1:] * down[1:]
    return new


def kstep_float_powering(params: SchemeParams, k: int) -> RadialDistribution:
    """k float steps of the distance chain from the basepoint.

    The cancellation-free float engine: O(n k) work, stable at any (n, k);
    it backs the float backend wherever spectral summation would lose
    accuracy (small k or very large n).
    """
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    down, stay, up = float_step_arrays(params)
    mass = np.zeros(params.n + 1)
    mass[0] = 1.0
    for _ in range(k):
        mass = float_power_step(mass, down, stay, up)
    return RadialDistribution(params, mass, "float")


def reversibility_holds(params: SchemeParams) -> bool:
    """Detailed balance w[l] up[l] == w[l+1] down[l+1], exactly."""
    m = radial_matrix(params)
    w = class_weights(params).w
    return all(
        w[l] * m.up[l] == w[l + 1] * m.down[l + 1] for l in range(params.n)
    )
