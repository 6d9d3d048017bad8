"""Closed-form majorants/minorants for the walk's distance to uniform.

With the schedule (a_n, b_n) = ((n(q-1)/2q) log n(q-1), n(q-1)/2q), the
distance drops from near 1 to near 0 inside a window of width O(b_n)
around a_n.  This module evaluates every inequality that pins that window
down:

* the spectral upper bound   tv**2 <= (1/4) sum_{j>=1} d_j lam[j]**(2k),
* regime majorants of tv**2 at k = b_n (log n(q-1) + c):
    (1/4)(e**(e**-c) - 1) for q >= 5,
    (5/2)(...) for q = 3 (n >= 3),  (9/4)(...) for q = 4 (n >= 2),
* the minorant tv >= 1 - (4q+b) e**-c at k = b_n (log n(q-1) - c),
* Markov/Chebyshev diagnostics of the minorant proof,
* the limiting profile erf(e**(-+c/2) / (2 sqrt 2)),
* the elementary comparisons e**-x vs |1-x| and the scaled-binomial
  ratio caps (<= 9 for the q=3 family, <= 8 for the q=4 family).

Majorant checks round the scheduled step count up, minorant checks round
it down; both directions are conservative because tv is non-increasing
in k.  Bounds that are vacuous (majorant > 1, minorant < 0) are reported
satisfied-vacuously rather than dropped, so grids stay informative.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .scheme import (
    Backend,
    ParameterError,
    SchemeParams,
    tv_distance,
    uniform,
)
from .spectral import kstep_distribution, spectrum

EXACT_BACKEND_MAX_N = 30


@dataclass(frozen=True)
class CutoffSchedule:
    """Cutoff time a_n = b_n log n(q-1) and window width b_n = n(q-1)/2q."""

    params: SchemeParams
    a_n: float
    b_n: float


def cutoff_schedule(params: SchemeParams) -> CutoffSchedule:
    b_n = params.degree / (2 * params.q)
    return CutoffSchedule(params, b_n * math.log(params.degree), b_n)


def schedule_step(params: SchemeParams, c: float) -> float:
    """Real-valued k = (n(q-1)/2q)(log n(q-1) + c); negative c walks back."""
    return params.degree / (2 * params.q) * (math.log(params.degree) + c)


def offset_from_step(params: SchemeParams, k: float) -> float:
    """Invert the schedule: c = k*2q/(n(q-1)) - log n(q-1)."""
    return 2 * params.q * k / params.degree - math.log(params.degree)


def resolve_backend(params: SchemeParams, backend: str) -> Backend:
    if backend == "auto":
        return "exact" if params.n <= EXACT_BACKEND_MAX_N else "float"
    if backend in ("exact", "float"):
        return backend
    raise ParameterError(f"unknown backend {backend!r}")


def tv_to_uniform(params: SchemeParams, k: int, backend: str = "auto"):
    """Distance of the k-step distribution to uniform, exact or float."""
    be = resolve_backend(params, backend)
    return tv_distance(kstep_distribution(params, k, be), uniform(params, be))


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality at a single (k, c).

    For the upper-bound family (`which` in upper-lemma/thm-*) the claim is
    tv_exact**2 <= bound_value; for `minorant` it is tv_exact >= bound_value.
    `vacuous` marks bounds that hold for free (majorant > 1, minorant < 0).
    """

    which: str
    k: int
    c: float
    tv_exact: float
    bound_value: float
    satisfied: bool
    vacuous: bool = False


def upper_bound_lemma_rhs(params: SchemeParams, k: int, backend: Backend = "exact"):
    """(1/4) sum_{j=1}^{n} d_j lam[j]**(2k), the spectral tv**2 bound."""
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    spec = spectrum(params)
    if backend == "exact":
        return (
            sum(
                (spec.mult[j] * spec.lam[j] ** (2 * k) for j in range(1, params.n + 1)),
                Fraction(0),
            )
            / 4
        )
    if backend != "float":
        raise ParameterError(f"unknown backend {backend!r}")
    n, q = params.n, params.q
    js = np.arange(1, n + 1, dtype=np.float64)
    logd = (
        js * math.log(q - 1)
        + math.lgamma(n + 1)
        - np.array([math.lgamma(v + 1) + math.lgamma(n - v + 1) for v in js])
    )
    lam = np.abs(np.asarray([float(v) for v in spec.lam[1:]]))
    if k == 0:
        exponents = logd  # lam**0 = 1 even where lam = 0
    else:
        with np.errstate(divide="ignore"):
            exponents = logd + 2 * k * np.log(lam)
    top = float(np.max(exponents))
    if top == -math.inf:
        return 0.0
    s = top + math.log(float(np.sum(np.exp(exponents - top))))
    return math.inf if s > 700 else math.exp(s) / 4


_MAJORANT_CONSTANTS = {3: Fraction(5, 2), 4: Fraction(9, 4)}


def majorant_constant(q: int) -> Fraction:
    if q < 3:
        raise ParameterError("no majorant theorem covers q = 2")
    return _MAJORANT_CONSTANTS.get(q, Fraction(1, 4))


def majorant(q: int, c: float) -> float:
    """Regime majorant of tv**2 at window offset c > 0.

    (1/4)(e**(e**-c) - 1) for q >= 5, constant 5/2 for q = 3, 9/4 for q = 4.
    Values above 1 are vacuous but still returned.
    """
    if c <= 0:
        raise ParameterError("the majorant theorems need c > 0")
    return float(majorant_constant(q)) * math.expm1(math.exp(-c))


def _majorant_scope(params: SchemeParams) -> None:
    n, q = params.n, params.q
    if q < 3:
        raise ParameterError("no majorant theorem covers q = 2")
    if q == 3 and n < 3:
        raise ParameterError("the q = 3 majorant needs n >= 3")
    if q == 4 and n < 2:
        raise ParameterError("the q = 4 majorant needs n >= 2")


def check_majorant(
    params: SchemeParams,
    c: float,
    rounding: Literal["ceil", "exact"] = "ceil",
    backend: str = "auto",
) -> BoundReport:
    """Verify tv**2 <= majorant at k derived from the schedule.

    `ceil` takes k = ceil(b_n (log n(q-1) + c)); `exact` insists the
    schedule value is already an integer (within 1e-9) and errors
    otherwise, validating the theorem in its literal form.
    """
    _majorant_scope(params)
    if c <= 0:
        raise ParameterError("the majorant theorems need c > 0")
    k_real = schedule_step(params, c)
    if rounding == "ceil":
        k = math.ceil(k_real)
    elif rounding == "exact":
        k = round(k_real)
        if abs(k_real - k) > 1e-9:
            raise ParameterError(
                f"schedule value {k_real} is not an integer; cannot use exact mode"
            )
    else:
        raise ParameterError(f"unknown rounding {rounding!r}")
    tv = float(tv_to_uniform(params, k, backend))
    bound = majorant(params.q, c)
    which = {3: "thm-q3", 4: "thm-q4"}.get(params.q, "thm-q5")
    return BoundReport(
        which=which,
        k=k,
        c=c,
        tv_exact=tv,
        bound_value=bound,
        satisfied=tv * tv <= bound,
        vacuous=bound >= 1.0,
    )


def minorant(q: int, b: float, c: float) -> float:
    """Lower bound 1 - (4q+b) e**-c for tv at offset c below the cutoff.

    b = 0 gives the asymptotic corollary form; negative values are vacuous
    but returned.
    """
    if b < 0:
        raise ParameterError("offset parameter b must be >= 0")
    if c < 0:
        raise ParameterError("offset c must be >= 0")
    return 1.0 - (4 * q + b) * math.exp(-c)


def check_minorant(
    params: SchemeParams,
    c0: float,
    b: float,
    c: float,
    backend: str = "auto",
) -> BoundReport:
    """Report tv >= 1 - (4q+b) e**-c at k = floor(b_n (log n(q-1) - c)).

    The inequality is guaranteed by the minorant theorem only for n past
    an unspecified threshold; callers assert it only where an empirical
    sweep has established validity.
    """
    if not 0 <= c <= min(c0, math.log(params.degree)):
        raise ParameterError(
            "need 0 <= c <= min(c0, log n(q-1)) for the minorant schedule"
        )
    k = math.floor(schedule_step(params, -c))
    tv = float(tv_to_uniform(params, k, backend))
    bound = minorant(params.q, b, c)
    return BoundReport(
        which="minorant",
        k=k,
        c=c,
        tv_exact=tv,
        bound_value=bound,
        satisfied=tv >= bound or bound < 0,
        vacuous=bound < 0,
    )


@dataclass(frozen=True)
class MinorantDiagnostics:
    """Proof-level quantities behind the minorant at one (n, k, b, c)."""

    beta: float
    pi_B: float
    nu_B: float
    markov_lb: float
    chebyshev_ub: float
    chebyshev_applicable: bool
    tv_exact: float


def minorant_diagnostics(
    params: SchemeParams, k: int, b: float, c: float, backend: str = "auto"
) -> MinorantDiagnostics:
    """Mass of the small-|phi_1| event under uniform and under the walk.

    B = { classes l with |phi_1(l)| < beta/sqrt(n) } for
    beta = sqrt(q/((4q+b)(q-1))) e**(c/2).  Markov gives
    pi(B) >= 1 - 1/(beta**2 (q-1)); Chebyshev gives nu_k(B) <= 1/beta**2
    provided E phi_1 >= 2 beta/sqrt(n) and the variance cap 1/n applies,
    i.e. (n-2)(q-1) >= 2; and always tv >= pi(B) - nu_k(B).
    """
    n, q = params.n, params.q
    if b < 0 or c < 0:
        raise ParameterError("need b >= 0 and c >= 0")
    beta = math.sqrt(q / ((4 * q + b) * (q - 1))) * math.exp(c / 2)
    threshold = beta / math.sqrt(n)
    d = params.degree
    in_b = [l for l in range(n + 1) if abs(1 - Fraction(l * q, d)) < threshold]

    be = resolve_backend(params, backend)
    walk = kstep_distribution(params, k, be)
    pi = uniform(params, be)
    if be == "exact":
        pi_mass = float(sum((pi.mass[l] for l in in_b), Fraction(0)))
        nu_mass = float(sum((walk.mass[l] for l in in_b), Fraction(0)))
    else:
        pi_mass = math.fsum(pi.mass[l] for l in in_b)
        nu_mass = math.fsum(walk.mass[l] for l in in_b)
    lam1 = float(spectrum(params).lam[1])
    mean_phi1 = lam1 ** k
    applicable = mean_phi1 >= 2 * threshold and (n - 2) * (q - 1) >= 2
    return MinorantDiagnostics(
        beta=beta,
        pi_B=pi_mass,
        nu_B=nu_mass,
        markov_lb=1 - 1 / (beta * beta * (q - 1)),
        chebyshev_ub=1 / (beta * beta),
        chebyshev_applicable=applicable,
        tv_exact=float(tv_distance(walk, pi)),
    )


def hora_limit(c: float, side: Literal["plus", "minus"]) -> float:
    """Limiting distance profile erf(e**(-c/2)/(2 sqrt 2)) (plus side)
    or erf(e**(c/2)/(2 sqrt 2)) (minus side)."""
    if side == "plus":
        x = math.exp(-c / 2)
    elif side == "minus":
        x = math.exp(c / 2)
    else:
        raise ParameterError(f"side must be 'plus' or 'minus', got {side!r}")
    return math.erf(x / (2 * math.sqrt(2)))


def lemma32_check(x: float) -> bool:
    """Elementary comparison behind the majorant split.

    e**-x >= |1-x| for x <= 5/4 and e**-x <= |1-x| for x >= 4/3; between
    the two regimes no inequality is claimed and the check is vacuous.
    """
    if x <= 1.25:
        return math.exp(-x) >= abs(1 - x)
    if x >= 4 / 3:
        return math.exp(-x) <= abs(1 - x)
    return True


@dataclass(frozen=True)
class Lemma35Result:
    """Scaled-binomial mirror/center ratios for one (family, m, l)."""

    q_case: int
    m: int
    l: int
    ns: tuple
    ratios: tuple
    cap: int
    holds: bool


def _scaled_binomial(base: int, n: int, j: int) -> int:
    return base ** j * math.comb(n, j)


def lemma35_ratio_check(q_case: int, m: int, l: int) -> Lemma35Result:
    """Exact ratio chain a_{n, mirror}/a_{n, center} with its cap.

    q_case 3: a_{n,j} = 2**j C(n,j), n in {3m-3, 3m-2, 3m-1}, mirror index
    3m-l-3+t for n = 3m-3+t, center l+m-1; chain increasing in n, cap 9.
    q_case 4: a_{n,j} = 3**j C(n,j), n in {2m-2, 2m-1}, mirror 2m-l-2+t,
    center l+m-1; cap 8.
    """
    if q_case == 3:
        if m < 2 or not 0 <= l <= m - 1:
            raise ParameterError("q=3 family needs m >= 2 and 0 <= l <= m-1")
        base, cap = 2, 9
        ns = (3 * m - 3, 3 * m - 2, 3 * m - 1)
        mirrors = (3 * m - l - 3, 3 * m - l - 2, 3 * m - l - 1)
    elif q_case == 4:
        if m < 2 or not 0 <= l <= (m - 1) // 2:
            raise ParameterError(
                "q=4 family needs m >= 2 and 0 <= l <= floor((m-1)/2)"
            )
        base, cap = 3, 8
        ns = (2 * m - 2, 2 * m - 1)
        mirrors = (2 * m - l - 2, 2 * m - l - 1)
    else:
        raise ParameterError("q_case must be 3 or 4")
    center = l + m - 1
    ratios = tuple(
        Fraction(_scaled_binomial(base, n, hi), _scaled_binomial(base, n, center))
        for n, hi in zip(ns, mirrors)
    )
    holds = all(r <= cap for r in ratios) and all(
        ratios[i] <= ratios[i + 1] for i in range(len(ratios) - 1)
    )
    return Lemma35Result(q_case, m, l, ns, ratios, cap, holds)


def lemma34_debug_sum(q_case: int, m: int, l: int) -> Fraction:
    """Rational value of the integral-comparison sums, for inspection.

    q_case 3: sum_{p=l}^{2m-l-1} (p-m+2)/(p+m)  (bounded by log 9),
    q_case 4: sum_{p=l}^{m-l-1} (2p-m+3)/(p+m)  (bounded by log 8).
    """
    if m < 2:
        raise ParameterError("need m >= 2")
    if q_case == 3:
        if not 0 <= l <= m:
            raise ParameterError("q=3 sum needs 0 <= l <= m")
        return sum(
            (Fraction(p - m + 2, p + m) for p in range(l, 2 * m - l)), Fraction(0)
        )
    if q_case == 4:
        if not 0 <= l <= m // 2:
            raise ParameterError("q=4 sum needs 0 <= l <= floor(m/2)")
        return sum(
            (Fraction(2 * p - m + 3, p + m) for p in range(l, m - l)), Fraction(0)
        )
    raise ParameterError("q_case must be 3 or 4")
