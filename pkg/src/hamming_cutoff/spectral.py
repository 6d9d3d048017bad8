"""Spectral engine: closed-form eigenvalues and k-step distributions.

One step of the walk scales the degree-j component of a radial function by
lam[j] = 1 - j*q/(n*(q-1)); k steps scale it by lam[j]**k.  Inverting the
transform gives the per-point probability at distance l after k steps,

    p_k(l) = q**-n * sum_j d_j * lam[j]**k * phi_j(l),

with multiplicities d_j = (q-1)**j * C(n, j).  The exact backend evaluates
this in rationals and must reproduce the radial-chain oracle bit for bit.

The float backend uses the same inversion with log-domain coefficients and
a compensated (Neumaier) sum over j taken from j = n down to 0 -- but only
inside its accuracy regime: once any single term of the sum exceeds ~e**3
the cancellation it must undergo is unrepresentable in float64, and the
backend falls back to cancellation-free float powering of the radial
chain, which is stable at every (n, k).  Inside the cutoff window the
spectral sum engages and stays accurate even for n in the thousands.

The second half of the module carries the moment identities of the
distance-1 spherical function phi_1: its square linearizes as

    phi_1**2 = a0 phi_0 + a1 phi_1 + a2 phi_2,
    (a0, a1, a2) = (1/(n(q-1)), (q-2)/(n(q-1)), (n-1)/n),

its stationary variance is 1/(n(q-1)), and its variance after k steps is
bounded by 1/n whenever (n-2)(q-1) >= 2.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import krawtchouk
from .krawtchouk import DEFAULT_TABLE_BUDGET, build_table
from .scheme import (
    Backend,
    ParameterError,
    RadialDistribution,
    SchemeParams,
    class_weights,
)


@dataclass(frozen=True)
class SpectrumTable:
    """Eigenvalues lam[j] = 1 - j*q/(n(q-1)) and multiplicities d_j."""

    params: SchemeParams
    lam: tuple
    mult: tuple


@lru_cache(maxsize=128)
def spectrum(params: SchemeParams) -> SpectrumTable:
    """Closed-form one-step spectrum of the walk."""
    n, q = params.n, params.q
    d = params.degree
    lam = tuple(Fraction(d - j * q, d) for j in range(n + 1))
    mult = tuple(math.comb(n, j) * (q - 1) ** j for j in range(n + 1))
    return SpectrumTable(params, lam, mult)


_SPECTRAL_TERM_CAP = 3.0  # max log of any summand before cancellation loses bits


def _kstep_float(params: SchemeParams, k: int) -> RadialDistribution:
    from . import radial  # deferred: radial imports scheme only

    n = params.n
    logpow = None
    if krawtchouk.float_table_supported(params) and k > 0:
        psi = krawtchouk._psi_table(params) if n > 2 else None
        logscale = krawtchouk._logscale(params)
        lam = krawtchouk._float_lambdas(params)
        with np.errstate(divide="ignore"):
            logpow = k * np.log(np.abs(lam))
        if psi is None:
            psi = np.array(
                [[float(v) for v in row] for row in krawtchouk._exact_table(params)]
            ) * np.exp(logscale)
        if np.max(logscale.max(axis=1) + logpow) > _SPECTRAL_TERM_CAP:
            logpow = None
    if logpow is None:
        return radial.kstep_float_powering(params, k)

    signs = np.where(lam < 0, -1.0, 1.0) ** (k % 2)
    terms = psi * np.exp(logscale + logpow[:, None]) * signs[:, None]
    total = np.zeros(n + 1)
    comp = np.zeros(n + 1)
    for j in range(n, -1, -1):  # small |lam**k| first, lam[0] = 1 last
        term = terms[j]
        new = total + term
        comp += np.where(
            np.abs(total) >= np.abs(term),
            (total - new) + term,
            (term - new) + total,
        )
        total = new
    mass = total + comp
    # clamp negative roundoff whose per-point size is below 1e-15
    w = class_weights(params).w
    clamp = 0.0
    log_eps = math.log(1e-15)
    for l in range(n + 1):
        if mass[l] < 0:
            threshold = log_eps + _log_weight(w[l])
            if math.log(-mass[l]) < threshold:
                clamp += -mass[l]
                mass[l] = 0.0
    return RadialDistribution(params, mass, "float", clamp_total=clamp)


def _log_weight(v: int) -> float:
    if v.bit_length() <= 900:
        return math.log(v)
    shift = v.bit_length() - 900
    return math.log(v >> shift) + shift * math.log(2.0)


def kstep_distribution(
    params: SchemeParams,
    k: int,
    backend: Backend = "exact",
    max_n: int = DEFAULT_TABLE_BUDGET,
) -> RadialDistribution:
    """k-step distribution by spectral inversion.

    mass[l] = (w[l]/q**n) * sum_j d_j lam[j]**k phi_j(l); exact Fractions on
    the exact backend (validated against the radial oracle).  The float
    backend uses the compensated spectral sum inside its accuracy regime
    and falls back to float radial powering outside it (see module notes).
    """
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    if params.n > max_n:
        raise ParameterError(
            f"n={params.n} exceeds the configured table budget {max_n}"
        )
    if backend == "float":
        return _kstep_float(params, k)
    if backend != "exact":
        raise ParameterError(f"unknown backend {backend!r}")
    n = params.n
    spec = spectrum(params)
    phi = build_table(params, "exact").phi
    w = class_weights(params)
    powers = [v ** k for v in spec.lam]
    mass = []
    for l in range(n + 1):
        s = Fraction(0)
        for j in range(n + 1):
            s += spec.mult[j] * powers[j] * phi[j][l]
        mass.append(Fraction(w.w[l], w.total) * s)
    return RadialDistribution(params, mass, "exact")


def expectation_phi(params: SchemeParams, j: int, k: int) -> Fraction:
    """E over the k-step distribution of phi_j, in closed form: lam[j]**k."""
    if not 0 <= j <= params.n:
        raise ParameterError(f"j must lie in 0..{params.n}, got {j}")
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    return spectrum(params).lam[j] ** k


def expectation_phi_by_sum(params: SchemeParams, j: int, k: int) -> Fraction:
    """Same expectation summed explicitly: sum_l mass[l] phi_j(l), exact.

    The masses come from the chain-powering oracle, which never touches an
    eigenvalue, so this path is independent of `expectation_phi`; their
    equality is a test.
    """
    from .radial import kstep_oracle

    if not 0 <= j <= params.n:
        raise ParameterError(f"j must lie in 0..{params.n}, got {j}")
    dist = kstep_oracle(params, k)
    phi = build_table(params, "exact").phi
    return sum(
        (dist.mass[l] * phi[j][l] for l in range(params.n + 1)), Fraction(0)
    )


@dataclass(frozen=True)
class StationaryMoments:
    """Stationary expectations of every phi_j and the variance of phi_1."""

    mean_phi: tuple
    var_phi1: Fraction


def stationary_moments(params: SchemeParams) -> StationaryMoments:
    """Weighted class sums under the uniform distribution, exact.

    Computed literally as sum_l (w[l]/q**n) phi_j(l); the closed forms
    (0 for j >= 1, variance 1/(n(q-1))) are assertions to test, not the
    implementation.
    """
    n = params.n
    w = class_weights(params)
    phi = build_table(params, "exact").phi
    means = []
    for j in range(n + 1):
        s = sum((w.w[l] * phi[j][l] for l in range(n + 1)), Fraction(0))
        means.append(s / w.total)
    second = sum(
        (w.w[l] * phi[1][l] * phi[1][l] for l in range(n + 1)), Fraction(0)
    ) / w.total
    return StationaryMoments(tuple(means), second - means[1] ** 2)


def linearization_phi1_squared(params: SchemeParams) -> tuple:
    """Coefficients (a0, a1, a2) with phi_1**2 = a0 phi_0 + a1 phi_1 + a2 phi_2."""
    n, q = params.n, params.q
    if n < 2:
        raise ParameterError(
            "the linearization needs phi_2 and so n >= 2; n=1 degenerates"
        )
    d = params.degree
    return (Fraction(1, d), Fraction(q - 2, d), Fraction(n - 1, n))


@dataclass(frozen=True)
class VariancePhi1:
    """Variance of phi_1 after k steps and whether it is <= 1/n."""

    value: Fraction
    bound_holds: bool


def variance_phi1_kstep(params: SchemeParams, k: int) -> VariancePhi1:
    """Var of phi_1 under the k-step distribution, via the linearization.

    Var = a0 + a1 lam[1]**k + a2 lam[2]**k - lam[1]**(2k).  The <= 1/n flag
    is guaranteed only when (n-2)(q-1) >= 2; outside that range it is
    reported but carries no guarantee.
    """
    if k < 0:
        raise ParameterError("step count k must be >= 0")
    n = params.n
    spec = spectrum(params)
    p1 = spec.lam[1] ** k
    if n >= 2:
        a0, a1, a2 = linearization_phi1_squared(params)
        value = a0 + a1 * p1 + a2 * (spec.lam[2] ** k) - p1 * p1
    else:
        # n = 1: phi_1 is +-1-valued, phi_1**2 == 1
        value = 1 - p1 * p1
    return VariancePhi1(value, value <= Fraction(1, n))
