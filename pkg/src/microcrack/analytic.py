"""Exact solutions for the crack-length distribution under a linear stress ramp.

Along a characteristic the crack length obeys dl/dt = -alpha + 3*b*t^2*l with
b = beta*v_sigma^2/3, so l*exp(-b t^3) changes at rate -alpha*exp(-b t^3).  The
time integral of exp(-b s^3) is a lower incomplete gamma function of order 1/3,
which is why that function is implemented here.

Two evaluators are provided:

``analytic_solution``
    The closed form that traces the characteristic straight back to t = 0 with
    the lower integration limit at zero, and returns f0 wherever the growth
    condition fails.

``gated_solution``
    Traces the characteristic back only to the moment its crack crossed the
    growth threshold; before that the crack was frozen.  This is the solution of
    the gated velocity law that the finite-difference schemes discretize, and it
    is the default oracle of ``analytic_field``.

The two coincide when alpha = 0 and at t = 0.  Elsewhere the closed form is
discontinuous at the threshold l* = alpha/(beta v_sigma^2 t^2) and does not
conserve the second moment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import ContractError, Field, Grid, Params
from .physics import InitialCondition, initial_density

_EPS = 1e-16
_MAX_TERMS = 500
_TINY = 1e-300


class DomainError(ValueError):
    pass


class DegenerateLoadingError(ValueError):
    """Raised when v_sigma = 0, for which no characteristic scaling exists."""


class SingularPointError(ValueError):
    pass


def _series(a, x):
    # x^a e^-x sum_n x^n / (a (a+1) ... (a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_TERMS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")
    return total * math.exp(a * math.log(x) - x)


def _upper_continued_fraction(a, x):
    # modified Lentz evaluation of Gamma(a, x) = e^-x x^a / (x+1-a- 1(1-a)/(x+3-a- ...))
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma fraction did not converge (a={a}, x={x})")
    return math.exp(a * math.log(x) - x) * h


def lower_incomplete_gamma(a: float, x: float) -> float:
    """gamma(a, x) = integral of s^(a-1) e^-s over [0, x]."""
    if not a > 0:
        raise DomainError(f"lower_incomplete_gamma needs a > 0, got {a}")
    if not x >= 0:
        raise DomainError(f"lower_incomplete_gamma needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return math.gamma(a)
    if x < a + 1.0:
        return _series(a, x)
    return math.gamma(a) - _upper_continued_fraction(a, x)


def generalized_incomplete_gamma(a: float, x0: float, x1: float) -> float:
    """Integral of s^(a-1) e^-s over [x0, x1]."""
    return lower_incomplete_gamma(a, x1) - lower_incomplete_gamma(a, x0)


@dataclass(frozen=True)
class CharacteristicState:
    b_coeff: float
    decay_factor: float
    gamma_term: float


def _require_loading(params: Params):
    if not params.v_sigma > 0:
        raise DegenerateLoadingError("exact solution needs v_sigma > 0")
    if not params.beta > 0:
        raise DegenerateLoadingError("exact solution needs beta > 0")


def _gamma_scale(params: Params) -> float:
    # alpha * integral_0^t exp(-b s^3) ds == alpha * scale * gamma(1/3, b t^3)
    return params.alpha / (9.0 * params.beta * params.v_sigma**2) ** (1.0 / 3.0)


def characteristic_state(t: float, params: Params) -> CharacteristicState:
    if t < 0:
        raise ContractError("time must be >= 0")
    _require_loading(params)
    b = params.beta * params.v_sigma**2 / 3.0
    x = b * t**3
    return CharacteristicState(
        b_coeff=b,
        decay_factor=math.exp(-x),
        gamma_term=_gamma_scale(params) * lower_incomplete_gamma(1.0 / 3.0, x),
    )


def _check_point(l, t):
    if l == 0:
        raise SingularPointError("the exact solution is singular at l = 0")
    if not l > 0:
        raise ContractError(f"crack length must be > 0, got {l}")
    if not t >= 0:
        raise ContractError(f"time must be >= 0, got {t}")


def analytic_solution(l: float, t: float, params: Params, ic: InitialCondition) -> float:
    """Closed form with the characteristic traced back to t = 0.

    Returns f0(l) where alpha > beta v_sigma^2 l t^2, otherwise
    l^-2 e^(-b t^3) F(l e^(-b t^3) + gamma_term) with F(x) = x^2 f0(x).
    """
    _check_point(l, t)
    state = characteristic_state(t, params)
    if not params.alpha <= params.beta * params.v_sigma**2 * l * t**2:
        return float(initial_density(ic, l))
    u = l * state.decay_factor + state.gamma_term
    return float(state.decay_factor * u**2 * initial_density(ic, u) / l**2)


def growth_onset_time(l0: float, params: Params) -> float:
    """Time at which a crack of constant length l0 first reaches the growth threshold."""
    return math.sqrt(params.alpha / (params.beta * params.v_sigma**2 * l0))


def characteristic_foot(l: float, t: float, params: Params) -> tuple[float, float]:
    """Initial length l0 and growth-onset time s0 of the crack that has length l at t.

    Only meaningful on the growing side of the threshold.  Solves
    l0 e^(-b s0^3) - alpha*scale*(gamma(1/3, b t^3) - gamma(1/3, b s0^3)) = l e^(-b t^3)
    with s0 = growth_onset_time(l0).  The left side increases in l0 with slope
    e^(-b s0^3), so a bracketed Newton iteration is used.
    """
    _check_point(l, t)
    state = characteristic_state(t, params)
    b = state.b_coeff
    target = l * state.decay_factor
    if params.alpha == 0:
        return target, 0.0
    scale = _gamma_scale(params)
    g_t = lower_incomplete_gamma(1.0 / 3.0, b * t**3)
    lo = params.alpha / (params.beta * params.v_sigma**2 * t**2)
    hi = l
    if not lo < hi:
        return l, t

    def residual(l0):
        s0 = growth_onset_time(l0, params)
        x0 = b * s0**3
        frozen = math.exp(-x0)
        value = l0 * frozen - scale * (g_t - lower_incomplete_gamma(1.0 / 3.0, x0)) - target
        return value, frozen, s0

    x = min(max(target + state.gamma_term, lo), hi)
    for _ in range(200):
        r, slope, s0 = residual(x)
        if r == 0:
            return x, s0
        if r > 0:
            hi = x
        else:
            lo = x
        step = x - r / slope
        if not lo < step < hi:
            step = 0.5 * (lo + hi)
        if abs(step - x) <= 4 * _EPS * x or hi - lo <= 4 * _EPS * hi:
            return step, growth_onset_time(step, params)
        x = step
    raise ArithmeticError(f"characteristic foot did not converge at l={l}, t={t}")


def gated_solution(l: float, t: float, params: Params, ic: InitialCondition) -> float:
    """Exact solution when cracks stay frozen until they first reach the threshold.

    f(l, t) = l0^2 f0(l0) e^(-b (t^3 - s0^3)) / l^2 on the growing side, f0(l) elsewhere.
    """
    _check_point(l, t)
    state = characteristic_state(t, params)
    if not params.alpha <= params.beta * params.v_sigma**2 * l * t**2:
        return float(initial_density(ic, l))
    l0, s0 = characteristic_foot(l, t, params)
    if l0 == l:
        return float(initial_density(ic, l))
    jacobian = math.exp(-state.b_coeff * (t**3 - s0**3))
    return float(l0**2 * initial_density(ic, l0) * jacobian / l**2)


def analytic_field(
    t_index: int,
    grid: Grid,
    params: Params,
    ic: InitialCondition,
    closed_form: bool = False,
) -> Field:
    """Exact field at level ``t_index``.

    Node 0 is never transported; it carries f0(0) as boundary data.  By default
    nodes 1..lmax use ``gated_solution``; ``closed_form=True`` switches to
    ``analytic_solution``.
    """
    if t_index < 0:
        raise ContractError("time level must be >= 0")
    _require_loading(params)
    solution = analytic_solution if closed_form else gated_solution
    t = t_index * grid.dt
    lengths = grid.lengths()
    values = np.empty(grid.n_nodes)
    values[0] = initial_density(ic, 0.0)
    for i in range(1, grid.n_nodes):
        values[i] = solution(float(lengths[i]), t, params, ic)
    return Field(values, t_index)

