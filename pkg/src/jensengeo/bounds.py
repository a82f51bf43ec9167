"""Tight bounds relating Jensen divergences to total variation and trace
distance, and the joint-range diagram of the two quantities.

With V = sum |p_i - q_i| in [0, 2] and s_a(p) the binary order-a entropy:

  lower    L(V)  = s_a(1/2) - s_a(1/2 + V/4)
  upper    U_n   = (1/(a-1)) (1/2 - 2^-a) ||P - Q||_a^a     (n >= 3)
  upper    U_2   = s_a(V/4) - s_a(V/2) / 2                  (n = 2)

Validity caveats, established by explicit counterexamples (see the test
suite): L is attained and valid on two-letter pairs for every order in
(0, 2], and valid for every alphabet at order 1, but for n >= 3 with
order != 1 it can exceed the divergence (e.g. JD_2 of (1/2,1/2,0,0) vs
(0,0,1/2,1/2) is 1/4 while L(2) = 1/2). The upper bounds hold for every
alphabet and order in (0, 2]. The quantum analogue replaces V by the
trace distance; its lower bound is reliable for qubits (any order in
(0, 2]) and for any dimension at order 1, and the upper bound
(ln 2 / 2) ||rho1 - rho2||_1 holds for orders in [1, 2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .classical import (
    alpha_norm_power,
    as_distribution,
    binary_alpha_entropy,
    check_alpha,
    total_variation,
)
from .jensen import jd_alpha, qjd_alpha
from .quantum import as_density, trace_distance

__all__ = [
    "BoundReport",
    "lower_L",
    "upper_Un",
    "upper_U2",
    "lower_witness_pair",
    "upper_witness_pair",
    "bound_report",
    "q_bound_report",
    "ChainBounds",
    "chain_check",
    "DiagramPoints",
    "upper_curve_value",
    "homotopy_pair",
    "diagram",
    "diagram_to_csv",
]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class BoundReport:
    """A divergence value sandwiched between its distance-based bounds."""

    lower: float
    value: float
    upper: float
    v: float          # total variation, or trace distance for states
    alpha: float
    upper_kind: str   # "two_letter" | "alpha_norm" | "trace_norm"
    lower_witness: tuple | None = None
    upper_witness: tuple | None = None


def _check_v(v: float) -> float:
    v = float(v)
    if not -1e-12 <= v <= 2.0 + 1e-12:
        raise ValueError(f"total variation must lie in [0, 2], got {v}")
    return min(max(v, 0.0), 2.0)


def lower_L(v: float, alpha: float) -> float:
    """s_a(1/2) - s_a(1/2 + v/4), attained by the pair returned by ``lower_witness_pair``."""
    a = check_alpha(alpha)
    v = _check_v(v)
    return binary_alpha_entropy(0.5, a) - binary_alpha_entropy(0.5 + v / 4.0, a)


def upper_Un(p, q, alpha: float) -> float:
    """(1/(a-1)) (1/2 - 2^-a) ||P - Q||_a^a, with the order-1 limit (ln 2 / 2) V."""
    a = check_alpha(alpha)
    if a == 1.0:
        return (LN2 / 2.0) * total_variation(p, q)
    coeff = (0.5 - 2.0**-a) / (a - 1.0)
    return coeff * alpha_norm_power(p, q, a)


def upper_U2(v: float, alpha: float) -> float:
    """Two-letter tight upper bound s_a(v/4) - s_a(v/2) / 2."""
    a = check_alpha(alpha)
    v = _check_v(v)
    return binary_alpha_entropy(v / 4.0, a) - binary_alpha_entropy(v / 2.0, a) / 2.0


def lower_witness_pair(v: float, n: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """The swapped near-uniform pair attaining the lower bound at total variation v."""
    v = _check_v(v)
    if n < 2:
        raise ValueError("need n >= 2")
    p = np.zeros(n)
    q = np.zeros(n)
    p[0], p[1] = 0.5 + v / 4.0, 0.5 - v / 4.0
    q[0], q[1] = 0.5 - v / 4.0, 0.5 + v / 4.0
    return p, q


def upper_witness_pair(v: float, n: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """The attaining pair for the upper bound at total variation v.

    For n >= 3 the disjoint-support pair (1 - v/2, v/2, 0, ...) vs
    (1 - v/2, 0, v/2, ...); for n = 2 the extreme pair (v/2, 1 - v/2)
    vs (0, 1).
    """
    v = _check_v(v)
    if n < 2:
        raise ValueError("need n >= 2")
    p = np.zeros(n)
    q = np.zeros(n)
    if n == 2:
        p[0], p[1] = v / 2.0, 1.0 - v / 2.0
        q[0], q[1] = 0.0, 1.0
    else:
        p[0], p[1] = 1.0 - v / 2.0, v / 2.0
        q[0], q[2] = 1.0 - v / 2.0, v / 2.0
    return p, q


def bound_report(p, q, alpha: float) -> BoundReport:
    """Sandwich a classical Jensen divergence between L and the n-appropriate U.

    The ``lower`` entry is a guaranteed bound for two-letter inputs (any
    order in (0, 2]) and for any alphabet at order 1; see the module
    docstring for the n >= 3 caveat at other orders.
    """
    a = check_alpha(alpha)
    P = as_distribution(p)
    Q = as_distribution(q)
    n = len(P)
    v = total_variation(P, Q)
    value = jd_alpha(P, Q, a).value
    lower = lower_L(v, a)
    if n == 2:
        upper = upper_U2(v, a)
        kind = "two_letter"
    else:
        upper = upper_Un(P, Q, a)
        kind = "alpha_norm"
    return BoundReport(
        lower=lower,
        value=value,
        upper=upper,
        v=v,
        alpha=a,
        upper_kind=kind,
        lower_witness=lower_witness_pair(v, n),
        upper_witness=upper_witness_pair(v, n),
    )


def q_bound_report(rho1, rho2, alpha: float) -> BoundReport:
    """Sandwich a quantum Jensen divergence between trace-distance bounds.

    With T = ||rho1 - rho2||_1 in [0, 2]: lower s_a(1/2) - s_a(1/2 + T/4)
    (the distribution of outcomes of the optimal distinguishing
    measurement has total variation T, and the two-letter classical
    bound applies to it), upper (ln 2 / 2) T. Lower reliable for qubits
    at any order in (0, 2] and for any dimension at order 1; upper for
    orders in [1, 2].
    """
    a = check_alpha(alpha)
    r1 = as_density(rho1)
    r2 = as_density(rho2)
    t = trace_distance(r1, r2)
    value = qjd_alpha(r1, r2, a).value
    return BoundReport(
        lower=lower_L(t, a),
        value=value,
        upper=(LN2 / 2.0) * t,
        v=t,
        alpha=a,
        upper_kind="trace_norm",
    )


class ChainBounds(NamedTuple):
    """The distance-divergence inequality chain evaluated on one pair.

    v_sq_over_8 <= alpha_v_sq_over_8 always (order >= 1), and
    jd <= alpha_norm_upper <= tv_upper for orders in [1, 2] on any
    alphabet. The link v_sq_over_8 <= jd additionally requires a
    two-letter pair or order 1; alpha_v_sq_over_8 <= jd holds only at
    order 1 under this total-variation normalization.
    """

    v_sq_over_8: float
    alpha_v_sq_over_8: float
    jd: float
    alpha_norm_upper: float
    tv_upper: float


def chain_check(p, q, alpha: float) -> ChainBounds:
    """Evaluate V^2/8, a V^2/8, JD_a, the alpha-norm upper bound, and (ln 2 / 2) V."""
    a = check_alpha(alpha)
    if not 1.0 <= a <= 2.0:
        raise ValueError(f"chain is asserted for orders in [1, 2], got {a}")
    P = as_distribution(p)
    Q = as_distribution(q)
    v = total_variation(P, Q)
    return ChainBounds(
        v_sq_over_8=v**2 / 8.0,
        alpha_v_sq_over_8=a * v**2 / 8.0,
        jd=jd_alpha(P, Q, a).value,
        alpha_norm_upper=upper_Un(P, Q, a),
        tv_upper=(LN2 / 2.0) * v,
    )


@dataclass(frozen=True)
class DiagramPoints:
    """Joint-range diagram data: bounding curves and interior homotopy samples.

    ``curve_lower`` and ``curve_upper`` are (v, jd) pairs on a v-grid;
    ``homotopy_samples`` are (t, v, jd) triples, where v is the actual
    total variation of the deformed pair (it dips below the grid
    parameter for interior t, sweeping the region's interior).
    """

    curve_lower: list
    curve_upper: list
    homotopy_samples: list
    alpha: float
    n: int


def upper_curve_value(v: float, alpha: float, n: int) -> float:
    """The upper boundary of the joint range at total variation v.

    For n = 2 this is U_2(v); for n >= 3 it is the alpha-norm bound
    evaluated on its disjoint-support attaining pair,
    ((v/2)^a - 2 (v/4)^a) / (a - 1), with order-1 limit (ln 2 / 2) v.
    """
    a = check_alpha(alpha)
    v = _check_v(v)
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        return upper_U2(v, a)
    if a == 1.0:
        return (LN2 / 2.0) * v
    return ((v / 2.0) ** a - 2.0 * (v / 4.0) ** a) / (a - 1.0)


def homotopy_pair(t: float, v: float, n: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Convex deformation from the lower-curve pair (t = 0) to the upper-curve pair (t = 1)."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"need t in [0, 1], got {t}")
    v = _check_v(v)
    if n < 2:
        raise ValueError("need n >= 2")
    pl, ql = lower_witness_pair(v, n)
    pu, qu = upper_witness_pair(v, n)
    return (1.0 - t) * pl + t * pu, (1.0 - t) * ql + t * qu


def diagram(alpha: float, n: int, grid: int) -> DiagramPoints:
    """Sample the joint range of total variation and order-alpha divergence.

    Emits both bounding curves on a ``grid``-point v-grid over [0, 2]
    and a ``grid`` x ``grid`` family of homotopy samples whose (v, jd)
    points fill the region between the curves. The emitted lower curve
    bounds every sample when n = 2 or alpha = 1; for n >= 3 at other
    orders interior samples can dip below it (the joint range extends
    further down there, per the module docstring's caveat on L).
    """
    a = check_alpha(alpha)
    if n < 2:
        raise ValueError("need n >= 2")
    if grid < 2:
        raise ValueError("need grid >= 2")
    vs = np.linspace(0.0, 2.0, grid)
    ts = np.linspace(0.0, 1.0, grid)
    curve_lower = [(float(v), lower_L(float(v), a)) for v in vs]
    curve_upper = [(float(v), upper_curve_value(float(v), a, n)) for v in vs]
    samples = []
    for t in ts:
        for v in vs:
            p, q = homotopy_pair(float(t), float(v), n)
            v_actual = total_variation(p, q)
            samples.append((float(t), v_actual, jd_alpha(p, q, a).value))
    return DiagramPoints(
        curve_lower=curve_lower,
        curve_upper=curve_upper,
        homotopy_samples=samples,
        alpha=a,
        n=n,
    )


def diagram_to_csv(points: DiagramPoints) -> str:
    """CSV rows "curve,t,v,jd": the lower curve at t=0, the upper at t=1, homotopy rows between."""
    lines = ["curve,t,v,jd"]
    for v, jd in points.curve_lower:
        lines.append(f"lower,{0.0!r},{v!r},{jd!r}")
    for v, jd in points.curve_upper:
        lines.append(f"upper,{1.0!r},{v!r},{jd!r}")
    for t, v, jd in points.homotopy_samples:
        lines.append(f"homotopy,{t!r},{v!r},{jd!r}")
    return "\n".join(lines) + "\n"
