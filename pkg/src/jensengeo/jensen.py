"""Jensen divergences for weighted families of distributions or states.

Every divergence here is the concavity gap of an entropy: the entropy of
the weighted mixture minus the weighted mean of the member entropies.
That entropy-difference form is the authoritative value; where an
averaged-relative-entropy identity exists (order 1), it is computed as a
cross-check and the two are required to agree to within float precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import (
    Distribution,
    alpha_entropy,
    as_distribution,
    check_alpha,
    kl_divergence,
    shannon_entropy,
)
from .quantum import (
    DensityMatrix,
    alpha_entropy_q,
    as_density,
    relative_entropy,
    validate_density,
    von_neumann_entropy,
)

__all__ = [
    "WeightedFamily",
    "weighted_family",
    "family_from_json",
    "family_to_json",
    "mixture",
    "DivergenceResult",
    "jd_general",
    "jd_alpha_general",
    "jd_alpha",
    "qjd_general",
    "qjd_alpha_general",
    "qjd_alpha",
    "redundancy",
    "compensation_residual",
    "q_redundancy",
    "donald_residual",
    "holevo_bound",
]

# max tolerated disagreement between the entropy-difference form and the
# averaged-relative-entropy form
DUAL_TOL_CLASSICAL = 1e-10
DUAL_TOL_QUANTUM = 1e-9


@dataclass(frozen=True)
class WeightedFamily:
    """Members (all Distributions or all DensityMatrices) plus weights."""

    members: tuple
    weights: Distribution
    kind: str  # "classical" | "quantum"

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DivergenceResult:
    """A divergence value (nats) tagged with its order and producing formula."""

    value: float
    alpha: float
    via: str  # "entropy_difference" | "kl_average"


def weighted_family(members, weights) -> WeightedFamily:
    """Validate members and weights into a homogeneous weighted family.

    Members must all be classical distributions of one length, or all be
    density matrices of one dimension. A single member is accepted (the
    divergence is then trivially zero).
    """
    if len(members) < 1:
        raise ValueError("family needs at least one member")
    w = as_distribution(weights)
    if len(w) != len(members):
        raise ValueError(f"{len(members)} members but {len(w)} weights")

    first = members[0]
    if isinstance(first, DensityMatrix):
        quantum = True
    elif isinstance(first, Distribution):
        quantum = False
    elif isinstance(first, dict):
        quantum = "entries" in first
    else:
        quantum = np.asarray(first).ndim == 2

    if quantum:
        states = tuple(as_density(m) for m in members)
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise ValueError(f"mixed dimensions in family: {sorted(dims)}")
        return WeightedFamily(members=states, weights=w, kind="quantum")

    dists = tuple(as_distribution(m) for m in members)
    lengths = {len(d) for d in dists}
    if len(lengths) != 1:
        raise ValueError(f"mixed lengths in family: {sorted(lengths)}")
    return WeightedFamily(members=dists, weights=w, kind="classical")


def family_from_json(obj: dict) -> WeightedFamily:
    """Wire format: {"weights": [...], "members": [...], "kind": "classical"|"quantum"}."""
    if "weights" not in obj or "members" not in obj:
        raise ValueError('family mapping must contain "weights" and "members"')
    kind = obj.get("kind")
    members = obj["members"]
    if kind == "quantum":
        members = [as_density(m) for m in members]
    elif kind == "classical":
        members = [as_distribution(m) for m in members]
    elif kind is not None:
        raise ValueError(f'kind must be "classical" or "quantum", got {kind!r}')
    return weighted_family(members, obj["weights"])


def family_to_json(fam: WeightedFamily) -> dict:
    from .quantum import density_to_json

    if fam.kind == "quantum":
        members = [density_to_json(m) for m in fam.members]
    else:
        members = [list(map(float, m.probs)) for m in fam.members]
    return {
        "weights": list(map(float, fam.weights.probs)),
        "members": members,
        "kind": fam.kind,
    }


def mixture(fam: WeightedFamily):
    """The barycenter: weighted sum of the members."""
    w = fam.weights.probs
    if fam.kind == "quantum":
        acc = np.zeros_like(fam.members[0].matrix)
        for pi, m in zip(w, fam.members):
            acc = acc + pi * m.matrix
        return validate_density(acc)
    acc = np.zeros_like(fam.members[0].probs)
    for pi, m in zip(w, fam.members):
        acc = acc + pi * m.probs
    return as_distribution(acc)


def _require_kind(fam: WeightedFamily, kind: str) -> None:
    if fam.kind != kind:
        raise ValueError(f"need a {kind} family, got {fam.kind}")


def jd_general(fam: WeightedFamily) -> DivergenceResult:
    """Shannon Jensen divergence of a weighted family.

    Computes both H(mixture) - sum_i pi_i H(P_i) and the identity form
    sum_i pi_i D(P_i || mixture), requires them to agree to 1e-10, and
    returns the entropy-difference value.
    """
    _require_kind(fam, "classical")
    mix = mixture(fam)
    w = fam.weights.probs
    diff = float(
        shannon_entropy(mix)
        - sum(pi * shannon_entropy(m) for pi, m in zip(w, fam.members))
    )
    avg = float(
        sum(pi * kl_divergence(m, mix) for pi, m in zip(w, fam.members) if pi > 0.0)
    )
    if not math.isfinite(avg) or abs(diff - avg) > DUAL_TOL_CLASSICAL:
        raise ArithmeticError(
            f"entropy-difference ({diff}) and divergence-average ({avg}) forms disagree"
        )
    return DivergenceResult(value=diff, alpha=1.0, via="entropy_difference")


def jd_alpha_general(fam: WeightedFamily, alpha: float) -> DivergenceResult:
    """Order-alpha Jensen divergence S_a(mixture) - sum_i pi_i S_a(P_i)."""
    a = check_alpha(alpha)
    _require_kind(fam, "classical")
    if a == 1.0:
        return jd_general(fam)
    mix = mixture(fam)
    w = fam.weights.probs
    value = float(
        alpha_entropy(mix, a)
        - sum(pi * alpha_entropy(m, a) for pi, m in zip(w, fam.members))
    )
    return DivergenceResult(value=value, alpha=a, via="entropy_difference")


def jd_alpha(p, q, alpha: float = 1.0) -> DivergenceResult:
    """Order-alpha Jensen divergence of two distributions with even weights."""
    fam = weighted_family([as_distribution(p), as_distribution(q)], [0.5, 0.5])
    return jd_alpha_general(fam, alpha)


def qjd_general(fam: WeightedFamily) -> DivergenceResult:
    """Von Neumann Jensen divergence, cross-checked against averaged relative entropy."""
    _require_kind(fam, "quantum")
    mix = mixture(fam)
    w = fam.weights.probs
    diff = float(
        von_neumann_entropy(mix)
        - sum(pi * von_neumann_entropy(m) for pi, m in zip(w, fam.members))
    )
    avg = float(
        sum(pi * relative_entropy(m, mix) for pi, m in zip(w, fam.members) if pi > 0.0)
    )
    if not math.isfinite(avg) or abs(diff - avg) > DUAL_TOL_QUANTUM:
        raise ArithmeticError(
            f"entropy-difference ({diff}) and divergence-average ({avg}) forms disagree"
        )
    return DivergenceResult(value=diff, alpha=1.0, via="entropy_difference")


def qjd_alpha_general(fam: WeightedFamily, alpha: float) -> DivergenceResult:
    """Order-alpha quantum Jensen divergence S_a(mixture) - sum_i pi_i S_a(rho_i).

    For alpha != 1 only the entropy-difference form is defined; there is
    no averaged-relative-entropy identity away from order 1.
    """
    a = check_alpha(alpha)
    _require_kind(fam, "quantum")
    if a == 1.0:
        return qjd_general(fam)
    mix = mixture(fam)
    w = fam.weights.probs
    value = float(
        alpha_entropy_q(mix, a)
        - sum(pi * alpha_entropy_q(m, a) for pi, m in zip(w, fam.members))
    )
    return DivergenceResult(value=value, alpha=a, via="entropy_difference")


def qjd_alpha(rho, sigma, alpha: float = 1.0) -> DivergenceResult:
    """Order-alpha quantum Jensen divergence of two states with even weights."""
    fam = weighted_family([as_density(rho), as_density(sigma)], [0.5, 0.5])
    return qjd_alpha_general(fam, alpha)


def redundancy(fam: WeightedFamily, q) -> float:
    """Mean coding redundancy sum_i pi_i D(P_i || Q) of coding for Q.

    Minimized over Q exactly at the mixture, where it equals the Jensen
    divergence of the family. +inf propagates from any support escape.
    """
    _require_kind(fam, "classical")
    Q = as_distribution(q)
    if len(Q) != len(fam.members[0]):
        raise ValueError("reference distribution has the wrong length")
    total = 0.0
    for pi, m in zip(fam.weights.probs, fam.members):
        if pi == 0.0:
            continue
        d = kl_divergence(m, Q)
        if math.isinf(d):
            return math.inf
        total += float(pi) * d
    return float(total)


def compensation_residual(fam: WeightedFamily, q) -> float:
    """| sum pi_i D(P_i||Q) - sum pi_i D(P_i||mixture) - D(mixture||Q) |.

    The three terms satisfy an exact identity for any Q, so the residual
    is float noise; infinite terms make the identity untestable and raise.
    """
    _require_kind(fam, "classical")
    r_q = redundancy(fam, q)
    r_mix = jd_general(fam).value
    d_mix_q = kl_divergence(mixture(fam), q)
    if math.isinf(r_q) or math.isinf(d_mix_q):
        raise ValueError("identity requires finite divergences (Q must dominate the mixture)")
    return float(abs(r_q - r_mix - d_mix_q))


def q_redundancy(fam: WeightedFamily, sigma) -> float:
    """Mean quantum coding redundancy sum_i pi_i S(rho_i || sigma)."""
    _require_kind(fam, "quantum")
    s = as_density(sigma)
    if s.dim != fam.members[0].dim:
        raise ValueError("reference state has the wrong dimension")
    total = 0.0
    for pi, m in zip(fam.weights.probs, fam.members):
        if pi == 0.0:
            continue
        d = relative_entropy(m, s)
        if math.isinf(d):
            return math.inf
        total += float(pi) * d
    return float(total)


def donald_residual(fam: WeightedFamily, sigma) -> float:
    """| sum pi_i S(rho_i||sigma) - sum pi_i S(rho_i||mixture) - S(mixture||sigma) |."""
    _require_kind(fam, "quantum")
    r_sigma = q_redundancy(fam, sigma)
    r_mix = qjd_general(fam).value
    d_mix_sigma = relative_entropy(mixture(fam), sigma)
    if math.isinf(r_sigma) or math.isinf(d_mix_sigma):
        raise ValueError("identity requires a reference state with full support over the mixture")
    return float(abs(r_sigma - r_mix - d_mix_sigma))


def holevo_bound(fam: WeightedFamily) -> float:
    """The Holevo quantity of an ensemble: its von Neumann Jensen divergence.

    Upper-bounds the classical information extractable per use of a
    channel that encodes symbol i as state rho_i with frequency pi_i.
    """
    return qjd_general(fam).value
