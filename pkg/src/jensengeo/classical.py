"""Finite probability distributions and classical information quantities.

All entropic quantities are expressed in nats (natural logarithm). The
conventions 0*ln(0) = 0 and 0*ln(0/q) = 0 apply throughout. Total
variation is the unhalved sum  V(P, Q) = sum_i |p_i - q_i|, so its range
is [0, 2] and disjoint-support distributions are at distance 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Distribution",
    "as_distribution",
    "check_alpha",
    "random_distribution",
    "shannon_entropy",
    "alpha_entropy",
    "binary_alpha_entropy",
    "kl_divergence",
    "total_variation",
    "alpha_norm_power",
]

# |sum(probs) - 1| above this is a hard error; below it we renormalize.
SUM_TOL = 1e-9
# negative entries no smaller than -NEG_CLIP are treated as float noise
NEG_CLIP = 1e-12


def check_alpha(alpha: float) -> float:
    """Validate an entropy order: a finite real > 0. Returns it as float."""
    a = float(alpha)
    if not math.isfinite(a) or a <= 0.0:
        raise ValueError(f"entropy order must be a finite real > 0, got {alpha!r}")
    return a


@dataclass(frozen=True)
class Distribution:
    """A probability vector over a finite alphabet, optionally labeled."""

    probs: np.ndarray
    labels: tuple | None = None

    def __len__(self) -> int:
        return int(self.probs.shape[0])


def as_distribution(p) -> Distribution:
    """Validate and coerce a probability vector.

    Accepts a ``Distribution``, a sequence of floats, or a mapping with
    key ``"probs"`` (and optionally ``"labels"``). Entries in
    (-1e-12, 0) are clipped to zero; the vector is renormalized when its
    total deviates from 1 by at most 1e-9, and rejected beyond that.
    """
    labels = None
    if isinstance(p, Distribution):
        return p
    if isinstance(p, dict):
        if "probs" not in p:
            raise ValueError('distribution mapping must contain "probs"')
        labels = tuple(p["labels"]) if p.get("labels") is not None else None
        p = p["probs"]
    probs = np.asarray(p, dtype=float)
    if probs.ndim != 1 or probs.shape[0] < 1:
        raise ValueError(f"distribution must be a non-empty 1-D vector, got shape {probs.shape}")
    if not np.all(np.isfinite(probs)):
        raise ValueError("distribution entries must be finite")
    if np.any(probs < -NEG_CLIP):
        raise ValueError(f"negative probability below tolerance: min = {probs.min()}")
    probs = np.where(probs < 0.0, 0.0, probs)
    total = float(probs.sum())
    if abs(total - 1.0) > SUM_TOL:
        raise ValueError(f"probabilities sum to {total}, not 1")
    if total != 1.0:
        probs = probs / total
    if labels is not None and len(labels) != probs.shape[0]:
        raise ValueError("labels and probs have different lengths")
    return Distribution(probs=probs, labels=labels)


def _aligned(p, q) -> tuple[np.ndarray, np.ndarray]:
    P = as_distribution(p).probs
    Q = as_distribution(q).probs
    if P.shape[0] != Q.shape[0]:
        raise ValueError(f"length mismatch: {P.shape[0]} vs {Q.shape[0]}")
    return P, Q


def random_distribution(n: int, rng: np.random.Generator) -> Distribution:
    """Uniform (flat Dirichlet) sample from the n-point simplex."""
    if n < 1:
        raise ValueError("need n >= 1")
    return as_distribution(rng.dirichlet(np.ones(n)))


def shannon_entropy(p) -> float:
    """H(P) = -sum_i p_i ln p_i, in [0, ln n]."""
    probs = as_distribution(p).probs
    pos = probs[probs > 0.0]
    return float(-np.dot(pos, np.log(pos)))


def alpha_entropy(p, alpha: float) -> float:
    """Entropy of order alpha, (1 - sum_i p_i^alpha) / (alpha - 1).

    The order alpha = 1 is an exact branch that returns the Shannon
    entropy (the alpha -> 1 limit), not a numerical approximation.
    """
    a = check_alpha(alpha)
    dist = as_distribution(p)
    if a == 1.0:
        return shannon_entropy(dist)
    return float((1.0 - np.sum(dist.probs**a)) / (a - 1.0))


def binary_alpha_entropy(p: float, alpha: float) -> float:
    """Order-alpha entropy of the two-point distribution (p, 1 - p)."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary parameter must lie in [0, 1], got {p}")
    return alpha_entropy(np.array([p, 1.0 - p]), alpha)


def kl_divergence(p, q) -> float:
    """D(P||Q) = sum_i p_i ln(p_i / q_i); +inf when supp(P) escapes supp(Q)."""
    P, Q = _aligned(p, q)
    mask = P > 0.0
    if np.any(Q[mask] == 0.0):
        return math.inf
    return float(np.dot(P[mask], np.log(P[mask] / Q[mask])))


def total_variation(p, q) -> float:
    """V(P, Q) = sum_i |p_i - q_i|, in [0, 2]."""
    P, Q = _aligned(p, q)
    return float(np.sum(np.abs(P - Q)))


def alpha_norm_power(p, q, alpha: float) -> float:
    """||P - Q||_alpha^alpha = sum_i |p_i - q_i|^alpha."""
    a = check_alpha(alpha)
    P, Q = _aligned(p, q)
    return float(np.sum(np.abs(P - Q) ** a))
