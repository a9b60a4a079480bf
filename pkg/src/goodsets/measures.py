"""Simplicial measures and marginal-uniqueness certificates at finite scale.

A probability measure on a finite product is *simplicial* when it is an
extreme point of the polytope of measures sharing its one-dimensional
marginals.  On finite sets that happens exactly when the support is good: a
loop in the support yields a signed perturbation with zero marginals that
can be added and subtracted without leaving the polytope, while a good
support admits no nonzero signed measure with vanishing marginals at all
(its incidence rows are independent).  The equivalence is cross-checked
against brute-force extremality in the acceptance tests rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .goodness import Loop, is_good
from .model import PointSet, PreconditionError, VerificationError, as_fraction

__all__ = [
    "FiniteMeasure",
    "MarginalVector",
    "SimplicialVerdict",
    "is_mu_set",
    "is_simplicial",
    "marginals",
]


@dataclass(frozen=True)
class FiniteMeasure:
    """Rational probability weights, strictly positive on the support."""

    support: PointSet
    weights: Mapping

    def __post_init__(self):
        self.support.require_nonempty("finite measure")
        w = {tuple(p): as_fraction(v) for p, v in self.weights.items()}
        if set(w) != set(self.support.points):
            raise PreconditionError("weights must be given exactly on the support")
        if any(v <= 0 for v in w.values()):
            raise PreconditionError("weights must be positive on the support")
        if sum(w.values()) != 1:
            raise PreconditionError("weights must sum to one exactly")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, support: PointSet) -> "FiniteMeasure":
        support.require_nonempty("uniform measure")
        w = Fraction(1, len(support))
        return cls(support, {p: w for p in support})

    def __call__(self, point) -> Fraction:
        return self.weights.get(tuple(point), Fraction(0))


@dataclass(frozen=True)
class MarginalVector:
    """Per axis, the pushforward weights; each axis sums to one."""

    per_axis: tuple[dict, ...]

    def mass(self, axis: int, label) -> Fraction:
        return self.per_axis[axis].get(label, Fraction(0))


def marginals(m: FiniteMeasure) -> MarginalVector:
    """One-dimensional marginals of the measure."""
    space = m.support.space
    per_axis: list[dict] = [dict() for _ in range(space.n)]
    for p, w in m.weights.items():
        for i, label in enumerate(p):
            per_axis[i][label] = per_axis[i].get(label, Fraction(0)) + w
    for table in per_axis:
        if sum(table.values()) != 1:
            raise VerificationError("a marginal does not sum to one")
    return MarginalVector(tuple(per_axis))


@dataclass(frozen=True)
class SimplicialVerdict:
    """Extremality verdict; failures carry a signed perturbation certificate.

    The certificate is a loop with integer coefficients and a step size
    epsilon such that both mu + eps*nu and mu - eps*nu are probability
    measures with the same marginals as mu.
    """

    simplicial: bool
    loop: Loop | None
    epsilon: Fraction | None

    def perturbed(self, m: FiniteMeasure, sign: int) -> dict:
        """The weights of mu + sign*eps*nu (sign is +1 or -1)."""
        if self.simplicial:
            raise PreconditionError("no perturbation exists; the measure is extreme")
        w = dict(m.weights)
        for p, c in zip(self.loop.points, self.loop.coefficients):
            w[p] = w.get(p, Fraction(0)) + sign * self.epsilon * c
        return {p: v for p, v in w.items() if v != 0}


def is_simplicial(m: FiniteMeasure) -> SimplicialVerdict:
    """Extreme among measures with the same marginals <=> support is good."""
    verdict = is_good(m.support)
    if verdict.good:
        return SimplicialVerdict(True, None, None)
    loop = verdict.loop
    epsilon = min(
        m.weights[p] / abs(c) for p, c in zip(loop.points, loop.coefficients)
    )
    certificate = SimplicialVerdict(False, loop, epsilon)
    for sign in (+1, -1):
        perturbed = certificate.perturbed(m, sign)
        if any(v < 0 for v in perturbed.values()):
            raise VerificationError("perturbed measure went negative")
        if sum(perturbed.values()) != 1:
            raise VerificationError("perturbed measure lost total mass")
    return certificate


def is_mu_set(S: PointSet) -> bool:
    """Is every measure supported on S simplicial?  Finite case: S is good."""
    S.require_nonempty("is_mu_set")
    return bool(is_good(S))
