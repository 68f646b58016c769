"""Brieskorn multiplicities, Seifert invariants, and minimal resolutions.

Orientation convention: a Brieskorn sphere is oriented as the link of its
singularity, i.e. the boundary of the negative-definite resolution, so the
Euler number is e = -b0 + sum(beta_i/alpha_i) = -1/(alpha_1*...*alpha_n) and
every graph weight is negative.  The beta normalization 0 < beta < alpha with
b0 absorbing integer parts makes the data unique; this is a convention choice
(see README).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .errors import SeifertError
from .graph import StarGraph, gram_matrix


@dataclass(frozen=True)
class BrieskornSpec:
    """Multiplicities (a_1, ..., a_n), pairwise coprime, sorted ascending.

    Entries equal to 1 are legal and describe the same manifold with trivial
    fibers; with fewer than three nontrivial multiplicities the manifold
    degenerates to S^3.
    """

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ms = self.multiplicities
        if not all(isinstance(a, int) and a >= 1 for a in ms):
            raise SeifertError("multiplicities must be positive integers")
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if math.gcd(ms[i], ms[j]) != 1:
                    raise SeifertError(
                        f"multiplicities must be pairwise coprime, got {ms[i]} and {ms[j]}"
                    )
        object.__setattr__(self, "multiplicities", tuple(sorted(ms)))

    @classmethod
    def of(cls, *ms: int) -> "BrieskornSpec":
        return cls(tuple(ms))

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(a for a in self.multiplicities if a > 1)

    def __str__(self) -> str:
        return "Sigma(" + ",".join(str(a) for a in self.multiplicities) + ")"


@dataclass(frozen=True)
class SeifertData:
    """Normalized Seifert invariants (b0; (alpha_i, beta_i)) with 0 < beta < alpha."""

    b0: int
    legs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not isinstance(self.b0, int):
            raise SeifertError("b0 must be an integer")
        for alpha, beta in self.legs:
            if not (isinstance(alpha, int) and isinstance(beta, int) and 0 < beta < alpha):
                raise SeifertError(f"leg ({alpha},{beta}) violates 0 < beta < alpha")

    @property
    def alpha_product(self) -> int:
        p = 1
        for alpha, _ in self.legs:
            p *= alpha
        return p

    def euler_number(self) -> Fraction:
        return Fraction(-self.b0) + sum(Fraction(b, a) for a, b in self.legs)

    def is_integral_homology_sphere(self) -> bool:
        return abs(self.euler_number() * self.alpha_product) == 1

    def as_dict(self) -> dict:
        return {"b0": self.b0, "legs": [[a, b] for a, b in self.legs]}


def seifert_from_brieskorn(spec: BrieskornSpec) -> SeifertData:
    """The unique normalized Seifert data whose resolution is negative definite.

    beta_i is the solution of beta_i * (A/alpha_i) = -1 (mod alpha_i) in
    (0, alpha_i), with A the product of the multiplicities; b0 then makes the
    Euler number exactly -1/A.
    """
    alphas = spec.nontrivial()
    a_prod = 1
    for a in alphas:
        a_prod *= a
    legs = []
    weighted = 0
    for alpha in alphas:
        cof = a_prod // alpha
        beta = (-pow(cof, -1, alpha)) % alpha
        legs.append((alpha, beta))
        weighted += beta * cof
    total = 1 + weighted
    if total % a_prod != 0:
        raise SeifertError("congruence system is inconsistent")  # unreachable on coprime input
    return SeifertData(total // a_prod, tuple(legs))


def hj_expansion(alpha: int, beta: int) -> tuple[int, ...]:
    """Minus-sign continued fraction alpha/beta = x1 - 1/(x2 - 1/(...)), all terms >= 2."""
    if not 0 < beta < alpha:
        raise SeifertError(f"expansion requires 0 < beta < alpha, got {alpha}/{beta}")
    terms = []
    a, b = alpha, beta
    while b:
        x = -(-a // b)
        terms.append(x)
        a, b = b, x * b - a
    if any(x < 2 for x in terms):
        raise SeifertError("expansion produced a term below 2")  # guarded; cannot occur
    return tuple(terms)


def continuant(terms: tuple[int, ...]) -> tuple[int, int]:
    """(alpha, beta) with alpha/beta the value of the minus-sign fraction `terms`."""
    p, q = 1, 0
    for x in reversed(terms):
        p, q = x * p - q, p
    return p, q


def minimal_resolution(data: SeifertData) -> StarGraph:
    """Star graph with central weight -b0 and one chain per leg.

    Leg i is the expansion alpha_i/beta_i = [x1, ..., xk] written as weights
    -x1, ..., -xk from the center outward.
    """
    branches = tuple(tuple(-x for x in hj_expansion(a, b)) for a, b in data.legs)
    return StarGraph(-data.b0, branches)


def read_seifert(star: StarGraph) -> SeifertData:
    """Inverse of :func:`minimal_resolution` on its image."""
    if star.central_weight > -1:
        raise SeifertError("central weight must be at most -1")
    legs = []
    for br in star.branches:
        if any(w > -2 for w in br):
            raise SeifertError("branch weights must be at most -2")
        alpha, beta = continuant(tuple(-w for w in br))
        legs.append((alpha, beta))
    return SeifertData(-star.central_weight, tuple(legs))


def brieskorn_from_seifert(data: SeifertData) -> BrieskornSpec:
    """Multiplicities, sorted ascending; only defined for integral homology spheres."""
    if not data.is_integral_homology_sphere():
        raise SeifertError(
            f"not an integral homology sphere: |e|*A = {abs(data.euler_number() * data.alpha_product)}"
        )
    return BrieskornSpec(tuple(sorted(a for a, _ in data.legs)))


def is_minimal(star: StarGraph) -> bool:
    """Negative-definite, central weight <= -1, branch weights <= -2."""
    if star.central_weight > -1:
        return False
    if any(w > -2 for br in star.branches for w in br):
        return False
    return lattice.is_negative_definite(gram_matrix(star.to_configuration()))


def resolution(spec: BrieskornSpec) -> StarGraph:
    """Minimal resolution graph of a Brieskorn sphere."""
    return minimal_resolution(seifert_from_brieskorn(spec))
