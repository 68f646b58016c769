"""Shared fixtures and independent oracles.

The oracles are deliberately naive (cofactor expansion, exhaustive mod-2
enumeration, a closed-form delta sequence) and never share code with the
implementation paths they check.
"""
from __future__ import annotations

import random

import pytest

from e8bounds.graph import Configuration, StarGraph
from e8bounds.seifert import BrieskornSpec, resolution


def cofactor_det(rows) -> int:
    """Recursive cofactor-expansion determinant; exponential, fine for rank <= 9."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def delta_oracle(b0: int, legs, v: int) -> int:
    """Closed-form increment of the lattice-point tau sequence at central
    multiplicity v: 1 + v*b0 - sum of ceil(v*beta/alpha)."""
    total = 1 + v * b0
    for alpha, beta in legs:
        total -= -(-(v * beta) // alpha)
    return total


def random_unimodular(rng: random.Random, n: int, ops: int = 6):
    """A small-entry integer matrix of determinant +-1 (product of shears/swaps)."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        kind = rng.random()
        if kind < 0.8:
            c = rng.choice((-1, 1))
            for k in range(n):
                u[i][k] += c * u[j][k]
        else:
            u[i], u[j] = u[j], u[i]
    return u


@pytest.fixture
def e8_star() -> StarGraph:
    return resolution(BrieskornSpec.of(2, 3, 5))


@pytest.fixture
def e8_config(e8_star) -> Configuration:
    return e8_star.to_configuration()


@pytest.fixture
def fig8_n2_config() -> Configuration:
    """Minimal resolution of Sigma(2,3,11): rank 9, one -3 vertex."""
    return resolution(BrieskornSpec.of(2, 3, 11)).to_configuration()


FIVE_RANK8_SPHERES = (
    (2, 3, 5),
    (3, 4, 7),
    (2, 3, 7, 11),
    (2, 3, 7, 23),
    (3, 4, 7, 43),
)
