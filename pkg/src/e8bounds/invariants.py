"""Rokhlin/Neumann-Siebenmann invariants, correction terms, and feasibility.

mu_bar is computed from the Wu class of the minimal resolution: the unique
0/1 vector w with M w = diag(M) mod 2.  The correction term d is computed by
the lattice-point algorithm on the negative-definite resolution: a generalized
Laufer sequence x_v indexed by the central multiplicity v, with
tau(v) = chi(x_v) and d = (K^2 + rank)/4 + 2 min tau.  Both computations are
exact; d_invariant is deterministic regardless of evaluation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .errors import E8BoundsError
from .graph import StarGraph, gram_matrix
from .lattice import IntegerSymmetricMatrix
from .seifert import BrieskornSpec, minimal_resolution, seifert_from_brieskorn


@dataclass(frozen=True)
class WuClass:
    """0/1 coefficients, indexed like the defining matrix rows."""

    coefficients: tuple[int, ...]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if c)


def wu_class(m: IntegerSymmetricMatrix) -> WuClass:
    """The unique 0/1 solution of M w = diag(M) (mod 2); needs odd |det M|."""
    if m.n and lattice.determinant(m) % 2 == 0:
        raise E8BoundsError("Wu class requires odd determinant")
    n = m.n
    rows = []
    for i in range(n):
        bits = 0
        for j in range(n):
            if m.rows[i][j] % 2:
                bits |= 1 << j
        if m.rows[i][i] % 2:
            bits |= 1 << n  # augmented column
        rows.append(bits)
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, n) if rows[k] >> col & 1), None)
        if piv is None:
            raise E8BoundsError("mod-2 system is singular")  # impossible for odd det
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(n):
            if k != r and rows[k] >> col & 1:
                rows[k] ^= rows[r]
        pivots.append(col)
        r += 1
    w = [0] * n
    for r, col in enumerate(pivots):
        w[col] = rows[r] >> n & 1
    return WuClass(tuple(w))


def _quadratic_value(m: IntegerSymmetricMatrix, x: list[int]) -> int:
    total = 0
    for i in range(m.n):
        if x[i]:
            row = m.rows[i]
            total += x[i] * sum(row[j] * x[j] for j in range(m.n) if x[j])
    return total


def mu_bar(spec: BrieskornSpec) -> int:
    """(signature - w.M.w)/8 on the minimal resolution, w the Wu class."""
    m = gram_matrix(minimal_resolution(seifert_from_brieskorn(spec)).to_configuration())
    w = list(wu_class(m).coefficients)
    sig = lattice.signature(m)
    num = sig - _quadratic_value(m, w)
    if num % 8:
        raise E8BoundsError("mu-bar numerator not divisible by 8")  # cannot occur
    return num // 8


def rokhlin_mu(spec: BrieskornSpec) -> int:
    return mu_bar(spec) % 2


# -- correction term ---------------------------------------------------------


def _laufer_tau(star: StarGraph, v_max: int) -> list[int]:
    """tau(0..v_max) along the generalized Laufer sequence of the star plumbing.

    Round v bumps the central coefficient to v and then raises leg coefficients
    while some leg vertex u has positive pairing (x, E_u); chi is maintained
    incrementally via chi(x + E_u) = chi(x) + 1 - (x, E_u).
    """
    weights = [star.central_weight]
    adj: list[list[int]] = [[]]
    for br in star.branches:
        prev = 0
        for w in br:
            idx = len(weights)
            weights.append(w)
            adj.append([prev])
            adj[prev].append(idx)
            prev = idx
    n = len(weights)
    x = [0] * n
    s = [0] * n  # s[u] = (x, E_u)
    chi = 0
    taus = [0]

    def bump(u: int) -> None:
        nonlocal chi
        chi += 1 - s[u]
        x[u] += 1
        s[u] += weights[u]
        for w in adj[u]:
            s[w] += 1

    for _ in range(v_max):
        bump(0)
        stack = [w for w in adj[0] if s[w] > 0]
        while stack:
            u = stack.pop()
            if u == 0 or s[u] <= 0:
                continue
            while s[u] > 0:
                bump(u)
            stack.extend(w for w in adj[u] if w != 0 and s[w] > 0)
        taus.append(chi)
    return taus


def _canonical_square(m: IntegerSymmetricMatrix) -> int:
    """K^2 for the canonical class defined by adjunction (K, E_v) = -m_v - 2."""
    n = m.n
    k = [-m.rows[i][i] - 2 for i in range(n)]
    a = [[Fraction(m.rows[i][j]) for j in range(n)] + [Fraction(k[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise E8BoundsError("singular Gram matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
    total = sum(Fraction(k[i]) * a[i][n] for i in range(n))
    if total.denominator != 1:
        raise E8BoundsError("K^2 is not an integer on this graph")
    return int(total)


def d_invariant(spec: BrieskornSpec) -> int:
    """Correction term of the Brieskorn sphere, an even integer.

    Sweeps the central multiplicity far enough that tau is provably increasing
    afterwards: tau(v+1) - tau(v) > 1 - n + v/A for n legs with multiplicity
    product A, so no new minimum appears past v = (n-1)A.
    """
    data = seifert_from_brieskorn(spec)
    star = minimal_resolution(data)
    a_prod = data.alpha_product
    v_max = max((len(data.legs) - 1) * a_prod + 1, 1)
    taus = _laufer_tau(star, v_max)
    m = gram_matrix(star.to_configuration())
    d2 = _canonical_square(m) + m.n
    if d2 % 4:
        raise E8BoundsError("K^2 + rank is not divisible by 4")
    d = d2 // 4 - 2 * min(taus)
    if d % 2:
        raise E8BoundsError("correction term came out odd")
    return d


# -- feasibility of definite spin boundings ----------------------------------


def ds_feasibility(
    d: int, mu_bar_value: int, d_of_reverse: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...], int | None]:
    """Feasible b2 values for spin definite boundings on both orientations.

    The negative-definite side collects the b2 >= 0 that are multiples of 8,
    at most 4d, congruent to -8*mu_bar mod 16, and inside
    [-8*mu_bar/9, -8*mu_bar].  The positive side applies the same constraints
    to the reversed orientation, with d supplied by the caller (defaulting to
    -d) and mu_bar negated.  The hint is -1/+1 when only one side admits a
    positive b2, 0 when only b2 = 0 is allowed and d = 0, and None (unknown)
    otherwise.  Feasibility never asserts that a bounding exists.
    """

    def side(d_side: int, mu_side: int) -> tuple[int, ...]:
        out = []
        hi = -8 * mu_side
        lo = Fraction(-8 * mu_side, 9)
        b2 = 0
        while b2 <= 4 * d_side:
            if (b2 + 8 * mu_side) % 16 == 0 and lo <= b2 <= hi:
                out.append(b2)
            b2 += 8
        return tuple(out)

    if d_of_reverse is None:
        d_of_reverse = -d
    neg = side(d, mu_bar_value)
    pos = side(d_of_reverse, -mu_bar_value)
    neg_pos = any(b > 0 for b in neg)
    pos_pos = any(b > 0 for b in pos)
    if neg_pos and not pos_pos:
        hint: int | None = -1
    elif pos_pos and not neg_pos:
        hint = 1
    elif (0 in neg or 0 in pos) and d == 0 and not neg_pos and not pos_pos:
        hint = 0
    else:
        hint = None
    return neg, pos, hint


@dataclass(frozen=True)
class InvariantReport:
    multiplicities: tuple[int, ...]
    mu: int
    mu_bar: int
    d: int
    signature: int
    rank: int
    feasible_b2_negdef: tuple[int, ...]
    feasible_b2_posdef: tuple[int, ...]
    epsilon_hint: int | None

    def as_dict(self) -> dict:
        return {
            "multiplicities": list(self.multiplicities),
            "mu": self.mu,
            "mu_bar": self.mu_bar,
            "d": self.d,
            "signature": self.signature,
            "rank": self.rank,
            "feasible_b2_negdef": list(self.feasible_b2_negdef),
            "feasible_b2_posdef": list(self.feasible_b2_posdef),
            "epsilon_hint": "unknown" if self.epsilon_hint is None else self.epsilon_hint,
        }


def consistency_checks(report: InvariantReport) -> list[str]:
    """Constraint violations in a populated report; empty means consistent."""
    violations = []
    if (report.mu - report.mu_bar) % 2:
        violations.append("mu and mu_bar disagree mod 2")
    for name, feas in (
        ("negdef", report.feasible_b2_negdef),
        ("posdef", report.feasible_b2_posdef),
    ):
        for b2 in feas:
            if b2 % 8:
                violations.append(f"{name} b2={b2} is not a multiple of 8")
            elif (b2 // 8) % 2 != report.mu:
                violations.append(f"{name} b2={b2} violates the mod-2 link with mu={report.mu}")
        positives = [b for b in feas if b > 0]
        if positives and max(positives) // 8 > abs(report.d) // 2:
            violations.append(f"{name} exceeds the |d|/2 bound")
        ordered = sorted(set(feas))
        for i, b1 in enumerate(ordered):
            for b2 in ordered[i + 1 :]:
                if b1 > 0 and b2 > 9 * b1 + 8:
                    violations.append(f"{name} pair ({b1},{b2}) violates the gap bound b2 <= 9*b1+8")
    return violations


def invariant_report(spec: BrieskornSpec) -> InvariantReport:
    data = seifert_from_brieskorn(spec)
    star = minimal_resolution(data)
    m = gram_matrix(star.to_configuration())
    mb = mu_bar(spec)
    d = d_invariant(spec)
    neg, pos, hint = ds_feasibility(d, mb)
    return InvariantReport(
        multiplicities=spec.multiplicities,
        mu=mb % 2,
        mu_bar=mb,
        d=d,
        signature=lattice.signature(m),
        rank=m.n,
        feasible_b2_negdef=neg,
        feasible_b2_posdef=pos,
        epsilon_hint=hint,
    )
