"""Exact predicates on integer symmetric bilinear forms.

Everything here is computed with arbitrary-precision integers (or exact
rationals for the inertia computation); no floating point is used anywhere.
All functions are pure and safe for concurrent use.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import E8BoundsError, ParseError


@dataclass(frozen=True)
class IntegerSymmetricMatrix:
    """A rank-n symmetric matrix with integer entries, stored row-major."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise E8BoundsError("matrix rank does not match row count")
        for row in self.rows:
            if len(row) != self.n:
                raise E8BoundsError("matrix is not square")
            for x in row:
                if not isinstance(x, int):
                    raise E8BoundsError("matrix entries must be integers")
        for i in range(self.n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise E8BoundsError("matrix is not symmetric")

    @classmethod
    def from_rows(cls, rows) -> "IntegerSymmetricMatrix":
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(tup), tup)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def permuted(self, perm: list[int]) -> "IntegerSymmetricMatrix":
        """Simultaneous row/column permutation: entry (i,j) <- (perm[i], perm[j])."""
        return IntegerSymmetricMatrix.from_rows(
            [[self.rows[perm[i]][perm[j]] for j in range(self.n)] for i in range(self.n)]
        )


def matrix_to_text(m: IntegerSymmetricMatrix) -> str:
    """Text form: first line the rank, then one line of entries per row."""
    lines = [str(m.n)]
    lines.extend(" ".join(str(x) for x in row) for row in m.rows)
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> IntegerSymmetricMatrix:
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise ParseError("missing rank line", 1, 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("rank is not an integer", 1, 1) from None
    rows = []
    for i in range(n):
        if i + 1 >= len(lines):
            raise ParseError("missing matrix row", i + 2, 1)
        parts = lines[i + 1].split()
        if len(parts) != n:
            raise ParseError(f"expected {n} entries", i + 2, 1)
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise ParseError("non-integer entry", i + 2, 1) from None
    return IntegerSymmetricMatrix.from_rows(rows)


def determinant(m: IntegerSymmetricMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting.

    The empty matrix has determinant 1.
    """
    n = m.n
    if n == 0:
        return 1
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * pivot - aik * ak[j]) // prev
            ai[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m: IntegerSymmetricMatrix) -> list[int]:
    """The determinants of the k-by-k upper-left blocks, k = 1..n.

    Computed in one fraction-free elimination pass (the Bareiss pivots are
    exactly the leading minors).  If some leading minor vanishes the list is
    truncated right after the zero entry: the remaining minors are not needed
    by any definiteness test, which fails at the first zero anyway.
    """
    n = m.n
    if n == 0:
        return []
    a = [list(row) for row in m.rows]
    minors = [a[0][0]]
    prev = 1
    for k in range(n - 1):
        pivot = a[k][k]
        if pivot == 0:
            return minors
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * pivot - aik * ak[j]) // prev
            ai[k] = 0
        prev = pivot
        minors.append(a[k + 1][k + 1])
    return minors


def is_negative_definite(m: IntegerSymmetricMatrix) -> bool:
    """True iff (-1)^k times the k-th leading principal minor is positive for all k."""
    if m.n == 0:
        return True
    minors = leading_principal_minors(m)
    if len(minors) < m.n:
        return False
    return all(d != 0 and (d > 0) == (k % 2 == 0) for k, d in enumerate(minors, start=1))


def is_even(m: IntegerSymmetricMatrix) -> bool:
    """Even type: every diagonal entry (hence every square) is even."""
    return all(m.rows[i][i] % 2 == 0 for i in range(m.n))


def is_unimodular(m: IntegerSymmetricMatrix) -> bool:
    return abs(determinant(m)) == 1


def signature(m: IntegerSymmetricMatrix) -> int:
    """Exact signature (positive minus negative inertia index).

    Symmetric elimination over the rationals.  Zero diagonals are handled by
    permuting a nonzero diagonal entry into pivot position when one exists,
    and otherwise by splitting off an off-diagonal hyperbolic pair, which
    contributes zero to the signature.
    """
    n = m.n
    w = {i: {j: Fraction(m.rows[i][j]) for j in range(n) if m.rows[i][j] != 0} for i in range(n)}
    active = list(range(n))
    plus = minus = 0
    while active:
        piv = next((i for i in active if w[i].get(i)), None)
        if piv is not None:
            d = w[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(piv)
            col = {r: w[r][piv] for r in active if piv in w[r]}
            for r, cr in col.items():
                fac = cr / d
                for s, cs in col.items():
                    val = w[r].get(s, Fraction(0)) - fac * cs
                    if val:
                        w[r][s] = val
                    else:
                        w[r].pop(s, None)
                w[r].pop(piv, None)
            continue
        pair = None
        for i in active:
            for j in w[i]:
                if j != i and j in active and w[i][j]:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break  # remaining block is zero
        i, j = pair
        a = w[i][j]
        plus += 1
        minus += 1
        active.remove(i)
        active.remove(j)
        coli = {r: w[r][i] for r in active if i in w[r]}
        colj = {r: w[r][j] for r in active if j in w[r]}
        for r in active:
            ci = coli.get(r)
            cj = colj.get(r)
            if ci is None and cj is None:
                continue
            for s in active:
                si = coli.get(s)
                sj = colj.get(s)
                if si is None and sj is None:
                    continue
                adj = Fraction(0)
                if ci is not None and sj is not None:
                    adj += ci * sj
                if cj is not None and si is not None:
                    adj += cj * si
                if adj:
                    val = w[r].get(s, Fraction(0)) - adj / a
                    if val:
                        w[r][s] = val
                    else:
                        w[r].pop(s, None)
        for r in active:
            w[r].pop(i, None)
            w[r].pop(j, None)
    return plus - minus


@dataclass(frozen=True)
class E8Certificate:
    """Outcome of the rank-8 negative-E8 recognition test."""

    is_negative_e8: bool
    rank: int
    even: bool
    unimodular: bool
    negative_definite: bool
    reason: str

    def as_dict(self) -> dict:
        return {
            "is_negative_e8": self.is_negative_e8,
            "rank": self.rank,
            "even": self.even,
            "unimodular": self.unimodular,
            "negative_definite": self.negative_definite,
            "reason": self.reason,
        }


def recognize_negative_e8(m: IntegerSymmetricMatrix) -> E8Certificate:
    """Certify a form as the negative E8 form.

    Sound at rank 8 because the even, unimodular, definite rank-8 form is
    unique.  At rank 8k with k >= 2 the four predicates no longer pin the
    isometry class, so only a genus-level statement is reported and the
    verdict is negative.
    """
    even = is_even(m)
    uni = is_unimodular(m)
    neg = is_negative_definite(m)
    if m.n != 8:
        if m.n % 8 == 0 and m.n > 8 and even and uni and neg:
            reason = f"rank {m.n}: genus-level match only (isometry class untested)"
        else:
            reason = f"rank {m.n} != 8"
        return E8Certificate(False, m.n, even, uni, neg, reason)
    for name, ok in (("even", even), ("unimodular", uni), ("negative-definite", neg)):
        if not ok:
            return E8Certificate(False, 8, even, uni, neg, f"not {name}")
    return E8Certificate(True, 8, True, True, True, "rank-8 even unimodular negative-definite")
