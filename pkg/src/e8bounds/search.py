"""Diophantine families, catalog tables, and bounded exhaustive classifications.

The seven quadratic families describe the rank-8 branched triangular
configurations whose forms are negative-E8; the catalog tables parametrize
their solutions and the Brieskorn boundaries of the normalized graphs.  The
star-graph searches are exact and complete within the stated weight bounds:
they enumerate even negative-definite unimodular stars by pruning on the
interval of reachable leg fractions beta/alpha, using rational arithmetic
only.  All sweeps produce deterministically ordered output.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .errors import E8BoundsError
from .graph import Configuration, StarGraph, branched_triangular, gram_matrix
from .moves import boundary_brieskorn
from .seifert import BrieskornSpec, brieskorn_from_seifert, read_seifert


@dataclass(frozen=True)
class DiophantineFamily:
    """A*a^2 + B*a*b + C*b^2 = D*c - k0, with (A, B, C) = quad and (D, k0) = rhs."""

    id: int
    quad: tuple[int, int, int]
    rhs: tuple[int, int]

    def lhs(self, a: int, b: int) -> int:
        qa, qab, qb = self.quad
        return qa * a * a + qab * a * b + qb * b * b

    def c_for(self, a: int, b: int) -> int | None:
        d, k0 = self.rhs
        val = self.lhs(a, b) + k0
        if val % d == 0 and val // d >= 1:
            return val // d
        return None

    def holds(self, a: int, b: int, c: int) -> bool:
        d, k0 = self.rhs
        return self.lhs(a, b) == d * c - k0


FAMILIES: dict[int, DiophantineFamily] = {
    1: DiophantineFamily(1, (3, 4, 3), (5, 2)),
    2: DiophantineFamily(2, (3, 3, 2), (5, 2)),
    3: DiophantineFamily(3, (6, 9, 6), (7, 2)),
    4: DiophantineFamily(4, (6, 8, 5), (7, 2)),
    5: DiophantineFamily(5, (5, 5, 3), (7, 2)),
    6: DiophantineFamily(6, (15, 20, 12), (16, 1)),
    7: DiophantineFamily(7, (12, 12, 7), (16, 1)),
}

# Chain lengths (hub, left, right) of the seven rank-8 configurations; the
# right chain hangs off the a-labeled corner, the left off the b-labeled one.
CONFIG_SHAPES: dict[int, tuple[int, int, int]] = {
    1: (3, 1, 1),
    2: (3, 0, 2),
    3: (1, 2, 2),
    4: (1, 1, 3),
    5: (1, 0, 4),
    6: (0, 1, 4),
    7: (0, 0, 5),
}


def family_configuration(family_id: int, a: int, b: int, c: int) -> Configuration:
    """The branched triangular configuration of the given family at (a, b, c)."""
    hub, left, right = CONFIG_SHAPES[family_id]
    return branched_triangular(a, b, c, hub, left, right)


@dataclass(frozen=True)
class FamilySolution:
    family: int
    a: int
    b: int
    c: int
    gcd_ok: bool
    provenance: tuple[int, int, int] | None = None  # (k, l, sign) when from a parametric row


def solve_family(family_id: int, a_max: int, b_max: int) -> list[FamilySolution]:
    """All positive solutions with a <= a_max, b <= b_max, sorted lexicographically."""
    if a_max < 1 or b_max < 1:
        raise E8BoundsError("bounds must be at least 1")
    fam = FAMILIES[family_id]
    out = []
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            c = fam.c_for(a, b)
            if c is not None:
                out.append(FamilySolution(family_id, a, b, c, math.gcd(a, b) == 1))
    return out


# -- parametric solution rows (catalog table 1) -------------------------------


@dataclass(frozen=True)
class ParametricRow:
    """a = ak*k + al*l + s*ac ; b = bk*k + bl*l - s*bc ;
    c = q20*k^2 + q11*k*l + q02*l^2 + s*(lk*k + ll*l) + c0, with s = +1/-1."""

    family: int
    a_coef: tuple[int, int, int]
    b_coef: tuple[int, int, int]
    c_quad: tuple[int, int, int]
    c_lin: tuple[int, int]
    c_const: int

    def evaluate(self, k: int, l: int, sign: int) -> tuple[int, int, int]:
        ak, al, ac = self.a_coef
        bk, bl, bc = self.b_coef
        q20, q11, q02 = self.c_quad
        lk, ll = self.c_lin
        a = ak * k + al * l + sign * ac
        b = bk * k + bl * l - sign * bc
        c = q20 * k * k + q11 * k * l + q02 * l * l + sign * (lk * k + ll * l) + self.c_const
        return a, b, c


TABLE1_ROWS: tuple[ParametricRow, ...] = (
    ParametricRow(1, (3, -2, 2), (-2, 3, 2), (3, -4, 3), (4, -4), 2),
    ParametricRow(2, (4, -1, 2), (-3, 2, 2), (6, -3, 1), (6, -2), 2),
    ParametricRow(3, (4, -3, 2), (-3, 4, 2), (6, -9, 6), (6, -6), 2),
    ParametricRow(4, (5, -2, 2), (-4, 3, 2), (10, -8, 3), (8, -4), 2),
    ParametricRow(5, (6, -1, 2), (-5, 2, 2), (15, -5, 1), (10, -2), 2),
    ParametricRow(6, (12, -4, 3), (-10, 6, 3), (60, -40, 12), (30, -12), 4),
    ParametricRow(6, (12, -4, 5), (-10, 6, 5), (60, -40, 12), (50, -20), 11),
    ParametricRow(6, (12, -4, 1), (-10, 6, 0), (60, -40, 12), (10, 0), 1),
    ParametricRow(6, (12, -4, 3), (-10, 6, 2), (60, -40, 12), (30, -8), 4),
    ParametricRow(7, (14, -2, 3), (-12, 4, 3), (84, -24, 4), (36, -6), 4),
    ParametricRow(7, (14, -2, 5), (-12, 4, 5), (84, -24, 4), (60, -10), 11),
    # The catalog prints the linear part of this c as 12(2k-l); the family-(7)
    # identity forces 2(12k-l), i.e. (24, -2) rather than (24, -12).
    ParametricRow(7, (14, -2, 2), (-12, 4, 1), (84, -24, 4), (24, -2), 2),
    ParametricRow(7, (14, -2, 4), (-12, 4, 3), (84, -24, 4), (48, -6), 7),
)


@dataclass(frozen=True)
class ParametricInstance:
    row: int
    family: int
    k: int
    l: int
    sign: int
    a: int
    b: int
    c: int
    positive: bool
    gcd_ok: bool
    satisfies: bool


def table1_generate(row: int, k: int, l: int, sign: int) -> ParametricInstance:
    """Evaluate a parametric row; non-positive a, b, or c are marked filtered-out."""
    if not 0 <= row < len(TABLE1_ROWS):
        raise E8BoundsError(f"row index {row} out of range")
    if sign not in (1, -1):
        raise E8BoundsError("sign must be +1 or -1")
    r = TABLE1_ROWS[row]
    a, b, c = r.evaluate(k, l, sign)
    positive = a >= 1 and b >= 1 and c >= 1
    return ParametricInstance(
        row, r.family, k, l, sign, a, b, c,
        positive, math.gcd(abs(a), abs(b)) == 1 if (a, b) != (0, 0) else False,
        FAMILIES[r.family].holds(a, b, c),
    )


# -- family-(1) progressions (catalog table 3) --------------------------------


@dataclass(frozen=True)
class ProgressionRow:
    """Solutions (a, M*i + r, c(i)) of family (1); published_c stores the
    catalog's printed quadratic for cross-checking."""

    a: int
    step: int
    offset: int
    published_c: tuple[int, int, int]

    def b_of(self, i: int) -> int:
        return self.step * i + self.offset

    def c_of(self, i: int) -> int:
        c2, c1, c0 = self.derived_c()
        return c2 * i * i + c1 * i + c0

    def derived_c(self) -> tuple[int, int, int]:
        a, m, r = self.a, self.step, self.offset
        num2 = 3 * m * m
        num1 = 4 * a * m + 6 * m * r
        num0 = 3 * a * a + 4 * a * r + 3 * r * r + 2
        if num2 % 5 or num1 % 5 or num0 % 5:
            raise E8BoundsError("progression is not a family-(1) residue class")
        return num2 // 5, num1 // 5, num0 // 5


TABLE3_ROWS: tuple[ProgressionRow, ...] = (
    ProgressionRow(1, 5, -3, (15, -14, 4)),
    ProgressionRow(1, 5, 0, (15, 4, 1)),
    ProgressionRow(2, 10, -7, (60, -68, 21)),
    ProgressionRow(2, 10, 1, (60, 28, 5)),
    ProgressionRow(3, 15, -11, (135, -162, 52)),
    ProgressionRow(3, 15, -8, (135, -108, 25)),
    ProgressionRow(3, 15, -1, (135, 18, 4)),
    ProgressionRow(3, 15, 2, (135, 72, 13)),
    ProgressionRow(4, 10, -5, (60, -28, 9)),
    ProgressionRow(4, 10, -7, (60, -52, 17)),
    ProgressionRow(5, 5, -4, (15, -4, 9)),
    # The printed catalog carries -14i here; the progression and the family
    # equation force +14i, which derived_c() reproduces.
    ProgressionRow(5, 5, -1, (15, -14, 12)),
    ProgressionRow(6, 30, -23, (540, -684, 229)),
    ProgressionRow(6, 30, -13, (540, -324, 61)),
    ProgressionRow(6, 30, -5, (540, -36, 13)),
    ProgressionRow(6, 30, 5, (540, 324, 61)),
)


@dataclass(frozen=True)
class ProgressionMembership:
    status: str  # "ok" | "not a solution" | "no progression"
    row: int | None = None
    i: int | None = None


def classify_family1(a: int, b: int, c: int) -> ProgressionMembership:
    """Locate a coprime family-(1) solution in the sixteen progressions."""
    if not FAMILIES[1].holds(a, b, c):
        return ProgressionMembership("not a solution")
    for idx, row in enumerate(TABLE3_ROWS):
        if row.a != a:
            continue
        if (b - row.offset) % row.step:
            continue
        i = (b - row.offset) // row.step
        if i >= 0 and row.c_of(i) == c:
            return ProgressionMembership("ok", idx, i)
    return ProgressionMembership("no progression")


@dataclass(frozen=True)
class ProgressionReport:
    entries: tuple[tuple[int, int, int, int, int], ...]  # (a, b, c, row, i)
    unmatched: tuple[FamilySolution, ...]
    missing: tuple[tuple[int, int], ...]  # (row, i) progression instances absent from the scan


def table3_reproduce(b_max: int) -> ProgressionReport:
    """Partition the coprime family-(1) solutions with a <= 6 into the progressions."""
    if b_max < 30:
        raise E8BoundsError("b_max must be at least 30")
    entries = []
    unmatched = []
    seen = set()
    for sol in solve_family(1, 6, b_max):
        if not sol.gcd_ok:
            continue
        member = classify_family1(sol.a, sol.b, sol.c)
        if member.status != "ok":
            unmatched.append(sol)
            continue
        entries.append((sol.a, sol.b, sol.c, member.row, member.i))
        seen.add((member.row, member.i))
    missing = []
    for idx, row in enumerate(TABLE3_ROWS):
        i = 0
        while row.b_of(i) <= b_max:
            if row.b_of(i) >= 1 and (idx, i) not in seen:
                missing.append((idx, i))
            i += 1
    return ProgressionReport(tuple(entries), tuple(unmatched), tuple(missing))


# -- Brieskorn boundaries of the normalized family-(1) graphs (catalog table 2)


@dataclass(frozen=True)
class TripleRow:
    """(p, q, r) = (P1*i + d1, P2*i + d2, A*i^2 + B*i + C)."""

    p: tuple[int, int]
    q: tuple[int, int]
    r: tuple[int, int, int]

    def evaluate(self, i: int) -> tuple[int, int, int]:
        return (
            self.p[0] * i + self.p[1],
            self.q[0] * i + self.q[1],
            self.r[0] * i * i + self.r[1] * i + self.r[2],
        )


TABLE2_ROWS: tuple[TripleRow, ...] = (
    TripleRow((10, 7), (15, 8), (120, 148, 45)),
    TripleRow((10, 3), (15, 2), (120, 52, 5)),
    TripleRow((20, -8), (30, -17), (480, -464, 109)),
    TripleRow((20, 8), (30, 7), (480, 304, 45)),
    TripleRow((30, -13), (45, -27), (1080, -1116, 281)),
    TripleRow((30, -7), (45, -18), (1080, -684, 101)),
    TripleRow((30, 7), (45, 3), (1080, 324, 17)),
    TripleRow((30, 13), (45, 12), (1080, 756, 125)),
    TripleRow((20, 2), (30, -7), (480, -64, -11)),
    TripleRow((20, -2), (30, -23), (480, -256, 21)),
    TripleRow((10, 7), (15, -2), (120, 68, -365)),
    TripleRow((10, 13), (15, 7), (120, 212, 73)),
    TripleRow((60, -28), (90, -57), (4320, -4752, 1277)),
    TripleRow((60, -8), (90, -27), (4320, -1872, 173)),
    TripleRow((60, 8), (90, -3), (4320, 432, -19)),
    TripleRow((60, 28), (90, 27), (4320, 3312, 605)),
)

# Two catalog rows disagree with the boundaries the blow-down pipeline
# actually produces; the corrections below were fitted to the computed triples
# at three consecutive indices each and are reported as findings, never
# silently substituted.
TABLE2_CORRECTIONS: dict[int, TripleRow] = {
    9: TripleRow((20, -2), (30, -13), (480, -256, 21)),
    10: TripleRow((10, 7), (15, -2), (120, 68, -11)),
}


def _match_rows(triple: tuple[int, ...], rows) -> tuple[int, int] | None:
    target = tuple(sorted(triple))
    hi = max(target)
    for idx, row in rows:
        for i in range(0, 200):
            p, q, r = row.evaluate(i)
            if min(p, q, r) > hi:
                break
            if p >= 1 and q >= 1 and r >= 1 and tuple(sorted((p, q, r))) == target:
                return idx, i
    return None


def table2_match(triple: tuple[int, ...]) -> tuple[int, int] | None:
    """(row, i) of the printed closed-form triple matching the sorted input, if any."""
    return _match_rows(triple, list(enumerate(TABLE2_ROWS)))


def table2_match_corrected(triple: tuple[int, ...]) -> tuple[int, int] | None:
    return _match_rows(triple, list(TABLE2_CORRECTIONS.items()))


@dataclass(frozen=True)
class PipelineEntry:
    row: int
    i: int
    a: int
    b: int
    c: int
    is_negative_e8: bool
    triple: tuple[int, ...]
    match: tuple[int, int] | None
    match_kind: str  # "printed" | "corrected" | "none"


@dataclass(frozen=True)
class PipelineReport:
    matches: tuple[PipelineEntry, ...]  # boundaries found among the printed rows
    findings: tuple[PipelineEntry, ...]  # only in a corrected row: catalog defect, reported
    mismatches: tuple[PipelineEntry, ...]  # in no row at all; never silently dropped


def table2_reproduce(i_max: int) -> PipelineReport:
    """Normalize each progression instance and match its boundary to a triple row."""
    if i_max < 2:
        raise E8BoundsError("i_max must be at least 2")
    matches = []
    findings = []
    mismatches = []
    for idx, row in enumerate(TABLE3_ROWS):
        for i in range(0, i_max + 1):
            a, b, c = row.a, row.b_of(i), row.c_of(i)
            if b < 1 or c < 1 or math.gcd(a, b) != 1:
                continue
            config = family_configuration(1, a, b, c)
            cert = lattice.recognize_negative_e8(gram_matrix(config))
            triple = boundary_brieskorn(config).multiplicities
            found = table2_match(triple)
            kind = "printed" if found is not None else "none"
            if found is None:
                found = table2_match_corrected(triple)
                if found is not None:
                    kind = "corrected"
            entry = PipelineEntry(idx, i, a, b, c, cert.is_negative_e8, triple, found, kind)
            if not cert.is_negative_e8 or kind == "none":
                mismatches.append(entry)
            elif kind == "corrected":
                findings.append(entry)
            else:
                matches.append(entry)
    return PipelineReport(tuple(matches), tuple(findings), tuple(mismatches))


# -- exhaustive even star-graph searches --------------------------------------


def _tail_ranges(max_len: int, w_max: int) -> tuple[list, list]:
    """Min/max values of length-m all-even minus-fractions with terms in [2, w_max]."""
    tmin = [None] * (max_len + 1)
    tmax = [None] * (max_len + 1)
    for m in range(1, max_len + 1):
        tmin[m] = Fraction(m + 1, m)
        tmax[m] = Fraction(w_max) if m == 1 else w_max - 1 / tmax[m - 1]
    return tmin, tmax


def _branch_options(length, w_max, f_lo, f_hi, tmin, tmax):
    """All (alpha, beta, weights) of even-term legs with beta/alpha in [f_lo, f_hi].

    Legs are enumerated as minus-fraction terms via their Moebius state; a
    prefix is pruned when no completion can land the full value alpha/beta in
    the target interval.  Exact rational arithmetic throughout.
    """
    if f_hi <= 0:
        return []
    v_lo = 1 / f_hi
    v_hi = tmax[length] if f_lo <= 0 else 1 / f_lo
    out = []

    def rec(a, b, c, d, m, prefix):
        if m == 1:
            for x in range(2, w_max + 1, 2):
                alpha, beta = a * x + b, c * x + d
                v = Fraction(alpha, beta)
                if v > v_hi:
                    break
                if v >= v_lo:
                    out.append((alpha, beta, prefix + (-x,)))
            return
        for x in range(2, w_max + 1, 2):
            a2, b2, c2, d2 = a * x + b, -a, c * x + d, -c
            reach_lo = (a2 * tmin[m - 1] + b2) / (c2 * tmin[m - 1] + d2)
            if reach_lo > v_hi:
                break
            reach_hi = (a2 * tmax[m - 1] + b2) / (c2 * tmax[m - 1] + d2)
            if reach_hi < v_lo:
                continue
            rec(a2, b2, c2, d2, m - 1, prefix + (-x,))

    rec(1, 0, 0, 1, length, ())
    return out


def search_even_stars(
    branch_lengths: tuple[int, ...], center_weights: tuple[int, ...], bound: int
) -> list[StarGraph]:
    """Every negative-definite unimodular star with all-even weights in range.

    Branch weights run over {-2, -4, ..., -2*bound}; the branch length
    multiset and the admissible center weights are fixed by the caller.  Legs
    with equal lengths are returned in one canonical order, so each isomorphism
    class appears once.
    """
    w_max = 2 * bound
    lengths = tuple(sorted(branch_lengths, reverse=True))
    nb = len(lengths)
    tmin, tmax = _tail_ranges(max(lengths), w_max)
    fmax = {m: Fraction(m, m + 1) for m in set(lengths)}
    fmin = {m: 1 / tmax[m] for m in set(lengths)}
    suffix_fmax = [Fraction(0)] * (nb + 1)
    suffix_fmin = [Fraction(0)] * (nb + 1)
    suffix_amin = [1] * (nb + 1)
    for i in range(nb - 1, -1, -1):
        suffix_fmax[i] = suffix_fmax[i + 1] + fmax[lengths[i]]
        suffix_fmin[i] = suffix_fmin[i + 1] + fmin[lengths[i]]
        suffix_amin[i] = suffix_amin[i + 1] * (lengths[i] + 1)
    found = {}

    def rec(w0: int, i: int, done: list) -> None:
        if i == nb:
            prod = 1
            for alpha, _, _ in done:
                prod *= alpha
            det = w0 * prod - sum(beta * (prod // alpha) for alpha, beta, _ in done)
            if det == 1:
                branches = tuple(wts for _, _, wts in done)
                key = (-w0, tuple(sorted(branches)))
                found.setdefault(key, StarGraph(-w0, branches))
            return
        m = lengths[i]
        base = Fraction(w0) - sum(Fraction(beta, alpha) for alpha, beta, _ in done)
        amin = suffix_amin[i + 1] * (m + 1)
        for alpha, _, _ in done:
            amin *= alpha
        f_lo = base - suffix_fmax[i + 1] - Fraction(1, amin)
        f_hi = min(fmax[m], base - suffix_fmin[i + 1])
        if f_hi <= 0 or f_lo > f_hi:
            return
        for alpha, beta, wts in _branch_options(m, w_max, f_lo, f_hi, tmin, tmax):
            if i > 0 and lengths[i - 1] == m and wts > done[-1][2]:
                continue
            done.append((alpha, beta, wts))
            rec(w0, i + 1, done)
            done.pop()

    for cw in center_weights:
        if cw >= 0 or cw % 2:
            raise E8BoundsError("center weights must be negative even integers")
        rec(-cw, 0, [])
    return [found[k] for k in sorted(found)]


RANK8_TYPES: tuple[tuple[int, int, int], ...] = ((1, 2, 4), (2, 2, 3), (1, 1, 5), (1, 3, 3))


@dataclass(frozen=True)
class StarSolution:
    star: StarGraph
    sphere: BrieskornSpec
    shell_clean: bool  # no weight parameter inside the top quartile of the bound


def _star_solutions(stars: list[StarGraph], bound: int) -> list[StarSolution]:
    out = []
    for s in stars:
        deepest = max(
            [abs(s.central_weight) // 2] + [abs(w) // 2 for br in s.branches for w in br]
        )
        out.append(
            StarSolution(s, brieskorn_from_seifert(read_seifert(s)), deepest <= (3 * bound) // 4)
        )
    return out


def classify_star_rank8_even(bound: int) -> dict[tuple[int, int, int], list[StarSolution]]:
    """Exhaustive search for rank-8 even unimodular negative-definite 3-leg stars.

    Covers the four branch-length types summing to 7, center weight -2 or -4,
    weights down to -2*bound.
    """
    if bound < 8:
        raise E8BoundsError("bound must be at least 8")
    return {
        t: _star_solutions(search_even_stars(t, (-2, -4), bound), bound) for t in RANK8_TYPES
    }


def classify_2221(bound: int) -> list[StarSolution]:
    """Exhaustive search for rank-8 even unimodular stars of leg type (2,2,2,1)."""
    if bound < 30:
        raise E8BoundsError("bound must be at least 30")
    return _star_solutions(search_even_stars((2, 2, 2, 1), (-2, -4), bound), bound)


SEVEN_LEG_PARTITIONS: tuple[tuple[int, ...], ...] = (
    (4, 1, 1, 1),
    (3, 2, 1, 1),
    (2, 2, 2, 1),
    (3, 1, 1, 1, 1),
    (2, 2, 1, 1, 1),
    (2, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 1, 1, 1),
)


def partition_parity_check(
    draws: int = 100, weight_bound: int = 9, seed: int = 992251
) -> dict[tuple[int, ...], bool]:
    """Random even stars of each >=4-leg rank-8 type except (2,2,2,1): is det even?

    Returns partition -> True when every sampled determinant was even; the
    (2,2,2,1) type is the one shape that can be unimodular and is excluded.
    """
    rng = random.Random(seed)
    report = {}
    for part in SEVEN_LEG_PARTITIONS:
        if part == (2, 2, 2, 1):
            continue
        all_even = True
        for _ in range(draws):
            center = -2 * rng.randint(1, 2)
            branches = tuple(
                tuple(-2 * rng.randint(1, weight_bound) for _ in range(m)) for m in part
            )
            det = lattice.determinant(gram_matrix(StarGraph(center, branches).to_configuration()))
            if det % 2 == 0:
                continue
            all_even = False
        report[part] = all_even
    return report
