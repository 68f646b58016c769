"""Blow-down and blow-up rewriting on configurations.

The blow-down of a (-1)-weighted vertex removes it, adds the squared label to
each neighbor's weight, adds the label product to each neighbor pair's edge,
and pushes torus tags by (a, b) -> (a + b, b) along an edge labeled b.  The
corner blow-up is its exact two-sided inverse and drives the Euclidean
normalization of branched triangular configurations to star graphs.

All operations are pure: they return new configurations and never mutate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ConfigError, MoveError
from .graph import Configuration, StarGraph, classify_shape, BRANCHED_TRIANGULAR
from .seifert import BrieskornSpec, brieskorn_from_seifert, read_seifert


@dataclass(frozen=True)
class MoveStep:
    """One blow-down or blow-up, with enough data to replay and audit it."""

    kind: str  # "blow_down" | "blow_up"
    vertex: str  # the (-1)-weighted vertex removed or inserted
    corner: str | None  # for blow-ups: the cycle corner pushed out of the triangle
    attachments: tuple[tuple[str, int], ...]  # (neighbor, label) while the vertex exists
    weight_changes: tuple[tuple[str, int, int], ...]
    label_changes: tuple[tuple[str, str, int, int], ...]

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertex": self.vertex,
            "corner": self.corner,
            "attachments": [list(a) for a in self.attachments],
            "weight_changes": [list(w) for w in self.weight_changes],
            "label_changes": [list(l) for l in self.label_changes],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MoveStep":
        return cls(
            d["kind"],
            d["vertex"],
            d.get("corner"),
            tuple((a, b) for a, b in d["attachments"]),
            tuple((v, x, y) for v, x, y in d["weight_changes"]),
            tuple((u, v, x, y) for u, v, x, y in d["label_changes"]),
        )


@dataclass(frozen=True)
class MoveTrace:
    steps: tuple[MoveStep, ...]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.as_dict(), sort_keys=True) + "\n" for s in self.steps)

    @classmethod
    def from_jsonl(cls, text: str) -> "MoveTrace":
        steps = tuple(
            MoveStep.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()
        )
        return cls(steps)

    def replay(self, initial: Configuration) -> Configuration:
        cur = initial
        for step in self.steps:
            if step.kind == "blow_up":
                cur = blow_up_corner(cur, step.corner, new_id=step.vertex)
            elif step.kind == "blow_down":
                cur = blow_down(cur, step.vertex)
            else:
                raise MoveError(f"unknown step kind {step.kind!r}")
        return cur


def _diff_step(before: Configuration, after: Configuration, kind: str, vertex: str,
               corner: str | None, attachments: tuple[tuple[str, int], ...]) -> MoveStep:
    common = [v for v in before.ids() if v in set(after.ids())]
    weight_changes = tuple(
        (v, before.weight(v), after.weight(v)) for v in common if before.weight(v) != after.weight(v)
    )
    label_changes = []
    seen = set()
    before_ids = set(before.ids())
    after_ids = set(after.ids())
    for u, v, _ in before.edges + after.edges:
        key = frozenset((u, v))
        if key in seen or vertex in (u, v):
            continue
        seen.add(key)
        lb = before.label(u, v) if u in before_ids and v in before_ids else 0
        la = after.label(u, v) if u in after_ids and v in after_ids else 0
        if lb != la:
            label_changes.append((u, v, lb, la))
    return MoveStep(kind, vertex, corner, attachments, weight_changes, tuple(label_changes))


def _push_tag_down(tag: tuple[int, int], lam: int) -> tuple[int, int]:
    """Blow-down tag rule: (a, b) with connecting label b becomes (a + b, b)."""
    p, q = tag
    if lam in (p, q):
        return (p + q, lam)
    return tag


def _pull_tag_up(tag: tuple[int, int], lam: int) -> tuple[int, int]:
    """Exact pre-image of the blow-down tag rule.

    Stored tags read (sum, link) largest-first, so only a pull along the
    smaller component is consistent; the result may trivialize to an unknot
    marker, which configurations drop.  Any other link label is refused rather
    than silently mangling the knot bookkeeping.
    """
    p, q = tag  # p > q >= 2 by canonical storage
    if lam == q:
        return (p - q, q)
    raise MoveError(
        f"blow-up with link {lam} at a ({p},{q})-tagged vertex has no consistent tag"
    )


def blow_down(config: Configuration, vertex: str) -> Configuration:
    """Remove a (-1)-framed unknotted vertex, rewiring weights, labels, and tags."""
    if vertex not in set(config.ids()):
        raise MoveError(f"no vertex {vertex!r}")
    if config.weight(vertex) != -1:
        raise MoveError(f"blow-down requires weight -1, vertex {vertex!r} has {config.weight(vertex)}")
    if config.tag(vertex) is not None:
        raise MoveError(f"vertex {vertex!r} is a nontrivial torus knot and cannot be blown down")
    nbrs = config.neighbors(vertex)
    order = {v: i for i, v in enumerate(config.ids())}
    verts = []
    for v, w in config.vertices:
        if v == vertex:
            continue
        verts.append((v, w + nbrs[v] ** 2 if v in nbrs else w))
    edges = []
    handled = set()
    for u, v, lab in config.edges:
        if vertex in (u, v):
            continue
        if u in nbrs and v in nbrs:
            lab += nbrs[u] * nbrs[v]
            handled.add(frozenset((u, v)))
            if lab == 0:
                continue
        edges.append((u, v, lab))
    new_pairs = []
    nbr_list = sorted(nbrs, key=order.__getitem__)
    for i in range(len(nbr_list)):
        for j in range(i + 1, len(nbr_list)):
            u, v = nbr_list[i], nbr_list[j]
            if frozenset((u, v)) in handled or config.label(u, v) != 0:
                continue
            lab = nbrs[u] * nbrs[v]
            if lab != 0:
                new_pairs.append((u, v, lab))
    tags = []
    for t, pq in config.torus_tags:
        if t == vertex:
            continue
        tags.append((t, _push_tag_down(pq, nbrs[t]) if t in nbrs else pq))
    try:
        return Configuration(tuple(verts), tuple(edges + new_pairs), tuple(tags))
    except ConfigError as exc:
        raise MoveError(f"blow-down leaves the admissible shape class: {exc}") from exc


def _fresh_id(config: Configuration, hint: str = "n") -> str:
    used = set(config.ids())
    k = 0
    while f"{hint}{k}" in used:
        k += 1
    return f"{hint}{k}"


def blow_up_corner(config: Configuration, corner: str, new_id: str | None = None) -> Configuration:
    """Insert a (-1)-vertex at a triangle corner; blow_down of it restores the input.

    The corner vertex is pushed out of the cycle: with triangle (corner, A, B)
    and labels u = l(corner,A), v = l(corner,B), w = l(A,B), the new vertex n
    joins A with label u, B with label v and the old corner with label 1,
    while A loses u^2, B loses v^2, the corner loses 1, and the opposite edge
    drops to w - u*v (disappearing when that is zero).
    """
    cyc = config.cycle()
    if cyc is None:
        raise MoveError("corner blow-up needs a branched triangular configuration")
    if corner not in cyc:
        raise MoveError(f"vertex {corner!r} is not on the 3-cycle")
    a_vtx, b_vtx = [x for x in cyc if x != corner]
    u = config.label(corner, a_vtx)
    v = config.label(corner, b_vtx)
    w = config.label(a_vtx, b_vtx)
    n_id = new_id if new_id is not None else _fresh_id(config)
    if n_id in set(config.ids()):
        raise MoveError(f"vertex id {n_id!r} already in use")
    deltas = {a_vtx: -u * u, b_vtx: -v * v, corner: -1}
    verts = [(x, wt + deltas.get(x, 0)) for x, wt in config.vertices]
    verts.append((n_id, -1))
    edges = []
    for x, y, lab in config.edges:
        pair = frozenset((x, y))
        if pair == frozenset((corner, a_vtx)) or pair == frozenset((corner, b_vtx)):
            continue
        if pair == frozenset((a_vtx, b_vtx)):
            if w - u * v != 0:
                edges.append((x, y, w - u * v))
            continue
        edges.append((x, y, lab))
    edges.extend([(n_id, a_vtx, u), (n_id, b_vtx, v), (n_id, corner, 1)])
    lam = {a_vtx: u, b_vtx: v, corner: 1}
    tags = []
    for t, pq in config.torus_tags:
        tags.append((t, _pull_tag_up(pq, lam[t]) if t in lam else pq))
    try:
        return Configuration(tuple(verts), tuple(edges), tuple(tags))
    except ConfigError as exc:
        raise MoveError(f"blow-up leaves the admissible shape class: {exc}") from exc


def _triangle_frame(config: Configuration) -> tuple[str, str, str, int, int]:
    """(hub, x, y, alpha, beta): the hub meets the two working labels alpha, beta
    and the opposite base edge (x, y) carries label 1."""
    cyc = config.cycle()
    if cyc is None or classify_shape(config) != BRANCHED_TRIANGULAR:
        raise MoveError("not a branched triangular configuration")
    candidates = []
    for t in cyc:
        x, y = [z for z in cyc if z != t]
        if config.label(x, y) == 1:
            candidates.append(t)
    tagged = [t for t in candidates if config.tag(t) is not None]
    hub = tagged[0] if tagged else candidates[0]
    x, y = [z for z in cyc if z != hub]
    return hub, x, y, config.label(hub, x), config.label(hub, y)


def normalize_to_star(config: Configuration) -> tuple[StarGraph, MoveTrace]:
    """Euclidean blow-up normalization of a branched triangular configuration.

    Repeatedly blows up the corner on the smaller of the two hub labels,
    reducing the pair (a, b) subtractively until both are 1, then kills the
    cycle; terminates after O(a + b) steps and returns the star graph with all
    labels +1 and all branch weights at most -2, together with the move trace.
    """
    hub, x, y, alpha, beta = _triangle_frame(config)
    if alpha < 1 or beta < 1:
        raise MoveError("triangle labels must be positive")
    if math.gcd(alpha, beta) != 1:
        raise MoveError(f"triangle labels must be coprime, gcd({alpha},{beta}) != 1")
    steps: list[MoveStep] = []
    cur = config
    budget = alpha + beta + 8
    while cur.cycle() is not None:
        if budget <= 0:
            raise MoveError("normalization did not terminate")  # unreachable for coprime labels
        budget -= 1
        cyc = cur.cycle()
        x, y = [z for z in cyc if z != hub]
        la, lb = cur.label(hub, x), cur.label(hub, y)
        if cur.label(x, y) != 1:
            raise MoveError("triangle base label must stay 1 during normalization")
        corner = x if la <= lb else y
        n_id = _fresh_id(cur)
        nxt = blow_up_corner(cur, corner, new_id=n_id)
        other = y if corner is x else x
        attachments = ((hub, cur.label(hub, corner)), (other, 1), (corner, 1))
        steps.append(_diff_step(cur, nxt, "blow_up", n_id, corner, attachments))
        cur = nxt
    star = StarGraph.from_configuration(cur)
    return star, MoveTrace(tuple(steps))


def boundary_brieskorn(config: Configuration) -> BrieskornSpec:
    """Brieskorn multiplicities of the boundary, via normalization and leg reading."""
    star, _ = normalize_to_star(config)
    return brieskorn_from_seifert(read_seifert(star))
