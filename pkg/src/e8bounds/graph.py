"""Plumbing-style configuration graphs and star graphs.

A configuration is a connected, weighted, edge-labeled graph that is either a
tree or contains exactly one cycle, of length three.  Vertex weights are the
framings, edge labels the linking numbers; an absent edge means linking zero,
so a label of zero is never stored.  Configurations are immutable; every
operation builds a new value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, ParseError
from .lattice import IntegerSymmetricMatrix

LINEAR = "linear chain"
STAR = "star"
BRANCHED_TRIANGULAR = "branched-triangular"
OTHER = "other"


@dataclass(frozen=True)
class Configuration:
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str, int], ...]
    torus_tags: tuple[tuple[str, tuple[int, int]], ...] = ()

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        idset = set(ids)
        if len(idset) != len(ids):
            raise ConfigError("duplicate vertex id")
        for v, w in self.vertices:
            if not isinstance(v, str) or not v or any(ch.isspace() for ch in v):
                raise ConfigError(f"vertex id {v!r} must be a nonempty token")
            if not isinstance(w, int):
                raise ConfigError("vertex weights must be integers")
        adj: dict[str, dict[str, int]] = {v: {} for v in ids}
        for u, v, lab in self.edges:
            if u not in idset or v not in idset:
                raise ConfigError(f"edge ({u},{v}) references a missing vertex")
            if u == v:
                raise ConfigError(f"self-loop at {u}")
            if not isinstance(lab, int) or lab == 0:
                raise ConfigError("edge labels must be nonzero integers")
            if v in adj[u]:
                raise ConfigError(f"duplicate edge ({u},{v})")
            adj[u][v] = lab
            adj[v][u] = lab
        for t, pq in self.torus_tags:
            if t not in idset:
                raise ConfigError(f"torus tag on missing vertex {t}")
            p, q = pq
            if not (isinstance(p, int) and isinstance(q, int) and p >= 1 and q >= 1):
                raise ConfigError("torus tag must be a pair of positive integers")
            if math.gcd(p, q) != 1:
                raise ConfigError(f"({p},{q}) is a torus link, not a knot")
        if len({t for t, _ in self.torus_tags}) != len(self.torus_tags):
            raise ConfigError("duplicate torus tag")
        index = {v: i for i, v in enumerate(ids)}
        # canonical storage: edges ordered along vertex insertion order; torus
        # pairs largest-first with trivial (unknot) markers dropped, so that
        # equality of configurations is semantic
        canon_edges = tuple(
            sorted(
                ((u, v, lab) if index[u] < index[v] else (v, u, lab) for u, v, lab in self.edges),
                key=lambda e: (index[e[0]], index[e[1]]),
            )
        )
        canon_tags = tuple(
            sorted(
                ((t, (max(pq), min(pq))) for t, pq in self.torus_tags if min(pq) >= 2),
                key=lambda item: index[item[0]],
            )
        )
        object.__setattr__(self, "edges", canon_edges)
        object.__setattr__(self, "torus_tags", canon_tags)
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_index", index)
        if ids:
            seen = {ids[0]}
            stack = [ids[0]]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(ids):
                raise ConfigError("graph is not connected")
        extra = len(self.edges) - max(len(ids) - 1, 0)
        if extra not in (0, 1) or (not ids and self.edges):
            raise ConfigError("graph must be a tree or carry exactly one cycle")
        cycle = None
        if extra == 1:
            deg = {v: len(adj[v]) for v in ids}
            alive = set(ids)
            queue = [v for v in ids if deg[v] <= 1]
            while queue:
                v = queue.pop()
                alive.discard(v)
                for w in adj[v]:
                    if w in alive:
                        deg[w] -= 1
                        if deg[w] == 1:
                            queue.append(w)
            if len(alive) != 3:
                raise ConfigError("the unique cycle must have length 3")
            cycle = tuple(sorted(alive, key=self._index.__getitem__))
        object.__setattr__(self, "_cycle", cycle)

    # -- queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def weight(self, v: str) -> int:
        return self.vertices[self._index[v]][1]

    def neighbors(self, v: str) -> dict[str, int]:
        return dict(self._adj[v])

    def label(self, u: str, v: str) -> int:
        """The label of edge (u, v), or 0 when absent."""
        return self._adj[u].get(v, 0)

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def tag(self, v: str) -> tuple[int, int] | None:
        for t, pq in self.torus_tags:
            if t == v:
                return pq
        return None

    def cycle(self) -> tuple[str, str, str] | None:
        """The vertices of the unique 3-cycle in insertion order, if any."""
        return self._cycle


def gram_matrix(config: Configuration) -> IntegerSymmetricMatrix:
    """Gram matrix of the configuration: weights on the diagonal, labels off it.

    Rows and columns follow the vertex insertion order, which serialization
    preserves, so matrices are reproducible across round-trips.
    """
    n = config.n
    idx = {v: i for i, (v, _) in enumerate(config.vertices)}
    rows = [[0] * n for _ in range(n)]
    for i, (_, w) in enumerate(config.vertices):
        rows[i][i] = w
    for u, v, lab in config.edges:
        i, j = idx[u], idx[v]
        rows[i][j] = lab
        rows[j][i] = lab
    return IntegerSymmetricMatrix.from_rows(rows)


def classify_shape(config: Configuration) -> str:
    """One of: linear chain, star, branched-triangular, other."""
    cyc = config.cycle()
    if cyc is not None:
        a, b, c = cyc
        labels = (config.label(a, b), config.label(b, c), config.label(a, c))
        return BRANCHED_TRIANGULAR if 1 in labels else OTHER
    high = [v for v, _ in config.vertices if config.degree(v) >= 3]
    if not high:
        return LINEAR
    if len(high) == 1:
        return STAR
    return OTHER


# -- text formats -----------------------------------------------------------


def serialize(config: Configuration) -> str:
    """Canonical line-oriented text form; inverse of :func:`deserialize`."""
    lines = []
    tags = dict(config.torus_tags)
    for v, w in config.vertices:
        if v in tags:
            p, q = tags[v]
            lines.append(f"v {v} {w} torus {p} {q}")
        else:
            lines.append(f"v {v} {w}")
    for u, v, lab in config.edges:
        lines.append(f"e {u} {v} {lab}")
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_int(token: str, lineno: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer, got {token!r}", lineno, col) from None


def deserialize(text: str) -> Configuration:
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str, int]] = []
    tags: list[tuple[str, tuple[int, int]]] = []
    any_line = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        any_line = True
        parts = line.split()
        col = raw.index(parts[0]) + 1
        if parts[0] == "v":
            if len(parts) not in (3, 6) or (len(parts) == 6 and parts[3] != "torus"):
                raise ParseError("vertex line must be 'v <id> <weight> [torus p q]'", lineno, col)
            w = _parse_int(parts[2], lineno, col)
            vertices.append((parts[1], w))
            if len(parts) == 6:
                p = _parse_int(parts[4], lineno, col)
                q = _parse_int(parts[5], lineno, col)
                tags.append((parts[1], (p, q)))
        elif parts[0] == "e":
            if len(parts) != 4:
                raise ParseError("edge line must be 'e <id> <id> <label>'", lineno, col)
            edges.append((parts[1], parts[2], _parse_int(parts[3], lineno, col)))
        else:
            raise ParseError(f"unknown record {parts[0]!r}", lineno, col)
    if not any_line:
        raise ParseError("empty input", 1, 1)
    try:
        return Configuration(tuple(vertices), tuple(edges), tuple(tags))
    except ConfigError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def to_dot(config: Configuration) -> str:
    """Graphviz description: weights as node labels, labels as edge attributes."""
    lines = ["graph configuration {"]
    tags = dict(config.torus_tags)
    for v, w in config.vertices:
        extra = ""
        if v in tags:
            extra = f" torus({tags[v][0]},{tags[v][1]})"
        lines.append(f'  "{v}" [label="{v}: {w}{extra}"];')
    for u, v, lab in config.edges:
        lines.append(f'  "{u}" -- "{v}" [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- star graphs -------------------------------------------------------------


@dataclass(frozen=True)
class StarGraph:
    """A star-shaped plumbing: one central vertex, chains hanging off it.

    Branch weights are listed from the central vertex outward.  All implied
    edge labels are +1.
    """

    central_weight: int
    branches: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not isinstance(self.central_weight, int):
            raise ConfigError("central weight must be an integer")
        for br in self.branches:
            if not br:
                raise ConfigError("branches must be nonempty")
            if not all(isinstance(w, int) for w in br):
                raise ConfigError("branch weights must be integers")

    @property
    def rank(self) -> int:
        return 1 + sum(len(b) for b in self.branches)

    def branch_lengths(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.branches)

    def to_configuration(self) -> Configuration:
        verts = [("c", self.central_weight)]
        edges = []
        for i, br in enumerate(self.branches):
            prev = "c"
            for j, w in enumerate(br):
                vid = f"b{i}.{j}"
                verts.append((vid, w))
                edges.append((prev, vid, 1))
                prev = vid
        return Configuration(tuple(verts), tuple(edges))

    @classmethod
    def from_configuration(cls, config: Configuration) -> "StarGraph":
        if config.cycle() is not None:
            raise ConfigError("star graphs are trees")
        if config.n == 0:
            raise ConfigError("empty configuration is not a star graph")
        for u, v, lab in config.edges:
            if lab != 1:
                raise ConfigError("star graph edges must all carry label 1")
        high = [v for v, _ in config.vertices if config.degree(v) >= 3]
        if len(high) > 1:
            raise ConfigError("more than one branching vertex")
        center = high[0] if high else config.vertices[0][0]
        branches = []
        for nb in sorted(config.neighbors(center), key=config._index.__getitem__):
            chain = []
            prev, cur = center, nb
            while True:
                chain.append(config.weight(cur))
                nxt = [w for w in config.neighbors(cur) if w != prev]
                if not nxt:
                    break
                if len(nxt) > 1:
                    raise ConfigError("branches must be chains")
                prev, cur = cur, nxt[0]
            branches.append(tuple(chain))
        return cls(config.weight(center), tuple(branches))


def branched_triangular(
    a: int,
    b: int,
    c: int,
    hub_chain: int,
    left_chain: int,
    right_chain: int,
    tag: bool = True,
) -> Configuration:
    """The 1-cycled configuration with triangle labels (a, b, 1).

    The hub vertex ``t`` has weight -2c and meets the edges labeled ``a``
    (toward the vertex carrying ``right_chain``) and ``b`` (toward the one
    carrying ``left_chain``); the base edge and all chain edges are labeled 1
    and every non-hub vertex weighs -2.  When ``tag`` is set the hub carries
    the (a, b) torus tag.
    """
    verts = [("t", -2 * c), ("u", -2), ("v", -2)]
    edges = [("t", "u", b), ("t", "v", a), ("u", "v", 1)]
    for root, count in (("t", hub_chain), ("u", left_chain), ("v", right_chain)):
        prev = root
        for j in range(count):
            vid = f"{root}{j + 1}"
            verts.append((vid, -2))
            edges.append((prev, vid, 1))
            prev = vid
    tags = (("t", (a, b)),) if tag else ()
    return Configuration(tuple(verts), tuple(edges), tags)
