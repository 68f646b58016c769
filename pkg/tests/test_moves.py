import math
import random

import pytest

from e8bounds.errors import MoveError
from e8bounds.graph import Configuration, branched_triangular, gram_matrix
from e8bounds.lattice import determinant, signature
from e8bounds.moves import (
    MoveTrace,
    blow_down,
    blow_up_corner,
    boundary_brieskorn,
    normalize_to_star,
)
from e8bounds.seifert import brieskorn_from_seifert, is_minimal, read_seifert


def chain(*weights):
    verts = tuple((f"x{i}", w) for i, w in enumerate(weights))
    edges = tuple((f"x{i}", f"x{i+1}", 1) for i in range(len(weights) - 1))
    return Configuration(verts, edges)


def test_blow_down_isolated_vertex_gives_empty():
    out = blow_down(Configuration((("a", -1),), ()), "a")
    assert out.n == 0 and out.edges == ()


def test_blow_down_chain_example():
    out = blow_down(chain(-2, -1, -2), "x1")
    assert out.vertices == (("x0", -1), ("x2", -1))
    assert out.label("x0", "x2") == 1
    before = determinant(gram_matrix(chain(-2, -1, -2)))
    after = determinant(gram_matrix(out))
    assert abs(before) == abs(after)


def test_blow_down_requires_minus_one():
    with pytest.raises(MoveError):
        blow_down(chain(-2, -2), "x0")


def test_blow_down_torus_tag_rule():
    cfg = Configuration(
        (("k", -7), ("w", -1), ("z", -2)),
        (("k", "w", 3), ("w", "z", 1)),
        (("k", (2, 3)),),
    )
    out = blow_down(cfg, "w")
    assert out.weight("k") == -7 + 9
    assert out.tag("k") == (5, 3)
    assert out.label("k", "z") == 3


def test_blow_down_refuses_knotted_vertex():
    cfg = Configuration(
        (("k", -1), ("z", -2)), (("k", "z", 1),), (("k", (2, 3)),)
    )
    with pytest.raises(MoveError):
        blow_down(cfg, "k")


def test_single_step_tag_round_trip_in_knotted_regime():
    cfg = branched_triangular(3, 5, 31, 3, 1, 1)
    assert cfg.tag("t") == (5, 3)
    up = blow_up_corner(cfg, "v", new_id="n0")  # the corner on the a = 3 edge
    assert up.tag("t") == (3, 2)
    assert blow_down(up, "n0") == cfg


def test_blow_down_refuses_shape_violations():
    # degree-4 (-1)-vertex in a star: pairwise edges among neighbors leave the class
    verts = (("c", -1), ("a", -2), ("b", -2), ("d", -2), ("e", -2))
    edges = tuple(("c", x, 1) for x in "abde")
    with pytest.raises(MoveError):
        blow_down(Configuration(verts, edges), "c")


def test_blow_up_then_down_is_identity():
    cfg = branched_triangular(2, 3, 13, 3, 1, 1, tag=False)
    for corner in ("u", "v"):
        up = blow_up_corner(cfg, corner, new_id="n0")
        assert up.weight("n0") == -1
        assert blow_down(up, "n0") == cfg


def test_blow_up_refuses_inconsistent_tag_pull():
    # expelling the corner on the larger label links the tagged hub with a
    # label that no blow-down tag push could have produced
    cfg = branched_triangular(2, 3, 13, 3, 1, 1)
    with pytest.raises(MoveError):
        blow_up_corner(cfg, "u")


def test_blow_up_family1_euclid_step():
    # (a, b) = (1, 2): one step at the corner on the unit-labeled a-edge
    cfg = branched_triangular(1, 2, 5, 3, 1, 1)
    up = blow_up_corner(cfg, "v", new_id="n0")
    hub_labels = sorted(
        (up.label("t", x) for x in up.cycle() if x != "t")
    )
    assert hub_labels == [1, 1]
    assert up.weight("n0") == -1
    assert blow_down(up, "n0") == cfg


def test_blow_up_corner_off_cycle_rejected():
    cfg = branched_triangular(1, 2, 5, 3, 1, 1)
    with pytest.raises(MoveError):
        blow_up_corner(cfg, "t1")
    with pytest.raises(MoveError):
        blow_up_corner(chain(-2, -2), "x0")


def test_normalize_trivial_labels():
    cfg = branched_triangular(1, 1, 1, 3, 1, 1)
    star, trace = normalize_to_star(cfg)
    assert len(trace.steps) == 1
    assert star.central_weight == -1
    assert all(w <= -2 for br in star.branches for w in br)


def test_normalize_family1_gives_catalog_sphere():
    cfg = branched_triangular(1, 2, 5, 3, 1, 1)
    star, trace = normalize_to_star(cfg)
    assert is_minimal(star)
    spec = brieskorn_from_seifert(read_seifert(star))
    assert spec.multiplicities == (7, 8, 45)
    # rank bookkeeping: one new vertex per blow-up, |det| preserved
    m0, m1 = gram_matrix(cfg), gram_matrix(star.to_configuration())
    assert m1.n == m0.n + len(trace.steps)
    assert abs(determinant(m0)) == abs(determinant(m1))


def test_normalize_requires_coprime_labels():
    cfg = branched_triangular(3, 6, 40, 0, 1, 4, tag=False)
    with pytest.raises(MoveError):
        normalize_to_star(cfg)


def test_boundary_brieskorn_examples():
    assert boundary_brieskorn(branched_triangular(1, 2, 5, 3, 1, 1)).multiplicities == (7, 8, 45)
    assert boundary_brieskorn(branched_triangular(1, 5, 20, 3, 1, 1)).multiplicities == (13, 17, 177)
    with pytest.raises(MoveError):
        boundary_brieskorn(branched_triangular(2, 4, 15, 3, 1, 1, tag=False))


def test_trace_replay_and_jsonl():
    cfg = branched_triangular(3, 5, 31, 3, 1, 1)
    star, trace = normalize_to_star(cfg)
    replayed = trace.replay(cfg)
    from e8bounds.graph import StarGraph

    assert StarGraph.from_configuration(replayed) == star
    again = MoveTrace.from_jsonl(trace.to_jsonl())
    assert again == trace
    assert again.replay(cfg) == replayed


def test_step_deltas_are_faithful():
    cfg = branched_triangular(2, 3, 13, 3, 1, 1)
    cur = cfg
    _, trace = normalize_to_star(cfg)
    for step in trace.steps:
        nxt = blow_up_corner(cur, step.corner, new_id=step.vertex)
        for v, before, after in step.weight_changes:
            assert cur.weight(v) == before and nxt.weight(v) == after
        for u, v, before, after in step.label_changes:
            assert cur.label(u, v) == before and nxt.label(u, v) == after
        cur = nxt


def test_blow_down_step_invariants_along_reverse_trace():
    cfg = branched_triangular(4, 7, 67, 3, 1, 1, tag=False)
    star, trace = normalize_to_star(cfg)
    cur = trace.replay(cfg)
    for step in reversed(trace.steps):
        before_det = determinant(gram_matrix(cur))
        before_sig = signature(gram_matrix(cur))
        nxt = blow_down(cur, step.vertex)
        m = gram_matrix(nxt)
        assert m.n == cur.n - 1
        assert abs(determinant(m)) == abs(before_det)
        assert signature(m) == before_sig + 1
        cur = nxt
    assert cur == cfg


def test_randomized_round_trips_preserve_det_and_boundary():
    rng = random.Random(20240817)
    total_steps = 0
    configs = 0
    while total_steps < 1000:
        a = rng.randint(1, 9)
        b = rng.randint(1, 9)
        if math.gcd(a, b) != 1:
            continue
        c = rng.randint(1, 30)
        chains = rng.choice(((3, 1, 1), (1, 2, 2), (0, 0, 5), (1, 1, 3)))
        cfg = branched_triangular(a, b, c, *chains, tag=False)
        star, trace = normalize_to_star(cfg)
        det0 = abs(determinant(gram_matrix(cfg)))
        cur = cfg
        for step in trace.steps:
            nxt = blow_up_corner(cur, step.corner, new_id=step.vertex)
            assert blow_down(nxt, step.vertex) == cur  # two-sided inverse
            assert abs(determinant(gram_matrix(nxt))) == det0
            cur = nxt
            total_steps += 1
        # boundary Seifert data agrees whether read at the end or recomputed
        data = read_seifert(star)
        if data.is_integral_homology_sphere():
            assert boundary_brieskorn(cfg) == brieskorn_from_seifert(data)
        configs += 1
    assert configs >= 10
