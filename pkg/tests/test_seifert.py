import math
from fractions import Fraction

import pytest

from e8bounds.errors import SeifertError
from e8bounds.graph import StarGraph, gram_matrix
from e8bounds.lattice import (
    determinant,
    is_even,
    is_negative_definite,
    is_unimodular,
    leading_principal_minors,
    signature,
)
from e8bounds.seifert import (
    BrieskornSpec,
    SeifertData,
    brieskorn_from_seifert,
    continuant,
    hj_expansion,
    is_minimal,
    minimal_resolution,
    read_seifert,
    resolution,
    seifert_from_brieskorn,
)


def test_sigma_235_seifert_data():
    data = seifert_from_brieskorn(BrieskornSpec.of(2, 3, 5))
    assert data.b0 == 2
    assert data.legs == ((2, 1), (3, 2), (5, 4))
    assert data.euler_number() == Fraction(-1, 30)
    assert data.is_integral_homology_sphere()


def test_sigma_235_resolution_is_e8_star():
    star = resolution(BrieskornSpec.of(2, 3, 5))
    assert star.central_weight == -2
    assert sorted(star.branch_lengths()) == [1, 2, 4]
    assert all(w == -2 for br in star.branches for w in br)


def test_sigma_2311_matches_rank9_chain():
    star = resolution(BrieskornSpec.of(2, 3, 11))
    assert star.central_weight == -2
    assert sorted(star.branches) == sorted([(-2,), (-2, -2), (-2, -2, -2, -2, -3)])


def test_sigma_2317_trailing_vertex_after_minus3():
    # third leg 17/14 = [2,2,2,2,3,2]: the -3 carries one trailing -2
    star = resolution(BrieskornSpec.of(2, 3, 17))
    assert (-2, -2, -2, -2, -3, -2) in star.branches
    assert star.rank == 10


def test_noncoprime_is_rejected():
    with pytest.raises(SeifertError):
        BrieskornSpec.of(2, 3, 4)


def test_sigma_347_star():
    star = resolution(BrieskornSpec.of(3, 4, 7))
    assert star.central_weight == -2
    assert sorted(star.branches) == sorted([(-2, -2), (-2, -2, -2), (-2, -4)])
    m = gram_matrix(star.to_configuration())
    assert is_even(m) and is_unimodular(m) and is_negative_definite(m) and m.n == 8


def test_hj_expansion_examples():
    assert hj_expansion(5, 4) == (2, 2, 2, 2)
    assert hj_expansion(7, 4) == (2, 4)
    assert hj_expansion(11, 9) == (2, 2, 2, 2, 3)
    for alpha, beta in ((5, 4), (7, 4), (11, 9), (43, 22)):
        assert continuant(hj_expansion(alpha, beta)) == (alpha, beta)


def test_round_trips():
    for ms in ((2, 3, 5), (2, 3, 17), (3, 4, 7), (2, 3, 7, 11)):
        data = seifert_from_brieskorn(BrieskornSpec(ms))
        star = minimal_resolution(data)
        assert read_seifert(star) == data
        assert brieskorn_from_seifert(data).multiplicities == tuple(sorted(ms))


def test_family_graph_n1_reads_back_sigma235():
    # the rank-8n graph family at n=1 specializes to Sigma(2,3,5)
    star = StarGraph(-2, ((-2,), (-2, -2), (-2, -2, -2, -2)))
    assert brieskorn_from_seifert(read_seifert(star)).multiplicities == (2, 3, 5)


def test_four_leg_star_reads_sigma_23711():
    # type (2,2,2,1) solution with pair weights (1,1),(1,3),(2,1) and single -2
    star = StarGraph(-2, ((-2, -2), (-2, -6), (-4, -2), (-2,)))
    assert brieskorn_from_seifert(read_seifert(star)).multiplicities == (2, 3, 7, 11)


def test_is_minimal():
    assert is_minimal(resolution(BrieskornSpec.of(2, 3, 5)))
    assert not is_minimal(StarGraph(-2, ((-1,),)))
    # rank-8n family at n=2 with the -2n-2 = -6 tail
    n = 2
    star = resolution(BrieskornSpec.of(4 * n - 1, 4 * n, 8 * n * n - 1))
    assert any(br[-1] == -2 * n - 2 for br in star.branches)
    assert is_minimal(star)


def test_non_homology_sphere_flagged():
    data = SeifertData(1, ((2, 1), (4, 1)))
    assert not data.is_integral_homology_sphere()
    with pytest.raises(SeifertError):
        brieskorn_from_seifert(data)


def test_read_seifert_rejects_bad_weights():
    with pytest.raises(SeifertError):
        read_seifert(StarGraph(0, ()))
    with pytest.raises(SeifertError):
        read_seifert(StarGraph(-1, ((-1,),)))


def test_s3_degenerations():
    data = seifert_from_brieskorn(BrieskornSpec.of(2, 3, 1))
    assert data.is_integral_homology_sphere()
    star = minimal_resolution(data)
    assert star.central_weight == -1
    assert is_negative_definite(gram_matrix(star.to_configuration()))


def test_all_coprime_triples_up_to_40_resolve_unimodular_negdef():
    count = 0
    for p in range(2, 41):
        for q in range(p + 1, 41):
            if math.gcd(p, q) != 1:
                continue
            for r in range(q + 1, 41):
                if math.gcd(p, r) != 1 or math.gcd(q, r) != 1:
                    continue
                count += 1
                m = gram_matrix(resolution(BrieskornSpec.of(p, q, r)).to_configuration())
                minors = leading_principal_minors(m)
                assert len(minors) == m.n and abs(minors[-1]) == 1, (p, q, r)
                assert all(
                    d != 0 and (d > 0) == (k % 2 == 0) for k, d in enumerate(minors, 1)
                ), (p, q, r)
    assert count == 2518


def test_236_family_rank_signature_det():
    for n in range(1, 7):
        m = gram_matrix(resolution(BrieskornSpec.of(2, 3, 6 * n - 1)).to_configuration())
        assert m.n == n + 7
        assert signature(m) == -(n + 7)
        assert abs(determinant(m)) == 1


LARGE_DS_FAMILIES = (
    lambda n: (4 * n - 2, 4 * n - 1, 8 * n - 3),
    lambda n: (4 * n - 1, 4 * n, 8 * n - 1),
    lambda n: (4 * n - 2, 4 * n - 1, 8 * n * n - 4 * n + 1),
    lambda n: (4 * n - 1, 4 * n, 8 * n * n - 1),
)

EXPECTED_LENGTHS = (
    lambda n: sorted((4 * n - 3, 4 * n - 2, 4)),
    lambda n: sorted((4 * n - 2, 4 * n - 1, 2)),
    lambda n: sorted((4 * n - 3, 2, 4 * n)),
    lambda n: sorted((2, 4 * n - 1, 4 * n - 2)),
)


@pytest.mark.parametrize("n", (1, 2, 3))
def test_large_ds_family_resolutions(n):
    for fam, lengths in zip(LARGE_DS_FAMILIES, EXPECTED_LENGTHS):
        star = resolution(BrieskornSpec(fam(n)))
        m = gram_matrix(star.to_configuration())
        assert m.n == 8 * n
        assert is_even(m) and is_unimodular(m) and is_negative_definite(m)
        assert sorted(star.branch_lengths()) == lengths(n)
