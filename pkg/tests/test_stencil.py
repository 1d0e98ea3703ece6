"""Stencils, matchings, covers, half-spaces, certificates and sampling."""

import itertools
import random
from fractions import Fraction

import pytest

from newtoncert.gaussian import GaussianRational
from newtoncert.poly import determinant
from newtoncert.polytope import LatticePolytope, barycenter
from newtoncert.stencil import (
    CoverCertificate,
    MatchingCertificate,
    Stencil,
    _max_matching,
    certify,
    certify_via_minimal,
    find_matching,
    min_vertex_cover,
    permutation_sign,
    sample_entries,
    sample_generic_form,
    separating_halfspace,
    sign_consistency,
    stencil_of,
    witness_O_from_matching,
)


def _stencil(n, ones):
    bits = [[0] * n for _ in range(n)]
    for i, j in ones:
        bits[i][j] = bits[j][i] = 1
    return Stencil(n, tuple(tuple(r) for r in bits))


def _stencil_from_points(n, points):
    return _stencil(
        n,
        [
            ((idx := [k for k, c in enumerate(p) if c])[0], idx[-1])
            for p in points
        ],
    )


# -- stencil extraction --------------------------------------------------------


def test_stencil_of_triangle():
    M = LatticePolytope(3, ((1, 1, 0), (1, 0, 1), (0, 1, 1)))
    S = stencil_of(M)
    assert S.bits == ((0, 1, 1), (1, 0, 1), (1, 1, 0))


def test_stencil_of_single_diagonal():
    M = LatticePolytope(2, ((2, 0),))
    assert stencil_of(M).bits == ((1, 0), (0, 0))


def test_stencil_of_segment_includes_midpoint():
    M = LatticePolytope(2, ((2, 0), (0, 2)))
    assert stencil_of(M).bits == ((1, 1), (1, 1))


def test_stencil_requires_quadratic_simplex():
    with pytest.raises(ValueError, match="quadratic simplex"):
        stencil_of(LatticePolytope(2, ((1, 0),)))


def test_stencil_symmetry_validation():
    with pytest.raises(ValueError, match="symmetric"):
        Stencil(2, ((0, 1), (0, 0)))


# -- matching and cover ----------------------------------------------------------


def test_find_matching_examples():
    S = _stencil(3, [(0, 1), (0, 2), (1, 2)])
    sigma = find_matching(S)
    assert sigma is not None
    assert all(S.bits[i][sigma[i]] for i in range(3))

    identity = _stencil(3, [(0, 0), (1, 1), (2, 2)])
    assert find_matching(identity) == (0, 1, 2)

    assert find_matching(_stencil(2, [(0, 0)])) is None


def test_min_vertex_cover_examples():
    S = _stencil(3, [(0, 0), (0, 1), (0, 2)])
    I, J = min_vertex_cover(S)
    assert (I, J) == ((0,), (0,))

    S2 = _stencil(2, [(0, 0)])
    I2, J2 = min_vertex_cover(S2)
    assert len(I2) + len(J2) == 1

    # ones confined to rows/cols {0, 1}
    S3 = _stencil(4, [(0, 1), (0, 0), (1, 1)])
    I3, J3 = min_vertex_cover(S3)
    assert len(I3) + len(J3) <= 2
    assert set(I3) | set(J3) <= {0, 1}


def test_min_vertex_cover_rejects_perfect_matching():
    S = _stencil(2, [(0, 1)])
    with pytest.raises(ValueError, match="perfect matching"):
        min_vertex_cover(S)


def test_koenig_duality_random():
    rng = random.Random(1234)
    for _ in range(200):
        n = rng.randint(1, 6)
        ones = {
            tuple(sorted((rng.randrange(n), rng.randrange(n))))
            for _ in range(rng.randint(0, n * n))
        }
        S = _stencil(n, ones)
        _, _, size = _max_matching(S)
        if size == n:
            assert find_matching(S) is not None
        else:
            I, J = min_vertex_cover(S)
            assert len(I) + len(J) == size


def test_matching_relabeling_equivariance():
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(2, 6)
        ones = {
            tuple(sorted((rng.randrange(n), rng.randrange(n))))
            for _ in range(rng.randint(1, n * n))
        }
        S = _stencil(n, ones)
        perm = list(range(n))
        rng.shuffle(perm)
        bits = tuple(
            tuple(S.bits[perm[i]][perm[j]] for j in range(n)) for i in range(n)
        )
        S2 = Stencil(n, bits)
        sigma = find_matching(S)
        sigma2 = find_matching(S2)
        assert (sigma is None) == (sigma2 is None)
        if sigma is None:
            continue
        # the conjugated answer is a valid matching of the relabeled stencil
        inv = [0] * n
        for k, v in enumerate(perm):
            inv[v] = k
        conjugated = [inv[sigma[perm[i]]] for i in range(n)]
        assert all(S2.bits[i][conjugated[i]] for i in range(n))
        assert all(S2.bits[i][sigma2[i]] for i in range(n))


# -- half-spaces ------------------------------------------------------------------


def test_separating_halfspace_examples():
    hs = separating_halfspace((0,), (0,), 3)
    assert hs.coeffs == (2, 0, 0) and hs.rhs == 2
    center = barycenter(3)
    assert sum(c * x for c, x in zip(hs.coeffs, center)) == Fraction(4, 3)

    hs2 = separating_halfspace((0, 1), (), 3)
    assert hs2.coeffs == (1, 1, 0)
    assert hs2.contains((1, 1, 0))

    hs3 = separating_halfspace((), (), 1)
    assert hs3.coeffs == (0,) and hs3.rhs == 2


def test_separating_halfspace_rejects_large_cover():
    with pytest.raises(ValueError, match="cover too large"):
        separating_halfspace((0, 1), (2,), 3)


# -- certificates ------------------------------------------------------------------


def test_certify_matching_triangle():
    M = LatticePolytope(3, ((1, 1, 0), (1, 0, 1), (0, 1, 1)))
    cert = certify(M)
    assert isinstance(cert, MatchingCertificate)
    assert cert.to_json_dict() == {"kind": "matching", "sigma": [2, 3, 1]}


def test_certify_cover_example():
    M = LatticePolytope(3, ((2, 0, 0), (1, 1, 0), (1, 0, 1)))
    cert = certify(M)
    assert isinstance(cert, CoverCertificate)
    assert cert.to_json_dict() == {
        "kind": "cover",
        "I": [1],
        "J": [1],
        "halfspace": {"coeffs": [2, 0, 0], "rhs": 2},
    }
    # all generators satisfy the half-space, the barycenter violates it
    for g in M.generators:
        assert cert.halfspace.contains(g)
    assert not cert.halfspace.contains(barycenter(3))


def test_certify_single_point():
    M = LatticePolytope(2, ((1, 1),))
    cert = certify(M)
    assert isinstance(cert, MatchingCertificate)
    assert cert.sigma == (1, 0)


def test_certify_via_minimal_agrees_on_examples():
    cases = [
        LatticePolytope(3, ((1, 1, 0), (1, 0, 1), (0, 1, 1))),
        LatticePolytope(3, ((2, 0, 0), (1, 1, 0), (1, 0, 1))),
        LatticePolytope(2, ((1, 1),)),
        LatticePolytope(2, ((2, 0), (0, 2))),
        LatticePolytope(4, ((0, 2, 0, 0), (0, 0, 0, 2), (1, 0, 1, 0))),
    ]
    for M in cases:
        assert certify(M).kind == certify_via_minimal(M).kind
        cert = certify_via_minimal(M)
        if isinstance(cert, MatchingCertificate):
            S = stencil_of(M)
            assert all(S.bits[i][cert.sigma[i]] for i in range(M.n))


def test_witness_from_matching():
    comb = witness_O_from_matching((1, 0), 2)
    assert comb.points == ((1, 1), (1, 1))
    assert comb.value() == (Fraction(1), Fraction(1))

    comb2 = witness_O_from_matching((0, 1, 2), 3)
    assert comb2.points == ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    assert comb2.value() == barycenter(3)

    comb3 = witness_O_from_matching((1, 2, 0), 3)
    assert comb3.value() == barycenter(3)


# -- sign consistency ---------------------------------------------------------------


def test_sign_consistency_examples():
    assert sign_consistency((1, 2, 0), 3)
    assert sign_consistency((1, 0), 2)
    assert sign_consistency((1, 0, 3, 2), 4)


def test_sign_consistency_exhaustive_small():
    for n in (1, 2, 3, 4):
        for sigma in itertools.permutations(range(n)):
            assert sign_consistency(sigma, n)


def test_sign_consistency_rejects_large_n():
    with pytest.raises(ValueError, match="limited"):
        sign_consistency(tuple(range(9)), 9)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


# -- generic sampling ---------------------------------------------------------------


def test_sample_zero_stencil():
    S = _stencil(2, [])
    assert sample_entries(S, 5) == ((0, 0), (0, 0))


def test_sample_antidiagonal_det():
    M = LatticePolytope(3, ((1, 1, 0), (1, 0, 1), (0, 1, 1)))
    for seed in range(5):
        form = sample_generic_form(M, seed)
        a = form.rows[0][1].re
        b = form.rows[0][2].re
        c = form.rows[1][2].re
        assert determinant(form) == GaussianRational(2 * a * b * c)
        assert determinant(form)


def test_sample_determinism():
    M = LatticePolytope(2, ((2, 0), (0, 2)))
    assert sample_generic_form(M, 42) == sample_generic_form(M, 42)
    assert sample_generic_form(M, 42) != sample_generic_form(M, 43)


def test_sample_entries_range_and_pattern():
    S = _stencil(3, [(0, 1), (2, 2)])
    rows = sample_entries(S, 9)
    for i in range(3):
        for j in range(3):
            if S.bits[i][j]:
                assert rows[i][j] != 0 and abs(rows[i][j]) <= 10**6
            else:
                assert rows[i][j] == 0
            assert rows[i][j] == rows[j][i]


def test_certified_sampling_dichotomy_public_path():
    """certify + sample_generic_form + determinant through the public API."""
    matching_side = LatticePolytope(3, ((1, 1, 0), (1, 0, 1), (0, 1, 1)))
    cover_side = LatticePolytope(3, ((2, 0, 0), (1, 1, 0), (1, 0, 1)))
    assert isinstance(certify(matching_side), MatchingCertificate)
    assert isinstance(certify(cover_side), CoverCertificate)
    for seed in range(100):
        assert determinant(sample_generic_form(matching_side, seed))
        assert not determinant(sample_generic_form(cover_side, seed))


def test_one_variable_certificates():
    M = LatticePolytope(1, ((2,),))
    cert = certify(M)
    assert cert.sigma == (0,)
    assert certify_via_minimal(M).sigma == (0,)


def test_random_certify_larger_dimensions():
    from newtoncert.polytope import (
        ConvexCombination,
        contains_point,
        two_delta_points,
    )

    rng = random.Random(99)
    for n in (6, 7):
        pts = two_delta_points(n)
        for _ in range(25):
            subset = tuple(sorted(rng.sample(pts, rng.randint(1, 14))))
            M = LatticePolytope(n, subset)
            cert = certify(M)
            member = isinstance(
                contains_point(M, barycenter(n)), ConvexCombination
            )
            assert (cert.kind == "matching") == member
