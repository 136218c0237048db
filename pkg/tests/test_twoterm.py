import pytest

from tautilt.algebra import parse_algebra
from tautilt import modrep as mr
from tautilt import twoterm as tt


@pytest.fixture(scope="module")
def kA2():
    return parse_algebra(
        'field = "Q"\nvertices = ["1", "2"]\n'
        'arrow = { name = "a", source = "1", target = "2" }')


@pytest.fixture(scope="module")
def s1_complex(kA2):
    return tt.presentation_complex(mr.standard_module(kA2, 0, "simple"))


def test_presentation_complex_shape(kA2, s1_complex):
    assert s1_complex.p1 == (1,) and s1_complex.p0 == (0,)
    entry = s1_complex.d.get(0, 0)
    assert entry  # the radical inclusion, a multiple of the arrow


def test_hom_homotopy_examples(kA2, s1_complex):
    # self [1]-homs of the S1 complex vanish
    assert tt.hom_homotopy(s1_complex, s1_complex, 1).dim == 0
    A0 = tt.algebra_stalk(kA2, 0)
    A1 = tt.algebra_stalk(kA2, 1)
    # no overlapping degrees
    assert tt.hom_homotopy(A0, A1, 0).dim == 0
    # identity shift: End(A[1]) = A as a space
    assert tt.hom_homotopy(A1, A1, 0).dim == kA2.dim
    assert tt.hom_homotopy(A0, A0, 0).dim == kA2.dim


def test_high_shifts_vanish(kA2, s1_complex):
    A0 = tt.algebra_stalk(kA2, 0)
    for T in (s1_complex, A0):
        for U in (s1_complex, A0):
            for s in (2, -2, 3):
                assert tt.hom_homotopy(T, U, s).dim == 0


def test_silting_examples(kA2, s1_complex):
    A0 = tt.algebra_stalk(kA2, 0)
    A1 = tt.algebra_stalk(kA2, 1)
    assert tt.is_two_term_silting(A0)
    assert tt.is_two_term_silting(A1)
    assert not tt.is_presilting(tt.direct_sum_complex([A0, A1]))
    # complex of the pair (P1 + S1, 0) is silting
    P1 = mr.standard_module(kA2, 0, "projective")
    S1 = mr.standard_module(kA2, 0, "simple")
    M = mr.direct_sum(kA2, [P1, S1])
    T = tt.pair_to_complex(M, (0, 0))
    assert tt.is_two_term_silting(T)


def test_pair_complex_round_trips(kA2, s1_complex):
    S1 = mr.standard_module(kA2, 0, "simple")
    M, pm = tt.complex_to_pair(s1_complex)
    assert mr.modules_isomorphic(M, S1) and pm == (0, 0)
    # (0, P2) -> P2[1]
    shifted = tt.pair_to_complex(mr.zero_rep(kA2), (0, 1))
    assert shifted.p1 == (1,) and shifted.p0 == ()
    M2, pm2 = tt.complex_to_pair(shifted)
    assert M2.total_dim == 0 and pm2 == (0, 1)
    # (A, 0) -> stalk
    P1 = mr.standard_module(kA2, 0, "projective")
    P2 = mr.standard_module(kA2, 1, "projective")
    A = mr.direct_sum(kA2, [P1, P2])
    stalk = tt.pair_to_complex(A, (0, 0))
    assert tt.complexes_isomorphic(stalk, tt.algebra_stalk(kA2, 0))
    MA, pmA = tt.complex_to_pair(tt.algebra_stalk(kA2, 0))
    assert MA.dims == (1, 2) and pmA == (0, 0)


def test_minimal_left_approximation_examples(kA2):
    P1s = tt.stalk_complex(kA2, (0,), 0)
    P2s = tt.stalk_complex(kA2, (1,), 0)
    # Hom(P2, P1) is one dimensional: the inclusion
    f = tt.minimal_left_approximation(P2s, P1s)
    assert f.target.p0 == (0,) and f.is_chain_map()
    assert not f.f0.is_zero()
    # Hom(P1, P2) = 0: approximation by zero
    g = tt.minimal_left_approximation(P1s, P2s)
    assert g.target.is_zero()
    # identity approximation
    h = tt.minimal_left_approximation(P1s, P1s)
    assert tt.complexes_isomorphic(h.target, P1s)


def test_approximation_factorization(kA2):
    # every map X -> T'' with T'' in add T factors through the approximation
    P2s = tt.stalk_complex(kA2, (1,), 0)
    P1s = tt.stalk_complex(kA2, (0,), 0)
    T = tt.direct_sum_complex([P1s, P1s])
    f = tt.minimal_left_approximation(P2s, T)
    hs = tt.hom_homotopy(P2s, T, 0)
    for g in hs.reps:
        assert tt.factors_through(g, f)


def test_cone_examples(kA2):
    A0 = tt.algebra_stalk(kA2, 0)
    A1 = tt.algebra_stalk(kA2, 1)
    zero_target = tt.TwoTermComplex(kA2, (), ())
    zmap = tt.ChainMap(A0, zero_target,
                       tt.AlgMatrix(kA2, (), ()),
                       tt.AlgMatrix(kA2, (), A0.p0))
    assert tt.complexes_isomorphic(tt.cone_two_term(zmap), A1)
    idmap = tt.ChainMap(A0, A0, tt.AlgMatrix(kA2, (), ()),
                        tt.AlgMatrix.identity(kA2, A0.p0))
    assert tt.cone_two_term(idmap).is_zero()


def test_bongartz_style_cone(kA2, s1_complex):
    # minimal left add(P1-stalk)-approximation of the algebra stalk is
    # A -> P1^2, whose cone strips to (P2 -> P1)
    A0 = tt.algebra_stalk(kA2, 0)
    P1s = tt.stalk_complex(kA2, (0,), 0)
    f = tt.minimal_left_approximation(A0, P1s)
    assert len(f.target.p0) == 2 and set(f.target.p0) == {0}
    cone = tt.cone_two_term(f)
    assert tt.is_presilting(cone)
    parts = tt.decompose_complex(cone)
    assert len(parts) == 1
    assert tt.complexes_isomorphic(parts[0], s1_complex)


def test_g_vectors(kA2, s1_complex):
    assert tt.g_vector(s1_complex) == (1, -1)
    assert tt.g_vector(tt.stalk_complex(kA2, (0,), 0)) == (1, 0)
    assert tt.g_vector(tt.stalk_complex(kA2, (1,), 1)) == (0, -1)


def test_decompose_complex_examples(kA2, s1_complex):
    A0 = tt.algebra_stalk(kA2, 0)
    parts = tt.decompose_complex(A0)
    assert len(parts) == 2
    assert len(tt.decompose_complex(s1_complex)) == 1
    # contractible summand is stripped before decomposing
    d = tt.AlgMatrix(kA2, (0, 1), (1, 1))
    d.set(0, 0, kA2.arrow_element("a"))
    d.set(1, 1, kA2.idempotent_elem(1))
    messy = tt.TwoTermComplex(kA2, (1, 1), (0, 1), d)
    parts = tt.decompose_complex(messy)
    assert len(parts) == 1
    assert tt.complexes_isomorphic(parts[0], s1_complex)


def test_decompose_complex_with_duplicates(kA2, s1_complex):
    double = tt.direct_sum_complex([s1_complex, s1_complex])
    parts = tt.decompose_complex(double)
    assert len(parts) == 2
    for p in parts:
        assert tt.complexes_isomorphic(p, s1_complex)


def test_strip_contractible(kA2, s1_complex):
    d = tt.AlgMatrix(kA2, (0, 1), (1, 1))
    d.set(0, 0, kA2.arrow_element("a"))
    d.set(1, 1, kA2.idempotent_elem(1))
    messy = tt.TwoTermComplex(kA2, (1, 1), (0, 1), d)
    stripped = tt.strip_contractible(messy)
    assert stripped.p1 == (1,) and stripped.p0 == (0,)
    assert tt.complexes_isomorphic(stripped, s1_complex)


def test_complexes_isomorphic_negative(kA2, s1_complex):
    assert not tt.complexes_isomorphic(
        s1_complex, tt.stalk_complex(kA2, (0,), 0))
    assert not tt.complexes_isomorphic(
        tt.stalk_complex(kA2, (0,), 0), tt.stalk_complex(kA2, (1,), 0))


def test_preprojective_loops():
    alg = parse_algebra(
        'field = "Q"\nvertices = ["1", "2"]\n'
        'arrow = { name = "a", source = "1", target = "2" }\n'
        'arrow = { name = "b", source = "2", target = "1" }\n'
        'relations = ["a*b", "b*a"]')
    P1 = mr.standard_module(alg, 0, "projective")
    T = tt.presentation_complex(P1)
    assert tt.is_presilting(T)
    S1 = mr.standard_module(alg, 0, "simple")
    TS = tt.presentation_complex(S1)
    assert tt.hom_homotopy(TS, TS, 1).dim == 0
    M, pm = tt.complex_to_pair(TS)
    assert mr.modules_isomorphic(M, S1) and pm == (0, 0)


def test_shift_minus_one(kA2):
    P2s = tt.stalk_complex(kA2, (1,), 0)
    shifted = tt.stalk_complex(kA2, (1,), 1)
    # Hom(T, U[-1]) with U = P2[1] recovers End(P2)
    assert tt.hom_homotopy(P2s, shifted, -1).dim == 1
    s1 = tt.presentation_complex(mr.standard_module(kA2, 0, "simple"))
    assert tt.hom_homotopy(s1, shifted, -1).dim == 0


def test_complex_json_export(kA2, s1_complex):
    data = tt.complex_to_json_dict(s1_complex)
    assert data["p_minus1"] == [0, 1]
    assert data["p_zero"] == [1, 0]
    assert len(data["d"]) == 1 and len(data["d"][0]) == 1
    coeffs = data["d"][0][0]
    assert len(coeffs) == kA2.dim
    assert coeffs.count("0") == kA2.dim - 1  # a single path coefficient
