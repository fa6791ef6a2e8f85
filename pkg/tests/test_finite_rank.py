import pytest

from skein_cluster.coeff import ScalarQ, mono, qbrace
from skein_cluster.finite_rank import (
    LOC_SEQUENCES,
    LOC_UV_IMAGES,
    PUBLISHED_CVECTORS,
    UV_LATTICE,
    SymPolyN,
    WhittakerCoeffs,
    abelian_baxter,
    apply_uv,
    charvar_relation_residual,
    commutator_check_N,
    cvec_pentagon_report,
    face_qde_residual,
    ideal_uv_check,
    intertwiner_check,
    loc_quiver_seed,
    macdonald_eigen_check,
    macdonald_M1,
    p_ops_N,
    r_in_schur,
    toda_consistency_check,
    toda_ops,
    uv,
    uv_embedding_check,
    uv_pentagon_check,
    whittaker_convert,
    whittaker_wavefunction_check,
    whittaker_wavefunction_coeffs,
)
from skein_cluster.partitions import ModuleVector
from skein_cluster.quantum_cluster import QTElement, QTSeries, dilog

W = ModuleVector.basis
q = mono(s=2)


def test_sympoly_basics():
    e1 = SymPolyN.elementary(2, 1)
    assert e1 == SymPolyN.schur(2, (1,))
    assert e1 * e1 == SymPolyN.schur(2, (2,)) + SymPolyN.schur(2, (1, 1))
    assert SymPolyN.elementary(2, 3).is_zero()
    p2 = SymPolyN.power_sum(3, 2)
    assert p2 == SymPolyN.schur(3, (2,)) - SymPolyN.schur(3, (1, 1))


def test_sympoly_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymPolyN.from_poly(2, {(1, 0): ScalarQ(1)})
    with pytest.raises(ValueError):
        SymPolyN(2, {(0, 1): 1})


def test_schur_round_trip():
    f = SymPolyN.from_schur(3, {(2, 1): mono(s=1), (1, 1, 1): 3, (3,): -1})
    assert SymPolyN.from_schur(3, f.to_schur()) == f


def test_macdonald_examples():
    assert macdonald_M1(SymPolyN.one(2)) == SymPolyN.one(2).scale(q + 1)
    s1 = SymPolyN.schur(2, (1,))
    assert macdonald_M1(s1) == s1.scale(q * q + 1)
    for m in range(4):
        xm = SymPolyN(1, {(m,): 1})
        assert macdonald_M1(xm) == xm.scale(mono(s=2 * m))


def test_p_ops_examples():
    one = SymPolyN.one(2)
    assert p_ops_N((0, 1), one) == SymPolyN.elementary(2, 1)
    assert p_ops_N((1, 0), one) == one.scale(mono(s=1) + mono(s=-1))
    assert p_ops_N((1, 1), one) == SymPolyN.schur(2, (1,)).scale(q)


@pytest.mark.parametrize("which", [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
def test_p_ops_routes_agree(which):
    for lam in [(), (1,), (2, 1), (3, 1)]:
        f = SymPolyN.schur(2, lam)
        assert p_ops_N(which, f) == p_ops_N(which, f, route="annulus"), lam


@pytest.mark.parametrize("N", [1, 2, 3])
def test_macdonald_eigenvalues(N):
    assert macdonald_eigen_check(N, 4)


def test_rank_n_commutator():
    assert commutator_check_N(2, 3)
    assert commutator_check_N(3, 2)


def test_charvar_relation():
    assert charvar_relation_residual(4) == {}
    bad = charvar_relation_residual(2, middle_coeff=1)
    assert () in bad and (1,) in bad


@pytest.mark.parametrize("N,degree", [(1, 5), (2, 5), (3, 4)])
def test_face_qde(N, degree):
    assert face_qde_residual(N, degree).is_zero()


def test_whittaker_convert_examples():
    assert whittaker_convert("to_schur", {(0, 0): 1}) == W(())
    assert whittaker_convert("to_schur", {(1, 1): 1}) == W((1, 1))
    assert whittaker_convert("to_schur", {(1, 0): 1}) == W((1,))
    assert r_in_schur((2, 0)) == W((2,)) + W((1, 1), q)


def test_whittaker_convert_round_trip():
    v = W((3, 1), mono(s=1)) + W((2,)) - W((1, 1), 4)
    back = whittaker_convert("to_schur", whittaker_convert("to_R", v))
    assert back == v
    with pytest.raises(ValueError):
        whittaker_convert("to_R", W((1, 1, 1)))
    with pytest.raises(ValueError):
        r_in_schur((1, 2))


def test_whittaker_wavefunction():
    c = whittaker_wavefunction_coeffs(6)
    assert c[(0, 0)] == 1
    assert c[(1, 0)] == -mono(s=1) / (1 - q)
    assert all(l2 == 0 for _, l2 in c)
    assert whittaker_wavefunction_check(6)


def test_toda_operators():
    h1, h2 = toda_ops()
    assert apply_uv(h1, {(0, 0): 1}) == WhittakerCoeffs({(1, 0): 1})
    for lam in [(0, 0), (2, 1), (3, 0)]:
        assert apply_uv(h2, {lam: 1}) == WhittakerCoeffs({(lam[0] + 1, lam[1] + 1): 1})
    assert toda_consistency_check(4)


def test_uv_lattice_pairings():
    U1, U2, V1, V2 = [UV_LATTICE.basis(i) for i in range(4)]
    assert UV_LATTICE.pair(U1, V1) == 1 and UV_LATTICE.pair(U2, V2) == 1
    assert UV_LATTICE.pair(U1, V2) == 0 and UV_LATTICE.pair(U1, U2) == 0


def test_uv_word_is_operator_product():
    assert uv("U1 V1") == uv("U1") * uv("V1")
    assert uv("V1^-1 V2 U2") == uv("V1^-1") * uv("V2") * uv("U2")
    with pytest.raises(ValueError):
        uv("W3")


def test_uv_embedding_and_ideal():
    assert uv_embedding_check(5)
    assert ideal_uv_check(6)
    assert intertwiner_check(6)


def test_abelian_baxter_examples():
    assert abelian_baxter((0, 1), 0) == QTElement.one(UV_LATTICE)
    (v1,), = [tuple(uv("V1").terms)]
    assert abelian_baxter((0, 1), 2).terms[v1] == mono(s=1) / (q - 1)
    with pytest.raises(ValueError):
        abelian_baxter((2, 1), 2)


def _factor(word, c, order):
    (v, coeff), = uv(word, c).terms.items()
    return dilog(UV_LATTICE, v, order, (1, 1, 1, 1), c=coeff)


def test_abelian_baxter_horizontal_factorisation():
    order = 4
    s = mono(s=1)
    expected = (_factor("V1^-1 V2 U2", -s, order) * _factor("U2", mono(s=-1), order)
                * _factor("V2^-1 V1 U1", -s, order))
    assert abelian_baxter((1, 0), order) == expected


def test_uv_pentagon():
    assert uv_pentagon_check(0)
    assert uv_pentagon_check(4)
    assert not uv_pentagon_check(2, omit_middle=True)


def test_loc_seed():
    seed = loc_quiver_seed()
    B = seed.B
    assert all(B[i][j] == -B[j][i] for i in range(5) for j in range(5))
    assert seed.frozen == []


def test_loc_seed_matches_uv_images():
    imgs = []
    for word, (k, sign) in LOC_UV_IMAGES:
        (v, _), = uv(word, mono(s=k, c=sign)).terms.items()
        imgs.append(v)
    seed = loc_quiver_seed()
    for i in range(5):
        for j in range(5):
            assert UV_LATTICE.pair(imgs[i], imgs[j]) == seed.B[i][j]


def test_loc_sequences_agree():
    rep = cvec_pentagon_report(3)
    assert rep["sequencesAgree"]
    assert rep["seriesAgree"]
    assert len(LOC_SEQUENCES[0]) == 6 and len(LOC_SEQUENCES[1]) == 9


def test_loc_cvectors_differ_from_printed_set_in_one_vector():
    rep = cvec_pentagon_report(-1)
    got = sorted(tuple(v) for v in rep["cvectors"])
    assert got == sorted([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
                          (-1, 0, -1, -1, 0), (0, -1, -1, 0, -1)])
    assert len(set(got) ^ set(PUBLISHED_CVECTORS)) == 2
