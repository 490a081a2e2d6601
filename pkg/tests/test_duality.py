from fractions import Fraction

import numpy as np
import pytest

from strathodge import complexes, duality, hodge, linalgq, mezzo, simplicial, strata
from strathodge.errors import (
    DegeneracyError,
    InputError,
    OrientabilityError,
    ParityError,
    RankError,
    SelfDualityError,
    UnsupportedError,
)

T2 = complexes.torus7()
S2 = complexes.sphere2()
CP2 = complexes.projective_plane_complex9()
S2S2 = complexes.product(S2, S2)

Q_T2 = duality.intersection_form(T2, 1)
Q_CP2 = duality.intersection_form(CP2, 2)
Q_S2S2 = duality.intersection_form(S2S2, 2)

CONE_T2 = strata.Cone(strata.Closed(T2))
SWAP_BUNDLE = strata.FlatConeBundle(strata.Closed(T2), ((0, 1), (1, 0)))


def as_rows(mat):
    return [list(row) for row in mat]


# ---------------------------------------------------------------------------
# intersection forms


def test_torus_middle_form_is_symplectic():
    assert Q_T2.parity == "antisymmetric"
    m = Q_T2.matrix
    assert m[0][0] == 0 and m[1][1] == 0
    assert abs(m[0][1]) == 1 and m[1][0] == -m[0][1]


def test_sphere_unit_pairing():
    q = duality.intersection_form(S2, 0)
    assert q.parity == "symmetric"
    assert abs(q.matrix[0][0]) == 1


def test_cp2_middle_form():
    assert Q_CP2.parity == "symmetric"
    assert abs(Q_CP2.matrix[0][0]) == 1


def test_s2s2_middle_form_is_hyperbolic():
    assert Q_S2S2.parity == "symmetric"
    assert linalgq.exact_signature(as_rows(Q_S2S2.matrix)) == 0
    assert linalgq.rank(as_rows(Q_S2S2.matrix)) == 2


def test_orientation_reversal_negates_form():
    flipped = duality.intersection_form(CP2, 2, orientation=-1)
    assert flipped.matrix[0][0] == -Q_CP2.matrix[0][0]


def test_reverse_pairing_matches_other_degree():
    q02 = duality.intersection_form(T2, 0)
    q20 = duality.intersection_form(T2, 2)
    assert q02.reverse().matrix == q20.matrix
    assert Q_T2.reverse().matrix == Q_T2.matrix


def test_nonorientable_rejected():
    with pytest.raises(OrientabilityError):
        duality.intersection_form(complexes.projective_plane6(), 1)


def test_degree_out_of_range():
    with pytest.raises(InputError):
        duality.intersection_form(T2, 3)


# ---------------------------------------------------------------------------
# dual subspaces


def test_dual_of_extremes():
    full = duality.dual_subspace(Q_T2, ())
    assert as_rows(full) == as_rows(linalgq.eye(2))
    assert duality.dual_subspace(Q_T2, ((1, 0), (0, 1))) == ()


def test_symplectic_lines_are_self_annihilating():
    assert duality.dual_subspace(Q_T2, ((1, 0),)) == ((1, 0),)
    assert duality.dual_subspace(Q_T2, ((1, 3),)) == ((1, 3),)


def test_hyperbolic_dual_line():
    assert duality.dual_subspace(Q_S2S2, ((1, 1),)) == ((1, -1),)


def test_double_dual_is_identity():
    w = ((2, 3),)
    dw = duality.dual_subspace(Q_S2S2, w)
    back = duality.dual_subspace(Q_S2S2.reverse(), dw)
    assert as_rows(back) == linalgq.subspace_rref([[Fraction(2), Fraction(3)]])


def test_dual_subspace_errors():
    with pytest.raises(DegeneracyError):
        duality.dual_subspace(((1, 1), (1, 1)), ((1, 0),))
    with pytest.raises(RankError):
        duality.dual_subspace(Q_T2, ((1, 0), (2, 0)))


# ---------------------------------------------------------------------------
# dual mezzoperversities


def test_dual_mezzoperversity_swaps_extremes():
    zero = mezzo.extreme_mezzoperversity(CONE_T2, "zero")
    full = mezzo.extreme_mezzoperversity(CONE_T2, "full")
    assert duality.dual_mezzoperversity(CONE_T2, zero).assignments == full.assignments
    assert duality.dual_mezzoperversity(CONE_T2, full).assignments == zero.assignments


def test_dual_mezzoperversity_involution():
    space = strata.Cone(strata.Closed(S2S2))
    m = mezzo.Mezzoperversity({"cone.apex": ((1, 1),)})
    d = duality.dual_mezzoperversity(space, m)
    assert d.assignments == {"cone.apex": ((1, -1),)}
    dd = duality.dual_mezzoperversity(space, d)
    assert dd.assignments == m.assignments


def test_dual_of_invariant_lagrangian_is_itself():
    m = mezzo.Mezzoperversity({"bundle.base": ((1, 1),)})
    d = duality.dual_mezzoperversity(SWAP_BUNDLE, m)
    assert d.assignments == m.assignments
    mezzo.require_valid(SWAP_BUNDLE, d)


def test_duality_report_fields():
    rep = duality.duality_report(CONE_T2, {"cone.apex": ((1, 0),)})
    assert rep.self_dual
    (entry,) = rep.entries
    assert entry.stratum_id == "cone.apex"
    assert entry.ambient == 2
    assert entry.dw == ((1, 0),)
    assert duality.is_self_dual(CONE_T2, {"cone.apex": ((1, 0),)})


def test_duality_report_flags_non_self_dual():
    rep = duality.duality_report(CONE_T2, {"cone.apex": ()})
    assert not rep.self_dual
    assert not duality.is_self_dual(CONE_T2, {"cone.apex": ()})


# ---------------------------------------------------------------------------
# self-dual search


def test_darboux_on_standard_symplectic():
    res = duality.find_self_dual(((0, 1), (-1, 0)))
    assert res.found and res.w == ((1, 0),)


def test_nonzero_signature_obstruction():
    res = duality.find_self_dual(((1,),))
    assert not res.found
    assert res.obstruction == "nonzero_signature" and res.signature == 1
    res = duality.find_self_dual(Q_CP2)
    assert res.obstruction == "nonzero_signature" and abs(res.signature) == 1


def test_hyperbolic_pair_construction():
    Q = ((1, 0), (0, -1))
    res = duality.find_self_dual(Q)
    assert res.found and res.signature == 0
    q = duality._qform(duality._form_matrix(Q))
    (w,) = res.w
    assert q(list(w), list(w)) == 0

    res = duality.find_self_dual(Q_S2S2)
    assert res.found
    q = duality._qform(duality._form_matrix(Q_S2S2))
    (w,) = res.w
    assert q(list(w), list(w)) == 0


def test_diagonal_pair_gives_sum_line():
    res = duality.find_self_dual(((1, 0), (0, -1)))
    assert linalgq.subspace_rref(as_rows(res.w)) == [[1, 1]]


def test_anisotropic_zero_signature_is_honest():
    Q = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -3, 0), (0, 0, 0, -3))
    res = duality.find_self_dual(Q)
    assert not res.found
    assert res.obstruction == "no_invariant_lagrangian" and res.signature == 0


def test_monodromy_invariance_via_eigenspaces():
    swap = ((0, 1), (1, 0))
    res = duality.find_self_dual(((0, 1), (-1, 0)), (swap,))
    assert res.found and res.w == ((1, -1),)
    moved = linalgq.mat_vec(as_rows(swap), [Fraction(1), Fraction(-1)])
    assert linalgq.rank([list(res.w[0]), moved]) == 1


def test_every_subspace_invariant_under_minus_identity():
    res = duality.find_self_dual(((0, 1), (-1, 0)), (((-1, 0), (0, -1)),))
    assert res.found and res.w == ((1, 0),)


def test_rotation_monodromy_defeats_search():
    rot = ((1, 1), (-1, 1))
    res = duality.find_self_dual(((0, 1), (-1, 0)), (rot,))
    assert not res.found and res.obstruction == "no_invariant_lagrangian"


def test_symmetric_form_does_not_retry():
    res = duality.find_self_dual(((1, 0), (0, -1)), (((2, 0), (0, 1)),))
    assert not res.found and res.obstruction == "no_invariant_lagrangian"


def test_search_errors():
    with pytest.raises(ParityError):
        duality.find_self_dual(((0, 1, 0), (-1, 0, 0), (0, 0, 0)))
    with pytest.raises(DegeneracyError):
        duality.find_self_dual(((0, 0), (0, 0)))


def test_char_poly_and_eigenvalues():
    T = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
    assert duality._char_poly(T) == [Fraction(1), Fraction(-5), Fraction(6)]
    assert duality._rational_eigenvalues(T) == [Fraction(2), Fraction(3)]
    swap = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert duality._char_poly(swap) == [Fraction(1), Fraction(0), Fraction(-1)]
    assert duality._rational_eigenvalues(swap) == [Fraction(-1), Fraction(1)]
    half = [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert duality._rational_eigenvalues(half) == [Fraction(1, 2), Fraction(1)]


def test_generalized_eigenspace_of_swap():
    swap = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    plus = duality._generalized_eigenspace(swap, Fraction(1))
    assert plus == [[1, 1]]
    minus = duality._generalized_eigenspace(swap, Fraction(-1))
    assert linalgq.rank(minus) == 1


# ---------------------------------------------------------------------------
# cheeger detection


def test_cheeger_torus_cone():
    rep = duality.cheeger_report(CONE_T2)
    assert rep.is_cheeger
    (entry,) = rep.entries
    assert entry.status == "lagrangian"
    mezzo.require_valid(CONE_T2, rep.mezzoperversity)
    assert duality.is_self_dual(CONE_T2, rep.mezzoperversity)


def test_cheeger_cp2_obstructed():
    rep = duality.cheeger_report(strata.Cone(strata.Closed(CP2)))
    assert not rep.is_cheeger
    assert rep.entries[0].status == "nonzero_signature"
    assert abs(rep.entries[0].signature) == 1
    assert rep.mezzoperversity is None


def test_cheeger_s2s2():
    space = strata.Cone(strata.Closed(S2S2))
    rep = duality.cheeger_report(space)
    assert rep.is_cheeger
    assert rep.entries[0].status == "lagrangian"
    assert duality.is_self_dual(space, rep.mezzoperversity)


def test_cheeger_swap_bundle():
    rep = duality.cheeger_report(SWAP_BUNDLE)
    assert rep.is_cheeger
    mezzo.require_valid(SWAP_BUNDLE, rep.mezzoperversity)
    assert duality.is_self_dual(SWAP_BUNDLE, rep.mezzoperversity)


def test_cheeger_all_witt():
    rep = duality.cheeger_report(strata.Cone(strata.Closed(S2)))
    assert rep.is_cheeger
    assert rep.entries[0].status == "witt"
    assert rep.mezzoperversity.assignments == {}


# ---------------------------------------------------------------------------
# duality checks and signatures


def test_poincare_check_extremes_pair_up():
    susp = strata.Suspension(strata.Closed(T2))
    rep = duality.poincare_check(susp, {"suspension.poles": ()})
    assert rep.ok
    assert rep.dims == (1, 0, 2, 1) and rep.dual_dims == (1, 2, 0, 1)


def test_poincare_check_lagrangian_self_paired():
    susp = strata.Suspension(strata.Closed(T2))
    rep = duality.poincare_check(susp, {"suspension.poles": ((1, 0),)})
    assert rep.ok
    assert rep.dims == rep.dual_dims == (1, 1, 1, 1)


def test_poincare_check_closed():
    rep = duality.poincare_check(strata.Closed(S2), None)
    assert rep.ok and rep.dims == (1, 0, 1)
    assert any(name.startswith("cup-nondegenerate") for name, _ in rep.checks)


def test_signature_values():
    assert abs(duality.signature(strata.Closed(CP2))) == 1
    assert duality.signature(strata.Closed(CP2)) == -duality.signature(
        strata.Closed(CP2, orientation=-1)
    )
    assert duality.signature(strata.Closed(S2S2)) == 0
    assert duality.signature(strata.Closed(T2)) == 0


def test_signature_odd_dimension_vanishes():
    susp = strata.Suspension(strata.Closed(T2))
    assert duality.signature(susp, {"suspension.poles": ((1, 0),)}) == 0


def test_signature_requires_self_dual():
    susp = strata.Suspension(strata.Closed(T2))
    with pytest.raises(SelfDualityError):
        duality.signature(susp, {"suspension.poles": ((1, 0), (0, 1))})


def test_signature_stratified_even_unsupported():
    with pytest.raises(UnsupportedError):
        duality.signature(SWAP_BUNDLE, {"bundle.base": ((1, 1),)})


# ---------------------------------------------------------------------------
# the star route agrees with the pairing route


@pytest.mark.parametrize("seed", [None, 7])
def test_dual_subspace_matches_star_of_orthocomplement(seed):
    K = T2
    if seed is None:
        ip = hodge.identity_ip()
    else:
        rng = np.random.default_rng(seed)
        ip = hodge.diagonal_ip(
            {k: tuple(rng.uniform(0.5, 2.0, K.n_simplices(k))) for k in range(3)}
        )
    h = hodge.harmonic_basis(K, ip, 1)
    canon = np.array(
        [[float(x) for x in row] for row in simplicial.cohomology_basis(K, 1)]
    )
    # coordinates of the canonical classes in the orthonormal harmonic frame
    trans = np.array([[hodge.ip_pairing(ip, K, 1, c, hl) for hl in h] for c in canon])

    w = ((1, 0),)
    w_h = np.array([[float(x) for x in row] for row in w]) @ trans
    _, _, vt = np.linalg.svd(w_h)
    perp = vt[len(w) :]

    pair = hodge.cup_pairing_matrix(K, 1, h, h)
    star_image = perp @ np.linalg.inv(pair).T

    dw = duality.dual_subspace(Q_T2, w)
    dw_h = np.array([[float(x) for x in row] for row in dw]) @ trans

    stacked = np.vstack([star_image, dw_h])
    assert np.linalg.matrix_rank(stacked, tol=1e-8) == len(dw)
