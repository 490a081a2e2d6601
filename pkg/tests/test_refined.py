from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strathodge import complexes, hodge, linalgq, refined, simplicial, strata
from strathodge.errors import (
    FlatnessError,
    InputError,
    ParityError,
    StructureError,
    SuperfluousAssignmentError,
)

T2 = complexes.torus7()
S1 = complexes.circle(5)
S2 = complexes.sphere2()

LT2 = strata.Closed(T2)
LS1 = strata.Closed(S1)
LS2 = strata.Closed(S2)

E1 = ((1, 0),)
E2 = ((0, 1),)
FULL = ((1, 0), (0, 1))


def brute_betti(model):
    """Dimensions by dense rank-nullity, independent of the sparse kernels."""
    out = []
    for k in range(len(model.dims)):
        rank_k = linalgq.rank(model.diffs[k]) if model.diffs[k] else 0
        rank_prev = (
            linalgq.rank(model.diffs[k - 1]) if k >= 1 and model.diffs[k - 1] else 0
        )
        out.append(model.dims[k] - rank_k - rank_prev)
    return tuple(out)


# ---------------------------------------------------------------------------
# chain models


def test_chain_model_shape_checks():
    with pytest.raises(InputError):
        refined.ChainModel(dims=(2, 1), diffs=([[Fraction(1)]], []))
    with pytest.raises(InputError):
        refined.ChainModel(dims=(1,), diffs=())


def test_verify_model_catches_bad_composition():
    one = Fraction(1)
    bad = refined.ChainModel(
        dims=(1, 1, 1), diffs=([[one]], [[one]], [])
    )
    with pytest.raises(StructureError):
        refined.verify_model(bad)


@pytest.mark.parametrize("K", [S1, S2, T2, complexes.projective_plane6()])
def test_simplicial_model_matches_betti(K):
    model = refined.simplicial_model(K)
    refined.verify_model(model)
    expected = tuple(simplicial.betti(K, k) for k in range(K.dimension + 1))
    assert refined.model_betti(model) == expected
    assert brute_betti(model) == expected


def test_truncation_is_a_chain_map():
    model = refined.simplicial_model(T2)
    half, inc = refined.truncate_model(model, 2, E1)
    refined.verify_model(half)
    assert refined.model_betti(half) == (1, 1)
    # inclusion commutes with the differentials
    for k in range(len(half.dims) - 1):
        left = linalgq.mat_mul(model.diffs[k], inc[k])
        right = linalgq.mat_mul(inc[k + 1], half.diffs[k])
        assert left == right


def test_truncation_without_choice_kills_middle():
    model = refined.simplicial_model(T2)
    half, _ = refined.truncate_model(model, 2, ())
    assert refined.model_betti(half) == (1, 0)
    half, _ = refined.truncate_model(refined.simplicial_model(S1), 1, None)
    assert refined.model_betti(half) == (1, 0)


def test_mv_model_is_a_complex():
    model = refined.simplicial_model(T2)
    half, inc = refined.truncate_model(model, 2, E1)
    total = refined.mv_model(half, inc, half, inc, model)
    refined.verify_model(total)
    assert refined.model_betti(total) == (1, 1, 1, 1)


# ---------------------------------------------------------------------------
# cones


def test_cone_over_circle():
    assert refined.cone_cohomology(LS1, None, None) == (1, 0)


def test_cone_over_witt_even_link():
    assert refined.cone_cohomology(LS2, None, None) == (1, 0, 0)


@pytest.mark.parametrize(
    "w,expected",
    [((), (1, 0, 0)), (E1, (1, 1, 0)), (E2, (1, 1, 0)), (FULL, (1, 2, 0))],
)
def test_cone_over_torus(w, expected):
    assert refined.cone_cohomology(LT2, None, w) == expected


def test_cone_odd_link_rejects_assignment():
    with pytest.raises(SuperfluousAssignmentError):
        refined.cone_cohomology(LS1, None, ())


def test_cone_over_suspension():
    susp = strata.Suspension(LT2)
    prior = {"suspension.poles": E1}
    assert refined.cone_cohomology(susp, prior, None) == (1, 1, 0, 0)


# ---------------------------------------------------------------------------
# suspensions


def test_suspension_of_circle():
    assert refined.suspension_cohomology(LS1, None, None, None) == (1, 0, 1)


@pytest.mark.parametrize(
    "wp,wm,expected",
    [
        ((), (), (1, 0, 2, 1)),
        (FULL, FULL, (1, 2, 0, 1)),
        (E1, E1, (1, 1, 1, 1)),
        (E1, E2, (1, 0, 0, 1)),
    ],
)
def test_suspension_of_torus(wp, wm, expected):
    assert refined.suspension_cohomology(LT2, None, wp, wm) == expected


def test_suspension_extremes_are_reverses():
    zero = refined.suspension_cohomology(LT2, None, (), ())
    full = refined.suspension_cohomology(LT2, None, FULL, FULL)
    assert zero == tuple(reversed(full))


rows_strategy = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=0, max_size=2
)


@settings(max_examples=30, deadline=None)
@given(rows_strategy, rows_strategy)
def test_suspension_euler_characteristic(wp, wm):
    assume(linalgq.rank([list(map(Fraction, r)) for r in wp]) == len(wp))
    assume(linalgq.rank([list(map(Fraction, r)) for r in wm]) == len(wm))
    dims = refined.suspension_cohomology(LT2, None, tuple(wp), tuple(wm))
    chi = sum((-1) ** k * d for k, d in enumerate(dims))
    cone_p = refined.cone_cohomology(LT2, None, tuple(wp))
    cone_m = refined.cone_cohomology(LT2, None, tuple(wm))
    chi_p = sum((-1) ** k * d for k, d in enumerate(cone_p))
    chi_m = sum((-1) ** k * d for k, d in enumerate(cone_m))
    # Mayer-Vietoris: the two halves overlap in the link
    assert chi == chi_p + chi_m - 0  # chi(T2) == 0


# ---------------------------------------------------------------------------
# flat cone bundles


TRIV = strata.FlatConeBundle(LT2, ((1, 0), (0, 1)))
SWAP = strata.FlatConeBundle(LT2, ((0, 1), (1, 0)))
NEG = strata.FlatConeBundle(LT2, ((-1, 0), (0, -1)))


@pytest.mark.parametrize(
    "space,w,expected",
    [
        (TRIV, E1, (1, 2, 1, 0, 0)),
        (SWAP, ((1, 1),), (1, 2, 1, 0, 0)),
        (SWAP, ((1, -1),), (1, 1, 0, 0, 0)),
        (NEG, E1, (1, 1, 0, 0, 0)),
        (TRIV, FULL, (1, 3, 2, 0, 0)),
        (TRIV, (), (1, 1, 0, 0, 0)),
    ],
)
def test_bundle_dimensions(space, w, expected):
    assert refined.bundle_cohomology(space, None, w) == expected


def test_bundle_rejects_noninvariant_choice():
    with pytest.raises(FlatnessError):
        refined.bundle_cohomology(SWAP, None, E1)


def test_bundle_matches_brute_force_total_complex():
    for space, w in [(TRIV, E1), (SWAP, ((1, 1),)), (NEG, E1), (TRIV, FULL)]:
        dims = refined.bundle_cohomology(space, None, w)
        cone_dims = refined.cone_cohomology(LT2, None, w)
        T = [[Fraction(x) for x in row] for row in space.monodromy]
        slots = refined._bundle_slots(cone_dims, 2, T, w)
        model = refined._wang_model(cone_dims, slots)
        refined.verify_model(model)
        assert brute_betti(model) == dims[: len(model.dims)]
        assert all(d == 0 for d in dims[len(model.dims) :])


# ---------------------------------------------------------------------------
# dispatcher


def test_refined_cohomology_closed():
    r = refined.refined_cohomology(LT2)
    assert r.dims == (1, 2, 1)
    assert r.provenance.rule == "closed-betti"


def test_refined_cohomology_cone_with_provenance():
    r = refined.refined_cohomology(strata.Cone(LT2), {"cone.apex": E1})
    assert r.dims == (1, 1, 0, 0)
    assert r.provenance.rule == "cone-formula"
    assert r.provenance.children[0].rule == "closed-betti"
    assert "cone.apex:1" == r.assignments


def test_refined_cohomology_validates_first():
    with pytest.raises(FlatnessError):
        refined.refined_cohomology(SWAP, {"bundle.base": E1})


def test_bundle_report_flags_circle_base_caveat():
    r = refined.refined_cohomology(SWAP, {"bundle.base": ((1, 1),)})
    assert r.dims == (1, 2, 1, 0, 0)
    assert "untwisted" in r.provenance.note
    assert "untwisted" in r.provenance.render()


def test_nested_dispatch():
    deep = strata.Cone(strata.Suspension(strata.Suspension(LT2)))
    r = refined.refined_cohomology(
        deep, {"cone.suspension.suspension.poles": E1}
    )
    assert r.dims == (1, 1, 0, 0, 0, 0)
    rules = []
    node = r.provenance
    while True:
        rules.append(node.rule)
        if not node.children:
            break
        node = node.children[0]
    assert rules == [
        "cone-formula",
        "suspension-mayer-vietoris",
        "suspension-mayer-vietoris",
        "closed-betti",
    ]


def test_crosscheck_inner_product():
    r = refined.refined_cohomology(LT2, None, crosscheck_ip=hodge.identity_ip())
    assert r.dims == (1, 2, 1)
    rng = np.random.default_rng(5)
    ip = hodge.diagonal_ip(
        {k: tuple(rng.uniform(0.5, 2.0, S2.n_simplices(k))) for k in range(3)}
    )
    r = refined.refined_cohomology(LS2, None, crosscheck_ip=ip)
    assert r.dims == (1, 0, 1)


def test_middle_dimension():
    assert refined.middle_dimension(LT2, None) == 2
    assert refined.middle_dimension(strata.Suspension(LS1), None) == 0
    assert refined.middle_dimension(TRIV, {"bundle.base": E1}) == 1
    with pytest.raises(ParityError):
        refined.middle_dimension(strata.Cone(LT2), {"cone.apex": E1})


@settings(max_examples=20, deadline=None)
@given(rows_strategy)
def test_cone_counts_chosen_subspace(w):
    assume(linalgq.rank([list(map(Fraction, r)) for r in w]) == len(w))
    dims = refined.cone_cohomology(LT2, None, tuple(w))
    assert dims == (1, len(w), 0)
