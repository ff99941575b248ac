import pytest
from hypothesis import given, settings, strategies as st

from magnetkit.errors import (
    PreconditionError,
    SharpenRequiredError,
    StructuralError,
)
from magnetkit.groups import FgAbelianGroup, hom_from_matrix
from magnetkit.graded import (
    FreePoly,
    MonoidAlgebra,
    MonoidIdeal,
    WeightModule,
    attractor,
    face_retraction,
    inclusion_is_closed,
    intersect_attractors,
    iterated_attractor,
    prescribed_limit,
    product_attractor,
    reindex,
    semidirect_dims,
    support_report,
    weight_attractor,
)
from magnetkit.monoids import PreimageMonoid, Submonoid, faces

Z = FgAbelianGroup(1, ())
Z2 = FgAbelianGroup(2, ())

NAT = Submonoid.generated_by(Z, [[1]])
ZERO = Submonoid.zero(Z)
FULL_Z = Submonoid.full(Z)


# --- free polynomial attractors ------------------------------------------------


def test_attractor_keeps_everything_inside_full_magnet():
    P = FreePoly.of(Z, [("x", [1])])
    r = attractor(P, NAT)
    assert r.killed == ()
    assert r.quotient == P


def test_attractor_at_zero_is_fixed_points():
    P = FreePoly.of(Z, [("x", [1])])
    r = attractor(P, ZERO)
    assert r.killed == ("x",)
    assert r.quotient.vars == ()


def test_attractor_grading_mismatch():
    P = FreePoly.of(Z, [("x", [1])])
    with pytest.raises(StructuralError):
        attractor(P, Submonoid.zero(Z2))


def test_attractor_mixed_weights():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1]), ("z", [0])])
    r = attractor(P, NAT)
    assert r.killed == ("y",)
    assert r.quotient.names() == ("x", "z")


def test_duplicate_variable_names_rejected():
    with pytest.raises(StructuralError):
        FreePoly.of(Z, [("x", [1]), ("x", [2])])


# --- monoid algebra attractors ---------------------------------------------------


def monoschemes_algebra():
    N0 = Submonoid.generated_by(Z2, [[1, 1], [1, -1], [1, 0]])
    return MonoidAlgebra(N0)


def test_monoid_algebra_attractor_support():
    A = monoschemes_algebra()
    L = Submonoid.generated_by(Z2, [[1, 0]])
    q = attractor(A, L).quotient
    assert q.survives(Z2.element([0, 0]))
    assert q.survives(Z2.element([1, 0]))
    assert not q.survives(Z2.element([2, 0]))
    assert not q.survives(Z2.element([1, 1]))
    assert not q.survives(Z2.element([1, -1]))


def test_monoschemes_support_report_is_nilpotent_dual_numbers():
    A = monoschemes_algebra()
    L = Submonoid.generated_by(Z2, [[1, 0]])
    rep = support_report(attractor(A, L).quotient)
    assert rep.members == (Z2.element([0, 0]), Z2.element([1, 0]))
    assert rep.finite is True
    assert rep.non_reduced is True


def test_attractor_requires_sharp_monoid_algebra():
    A = MonoidAlgebra(Submonoid.subgroup_generated_by(Z, [[1]]))
    with pytest.raises(SharpenRequiredError):
        attractor(A, NAT)


def test_monoid_algebra_full_magnet_keeps_support():
    N0 = Submonoid.generated_by(Z, [[2], [3]])
    A = MonoidAlgebra(N0)
    r = attractor(A, FULL_Z)
    for k in (0, 2, 3, 4, 5):
        assert r.quotient.survives(Z.element([k]))
    rep = support_report(r.quotient)
    assert rep.finite is None
    assert rep.non_reduced is None


def test_support_report_group_algebra():
    A = MonoidAlgebra(Submonoid.subgroup_generated_by(FgAbelianGroup(0, (6,)), [[1]]))
    rep = support_report(A)
    assert rep.finite is True
    assert len(rep.members) == 6
    assert rep.non_reduced is False


def test_monoid_ideal_membership():
    N0 = Submonoid.generated_by(Z, [[2], [3]])
    I = MonoidIdeal(N0, generators=(Z.element([3]),))
    for k in (3, 5, 6, 7, 8):
        assert I.contains(Z.element([k]))
    for k in (0, 2, 4):
        assert not I.contains(Z.element([k]))


def test_monoid_ideal_generator_outside_monoid_rejected():
    N0 = Submonoid.generated_by(Z, [[2]])
    with pytest.raises(StructuralError):
        MonoidIdeal(N0, generators=(Z.element([3]),))


# --- weight modules -----------------------------------------------------------


def gl2_adjoint():
    # weights of the 2x2 matrix algebra under conjugation by the torus
    G = FgAbelianGroup(2, ())
    return WeightModule.of(
        G, [([1, -1], 1, "e"), ([-1, 1], 1, "f"), ([0, 0], 2, "t")]
    )


def test_weight_attractor_keeps_magnet_weights():
    W = gl2_adjoint()
    G = W.grading_group
    alpha = Submonoid.generated_by(G, [[1, -1]])
    kept = weight_attractor(W, alpha)
    assert kept.dimension == 3
    assert all(w in (G.element([1, -1]), G.element([0, 0])) for w, _, _ in kept.weights)


def test_weight_attractor_unchanged_when_all_weights_inside():
    W = gl2_adjoint()
    full = Submonoid.full(W.grading_group)
    assert weight_attractor(W, full) == W


def test_weight_attractor_subgroup_filter():
    W = gl2_adjoint()
    G = W.grading_group
    diag = Submonoid.subgroup_generated_by(G, [[1, -1]])
    kept = weight_attractor(W, diag)
    assert kept.dimension == 4
    zero_only = weight_attractor(W, Submonoid.zero(G))
    assert zero_only.dimension == 2


def test_weight_module_validation():
    with pytest.raises(StructuralError):
        WeightModule.of(Z, [([1], 0)])


# --- closed inclusions ------------------------------------------------------------


def test_inclusion_zero_into_anything():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1])])
    w = inclusion_is_closed(P, ZERO, NAT)
    assert w.holds
    assert w.extra_killed == ("x",)


def test_inclusion_nat_into_group():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1])])
    w = inclusion_is_closed(P, NAT, FULL_Z)
    assert w.extra_killed == ("y",)


def test_inclusion_identity():
    P = FreePoly.of(Z, [("x", [1])])
    assert inclusion_is_closed(P, NAT, NAT).extra_killed == ()


def test_inclusion_precondition():
    P = FreePoly.of(Z, [("x", [1])])
    with pytest.raises(PreconditionError):
        inclusion_is_closed(P, NAT, ZERO)


def test_inclusion_monoid_algebra_probes():
    A = monoschemes_algebra()
    L = Submonoid.generated_by(Z2, [[1, 0]])
    w = inclusion_is_closed(A, Submonoid.zero(Z2), L)
    assert w.holds


# --- face retractions ---------------------------------------------------------------


def test_face_retraction_axis():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    F = Submonoid.generated_by(Z2, [[1, 0]])
    fr = face_retraction(P, N, F)
    assert fr.section_kills == ("y",)
    assert fr.face_presentation.names() == ("x",)
    assert fr.attractor_presentation.names() == ("x", "y")


def test_face_retraction_trivial_face():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    fr = face_retraction(P, N, N)
    assert fr.section_kills == ()
    assert fr.face_presentation == fr.attractor_presentation


def test_face_retraction_requires_face():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    D = Submonoid.generated_by(Z2, [[1, 1]])
    with pytest.raises(PreconditionError):
        face_retraction(P, N, D)


def test_retraction_identity_over_all_faces():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1]), ("z", [1, 1])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    for F in faces(N):
        fr = face_retraction(P, N, F)
        killed = set(fr.section_kills)
        assert all(n not in killed for n in fr.face_presentation.names())


# --- prescribed limits ---------------------------------------------------------------


def test_prescribed_limit_full_z_is_attractor():
    W = gl2_adjoint()
    G = W.grading_group
    N = Submonoid.generated_by(G, [[1, -1]])
    F = Submonoid.zero(G)
    WF = weight_attractor(W, F)
    assert prescribed_limit(W, N, F, WF) == weight_attractor(W, N)


def test_prescribed_limit_unit_extracts_root_space():
    W = gl2_adjoint()
    G = W.grading_group
    N = Submonoid.generated_by(G, [[1, -1]])
    F = Submonoid.zero(G)
    U = prescribed_limit(W, N, F, "unit")
    assert U.dimension == 1
    assert U.weights[0][0] == G.element([1, -1])


def test_prescribed_limit_freepoly_unit():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1]), ("c", [0, 0])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    F = Submonoid.zero(Z2)
    out = prescribed_limit(P, N, F, "unit", zero_coords=("c",))
    assert out.names() == ("x", "y")
    kept = prescribed_limit(P, N, F, "unit")
    assert kept.names() == ("x", "y", "c")


def test_prescribed_limit_freepoly_explicit_z():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1])])
    N = Submonoid.generated_by(Z2, [[1, 0], [0, 1]])
    F = Submonoid.generated_by(Z2, [[1, 0]])
    out = prescribed_limit(P, N, F, ["x"])
    assert out.names() == ("y",)
    with pytest.raises(PreconditionError):
        prescribed_limit(P, N, F, ["y"])


def test_prescribed_limit_z_outside_f_part_rejected():
    W = gl2_adjoint()
    G = W.grading_group
    N = Submonoid.generated_by(G, [[1, -1]])
    F = Submonoid.zero(G)
    bad = WeightModule.of(G, [([1, -1], 1, "e")])
    with pytest.raises(PreconditionError):
        prescribed_limit(W, N, F, bad)


# --- intersections and iteration -------------------------------------------------------


def test_intersect_single_magnet():
    P = FreePoly.of(Z, [("x", [1]), ("y", [2])])
    r = intersect_attractors(P, [NAT])
    assert r.killed == ()


def test_intersect_kills_union():
    P = FreePoly.of(Z, [("x", [1]), ("y", [2])])
    N1 = Submonoid.generated_by(Z, [[1]])
    N2 = Submonoid.generated_by(Z, [[2]])
    r = intersect_attractors(P, [N1, N2])
    assert r.killed == ("x",)


def test_iterated_attractor_gm_plus_minus():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1])])
    MINUS = Submonoid.generated_by(Z, [[-1]])
    r = iterated_attractor(P, NAT, MINUS)
    assert r.quotient.vars == ()
    r2 = iterated_attractor(P, MINUS, NAT)
    assert r2.quotient.vars == ()


def test_iterated_attractor_full_is_identity():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1])])
    r = iterated_attractor(P, NAT, FULL_Z)
    assert r.quotient.names() == attractor(P, NAT).quotient.names()


def test_iterated_attractor_idempotent():
    P = FreePoly.of(Z, [("x", [1]), ("y", [-1])])
    r = iterated_attractor(P, NAT, NAT)
    assert r.quotient.names() == ("x",)


def test_iterated_attractor_monoid_algebra():
    A = monoschemes_algebra()
    L1 = Submonoid.generated_by(Z2, [[1, 0], [1, 1]])
    L2 = Submonoid.generated_by(Z2, [[1, 0], [1, -1]])
    r = iterated_attractor(A, L1, L2)
    assert r.quotient.survives(Z2.element([1, 0]))
    assert not r.quotient.survives(Z2.element([1, 1]))
    assert not r.quotient.survives(Z2.element([1, -1]))


# --- products and semidirect dimensions ---------------------------------------------------


def test_product_attractor_additivity():
    W = gl2_adjoint()
    G = W.grading_group
    alpha = Submonoid.generated_by(G, [[1, -1]])
    both = product_attractor(W, W, alpha)
    assert both.dimension == 6


def test_product_attractor_empty_side():
    W = gl2_adjoint()
    EMPTY = WeightModule(W.grading_group, ())
    out = product_attractor(W, EMPTY, Submonoid.full(W.grading_group))
    assert out == W


def test_semidirect_dims_gl2():
    W = gl2_adjoint()
    G = W.grading_group
    alpha = Submonoid.generated_by(G, [[1, -1]])
    assert semidirect_dims(W, alpha) == (3, 2, 1)


def test_semidirect_dims_group_case():
    W = gl2_adjoint()
    G = W.grading_group
    diag = Submonoid.subgroup_generated_by(G, [[1, -1]])
    total, limit, pres = semidirect_dims(W, diag)
    assert pres == 0
    assert total == limit == 4


# --- reindexing -----------------------------------------------------------------------


def test_reindex_freepoly():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1])])
    f = hom_from_matrix(Z2, Z, [[1], [1]])
    Q = reindex(P, f)
    assert Q.grading_group == Z
    assert Q.degrees() == (Z.element([1]), Z.element([1]))


def test_reindex_matches_preimage_attractor():
    P = FreePoly.of(Z2, [("x", [1, 0]), ("y", [0, 1]), ("z", [1, -1])])
    f = hom_from_matrix(Z2, Z, [[1], [1]])
    pulled = PreimageMonoid(f, NAT)
    direct = attractor(P, pulled)
    pushed = attractor(reindex(P, f), NAT)
    assert direct.killed == pushed.killed


# --- randomized identities --------------------------------------------------------------


def small_element(group):
    return st.lists(st.integers(-3, 3), min_size=2, max_size=2).map(group.element)


def small_monoid(group):
    return st.lists(
        st.lists(st.integers(-3, 3), min_size=2, max_size=2),
        min_size=0,
        max_size=3,
    ).map(lambda gens: Submonoid.generated_by(group, gens))


def small_poly(group):
    return st.lists(
        st.lists(st.integers(-3, 3), min_size=2, max_size=2),
        min_size=1,
        max_size=8,
    ).map(
        lambda ds: FreePoly(
            group, tuple(("v%d" % i, group.element(d)) for i, d in enumerate(ds))
        )
    )


@settings(max_examples=60, deadline=None)
@given(small_poly(Z2), small_monoid(Z2), small_monoid(Z2))
def test_property_intersection_kills_union(P, N, L):
    r = intersect_attractors(P, [N, L])
    assert set(r.killed) == set(attractor(P, N).killed) | set(attractor(P, L).killed)


@settings(max_examples=60, deadline=None)
@given(small_poly(Z2), small_monoid(Z2), small_monoid(Z2))
def test_property_iteration_both_orders(P, N, L):
    a = iterated_attractor(P, N, L)
    b = iterated_attractor(P, L, N)
    assert a.quotient == b.quotient


@settings(max_examples=40, deadline=None)
@given(small_poly(Z2), small_monoid(Z2))
def test_property_monotone_killing(P, N):
    bigger = Submonoid(Z2, N.generators + (Z2.element([1, 0]),))
    assert set(attractor(P, bigger).killed) <= set(attractor(P, N).killed)


@settings(max_examples=25, deadline=None)
@given(small_poly(Z2), small_monoid(Z2))
def test_property_retraction_over_faces(P, N):
    for F in faces(N, max_generators=6):
        fr = face_retraction(P, N, F)
        assert set(fr.face_presentation.names()) <= set(
            fr.attractor_presentation.names()
        )


@settings(max_examples=40, deadline=None)
@given(
    small_poly(Z2),
    st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2),
    small_monoid(Z2),
)
def test_property_reindexing_invariance(P, cols, Y):
    f = hom_from_matrix(Z2, Z2, cols)
    assert attractor(P, PreimageMonoid(f, Y)).killed == attractor(reindex(P, f), Y).killed
