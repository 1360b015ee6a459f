import itertools

import pytest
from hypothesis import given, strategies as st

from perverse_squares.complex import (
    Cochain,
    ClassicalCohomology,
    FaceSet,
    FaceSetError,
    boundary_components,
    classical_cohomology,
    classical_sq,
    coboundary,
    cup_i,
    interval_cuts,
    prism,
    prism_end,
    restriction_kernel_dim,
    simplex_cup_i,
    standard_simplex,
    validate_face_set,
)
from perverse_squares.corpus import surface

BETTI = {
    "point": [1],
    "circle": [1, 1],
    "rp2": [1, 1, 1],
    "torus": [1, 2, 1],
    "klein": [1, 2, 1],
    "moebius": [1, 1, 0],
    "annulus": [1, 1, 0],
}


@pytest.mark.parametrize("name", sorted(BETTI))
def test_mod2_betti_numbers(name):
    assert [h.dim for h in classical_cohomology(surface(name))] == BETTI[name]


@pytest.mark.parametrize("name", ["rp2", "torus", "klein"])
def test_closed_surfaces(name):
    f = surface(name)
    count = {}
    for t in f.of_dim(2):
        for e in f.faces(t):
            count[e] = count.get(e, 0) + 1
    assert set(count.values()) == {2}
    assert not boundary_components(f)


def test_sq1_on_surfaces():
    # Sq^1 on H^1 is cupping with w1: nonzero on RP2 and the Klein bottle, zero on the torus
    for name, rank in [("rp2", 1), ("klein", 1), ("torus", 0)]:
        f = surface(name)
        h1, h2 = ClassicalCohomology(f, 1), ClassicalCohomology(f, 2)
        images = [classical_sq(h1, h2, 1 << j, 1) for j in range(h1.dim)]
        assert int(any(images)) == rank, name


def test_validation_reports():
    bad = FaceSet({"a": (0, ()), "e": (1, ("a",)), "t": (1, ("a", "zz"))})
    kinds = {v.kind for v in validate_face_set(bad)}
    assert {"face count", "unknown face"} <= kinds
    with pytest.raises(FaceSetError):
        bad.validated()
    # an edge whose faces break d0 d1 = d0 d0 cannot happen; use a triangle instead
    f = FaceSet.from_simplicial_complex([[0, 1, 2]])
    simp = dict(f.simplices)
    d, faces = simp["0-1-2"]
    simp["0-1-2"] = (d, (faces[1], faces[0], faces[2]))
    assert any(v.kind == "simplicial identity" for v in validate_face_set(FaceSet(simp)))


def test_standard_simplex():
    f = standard_simplex(3)
    assert len(f) == 15
    assert [h.dim for h in classical_cohomology(f)] == [1, 0, 0, 0]


def test_interval_cuts_small():
    assert list(interval_cuts(2, 0)) == [
        ((0,), (0,), (0, 1, 2)),
        ((1,), (0, 1), (1, 2)),
        ((2,), (0, 1, 2), (2,)),
    ]
    # on a 2-simplex cup_1 pairs a triangle with an edge, in either order
    assert [(a, b) for _, a, b in interval_cuts(2, 1)] == [
        ((0, 1, 2), (0, 1)),
        ((0, 2), (0, 1, 2)),
        ((0, 1, 2), (1, 2)),
    ]


def _dual(f, verts):
    sid = f.face_by_vertices(f.of_dim(f.dim)[0], tuple(verts))
    return Cochain.from_ids(f, len(verts) - 1, [sid])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_closed_form_matches_interval_cuts(d):
    f = standard_simplex(d)
    top = f.of_dim(d)[0]
    faces = [c for r in range(1, d + 2) for c in itertools.combinations(range(d + 1), r)]
    for a, b in itertools.product(faces, repeat=2):
        u, v = _dual(f, a), _dual(f, b)
        fa = sum(1 << x for x in a)
        fb = sum(1 << x for x in b)
        for i in range(0, d + 1):
            prod = cup_i(u, v, i)
            closed = simplex_cup_i(fa, fb, i)
            support = prod.support()
            if closed is None:
                assert not support, (a, b, i)
            else:
                want = f.face_by_vertices(top, tuple(x for x in range(d + 1) if (closed >> x) & 1))
                assert support == [want], (a, b, i)


def _random_cochain(f, k, seed):
    n = len(f.of_dim(k))
    return Cochain(f, k, seed & ((1 << n) - 1))


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2**40), st.integers(0, 2**40))
def test_classical_leibniz(a, b, i, s1, s2):
    f = surface("rp2")
    x, y = _random_cochain(f, a, s1), _random_cochain(f, b, s2)
    if a + b - i > 2 or a + b - i + 1 > 2:
        return
    lhs = coboundary(cup_i(x, y, i))
    rhs = cup_i(x, y, i - 1) + cup_i(y, x, i - 1)
    if a + 1 <= 2:
        rhs = rhs + cup_i(coboundary(x), y, i)
    if b + 1 <= 2:
        rhs = rhs + cup_i(x, coboundary(y), i)
    assert lhs.values == rhs.values


def test_boundary_of_moebius():
    comps = boundary_components(surface("moebius"))
    assert len(comps) == 1 and len(comps[0]) == 10
    # restriction H^1(W) -> H^1(boundary) is multiplication by 2
    assert restriction_kernel_dim(surface("moebius"), comps[0], 1) == 1


def test_prism():
    f = surface("circle")
    w = prism(f)
    assert not validate_face_set(w)
    assert [h.dim for h in classical_cohomology(w)] == [1, 1, 0]
    ends = prism_end(f, 0) + prism_end(f, 1)
    assert [ClassicalCohomology(w, k, ends).dim for k in range(3)] == [0, 1, 1]
    assert len(boundary_components(w)) == 2
