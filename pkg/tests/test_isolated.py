import math

import pytest

from perverse_squares.complex import boundary_components, prism, prism_end
from perverse_squares.corpus import build, surface
from perverse_squares.filtered import Perversity, cone_off_boundary
from perverse_squares.isolated import PullbackModel, formula_dims, lift_scalar
from perverse_squares.squares import class_count, perverse_cohomology, steenrod_square

INF = math.inf
CUTS = [-1, 0, 1, 2, 3, INF]


def test_lift_scalar():
    assert lift_scalar(4, 2) == 6
    assert lift_scalar(-1, 3) == -2
    assert lift_scalar(INF, 1) == INF


def test_moebius_formula():
    w = surface("moebius")
    (bd,) = boundary_components(w)
    assert formula_dims(w, bd, -1) == [0, 1, 1]
    assert formula_dims(w, bd, 0) == [1, 1, 1]
    assert formula_dims(w, bd, 1) == [1, 1, 0]


def _cases():
    w = surface("moebius")
    yield "moebius", w, boundary_components(w)
    c = surface("circle")
    yield "annulus", prism(c), [prism_end(c, 0), prism_end(c, 1)]


@pytest.mark.parametrize("w,comps", [c[1:] for c in _cases()], ids=[c[0] for c in _cases()])
def test_model_matches_blowup(w, comps):
    bd = set().union(*map(set, comps))
    for t in CUTS:
        model = PullbackModel(w, comps, t)
        k = model.coned()
        p = model.perversity()
        assert model.dims() == class_count(k, p) == formula_dims(w, bd, t)
        for d in range(w.dim + 1):
            m = model.induced(d)
            assert m.nrows == m.ncols and m.rank() == m.nrows
            h = model.cohomology(d)
            for j in range(h.dim):
                for i in range(0, d + 1):
                    via_model = model._with_cut(lift_scalar(t, i)).induced(d + i).matvec(model.square(d, 1 << j, i)) \
                        if d + i <= w.dim else 0
                    x = m.matvec(1 << j)
                    via_blowup = steenrod_square(k, p, d, x, i).target_coords
                    assert via_model == via_blowup, (t, d, j, i)


def test_annulus_matches_suspension():
    c = surface("circle")
    k = cone_off_boundary(prism(c), [prism_end(c, 0), prism_end(c, 1)])
    s = build("suspension", "circle")
    for v in CUTS:
        assert class_count(k, Perversity((0, v))) == class_count(s, Perversity((0, v)))


def test_to_blowup_lands_in_the_intersection_complex():
    w = surface("moebius")
    model = PullbackModel(w, boundary_components(w), 0)
    b_h = perverse_cohomology(model.coned(), model.perversity(), 1)
    for rep in model.cohomology(1).representatives:
        assert b_h.coordinates(model.to_blowup(1, rep)) is not None
