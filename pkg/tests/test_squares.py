import itertools
import math

import pytest

from perverse_squares.blowup import restriction_map, section_from_cochain
from perverse_squares.complex import ClassicalCohomology, classical_sq
from perverse_squares.corpus import build, corpus, surface
from perverse_squares.cupi import cup_i_bits
from perverse_squares.filtered import Perversity
from perverse_squares.gf2 import BitMatrix
from perverse_squares.squares import (
    blowup_of,
    class_count,
    induced_map,
    perverse_cohomology,
    square_matrix,
    steenrod_square,
)

INF = math.inf
CORPUS = corpus()


def P(*values):
    return Perversity(values)


def dims(k, p):
    return class_count(k, p)


def test_trivial_rp2_dims_for_any_perversity():
    k = build("trivial", "rp2")
    for v in (-3, 0, 2, INF):
        assert dims(k, P(v, v)) == [1, 1, 1]


@pytest.mark.parametrize("top,expected", [(-1, [0, 0, 0, 0]), (0, [1, 0, 0, 0]), (1, [1, 1, 0, 0]),
                                          (2, [1, 1, 1, 0]), (INF, [1, 1, 1, 0])])
def test_cone_on_rp2(top, expected):
    assert dims(build("cone", "rp2"), P(0, 0, top)) == expected


def test_cone_on_circle():
    k = build("cone", "circle")
    assert dims(k, P(0, 0)) == [1, 0, 0]
    assert dims(k, P(0, 1)) == [1, 1, 0]


def test_coneoff_moebius():
    k = build("coneoff", "moebius")
    assert dims(k, P(0, 0)) == [1, 1, 1]
    assert dims(k, P(0, -1)) == [0, 1, 1]
    assert dims(k, P(0, 1)) == [1, 1, 0]


def test_suspensions():
    assert dims(build("suspension", "circle"), P(0, 0)) == [1, 0, 1]
    assert dims(build("suspension", "rp2"), P(0, 0, 0)) == [1, 0, 1, 1]
    assert dims(build("suspension", "point"), P(0)) == [1, 0]


def test_induced_maps():
    k = build("cone", "circle")
    assert induced_map(k, P(0, 1), P(0, 1), 1) == BitMatrix.identity(1)
    # the cone formula puts no truncation at infinity, so this is still the base class
    assert induced_map(k, P(0, 1), P(INF, INF), 1) == BitMatrix.identity(1)
    assert perverse_cohomology(k, P(0, 0), 1).dim == 0
    assert induced_map(k, P(0, 1), P(0, 2), 1) == BitMatrix.identity(1)
    with pytest.raises(ValueError):
        induced_map(k, P(0, 2), P(0, 1), 1)


@pytest.mark.parametrize("name,k", CORPUS, ids=[n for n, _ in CORPUS])
def test_induced_maps_compose(name, k):
    chain = [Perversity.constant(k.n, v) for v in (-1, 0, 1, 2, INF)]
    for d in range(k.dim + 1):
        for a, b, c in itertools.combinations(chain, 3):
            assert induced_map(k, b, c, d) @ induced_map(k, a, b, d) == induced_map(k, a, c, d)


@pytest.mark.parametrize("name,k", CORPUS, ids=[n for n, _ in CORPUS])
def test_sq0_and_top_square(name, k):
    b = blowup_of(k)
    for v in (0, 1, INF):
        p = Perversity.constant(k.n, v)
        for d in range(k.dim + 1):
            h = perverse_cohomology(k, p, d)
            if h.dim:
                assert square_matrix(k, p, d, 0) == BitMatrix.identity(h.dim)
            for j in range(h.dim):
                sq = steenrod_square(k, p, d, 1 << j, d)
                z = h.lift(1 << j)
                assert sq.witness == cup_i_bits(b, d, z, d, z, 0)
                assert steenrod_square(k, p, d, 1 << j, d + 1).target_coords == 0
                assert steenrod_square(k, p, d, 1 << j, -1).target_coords == 0


def test_sq1_on_trivial_rp2():
    assert square_matrix(build("trivial", "rp2"), P(0, 0), 1, 1) == BitMatrix.identity(1)


def test_square_result_fields():
    k = build("suspension", "rp2")
    p = P(0, 0, 0)
    sq = steenrod_square(k, p, 2, 1, 1)
    assert sq.target_perversity == p.lift(1) and sq.target_degree == 3
    assert sq.target_coords == 1 and sq.image_in_2p == 1
    assert all(a <= b for a, b in zip(sq.witness_perverse_degree, p.lift(1).values))


def test_representative_must_match():
    k = build("trivial", "torus")
    p = P(0, 0)
    h = perverse_cohomology(k, p, 1)
    with pytest.raises(ValueError):
        steenrod_square(k, p, 1, 1, 1, representative=h.lift(2))


def _classical_coords(target, candidates):
    """Index of the classical coordinates whose image equals ``target``."""
    hits = [c for c, img in candidates.items() if img == target]
    assert len(hits) == 1
    return hits[0]


@pytest.mark.parametrize("name", ["circle", "rp2", "torus"])
def test_squares_on_a_cone_match_the_base(name):
    f = surface(name)
    k = build("cone", name)
    b = blowup_of(k)
    base = k.sub("w:" + s for s in f.simplices)
    bb = blowup_of(base)
    rest = restriction_map(b, bb)
    inf = Perversity.infinite(k.n)

    def to_base(d, x):
        return perverse_cohomology(bb, inf, d).coordinates(rest(d, x))

    def classical_images(d):
        h = ClassicalCohomology(f, d)
        return {c: perverse_cohomology(bb, inf, d).coordinates(
                    section_from_cochain(bb, f, d, h.lift(c).values, "w:"))
                for c in range(1 << h.dim)}

    for top in range(0, 3):
        p = Perversity((0,) * (k.n - 1) + (top,))
        for r in range(0, top + 1):
            h = perverse_cohomology(k, p, r)
            images = classical_images(r)
            assert sorted(images.values()) == list(range(1 << h.dim))  # restriction is onto and injective
            for j in range(h.dim):
                c = _classical_coords(to_base(r, h.lift(1 << j)), images)
                for i in range(0, top - r + 1):
                    if r + i > f.dim:
                        continue
                    sq = steenrod_square(k, p, r, 1 << j, i)
                    want = classical_sq(ClassicalCohomology(f, r), ClassicalCohomology(f, r + i), c, i)
                    assert to_base(r + i, sq.witness) == classical_images(r + i)[want]
