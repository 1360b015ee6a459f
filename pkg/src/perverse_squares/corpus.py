"""Small triangulations and the filtered complexes built from them."""

from __future__ import annotations

from functools import lru_cache

from .complex import FaceSet, boundary_components, prism, prism_end
from .filtered import FilteredFaceSet, cone, cone_off_boundary, suspension, trivial_filtration

__all__ = [
    "point",
    "circle",
    "rp2",
    "torus",
    "klein_bottle",
    "moebius",
    "annulus",
    "SURFACES",
    "surface",
    "corpus",
    "CORPUS_NAMES",
    "build",
]


def point() -> FaceSet:
    return FaceSet.from_simplicial_complex([[0]])


def circle() -> FaceSet:
    """The boundary of a triangle."""
    return FaceSet.from_simplicial_complex([[0, 1], [1, 2], [0, 2]])


def rp2() -> FaceSet:
    """The 6-vertex projective plane."""
    return FaceSet.from_simplicial_complex([
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ])


def torus() -> FaceSet:
    """The 7-vertex torus."""
    tris = []
    for i in range(7):
        tris.append([i, (i + 1) % 7, (i + 3) % 7])
        tris.append([i, (i + 2) % 7, (i + 3) % 7])
    return FaceSet.from_simplicial_complex(tris)


def klein_bottle() -> FaceSet:
    """A 3x3 grid with the horizontal sides glued straight and the vertical
    sides glued with a flip."""
    def v(i, j):
        if j % 3 == 0 and j == 3:
            i, j = -i, 0
        return (i % 3) * 3 + (j % 3)

    tris = []
    for i in range(3):
        for j in range(3):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            tris.append([a, b, d])
            tris.append([a, c, d])
    return FaceSet.from_simplicial_complex(tris)


def moebius() -> FaceSet:
    """The 5-vertex Moebius band."""
    return FaceSet.from_simplicial_complex([[i, (i + 1) % 5, (i + 2) % 5] for i in range(5)])


def annulus() -> FaceSet:
    return prism(circle())


SURFACES = {
    "point": point,
    "circle": circle,
    "rp2": rp2,
    "torus": torus,
    "klein": klein_bottle,
    "moebius": moebius,
    "annulus": annulus,
}


@lru_cache(maxsize=None)
def surface(name: str) -> FaceSet:
    return SURFACES[name]().validated()


def _coneoff(name: str) -> FilteredFaceSet:
    w = surface(name)
    return cone_off_boundary(w, boundary_components(w), w.dim)


def _coneoff_prism(name: str) -> FilteredFaceSet:
    f = surface(name)
    w = prism(f)
    return cone_off_boundary(w, [prism_end(f, 0), prism_end(f, 1)], w.dim)


_BUILDERS = {
    "trivial": lambda name: trivial_filtration(surface(name), max(surface(name).dim, 1)),
    "cone": lambda name: cone(surface(name)),
    "suspension": lambda name: suspension(surface(name)),
    "coneoff": _coneoff,
    "coneoff-prism": _coneoff_prism,
}


@lru_cache(maxsize=None)
def build(kind: str, name: str) -> FilteredFaceSet:
    """``kind`` in trivial, cone, suspension, coneoff, coneoff-prism."""
    return _BUILDERS[kind](name).validated()


CORPUS_NAMES = (
    ("trivial", "point"),
    ("trivial", "circle"),
    ("trivial", "rp2"),
    ("trivial", "torus"),
    ("trivial", "klein"),
    ("cone", "circle"),
    ("cone", "rp2"),
    ("cone", "torus"),
    ("suspension", "circle"),
    ("suspension", "rp2"),
    ("coneoff", "moebius"),
)


def corpus() -> list[tuple[str, FilteredFaceSet]]:
    return [(f"{kind}({name})", build(kind, name)) for kind, name in CORPUS_NAMES]
