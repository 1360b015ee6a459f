"""Plain face sets (semi-simplicial sets) and their mod 2 cochains.

A face set stores, for every simplex, its dimension and the ordered list of
its codimension-one faces: ``faces[v]`` is the face obtained by deleting
vertex ``v``.  Cochains are bitsets over the simplices of one dimension,
indexed in sorted-id order.

The cup_i products use overlapping interval cuts: a cut of an ``n``-simplex
is ``0 <= b_1 <= ... <= b_{i+1} <= n`` giving the intervals
``[0,b_1], [b_1,b_2], ..., [b_{i+1},n]``; even intervals feed the first
argument, odd ones the second, and cuts producing a repeated vertex are
dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .gf2 import (
    BitMatrix,
    QuotientSpace,
    SubspacePresentation,
    bits,
    rank_and_kernel,
)

__all__ = [
    "FaceSet",
    "Cochain",
    "Violation",
    "FaceSetError",
    "validate_face_set",
    "coboundary",
    "cup_i",
    "simplex_cup_i",
    "interval_cuts",
    "ClassicalCohomology",
    "classical_cohomology",
    "classical_sq",
    "restriction_kernel_dim",
    "prism",
    "boundary_components",
    "standard_simplex",
    "subcomplex_closure",
    "prism_end",
]


@dataclass(frozen=True)
class Violation:
    simplex: str
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        msg = f"{self.simplex}: {self.kind}"
        return f"{msg} ({self.detail})" if self.detail else msg


class FaceSetError(ValueError):
    """Raised when a face set (plain or filtered) breaks its invariants."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:5]))


class FaceSet:
    """A finite semi-simplicial set.

    ``simplices`` maps an id to ``(dimension, faces)``.  Construction does not
    validate; call :func:`validate_face_set` or :meth:`validated`.
    """

    def __init__(self, simplices: Mapping[str, tuple[int, Sequence[str]]]):
        self.simplices: dict[str, tuple[int, tuple[str, ...]]] = {
            str(k): (int(d), tuple(f)) for k, (d, f) in simplices.items()
        }

    def validated(self) -> "FaceSet":
        problems = validate_face_set(self)
        if problems:
            raise FaceSetError(problems)
        return self

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, sid: str) -> bool:
        return sid in self.simplices

    def __eq__(self, other) -> bool:
        return isinstance(other, FaceSet) and self.simplices == other.simplices

    def __repr__(self) -> str:
        counts = [len(self.of_dim(d)) for d in range(self.dim + 1)]
        return f"FaceSet(f-vector={counts})"

    def dim_of(self, sid: str) -> int:
        return self.simplices[sid][0]

    def faces(self, sid: str) -> tuple[str, ...]:
        return self.simplices[sid][1]

    @cached_property
    def dim(self) -> int:
        return max((d for d, _ in self.simplices.values()), default=-1)

    @cached_property
    def _by_dim(self) -> dict[int, tuple[str, ...]]:
        out: dict[int, list[str]] = {}
        for sid, (d, _) in self.simplices.items():
            out.setdefault(d, []).append(sid)
        return {d: tuple(sorted(v)) for d, v in out.items()}

    def of_dim(self, d: int) -> tuple[str, ...]:
        return self._by_dim.get(d, ())

    @cached_property
    def _index(self) -> dict[str, int]:
        return {sid: i for d in self._by_dim for i, sid in enumerate(self._by_dim[d])}

    def index(self, sid: str) -> int:
        """Position of ``sid`` among simplices of its dimension."""
        return self._index[sid]

    def face_by_vertices(self, sid: str, keep: Sequence[int]) -> str:
        """The face of ``sid`` spanned by the local vertex positions ``keep``."""
        return _face_by_vertices(self, sid, tuple(keep))

    def vertices_of(self, sid: str) -> tuple[str, ...]:
        """Vertex ids of ``sid`` in order."""
        return tuple(self.face_by_vertices(sid, (v,)) for v in range(self.dim_of(sid) + 1))

    @classmethod
    def from_simplicial_complex(cls, facets: Iterable[Iterable]) -> "FaceSet":
        """Ordered simplicial complex generated by ``facets``.

        Vertices are sorted; a simplex is named by its vertices joined with
        ``'-'``.
        """
        simplices: dict[str, tuple[int, tuple[str, ...]]] = {}
        for facet in facets:
            verts = tuple(sorted(set(facet)))
            for r in range(1, len(verts) + 1):
                for sub in itertools.combinations(verts, r):
                    name = _vname(sub)
                    if name in simplices:
                        continue
                    faces = () if r == 1 else tuple(
                        _vname(sub[:v] + sub[v + 1:]) for v in range(r)
                    )
                    simplices[name] = (r - 1, faces)
        return cls(simplices)

    def coboundary_matrix(self, d: int) -> BitMatrix:
        """Matrix of ``delta: C^d -> C^{d+1}``."""
        rows = []
        for sid in self.of_dim(d + 1):
            r = 0
            for f in self.faces(sid):
                r ^= 1 << self.index(f)
            rows.append(r)
        return BitMatrix(len(rows), len(self.of_dim(d)), tuple(rows))

    def subcomplex(self, ids: Iterable[str]) -> "FaceSet":
        return FaceSet({sid: self.simplices[sid] for sid in ids})

    def to_json_obj(self) -> dict:
        return {
            "formal_dimension": 0,
            "simplices": {
                sid: {"blocks": [d], "faces": list(f)}
                for sid, (d, f) in sorted(self.simplices.items())
            },
        }


def _vname(verts: Sequence) -> str:
    return "-".join(str(v) for v in verts)


def _face_by_vertices(f: FaceSet, sid: str, keep: tuple[int, ...]) -> str:
    d = f.dim_of(sid)
    cur = sid
    # delete unwanted positions from the top so lower positions stay valid
    for v in range(d, -1, -1):
        if v not in keep:
            cur = f.faces(cur)[v]
    return cur


def standard_simplex(d: int) -> FaceSet:
    return FaceSet.from_simplicial_complex([range(d + 1)])


def validate_face_set(f: FaceSet) -> list[Violation]:
    """All invariant violations of ``f``; empty means valid."""
    out: list[Violation] = []
    for sid in sorted(f.simplices):
        d, faces = f.simplices[sid]
        if d < 0:
            out.append(Violation(sid, "dimension", f"negative dimension {d}"))
            continue
        expected = d + 1 if d > 0 else 0
        if len(faces) != expected:
            out.append(Violation(sid, "face count", f"{len(faces)} faces, expected {expected}"))
            continue
        bad = False
        for v, g in enumerate(faces):
            if g not in f.simplices:
                out.append(Violation(sid, "unknown face", f"face {v} is {g!r}"))
                bad = True
            elif f.dim_of(g) != d - 1:
                out.append(Violation(sid, "face dimension", f"face {v} has dimension {f.dim_of(g)}"))
                bad = True
        if bad:
            continue
        if _identity_violation(f.simplices, sid):
            out.append(Violation(sid, "simplicial identity", _identity_violation(f.simplices, sid)))
    return out


def _identity_violation(simplices, sid) -> str:
    faces = simplices[sid][1]
    for b in range(len(faces)):
        for a in range(b):
            fb, fa = faces[b], faces[a]
            la, lb = simplices[fb][1], simplices[fa][1]
            if a >= len(la) or b - 1 >= len(lb):
                continue
            if la[a] != lb[b - 1]:
                return f"d{a} d{b} != d{b - 1} d{a}"
    return ""


@dataclass(frozen=True)
class Cochain:
    """A mod 2 cochain: a bitset over the ``degree``-simplices of ``carrier``."""

    carrier: FaceSet = field(compare=False)
    degree: int
    values: int = 0

    @classmethod
    def from_ids(cls, carrier: FaceSet, degree: int, ids: Iterable[str]) -> "Cochain":
        v = 0
        for sid in ids:
            if carrier.dim_of(sid) != degree:
                raise ValueError(f"{sid} is not a {degree}-simplex")
            v ^= 1 << carrier.index(sid)
        return cls(carrier, degree, v)

    def support(self) -> list[str]:
        ids = self.carrier.of_dim(self.degree)
        return [ids[j] for j in bits(self.values)]

    def __call__(self, sid: str) -> int:
        if self.carrier.dim_of(sid) != self.degree:
            return 0
        return (self.values >> self.carrier.index(sid)) & 1

    def __add__(self, other: "Cochain") -> "Cochain":
        _check_carrier(self, other)
        if self.degree != other.degree:
            raise ValueError("cannot add cochains of different degrees")
        return Cochain(self.carrier, self.degree, self.values ^ other.values)

    def __bool__(self) -> bool:
        return bool(self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.carrier is other.carrier
            and self.degree == other.degree
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((id(self.carrier), self.degree, self.values))


def _check_carrier(u: Cochain, v: Cochain) -> None:
    if u.carrier is not v.carrier:
        raise ValueError("cochains live on different face sets")


def coboundary(u: Cochain) -> Cochain:
    f = u.carrier
    out = 0
    for j, sid in enumerate(f.of_dim(u.degree + 1)):
        s = 0
        for g in f.faces(sid):
            s ^= (u.values >> f.index(g)) & 1
        out |= s << j
    return Cochain(f, u.degree + 1, out)


def interval_cuts(n: int, i: int):
    """Cuts ``(b_1, ..., b_{i+1})`` of an ``n``-simplex in lexicographic order,
    each returned with its (first-argument, second-argument) vertex tuples.

    Cuts that repeat a vertex inside one argument are skipped.
    """
    for cut in itertools.combinations_with_replacement(range(n + 1), i + 1):
        ends = (0,) + cut + (n,)
        parts: tuple[list[int], list[int]] = ([], [])
        ok = True
        for k in range(i + 2):
            seg = parts[k % 2]
            lo, hi = ends[k], ends[k + 1]
            for v in range(lo, hi + 1):
                if seg and seg[-1] >= v:
                    ok = False
                    break
                seg.append(v)
            if not ok:
                break
        if ok:
            yield cut, tuple(parts[0]), tuple(parts[1])


def cup_i(u: Cochain, v: Cochain, i: int) -> Cochain:
    """``u cup_i v`` evaluated by enumerating interval cuts on every simplex."""
    _check_carrier(u, v)
    f = u.carrier
    deg = u.degree + v.degree - i
    if i < 0 or deg < 0 or i > min(u.degree, v.degree):
        return Cochain(f, max(deg, 0), 0)
    out = 0
    for j, sid in enumerate(f.of_dim(deg)):
        s = 0
        for _, front, back in interval_cuts(deg, i):
            if len(front) != u.degree + 1 or len(back) != v.degree + 1:
                continue
            s ^= u(f.face_by_vertices(sid, front)) & v(f.face_by_vertices(sid, back))
        out |= s << j
    return Cochain(f, deg, out)


@lru_cache(maxsize=None)
def simplex_cup_i(first: int, second: int, i: int) -> Optional[int]:
    """cup_i of two dual basis cochains on a standard simplex.

    Faces are vertex bitmasks.  The product of ``first^`` and ``second^`` is
    either zero (``None``) or the dual of ``first | second``: the cut points
    must be exactly the ``i+1`` shared vertices, and walking the union in
    order the stretches between cut points must alternate first-only,
    second-only, first-only, ...
    """
    if i < 0:
        return None
    common = first & second
    if common.bit_count() != i + 1:
        return None
    union = first | second
    side = 0  # 0: inside an even interval, 1: inside an odd one
    for v in bits(union):
        if (common >> v) & 1:
            side ^= 1
            continue
        owner = 0 if (first >> v) & 1 else 1
        if owner != side:
            return None
    return union


class ClassicalCohomology:
    """``H^k`` of a face set, optionally relative to a subcomplex."""

    def __init__(self, f: FaceSet, k: int, relative_to: Optional[Iterable[str]] = None):
        self.face_set = f
        self.degree = k
        rel = set(relative_to or ())
        self.relative_to = frozenset(rel)
        self._quotient = QuotientSpace(
            _relative_coboundaries(f, k, rel), _relative_cocycles(f, k, rel)
        )

    @property
    def dim(self) -> int:
        return self._quotient.dim

    @property
    def representatives(self) -> list[Cochain]:
        return [Cochain(self.face_set, self.degree, r) for r in self._quotient.representatives]

    def coordinates(self, z: Cochain) -> Optional[int]:
        """Coordinates of the class of a cocycle, or None if ``z`` is not one."""
        return self._quotient.coordinates(z.values)

    def lift(self, coords: int) -> Cochain:
        return Cochain(self.face_set, self.degree, self._quotient.lift(coords))


def _relative_mask(f: FaceSet, k: int, rel: set) -> int:
    m = 0
    for j, sid in enumerate(f.of_dim(k)):
        if sid in rel:
            m |= 1 << j
    return m


def _relative_cocycles(f: FaceSet, k: int, rel: set) -> SubspacePresentation:
    m = f.coboundary_matrix(k)
    ncols = len(f.of_dim(k))
    extra = tuple(1 << j for j in bits(_relative_mask(f, k, rel)))
    _, ker = rank_and_kernel(BitMatrix(m.nrows + len(extra), ncols, m.rows + extra))
    return ker


def _relative_coboundaries(f: FaceSet, k: int, rel: set) -> SubspacePresentation:
    ncols = len(f.of_dim(k))
    if k == 0:
        return SubspacePresentation.zero(ncols)
    prev = _relative_cochain_basis(f, k - 1, rel)
    cols = f.coboundary_matrix(k - 1)
    return SubspacePresentation.span((cols.matvec(x) for x in prev), ncols)


def _relative_cochain_basis(f: FaceSet, k: int, rel: set) -> list[int]:
    n = len(f.of_dim(k))
    mask = _relative_mask(f, k, rel)
    return [1 << j for j in range(n) if not (mask >> j) & 1]


def classical_cohomology(f: FaceSet, relative_to: Optional[Iterable[str]] = None) -> list[ClassicalCohomology]:
    """``H^k(f)`` (or ``H^k(f, sub)``) for ``k = 0..dim f``."""
    rel = list(relative_to or ())
    return [ClassicalCohomology(f, k, rel) for k in range(f.dim + 1)]


def classical_sq(h_src: ClassicalCohomology, h_dst: ClassicalCohomology, coords: int, i: int) -> int:
    """Coordinates of ``Sq^i`` of the class ``coords`` of ``h_src`` in ``h_dst``."""
    k = h_src.degree
    if i < 0 or i > k or coords == 0:
        return 0
    if h_dst.degree != k + i:
        raise ValueError("target degree must be source degree + i")
    z = h_src.lift(coords)
    w = cup_i(z, z, k - i)
    out = h_dst.coordinates(w)
    if out is None:
        raise AssertionError("square of a cocycle is not a cocycle")
    return out


def restriction_kernel_dim(f: FaceSet, sub: Iterable[str], k: int) -> int:
    """Dimension of the kernel of ``H^k(f) -> H^k(sub)``."""
    sub = list(sub)
    g = f.subcomplex(sub)
    hf = ClassicalCohomology(f, k)
    hg = ClassicalCohomology(g, k)
    images = []
    for z in hf.representatives:
        w = Cochain.from_ids(g, k, [s for s in z.support() if s in g])
        images.append(hg.coordinates(w))
    rank = len(SubspacePresentation.span(images, hg.dim).basis)
    return hf.dim - rank


def subcomplex_closure(f: FaceSet, ids: Iterable[str]) -> set[str]:
    out: set[str] = set()
    stack = list(ids)
    while stack:
        s = stack.pop()
        if s in out:
            continue
        out.add(s)
        stack.extend(f.faces(s))
    return out


def boundary_components(f: FaceSet) -> list[list[str]]:
    """Boundary of a pure manifold-with-boundary, split into components.

    The boundary is generated by the codimension-one simplices that are a
    face of exactly one top simplex.  Components are listed by their
    smallest simplex id.
    """
    top = f.dim
    count: dict[str, int] = {}
    for sid in f.of_dim(top):
        for g in f.faces(sid):
            count[g] = count.get(g, 0) + 1
    gens = sorted(g for g, c in count.items() if c == 1)
    bdry = subcomplex_closure(f, gens)
    parent = {s: s for s in bdry}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for s in bdry:
        for g in f.faces(s):
            a, b = find(s), find(g)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[str, list[str]] = {}
    for s in sorted(bdry):
        comps.setdefault(find(s), []).append(s)
    return sorted(comps.values(), key=lambda c: c[0])


def prism(f: FaceSet) -> FaceSet:
    """The product ``f x [0,1]`` with its standard (staircase) triangulation.

    A simplex over ``tau`` is a strictly increasing chain in
    ``{0..dim tau} x {0,1}`` whose projection hits every vertex of ``tau``.
    Its id is ``"tau@v.t,v.t,..."``; the two ends are the chains with all
    ``t = 0`` or all ``t = 1``.
    """
    out: dict[str, tuple[int, tuple[str, ...]]] = {}
    for sid, (d, _) in f.simplices.items():
        for chain in _chains(d):
            name = _chain_name(sid, chain)
            faces = () if len(chain) == 1 else tuple(
                _chain_face(f, sid, chain, p) for p in range(len(chain))
            )
            out[name] = (len(chain) - 1, faces)
    return FaceSet(out)


def prism_end(f: FaceSet, level: int) -> list[str]:
    """Ids of ``f x {level}`` inside ``prism(f)``."""
    return sorted(
        _chain_name(sid, tuple((v, level) for v in range(d + 1)))
        for sid, (d, _) in f.simplices.items()
    )


def _chains(d: int):
    # every vertex appears at level 0, level 1, or (for at most one vertex
    # where the chain climbs) at both
    for switch in range(d + 2):
        base = [(v, 0) for v in range(switch)] + [(v, 1) for v in range(switch, d + 1)]
        yield tuple(base)
        if switch <= d:
            yield tuple([(v, 0) for v in range(switch + 1)] + [(v, 1) for v in range(switch, d + 1)])


def _chain_name(sid: str, chain) -> str:
    return sid + "@" + ",".join(f"{v}.{t}" for v, t in chain)


def _chain_face(f: FaceSet, sid: str, chain, p: int) -> str:
    rest = chain[:p] + chain[p + 1:]
    v = chain[p][0]
    if any(w == v for w, _ in rest):
        return _chain_name(sid, rest)
    face = f.faces(sid)[v]
    return _chain_name(face, tuple((w - (w > v), t) for w, t in rest))
