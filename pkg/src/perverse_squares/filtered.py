"""Filtered face sets, loose perversities and the builders used to make them.

A filtered simplex has a block vector ``(j_0, ..., j_n)``: it is the join of
``n+1`` (possibly empty) simplices, block ``k`` holding ``j_k + 1`` vertices.
Vertices are numbered globally with block 0 first, and ``faces[v]`` deletes
global vertex ``v``, which decrements the block containing it.  Block 0 is
the deepest stratum; simplices with ``j_n >= 0`` are *regular*.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

from .complex import FaceSet, FaceSetError, Violation, subcomplex_closure

__all__ = [
    "INF",
    "PERVERSITY_FLOOR",
    "FilteredSimplex",
    "FilteredFaceSet",
    "Perversity",
    "ParseError",
    "parse",
    "parse_file",
    "serialize",
    "validate_filtered",
    "trivial_filtration",
    "cone",
    "suspension",
    "cone_off_boundary",
    "block_of_vertex",
]

INF = math.inf
PERVERSITY_FLOOR = -10**6


class ParseError(ValueError):
    """Malformed input text (bad JSON or wrong document shape)."""


def block_of_vertex(blocks: Sequence[int], v: int) -> tuple[int, int]:
    """``(block, position inside block)`` of global vertex ``v``."""
    for k, j in enumerate(blocks):
        if v <= j:
            return k, v
        v -= j + 1
    raise IndexError("vertex position out of range")


@dataclass(frozen=True)
class FilteredSimplex:
    id: str
    blocks: tuple[int, ...]
    faces: tuple[str, ...]

    @property
    def dim(self) -> int:
        return sum(j + 1 for j in self.blocks) - 1

    @property
    def regular(self) -> bool:
        return self.blocks[-1] >= 0

    def face_blocks(self, v: int) -> tuple[int, ...]:
        k, _ = block_of_vertex(self.blocks, v)
        return self.blocks[:k] + (self.blocks[k] - 1,) + self.blocks[k + 1:]


class FilteredFaceSet:
    """A finite filtered face set of formal dimension ``n``."""

    def __init__(self, n: int, simplices: Iterable[FilteredSimplex] | Mapping[str, FilteredSimplex]):
        self.n = int(n)
        if isinstance(simplices, Mapping):
            simplices = simplices.values()
        self.simplices: dict[str, FilteredSimplex] = {s.id: s for s in simplices}

    def __len__(self) -> int:
        return len(self.simplices)

    def __getitem__(self, sid: str) -> FilteredSimplex:
        return self.simplices[sid]

    def __contains__(self, sid: str) -> bool:
        return sid in self.simplices

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FilteredFaceSet)
            and self.n == other.n
            and self.simplices == other.simplices
        )

    def __repr__(self) -> str:
        return f"FilteredFaceSet(n={self.n}, simplices={len(self)}, regular={len(self.regular_ids)})"

    @cached_property
    def regular_ids(self) -> tuple[str, ...]:
        """Ids of the simplices of ``K_+``, sorted."""
        return tuple(sorted(s for s, x in self.simplices.items() if x.regular))

    @cached_property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices.values()), default=-1)

    def validated(self) -> "FilteredFaceSet":
        problems = validate_filtered(self)
        if problems:
            raise FaceSetError(problems)
        return self

    def underlying(self) -> FaceSet:
        """Forget the filtration."""
        return FaceSet({s.id: (s.dim, s.faces) for s in self.simplices.values()})

    def sub(self, ids: Iterable[str]) -> "FilteredFaceSet":
        """Sub filtered face set generated by ``ids`` (closed under faces)."""
        keep = subcomplex_closure(self.underlying(), ids)
        return FilteredFaceSet(self.n, (self.simplices[s] for s in keep))

    def relevant_depths(self) -> tuple[int, ...]:
        """Depths ``l`` whose block ``n-l`` is nonempty in some regular simplex."""
        out = set()
        for sid in self.regular_ids:
            b = self.simplices[sid].blocks
            for ell in range(1, self.n + 1):
                if b[self.n - ell] >= 0:
                    out.add(ell)
        return tuple(sorted(out))


def validate_filtered(k: FilteredFaceSet) -> list[Violation]:
    out: list[Violation] = []
    simp = k.simplices
    for sid in sorted(simp):
        s = simp[sid]
        if len(s.blocks) != k.n + 1:
            out.append(Violation(sid, "block count", f"{len(s.blocks)} blocks, expected {k.n + 1}"))
            continue
        if any(j < -1 for j in s.blocks):
            out.append(Violation(sid, "block value", "block dimensions must be >= -1"))
            continue
        if s.dim < 0:
            out.append(Violation(sid, "empty simplex", "total vertex count must be >= 1"))
            continue
        expected = s.dim + 1 if s.dim > 0 else 0
        if len(s.faces) != expected:
            out.append(Violation(sid, "face count", f"{len(s.faces)} faces, expected {expected}"))
            continue
        bad = False
        for v, g in enumerate(s.faces):
            if g not in simp:
                out.append(Violation(sid, "unknown face", f"face {v} is {g!r}"))
                bad = True
            elif simp[g].blocks != s.face_blocks(v):
                out.append(Violation(
                    sid, "filtration-decrement",
                    f"face {v} ({g}) has blocks {list(simp[g].blocks)}, expected {list(s.face_blocks(v))}",
                ))
                bad = True
        if bad:
            continue
        for b in range(len(s.faces)):
            for a in range(b):
                left = simp[s.faces[b]].faces
                right = simp[s.faces[a]].faces
                if left and right and left[a] != right[b - 1]:
                    out.append(Violation(sid, "simplicial identity", f"d{a} d{b} != d{b - 1} d{a}"))
                    bad = True
                    break
            if bad:
                break
    return out


# ---------------------------------------------------------------- JSON format

def _as_obj(k: FilteredFaceSet) -> dict:
    return {
        "formal_dimension": k.n,
        "simplices": {
            sid: {"blocks": list(s.blocks), "faces": list(s.faces)}
            for sid, s in sorted(k.simplices.items())
        },
    }


def serialize(k: Union[FilteredFaceSet, FaceSet]) -> str:
    """Canonical JSON text: ids sorted, two-space indent, trailing newline."""
    obj = k.to_json_obj() if isinstance(k, FaceSet) else _as_obj(k)
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse(text: str, validate: bool = True) -> FilteredFaceSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"parse error: {e}") from None
    if not isinstance(obj, dict) or "formal_dimension" not in obj or "simplices" not in obj:
        raise ParseError("parse error: expected an object with 'formal_dimension' and 'simplices'")
    n = obj["formal_dimension"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("parse error: 'formal_dimension' must be a nonnegative integer")
    raw = obj["simplices"]
    if not isinstance(raw, dict):
        raise ParseError("parse error: 'simplices' must be an object")
    simplices = []
    for sid, entry in raw.items():
        if not sid:
            raise ParseError("parse error: simplex ids must be nonempty")
        if not isinstance(entry, dict) or "blocks" not in entry or "faces" not in entry:
            raise ParseError(f"parse error: simplex {sid!r} needs 'blocks' and 'faces'")
        blocks, faces = entry["blocks"], entry["faces"]
        if not isinstance(blocks, list) or not all(isinstance(j, int) for j in blocks):
            raise ParseError(f"parse error: simplex {sid!r} has non-integer blocks")
        if not isinstance(faces, list) or not all(isinstance(g, str) for g in faces):
            raise ParseError(f"parse error: simplex {sid!r} has non-string faces")
        simplices.append(FilteredSimplex(sid, tuple(blocks), tuple(faces)))
    k = FilteredFaceSet(n, simplices)
    return k.validated() if validate else k


def parse_file(path) -> FilteredFaceSet:
    with open(path) as fh:
        return parse(fh.read())


def face_set_of(k: FilteredFaceSet) -> FaceSet:
    """Plain face set stored in the filtered format (formal dimension 0)."""
    if k.n != 0:
        raise ValueError("a plain face set is stored with formal_dimension 0")
    return k.underlying()


# ---------------------------------------------------------------- perversities

def _perv_value(x) -> float | int:
    if isinstance(x, str):
        t = x.strip().lower()
        if t in ("inf", "+inf", "∞"):
            return INF
        x = int(t)
    if x == INF:
        return INF
    if isinstance(x, float) and not x.is_integer():
        raise ValueError(f"perversity values must be integers or inf, got {x}")
    return max(int(x), PERVERSITY_FLOOR)


@dataclass(frozen=True)
class Perversity:
    """A loose perversity: ``values[l-1]`` is ``p(l)`` for ``l = 1..n``.

    Entries are integers (clamped below at ``PERVERSITY_FLOOR``) or ``INF``.
    Comparison operators are pointwise, so ``<=`` is only a partial order.
    """

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_perv_value(v) for v in self.values))

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Perversity":
        parts = [t for t in text.split(",") if t.strip()] if text.strip() else []
        p = cls(tuple(parts))
        if n is not None and p.n != n:
            raise ValueError(f"perversity {text!r} has {p.n} entries, expected {n}")
        return p

    @classmethod
    def constant(cls, n: int, value) -> "Perversity":
        return cls((value,) * n)

    @classmethod
    def zero(cls, n: int) -> "Perversity":
        return cls.constant(n, 0)

    @classmethod
    def infinite(cls, n: int) -> "Perversity":
        return cls.constant(n, INF)

    @classmethod
    def top(cls, n: int) -> "Perversity":
        return cls(tuple(max(ell - 2, 0) for ell in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, ell: int):
        if ell == 0:
            return 0
        return self.values[ell - 1]

    def _check(self, other: "Perversity") -> None:
        if self.n != other.n:
            raise ValueError(f"perversities of different lengths {self.n} and {other.n}")

    def __add__(self, other: "Perversity") -> "Perversity":
        self._check(other)
        return Perversity(tuple(a + b for a, b in zip(self.values, other.values)))

    def __le__(self, other: "Perversity") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: "Perversity") -> bool:
        return other <= self

    def __lt__(self, other: "Perversity") -> bool:
        return self <= other and self != other

    def __gt__(self, other: "Perversity") -> bool:
        return other < self

    def double(self) -> "Perversity":
        return self + self

    def lift(self, i: int) -> "Perversity":
        """``l -> min(2 p(l), p(l) + i)``, the range of ``Sq^i`` on ``H_p``."""
        return Perversity(tuple(min(2 * a, a + i) for a in self.values))

    def meet(self, other: "Perversity") -> "Perversity":
        self._check(other)
        return Perversity(tuple(min(a, b) for a, b in zip(self.values, other.values)))

    def join(self, other: "Perversity") -> "Perversity":
        self._check(other)
        return Perversity(tuple(max(a, b) for a, b in zip(self.values, other.values)))

    def is_perversity(self) -> bool:
        seq = (0,) + self.values
        return all(a <= b <= a + 1 for a, b in zip(seq, seq[1:]))

    def is_gm(self) -> bool:
        return self.is_perversity() and self(1) == 0 and (self.n < 2 or self(2) == 0)

    def __str__(self) -> str:
        return ",".join(_fmt(v) for v in self.values)


def _fmt(v) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(int(v))


def format_degree(v) -> str:
    return _fmt(v)


# ---------------------------------------------------------------- builders

def _regular_blocks(n: int, d: int) -> tuple[int, ...]:
    return (-1,) * n + (d,)


def _coned_blocks(n: int, d: int) -> tuple[int, ...]:
    if n == 0:
        raise ValueError("coning needs formal dimension >= 1")
    return (0,) + (-1,) * (n - 1) + (d,)


def _apex_blocks(n: int) -> tuple[int, ...]:
    return (0,) + (-1,) * n


def trivial_filtration(f: FaceSet, n: int) -> FilteredFaceSet:
    """Every simplex placed in the regular block, ids unchanged."""
    return FilteredFaceSet(n, (
        FilteredSimplex(sid, _regular_blocks(n, d), faces)
        for sid, (d, faces) in f.simplices.items()
    ))


def _add_cone(out: list, f: FaceSet, ids: Iterable[str], n: int, base: str, cone_prefix: str, apex: str) -> None:
    """Append the cone on the subcomplex ``ids`` of ``f`` (already present as
    ``base + id``) with apex ``apex`` and coned simplices ``cone_prefix + id``."""
    out.append(FilteredSimplex(apex, _apex_blocks(n), ()))
    for sid in ids:
        d, faces = f.simplices[sid]
        if d == 0:
            cfaces = (base + sid, apex)
        else:
            cfaces = (base + sid,) + tuple(cone_prefix + g for g in faces)
        # global position 0 is the apex (block 0); deleting it gives the base
        out.append(FilteredSimplex(cone_prefix + sid, _coned_blocks(n, d), cfaces))


def cone_off_boundary(
    w: FaceSet,
    boundary_components: Sequence[Iterable[str]],
    n: Optional[int] = None,
) -> FilteredFaceSet:
    """Attach a cone to each listed subcomplex of ``w``.

    ``w`` is trivially filtered (ids prefixed ``w:``); component ``u`` gets
    coned simplices ``c{u}:<id>`` and apex ``apex{u}``, the apex sitting in
    block 0.  ``n`` defaults to ``dim w``.
    """
    n = w.dim if n is None else n
    comps = [sorted(set(c)) for c in boundary_components]
    owner: dict[str, int] = {}
    problems = []
    for u, comp in enumerate(comps):
        for sid in comp:
            if sid not in w:
                problems.append(Violation(sid, "unknown simplex", f"component {u}"))
                continue
            if sid in owner:
                problems.append(Violation(sid, "overlapping components", f"components {owner[sid]} and {u}"))
            owner[sid] = u
    for u, comp in enumerate(comps):
        members = set(comp)
        for sid in comp:
            if sid in w:
                for g in w.faces(sid):
                    if g not in members:
                        problems.append(Violation(sid, "face escapes component", f"face {g} not in component {u}"))
    if problems:
        raise FaceSetError(problems)
    out = [FilteredSimplex("w:" + sid, _regular_blocks(n, d), tuple("w:" + g for g in faces))
           for sid, (d, faces) in w.simplices.items()]
    for u, comp in enumerate(comps):
        _add_cone(out, w, comp, n, "w:", f"c{u}:", f"apex{u}")
    return FilteredFaceSet(n, out)


def cone(k: FaceSet, n: Optional[int] = None) -> FilteredFaceSet:
    """The closed cone on ``k``, apex in the singular stratum.

    ``n`` defaults to ``dim k + 1``.  ``|cone(k)| = 2|k| + 1``.
    """
    n = k.dim + 1 if n is None else n
    return cone_off_boundary(k, [list(k.simplices)], n)


def suspension(f: FaceSet, n: Optional[int] = None) -> FilteredFaceSet:
    """Two cones on ``f`` glued along ``f``; both apexes are singular.

    Ids: ``s:<id>`` for ``f``, ``top:<id>``/``bot:<id>`` for the cones,
    ``top``/``bot`` for the apexes.
    """
    n = f.dim + 1 if n is None else n
    out = [FilteredSimplex("s:" + sid, _regular_blocks(n, d), tuple("s:" + g for g in faces))
           for sid, (d, faces) in f.simplices.items()]
    ids = list(f.simplices)
    _add_cone(out, f, ids, n, "s:", "top:", "top")
    _add_cone(out, f, ids, n, "s:", "bot:", "bot")
    return FilteredFaceSet(n, out)
