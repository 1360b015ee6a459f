"""The relation suite: algebraic identities checked on actual complexes.

Every check returns a :class:`CheckResult`; a failing check carries the
first counterexample it met.  Randomized checks draw from a
``random.Random`` seeded by the caller, so reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .blowup import BlowUp, restriction_map
from .cupi import cup_i_bits
from .filtered import INF, FilteredFaceSet, Perversity
from .squares import InvariantError, blowup_of, induced_map, perverse_cohomology, steenrod_square

__all__ = [
    "CheckResult",
    "default_perversities",
    "verify_complex",
    "format_report",
    "CHECK_NAMES",
]

GRID_VALUES = (-1, 0, 1, 2, 3, INF)

CHECK_NAMES = (
    "coboundary",
    "Leibniz",
    "niceness",
    "top-commutativity",
    "subadditivity",
    "perversity contract",
    "monotonicity",
    "naturality",
    "representative independence",
    "Goresky-Pardon bound",
    "Cartan",
    "Adem Sq1Sq1",
    "Adem Sq1Sq2",
)


@dataclass
class CheckResult:
    complex: str
    name: str
    checked: int = 0
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def fail(self, msg: str) -> None:
        if self.failure is None:
            self.failure = msg


def default_perversities(k: FilteredFaceSet) -> list[Perversity]:
    """All values in ``GRID_VALUES`` on the depths that actually occur,
    zero elsewhere (other depths do not constrain anything)."""
    depths = k.relevant_depths()
    out = []
    for combo in itertools.product(GRID_VALUES, repeat=len(depths)):
        vals = [0] * k.n
        for ell, v in zip(depths, combo):
            vals[ell - 1] = v
        out.append(Perversity(tuple(vals)))
    if not depths:
        out.append(Perversity.infinite(k.n))
    return out


def _le(a: tuple, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _fmt_vec(v: Iterable) -> str:
    return "(" + ",".join("-inf" if x == -INF else "inf" if x == INF else str(int(x)) for x in v) + ")"


class _Ctx:
    def __init__(self, name: str, k: FilteredFaceSet, rng: random.Random):
        self.name = name
        self.k = k
        self.b: BlowUp = blowup_of(k)
        self.rng = rng
        self.top = self.b.top_degree

    def rand(self, d: int) -> int:
        return self.rng.getrandbits(self.b.dim(d)) if self.b.dim(d) else 0

    def rand_in(self, basis: tuple) -> int:
        x = 0
        for v in basis:
            if self.rng.getrandbits(1):
                x ^= v
        return x

    def cup(self, a: int, x: int, c: int, y: int, i: int) -> int:
        return cup_i_bits(self.b, a, x, c, y, i)

    def d(self, a: int, x: int) -> int:
        return self.b.coboundary_bits(a, x)


def _check_coboundary(ctx: _Ctx, perversities) -> CheckResult:
    r = CheckResult(ctx.name, "coboundary")
    b = ctx.b
    for a in range(ctx.top + 1):
        if not (b.delta(a + 1) @ b.delta(a)).is_zero():
            r.fail(f"d d != 0 from degree {a}")
        r.checked += 1
        for p in perversities:
            for x in b.intersection_subcomplex(a, p).basis:
                y = ctx.d(a, x)
                if not b.intersection_subcomplex(a + 1, p).contains(y):
                    r.fail(f"d leaves N_p: degree {a}, p={p}, section {x:#x}")
                r.checked += 1
    return r


def _check_leibniz(ctx: _Ctx, pairs: int) -> list[CheckResult]:
    leib = CheckResult(ctx.name, "Leibniz")
    nice = CheckResult(ctx.name, "niceness")
    topc = CheckResult(ctx.name, "top-commutativity")
    sub = CheckResult(ctx.name, "subadditivity")
    b = ctx.b
    for _ in range(pairs):
        a = ctx.rng.randint(0, ctx.top)
        c = ctx.rng.randint(0, ctx.top)
        x, y = ctx.rand(a), ctx.rand(c)
        dx, dy = ctx.d(a, x), ctx.d(c, y)
        px, py = b.perverse_degree_bits(a, x), b.perverse_degree_bits(c, y)
        for i in range(0, min(a, c) + 2):
            deg = a + c - i
            if deg < 0:
                continue
            prod = ctx.cup(a, x, c, y, i)
            lhs = ctx.d(deg, prod)
            rhs = (ctx.cup(a, x, c, y, i - 1) ^ ctx.cup(c, y, a, x, i - 1)
                   ^ ctx.cup(a + 1, dx, c, y, i) ^ ctx.cup(a, x, c + 1, dy, i))
            leib.checked += 1
            if lhs != rhs:
                leib.fail(f"degrees ({a},{c}), i={i}, x={x:#x}, y={y:#x}")
            if i > min(a, c):
                nice.checked += 1
                if prod:
                    nice.fail(f"x cup_{i} y != 0 above the minimal degree: ({a},{c}), x={x:#x}, y={y:#x}")
            pp = b.perverse_degree_bits(deg, prod)
            bound = tuple(u + v for u, v in zip(px, py))
            sub.checked += 1
            if not _le(pp, bound):
                sub.fail(f"|x cup_{i} y| = {_fmt_vec(pp)} > {_fmt_vec(bound)}, x={x:#x}, y={y:#x}")
        # the top products
        nice.checked += 1
        if ctx.cup(a, x, a, x, a) != x:
            nice.fail(f"x cup_{a} x != x for x={x:#x} in degree {a}")
        z = ctx.rand(a)
        topc.checked += 1
        if ctx.cup(a, x, a, z, a) != ctx.cup(a, z, a, x, a):
            topc.fail(f"x cup_{a} y != y cup_{a} x for x={x:#x}, y={z:#x}")
    return [leib, nice, topc, sub]


def _check_contract(ctx: _Ctx, perversities, samples: int) -> CheckResult:
    r = CheckResult(ctx.name, "perversity contract")
    b = ctx.b
    ps = perversities[: min(len(perversities), 6)]
    for p, q in itertools.product(ps, repeat=2):
        s = p + q
        for _ in range(samples):
            a = ctx.rng.randint(0, ctx.top)
            c = ctx.rng.randint(0, ctx.top)
            x = ctx.rand_in(b.intersection_subcomplex(a, p).basis)
            y = ctx.rand_in(b.intersection_subcomplex(c, q).basis)
            for i in range(0, min(a, c) + 1):
                prod = ctx.cup(a, x, c, y, i)
                r.checked += 1
                if not b.intersection_subcomplex(a + c - i, s).contains(prod):
                    r.fail(f"p={p}, q={q}, degrees ({a},{c}), i={i}: product leaves N_(p+q)")
    return r


def _check_monotonicity(ctx: _Ctx, perversities) -> CheckResult:
    r = CheckResult(ctx.name, "monotonicity")
    b = ctx.b
    for p, q in itertools.product(perversities, repeat=2):
        if not p <= q:
            continue
        for a in range(ctx.top + 1):
            r.checked += 1
            if not b.intersection_subcomplex(a, p).issubspace(b.intersection_subcomplex(a, q)):
                r.fail(f"N^{a}_{p} is not inside N^{a}_{q}")
    return r


def _check_naturality(ctx: _Ctx, pairs: int) -> CheckResult:
    r = CheckResult(ctx.name, "naturality")
    maximal = ctx.b.maximal
    if len(maximal) < 2:
        return r
    keep = maximal[: (len(maximal) + 1) // 2]
    small = BlowUp(ctx.k.sub(keep))
    res = restriction_map(ctx.b, small)
    for _ in range(pairs):
        a = ctx.rng.randint(0, ctx.top)
        c = ctx.rng.randint(0, ctx.top)
        x, y = ctx.rand(a), ctx.rand(c)
        for i in range(0, min(a, c) + 1):
            deg = a + c - i
            lhs = res(deg, ctx.cup(a, x, c, y, i))
            rhs = cup_i_bits(small, a, res(a, x), c, res(c, y), i)
            r.checked += 1
            if lhs != rhs:
                r.fail(f"restriction does not commute with cup_{i}: x={x:#x}, y={y:#x}")
        r.checked += 1
        if res(a + 1, ctx.d(a, x)) != small.coboundary_bits(a, res(a, x)):
            r.fail(f"restriction does not commute with d: x={x:#x}")
    return r


def _classes(ctx: _Ctx, p: Perversity):
    for a in range(ctx.top + 1):
        h = perverse_cohomology(ctx.b, p, a)
        for j in range(h.dim):
            yield a, h, j


def _check_squares(ctx: _Ctx, perversities) -> list[CheckResult]:
    rep = CheckResult(ctx.name, "representative independence")
    gp = CheckResult(ctx.name, "Goresky-Pardon bound")
    a11 = CheckResult(ctx.name, "Adem Sq1Sq1")
    a12 = CheckResult(ctx.name, "Adem Sq1Sq2")
    b = ctx.b
    for p in perversities:
        for a, h, j in _classes(ctx, p):
            coords = 1 << j
            for i in range(0, a + 1):
                try:
                    sq = steenrod_square(b, p, a, coords, i)
                except InvariantError as e:
                    gp.fail(f"Sq^{i} on class {j} of H^{a}_{p}: {e}")
                    continue
                gp.checked += 1
                target = p.lift(i)
                if not _le(sq.witness_perverse_degree, target.values):
                    gp.fail(f"witness degree {_fmt_vec(sq.witness_perverse_degree)} above {target}")
                m = induced_map(b, target, p.double(), a + i)
                if m.matvec(sq.target_coords) != sq.image_in_2p:
                    gp.fail(f"Sq^{i} on class {j} of H^{a}_{p}: H_L -> H_2p does not commute")
                # a second representative of the same class
                if a > 0:
                    prev = b.intersection_subcomplex(a - 1, p).basis
                    other = h.lift(coords) ^ ctx.d(a - 1, ctx.rand_in(prev))
                    try:
                        sq2 = steenrod_square(b, p, a, coords, i, representative=other)
                    except InvariantError as e:
                        rep.fail(f"Sq^{i} on a second representative: {e}")
                        continue
                    rep.checked += 1
                    if sq2.target_coords != sq.target_coords:
                        rep.fail(f"Sq^{i} of class {j} of H^{a}_{p} depends on the representative")
            # Adem: Sq1 Sq1 = 0
            s1 = steenrod_square(b, p, a, coords, 1)
            if a >= 1:
                t = steenrod_square(b, s1.target_perversity, a + 1, s1.target_coords, 1)
                a11.checked += 1
                if t.target_coords:
                    a11.fail(f"Sq1 Sq1 != 0 on class {j} of H^{a}_{p}")
            # Adem: Sq1 Sq2 = Sq3
            if a >= 2:
                s2 = steenrod_square(b, p, a, coords, 2)
                left = steenrod_square(b, s2.target_perversity, a + 2, s2.target_coords, 1)
                right = steenrod_square(b, p, a, coords, 3)
                r = p.lift(2).lift(1)
                if not right.target_perversity <= r:
                    r = r.join(right.target_perversity)
                wl = perverse_cohomology(b, left.target_perversity, a + 3).lift(left.target_coords)
                wr = perverse_cohomology(b, right.target_perversity, a + 3).lift(right.target_coords)
                c = perverse_cohomology(b, r, a + 3).coordinates(wl ^ wr)
                a12.checked += 1
                if c != 0:
                    a12.fail(f"Sq1 Sq2 != Sq3 on class {j} of H^{a}_{p} (compared in {r})")
    return [rep, gp, a11, a12]


def _check_cartan(ctx: _Ctx, perversities) -> CheckResult:
    r = CheckResult(ctx.name, "Cartan")
    b = ctx.b
    ps = perversities[: min(len(perversities), 6)]
    for p, q in itertools.product(ps, repeat=2):
        s = p + q
        for (a, hx, jx), (c, hy, jy) in itertools.product(list(_classes(ctx, p)), list(_classes(ctx, q))):
            if a + c > ctx.top:
                continue
            zx, zy = hx.lift(1 << jx), hy.lift(1 << jy)
            prod = ctx.cup(a, zx, c, zy, 0)
            hp = perverse_cohomology(b, s, a + c)
            pc = hp.coordinates(prod)
            if pc is None:
                r.fail(f"x y is not a (p+q)-cocycle for classes {jx} of H^{a}_{p}, {jy} of H^{c}_{q}")
                continue
            for i in range(0, a + c + 1):
                rbar = s.lift(i)
                lhs = steenrod_square(b, s, a + c, pc, i).witness if pc else 0
                rhs = 0
                for j in range(0, i + 1):
                    u = steenrod_square(b, p, a, 1 << jx, j)
                    v = steenrod_square(b, q, c, 1 << jy, i - j)
                    if u.witness and v.witness:
                        rhs ^= ctx.cup(a + j, u.witness, c + i - j, v.witness, 0)
                coords = perverse_cohomology(b, rbar, a + c + i).coordinates(lhs ^ rhs)
                r.checked += 1
                if coords != 0:
                    r.fail(f"Sq^{i}(xy) != sum Sq^j x Sq^(i-j) y for classes {jx} of H^{a}_{p}, {jy} of H^{c}_{q}")
    return r


def verify_complex(
    name: str,
    k: FilteredFaceSet,
    perversities: Optional[list[Perversity]] = None,
    seed: int = 0,
    pairs: int = 200,
) -> list[CheckResult]:
    rng = random.Random(f"{seed}:{name}")
    ctx = _Ctx(name, k, rng)
    ps = default_perversities(k) if perversities is None else list(perversities)

    def guarded(names, fn, *args):
        try:
            out = fn(*args)
        except InvariantError as e:
            return [CheckResult(name, nm, 0, f"internal invariant failed: {e}") for nm in names]
        return out if isinstance(out, list) else [out]

    res = guarded(["coboundary"], _check_coboundary, ctx, ps)
    res += guarded(["Leibniz", "niceness", "top-commutativity", "subadditivity"], _check_leibniz, ctx, pairs)
    res += guarded(["perversity contract"], _check_contract, ctx, ps, max(1, pairs // 40))
    res += guarded(["monotonicity"], _check_monotonicity, ctx, ps)
    res += guarded(["naturality"], _check_naturality, ctx, max(1, pairs // 10))
    squares = guarded(
        ["representative independence", "Goresky-Pardon bound", "Adem Sq1Sq1", "Adem Sq1Sq2"],
        _check_squares, ctx, ps,
    )
    res += squares[:2]
    res += guarded(["Cartan"], _check_cartan, ctx, ps)
    res += squares[2:]
    return res


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.complex:<22} {r.name:<28} checked={r.checked}"
        if not r.passed:
            line += f"  witness: {r.failure}"
        lines.append(line)
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results)} checks, {failed} failed")
    return "\n".join(lines) + "\n"
