"""The acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import math
import time

import pytest

from acceptance_log import record
from perverse_squares.blowup import section_from_cochain
from perverse_squares.complex import ClassicalCohomology, boundary_components, classical_sq, prism, prism_end
from perverse_squares.corpus import build, corpus, surface
from perverse_squares.filtered import Perversity
from perverse_squares.gf2 import BitMatrix
from perverse_squares.isolated import PullbackModel, formula_dims, lift_scalar
from perverse_squares.relations import format_report, verify_complex
from perverse_squares.squares import blowup_of, class_count, perverse_cohomology, square_matrix, steenrod_square

INF = math.inf


def _perversity(n, top, rest=0):
    return Perversity((rest,) * (n - 1) + (top,))


# ---------------------------------------------------------------- 1

def _transport(b, f, p, d):
    """Matrix sending classical H^d(f) to H^d_p of the trivial filtration."""
    h = ClassicalCohomology(f, d)
    dst = perverse_cohomology(b, p, d)
    cols = [dst.coordinates(section_from_cochain(b, f, d, r.values)) for r in h.representatives]
    assert None not in cols
    return BitMatrix.from_columns(cols, dst.dim)


def test_criterion_1_trivial_filtration_matches_classical():
    start = time.perf_counter()
    problems = []
    checked = 0
    for name in ["point", "circle", "torus", "klein", "rp2"]:
        f = surface(name)
        k = build("trivial", name)
        b = blowup_of(k)
        for values in itertools.product([-1, 0, 1, 2, INF], repeat=k.n):
            p = Perversity(values)
            for d in range(f.dim + 1):
                classical = ClassicalCohomology(f, d)
                t = _transport(b, f, p, d)
                if t.nrows != classical.dim or t.rank() != classical.dim:
                    problems.append(f"{name} {p} H^{d}: transport is not an isomorphism")
                    continue
                for i in range(0, d + 1):
                    if d + i > f.dim:
                        continue
                    target = ClassicalCohomology(f, d + i)
                    sq_classical = BitMatrix.from_columns(
                        [classical_sq(classical, target, 1 << j, i) for j in range(classical.dim)], target.dim)
                    lhs = square_matrix(b, p, d, i) @ t
                    rhs = _transport(b, f, p.lift(i), d + i) @ sq_classical
                    checked += 1
                    if lhs != rhs:
                        problems.append(f"{name} {p} Sq^{i} on H^{d}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    record(1, "trivial filtration equals classical cohomology and squares", ok,
           f"{checked} square matrices, {elapsed:.1f}s" + (f"; {problems[:3]}" if problems else ""))
    assert not problems and elapsed < 30


# ---------------------------------------------------------------- 2

def test_criterion_2_cone_formula():
    start = time.perf_counter()
    problems = []
    for name in ["circle", "torus", "rp2"]:
        f = surface(name)
        classical = [ClassicalCohomology(f, r).dim for r in range(f.dim + 1)]
        k = build("cone", name)
        for top in range(4):
            got = class_count(k, _perversity(k.n, top))
            want = [classical[r] if r <= top and r < len(classical) else 0 for r in range(len(got))]
            if got != want:
                problems.append(f"cone({name}) p(n)={top}: {got} != {want}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    record(2, "cone formula", ok, f"{elapsed:.1f}s" + (f"; {problems}" if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------- 3

def test_criterion_3_isolated_singularity_table():
    start = time.perf_counter()
    problems = []
    w = surface("moebius")
    bd = boundary_components(w)[0]
    k = build("coneoff", "moebius")
    rp2 = surface("rp2")
    wp = prism(rp2)
    ends = prism_end(rp2, 0) + prism_end(rp2, 1)
    s = build("suspension", "rp2")
    for t in range(3):
        got = class_count(k, _perversity(k.n, t))
        want = formula_dims(w, bd, t)
        if got != want:
            problems.append(f"coneoff(moebius) t={t}: {got} != {want}")
        got = class_count(s, _perversity(s.n, t))
        want = formula_dims(wp, ends, t)
        if got != want:
            problems.append(f"suspension(rp2) t={t}: {got} != {want}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    record(3, "isolated singularity table", ok, f"{elapsed:.1f}s" + (f"; {problems}" if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------- 4

def test_criterion_4_nontrivial_squares():
    start = time.perf_counter()
    a = square_matrix(build("trivial", "rp2"), Perversity((0, 0)), 1, 1)
    b = square_matrix(build("suspension", "rp2"), Perversity((0, 0, 0)), 2, 1)
    one = BitMatrix.from_rows([1], 1)
    elapsed = time.perf_counter() - start
    ok = a == one and b == one and elapsed < 30
    record(4, "Sq^1 is [1] on RP2 and on its suspension", ok, f"{a.to_dense().tolist()}, {b.to_dense().tolist()}")
    assert ok


# ---------------------------------------------------------------- 5

def test_criterion_5_pullback_model():
    start = time.perf_counter()
    w = surface("moebius")
    comps = boundary_components(w)
    problems = []
    checked = 0
    for t in [-1, 0, 1, 2, 3, INF]:
        model = PullbackModel(w, comps, t)
        k, p = model.coned(), model.perversity()
        for d in range(w.dim + 1):
            m = model.induced(d)
            if m.nrows != m.ncols or m.rank() != m.nrows:
                problems.append(f"t={t} H^{d}: model and blow-up disagree")
                continue
            for j in range(m.ncols):
                for i in range(0, d + 1):
                    if d + i > w.dim:
                        continue
                    via_model = model._with_cut(lift_scalar(t, i)).induced(d + i).matvec(model.square(d, 1 << j, i))
                    via_blowup = steenrod_square(k, p, d, m.matvec(1 << j), i).target_coords
                    checked += 1
                    if via_model != via_blowup:
                        problems.append(f"t={t} Sq^{i} on class {j} of H^{d}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    record(5, "squares agree with the isolated singularity model", ok,
           f"{checked} squares, {elapsed:.1f}s" + (f"; {problems}" if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------- 6, 7

@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    results = []
    for name, k in corpus():
        results += verify_complex(name, k, seed=0, pairs=200)
    return results, time.perf_counter() - start


def test_criterion_6_goresky_pardon_bound(suite):
    results, elapsed = suite
    gp = [r for r in results if r.name == "Goresky-Pardon bound"]
    checked = sum(r.checked for r in gp)
    failed = [r for r in gp if not r.passed]
    ok = not failed and checked > 0
    record(6, "Goresky-Pardon bound and factorization through 2p", ok,
           f"{checked} squares" + (f"; {failed[0].complex}: {failed[0].failure}" if failed else ""))
    assert ok


def test_criterion_7_property_suite(suite):
    results, elapsed = suite
    failed = [r for r in results if not r.passed]
    unchecked = [r for r in results if r.checked == 0 and r.name not in ("naturality", "Adem Sq1Sq2", "Adem Sq1Sq1",
                                                                          "representative independence", "Cartan")]
    ok = not failed and not unchecked and elapsed < 600
    detail = f"{len(results)} checks, {elapsed:.1f}s"
    if failed:
        detail += "; " + format_report(failed).splitlines()[0]
    record(7, "property suite on the corpus", ok, detail)
    assert not failed, format_report(failed)
    assert not unchecked, [(r.complex, r.name) for r in unchecked]
    assert elapsed < 600
    # every relation is exercised somewhere in the corpus
    names = {r.name for r in results if r.checked}
    assert {"Leibniz", "niceness", "top-commutativity", "subadditivity", "coboundary", "monotonicity",
            "representative independence", "Cartan", "Adem Sq1Sq1", "Adem Sq1Sq2", "naturality"} <= names
