"""The acceptance suite, shared by ``basilica selftest`` and the test suite.

Each check returns a :class:`Result`; ``run_all`` runs checks 1-10, then 11
(round-trips and the total time of the others).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import _pl, approx, element, formats, fullgroup, oracles, sampling, theta
from .diagram import is_diagram, is_perfect, perfect_complete
from .germ import cyclic_direction
from .lamination import (
    DIAM,
    Central,
    Inner,
    Leaf,
    edge_endpoints,
    leaf_from_endpoints,
    leaves_up_to,
    middle_node,
    parent,
    side_key,
    sides,
    trace_bounds,
)
from .triadic import from_digits, from_fraction


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str]]) -> Result:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure with a reason, not a suite abort
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return Result(number, name, ok, detail, time.perf_counter() - t0)


# 1 ------------------------------------------------------------------------


def _parent_oracle() -> tuple[bool, str]:
    t0 = time.perf_counter()
    oracle = oracles.RegionOracle(7)
    leaves = leaves_up_to(6)
    bad = []
    for leaf in leaves:
        mine = edge_endpoints(leaf)
        theirs = oracle.edge_endpoints(leaf)
        # the diameter's endpoint order is a naming convention
        same = set(mine) == set(theirs) if leaf == DIAM else mine == theirs
        if not same or (leaf != DIAM and parent(leaf) != oracle.parent(leaf)):
            bad.append(leaf)
    dt = time.perf_counter() - t0
    return not bad and dt < 5, f"{len(leaves) - len(bad)}/{len(leaves)} leaves agree, {dt:.2f}s"


# 2 ------------------------------------------------------------------------


def _diagram_oracle(seed: int = 2) -> tuple[bool, str]:
    leaves, masks = oracles.separator_masks(4, 5)
    bits = {l: i for i, l in enumerate(leaves)}
    others = [l for l in leaves if l != DIAM]
    d = bits[DIAM]
    checked = mismatches = positives = 0
    # exhaustive over sets holding the diameter; without it both sides are trivially false
    for size in range(0, 5):
        for combo in itertools.combinations(others, size):
            idx = [d] + [bits[l] for l in combo]
            have = 0
            for i in idx:
                have |= 1 << i
            need = 0
            for i, j in itertools.combinations(sorted(idx), 2):
                need |= masks[i, j]
            geometric = need & ~have == 0
            connected = is_diagram((DIAM,) + combo)
            checked += 1
            positives += geometric
            mismatches += geometric != connected
    rng = random.Random(seed)
    sample_bad = 0
    for _ in range(200):
        s = sampling.random_leaf_set(rng, rng.randint(1, 5), 4) - {DIAM}
        sample_bad += is_diagram(s) or oracles.condition_one(s, leaves_up_to(5))
    seps = leaves_up_to(5)
    random_bad = 0
    for k in range(1000):
        if k % 2:
            s = sampling.random_diagram(rng, 10, 5)
            if rng.random() < 0.5 and len(s) > 2:
                s = s - {rng.choice(sorted(s - {DIAM}))}
        else:
            s = sampling.random_leaf_set(rng, rng.randint(6, 10), 5) | {DIAM}
        random_bad += is_diagram(s) != oracles.condition_one(s, seps)
    ok = mismatches == 0 and sample_bad == 0 and random_bad == 0
    return ok, (
        f"exhaustive {checked} sets ({positives} diagrams), {mismatches} mismatches; "
        f"diameter-free sample {sample_bad} bad; random larger sets {random_bad}/1000 bad"
    )


# 3 ------------------------------------------------------------------------


def _completion(seed: int = 3) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    sizes = []
    for _ in range(500):
        d = sampling.random_diagram(rng, 8, 5)
        p = perfect_complete(d)
        sizes.append(len(p))
        if not (d <= p.leaves and is_perfect(p.leaves) and oracles.perfect_by_procedure(p.leaves)):
            bad += 1
    return bad == 0, f"{500 - bad}/500 completions perfect, mean size {sum(sizes) / len(sizes):.1f}"


# 4 ------------------------------------------------------------------------


def _is_power_of_three(q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    if n != 1 and d != 1:
        return False
    m = n * d
    while m % 3 == 0:
        m //= 3
    return m == 1


def slopes(g) -> list[Fraction]:
    out = []
    for node in g.dom.nodes:
        a = _pl.map_point(g, node.start)
        b = _pl.map_point_left(g, node.end)
        length = node.end - node.start
        span = min((b - a) % 2, (a - b) % 2)
        out.append(span / length)
    return out


def _group_axioms(seed: int = 4) -> tuple[bool, str]:
    rng = random.Random(seed)
    e = element.identity()
    bad = {"assoc": 0, "identity": 0, "inverse": 0, "slope": 0}
    for _ in range(200):
        a, b, c = (sampling.random_element(rng, 3) for _ in range(3))
        if not element.equals(element.compose(element.compose(a, b), c), element.compose(a, element.compose(b, c))):
            bad["assoc"] += 1
        if not (element.equals(element.compose(a, e), a) and element.equals(element.compose(e, a), a)):
            bad["identity"] += 1
        if not element.equals(element.compose(a, element.invert(a)), e):
            bad["inverse"] += 1
        if not all(_is_power_of_three(s) for g in (a, b, c) for s in slopes(g)):
            bad["slope"] += 1
    return not any(bad.values()), f"200 triples, failures {bad}"


# 5 ------------------------------------------------------------------------


def _leaf_transport(seed: int = 5) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(1000):
        g = sampling.random_element(rng, rng.randint(1, 4))
        leaf = sampling.random_leaf(rng, 8)
        try:
            img = element.apply_leaf(g, leaf)
            node = middle_node(leaf)
            p = from_fraction(_pl.map_point(g, node.start))
            q = from_fraction(_pl.map_point_left(g, node.end))
            if leaf_from_endpoints(p, q) != img:
                bad += 1
        except (ArithmeticError, ValueError):
            bad += 1
    return bad == 0, f"{1000 - bad}/1000 leaf images valid and consistent with the point map"


# 6 ------------------------------------------------------------------------


def _random_vertex(rng: random.Random, max_level: int):
    leaf = sampling.random_leaf(rng, max_level)
    if leaf == DIAM:
        return Central(rng.randrange(2))
    return Inner(leaf)


def _homomorphism(seed: int = 6) -> tuple[bool, str]:
    rng = random.Random(seed)
    edges = leaves_up_to(5)
    bad_pairs = 0
    for _ in range(50):
        g, h = sampling.random_element(rng, 3), sampling.random_element(rng, 3)
        gh = element.compose(g, h)
        if any(element.pi_edge(gh, e) != element.pi_edge(g, element.pi_edge(h, e)) for e in edges):
            bad_pairs += 1
    bad_vertices = 0
    for _ in range(100):
        g = sampling.random_element(rng, 3)
        v = _random_vertex(rng, 4)
        ss = sides(v, (0 if isinstance(v, Central) else v.leaf.n) + 3)
        w = element.pi_vertex(g, v)
        imgs = [element.pi_edge(g, s) for s in ss]
        if not all(w in edge_endpoints(f) for f in imgs) or cyclic_direction([side_key(w, f) for f in imgs]) != 1:
            bad_vertices += 1
    ok = bad_pairs == 0 and bad_vertices == 0
    return ok, f"{50 - bad_pairs}/50 pairs homomorphic on {len(edges)} edges; {100 - bad_vertices}/100 vertices keep cyclic order"


# 7 ------------------------------------------------------------------------


def _approximation() -> tuple[bool, str]:
    bad = 0
    worst = 0.0
    for radius in (1, 2, 3, 4):
        for seed in range(100):
            pa = approx.random_partial_automorphism(radius, seed)
            t0 = time.perf_counter()
            try:
                g = approx.approximate(pa)
                ok = element.pi_restrict(g, pa.edges) == pa
            except (ArithmeticError, ValueError):
                ok = False
            worst = max(worst, time.perf_counter() - t0)
            bad += not ok
    return bad == 0 and worst < 1.0, f"{400 - bad}/400 germs reproduced exactly, slowest case {worst:.3f}s"


# 8 ------------------------------------------------------------------------


def _full_group() -> tuple[bool, str]:
    bad = 0
    for seed in range(100):
        pa = approx.random_partial_automorphism(seed % 4, seed, signed=True)
        try:
            g = approx.approximate_full(pa)
            got = fullgroup.pi_full(g, pa.edges)
            agree = got.edges == pa.edges and got.vertices == pa.vertices
            agree &= got.signs == {v: pa.sign(v) for v in pa.vertices}
            phi = approx.flip_element(approx.flips_for_signs(pa))
            toggles = fullgroup.pi_full(phi, pa.edges).signs
            agree &= all(toggles[v] * pa.sign(v) == 1 for v in pa.vertices)
            rest = fullgroup.compose(g, fullgroup.invert(phi))
            agree &= all(s == 1 for s in fullgroup.pi_full(rest, [fullgroup.apply_leaf(phi, e) for e in pa.edges]).signs.values())
        except (ArithmeticError, ValueError):
            agree = False
        bad += not agree
    return bad == 0, f"{100 - bad}/100 signed germs reproduced with signs; flips account for every sign"


# 9 ------------------------------------------------------------------------


def _theta() -> tuple[bool, str]:
    notes = []
    expect = {Fraction(0): Fraction(0), Fraction(1): Fraction(1), Fraction(1, 3): Fraction(1, 4),
              Fraction(4, 3): Fraction(3, 2), Fraction(5, 3): Fraction(5, 2)}
    values_ok = all(theta.theta(x).value == y for x, y in expect.items())
    notes.append(f"values {'ok' if values_ok else 'WRONG'}")

    chords = {}
    depth_ok = True
    lams = {d: set(theta.binary_lamination(d)) for d in range(7)}
    for leaf in leaves_up_to(6):
        c = theta.theta_leaf(leaf)
        chords[leaf] = c
        depth_ok &= c in lams[theta.construction_depth(leaf)]
        depth_ok &= theta.binary_level(c) == leaf.n
    distinct = len(set(chords.values())) == len(chords)
    notes.append(f"{len(chords)} leaves -> {len(set(chords.values()))} chords, depth {'ok' if depth_ok else 'WRONG'}")

    rng = random.Random(9)
    pts = sorted({Fraction(rng.randrange(2 * 3**12), 3**12) for _ in range(1000)})
    vals = [theta.theta(x).value for x in pts]
    mono = all(a < b for a, b in zip(vals, vals[1:]))
    notes.append(f"monotone on {len(pts)} samples {'ok' if mono else 'WRONG'}")

    n = 0
    closed_ok = True
    for length in range(0, 9):
        for head in (0, 1):
            for tail in itertools.product(range(3), repeat=length):
                x = from_digits([head, *tail])
                closed_ok &= theta.theta_closed_form(x) == theta.theta(x).value
                n += 1
    notes.append(f"closed form agrees on {n} digit strings" if closed_ok else "closed form DISAGREES")
    return values_ok and distinct and depth_ok and mono and closed_ok, "; ".join(notes)


# 10 -----------------------------------------------------------------------


def _flip_sides():
    for leaf in leaves_up_to(4):
        yield leaf, "inner"
        yield leaf, "outer"


def _mutate(rng: random.Random, g) -> fullgroup.GeneralElement:
    targets, signs = list(g.targets), list(g.signs)
    if rng.random() < 0.5 or len(targets) < 2:
        i = rng.randrange(len(signs))
        signs[i] = -signs[i]
    else:
        i, j = rng.sample(range(len(targets)), 2)
        targets[i], targets[j] = targets[j], targets[i]
    return fullgroup.GeneralElement(g.dom, g.ran, targets, signs)


def _gamma() -> tuple[bool, str]:
    flips = list(_flip_sides())
    involution = sum(fullgroup.is_identity(fullgroup.compose(fullgroup.gamma(l, s), fullgroup.gamma(l, s))) for l, s in flips)

    rng = random.Random(10)
    generated = [fullgroup.gamma(l, s) for l, s in flips]
    generated += [sampling.random_general_element(rng, 3) for _ in range(100)]
    accepted = sum(fullgroup.is_valid(g) and oracles.is_homeomorphism(g) for g in generated)

    rejected = disagreements = tries = 0
    while rejected < 100 and tries < 5000:
        tries += 1
        m = _mutate(rng, rng.choice(generated))
        truth = oracles.is_homeomorphism(m)
        if fullgroup.is_valid(m) != truth:
            disagreements += 1
        elif not truth:
            rejected += 1

    ball = leaves_up_to(5)
    sign_bad = 0
    for leaf, side in flips:
        g = fullgroup.gamma(leaf, side)
        mid = middle_node(leaf)
        pa = fullgroup.pi_full(g, ball)
        for v, s in pa.signs.items():
            a, b = trace_bounds(v)
            flipped = (mid.start <= a and b <= mid.end) == (side == "inner")
            if s != (-1 if flipped else 1):
                sign_bad += 1
    ok = involution == len(flips) and accepted == len(generated) and rejected == 100 and disagreements == 0 and sign_bad == 0
    return ok, (
        f"involutions {involution}/{len(flips)}; accepted {accepted}/{len(generated)} generated; "
        f"rejected {rejected} mutants ({disagreements} disagreements with the brute-force check); "
        f"sign rule mismatches {sign_bad}"
    )


# 11 -----------------------------------------------------------------------


def round_trips(seed: int = 11) -> tuple[int, int]:
    """(byte-exact round trips, attempts) over random instances of every file format."""
    rng = random.Random(seed)
    texts = []
    for _ in range(50):
        texts.append((formats.emit_diagram(sampling.random_diagram(rng, 8, 5)), formats.parse_diagram, formats.emit_diagram))
        texts.append((formats.emit_element(sampling.random_element(rng, 3)), formats.parse_element, formats.emit_element))
        texts.append((formats.emit_general(sampling.random_general_element(rng, 2)), formats.parse_general, formats.emit_general))
        pa = approx.random_partial_automorphism(rng.randint(0, 3), rng.randrange(10**6), signed=rng.random() < 0.5)
        texts.append((formats.emit_germ(pa), formats.parse_germ, formats.emit_germ))
    good = sum(emit(parse(t)) == t for t, parse, emit in texts)
    return good, len(texts)


def _end_to_end(previous: list[Result]) -> tuple[bool, str]:
    total = sum(r.seconds for r in previous)
    good, n = round_trips()
    ok = total < 120 and good == n and all(r.passed for r in previous)
    failed = [r.number for r in previous if not r.passed]
    return ok, f"items 1-10 took {total:.1f}s (limit 120s), failed items {failed or 'none'}; {good}/{n} files round-trip"


CHECKS: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("parent/side oracle", _parent_oracle),
    2: ("diagram characterization", _diagram_oracle),
    3: ("perfect completion", _completion),
    4: ("group axioms", _group_axioms),
    5: ("leaf transport", _leaf_transport),
    6: ("tree action is a homomorphism", _homomorphism),
    7: ("germ approximation", _approximation),
    8: ("full-group decomposition", _full_group),
    9: ("theta conjugacy", _theta),
    10: ("branch flips", _gamma),
}


def run(number: int) -> Result:
    name, fn = CHECKS[number]
    return _timed(number, name, fn)


def run_all(only: list[int] | None = None, report: Callable[[Result], None] | None = None) -> list[Result]:
    wanted = only or list(range(1, 12))
    out = []
    for k in sorted(CHECKS):
        if k in wanted:
            r = run(k)
            out.append(r)
            if report:
                report(r)
    if 11 in wanted:
        r = _timed(11, "end-to-end", lambda: _end_to_end(out))
        out.append(r)
        if report:
            report(r)
    return out
