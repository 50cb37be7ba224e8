"""Boxed 2-string tangles and their algebra.

A tangle is stored like a diagram fragment: crossings in the same PD
convention, plus four boundary corners NW, NE, SW, SE, each naming the edge
whose loose end reaches that corner. Flows record the strand direction at
each corner ("in" means the strand enters the box there). Edge ids run
1..2c+2; crossing-free closed circles inside the box are only counted.

Strand operations (sum, stack, closure) reverse whole strands as needed to
keep orientations coherent, rewriting crossing tuples accordingly; a
reversal is impossible only when one strand would need both of its ends to
point the same way, which raises OrientationMismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .diagram import Crossing, PlanarDiagram

CORNERS = ("NW", "NE", "SW", "SE")


class TangleError(Exception):
    pass


class OrientationMismatch(TangleError):
    pass


class BadParameter(TangleError):
    pass


class BoundaryMismatch(TangleError):
    pass


Incidence = tuple  # ("X", crossing, slot) or ("B", corner)


@dataclass(frozen=True)
class Tangle:
    crossings: tuple[Crossing, ...]
    over_from_d: tuple[bool, ...]
    boundary: Mapping[str, int]
    flows: Mapping[str, str]
    closed_loops: int = 0

    def __post_init__(self):
        if set(self.boundary) != set(CORNERS) or set(self.flows) != set(CORNERS):
            raise TangleError("boundary and flows must cover NW, NE, SW, SE")
        if any(v not in ("in", "out") for v in self.flows.values()):
            raise TangleError("flows are 'in' or 'out'")
        if len(self.over_from_d) != len(self.crossings):
            raise TangleError("one over flag per crossing required")
        if self.closed_loops < 0:
            raise TangleError("negative closed_loops")
        n = 2 * len(self.crossings) + 2
        count: dict[int, int] = {}
        for x in self.crossings:
            for e in x:
                count[e] = count.get(e, 0) + 1
        for c in CORNERS:
            e = self.boundary[c]
            count[e] = count.get(e, 0) + 1
        for e in range(1, n + 1):
            if count.get(e, 0) != 2:
                raise TangleError(
                    f"edge {e} has {count.get(e, 0)} ends, expected 2 (ids 1..{n})"
                )
        if set(count) != set(range(1, n + 1)):
            raise TangleError(f"edge ids must be exactly 1..{n}")
        heads: dict[int, int] = {}
        tails: dict[int, int] = {}
        for i, x in enumerate(self.crossings):
            hs = (0, 3) if self.over_from_d[i] else (0, 1)
            for s in range(4):
                bucket = heads if s in hs else tails
                bucket[x[s]] = bucket.get(x[s], 0) + 1
        for c in CORNERS:
            e = self.boundary[c]
            bucket = tails if self.flows[c] == "in" else heads
            bucket[e] = bucket.get(e, 0) + 1
        for e in range(1, n + 1):
            if heads.get(e, 0) != 1 or tails.get(e, 0) != 1:
                raise OrientationMismatch(
                    f"edge {e} has {heads.get(e, 0)} heads, {tails.get(e, 0)} tails"
                )

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings) + 2

    def sign(self, i: int) -> int:
        return 1 if self.over_from_d[i] else -1

    @cached_property
    def incidences(self) -> dict[int, tuple[Incidence, ...]]:
        out: dict[int, list[Incidence]] = {}
        for i, x in enumerate(self.crossings):
            for s in range(4):
                out.setdefault(x[s], []).append(("X", i, s))
        for c in CORNERS:
            out.setdefault(self.boundary[c], []).append(("B", c))
        return {e: tuple(v) for e, v in out.items()}

    @cached_property
    def strands(self) -> tuple[tuple[str, str, tuple[int, ...]], ...]:
        """The two open strands as (start corner, end corner, edges),
        starting from the first unvisited corner in NW, NE, SW, SE order."""
        out = []
        seen: set[str] = set()
        for start in CORNERS:
            if start in seen:
                continue
            edges = []
            e = self.boundary[start]
            at: Incidence = ("B", start)
            while True:
                edges.append(e)
                other = self._other(e, at)
                if other[0] == "B":
                    end = other[1]
                    break
                _, i, s = other
                s2 = (s + 2) % 4
                e = self.crossings[i][s2]
                at = ("X", i, s2)
            seen.update((start, end))
            out.append((start, end, tuple(edges)))
        return tuple(out)

    def _other(self, e: int, at: Incidence) -> Incidence:
        p, q = self.incidences[e]
        return q if at == p else p

    def pairing(self) -> str:
        ends = {s[0]: s[1] for s in self.strands}
        partner = ends["NW"]
        return {"SW": "even", "NE": "horizontal", "SE": "diagonal"}[partner]

    def has_closed_components(self) -> bool:
        if self.closed_loops:
            return True
        open_edges = {e for s in self.strands for e in s[2]}
        return len(open_edges) < self.edge_count


def is_even_type(t: Tangle) -> bool:
    return t.pairing() == "even"


# -- twist builders ---------------------------------------------------------------


def horizontal_twists(n: int) -> Tangle:
    """|n| crossings between two west-to-east strands; n > 0 twists
    right-handed. n = 0 is the trivial tangle T(0/1)."""
    k = abs(n)
    top = list(range(1, k + 2))
    bot = list(range(k + 2, 2 * k + 3))
    xs = []
    for j in range(k):
        if n > 0:
            xs.append(Crossing(bot[j], bot[j + 1], top[j + 1], top[j]))
        else:
            xs.append(Crossing(top[j], bot[j], bot[j + 1], top[j + 1]))
    flags = tuple(n > 0 for _ in range(k))
    boundary = {"NW": top[0], "NE": top[k], "SW": bot[0], "SE": bot[k]}
    flows = {"NW": "in", "NE": "out", "SW": "in", "SE": "out"}
    return Tangle(tuple(xs), flags, boundary, flows)


def vertical_twists(n: int) -> Tangle:
    """|n| crossings between two north-to-south strands; the sign of n
    follows the continued-fraction convention of rational_tangle, so
    stacking vertical_twists(n) under horizontal_twists(m) yields the
    tangle m | n, not a cancelling clasp. n = 0 is the trivial tangle
    T(1/0)."""
    k = abs(n)
    left = list(range(1, k + 2))
    right = list(range(k + 2, 2 * k + 3))
    xs = []
    for j in range(k):
        if n > 0:
            xs.append(Crossing(right[j], left[j], left[j + 1], right[j + 1]))
        else:
            xs.append(Crossing(left[j], left[j + 1], right[j + 1], right[j]))
    flags = tuple(n < 0 for _ in range(k))
    boundary = {"NW": left[0], "SW": left[k], "NE": right[0], "SE": right[k]}
    flows = {"NW": "in", "SW": "out", "NE": "in", "SE": "out"}
    return Tangle(tuple(xs), flags, boundary, flows)


# -- strand reversal ----------------------------------------------------------------


def reverse_strand(t: Tangle, corner: str) -> Tangle:
    """Reverse the orientation of the strand whose end lies at corner."""
    strand = next(s for s in t.strands if corner in (s[0], s[1]))
    start, end, edges = strand
    under: dict[int, int] = {}
    over: dict[int, int] = {}
    at: Incidence = ("B", start)
    e = t.boundary[start]
    while True:
        other = t._other(e, at)
        if other[0] == "B":
            break
        _, i, s = other
        if s in (0, 2):
            under[i] = under.get(i, 0) + 1
        else:
            over[i] = over.get(i, 0) + 1
        s2 = (s + 2) % 4
        e = t.crossings[i][s2]
        at = ("X", i, s2)
    xs = list(t.crossings)
    flags = list(t.over_from_d)
    for i in range(len(xs)):
        u, o = under.get(i, 0), over.get(i, 0)
        if u and o:
            xs[i] = Crossing(xs[i].c, xs[i].d, xs[i].a, xs[i].b)
        elif u:
            xs[i] = Crossing(xs[i].c, xs[i].d, xs[i].a, xs[i].b)
            flags[i] = not flags[i]
        elif o:
            flags[i] = not flags[i]
    flows = dict(t.flows)
    for c in (start, end):
        flows[c] = "out" if flows[c] == "in" else "in"
    return Tangle(tuple(xs), tuple(flags), dict(t.boundary), flows, t.closed_loops)


# -- gluing: sum, stack, closures ------------------------------------------------------


def _find(parent: dict[int, int], e: int) -> int:
    while parent[e] != e:
        parent[e] = parent[parent[e]]
        e = parent[e]
    return e


def _fit_seams(
    t1: Tangle,
    t2: Tangle,
    seams: Sequence[tuple[str, str]],
    fix_flows: bool,
) -> tuple[Tangle, Tangle]:
    """Reorient open strands until each seam joins an 'out' to an 'in'.
    Prefers leaving t1 alone, then reversing as few strands as possible."""

    def ok(a: Tangle, b: Tangle) -> bool:
        return all(a.flows[c1] != b.flows[c2] for c1, c2 in seams)

    if ok(t1, t2):
        return t1, t2
    if fix_flows:
        bad = [p for p in seams if t1.flows[p[0]] == t2.flows[p[1]]]
        raise OrientationMismatch(f"declared flows clash at seams {bad}")

    def variants(t: Tangle) -> list[Tangle]:
        starts = [s[0] for s in t.strands]
        out = [t]
        for c in starts:
            out.append(reverse_strand(t, c))
        both = t
        for c in starts:
            both = reverse_strand(both, c)
        out.append(both)
        return out

    v1, v2 = variants(t1), variants(t2)
    options = sorted(
        ((i, j) for i in range(len(v1)) for j in range(len(v2))),
        key=lambda p: (p[0] != 0, p[0], p[1]),
    )
    for i, j in options:
        if ok(v1[i], v2[j]):
            return v1[i], v2[j]
    raise OrientationMismatch(
        "no strand orientation satisfies the seams"
    )


def _glue(
    t1: Tangle,
    t2: Tangle,
    seams: Sequence[tuple[str, str]],
    corners_from: Mapping[str, tuple[int, str]],
    fix_flows: bool,
) -> Tangle:
    if len({c2 for _, c2 in seams}) < len(seams):
        raise BoundaryMismatch("seam corners must be distinct")
    t1, t2 = _fit_seams(t1, t2, seams, fix_flows)

    off = t1.edge_count
    ids = list(range(1, off + t2.edge_count + 1))
    parent = {e: e for e in ids}
    for c1, c2 in seams:
        a, b = _find(parent, t1.boundary[c1]), _find(parent, t2.boundary[c2] + off)
        if a != b:
            parent[max(a, b)] = min(a, b)

    xs = [Crossing(*x) for x in t1.crossings]
    xs += [Crossing(*(e + off for e in x)) for x in t2.crossings]
    xs = [Crossing(*(_find(parent, e) for e in x)) for x in xs]
    flags = tuple(t1.over_from_d) + tuple(t2.over_from_d)

    boundary = {}
    flows = {}
    for corner, (which, old) in corners_from.items():
        src = t1 if which == 1 else t2
        eid = src.boundary[old] + (0 if which == 1 else off)
        boundary[corner] = _find(parent, eid)
        flows[corner] = src.flows[old]

    used = {e for x in xs for e in x} | set(boundary.values())
    roots = {_find(parent, e) for e in ids}
    extra_loops = len(roots - used)
    compact = {r: k + 1 for k, r in enumerate(sorted(used))}
    xs = [Crossing(*(compact[e] for e in x)) for x in xs]
    boundary = {c: compact[e] for c, e in boundary.items()}
    return Tangle(
        tuple(xs),
        flags,
        boundary,
        flows,
        t1.closed_loops + t2.closed_loops + extra_loops,
    )


def tangle_sum(t1: Tangle, t2: Tangle, fix_flows: bool = False) -> Tangle:
    """Horizontal juxtaposition: the east side of t1 joins the west side
    of t2. By default t2's strands are reoriented to fit; with fix_flows
    the declared flows must already match."""
    return _glue(
        t1,
        t2,
        seams=(("NE", "NW"), ("SE", "SW")),
        corners_from={
            "NW": (1, "NW"),
            "SW": (1, "SW"),
            "NE": (2, "NE"),
            "SE": (2, "SE"),
        },
        fix_flows=fix_flows,
    )


def vertical_stack(t1: Tangle, t2: Tangle, fix_flows: bool = False) -> Tangle:
    """t1 placed on top of t2: the south side of t1 joins the north side
    of t2."""
    return _glue(
        t1,
        t2,
        seams=(("SW", "NW"), ("SE", "NE")),
        corners_from={
            "NW": (1, "NW"),
            "NE": (1, "NE"),
            "SW": (2, "SW"),
            "SE": (2, "SE"),
        },
        fix_flows=fix_flows,
    )


def rotate_pi(t: Tangle) -> Tangle:
    """Rotate the box a half turn: corners swap diagonally; the crossing
    tuples are unchanged because the rotation preserves both the cyclic
    order and the under-strand entry."""
    swap = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}
    boundary = {c: t.boundary[swap[c]] for c in CORNERS}
    flows = {c: t.flows[swap[c]] for c in CORNERS}
    return Tangle(t.crossings, t.over_from_d, boundary, flows, t.closed_loops)


def _close(t: Tangle, pairs: Sequence[tuple[str, str]]) -> PlanarDiagram:
    # orient each component cycle coherently by reversing strands, then
    # unify the arc endpoints
    arcs = {a: b for a, b in pairs}
    arcs.update({b: a for a, b in pairs})
    work = t
    fixed: set[str] = set()
    for start in CORNERS:
        if start in fixed:
            continue
        # walk the component: strand, closure arc, strand, ... back to start
        corner = start
        while True:
            strand = next(s for s in work.strands if corner in (s[0], s[1]))
            s_in, s_out = (
                (strand[0], strand[1]) if strand[0] == corner else (strand[1], strand[0])
            )
            if work.flows[s_in] != "in":
                work = reverse_strand(work, s_in)
            fixed.update((s_in, s_out))
            corner = arcs[s_out]
            if corner == start:
                break

    off = 0
    ids = list(range(1, work.edge_count + 1))
    parent = {e: e for e in ids}
    for a, b in pairs:
        ra, rb = _find(parent, work.boundary[a]), _find(parent, work.boundary[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    xs = [Crossing(*(_find(parent, e) for e in x)) for x in work.crossings]
    used = {e for x in xs for e in x}
    roots = {_find(parent, e) for e in ids}
    free = len(roots - used) + work.closed_loops
    compact = {r: k + 1 for k, r in enumerate(sorted(used))}
    xs = [Crossing(*(compact[e] for e in x)) for x in xs]
    del off
    return PlanarDiagram(tuple(xs), tuple(work.over_from_d), free_loops=free)


def numerator(t: Tangle) -> PlanarDiagram:
    """Close the box by joining NW to NE and SW to SE."""
    return _close(t, (("NW", "NE"), ("SW", "SE")))


def denominator(t: Tangle) -> PlanarDiagram:
    """Close the box by joining NW to SW and NE to SE."""
    return _close(t, (("NW", "SW"), ("NE", "SE")))


# -- rational tangles ----------------------------------------------------------------


def rational_tangle(cf) -> Tangle:
    """Build a rational tangle from an integer list read left to right:
    odd positions add horizontal twists on the right, even positions stack
    vertical twists below. [] is T(0/1); the marker "inf" is T(1/0).
    Positive entries twist right-handed."""
    if cf == "inf":
        return vertical_twists(0)
    coeffs = list(cf)
    if any(not isinstance(a, int) or isinstance(a, bool) for a in coeffs):
        raise BadParameter("continued fraction entries must be integers")
    t = horizontal_twists(0)
    for pos, a in enumerate(coeffs):
        if pos % 2 == 0:
            t = tangle_sum(t, horizontal_twists(a))
        else:
            t = vertical_stack(t, vertical_twists(a))
    return t


def tangle_fraction(cf) -> tuple[int, int]:
    """The slope p/q of rational_tangle(cf) as a pair; T(1/0) is (1, 0)."""
    if cf == "inf":
        return (1, 0)
    p, q = 0, 1
    for pos, a in enumerate(cf):
        if pos % 2 == 0:
            p, q = p + a * q, q
        else:
            p, q = p, a * p + q
    if q < 0:
        p, q = -p, -q
    return (p, q)


# -- the Kinoshita-Terasaka tangle family ----------------------------------------------

# Handedness of the two twist columns: the family pairs an n-column with
# an opposite (n-1)-column. The overall sign below is the corpus-calibrated
# choice (see corpus.py); flipping it mirrors the whole family.
_KT_SIGN = -1


def kt_tangle(n: int) -> Tangle:
    """Two opposite vertical twist columns of n and n-1 crossings side by
    side: an even-type tangle with 2n-1 crossings whose numerator closure
    is a trivial knot."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise BadParameter("kt_tangle needs an integer n >= 3")
    return tangle_sum(
        vertical_twists(_KT_SIGN * n), vertical_twists(-_KT_SIGN * (n - 1))
    )


# -- serialization -----------------------------------------------------------------------


def to_tangle_doc(t: Tangle) -> dict:
    doc = {
        "crossings": [list(x) for x in t.crossings],
        "boundary": {c: t.boundary[c] for c in CORNERS},
        "flows": {c: t.flows[c] for c in CORNERS},
    }
    if t.closed_loops:
        doc["closed_loops"] = t.closed_loops
    return doc


def parse_tangle(doc: Mapping) -> Tangle:
    if "rational" in doc:
        return rational_tangle(doc["rational"])
    if "kt" in doc:
        return kt_tangle(int(doc["kt"]))
    if "crossings" not in doc or "boundary" not in doc:
        raise TangleError("tangle document needs crossings and boundary")
    xs = tuple(Crossing(*(int(v) for v in row)) for row in doc["crossings"])
    boundary = {c: int(doc["boundary"][c]) for c in CORNERS}
    loops = int(doc.get("closed_loops", 0))
    if "flows" in doc:
        flows = {c: str(doc["flows"][c]) for c in CORNERS}
        flags = _resolve_tangle(xs, boundary, flows)
        return Tangle(xs, flags, boundary, flows, loops)
    flags, flows = _resolve_tangle_free(xs, boundary)
    return Tangle(xs, flags, boundary, flows, loops)


def _resolve_tangle(
    xs: Sequence[Crossing], boundary: Mapping[str, int], flows: Mapping[str, str]
) -> tuple[bool, ...]:
    flags, _ = _resolve(xs, boundary, dict(flows))
    return flags


def _resolve_tangle_free(
    xs: Sequence[Crossing], boundary: Mapping[str, int]
) -> tuple[tuple[bool, ...], dict[str, str]]:
    return _resolve(xs, boundary, {})


def _resolve(
    xs: Sequence[Crossing],
    boundary: Mapping[str, int],
    flow_facts: dict[str, str],
) -> tuple[tuple[bool, ...], dict[str, str]]:
    incs: dict[int, list[Incidence]] = {}
    for i, x in enumerate(xs):
        for s in range(4):
            incs.setdefault(x[s], []).append(("X", i, s))
    for c in CORNERS:
        incs.setdefault(boundary[c], []).append(("B", c))
    for e, v in incs.items():
        if len(v) != 2:
            raise TangleError(f"edge {e} has {len(v)} ends, expected 2")

    role: dict[Incidence, str] = {}
    flags: list[bool | None] = [None] * len(xs)
    queue: list[Incidence] = []

    def set_role(inc: Incidence, r: str) -> None:
        cur = role.get(inc)
        if cur is not None:
            if cur != r:
                raise OrientationMismatch(f"conflicting orientation at {inc}")
            return
        role[inc] = r
        queue.append(inc)

    def set_flag(i: int, f: bool) -> None:
        if flags[i] is not None:
            if flags[i] != f:
                raise OrientationMismatch(f"conflicting over direction at {i}")
            return
        flags[i] = f
        set_role(("X", i, 3 if f else 1), "h")
        set_role(("X", i, 1 if f else 3), "t")

    def drain() -> None:
        while queue:
            inc = queue.pop()
            r = role[inc]
            if inc[0] == "X":
                _, i, s = inc
                if s in (1, 3) and flags[i] is None:
                    set_flag(i, (s == 3) == (r == "h"))
                e = xs[i][s]
            else:
                e = boundary[inc[1]]
            p, q = incs[e]
            other = q if inc == p else p
            set_role(other, "t" if r == "h" else "h")

    for i in range(len(xs)):
        set_role(("X", i, 0), "h")
        set_role(("X", i, 2), "t")
    for c, f in flow_facts.items():
        set_role(("B", c), "t" if f == "in" else "h")
    drain()
    for c in CORNERS:
        if ("B", c) not in role:
            set_role(("B", c), "t")
            drain()
    for i, x in enumerate(xs):
        if flags[i] is None:
            m = 2 * len(xs) + 2
            b, d = x[1], x[3]
            if (b - d) % m == 1:
                set_flag(i, True)
            elif (d - b) % m == 1:
                set_flag(i, False)
            else:
                set_flag(i, b > d)
            drain()
    flows = {c: ("in" if role[("B", c)] == "t" else "out") for c in CORNERS}
    return tuple(flags), flows  # type: ignore[return-value]
