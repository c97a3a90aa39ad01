"""Closed Legendrian fronts on the cylinder S^1 x R.

A front is a left-to-right sequence of slices separated by events.  Inside a
slice every strand is a straight segment in (x, angle) coordinates, where the
angle is stored as a lift to the universal cover R of the fiber circle (one
revolution = 1).  Events sit on the fibers shared by consecutive slices.

Besides the three singular event kinds (crossing, birth, death) a boundary may
carry a ``bend``: a fiber where strands change slope but nothing singular
happens.  Bends are what lets piecewise-linear eyes close up.
"""
import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import BadParams, DegenerateCover, DegenerateEndpoints, Inconsistent, InvalidFront, ParseError, UnknownName

CROSSING = "crossing"
BIRTH = "birth"
DEATH = "death"
BEND = "bend"
EVENT_KINDS = (CROSSING, BIRTH, DEATH, BEND)
FORMAT = "cylfront/1"


def Q(value):
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def parse_rational(text):
    if not isinstance(text, str) or text.count("/") != 1:
        raise ParseError(f"rational must be a 'p/q' string, got {text!r}")
    p, q = text.split("/")
    try:
        p, q = int(p), int(q)
    except ValueError:
        raise ParseError(f"rational must be a 'p/q' string, got {text!r}") from None
    if q <= 0:
        raise ParseError(f"non-positive denominator in {text!r}")
    if math.gcd(p, q) != 1:
        raise ParseError(f"rational {text!r} is not reduced")
    return Fraction(p, q)


def format_rational(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def frac(value):
    return value - math.floor(value)


def is_integer(value):
    return Fraction(value).denominator == 1


def integers_strictly_between(a, b):
    lo, hi = (a, b) if a <= b else (b, a)
    return list(range(math.floor(lo) + 1, math.ceil(hi)))


@dataclass(frozen=True)
class StrandArc:
    strand_id: int
    theta_left: Fraction
    theta_right: Fraction


@dataclass(frozen=True)
class Slice:
    x_left: Fraction
    x_right: Fraction
    arcs: tuple = ()

    @property
    def width(self):
        return self.x_right - self.x_left

    def ids(self):
        return [a.strand_id for a in self.arcs]

    def arc(self, sid):
        for a in self.arcs:
            if a.strand_id == sid:
                return a
        raise KeyError(sid)

    def has(self, sid):
        return any(a.strand_id == sid for a in self.arcs)

    def slope(self, sid):
        a = self.arc(sid)
        return (a.theta_right - a.theta_left) / self.width

    def value(self, sid, x):
        a = self.arc(sid)
        t = (Fraction(x) - self.x_left) / self.width
        return a.theta_left + t * (a.theta_right - a.theta_left)

    def midpoint(self):
        return (self.x_left + self.x_right) / 2


@dataclass(frozen=True)
class Event:
    kind: str
    strands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(sorted(self.strands)))


@dataclass(frozen=True)
class FrontDiagram:
    slices: tuple
    events: tuple

    def fiber(self, i):
        """x coordinate of event ``i``."""
        return self.slices[i].x_right

    def crossing_indices(self):
        return [i for i, e in enumerate(self.events) if e.kind == CROSSING]

    def cusp_count(self):
        return 2 * sum(1 for e in self.events if e.kind in (BIRTH, DEATH)) // 2

    def strand_ids(self):
        ids = []
        for e in self.events:
            if e.kind == BIRTH:
                ids.extend(e.strands)
        return ids

    def support(self):
        """(x_min, x_max) of the nonempty part, or None for the empty front."""
        xs = [s for s in self.slices if s.arcs]
        if not xs:
            return None
        return xs[0].x_left, xs[-1].x_right

    def slice_at(self, x, side="right"):
        """Index of the slice containing ``x``; on a boundary fiber ``side`` picks."""
        x = Fraction(x)
        for i, s in enumerate(self.slices):
            if s.x_left < x < s.x_right:
                return i
            if side == "right" and x == s.x_left:
                return i
            if side == "left" and x == s.x_right:
                return i
        return None


@dataclass(frozen=True)
class CoverInterval:
    lo: Fraction
    hi: Fraction
    orientation: int = 1

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("CoverInterval requires lo <= hi")


def cover_linking(i1, i2):
    """Z/2 linking of two intervals in the universal cover (interleaving test)."""
    ends = [i1.lo, i1.hi, i2.lo, i2.hi]
    if len(set(ends)) != 4:
        raise DegenerateEndpoints("intervals share an endpoint", endpoints=ends)
    inside = sum(1 for e in (i2.lo, i2.hi) if i1.lo < e < i1.hi)
    return inside % 2


# ---------------------------------------------------------------------------
# Fiber tables: the editable representation used by builders and moves.
# ---------------------------------------------------------------------------

@dataclass
class FiberTable:
    """Events at fibers ``xs`` with the lift of every strand present there.

    ``vals[i]`` holds the lifts of all strands touching fiber ``i`` (either
    adjacent slice).  Strands are straight between consecutive fibers.
    """
    xs: list
    vals: list
    events: list
    x_start: Fraction = None
    x_end: Fraction = None

    def slice_ids(self, i):
        """Ids alive on the open interval between fiber i and fiber i+1."""
        if i < 0 or i + 1 >= len(self.xs):
            return []
        ids = set(self.vals[i]) & set(self.vals[i + 1])
        return sorted(ids)

    def to_front(self):
        n = len(self.xs)
        if n == 0:
            x0 = Fraction(0) if self.x_start is None else self.x_start
            x1 = x0 + 1 if self.x_end is None else self.x_end
            return FrontDiagram((Slice(x0, x1, ()),), ())
        x_start = self.xs[0] - 1 if self.x_start is None else self.x_start
        x_end = self.xs[-1] + 1 if self.x_end is None else self.x_end
        slices = [Slice(Fraction(x_start), Fraction(self.xs[0]), ())]
        for i in range(n - 1):
            arcs = tuple(StrandArc(s, Fraction(self.vals[i][s]), Fraction(self.vals[i + 1][s]))
                         for s in self.slice_ids(i))
            slices.append(Slice(Fraction(self.xs[i]), Fraction(self.xs[i + 1]), arcs))
        slices.append(Slice(Fraction(self.xs[-1]), Fraction(x_end), ()))
        return FrontDiagram(tuple(slices), tuple(self.events))

    @classmethod
    def from_front(cls, front):
        xs, vals = [], []
        for i, _ in enumerate(front.events):
            left, right = front.slices[i], front.slices[i + 1]
            v = {a.strand_id: a.theta_right for a in left.arcs}
            v.update({a.strand_id: a.theta_left for a in right.arcs})
            xs.append(left.x_right)
            vals.append(v)
        return cls(xs, vals, list(front.events), front.slices[0].x_left, front.slices[-1].x_right)

    def copy(self):
        return FiberTable(list(self.xs), [dict(v) for v in self.vals], list(self.events),
                          self.x_start, self.x_end)

    def value(self, sid, x):
        """Lift of strand ``sid`` at ``x`` by interpolation (None if absent)."""
        x = Fraction(x)
        for i, xi in enumerate(self.xs):
            if xi == x:
                return self.vals[i].get(sid)
            if xi > x:
                if i == 0 or sid not in self.vals[i] or sid not in self.vals[i - 1]:
                    return None
                t = (x - self.xs[i - 1]) / (xi - self.xs[i - 1])
                return self.vals[i - 1][sid] + t * (self.vals[i][sid] - self.vals[i - 1][sid])
        return None

    def insert_fiber(self, x, event=None, vals=None):
        """Insert a fiber at ``x`` inside a slice, interpolating existing strands.

        Returns its index.  Strands alive across ``x`` keep their geometry.
        """
        x = Fraction(x)
        k = 0
        while k < len(self.xs) and self.xs[k] < x:
            k += 1
        if k < len(self.xs) and self.xs[k] == x:
            raise ValueError("fiber already present")
        v = {}
        if 0 < k < len(self.xs):
            for s in self.slice_ids(k - 1):
                t = (x - self.xs[k - 1]) / (self.xs[k] - self.xs[k - 1])
                v[s] = self.vals[k - 1][s] + t * (self.vals[k][s] - self.vals[k - 1][s])
        if vals:
            v.update(vals)
        self.xs.insert(k, x)
        self.vals.insert(k, v)
        self.events.insert(k, event or Event(BEND))
        return k

    def drop_collinear_bends(self):
        """Remove bend fibers across which every strand is collinear."""
        i = 0
        while i < len(self.xs):
            if self.events[i].kind == BEND and 0 < i < len(self.xs) - 1:
                ids = set(self.vals[i])
                if ids == set(self.vals[i - 1]) & ids == set(self.vals[i + 1]) & ids and \
                        set(self.vals[i - 1]) >= ids and set(self.vals[i + 1]) >= ids and \
                        all(_collinear(self.xs[i - 1], self.vals[i - 1][s], self.xs[i], self.vals[i][s],
                                       self.xs[i + 1], self.vals[i + 1][s]) for s in ids):
                    del self.xs[i], self.vals[i], self.events[i]
                    continue
            i += 1
        return self


def _collinear(x0, y0, x1, y1, x2, y2):
    return (y1 - y0) * (x2 - x0) == (y2 - y0) * (x1 - x0)


def front_from_paths(paths, x_start=None, x_end=None):
    """Build a front from PL strand paths ``{id: [(x, lift), ...]}``.

    Each path starts at its birth and ends at its death.  Events are inferred
    fiber by fiber: two paths starting (ending) at a fiber form a birth
    (death), two through-strands meeting mod 1 form a crossing, anything else
    is a bend.  Raises InvalidFront when a fiber is not generic.
    """
    paths = {sid: [(Fraction(x), Fraction(y)) for x, y in pts] for sid, pts in paths.items()}
    xs = sorted({x for pts in paths.values() for x, _ in pts})

    def val(sid, x):
        pts = paths[sid]
        if x < pts[0][0] or x > pts[-1][0]:
            return None
        for (xa, ya), (xb, yb) in zip(pts, pts[1:]):
            if xa <= x <= xb:
                if xa == x:
                    return ya
                return ya + (x - xa) / (xb - xa) * (yb - ya)
        return pts[0][1]

    vals, events = [], []
    for x in xs:
        v = {}
        for sid in paths:
            y = val(sid, x)
            if y is not None:
                v[sid] = y
        starts = sorted(s for s in v if paths[s][0][0] == x)
        ends = sorted(s for s in v if paths[s][-1][0] == x)
        through = [s for s in v if s not in starts and s not in ends]
        hits = [(a, b) for a, b in combinations(sorted(through), 2) if is_integer(v[a] - v[b])]
        if starts and not ends and not hits and len(starts) == 2:
            ev = Event(BIRTH, starts)
        elif ends and not starts and not hits and len(ends) == 2:
            ev = Event(DEATH, ends)
        elif not starts and not ends and len(hits) == 1:
            ev = Event(CROSSING, hits[0])
        elif not starts and not ends and not hits:
            ev = Event(BEND)
        else:
            raise InvalidFront(f"non-generic fiber at x={x}")
        vals.append(v)
        events.append(ev)
    table = FiberTable(xs, vals, events, x_start, x_end)
    try:
        _insert_interior_crossings(table)
    except DegenerateCover as exc:
        raise InvalidFront(str(exc)) from None
    return table.to_front()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    message: str

    def __str__(self):
        return f"{self.code} @ {self.where}: {self.message}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def codes(self):
        return [v.code for v in self.violations]

    def add(self, code, where, message):
        self.violations.append(Violation(code, where, message))


def validate_front(candidate):
    """Check every FrontDiagram invariant; accepts a FrontDiagram or raw dict."""
    report = ValidationReport()
    if isinstance(candidate, (dict, str, bytes)):
        try:
            candidate = parse_front(candidate, validate=False)
        except ParseError as exc:
            report.add("parse", "input", str(exc))
            return report
    front = candidate
    slices, events = front.slices, front.events
    if len(events) != len(slices) - 1:
        report.add("event count", "events", f"{len(events)} events for {len(slices)} slices")
        return report
    if not slices:
        report.add("not closed", "slices", "no slices")
        return report
    if slices[0].arcs:
        report.add("not closed", "slice 0", "first slice carries arcs")
    if slices[-1].arcs:
        report.add("not closed", f"slice {len(slices) - 1}", "last slice carries arcs")
    for i, s in enumerate(slices):
        where = f"slice {i}"
        if not s.x_left < s.x_right:
            report.add("slice order", where, "x_left must be < x_right")
            continue
        if i + 1 < len(slices) and s.x_right != slices[i + 1].x_left:
            report.add("slice gap", where, "x_right differs from next x_left")
        ids = s.ids()
        if len(set(ids)) != len(ids):
            report.add("duplicate id", where, "strand id repeated in slice")
        if len(ids) % 2:
            report.add("odd fiber", where, f"{len(ids)} strands")
        for a, b in combinations(s.arcs, 2):
            dl = a.theta_left - b.theta_left
            dr = a.theta_right - b.theta_right
            if (dl == dr and is_integer(dl)) or integers_strictly_between(dl, dr):
                report.add("interior tangency", where, f"strands {a.strand_id},{b.strand_id} meet inside slice")
    seen = set()
    for i, ev in enumerate(events):
        where = f"event {i}"
        if ev.kind not in EVENT_KINDS:
            report.add("event kind", where, f"unknown kind {ev.kind!r}")
            continue
        left, right = slices[i], slices[i + 1]
        if left.width <= 0 or right.width <= 0:
            continue
        lv = {a.strand_id: a.theta_right for a in left.arcs}
        rv = {a.strand_id: a.theta_left for a in right.arcs}
        for sid in set(lv) & set(rv):
            if lv[sid] != rv[sid]:
                report.add("discontinuous strand", where, f"strand {sid} jumps")
        pair = set(ev.strands)
        need = 0 if ev.kind == BEND else 2
        if len(pair) != need:
            report.add("event strands", where, f"{ev.kind} needs {need} strands")
            continue
        if ev.kind in (CROSSING, BEND):
            if set(lv) != set(rv):
                report.add(ev.kind, where, "strand set changes across a non-cusp event")
                continue
            if ev.kind == CROSSING:
                if not pair <= set(lv):
                    report.add("crossing", where, "crossing strands missing")
                    continue
                a, b = sorted(pair)
                if not is_integer(lv[a] - lv[b]):
                    report.add("crossing", where, "crossing strands do not meet")
                sl = left.slope(a) - left.slope(b)
                sr = right.slope(a) - right.slope(b)
                if sl == 0 or sr == 0 or (sl > 0) != (sr > 0):
                    report.add("crossing", where, "crossing is not transverse")
        elif ev.kind == BIRTH:
            if pair & set(lv) or not pair <= set(rv) or set(rv) != set(lv) | pair:
                report.add("birth", where, "birth strands must appear exactly in the right slice")
                continue
            if pair & seen:
                report.add("reused id", where, "strand id born twice")
            a, b = sorted(pair)
            if not is_integer(rv[a] - rv[b]):
                report.add("birth", where, "cusp strands do not meet")
        elif ev.kind == DEATH:
            if pair & set(rv) or not pair <= set(lv) or set(lv) != set(rv) | pair:
                report.add("death", where, "death strands must appear exactly in the left slice")
                continue
            a, b = sorted(pair)
            if not is_integer(lv[a] - lv[b]):
                report.add("death", where, "cusp strands do not meet")
        if ev.kind == BIRTH:
            seen |= pair
        at = dict(lv)
        at.update(rv)
        for a, b in combinations(sorted(at), 2):
            if {a, b} == pair:
                continue
            if is_integer(at[a] - at[b]):
                report.add("genericity", where, f"strands {a},{b} coincide at an event fiber")
    for i, s in enumerate(slices[1:-1], start=1):
        for sid in s.ids():
            if sid not in seen:
                report.add("unborn strand", f"slice {i}", f"strand {sid} never born")
    return report


def require_valid(front):
    report = validate_front(front)
    if not report.ok:
        raise InvalidFront("; ".join(map(str, report.violations[:5])), violations=len(report.violations))
    return front


# ---------------------------------------------------------------------------
# Maslov potential
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaslovAssignment:
    mu: dict

    def __getitem__(self, sid):
        return self.mu[sid]

    def __len__(self):
        return len(self.mu)


def solve_parity(nodes, edges):
    """Z/2 labels with label[a] != label[b] on every edge; least node of each
    component gets 0.  Raises Inconsistent on an odd cycle."""
    adj = {n: [] for n in nodes}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    mu = {}
    for root in sorted(adj):
        if root in mu:
            continue
        mu[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in mu:
                    mu[w] = 1 - mu[u]
                    stack.append(w)
                elif mu[w] == mu[u]:
                    raise Inconsistent(f"odd cusp cycle through strands {u},{w}")
    return mu


def compute_maslov(front):
    """Z/2 Maslov potential: constant along strands, jumping by 1 at cusps.

    Strand ids persist through crossings and bends, so the potential is a
    labelling of strand ids subject to one parity constraint per cusp.
    """
    nodes = set()
    for s in front.slices:
        nodes.update(s.ids())
    edges = []
    for ev in front.events:
        nodes.update(ev.strands)
        if ev.kind in (BIRTH, DEATH):
            edges.append(ev.strands)
    return MaslovAssignment(solve_parity(nodes, edges))


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------

def cover(front, k):
    """Multiply every angular lift by ``k``; insert crossings where strands now meet."""
    if not isinstance(k, int) or k < 1:
        raise BadParams("cover degree must be a positive integer")
    table = FiberTable.from_front(front)
    table.vals = [{s: y * k for s, y in v.items()} for v in table.vals]
    if k == 1:
        return front
    # promote bends where two strands now meet
    for i, ev in enumerate(table.events):
        v = table.vals[i]
        hits = [(a, b) for a, b in combinations(sorted(v), 2)
                if set(ev.strands) != {a, b} and is_integer(v[a] - v[b])]
        if not hits:
            continue
        if ev.kind != BEND or len(hits) > 1:
            raise DegenerateCover(f"strands meet at the fiber of event {i}")
        a, b = hits[0]
        sl = _table_slope(table, i - 1, a) - _table_slope(table, i - 1, b)
        sr = _table_slope(table, i, a) - _table_slope(table, i, b)
        if sl == 0 or sr == 0 or (sl > 0) != (sr > 0):
            raise DegenerateCover(f"tangency at the fiber of event {i}")
        table.events[i] = Event(CROSSING, (a, b))
    _insert_interior_crossings(table)
    return table.to_front()


def _insert_interior_crossings(table):
    inserts = []
    for i in range(len(table.xs) - 1):
        x0, x1 = table.xs[i], table.xs[i + 1]
        found = {}
        for a, b in combinations(table.slice_ids(i), 2):
            d0 = table.vals[i][a] - table.vals[i][b]
            d1 = table.vals[i + 1][a] - table.vals[i + 1][b]
            if d0 == d1:
                if is_integer(d0):
                    raise DegenerateCover(f"strands {a},{b} coincide along a slice")
                continue
            for n in integers_strictly_between(d0, d1):
                x = x0 + (n - d0) / (d1 - d0) * (x1 - x0)
                if x in found:
                    raise DegenerateCover(f"two crossings share the fiber x={x}")
                found[x] = (a, b)
        inserts.extend(found.items())
    for x, pair in sorted(inserts):
        table.insert_fiber(x, Event(CROSSING, pair))
    return table


def _table_slope(table, i, sid):
    return (table.vals[i + 1][sid] - table.vals[i][sid]) / (table.xs[i + 1] - table.xs[i])


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def canonical_labels(front):
    """Relabel strands by birth order; the upper strand of a cusp comes first."""
    labels = {}
    for i, ev in enumerate(front.events):
        if ev.kind == BIRTH:
            right = front.slices[i + 1]
            a, b = sorted(ev.strands, key=lambda s: (-right.slope(s), s))
            labels[a] = len(labels)
            labels[b] = len(labels)
    return labels


def combinatorial_key(front):
    """Fibered-isotopy invariant of a front: events, cyclic orders, cusp sides.

    Two fronts with equal keys differ by moving bends, rescaling x, rotating
    the fiber and relifting strands by integers.
    """
    labels = canonical_labels(front)
    events = []
    for i, ev in enumerate(front.events):
        if ev.kind == BEND:
            continue
        token = (ev.kind, tuple(sorted(labels[s] for s in ev.strands)))
        a, b = sorted(ev.strands, key=labels.get)
        ref = front.slices[i + 1] if ev.kind == BIRTH else front.slices[i]
        at = ref.x_left if ev.kind == BIRTH else ref.x_right
        d_at = ref.value(a, at) - ref.value(b, at)
        d_mid = ref.value(a, ref.midpoint()) - ref.value(b, ref.midpoint())
        events.append(token + (int(d_at - math.floor(d_mid)),))
    orders = []
    prev_kind = None
    for i, s in enumerate(front.slices):
        if i > 0 and front.events[i - 1].kind == BEND:
            continue
        if not s.arcs:
            orders.append(())
            continue
        mid = s.midpoint()
        ref = min(s.ids(), key=labels.get)
        r = s.value(ref, mid)
        order = sorted(s.ids(), key=lambda sid: frac(s.value(sid, mid) - r))
        orders.append(tuple(labels[sid] for sid in order))
    del prev_kind
    return tuple(events), tuple(orders)


def same_up_to_normalization(f, g):
    return combinatorial_key(f) == combinatorial_key(g)


def strand_paths(front):
    """``{id: [(x, lift), ...]}`` from birth to death, one point per fiber."""
    paths = {}
    for s in front.slices:
        for a in s.arcs:
            pts = paths.setdefault(a.strand_id, [])
            if not pts or pts[-1][0] != s.x_left:
                pts.append((s.x_left, a.theta_left))
            pts.append((s.x_right, a.theta_right))
    return paths


def disjoint_union(f, g, shift=Fraction(0), dx=Fraction(0)):
    """Stack ``g`` (rotated by ``shift``, moved right by ``dx``, ids renumbered
    past those of ``f``) onto ``f``.  Crossings between the two pieces are
    inserted if they meet; InvalidFront if a fiber becomes non-generic."""
    base = max(f.strand_ids(), default=0)
    paths = dict(strand_paths(f))
    for sid, pts in strand_paths(g).items():
        paths[base + sid] = [(x + dx, y + shift) for x, y in pts]
    lo = min(f.slices[0].x_left, g.slices[0].x_left + dx)
    hi = max(f.slices[-1].x_right, g.slices[-1].x_right + dx)
    return front_from_paths(paths, lo, hi)


def normalize(front):
    """Slice boundaries to consecutive integers, lifts translated so the least
    lift in the first nonempty slice lies in [0, 1), strands relabelled by
    birth order."""
    labels = canonical_labels(front)
    shift = 0
    for s in front.slices:
        if s.arcs:
            shift = -math.floor(min(min(a.theta_left, a.theta_right) for a in s.arcs))
            break
    slices = []
    for i, s in enumerate(front.slices):
        arcs = tuple(sorted((StrandArc(labels.get(a.strand_id, a.strand_id), a.theta_left + shift,
                                       a.theta_right + shift) for a in s.arcs), key=lambda a: a.strand_id))
        slices.append(Slice(Fraction(i), Fraction(i + 1), arcs))
    events = tuple(Event(e.kind, tuple(labels.get(s, s) for s in e.strands)) for e in front.events)
    return FrontDiagram(tuple(slices), events)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def front_to_dict(front):
    return {
        "format": FORMAT,
        "slices": [
            {"x_left": format_rational(s.x_left), "x_right": format_rational(s.x_right),
             "arcs": [{"id": a.strand_id, "theta_left": format_rational(a.theta_left),
                       "theta_right": format_rational(a.theta_right)} for a in s.arcs]}
            for s in front.slices],
        "events": [{"kind": e.kind, "strands": list(e.strands)} for e in front.events],
    }


def serialize_front(front):
    return (json.dumps(front_to_dict(front), indent=1) + "\n").encode("utf-8")


def front_hash(front):
    return hashlib.sha256(serialize_front(front)).hexdigest()


def parse_front(stream, validate=True):
    """Parse the cylfront/1 JSON format; raises ParseError with a field path."""
    if isinstance(stream, dict):
        data = stream
    else:
        if hasattr(stream, "read"):
            stream = stream.read()
        if isinstance(stream, bytes):
            try:
                stream = stream.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"not UTF-8: {exc}") from None
        try:
            data = json.loads(stream)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno}: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    if data.get("format", FORMAT) != FORMAT:
        raise ParseError(f"unsupported format {data.get('format')!r}")
    for key in ("slices", "events"):
        if key not in data:
            raise ParseError(f"missing field {key!r}", field=key)
        if not isinstance(data[key], list):
            raise ParseError(f"field {key!r} must be a list", field=key)
    slices = []
    for i, s in enumerate(data["slices"]):
        where = f"slices[{i}]"
        try:
            arcs = tuple(StrandArc(_int(a["id"], f"{where}.arcs[{j}].id"), _rat(a["theta_left"], f"{where}.arcs[{j}].theta_left"),
                                   _rat(a["theta_right"], f"{where}.arcs[{j}].theta_right"))
                         for j, a in enumerate(s.get("arcs", [])))
            slices.append(Slice(_rat(s["x_left"], f"{where}.x_left"), _rat(s["x_right"], f"{where}.x_right"), arcs))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{where}: missing or malformed field {exc}", field=where) from None
    events = []
    for i, e in enumerate(data["events"]):
        where = f"events[{i}]"
        try:
            kind = e["kind"]
            strands = tuple(_int(s, f"{where}.strands") for s in e.get("strands", []))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{where}: missing or malformed field {exc}", field=where) from None
        if kind not in EVENT_KINDS:
            raise ParseError(f"{where}: unknown kind {kind!r}", field=where)
        events.append(Event(kind, strands))
    front = FrontDiagram(tuple(slices), tuple(events))
    if validate:
        require_valid(front)
    return front


def _rat(text, where):
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}", field=where) from None


def _int(value, where):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: expected integer", field=where)
    return value


# ---------------------------------------------------------------------------
# Built-in corpus
# ---------------------------------------------------------------------------

def _eye(base, peak, x0, x1, up, lo, xm=None):
    xm = (x0 + x1) / 2 if xm is None else xm
    return {up: [(x0, base), (xm, base + peak), (x1, base)], lo: [(x0, base), (x1, base)]}


def unknot_area_1():
    return front_from_paths({1: [(0, 0), (Fraction(1, 2), Fraction(1, 2)), (1, 1)], 2: [(0, 0), (1, 0)]},
                            Fraction(-1), Fraction(2))


def flying_saucer():
    return front_from_paths(_eye(Fraction(0), Fraction(1, 5), Fraction(0), Fraction(1), 1, 2),
                            Fraction(-1), Fraction(2))


def stacked_saucers(m):
    if m < 0:
        raise BadParams("m must be nonnegative")
    if m == 0:
        return FrontDiagram((Slice(Fraction(-1), Fraction(2), ()),), ())
    peak = min(Fraction(1, 5), Fraction(2, 5 * m))
    paths = {}
    for j in range(m):
        off = Fraction(j, 8 * m)
        paths.update(_eye(Fraction(j, m) + Fraction(11, 20 * m), peak, off, 1 - off, 2 * j + 1, 2 * j + 2, Fraction(1, 2)))
    return front_from_paths(paths, Fraction(-1), Fraction(2))


def hopf_pair():
    paths = _eye(Fraction(0), Fraction(3, 10), Fraction(0), Fraction(2), 1, 2)
    paths.update(_eye(Fraction(1, 10), Fraction(3, 10), Fraction(1), Fraction(3), 3, 4))
    return front_from_paths(paths, Fraction(-1), Fraction(4))


def builtin_front(name, k=None, m=None):
    """Canonical corpus fronts by name (``unknot_area_k`` takes ``k``)."""
    if name == "unknot_area_1":
        return unknot_area_1()
    if name in ("unknot_area_k", "unknot_area") or name.startswith("unknot_area_"):
        if k is None:
            suffix = name.rsplit("_", 1)[-1]
            k = int(suffix) if suffix.isdigit() else 1
        return cover(unknot_area_1(), int(k))
    if name == "flying_saucer":
        return flying_saucer()
    if name == "stacked_saucers":
        return stacked_saucers(2 if m is None else int(m))
    if name == "hopf_pair":
        return hopf_pair()
    raise UnknownName(f"unknown built-in front {name!r}")


BUILTIN_NAMES = ("unknot_area_k", "flying_saucer", "stacked_saucers", "hopf_pair")
