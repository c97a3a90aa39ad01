"""Local rewrites of fronts along generic one-parameter families.

Every move works on a :class:`FiberTable` window ``(A, B)``: fibers strictly
inside the window are rebuilt, fibers outside keep their x coordinate (strand
ids downstream of the window may be renamed).  A site is offered by
:func:`available_moves` only if the rewritten front validates.
"""
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContinuationError, InvalidSite
from .front import (BEND, BIRTH, CROSSING, DEATH, Event, FiberTable, frac, front_hash, validate_front)
from .rulings import (CircularRuling, DiskRuling, _Dead, _freeze_offsets, _freeze_pairs, _step, check_normal, chi,
                      compute_maslov)

KINDS = ("R1_birth", "R1_death", "R2_in", "R2_out", "R3", "XX_swap", "XC_swap", "CC_swap", "reparam")
CUSPS = (BIRTH, DEATH)


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    location: tuple
    side: int = 0

    def text(self):
        loc = ",".join(str(v) for v in self.location)
        return f"{self.kind}@{loc}/{self.side:+d}" if self.side else f"{self.kind}@{loc}"

    __str__ = text

    @classmethod
    def parse(cls, text):
        try:
            kind, rest = text.strip().split("@", 1)
            side = 0
            if "/" in rest:
                rest, s = rest.split("/", 1)
                side = int(s)
            loc = tuple(int(v) for v in rest.split(",") if v != "")
        except ValueError:
            raise InvalidSite(f"cannot parse move {text!r}") from None
        if kind not in KINDS:
            raise InvalidSite(f"unknown move kind {kind!r}")
        return cls(kind, loc, side)


@dataclass
class MoveResult:
    front: object
    window: tuple          # (A, B): x range whose interior was rebuilt
    rename: dict           # old id -> new id for strands right of the window


def _bound(table, k):
    """x of fiber ``k``, or the front's outer ends for out-of-range k."""
    if k < 0:
        return table.x_start
    if k >= len(table.xs):
        return table.x_end
    return table.xs[k]


def _finish(table, window, rename=None):
    table.drop_collinear_bends()
    front = table.to_front()
    report = validate_front(front)
    if not report.ok:
        raise InvalidSite("move produces an invalid front: " + str(report.violations[0]))
    return MoveResult(front, window, rename or {})


def _pl(points):
    """Piecewise-linear map through sorted (x, y) knots."""
    def f(x):
        for (x0, y0), (x1, y1) in zip(points, points[1:]):
            if x0 <= x <= x1:
                return y0 + (x - x0) / (x1 - x0) * (y1 - y0)
        raise ValueError("outside warp domain")
    return f


def _pl_inverse(points, y):
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if y0 <= y <= y1:
            return x0 + (y - y0) / (y1 - y0) * (x1 - x0)
    raise ValueError("outside warp range")


def _chain(table, j, count, step=1):
    """Indices of ``count`` consecutive non-bend events starting at ``j``
    (walking right for step=1, left for step=-1), skipping bends."""
    out = []
    k = j
    while 0 <= k < len(table.events) and len(out) < count:
        if table.events[k].kind != BEND:
            out.append(k)
        elif not out:
            return None
        k += step
    if len(out) < count:
        return None
    return out if step == 1 else out[::-1]


# ---------------------------------------------------------------------------
# event swaps
# ---------------------------------------------------------------------------

def _swap_kind(e1, e2):
    n = sum(1 for e in (e1, e2) if e.kind in CUSPS)
    return ("XX_swap", "XC_swap", "CC_swap")[n]


def _swap(table, m):
    (i,) = m.location
    idx = _chain(table, i, 2) if 0 <= i < len(table.events) else None
    if idx is None:
        raise InvalidSite("no such event pair")
    i, i2 = idx
    e1, e2 = table.events[i], table.events[i2]
    if set(e1.strands) & set(e2.strands):
        raise InvalidSite("events are not independent")
    if _swap_kind(e1, e2) != m.kind:
        raise InvalidSite(f"events at {i} form a {_swap_kind(e1, e2)} site")
    A, B = _bound(table, i - 1), _bound(table, i2 + 1)
    X1, X2 = table.xs[i], table.xs[i2]
    warp1 = [(A, A), (X1, (A + X1) / 2), (X2, X1), (B, B)]
    warp2 = [(A, A), (X1, X2), (X2, (X2 + B) / 2), (B, B)]
    group = {s: warp1 for s in e1.strands}
    group.update({s: warp2 for s in e2.strands})
    old = table.xs[i:i2 + 1]
    fibers = set(old)
    for w in (warp1, warp2):
        fibers |= {x for x, _ in w}
        fibers |= {_pl_inverse(w, X) for X in old}
    fibers = sorted(x for x in fibers if A < x < B)
    ids = set().union(*table.vals[i:i2 + 1])
    new = []
    for y in fibers:
        v = {}
        for s in ids:
            w = group.get(s)
            val = table.value(s, _pl(w)(y) if w else y)
            if val is not None:
                v[s] = val
        ev = e2 if y == X1 else e1 if y == X2 else Event(BEND)
        new.append((y, v, ev))
    out = _replace(table, i, i2, new)
    return _finish(out, (A, B))


def _replace(table, lo, hi, fibers):
    """Replace fibers lo..hi (inclusive) by ``fibers`` = [(x, vals, event)]."""
    t = table.copy()
    t.xs[lo:hi + 1] = [f[0] for f in fibers]
    t.vals[lo:hi + 1] = [f[1] for f in fibers]
    t.events[lo:hi + 1] = [f[2] for f in fibers]
    return t


# ---------------------------------------------------------------------------
# reparametrization
# ---------------------------------------------------------------------------

def _reparam(table, m):
    (i,) = m.location
    if not 0 <= i < len(table.xs) or m.side not in (-1, 1):
        raise InvalidSite("no such event")
    t = table.copy()
    nb = _bound(t, i + m.side)
    t.xs[i] = (t.xs[i] + nb) / 2
    lo, hi = sorted((_bound(table, i - 1), _bound(table, i + 1)))
    return _finish(t, (lo, hi))


# ---------------------------------------------------------------------------
# swallowtails
# ---------------------------------------------------------------------------

def _r1_birth(table, m):
    k, s = m.location
    side = m.side
    if side not in (-1, 1) or not 0 <= k < len(table.xs) - 1 or s not in table.slice_ids(k):
        raise InvalidSite("no such strand in slice")
    xl, xr = table.xs[k], table.xs[k + 1]
    w = xr - xl
    u1, u2, u3 = xl + w / 4, xl + w / 2, xl + 3 * w / 4
    others = [o for o in table.slice_ids(k) if o != s]
    gap = Fraction(1)
    for x in (u1, u3):
        for o in others:
            gap = min(gap, frac(side * (table.value(o, x) - table.value(s, x))))
    h = side * gap / 8
    ids = set().union(*table.vals) if table.vals else set()
    t_id, u_id = max(ids) + 1, max(ids) + 2
    t = table.copy()
    line = {x: table.value(s, x) for x in (u1, u2, u3)}
    for x in (u1, u2, u3):
        t.insert_fiber(x)
    j1 = t.xs.index(u1)
    t.vals[j1].update({t_id: line[u1] + h, u_id: line[u1] + h})
    t.events[j1] = Event(BIRTH, (t_id, u_id))
    t.vals[j1 + 1].update({s: line[u2] + h / 2, u_id: line[u2] + h / 2, t_id: line[u2] + 3 * h / 2})
    t.events[j1 + 1] = Event(CROSSING, (s, u_id))
    t.vals[j1 + 2].update({s: line[u3] + h, t_id: line[u3] + h, u_id: line[u3]})
    t.events[j1 + 2] = Event(DEATH, (s, t_id))
    _rename_from(t, j1 + 3, {s: u_id})
    return _finish(t, (xl, xr), {s: u_id})


def _rename_from(t, start, rename, shift=None):
    shift = shift or {}
    for j in range(start, len(t.xs)):
        t.vals[j] = {rename.get(a, a): y + shift.get(a, 0) for a, y in t.vals[j].items()}
        t.events[j] = Event(t.events[j].kind, tuple(rename.get(a, a) for a in t.events[j].strands))


def _lift_gap(table, j, a, b):
    return table.vals[j][a] - table.vals[j][b]


def _r1_death(table, m):
    (j,) = m.location
    idx = _chain(table, j, 3) if 0 <= j < len(table.events) else None
    if idx is None:
        raise InvalidSite("no swallowtail here")
    jb, jc, jd = idx
    eb, ec, ed = (table.events[k] for k in idx)
    if (eb.kind, ec.kind, ed.kind) != (BIRTH, CROSSING, DEATH):
        raise InvalidSite("no swallowtail here")
    shared = set(ec.strands) & set(ed.strands)
    if len(shared) != 1:
        raise InvalidSite("no swallowtail here")
    (s,) = shared
    (u,) = set(ec.strands) - {s}
    (t_,) = set(ed.strands) - {s}
    if s in eb.strands or set(eb.strands) != {t_, u}:
        raise InvalidSite("no swallowtail here")
    k_su = _lift_gap(table, jc, s, u)
    winding = _lift_gap(table, jb, t_, u) - k_su + _lift_gap(table, jd, s, t_)
    if winding != 0:
        raise InvalidSite("the zigzag winds around the fiber")
    t = table.copy()
    for k in range(jb, jd + 1):
        if k in idx:
            t.events[k] = Event(BEND)
        t.vals[k].pop(t_, None)
        if k <= jc:
            t.vals[k].pop(u, None)
        else:
            t.vals[k].pop(s, None)
            t.vals[k] = {(s if a == u else a): (y + k_su if a == u else y) for a, y in t.vals[k].items()}
    _rename_from(t, jd + 1, {u: s}, {u: k_su})
    return _finish(t, (_bound(table, jb - 1), _bound(table, jd + 1)), {u: s})


# ---------------------------------------------------------------------------
# a strand passing over a cusp
# ---------------------------------------------------------------------------

def _r2_in(table, m):
    (j,) = m.location
    direction = m.side
    if direction not in (-1, 1) or not 0 <= j < len(table.events) or table.events[j].kind not in CUSPS:
        raise InvalidSite("not a cusp")
    ev = table.events[j]
    a, b = ev.strands
    X = table.xs[j]
    v = table.vals[j]
    c = v[a]
    others = [o for o in v if o not in (a, b)]
    if not others:
        raise InvalidSite("no strand next to the cusp")
    s = min(others, key=lambda o: frac(direction * (v[o] - c)))
    sigma = c + direction * frac(direction * (v[s] - c))
    gap = min([frac(direction * (v[o] - v[s])) for o in others if o != s] + [Fraction(1)])
    c_new = sigma + direction * gap / 8
    step = 1 if ev.kind == BIRTH else -1
    X_nb = table.xs[j + step]
    last = None
    for f in (Fraction(1, 2), Fraction(1, 8), Fraction(1, 64)):
        try:
            return _r2_in_at(table, j, a, b, s, c, c_new, X + f * (X_nb - X), step)
        except InvalidSite as exc:
            last = exc
    raise last


def _r2_in_at(table, j, a, b, s, c, c_new, Xb, step):
    t = table.copy()
    X = t.xs[j]
    kb = t.insert_fiber(Xb)
    j = t.xs.index(X)
    shift_b = t.vals[j][b] - c        # b may carry a different integer lift
    t.vals[j][a] = c_new
    t.vals[j][b] = c_new + shift_b
    crossings = []
    for strand in (a, b):
        y0, y1 = t.vals[j][strand], t.vals[kb][strand]
        s0, s1 = t.vals[j][s], t.vals[kb][s]
        d0, d1 = y0 - s0, y1 - s1
        hits = list(range(math.floor(min(d0, d1)) + 1, math.ceil(max(d0, d1))))
        if len(hits) != 1:
            raise InvalidSite("cusp does not pass the strand exactly once")
        x = X + (hits[0] - d0) / (d1 - d0) * (Xb - X)
        if x in t.xs or any(x == y for y, _ in crossings):
            raise InvalidSite("crossings collide")
        crossings.append((x, strand))
    for x, strand in crossings:
        t.insert_fiber(x, Event(CROSSING, (strand, s)))
    k = table.xs.index(X)
    return _finish(t, (_bound(table, k - 1), _bound(table, k + 1)))


def _r2_out(table, m):
    (j,) = m.location
    if not 0 <= j < len(table.events) or table.events[j].kind not in CUSPS:
        raise InvalidSite("not a cusp")
    ev = table.events[j]
    a, b = ev.strands
    birth = ev.kind == BIRTH
    chain = _chain(table, j, 3, 1 if birth else -1)
    if chain is None:
        raise InvalidSite("no crossing pair next to the cusp")
    idx = chain[1:] if birth else chain[:2]
    c1, c2 = (table.events[k] for k in idx)
    if c1.kind != CROSSING or c2.kind != CROSSING:
        raise InvalidSite("no crossing pair next to the cusp")
    s_set = (set(c1.strands) - {a, b}) | (set(c2.strands) - {a, b})
    if len(s_set) != 1 or {a, b} != (set(c1.strands) | set(c2.strands)) - s_set:
        raise InvalidSite("no crossing pair next to the cusp")
    (s,) = s_set
    (p1,) = set(c1.strands) - {s}
    (p2,) = set(c2.strands) - {s}
    k1 = _lift_gap(table, idx[0], p1, s)
    k2 = _lift_gap(table, idx[1], p2, s)
    if k1 - k2 != _lift_gap(table, j, p1, p2):
        raise InvalidSite("the cusp pokes around the fiber")
    t = table.copy()
    if birth:
        new_j, (q, kq), (r, kr) = idx[1], (p1, k1), (p2, k2)
        cleared = range(j, new_j)
    else:
        new_j, (q, kq), (r, kr) = idx[0], (p2, k2), (p1, k1)
        cleared = range(new_j + 1, j + 1)
    mid = (t.vals[new_j][q] + t.vals[new_j][s] + kq) / 2
    t.vals[new_j][q] = mid
    t.vals[new_j][r] = mid - kq + kr
    t.events[new_j] = Event(ev.kind, (a, b))
    for k in cleared:
        if t.events[k].kind != BEND:
            t.events[k] = Event(BEND)
        t.vals[k].pop(a, None)
        t.vals[k].pop(b, None)
    lo = _bound(table, min(chain) - 1)
    hi = _bound(table, max(chain) + 1)
    return _finish(t, (lo, hi))


# ---------------------------------------------------------------------------
# triple points
# ---------------------------------------------------------------------------

def _r3(table, m):
    (j,) = m.location
    idx = _chain(table, j, 3) if 0 <= j < len(table.events) else None
    if idx is None:
        raise InvalidSite("no triangle here")
    j1, j2, j3 = idx
    e1, e2, e3 = (table.events[k] for k in idx)
    if any(e.kind != CROSSING for e in (e1, e2, e3)):
        raise InvalidSite("no triangle here")
    pairs = [frozenset(e.strands) for e in (e1, e2, e3)]
    strands = set().union(*pairs)
    if len(strands) != 3 or len(set(pairs)) != 3:
        raise InvalidSite("no triangle here")
    p, r = e2.strands
    (q,) = strands - {p, r}
    (r1,) = set(e1.strands) - {q}
    (r2,) = set(e3.strands) - {q}
    k_q_r1 = _lift_gap(table, j1, q, r1)
    k_q_r2 = _lift_gap(table, j3, q, r2)
    k_r1_r2 = _lift_gap(table, j2, r1, r2)
    if k_q_r1 - k_q_r2 != k_r1_r2:
        raise InvalidSite("the triangle winds around the fiber")
    X = table.vals[j2][r1] + k_q_r1
    side = -1 if table.vals[j2][q] > X else 1
    others = [o for o in table.vals[j2] if o not in (p, r, q)]
    gap = min([frac(side * (table.vals[j2][o] - X)) for o in others] + [Fraction(1)])
    last = InvalidSite("no room to move the strand")
    for h in (gap / 8, gap / 64):
        t = table.copy()
        t.vals[j1][q] = t.vals[j1][r2] + k_q_r2
        t.events[j1] = Event(CROSSING, (q, r2))
        t.vals[j2][q] = X + side * h
        t.vals[j3][q] = t.vals[j3][r1] + k_q_r1
        t.events[j3] = Event(CROSSING, (q, r1))
        # across interior bends q keeps a linearly varying offset from the
        # strand it has just crossed (resp. is about to cross)
        for lo, hi, guide, kg in ((j1, j2, r2, k_q_r2), (j2, j3, r1, k_q_r1)):
            end = hi if guide == r2 else lo
            off = t.vals[end][q] - t.vals[end][guide] - kg
            for k in range(lo + 1, hi):
                w = (t.xs[k] - t.xs[lo]) / (t.xs[hi] - t.xs[lo])
                w = w if guide == r2 else 1 - w
                t.vals[k][q] = t.vals[k][guide] + kg + w * off
        try:
            return _finish(t, (_bound(table, j1 - 1), _bound(table, j3 + 1)))
        except InvalidSite as exc:
            last = exc
    raise last


# ---------------------------------------------------------------------------
# public interface
# ---------------------------------------------------------------------------

_APPLY = {
    "R1_birth": _r1_birth, "R1_death": _r1_death, "R2_in": _r2_in, "R2_out": _r2_out, "R3": _r3,
    "XX_swap": _swap, "XC_swap": _swap, "CC_swap": _swap, "reparam": _reparam,
}


def _apply(front, m):
    if m.kind not in _APPLY:
        raise InvalidSite(f"unknown move kind {m.kind!r}")
    table = FiberTable.from_front(front)
    try:
        return _APPLY[m.kind](table, m)
    except (KeyError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InvalidSite(f"pattern precondition fails: {exc}") from None


def apply_move(front, m):
    """Apply move ``m``; raises InvalidSite when the site does not fit."""
    if isinstance(m, str):
        m = MoveSpec.parse(m)
    return _apply(front, m).front


def candidate_moves(front):
    """Pattern-level sites, before the validity filter."""
    table = FiberTable.from_front(front)
    ev = table.events
    out = []
    for k in range(len(table.xs) - 1):
        for s in table.slice_ids(k):
            for side in (1, -1):
                out.append(MoveSpec("R1_birth", (k, s), side))
    for j, e in enumerate(ev):
        out.append(MoveSpec("reparam", (j,), 1))
        out.append(MoveSpec("reparam", (j,), -1))
        if e.kind == BEND:
            continue
        three = _chain(table, j, 3)
        kinds3 = tuple(ev[k].kind for k in three) if three else ()
        if kinds3 == (BIRTH, CROSSING, DEATH):
            out.append(MoveSpec("R1_death", (j,)))
        if kinds3 == (CROSSING,) * 3:
            out.append(MoveSpec("R3", (j,)))
        if e.kind in CUSPS:
            out.append(MoveSpec("R2_in", (j,), 1))
            out.append(MoveSpec("R2_in", (j,), -1))
            out.append(MoveSpec("R2_out", (j,)))
        two = _chain(table, j, 2)
        if two and not set(e.strands) & set(ev[two[1]].strands):
            out.append(MoveSpec(_swap_kind(e, ev[two[1]]), (j,)))
    return out


# templates whose output is valid whenever the pattern matches
ALWAYS_VALID = ("R1_birth", "R1_death", "reparam")


def available_moves(front):
    """Every site whose rewrite yields a valid front."""
    out = []
    for m in candidate_moves(front):
        if m.kind not in ALWAYS_VALID:
            try:
                _apply(front, m)
            except InvalidSite:
                continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# ruling continuation
# ---------------------------------------------------------------------------

def _states(front, ruling):
    """Right-hand state after each non-bend event, keyed by fiber x:
    pairs and marking displacements measured at the fiber."""
    circular = isinstance(ruling, CircularRuling)
    mu = compute_maslov(front).mu
    pair, off = {}, ({} if circular else None)
    out = {}
    for i, ev in enumerate(front.events):
        pair, off = _step(front, mu, i, pair, off, ruling.switches[i], circular)
        if ev.kind == BEND:
            continue
        x = front.fiber(i)
        right = {a.strand_id: a.theta_left for a in front.slices[i + 1].arcs}
        d = {}
        if circular:
            d = {a: right[b] - right[a] + off[a] for a, b in pair.items()}
        out[x] = (pair, d)
    return out


def _constrained(front, circular, fixed):
    """Rulings whose crossing flags match ``fixed`` (event index -> flag)."""
    mu = compute_maslov(front).mu
    events = front.events
    out = []

    def rec(i, pair, off, flags, pairings, offsets):
        if i == len(events):
            if circular:
                out.append(CircularRuling(tuple(flags), tuple(pairings), tuple(offsets)))
            else:
                out.append(DiskRuling(tuple(flags), tuple(pairings)))
            return
        if events[i].kind != CROSSING:
            choices = (False,)
        elif i in fixed:
            choices = (fixed[i],)
        else:
            choices = (False, True)
        for sw in choices:
            try:
                p2, o2 = _step(front, mu, i, pair, off, sw, circular)
            except _Dead:
                continue
            rec(i + 1, p2, o2, flags + [sw], pairings + [_freeze_pairs(p2)],
                offsets + [_freeze_offsets(p2, o2)] if circular else offsets)

    rec(0, {}, {} if circular else None, [], [()], [()] if circular else [])
    return out


def continue_ruling(front, m, r):
    """The unique normal ruling after move ``m`` that agrees with ``r`` away
    from the move and has the same chi."""
    if isinstance(m, str):
        m = MoveSpec.parse(m)
    check_normal(front, r)
    res = _apply(front, m)
    g = res.front
    A, B = res.window
    circular = isinstance(r, CircularRuling)
    old = _states(front, r)
    new_index = {g.fiber(i): i for i in range(len(g.events))}
    fixed = {}
    for i, ev in enumerate(front.events):
        x = front.fiber(i)
        if ev.kind == CROSSING and not A < x < B:
            fixed[new_index[x]] = r.switches[i]
    target = chi(front, r)
    found = []
    for cand in _constrained(g, circular, fixed):
        if chi(g, cand) != target:
            continue
        states = _states(g, cand)
        ok = True
        for x, (pair, d) in old.items():
            if A < x < B:
                continue
            ren = res.rename if x >= B else {}
            mp = {ren.get(a, a): ren.get(b, b) for a, b in pair.items()}
            md = {ren.get(a, a): v for a, v in d.items()}
            if states.get(x) != (mp, md):
                ok = False
                break
        if ok:
            found.append(cand)
    if len(found) != 1:
        raise ContinuationError(f"{len(found)} continuations of the ruling across {m.text()}", count=len(found))
    return found[0]


# ---------------------------------------------------------------------------
# fuzzing
# ---------------------------------------------------------------------------

def fuzz_moves(front, seed, n, max_crossings=None, kinds=None):
    """Random walk of ``n`` moves; deterministic in (front, seed, n).

    Each step picks a kind uniformly among kinds with a candidate site, then
    a site uniformly within that kind, rejecting sites that do not apply (or
    exceed ``max_crossings``).  Returns (fronts, moves).
    """
    rng = random.Random(seed)
    fronts, moves = [front], []
    f = front
    for _ in range(n):
        by_kind = {}
        for mv in candidate_moves(f):
            if not kinds or mv.kind in kinds:
                by_kind.setdefault(mv.kind, []).append(mv)
        choice = None
        while by_kind and choice is None:
            kind = rng.choice(sorted(by_kind))
            sites = by_kind[kind]
            mv = sites.pop(rng.randrange(len(sites)))
            if not sites:
                del by_kind[kind]
            try:
                g = _apply(f, mv).front
            except InvalidSite:
                continue
            if max_crossings is not None and len(g.crossing_indices()) > max_crossings:
                continue
            choice = (mv, g)
        if choice is None:
            break
        moves.append(choice[0])
        f = choice[1]
        fronts.append(f)
    return fronts, moves


def trajectory_log(fronts, moves):
    """One line per step: index, move text, hash of the resulting front."""
    lines = [f"0 start {front_hash(fronts[0])}"]
    for k, (mv, f) in enumerate(zip(moves, fronts[1:]), start=1):
        lines.append(f"{k} {mv.text()} {front_hash(f)}")
    return lines
