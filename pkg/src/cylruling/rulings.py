"""Normal disk rulings and normal circular rulings of cylinder fronts.

A ruling is built left to right.  Between events it is a fixed-point-free
pairing of the strands in the slice; only crossings offer a choice (switch or
not), so a ruling is determined by its switch flags.  Circular rulings carry
in addition an integer offset per paired strand: the marking of strand ``a``
paired with ``b`` is the lifted displacement

    d_a(x) = L_b(x) - L_a(x) + n_a,

which is antisymmetric (n_b = -n_a) and, with n_a fixed, constant in class
along smooth strands.  Births force d = 0; deaths require it.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BadParams, CutHitsFront, NotACrossing, NotNormal, NotShort
from .front import (BEND, BIRTH, CROSSING, DEATH, CoverInterval, compute_maslov, cover_linking, frac)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DiskRuling:
    switches: tuple   # per event: True iff a switching crossing
    pairings: tuple   # per slice: sorted tuple of sorted id pairs

    def partner(self, slice_index, sid):
        for a, b in self.pairings[slice_index]:
            if a == sid:
                return b
            if b == sid:
                return a
        raise KeyError(sid)

    def switch_count(self):
        return sum(self.switches)


@dataclass(frozen=True)
class CircularRuling:
    switches: tuple
    pairings: tuple
    offsets: tuple    # per slice: sorted tuple of (a, b, n_a) with a < b

    partner = DiskRuling.partner
    switch_count = DiskRuling.switch_count

    def offset(self, slice_index, sid):
        for a, b, n in self.offsets[slice_index]:
            if a == sid:
                return n
            if b == sid:
                return -n
        raise KeyError(sid)


@dataclass(frozen=True)
class CrossingClass:
    switching: bool
    positive: bool
    maslov: bool


@dataclass(frozen=True)
class Eye:
    birth_event: int
    death_event: int
    segments: tuple   # (slice index, (upper id, lower id))

    def slices(self):
        return [s for s, _ in self.segments]


@dataclass(frozen=True)
class LengthSpectrum:
    x: Fraction
    lengths: tuple    # sorted

    def __len__(self):
        return len(self.lengths)


# ---------------------------------------------------------------------------
# local geometry at an event
# ---------------------------------------------------------------------------

def fiber_lifts(front, i):
    """Lifts of all strands touching the fiber of event ``i``."""
    v = {a.strand_id: a.theta_right for a in front.slices[i].arcs}
    v.update({a.strand_id: a.theta_left for a in front.slices[i + 1].arcs})
    return v


def upper_lower(front, i):
    """Crossing strands of event ``i`` as (upper, lower) just left of the fiber."""
    a, b = front.events[i].strands
    left = front.slices[i]
    return (a, b) if left.slope(a) < left.slope(b) else (b, a)


def _disk_positive(lifts, up, lo, t_up, t_lo):
    p = lifts[up]
    return frac(lifts[t_up] - p) < frac(lifts[t_lo] - p)


def _circular_positive(d_up, d_lo):
    delta = min(abs(d_up), abs(d_lo), abs(d_up - d_lo)) / 4
    i1 = CoverInterval(*sorted((delta, delta + d_up)))
    i2 = CoverInterval(*sorted((-delta, -delta + d_lo)))
    return cover_linking(i1, i2) == 0


# ---------------------------------------------------------------------------
# propagation across one event
# ---------------------------------------------------------------------------

class _Dead(Exception):
    pass


def _step(front, mu, i, pair, off, switch, circular):
    """Push the state (pairing, offsets) across event ``i``.

    Returns the new (pair, off); raises _Dead when the branch is not a normal
    ruling.  ``off`` is None for disk rulings.
    """
    ev = front.events[i]
    lifts = fiber_lifts(front, i)
    pair = dict(pair)
    off = None if off is None else dict(off)
    if ev.kind == BEND:
        if switch:
            raise _Dead
        return pair, off
    if ev.kind == BIRTH:
        if switch:
            raise _Dead
        a, b = ev.strands
        pair[a], pair[b] = b, a
        if circular:
            off[a] = lifts[a] - lifts[b]
            off[b] = -off[a]
        return pair, off
    if ev.kind == DEATH:
        if switch:
            raise _Dead
        a, b = ev.strands
        if pair.get(a) != b:
            raise _Dead
        if circular and lifts[b] - lifts[a] + off[a] != 0:
            raise _Dead
        for s in (a, b):
            del pair[s]
            if circular:
                del off[s]
        return pair, off
    up, lo = upper_lower(front, i)
    maslov = mu[up] == mu[lo]
    if pair[up] == lo:
        if not circular:
            raise _Dead          # crossing strands may not be paired
        if lifts[lo] - lifts[up] + off[up] == 0:
            raise _Dead          # marking must stay nontrivial
        if switch:
            # the exchange option; paired strands never share a Maslov value
            if not maslov:
                raise _Dead
            raise AssertionError("exchange at a non-image crossing survived the Maslov test")
        return pair, off
    if not switch:
        return pair, off
    if not maslov:
        raise _Dead
    t_up, t_lo = pair[up], pair[lo]
    if circular:
        d_up = lifts[t_up] - lifts[up] + off[up]
        d_lo = lifts[t_lo] - lifts[lo] + off[lo]
        if not _circular_positive(d_up, d_lo):
            raise _Dead
        # right of the fiber ``lo`` holds the upper position
        off[lo] = d_up - (lifts[t_up] - lifts[lo])
        off[up] = d_lo - (lifts[t_lo] - lifts[up])
        off[t_up], off[t_lo] = -off[lo], -off[up]
    elif not _disk_positive(lifts, up, lo, t_up, t_lo):
        raise _Dead
    pair[lo], pair[t_up] = t_up, lo
    pair[up], pair[t_lo] = t_lo, up
    return pair, off


def _freeze_pairs(pair):
    return tuple(sorted((a, b) for a, b in pair.items() if a < b))


def _freeze_offsets(pair, off):
    return tuple(sorted((a, b, off[a]) for a, b in pair.items() if a < b))


def _enumerate(front, circular):
    mu = compute_maslov(front).mu
    events = front.events
    out = []
    first = ({}, {} if circular else None)

    def rec(i, pair, off, flags, pairings, offsets):
        if i == len(events):
            if circular:
                out.append(CircularRuling(tuple(flags), tuple(pairings), tuple(offsets)))
            else:
                out.append(DiskRuling(tuple(flags), tuple(pairings)))
            return
        choices = (False, True) if events[i].kind == CROSSING else (False,)
        for sw in choices:
            try:
                p2, o2 = _step(front, mu, i, pair, off, sw, circular)
            except _Dead:
                continue
            rec(i + 1, p2, o2, flags + [sw], pairings + [_freeze_pairs(p2)],
                offsets + [_freeze_offsets(p2, o2)] if circular else offsets)

    rec(0, first[0], first[1], [], [()], [()] if circular else [])
    return out


def enumerate_disk_rulings(front):
    """All normal disk rulings, ordered lexicographically by switch flags."""
    return _enumerate(front, circular=False)


def enumerate_circular_rulings(front):
    """All normal circular rulings, ordered lexicographically by switch flags."""
    return _enumerate(front, circular=True)


def _count(front, circular):
    mu = compute_maslov(front).mu
    states = {((), ()): 1}
    for i, ev in enumerate(front.events):
        nxt = {}
        choices = (False, True) if ev.kind == CROSSING else (False,)
        for (pkey, okey), c in states.items():
            pair = {}
            for a, b in pkey:
                pair[a], pair[b] = b, a
            off = {}
            for a, b, n in okey:
                off[a], off[b] = n, -n
            for sw in choices:
                try:
                    p2, o2 = _step(front, mu, i, pair, off if circular else None, sw, circular)
                except _Dead:
                    continue
                key = (_freeze_pairs(p2), _freeze_offsets(p2, o2) if circular else ())
                nxt[key] = nxt.get(key, 0) + c
        states = nxt
    return sum(states.values())


def count_disk_rulings(front):
    """Number of normal disk rulings (state-merging sweep, no enumeration)."""
    return _count(front, circular=False)


def count_circular_rulings(front):
    return _count(front, circular=True)


# ---------------------------------------------------------------------------
# per-ruling quantities
# ---------------------------------------------------------------------------

def _state_before(ruling, i):
    pair = {}
    for a, b in ruling.pairings[i]:
        pair[a], pair[b] = b, a
    off = None
    if isinstance(ruling, CircularRuling):
        off = {}
        for a, b, n in ruling.offsets[i]:
            off[a], off[b] = n, -n
    return pair, off


def classify_crossing(front, ruling, event_index):
    ev = front.events[event_index]
    if ev.kind != CROSSING:
        raise NotACrossing(f"event {event_index} is a {ev.kind}", event=event_index)
    mu = compute_maslov(front).mu
    up, lo = upper_lower(front, event_index)
    maslov = mu[up] == mu[lo]
    switching = bool(ruling.switches[event_index])
    if not switching:
        return CrossingClass(False, True, maslov)
    pair, off = _state_before(ruling, event_index)
    lifts = fiber_lifts(front, event_index)
    t_up, t_lo = pair[up], pair[lo]
    if off is None:
        positive = _disk_positive(lifts, up, lo, t_up, t_lo)
    else:
        positive = _circular_positive(lifts[t_up] - lifts[up] + off[up], lifts[t_lo] - lifts[lo] + off[lo])
    return CrossingClass(True, positive, maslov)


def check_normal(front, ruling):
    """Replay ``ruling`` from the left; raise NotNormal where it breaks."""
    circular = isinstance(ruling, CircularRuling)
    mu = compute_maslov(front).mu
    if len(ruling.switches) != len(front.events) or len(ruling.pairings) != len(front.slices):
        raise NotNormal("ruling does not match the front's event structure")
    pair, off = {}, ({} if circular else None)
    for i in range(len(front.events)):
        try:
            pair, off = _step(front, mu, i, pair, off, ruling.switches[i], circular)
        except _Dead:
            raise NotNormal(f"ruling breaks at event {i}", event=i) from None
        if _freeze_pairs(pair) != ruling.pairings[i + 1] or \
                (circular and _freeze_offsets(pair, off) != ruling.offsets[i + 1]):
            raise NotNormal(f"ruling data disagrees with propagation at event {i}", event=i)
    return ruling


def chi(front, ruling):
    births = sum(1 for e in front.events if e.kind == BIRTH)
    return Fraction(ruling.switch_count() - births)


def eyes(front, r):
    """Decompose the front into the eyes of a disk ruling.

    Eyes are followed positionally: through a switch the eye of the upper
    pair continues along whichever strand holds the upper position.
    """
    open_eyes = {}   # frozenset pair -> (eye id)
    records = {}
    births = {}
    deaths = {}
    next_id = 0
    for i in range(len(front.slices)):
        if i > 0:
            ev = front.events[i - 1]
            if ev.kind == BIRTH:
                open_eyes[frozenset(ev.strands)] = next_id
                records[next_id] = []
                births[next_id] = i - 1
                next_id += 1
            elif ev.kind == DEATH:
                eid = open_eyes.pop(frozenset(ev.strands))
                deaths[eid] = i - 1
            elif ev.kind == CROSSING and r.switches[i - 1]:
                up, lo = upper_lower(front, i - 1)
                t_up = r.partner(i - 1, up)
                t_lo = r.partner(i - 1, lo)
                e_up = open_eyes.pop(frozenset((up, t_up)))
                e_lo = open_eyes.pop(frozenset((lo, t_lo)))
                open_eyes[frozenset((lo, t_up))] = e_up
                open_eyes[frozenset((up, t_lo))] = e_lo
        for a, b in r.pairings[i]:
            s = front.slices[i]
            mid = s.midpoint()
            hi_first = (a, b) if s.value(a, mid) >= s.value(b, mid) else (b, a)
            records[open_eyes[frozenset((a, b))]].append((i, hi_first))
    return [Eye(births[e], deaths[e], tuple(records[e])) for e in range(next_id)]


# ---------------------------------------------------------------------------
# length spectra
# ---------------------------------------------------------------------------

def _side_slice(front, x, side):
    x = Fraction(x)
    idx = front.slice_at(x, side)
    if idx is None or not front.slices[idx].arcs:
        other = front.slice_at(x, "left" if side == "right" else "right")
        if other is not None and front.slices[other].arcs and \
                (x == front.slices[other].x_left or x == front.slices[other].x_right):
            return other
        return idx
    return idx


def _pair_length(ruling, s_idx, s, a, b, x):
    if isinstance(ruling, CircularRuling):
        return abs(s.value(b, x) - s.value(a, x) + ruling.offset(s_idx, a))
    d = frac(abs(s.value(a, x) - s.value(b, x)))
    return min(d, 1 - d)


def length_spectrum(front, ruling, x, side="right"):
    """Bar lengths of ``ruling`` at fiber ``x``.

    On an event fiber ``side`` selects the one-sided limit; if that side is
    empty the other side is used.
    """
    x = Fraction(x)
    return LengthSpectrum(x, tuple(sorted(bar_lengths(front, ruling, x, side).values())))


def bar_lengths(front, ruling, x, side="right"):
    """``{(a, b): length}`` for every pair of ``ruling`` at fiber ``x``."""
    x = Fraction(x)
    idx = _side_slice(front, x, side)
    if idx is None:
        return {}
    s = front.slices[idx]
    return {(a, b): _pair_length(ruling, idx, s, a, b, x) for a, b in ruling.pairings[idx]}


def _critical_points(s, a, b, circular):
    pts = {s.x_left, s.x_right}
    if not circular:
        d0 = s.arc(a).theta_left - s.arc(b).theta_left
        d1 = s.arc(a).theta_right - s.arc(b).theta_right
        if d0 != d1:
            lo, hi = sorted((d0, d1))
            k = math.ceil(lo - HALF)
            while k + HALF <= hi:
                if lo < k + HALF < hi:
                    pts.add(s.x_left + (k + HALF - d0) / (d1 - d0) * s.width)
                k += 1
    return pts


def max_length(front, ruling):
    circular = isinstance(ruling, CircularRuling)
    best = Fraction(0)
    for idx, s in enumerate(front.slices):
        for a, b in ruling.pairings[idx]:
            for x in _critical_points(s, a, b, circular):
                best = max(best, _pair_length(ruling, idx, s, a, b, x))
    return best


def critical_fibers(front, ruling):
    """Fibers where some bar length may have a local extremum."""
    circular = isinstance(ruling, CircularRuling)
    pts = set()
    for idx, s in enumerate(front.slices):
        pts |= {s.x_left, s.x_right}
        for a, b in ruling.pairings[idx]:
            pts |= _critical_points(s, a, b, circular)
    return sorted(pts)


def is_eps_short(front, ruling, eps):
    eps = Fraction(eps)
    if eps <= 0:
        raise BadParams("eps must be positive")
    return max_length(front, ruling) < HALF - eps


# ---------------------------------------------------------------------------
# expansion of short disk rulings
# ---------------------------------------------------------------------------

def expand_short(front, r):
    """Attach the short marking to a disk ruling whose eyes never go antipodal."""
    check_normal(front, r)
    mu = compute_maslov(front).mu
    eye_list = eyes(front, r)
    slice_eye = {}
    for k, e in enumerate(eye_list):
        for i, (a, b) in e.segments:
            slice_eye[(i, frozenset((a, b)))] = k
    pair, off = {}, {}
    offsets = [()]
    for i in range(len(front.events)):
        try:
            pair, off = _step(front, mu, i, pair, off, r.switches[i], circular=True)
        except _Dead:
            raise NotNormal(f"expanded ruling is not normal at event {i}", event=i) from None
        s = front.slices[i + 1]
        for a, b in _freeze_pairs(pair):
            for x in (s.x_left, s.x_right):
                if abs(s.value(b, x) - s.value(a, x) + off[a]) >= HALF:
                    raise NotShort(f"eye {slice_eye[(i + 1, frozenset((a, b)))]} reaches separation 1/2 at x={x}",
                                   eye=slice_eye[(i + 1, frozenset((a, b)))], fiber=x)
        offsets.append(_freeze_offsets(pair, off))
    return check_normal(front, CircularRuling(r.switches, r.pairings, tuple(offsets)))


# ---------------------------------------------------------------------------
# planar rulings after cutting the cylinder
# ---------------------------------------------------------------------------

def planar_ruling_count(front, cut):
    """Cut the cylinder open at angle ``cut`` and count planar normal rulings.

    Heights are ``frac(lift - cut)``; the count runs an independent planar
    sweep with the classical switch conditions.
    """
    cut = Fraction(cut)
    for idx, s in enumerate(front.slices):
        for arc in s.arcs:
            lo, hi = sorted((arc.theta_left - cut, arc.theta_right - cut))
            if math.floor(lo) != math.floor(hi) or lo == math.floor(lo) or hi == math.floor(hi):
                raise CutHitsFront(f"the cut meets strand {arc.strand_id} in slice {idx}",
                                   slice=idx, strand=arc.strand_id)
    mu = compute_maslov(front).mu
    states = {(): 1}
    for i, ev in enumerate(front.events):
        left, right = front.slices[i], front.slices[i + 1]
        h = {a.strand_id: frac(a.theta_right - cut) for a in left.arcs}
        h.update({a.strand_id: frac(a.theta_left - cut) for a in right.arcs})
        nxt = {}
        for key, c in states.items():
            pair = {}
            for a, b in key:
                pair[a], pair[b] = b, a
            for new in _planar_step(ev, pair, h, left, mu):
                k2 = _freeze_pairs(new)
                nxt[k2] = nxt.get(k2, 0) + c
        states = nxt
    return sum(states.values())


def _planar_step(ev, pair, h, left, mu):
    if ev.kind == BEND:
        return [pair]
    a, b = ev.strands
    if ev.kind == BIRTH:
        return [{**pair, a: b, b: a}]
    if ev.kind == DEATH:
        if pair.get(a) != b:
            return []
        return [{k: v for k, v in pair.items() if k not in (a, b)}]
    if pair[a] == b:
        return []
    out = [pair]
    if mu[a] != mu[b]:
        return out
    # the strand coming from above has the smaller slope
    up, lo = (a, b) if left.slope(a) < left.slope(b) else (b, a)
    eps = min([abs(h[s] - h[t]) for s, t in combinations(h, 2) if h[s] != h[t]] + [Fraction(1)]) / 4
    iu = sorted((h[up] + eps, h[pair[up]]))
    il = sorted((h[lo] - eps, h[pair[lo]]))
    interleaved = (iu[0] < il[0] < iu[1]) != (iu[0] < il[1] < iu[1])
    if not interleaved:
        new = dict(pair)
        t_up, t_lo = pair[up], pair[lo]
        new[lo], new[t_up] = t_up, lo
        new[up], new[t_lo] = t_lo, up
        out.append(new)
    return out
