"""Front generators: realize event words on the cylinder, random words.

A word is a list of letters ``(kind, j)``:

* ``("b", j)``  birth of a new adjacent pair in gap ``j`` (0 <= j <= n)
* ``("d", j)``  death of positions j and j+1 (j = n-1 pairs with 0 across the top)
* ``("x", j)``  crossing of positions j and j+1 (same wrap convention)

Strands sit at evenly spaced levels k/n of the circle.  Each letter takes one
unit of x with its event on the half-integer fiber.
"""
import random
from fractions import Fraction

from .front import front_from_paths

HALF = Fraction(1, 2)


class _Realizer:
    def __init__(self):
        self.paths = {}
        self.order = []       # strand ids by position
        self.wind = {}        # integer winding added to the level
        self.t = Fraction(0)
        self.next_id = 1

    def level(self, pos, n=None):
        n = len(self.order) if n is None else n
        return Fraction(pos, n)

    def lift(self, sid, pos, n=None):
        return self.level(pos, n) + self.wind[sid]

    def put(self, sid, x, y):
        pts = self.paths.setdefault(sid, [])
        if pts and pts[-1][0] == x:
            pts[-1] = (x, y)
        else:
            pts.append((x, y))

    def relayout(self, new_order, x0, x1, skip=()):
        """Move every strand except ``skip`` from its current level to its
        level in ``new_order`` over [x0, x1]."""
        n_old, n_new = len(self.order), len(new_order)
        old_pos = {s: k for k, s in enumerate(self.order)}
        for k, s in enumerate(new_order):
            if s in skip or s not in old_pos:
                continue
            self.put(s, x0, self.lift(s, old_pos[s], n_old))
            self.put(s, x1, self.level(k, n_new) + self.wind[s])

    def birth(self, j):
        t, n = self.t, len(self.order)
        a, b = self.next_id, self.next_id + 1
        self.next_id += 2
        new_order = self.order[:j] + [a, b] + self.order[j:]
        N = n + 2
        self.wind[a] = self.wind[b] = 0
        self.relayout(new_order, t, t + HALF, skip=(a, b))
        c = (Fraction(j) + HALF) / N
        self.put(b, t + HALF, c)
        self.put(a, t + HALF, c)
        self.put(a, t + 1, Fraction(j, N))
        self.put(b, t + 1, Fraction(j + 1, N))
        for k, s in enumerate(new_order):
            if s not in (a, b):
                self.put(s, t + 1, self.level(k, N) + self.wind[s])
        self.order = new_order
        self.t += 1

    def _pair(self, j):
        n = len(self.order)
        if n < 2 or not 0 <= j < n:
            raise ValueError(f"no adjacent pair at position {j}")
        return j, (j + 1) % n

    def death(self, j):
        t, n = self.t, len(self.order)
        p, q = self._pair(j)
        a, b = self.order[p], self.order[q]
        for k, s in enumerate(self.order):
            self.put(s, t, self.lift(s, k))
            self.put(s, t + HALF, self.lift(s, k))
        c = (Fraction(j) + HALF) / n
        self.put(a, t + HALF, c + self.wind[a])
        self.put(b, t + HALF, c + self.wind[b] - (1 if q == 0 else 0))
        self.order = [s for s in self.order if s not in (a, b)]
        for k, s in enumerate(self.order):
            self.put(s, t + 1, self.level(k) + self.wind[s])
        self.t += 1

    def crossing(self, j):
        t, n = self.t, len(self.order)
        p, q = self._pair(j)
        a, b = self.order[p], self.order[q]
        for k, s in enumerate(self.order):
            self.put(s, t, self.lift(s, k))
            if s not in (a, b):
                self.put(s, t + 1, self.lift(s, k))
        c = (Fraction(j) + HALF) / n
        if q == 0:
            # across the top: a rises past 1, b drops below 0
            self.put(a, t + HALF, c + self.wind[a])
            self.put(b, t + HALF, c - 1 + self.wind[b])
            self.wind[a] += 1
            self.wind[b] -= 1
            self.order[p], self.order[q] = b, a
            self.put(a, t + 1, self.lift(a, q))
            self.put(b, t + 1, self.lift(b, p))
        else:
            self.put(a, t + HALF, c + self.wind[a])
            self.put(b, t + HALF, c + self.wind[b])
            self.order[p], self.order[q] = b, a
            self.put(a, t + 1, self.lift(a, q))
            self.put(b, t + 1, self.lift(b, p))
        self.t += 1


def word_front(word):
    """Realize a closed event word as a valid front."""
    r = _Realizer()
    for kind, j in word:
        if kind == "b":
            if not 0 <= j <= len(r.order):
                raise ValueError(f"bad birth gap {j}")
            r.birth(j)
        elif kind == "d":
            r.death(j)
        elif kind == "x":
            r.crossing(j)
        else:
            raise ValueError(f"unknown letter {kind!r}")
    if r.order:
        raise ValueError("word does not close up")
    return front_from_paths(r.paths, Fraction(-1), r.t + 1)


def random_word(rng, max_crossings=8, max_pairs=3, planar=False, wrap_bias=Fraction(1, 4), ruled=True):
    """A random closing word.  ``planar`` forbids letters across the top.

    With ``ruled`` the word is steered by a hidden pairing (new pairs are
    paired, paired strands never cross, only paired neighbours die), so the
    result carries at least one disk ruling without switches.
    """
    word, order, partner = [], [], {}
    crossings = pairs_born = 0
    fresh = iter(range(10 ** 6))

    def adjacent(n):
        js = list(range(n - 1))
        if not planar and n >= 2:
            js.append(n - 1)
        return js

    while True:
        n = len(order)
        cross = [j for j in adjacent(n) if not ruled or partner[order[j]] != order[(j + 1) % n]]
        die = [j for j in adjacent(n) if not ruled or partner[order[j]] == order[(j + 1) % n]]
        options = []
        if pairs_born < max_pairs:
            options.append("b")
        if die:
            options.append("d")
        if cross and crossings < max_crossings:
            options += ["x", "x", "x"]
        if not options or (n == 0 and word and rng.random() < 0.3):
            break
        kind = rng.choice(options)
        if kind == "b":
            j = rng.randint(0, n)
            a, b = next(fresh), next(fresh)
            partner[a], partner[b] = b, a
            order[j:j] = [a, b]
            word.append(("b", j))
            pairs_born += 1
            continue
        pool = cross if kind == "x" else die
        wraps = [j for j in pool if j == n - 1]
        if wraps and len(pool) > 1 and rng.random() < wrap_bias:
            j = wraps[0]
        else:
            j = rng.choice(pool)
        q = (j + 1) % n
        word.append((kind, j))
        if kind == "x":
            order[j], order[q] = order[q], order[j]
            crossings += 1
        else:
            order = [s for k, s in enumerate(order) if k not in (j, q)]
        if not order and pairs_born >= max_pairs:
            break
    while order:
        n = len(order)
        die = [j for j in adjacent(n) if not ruled or partner[order[j]] == order[(j + 1) % n]]
        if die:
            j = rng.choice(die)
            q = (j + 1) % n
            word.append(("d", j))
            order = [s for k, s in enumerate(order) if k not in (j, q)]
            continue
        # no paired neighbours: walk the closest pair together by crossings
        pos = {sid: k for k, sid in enumerate(order)}

        def dist(k):
            d = pos[partner[order[k]]] - k
            return d if planar else d % n
        k = min((k for k in range(n) if dist(k) > 0), key=dist)
        j, q = k, (k + 1) % n
        word.append(("x", j))
        order[j], order[q] = order[q], order[j]
    return word


def _capped_word(rng, max_crossings, max_pairs, planar):
    while True:
        word = random_word(rng, max_crossings, max_pairs, planar)
        if sum(1 for kind, _ in word if kind == "x") <= max_crossings:
            return word


def random_front(seed, max_crossings=8, max_pairs=3, planar=False):
    rng = random.Random(seed)
    return word_front(_capped_word(rng, max_crossings, max_pairs, planar))


def braid_closure(braid, strands):
    """Plat-style closure: ``strands`` pairs born, braid letters, pairs die."""
    word = [("b", 0) for _ in range(strands)]
    word += [("x", j) for j in braid]
    word += [("d", 0) for _ in range(strands)]
    return word_front(word)


def small_front(seed, max_crossings=6, max_pairs=3):
    """A front in a narrow band, sheared so slopes lie in [0, 3/4] and the
    support has width at most 3/4."""
    rng = random.Random(seed)
    f = word_front(_capped_word(rng, max_crossings, max_pairs, planar=True))
    return squeeze(f, Fraction(rng.randrange(1000), 1000))


def squeeze(front, rotation=Fraction(0), width=Fraction(3, 4), slope=Fraction(3, 8)):
    """Rescale a front lying in an angular band of width < 1 so that its
    support has width ``width`` and slopes lie in [0, 2*slope]."""
    from .front import FiberTable
    table = FiberTable.from_front(front)
    if not table.xs:
        return front
    x0, x1 = table.xs[0], table.xs[-1]
    sx = width / (x1 - x0)
    steep = max(abs(table.vals[i + 1][s] - table.vals[i][s]) / (table.xs[i + 1] - table.xs[i])
                for i in range(len(table.xs) - 1) for s in table.slice_ids(i)) / sx
    c = min(Fraction(1), slope / steep) if steep else Fraction(1)
    xs = [(x - x0) * sx for x in table.xs]
    vals = [{s: c * y + slope * X + rotation for s, y in v.items()} for v, X in zip(table.vals, xs)]
    out = FiberTable(xs, vals, table.events, Fraction(-1), width + 1)
    return out.to_front()


def corpus(count=12, seed=0, max_crossings=8):
    """Built-ins plus seeded random fronts."""
    from .front import builtin_front, stacked_saucers
    fronts = {
        "unknot_area_1": builtin_front("unknot_area_1"),
        "flying_saucer": builtin_front("flying_saucer"),
        "stacked_saucers_2": stacked_saucers(2),
        "hopf_pair": builtin_front("hopf_pair"),
        "trefoil_braid": braid_closure([1, 1, 1], 2),
        "r3_braid": braid_closure([1, 2, 1], 3),
        # random words that carry a triangle site with several rulings
        "r3_site_a": random_front(1854),
        "r3_site_b": random_front(1336),
    }
    for k in range(count):
        fronts[f"random_{seed}_{k}"] = random_front(1000 * seed + k, max_crossings)
    return fronts
