"""Representations of the cyclic quiver over F_p and their bar decompositions.

A representation on ``n`` vertices carries one matrix per arrow
``V_i -> V_{i+1 mod n}``.  Nilpotent ones split into bars: a bar starting at
vertex ``s`` of length ``L`` is a chain of ``L`` basis vectors at vertices
``s, s+1, ...`` (wrapping around) joined by identities, the last one killed.

The linear quiver A_n is handled as a cyclic rep whose closing arrow is zero.
"""
import json
import random
from collections import Counter
from dataclasses import dataclass

from .errors import BadParams, NonNilpotentCohomology, NotNilpotent, ParseError
from .fp import Matrix, block_diag, check_prime, extend, random_invertible, solve, span_basis

DEFAULT_P = 5


@dataclass(frozen=True, order=True)
class BarClass:
    start: int
    length: int
    shift: int = 0

    def __post_init__(self):
        if self.length < 1 or self.start < 0 or self.shift not in (0, 1):
            raise BadParams("bad bar", start=self.start, length=self.length, shift=self.shift)

    @property
    def interval(self):
        """Closed vertex interval; meaningful for linear-quiver bars."""
        return self.start, self.start + self.length - 1

    def to_list(self):
        return [self.start, self.length, self.shift]


@dataclass(frozen=True)
class CyclicQuiverRep:
    n: int
    p: int
    dims: tuple
    arrows: tuple

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1 or len(self.dims) != self.n or len(self.arrows) != self.n:
            raise BadParams("rep needs one dim and one arrow per vertex", n=self.n)
        for i, a in enumerate(self.arrows):
            if a.p != self.p or a.shape != (self.dims[(i + 1) % self.n], self.dims[i]):
                raise BadParams(f"arrow {i} has the wrong shape", shape=a.shape)

    @property
    def total_dim(self):
        return sum(self.dims)

    def path(self, i, length):
        """Composite of ``length`` arrows starting at vertex ``i``."""
        m = Matrix.identity(self.p, self.dims[i % self.n])
        for k in range(length):
            m = self.arrows[(i + k) % self.n] @ m
        return m


@dataclass(frozen=True)
class LinearQuiverRep:
    """A_n: vertices 1..n, arrows V_k -> V_{k+1}."""
    n: int
    p: int
    dims: tuple
    arrows: tuple

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1 or len(self.dims) != self.n or len(self.arrows) != self.n - 1:
            raise BadParams("linear rep needs n dims and n-1 arrows", n=self.n)
        for i, a in enumerate(self.arrows):
            if a.p != self.p or a.shape != (self.dims[i + 1], self.dims[i]):
                raise BadParams(f"arrow {i} has the wrong shape", shape=a.shape)

    def to_cyclic(self):
        close = Matrix.zero(self.p, self.dims[0], self.dims[-1])
        return CyclicQuiverRep(self.n, self.p, self.dims, self.arrows + (close,))


def zero_rep(n, p=DEFAULT_P):
    return CyclicQuiverRep(n, p, (0,) * n, tuple(Matrix.zero(p, 0, 0) for _ in range(n)))


def make_bar(n, start, length, p=DEFAULT_P):
    if not (isinstance(n, int) and n >= 1 and 0 <= start < n and length >= 1):
        raise BadParams("bar parameters out of range", n=n, start=start, length=length)
    check_prime(p)
    # basis at vertex i: the offsets m with (start + m) % n == i, in order
    slots = [[m for m in range(length) if (start + m) % n == i] for i in range(n)]
    arrows = []
    for i in range(n):
        j = (i + 1) % n
        rows = [[0] * len(slots[i]) for _ in slots[j]]
        for c, m in enumerate(slots[i]):
            if m + 1 < length:
                rows[slots[j].index(m + 1)][c] = 1
        arrows.append(Matrix.of(p, len(slots[j]), len(slots[i]), rows))
    return CyclicQuiverRep(n, p, tuple(len(s) for s in slots), tuple(arrows))


def make_interval(n, start, end, p=DEFAULT_P):
    """Interval module on A_n supported on vertices start..end (1-based)."""
    if not 1 <= start <= end <= n:
        raise BadParams("interval out of range", n=n, start=start, end=end)
    bar = make_bar(n, start - 1, end - start + 1, p)
    return LinearQuiverRep(n, p, bar.dims, bar.arrows[:-1])


def direct_sum(a, b):
    if (a.n, a.p) != (b.n, b.p) or type(a) is not type(b):
        raise BadParams("summands live on different quivers")
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    arrows = tuple(block_diag(a.p, x, y) for x, y in zip(a.arrows, b.arrows))
    return type(a)(a.n, a.p, dims, arrows)


def direct_sum_all(reps, n, p=DEFAULT_P):
    out = zero_rep(n, p)
    for r in reps:
        out = direct_sum(out, r)
    return out


def _base_change(rng, rep):
    return [random_invertible(rng, rep.p, d) for d in rep.dims]


def _conjugate(rep, g):
    n = rep.n
    arrows = tuple(g[(i + 1) % n] @ a @ g[i].inverse() for i, a in enumerate(rep.arrows))
    return CyclicQuiverRep(n, rep.p, rep.dims, arrows)


def conjugate_random(rep, seed):
    """An isomorphic copy under a seeded vertex-wise change of basis."""
    if isinstance(rep, LinearQuiverRep):
        out = conjugate_random(rep.to_cyclic(), seed)
        return LinearQuiverRep(rep.n, rep.p, rep.dims, out.arrows[:-1])
    rng = random.Random(seed)
    return _conjugate(rep, _base_change(rng, rep))


def is_nilpotent(rep):
    # psi^D = 0 on the total space iff every path of length D vanishes
    D = rep.total_dim
    return all(rep.path(i, D).is_zero() for i in range(rep.n) if rep.dims[i])


def _kernel_at(rep, i, length):
    """Basis of ker(psi^length) inside V_i."""
    return rep.path(i, length).kernel()


def length_filtration(rep):
    """{(i, l): basis of the vectors at vertex i killed by l propagations}."""
    N = max_length(rep)
    return {(i, l): _kernel_at(rep, i, l) for i in range(rep.n) for l in range(N + 1)}


def max_length(rep):
    D = rep.total_dim
    N = 0
    for i in range(rep.n):
        if rep.dims[i]:
            N = max(N, next(l for l in range(D + 1) if rep.path(i, l).is_zero()))
    return N


def bar_basis(rep):
    """Generators of the bar decomposition as ``[(BarClass, vector at start)]``.

    Top-down over lengths L: at each vertex choose generators completing
    ker psi^(L-1) + psi(ker psi^(L+1)) inside ker psi^L.
    """
    if not is_nilpotent(rep):
        raise NotNilpotent("the composite around the cycle is not nilpotent")
    p, n = rep.p, rep.n
    N = max_length(rep)
    filt = length_filtration(rep)
    gens = []
    for L in range(N, 0, -1):
        for i in range(n):
            if not rep.dims[i]:
                continue
            prev = (i - 1) % n
            incoming = rep.arrows[prev]
            pushed = [incoming @ v for v in filt.get((prev, L + 1), _kernel_at(rep, prev, L + 1))]
            base = span_basis(p, list(filt[(i, L - 1)]) + pushed)
            for v in extend(p, base, span_basis(p, filt[(i, L)])):
                gens.append((BarClass(i, L), v))
    return gens


def chain_basis(rep, gens):
    """The chains psi^m v of every generator, grouped per vertex."""
    per = [[] for _ in range(rep.n)]
    for bar, v in gens:
        w = v
        for m in range(bar.length):
            per[(bar.start + m) % rep.n].append(w)
            w = rep.arrows[(bar.start + m) % rep.n] @ w
    return per


def decompose_nilpotent_cyclic(rep):
    """Sorted multiset of bars; raises NotNilpotent otherwise."""
    gens = bar_basis(rep)
    per = chain_basis(rep, gens)
    for i, vs in enumerate(per):
        # the chains must form a basis at every vertex
        if len(vs) != rep.dims[i] or len(span_basis(rep.p, vs)) != rep.dims[i]:
            raise AssertionError(f"chains do not form a basis at vertex {i}")
    return tuple(sorted(bar for bar, _ in gens))


def decompose_linear(rep):
    """Interval bars of an A_n rep, with 1-based starts."""
    if isinstance(rep, CyclicQuiverRep):
        if not rep.arrows[-1].is_zero():
            raise BadParams("closing arrow must vanish for a linear rep")
        rep = LinearQuiverRep(rep.n, rep.p, rep.dims, rep.arrows[:-1])
    bars = decompose_nilpotent_cyclic(rep.to_cyclic())
    return tuple(sorted(BarClass(b.start + 1, b.length) for b in bars))


def bar_footprint(bars, n):
    dims = [0] * n
    for b in bars:
        for m in range(b.length):
            dims[(b.start + m) % n] += 1
    return tuple(dims)


def bars_from_ranks(rep):
    """Bar multiplicities from path ranks alone: a bar (s, L) is counted by
    r(s, L-1) - r(s-1, L) - r(s, L) + r(s-1, L+1) with r(i, l) = rank of the
    length-l path from i.  Independent of any basis choice."""
    n = rep.n
    D = rep.total_dim

    def r(i, l):
        return rep.path(i % n, l).rank()
    out = Counter()
    for s in range(n):
        for L in range(1, D + 1):
            c = r(s, L - 1) - r(s - 1, L) - r(s, L) + r(s - 1, L + 1)
            if c:
                out[BarClass(s, L)] += c
    return tuple(sorted(out.elements()))


# -- 2-periodic complexes -------------------------------------------------

@dataclass(frozen=True)
class PeriodicComplex:
    even: CyclicQuiverRep
    odd: CyclicQuiverRep
    d0: tuple   # per vertex, E_i -> O_i
    d1: tuple   # per vertex, O_i -> E_i

    def __post_init__(self):
        E, O = self.even, self.odd
        if (E.n, E.p) != (O.n, O.p) or len(self.d0) != E.n or len(self.d1) != E.n:
            raise BadParams("complex pieces live on different quivers")
        for i in range(E.n):
            j = (i + 1) % E.n
            a, b = self.d0[i], self.d1[i]
            if a.shape != (O.dims[i], E.dims[i]) or b.shape != (E.dims[i], O.dims[i]):
                raise BadParams(f"differential at vertex {i} has the wrong shape")
            if not ((b @ a).is_zero() and (a @ b).is_zero()):
                raise BadParams(f"differentials do not compose to zero at vertex {i}")
            if O.arrows[i] @ a != self.d0[j] @ E.arrows[i] or E.arrows[i] @ b != self.d1[j] @ O.arrows[i]:
                raise BadParams(f"differentials do not commute with arrow {i}")

    @property
    def n(self):
        return self.even.n

    @property
    def p(self):
        return self.even.p


def _cohomology(p, n, rep, d_out, d_in):
    """ker d_out / im d_in as a rep, with arrows induced through the splitting
    ker = im (+) C where C extends an RREF basis of im."""
    ims, comps = [], []
    for i in range(n):
        im = d_in[i].image()
        ker = d_out[i].kernel()
        ims.append(im)
        comps.append(extend(p, im, span_basis(p, ker)))
    arrows = []
    for i in range(n):
        j = (i + 1) % n
        cols = []
        for c in comps[i]:
            w = rep.arrows[i] @ c
            x = solve(p, ims[j] + comps[j], w, rep.dims[j])
            if x is None:
                raise AssertionError("induced arrow leaves the kernel")
            cols.append(x[len(ims[j]):])
        arrows.append(Matrix.from_columns(p, len(comps[j]), cols))
    return CyclicQuiverRep(n, p, tuple(len(c) for c in comps), tuple(arrows))


def periodic_cohomology(c):
    """(H_even, H_odd) = (ker d0 / im d1, ker d1 / im d0) with induced arrows."""
    h_even = _cohomology(c.p, c.n, c.even, c.d0, c.d1)
    h_odd = _cohomology(c.p, c.n, c.odd, c.d1, c.d0)
    return h_even, h_odd


def decompose_periodic(c):
    h_even, h_odd = periodic_cohomology(c)
    if not (is_nilpotent(h_even) and is_nilpotent(h_odd)):
        raise NonNilpotentCohomology("cohomology carries a local-system summand")
    bars = [BarClass(b.start, b.length, 0) for b in decompose_nilpotent_cyclic(h_even)]
    bars += [BarClass(b.start, b.length, 1) for b in decompose_nilpotent_cyclic(h_odd)]
    return tuple(sorted(bars))


def zero_differentials(even, odd):
    p, n = even.p, even.n
    d0 = tuple(Matrix.zero(p, odd.dims[i], even.dims[i]) for i in range(n))
    d1 = tuple(Matrix.zero(p, even.dims[i], odd.dims[i]) for i in range(n))
    return PeriodicComplex(even, odd, d0, d1)


def _stack(p, blocks):
    """Block matrix from a grid of matrices (None for zero blocks)."""
    rows_h = [next(b.rows for b in row if b is not None) for row in blocks]
    cols_w = [next(blocks[r][k].cols for r in range(len(blocks)) if blocks[r][k] is not None)
              for k in range(len(blocks[0]))]
    out = []
    for r, row in enumerate(blocks):
        for i in range(rows_h[r]):
            line = []
            for k, b in enumerate(row):
                line += list(b.entries[i]) if b is not None else [0] * cols_w[k]
            out.append(line)
    return Matrix.of(p, sum(rows_h), sum(cols_w), out)


def random_bars(rng, n, max_dim, max_bars=None):
    """Random bar multiset with total dimension at most ``max_dim``."""
    bars, left = [], max_dim
    count = rng.randint(0, max_bars if max_bars is not None else max_dim)
    for _ in range(count):
        if left < 1:
            break
        L = rng.randint(1, left)
        bars.append(BarClass(rng.randrange(n), L))
        left -= L
    return tuple(sorted(bars))


def rep_of_bars(bars, n, p=DEFAULT_P):
    return direct_sum_all((make_bar(n, b.start, b.length, p) for b in bars), n, p)


def random_periodic_complex(seed, n=3, p=DEFAULT_P, max_dim=6):
    """A conjugated complex H_e (+) H_o (+) acyclic cones with known cohomology.

    Returns (complex, even bars, odd bars)."""
    rng = random.Random(seed)
    he, ho = random_bars(rng, n, max_dim // 2), random_bars(rng, n, max_dim // 2)
    x_bars, y_bars = random_bars(rng, n, max_dim // 2), random_bars(rng, n, max_dim // 2)
    H_e, H_o = rep_of_bars(he, n, p), rep_of_bars(ho, n, p)
    X, Y = rep_of_bars(x_bars, n, p), rep_of_bars(y_bars, n, p)
    # E = H_e + X + Y, O = H_o + X + Y; d0 maps X -> X, d1 maps Y -> Y
    E = direct_sum(direct_sum(H_e, X), Y)
    O = direct_sum(direct_sum(H_o, X), Y)
    d0, d1 = [], []
    for i in range(n):
        zx = lambda r, c: Matrix.zero(p, r, c)  # noqa: E731
        he_i, ho_i, x_i, y_i = H_e.dims[i], H_o.dims[i], X.dims[i], Y.dims[i]
        d0.append(_stack(p, [[zx(ho_i, he_i), zx(ho_i, x_i), zx(ho_i, y_i)],
                             [zx(x_i, he_i), Matrix.identity(p, x_i), zx(x_i, y_i)],
                             [zx(y_i, he_i), zx(y_i, x_i), zx(y_i, y_i)]]))
        d1.append(_stack(p, [[zx(he_i, ho_i), zx(he_i, x_i), zx(he_i, y_i)],
                             [zx(x_i, ho_i), zx(x_i, x_i), zx(x_i, y_i)],
                             [zx(y_i, ho_i), zx(y_i, x_i), Matrix.identity(p, y_i)]]))
    gE, gO = _base_change(rng, E), _base_change(rng, O)
    E2, O2 = _conjugate(E, gE), _conjugate(O, gO)
    d0 = tuple(gO[i] @ d0[i] @ gE[i].inverse() for i in range(n))
    d1 = tuple(gE[i] @ d1[i] @ gO[i].inverse() for i in range(n))
    return PeriodicComplex(E2, O2, d0, d1), he, ho


# -- serialization ---------------------------------------------------------

def rep_to_dict(rep):
    return {"n": rep.n, "p": rep.p, "dims": list(rep.dims), "arrows": [a.tolist() for a in rep.arrows]}


def rep_from_dict(data, linear=False):
    try:
        n, p, dims = int(data["n"]), int(data["p"]), tuple(int(d) for d in data["dims"])
        arrows = data["arrows"]
        count = n - 1 if linear else n
        if len(dims) != n or len(arrows) != count:
            raise ParseError("dims/arrows do not match n", field="arrows")
        mats = []
        for i, a in enumerate(arrows):
            rows, cols = dims[(i + 1) % n], dims[i]
            if len(a) != rows or any(len(r) != cols for r in a):
                raise ParseError(f"arrow {i} must be {rows}x{cols}", field=f"arrows[{i}]")
            mats.append(Matrix.of(p, rows, cols, a))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad rep record: {exc}") from exc
    cls = LinearQuiverRep if linear else CyclicQuiverRep
    return cls(n, p, dims, tuple(mats))


def complex_to_dict(c):
    return {"even": rep_to_dict(c.even), "odd": rep_to_dict(c.odd),
            "d0": [m.tolist() for m in c.d0], "d1": [m.tolist() for m in c.d1]}


def complex_from_dict(data):
    try:
        E, O = rep_from_dict(data["even"]), rep_from_dict(data["odd"])
        p = E.p
        d0 = tuple(Matrix.of(p, O.dims[i], E.dims[i], m) for i, m in enumerate(data["d0"]))
        d1 = tuple(Matrix.of(p, E.dims[i], O.dims[i], m) for i, m in enumerate(data["d1"]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad complex record: {exc}") from exc
    return PeriodicComplex(E, O, d0, d1)


def load_json(stream):
    try:
        return json.loads(stream if isinstance(stream, (str, bytes)) else stream.read())
    except json.JSONDecodeError as exc:
        raise ParseError(f"not JSON: {exc}") from exc
