"""Dense linear algebra over a prime field F_p.

Matrices are immutable tuples of row tuples with entries in ``range(p)``.
Vectors are plain tuples.  Everything is exact; no floating point anywhere.
"""
from dataclasses import dataclass

from .errors import BadParams

MAX_PRIME = 97


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def check_prime(p):
    if not isinstance(p, int) or not is_prime(p) or p > MAX_PRIME:
        raise BadParams(f"p must be a prime <= {MAX_PRIME}", p=p)
    return p


@dataclass(frozen=True)
class Matrix:
    p: int
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise BadParams("matrix entries do not match its shape", shape=(self.rows, self.cols))

    @classmethod
    def of(cls, p, rows, cols, data):
        return cls(p, rows, cols, tuple(tuple(int(x) % p for x in r) for r in data))

    @classmethod
    def zero(cls, p, rows, cols):
        return cls(p, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, p, n):
        return cls(p, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, p, rows, columns):
        columns = list(columns)
        return cls(p, rows, len(columns), tuple(tuple(c[i] % p for c in columns) for i in range(rows)))

    @property
    def shape(self):
        return self.rows, self.cols

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other):
        if isinstance(other, tuple):
            return tuple(sum(a * b for a, b in zip(r, other)) % self.p for r in self.entries)
        if self.cols != other.rows:
            raise BadParams("shape mismatch", left=self.shape, right=other.shape)
        cols = other.columns()
        return Matrix(self.p, self.rows, other.cols,
                      tuple(tuple(sum(a * b for a, b in zip(r, c)) % self.p for c in cols) for r in self.entries))

    def __add__(self, other):
        return Matrix(self.p, self.rows, self.cols,
                      tuple(tuple((a + b) % self.p for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def is_zero(self):
        return not any(any(r) for r in self.entries)

    def transpose(self):
        return Matrix(self.p, self.cols, self.rows, tuple(self.columns()))

    def rank(self):
        return len(rref(self.p, self.entries)[1])

    def kernel(self):
        return kernel(self.p, self.entries, self.cols)

    def image(self):
        return span_basis(self.p, self.columns())

    def inverse(self):
        if self.rows != self.cols:
            raise BadParams("not square", shape=self.shape)
        n = self.rows
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.entries)]
        red, piv = rref(self.p, aug)
        if [c for c in piv if c < n] != list(range(n)):
            raise BadParams("matrix is singular")
        return Matrix(self.p, n, n, tuple(tuple(r[n:]) for r in red[:n]))

    def tolist(self):
        return [list(r) for r in self.entries]


def rref(p, rows):
    """Reduced row echelon form; pivots are taken at the leftmost column and
    the first row with a nonzero entry there.  Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(x) for x in m], pivots


def kernel(p, rows, ncols):
    """Basis of {v : A v = 0}, one vector per free column."""
    if not rows:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    red, piv = rref(p, rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = -red[r][f] % p
        basis.append(tuple(v))
    return basis


def span_basis(p, vectors):
    """RREF basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    red, piv = rref(p, vectors)
    return [red[i] for i in range(len(piv))]


def dim_span(p, vectors):
    vectors = list(vectors)
    return len(rref(p, vectors)[1]) if vectors else 0


def extend(p, base, candidates):
    """Greedily pick candidates that are independent modulo ``base``."""
    chosen, current = [], list(base)
    r = dim_span(p, current)
    for v in candidates:
        trial = current + [v]
        if dim_span(p, trial) > r:
            current, r = trial, r + 1
            chosen.append(tuple(v))
    return chosen


def solve(p, columns, v, dim):
    """Coordinates x with sum x_j columns[j] = v, or None."""
    if not columns:
        return () if not any(v) else None
    aug = [[c[i] for c in columns] + [v[i]] for i in range(dim)]
    red, piv = rref(p, aug)
    k = len(columns)
    if k in piv:
        return None
    x = [0] * k
    for r, c in enumerate(piv):
        x[c] = red[r][k]
    return tuple(x)


def random_invertible(rng, p, n):
    while True:
        m = Matrix.of(p, n, n, [[rng.randrange(p) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


def block_diag(p, a, b):
    rows = [list(r) + [0] * b.cols for r in a.entries] + [[0] * a.cols + list(r) for r in b.entries]
    return Matrix.of(p, a.rows + b.rows, a.cols + b.cols, rows)
