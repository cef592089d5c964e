"""Exact rational scalars and exact linear algebra kernels.

Every computation in this module is exact: scalars are arbitrary-precision
rationals, eliminations divide exactly, and no rounding ever occurs.  The
ground type is gmpy2's C-implemented ``mpq`` when importable and the stdlib
``Fraction`` otherwise; set ``SYMPJOINT_RAT_BACKEND=fraction`` (or ``gmpy2``)
to force a backend.  Both types expose identical arithmetic, so everything
downstream is backend-agnostic.
"""

import os
import random

_requested = os.environ.get("SYMPJOINT_RAT_BACKEND", "").strip().lower()
if _requested in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Rat

        BACKEND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise
        from fractions import Fraction as Rat

        BACKEND = "fraction"
elif _requested in ("fraction", "pure"):
    from fractions import Fraction as Rat

    BACKEND = "fraction"
else:
    raise RuntimeError(f"unknown SYMPJOINT_RAT_BACKEND {_requested!r}")


def rat(value, den=None):
    """Build an exact rational from an int, a "p/q" or decimal string, or a Rat.

    Floats are rejected: they would smuggle rounding into exact code paths.
    """
    if den is not None:
        return Rat(value, den)
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}; use int or 'p/q' string")
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, str):
        return Rat(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to exact rational")


def rat_str(x):
    """Serialize a rational as 'p' or 'p/q' (always parseable by rat())."""
    x = rat(x) if not isinstance(x, Rat) else x
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def symp(u, v):
    """Standard symplectic product in coordinates (x^1..x^n, y^1..y^n).

    omega(u, v) = sum_k u_x^k v_y^k - v_x^k u_y^k.
    """
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    if len(u) % 2:
        raise ValueError(f"odd vector length {len(u)}")
    n = len(u) // 2
    total = Rat(0)
    for k in range(n):
        total += u[k] * v[n + k] - v[k] * u[n + k]
    return total


class ExactMatrix:
    """Dense matrix with exact rational entries (row-major lists)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, k):
        return cls([[Rat(1) if i == j else Rat(0) for j in range(k)] for i in range(k)])

    @classmethod
    def from_columns(cls, columns):
        return cls([[col[i] for col in columns] for i in range(len(columns[0]))])

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return ExactMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = Rat(0)
                for k in range(self.cols):
                    s += self.data[i][k] * other.data[k][j]
                row.append(s)
            out.append(row)
        return ExactMatrix(out)

    def apply(self, vec):
        """Matrix-vector product, returning a tuple."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((self.data[i][k] * vec[k] for k in range(self.cols)), Rat(0))
            for i in range(self.rows)
        )

    def __repr__(self):
        return f"ExactMatrix({self.data!r})"


class SkewMatrix:
    """Skew-symmetric exact table; only the upper triangle is stored."""

    __slots__ = ("dim", "upper")

    def __init__(self, dim, upper):
        """upper maps 0-based (i, j) with i < j to the entry value."""
        self.dim = dim
        self.upper = {k: rat(v) for k, v in upper.items()}
        for (i, j) in self.upper:
            if not (0 <= i < j < dim):
                raise ValueError(f"bad upper index {(i, j)}")

    def entry(self, i, j):
        if i == j:
            return Rat(0)
        if i < j:
            return self.upper.get((i, j), Rat(0))
        return -self.upper.get((j, i), Rat(0))

    def full(self):
        return ExactMatrix([[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)])


def det(M):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError(f"det of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Rat(1)
    a = [[rat(x) for x in row] for row in M.data]
    sign = 1
    prev = Rat(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Rat(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss one-step condensation; the division is exact
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Rat(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _rref(data):
    """Reduced row echelon form (in place on a copy); returns (rows, pivot_cols)."""
    a = [[rat(x) for x in row] for row in data]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(M):
    """Exact rank."""
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _rref(M.data)
    return len(pivots)


def nullspace(M):
    """Exact basis of the right kernel, one vector (tuple) per free column."""
    if M.rows == 0 or M.cols == 0:
        return [tuple(Rat(1) if i == f else Rat(0) for i in range(M.cols)) for f in range(M.cols)]
    a, pivots = _rref(M.data)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Rat(0)] * M.cols
        v[f] = Rat(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(tuple(v))
    return basis


def solve(A, B):
    """Solve A X = B exactly for square nonsingular A (B a matrix)."""
    if A.rows != A.cols:
        raise ValueError("solve needs a square matrix")
    if B.rows != A.rows:
        raise ValueError("right-hand side row mismatch")
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, B.data)]
    red, pivots = _rref(aug)
    if pivots != list(range(A.cols)):
        raise ValueError("singular matrix")
    return ExactMatrix([row[A.cols:] for row in red[: A.rows]])


def inverse(M):
    return solve(M, ExactMatrix.identity(M.rows))


def solve_vector(A, b):
    x = solve(A, ExactMatrix([[v] for v in b]))
    return tuple(x.data[i][0] for i in range(A.rows))


def pfaffian(S):
    """Pfaffian of a skew table by recursive first-row expansion.

    Odd dimension returns 0 (matching det of an odd skew matrix).  Sub-Pfaffians
    are memoized per index subset, which keeps dims up to ~12 cheap.
    """
    if S.dim % 2:
        return Rat(0)
    if S.dim == 0:
        return Rat(1)
    memo = {}

    def pf(idx):
        if len(idx) == 2:
            return S.entry(idx[0], idx[1])
        got = memo.get(idx)
        if got is not None:
            return got
        i0 = idx[0]
        rest = idx[1:]
        total = Rat(0)
        sign = 1
        for p, j in enumerate(rest):
            aij = S.entry(i0, j)
            if aij != 0:
                total += sign * aij * pf(rest[:p] + rest[p + 1 :])
            sign = -sign
        memo[idx] = total
        return total

    return pf(tuple(range(S.dim)))


def symplectic_J(n):
    """Matrix of omega in coordinates (x^1..x^n, y^1..y^n): [[0, I], [-I, 0]]."""
    dim = 2 * n
    data = [[Rat(0)] * dim for _ in range(dim)]
    for k in range(n):
        data[k][n + k] = Rat(1)
        data[n + k][k] = Rat(-1)
    return ExactMatrix(data)


def is_symplectic(M, n=None):
    if n is None:
        if M.rows % 2:
            return False
        n = M.rows // 2
    J = symplectic_J(n)
    return M.transpose() @ J @ M == J


def random_symplectic(n, steps, seed):
    """Random element of Sp(2n) as a product of integer symplectic transvections.

    Each step applies x -> x + lam*omega(x, v)*v with lam and the entries of
    v drawn from [-3, 3] (v nonzero), so entry growth stays bounded and the
    output is exactly symplectic: M^T J M = J.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rng = random.Random(seed)
    dim = 2 * n
    cols = [tuple(Rat(1) if i == j else Rat(0) for i in range(dim)) for j in range(dim)]
    for _ in range(steps):
        v = [0] * dim
        while not any(v):
            v = [rng.randint(-3, 3) for _ in range(dim)]
        v = tuple(Rat(x) for x in v)
        lam = Rat(rng.randint(-3, 3))
        cols = [
            tuple(c[i] + lam * symp(c, v) * v[i] for i in range(dim))
            for c in cols
        ]
    return ExactMatrix.from_columns(cols)
