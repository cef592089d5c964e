"""Generating set of the rational-invariant field and its dimension counts.

The field of joint invariants is generated by the restricted set of pairwise
invariants abar = {a_ij : i <= 2n, i < j <= m}; the remaining entries are
forced by the minimal Pfaffian syzygies.  The transcendence degree is

    d(m, n) = 2nm - n(2n+1)   for m >= 2n,
              C(m, 2)          for m <= 2n,

and this module confirms it two independent ways: by exact Jacobian rank of
the invariant map and by exact stabilizer dimensions.
"""

import random
from dataclasses import dataclass
from math import comb

from .exact import ExactMatrix, Rat, pfaffian, rank
from .invariants import GenericityError, GramTable, PointConfig, random_config


def dim_d(m, n):
    """Transcendence degree of the invariant field on m points in R^{2n}."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    if m >= 2 * n:
        return 2 * n * m - n * (2 * n + 1)
    return comb(m, 2)


@dataclass(frozen=True)
class BasicSet:
    """Ordered generating pairs (i, j) with i <= 2n, i < j <= m."""

    m: int
    n: int
    pairs: tuple


def basic_set(m, n):
    pairs = tuple(
        (i, j) for i in range(1, min(2 * n, m) + 1) for j in range(i + 1, m + 1)
    )
    return BasicSet(m, n, pairs)


def eliminate_entry(known, k, l, n):
    """Value of a_kl forced by the syzygy b_{1,...,2n,k,l} = 0.

    `known` supplies the other entries on indices (1..2n, k, l), either as a
    GramTable or a mapping {(i, j): value} with i < j.  The Pfaffian is linear
    in the single unknown entry, with coefficient +/- b_{1..2n}; that
    denominator must not vanish.
    """
    if not (2 * n < k < l):
        raise ValueError(f"expected 2n < k < l, got k={k}, l={l} for n={n}")

    if isinstance(known, GramTable):
        lookup = known.value
    else:
        table = {p: v for p, v in known.items()}

        def lookup(i, j):
            if i < j:
                return table[(i, j)]
            return -table[(j, i)]

    idx = tuple(range(1, 2 * n + 1)) + (k, l)
    size = len(idx)
    kpos, lpos = size - 2, size - 1

    def pf_with(akl):
        upper = {}
        for p in range(size):
            for q in range(p + 1, size):
                if (p, q) == (kpos, lpos):
                    upper[(p, q)] = akl
                else:
                    upper[(p, q)] = lookup(idx[p], idx[q])
        from .exact import SkewMatrix

        return pfaffian(SkewMatrix(size, upper))

    const = pf_with(Rat(0))
    coeff = pf_with(Rat(1)) - const
    if coeff == 0:
        raise GenericityError(f"denominator Pfaffian b_1..{2 * n} vanishes")
    return -const / coeff


def stabilizer_dim(points, n):
    """Exact dimension of {S in sp(2n) : S A_i = 0 for all given points}.

    sp(2n) is parametrized as S = J H with H symmetric, so the conditions
    reduce to the linear system H A_i = 0 on the C(2n+1, 2) entries of H.
    """
    dim = 2 * n
    unknowns = [(p, q) for p in range(dim) for q in range(p, dim)]
    if not points:
        return len(unknowns)
    rows = []
    for A in points:
        if len(A) != dim:
            raise ValueError(f"point of length {len(A)}, expected {dim}")
        for p in range(dim):
            row = []
            for (p1, q1) in unknowns:
                if p1 == q1:
                    row.append(A[p1] if p1 == p else Rat(0))
                elif p1 == p:
                    row.append(A[q1])
                elif q1 == p:
                    row.append(A[p1])
                else:
                    row.append(Rat(0))
            rows.append(row)
    return len(unknowns) - rank(ExactMatrix(rows))


def _symp_gradients(config, i, j):
    """Partials of a_ij with respect to every point coordinate (grouped order)."""
    n = config.n
    Ai, Aj = config.point(i), config.point(j)

    def jmul(v):
        return [v[n + c] for c in range(n)] + [-v[c] for c in range(n)]

    grads = {}
    grads[i] = jmul(Aj)
    grads[j] = [-x for x in jmul(Ai)]
    return grads


def jacobian_rank(config: PointConfig):
    """Exact rank of the Jacobian of config -> (a_ij)_{i<j} at the configuration."""
    m, n = config.m, config.n
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    if not pairs:
        return 0
    rows = []
    for (i, j) in pairs:
        grads = _symp_gradients(config, i, j)
        row = []
        for p in range(1, m + 1):
            row.extend(grads.get(p, [Rat(0)] * (2 * n)))
        rows.append(row)
    return rank(ExactMatrix(rows))


def generic_jacobian_rank(m, n, seed=0, samples=3):
    """Jacobian rank at random small-integer configurations (max over samples).

    A single generic sample already decides the rank; repeated sampling guards
    against an unlucky measure-zero draw.
    """
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        best = max(best, jacobian_rank(random_config(n, m, rng)))
    return best
