"""Sparse multivariate polynomials over exact rationals, and the symbolic
verification of the pairwise-invariant identities: Pfaffian syzygies and their
minor expansions, the q-determinant reduction, and the small free-resolution
towers for planar configurations.

Variables are tagged tuples totally ordered by tuple comparison:
  ("a", i, j)      pairwise invariant a_ij, i < j
  ("u", k)         contact-point variable (u-coordinate of point k)
  ("z", name...)   auxiliary variable (coordinates, group parameters)
A monomial is a sorted tuple of (variable, exponent) pairs; a polynomial maps
monomials to nonzero rational coefficients.
"""

import math
from itertools import permutations

from .exact import Rat, rat, rat_str


def avar(i, j):
    """Pairwise variable a_ij, normalized to i < j (may flip nothing)."""
    if i == j:
        raise ValueError("a_ii is identically zero, not a variable")
    if i > j:
        raise ValueError(f"pairwise variable needs i < j, got ({i}, {j})")
    return ("a", i, j)


def contact_var(k):
    return ("u", k)


def aux_var(*name):
    return ("z",) + name


def var_name(var):
    if var[0] == "a":
        return f"a{var[1]}{var[2]}" if var[1] < 10 and var[2] < 10 else f"a{var[1]}_{var[2]}"
    if var[0] == "u":
        return f"u{var[1]}"
    return "".join(str(part) for part in var[1:])


def _mono_mul(m1, m2):
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(mono):
    return sum(e for _, e in mono)


class MultiPoly:
    """Sparse polynomial: dict from monomial to exact rational coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = rat(c)
            if c != 0:
                clean[tuple(sorted(mono))] = c
        self.terms = clean

    @classmethod
    def constant(cls, c):
        c = rat(c)
        return cls({(): c}) if c != 0 else cls()

    @classmethod
    def variable(cls, var):
        return cls({((var, 1),): Rat(1)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((_mono_degree(m) for m in self.terms), default=0)

    def variables(self):
        seen = set()
        for mono in self.terms:
            for v, _ in mono:
                seen.add(v)
        return seen

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = rat(other)
            if c == 0:
                return MultiPoly()
            res = MultiPoly.__new__(MultiPoly)
            res.terms = {m: c * v for m, v in self.terms.items()}
            return res
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, var):
        out = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            e = exps.get(var)
            if not e:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            new = tuple(sorted(exps.items()))
            out[new] = out.get(new, 0) + c * e
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {m: c for m, c in out.items() if c != 0}
        return res

    def substitute(self, mapping):
        """Replace variables by polynomials/rationals; others stay symbolic."""
        total = MultiPoly()
        for mono, c in self.terms.items():
            term = MultiPoly.constant(c)
            for v, e in mono:
                rep = mapping.get(v)
                if rep is None:
                    rep = MultiPoly.variable(v)
                elif not isinstance(rep, MultiPoly):
                    rep = MultiPoly.constant(rep)
                term = term * rep**e
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        def mono_sort_key(item):
            mono, _ = item
            return (-_mono_degree(mono), mono)
        parts = []
        for mono, c in sorted(self.terms.items(), key=mono_sort_key):
            factors = [
                var_name(v) + (f"^{e}" if e > 1 else "") for v, e in mono
            ]
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif c == -1 and factors:
                parts.append(f"-{body}")
            else:
                parts.append(f"{rat_str(c)}*{body}" if factors else rat_str(c))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _avar_signed(i, j):
    """a_ij as a polynomial for arbitrary i != j, using a_ji = -a_ij."""
    if i < j:
        return MultiPoly.variable(avar(i, j))
    return -MultiPoly.variable(avar(j, i))


def _pf_poly(idx):
    """Symbolic Pfaffian of the sub-table on idx (any order, distinct labels)."""
    k = len(idx)
    if k % 2:
        return MultiPoly()
    if k == 0:
        return MultiPoly.constant(1)
    if k == 2:
        return _avar_signed(idx[0], idx[1])
    i0 = idx[0]
    rest = idx[1:]
    total = MultiPoly()
    sign = 1
    for p, j in enumerate(rest):
        total = total + sign * _avar_signed(i0, j) * _pf_poly(rest[:p] + rest[p + 1 :])
        sign = -sign
    return total


def pfaffian_poly(idx, n):
    """The syzygy polynomial b_{i_1...i_{2n+2}} = Pf(a_{i_p i_q})."""
    idx = tuple(idx)
    if len(idx) != 2 * n + 2:
        raise ValueError(f"expected tuple of length {2 * n + 2}, got {len(idx)}")
    if list(idx) != sorted(set(idx)) or idx[0] < 1:
        raise ValueError(f"indices must be ascending positive, got {idx}")
    return _pf_poly(idx)


def q_poly(idx, n):
    """The determinant syzygy q_{i_1...i_{4n+2}} = det(a_{i_s, i_{t+2n+1}})."""
    idx = tuple(idx)
    k = 2 * n + 1
    if len(idx) != 4 * n + 2:
        raise ValueError(f"expected tuple of length {4 * n + 2}, got {len(idx)}")
    rows = [[_avar_signed(idx[s], idx[t + k]) for t in range(k)] for s in range(k)]
    return _det_poly(rows)


def _det_poly(rows):
    k = len(rows)
    if k == 1:
        return rows[0][0]
    total = MultiPoly()
    sign = 1
    for j in range(k):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total = total + sign * rows[0][j] * _det_poly(minor)
        sign = -sign
    return total


def evaluate(p: MultiPoly, g) -> Rat:
    """Substitute a Gram table into a polynomial in pairwise variables."""
    total = Rat(0)
    for mono, c in p.terms.items():
        term = c
        for v, e in mono:
            if v[0] != "a":
                raise ValueError(f"cannot evaluate non-pairwise variable {var_name(v)}")
            _, i, j = v
            if j > g.m:
                raise ValueError(f"variable a{i}{j} out of range for m={g.m}")
            term *= g.value(i, j) ** e
        total += term
    return total


def _perm_sign(images):
    seen = [False] * len(images)
    sign = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = images[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def verify_pfaffian_expansion(n):
    """Check the first-row minor expansion of b as an exact polynomial identity.

    b_{i_1...i_{2n+2}} equals 1/(2n)! times the signed sum over permutations
    fixing the first slot of a_{i_1 i_s(2)} * Pf on the remaining 2n slots.
    (The symmetrized sum counts each of the 2n+1 minors (2n)! times.)
    """
    if n not in (1, 2):
        raise ValueError("expansion check supported for n in {1, 2} only")
    size = 2 * n + 2
    idx = tuple(range(1, size + 1))
    lhs = _pf_poly(idx)
    total = MultiPoly()
    for tail in permutations(range(1, size)):
        images = (0,) + tail
        sign = _perm_sign(images)
        head = _avar_signed(idx[0], idx[images[1]])
        inner = tuple(idx[images[p]] for p in range(2, size))
        total = total + sign * head * _pf_poly(inner)
    rhs = total * rat(1, math.factorial(2 * n))
    return rhs == lhs


def verify_weyl_reduction():
    """Check the 8-index Pfaffian against its expansion into 6-index ones (n=2)."""
    lhs = _pf_poly(tuple(range(1, 9)))
    rhs = MultiPoly()
    sign = 1
    for j in range(2, 9):
        rest = tuple(k for k in range(2, 9) if k != j)
        rhs = rhs + sign * _avar_signed(1, j) * _pf_poly(rest)
        sign = -sign
    return rhs == lhs


def verify_q_reduction():
    """Check q_123456 = a12*b3456 - a34*b1256 + a35*b1246 - a36*b1245 (n=1)."""
    lhs = q_poly(tuple(range(1, 7)), 1)
    rhs = (
        _avar_signed(1, 2) * _pf_poly((3, 4, 5, 6))
        - _avar_signed(3, 4) * _pf_poly((1, 2, 5, 6))
        + _avar_signed(3, 5) * _pf_poly((1, 2, 4, 6))
        - _avar_signed(3, 6) * _pf_poly((1, 2, 4, 5))
    )
    return rhs == lhs


class FreeModuleElt:
    """Element of the free module over the b-generators: tuple -> coefficient."""

    __slots__ = ("components",)

    def __init__(self, components=None):
        self.components = {}
        for key, p in (components or {}).items():
            if not p.is_zero():
                self.components[tuple(key)] = p

    def __add__(self, other):
        out = dict(self.components)
        for key, p in other.components.items():
            s = out.get(key, MultiPoly()) + p
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        res = FreeModuleElt.__new__(FreeModuleElt)
        res.components = out
        return res

    def scale(self, p: MultiPoly):
        res = FreeModuleElt.__new__(FreeModuleElt)
        res.components = {}
        for key, q in self.components.items():
            prod = p * q
            if not prod.is_zero():
                res.components[key] = prod
        return res

    def is_zero(self):
        return not self.components


def _coord_substitution(m):
    """a_ij -> x_i*y_j - x_j*y_i over auxiliary coordinate variables (n=1)."""
    x = {i: MultiPoly.variable(aux_var("x", i)) for i in range(1, m + 1)}
    y = {i: MultiPoly.variable(aux_var("y", i)) for i in range(1, m + 1)}
    return {
        avar(i, j): x[i] * y[j] - x[j] * y[i]
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
    }


def _c_elt(i):
    """c_i = sum_j (-1)^j a_ij b_{1...j^...5} as a free-module element (m=5)."""
    comps = {}
    for j in range(1, 6):
        if j == i:
            continue
        key = tuple(k for k in range(1, 6) if k != j)
        comps[key] = Rat(-1) ** j * _avar_signed(i, j)
    return FreeModuleElt(comps)


def verify_resolution_tower(m):
    """Expand the planar (n=1) resolution data for m points and check exactness.

    m=4: the Pluecker polynomial b_1234 vanishes after substituting
    a_ij = x_i y_j - x_j y_i, i.e. b is a syzygy of the generators.
    m=5: each c_i collapses to the zero polynomial once the b-generators are
    expanded (c_i lies in the kernel onto first syzygies), and the displayed
    combination d of the c_i has all free-module components identically zero.
    """
    if m == 4:
        b = _pf_poly((1, 2, 3, 4))
        expanded = b.substitute(_coord_substitution(4))
        return {
            "m": 4,
            "checks": {"b1234 vanishes on point tables": expanded.is_zero()},
            "ok": expanded.is_zero(),
        }
    if m != 5:
        raise ValueError("resolution tower implemented for m in {4, 5}")

    checks = {}
    # first-to-second level: phi_1(c_i) = sum_j (-1)^j a_ij b_{1..j^..5} = 0 in R[a]
    for i in range(1, 6):
        total = MultiPoly()
        for key, coeff in _c_elt(i).components.items():
            total = total + coeff * _pf_poly(key)
        checks[f"c{i} expands to zero"] = total.is_zero()

    # third level: d = sum_i (-1)^(i+1) b_{1..i^..5} c_i has zero b-components
    d = FreeModuleElt()
    for i in range(1, 6):
        complement = tuple(k for k in range(1, 6) if k != i)
        coeff = Rat(-1) ** (i + 1) * _pf_poly(complement)
        d = d + _c_elt(i).scale(coeff)
    checks["d components all zero"] = d.is_zero()

    ok = all(checks.values())
    return {"m": 5, "checks": checks, "ok": ok}
