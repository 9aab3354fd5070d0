"""Divisibility bounds for SL_k(Z) at desk scale.

Upper side: a non-central g survives mod the least prime p not dividing a
chosen entry, and some hyperplane of (Z/p)^k is moved by g mod p.  The
stabilizer of that hyperplane (pulled back to SL_k(Z)) misses g and has
index (p^k - 1)/(p - 1).

Lower side: g_n = E_{1,k}(lcm(1..n)) lies in the integer Heisenberg group
spanned by E_{1,j} and E_{i,k}.  Finite-index subgroups there carry a
triangular basis whose diagonal exponents multiply to the index and obey
one divisibility condition per commuting pair, which forces index >=
q^(k-1) where q is the least non-divisor of lcm(1..n).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from sympy import Matrix, isprime, nextprime

from .errors import BadDimension, BadIndices, CentralInput, IdentityInput, NotUnimodular


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    @property
    def k(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                               for r in self.rows))

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def to_json(self) -> list:
        return [list(r) for r in self.rows]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    return int(Matrix([list(r) for r in rows]).det(method="bareiss"))


def int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate a square integer matrix of determinant 1."""
    rows = tuple(tuple(r) for r in rows)
    k = len(rows)
    if k < 2 or any(len(r) != k for r in rows):
        raise BadDimension(f"expected a square matrix of size >= 2, got {k} rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r):
        raise NotUnimodular("matrix entries must be integers")
    det = determinant(rows)
    if det != 1:
        raise NotUnimodular(f"determinant is {det}, expected 1")
    return IntMatrix(rows)


def elementary(k: int, i: int, j: int, alpha: int) -> IntMatrix:
    """Identity plus ``alpha`` at row i, column j (1-based)."""
    if k < 2:
        raise BadIndices(f"dimension {k} < 2")
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise BadIndices(f"bad position ({i}, {j}) for k = {k}")
    rows = [[int(r == c) for c in range(k)] for r in range(k)]
    rows[i - 1][j - 1] = alpha
    return IntMatrix(tuple(map(tuple, rows)))


def lcm_upto(n: int) -> int:
    return math.lcm(*range(1, n + 1))


def g_n(k: int, n: int) -> IntMatrix:
    if n < 1:
        raise BadIndices("n must be >= 1")
    return elementary(k, 1, k, lcm_upto(n))


def one_norm(g: IntMatrix) -> int:
    """Operator 1-norm: the largest absolute column sum."""
    return max(sum(abs(x) for x in col) for col in zip(*g.rows))


def size_proxy(g: IntMatrix) -> int:
    """ceil(log2 ||g||_1) + 1, the stand-in for word length in SL_k(Z)."""
    if g.is_identity():
        raise IdentityInput("size proxy is undefined for the identity")
    return (one_norm(g) - 1).bit_length() + 1


def is_central(g: IntMatrix) -> bool:
    k = g.k
    diag = {g[i, i] for i in range(k)}
    return len(diag) == 1 and all(g[i, j] == 0 for i in range(k) for j in range(k) if i != j)


def select_alpha(g: IntMatrix) -> int:
    """First nonzero off-diagonal entry in row-major order, else the first
    nonzero difference of diagonal entries."""
    k = g.k
    for i in range(k):
        for j in range(k):
            if i != j and g[i, j] != 0:
                return g[i, j]
    for i in range(k):
        for j in range(i + 1, k):
            if g[i, i] != g[j, j]:
                return g[i, i] - g[j, j]
    raise CentralInput("matrix is central")


def least_prime_not_dividing(alpha: int) -> int:
    p = 2
    while alpha % p == 0:
        p = nextprime(p)
    return p


def hyperplane_count(p: int, k: int) -> int:
    return (p ** k - 1) // (p - 1)


def projective_points(p: int, k: int):
    """Nonzero vectors of (Z/p)^k with first nonzero entry 1, in lex order."""
    for v in itertools.product(range(p), repeat=k):
        for x in v:
            if x:
                if x == 1:
                    yield v
                break


def _row_times(phi, g: IntMatrix, p: int) -> tuple:
    k = g.k
    return tuple(sum(phi[i] * g[i, j] for i in range(k)) % p for j in range(k))


def _proportional(u, v, p) -> bool:
    k = len(u)
    return all((u[i] * v[j] - u[j] * v[i]) % p == 0 for i in range(k) for j in range(i + 1, k))


def stabilizes(phi, g: IntMatrix, p: int) -> bool:
    """Does g mod p map the hyperplane ker(phi) onto itself?"""
    psi = _row_times(phi, g, p)
    return any(psi) and _proportional(psi, phi, p)


@dataclass(frozen=True)
class CongruenceWitness:
    matrix: IntMatrix
    p: int
    alpha: int
    dual_vector: tuple
    index: int

    def contains(self, h: IntMatrix) -> bool:
        """Membership in the pulled-back hyperplane stabilizer."""
        return stabilizes(self.dual_vector, h, self.p)


def first_moved_hyperplane(g: IntMatrix, p: int) -> Optional[tuple]:
    for phi in projective_points(p, g.k):
        if not stabilizes(phi, g, p):
            return phi
    return None


def congruence_witness(g: IntMatrix) -> CongruenceWitness:
    if is_central(g):
        raise CentralInput("central elements lie in every hyperplane stabilizer")
    alpha = select_alpha(g)
    p = least_prime_not_dividing(alpha)
    phi = first_moved_hyperplane(g, p)
    if phi is None:
        # g mod p is non-scalar, so some hyperplane moves
        raise AssertionError(f"no moved hyperplane mod {p}")
    return CongruenceWitness(g, p, alpha, phi, hyperplane_count(p, g.k))


# Heisenberg lower bound

@dataclass(frozen=True)
class HeisenbergBasis:
    k: int
    diagonal: tuple
    # k = 3 enumeration only: (y-offset of u1, z-offset of u1, z-offset of u2)
    offdiagonal: tuple = ()

    @property
    def index(self) -> int:
        return math.prod(self.diagonal)


def heisenberg_pairs(k: int) -> list:
    """1-based diagonal positions (i, k+i-2), i = 2..k-1, each constrained by m_11."""
    return [(i, k + i - 2) for i in range(2, k)]


def heisenberg_conditions_hold(k: int, diagonal: Sequence[int]) -> bool:
    m = diagonal
    return all((m[i - 1] * m[j - 1]) % m[0] == 0 for i, j in heisenberg_pairs(k))


def _min_pair(m11: int) -> tuple:
    """Least x*y with m11 | x*y; ties broken towards larger x."""
    prod = 1
    while True:
        if prod % m11 == 0:
            for x in range(prod, 0, -1):
                if prod % x == 0:
                    return x, prod // x
        prod += 1


def heisenberg_divisibility(k: int, L: int) -> tuple:
    """Least index of a subgroup of the Heisenberg group missing E_{1,k}(L).

    Branch and bound over the diagonal exponents: m_11 runs over the
    non-divisors of L in increasing order; each pair contributes at least
    m_11, so the search stops once m_11^(k-1) reaches the best value.
    Returns ``(value, HeisenbergBasis)``.
    """
    if k < 3:
        raise BadDimension(f"the Heisenberg bound needs k >= 3, got {k}")
    if L < 1:
        raise ValueError("L must be positive")
    d = 2 * k - 3
    best, best_diag = None, None
    m11 = 2
    while best is None or m11 ** (k - 1) < best:
        if L % m11:
            diag = [1] * d
            diag[0] = m11
            for i, j in heisenberg_pairs(k):
                diag[i - 1], diag[j - 1] = _min_pair(m11)
            value = math.prod(diag)
            if best is None or value < best:
                best, best_diag = value, tuple(diag)
        m11 += 1
    return best, HeisenbergBasis(k, best_diag)


# Explicit subgroups of the 3-dimensional integer Heisenberg group.
# Coordinates (x, y, z) stand for [[1, x, z], [0, 1, y], [0, 0, 1]].

def h3_mul(u, v) -> tuple:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1])


def h3_inv(u) -> tuple:
    return (-u[0], -u[1], u[0] * u[1] - u[2])


def h3_pow(u, n: int) -> tuple:
    x, y, z = u
    return (n * x, n * y, n * z + x * y * n * (n - 1) // 2)


def h3_matrix(u) -> IntMatrix:
    x, y, z = u
    return IntMatrix(((1, x, z), (0, 1, y), (0, 0, 1)))


@dataclass(frozen=True)
class H3Subgroup:
    """Candidate subgroup with triangular basis u1 = (a, b1, c1), u2 = (0, b, c2), u3 = (0, 0, c)."""

    a: int
    b: int
    c: int
    b1: int = 0
    c1: int = 0
    c2: int = 0
    basis: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", (
            (self.a, self.b1, self.c1), (0, self.b, self.c2), (0, 0, self.c)))

    def sift(self, e) -> Optional[tuple]:
        """Exponents (i, j, l) with e = u1^i u2^j u3^l, or None."""
        u1, u2, _ = self.basis
        if e[0] % self.a:
            return None
        i = e[0] // self.a
        e = h3_mul(h3_pow(u1, -i), e)
        if e[1] % self.b:
            return None
        j = e[1] // self.b
        e = h3_mul(h3_pow(u2, -j), e)
        if e[2] % self.c:
            return None
        return i, j, e[2] // self.c

    def is_subgroup(self) -> bool:
        """Conjugation closure: u_s^{±1} u_t u_s^{∓1} must lie in <u_{s+1}, ...>."""
        for s in range(3):
            us = self.basis[s]
            for t in range(s + 1, 3):
                ut = self.basis[t]
                for conj in (h3_mul(h3_mul(h3_inv(us), ut), us),
                             h3_mul(h3_mul(us, ut), h3_inv(us))):
                    ex = self.sift(conj)
                    if ex is None or any(ex[: s + 1]):
                        return False
        return True

    @property
    def index(self) -> int:
        return self.a * self.b * self.c

    def contains(self, e) -> bool:
        return self.sift(e) is not None

    def coset_count(self, limit: int = 10_000) -> int:
        """Number of right cosets found by walking the Cayley graph of H3.

        Each coset Δg is labelled by the representative obtained by
        left-multiplying g with basis powers into the box [0,a)x[0,b)x[0,c).
        """
        u1, u2, u3 = self.basis

        def rep(g):
            g = h3_mul(h3_pow(u1, -(g[0] // self.a)), g)
            g = h3_mul(h3_pow(u2, -(g[1] // self.b)), g)
            return h3_mul(h3_pow(u3, -(g[2] // self.c)), g)

        gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
        start = rep((0, 0, 0))
        seen = {start}
        todo = [start]
        while todo:
            g = todo.pop()
            for s in gens:
                h = rep(h3_mul(g, s))
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        raise RuntimeError("coset walk exceeded limit")
                    todo.append(h)
        return len(seen)


def h3_subgroups(index: int):
    """All subgroups of index ``index`` in H3(Z), each once via its normalized basis."""
    for a in range(1, index + 1):
        if index % a:
            continue
        for b in range(1, index // a + 1):
            if (index // a) % b:
                continue
            c = index // (a * b)
            for b1 in range(b):
                for c1 in range(c):
                    for c2 in range(c):
                        cand = H3Subgroup(a, b, c, b1, c1, c2)
                        if cand.is_subgroup():
                            yield cand


@lru_cache(maxsize=None)
def heisenberg3_enumerated(L: int, max_index: int = 10_000) -> tuple:
    """Least index of an explicit subgroup of H3(Z) missing z^L, by enumeration.

    Returns ``(value, HeisenbergBasis)`` with the diagonal ordered as
    (z, x, y) exponents to line up with ``heisenberg_divisibility(3, L)``.
    """
    zL = (0, 0, L)
    for n in range(1, max_index + 1):
        for sub in h3_subgroups(n):
            if not sub.contains(zL):
                return n, HeisenbergBasis(3, (sub.c, sub.a, sub.b), (sub.b1, sub.c1, sub.c2))
    raise RuntimeError(f"no subgroup of index <= {max_index} misses z^{L}")


# Sandwich table

@dataclass(frozen=True)
class SLkRow:
    n: int
    lcm: int
    lower: int
    upper: int
    p: int
    size_proxy: int
    slope_partial: Optional[float]


@dataclass(frozen=True)
class SLkTable:
    k: int
    rows: tuple
    lower_slope: Optional[float]
    upper_slope: Optional[float]


def loglog_slope(ns: Sequence[int], values: Sequence[int]) -> float:
    """Least-squares slope of log(value) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(values, float)), 1)
    return float(slope)


def slk_bounds_table(k: int, n_max: int) -> SLkTable:
    """Per-n certified bounds lower <= D(g_n) <= upper for g_n = E_{1,k}(lcm(1..n)).

    Slopes are fitted on rows n >= 2 (row 1 has lcm 1).  ``slope_partial``
    of row n is the lower-column slope over rows 2..n.
    """
    if k < 3:
        raise BadDimension(f"k must be >= 3, got {k}")
    rows = []
    for n in range(1, n_max + 1):
        L = lcm_upto(n)
        lower, _ = heisenberg_divisibility(k, L)
        g = g_n(k, n)
        wit = congruence_witness(g)
        ns = [r.n for r in rows if r.n >= 2] + [n]
        lows = [r.lower for r in rows if r.n >= 2] + [lower]
        slope = loglog_slope(ns, lows) if n >= 3 else None
        rows.append(SLkRow(n, L, lower, wit.index, wit.p, size_proxy(g), slope))
    fit = [r for r in rows if r.n >= 2]
    if len(fit) >= 2:
        lo = loglog_slope([r.n for r in fit], [r.lower for r in fit])
        hi = loglog_slope([r.n for r in fit], [r.upper for r in fit])
    else:
        lo = hi = None
    return SLkTable(k, tuple(rows), lo, hi)

