"""Independent reference computations used to cross-check the package.

Nothing here imports the package's linear algebra or decision code; the
oracles work on plain integers, Fractions and sympy so that agreement with
the package is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy

# ---------------------------------------------------------------------------
# squares


def rational_is_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def gf_squares(p: int) -> set:
    return {x * x % p for x in range(p)}


def quadratic_is_square(x, y, d) -> bool:
    """x + y sqrt(d) a square in Q(sqrt d), decided by sympy factoring t^2 - c."""
    t = sympy.Symbol("t")
    c = sympy.Rational(x) + sympy.Rational(y) * sympy.sqrt(d)
    _, factors = sympy.factor_list(t**2 - c, t, extension=sympy.sqrt(d))
    return any(sympy.degree(f, t) == 1 for f, _ in factors)


def poly_has_root_in(poly_coeffs, d=None) -> bool:
    """Whether a univariate rational polynomial has a root in Q or Q(sqrt d)."""
    t = sympy.Symbol("t")
    f = sum(sympy.Rational(c) * t**k for k, c in enumerate(poly_coeffs))
    if d is None:
        _, factors = sympy.factor_list(f, t)
    else:
        _, factors = sympy.factor_list(f, t, extension=sympy.sqrt(d))
    return any(sympy.degree(g, t) == 1 for g, _ in factors)


# ---------------------------------------------------------------------------
# Hilbert symbols by brute force


def _odd_part_squarefree(n: int) -> int:
    return int(sympy.ntheory.factor_.core(abs(n))) * (1 if n > 0 else -1)


def hilbert_brute(a: int, b: int, p) -> int:
    """(a, b) at p: is z^2 = a x^2 + b y^2 solvable nontrivially over Q_p?

    For squarefree a, b, a primitive solution modulo p^3 (2^6 for p = 2)
    lifts by Hensel's lemma.  At infinity it is the sign test.
    """
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    a, b = _odd_part_squarefree(a), _odd_part_squarefree(b)
    k = 6 if p == 2 else 3
    mod = p**k
    squares_unit = {z * z % mod for z in range(mod) if z % p}
    squares_all = {z * z % mod for z in range(mod)}
    for x in range(mod):
        for y in range(mod):
            v = (a * x * x + b * y * y) % mod
            if x % p or y % p:
                if v in squares_all:
                    return 1
            elif v in squares_unit:
                return 1
    return -1


# ---------------------------------------------------------------------------
# algebras over GF(p) as integer tables


class GFTable:
    """Dense integer copy of a superalgebra over GF(p)."""

    def __init__(self, A):
        self.p = A.field.p
        self.n = A.dim
        self.parity = list(A.parity)
        n = self.n
        self.c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, v in A.table[i][j]:
                    self.c[i][j][k] = v.v
        self.unit = [x.v for x in A.unit]

    def mul(self, x, y):
        n, p = self.n, self.p
        out = [0] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        s = x[i] * y[j]
                        row = self.c[i][j]
                        for k in range(n):
                            if row[k]:
                                out[k] = (out[k] + s * row[k]) % p
        return out

    def basis(self, i):
        v = [0] * self.n
        v[i] = 1
        return v

    def component(self, parity):
        idx = [i for i in range(self.n) if self.parity[i] == parity]
        for coeffs in itertools.product(range(self.p), repeat=len(idx)):
            v = [0] * self.n
            for i, c in zip(idx, coeffs):
                v[i] = c
            yield v


def _rank_mod_p(vectors, p):
    rows = [list(v) for v in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _solve_basis_change(values, images, p):
    """M with M w_t = images_t for the (invertible) columns w_t = values_t."""
    n = len(values)
    # Gauss-Jordan on [W^T | Phi^T]: rows are (w_t, phi_t); then M^T = W^{-T} Phi^T
    rows = [list(values[t]) + list(images[t]) for t in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] % p)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], -1, p)
        rows[col] = [x * inv % p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[col])]
    # row i now reads (e_i | M^T row i), i.e. the image of basis vector e_i
    return [row[n:] for row in rows]


def _words(G: GFTable, gens):
    """Products of generators whose values span the algebra, as (word, value)."""
    p = G.p
    found = [((), G.unit)]
    frontier = [((), G.unit)]
    while frontier and len(found) < G.n:
        nxt = []
        for w, v in frontier:
            for g in gens:
                val = G.mul(v, G.basis(g))
                if _rank_mod_p([x for _, x in found] + [val], p) > len(found):
                    found.append((w + (g,), val))
                    nxt.append((w + (g,), val))
        frontier = nxt
    return found if len(found) == G.n else None


def generating_set(G: GFTable):
    for r in range(0, G.n + 1):
        for gens in itertools.combinations(range(G.n), r):
            words = _words(G, gens)
            if words is not None:
                return gens, words
    raise AssertionError("basis does not generate")


def _candidates(G: GFTable, g):
    """Images of generator g compatible with phi(g^2) = (-1)^{|g|} phi(g)^2.

    When g^2 = alpha + beta g, any superantiautomorphism sends g to some x
    with (-1)^{|g|} x^2 = alpha + beta x; otherwise every homogeneous
    vector of the right parity is a candidate.
    """
    p = G.p
    sq = G.mul(G.basis(g), G.basis(g))
    alpha = beta = None
    for a in range(p):
        for b in range(p):
            if all((a * G.unit[k] + b * (k == g) - sq[k]) % p == 0 for k in range(G.n)):
                alpha, beta = a, b
                break
        if alpha is not None:
            break
    sign = -1 if G.parity[g] else 1
    for x in G.component(G.parity[g]):
        if not any(x):
            continue
        if alpha is not None:
            x2 = G.mul(x, x)
            if any((sign * x2[k] - alpha * G.unit[k] - beta * x[k]) % p for k in range(G.n)):
                continue
        yield x


def _word_image(G: GFTable, word, images):
    """phi(g_1 ... g_r) = product of images in reverse order with Koszul signs."""
    p = G.p
    val = G.unit
    deg = 0
    for g in word:
        # phi(w g) = (-1)^{|w||g|} phi(g) phi(w)
        val = G.mul(images[g], val)
        if deg and G.parity[g]:
            val = [(-x) % p for x in val]
        deg ^= G.parity[g]
    return val


def _is_superanti(G: GFTable, cols):
    p, n = G.p, G.n

    def apply(v):
        out = [0] * n
        for j in range(n):
            if v[j]:
                for i in range(n):
                    out[i] = (out[i] + v[j] * cols[j][i]) % p
        return out

    if _rank_mod_p(cols, p) < n:
        return False
    for j in range(n):
        for i in range(n):
            if cols[j][i] and G.parity[i] != G.parity[j]:
                return False
    if apply(G.unit) != G.unit:
        return False
    for i in range(n):
        for j in range(n):
            lhs = apply(G.mul(G.basis(i), G.basis(j)))
            rhs = G.mul(cols[j], cols[i])
            if G.parity[i] and G.parity[j]:
                rhs = [(-x) % p for x in rhs]
            if lhs != rhs:
                return False
    return True


def _squares_to_identity(G: GFTable, cols):
    p, n = G.p, G.n
    for j in range(n):
        img = [0] * n
        for k in range(n):
            if cols[j][k]:
                for i in range(n):
                    img[i] = (img[i] + cols[j][k] * cols[k][i]) % p
        if img != G.basis(j):
            return False
    return True


def brute_force_first_kind(A):
    """(has superantiautomorphism, has superinvolution) by generator images."""
    G = GFTable(A)
    gens, words = generating_set(G)
    values = [v for _, v in words]
    cand = [list(_candidates(G, g)) for g in gens]
    anti = inv = False
    for choice in itertools.product(*cand):
        images = dict(zip(gens, choice))
        phi_words = [_word_image(G, w, images) for w, _ in words]
        cols = _solve_basis_change(values, phi_words, G.p)
        if not _is_superanti(G, cols):
            continue
        anti = True
        if _squares_to_identity(G, cols):
            inv = True
            break
    return anti, inv


# ---------------------------------------------------------------------------
# graded simplicity by spinning homogeneous vectors


def graded_simple_brute(A) -> bool:
    """Every nonzero homogeneous vector generates the whole algebra as an ideal.

    A nonzero graded ideal contains a nonzero homogeneous vector, so this is
    equivalent to having no proper nonzero graded ideal.
    """
    G = GFTable(A)
    p, n = G.p, G.n
    seen = set()
    for par in (0, 1):
        for v in G.component(par):
            if not any(v):
                continue
            lead = next(x for x in v if x)
            inv = pow(lead, -1, p)
            key = tuple(x * inv % p for x in v)
            if key in seen:
                continue
            seen.add(key)
            span = [G.mul(G.mul(G.basis(i), v), G.basis(j)) for i in range(n) for j in range(n)]
            if _rank_mod_p(span, p) < n:
                return False
    return True


# ---------------------------------------------------------------------------
# 2-dimensional graded algebras: every unital graded map is 1 -> 1, u -> lam u


def to_sympy(c):
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.Rational(c.x.numerator, c.x.denominator) + sympy.Rational(c.y.numerator, c.y.denominator) * sympy.sqrt(c.d)


def quadratic_map_equations(A, involution=False):
    """Polynomial conditions on lam for 1 -> 1, u -> lam u to be a
    superantiautomorphism (and a superinvolution when asked)."""
    lam = sympy.Symbol("lam")
    n = A.dim
    C = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in A.table[i][j]:
                C[i][j][k] = to_sympy(c)
    img = [[1, 0], [0, lam]]

    def mul(x, y):
        return [sum(x[i] * y[j] * C[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]

    eqs = []
    for i in range(n):
        for j in range(n):
            lhs = [sum(C[i][j][k] * img[k][r] for k in range(n)) for r in range(n)]
            sign = -1 if A.parity[i] and A.parity[j] else 1
            rhs = [sign * x for x in mul(img[j], img[i])]
            eqs += [sympy.expand(a - b) for a, b in zip(lhs, rhs)]
    if involution:
        eqs.append(lam**2 - 1)
    return lam, [e for e in eqs if e != 0]


def has_nonzero_root(lam, eqs, d=None) -> bool:
    """Whether the equations have a common root lam != 0 in Q or Q(sqrt d)."""
    if not eqs:
        return True
    ext = {} if d is None else {"extension": sympy.sqrt(d)}
    g = sympy.Poly(eqs[0], lam, **ext)
    for e in eqs[1:]:
        g = g.gcd(sympy.Poly(e, lam, **ext))
    if g.degree() <= 0:
        return False
    _, factors = sympy.factor_list(g.as_expr(), lam, **ext)
    for f, _ in factors:
        if sympy.degree(f, lam) == 1 and f.subs(lam, 0) != 0:
            return True
    return False


def gf_quadratic_maps(A):
    """(some lam gives a superantiautomorphism, some lam gives a superinvolution)."""
    G = GFTable(A)
    anti = inv = False
    for lam in range(1, G.p):
        cols = [[1, 0], [0, lam]]
        if _is_superanti(G, cols):
            anti = True
            inv = inv or _squares_to_identity(G, cols)
    return anti, inv
