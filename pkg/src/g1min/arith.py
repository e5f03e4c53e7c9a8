"""Exact arithmetic substrate: rationals, p-adic valuations, small multivariate
polynomials over Q and F_p, and a little linear algebra mod p.

Polynomials act on row vectors: ``substitute_linear(f, M)`` is ``f(x @ M)``,
i.e. the variable ``x_j`` is replaced by ``sum_i x_i * M[i][j]``.  With this
convention ``substitute_linear(substitute_linear(f, A), B) == substitute_linear(f, B @ A)``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import isprime

from .errors import DimensionMismatch, NonIntegralCoefficient

Rat = Fraction


class Inf(enum.Enum):
    """The valuation of zero.  Compares greater than every integer."""

    INF = "inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is Inf.INF

    def __gt__(self, other):
        return other is not Inf.INF

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = Inf.INF


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den' string")
    return Fraction(x)


@dataclass(frozen=True)
class LocalContext:
    """A prime p standing in for the uniformiser; valuation v_p, residue field F_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")


def _prime(ctx) -> int:
    return ctx.p if isinstance(ctx, LocalContext) else int(ctx)


def int_valuation(n: int, p: int):
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, ctx):
    """v_p(x) for rational x; ``INF`` for zero."""
    p = _prime(ctx)
    x = as_rat(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def min_valuation(values: Iterable, ctx):
    return min((valuation(c, ctx) for c in values), default=INF)


def mod_p(x, p: int) -> int:
    """Image of a p-integral rational in [0, p)."""
    x = as_rat(x)
    if x.denominator % p == 0:
        raise NonIntegralCoefficient(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def mod_pk(x, p: int, k: int) -> int:
    """Image of a p-integral rational in [0, p^k)."""
    q = p**k
    x = as_rat(x)
    if x.denominator % p == 0:
        raise NonIntegralCoefficient(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, q) % q


# ---------------------------------------------------------------------------
# polynomials


def _monomials(nvars: int, degree: int):
    """Exponent vectors of total degree ``degree``, lexicographically descending."""
    out = []
    for e in itertools.product(range(degree, -1, -1), repeat=nvars):
        if sum(e) == degree:
            out.append(e)
    return out


class MultiPoly:
    """Polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} has wrong length for {nvars} variables")
            c = as_rat(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    def coeff(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch("variable counts differ")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = as_rat(other)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def evaluate(self, values: Sequence):
        if len(values) != self.nvars:
            raise DimensionMismatch("wrong number of values")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for variable i (all images share a variable count)."""
        if len(images) != self.nvars:
            raise DimensionMismatch("wrong number of images")
        m = images[0].nvars if images else 0
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        out = MultiPoly(m)
        for e, c in self.terms.items():
            term = MultiPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def scale_vars(self, factors: Sequence) -> "MultiPoly":
        """f(f0*x0, f1*x1, ...)."""
        t = {}
        for e, c in self.terms.items():
            for f, k in zip(factors, e):
                if k:
                    c = c * as_rat(f) ** k
            t[e] = c
        return MultiPoly(self.nvars, t)


def poly_valuation(f: MultiPoly, ctx):
    """Minimum coefficient valuation; ``INF`` for the zero polynomial."""
    return min_valuation(f.terms.values(), ctx)


def substitute_linear(f: MultiPoly, M: Sequence[Sequence]) -> MultiPoly:
    """Return ``f(x @ M)`` (variable j becomes ``sum_i x_i M[i][j]``)."""
    n = f.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise DimensionMismatch(f"matrix must be {n}x{n}")
    images = [MultiPoly.linear([M[i][j] for i in range(n)]) for j in range(n)]
    return f.compose(images)


class FpPoly:
    """Polynomial over F_p; coefficients kept in [0, p)."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p: int, nvars: int, terms=None):
        self.p = p
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            c %= p
            if c:
                e = tuple(e)
                self.terms[e] = (self.terms.get(e, 0) + c) % p
                if not self.terms[e]:
                    del self.terms[e]

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e) -> int:
        return self.terms.get(tuple(e), 0)

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return FpPoly(self.p, self.nvars, t)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpPoly(self.p, self.nvars, {e: c * other for e, c in self.terms.items()})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return FpPoly(self.p, self.nvars, t)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * (self.p - 1)

    def __eq__(self, other):
        return isinstance(other, FpPoly) and (self.p, self.nvars, self.terms) == (other.p, other.nvars, other.terms)

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"FpPoly(p={self.p}, {self.terms})"

    def evaluate(self, values: Sequence[int]) -> int:
        p = self.p
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * pow(v, k, p)
            total += term
        return total % p

    def compose(self, images: Sequence["FpPoly"]) -> "FpPoly":
        m = images[0].nvars
        out = FpPoly(self.p, m)
        for e, c in self.terms.items():
            term = FpPoly(self.p, m, {(0,) * m: c})
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * images[i]
            out = out + term
        return out

    def substitute_linear(self, M: Sequence[Sequence[int]]) -> "FpPoly":
        n = self.nvars
        images = [FpPoly(self.p, n, {tuple(int(i == j) for j in range(n)): M[i][k] for i in range(n)})
                  for k in range(n)]
        return self.compose(images)

    def lift(self) -> MultiPoly:
        return MultiPoly(self.nvars, self.terms)


def reduce_mod_p(f: MultiPoly, ctx) -> FpPoly:
    p = _prime(ctx)
    return FpPoly(p, f.nvars, {e: mod_p(c, p) for e, c in f.terms.items()})


# ---------------------------------------------------------------------------
# matrices: lists of lists; exact over Q, or integers read mod p


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_rat(A):
    return [[as_rat(x) for x in row] for row in A]


def det(A) -> Fraction:
    """Determinant by fraction-exact elimination."""
    A = mat_rat(A)
    n = len(A)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        d *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return sign * d


def mat_inv(A):
    A = mat_rat(A)
    n = len(A)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def diag(*entries):
    n = len(entries)
    return [[as_rat(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def row_reduce_mod_p(rows, p):
    """Reduced row echelon form mod p; returns (rref rows, pivot columns)."""
    A = [[x % p for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod_p(rows, p) -> int:
    return len(row_reduce_mod_p(rows, p)[1])


def nullspace_mod_p(rows, p, ncols=None):
    """Basis of {v : rows @ v = 0} over F_p."""
    if ncols is None:
        ncols = len(rows[0])
    R, piv = row_reduce_mod_p(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = -R[i][f] % p
        basis.append(v)
    return basis


def det_mod_p(A, p) -> int:
    return det([[x % p for x in r] for r in A]).numerator % p if A else 1


def complete_basis_mod_p(vectors, p, n):
    """Extend independent vectors to a basis of F_p^n using unit vectors."""
    out = [list(v) for v in vectors]
    for i in range(n):
        if len(out) == n:
            break
        e = [int(i == j) for j in range(n)]
        if rank_mod_p(out + [e], p) > len(out):
            out.append(e)
    return out


def normalise_projective(v, p):
    """Scale so that the first nonzero entry is 1."""
    v = [x % p for x in v]
    lead = next(x for x in v if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def projective_points(n, p):
    """Points of P^{n-1}(F_p) as normalised tuples."""
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def lift_to_sl(A, p):
    """Lift a matrix over F_p with determinant 1 to an integer matrix of
    determinant exactly 1 congruent to it mod p.

    Row-reduces with transvections only, then inverts the recorded sequence;
    each transvection lifts to an integer transvection.
    """
    n = len(A)
    M = [[x % p for x in r] for r in A]
    if det_mod_p(M, p) != 1:
        raise ValueError("determinant is not 1 mod p")
    ops = []  # (i, j, c): row_i += c * row_j

    def add(i, j, c):
        c %= p
        if c:
            M[i] = [(a + c * b) % p for a, b in zip(M[i], M[j])]
            ops.append((i, j, c))

    for c in range(n):
        if M[c][c] == 0:
            # rows >= c vanish left of column c, so invertibility gives a pivot below
            r = next(r for r in range(c + 1, n) if M[r][c])
            add(c, r, 1)
        inv = pow(M[c][c], -1, p)
        for r in range(n):
            if r != c and M[r][c]:
                add(r, c, -M[r][c] * inv)
    # now diagonal with product 1; push each entry down to the last one
    for i in range(n - 1):
        d = M[i][i]
        if d == 1:
            continue
        e = M[i + 1][i + 1]
        add(i + 1, i, 1)
        add(i, i + 1, (1 - d) * pow(d, -1, p))
        add(i + 1, i, -d)
        x = M[i][i + 1]
        add(i, i + 1, -x * pow(d * e, -1, p))
    assert all(M[i][j] == int(i == j) for i in range(n) for j in range(n)), M
    # E_k ... E_1 A = I  =>  A = E_1^{-1} ... E_k^{-1}
    L = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, c in ops:
        # right-multiply by E^{-1}: column_j -= c * column_i
        for r in range(n):
            L[r][j] -= c * L[r][i]
    return L


def unimodular_from_mod_p(A, p):
    """Integer matrix of determinant 1 whose rows agree mod p with ``A`` up to
    rescaling the first row by a unit."""
    d = det_mod_p(A, p)
    if d == 0:
        raise ValueError("matrix is singular mod p")
    inv = pow(d, -1, p)
    B = [list(r) for r in A]
    B[0] = [x * inv % p for x in B[0]]
    return lift_to_sl(B, p)
