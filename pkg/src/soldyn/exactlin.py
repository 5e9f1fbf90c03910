"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`. Matrices act on
column vectors; a vector is a plain tuple of Fractions. Subspaces are kept
in reduced row-echelon form so that equal subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import NotInvariant, NotInvertible, ParseError

Rat = Fraction
QVec = tuple  # tuple[Fraction, ...]


def to_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into an exact
    computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    raise ParseError(f"not an exact rational: {x!r}")


def qvec(values: Iterable) -> QVec:
    return tuple(to_rat(x) for x in values)


def zero_vec(n: int) -> QVec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> QVec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def is_zero_vec(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive_integer_vec(v: Sequence[Fraction]) -> tuple:
    """Scale ``v`` to a coprime integer vector whose first nonzero entry is
    positive. Zero maps to zero."""
    if is_zero_vec(v):
        return tuple(0 for _ in v)
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Polynomial(c * inv for c in self.coeffs)

    def primitive(self) -> "Polynomial":
        """Integer multiple with coprime coefficients and positive lead."""
        if self.is_zero():
            return self
        ints = primitive_integer_vec(tuple(reversed(self.coeffs)))
        return Polynomial(reversed(ints))

    def __call__(self, x):
        """Evaluate at a scalar or, by Horner's rule, at a square matrix."""
        if isinstance(x, RatMatrix):
            n = x.dim
            acc = RatMatrix.zero(n)
            for c in reversed(self.coeffs):
                acc = acc * x + RatMatrix.scalar(n, c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd. Remainders are kept primitive to stop coefficient growth."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


# ---------------------------------------------------------------------------
# matrices


class RatMatrix:
    """Immutable square matrix over Q acting on column vectors."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_rat(x) for x in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ParseError(f"matrix is not square: {n} rows, row of length {len(row)}")
        self.rows = rows
        self._hash = None

    # constructors
    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "RatMatrix":
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *entries) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "RatMatrix") -> "RatMatrix":
        n = sum(b.dim for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.dim
        return cls(rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> QVec:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows)) if self.rows else self

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in row] for row in self.rows]})"

    def __str__(self):
        cells = [[str(x) for x in row] for row in self.rows]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)

    # arithmetic
    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([-a for a in row] for row in self.rows)

    def __rmul__(self, c):
        c = to_rat(c)
        return RatMatrix([c * a for a in row] for row in self.rows)

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            cols = list(zip(*other.rows))
            return RatMatrix(
                [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                for row in self.rows
            )
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        return self.__rmul__(other)

    __matmul__ = __mul__

    def apply(self, v: Sequence) -> QVec:
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def __pow__(self, k: int) -> "RatMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = RatMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.rows) for j, x in enumerate(row)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def det(self) -> Fraction:
        a = [list(row) for row in self.rows]
        n = len(a)
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if f:
                    for k in range(c, n):
                        a[r][k] -= f * a[c][k]
        return det

    def inverse(self) -> "RatMatrix":
        n = self.dim
        a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise NotInvertible("matrix is singular")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return RatMatrix(row[n:] for row in a)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def tolist(self) -> list:
        return [[str(x) for x in row] for row in self.rows]


def commutator(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """``a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A Q-subspace of Q^n held by its reduced row-echelon basis.

    Construct through :func:`rref`, :meth:`span`, :meth:`full` or
    :meth:`zero`; the dataclass constructor trusts its arguments.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return rref(list(vectors), ambient_dim)[0]

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vec(n, i) for i in range(n)), tuple(range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def non_pivots(self) -> tuple:
        """Standard coordinates that index the quotient Q^n / self."""
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    def reduce(self, v: Sequence) -> QVec:
        """Representative of ``v`` modulo self with zeros at the pivots."""
        w = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                w = [x - c * y for x, y in zip(w, b)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> QVec:
        """Coordinates of ``v`` (assumed inside) in the echelon basis."""
        return tuple(to_rat(v[p]) for p in self.pivots)

    def embed(self, coords: Sequence) -> QVec:
        """Inverse of :meth:`coordinates`."""
        out = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)

    def project(self, v: Sequence) -> QVec:
        """Image of ``v`` in Q^n / self, in non-pivot coordinates."""
        w = self.reduce(v)
        return tuple(w[c] for c in self.non_pivots())

    def lift(self, u: Sequence) -> QVec:
        """Place quotient coordinates back at the non-pivot positions."""
        out = [Fraction(0)] * self.ambient_dim
        for c, x in zip(self.non_pivots(), u):
            out[c] = to_rat(x)
        return tuple(out)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to self under the standard dot product."""
        return kernel(list(self.basis), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        if self.is_full():
            return other
        if other.is_full():
            return self
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, m: RatMatrix) -> "Subspace":
        return Subspace.span([m.apply(b) for b in self.basis], self.ambient_dim)

    def preimage(self, m: RatMatrix) -> "Subspace":
        """``{x : m x in self}``; no inverse needed."""
        mt = m.transpose()
        return kernel([mt.apply(a) for a in self.annihilator().basis], self.ambient_dim)

    def is_invariant(self, m: RatMatrix) -> bool:
        return self.image(m) <= self

    def to_strings(self) -> list:
        return [[str(x) for x in b] for b in self.basis]

    def __repr__(self):
        return f"Subspace({self.ambient_dim}, {self.to_strings()})"


def rref(m: Union[RatMatrix, Sequence[Sequence]], ncols: int | None = None):
    """Row space of ``m`` in canonical form, and its rank.

    ``m`` is a RatMatrix or a list of rows; ``ncols`` is needed when the
    row list may be empty.
    """
    rows = [list(map(to_rat, r)) for r in (m.rows if isinstance(m, RatMatrix) else m)]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty row list")
        ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = tuple(tuple(row) for row in rows[:r])
    return Subspace(ncols, basis, tuple(pivots)), r


def kernel(m: Union[RatMatrix, Sequence[Sequence]], ncols: int | None = None) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    if isinstance(m, RatMatrix):
        ncols = m.dim
    row_space, _ = rref(m, ncols)
    pivots = row_space.pivots
    free = row_space.non_pivots()
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(row_space.basis, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return rref(vecs, ncols)[0]


def charpoly(m: RatMatrix) -> Polynomial:
    """``det(xI - m)`` by the Faddeev-LeVerrier recurrence.

    Over Q every division by the step index is exact, so no intermediate
    quantity ever leaves the rationals.
    """
    n = m.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = RatMatrix.zero(n)
    for k in range(1, n + 1):
        aux = m * aux + RatMatrix.scalar(n, coeffs[n - k + 1])
        coeffs[n - k] = -(m * aux).trace() / k
    return Polynomial(coeffs)


def spin(vectors: Iterable[Sequence], gens: Sequence[RatMatrix], ambient_dim: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and mapped into itself by
    every generator."""
    space = Subspace.span(vectors, ambient_dim)
    frontier = list(space.basis)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = g.apply(v)
                if not space.contains(w):
                    space = Subspace.span(space.basis + (w,), ambient_dim)
                    new.append(w)
        frontier = new
    return space


def invariant_core(seed: Subspace, gens: Sequence[RatMatrix]) -> Subspace:
    """Largest subspace of ``seed`` that every generator maps onto itself.

    Iterates ``V <- V & gV & g^-1 V``; each pass that changes V drops its
    dimension, so at most ``dim seed`` passes do any work.
    """
    v = seed
    while True:
        w = v
        for g in gens:
            if w.is_zero():
                return w
            w = w & w.image(g) & w.preimage(g)
        if w == v:
            return v
        v = w


def restrict_action(m: RatMatrix, v: Subspace) -> RatMatrix:
    """Matrix of ``m`` on ``v`` in the echelon basis of ``v``."""
    images = [m.apply(b) for b in v.basis]
    if not all(v.contains(w) for w in images):
        raise NotInvariant("subspace is not invariant under the matrix")
    return RatMatrix.from_columns([v.coordinates(w) for w in images])


def quotient_action(m: RatMatrix, v: Subspace) -> RatMatrix:
    """Induced map on Q^n / v, in the basis of non-pivot unit vectors."""
    if not all(v.contains(m.apply(b)) for b in v.basis):
        raise NotInvariant("subspace is not invariant under the matrix")
    cols = [v.project(m.column(c)) for c in v.non_pivots()]
    return RatMatrix.from_columns(cols)


def change_basis(subspace: Subspace, basis_vectors: Sequence[QVec], ambient_dim: int) -> Subspace:
    """Push a subspace written in coordinates w.r.t. ``basis_vectors`` into
    the ambient space those vectors live in."""
    vecs = []
    for b in subspace.basis:
        out = [Fraction(0)] * ambient_dim
        for c, e in zip(b, basis_vectors):
            if c:
                out = [x + c * y for x, y in zip(out, e)]
        vecs.append(out)
    return Subspace.span(vecs, ambient_dim)
