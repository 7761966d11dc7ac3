"""Exact arithmetic over GF(p), its quadratic extension, polynomials and matrices.

Field elements are plain Python integers in ``[0, p)``; a ``PrimeField``
instance carries the modulus and the arithmetic.  Polynomials are immutable
coefficient tuples, lowest degree first, with the trailing coefficient nonzero
(the zero polynomial is the empty tuple).  Matrices are immutable row-major
tuples.  Everything is exact: no floating point, no external bignum library.

The quadratic extension GF(p^2) is realized as GF(p)[w]/(w^2 - n) with n the
smallest positive quadratic non-residue mod p, chosen deterministically so
that runs are reproducible.  Elements are pairs ``(a, b)`` meaning a + b*w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

_MACHINE_WORD_LIMIT = 2**63


def _is_prime(n: int) -> bool:
    """Trial division; adequate for the machine-word moduli used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class PrimeField:
    """The prime field GF(p) for a prime p > 3 fitting in a machine word."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError("modulus must be an integer")
        if p >= _MACHINE_WORD_LIMIT:
            raise ValueError(f"modulus {p} does not fit a machine word")
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p <= 3:
            raise ValueError(f"modulus {p} not allowed: characteristic must exceed 3")
        self.p = p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def reduce(self, x: int) -> int:
        return x % self.p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return (-x) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(x, -1, self.p)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow_(self, x: int, e: int) -> int:
        return pow(x, e, self.p)

    def is_square(self, x: int) -> bool:
        """Euler criterion; 0 counts as a square."""
        x %= self.p
        if x == 0:
            return True
        return pow(x, (self.p - 1) // 2, self.p) == 1

    def smallest_non_residue(self) -> int:
        """Smallest positive quadratic non-residue (exists for every p > 2)."""
        for n in range(2, self.p):
            if not self.is_square(n):
                return n
        raise AssertionError("unreachable: GF(p) with p > 2 has a non-residue")

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))


# ---------------------------------------------------------------------------
# polynomials


def _normalize(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _mul_coeffs(p: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exact product of coefficient tuples mod p.

    Schoolbook for small operands; Kronecker substitution (packing the
    coefficients into one big integer) once the quadratic cost would dominate,
    so that CPython's subquadratic integer multiplication does the heavy
    lifting.  Both routes give identical results.
    """
    if not a or not b:
        return ()
    if len(a) * len(b) <= 4096:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return tuple(c % p for c in out)
    # slot width: products of residues < p^2, at most min(len) summands per slot
    slot = 2 * (p - 1).bit_length() + min(len(a), len(b)).bit_length() + 1
    pack_a = sum(ai << (i * slot) for i, ai in enumerate(a))
    pack_b = sum(bj << (j * slot) for j, bj in enumerate(b))
    prod = pack_a * pack_b
    mask = (1 << slot) - 1
    out = []
    for _ in range(len(a) + len(b) - 1):
        out.append((prod & mask) % p)
        prod >>= slot
    return tuple(out)


@dataclass(frozen=True)
class FpPolynomial:
    """Dense univariate polynomial over GF(p), lowest-degree coefficient first."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __init__(self, field: PrimeField, coeffs=()):
        object.__setattr__(self, "field", field)
        reduced = [int(c) % field.p for c in coeffs]
        object.__setattr__(self, "coeffs", _normalize(reduced))

    @staticmethod
    def zero(field: PrimeField) -> "FpPolynomial":
        return FpPolynomial(field, ())

    @staticmethod
    def one(field: PrimeField) -> "FpPolynomial":
        return FpPolynomial(field, (1,))

    @staticmethod
    def x(field: PrimeField) -> "FpPolynomial":
        return FpPolynomial(field, (0, 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def leading_coeff(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check_same_field(self, other: "FpPolynomial") -> None:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "FpPolynomial") -> "FpPolynomial":
        self._check_same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPolynomial(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "FpPolynomial") -> "FpPolynomial":
        self._check_same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPolynomial(
            self.field, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self) -> "FpPolynomial":
        return FpPolynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "FpPolynomial") -> "FpPolynomial":
        self._check_same_field(other)
        prod = _mul_coeffs(self.field.p, self.coeffs, other.coeffs)
        return FpPolynomial(self.field, prod)

    def scale(self, c: int) -> "FpPolynomial":
        c %= self.field.p
        return FpPolynomial(self.field, [c * a for a in self.coeffs])

    def __pow__(self, e: int) -> "FpPolynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = FpPolynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def derivative(self) -> "FpPolynomial":
        return FpPolynomial(
            self.field, [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def monic(self) -> "FpPolynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    def divmod(self, other: "FpPolynomial") -> tuple["FpPolynomial", "FpPolynomial"]:
        self._check_same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return FpPolynomial.zero(self.field), self
        quo = [0] * (dq + 1)
        lead_inv = self.field.inv(other.leading_coeff())
        for k in range(dq, -1, -1):
            c = (rem[k + other.degree()] * lead_inv) % p
            quo[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] = (rem[k + i] - c * oc) % p
        return FpPolynomial(self.field, quo), FpPolynomial(self.field, rem)

    def gcd(self, other: "FpPolynomial") -> "FpPolynomial":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def is_squarefree(self) -> bool:
        """gcd(f, f') is a nonzero constant.  False for the zero polynomial."""
        if self.is_zero():
            return False
        g = self.gcd(self.derivative())
        return g.degree() == 0

    def __repr__(self) -> str:
        return f"FpPolynomial(p={self.field.p}, coeffs={self.coeffs})"


def _truncated_mul(p: int, a: tuple[int, ...], b: tuple[int, ...], top: int) -> tuple[int, ...]:
    # coefficients above `top` can never feed back into coefficient `top`
    prod = _mul_coeffs(p, a[: top + 1], b[: top + 1])
    return prod[: top + 1]


def poly_pow_coeff(f: FpPolynomial, e: int, k: int) -> int:
    """Coefficient of x^k in f^e, by binary exponentiation with exact products.

    Intermediate results are truncated above degree k, which never changes the
    answer: in a product, the coefficient of x^k only sees factors of degree
    at most k.  f^0 = 1; a k beyond the degree of f^e gives 0.
    """
    if e < 0 or k < 0:
        raise ValueError("exponent and coefficient index must be nonnegative")
    p = f.field.p
    result: tuple[int, ...] = (1,)
    base = f.coeffs[: k + 1]
    while e:
        if e & 1:
            result = _truncated_mul(p, result, base, k)
        e >>= 1
        if e:
            base = _truncated_mul(p, base, base, k)
    return result[k] if k < len(result) else 0


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class FpMatrix:
    """Dense matrix over GF(p), row-major, immutable after construction."""

    field: PrimeField
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, field: PrimeField, entries):
        rows = [tuple(int(c) % field.p for c in row) for row in entries]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", tuple(rows))

    @staticmethod
    def identity(field: PrimeField, n: int) -> "FpMatrix":
        return FpMatrix(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(field: PrimeField, rows: int, cols: int) -> "FpMatrix":
        return FpMatrix(field, [[0] * cols for _ in range(rows)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __mul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.field != other.field:
            raise ValueError("matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        p = self.field.p
        out = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) % p
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ]
        return FpMatrix(self.field, out)

    def __pow__(self, e: int) -> "FpMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        result = FpMatrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.field.p}, {self.rows}x{self.cols}, {self.entries})"


def matrix_rank_det(m: FpMatrix) -> tuple[int, int | None]:
    """Rank and determinant by Gaussian elimination over GF(p).

    The determinant is None for non-square matrices; the empty 0x0 matrix has
    rank 0 and determinant 1.
    """
    p = m.field.p
    work = [list(row) for row in m.entries]
    rank = 0
    det = 1
    sign_swaps = 0
    col = 0
    for row in range(m.rows):
        # find a pivot at or below `row` in some column >= col
        pivot_found = False
        while col < m.cols and not pivot_found:
            for r in range(row, m.rows):
                if work[r][col] != 0:
                    if r != row:
                        work[row], work[r] = work[r], work[row]
                        sign_swaps += 1
                    pivot_found = True
                    break
            if not pivot_found:
                col += 1
        if not pivot_found:
            break
        rank += 1
        pivot = work[row][col]
        det = (det * pivot) % p
        inv = pow(pivot, -1, p)
        for r in range(row + 1, m.rows):
            factor = (work[r][col] * inv) % p
            if factor:
                for c in range(col, m.cols):
                    work[r][c] = (work[r][c] - factor * work[row][c]) % p
        col += 1
    if not m.is_square():
        return rank, None
    if rank < m.rows:
        return rank, 0
    if sign_swaps % 2:
        det = (-det) % p
    return rank, det


# ---------------------------------------------------------------------------
# the quadratic extension GF(p^2)

ExtElement = tuple[int, int]


class ExtField:
    """GF(p^2) = GF(p)[w]/(w^2 - n), n the smallest non-residue mod p.

    Elements are pairs (a, b) of residues representing a + b*w.  The
    Frobenius x -> x^p fixes GF(p) pointwise and squares to the identity.
    """

    __slots__ = ("base", "non_residue")

    def __init__(self, base: PrimeField):
        self.base = base
        self.non_residue = base.smallest_non_residue()

    @property
    def order(self) -> int:
        return self.base.p * self.base.p

    def zero(self) -> ExtElement:
        return (0, 0)

    def one(self) -> ExtElement:
        return (1, 0)

    def embed(self, a: int) -> ExtElement:
        return (a % self.base.p, 0)

    def add(self, x: ExtElement, y: ExtElement) -> ExtElement:
        p = self.base.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x: ExtElement, y: ExtElement) -> ExtElement:
        p = self.base.p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        p = self.base.p
        a, b = x
        c, d = y
        return ((a * c + self.non_residue * b * d) % p, (a * d + b * c) % p)

    def inverse(self, x: ExtElement) -> ExtElement:
        p = self.base.p
        a, b = x
        norm = (a * a - self.non_residue * b * b) % p
        if norm == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({p}^2)")
        ninv = pow(norm, -1, p)
        return ((a * ninv) % p, (-b * ninv) % p)

    def frobenius(self, x: ExtElement) -> ExtElement:
        # w^p = w * n^((p-1)/2) = -w since n is a non-residue
        return (x[0], (-x[1]) % self.base.p)

    def pow_(self, x: ExtElement, e: int) -> ExtElement:
        if e < 0:
            return self.pow_(self.inverse(x), -e)
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_square(self, x: ExtElement) -> bool:
        if x == (0, 0):
            return True
        return self.pow_(x, (self.order - 1) // 2) == self.one()

    def elements(self) -> Iterator[ExtElement]:
        p = self.base.p
        for a in range(p):
            for b in range(p):
                yield (a, b)


def ext_field_ops(field: PrimeField) -> ExtField:
    """Arithmetic context for GF(p^2) over the given prime field."""
    return ExtField(field)
