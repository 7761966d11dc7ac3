"""Combinatorial model of an isotrivial elliptic fibration X -> C.

The surface is the minimal resolution of (E x D)/G with G = T x| R, where T
is a translation group of the common fiber E and R is a cyclic rotation group
of order 1, 2, 3, 4 or 6 acting through the automorphisms of E.  Everything
this module computes is driven by the quotient data alone:

* the base genus g_C;
* the branch counts of the intermediate cover D' = D/T over C, split by
  ramification index and by the character with which the stabilizer acts on
  the local coordinate (the +/- sign);
* the characteristic p, which must not divide |G|.

No schemes are built.  Singular fibers are classified into their Kodaira
types with Euler numbers, quotient-singularity lists and pre-blow-down
intersection matrices; the direct image of the structure sheaf along the
cyclic cover decomposes into character line bundles L_1 ... L_(n-1) whose
degrees determine chi(O_X), the Euler number and the cohomology dimensions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .curves import EllipticCurveW, j_invariant_and_aut
from .ffpoly import FpPolynomial, PrimeField


class ValidationError(Exception):
    """A fibration specification violates a structural rule."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class Rotation(enum.Enum):
    """The cyclic rotation group R, one of the five subgroups of Aut E."""

    TRIVIAL = 1
    C2 = 2
    C3 = 3
    C4 = 4
    C6 = 6

    @property
    def order(self) -> int:
        return self.value


@dataclass(frozen=True)
class TranslationClass:
    """T = Z/n1 + Z/n2 with n2 | n1; (1, 1) is the trivial group."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n2 < 1 or self.n1 < 1:
            raise ValueError("translation orders must be positive")
        if self.n1 % self.n2 != 0:
            raise ValueError(f"n2={self.n2} must divide n1={self.n1}")

    @property
    def order(self) -> int:
        return self.n1 * self.n2


@dataclass(frozen=True)
class RamificationData:
    """Branch-point counts of D'/C by ramification index and character sign."""

    a2: int = 0
    a3p: int = 0
    a3m: int = 0
    a4p: int = 0
    a4m: int = 0
    a6p: int = 0
    a6m: int = 0

    def __post_init__(self):
        for name in ("a2", "a3p", "a3m", "a4p", "a4m", "a6p", "a6m"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def flipped(self) -> "RamificationData":
        """Swap every +/- pair (the involution exchanging X and X')."""
        return RamificationData(
            a2=self.a2,
            a3p=self.a3m,
            a3m=self.a3p,
            a4p=self.a4m,
            a4m=self.a4p,
            a6p=self.a6m,
            a6m=self.a6p,
        )

    def total(self) -> int:
        return self.a2 + self.a3p + self.a3m + self.a4p + self.a4m + self.a6p + self.a6m


# which count fields each rotation class may use
_ALLOWED_COUNTS = {
    Rotation.TRIVIAL: frozenset(),
    Rotation.C2: frozenset({"a2"}),
    Rotation.C3: frozenset({"a3p", "a3m"}),
    Rotation.C4: frozenset({"a4p", "a4m", "a2"}),
    Rotation.C6: frozenset({"a6p", "a6m", "a3p", "a3m", "a2"}),
}


@dataclass(frozen=True)
class FibrationSpec:
    """Quotient data of an isotrivial elliptic fibration over GF(p)."""

    rotation: Rotation
    translation: TranslationClass
    genus_base: int
    ram: RamificationData
    field: PrimeField
    e_model: EllipticCurveW | None = None
    branch_poly: FpPolynomial | None = None

    def __post_init__(self):
        if self.genus_base < 0:
            raise ValueError("base genus must be nonnegative")

    @property
    def group_order(self) -> int:
        return self.translation.order * self.rotation.order


class KodairaType(enum.Enum):
    SMOOTH_MULTIPLE = "smooth-multiple"
    I0STAR = "I0*"
    II = "II"
    IISTAR = "II*"
    III = "III"
    IIISTAR = "III*"
    IV = "IV"
    IVSTAR = "IV*"


@dataclass(frozen=True)
class FiberClass:
    """A singular-fiber type: Euler number, quotient singularities, resolution data."""

    kodaira_type: KodairaType
    euler: int
    singularities: tuple[str, ...]
    pre_blowdown_matrix: tuple[tuple[int, ...], ...] | None
    blowdowns: int


@dataclass(frozen=True)
class Stabilizer:
    """Stabilizer of a point of D: inside the translation part or the rotation part."""

    in_rotation: bool
    order: int
    sign: int | None = None  # +1 or -1; meaningful for rotation stabilizers of order > 2

    @staticmethod
    def translation(order: int) -> "Stabilizer":
        return Stabilizer(in_rotation=False, order=order)

    @staticmethod
    def rotation(order: int, sign: int = 1) -> "Stabilizer":
        return Stabilizer(in_rotation=True, order=order, sign=sign)


_FIBER_TABLE = {
    (2, 1): FiberClass(KodairaType.I0STAR, 6, ("A1", "A1", "A1", "A1"), None, 0),
    (2, -1): FiberClass(KodairaType.I0STAR, 6, ("A1", "A1", "A1", "A1"), None, 0),
    (3, 1): FiberClass(
        KodairaType.IV,
        4,
        ("A3,1", "A3,1", "A3,1"),
        ((-1, 1, 1, 1), (1, -3, 0, 0), (1, 0, -3, 0), (1, 0, 0, -3)),
        1,
    ),
    (3, -1): FiberClass(KodairaType.IVSTAR, 8, ("A2", "A2", "A2"), None, 0),
    (4, 1): FiberClass(
        KodairaType.III,
        3,
        ("A4,1", "A4,1", "A1"),
        ((-1, 1, 1, 1), (1, -4, 0, 0), (1, 0, -2, 0), (1, 0, 0, -4)),
        2,
    ),
    (4, -1): FiberClass(KodairaType.IIISTAR, 9, ("A1", "A3", "A3"), None, 0),
    (6, 1): FiberClass(
        KodairaType.II,
        2,
        ("A6,1", "A3,1", "A1"),
        ((-1, 1, 1, 1), (1, -6, 0, 0), (1, 0, -3, 0), (1, 0, 0, -2)),
        3,
    ),
    (6, -1): FiberClass(KodairaType.IISTAR, 10, ("A5", "A2", "A1"), None, 0),
}


def classify_fiber(stab: Stabilizer) -> FiberClass:
    """Fiber type over the image of a point with the given stabilizer.

    Translation stabilizers give smooth multiple fibers.  Rotation
    stabilizers of order e in {2, 3, 4, 6} give the quotient-singularity
    configurations and (after resolving and contracting the listed number of
    (-1)-curves) the Kodaira types I0*, IV/IV*, III/III*, II/II*; the sign
    records whether the generator acts on the local coordinate by the fixed
    primitive e-th root of unity or by its inverse.
    """
    if not stab.in_rotation:
        if stab.order < 1:
            raise ValueError("translation stabilizer order must be positive")
        return FiberClass(KodairaType.SMOOTH_MULTIPLE, 0, (), None, 0)
    if stab.order not in (2, 3, 4, 6):
        raise ValueError(f"illegal rotation stabilizer order {stab.order}")
    sign = 1 if stab.order == 2 else stab.sign
    if sign not in (1, -1):
        raise ValueError(f"rotation stabilizer of order {stab.order} needs sign +1 or -1")
    return _FIBER_TABLE[(stab.order, sign)]


def singular_fibers(spec: FibrationSpec) -> list[FiberClass]:
    """One FiberClass per branch point, in a fixed deterministic order."""
    r = spec.ram
    fibers = []
    fibers += [classify_fiber(Stabilizer.rotation(2))] * r.a2
    fibers += [classify_fiber(Stabilizer.rotation(3, 1))] * r.a3p
    fibers += [classify_fiber(Stabilizer.rotation(3, -1))] * r.a3m
    fibers += [classify_fiber(Stabilizer.rotation(4, 1))] * r.a4p
    fibers += [classify_fiber(Stabilizer.rotation(4, -1))] * r.a4m
    fibers += [classify_fiber(Stabilizer.rotation(6, 1))] * r.a6p
    fibers += [classify_fiber(Stabilizer.rotation(6, -1))] * r.a6m
    return fibers


def _degree_fractions(rotation: Rotation, r: RamificationData) -> list[tuple[int, int, str]]:
    """(numerator, denominator, formula text) for -deg L_i, i = 1..n-1."""
    if rotation is Rotation.TRIVIAL:
        return []
    if rotation is Rotation.C2:
        return [(r.a2, 2, "deg L1 = -a2/2")]
    if rotation is Rotation.C3:
        return [
            (2 * r.a3p + r.a3m, 3, "deg L1 = -(2*a3p + a3m)/3"),
            (r.a3p + 2 * r.a3m, 3, "deg L2 = -(a3p + 2*a3m)/3"),
        ]
    if rotation is Rotation.C4:
        return [
            (3 * r.a4p + r.a4m + 2 * r.a2, 4, "deg L1 = -(3*a4p + a4m + 2*a2)/4"),
            (r.a4p + r.a4m, 2, "deg L2 = -(a4p + a4m)/2"),
            (r.a4p + 3 * r.a4m + 2 * r.a2, 4, "deg L3 = -(a4p + 3*a4m + 2*a2)/4"),
        ]
    return [
        (
            5 * r.a6p + r.a6m + 4 * r.a3p + 2 * r.a3m + 3 * r.a2,
            6,
            "deg L1 = -(5*a6p + a6m + 4*a3p + 2*a3m + 3*a2)/6",
        ),
        (
            r.a6p + 2 * r.a6m + 2 * r.a3p + r.a3m,
            3,
            "deg L2 = -(a6p + 2*a6m + 2*a3p + a3m)/3",
        ),
        (r.a2 + r.a6p + r.a6m, 2, "deg L3 = -(a2 + a6p + a6m)/2"),
        (
            2 * r.a6p + r.a6m + r.a3p + 2 * r.a3m,
            3,
            "deg L4 = -(2*a6p + a6m + a3p + 2*a3m)/3",
        ),
        (
            r.a6p + 5 * r.a6m + 2 * r.a3p + 4 * r.a3m + 3 * r.a2,
            6,
            "deg L5 = -(a6p + 5*a6m + 2*a3p + 4*a3m + 3*a2)/6",
        ),
    ]


def _euler_closed_form(rotation: Rotation, r: RamificationData) -> int:
    if rotation is Rotation.TRIVIAL:
        return 0
    if rotation is Rotation.C2:
        return 6 * r.a2
    if rotation is Rotation.C3:
        return 4 * r.a3p + 8 * r.a3m
    if rotation is Rotation.C4:
        return 3 * r.a4p + 9 * r.a4m + 6 * r.a2
    return 2 * r.a6p + 10 * r.a6m + 4 * r.a3p + 8 * r.a3m + 6 * r.a2


def _raw_genus_d_prime_twice(spec: FibrationSpec) -> int:
    """2*g(D') - 2 by Riemann-Hurwitz for the degree-n cyclic cover D'/C."""
    n = spec.rotation.order
    r = spec.ram
    ram_sum = 0
    for count, e in (
        (r.a2, 2),
        (r.a3p + r.a3m, 3),
        (r.a4p + r.a4m, 4),
        (r.a6p + r.a6m, 6),
    ):
        if count:
            ram_sum += count * (n // e) * (e - 1)
    return n * (2 * spec.genus_base - 2) + ram_sum


def validate_spec(spec: FibrationSpec) -> list[str]:
    """All structural violations of the quotient data; empty means valid.

    Checks, in order: the characteristic is coprime to |G|; the branch-count
    shape is legal for R; every character line bundle has integral degree
    (the cyclic-cover existence condition); the cover tower has nonnegative
    genera; explicit models, when present, are compatible (forced j-invariant,
    squarefree branch locus whose point count matches a2).
    """
    violations: list[str] = []
    r = spec.ram
    n = spec.rotation.order

    if spec.group_order % spec.field.p == 0:
        violations.append(
            f"characteristic p={spec.field.p} divides the group order {spec.group_order}"
        )

    allowed = _ALLOWED_COUNTS[spec.rotation]
    for name in ("a2", "a3p", "a3m", "a4p", "a4m", "a6p", "a6m"):
        if getattr(r, name) and name not in allowed:
            index = int(name[1])
            violations.append(
                f"{name} = {getattr(r, name)}: index-{index} branch points need a "
                f"stabilizer of order {index} inside a rotation group of order {n}"
            )

    for num, den, formula in _degree_fractions(spec.rotation, r):
        if num % den != 0:
            violations.append(f"{formula} = -{num}/{den} is not an integer")

    if not violations:
        twice = _raw_genus_d_prime_twice(spec)
        if twice % 2 != 0:
            violations.append(f"Riemann-Hurwitz gives 2g-2 = {twice} for D', which is odd")
        elif twice < -2:
            violations.append(
                f"Riemann-Hurwitz gives genus {(twice + 2) // 2} < 0 for D': "
                "no such cover exists"
            )
        elif spec.rotation is Rotation.C4:
            if 2 * (2 * spec.genus_base - 2) + r.a4p + r.a4m < -2:
                violations.append("intermediate double cover would have negative genus")
        elif spec.rotation is Rotation.C6:
            if 3 * (2 * spec.genus_base - 2) + 2 * (r.a6p + r.a6m + r.a3p + r.a3m) < -2:
                violations.append("intermediate triple cover would have negative genus")
            if 2 * (2 * spec.genus_base - 2) + r.a2 + r.a6p + r.a6m < -2:
                violations.append("intermediate double cover would have negative genus")

    if spec.e_model is not None:
        if spec.e_model.field != spec.field:
            violations.append("fiber model lives over a different prime field")
        else:
            j, _ = j_invariant_and_aut(spec.e_model)
            if spec.rotation in (Rotation.C3, Rotation.C6) and j != 0:
                violations.append(
                    f"rotation of order {n} needs j(E) = 0, model has j = {j}"
                )
            if spec.rotation is Rotation.C4 and j != spec.field.reduce(1728):
                violations.append(
                    f"rotation of order 4 needs j(E) = 1728, model has j = {j}"
                )

    if spec.branch_poly is not None:
        if spec.rotation is not Rotation.C2:
            violations.append("an explicit branch polynomial only describes the order-2 chain")
        elif spec.branch_poly.field != spec.field:
            violations.append("branch polynomial lives over a different prime field")
        elif spec.branch_poly.degree() < 1:
            violations.append("branch polynomial must be nonconstant")
        elif not spec.branch_poly.is_squarefree():
            violations.append("branch polynomial is not squarefree")
        else:
            deg = spec.branch_poly.degree()
            points = deg + (1 if deg % 2 == 1 else 0)
            if points != r.a2:
                violations.append(
                    f"branch polynomial marks {points} branch points "
                    f"(degree {deg}{', plus infinity' if deg % 2 else ''}) but a2 = {r.a2}"
                )
    return violations


def ensure_valid(spec: FibrationSpec) -> None:
    violations = validate_spec(spec)
    if violations:
        raise ValidationError(violations)


def genus_cover_tower(spec: FibrationSpec) -> tuple[int, int | None, int | None]:
    """Genera (g_D', g_D'', g_D''') of the cover tower over C.

    D' is the degree-n cyclic cover; the middle entry is the intermediate
    double cover (rotation order 4), the last the intermediate triple cover
    (rotation order 6); absent entries are None.
    """
    ensure_valid(spec)
    g_prime = (_raw_genus_d_prime_twice(spec) + 2) // 2
    r = spec.ram
    g2 = spec.genus_base
    if spec.rotation is Rotation.C4:
        g_double = (2 * (2 * g2 - 2) + (r.a4p + r.a4m) + 2) // 2
        return g_prime, g_double, None
    if spec.rotation is Rotation.C6:
        g_triple = (3 * (2 * g2 - 2) + 2 * (r.a6p + r.a6m + r.a3p + r.a3m) + 2) // 2
        return g_prime, None, g_triple
    return g_prime, None, None


def line_bundle_degrees(spec: FibrationSpec) -> tuple[int, ...]:
    """Degrees of the character line bundles L_1 ... L_(n-1); empty if R is trivial."""
    ensure_valid(spec)
    return tuple(-(num // den) for num, den, _ in _degree_fractions(spec.rotation, spec.ram))


@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical invariants of the minimal model X."""

    deg_l: tuple[int, ...]
    chi: int
    euler_total: int
    h1: int
    h2: int
    d: int  # -deg R^1 pi_* O_X
    rational: bool
    k3_candidate: bool


def surface_invariants(spec: FibrationSpec) -> SurfaceInvariants:
    """chi, Euler number, cohomology dimensions and classification flags.

    The Euler number is computed both from the closed form in the branch
    counts and as the sum over the classified singular fibers; the two must
    agree, and twelve times chi must equal it (Noether, since K^2 = 0 on the
    relatively minimal model).
    """
    ensure_valid(spec)
    deg_l = line_bundle_degrees(spec)
    trivial = spec.rotation is Rotation.TRIVIAL
    g2 = spec.genus_base

    euler_closed = _euler_closed_form(spec.rotation, spec.ram)
    euler_fibers = sum(fc.euler for fc in singular_fibers(spec))
    if euler_closed != euler_fibers:
        raise AssertionError(
            f"Euler number mismatch: closed form {euler_closed}, fiber sum {euler_fibers}"
        )

    if trivial:
        chi = 0
        d = 0
        h2 = g2
    else:
        top = deg_l[-1]
        chi = -top
        d = -top
        h2 = g2 - 1 - top if top < 0 else g2 - 1  # top = 0 means an etale cover
    h1 = g2 + (1 if trivial else 0)

    if 12 * chi != euler_closed:
        raise AssertionError(f"Noether identity fails: 12*{chi} != {euler_closed}")

    return SurfaceInvariants(
        deg_l=deg_l,
        chi=chi,
        euler_total=euler_closed,
        h1=h1,
        h2=h2,
        d=d,
        rational=(g2 == 0 and d == 1),
        k3_candidate=(g2 == 0 and d == 2),
    )
