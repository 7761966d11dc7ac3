"""Shared builders for randomized fibration specs and curve models."""

import random

from isofib.curves import EllipticCurveW
from isofib.ffpoly import FpPolynomial, PrimeField
from isofib.fibration import (
    FibrationSpec,
    RamificationData,
    Rotation,
    TranslationClass,
    validate_spec,
)

SMALL_PRIMES = (5, 7, 11, 13, 17, 19, 23)


def make_spec(rotation, p=5, genus_base=0, translation=(1, 1), e_model=None, branch=None, **counts):
    field = PrimeField(p)
    branch_poly = FpPolynomial(field, branch) if branch is not None else None
    return FibrationSpec(
        rotation=rotation,
        translation=TranslationClass(*translation),
        genus_base=genus_base,
        ram=RamificationData(**counts),
        field=field,
        e_model=e_model,
        branch_poly=branch_poly,
    )


def random_valid_spec(rng: random.Random, rotation=None) -> FibrationSpec:
    """Rejection-sample a spec that passes every validation rule."""
    while True:
        rot = rotation or rng.choice(list(Rotation))
        counts = {}
        if rot is Rotation.C2:
            counts["a2"] = 2 * rng.randrange(0, 4)
        elif rot is Rotation.C3:
            counts["a3p"] = rng.randrange(0, 5)
            counts["a3m"] = rng.randrange(0, 5)
        elif rot is Rotation.C4:
            counts["a4p"] = rng.randrange(0, 4)
            counts["a4m"] = rng.randrange(0, 4)
            counts["a2"] = rng.randrange(0, 4)
        elif rot is Rotation.C6:
            counts["a6p"] = rng.randrange(0, 3)
            counts["a6m"] = rng.randrange(0, 3)
            counts["a3p"] = rng.randrange(0, 3)
            counts["a3m"] = rng.randrange(0, 3)
            counts["a2"] = rng.randrange(0, 3)
        n1 = rng.choice([1, 1, 2, 3])
        n2 = rng.choice([d for d in (1, n1) if n1 % d == 0])
        p = rng.choice(SMALL_PRIMES)
        spec = make_spec(
            rot,
            p=p,
            genus_base=rng.randrange(0, 3),
            translation=(n1, n2),
            **counts,
        )
        if not validate_spec(spec):
            return spec


def random_squarefree_poly(rng: random.Random, field: PrimeField, degree: int) -> FpPolynomial:
    while True:
        coeffs = [rng.randrange(field.p) for _ in range(degree)]
        coeffs.append(rng.randrange(1, field.p))
        f = FpPolynomial(field, coeffs)
        if f.is_squarefree():
            return f


def random_ordinary_curve(rng: random.Random, field: PrimeField) -> EllipticCurveW:
    from isofib.curves import hasse_invariant

    while True:
        a, b = rng.randrange(field.p), rng.randrange(field.p)
        if (4 * a**3 + 27 * b**2) % field.p == 0:
            continue
        e = EllipticCurveW(field, a, b)
        if hasse_invariant(e) != 0:
            return e
