"""Command-line surface: spec files in, invariant/verdict reports out.

Spec documents are JSON with exact integers::

    {
      "p": 7,
      "R": "C2",                  // "trivial", "C2", "C3", "C4", "C6"
      "T": [1, 1],                // orders of the two translation factors
      "genus_base": 0,
      "ram": {"a2": 4},           // omitted counts default to 0
      "E": {"a": 0, "b": 1},      // optional explicit fiber model
      "branch": [1, 0, 0, 0, 1]   // optional branch locus, lowest degree first
    }

Subcommands: ``invariants``, ``decide``, ``verify-examples``, ``scan``.
Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 oracle-bound
refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curves import (
    EllipticCurveQ,
    EllipticCurveW,
    HyperellipticModel,
    OracleBoundError,
    cartier_manin,
    hasse_invariant,
    point_count_oracle,
)
from .ffpoly import FpPolynomial, PrimeField
from .fibration import (
    FibrationSpec,
    KodairaType,
    RamificationData,
    Rotation,
    Stabilizer,
    TranslationClass,
    ValidationError,
    classify_fiber,
    genus_cover_tower,
    line_bundle_degrees,
    singular_fibers,
    surface_invariants,
    validate_spec,
)
from .ordinarity import (
    CLAUSE_RATIONAL,
    MissingReportDataError,
    build_report,
    check_supersingular_corollary,
    decide,
    hasse_divisor,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_ORACLE_BOUND = 3

SCAN_MAX_P = 10_000

_ROTATIONS = {
    "trivial": Rotation.TRIVIAL,
    "C2": Rotation.C2,
    "C3": Rotation.C3,
    "C4": Rotation.C4,
    "C6": Rotation.C6,
}
_ROTATION_NAMES = {v: k for k, v in _ROTATIONS.items()}
_RAM_KEYS = ("a2", "a3p", "a3m", "a4p", "a4m", "a6p", "a6m")


class SpecDocumentError(Exception):
    """Field-anchored errors raised while reading a spec document."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _want_int(doc, key, errors, minimum=None, path=""):
    label = f"{path}{key}"
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        errors.append(f"{label}: expected an integer, got {value!r}")
        return None
    if minimum is not None and value < minimum:
        errors.append(f"{label}: must be >= {minimum}, got {value}")
        return None
    return value


def parse_spec_document(doc) -> FibrationSpec:
    """Turn a parsed JSON document into a FibrationSpec, or raise with every
    field error found."""
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise SpecDocumentError(["document: expected a JSON object"])

    known = {"p", "R", "T", "genus_base", "ram", "E", "branch"}
    for key in doc:
        if key not in known:
            errors.append(f"{key}: unknown field")

    p = _want_int(doc, "p", errors, minimum=5)
    rot_name = doc.get("R")
    rotation = _ROTATIONS.get(rot_name)
    if rotation is None:
        errors.append(f"R: expected one of {sorted(_ROTATIONS)}, got {rot_name!r}")

    t_raw = doc.get("T", [1, 1])
    translation = None
    if (
        not isinstance(t_raw, list)
        or len(t_raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in t_raw)
    ):
        errors.append(f"T: expected a pair of integers, got {t_raw!r}")
    else:
        try:
            translation = TranslationClass(t_raw[0], t_raw[1])
        except ValueError as exc:
            errors.append(f"T: {exc}")

    genus_base = _want_int(doc, "genus_base", errors, minimum=0) if "genus_base" in doc else 0

    ram_raw = doc.get("ram", {})
    ram = None
    if not isinstance(ram_raw, dict):
        errors.append(f"ram: expected an object, got {ram_raw!r}")
    else:
        counts = {}
        ram_ok = True
        for key in ram_raw:
            if key not in _RAM_KEYS:
                errors.append(f"ram.{key}: unknown branch count (expected {_RAM_KEYS})")
                ram_ok = False
        for key in _RAM_KEYS:
            if key in ram_raw:
                value = _want_int(ram_raw, key, errors, minimum=0, path="ram.")
                if value is None:
                    ram_ok = False
                else:
                    counts[key] = value
        if ram_ok:
            ram = RamificationData(**counts)

    field = None
    if p is not None:
        try:
            field = PrimeField(p)
        except ValueError as exc:
            errors.append(f"p: {exc}")

    e_model = None
    if "E" in doc:
        e_raw = doc["E"]
        if not isinstance(e_raw, dict) or set(e_raw) != {"a", "b"}:
            errors.append(f"E: expected an object with fields a, b, got {e_raw!r}")
        else:
            a = _want_int(e_raw, "a", errors, path="E.")
            b = _want_int(e_raw, "b", errors, path="E.")
            if field is not None and a is not None and b is not None:
                try:
                    e_model = EllipticCurveW(field, a, b)
                except ValueError as exc:
                    errors.append(f"E: {exc}")

    branch_poly = None
    if "branch" in doc:
        br = doc["branch"]
        if not isinstance(br, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in br
        ):
            errors.append(f"branch: expected a list of integers, got {br!r}")
        elif field is not None:
            branch_poly = FpPolynomial(field, br)

    if errors:
        raise SpecDocumentError(errors)
    return FibrationSpec(
        rotation=rotation,
        translation=translation,
        genus_base=genus_base,
        ram=ram,
        field=field,
        e_model=e_model,
        branch_poly=branch_poly,
    )


def spec_to_document(spec: FibrationSpec) -> dict:
    """Normalized document; parse_spec_document inverts this exactly."""
    doc = {
        "p": spec.field.p,
        "R": _ROTATION_NAMES[spec.rotation],
        "T": [spec.translation.n1, spec.translation.n2],
        "genus_base": spec.genus_base,
        "ram": {k: getattr(spec.ram, k) for k in _RAM_KEYS if getattr(spec.ram, k)},
    }
    if spec.e_model is not None:
        doc["E"] = {"a": spec.e_model.a, "b": spec.e_model.b}
    if spec.branch_poly is not None:
        doc["branch"] = list(spec.branch_poly.coeffs)
    return doc


def load_spec(path: str) -> FibrationSpec:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecDocumentError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from None
    return parse_spec_document(doc)


def _fiber_counts(spec: FibrationSpec) -> list[tuple[str, int, int]]:
    """(kodaira label, count, euler) in deterministic order."""
    out: dict[str, tuple[int, int]] = {}
    order = []
    for fc in singular_fibers(spec):
        label = fc.kodaira_type.value
        if label not in out:
            out[label] = (0, fc.euler)
            order.append(label)
        count, euler = out[label]
        out[label] = (count + 1, euler)
    return [(label, out[label][0], out[label][1]) for label in order]


def _print_validation_failure(violations: list[str]) -> None:
    print("invalid fibration data:", file=sys.stderr)
    for v in violations:
        print(f"  - {v}", file=sys.stderr)


def cmd_invariants(args) -> int:
    spec = load_spec(args.spec_file)
    violations = validate_spec(spec)
    if violations:
        _print_validation_failure(violations)
        return EXIT_VALIDATION
    inv = surface_invariants(spec)
    tower = genus_cover_tower(spec)
    fibers = _fiber_counts(spec)
    if args.format == "json":
        payload = {
            "spec": spec_to_document(spec),
            "deg_L": list(inv.deg_l),
            "chi": inv.chi,
            "euler": inv.euler_total,
            "h1": inv.h1,
            "h2": inv.h2,
            "d": inv.d,
            "rational": inv.rational,
            "k3_candidate": inv.k3_candidate,
            "fibers": [
                {"type": label, "count": count, "euler": euler}
                for label, count, euler in fibers
            ],
            "tower": {"Dp": tower[0], "Dpp": tower[1], "Dppp": tower[2]},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK
    rows = [
        ("p", str(spec.field.p)),
        ("rotation", _ROTATION_NAMES[spec.rotation]),
        ("translation", f"Z/{spec.translation.n1} + Z/{spec.translation.n2}"),
        ("base genus", str(spec.genus_base)),
        ("deg L_i", ", ".join(str(v) for v in inv.deg_l) or "(none)"),
        ("chi(O_X)", str(inv.chi)),
        ("Euler number", str(inv.euler_total)),
        ("h1(O_X)", str(inv.h1)),
        ("h2(O_X)", str(inv.h2)),
        ("d", str(inv.d)),
        (
            "flags",
            ", ".join(
                name
                for name, on in (("rational", inv.rational), ("K3-candidate", inv.k3_candidate))
                if on
            )
            or "(none)",
        ),
        (
            "singular fibers",
            ", ".join(f"{count} x {label}" for label, count, euler in fibers) or "(none)",
        ),
        (
            "cover tower",
            ", ".join(
                f"g({name}) = {g}"
                for name, g in zip(("D'", "D''", "D'''"), tower)
                if g is not None
            ),
        ),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    return EXIT_OK


def _parse_set_overrides(pairs: list[str]) -> dict:
    overrides = {}
    errors = []
    for token in pairs:
        if "=" not in token:
            errors.append(f"--set {token!r}: expected NAME=VALUE")
            continue
        name, value = token.split("=", 1)
        overrides[name.strip()] = value.strip()
    if errors:
        raise SpecDocumentError(errors)
    return overrides


def cmd_decide(args) -> int:
    spec = load_spec(args.spec_file)
    violations = validate_spec(spec)
    if violations:
        _print_validation_failure(violations)
        return EXIT_VALIDATION
    overrides = _parse_set_overrides(args.set or [])
    report = build_report(spec, overrides)
    verdict = decide(spec, report)
    corollary = check_supersingular_corollary(spec, verdict, report)

    divisor = None
    e_entry = report.get("E")
    if e_entry is not None and e_entry.ordinary:
        divisor = hasse_divisor(spec, report)

    if args.format == "json":
        payload = {
            "spec": spec_to_document(spec),
            "ordinary": verdict.ordinary,
            "scope": verdict.scope,
            "clause": verdict.clause,
            "reasons": list(verdict.reasons),
            "report": {
                name: None
                if report.get(name) is None
                else {
                    "genus": report.get(name).genus,
                    "p_rank": report.get(name).p_rank,
                    "ordinary": report.get(name).ordinary,
                    "provenance": report.get(name).provenance,
                }
                for name in ("E", "C", "Dp", "Dpp", "Dppp")
            },
            "consistency_violation": corollary,
            "hasse_divisor": None
            if divisor is None
            else {
                "total_degree": divisor.total_degree,
                "entries": [
                    {"type": fc.kodaira_type.value, "multiplicity": mult}
                    for fc, mult in divisor.entries
                ],
            },
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK

    print(f"verdict  {'ordinary' if verdict.ordinary else 'NOT ordinary'}")
    print(f"scope    {verdict.scope}")
    print(f"clause   {verdict.clause}")
    print("reasons:")
    for reason in verdict.reasons:
        print(f"  - {reason}")
    print("report:")
    for name in ("E", "C", "Dp", "Dpp", "Dppp"):
        entry = report.get(name)
        if entry is None:
            continue
        rank = "?" if entry.p_rank is None else str(entry.p_rank)
        print(
            f"  {name}: genus {entry.genus}, p-rank {rank}, "
            f"ordinary={entry.ordinary} [{entry.provenance}]"
        )
    if corollary is not None:
        print(f"consistency violation: {corollary}")
    if divisor is not None:
        print(f"Hasse divisor (total degree {divisor.total_degree}):")
        for fc, mult in divisor.entries:
            print(f"  {fc.kodaira_type.value} fiber: multiplicity {mult}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# the golden example suite


def _supersingular_quartic(field: PrimeField) -> FpPolynomial:
    """First monic squarefree quartic (lexicographic) whose double cover is
    a supersingular genus-1 curve."""
    p = field.p
    for mask in range(p**4):
        coeffs = [mask % p, (mask // p) % p, (mask // p**2) % p, (mask // p**3) % p, 1]
        f = FpPolynomial(field, coeffs)
        if not f.is_squarefree():
            continue
        if cartier_manin(HyperellipticModel(f)).entries[0][0] == 0:
            return f
    raise AssertionError(f"no supersingular quartic over GF({p})")


def _make_spec(rotation, p, genus_base=0, e_model=None, branch=None, **counts):
    field = PrimeField(p)
    return FibrationSpec(
        rotation=rotation,
        translation=TranslationClass(1, 1),
        genus_base=genus_base,
        ram=RamificationData(**counts),
        field=field,
        e_model=e_model,
        branch_poly=FpPolynomial(field, branch) if branch is not None else None,
    )


def _check(condition: bool, detail: str) -> str:
    if not condition:
        raise AssertionError(detail)
    return detail


def _golden_fiber_table() -> str:
    expected = {
        (2, 1): ("I0*", 6),
        (3, 1): ("IV", 4),
        (3, -1): ("IV*", 8),
        (4, 1): ("III", 3),
        (4, -1): ("III*", 9),
        (6, 1): ("II", 2),
        (6, -1): ("II*", 10),
    }
    for (order, sign), (label, euler) in expected.items():
        fc = classify_fiber(Stabilizer.rotation(order, sign))
        _check(fc.kodaira_type.value == label, f"order {order} sign {sign}")
        _check(fc.euler == euler, f"euler of {label}")
    fc = classify_fiber(Stabilizer.translation(4))
    _check(fc.euler == 0, "translation stabilizers give Euler number 0")
    return "8 stabilizer classes -> Kodaira types and Euler numbers"


def _golden_two_branch_points() -> str:
    inv = surface_invariants(_make_spec(Rotation.C2, 5, a2=2))
    _check(inv.chi == 1 and inv.euler_total == 12 and inv.rational, "chi/euler/flag")
    return "a2=2 over the line: chi=1, Euler=12, rational"


def _golden_four_branch_points() -> str:
    spec = _make_spec(Rotation.C2, 7, a2=4)
    inv = surface_invariants(spec)
    _check(inv.chi == 2 and inv.euler_total == 24 and inv.k3_candidate, "chi/euler/flag")
    fibers = _fiber_counts(spec)
    _check(fibers == [("I0*", 4, 6)], "four I0* fibers")
    _check(genus_cover_tower(spec)[0] == 1, "double cover has genus 1")
    return "a2=4 over the line: chi=2, Euler=24, K3 candidate, four I0*"


def _golden_rational_exception() -> str:
    e = EllipticCurveW(PrimeField(5), 0, 1)
    _check(point_count_oracle(e)[1] == 0, "trace 0 at p=5")
    spec = _make_spec(Rotation.C2, 5, a2=2, e_model=e, branch=[0, 1])
    verdict = decide(spec, build_report(spec))
    _check(verdict.ordinary and verdict.clause == CLAUSE_RATIONAL, "verdict")
    return "supersingular fiber on a rational surface: ordinary by h-vanishing"


def _golden_kummer_not_ordinary() -> str:
    field = PrimeField(7)
    e = EllipticCurveW(field, 0, 1)
    _check(hasse_invariant(e) != 0, "ordinary fiber at p=7")
    quartic = _supersingular_quartic(field)
    spec = _make_spec(Rotation.C2, 7, a2=4, e_model=e, branch=list(quartic.coeffs))
    verdict = decide(spec, build_report(spec))
    _check(not verdict.ordinary, "supersingular double cover forces non-ordinary")
    return "K3-type configuration with supersingular D': NOT ordinary"


def _golden_trivial_rotation() -> str:
    spec = _make_spec(Rotation.TRIVIAL, 5, genus_base=2)
    report = build_report(spec, {"E": "ordinary", "C": "ordinary"})
    verdict = decide(spec, report)
    _check(verdict.ordinary, "product rule")
    return "trivial rotation: ordinary fiber + ordinary base -> ordinary surface"


def _golden_hasse_values() -> str:
    f7 = PrimeField(7)
    _check(hasse_invariant(EllipticCurveW(f7, 0, 1)) == 3, "x^3+1 at 7")
    _check(hasse_invariant(EllipticCurveW(f7, 1, 0)) == 0, "x^3+x at 7")
    _check(hasse_invariant(EllipticCurveW(PrimeField(5), 0, 1)) == 0, "x^3+1 at 5")
    return "Hasse invariants: 3, 0, 0 for the three reference curves"


def _golden_order_four_divisor() -> str:
    spec = _make_spec(Rotation.C4, 13, a4p=2, a2=1)
    inv = surface_invariants(spec)
    _check(inv.euler_total == 12, "Euler 12")
    div = hasse_divisor(spec, build_report(spec, {"E": "ordinary"}))
    _check(sorted(m for _, m in div.entries) == [3, 3, 6], "multiplicities 3,3,6")
    _check(div.total_degree == 12, "degree p-1")
    return "two III fibers + one I0* at p=13: divisor degree p-1, parts {3,3,6}"


def _golden_order_four_star_divisor() -> str:
    spec = _make_spec(Rotation.C4, 13, a4m=2, a2=1)
    inv = surface_invariants(spec)
    _check(inv.euler_total == 24, "Euler 24")
    div = hasse_divisor(spec, build_report(spec, {"E": "ordinary"}))
    stars = [m for fc, m in div.entries if fc.kodaira_type is KodairaType.IIISTAR]
    _check(stars == [9, 9], "III* multiplicity 3(p-1)/4 = 9")
    _check(div.total_degree == 24, "degree 2(p-1)")
    return "two III* fibers + one I0* at p=13: divisor degree 2(p-1), III* parts 9"


def _golden_order_six_degrees() -> str:
    spec = _make_spec(Rotation.C6, 7, a6p=1, a6m=1, a2=2)
    _check(line_bundle_degrees(spec) == (-2, -1, -2, -1, -2), "five degrees")
    return "order-6 example: deg L = (-2, -1, -2, -1, -2)"


GOLDEN_SUITE = (
    ("fiber-euler-table", _golden_fiber_table),
    ("two-branch-points-rational", _golden_two_branch_points),
    ("four-branch-points-k3", _golden_four_branch_points),
    ("rational-exception", _golden_rational_exception),
    ("kummer-not-ordinary", _golden_kummer_not_ordinary),
    ("trivial-rotation-product", _golden_trivial_rotation),
    ("hasse-invariant-values", _golden_hasse_values),
    ("order-four-divisor", _golden_order_four_divisor),
    ("order-four-star-divisor", _golden_order_four_star_divisor),
    ("order-six-degrees", _golden_order_six_degrees),
)


def cmd_verify_examples(args) -> int:
    failures = 0
    for name, fn in GOLDEN_SUITE:
        try:
            detail = fn()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}: {detail}")
    print(f"{len(GOLDEN_SUITE) - failures}/{len(GOLDEN_SUITE)} examples verified")
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# prime scans


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def load_scan_document(path: str) -> tuple[EllipticCurveQ, list[int] | None]:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecDocumentError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from None
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise SpecDocumentError(["document: expected a JSON object"])
    for key in doc:
        if key not in {"E", "branch"}:
            errors.append(f"{key}: unknown field")
    e_raw = doc.get("E")
    curve = None
    if not isinstance(e_raw, dict) or set(e_raw) != {"a", "b"}:
        errors.append(f"E: expected an object with fields a, b, got {e_raw!r}")
    else:
        a = _want_int(e_raw, "a", errors, path="E.")
        b = _want_int(e_raw, "b", errors, path="E.")
        if a is not None and b is not None:
            try:
                curve = EllipticCurveQ(a, b)
            except ValueError as exc:
                errors.append(f"E: {exc}")
    branch = doc.get("branch")
    if branch is not None:
        if not isinstance(branch, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in branch
        ):
            errors.append(f"branch: expected a list of integers, got {branch!r}")
        else:
            while branch and branch[-1] == 0:
                branch = branch[:-1]
            if len(branch) < 2:
                errors.append("branch: need a nonconstant polynomial over the integers")
    if errors:
        raise SpecDocumentError(errors)
    return curve, branch


def _scan_one_prime(curve: EllipticCurveQ, branch: list[int] | None, p: int) -> dict:
    row = {"p": p, "good": False, "E_ord": None, "Dp_ord": None, "verdict": None}
    if not curve.has_good_reduction(p):
        return row
    field = PrimeField(p)
    if branch is None:
        row["good"] = True
        e_p = curve.reduce(field)
        ordinary = hasse_invariant(e_p) != 0
        row["E_ord"] = ordinary
        row["verdict"] = ordinary
        return row
    degree = len(branch) - 1
    while degree >= 0 and branch[degree] % p == 0:
        degree -= 1
    if degree != len(branch) - 1:
        return row  # leading coefficient vanishes: the branch degree drops
    branch_p = FpPolynomial(field, branch)
    if not branch_p.is_squarefree():
        return row
    row["good"] = True
    e_p = curve.reduce(field)
    row["E_ord"] = hasse_invariant(e_p) != 0
    a2 = branch_p.degree() + (branch_p.degree() % 2)
    spec = FibrationSpec(
        rotation=Rotation.C2,
        translation=TranslationClass(1, 1),
        genus_base=0,
        ram=RamificationData(a2=a2),
        field=field,
        e_model=e_p,
        branch_poly=branch_p,
    )
    report = build_report(spec)
    row["Dp_ord"] = bool(report.dp.ordinary)
    row["verdict"] = decide(spec, report).ordinary
    return row


def cmd_scan(args) -> int:
    if args.pmax > SCAN_MAX_P:
        raise OracleBoundError(f"scan refused: pmax={args.pmax} exceeds bound {SCAN_MAX_P}")
    curve, branch = load_scan_document(args.scan_file)
    rows = [_scan_one_prime(curve, branch, p) for p in _primes_up_to(args.pmax) if p >= 5]
    good = [r for r in rows if r["good"]]
    ordinary = [r for r in good if r["verdict"]]
    fraction = Fraction(len(ordinary), len(good)) if good else None

    if args.format == "json":
        payload = {
            "rows": rows,
            "good_primes": len(good),
            "ordinary_primes": len(ordinary),
            "ordinary_fraction": None if fraction is None else [fraction.numerator, fraction.denominator],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK

    def cell(value):
        if value is None:
            return "-"
        return "1" if value else "0"

    print("p\tgood\tE_ord\tDp_ord\tverdict")
    for r in rows:
        print(f"{r['p']}\t{cell(r['good'])}\t{cell(r['E_ord'])}\t{cell(r['Dp_ord'])}\t{cell(r['verdict'])}")
    if fraction is None:
        print("# no good primes in range")
    else:
        print(
            f"# ordinary at {len(ordinary)}/{len(good)} good primes "
            f"(fraction {float(fraction):.4f})"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isofib",
        description="Invariants and ordinarity of isotrivial elliptic surfaces over GF(p)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="numerical invariants and fiber types")
    p_inv.add_argument("spec_file")
    p_inv.add_argument("--format", choices=["text", "json"], default="text")
    p_inv.set_defaults(func=cmd_invariants)

    p_dec = sub.add_parser("decide", help="ordinarity verdict and Hasse divisor")
    p_dec.add_argument("spec_file")
    p_dec.add_argument(
        "--set",
        action="append",
        metavar="NAME=VALUE",
        help="supply ordinarity data: E/C/Dp/Dpp/Dppp = ordinary|nonordinary|<p-rank>",
    )
    p_dec.add_argument("--format", choices=["text", "json"], default="text")
    p_dec.set_defaults(func=cmd_decide)

    p_ver = sub.add_parser("verify-examples", help="run the built-in golden example suite")
    p_ver.set_defaults(func=cmd_verify_examples)

    p_scan = sub.add_parser("scan", help="ordinary-reduction scan over primes")
    p_scan.add_argument("scan_file")
    p_scan.add_argument("--pmax", type=int, required=True)
    p_scan.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p_scan.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecDocumentError as exc:
        print("cannot read input:", file=sys.stderr)
        for err in exc.errors:
            print(f"  - {err}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OracleBoundError as exc:
        print(f"oracle bound exceeded: {exc}", file=sys.stderr)
        return EXIT_ORACLE_BOUND
    except (ValidationError, MissingReportDataError, ValueError) as exc:
        print(f"invalid data: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
