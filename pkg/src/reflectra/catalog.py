"""Known terminal cycles and the closed forms that generate them.

Only seeds are stored here. Member sets are recomputed from each seed with
:func:`reflectra.trajectory.cycle_members` the first time they are needed, so
printed member lists can be checked against them instead of copied.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .digits import LIMIT, digit_count
from .trajectory import cycle_members


class FamilyKind(enum.Enum):
    PAIR_REPUNIT_22 = "PairRepunit22"
    PAIR_REPUNIT_66 = "PairRepunit66"
    SPACED_2178 = "Spaced2178"
    SPACED_6534 = "Spaced6534"
    FOURTEEN_198 = "Fourteen198"
    IRREGULAR = "Irregular"


# Seeds of the 14-member families by digit width. The 9-digit seed is also
# printed as 114369678 elsewhere; that value is not on any cycle.
FOURTEEN_SEEDS = {8: 11436678, 9: 114396678, 10: 1143996678}

CATALOG_MAX_WIDTH = 10


def _formula_value(kind: FamilyKind, k: int) -> int:
    if kind is FamilyKind.PAIR_REPUNIT_22:
        return 22 * (10**k - 1)
    if kind is FamilyKind.PAIR_REPUNIT_66:
        return 66 * (10**k - 1)
    if kind is FamilyKind.SPACED_2178:
        return 2178 * (10**k + 1)
    if kind is FamilyKind.SPACED_6534:
        return 6534 * (10**k + 1)
    if kind is FamilyKind.FOURTEEN_198:
        return FOURTEEN_SEEDS[k]
    raise ValueError(f"{kind.value} has no generating formula")


def parameter_range(kind: FamilyKind) -> range:
    """Values of ``k`` accepted by :func:`generate_family`."""
    if kind is FamilyKind.FOURTEEN_198:
        return range(min(FOURTEEN_SEEDS), max(FOURTEEN_SEEDS) + 1)
    lowest = {
        FamilyKind.PAIR_REPUNIT_22: 2,
        FamilyKind.PAIR_REPUNIT_66: 2,
        FamilyKind.SPACED_2178: 4,
        FamilyKind.SPACED_6534: 4,
    }.get(kind)
    if lowest is None:
        return range(0)
    k = lowest
    while _formula_value(kind, k + 1) < LIMIT:
        k += 1
    return range(lowest, k + 1)


def generate_family(kind: FamilyKind, k: int) -> int:
    """Evaluate a family formula; the result lies on a cycle.

    For ``FOURTEEN_198`` the parameter is the digit width (8, 9 or 10).

    >>> generate_family(FamilyKind.PAIR_REPUNIT_66, 3)
    65934
    """
    if k not in parameter_range(kind):
        raise ValueError(f"k={k} out of range for {kind.value}")
    return _formula_value(kind, k)


@dataclass(frozen=True)
class FamilyFormula:
    kind: FamilyKind
    parameter: int | None = None

    def evaluate(self) -> int:
        return generate_family(self.kind, self.parameter)

    def __str__(self) -> str:
        k = self.parameter
        return {
            FamilyKind.PAIR_REPUNIT_22: f"22*(10^{k}-1)",
            FamilyKind.PAIR_REPUNIT_66: f"66*(10^{k}-1)",
            FamilyKind.SPACED_2178: f"2178*(10^{k}+1)",
            FamilyKind.SPACED_6534: f"6534*(10^{k}+1)",
            FamilyKind.FOURTEEN_198: f"seed {FOURTEEN_SEEDS.get(k)}",
        }.get(self.kind, "irregular")


@dataclass(frozen=True)
class CycleFamily:
    name: str
    canonical: int
    period: int
    members: tuple[int, ...]
    digit_width: int
    formula: FamilyFormula
    mixed_width: bool = False


@lru_cache(maxsize=None)
def family_from_seed(seed: int, formula: FamilyFormula | None = None, name: str | None = None) -> CycleFamily:
    members = cycle_members(seed)
    canonical = abs(members[0])
    widths = {digit_count(m) for m in members}
    if formula is None:
        formula = identify_formula(canonical, len(members))
    if name is None:
        prefix = {
            FamilyKind.PAIR_REPUNIT_22: "pair",
            FamilyKind.SPACED_2178: "spaced",
            FamilyKind.FOURTEEN_198: "fourteen",
        }.get(formula.kind, "cycle")
        name = "zero" if canonical == 0 else f"{prefix}-{canonical}"
    return CycleFamily(
        name=name,
        canonical=canonical,
        period=len(members),
        members=members,
        digit_width=max(widths),
        formula=formula,
        mixed_width=len(widths) > 1,
    )


def identify_formula(canonical: int, period: int | None = None) -> FamilyFormula:
    """Match a canonical member against the known generators."""
    if canonical == 0:
        return FamilyFormula(FamilyKind.IRREGULAR)
    for kind in (FamilyKind.PAIR_REPUNIT_22, FamilyKind.SPACED_2178):
        for k in parameter_range(kind):
            if _formula_value(kind, k) == canonical:
                return FamilyFormula(kind, k)
    for width, seed in FOURTEEN_SEEDS.items():
        if seed == canonical:
            return FamilyFormula(FamilyKind.FOURTEEN_198, width)
    return FamilyFormula(FamilyKind.IRREGULAR)


def zero_family() -> CycleFamily:
    return family_from_seed(0, FamilyFormula(FamilyKind.IRREGULAR), "zero")


def known_cycles_for_width(d: int) -> list[CycleFamily]:
    """Every terminal cycle reachable from d-digit inputs, zero first.

    A d-digit scan reaches all cycles of width <= d: the pair family
    ``22*(10^k-1)`` has width ``k+2``, the spaced family ``2178*(10^k+1)``
    width ``k+4``, and the 14-member families exist at widths 8 to 10.
    """
    if not 1 <= d <= CATALOG_MAX_WIDTH:
        raise ValueError(f"catalog covers widths 1..{CATALOG_MAX_WIDTH}, got {d}")
    out = [zero_family()]
    for k in range(2, d - 1):
        out.append(family_from_seed(_formula_value(FamilyKind.PAIR_REPUNIT_22, k),
                                    FamilyFormula(FamilyKind.PAIR_REPUNIT_22, k)))
    for k in range(4, d - 3):
        out.append(family_from_seed(_formula_value(FamilyKind.SPACED_2178, k),
                                    FamilyFormula(FamilyKind.SPACED_2178, k)))
    for width, seed in sorted(FOURTEEN_SEEDS.items()):
        if width <= d:
            out.append(family_from_seed(seed, FamilyFormula(FamilyKind.FOURTEEN_198, width)))
    return sorted(out, key=lambda f: f.canonical)


def four_digit_candidate(k: int) -> int:
    """``1012 + 11k``; cyclic 4-digit numbers all have this form, not conversely."""
    n = 1012 + 11 * k
    if k < 0 or n > 9999:
        raise ValueError(f"k={k} gives {n}, outside 4 digits")
    return n


# -- checks on printed identities ---------------------------------------------


@dataclass(frozen=True)
class Check:
    """One printed claim next to the value obtained by exact arithmetic."""

    check_name: str
    claimed: object
    computed: object
    holds: bool

    def as_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "claimed": _plain(self.claimed),
            "computed": _plain(self.computed),
            "holds": self.holds,
        }


def _plain(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def digit_sum(n: int) -> int:
    s = 0
    n = abs(n)
    while n:
        n, d = divmod(n, 10)
        s += d
    return s


def _quotient_check(name: str, num: int, den: int, claimed: int) -> Check:
    q = Fraction(num, den)
    return Check(name, claimed, q, q == claimed)


def verify_curiosities() -> list[Check]:
    out = [
        _quotient_check("2178/(2+1+7+8)", 2178, digit_sum(2178), 121),
        _quotient_check("6534/(6+5+3+4)", 6534, digit_sum(6534), 343),
        _quotient_check("6534/(6+5+3+4) = 3*121", 6534, digit_sum(6534), 3 * 121),
    ]
    for a, b in [(6534, 2178), (65934, 21978), (659934, 219978), (6599934, 2199978)]:
        out.append(_quotient_check(f"{a}/{b}", a, b, 3))
    for a, b, c in [
        (219978, 2178, 101), (659934, 6534, 101),
        (21999978, 2178, 10101), (65999934, 6534, 10101),
        (21782178, 2178, 10001), (65346534, 6534, 10001),
    ]:
        out.append(_quotient_check(f"{a}/{b}", a, b, c))
    return out


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as ``[(prime, exponent), ...]``."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == [(n, 1)]


def format_factors(factors) -> str:
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)


# value, printed prime factorization, printed (multiplier, cofactor),
# printed closed form as (base, k, +1/-1) or None
_PAIR_LINES = [
    (2178, [(2, 1), (3, 2), (11, 2)], (198, 11), (22, 2, -1)),
    (21978, [(2, 1), (3, 3), (11, 1), (27, 1)], (198, 111), (22, 3, -1)),
    (219978, [(2, 1), (3, 2), (11, 2), (101, 1)], (198, 1111), (22, 4, -1)),
    (2199978, [(2, 1), (3, 2), (11, 1), (41, 1), (271, 1)], (198, 11111), (22, 5, -1)),
    (21999978, [(2, 1), (3, 3), (7, 1), (11, 2), (13, 1), (37, 1)], (198, 111111), (22, 6, -1)),
    (219999978, [(2, 1), (3, 2), (11, 1), (239, 1), (4649, 1)], (198, 1111111), (22, 7, -1)),
    (2199999978, [(2, 1), (3, 2), (11, 2), (73, 1), (101, 1), (137, 1)], (198, 11111111), (22, 8, -1)),
    (6534, [(2, 1), (3, 3), (11, 2)], (594, 11), (66, 2, -1)),
    (65934, [(2, 1), (3, 4), (11, 1), (27, 1)], (594, 111), (66, 3, -1)),
    (659934, [(2, 1), (3, 3), (11, 2), (101, 1)], (594, 1111), (66, 4, -1)),
    (6599934, [(2, 1), (3, 3), (11, 1), (41, 1), (271, 1)], (594, 11111), (66, 5, -1)),
    (65999934, [(2, 1), (3, 4), (7, 1), (11, 2), (13, 1), (37, 1)], (594, 111111), (66, 6, -1)),
    (659999934, [(2, 1), (3, 3), (11, 1), (239, 1), (4649, 1)], (594, 1111111), (66, 7, -1)),
    (6599999934, [(2, 1), (3, 3), (11, 2), (73, 1), (101, 1), (137, 1)], (594, 11111111), (66, 8, -1)),
    (21782178, [(2, 1), (3, 2), (11, 2), (73, 1), (137, 1)], (198, 110011), (2178, 4, 1)),
    (217802178, [(2, 1), (3, 2), (11, 3), (9091, 1)], (198, 1100011), (2178, 5, 1)),
    (2178002178, [(2, 1), (3, 2), (11, 2), (101, 1), (9901, 1)], (198, 11000011), (2178, 6, 1)),
    (65346534, [(2, 1), (3, 3), (11, 2), (73, 1), (137, 1)], (594, 110011), (6534, 4, 1)),
    (653406534, [(2, 1), (3, 3), (11, 3), (9091, 1)], (594, 1100011), (6534, 5, 1)),
    (6534006534, [(2, 1), (3, 3), (11, 2), (101, 1), (9901, 1)], (594, 11000011), (6534, 6, 1)),
    (11436678, [(2, 1), (3, 2), (11, 2), (59, 1), (89, 1)], (198, 57761), None),
    (114396678, [(2, 1), (3, 3), (11, 1), (192587, 1)], (198, 577761), None),
    (1143996678, [(2, 1), (3, 2), (11, 2), (23, 1), (41, 1), (557, 1)], (198, 5777761), None),
    (10012, [(2, 2), (2503, 1)], (4, 2503), None),
    (100012, [(2, 2), (11, 1), (2273, 1)], (4, 25003), None),
    (1000012, [(2, 2), (13, 1), (19231, 1)], (4, 250003), None),
]


def verify_factorizations() -> list[Check]:
    """Multiply out each printed factorization and product form.

    A prime-factorization line holds when the product matches and every
    printed base is prime.
    """
    out = []
    for value, factors, (mult, cof), form in _PAIR_LINES:
        product = math.prod(p**e for p, e in factors)
        primes = all(is_prime(p) for p, _ in factors)
        out.append(Check(f"{value} = {format_factors(factors)}", value, product,
                         product == value and primes))
        out.append(Check(f"{value} = {mult}*{cof}", value, mult * cof, mult * cof == value))
        if form is not None:
            base, k, sign = form
            v = base * (10**k + sign)
            op = "+" if sign > 0 else "-"
            out.append(Check(f"{value} = {base}*(10^{k}{op}1)", value, v, v == value))
    return out
