"""Verification suites run by ``reflectra verify``.

Each suite returns a list of :class:`~reflectra.catalog.Check`. Failed checks
are part of the result, never raised: several printed values are known to be
wrong and the report is where that shows up.
"""
from __future__ import annotations

import numpy as np

from . import kernel
from .catalog import (
    Check,
    FamilyKind,
    FOURTEEN_SEEDS,
    four_digit_candidate,
    generate_family,
    parameter_range,
    verify_curiosities,
    verify_factorizations,
)
from .digits import is_palindrome
from .scanner import ScanRange, first_cyclic_in_width, scan
from .trajectory import Limit, NotOnCycle, classify, cycle_members

# Published class counts per digit width, keyed by canonical (0 = zero limit).
TABLE1_COUNTS = {
    4: {0: 8363, 2178: 637},
    5: {0: 45600, 2178: 38030, 21978: 6370},
    6: {0: 460458, 2178: 241749, 21978: 178686, 219978: 19107},
}
# Printed next to the counts; they are fractions of the width's total.
TABLE1_FRACTIONS = {
    4: {0: 0.929, 2178: 0.071},
    5: {0: 0.507, 2178: 0.423, 21978: 0.070},
    6: {0: 0.512, 2178: 0.269, 21978: 0.198, 219978: 0.021},
}
FRACTION_TOLERANCE = 1e-3

# Number of cyclic 4-digit inputs as stated in two places of the prose.
PROSE_FOUR_DIGIT_CYCLIC = {"classification prose": 537, "observation on 1012+11k": 637}

# Stated iteration ranges: width -> {class or "all": (lowest, highest)}.
ITERATION_RANGES = {
    2: {"all": (1, 6)},
    3: {"all": (1, 6)},
    4: {2178: (1, 4), 0: (1, 13)},
    5: {"all": (1, 13)},
    6: {"all": (1, 49)},
    7: {"all": (1, 49)},
    8: {"all": (1, 71)},
}

# Stated number of distinct limits (zero included) per width.
LIMIT_COUNTS = {4: 2, 5: 3, 6: 4, 7: 5, 8: 8}

# Member magnitudes of the 14-member cycles as printed, by width.
PRINTED_FOURTEEN = {
    8: [11436678, 13973058, 19582398, 23981958, 30581397, 32662377, 33218856,
        42464466, 44664246, 48737106, 61936974, 69746193, 71064873, 76226733],
    9: [114396678, 139703058, 195802398, 239801958, 305801397, 326692377, 332198856,
        424604466, 446604246, 487307106, 619306974, 697406193, 710604873, 762296733],
    10: [1143996678, 1397903058, 1958092398, 2398091958, 3058901397, 3266992377,
         3321998856, 4246004466, 4466004246, 4873007106, 6193006974, 6974006193,
         7106004873, 7622996733],
}
# The 9-digit seed as spelled in the 10-digit inventory.
ALTERNATE_NINE_DIGIT_SEED = 114369678

FIRST_CYCLIC = {5: 10012, 6: 100012, 7: 1000012}


def verify_table1(through: int = 6, workers: int = 1) -> list[Check]:
    out = []
    for d in range(2, through + 1):
        report = scan(ScanRange.for_digits(d), workers)
        if d in TABLE1_COUNTS:
            for c, claimed in TABLE1_COUNTS[d].items():
                got = report.class_counts.get(c, 0)
                name = "zero" if c == 0 else f"cycle-{c}"
                out.append(Check(f"{d}-digit count {name}", claimed, got, got == claimed))
            frac = report.fractions()
            for c, claimed in TABLE1_FRACTIONS[d].items():
                got = round(frac.get(c, 0.0), 6)
                name = "zero" if c == 0 else f"cycle-{c}"
                out.append(Check(f"{d}-digit fraction {name} (+-{FRACTION_TOLERANCE})", claimed, got,
                                 abs(got - claimed) <= FRACTION_TOLERANCE))
            if set(report.class_counts) != set(TABLE1_COUNTS[d]):
                out.append(Check(f"{d}-digit classes", sorted(TABLE1_COUNTS[d]),
                                 sorted(report.class_counts), False))
        if d == 4:
            got = report.class_counts.get(2178, 0)
            for where, claimed in PROSE_FOUR_DIGIT_CYCLIC.items():
                out.append(Check(f"4-digit cyclic count ({where})", claimed, got, got == claimed))
        if d in LIMIT_COUNTS:
            got = len(report.class_counts)
            out.append(Check(f"{d}-digit distinct limits", LIMIT_COUNTS[d], got, got == LIMIT_COUNTS[d]))
        for cls, (lo, hi) in ITERATION_RANGES.get(d, {}).items():
            keys = [it for (c, it) in report.histogram if cls == "all" or c == cls]
            got = (min(keys), max(keys)) if keys else None
            name = "all" if cls == "all" else ("zero" if cls == 0 else f"cycle-{cls}")
            out.append(Check(f"{d}-digit iterations {name}", f"{lo}..{hi}",
                             f"{got[0]}..{got[1]}" if got else None, got == (lo, hi)))
    return out


def _lemma_failures(values: np.ndarray) -> int:
    out = np.empty_like(values)
    kernel.step_array(values, out)
    mags = np.abs(values)
    widths = np.ones(values.shape, dtype=np.int64)
    for e in range(1, 18):
        widths += mags >= 10**e
    div = np.where(widths % 2 == 1, 99, 9)
    return int(np.count_nonzero(out % div))


def random_width_samples(n: int, lo_width: int, hi_width: int, seed: int = 0) -> np.ndarray:
    """``n`` nonzero signed integers, width uniform on ``lo_width..hi_width``."""
    rng = np.random.default_rng(seed)
    widths = rng.integers(lo_width, hi_width + 1, size=n)
    lows = 10 ** (widths - 1)
    vals = rng.integers(lows, 10 * lows)
    signs = np.where(rng.random(n) < 0.5, -1, 1)
    return vals * signs


def verify_lemma(samples: int = 10**6, seed: int = 0) -> list[Check]:
    out = []
    for d in range(2, 7):
        vals = np.arange(10 ** (d - 1), 10**d, dtype=np.int64)
        vals = np.concatenate([vals, -vals])
        fails = _lemma_failures(vals)
        div = 99 if d % 2 else 9
        out.append(Check(f"{d}-digit first step divisible by {div} (exhaustive, both signs)", 0, fails, fails == 0))
    if samples:
        vals = random_width_samples(samples, 7, 18, seed)
        fails = _lemma_failures(vals)
        out.append(Check(f"7..18-digit first step divisible by 9/99 ({samples} samples, seed {seed})",
                         0, fails, fails == 0))
    return out


def _members_set(seed):
    try:
        return cycle_members(seed)
    except NotOnCycle:
        return None


def verify_formulas() -> list[Check]:
    out = []
    for kind, partner in [(FamilyKind.PAIR_REPUNIT_22, 66), (FamilyKind.PAIR_REPUNIT_66, 22)]:
        for k in parameter_range(kind):
            v = generate_family(kind, k)
            members = _members_set(v)
            other = partner * (10**k - 1)
            expected = {v, -v, other, -other}
            got = None if members is None else sorted(members)
            out.append(Check(f"{kind.value} k={k}: period-4 cycle {{+-{v}, +-{other}}}",
                             sorted(expected), got, members is not None and set(members) == expected
                             and len(members) == 4))
    for kind in (FamilyKind.SPACED_2178, FamilyKind.SPACED_6534):
        for k in parameter_range(kind):
            v = generate_family(kind, k)
            members = _members_set(v)
            out.append(Check(f"{kind.value} k={k}: {v} on a cycle", "on a cycle",
                             "not on a cycle" if members is None else f"period {len(members)}",
                             members is not None))
    for k in parameter_range(FamilyKind.PAIR_REPUNIT_22):
        a, b = 66 * (10**k - 1), 22 * (10**k - 1)
        out.append(Check(f"66*(10^{k}-1) / 22*(10^{k}-1)", 3, a // b if a % b == 0 else a / b, a == 3 * b))

    for d, claimed in FIRST_CYCLIC.items():
        got = first_cyclic_in_width(d)
        out.append(Check(f"first cyclic {d}-digit number", claimed, got, got == claimed))

    cyclic4 = [n for n in range(1000, 10000) if classify(n).limit.kind is Limit.CYCLE]
    form = all((n - 1012) % 11 == 0 for n in cyclic4)
    out.append(Check("every cyclic 4-digit n is 1012 + 11k", True, form, form))
    out.append(Check("cyclic 4-digit n = 1012 + 11k need k >= 1", "> 1012", min(cyclic4), min(cyclic4) > 1012))
    n = four_digit_candidate(206)
    kind = classify(n).limit.kind.value
    out.append(Check(f"{n} = 1012 + 206*11 has zero limit", "zero", kind, kind == "zero"))
    pal = [four_digit_candidate(k) for k in range(0, (9999 - 1012) // 11 + 1)]
    pal = [n for n in pal if is_palindrome(n)]
    bad = [n for n in pal if classify(n).limit.kind is not Limit.ZERO]
    out.append(Check("palindromes of the form 1012 + 11k have zero limit", 0, len(bad), not bad))

    for width, printed in PRINTED_FOURTEEN.items():
        seed = FOURTEEN_SEEDS[width]
        members = cycle_members(seed)
        mags = sorted(abs(m) for m in members)
        out.append(Check(f"{width}-digit 14-member cycle period", 14, len(members), len(members) == 14))
        diff = sorted(set(printed) ^ set(mags))
        out.append(Check(f"{width}-digit 14-member list as printed", printed, mags, not diff))
        n198 = sum(1 for m in members if m % 198 == 0)
        out.append(Check(f"{width}-digit 14-member cycle: members divisible by 198", len(members),
                         n198, n198 == len(members)))
    alt = _members_set(ALTERNATE_NINE_DIGIT_SEED)
    on14 = alt is not None and len(alt) == 14
    out.append(Check(f"{ALTERNATE_NINE_DIGIT_SEED} lies on a 14-member cycle", True, on14, on14))
    return out


SUITES = {
    "table1": verify_table1,
    "lemma": verify_lemma,
    "curiosities": verify_curiosities,
    "factorizations": verify_factorizations,
    "formulas": verify_formulas,
}
