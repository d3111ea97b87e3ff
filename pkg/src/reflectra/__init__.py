"""Reflect-and-add digit iteration: classification, cycle catalog, range scans."""
from .catalog import (
    CycleFamily,
    FamilyFormula,
    FamilyKind,
    four_digit_candidate,
    generate_family,
    known_cycles_for_width,
    verify_curiosities,
    verify_factorizations,
)
from .digits import MagnitudeOverflow, digit_count, first_step_divisor, reflect, step
from .scanner import ScanRange, ScanReport, discovered_cycles, first_cyclic_in_width, scan
from .trajectory import (
    Classification,
    Limit,
    NotOnCycle,
    StepBudgetExceeded,
    TerminalKind,
    Trajectory,
    classify,
    cycle_members,
    run_sequence,
)

__version__ = "0.1.0"
