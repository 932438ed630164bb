"""Exhaustive censuses of (2,2,2) possibilistic supports.

Supports are 16-bit masks: bit ((x<<1 | y) << 2) | (a<<1 | b) holds the
entry for outcome (a, b) at context (x, y).  Grid consistency, locality,
no-signalling, the outcome-symmetry shadow, and canonical forms under the
full relabelling group (party swap included) are all computed at the mask
level so the full 2^16 sweep stays fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import catalog
from .models import PossibilityModel, collapse
from .scenario import Scenario

SCENARIO_222 = Scenario.uniform(2, 2, 2)
ALL_MASKS = 1 << 16


def mask_bit(x: int, y: int, a: int, b: int) -> int:
    return ((x << 1 | y) << 2) | (a << 1 | b)


def model_to_mask(model: PossibilityModel) -> int:
    if model.scenario != SCENARIO_222:
        raise ValueError("mask form exists only for (2,2,2) models")
    mask = 0
    for x, y in SCENARIO_222.contexts():
        row = model.table[(x, y)]
        for index, flag in enumerate(row):
            if flag:
                mask |= 1 << (((x << 1 | y) << 2) | index)
    return mask


def mask_to_model(mask: int) -> PossibilityModel:
    table = {}
    for x, y in SCENARIO_222.contexts():
        nibble = (mask >> ((x << 1 | y) << 2)) & 0xF
        table[(x, y)] = tuple(bool(nibble >> i & 1) for i in range(4))
    return PossibilityModel(SCENARIO_222, table)


def mask_is_valid(mask: int) -> bool:
    """Every context has at least one possible outcome."""
    return all((mask >> (c << 2)) & 0xF for c in range(4))


def mask_is_symmetric(mask: int) -> bool:
    """Outcome-symmetry shadow: per context, 00 possible iff 11, and
    01 possible iff 10."""
    for c in range(4):
        nibble = (mask >> (c << 2)) & 0xF
        if bool(nibble & 0b0001) != bool(nibble & 0b1000):
            return False
        if bool(nibble & 0b0010) != bool(nibble & 0b0100):
            return False
    return True


def mask_is_no_signalling(mask: int) -> bool:
    """Marginal supports independent of the remote setting, both sides."""
    for x in range(2):
        for a in range(2):
            seen = None
            for y in range(2):
                row = any(mask >> mask_bit(x, y, a, b) & 1 for b in range(2))
                if seen is None:
                    seen = row
                elif seen != row:
                    return False
    for y in range(2):
        for b in range(2):
            seen = None
            for x in range(2):
                col = any(mask >> mask_bit(x, y, a, b) & 1 for a in range(2))
                if seen is None:
                    seen = col
                elif seen != col:
                    return False
    return True


def _grid_masks() -> tuple[int, ...]:
    masks = []
    for a0, a1, b0, b1 in itertools.product(range(2), repeat=4):
        grid = (a0, a1, b0, b1)
        mask = 0
        for x in range(2):
            for y in range(2):
                mask |= 1 << mask_bit(x, y, grid[x], grid[2 + y])
        masks.append(mask)
    return tuple(masks)


GRID_MASKS = _grid_masks()


def mask_locality(mask: int) -> tuple[bool, bool]:
    """(local, strongly nonlocal) for a valid support mask.

    A grid is consistent iff all four of its entries are possible; the
    support is local iff consistent grids cover it, strongly nonlocal iff
    no grid is consistent at all.
    """
    covered = 0
    for grid_mask in GRID_MASKS:
        if mask & grid_mask == grid_mask:
            covered |= grid_mask
    return covered == mask, covered == 0


def mask_has_hardy_witness(mask: int) -> bool:
    """Whether some possible entry fails grid extension; for this scenario
    that is exactly the existence of a Hardy configuration."""
    local, _ = mask_locality(mask)
    return not local


def _relabelling_entry_maps() -> tuple[tuple[int, ...], ...]:
    """All 128 relabelling-group elements as permutations of bit positions."""
    maps = []
    for swap_sites, swap_ma, swap_mb in itertools.product(range(2), repeat=3):
        for fa0, fa1, fb0, fb1 in itertools.product(range(2), repeat=4):
            table = [0] * 16
            for x, y, a, b in itertools.product(range(2), repeat=4):
                nx, ny = x ^ swap_ma, y ^ swap_mb
                na = a ^ (fa0 if x == 0 else fa1)
                nb = b ^ (fb0 if y == 0 else fb1)
                if swap_sites:
                    nx, ny, na, nb = ny, nx, nb, na
                table[mask_bit(x, y, a, b)] = mask_bit(nx, ny, na, nb)
            maps.append(tuple(table))
    return tuple(maps)


RELABELLING_ENTRY_MAPS = _relabelling_entry_maps()


def mask_orbit(mask: int):
    for table in RELABELLING_ENTRY_MAPS:
        image = 0
        bits = mask
        while bits:
            low = bits & -bits
            image |= 1 << table[low.bit_length() - 1]
            bits ^= low
        yield image


def canonical_mask(mask: int) -> int:
    """Smallest mask in the relabelling orbit (party swap enabled)."""
    return min(mask_orbit(mask))


@dataclass
class Census222Report:
    """Sweep of all 2^16 tables, filtered to valid no-signalling supports."""

    scanned: int = 0
    valid: int = 0
    no_signalling: int = 0
    local: int = 0
    logical: int = 0
    strong: int = 0
    strong_classes: tuple[int, ...] = ()
    pr_canonical: int = 0
    ok: bool = False


def census_222() -> Census222Report:
    """Classify every valid no-signalling (2,2,2) support and collect the
    isomorphism classes of the strongly nonlocal ones."""
    report = Census222Report(scanned=ALL_MASKS)
    strong_masks = []
    for mask in range(ALL_MASKS):
        if not mask_is_valid(mask):
            continue
        report.valid += 1
        if not mask_is_no_signalling(mask):
            continue
        report.no_signalling += 1
        local, strong = mask_locality(mask)
        if strong:
            report.strong += 1
            strong_masks.append(mask)
        elif local:
            report.local += 1
        else:
            report.logical += 1
    pr_support_mask = model_to_mask(collapse(catalog.pr_box()))
    report.pr_canonical = canonical_mask(pr_support_mask)
    report.strong_classes = tuple(sorted({canonical_mask(m) for m in strong_masks}))
    report.ok = report.strong_classes == (report.pr_canonical,)
    return report


@dataclass
class SymmetricCensusReport:
    """Sweep of all valid supports satisfying the outcome-symmetry shadow."""

    scanned: int = 0
    symmetric: int = 0
    local: int = 0
    logical: int = 0
    strong: int = 0
    logical_classes: tuple[int, ...] = ()
    strong_classes: tuple[int, ...] = ()
    iv_d_canonical: int = 0
    pr_canonical: int = 0
    ok: bool = False
    logical_masks: list = field(default_factory=list)


def census_symmetric() -> SymmetricCensusReport:
    """Classify every valid symmetric support; the logically nonlocal
    non-strong ones must form a single isomorphism class (the symmetric
    three-correlated-contexts support), the strong ones the box class."""
    report = SymmetricCensusReport(scanned=ALL_MASKS)
    logical_masks = []
    strong_masks = []
    for mask in range(ALL_MASKS):
        if not mask_is_valid(mask) or not mask_is_symmetric(mask):
            continue
        report.symmetric += 1
        local, strong = mask_locality(mask)
        if strong:
            report.strong += 1
            strong_masks.append(mask)
        elif local:
            report.local += 1
        else:
            report.logical += 1
            logical_masks.append(mask)
    report.iv_d_canonical = canonical_mask(model_to_mask(catalog.table_iv_d()))
    report.pr_canonical = canonical_mask(model_to_mask(collapse(catalog.pr_box())))
    report.logical_classes = tuple(sorted({canonical_mask(m) for m in logical_masks}))
    report.strong_classes = tuple(sorted({canonical_mask(m) for m in strong_masks}))
    report.logical_masks = logical_masks
    report.ok = report.logical_classes == (report.iv_d_canonical,) and report.strong_classes == (
        report.pr_canonical,
    )
    return report
