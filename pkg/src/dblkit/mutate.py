"""Single-entry mutations of composition tables, for negative testing.

A mutation replaces exactly one table entry by a different cell id of the
same kind.  Structural key sets are untouched, so the mutant constructs fine
and the damage must be caught by the checkers as a named violation.
"""

from __future__ import annotations

import random

from .kernel import DoubleCategory

TABLES = ("hcomp1", "vcomp1", "hcomp2", "vcomp2")


def mutation_slots(d: DoubleCategory):
    """All (table, key, alternative) triples that change one entry."""
    counts = {
        "hcomp1": len(d.hcells),
        "vcomp1": len(d.vcells),
        "hcomp2": len(d.squares),
        "vcomp2": len(d.squares),
    }
    slots = []
    for table in TABLES:
        entries = getattr(d, table)
        n = counts[table]
        if n < 2:
            continue
        for key in sorted(entries):
            current = entries[key]
            for alt in range(n):
                if alt != current:
                    slots.append((table, key, alt))
    return slots


def apply_mutation(d: DoubleCategory, slot) -> DoubleCategory:
    table, key, alt = slot
    tables = {name: dict(getattr(d, name)) for name in TABLES}
    tables[table][key] = alt
    return DoubleCategory(
        d.n_objects,
        d.hcells,
        d.vcells,
        d.squares,
        tables["hcomp1"],
        tables["vcomp1"],
        tables["hcomp2"],
        tables["vcomp2"],
        d.hid,
        d.vid,
        d.sq_vid,
        d.sq_hid,
        names=d.names,
    )


def sample_mutants(d: DoubleCategory, count: int, seed: int = 0):
    """Deterministic sample of single-entry mutants (without replacement)."""
    slots = mutation_slots(d)
    rng = random.Random(seed)
    picked = slots if len(slots) <= count else rng.sample(slots, count)
    return [(slot, apply_mutation(d, slot)) for slot in picked]
