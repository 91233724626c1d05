"""Bundled test-fixture algebras, loaded and validated from package data."""

from __future__ import annotations

import json
from importlib import resources

from .algebra import FiniteEffectAlgebra, TableAlgebra, algebra_from_json

FIXTURE_NAMES = ("mo2", "c1", "c2", "c3", "c4")


def fixture_path(name: str):
    """Filesystem location of a bundled fixture (handy for CLI --file tests)."""
    if name not in FIXTURE_NAMES:
        raise ValueError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return resources.files(__package__).joinpath(f"fixtures/{name}.json")


def load_fixture(name: str) -> FiniteEffectAlgebra:
    """Load a bundled algebra; table fixtures are validated on load."""
    text = fixture_path(name).read_text(encoding="utf-8")
    return algebra_from_json(json.loads(text))


def mo2() -> TableAlgebra:
    """The six-element horizontal sum {0, a, a', b, b', 1}: only a (+) a' = 1,
    b (+) b' = 1 and sums with 0 are defined."""
    return load_fixture("mo2")


def chain_table(n: int) -> TableAlgebra:
    """The chain {0, ..., n} as an explicit sum table (any n, built in code)."""
    if n < 1:
        raise ValueError(f"chains need n >= 1, got {n}")
    size = n + 1
    sums = [[i + j if i + j <= n else None for j in range(size)] for i in range(size)]
    return TableAlgebra(size, 0, n, sums)
