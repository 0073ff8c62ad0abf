"""Shared test configuration and catalog fixtures."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from oddquad import catalog  # noqa: E402


@pytest.fixture(scope="module")
def g6_0() -> catalog.CatalogEntry:
    """Return the catalog entry ``g6:0``."""
    return catalog.build("g6:0")


@pytest.fixture(scope="module")
def abelian() -> catalog.CatalogEntry:
    """Return the two-dimensional abelian entry."""
    return catalog.build("abelian2")
