"""Run the command-line interface with ``python -m oddquad``."""

from __future__ import annotations

from oddquad.cli import main

raise SystemExit(main())
