"""Named check results returned by every predicate in the package."""

from __future__ import annotations

import dataclasses
import typing as typ

if typ.TYPE_CHECKING:
    import collections.abc as cabc

PASS: typ.Final = "pass"
FAIL: typ.Final = "fail"

VIOLATION_LIMIT = 16


@dataclasses.dataclass(frozen=True, slots=True)
class Check:
    """
    One named verdict.

    Attributes
    ----------
    check : str
        Name of the property examined.
    passed : bool
        Whether the property holds.
    verdict : str
        ``"pass"``, ``"fail"`` or a descriptive verdict such as
        ``"not applicable"``.
    witness : tuple[str, ...]
        Rendered counterexamples or supporting facts, capped at
        :data:`VIOLATION_LIMIT` entries.
    count : int
        Total number of violations found, including those not listed.
    """

    check: str
    passed: bool
    verdict: str = ""
    witness: tuple[str, ...] = ()
    count: int = 0

    def __post_init__(self) -> None:
        """Fill in the default verdict text."""
        if not self.verdict:
            object.__setattr__(self, "verdict", PASS if self.passed else FAIL)

    @classmethod
    def from_violations(cls, check: str, violations: cabc.Sequence[str]) -> Check:
        """Build a check that passes when ``violations`` is empty."""
        return cls(
            check,
            passed=not violations,
            witness=tuple(violations[:VIOLATION_LIMIT]),
            count=len(violations),
        )


@dataclasses.dataclass(frozen=True, slots=True)
class Certificate:
    """A titled bundle of checks."""

    subject: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        """Return whether every check passed."""
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> Check:
        """Return the check with the given name."""
        return next(check for check in self.checks if check.check == name)

    def failures(self) -> list[str]:
        """Return the names of failing checks."""
        return [check.check for check in self.checks if not check.passed]
