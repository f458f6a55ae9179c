"""Structured pass/fail verdicts shared by every checker in the package.

A report records which condition instances were examined (its *scope*,
derived from the truncation of the input alone) and every failure found,
each with a minimal witness.  Verdicts:

* ``pass``    — at least one instance was in range and none failed;
* ``fail``    — some instance failed (witnesses listed);
* ``partial`` — nothing failed, but no instance was in range, so the
  verdict carries no information beyond the truncation.

Failure kinds distinguish the two halves of a bijection check
(``not-injective`` / ``not-surjective``) from ``structural`` problems
(violated identities, missing table entries, precondition failures).
"""

from __future__ import annotations

from dataclasses import dataclass, field

FAILURE_KINDS = ("not-injective", "not-surjective", "structural")


@dataclass(frozen=True)
class Instance:
    """One failed condition instance.

    ``condition`` names the condition family, ``index`` pins the
    instance inside the family (levels, bidegrees, ...), ``role`` says
    which map or clause of the instance failed, ``kind`` is one of
    ``FAILURE_KINDS``, and ``witness`` holds the offending elements.
    """

    condition: str
    index: tuple
    role: str
    kind: str
    witness: tuple

    def __post_init__(self) -> None:
        if self.kind not in FAILURE_KINDS:
            raise ValueError(f"unknown failure kind {self.kind!r}")
        object.__setattr__(self, "index", tuple(self.index))
        object.__setattr__(self, "witness", tuple(self.witness))

    def describe(self) -> str:
        witness = ", ".join(str(w) for w in self.witness)
        return (
            f"{self.condition} at {self.index} [{self.role}]: "
            f"{self.kind} (witness: {witness})"
        )


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one checker run.

    ``instances`` lists failures only; ``verdict`` is ``fail`` exactly
    when it is nonempty.  ``subreports`` groups named condition families
    (used by the stacked checkers) — their instances are also merged
    into the parent's list.
    """

    verdict: str
    scope: str
    instances: tuple[Instance, ...] = ()
    subreports: dict[str, "CheckReport"] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in ("pass", "fail", "partial"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        object.__setattr__(self, "instances", tuple(self.instances))
        if (self.verdict == "fail") != bool(self.instances):
            raise ValueError("verdict is 'fail' exactly when failures are listed")

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def describe(self) -> str:
        lines = [f"{self.verdict} ({self.scope})"]
        for name, sub in self.subreports.items():
            lines.append(f"  [{name}] {sub.verdict} ({sub.scope})")
        for inst in self.instances:
            lines.append("  " + inst.describe())
        return "\n".join(lines)


def report_from_failures(
    failures: list[Instance] | tuple[Instance, ...],
    scope: str,
    checked_count: int,
) -> CheckReport:
    """Build a report; ``partial`` when nothing was checked and nothing failed."""
    failures = tuple(failures)
    if failures:
        verdict = "fail"
    elif checked_count > 0:
        verdict = "pass"
    else:
        verdict = "partial"
    return CheckReport(verdict=verdict, scope=scope, instances=failures)


def merge_subreports(named: dict[str, CheckReport], scope: str) -> CheckReport:
    """Combine named sub-reports into one verdict.

    ``fail`` dominates; otherwise ``pass`` when at least one sub-report
    actually checked something; ``partial`` when all were out of range.
    """
    instances: list[Instance] = []
    for sub in named.values():
        instances.extend(sub.instances)
    if instances:
        verdict = "fail"
    elif any(sub.verdict == "pass" for sub in named.values()):
        verdict = "pass"
    else:
        verdict = "partial"
    return CheckReport(
        verdict=verdict, scope=scope, instances=tuple(instances), subreports=dict(named)
    )
