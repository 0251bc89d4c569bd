from contextlib import suppress
from dataclasses import dataclass, field
from datetime import datetime


@dataclass
class VerificationReport:
    """Named boolean checks, e.g. one entry per group relation."""

    title: str
    results: dict[str, bool] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[str]:
        return [name for name, ok in self.results.items() if not ok]

    def model_dump(self) -> dict:
        return {"title": self.title, "results": dict(self.results)}


@dataclass
class ModuleStats:
    module: str
    count: int
    failures: int = 0
    avg_duration: float = 0.0
    max_duration: float = 0.0
    failure_rate: float = 0.0  # percentage 0-100


@dataclass
class CheckRecord:
    run_id: str
    check_id: str
    module: str
    description: str
    computed: str
    expected: str
    passed: bool
    duration: float
    timestamp: datetime

    @classmethod
    def from_dict_list(cls, data: list[dict]) -> "list[CheckRecord]":
        results = []
        for item in data:
            record = CheckRecord.from_dict(item)
            if not record:
                continue

            results.append(record)

        return results

    @classmethod
    def from_dict(cls, item: dict) -> "CheckRecord | None":
        with suppress(KeyError, ValueError, TypeError):
            return cls(
                run_id=item["run_id"],
                check_id=item["check_id"],
                module=item["module"],
                description=item["description"],
                computed=item["computed"],
                expected=item["expected"],
                passed=str(item["passed"]).lower() in ("1", "true"),
                duration=float(item["duration"]),
                timestamp=datetime.fromisoformat(item["timestamp"]),
            )

    def model_dump(self) -> dict:
        """Convert to dictionary."""
        return {
            "run_id": self.run_id,
            "check_id": self.check_id,
            "module": self.module,
            "description": self.description,
            "computed": self.computed,
            "expected": self.expected,
            "passed": self.passed,
            "duration": self.duration,
            "timestamp": self.timestamp.isoformat(),
        }
