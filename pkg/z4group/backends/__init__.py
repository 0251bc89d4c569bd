from abc import ABC, abstractmethod

from z4group.models import CheckRecord, ModuleStats


class CheckRecordQueryBuilder:
    def __init__(self, run_id: str | None = None, module: str | None = None):
        self.run_id = run_id
        self.module = module
        self.failures_only = False
        self.limit_records: int | None = None

    @classmethod
    def for_run(cls, run_id: str) -> "CheckRecordQueryBuilder":
        return cls(run_id=run_id)

    @classmethod
    def for_module(cls, module: str) -> "CheckRecordQueryBuilder":
        return cls(module=module)

    @classmethod
    def all(cls) -> "CheckRecordQueryBuilder":
        return cls()

    def only_failures(self) -> "CheckRecordQueryBuilder":
        self.failures_only = True
        return self

    def limit(self, limit: int | None) -> "CheckRecordQueryBuilder":
        self.limit_records = limit
        return self

    def matches(self, record: CheckRecord) -> bool:
        if self.run_id and record.run_id != self.run_id:
            return False
        if self.module and record.module != self.module:
            return False
        return not (self.failures_only and record.passed)


class ReportBackend(ABC):
    @abstractmethod
    def save(self, record: CheckRecord): ...

    @abstractmethod
    def fetch(self, query: CheckRecordQueryBuilder) -> list[CheckRecord]:
        """Matching records, newest first."""

    @abstractmethod
    def get_all_runs(self) -> list[str]: ...

    @abstractmethod
    def get_all_modules(self) -> list[str]: ...

    @abstractmethod
    def module_stats(self, query: CheckRecordQueryBuilder) -> list[ModuleStats]:
        """Per-module check counts, failures and durations."""

    @abstractmethod
    def is_recording_enabled(self) -> bool:
        """Check if recording is currently enabled."""

    @abstractmethod
    def enable_recording(self) -> None: ...

    @abstractmethod
    def disable_recording(self) -> None: ...

    @abstractmethod
    def clear_data(self) -> None:
        """Clear all stored check data."""
