from z4group.backends import CheckRecordQueryBuilder, ReportBackend
from z4group.models import CheckRecord, ModuleStats


class DummyBackend(ReportBackend):
    """Discards everything; the default when no store is configured."""

    def save(self, record: CheckRecord):
        pass

    def fetch(self, query: CheckRecordQueryBuilder) -> list[CheckRecord]:
        return []

    def get_all_runs(self) -> list[str]:
        return []

    def get_all_modules(self) -> list[str]:
        return []

    def module_stats(self, query: CheckRecordQueryBuilder) -> list[ModuleStats]:
        return []

    def is_recording_enabled(self) -> bool:
        return False

    def enable_recording(self) -> None:
        pass

    def disable_recording(self) -> None:
        pass

    def clear_data(self) -> None:
        pass
