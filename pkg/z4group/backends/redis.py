import logging

from redis import Redis

from z4group.backends import CheckRecordQueryBuilder, ReportBackend
from z4group.models import CheckRecord, ModuleStats
from z4group.stats import module_stats

logger = logging.getLogger(__name__)

MAIN_STREAM = "z4g:checks"

RUN_INDEX_KEY = "z4g:runs"
MODULE_INDEX_KEY = "z4g:modules"

STATS_MODULE_PREFIX = "z4g:stats:module:"  # Hash per module

RECORDING_ENABLED_KEY = "z4g:recording_enabled"

DEFAULT_MAX_STREAM_LENGTH = 100_000


class RedisBackend(ReportBackend):
    """
    Check-record store on a Redis stream, with per-module counters kept up to
    date on every save so that unfiltered statistics need no stream scan.
    """

    def __init__(
        self,
        redis_url: str,
        max_stream_length: int = DEFAULT_MAX_STREAM_LENGTH,
    ):
        self.redis = Redis.from_url(redis_url, decode_responses=True)
        self.max_stream_length = max_stream_length

        self.update_max_script = self.redis.register_script("""
            local key = KEYS[1]
            local value = tonumber(ARGV[1])

            local current_max = redis.call('HGET', key, 'max_duration')
            if not current_max or tonumber(current_max) < value then
                redis.call('HSET', key, 'max_duration', value)
            end
        """)

    def save(self, record: CheckRecord):
        if not self.is_recording_enabled():
            return

        data = {
            "run_id": record.run_id,
            "check_id": record.check_id,
            "module": record.module,
            "description": record.description,
            "computed": record.computed,
            "expected": record.expected,
            "passed": "1" if record.passed else "0",
            "duration": str(record.duration),
            "timestamp": record.timestamp.isoformat(),
        }
        stats_key = f"{STATS_MODULE_PREFIX}{record.module}"

        with self.redis.pipeline() as pipe:
            pipe.xadd(
                MAIN_STREAM, data, maxlen=self.max_stream_length, approximate=True
            )
            pipe.sadd(RUN_INDEX_KEY, record.run_id)
            pipe.sadd(MODULE_INDEX_KEY, record.module)

            pipe.hincrby(stats_key, "count", 1)
            pipe.hincrbyfloat(stats_key, "total_duration", record.duration)
            pipe.hincrby(stats_key, "failures", 0 if record.passed else 1)
            self.update_max_script(
                keys=[stats_key], args=[record.duration], client=pipe
            )

            pipe.execute()

    def get_all_runs(self) -> list[str]:
        return sorted(self.redis.smembers(RUN_INDEX_KEY))

    def get_all_modules(self) -> list[str]:
        return sorted(self.redis.smembers(MODULE_INDEX_KEY))

    def fetch(self, query: CheckRecordQueryBuilder) -> list[CheckRecord]:
        filtered = bool(query.run_id or query.module or query.failures_only)
        count = None if filtered else query.limit_records
        entries = self.redis.xrevrange(MAIN_STREAM, "+", "-", count=count)
        records = [r for r in _parse_stream_entries(entries) if query.matches(r)]
        if query.limit_records is not None:
            records = records[: query.limit_records]
        return records

    def module_stats(self, query: CheckRecordQueryBuilder) -> list[ModuleStats]:
        if query.run_id or query.failures_only:
            return module_stats(self.fetch(query))
        return self._get_aggregated_module_stats(query.module)

    def _get_aggregated_module_stats(self, only: str | None) -> list[ModuleStats]:
        modules = [only] if only else self.get_all_modules()

        with self.redis.pipeline() as pipe:
            for module in modules:
                pipe.hgetall(f"{STATS_MODULE_PREFIX}{module}")
            results = pipe.execute()

        stats = []
        for module, stats_data in zip(modules, results):
            if not stats_data:
                continue
            count = int(stats_data.get("count", 0))
            total_duration = float(stats_data.get("total_duration", 0))
            failures = int(stats_data.get("failures", 0))
            stats.append(
                ModuleStats(
                    module=module,
                    count=count,
                    failures=failures,
                    avg_duration=total_duration / count if count else 0.0,
                    max_duration=float(stats_data.get("max_duration", 0)),
                    failure_rate=round(failures / count * 100, 1) if count else 0.0,
                )
            )
        return stats

    def is_recording_enabled(self) -> bool:
        # A missing key means enabled.
        value = self.redis.get(RECORDING_ENABLED_KEY)
        if value is None:
            return True
        return value.lower() in ("true", "1", "yes")

    def enable_recording(self) -> None:
        self.redis.set(RECORDING_ENABLED_KEY, "true")

    def disable_recording(self) -> None:
        self.redis.set(RECORDING_ENABLED_KEY, "false")

    def clear_data(self) -> None:
        keys = self.redis.keys("z4g:*")
        if not keys:
            return

        self.redis.delete(*keys)


def _parse_stream_entries(entries: list) -> list[CheckRecord]:
    return CheckRecord.from_dict_list([data for _, data in entries])
