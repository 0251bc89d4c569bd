import math
from collections import defaultdict

from z4group.models import CheckRecord, ModuleStats


def _percentile(sorted_durations: list[float], p: float) -> float:
    """Nearest-rank percentile on a pre-sorted list."""
    if not sorted_durations:
        return 0.0
    idx = max(0, math.ceil(p / 100 * len(sorted_durations)) - 1)
    return sorted_durations[idx]


def module_stats(records: list[CheckRecord]) -> list[ModuleStats]:
    # module: [total_duration, count, failures, max_duration]
    stats: defaultdict[str, list] = defaultdict(lambda: [0.0, 0, 0, 0.0])

    for record in records:
        entry = stats[record.module]
        entry[0] += record.duration
        entry[1] += 1
        if not record.passed:
            entry[2] += 1
        entry[3] = max(entry[3], record.duration)

    return sorted(
        [
            ModuleStats(
                module=module,
                count=int(count),
                failures=int(failures),
                avg_duration=total / count if count else 0.0,
                max_duration=max_dur,
                failure_rate=round(failures / count * 100, 1) if count else 0.0,
            )
            for module, (total, count, failures, max_dur) in stats.items()
        ],
        key=lambda s: s.module,
    )


def run_summary(records: list[CheckRecord]) -> dict[str, dict]:
    """Per run: check count, failures, total and p95 duration, start time."""
    runs: defaultdict[str, list[CheckRecord]] = defaultdict(list)
    for record in records:
        runs[record.run_id].append(record)

    summary = {}
    for run_id, items in runs.items():
        durations = sorted(r.duration for r in items)
        summary[run_id] = {
            "checks": len(items),
            "failures": sum(1 for r in items if not r.passed),
            "total_duration": sum(durations),
            "p95_duration": _percentile(durations, 95),
            "started": min(r.timestamp for r in items).isoformat(),
        }
    return dict(sorted(summary.items(), key=lambda kv: kv[1]["started"]))


def weighted_avg(stats: list[ModuleStats]) -> tuple[int, float]:
    total_count = sum(s.count for s in stats)
    total_avg = (
        sum(s.avg_duration * s.count for s in stats) / total_count
        if total_count
        else 0.0
    )
    return total_count, total_avg
