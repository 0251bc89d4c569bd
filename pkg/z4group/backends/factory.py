from importlib import import_module

from z4group.backends import ReportBackend

DEFAULT_BACKEND = {
    "backend": "z4group.backends.dummy.DummyBackend",
    "kwargs": {},
}


def import_string(dotted_path: str) -> type:
    module_path, _, class_name = dotted_path.rpartition(".")
    if not module_path:
        raise ImportError(f"{dotted_path!r} is not a dotted module path")
    module = import_module(module_path)
    try:
        return getattr(module, class_name)
    except AttributeError:
        raise ImportError(
            f"module {module_path!r} has no attribute {class_name!r}"
        ) from None


def get_report_backend(config: dict | None = None) -> ReportBackend:
    backend_conf = config or DEFAULT_BACKEND
    backend_class = import_string(backend_conf["backend"])
    return backend_class(**backend_conf.get("kwargs", {}))


def redis_backend_config(url: str) -> dict:
    return {
        "backend": "z4group.backends.redis.RedisBackend",
        "kwargs": {"redis_url": url},
    }
