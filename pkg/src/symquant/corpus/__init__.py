"""Bundled benchmark protocols."""

from .base import (
    BaseBenchmark,
    BenchmarkParams,
    BundledBenchmark,
    MutatedBenchmark,
    drop_guard,
    list_benchmarks,
    load_benchmark,
)

__all__ = [
    "BaseBenchmark",
    "BenchmarkParams",
    "BundledBenchmark",
    "MutatedBenchmark",
    "drop_guard",
    "list_benchmarks",
    "load_benchmark",
]
