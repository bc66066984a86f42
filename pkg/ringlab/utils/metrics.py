"""
Metrics for monitoring long exhaustive runs
"""

import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)

REGISTRY = CollectorRegistry()

STAGE_DURATION = Histogram(
    "ringlab_stage_duration_seconds",
    "Duration of a classification stage in seconds",
    ["stage"],
    registry=REGISTRY,
    buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0),
)

CLAIM_VERDICTS = Counter(
    "ringlab_claim_verdicts_total",
    "Claim verdicts by claim id and verdict",
    ["claim", "verdict"],
    registry=REGISTRY,
)

BUDGET_SKIPS = Counter(
    "ringlab_budget_skips_total",
    "Instances skipped because a budget was exhausted",
    ["what"],
    registry=REGISTRY,
)

SEARCH_FINDINGS = Counter(
    "ringlab_search_findings_total",
    "Rings satisfying a search predicate",
    registry=REGISTRY,
)


@contextmanager
def record_stage(stage: str, **context: object) -> Iterator[None]:
    """Time a stage into the histogram and log its duration"""
    start_time = time.perf_counter()
    try:
        yield
    finally:
        duration = time.perf_counter() - start_time
        STAGE_DURATION.labels(stage=stage).observe(duration)
        logger.debug("stage finished", stage=stage, millis=round(duration * 1000, 3), **context)


def record_verdict(claim: str, verdict: str) -> None:
    CLAIM_VERDICTS.labels(claim=claim, verdict=verdict).inc()


def record_budget_skip(what: str) -> None:
    BUDGET_SKIPS.labels(what=what).inc()


def export_metrics(path: Optional[str]) -> None:
    """Write the text exposition of all metrics to ``path``"""
    if not path:
        return
    Path(path).write_bytes(generate_latest(REGISTRY))
    logger.info("metrics written", path=path)
