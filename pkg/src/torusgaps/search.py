"""Randomized and exhaustive search for instances with many distinct gaps.

Instances are drawn from rational rotation vectors with bounded
denominators.  Runs are deterministic given the config (seed included):
the instance stream, the emitted records, and their digests never depend
on timing or platform.  Results persist as append-only JSONL plus a run
manifest.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Iterator, Optional

from . import __version__
from .gaps import (
    GapSpectrum,
    KroneckerInstance,
    Lattice,
    Metric,
    check_gap_bound,
    gap_spectrum,
    instance_from_json,
    instance_to_json,
)
from .ratlin import Vec, rational


class Mode(Enum):
    RANDOM = "random"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class SearchConfig:
    """One search job; equal configs produce identical record streams."""

    d: int
    N_range: tuple[int, int]
    mode: Mode = Mode.RANDOM
    denominator_cap: int = 10000
    metric: Metric = Metric.MAX
    sample_count: int = 1000
    seed: int = 0
    target_g: Optional[int] = None
    lattice: Optional[Lattice] = None  # None means Z^d
    alphas: Optional[tuple[Vec, ...]] = None  # pinned rotation vectors
    max_evaluations: Optional[int] = None

    def validate(self) -> None:
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.denominator_cap < 2:
            raise ValueError("denominator_cap must be >= 2")
        lo, hi = self.N_range
        if lo < 1 or hi < lo:
            raise ValueError("N_range must be a nonempty range of positive integers")
        if self.mode is Mode.RANDOM and self.alphas is None and self.sample_count < 1:
            raise ValueError("random mode needs sample_count >= 1")
        if self.lattice is not None and self.lattice.dim != self.d:
            raise ValueError("lattice dimension does not match d")
        if self.alphas is not None:
            if not self.alphas:
                raise ValueError("pinned alpha list is empty")
            if any(len(a) != self.d for a in self.alphas):
                raise ValueError("pinned alpha of wrong dimension")


def _grid_alphas(d: int, cap: int) -> Iterator[Vec]:
    """All rational vectors with common denominator q <= cap, each exactly
    once (skipped when every component and q share a factor)."""
    for q in range(1, cap + 1):
        for ps in product(range(q), repeat=d):
            if math.gcd(*ps, q) != 1:
                continue
            yield tuple(Fraction(p, q) for p in ps)


def iter_instances(cfg: SearchConfig) -> Iterator[KroneckerInstance]:
    """Deterministic instance stream for the config."""
    lat = cfg.lattice if cfg.lattice is not None else Lattice.identity(cfg.d)
    lo, hi = cfg.N_range
    if cfg.alphas is not None:
        for alpha in cfg.alphas:
            for n in range(lo, hi + 1):
                yield KroneckerInstance(alpha, lat, n)
    elif cfg.mode is Mode.EXHAUSTIVE:
        for alpha in _grid_alphas(cfg.d, cfg.denominator_cap):
            for n in range(lo, hi + 1):
                yield KroneckerInstance(alpha, lat, n)
    else:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.sample_count):
            alpha = []
            for _ in range(cfg.d):
                q = rng.randint(1, cfg.denominator_cap)
                alpha.append(Fraction(rng.randint(-q, q), q))
            n = rng.randint(lo, hi)
            yield KroneckerInstance(tuple(alpha), lat, n)


def spectrum_digest(sp: GapSpectrum) -> str:
    """sha256 of the sorted distinct values in canonical form."""
    text = ",".join(str(v) for v in sp.distinct)
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class SearchRecord:
    instance: KroneckerInstance
    metric: Metric
    g: int
    distinct_digest: str
    seed: int
    timestamp: str


def make_record(inst: KroneckerInstance, sp: GapSpectrum, seed: int) -> SearchRecord:
    ts = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return SearchRecord(inst, sp.metric, sp.g, spectrum_digest(sp), seed, ts)


def record_to_json(r: SearchRecord) -> dict:
    out = instance_to_json(r.instance, r.metric)
    out.update(g=r.g, distinct_digest=r.distinct_digest, seed=r.seed, timestamp=r.timestamp)
    return out


def record_from_json(obj: dict) -> SearchRecord:
    inst, metric = instance_from_json(obj)
    return SearchRecord(
        inst, metric, int(obj["g"]), obj["distinct_digest"], int(obj["seed"]),
        obj["timestamp"],
    )


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    g: int
    digest: str
    message: str


def replay(record: SearchRecord) -> ReplayResult:
    """Recompute the spectrum and confirm g and digest; audits persisted rows."""
    sp = gap_spectrum(record.instance, record.metric)
    digest = spectrum_digest(sp)
    if sp.g == record.g and digest == record.distinct_digest:
        return ReplayResult(True, sp.g, digest, "match")
    return ReplayResult(
        False, sp.g, digest,
        f"mismatch: recorded g={record.g} digest={record.distinct_digest}, "
        f"recomputed g={sp.g} digest={digest}",
    )


@dataclass
class SearchResult:
    best: list[SearchRecord] = field(default_factory=list)
    violations: list[SearchRecord] = field(default_factory=list)
    evaluated: int = 0
    max_g: int = 0
    complete: bool = True


def search(
    cfg: SearchConfig,
    on_record: Optional[Callable[[SearchRecord], None]] = None,
) -> SearchResult:
    """Evaluate the instance stream, keeping every record that raises the
    running maximum of g.

    A bound violation (g above the proven cap for the metric) is recorded
    as a finding and aborts the run so the reproducer is the last record.
    """
    cfg.validate()
    result = SearchResult()
    for inst in iter_instances(cfg):
        if cfg.max_evaluations is not None and result.evaluated >= cfg.max_evaluations:
            result.complete = False
            break
        sp = gap_spectrum(inst, cfg.metric)
        result.evaluated += 1
        record: Optional[SearchRecord] = None
        if sp.g > result.max_g:
            result.max_g = sp.g
            record = make_record(inst, sp, cfg.seed)
            result.best.append(record)
            if on_record is not None:
                on_record(record)
        if check_gap_bound(sp).ok is False:
            if record is None:
                record = make_record(inst, sp, cfg.seed)
                if on_record is not None:
                    on_record(record)
            result.violations.append(record)
            result.complete = False
            break
        if cfg.target_g is not None and sp.g >= cfg.target_g:
            break
    return result


# ---------------------------------------------------------------------------
# Persistence


def append_record_jsonl(path: Path, record: SearchRecord) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record_to_json(record), sort_keys=True) + "\n")


def read_records_jsonl(path: Path) -> list[SearchRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(record_from_json(json.loads(line)))
    return records


def config_to_json(cfg: SearchConfig) -> dict:
    return {
        "d": cfg.d,
        "N_range": list(cfg.N_range),
        "mode": cfg.mode.value,
        "denominator_cap": cfg.denominator_cap,
        "metric": cfg.metric.value,
        "sample_count": cfg.sample_count,
        "seed": cfg.seed,
        "target_g": cfg.target_g,
        "lattice": None if cfg.lattice is None
        else [[str(e) for e in row] for row in cfg.lattice.basis],
        "alphas": None if cfg.alphas is None
        else [[str(c) for c in a] for a in cfg.alphas],
        "max_evaluations": cfg.max_evaluations,
    }


def config_from_json(obj: dict) -> SearchConfig:
    return SearchConfig(
        d=int(obj["d"]),
        N_range=(int(obj["N_range"][0]), int(obj["N_range"][1])),
        mode=Mode(obj["mode"]),
        denominator_cap=int(obj["denominator_cap"]),
        metric=Metric(obj["metric"]),
        sample_count=int(obj["sample_count"]),
        seed=int(obj["seed"]),
        target_g=None if obj["target_g"] is None else int(obj["target_g"]),
        lattice=None if obj["lattice"] is None else Lattice(obj["lattice"]),
        alphas=None if obj["alphas"] is None
        else tuple(tuple(rational(c) for c in a) for a in obj["alphas"]),
        max_evaluations=None if obj.get("max_evaluations") is None
        else int(obj["max_evaluations"]),
    )


def write_manifest(
    path: Path, cfg: SearchConfig, started: str, finished: str, result: SearchResult
) -> None:
    manifest = {
        "config": config_to_json(cfg),
        "code_version": __version__,
        "started": started,
        "finished": finished,
        "evaluated": result.evaluated,
        "max_g": result.max_g,
        "complete": result.complete,
        "violations": len(result.violations),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
