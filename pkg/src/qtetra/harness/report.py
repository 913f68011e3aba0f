"""Structured outcomes of verification runs."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ..exactalg import STATS, RatFunc, equal

SCHEMA_VERSION = 1
PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


class Skip(Exception):
    """Raised inside a sector check to mark it SKIPPED with a reason."""


@dataclass
class ArithMode:
    """Equality mode shared by all checks of one run."""

    mode: str = "exact"
    seed: int = 0
    rng: random.Random = field(default_factory=lambda: random.Random(0))

    def set(self, mode: str, seed: int = 0) -> None:
        if mode not in ("exact", "randomized"):
            raise ValueError(f"unknown arithmetic mode {mode!r}")
        self.mode, self.seed = mode, seed
        self.rng = random.Random(seed)


ARITH = ArithMode()


def same(a, b) -> bool:
    return equal(a, b, ARITH.mode, ARITH.rng)


def same_vec(u: Dict, v: Dict) -> bool:
    for k in set(u) | set(v):
        if not same(u.get(k, RatFunc(0)), v.get(k, RatFunc(0))):
            return False
    return True


def first_difference(u: Dict, v: Dict) -> Optional[Dict[str, Any]]:
    """Counterexample payload for the first differing key of two sparse vectors."""
    for k in sorted(set(u) | set(v)):
        a, b = u.get(k, RatFunc(0)), v.get(k, RatFunc(0))
        if not same(a, b):
            return {"index": list(k) if isinstance(k, tuple) else k, "lhs": a.to_text(), "rhs": b.to_text()}
    return None


@dataclass
class SectorResult:
    sector: str
    status: str
    seconds: float = 0.0
    counterexample: Optional[Dict[str, Any]] = None
    detail: str = ""

    def to_dict(self, timings: bool) -> Dict[str, Any]:
        out: Dict[str, Any] = {"sector": self.sector, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class CheckReport:
    identity: str
    anchor: str
    params: Dict[str, Any] = field(default_factory=dict)
    results: List[SectorResult] = field(default_factory=list)
    mode: str = ""
    seed: Optional[int] = None
    randomized_calls: int = 0

    def __post_init__(self):
        if not self.mode:
            self.mode = ARITH.mode
        if self.mode == "randomized" and self.seed is None:
            self.seed = ARITH.seed
        self._rand0 = STATS.snapshot()["randomized_calls"]

    def run(self, sector: str, fn: Callable[[], Optional[Dict[str, Any]]]) -> SectorResult:
        """Run one sector check; ``fn`` returns None on success or a counterexample dict."""
        t0 = time.perf_counter()
        try:
            cx = fn()
            status = PASS if cx is None else FAIL
            res = SectorResult(sector, status, 0.0, cx)
        except Skip as exc:
            res = SectorResult(sector, SKIPPED, 0.0, None, str(exc))
        res.seconds = time.perf_counter() - t0
        self.results.append(res)
        self.randomized_calls = STATS.snapshot()["randomized_calls"] - self._rand0
        return res

    def record(self, sector: str, ok: bool, counterexample: Optional[Dict[str, Any]] = None,
               detail: str = "", status: Optional[str] = None) -> None:
        if status is None:
            status = PASS if ok else FAIL
        if status == FAIL and counterexample is None:
            raise ValueError("a FAIL entry needs a counterexample")
        self.results.append(SectorResult(sector, status, 0.0, counterexample, detail))

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(SectorResult(prefix + r.sector, r.status, r.seconds, r.counterexample, r.detail))
        self.randomized_calls += other.randomized_calls

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def passed(self) -> bool:
        return self.count(FAIL) == 0 and self.count(PASS) > 0

    @property
    def failures(self) -> List[SectorResult]:
        return [r for r in self.results if r.status == FAIL]

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        out = {
            "schema_version": SCHEMA_VERSION,
            "identity": self.identity,
            "anchor": self.anchor,
            "params": self.params,
            "arithmetic": {"mode": self.mode, "randomized_calls": self.randomized_calls},
            "summary": {s: self.count(s) for s in (PASS, FAIL, SKIPPED)},
            "status": PASS if self.passed else FAIL,
            "sectors": [r.to_dict(timings) for r in self.results],
        }
        if self.mode == "randomized":
            out["arithmetic"]["seed"] = self.seed
        if timings:
            out["seconds"] = round(sum(r.seconds for r in self.results), 6)
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2)

    def to_text(self, verbose: bool = False) -> str:
        head = (f"{'PASS' if self.passed else 'FAIL'}  {self.identity}  "
                f"[{self.count(PASS)} pass, {self.count(FAIL)} fail, {self.count(SKIPPED)} skipped]  "
                f"({self.anchor})")
        lines = [head]
        for r in self.results:
            if verbose or r.status == FAIL:
                extra = f" {r.counterexample}" if r.counterexample else ""
                lines.append(f"  {r.status:7s} {r.sector}{extra}")
        return "\n".join(lines)
