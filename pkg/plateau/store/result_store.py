"""
In-memory cache of computed reports.

Reports are keyed by ``(kind, fingerprint)`` where ``fingerprint`` is the
sha256 of the spec's canonical JSON. An ``asyncio.Lock`` guards concurrent
access from request handlers.
"""

import asyncio
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel


@dataclass
class CachedSpec:
    """All reports computed so far for one function spec."""

    fingerprint: str
    function: str
    reports: dict[str, BaseModel] = field(default_factory=dict)
    hits: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "fingerprint": self.fingerprint,
            "function": self.function,
            "kinds": sorted(self.reports),
            "hits": self.hits,
        }


class ResultStore:
    """Thread-safe in-memory report cache."""

    def __init__(self) -> None:
        self._entries: dict[str, CachedSpec] = {}
        self._lock = asyncio.Lock()

    async def get(self, kind: str, fingerprint: str) -> BaseModel | None:
        """Return a cached report and count the hit, or None."""
        async with self._lock:
            entry = self._entries.get(fingerprint)
            if entry is None or kind not in entry.reports:
                return None
            entry.hits += 1
            return entry.reports[kind]

    async def put(self, kind: str, fingerprint: str, function: str, report: BaseModel) -> None:
        async with self._lock:
            entry = self._entries.setdefault(
                fingerprint, CachedSpec(fingerprint=fingerprint, function=function)
            )
            entry.reports[kind] = report

    async def list_entries(self) -> list[dict[str, Any]]:
        async with self._lock:
            return [entry.to_dict() for entry in self._entries.values()]

    async def clear(self) -> None:
        async with self._lock:
            self._entries.clear()

    async def get_stats(self) -> dict[str, Any]:
        async with self._lock:
            return {
                "cached_specs": len(self._entries),
                "cached_reports": sum(len(e.reports) for e in self._entries.values()),
            }


# ── Module-level singleton ────────────────────────────────────────────
result_store = ResultStore()
