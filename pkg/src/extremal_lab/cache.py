"""Append-only JSON-lines store of search records keyed by ``(n, k, s, r)``."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from filelock import FileLock

from .errors import CacheIntegrityError
from .search import SearchRecord

ENV_VAR = "EXTREMAL_LAB_CACHE"
DEFAULT_PATH = Path.home() / ".cache" / "extremal_lab" / "search.jsonl"


def default_cache_path() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_PATH)


@dataclass(frozen=True)
class CorruptLine:
    lineno: int
    reason: str


@dataclass
class ResultCache:
    """Records are re-verified when loaded; bad lines are kept in ``corrupt``.

    With ``strict=True`` a line that parses but whose witness fails to back
    its value raises :class:`CacheIntegrityError` instead.
    """

    path: Path
    strict: bool = False
    corrupt: list[CorruptLine] = field(default_factory=list)
    _records: dict[tuple[int, int, int, int], SearchRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.path = Path(self.path)
        self.reload()

    @property
    def _lock(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def reload(self) -> None:
        self._records.clear()
        self.corrupt.clear()
        if not self.path.exists():
            return
        with self._lock:
            lines = self.path.read_text().splitlines()
        for i, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                rec = SearchRecord.from_dict(json.loads(line))
            except (ValueError, KeyError, TypeError) as exc:
                self.corrupt.append(CorruptLine(i, f"unparseable: {exc}"))
                continue
            try:
                rec.verify()
            except CacheIntegrityError as exc:
                if self.strict:
                    raise CacheIntegrityError(f"{self.path}:{i}: {exc}") from None
                self.corrupt.append(CorruptLine(i, str(exc)))
                continue
            self._records.setdefault(rec.key, rec)

    def get(self, key: tuple[int, int, int, int]) -> SearchRecord | None:
        return self._records.get(tuple(key))

    def put(self, rec: SearchRecord) -> None:
        rec.verify()
        if rec.key in self._records:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
        self._records[rec.key] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, key) -> bool:
        return tuple(key) in self._records
