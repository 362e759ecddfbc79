"""Timestamped edge-event streams for evolving directed graphs.

An event file is UTF-8 text with one event per line::

    src<TAB>dst<TAB>sign<TAB>time

where ``sign`` is ``+1`` (edge appears) or ``-1`` (edge disappears) and
``time`` is a non-negative integer tick.  Lines starting with ``#`` and
blank lines are ignored.  This is the usual temporal edge-list layout of
public network datasets, so dumps in that format load directly.

Node identifiers are arbitrary tokens; they are compacted to integer
indices ``0..n-1`` in first-seen order, and the token -> index mapping can
be persisted as a two-column ``node<TAB>index`` file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence, TextIO, Union

import numpy as np

__all__ = [
    "EdgeEvent",
    "EventFormatError",
    "IngestStats",
    "TemporalEdgeList",
    "read_events",
    "read_id_map",
]


class EventFormatError(ValueError):
    """Raised for malformed event lines or invalid event streams."""


class EdgeEvent(NamedTuple):
    """One timestamped edge operation: ``sign`` +1 adds, -1 deletes."""

    src: int
    dst: int
    sign: int
    time: int

    @property
    def is_add(self) -> bool:
        return self.sign > 0


@dataclass
class IngestStats:
    """Diagnostics collected while validating an event stream."""

    self_loops_skipped: int = 0
    noop_deletes: int = 0
    duplicate_adds: int = 0

    def as_dict(self) -> dict:
        return {
            "self_loops_skipped": self.self_loops_skipped,
            "noop_deletes": self.noop_deletes,
            "duplicate_adds": self.duplicate_adds,
        }


_SIGNS = {"+1": 1, "1": 1, "-1": -1}

PathOrFile = Union[str, Path, TextIO]


def _replay_scan(src: np.ndarray, dst: np.ndarray, sign: np.ndarray,
                 strict_deletes: bool) -> IngestStats:
    """Replay the stream once, counting no-op operations.

    A delete for an edge that is not currently present is ignored (counted),
    or rejected when ``strict_deletes`` is set.  An add for an edge that is
    already present is counted as a duplicate; replay semantics make it a
    no-op either way.
    """
    stats = IngestStats()
    live: set[tuple[int, int]] = set()
    for k in range(len(src)):
        pair = (int(src[k]), int(dst[k]))
        if sign[k] > 0:
            if pair in live:
                stats.duplicate_adds += 1
            else:
                live.add(pair)
        else:
            if pair in live:
                live.discard(pair)
            else:
                if strict_deletes:
                    raise EventFormatError(
                        f"delete of absent edge {pair} at event index {k}"
                    )
                stats.noop_deletes += 1
    return stats


@dataclass
class TemporalEdgeList:
    """A validated, time-sorted stream of edge events over ``n`` nodes.

    Events are stored columnar (``src``, ``dst``, ``sign``, ``time`` arrays)
    for cheap slicing; ``events`` iterates them as :class:`EdgeEvent`.
    ``node_ids`` maps compact index -> original token.  Equal timestamps keep
    their input order, so replaying a prefix is well defined.
    """

    src: np.ndarray
    dst: np.ndarray
    sign: np.ndarray
    time: np.ndarray
    node_ids: list[str]
    stats: IngestStats = field(default_factory=IngestStats)

    # ---- constructors ----

    @classmethod
    def from_records(cls, records: Iterable[tuple[int, int, int, int]],
                     node_ids: Sequence[str] | None = None,
                     n: int | None = None,
                     strict_deletes: bool = False) -> "TemporalEdgeList":
        """Build from already-indexed ``(src, dst, sign, time)`` tuples.

        ``node_ids`` (or ``n``, producing string tokens ``"0".."n-1"``) fixes
        the node universe; otherwise it is ``max index + 1``.
        """
        rows = list(records)
        if rows:
            src = np.array([r[0] for r in rows], dtype=np.int64)
            dst = np.array([r[1] for r in rows], dtype=np.int64)
            sign = np.array([r[2] for r in rows], dtype=np.int64)
            time = np.array([r[3] for r in rows], dtype=np.int64)
        else:
            src = dst = sign = time = np.empty(0, dtype=np.int64)
        if node_ids is None:
            count = n
            if count is None:
                count = int(max(src.max(), dst.max())) + 1 if rows else 0
            node_ids = [str(i) for i in range(count)]
        return cls._finish(src, dst, sign, time, list(node_ids), strict_deletes)

    @classmethod
    def _finish(cls, src, dst, sign, time, node_ids, strict_deletes):
        n = len(node_ids)
        if len(src) and (src.min() < 0 or dst.min() < 0
                         or src.max() >= n or dst.max() >= n):
            raise EventFormatError("event node index out of range")
        if np.any(time < 0):
            raise EventFormatError("negative timestamp")
        if np.any(src == dst):
            raise EventFormatError("self-loop in indexed event records")
        order = np.argsort(time, kind="stable")
        src, dst, sign, time = src[order], dst[order], sign[order], time[order]
        stats = _replay_scan(src, dst, sign, strict_deletes)
        return cls(src, dst, sign, time, node_ids, stats)

    @classmethod
    def read(cls, source: PathOrFile, *, self_loops: str = "skip",
             strict_deletes: bool = False) -> "TemporalEdgeList":
        """Parse an event file; see :func:`read_events`."""
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as handle:
                return cls._parse(handle, self_loops, strict_deletes)
        return cls._parse(source, self_loops, strict_deletes)

    @classmethod
    def _parse(cls, handle: TextIO, self_loops: str,
               strict_deletes: bool) -> "TemporalEdgeList":
        if self_loops not in ("skip", "error"):
            raise ValueError(f"self_loops must be 'skip' or 'error', got {self_loops!r}")
        index: dict[str, int] = {}
        node_ids: list[str] = []
        srcs: list[int] = []
        dsts: list[int] = []
        signs: list[int] = []
        times: list[int] = []
        skipped = 0
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = text.split()
            if len(fields) != 4:
                raise EventFormatError(
                    f"line {lineno}: expected 4 fields "
                    f"(src, dst, sign, time), got {len(fields)}"
                )
            u, v, sign_text, time_text = fields
            sign = _SIGNS.get(sign_text)
            if sign is None:
                raise EventFormatError(
                    f"line {lineno}: sign must be +1 or -1, got {sign_text!r}"
                )
            try:
                t = int(time_text)
            except ValueError:
                raise EventFormatError(
                    f"line {lineno}: time must be an integer, got {time_text!r}"
                ) from None
            if t < 0:
                raise EventFormatError(f"line {lineno}: time must be >= 0, got {t}")
            if u == v:
                if self_loops == "error":
                    raise EventFormatError(f"line {lineno}: self-loop {u!r} -> {v!r}")
                skipped += 1
                continue
            for token in (u, v):
                if token not in index:
                    index[token] = len(node_ids)
                    node_ids.append(token)
            srcs.append(index[u])
            dsts.append(index[v])
            signs.append(sign)
            times.append(t)
        src = np.array(srcs, dtype=np.int64)
        dst = np.array(dsts, dtype=np.int64)
        sign = np.array(signs, dtype=np.int64)
        time = np.array(times, dtype=np.int64)
        tel = cls._finish(src, dst, sign, time, node_ids, strict_deletes)
        tel.stats.self_loops_skipped = skipped
        return tel

    # ---- queries ----

    @property
    def node_count(self) -> int:
        return len(self.node_ids)

    def __len__(self) -> int:
        return len(self.src)

    @property
    def events(self) -> Iterator[EdgeEvent]:
        for k in range(len(self.src)):
            yield EdgeEvent(int(self.src[k]), int(self.dst[k]),
                            int(self.sign[k]), int(self.time[k]))

    @property
    def time_first(self) -> int:
        if not len(self):
            raise ValueError("empty event stream has no time span")
        return int(self.time[0])

    @property
    def time_last(self) -> int:
        if not len(self):
            raise ValueError("empty event stream has no time span")
        return int(self.time[-1])

    # ---- persistence ----

    def write(self, target: PathOrFile) -> None:
        """Write the canonical event file (tab-separated, original tokens)."""
        if isinstance(target, (str, Path)):
            with open(target, "w", encoding="utf-8") as handle:
                self._write(handle)
        else:
            self._write(target)

    def _write(self, handle: TextIO) -> None:
        ids = self.node_ids
        for k in range(len(self.src)):
            handle.write(f"{ids[self.src[k]]}\t{ids[self.dst[k]]}\t"
                         f"{'+1' if self.sign[k] > 0 else '-1'}\t{self.time[k]}\n")

    def write_id_map(self, target: PathOrFile) -> None:
        """Persist the token -> index map as ``node<TAB>index`` lines."""
        if isinstance(target, (str, Path)):
            with open(target, "w", encoding="utf-8") as handle:
                for i, token in enumerate(self.node_ids):
                    handle.write(f"{token}\t{i}\n")
        else:
            for i, token in enumerate(self.node_ids):
                target.write(f"{token}\t{i}\n")


def read_events(source: PathOrFile, *, self_loops: str = "skip",
                strict_deletes: bool = False) -> TemporalEdgeList:
    """Read a temporal edge-event file.

    Parameters
    ----------
    source : path or file object
        Event file in ``src<TAB>dst<TAB>sign<TAB>time`` format.  Any
        whitespace separates fields on input; the writer emits tabs.
    self_loops : {'skip', 'error'}
        Policy for events with ``src == dst``.  ``'skip'`` drops the record
        and counts it in ``stats.self_loops_skipped``; ``'error'`` raises.
        Skipped records do not register node ids.
    strict_deletes : bool
        When True, a delete for an edge that is not currently present is an
        error; otherwise it is ignored and counted in ``stats.noop_deletes``.

    Returns
    -------
    TemporalEdgeList
        Events sorted by time (stable for equal timestamps), node ids
        compacted in first-seen order, diagnostics attached.

    Raises
    ------
    EventFormatError
        On malformed lines (with the line number), bad signs, negative or
        non-integer times, or policy violations.
    """
    return TemporalEdgeList.read(source, self_loops=self_loops,
                                 strict_deletes=strict_deletes)


def read_id_map(source: PathOrFile) -> dict[str, int]:
    """Read a ``node<TAB>index`` map written by :meth:`write_id_map`."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return read_id_map(handle)
    mapping: dict[str, int] = {}
    for lineno, line in enumerate(source, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = text.split()
        if len(fields) != 2:
            raise EventFormatError(f"line {lineno}: expected 'node<TAB>index'")
        mapping[fields[0]] = int(fields[1])
    return mapping
