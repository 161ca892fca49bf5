"""Lightweight audit hooks for memory and work accounting.

The solvers route their band-buffer acquisitions and per-pair solver
invocations through this module so tests can assert the linear-memory
and work-bound claims without touching the hot paths.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class Audit:
    """Counters collected while an audit context is active."""

    buffer_lengths: list[int] = field(default_factory=list)
    diagonal_steps: int = 0
    solver_invocations: int = 0


# Process-wide so events raised on batch worker threads are still seen.
_lock = threading.Lock()
_current: Audit | None = None


@contextmanager
def audit():
    """Collect solver accounting events until the context exits.

    One audit may be active at a time; nesting restores the outer one.
    """
    global _current
    record = Audit()
    with _lock:
        previous = _current
        _current = record
    try:
        yield record
    finally:
        with _lock:
            _current = previous


def note_buffer(length: int) -> None:
    if _current is not None:
        with _lock:
            _current.buffer_lengths.append(length)


def note_diagonal_step() -> None:
    if _current is not None:
        with _lock:
            _current.diagonal_steps += 1


def note_solve() -> None:
    if _current is not None:
        with _lock:
            _current.solver_invocations += 1
