"""Shared registry for the acceptance result lines.

Tests record one line per criterion; the conftest terminal-summary hook
replays them after the run so they are visible even under output capture.
"""

LINES: list[str] = []


def record(line: str) -> None:
    LINES.append(line)
    print(line, flush=True)
