"""Counter-based deterministic random generator.

Every draw hashes (seed, counter) with SHA-256, so a run is fully determined
by the seed and the order of draws, independent of the interpreter's
``random`` implementation.
"""

import hashlib
from typing import Sequence, TypeVar

T = TypeVar("T")


class CounterRng:
    def __init__(self, seed: int = 0, stream: str = ""):
        self.seed = seed
        self.stream = stream
        self.counter = 0

    def _next(self) -> int:
        digest = hashlib.sha256(
            f"{self.seed}:{self.stream}:{self.counter}".encode()
        ).digest()
        self.counter += 1
        return int.from_bytes(digest[:8], "big")

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        if high < low:
            raise ValueError(f"Empty range [{low}, {high}]")
        return low + self._next() % (high - low + 1)

    def choice(self, items: Sequence[T]) -> T:
        if not items:
            raise ValueError("Cannot choose from an empty sequence")
        return items[self.randint(0, len(items) - 1)]

    def fork(self, label: str) -> "CounterRng":
        """Independent stream for a named sub-task."""
        return CounterRng(self.seed, f"{self.stream}/{label}")
