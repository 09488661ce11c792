"""Concurrent runner for independent checks using asyncio tasks."""

import asyncio
from dataclasses import dataclass
from typing import Callable, Optional, Union

from config.logger import get_logger
from config.settings import settings
from services.report import Check, CheckStatus

logger = get_logger(__name__)

CheckFunc = Callable[..., Union[Check, list[Check]]]


@dataclass
class CheckProgress:
    """Runner progress information."""
    progress: int  # 0-100
    message: str


class CheckRunner:
    """Runs registered checks concurrently and returns them in registration order.

    Input errors (the ValueError family) propagate to the caller; any other
    exception becomes a failed check carrying the exception text.
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = max(1, workers or settings.workers)
        self._entries: list[tuple[str, CheckFunc, tuple, dict]] = []
        self._progress_callbacks: list[Callable[[CheckProgress], None]] = []
        self._lock = asyncio.Lock()
        self._finished = 0

    def add(self, name: str, func: CheckFunc, *args, **kwargs) -> None:
        self._entries.append((name, func, args, kwargs))

    def add_progress_callback(self, callback: Callable[[CheckProgress], None]) -> None:
        self._progress_callbacks.append(callback)

    def __len__(self) -> int:
        return len(self._entries)

    async def _notify(self, name: str) -> None:
        async with self._lock:
            self._finished += 1
            percent = int(100 * self._finished / max(1, len(self._entries)))
            update = CheckProgress(percent, f"Finished {name}")
        for callback in self._progress_callbacks:
            try:
                callback(update)
            except Exception as e:
                logger.error(f"Error in progress callback: {e}")

    async def _run_one(self, semaphore: asyncio.Semaphore, name: str, func: CheckFunc, args, kwargs) -> list[Check]:
        async with semaphore:
            logger.debug(f"Running check {name}")
            try:
                result = await asyncio.to_thread(func, *args, **kwargs)
            except ValueError:
                raise
            except Exception as e:
                logger.error(f"Check {name} raised: {e}", exc_info=True)
                result = Check(name, CheckStatus.FAIL, f"internal error: {e}")
        await self._notify(name)
        checks = result if isinstance(result, list) else [result]
        for c in checks:
            if c.status is CheckStatus.FAIL:
                logger.warning(f"Check {c.name} failed: {c.detail}")
            elif c.status is CheckStatus.INCONCLUSIVE:
                logger.warning(f"Check {c.name} inconclusive: {c.detail}")
        return checks

    async def run(self) -> list[Check]:
        semaphore = asyncio.Semaphore(self.workers)
        self._finished = 0
        logger.info(f"Running {len(self._entries)} checks with {self.workers} workers")
        results = await asyncio.gather(
            *(self._run_one(semaphore, name, func, args, kwargs) for name, func, args, kwargs in self._entries)
        )
        return [c for checks in results for c in checks]
