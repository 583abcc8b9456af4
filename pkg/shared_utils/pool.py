"""
Worker pool for grid audits.
Jobs are pure functions over immutable inputs, so results only depend on
the submission order, never on the worker count.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config.settings import WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ThreadPoolManager:
    """Managed thread pool with proper cleanup support"""

    def __init__(self, max_workers: Optional[int] = None):
        self._max_workers = max_workers if max_workers is not None else WORKERS
        self._pool = None
        self._shutdown = False

    @property
    def max_workers(self) -> int:
        return self._max_workers

    @property
    def pool(self) -> ThreadPoolExecutor:
        if self._pool is None or self._shutdown:
            self._pool = ThreadPoolExecutor(max_workers=self._max_workers)
            self._shutdown = False
        return self._pool

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply fn to every item, returning results in submission order"""
        items = list(items)
        if self._max_workers <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        futures = [self.pool.submit(fn, item) for item in items]
        return [future.result() for future in futures]

    def shutdown(self, wait: bool = True):
        if self._pool and not self._shutdown:
            logger.debug("Shutting down audit thread pool...")
            self._pool.shutdown(wait=wait)
            self._shutdown = True

    def __enter__(self) -> "ThreadPoolManager":
        return self

    def __exit__(self, exc_type, exc, tb):
        self.shutdown()
