import logging
import threading
from collections import OrderedDict
from collections.abc import Callable, Hashable
from typing import Any, Optional

from cm_engine.core.config import CACHE_SIZE

logger = logging.getLogger(__name__)


class LRUCache:
    def __init__(self, maxsize: int = 128):
        """
        :param maxsize: Maximum number of items in the cache.
        """
        if maxsize < 1:
            raise ValueError("maxsize must be >= 1")
        self.maxsize = maxsize
        self.hits = 0
        self.misses = 0
        self._cache: OrderedDict[Hashable, Any] = OrderedDict()
        self._lock = threading.RLock()

    def get(self, key: Hashable) -> Optional[Any]:
        with self._lock:
            if key not in self._cache:
                self.misses += 1
                return None
            self.hits += 1
            self._cache.move_to_end(key)
            return self._cache[key]

    def set(self, key: Hashable, value: Any) -> None:
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
            self._cache[key] = value
            if len(self._cache) > self.maxsize:
                self._cache.popitem(last=False)
                logger.debug("cache full (%d), evicted oldest entry", self.maxsize)

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        value = self.get(key)
        if value is not None:
            return value
        # Computed outside the lock; two threads may race on the same key,
        # both get the same pure value.
        value = compute()
        self.set(key, value)
        return value

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)


sublink_cache = LRUCache(maxsize=CACHE_SIZE)
