"""
A lazily refined, replayable Brownian path.

Values are drawn only when a time is first queried: beyond the last sampled
time by an independent Gaussian increment, between two sampled times from
the Brownian bridge.  Normals come from a counter-based Philox generator
keyed by ``(seed, path_index, stream)``, so every path is an independent,
reproducible stream no matter which worker process draws it.
"""

import math
from collections.abc import Iterable

import numpy as np

from jumpdrift.errors import PathError


_FIRST_BLOCK = 16
"""Normals drawn by the first refill of the buffer."""


_MAX_BLOCK = 8192
"""Largest refill of the normal buffer."""


_FIRST_CAPACITY = 64
"""Initial capacity of the store for newly drawn samples."""


class _Store:
    """Sorted sample times and values in two growable float64 arrays."""
    __slots__ = ('t', 'w', 'n')

    def __init__(self, t: np.ndarray | None = None, w: np.ndarray | None = None):
        if t is None or w is None:
            self.t, self.w, self.n = np.empty(_FIRST_CAPACITY), np.empty(_FIRST_CAPACITY), 0
        else:
            self.t, self.w, self.n = t, w, len(t)

    def find(self, t: float) -> int:
        """Return the first index whose time is not below ``t``."""
        return int(np.searchsorted(self.t[:self.n], t))

    def insert(self, k: int, t: float, w: float) -> None:
        """Insert a sample at index ``k``."""
        n = self.n
        if n == len(self.t):
            self.t = np.resize(self.t, 2 * n)
            self.w = np.resize(self.w, 2 * n)
        if k < n:
            self.t[k + 1:n + 1] = self.t[k:n]
            self.w[k + 1:n + 1] = self.w[k:n]
        self.t[k] = t
        self.w[k] = w
        self.n = n + 1

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Return views of the stored samples."""
        return self.t[:self.n], self.w[:self.n]


class BrownianPath:
    """One Brownian path ``W`` with ``W_0 = 0``, sampled on demand.

    Samples live in two sorted stores: a frozen ``base`` inherited from the
    path this one was forked from, and the samples drawn since.  The split
    keeps bridge insertions cheap when a coarse scheme refines a path that a
    fine reference run has already filled with millions of points.  Both are
    float64 arrays, so such a reference costs 16 bytes per sample.
    """

    def __init__(self, seed: int, path_index: int = 0, stream: int = 0,
                 base: tuple[np.ndarray, np.ndarray] | None = None):
        """Create a path.

        :param int seed: The experiment's master seed.
        :param int path_index: The Monte Carlo index of this path.
        :param int stream: Which independent stream of this path to draw from.
        :param base: Sorted ``(times, values)`` already known, starting at ``(0, 0)``.
        :raises PathError: If the seed or indices are negative or the base is malformed.
        """
        if seed < 0 or path_index < 0 or stream < 0:
            raise PathError('Seed, path index and stream must be non-negative.')
        self.seed = seed
        self.path_index = path_index
        self.stream = stream

        if base is None:
            base = (np.zeros(1), np.zeros(1))
        base_t = np.asarray(base[0], dtype=np.float64)
        base_w = np.asarray(base[1], dtype=np.float64)
        if (len(base_t) == 0 or len(base_t) != len(base_w)
                or base_t[0] != 0.0 or base_w[0] != 0.0):
            raise PathError('A path must start at (0, 0).')
        self._base = _Store(base_t, base_w)
        self._new = _Store()
        self._last = (float(base_t[-1]), float(base_w[-1]))

        seq = np.random.SeedSequence(entropy=seed, spawn_key=(path_index, stream))
        self._rng = np.random.Generator(np.random.Philox(seq))
        self._buffer = np.empty(0)
        self._cursor = 0
        self._block = _FIRST_BLOCK
        self.draws = 0
        """Number of normal variates consumed so far."""

    def __len__(self) -> int:
        return self._base.n + self._new.n

    @property
    def t_max(self) -> float:
        """The largest sampled time."""
        return self._last[0]

    def _normal(self) -> float:
        if self._cursor == len(self._buffer):
            self._buffer = self._rng.standard_normal(self._block)
            self._cursor = 0
            self._block = min(2 * self._block, _MAX_BLOCK)
        value = float(self._buffer[self._cursor])
        self._cursor += 1
        self.draws += 1
        return value

    def _neighbours(self, t: float) -> tuple[float | None, tuple[float, float] | None,
                                             tuple[float, float] | None]:
        """Return a stored value at ``t`` (if any) and the nearest samples either side."""
        new, base = self._new, self._base
        i = new.find(t)
        if i < new.n and new.t[i] == t:
            return float(new.w[i]), None, None
        j = base.find(t)
        if j < base.n and base.t[j] == t:
            return float(base.w[j]), None, None

        left = (float(base.t[j - 1]), float(base.w[j - 1]))
        if i > 0 and new.t[i - 1] > left[0]:
            left = (float(new.t[i - 1]), float(new.w[i - 1]))

        right: tuple[float, float] | None = None
        if j < base.n:
            right = (float(base.t[j]), float(base.w[j]))
        if i < new.n and (right is None or new.t[i] < right[0]):
            right = (float(new.t[i]), float(new.w[i]))
        return None, left, right

    def sample_at(self, t: float) -> float:
        """Return ``W_t``, drawing and storing it if ``t`` is new.

        :param float t: The time.
        :raises PathError: If ``t`` is negative or not finite.
        :returns float: The path value.
        """
        if not math.isfinite(t) or t < 0.0:
            raise PathError(f"Cannot sample a Brownian path at t = {t!r}.")

        a, wa = self._last
        if t == a:
            return wa
        if t > a:
            value = wa + math.sqrt(t - a) * self._normal()
            self._new.insert(self._new.n, t, value)
            self._last = (t, value)
            return value

        known, left, right = self._neighbours(t)
        if known is not None:
            return known
        assert left is not None and right is not None

        a, wa = left
        b, wb = right
        mean = wa + (t - a) / (b - a) * (wb - wa)
        value = mean + math.sqrt((b - t) * (t - a) / (b - a)) * self._normal()
        self._new.insert(self._new.find(t), t, value)
        return value

    def increment(self, s: float, t: float) -> float:
        """Return ``W_t - W_s``.

        :param float s: The earlier time.
        :param float t: The later time.
        :raises PathError: If ``s > t``.
        :returns float: The increment; exactly 0 when ``s == t``.
        """
        if s > t:
            raise PathError(f"Increment needs s <= t, got s = {s!r}, t = {t!r}.")
        if s == t:
            return 0.0
        ws = self.sample_at(s)
        return self.sample_at(t) - ws

    def samples(self) -> tuple[np.ndarray, np.ndarray]:
        """Return every sample as sorted ``(times, values)`` arrays.

        :returns: Copies of the sampled times and the path values at them.
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        base_t, base_w = self._base.arrays()
        new_t, new_w = self._new.arrays()
        times = np.concatenate((base_t, new_t))
        values = np.concatenate((base_w, new_w))
        if new_t.size and new_t[0] < base_t[-1]:
            order = np.argsort(times, kind='stable')
            times, values = times[order], values[order]
        return times, values

    def fork(self, stream: int) -> 'BrownianPath':
        """Copy the sampled skeleton into a new path that draws from another stream.

        Refining the fork never changes this path, so several coarse schemes
        can each refine their own fork of one reference-populated path.

        :param int stream: The stream of the fork; must differ from this path's.
        :raises PathError: If ``stream`` equals this path's stream.
        :returns BrownianPath: The fork.
        """
        if stream == self.stream:
            raise PathError(f"A fork needs a fresh stream, not {stream}.")
        if self._new.n:
            self._base = _Store(*self.samples())
            self._new = _Store()
        # Bases are never mutated, so forks share them.
        return BrownianPath(self.seed, self.path_index, stream, self._base.arrays())

    @classmethod
    def from_samples(cls, times: Iterable[float], values: Iterable[float], seed: int,
                     path_index: int = 0, stream: int = 0) -> 'BrownianPath':
        """Rebuild a path from stored samples.

        New queries draw from the ``(seed, path_index, stream)`` generator
        from its start.

        :param Iterable[float] times: The sorted sample times, starting at 0.
        :param Iterable[float] values: The path values at those times.
        :param int seed: The master seed.
        :param int path_index: The path index.
        :param int stream: The stream.
        :raises PathError: If the times are not strictly increasing from 0.
        :returns BrownianPath: The path.
        """
        t_array = np.array(times if isinstance(times, np.ndarray) else list(times),
                           dtype=np.float64)
        w_array = np.array(values if isinstance(values, np.ndarray) else list(values),
                           dtype=np.float64)
        if np.any(np.diff(t_array) <= 0.0):
            raise PathError('Sample times must be strictly increasing.')
        return cls(seed, path_index, stream, (t_array, w_array))
