"""
Binary dump and restore of a sampled Brownian path, for replaying a failed run.

The format is an 8-byte little-endian sample count followed by that many
little-endian ``(f64 time, f64 value)`` pairs in increasing time order.
"""

import logging
import os

import numpy as np

from jumpdrift.errors import PathError
from .path import BrownianPath


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


_HEADER = np.dtype('<u8')
_RECORD = np.dtype([('t', '<f8'), ('w', '<f8')])


def dump_path(path: BrownianPath, file: str | os.PathLike) -> int:
    """Write every sample of a path to a file.

    :param BrownianPath path: The path.
    :param str|os.PathLike file: The destination.
    :returns int: The number of samples written.
    """
    times, values = path.samples()
    records = np.empty(len(times), dtype=_RECORD)
    records['t'] = times
    records['w'] = values
    with open(file, 'wb') as out:
        out.write(np.array([len(times)], dtype=_HEADER).tobytes())
        out.write(records.tobytes())
    LOGGER.debug("Dumped %d samples of path %d to %s.", len(times), path.path_index, file)
    return len(times)


def restore_path(file: str | os.PathLike, seed: int, path_index: int = 0,
                 stream: int = 0) -> BrownianPath:
    """Read a path written by :func:`dump_path`.

    :param str|os.PathLike file: The dump.
    :param int seed: The master seed for any further draws.
    :param int path_index: The path index for any further draws.
    :param int stream: The stream for any further draws.
    :raises PathError: If the file is truncated or its samples are not a valid path.
    :returns BrownianPath: The restored path.
    """
    with open(file, 'rb') as src:
        data = src.read()
    if len(data) < _HEADER.itemsize:
        raise PathError(f"{file}: missing sample count.")

    count = int(np.frombuffer(data, dtype=_HEADER, count=1)[0])
    expected = _HEADER.itemsize + count * _RECORD.itemsize
    if len(data) != expected:
        raise PathError(f"{file}: expected {expected} bytes for {count} samples, "
                        f"found {len(data)}.")

    records = np.frombuffer(data, dtype=_RECORD, count=count, offset=_HEADER.itemsize)
    return BrownianPath.from_samples(records['t'], records['w'],
                                     seed, path_index, stream)
