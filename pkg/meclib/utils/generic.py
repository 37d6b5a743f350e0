import contextlib
import os
import tempfile

import numpy as np


def substream(seed, index):
    """ A random generator for item *index* of a run seeded with *seed*.
    The stream depends only on (seed, index), so a dataset comes out the same
    no matter how its items are distributed over worker processes.

    :param seed:  the run seed (a non-negative integer)
    :param index: item index
    :return:      numpy.random.Generator
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _current_umask():
    mask = os.umask(0)
    os.umask(mask)
    return mask


@contextlib.contextmanager
def atomic_write(path, mode="w"):
    """ Open a temporary file next to *path* for writing and move it in place
    once the block completes. On error the target is left untouched.
    The file gets the permissions of a plainly created one (0666 less the
    umask).

    :param path: the final file path
    :param mode: file mode, "w" or "wb"
    """
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(directory):
        os.makedirs(directory)

    fd, temp_path = tempfile.mkstemp(prefix=".meclib-", dir=directory)
    try:
        with os.fdopen(fd, mode) as f:
            yield f
        os.chmod(temp_path, 0o666 & ~_current_umask())
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


def format_time_string(seconds):
    m, s = divmod(seconds, 60)
    h, m = divmod(m, 60)
    return "%d:%02d:%02d" % (h, m, s)


def format_delay(seconds):
    """ Human readable per-decision delay, e.g. 12.3us """
    if seconds >= 1:
        return "%.2fs" % seconds
    if seconds >= 1e-3:
        return "%.2fms" % (seconds * 1e3)
    return "%.2fus" % (seconds * 1e6)
