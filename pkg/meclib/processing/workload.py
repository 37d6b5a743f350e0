"""
Synthetic offloading workloads.

Requirements are drawn from uniform parameter distributions and labeled
with a decision procedure (normally the exhaustive oracle) to produce the
training and testing sets of the imitation models.
"""

import functools
import logging
import multiprocessing

import pandas as pd

from meclib.data.containers.dataset import Dataset, DistributionSpec, LabeledSample
from meclib.data.containers.requirement import Environment, Requirement, TaskProfile
from meclib.data.definitions import Location, bandwidth_floor_c, rate_floor_c
from meclib.processing.solvers import ExhaustivePolicy
from meclib.utils.generic import substream

log = logging.getLogger(__name__)

MB = 1e6
MHz = 1e6

_presets = {
    # Six subtasks, wide ranges: the large training set of the teacher model
    "cloud_scale": dict(num_subtasks=6,
                        eps_range=(0.0, 2000e6),
                        d_range=(0.0, 10 * MB),
                        p1_range=(100 * MHz, 1000 * MHz),
                        p2_range=(500 * MHz, 5000 * MHz),
                        b1_range=(0.0, 2 * MB),
                        b2_range=(0.0, 3 * MB)),
    # Narrower computation and data ranges, for the small edge-side set
    "edge_scale": dict(num_subtasks=6,
                       eps_range=(500e6, 1500e6),
                       d_range=(3 * MB, 8 * MB),
                       p1_range=(100 * MHz, 1000 * MHz),
                       p2_range=(500 * MHz, 5000 * MHz),
                       b1_range=(0.0, 2 * MB),
                       b2_range=(0.0, 3 * MB)),
}

_aliases = {"cloud": "cloud_scale", "edge": "edge_scale"}

preset_names = tuple(_presets)


def preset(name):
    """
    Get one of the built-in distributions by name ("cloud_scale" or
    "edge_scale"; "cloud" and "edge" are accepted as short forms).
    """
    key = _aliases.get(name, name)
    if key not in _presets:
        raise ValueError("Unknown distribution preset %r. Valid presets are %s" %
                         (name, ", ".join(preset_names)))
    return DistributionSpec(**_presets[key])


def _uniform_above(rng, rng_range, floor):
    lo, hi = rng_range
    value = rng.uniform(lo, hi)
    while value < floor:
        value = rng.uniform(lo, hi)
    return value


def sample_requirement(spec, rng):
    """
    Draw a requirement from the distribution. The subtask parameters are
    drawn first, then p1, p2, b1, b2, each resampled until it reaches its
    positivity floor.

    :param spec: a DistributionSpec
    :param rng:  a numpy.random.Generator
    :return:     a Requirement
    """
    assert isinstance(spec, DistributionSpec)

    n = spec.num_subtasks
    eps = rng.uniform(spec.eps_range[0], spec.eps_range[1], size=n)
    data = rng.uniform(spec.d_range[0], spec.d_range[1], size=n + 1)

    p1 = _uniform_above(rng, spec.p1_range, rate_floor_c)
    p2 = _uniform_above(rng, spec.p2_range, rate_floor_c)
    b1 = _uniform_above(rng, spec.b1_range, bandwidth_floor_c)
    b2 = _uniform_above(rng, spec.b2_range, bandwidth_floor_c)

    return Requirement(TaskProfile(eps, data), Environment(p1, p2, b1, b2))


def _make_sample(spec, labeler, seed, index):
    req = sample_requirement(spec, substream(seed, index))
    return LabeledSample(req, labeler(req))


def generate_dataset(spec, n, labeler=None, seed=0, workers=1):
    """
    Draw n requirements and label them. Sample i is drawn from its own
    random substream, and the labeled samples are assembled in index order,
    so the result depends only on (spec, n, seed).

    :param spec:    a DistributionSpec
    :param n:       number of samples
    :param labeler: a Policy (or any callable Requirement -> Decision).
                    Defaults to the exhaustive oracle. A stateful labeler,
                    such as the random baseline, is only reproducible with
                    a single worker.
    :param seed:    the run seed
    :param workers: number of labeling processes
    :return:        a Dataset
    """
    assert isinstance(spec, DistributionSpec)
    if n < 1:
        raise ValueError("A dataset needs at least one sample")
    if labeler is None:
        labeler = ExhaustivePolicy()

    make = functools.partial(_make_sample, spec, labeler, seed)
    log.info("Generating %i samples with %i worker(s)", n, workers)

    if workers > 1 and n > 1:
        chunksize = max(1, n // (4 * workers))
        with multiprocessing.Pool(workers) as pool:
            samples = pool.map(make, range(n), chunksize=chunksize)
    else:
        samples = [make(index) for index in range(n)]

    return Dataset(spec, samples, seed)


def fit_subtasks(task, n):
    """
    Reshape a task to exactly n subtasks. Missing subtasks are appended as
    empty ones (no computation, the data passes through). Extra subtasks are
    merged, always joining the adjacent pair with the largest intermediate
    data size, which keeps that transfer inside a single location.

    :param task: a TaskProfile
    :param n:    the required number of subtasks
    :return:     a new TaskProfile
    """
    assert isinstance(task, TaskProfile)
    if n < 1:
        raise ValueError("A task needs at least one subtask")

    eps = list(task.eps)
    data = list(task.data)

    while len(eps) < n:
        eps.append(0.0)
        data.append(data[-1])

    while len(eps) > n:
        # data[k] sits between subtask k-1 and subtask k
        k = max(range(1, len(eps)), key=lambda i: data[i])
        eps[k - 1] += eps[k]
        del eps[k]
        del data[k]

    return TaskProfile(eps, data)


def label_distribution(dataset):
    """
    Class frequencies of the labels, one row per subtask.

    :param dataset: a Dataset
    :return:        pandas.DataFrame with columns Device, Edge, Cloud
    """
    labels = dataset.label_array()
    columns = [str(loc) for loc in Location]
    rows = []
    for t in range(labels.shape[1]):
        counts = [(labels[:, t] == int(loc)).sum() for loc in Location]
        rows.append([c / float(len(labels)) for c in counts])
    df = pd.DataFrame(rows, columns=columns)
    df.index.name = "subtask"
    return df
