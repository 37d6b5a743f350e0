"""
File:        dataset.py

Description:
Containers for the synthetic workload: the uniform parameter distribution
a set of requirements is drawn from, labeled samples, and hard and soft
labeled datasets.
"""

import math

import numpy as np

from meclib.data.containers.requirement import Decision, Requirement
from meclib.data.definitions import bandwidth_floor_c, nof_locations_c, rate_floor_c, \
    target_sum_tolerance_c


class DistributionSpec(object):
    """
    Uniform ranges for every parameter family of a requirement. Ranges are
    (lo, hi) pairs in SI units.
    """
    range_names = ("eps_range", "d_range", "p1_range", "p2_range", "b1_range", "b2_range")

    def __init__(self, num_subtasks, eps_range, d_range, p1_range, p2_range,
                 b1_range, b2_range):
        self.num_subtasks = int(num_subtasks)
        if self.num_subtasks < 1:
            raise ValueError("num_subtasks should be at least 1")

        self.eps_range = self._check_range("eps_range", eps_range)
        self.d_range = self._check_range("d_range", d_range)
        self.p1_range = self._check_range("p1_range", p1_range, rate_floor_c)
        self.p2_range = self._check_range("p2_range", p2_range, rate_floor_c)
        self.b1_range = self._check_range("b1_range", b1_range, bandwidth_floor_c)
        self.b2_range = self._check_range("b2_range", b2_range, bandwidth_floor_c)

    @staticmethod
    def _check_range(name, rng, floor=None):
        lo, hi = (float(v) for v in rng)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or lo > hi:
            raise ValueError("%s should satisfy 0 <= lo <= hi, got %r" % (name, (lo, hi)))
        # Sampling resamples below the floor, which never terminates if the
        # whole range is below it.
        if floor is not None and hi < floor:
            raise ValueError("The upper bound of %s should be at least %g, got %g" %
                             (name, floor, hi))
        return lo, hi

    @property
    def input_dim(self):
        return 2 * self.num_subtasks + 5

    def ranges(self):
        return [getattr(self, name) for name in self.range_names]

    def to_dict(self):
        spec = {"num_subtasks": self.num_subtasks}
        for name in self.range_names:
            spec[name] = list(getattr(self, name))
        return spec

    @classmethod
    def from_dict(cls, spec):
        try:
            return cls(spec["num_subtasks"], *(spec[name] for name in cls.range_names))
        except (KeyError, TypeError) as e:
            raise ValueError("Incomplete distribution spec: %s" % e)

    def __eq__(self, other):
        return isinstance(other, DistributionSpec) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "DistributionSpec(%r)" % self.to_dict()


class LabeledSample(object):
    """
    A requirement and the decision it should be mapped to.
    """

    def __init__(self, req, label):
        assert isinstance(req, Requirement)
        label = Decision(label)
        if len(label) != req.num_subtasks:
            raise ValueError("Label has %i locations, the task has %i subtasks" %
                             (len(label), req.num_subtasks))
        self.req = req
        self.label = label

    def __eq__(self, other):
        return isinstance(other, LabeledSample) and \
            self.req == other.req and self.label == other.label

    def __repr__(self):
        return "LabeledSample(%r, %r)" % (self.req, self.label)


class Dataset(object):
    """
    A list of labeled samples with the distribution and the seed they were
    generated with.
    """

    def __init__(self, spec, samples, seed=None):
        assert isinstance(spec, DistributionSpec)
        samples = list(samples)
        for idx, sample in enumerate(samples):
            assert isinstance(sample, LabeledSample)
            if sample.req.num_subtasks != spec.num_subtasks:
                raise ValueError("Sample %i has %i subtasks, the spec defines %i" %
                                 (idx, sample.req.num_subtasks, spec.num_subtasks))
        self.spec = spec
        self.samples = samples
        self.seed = seed

    @property
    def requirements(self):
        return [sample.req for sample in self.samples]

    @property
    def labels(self):
        return [sample.label for sample in self.samples]

    def label_array(self):
        """
        Labels as an integer array of shape (n, num_subtasks).
        """
        return np.array([sample.label.codes() for sample in self.samples],
                        dtype=np.int64).reshape(len(self.samples), self.spec.num_subtasks)

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, item):
        return self.samples[item]

    def __eq__(self, other):
        return isinstance(other, Dataset) and self.spec == other.spec and \
            self.seed == other.seed and self.samples == other.samples


def check_soft_labels(soft_labels):
    """
    Raise ValueError unless every probability triple (the last axis) is
    finite, non-negative and sums to one within target_sum_tolerance_c.
    """
    soft_labels = np.asarray(soft_labels, dtype=np.float64)
    if not np.all(np.isfinite(soft_labels)):
        raise ValueError("soft labels contain non-finite values")
    if np.any(soft_labels < 0):
        raise ValueError("soft labels contain negative probabilities")
    deviation = np.max(np.abs(soft_labels.sum(axis=-1) - 1.0), initial=0.0)
    if deviation > target_sum_tolerance_c:
        raise ValueError("soft label triples should sum to 1, off by up to %.3g" % deviation)


class SoftDataset(object):
    """
    Requirements paired with per-subtask probability triples instead of hard
    decisions. soft_labels has shape (n, num_subtasks, 3).
    """

    def __init__(self, spec, reqs, soft_labels, seed=None, temperature=None):
        assert isinstance(spec, DistributionSpec)
        reqs = list(reqs)
        soft_labels = np.asarray(soft_labels, dtype=np.float64)
        expected = (len(reqs), spec.num_subtasks, nof_locations_c)
        if soft_labels.shape != expected:
            raise ValueError("Soft labels should have shape %s, got %s" %
                             (expected, soft_labels.shape))
        check_soft_labels(soft_labels)
        self.spec = spec
        self.reqs = reqs
        self.soft_labels = soft_labels
        self.seed = seed
        self.temperature = temperature

    def __len__(self):
        return len(self.reqs)

    def __eq__(self, other):
        return isinstance(other, SoftDataset) and self.spec == other.spec and \
            self.seed == other.seed and self.temperature == other.temperature and \
            self.reqs == other.reqs and np.array_equal(self.soft_labels, other.soft_labels)
