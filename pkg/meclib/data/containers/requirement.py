"""
File:        requirement.py

Description:
Containers for a single offloading requirement: the subtask profile of a
linear task, the compute/network environment it runs in, and the placement
decision of every subtask. All quantities are in SI base units (cycles,
bytes, Hz, bytes/s).
"""

import math

from meclib.data.definitions import Location


def _as_float_tuple(values, name):
    try:
        values = tuple(float(v) for v in values)
    except TypeError:
        raise ValueError("%s should be a sequence of numbers" % name)
    for value in values:
        if not math.isfinite(value) or value < 0:
            raise ValueError("%s should only contain finite, non-negative "
                             "values, got %r" % (name, value))
    return values


class TaskProfile(object):
    """
    Computation (cycles) of each subtask and the data flowing into it.
    data[t] is the input of subtask t, data[|A|] is the final output that
    returns to the end device.
    """

    def __init__(self, eps, data):
        self.eps = _as_float_tuple(eps, "eps")
        self.data = _as_float_tuple(data, "data")

        if len(self.eps) == 0:
            raise ValueError("A task should contain at least one subtask")
        if len(self.data) != len(self.eps) + 1:
            raise ValueError("Expected %i data sizes for %i subtasks, got %i" %
                             (len(self.eps) + 1, len(self.eps), len(self.data)))

    @property
    def num_subtasks(self):
        return len(self.eps)

    def __eq__(self, other):
        return isinstance(other, TaskProfile) and \
            self.eps == other.eps and self.data == other.data

    def __hash__(self):
        return hash((self.eps, self.data))

    def __repr__(self):
        return "TaskProfile(eps=%r, data=%r)" % (self.eps, self.data)


class Environment(object):
    """
    Compute rates of the end device (p1) and the edge server (p2) and the
    bandwidths of the device-edge (b1) and edge-cloud (b2) links.
    """

    def __init__(self, p1, p2, b1, b2):
        values = []
        for name, value in (("p1", p1), ("p2", p2), ("b1", b1), ("b2", b2)):
            value = float(value)
            if not math.isfinite(value) or value <= 0:
                raise ValueError("%s should be finite and strictly positive, "
                                 "got %r" % (name, value))
            values.append(value)
        self.p1, self.p2, self.b1, self.b2 = values

    def as_tuple(self):
        return self.p1, self.p2, self.b1, self.b2

    def scaled(self, factor):
        """
        Returns a copy with all rates and bandwidths multiplied by factor.
        """
        return Environment(*(factor * v for v in self.as_tuple()))

    def __eq__(self, other):
        return isinstance(other, Environment) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "Environment(p1=%r, p2=%r, b1=%r, b2=%r)" % self.as_tuple()


class Requirement(object):
    """
    One offloading request S = (E, D, p1, p2, b1, b2).
    """

    def __init__(self, task, env):
        assert isinstance(task, TaskProfile)
        assert isinstance(env, Environment)

        self.task = task
        self.env = env

    @property
    def num_subtasks(self):
        return self.task.num_subtasks

    def __eq__(self, other):
        return isinstance(other, Requirement) and \
            self.task == other.task and self.env == other.env

    def __hash__(self):
        return hash((self.task, self.env))

    def __repr__(self):
        return "Requirement(%r, %r)" % (self.task, self.env)


class Decision(tuple):
    """
    Placement of every subtask. A tuple of Location values, so decisions
    compare lexicographically with Device < Edge < Cloud.
    """

    def __new__(cls, locs):
        try:
            return super(Decision, cls).__new__(cls, (Location(int(loc)) for loc in locs))
        except ValueError:
            raise ValueError("Not a valid decision: %r" % (locs,))

    @classmethod
    def uniform(cls, loc, num_subtasks):
        return cls((loc,) * num_subtasks)

    @property
    def locs(self):
        return tuple(self)

    def codes(self):
        return [int(loc) for loc in self]

    def __repr__(self):
        return "Decision(%s)" % ", ".join(str(loc) for loc in self)


def check_decision(req, dec):
    """
    Verify that a decision has one location per subtask of the requirement.
    """
    if len(dec) != req.num_subtasks:
        raise ValueError("Decision has %i locations but the task has %i subtasks" %
                         (len(dec), req.num_subtasks))
