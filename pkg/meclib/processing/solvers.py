"""
Offloading decision procedures that do not learn: the exhaustive oracle and
the greedy, fixed-location and random baselines.

Every procedure is wrapped in a Policy, so that the evaluation code can
treat the baselines and the learned models in the same way.
"""

import itertools

import numpy as np

from meclib.data.containers.requirement import Decision, Requirement
from meclib.data.definitions import Location, max_exhaustive_subtasks_c
from meclib.processing.latency import link_seconds, subtask_exec_seconds, total_latency


class InstanceTooLargeError(ValueError):
    pass


# region Solvers

def solve_exhaustive(req):
    """
    Enumerate all 3**|A| decisions and return the one with the smallest
    end-to-end latency, together with that latency. Candidates are visited
    in lexicographic order and only a strictly smaller latency replaces the
    incumbent, so ties go to the lexicographically smallest decision.

    :param req: a Requirement
    :return:    (Decision, seconds)
    """
    assert isinstance(req, Requirement)

    if req.num_subtasks > max_exhaustive_subtasks_c:
        raise InstanceTooLargeError(
            "Instance too large for exhaustive search: %i subtasks (limit %i)" %
            (req.num_subtasks, max_exhaustive_subtasks_c))

    best, best_latency = None, None
    for candidate in itertools.product(Location, repeat=req.num_subtasks):
        latency = total_latency(req, candidate)
        if best_latency is None or latency < best_latency:
            best, best_latency = candidate, latency

    return Decision(best), best_latency


def solve_greedy(req):
    """
    Place the subtasks one by one, each at the location that minimizes its
    own inbound transfer plus computation, given the location already chosen
    for the previous subtask. The last subtask is also charged the transfer
    of the final output back to the device.
    """
    assert isinstance(req, Requirement)

    env = req.env
    task = req.task
    last = task.num_subtasks - 1
    previous = Location.DEVICE
    locs = []
    for t, cycles in enumerate(task.eps):
        best, best_cost = None, None
        for loc in Location:
            cost = link_seconds(previous, loc, task.data[t], env) + \
                subtask_exec_seconds(cycles, loc, env)
            if t == last:
                cost += link_seconds(loc, Location.DEVICE, task.data[t + 1], env)
            if best_cost is None or cost < best_cost:
                best, best_cost = loc, cost
        locs.append(best)
        previous = best

    return Decision(locs)

# endregion

# region Policies


class Policy(object):
    """
    A decision procedure with a display name. Subclasses implement decide().
    learned is True for policies backed by a trained network; the evaluation
    reports label accuracy only for those.
    """
    learned = False

    def __init__(self, name):
        self.name = name

    def decide(self, req):
        raise NotImplementedError()

    def __call__(self, req):
        return self.decide(req)

    def fresh(self):
        """ An instance that decides like this one did when it was created """
        return self

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, self.name)


class ExhaustivePolicy(Policy):
    def __init__(self, name="Optimal"):
        super(ExhaustivePolicy, self).__init__(name)

    def decide(self, req):
        return solve_exhaustive(req)[0]


class GreedyPolicy(Policy):
    def __init__(self, name="Greedy"):
        super(GreedyPolicy, self).__init__(name)

    def decide(self, req):
        return solve_greedy(req)


class FixedPolicy(Policy):
    """
    Runs every subtask at the same location.
    """
    names = {Location.DEVICE: "Local", Location.EDGE: "Edge", Location.CLOUD: "Cloud"}

    def __init__(self, loc, name=None):
        self.loc = Location(loc)
        super(FixedPolicy, self).__init__(name or self.names[self.loc])

    def decide(self, req):
        return Decision.uniform(self.loc, req.num_subtasks)


class RandomPolicy(Policy):
    """
    Draws every location independently and uniformly. The generator state
    belongs to the instance, so an instance should not be shared between
    threads.
    """

    def __init__(self, seed, name="Random"):
        super(RandomPolicy, self).__init__(name)
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def decide(self, req):
        return Decision(self.rng.integers(0, len(Location), size=req.num_subtasks))

    def fresh(self):
        return RandomPolicy(self.seed, self.name)


def fixed_policy(loc):
    return FixedPolicy(loc)


def random_policy(seed):
    return RandomPolicy(seed)


def get_baseline_policy(name, seed=None):
    """
    Look up a non-learned policy by its command line name.

    :param name: one of baseline_names
    :param seed: seed of the random baseline
    """
    key = name.lower()
    if key == "optimal":
        return ExhaustivePolicy()
    if key == "greedy":
        return GreedyPolicy()
    if key in ("local", "device"):
        return FixedPolicy(Location.DEVICE)
    if key == "edge":
        return FixedPolicy(Location.EDGE)
    if key == "cloud":
        return FixedPolicy(Location.CLOUD)
    if key == "random":
        if seed is None:
            raise ValueError("The random baseline needs a seed")
        return RandomPolicy(seed)
    raise ValueError("Unknown baseline policy %r. Valid names are %s" %
                     (name, ", ".join(baseline_names)))


baseline_names = ("optimal", "greedy", "local", "edge", "cloud", "random")

# endregion
