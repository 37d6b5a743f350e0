"""
End-to-end latency of a linear task whose subtasks are placed on the end
device, the edge server or the cloud.

The edge server relays all traffic between the device and the cloud, so a
device-cloud transfer crosses both links. Computation at the cloud is
considered free. The task input originates from, and the final output
returns to, the end device.
"""

from meclib.data.containers.requirement import check_decision
from meclib.data.definitions import Location


def link_seconds(source, destination, nbytes, env):
    """
    Time to move nbytes between two locations.

    :param source:      Location where the data is
    :param destination: Location where the data is needed
    :param nbytes:      data size in bytes
    :param env:         an Environment with the link bandwidths
    :return:            seconds
    """
    if source == destination:
        return 0.0
    hops = {source, destination}
    if hops == {Location.DEVICE, Location.EDGE}:
        return nbytes / env.b1
    if hops == {Location.EDGE, Location.CLOUD}:
        return nbytes / env.b2
    return nbytes / env.b1 + nbytes / env.b2


def subtask_exec_seconds(cycles, loc, env):
    if loc == Location.DEVICE:
        return cycles / env.p1
    if loc == Location.EDGE:
        return cycles / env.p2
    return 0.0


def exec_latency(req, dec):
    """
    Sum of the computation latencies of all subtasks.
    """
    check_decision(req, dec)
    env = req.env
    total = 0.0
    for cycles, loc in zip(req.task.eps, dec):
        total += subtask_exec_seconds(cycles, loc, env)
    return total


def trans_latency(req, dec):
    """
    Sum of the transfer latencies, including the ingress transfer of the task
    input and the egress transfer of the final output to the device.
    """
    check_decision(req, dec)
    env = req.env
    total = 0.0
    previous = Location.DEVICE
    for nbytes, loc in zip(req.task.data, tuple(dec) + (Location.DEVICE,)):
        total += link_seconds(previous, loc, nbytes, env)
        previous = loc
    return total


def total_latency(req, dec):
    return exec_latency(req, dec) + trans_latency(req, dec)
