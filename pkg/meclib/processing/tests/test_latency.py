import itertools
from unittest import TestCase

import numpy as np

from ..latency import exec_latency, link_seconds, total_latency, trans_latency
from ..workload import preset, sample_requirement
from ...data.containers.requirement import Decision, Environment, Requirement, TaskProfile
from ...data.definitions import Location

D, E, C = Location.DEVICE, Location.EDGE, Location.CLOUD


def make_w1(p1=100e6, b1=1e6):
    task = TaskProfile([200e6, 400e6], [2e6, 4e6, 1e6])
    return Requirement(task, Environment(p1, 1000e6, b1, 2e6))


def brute_force_latency(eps, data, p1, p2, b1, b2, locs):
    """ Independent calculator: explicit per-hop costs, no shared helpers """
    cost = {(0, 1): 1 / b1, (1, 2): 1 / b2, (0, 2): 1 / b1 + 1 / b2}
    path = [0] + [int(loc) for loc in locs] + [0]
    total = 0.0
    for t, size in enumerate(data):
        a, b = sorted((path[t], path[t + 1]))
        total += 0.0 if a == b else size * cost[(a, b)]
    for cycles, loc in zip(eps, locs):
        total += (cycles / p1, cycles / p2, 0.0)[int(loc)]
    return total


class TestLinkSeconds(TestCase):
    def setUp(self):
        self.env = Environment(100e6, 1000e6, 1e6, 2e6)

    def test_same_location_is_free(self):
        self.assertEqual(link_seconds(D, D, 5e6, self.env), 0.0)

    def test_device_edge(self):
        self.assertAlmostEqual(link_seconds(D, E, 2e6, self.env), 2.0, places=12)

    def test_device_cloud_crosses_both_links(self):
        self.assertAlmostEqual(link_seconds(D, C, 2e6, self.env), 3.0, places=12)

    def test_symmetric(self):
        for a, b in itertools.product(Location, repeat=2):
            self.assertEqual(link_seconds(a, b, 1.5e6, self.env),
                             link_seconds(b, a, 1.5e6, self.env))


class TestLatency(TestCase):
    def setUp(self):
        self.w1 = make_w1()

    def test_exec_latency(self):
        self.assertAlmostEqual(exec_latency(self.w1, Decision((D, D))), 6.0, places=12)
        self.assertEqual(exec_latency(self.w1, Decision((C, C))), 0.0)
        self.assertAlmostEqual(exec_latency(self.w1, Decision((E, E))), 0.6, places=12)

    def test_trans_latency(self):
        self.assertEqual(trans_latency(self.w1, Decision((D, D))), 0.0)
        self.assertAlmostEqual(trans_latency(self.w1, Decision((E, E))), 3.0, places=12)
        self.assertAlmostEqual(trans_latency(self.w1, Decision((E, C))), 5.5, places=12)

    def test_total_latency(self):
        self.assertAlmostEqual(total_latency(self.w1, Decision((E, E))), 3.6, places=12)
        self.assertAlmostEqual(total_latency(self.w1, Decision((C, C))), 4.5, places=12)
        self.assertAlmostEqual(total_latency(self.w1, Decision((D, D))), 6.0, places=12)

    def test_matches_brute_force_calculator(self):
        task, env = self.w1.task, self.w1.env
        for locs in itertools.product(Location, repeat=2):
            expected = brute_force_latency(task.eps, task.data, *env.as_tuple(), locs=locs)
            self.assertAlmostEqual(total_latency(self.w1, Decision(locs)), expected, delta=1e-12)

    def test_total_is_sum_of_parts(self):
        rng = np.random.default_rng(3)
        spec = preset("cloud_scale")
        for _ in range(20):
            req = sample_requirement(spec, rng)
            dec = Decision(rng.integers(0, 3, size=req.num_subtasks))
            self.assertEqual(total_latency(req, dec),
                             exec_latency(req, dec) + trans_latency(req, dec))

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            total_latency(self.w1, Decision((D, D, D)))

    def test_uniform_decisions(self):
        rng = np.random.default_rng(5)
        spec = preset("cloud_scale")
        for _ in range(20):
            req = sample_requirement(spec, rng)
            n = req.num_subtasks
            self.assertEqual(trans_latency(req, Decision.uniform(D, n)), 0.0)
            self.assertEqual(exec_latency(req, Decision.uniform(C, n)), 0.0)

    def test_monotone_in_cycles_and_bandwidth(self):
        rng = np.random.default_rng(11)
        spec = preset("cloud_scale")
        for _ in range(20):
            req = sample_requirement(spec, rng)
            dec = Decision(rng.integers(0, 3, size=req.num_subtasks))
            base = total_latency(req, dec)

            eps = list(req.task.eps)
            eps[rng.integers(0, len(eps))] += 1e8
            heavier = Requirement(TaskProfile(eps, req.task.data), req.env)
            self.assertGreaterEqual(total_latency(heavier, dec), base)

            p1, p2, b1, b2 = req.env.as_tuple()
            faster = Requirement(req.task, Environment(p1, p2, 2 * b1, 2 * b2))
            self.assertLessEqual(total_latency(faster, dec), base)

    def test_scale_invariance(self):
        rng = np.random.default_rng(17)
        spec = preset("cloud_scale")
        for _ in range(100):
            req = sample_requirement(spec, rng)
            for c in (0.1, 3.0, 10.0):
                scaled = Requirement(req.task, req.env.scaled(c))
                for _ in range(10):
                    dec = Decision(rng.integers(0, 3, size=req.num_subtasks))
                    expected = total_latency(req, dec) / c
                    self.assertLessEqual(abs(total_latency(scaled, dec) - expected),
                                         1e-9 * expected)
