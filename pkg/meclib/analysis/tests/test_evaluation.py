import os
import tempfile
from unittest import TestCase

import numpy as np

from ..evaluation import bench_inference, bench_policies, evaluate, optimal_mean_latency, \
    resolve_policy
from ...data.containers.dataset import Dataset, DistributionSpec, LabeledSample
from ...data.containers.requirement import Decision, Environment, Requirement, TaskProfile
from ...data.definitions import Location
from ...data.io.model_io import save_model
from ...processing.network.imitation import FeatureCodec, ImitationPolicy
from ...processing.network.mlp import Architecture, MlpModel
from ...processing.solvers import ExhaustivePolicy, FixedPolicy, GreedyPolicy, RandomPolicy
from ...processing.workload import generate_dataset, preset


def make_w1_dataset():
    spec = preset("cloud_scale")
    spec = DistributionSpec(2, spec.eps_range, spec.d_range, spec.p1_range, spec.p2_range,
                            spec.b1_range, spec.b2_range)
    req = Requirement(TaskProfile([200e6, 400e6], [2e6, 4e6, 1e6]),
                      Environment(100e6, 1000e6, 1e6, 2e6))
    return Dataset(spec, [LabeledSample(req, [1, 1])])


class TestEvaluate(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.testset = generate_dataset(preset("cloud_scale"), 30, seed=21)

    def test_optimal_is_one_and_minimum(self):
        policies = [ExhaustivePolicy(), GreedyPolicy(), FixedPolicy(Location.DEVICE),
                    FixedPolicy(Location.EDGE), FixedPolicy(Location.CLOUD), RandomPolicy(1)]
        reports = evaluate(policies, self.testset)
        self.assertEqual(reports.names, ["Optimal", "Greedy", "Local", "Edge", "Cloud", "Random"])
        self.assertEqual(reports["Optimal"].normalized_latency, 1.0)
        for report in reports:
            self.assertGreaterEqual(report.normalized_latency, 1.0 - 1e-12)
            self.assertTrue(np.isnan(report.per_label_accuracy))
            self.assertTrue(np.isnan(report.mean_inference_delay))

    def test_ratio_of_means(self):
        testset = make_w1_dataset()
        reports = evaluate([FixedPolicy(Location.DEVICE), FixedPolicy(Location.CLOUD)], testset)
        self.assertAlmostEqual(optimal_mean_latency(testset), 3.6, places=12)
        self.assertAlmostEqual(reports["Local"].mean_latency, 6.0, places=12)
        self.assertAlmostEqual(reports["Local"].normalized_latency, 6.0 / 3.6, places=12)
        self.assertAlmostEqual(reports["Cloud"].normalized_latency, 4.5 / 3.6, places=12)

    def test_learned_policy_accuracy(self):
        codec = FeatureCodec(self.testset.spec)
        model = MlpModel.zeros(Architecture(codec.input_dim, (), codec.num_subtasks))
        reports = evaluate([ImitationPolicy(model, codec, "Zero")], self.testset)
        labels = self.testset.label_array()
        report = reports["Zero"]
        self.assertAlmostEqual(report.per_label_accuracy, np.mean(labels == 0))
        self.assertAlmostEqual(report.exact_match, np.mean(np.all(labels == 0, axis=1)))
        self.assertLessEqual(report.exact_match, report.per_label_accuracy)

    def test_with_delays(self):
        reports = evaluate([GreedyPolicy(), FixedPolicy(Location.EDGE)], self.testset,
                           bench_repetitions=1)
        self.assertEqual(reports["Greedy"].delay_normalized, 1.0)
        self.assertGreater(reports["Edge"].mean_inference_delay, 0.0)

    def test_timing_leaves_quality_unchanged(self):
        plain = evaluate([RandomPolicy(5), GreedyPolicy()], self.testset)
        timed = evaluate([RandomPolicy(5), GreedyPolicy()], self.testset, bench_repetitions=1)
        for name in ("Random", "Greedy"):
            self.assertEqual(timed[name].mean_latency, plain[name].mean_latency)
            self.assertEqual(timed[name].normalized_latency, plain[name].normalized_latency)
        self.assertGreater(timed["Random"].mean_inference_delay, 0.0)
        self.assertEqual(timed["Greedy"].delay_normalized, 1.0)

    def test_timing_does_not_advance_the_policy(self):
        policy = RandomPolicy(5)
        evaluate([policy], self.testset, bench_repetitions=2)
        again = RandomPolicy(5)
        for req in self.testset.requirements:
            again(req)
        self.assertEqual(policy(self.testset[0].req), again(self.testset[0].req))

    def test_empty(self):
        with self.assertRaises(ValueError):
            evaluate([GreedyPolicy()], Dataset(self.testset.spec, []))

    def test_deterministic(self):
        first = evaluate([GreedyPolicy(), RandomPolicy(3)], self.testset).as_dataframe()
        second = evaluate([GreedyPolicy(), RandomPolicy(3)], self.testset).as_dataframe()
        self.assertTrue(first.equals(second))


class TestBench(TestCase):
    def setUp(self):
        self.reqs = generate_dataset(preset("cloud_scale"), 5, labeler=GreedyPolicy(),
                                     seed=2).requirements

    def test_positive_delay(self):
        self.assertGreater(bench_inference(GreedyPolicy(), self.reqs, repetitions=2), 0.0)

    def test_empty(self):
        with self.assertRaises(ValueError):
            bench_inference(GreedyPolicy(), [])

    def test_table(self):
        table = bench_policies([FixedPolicy(Location.EDGE), GreedyPolicy()], self.reqs)
        self.assertListEqual(list(table.columns),
                             ["name", "mean_inference_delay_s", "delay_normalized_to_greedy"])
        self.assertEqual(table.loc[table["name"] == "Greedy",
                                   "delay_normalized_to_greedy"].item(), 1.0)

    def test_without_reference(self):
        table = bench_policies([FixedPolicy(Location.EDGE)], self.reqs)
        self.assertTrue(table["delay_normalized_to_greedy"].isna().all())

    def test_oracle_slower_than_network(self):
        codec = FeatureCodec(preset("cloud_scale"))
        model = MlpModel.initialize(Architecture(17, (32, 32), 6), np.random.default_rng(0))
        network = bench_inference(ImitationPolicy(model, codec), self.reqs, repetitions=3)
        oracle = bench_inference(ExhaustivePolicy(), self.reqs, repetitions=1)
        self.assertGreater(oracle, network)


class TestResolvePolicy(TestCase):
    def test_baselines(self):
        self.assertIsInstance(resolve_policy("optimal"), ExhaustivePolicy)
        self.assertEqual(resolve_policy("Local").name, "Local")
        self.assertIsInstance(resolve_policy("random", seed=1), RandomPolicy)

    def test_model_file(self):
        codec = FeatureCodec(preset("cloud_scale"))
        model = MlpModel.zeros(Architecture(17, (), 6))
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "student.model")
            save_model(model, path, codec)
            policy = resolve_policy(path)
            self.assertTrue(policy.learned)
            self.assertEqual(policy.name, "student")

            bare = os.path.join(directory, "bare.model")
            save_model(model, bare)
            with self.assertRaises(ValueError):
                resolve_policy(bare)

    def test_unknown(self):
        with self.assertRaises(ValueError):
            resolve_policy("no-such-policy")

    def test_decision_type(self):
        self.assertEqual(resolve_policy("edge")(make_w1_dataset()[0].req), Decision([1, 1]))
