"""
End-to-end experiments.

experiment_large trains the large imitation model on wide (cloud scale)
distributions and compares it with the oracle and the baselines.
experiment_kd compresses that model into a small student by distillation on
a small edge-scale set, and compares the student with a network of the same
size trained directly on the oracle labels. experiment_delay measures the
per-decision inference delay of the policies.

Every experiment is reproducible from its seed; the sub-seeds of the
datasets, the model initialization and the random baseline are derived
from it with numpy's SeedSequence.
"""

import logging

import numpy as np
import pandas as pd

from meclib.analysis.evaluation import bench_inference, bench_policies, delay_table, evaluate
from meclib.data.containers.report import PolicyReportCollection
from meclib.processing import workload
from meclib.processing.network import distill, imitation, mlp
from meclib.processing.solvers import ExhaustivePolicy, FixedPolicy, GreedyPolicy, RandomPolicy
from meclib.data.definitions import Location, default_temperature_c

log = logging.getLogger(__name__)

teacher_name_c = "Large DIL"
student_name_c = "KD-DIL"
baseline_student_name_c = "Baseline DIL"


def default_teacher_config(seed):
    return mlp.TrainConfig(learning_rate=1e-3, batch_size=128, epochs=50, seed=seed,
                           validation_fraction=0.1, patience=10)


def default_student_config(seed):
    return mlp.TrainConfig(learning_rate=1e-3, batch_size=128, epochs=300, seed=seed,
                           validation_fraction=0.1, patience=30)


def derive_seeds(seed, count):
    """ count independent integer seeds derived from one run seed """
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(count)]


class LargeExperiment(object):
    """
    Artifacts and reports of experiment_large.
    """

    def __init__(self, teacher, codec, trainset, testset, reports):
        self.teacher = teacher
        self.codec = codec
        self.trainset = trainset
        self.testset = testset
        self.reports = reports


class KdExperiment(object):
    """
    Artifacts and reports of experiment_kd.
    """

    def __init__(self, student, baseline, soft_dataset, hard_dataset, reports):
        self.student = student
        self.baseline = baseline
        self.soft_dataset = soft_dataset
        self.hard_dataset = hard_dataset
        self.reports = reports


def large_policies(teacher, codec, seed):
    return [ExhaustivePolicy(),
            imitation.ImitationPolicy(teacher, codec, teacher_name_c),
            GreedyPolicy(),
            FixedPolicy(Location.DEVICE),
            FixedPolicy(Location.EDGE),
            FixedPolicy(Location.CLOUD),
            RandomPolicy(seed)]


def experiment_large(seed, n_train=100000, n_test=10000, hidden=imitation.teacher_hidden_c,
                     cfg=None, workers=1):
    """
    Generate cloud-scale training and test sets, train the teacher and
    evaluate it against Optimal, Greedy, Local, Edge, Cloud and Random.

    :param seed:    run seed
    :param n_train: training set size
    :param n_test:  test set size
    :param hidden:  hidden layer widths of the teacher
    :param cfg:     mlp.TrainConfig; its seed is replaced by a derived one
    :param workers: labeling processes
    :return:        a LargeExperiment
    """
    train_seed, test_seed, model_seed, random_seed = derive_seeds(seed, 4)
    spec = workload.preset("cloud_scale")

    log.info("Generating %i training and %i test samples", n_train, n_test)
    trainset = workload.generate_dataset(spec, n_train, seed=train_seed, workers=workers)
    testset = workload.generate_dataset(spec, n_test, seed=test_seed, workers=workers)

    cfg = (cfg or default_teacher_config(model_seed)).copy(seed=model_seed)
    arch = mlp.Architecture(spec.input_dim, hidden, spec.num_subtasks)
    teacher, codec = imitation.train_teacher(trainset, arch, cfg)

    reports = evaluate(large_policies(teacher, codec, random_seed), testset)
    return LargeExperiment(teacher, codec, trainset, testset, reports)


def experiment_kd(seed, teacher, codec, testset, n_train=1000,
                  temperature=default_temperature_c, hidden=imitation.student_hidden_c,
                  cfg=None, workers=1):
    """
    Distill the teacher into a small student on edge-scale requirements and
    compare it with an identical network trained on the oracle labels of the
    same requirements. Both are evaluated, with Greedy and Optimal, on the
    test set of the large experiment.

    :param seed:        run seed
    :param teacher:     the teacher MlpModel
    :param codec:       the teacher's FeatureCodec
    :param testset:     the cloud-scale test set
    :param n_train:     number of edge-scale requirements
    :param temperature: softening temperature
    :param hidden:      hidden layer widths of both small networks
    :param cfg:         mlp.TrainConfig; its seed is replaced by a derived one
    :return:            a KdExperiment
    """
    imitation.check_compatible(teacher, codec)
    data_seed, model_seed = derive_seeds(seed, 2)
    edge_spec = workload.preset("edge_scale")

    # The oracle labels are only used by the baseline network
    hard = workload.generate_dataset(edge_spec, n_train, seed=data_seed, workers=workers)
    soft = distill.distill_dataset(teacher, codec, edge_spec, hard.requirements,
                                   temperature, seed=data_seed)

    cfg = (cfg or default_student_config(model_seed)).copy(seed=model_seed)
    arch = mlp.Architecture(codec.input_dim, hidden, codec.num_subtasks)

    # Features are encoded with the teacher's codec so the student can
    # stand in for the teacher.
    student = distill.train_student(soft, arch, cfg, codec=codec)
    features = codec.encode_many(hard.requirements)
    baseline = mlp.train(arch, features, imitation.one_hot(hard.label_array()), cfg)

    policies = [ExhaustivePolicy(),
                imitation.ImitationPolicy(student, codec, student_name_c),
                imitation.ImitationPolicy(baseline, codec, baseline_student_name_c),
                GreedyPolicy()]
    reports = evaluate(policies, testset)
    return KdExperiment(student, baseline, soft, hard, reports)


def experiment_kd_seeds(seeds, teacher, codec, testset, **kwargs):
    """
    Repeat experiment_kd for several seeds.

    :return: pandas.DataFrame indexed by policy name with the mean and the
             standard deviation of the normalized latency
    """
    frames = []
    for seed in seeds:
        df = experiment_kd(seed, teacher, codec, testset, **kwargs).reports.as_dataframe()
        df["seed"] = seed
        frames.append(df)
    df = pd.concat(frames, ignore_index=True)
    summary = df.groupby("name", sort=False)["normalized_latency"].agg(["mean", "std"])
    return summary.rename(columns={"mean": "normalized_latency", "std": "normalized_latency_std"})


def experiment_delay(teacher, student, codec, reqs, repetitions=1, oracle_decisions=1000):
    """
    Per-decision delay of Greedy, the exhaustive oracle, the teacher and the
    student, normalized to Greedy. Every policy is timed on reqs except the
    oracle, which is timed on the first oracle_decisions of them only.

    :return: pandas.DataFrame as from bench_policies
    """
    if len(reqs) == 0:
        raise ValueError("Cannot measure delays on an empty list of requirements")
    fast = [GreedyPolicy(),
            imitation.ImitationPolicy(teacher, codec, teacher_name_c),
            imitation.ImitationPolicy(student, codec, student_name_c)]
    table = bench_policies(fast, reqs, repetitions)

    oracle = ExhaustivePolicy()
    delays = list(zip(table["name"], table["mean_inference_delay_s"]))
    oracle_delay = bench_inference(oracle, reqs[:oracle_decisions], repetitions)
    delays.insert(1, (oracle.name, oracle_delay))
    return delay_table(delays, reference="Greedy")


# region Acceptance checks

def check_large(reports, max_normalized=1.2):
    """
    The observations of the large experiment, as (description, passed) pairs.
    """
    assert isinstance(reports, PolicyReportCollection)
    latency = {r.name: r.mean_latency for r in reports}
    normalized = {r.name: r.normalized_latency for r in reports}
    others = [name for name in latency if name != "Random"]
    return [
        ("Optimal is normalized to 1.0 and is the minimum",
         normalized["Optimal"] == 1.0 and min(normalized.values()) >= 1.0 - 1e-12),
        ("%s normalized latency <= %g" % (teacher_name_c, max_normalized),
         normalized[teacher_name_c] <= max_normalized),
        ("Edge < Local", latency["Edge"] < latency["Local"]),
        ("Edge < Cloud", latency["Edge"] < latency["Cloud"]),
        ("Random is the worst policy",
         all(latency["Random"] > latency[name] for name in others)),
        ("%s beats Greedy" % teacher_name_c, latency[teacher_name_c] < latency["Greedy"]),
    ]


def check_kd(summary, teacher_arch, student_arch, max_ratio=0.01):
    """
    :param summary:      normalized latency per policy, as from experiment_kd_seeds
    :param teacher_arch: mlp.Architecture of the teacher
    :param student_arch: mlp.Architecture of the students
    """
    ratio = mlp.param_count(student_arch) / float(mlp.param_count(teacher_arch))
    kd = summary.loc[student_name_c, "normalized_latency"]
    base = summary.loc[baseline_student_name_c, "normalized_latency"]
    return [
        ("%s (%.4f) < %s (%.4f)" % (student_name_c, kd, baseline_student_name_c, base), kd < base),
        ("Parameter ratio %.4f%% <= %g%%" % (100 * ratio, 100 * max_ratio), ratio <= max_ratio),
    ]


def check_delay(table, max_student_ratio=0.6, min_oracle_factor=10.0):
    delay = dict(zip(table["name"], table["mean_inference_delay_s"]))
    student, teacher = delay[student_name_c], delay[teacher_name_c]
    return [
        ("%s faster than %s" % (student_name_c, teacher_name_c), student < teacher),
        ("%s / %s delay ratio %.3f <= %g" % (student_name_c, teacher_name_c,
                                             student / teacher, max_student_ratio),
         student / teacher <= max_student_ratio),
        ("Optimal at least %gx slower than %s (%.1fx)" % (min_oracle_factor, teacher_name_c,
                                                         delay["Optimal"] / teacher),
         delay["Optimal"] >= min_oracle_factor * teacher),
    ]

# endregion
