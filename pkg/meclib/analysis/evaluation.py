"""
Decision quality and inference delay of offloading policies.

Latencies are normalized by the mean latency of the oracle labels of the
test set (a ratio of means), so the optimal policy scores exactly 1.0.
"""

import logging
import os
import time

import numpy as np
import pandas as pd

from meclib.data.containers.dataset import Dataset
from meclib.data.containers.report import PolicyReport, PolicyReportCollection
from meclib.data.io.model_io import load_model
from meclib.processing.latency import total_latency
from meclib.processing.network.imitation import ImitationPolicy, decision_accuracy
from meclib.processing.solvers import baseline_names, get_baseline_policy

log = logging.getLogger(__name__)


def _normalize(value, reference):
    if reference == 0:
        return 1.0 if value == 0 else np.inf
    return value / reference


def optimal_mean_latency(testset):
    return float(np.mean([total_latency(s.req, s.label) for s in testset]))


def evaluate(policies, testset, bench_repetitions=0, reference="Greedy"):
    """
    Evaluate policies on an oracle-labeled test set.

    :param policies:          a list of Policy objects
    :param testset:           a Dataset labeled by the exhaustive oracle
    :param bench_repetitions: if > 0, also time every policy over the test
                              requirements (see bench_inference)
    :param reference:         name of the policy the delays are normalized to
    :return:                  a PolicyReportCollection
    """
    assert isinstance(testset, Dataset)
    if len(testset) == 0:
        raise ValueError("Cannot evaluate on an empty test set")

    reqs = testset.requirements
    labels = testset.label_array()
    optimum = optimal_mean_latency(testset)

    reports = PolicyReportCollection()
    for policy in policies:
        decisions = [policy(req) for req in reqs]
        mean_latency = float(np.mean([total_latency(req, dec)
                                      for req, dec in zip(reqs, decisions)]))

        per_label, exact = np.nan, np.nan
        if policy.learned:
            per_label, exact = decision_accuracy(decisions, labels)

        report = PolicyReport(policy.name, mean_latency, _normalize(mean_latency, optimum),
                              per_label, exact)
        log.info("%s: mean latency %.4f s, normalized %.4f",
                 policy.name, report.mean_latency, report.normalized_latency)
        reports.add(report)

    if bench_repetitions > 0:
        # Timing runs after the quality loop, on fresh instances
        table = bench_policies([policy.fresh() for policy in policies], reqs,
                               bench_repetitions, reference)
        for row in table.itertuples(index=False):
            report = reports[row.name]
            report.mean_inference_delay = float(row.mean_inference_delay_s)
            report.delay_normalized = float(row.delay_normalized_to_greedy)

    return reports


def bench_inference(policy, reqs, repetitions=1):
    """
    Wall-clock time per decision of a policy: the whole decision loop over
    reqs is timed, and the fastest of the repetitions is divided by the
    number of decisions. Runs in the calling thread.

    :return: seconds per decision
    """
    if len(reqs) == 0:
        raise ValueError("Cannot benchmark on an empty list of requirements")

    best = None
    for _ in range(max(1, repetitions)):
        begin = time.perf_counter()
        for req in reqs:
            policy(req)
        elapsed = time.perf_counter() - begin
        best = elapsed if best is None else min(best, elapsed)
    return best / len(reqs)


def bench_policies(policies, reqs, repetitions=1, reference="Greedy"):
    """
    Run bench_inference for every policy and normalize the delays to the
    reference policy, if it is among them.

    :return: pandas.DataFrame with columns name, mean_inference_delay_s,
             delay_normalized_to_greedy
    """
    delays = []
    for policy in policies:
        delay = bench_inference(policy, reqs, repetitions)
        log.info("%s: %.3g s per decision", policy.name, delay)
        delays.append((policy.name, delay))

    return delay_table(delays, reference)


def delay_table(delays, reference="Greedy"):
    """
    :param delays: (policy name, seconds per decision) pairs
    :return:       pandas.DataFrame with columns name, mean_inference_delay_s,
                   delay_normalized_to_greedy
    """
    df = pd.DataFrame(delays, columns=["name", "mean_inference_delay_s"])
    reference_delay = dict(delays).get(reference)
    if reference_delay:
        df["delay_normalized_to_greedy"] = df["mean_inference_delay_s"] / reference_delay
    else:
        df["delay_normalized_to_greedy"] = np.nan
    return df


def resolve_policy(name, seed=None):
    """
    A policy from its command line name: one of the baseline names, or the
    path of a model file saved with a feature codec. A model policy is named
    after the file, without the extension.
    """
    if name.lower() in baseline_names:
        return get_baseline_policy(name, seed)
    if not os.path.isfile(name):
        raise ValueError("%r is neither a baseline (%s) nor a model file" %
                         (name, ", ".join(baseline_names)))
    model, codec = load_model(name)
    if codec is None:
        raise ValueError("%s has no feature codec and cannot make decisions" % name)
    return ImitationPolicy(model, codec, os.path.splitext(os.path.basename(name))[0])
