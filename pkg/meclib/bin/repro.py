"""
One-shot reproduction of the offloading experiments.

    meclib.repro fig5 --seed 1     # large model against the baselines
    meclib.repro fig6 --seed 1     # distilled student against a directly trained one
    meclib.repro table1 --seed 1   # per-decision inference delay

fig6 and table1 need a teacher and a test set. They are trained and drawn
first, unless saved ones are passed with --teacher and --test; fig5 saves
them to the output directory for that purpose.
"""

import logging
import os
import sys
import time

import numpy as np

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.analysis import experiments
from meclib.analysis.evaluation import evaluate
from meclib.data.containers.dataset import Dataset
from meclib.data.containers.report import PolicyReport, PolicyReportCollection
from meclib.data.io.dataset_io import load_dataset, save_dataset
from meclib.data.io.model_io import load_model, save_model
from meclib.data.io.report_io import save_reports, save_table
from meclib.processing.network import mlp
from meclib.ui.plots import latency as latency_plots
from meclib.utils.generic import format_delay, format_time_string


def get_teacher(args):
    """
    The teacher, its codec, the cloud-scale test set and, when the teacher
    was trained here, the reports of the large experiment.
    """
    if args.teacher_file is not None:
        teacher, codec = load_model(args.teacher_file)
        if codec is None:
            raise ValueError("%s has no feature codec" % args.teacher_file)
        testset = load_dataset(args.test_file)
        if not isinstance(testset, Dataset):
            raise ValueError("%s is not an oracle-labeled test set" % args.test_file)
        return teacher, codec, testset, None

    print("Training the large model on {} samples".format(args.n_train))
    cfg = experiments.default_teacher_config(args.seed).copy(epochs=args.teacher_epochs)
    result = experiments.experiment_large(args.seed, args.n_train, args.n_test,
                                          hidden=args.teacher_arch, cfg=cfg,
                                          workers=args.workers)
    save_model(result.teacher, os.path.join(args.pathout, "teacher.model"), result.codec)
    save_dataset(result.testset, os.path.join(args.pathout, "test.jsonl"))
    return result.teacher, result.codec, result.testset, result.reports


def student_config(args):
    return experiments.default_student_config(args.seed).copy(epochs=args.student_epochs)


def print_checks(checks):
    for description, passed in checks:
        print("{} {}".format("PASS" if passed else "FAIL", description))


def run_fig5(args):
    teacher, codec, testset, reports = get_teacher(args)
    if reports is None:
        random_seed = experiments.derive_seeds(args.seed, 4)[3]
        reports = evaluate(experiments.large_policies(teacher, codec, random_seed), testset)

    path = os.path.join(args.pathout, "fig5_report.csv")
    save_reports(reports, path)
    print(reports.as_dataframe().to_string(index=False))
    print("Report written to {}".format(path))

    if args.save_plots:
        fig = latency_plots.plot_normalized_latency(reports)
        fig.savefig(os.path.join(args.pathout, "fig5_normalized_latency.png"), dpi=150)

    print_checks(experiments.check_large(reports))


def run_fig6(args):
    teacher, codec, testset, _ = get_teacher(args)
    seeds = experiments.derive_seeds(args.seed, args.kd_seeds)
    print("Distilling on {} edge-scale requirements, {} seed(s)".format(
        args.kd_n_train, len(seeds)))
    summary = experiments.experiment_kd_seeds(seeds, teacher, codec, testset,
                                              n_train=args.kd_n_train,
                                              temperature=args.temperature,
                                              hidden=args.student_arch,
                                              cfg=student_config(args),
                                              workers=args.workers)

    path = os.path.join(args.pathout, "fig6_report.csv")
    save_table(summary, path, index=True)
    print(summary.to_string())
    print("Report written to {}".format(path))

    if args.save_plots:
        reports = PolicyReportCollection(PolicyReport(name, np.nan, value)
                                         for name, value in summary["normalized_latency"].items())
        fig = latency_plots.plot_normalized_latency(reports)
        fig.savefig(os.path.join(args.pathout, "fig6_normalized_latency.png"), dpi=150)

    student_arch = mlp.Architecture(codec.input_dim, args.student_arch, codec.num_subtasks)
    print_checks(experiments.check_kd(summary, teacher.arch, student_arch))


def run_table1(args):
    teacher, codec, testset, _ = get_teacher(args)
    kd_seed = experiments.derive_seeds(args.seed, 1)[0]
    result = experiments.experiment_kd(kd_seed, teacher, codec, testset,
                                       n_train=args.kd_n_train,
                                       temperature=args.temperature,
                                       hidden=args.student_arch,
                                       cfg=student_config(args),
                                       workers=args.workers)

    reqs = testset.requirements
    reqs = [reqs[i % len(reqs)] for i in range(args.decisions)]
    print("Timing {} decisions per policy".format(len(reqs)))
    table = experiments.experiment_delay(teacher, result.student, codec, reqs,
                                         repetitions=args.repetitions)

    path = os.path.join(args.pathout, "table1_delay.csv")
    save_table(table, path)
    for row in table.itertuples(index=False):
        print("{:<16} {:>12} {:>10.2f}".format(row.name, format_delay(row.mean_inference_delay_s),
                                               row.delay_normalized_to_greedy))
    print("Delay table written to {}".format(path))

    if args.save_plots:
        fig = latency_plots.plot_delay_table(table)
        fig.savefig(os.path.join(args.pathout, "table1_delay.png"), dpi=150)

    print_checks(experiments.check_delay(table))


def main(arguments=None):
    args = options.get_repro_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    runners = {"fig5": run_fig5, "fig6": run_fig6, "table1": run_table1}

    begin = time.time()
    try:
        if not os.path.isdir(args.pathout):
            os.makedirs(args.pathout)
        runners[args.experiment](args)
    except (ValueError, OSError) as e:
        print("meclib.repro: error: {}".format(e), file=sys.stderr)
        return 1

    print("Done in {}".format(format_time_string(time.time() - begin)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
