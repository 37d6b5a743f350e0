"""
Evaluate offloading policies on an oracle-labeled test set.

    meclib.eval --test test.jsonl --policy optimal --policy greedy \
        --policy teacher.model --seed 1 --out report.csv
"""

import logging
import sys

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.analysis.evaluation import evaluate, resolve_policy
from meclib.data.containers.dataset import Dataset
from meclib.data.io.dataset_io import load_dataset
from meclib.data.io.report_io import save_reports


def main(arguments=None):
    args = options.get_eval_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        testset = load_dataset(args.test)
        if not isinstance(testset, Dataset):
            raise ValueError("%s is not an oracle-labeled test set" % args.test)
        policies = [resolve_policy(name, args.seed) for name in args.policies]
        reports = evaluate(policies, testset, bench_repetitions=args.bench_repetitions)
        save_reports(reports, args.out)
    except (ValueError, OSError) as e:
        print("meclib.eval: error: {}".format(e), file=sys.stderr)
        return 1

    print(reports.as_dataframe().to_string(index=False))
    print("Report written to {}".format(args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
