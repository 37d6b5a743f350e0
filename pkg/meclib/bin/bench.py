"""
Per-decision inference delay of offloading policies, normalized to Greedy.

    meclib.bench --reqs test.jsonl --policy greedy --policy teacher.model \
        --policy student.model --seed 1 --decisions 100000 --out delay.csv
"""

import itertools
import logging
import sys

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.analysis.evaluation import bench_policies, resolve_policy
from meclib.data.io.dataset_io import load_requirements
from meclib.data.io.report_io import save_table
from meclib.utils.generic import format_delay


def cycle_requirements(reqs, count):
    """ count requirements, repeating reqs as needed """
    if count is None:
        return list(reqs)
    return list(itertools.islice(itertools.cycle(reqs), count))


def main(arguments=None):
    args = options.get_bench_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        _, reqs = load_requirements(args.reqs)
        reqs = cycle_requirements(reqs, args.decisions)
        policies = [resolve_policy(name, args.seed) for name in args.policies]
        table = bench_policies(policies, reqs, args.repetitions)
        save_table(table, args.out)
    except (ValueError, OSError) as e:
        print("meclib.bench: error: {}".format(e), file=sys.stderr)
        return 1

    for row in table.itertuples(index=False):
        print("{:<16} {:>12} {:>10.2f}".format(row.name, format_delay(row.mean_inference_delay_s),
                                               row.delay_normalized_to_greedy))
    print("Delay table written to {}".format(args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
