"""
Generate a labeled offloading dataset.

    meclib.gen --spec cloud --n 10000 --seed 7 --out train.jsonl
"""

import logging
import sys
import time

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.data.io.dataset_io import load_distribution_spec, save_dataset
from meclib.processing import workload
from meclib.processing.solvers import get_baseline_policy
from meclib.utils.generic import format_time_string


def main(arguments=None):
    args = options.get_gen_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        if args.spec_file is not None:
            spec = load_distribution_spec(args.spec_file)
        else:
            spec = workload.preset(args.spec)
        labeler = get_baseline_policy(args.labeler, args.seed)

        begin = time.time()
        dataset = workload.generate_dataset(spec, args.num_samples, labeler,
                                            seed=args.seed, workers=args.workers)
        save_dataset(dataset, args.out)
    except (ValueError, OSError) as e:
        print("meclib.gen: error: {}".format(e), file=sys.stderr)
        return 1

    print("Wrote {} samples of {} subtasks to {} in {}".format(
        len(dataset), spec.num_subtasks, args.out, format_time_string(time.time() - begin)))
    print("Label distribution:")
    print(workload.label_distribution(dataset).round(3).to_string())
    return 0


if __name__ == "__main__":
    sys.exit(main())
