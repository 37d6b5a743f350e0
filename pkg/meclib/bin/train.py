"""
Train an imitation model on the oracle labels of a dataset.

    meclib.train --data train.jsonl --arch 256x5 --seed 1 --out teacher.model
"""

import logging
import sys
import time

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.data.containers.dataset import Dataset
from meclib.data.io.dataset_io import load_dataset
from meclib.data.io.model_io import save_model
from meclib.processing.network import imitation, mlp
from meclib.utils.generic import format_time_string


def main(arguments=None):
    args = options.get_train_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        dataset = load_dataset(args.data)
        if not isinstance(dataset, Dataset):
            raise ValueError("%s holds soft labels; use meclib.distill to train on them" %
                             args.data)

        spec = dataset.spec
        arch = mlp.Architecture(spec.input_dim, args.arch, spec.num_subtasks)
        cfg = mlp.TrainConfig.from_options(args)

        begin = time.time()
        model, codec = imitation.train_teacher(dataset, arch, cfg)
        save_model(model, args.out, codec)
        per_label, exact = imitation.accuracy(model, codec, dataset)
    except (ValueError, OSError) as e:
        print("meclib.train: error: {}".format(e), file=sys.stderr)
        return 1

    print("Trained {} ({} parameters) on {} samples in {}".format(
        arch, mlp.param_count(arch), len(dataset), format_time_string(time.time() - begin)))
    print("Training set accuracy: per label {:.4f}, exact match {:.4f}".format(per_label, exact))
    print("Model written to {}".format(args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
