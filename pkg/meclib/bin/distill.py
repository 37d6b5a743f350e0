"""
Distill a teacher model into a small student.

    meclib.distill --teacher teacher.model --reqs edge.jsonl --temp 5 --arch 32x2 \
        --seed 1 --out student.model
"""

import logging
import sys
import time

import meclib.ui.cli.meclib_entry_point_options as options
from meclib.data.io.dataset_io import load_requirements, save_dataset
from meclib.data.io.model_io import load_model, save_model
from meclib.processing.network import distill, mlp
from meclib.utils.generic import format_time_string


def main(arguments=None):
    args = options.get_distill_script_options(sys.argv[1:] if arguments is None else arguments)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        teacher, codec = load_model(args.teacher)
        if codec is None:
            raise ValueError("%s has no feature codec" % args.teacher)
        spec, reqs = load_requirements(args.reqs)

        begin = time.time()
        soft = distill.distill_dataset(teacher, codec, spec, reqs, args.temperature,
                                       seed=args.seed)
        if args.soft_out is not None:
            save_dataset(soft, args.soft_out)

        arch = mlp.Architecture(codec.input_dim, args.arch, codec.num_subtasks)
        cfg = mlp.TrainConfig.from_options(args)
        student = distill.train_student(soft, arch, cfg, codec=codec)
        save_model(student, args.out, codec)
    except (ValueError, OSError) as e:
        print("meclib.distill: error: {}".format(e), file=sys.stderr)
        return 1

    ratio = mlp.param_count(student.arch) / float(mlp.param_count(teacher.arch))
    print("Distilled {} into {} at T={:g} on {} requirements in {}".format(
        teacher.arch, student.arch, args.temperature, len(reqs),
        format_time_string(time.time() - begin)))
    print("Student has {} parameters, {:.2%} of the teacher".format(
        mlp.param_count(student.arch), ratio))
    print("Model written to {}".format(args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
