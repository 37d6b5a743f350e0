"""
File: meclib_entry_point_options.py

In this file the command line argument interface is configured
for the various *meclib* entry points, that can be found in the
/bin directory.
"""

import argparse

import meclib.ui.cli.argparse_helpers as helpers
from meclib.processing.network.imitation import student_hidden_c, teacher_hidden_c
from meclib.data.definitions import default_temperature_c
from meclib.ui.cli.distill_options import get_distill_options_group
from meclib.ui.cli.training_options import get_training_options_group
from meclib.ui.cli.workload_options import get_workload_options_group


def _architecture_string(hidden):
    return "%ix%i" % (hidden[0], len(hidden))


# region Dataset generation

def get_gen_script_options(arguments):
    """ Command line options for the dataset generation script

    Arguments:
        arguments {tuple} -- Command line parameters as a tuple of strings,
        typically obtained as sys.argv[1:]. But one can of course just use
        string.split(" "), if using in a notebook for example.

    Returns:
        [Namespace object] -- Simple class used by default by parse_args()
        to create an object holding attributes and return it.
    """
    parser = argparse.ArgumentParser(description='Generate an offloading dataset',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True)
    parser.add_argument('--out', required=True, help='Output dataset file (.jsonl)')
    parser = get_common_options_group(parser)
    parser = get_workload_options_group(parser)
    return parser.parse_args(arguments)

# endregion

# region Training scripts


def get_train_script_options(arguments):
    parser = argparse.ArgumentParser(description='Train an imitation model on oracle labels',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--data', type=helpers.parse_is_file, required=True,
                        help='Labeled training dataset file')
    parser.add_argument('--arch', type=helpers.parse_architecture,
                        default=_architecture_string(teacher_hidden_c),
                        help='Hidden layers as WxN: N layers of width W')
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True)
    parser.add_argument('--out', required=True, help='Output model file')
    parser = get_common_options_group(parser)
    parser = get_training_options_group(parser)
    return parser.parse_args(arguments)


def get_distill_script_options(arguments):
    parser = argparse.ArgumentParser(description='Distill a teacher model into a student',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--arch', type=helpers.parse_architecture,
                        default=_architecture_string(student_hidden_c),
                        help='Hidden layers of the student as WxN')
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True)
    parser.add_argument('--out', required=True, help='Output student model file')
    parser = get_common_options_group(parser)
    parser = get_distill_options_group(parser)
    parser = get_training_options_group(parser, epochs=300, patience=30)
    return parser.parse_args(arguments)

# endregion

# region Evaluation scripts


def get_eval_script_options(arguments):
    parser = argparse.ArgumentParser(description='Evaluate offloading policies on a test set',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--test', type=helpers.parse_is_file, required=True,
                        help='Oracle-labeled test dataset file')
    parser.add_argument('--policy', dest='policies', action='append', required=True,
                        help='A baseline name (optimal, greedy, local, edge, cloud, random) '
                             'or a model file. Repeat for several policies.')
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True,
                        help='Seed of the random baseline')
    parser.add_argument('--out', required=True, help='Output report (.csv)')
    parser.add_argument('--bench-repetitions', type=int, default=0,
                        help='If positive, also time every policy over the test set')
    parser = get_common_options_group(parser)
    return parser.parse_args(arguments)


def get_bench_script_options(arguments):
    parser = argparse.ArgumentParser(description='Measure the inference delay of policies',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--reqs', type=helpers.parse_is_file, required=True,
                        help='Dataset file with the requirements to decide')
    parser.add_argument('--policy', dest='policies', action='append', required=True,
                        help='A baseline name or a model file. Repeat for several policies.')
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True,
                        help='Seed of the random baseline')
    parser.add_argument('--decisions', type=helpers.ensure_count, default=None,
                        help='Number of timed decisions; the requirements are cycled. '
                             'Defaults to one decision per requirement.')
    parser.add_argument('--repetitions', type=helpers.ensure_count, default=1)
    parser.add_argument('--out', required=True, help='Output delay table (.csv)')
    parser = get_common_options_group(parser)
    return parser.parse_args(arguments)


def get_repro_script_options(arguments):
    parser = argparse.ArgumentParser(description='Reproduce the offloading experiments',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('experiment', choices=('fig5', 'fig6', 'table1'),
                        help='fig5: large model against the baselines, fig6: distilled '
                             'against directly trained student, table1: inference delay')
    parser.add_argument('--seed', type=helpers.ensure_seed, required=True)
    parser.add_argument('--outdir', dest='pathout', default='.',
                        help='Directory of the reports, artifacts and plots')
    parser.add_argument('--save-plots', dest='save_plots', action='store_true')

    group = parser.add_argument_group("Large model", "Teacher training and test set")
    group.add_argument('--n-train', type=helpers.ensure_count, default=20000)
    group.add_argument('--n-test', type=helpers.ensure_count, default=2000)
    group.add_argument('--teacher-arch', type=helpers.parse_architecture,
                       default=_architecture_string(teacher_hidden_c))
    group.add_argument('--teacher-epochs', type=int, default=50)
    group.add_argument('--teacher', dest='teacher_file', type=helpers.parse_is_file,
                       default=None,
                       help='Reuse a saved teacher model (requires --test)')
    group.add_argument('--test', dest='test_file', type=helpers.parse_is_file, default=None,
                       help='Reuse a saved cloud-scale test set (requires --teacher)')

    group = parser.add_argument_group("Distillation", "Student training")
    group.add_argument('--kd-n-train', type=helpers.ensure_count, default=1000)
    group.add_argument('--kd-seeds', type=helpers.ensure_count, default=5,
                       help='Number of seeds the distillation comparison is averaged over')
    group.add_argument('--temp', dest='temperature', type=helpers.ensure_temperature,
                       default=default_temperature_c)
    group.add_argument('--student-arch', type=helpers.parse_architecture,
                       default=_architecture_string(student_hidden_c))
    group.add_argument('--student-epochs', type=int, default=300)

    group = parser.add_argument_group("Delay", "Inference delay measurement")
    group.add_argument('--decisions', type=helpers.ensure_count, default=100000,
                       help='Number of timed decisions per policy')
    group.add_argument('--repetitions', type=helpers.ensure_count, default=1)

    parser = get_common_options_group(parser)
    options = parser.parse_args(arguments)
    if (options.teacher_file is None) != (options.test_file is None):
        parser.error("--teacher and --test should be given together")
    return options

# endregion


def get_common_options_group(parser):
    """ Common options for all the above scripts

    Arguments:
        parser {argparse.ArgumentParser} -- An argument parser to which
        the common options group is to be added.

    Returns:
        [argparse.ArgumentParser] -- The parser instance augmented with
        the new options group.
    """
    assert isinstance(parser, argparse.ArgumentParser)
    group = parser.add_argument_group("Common",
                                      "Common Options for meclib scripts")
    group.add_argument(
        '--verbose',
        action='store_true',
        help='Log progress messages'
    )
    group.add_argument(
        '--workers',
        type=helpers.ensure_count,
        default=1,
        help='Number of processes used for labeling with the exhaustive oracle'
    )
    return parser
