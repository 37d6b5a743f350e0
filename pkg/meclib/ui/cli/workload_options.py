import argparse

import meclib.ui.cli.argparse_helpers as helpers
from meclib.processing.solvers import baseline_names


def get_workload_options_group(parser):
    assert isinstance(parser, argparse.ArgumentParser)

    group = parser.add_argument_group("Workload", "Requirement distribution and labeling")

    group.add_argument('--spec',
                       dest='spec',
                       default='cloud',
                       help='Name of a built-in distribution: cloud_scale (cloud) or '
                            'edge_scale (edge)')

    group.add_argument('--spec-file',
                       dest='spec_file',
                       type=helpers.parse_is_file,
                       default=None,
                       help='A JSON distribution spec to use instead of --spec')

    group.add_argument('--n',
                       dest='num_samples',
                       type=helpers.ensure_count,
                       required=True,
                       help='Number of samples to generate')

    group.add_argument('--labeler',
                       choices=baseline_names,
                       default='optimal',
                       help='Policy that labels the samples')

    return parser
