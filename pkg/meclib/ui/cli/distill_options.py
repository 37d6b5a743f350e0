import argparse

import meclib.ui.cli.argparse_helpers as helpers
from meclib.data.definitions import default_temperature_c


def get_distill_options_group(parser):
    assert isinstance(parser, argparse.ArgumentParser)

    group = parser.add_argument_group("Distillation", "Teacher to student compression")

    group.add_argument('--teacher',
                       type=helpers.parse_is_file,
                       required=True,
                       help='Teacher model file')
    group.add_argument('--reqs',
                       type=helpers.parse_is_file,
                       required=True,
                       help='Dataset file with the requirements the teacher labels. '
                            'Its own labels are ignored.')
    group.add_argument('--temp',
                       dest='temperature',
                       type=helpers.ensure_temperature,
                       default=default_temperature_c,
                       help='Softening temperature, at least 1')
    group.add_argument('--soft-out',
                       dest='soft_out',
                       default=None,
                       help='Also save the soft-labeled dataset to this file')

    return parser
