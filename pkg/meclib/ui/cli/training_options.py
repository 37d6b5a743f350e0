import argparse

import meclib.ui.cli.argparse_helpers as helpers


def get_training_options_group(parser, epochs=50, patience=10):
    """ Hyperparameters of network training, see mlp.TrainConfig.from_options

    Arguments:
        parser {argparse.ArgumentParser} -- the parser to add the group to
        epochs {int} -- default number of epochs
        patience {int} -- default early stopping patience
    """
    assert isinstance(parser, argparse.ArgumentParser)

    group = parser.add_argument_group("Training", "Network training hyperparameters")

    group.add_argument('--learning-rate',
                       type=helpers.ensure_positive,
                       default=1e-3)
    group.add_argument('--batch-size',
                       type=helpers.ensure_count,
                       default=128)
    group.add_argument('--epochs',
                       type=int,
                       default=epochs,
                       help='Maximum number of passes over the training set')
    group.add_argument('--validation-fraction',
                       type=helpers.ensure_fraction,
                       default=0.1,
                       help='Share of the samples held out for early stopping. With 0 '
                            'the model of the last epoch is kept.')
    group.add_argument('--patience',
                       type=helpers.ensure_count,
                       default=patience,
                       help='Epochs without a validation improvement before stopping')
    group.add_argument('--optimizer',
                       choices=('adam', 'sgd'),
                       default='adam')

    return parser
