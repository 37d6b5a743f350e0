import os
import argparse


def parse_architecture(string):
    """ Parse a hidden layer description of the form "WxN": N hidden layers
    of width W, e.g. "256x5". "0x0" (or an empty string) means no hidden
    layers.

    Arguments:
        string {string} -- The architecture string

    Raises:
        argparse.ArgumentTypeError: if the string is not of the form WxN, or
        if a width or a depth is negative

    Returns:
        tuple -- The hidden layer widths, e.g. (256, 256, 256, 256, 256)
    """
    if string.strip() in ("", "0x0"):
        return ()
    parts = string.lower().split('x')
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("Bad architecture '%s', expected WxN, e.g. 256x5" % string)
    try:
        width, depth = (int(i) for i in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("Bad architecture '%s', expected WxN, e.g. 256x5" % string)
    if width < 1 or depth < 0:
        raise argparse.ArgumentTypeError("The width should be positive and the depth non-negative")
    return (width,) * depth


def ensure_positive(number):
    """ Parse a strictly positive real number, such as a rate or a
    temperature

    Arguments:
        number {string} -- the number as typed on the command line

    Raises:
        argparse.ArgumentTypeError: if the string does not parse as a
        number, or if the number is zero or negative

    Returns:
        float -- the parsed number
    """
    try:
        value = float(number)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not a number" % number)
    if not value > 0:
        raise argparse.ArgumentTypeError("%r should be greater than zero" % number)
    return value


def ensure_count(number):
    try:
        number = int(number)
    except ValueError:
        raise argparse.ArgumentTypeError("You must enter an integer")
    if number < 1:
        raise argparse.ArgumentTypeError("The value should be at least 1")
    return number


def ensure_seed(number):
    try:
        number = int(number)
    except ValueError:
        raise argparse.ArgumentTypeError("The seed should be an integer")
    if number < 0:
        raise argparse.ArgumentTypeError("The seed cannot be negative")
    return number


def ensure_temperature(number):
    """ A distillation temperature: a number >= 1 """
    number = ensure_positive(number)
    if number < 1:
        raise argparse.ArgumentTypeError("The temperature should be at least 1")
    return number


def ensure_fraction(number):
    try:
        number = float(number)
    except ValueError:
        raise argparse.ArgumentTypeError("You must enter a number")
    if not 0 <= number < 1:
        raise argparse.ArgumentTypeError("The value should be in [0, 1)")
    return number


def parse_is_file(path):
    """ The path of an existing input file (dataset, model or spec file)

    Raises:
        argparse.ArgumentTypeError: if nothing, or a directory, is found
        at the path
    """
    if os.path.isfile(path):
        return path
    raise argparse.ArgumentTypeError("%s is not a file" % path)
