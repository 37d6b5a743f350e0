"""
CSV reports: one row per policy with a mandatory header row. Floats are
written at full precision, so the numbers parse back unchanged.
"""

import pandas as pd

from meclib.data.containers.report import PolicyReportCollection
from meclib.utils.generic import atomic_write


def save_reports(reports, path):
    """
    :param reports: a PolicyReportCollection
    :param path:    output CSV path
    """
    assert isinstance(reports, PolicyReportCollection)
    save_table(reports.as_dataframe(), path)


def save_table(df, path, index=False):
    with atomic_write(path) as f:
        df.to_csv(f, index=index, float_format="%.17g")


def load_reports(path):
    df = pd.read_csv(path, float_precision="round_trip")
    return PolicyReportCollection.from_dataframe(df)
