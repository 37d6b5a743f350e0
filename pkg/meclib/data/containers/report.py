import numpy as np
import pandas as pd

from meclib.data.definitions import report_columns_c


class PolicyReport(object):
    """
    Decision quality and speed of one policy on a test set. Metrics that do
    not apply (label accuracy of a baseline, delay when nothing was timed)
    are NaN.
    """

    def __init__(self, name, mean_latency, normalized_latency,
                 per_label_accuracy=np.nan, exact_match=np.nan,
                 mean_inference_delay=np.nan, delay_normalized=np.nan):
        self.name = name
        self.mean_latency = float(mean_latency)
        self.normalized_latency = float(normalized_latency)
        self.per_label_accuracy = float(per_label_accuracy)
        self.exact_match = float(exact_match)
        self.mean_inference_delay = float(mean_inference_delay)
        self.delay_normalized = float(delay_normalized)

    def as_row(self):
        return (self.name, self.mean_latency, self.normalized_latency,
                self.per_label_accuracy, self.exact_match,
                self.mean_inference_delay, self.delay_normalized)

    @classmethod
    def from_row(cls, row):
        return cls(*row)

    def __repr__(self):
        return "<PolicyReport %s: %.4f s, normalized %.4f>" % (
            self.name, self.mean_latency, self.normalized_latency)


class PolicyReportCollection(object):
    """
    Reports of several policies evaluated on the same test set, in
    evaluation order.
    """

    def __init__(self, reports=()):
        self._data = dict()
        for report in reports:
            self.add(report)

    def add(self, report):
        assert isinstance(report, PolicyReport)
        if report.name in self._data:
            raise ValueError("Duplicate policy name %r" % report.name)
        self._data[report.name] = report

    def __getitem__(self, name):
        return self._data[name]

    def __contains__(self, name):
        return name in self._data

    def __iter__(self):
        return iter(list(self._data.values()))

    def __len__(self):
        return len(self._data)

    @property
    def names(self):
        return list(self._data.keys())

    def as_dataframe(self):
        """
        :return: a dataframe with one row per policy and the report columns
        """
        return pd.DataFrame([report.as_row() for report in self],
                            columns=list(report_columns_c))

    @classmethod
    def from_dataframe(cls, df):
        missing = [c for c in report_columns_c if c not in df.columns]
        if missing:
            raise ValueError("Report table lacks column(s) %s" % ", ".join(missing))
        return cls(PolicyReport.from_row(row)
                   for row in df[list(report_columns_c)].itertuples(index=False))
