import os
import tempfile
from unittest import TestCase

import numpy as np
import pandas as pd

from ..report_io import load_reports, save_reports, save_table
from ...containers.report import PolicyReport, PolicyReportCollection


class TestReportIO(TestCase):
    def setUp(self):
        self.temp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.temp.name, "report.csv")
        self.reports = PolicyReportCollection([
            PolicyReport("Optimal", 3.141592653589793, 1.0),
            PolicyReport("Large DIL", 3.3, 1.0504226244065403, 0.9123, 0.61, 2.5e-5, 0.4871),
            PolicyReport("Greedy", 4.0000000000000001, 1.2732395447351628,
                         mean_inference_delay=5.1e-5, delay_normalized=1.0),
        ])

    def tearDown(self):
        self.temp.cleanup()

    def test_round_trip(self):
        save_reports(self.reports, self.path)
        loaded = load_reports(self.path)
        self.assertEqual(loaded.names, self.reports.names)
        for expected in self.reports:
            row = loaded[expected.name].as_row()
            for a, b in zip(row[1:], expected.as_row()[1:]):
                if np.isnan(b):
                    self.assertTrue(np.isnan(a))
                else:
                    self.assertEqual(a, b)

    def test_header(self):
        save_reports(self.reports, self.path)
        with open(self.path) as f:
            header = f.readline().strip()
        self.assertEqual(header, "name,mean_latency_s,normalized_latency,per_label_accuracy,"
                                 "exact_match,mean_inference_delay_s,delay_normalized_to_greedy")

    def test_duplicate_names(self):
        with self.assertRaises(ValueError):
            self.reports.add(PolicyReport("Greedy", 1.0, 1.0))

    def test_missing_column(self):
        pd.DataFrame({"name": ["Optimal"], "mean_latency_s": [1.0]}).to_csv(self.path, index=False)
        with self.assertRaises(ValueError):
            load_reports(self.path)

    def test_table(self):
        df = pd.DataFrame({"name": ["Greedy", "KD-DIL"], "mean_inference_delay_s": [1e-5, 3e-6]})
        save_table(df, self.path)
        pd.testing.assert_frame_equal(pd.read_csv(self.path, float_precision="round_trip"), df)
