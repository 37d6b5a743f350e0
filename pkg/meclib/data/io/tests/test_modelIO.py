import json
import os
import tempfile
from unittest import TestCase

import numpy as np

from ..model_io import ModelFormatError, load_model, save_model
from ....processing.network.imitation import FeatureCodec
from ....processing.network.mlp import Architecture, MlpModel
from ....processing.workload import preset


class TestModelIO(TestCase):
    def setUp(self):
        self.temp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.temp.name, "teacher.model")
        self.codec = FeatureCodec(preset("cloud_scale"))
        self.model = MlpModel.initialize(Architecture(17, (8, 4), 6), np.random.default_rng(0))

    def tearDown(self):
        self.temp.cleanup()

    def rewrite(self, change):
        with open(self.path) as f:
            document = json.load(f)
        change(document)
        with open(self.path, "w") as f:
            json.dump(document, f)

    def test_round_trip(self):
        save_model(self.model, self.path, self.codec)
        model, codec = load_model(self.path)
        self.assertEqual(model, self.model)
        self.assertEqual(codec, self.codec)

    def test_without_codec(self):
        save_model(self.model, self.path)
        model, codec = load_model(self.path)
        self.assertEqual(model, self.model)
        self.assertIsNone(codec)

    def test_identical_bytes(self):
        save_model(self.model, self.path, self.codec)
        with open(self.path, "rb") as f:
            first = f.read()
        save_model(self.model.copy(), self.path, self.codec)
        with open(self.path, "rb") as f:
            self.assertEqual(f.read(), first)

    def test_codec_must_fit(self):
        with self.assertRaises(ValueError):
            save_model(MlpModel.zeros(Architecture(11, (), 3)), self.path, self.codec)

    def test_version_mismatch(self):
        save_model(self.model, self.path, self.codec)
        self.rewrite(lambda document: document.update(version=99))
        with self.assertRaises(ModelFormatError):
            load_model(self.path)

    def test_wrong_layer_size(self):
        save_model(self.model, self.path, self.codec)
        self.rewrite(lambda document: document["layers"][1]["weights"].pop())
        with self.assertRaises(ModelFormatError):
            load_model(self.path)

    def test_not_json(self):
        with open(self.path, "w") as f:
            f.write("weights: 1, 2, 3\n")
        with self.assertRaises(ModelFormatError):
            load_model(self.path)

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_model(os.path.join(self.temp.name, "missing.model"))
