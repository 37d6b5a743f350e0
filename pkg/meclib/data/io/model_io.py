"""
Model artifact files.

A model is a single JSON document holding the schema name and version, the
architecture, the parameters of every layer as flat row-major arrays and,
for imitation models, the distribution spec of the feature codec. Keeping
the codec inside the artifact means inference needs no dataset.
"""

import json

import numpy as np

from meclib.data.containers.dataset import DistributionSpec
from meclib.data.definitions import model_schema_c, model_version_c
from meclib.processing.network.imitation import FeatureCodec, check_compatible
from meclib.processing.network.mlp import Architecture, MlpModel
from meclib.utils.generic import atomic_write


class ModelFormatError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super(ModelFormatError, self).__init__("%s: %s" % (path, message))


def model_to_dict(model, codec=None):
    assert isinstance(model, MlpModel)
    document = {"schema": model_schema_c,
                "version": model_version_c,
                "architecture": model.arch.to_dict(),
                "layers": [{"weights": w.ravel().tolist(), "bias": b.tolist()}
                           for w, b in zip(model.weights, model.biases)],
                "codec": None}
    if codec is not None:
        check_compatible(model, codec)
        document["codec"] = {"spec": codec.spec.to_dict()}
    return document


def model_from_dict(document):
    """
    :return: (MlpModel, FeatureCodec or None)
    """
    if document.get("schema") != model_schema_c:
        raise ValueError("not a meclib model document")
    if document.get("version") != model_version_c:
        raise ValueError("unsupported schema version %r (expected %i)" %
                         (document.get("version"), model_version_c))

    arch = Architecture.from_dict(document["architecture"])
    layers = document["layers"]
    if len(layers) != len(arch.layer_dims):
        raise ValueError("expected %i layers, found %i" % (len(arch.layer_dims), len(layers)))

    weights, biases = [], []
    for (fan_in, fan_out), layer in zip(arch.layer_dims, layers):
        w = np.asarray(layer["weights"], dtype=np.float64)
        if w.size != fan_in * fan_out:
            raise ValueError("a %ix%i layer cannot hold %i weights" % (fan_in, fan_out, w.size))
        weights.append(w.reshape(fan_in, fan_out))
        biases.append(np.asarray(layer["bias"], dtype=np.float64))
    model = MlpModel(arch, weights, biases)

    codec = None
    if document.get("codec") is not None:
        codec = FeatureCodec(DistributionSpec.from_dict(document["codec"]["spec"]))
        check_compatible(model, codec)
    return model, codec


def save_model(model, path, codec=None):
    """
    Write a model (and optionally its feature codec) to a JSON file.
    """
    document = model_to_dict(model, codec)
    with atomic_write(path) as f:
        json.dump(document, f, allow_nan=False)
        f.write("\n")


def load_model(path):
    """
    Read a model file, validating the shapes and the parameter values.

    :return: (MlpModel, FeatureCodec or None)
    """
    with open(path, "r") as f:
        try:
            document = json.load(f)
        except ValueError as e:
            raise ModelFormatError(path, "not valid JSON (%s)" % e)
    if not isinstance(document, dict):
        raise ModelFormatError(path, "not a meclib model document")
    try:
        return model_from_dict(document)
    except (ValueError, KeyError, TypeError) as e:
        raise ModelFormatError(path, str(e))
