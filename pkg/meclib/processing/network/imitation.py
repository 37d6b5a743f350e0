"""
imitation.py

Deep imitation learning for offloading: a network learns to map the
description of a requirement to the decision the exhaustive oracle would
make. This module holds the feature encoding, the conversion of decisions
to and from network outputs, teacher training and the accuracy metrics.
"""

import logging

import numpy as np

from meclib.data.containers.dataset import Dataset, DistributionSpec
from meclib.data.containers.requirement import Decision, Requirement
from meclib.data.definitions import nof_locations_c
from meclib.processing.network import mlp
from meclib.processing.solvers import Policy

log = logging.getLogger(__name__)

teacher_hidden_c = (256,) * 5
student_hidden_c = (32,) * 2


class FeatureCodec(object):
    """
    Min-max scaling of the requirement parameters by the ranges of a
    distribution. The feature layout is [eps_0..eps_{n-1}, d_0..d_n, p1,
    p2, b1, b2]. Values outside a range extrapolate linearly; a collapsed
    range (lo == hi) is only shifted.
    """

    def __init__(self, spec):
        assert isinstance(spec, DistributionSpec)
        self.spec = spec

        n = spec.num_subtasks
        ranges = [spec.eps_range] * n + [spec.d_range] * (n + 1) + \
            [spec.p1_range, spec.p2_range, spec.b1_range, spec.b2_range]
        self.lo = np.array([r[0] for r in ranges], dtype=np.float64)
        span = np.array([r[1] - r[0] for r in ranges], dtype=np.float64)
        self.span = np.where(span > 0, span, 1.0)

    @property
    def num_subtasks(self):
        return self.spec.num_subtasks

    @property
    def input_dim(self):
        return self.spec.input_dim

    def raw_features(self, req):
        if req.num_subtasks != self.num_subtasks:
            raise ValueError("The codec expects %i subtasks, the requirement has %i" %
                             (self.num_subtasks, req.num_subtasks))
        return np.array(req.task.eps + req.task.data + req.env.as_tuple(), dtype=np.float64)

    def encode(self, req):
        return (self.raw_features(req) - self.lo) / self.span

    def encode_many(self, reqs):
        """
        :return: array (len(reqs), input_dim)
        """
        raw = np.array([self.raw_features(req) for req in reqs], dtype=np.float64)
        return (raw.reshape(len(reqs), self.input_dim) - self.lo) / self.span

    def decode_features(self, features):
        """ Inverse of encode, back to the raw SI values. """
        return np.asarray(features, dtype=np.float64) * self.span + self.lo

    def __eq__(self, other):
        return isinstance(other, FeatureCodec) and self.spec == other.spec


def encode(codec, req):
    return codec.encode(req)


def decode(probs):
    """
    Per-group argmax of the network output; ties go to the lowest location
    code (Device < Edge < Cloud).

    :param probs: array (num_groups, 3)
    :return:      a Decision
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 2 or probs.shape[1] != nof_locations_c:
        raise ValueError("Expected probabilities of shape (n, %i), got %s" %
                         (nof_locations_c, probs.shape))
    return Decision(np.argmax(probs, axis=-1))


def one_hot(labels):
    """
    :param labels: integer array (n, num_subtasks)
    :return:       array (n, num_subtasks, 3)
    """
    return np.eye(nof_locations_c)[np.asarray(labels, dtype=np.int64)]


def predict(model, codec, req):
    return decode(mlp.forward(model, codec.encode(req)))


def predict_many(model, codec, reqs):
    """ Decisions of a batch of requirements as an integer array (n, num_subtasks). """
    return np.argmax(model.predict_proba(codec.encode_many(reqs)), axis=-1)


def check_compatible(model, codec):
    if model.arch.input_dim != codec.input_dim or model.arch.num_groups != codec.num_subtasks:
        raise ValueError("Model %r does not fit a codec for %i subtasks" %
                         (model.arch, codec.num_subtasks))


def train_teacher(dataset, arch, cfg):
    """
    Train a network on the hard (one-hot) oracle labels of a dataset.

    :param dataset: a Dataset
    :param arch:    an mlp.Architecture, or None for the 5x256 teacher
    :param cfg:     an mlp.TrainConfig
    :return:        (MlpModel, FeatureCodec)
    """
    assert isinstance(dataset, Dataset)
    if len(dataset) == 0:
        raise ValueError("Cannot train on an empty dataset")

    codec = FeatureCodec(dataset.spec)
    if arch is None:
        arch = mlp.Architecture(codec.input_dim, teacher_hidden_c, codec.num_subtasks)

    features = codec.encode_many(dataset.requirements)
    targets = one_hot(dataset.label_array())
    log.info("Training %r on %i samples", arch, len(dataset))
    model = mlp.train(arch, features, targets, cfg)
    return model, codec


def decision_accuracy(decisions, labels):
    """
    Compare decisions with reference labels.

    :param decisions: Decisions, or an integer array of shape (n, num_subtasks)
    :param labels:    integer array of shape (n, num_subtasks)
    :return:          (per-label accuracy, exact-match accuracy)
    """
    labels = np.asarray(labels)
    predicted = np.array([np.asarray(d, dtype=np.int64) for d in decisions]).reshape(labels.shape)
    matches = predicted == labels
    return float(matches.mean()), float(matches.all(axis=1).mean())


def accuracy(model, codec, dataset):
    """
    :return: (per-label accuracy, exact-match accuracy)
    """
    assert isinstance(dataset, Dataset)
    if len(dataset) == 0:
        raise ValueError("Cannot measure accuracy on an empty dataset")

    return decision_accuracy(predict_many(model, codec, dataset.requirements),
                             dataset.label_array())


class ImitationPolicy(Policy):
    """
    A trained network used as an online decision procedure: encode, forward,
    decode for every requirement.
    """
    learned = True

    def __init__(self, model, codec, name="DIL"):
        super(ImitationPolicy, self).__init__(name)
        check_compatible(model, codec)
        self.model = model
        self.codec = codec

    def decide(self, req):
        assert isinstance(req, Requirement)
        return predict(self.model, self.codec, req)

    def accuracy(self, dataset):
        return accuracy(self.model, self.codec, dataset)
