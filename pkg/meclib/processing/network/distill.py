"""
distill.py

Knowledge distillation of an imitation model. A large teacher network,
trained on plenty of oracle-labeled samples, labels a small set of
requirements; its output distributions are softened with a temperature and
used as the training targets of a small student network.

The softening raises every probability to the power 1/T and renormalizes,
q_i = exp(ln(p_i) / T) / sum_j exp(ln(p_j) / T). For T = 1 the targets are
the teacher outputs; larger T flattens them while keeping the ranking of
the classes.
"""

import logging

import numpy as np
from scipy.special import softmax

from meclib.data.containers.dataset import DistributionSpec, SoftDataset
from meclib.data.definitions import default_temperature_c, probability_floor_c
from meclib.processing.network import mlp
from meclib.processing.network.imitation import FeatureCodec, check_compatible, \
    student_hidden_c

log = logging.getLogger(__name__)

normalization_tolerance_c = 1e-6


def check_temperature(temperature):
    temperature = float(temperature)
    if not temperature >= 1.0:
        raise ValueError("The temperature should be at least 1, got %r" % temperature)
    return temperature


def soften(p, temperature=default_temperature_c):
    """
    Soften probability vectors with a temperature.

    :param p:           array (..., C) of probability vectors, each summing
                        to one within 1e-6
    :param temperature: T >= 1
    :return:            softened vectors, same shape
    """
    temperature = check_temperature(temperature)
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise ValueError("Probabilities should be finite and non-negative")
    if np.any(np.abs(p.sum(axis=-1) - 1.0) > normalization_tolerance_c):
        raise ValueError("Probability vectors should sum to 1 (tolerance %g)" %
                         normalization_tolerance_c)

    return softmax(np.log(np.maximum(p, probability_floor_c)) / temperature, axis=-1)


def distill_labels(teacher, codec, reqs, temperature=default_temperature_c):
    """
    Label requirements with the softened output of a teacher network. The
    hard labels of the requirements, if any, play no part.

    :param teacher:     the teacher MlpModel
    :param codec:       the FeatureCodec of the teacher
    :param reqs:        a list of Requirements
    :param temperature: T >= 1
    :return:            (features (n, input_dim), soft targets (n, groups, 3))
    """
    check_compatible(teacher, codec)
    temperature = check_temperature(temperature)

    features = codec.encode_many(reqs)
    targets = soften(teacher.predict_proba(features), temperature)
    return features, targets


def distill_dataset(teacher, codec, spec, reqs, temperature=default_temperature_c, seed=None):
    """
    Same as distill_labels, packed as a SoftDataset that can be saved.

    :param spec: the DistributionSpec the requirements were drawn from
    """
    assert isinstance(spec, DistributionSpec)
    _, targets = distill_labels(teacher, codec, reqs, temperature)
    return SoftDataset(spec, reqs, targets, seed, check_temperature(temperature))


def train_student(soft_dataset, arch, cfg, codec=None):
    """
    Train a (small) network on soft targets.

    :param soft_dataset: a SoftDataset, or a (features, targets) pair as
                         returned by distill_labels
    :param arch:         an mlp.Architecture, or None for the 2x32 student
    :param cfg:          an mlp.TrainConfig
    :param codec:        the FeatureCodec of the features; needed only to
                         build a default architecture from a
                         (features, targets) pair
    :return:             MlpModel
    """
    if isinstance(soft_dataset, SoftDataset):
        codec = codec or FeatureCodec(soft_dataset.spec)
        features = codec.encode_many(soft_dataset.reqs)
        targets = soft_dataset.soft_labels
    else:
        features, targets = soft_dataset
        features = np.asarray(features, dtype=np.float64)
        targets = np.asarray(targets, dtype=np.float64)

    if len(features) == 0:
        raise ValueError("Cannot train a student on an empty soft dataset")

    if arch is None:
        if codec is None:
            raise ValueError("A codec is needed to build the default student architecture")
        arch = mlp.Architecture(codec.input_dim, student_hidden_c, codec.num_subtasks)

    log.info("Training student %r on %i soft-labeled samples", arch, len(features))
    return mlp.train(arch, features, targets, cfg)
