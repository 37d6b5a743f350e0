"""
mlp.py

A small feedforward network for multi-label classification: ReLU hidden
layers and an output layer split into groups of three neurons, each group
activated by its own softmax. Training minimizes the per-group
cross-entropy, summed over the groups and averaged over the samples, with
hard (one-hot) or soft targets.

All the math is done in float64 with numpy, which keeps training
bit-reproducible for a given seed.
"""

import logging

import numpy as np
import pandas
from scipy.special import softmax, xlogy

from meclib.data.definitions import nof_locations_c, probability_floor_c

log = logging.getLogger(__name__)


class Architecture(object):
    """
    Layer widths of a network: input_dim -> hidden[0] -> ... -> hidden[-1]
    -> num_groups * group_size.
    """

    def __init__(self, input_dim, hidden, num_groups, group_size=nof_locations_c):
        self.input_dim = int(input_dim)
        self.hidden = tuple(int(width) for width in hidden)
        self.num_groups = int(num_groups)
        self.group_size = int(group_size)

        widths = (self.input_dim,) + self.hidden + (self.num_groups, self.group_size)
        if any(width < 1 for width in widths):
            raise ValueError("All layer widths should be at least 1, got %r" % (widths,))

    @property
    def output_dim(self):
        return self.num_groups * self.group_size

    @property
    def layer_dims(self):
        """ (fan_in, fan_out) of every layer """
        dims = (self.input_dim,) + self.hidden + (self.output_dim,)
        return list(zip(dims[:-1], dims[1:]))

    def to_dict(self):
        return {"input_dim": self.input_dim,
                "hidden": list(self.hidden),
                "num_groups": self.num_groups,
                "group_size": self.group_size}

    @classmethod
    def from_dict(cls, arch):
        return cls(arch["input_dim"], arch["hidden"], arch["num_groups"], arch["group_size"])

    def __eq__(self, other):
        return isinstance(other, Architecture) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "Architecture(%i -> %s -> %ix%i)" % (
            self.input_dim, "x".join(str(w) for w in self.hidden) or "[]",
            self.num_groups, self.group_size)


def param_count(arch):
    return sum(fan_in * fan_out + fan_out for fan_in, fan_out in arch.layer_dims)


class MlpModel(object):
    """
    Weights (fan_in x fan_out) and biases of every layer.
    """

    def __init__(self, arch, weights, biases):
        assert isinstance(arch, Architecture)
        weights = [np.array(w, dtype=np.float64) for w in weights]
        biases = [np.array(b, dtype=np.float64) for b in biases]

        dims = arch.layer_dims
        if len(weights) != len(dims) or len(biases) != len(dims):
            raise ValueError("Expected %i layers, got %i weight and %i bias arrays" %
                             (len(dims), len(weights), len(biases)))
        for idx, ((fan_in, fan_out), w, b) in enumerate(zip(dims, weights, biases)):
            if w.shape != (fan_in, fan_out) or b.shape != (fan_out,):
                raise ValueError("Layer %i should have weights %s and bias %s, got %s and %s" %
                                 (idx, (fan_in, fan_out), (fan_out,), w.shape, b.shape))
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError("Layer %i contains non-finite parameters" % idx)

        self.arch = arch
        self.weights = weights
        self.biases = biases

    # region Construction

    @classmethod
    def zeros(cls, arch):
        return cls(arch,
                   [np.zeros(dims) for dims in arch.layer_dims],
                   [np.zeros(dims[1]) for dims in arch.layer_dims])

    @classmethod
    def initialize(cls, arch, rng):
        """
        He initialization: weights ~ N(0, 2/fan_in), zero biases.

        :param rng: numpy.random.Generator
        """
        weights = [rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out))
                   for fan_in, fan_out in arch.layer_dims]
        biases = [np.zeros(fan_out) for _, fan_out in arch.layer_dims]
        return cls(arch, weights, biases)

    def copy(self):
        return MlpModel(self.arch, [w.copy() for w in self.weights],
                        [b.copy() for b in self.biases])

    # endregion

    @property
    def parameters(self):
        return self.weights + self.biases

    def __eq__(self, other):
        return isinstance(other, MlpModel) and self.arch == other.arch and \
            all(np.array_equal(a, b) for a, b in zip(self.parameters, other.parameters))

    # region Inference

    def _check_features(self, features):
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.arch.input_dim:
            raise ValueError("Expected features of dimension %i, got shape %s" %
                             (self.arch.input_dim, features.shape))
        if not np.all(np.isfinite(features)):
            raise ValueError("Features should be finite")
        return features

    def _activations(self, features):
        """ Pre-activations and activations of every layer, for backprop. """
        a = features
        zs, activations = [], [a]
        last = len(self.weights) - 1
        for idx, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ w + b
            zs.append(z)
            a = z if idx == last else np.maximum(z, 0.0)
            activations.append(a)
        return zs, activations

    def logits(self, features):
        """
        :param features: array (n, input_dim)
        :return:         array (n, num_groups, group_size)
        """
        features = self._check_features(features)
        logits = self._activations(features)[1][-1]
        return logits.reshape(len(features), self.arch.num_groups, self.arch.group_size)

    def predict_proba(self, features):
        """ Grouped softmax outputs, shape (n, num_groups, group_size). """
        return softmax(self.logits(features), axis=-1)

    # endregion


# region Forward, loss and gradient


def forward(model, features):
    """
    Per-group probability vectors for a single feature vector.

    :return: array (num_groups, group_size)
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 1:
        raise ValueError("forward expects a single feature vector")
    return model.predict_proba(features[np.newaxis, :])[0]


def _check_targets(model, targets, n):
    targets = np.asarray(targets, dtype=np.float64)
    expected = (n, model.arch.num_groups, model.arch.group_size)
    if targets.shape != expected:
        raise ValueError("Targets should have shape %s, got %s" % (expected, targets.shape))
    return targets


def cross_entropy(probs, targets):
    """
    Summed per-group cross-entropy of every sample, with the predicted
    probabilities clamped below at 1e-12.

    :param probs:   array (n, num_groups, group_size)
    :param targets: array of the same shape
    :return:        array (n,)
    """
    clamped = np.maximum(probs, probability_floor_c)
    return -xlogy(targets, clamped).sum(axis=(1, 2))


def loss(model, features, target):
    """
    Cross-entropy of a single sample, summed over the output groups.
    """
    features = np.asarray(features, dtype=np.float64)
    probs = model.predict_proba(features[np.newaxis, :])
    target = _check_targets(model, np.asarray(target)[np.newaxis], 1)
    return float(cross_entropy(probs, target)[0])


def batch_loss(model, features, targets):
    """ Mean loss over a batch. """
    probs = model.predict_proba(features)
    targets = _check_targets(model, targets, len(probs))
    return float(cross_entropy(probs, targets).mean())


def grad(model, features, targets):
    """
    Gradient of the mean batch loss with respect to the weights and biases.

    :param features: array (n, input_dim)
    :param targets:  array (n, num_groups, group_size)
    :return:         (weight gradients, bias gradients), lists shaped like
                     the model parameters
    """
    features = model._check_features(features)
    n = len(features)
    if n == 0:
        raise ValueError("Cannot compute the gradient of an empty batch")
    targets = _check_targets(model, targets, n)

    zs, activations = model._activations(features)
    probs = softmax(zs[-1].reshape(targets.shape), axis=-1)

    # d/dz of -sum(t * log softmax(z)) is p * sum(t) - t, per group
    delta = (probs * targets.sum(axis=-1, keepdims=True) - targets).reshape(n, -1) / n

    grad_w = [None] * len(model.weights)
    grad_b = [None] * len(model.biases)
    for idx in reversed(range(len(model.weights))):
        grad_w[idx] = activations[idx].T @ delta
        grad_b[idx] = delta.sum(axis=0)
        if idx > 0:
            delta = (delta @ model.weights[idx].T) * (zs[idx - 1] > 0)

    return grad_w, grad_b

# endregion

# region Training


class TrainConfig(object):
    """
    Hyperparameters of a training run.
    """

    def __init__(self, learning_rate=1e-3, batch_size=128, epochs=50, seed=0,
                 validation_fraction=0.1, patience=10, optimizer="adam"):
        self.learning_rate = float(learning_rate)
        self.batch_size = int(batch_size)
        self.epochs = int(epochs)
        self.seed = seed
        self.validation_fraction = float(validation_fraction)
        self.patience = int(patience)
        self.optimizer = optimizer

        if self.learning_rate <= 0:
            raise ValueError("The learning rate should be positive")
        if self.batch_size < 1:
            raise ValueError("The batch size should be at least 1")
        if self.epochs < 0:
            raise ValueError("The number of epochs cannot be negative")
        if not 0.0 <= self.validation_fraction < 1.0:
            raise ValueError("The validation fraction should be in [0, 1)")
        if self.optimizer not in ("adam", "sgd"):
            raise ValueError("Unknown optimizer %r" % optimizer)

    @classmethod
    def from_options(cls, options, seed=None):
        """
        Build a configuration from command line options, see
        meclib.ui.cli.training_options.
        """
        return cls(learning_rate=options.learning_rate,
                   batch_size=options.batch_size,
                   epochs=options.epochs,
                   seed=options.seed if seed is None else seed,
                   validation_fraction=options.validation_fraction,
                   patience=options.patience,
                   optimizer=options.optimizer)

    def copy(self, **changes):
        values = dict(self.__dict__)
        values.update(changes)
        return TrainConfig(**values)


class _Adam(object):
    def __init__(self, parameters, rate, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.rate = rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m = [np.zeros_like(p) for p in parameters]
        self.v = [np.zeros_like(p) for p in parameters]
        self.t = 0

    def step(self, parameters, gradients):
        self.t += 1
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(parameters, gradients, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.rate * (m / correction1) / (np.sqrt(v / correction2) + self.epsilon)


class _GradientDescent(object):
    def __init__(self, parameters, rate):
        self.rate = rate

    def step(self, parameters, gradients):
        for p, g in zip(parameters, gradients):
            p -= self.rate * g


class MlpTrainer(object):
    """
    Mini-batch training with early stopping on a held-out validation split.
    Initialization, the split and the batch order are all drawn from one
    generator seeded with cfg.seed.
    """

    def __init__(self, arch, cfg):
        assert isinstance(arch, Architecture)
        assert isinstance(cfg, TrainConfig)

        self.arch = arch
        self.cfg = cfg
        self.column_headers = ("epoch", "train_loss", "validation_loss")
        self._progress = []
        self.model = None

    @property
    def progress_parameters(self):
        return pandas.DataFrame(data=self._progress, columns=self.column_headers)

    def execute(self, features, targets):
        """
        :param features: array (n, input_dim)
        :param targets:  array (n, num_groups, group_size), one-hot or soft
        :return:         the trained MlpModel
        """
        features = np.asarray(features, dtype=np.float64)
        if len(features) == 0:
            raise ValueError("Cannot train on an empty dataset")
        if features.ndim != 2 or features.shape[1] != self.arch.input_dim:
            raise ValueError("Feature dimension %s does not match the architecture input %i" %
                             (features.shape[1:], self.arch.input_dim))
        targets = np.asarray(targets, dtype=np.float64)
        expected = (len(features), self.arch.num_groups, self.arch.group_size)
        if targets.shape != expected:
            raise ValueError("Targets should have shape %s, got %s" % (expected, targets.shape))

        cfg = self.cfg
        rng = np.random.default_rng(cfg.seed)
        model = MlpModel.initialize(self.arch, rng)

        n = len(features)
        n_val = min(int(cfg.validation_fraction * n), n - 1)
        order = rng.permutation(n)
        val_idx, train_idx = order[:n_val], order[n_val:]
        x_train, y_train = features[train_idx], targets[train_idx]
        x_val, y_val = features[val_idx], targets[val_idx]

        parameters = model.parameters
        if cfg.optimizer == "adam":
            optimizer = _Adam(parameters, cfg.learning_rate)
        else:
            optimizer = _GradientDescent(parameters, cfg.learning_rate)

        best, best_loss, stale = None, None, 0
        self._progress = []

        for epoch in range(cfg.epochs):
            batches = rng.permutation(len(x_train))
            for start in range(0, len(batches), cfg.batch_size):
                idx = batches[start:start + cfg.batch_size]
                grad_w, grad_b = grad(model, x_train[idx], y_train[idx])
                optimizer.step(parameters, grad_w + grad_b)

            train_loss = batch_loss(model, x_train, y_train)
            val_loss = batch_loss(model, x_val, y_val) if n_val > 0 else np.nan
            self._progress.append((epoch, train_loss, val_loss))
            log.debug("Epoch %i: training loss %.6f, validation loss %.6f",
                      epoch, train_loss, val_loss)

            if n_val == 0:
                continue
            if best_loss is None or val_loss < best_loss:
                best, best_loss, stale = model.copy(), val_loss, 0
            else:
                stale += 1
                if stale >= cfg.patience:
                    log.info("Early stopping after epoch %i (best validation loss %.6f)",
                             epoch, best_loss)
                    break

        self.model = best if best is not None else model
        return self.model

    def get_result(self):
        return self.model


def train(arch, features, targets, cfg):
    """
    Train a network from scratch, see MlpTrainer.
    """
    return MlpTrainer(arch, cfg).execute(features, targets)

# endregion
