import argparse
from unittest import TestCase

import numpy as np
from scipy.special import softmax

from ..network import mlp
from ..network.mlp import Architecture, MlpModel, TrainConfig


def random_one_hot(rng, n, groups):
    return np.eye(3)[rng.integers(0, 3, size=(n, groups))]


class TestArchitecture(TestCase):
    def test_param_counts(self):
        self.assertEqual(mlp.param_count(Architecture(17, (256,) * 5, 6)), 272402)
        self.assertEqual(mlp.param_count(Architecture(17, (32,) * 2, 6)), 2226)
        self.assertEqual(mlp.param_count(Architecture(1, (), 1)), 6)

    def test_compression_ratio(self):
        ratio = mlp.param_count(Architecture(17, (32,) * 2, 6)) / \
            float(mlp.param_count(Architecture(17, (256,) * 5, 6)))
        self.assertLess(ratio, 0.01)

    def test_layer_dims(self):
        arch = Architecture(4, (5, 3), 2)
        self.assertEqual(arch.output_dim, 6)
        self.assertEqual(arch.layer_dims, [(4, 5), (5, 3), (3, 6)])

    def test_invalid_width(self):
        with self.assertRaises(ValueError):
            Architecture(4, (0,), 2)

    def test_dict(self):
        arch = Architecture(17, (32, 32), 6)
        self.assertEqual(Architecture.from_dict(arch.to_dict()), arch)


class TestModel(TestCase):
    def test_wrong_shapes(self):
        arch = Architecture(2, (), 1)
        with self.assertRaises(ValueError):
            MlpModel(arch, [np.zeros((3, 3))], [np.zeros(3)])
        with self.assertRaises(ValueError):
            MlpModel(arch, [np.full((2, 3), np.nan)], [np.zeros(3)])

    def test_forward_groups_sum_to_one(self):
        rng = np.random.default_rng(0)
        model = MlpModel.initialize(Architecture(17, (32, 32), 6), rng)
        probs = mlp.forward(model, rng.uniform(size=17))
        self.assertEqual(probs.shape, (6, 3))
        self.assertTrue(np.all(probs >= 0))
        np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-12)

    def test_extreme_logits(self):
        arch = Architecture(1, (), 2)
        model = MlpModel(arch, [np.zeros((1, 6))],
                         [np.array([1000.0, 0.0, -1000.0, 0.0, 0.0, 1e3])])
        probs = mlp.forward(model, np.zeros(1))
        self.assertTrue(np.all(np.isfinite(probs)))
        self.assertTrue(np.all(probs >= 0))
        np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-12)
        self.assertEqual(np.argmax(probs[0]), 0)

    def test_wrong_feature_dimension(self):
        model = MlpModel.zeros(Architecture(3, (), 1))
        with self.assertRaises(ValueError):
            mlp.forward(model, np.zeros(4))

    def test_copy_is_independent(self):
        model = MlpModel.initialize(Architecture(3, (4,), 1), np.random.default_rng(1))
        other = model.copy()
        self.assertEqual(model, other)
        other.weights[0][0, 0] += 1
        self.assertNotEqual(model, other)


class TestLoss(TestCase):
    def test_cross_entropy(self):
        probs = np.array([[[0.5, 0.25, 0.25]]])
        target = np.array([[[1.0, 0.0, 0.0]]])
        self.assertAlmostEqual(mlp.cross_entropy(probs, target)[0], np.log(2), places=12)

    def test_clamped(self):
        probs = np.array([[[1.0, 0.0, 0.0]]])
        target = np.array([[[0.0, 1.0, 0.0]]])
        self.assertAlmostEqual(mlp.cross_entropy(probs, target)[0], -np.log(1e-12), places=9)

    def test_loss_sums_groups(self):
        arch = Architecture(1, (), 2)
        model = MlpModel.zeros(arch)
        target = np.eye(3)[[0, 2]]
        self.assertAlmostEqual(mlp.loss(model, np.zeros(1), target), 2 * np.log(3), places=12)


class TestGradient(TestCase):
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(7)
        arch = Architecture(4, (5,), 2)
        model = MlpModel.initialize(arch, rng)
        for b in model.biases:
            b += rng.normal(0, 0.1, size=b.shape)
        features = rng.normal(size=(8, 4))
        targets = softmax(rng.normal(size=(8, 2, 3)), axis=-1)

        grad_w, grad_b = mlp.grad(model, features, targets)
        analytic = grad_w + grad_b
        parameters = model.parameters

        h = 1e-5
        for _ in range(20):
            layer = rng.integers(0, len(parameters))
            index = tuple(rng.integers(0, s) for s in parameters[layer].shape)
            original = parameters[layer][index]
            parameters[layer][index] = original + h
            plus = mlp.batch_loss(model, features, targets)
            parameters[layer][index] = original - h
            minus = mlp.batch_loss(model, features, targets)
            parameters[layer][index] = original

            numeric = (plus - minus) / (2 * h)
            a = analytic[layer][index]
            error = abs(a - numeric) / max(abs(a) + abs(numeric), 1e-5)
            self.assertLessEqual(error, 1e-4)

    def test_stationary_point(self):
        arch = Architecture(3, (), 2)
        bias = np.array([0.3, -1.0, 0.5, 2.0, 0.0, -0.4])
        model = MlpModel(arch, [np.zeros((3, 6))], [bias])
        targets = softmax(bias.reshape(1, 2, 3), axis=-1)
        grad_w, grad_b = mlp.grad(model, np.zeros((1, 3)), targets)
        for g in grad_w + grad_b:
            np.testing.assert_allclose(g, 0.0, atol=1e-12)

    def test_gradient_descent_decreases_loss(self):
        rng = np.random.default_rng(3)
        arch = Architecture(3, (), 2)
        model = MlpModel.initialize(arch, rng)
        features = rng.normal(size=(20, 3))
        targets = random_one_hot(rng, 20, 2)

        previous = mlp.batch_loss(model, features, targets)
        for _ in range(50):
            grad_w, grad_b = mlp.grad(model, features, targets)
            for p, g in zip(model.parameters, grad_w + grad_b):
                p -= 0.01 * g
            current = mlp.batch_loss(model, features, targets)
            self.assertLessEqual(current, previous + 1e-12)
            previous = current


class TestTraining(TestCase):
    def setUp(self):
        rng = np.random.default_rng(11)
        self.features = rng.uniform(size=(60, 4))
        self.targets = random_one_hot(rng, 60, 2)
        self.arch = Architecture(4, (8,), 2)

    def test_config_validation(self):
        for changes in ({"learning_rate": 0}, {"batch_size": 0}, {"epochs": -1},
                        {"validation_fraction": 1.0}, {"optimizer": "rmsprop"}):
            with self.assertRaises(ValueError):
                TrainConfig(**changes)

    def test_config_from_options(self):
        options = argparse.Namespace(learning_rate=0.01, batch_size=16, epochs=3, seed=4,
                                     validation_fraction=0.2, patience=2, optimizer="sgd")
        cfg = TrainConfig.from_options(options)
        self.assertEqual((cfg.learning_rate, cfg.batch_size, cfg.epochs, cfg.seed),
                         (0.01, 16, 3, 4))
        self.assertEqual(TrainConfig.from_options(options, seed=9).seed, 9)
        self.assertEqual(cfg.copy(epochs=7).epochs, 7)
        self.assertEqual(cfg.epochs, 3)

    def test_deterministic(self):
        cfg = TrainConfig(epochs=5, batch_size=16, seed=3)
        first = mlp.train(self.arch, self.features, self.targets, cfg)
        second = mlp.train(self.arch, self.features, self.targets, cfg)
        self.assertEqual(first, second)
        other = mlp.train(self.arch, self.features, self.targets, cfg.copy(seed=4))
        self.assertNotEqual(first, other)

    def test_zero_epochs_returns_initialization(self):
        cfg = TrainConfig(epochs=0, seed=5)
        model = mlp.train(self.arch, self.features, self.targets, cfg)
        self.assertEqual(model, MlpModel.initialize(self.arch, np.random.default_rng(5)))

    def test_keeps_best_validation_model(self):
        cfg = TrainConfig(epochs=20, batch_size=8, seed=2, learning_rate=0.05,
                          validation_fraction=0.25, patience=3)
        trainer = mlp.MlpTrainer(self.arch, cfg)
        model = trainer.execute(self.features, self.targets)
        progress = trainer.progress_parameters
        self.assertListEqual(list(progress.columns), ["epoch", "train_loss", "validation_loss"])
        self.assertLessEqual(len(progress), 20)
        self.assertIs(trainer.get_result(), model)

        # Recreate the validation split drawn by the trainer
        rng = np.random.default_rng(cfg.seed)
        MlpModel.initialize(self.arch, rng)
        val_idx = rng.permutation(60)[:15]
        val_loss = mlp.batch_loss(model, self.features[val_idx], self.targets[val_idx])
        self.assertAlmostEqual(val_loss, progress["validation_loss"].min(), places=12)

    def test_fits_separable_rule(self):
        rng = np.random.default_rng(21)
        x = rng.uniform(size=400)
        x = x[np.abs(x - 0.5) > 0.1][:200]
        labels = (x > 0.5).astype(int)[:, np.newaxis]
        targets = np.eye(3)[labels]
        features = x[:, np.newaxis]

        cfg = TrainConfig(learning_rate=0.05, batch_size=32, epochs=500, seed=0,
                          validation_fraction=0.0)
        model = mlp.train(Architecture(1, (), 1), features, targets, cfg)
        predicted = np.argmax(model.predict_proba(features), axis=-1)
        self.assertGreaterEqual(np.mean(predicted == labels), 0.95)

    def test_target_shape_mismatch(self):
        cfg = TrainConfig(epochs=1)
        with self.assertRaises(ValueError):
            mlp.train(self.arch, self.features, self.targets[:, :1], cfg)

    def test_empty(self):
        with self.assertRaises(ValueError):
            mlp.train(self.arch, np.zeros((0, 4)), np.zeros((0, 2, 3)), TrainConfig())
