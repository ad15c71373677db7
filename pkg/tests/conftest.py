import numpy as np
import pytest

from sparsepen import Dataset


def make_sparse_instance(seed, n, p, n_true, beta_value=1.0, noise_sd=1.0):
    """Raw sparse regression data plus the generating coefficients."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    beta = np.zeros(p)
    beta[:n_true] = beta_value
    y = X @ beta + noise_sd * rng.standard_normal(n)
    return X, y, beta


def make_dataset(seed, n, p, n_true, beta_value=1.0, noise_sd=1.0):
    X, y, beta = make_sparse_instance(seed, n, p, n_true, beta_value, noise_sd)
    return Dataset.from_arrays(X, y), beta


@pytest.fixture
def small_dataset():
    ds, _ = make_dataset(seed=11, n=60, p=12, n_true=4)
    return ds


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")
    return str(path)


@pytest.fixture
def demo_csv(tmp_path):
    rng = np.random.default_rng(5)
    X = rng.standard_normal((36, 5))
    y = 1.5 * X[:, 0] - X[:, 2] + 0.4 * rng.standard_normal(36)
    rows = [[float(y[i])] + [float(v) for v in X[i]] for i in range(36)]
    return write_csv(tmp_path / "demo.csv", ["y", "g0", "g1", "g2", "g3", "g4"], rows)
