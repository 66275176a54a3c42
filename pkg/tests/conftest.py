import numpy as np
import pytest

from tint import latent_from_labels
from tint.fixture import (
    SOURCE_INITIALS,
    SOURCE_ROOT,
    TARGET_INITIALS,
    TARGET_ROOT,
    fixture_interpretation,
    fixture_latent,
    fixture_similarity,
)


@pytest.fixture(scope="session")
def demo_latent():
    return fixture_latent()


@pytest.fixture(scope="session")
def demo_human():
    return fixture_interpretation()


@pytest.fixture(scope="session")
def demo_sim():
    return fixture_similarity()


@pytest.fixture(scope="session")
def demo_setup():
    return {
        "source_root": SOURCE_ROOT,
        "target_root": TARGET_ROOT,
        "source_initials": SOURCE_INITIALS,
        "target_initials": TARGET_INITIALS,
    }


def tiny_latent(labels, weights=None, default=0.0):
    """A small latent category with an optional sparse weight override dict."""
    n = len(labels)
    w = np.full((n, n), default, dtype=float)
    np.fill_diagonal(w, 1.0)
    if weights:
        idx = {label: i for i, label in enumerate(labels)}
        for (a, b), value in weights.items():
            w[idx[a], idx[b]] = value
    return latent_from_labels(labels, w)
