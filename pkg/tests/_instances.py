"""Random deterministic test instances: all weights in {0, 1}.

With 0/1 weights every Bernoulli elicitation is certain, so hardmax trials
have a unique outcome that a brute-force enumeration can predict.  Roots are
kept out of the opposite side's initials so the oracle's notion of the
deterministic setup stays simple; initials may overlap between sides.
"""

from __future__ import annotations

import numpy as np

from tint import latent_from_labels, make_trial_config
from tint.exploration import hardmax


def random_binary_instance(rng: np.random.Generator, algorithm: str):
    """Returns (latent, config) with all weights 0/1 and <=3 initials per side."""
    n = int(rng.integers(6, 11))
    labels = [f"im{i}" for i in range(n)]
    w = (rng.random((n, n)) < rng.uniform(0.2, 0.8)).astype(float)
    latent = latent_from_labels(labels, w)

    b, a = rng.choice(n, size=2, replace=False)
    pool = [i for i in range(n) if i not in (a, b)]
    k_src = int(rng.integers(2 if algorithm == "relation" else 1, 4))
    k_tgt = int(rng.integers(1, 4))
    src = list(rng.choice(pool, size=min(k_src, len(pool)), replace=False))
    tgt = list(rng.choice(pool, size=min(k_tgt, len(pool)), replace=False))
    if algorithm == "relation" and len(src) < 2:
        src = pool[:2]
    config = make_trial_config(
        latent,
        algorithm=algorithm,
        policy=hardmax(),
        source_root=int(b),
        target_root=int(a),
        source_initials=[int(x) for x in src],
        target_initials=[int(x) for x in tgt],
        rng_seed=0,
    )
    return latent, config
