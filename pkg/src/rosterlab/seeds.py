"""Deterministic seed derivation for the package's independent RNG streams.

Every stochastic component draws from its own domain so that, for a fixed
master seed, changing how many draws one component makes never shifts the
streams of another (e.g. adding evaluation scenarios must not perturb the
simulated classifier).
"""

from __future__ import annotations

import numpy as np

# Domain tags. Values are arbitrary but frozen: changing them changes every
# derived stream.
DOMAIN_GENERATOR = 101
DOMAIN_PREDICTIONS = 202
DOMAIN_SCENARIOS = 303
DOMAIN_WORLDS = 404


def derive_seed(master_seed: int, domain: int, *indices: int) -> int:
    """Derive a child seed for (domain, *indices) under a master seed.

    The same (master_seed, domain, indices) tuple always yields the same
    child, and distinct tuples yield statistically independent streams.
    """
    if master_seed < 0:
        raise ValueError("master_seed must be non-negative")
    key = (int(master_seed), int(domain), *(int(i) for i in indices))
    for part in key[1:]:
        if part < 0:
            raise ValueError("domain and indices must be non-negative")
    seq = np.random.SeedSequence(key)
    return int(seq.generate_state(2, dtype=np.uint64)[0])


def rng_for(master_seed: int, domain: int, *indices: int) -> np.random.Generator:
    """Generator seeded from the derived child seed for (domain, *indices)."""
    return np.random.default_rng(derive_seed(master_seed, domain, *indices))
