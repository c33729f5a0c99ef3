import random

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# random elements come from the package samplers, driven by a hypothesis-chosen seed
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def rng_from(seed):
    return random.Random(seed)


def same(a, b) -> bool:
    """Equality up to the precision both sides actually know."""
    return (a - b).is_zero()
