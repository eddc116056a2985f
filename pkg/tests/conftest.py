import functools

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fes_sets(max_size=4, max_element=24, min_size=0):
    return st.sets(st.integers(1, max_element), min_size=min_size, max_size=max_size).map(sorted)


def textbook_grundy(x, n_max):
    """G(0..n_max) straight from the definition, independent of the package."""
    x = set(x)
    g = []
    for n in range(n_max + 1):
        options = {g[n - s] for s in range(1, n + 1) if s not in x}
        v = 0
        while v in options:
            v += 1
        g.append(v)
    return g


def losing_piles(x, n_max):
    """Single-pile P-positions by win/loss search, no nimbers involved."""
    x = set(x)

    @functools.lru_cache(maxsize=None)
    def wins(n):
        return any(not wins(n - s) for s in range(1, n + 1) if s not in x)

    return [n for n in range(n_max + 1) if not wins(n)]
