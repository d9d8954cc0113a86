"""Shared test helpers."""
import mpmath as mp


def close_digits(got, want, digits: int) -> bool:
    """Agreement to `digits` significant digits (absolute below 1)."""
    with mp.workdps(digits + 15):
        g = mp.mpf(got.value) if hasattr(got, "value") else mp.mpf(got)
        w = mp.mpf(want.value) if hasattr(want, "value") else mp.mpf(want)
        return abs(g - w) <= mp.mpf(10) ** (1 - digits) * max(1, abs(w))


def diff_of(got, want):
    with mp.workdps(40):
        g = mp.mpf(got.value) if hasattr(got, "value") else mp.mpf(got)
        w = mp.mpf(want.value) if hasattr(want, "value") else mp.mpf(want)
        return abs(g - w)
