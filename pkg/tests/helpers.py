import math


def close(x, y, tol=1e-9):
    """Component-wise absolute closeness of two equal-length sequences."""
    x, y = tuple(x), tuple(y)
    return len(x) == len(y) and all(math.isclose(p, q, rel_tol=0, abs_tol=tol) for p, q in zip(x, y))
