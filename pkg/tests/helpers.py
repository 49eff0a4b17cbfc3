import numpy as np


def rel_l2(a, b):
    """``||a - b||_2 / ||b||_2`` on raw sample vectors."""
    a = np.asarray(getattr(a, "values", a))
    b = np.asarray(getattr(b, "values", b))
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))
