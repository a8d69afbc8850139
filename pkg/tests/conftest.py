"""Shared helpers for the test suite."""

import numpy as np
from scipy.optimize import linear_sum_assignment


def match_max_distance(found, expected) -> float:
    """Best-case pairing distance between two point multisets.

    Solves the assignment problem on pairwise distances and returns the
    largest matched distance, so tests never depend on output ordering.
    """
    found = np.asarray(found, dtype=np.complex128)
    expected = np.asarray(expected, dtype=np.complex128)
    assert found.shape == expected.shape
    cost = np.abs(found[:, None] - expected[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
