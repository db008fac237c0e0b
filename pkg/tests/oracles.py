"""Independent brute-force references used by the coverage tests."""

from itertools import combinations

import numpy as np


def brute_force_coverage(sensors, events, comm_range, eps=1e-6):
    """Map sensor id -> (beacons heard, localizable) by full triple enumeration."""
    pos = np.array([[e.position.x, e.position.y] for e in events], dtype=float).reshape(-1, 2)
    out = {}
    for s in sensors:
        d = np.sqrt(((pos - [s.position.x, s.position.y]) ** 2).sum(axis=1))
        heard = pos[d <= comm_range]
        noncollinear = 0
        for i, j, k in combinations(range(len(heard)), 3):
            m = np.array([[*heard[i], 1.0], [*heard[j], 1.0], [*heard[k], 1.0]])
            if abs(np.linalg.det(m)) > eps:
                noncollinear += 1
        out[s.id] = (len(heard), noncollinear > 0)
    return out
