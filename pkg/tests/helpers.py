"""Shared generators and brute-force oracles for the test-suite."""
import itertools
import random

import numpy as np

from torusdiag import IntMatrix


def random_unimodular(rng: random.Random, n: int, steps: int = 8, bound: int = 2) -> IntMatrix:
    """Product of random elementary integer column operations (det +1)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice([x for x in range(-bound, bound + 1) if x])
        for r in rows:
            r[j] += k * r[i]
    return IntMatrix(tuple(tuple(r) for r in rows))


def completable_by_search(directions, box=3) -> bool:
    """Exhaustive search for a completion with entries in [-box, box]."""
    dirs = np.array(directions, dtype=float)
    p, n = dirs.shape
    if p == n:
        return abs(round(np.linalg.det(dirs))) == 1
    cols = np.array(list(itertools.product(range(-box, box + 1), repeat=n)), dtype=float)
    extras = np.array(list(itertools.product(range(len(cols)), repeat=n - p)))
    mats = np.empty((len(extras), n, n))
    mats[:, :p, :] = dirs
    for k in range(n - p):
        mats[:, p + k, :] = cols[extras[:, k]]
    dets = np.rint(np.linalg.det(mats))
    return bool(np.any(np.abs(dets) == 1))


def in_hull_lp(point, others) -> bool:
    """Is ``point`` a convex combination of ``others``?  (float LP feasibility)"""
    from scipy.optimize import linprog

    if not others:
        return False
    pts = np.array(others, dtype=float).T
    k = pts.shape[1]
    a_eq = np.vstack([pts, np.ones((1, k))])
    b_eq = np.concatenate([np.array(point, dtype=float), [1.0]])
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def hull_vertices_lp(points):
    pts = sorted({tuple(p) for p in points})
    return tuple(p for p in pts if not in_hull_lp(p, [q for q in pts if q != p]))
