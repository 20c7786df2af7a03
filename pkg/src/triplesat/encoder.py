"""CNF encoding of Pythagorean-triple-free 2-partitions of {1..n}.

Variable i is true iff the integer i is placed in the positive part.
Each triple (a, b, c) with a^2 + b^2 = c^2 and c <= n contributes the
constraint that the three members do not all land in the same part:
(a | b | c) and (-a | -b | -c).
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from .cnf import Formula


def enumerate_triples(n):
    """All Pythagorean triples (a, b, c) with a < b < c <= n, sorted by (c, b, a)."""
    if n < 1:
        raise ValueError("n must be positive")
    triples = []
    limit = n * n
    for a in range(1, n):
        b_hi = math.isqrt(limit - a * a)
        if b_hi <= a:
            break
        b = np.arange(a + 1, b_hi + 1, dtype=np.int64)
        s = a * a + b * b
        c = np.rint(np.sqrt(s.astype(np.float64))).astype(np.int64)
        mask = c * c == s
        for bb, cc in zip(b[mask].tolist(), c[mask].tolist()):
            triples.append((a, bb, cc))
    triples.sort(key=lambda t: (t[2], t[1], t[0]))
    return triples


def encode(n):
    """Formula asserting a triple-free 2-partition of {1..n}; var bound is n."""
    clauses = []
    for a, b, c in enumerate_triples(n):
        clauses.append((a, b, c))
        clauses.append((-a, -b, -c))
    return Formula(clauses, num_vars=n)


def check_partition(n, partition):
    """First monochromatic triple in (c, b, a) order, or None if the partition is valid.

    partition maps integers to True (positive part) / False (negative part).
    Integers occurring in some triple must be assigned; others may be absent.
    """
    for triple in enumerate_triples(n):
        values = []
        for member in triple:
            if member not in partition:
                raise ValueError("integer %d occurs in triple %s but is unassigned"
                                 % (member, triple))
            values.append(bool(partition[member]))
        if values[0] == values[1] == values[2]:
            return triple
    return None


def occurrence_stats(formula):
    """Per-variable clause-membership counts.

    Returns (occurring variable count, Counter var -> occurrences, most
    frequent variable or None).  Ties go to the smallest variable index.
    """
    counts = Counter()
    for clause in formula.clauses:
        for var in {abs(l) for l in clause}:
            counts[var] += 1
    if not counts:
        return 0, counts, None
    best = min(counts, key=lambda v: (-counts[v], v))
    return len(counts), counts, best
