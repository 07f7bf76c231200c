"""Independent reference implementations used only by the tests.

Quantifiers are evaluated term by term in 50-digit mpmath arithmetic;
ordinal patterns by sorting offsets and looking them up in the
lexicographic list of permutations.
"""

import itertools

import mpmath

mpmath.mp.dps = 50


def mp_entropy(p):
    return -mpmath.fsum(mpmath.mpf(x) * mpmath.log(mpmath.mpf(x)) for x in p if x > 0)


def mp_js(p, q):
    mid = [(mpmath.mpf(a) + mpmath.mpf(b)) / 2 for a, b in zip(p, q)]
    return mp_entropy(mid) - mp_entropy(p) / 2 - mp_entropy(q) / 2


def mp_uniform(m):
    return [mpmath.mpf(1) / m] * m


def mp_disequilibrium(p):
    m = len(p)
    delta = [1] + [0] * (m - 1)
    return mp_js(p, mp_uniform(m)) / mp_js(delta, mp_uniform(m))


def mp_normalized_entropy(p):
    return mp_entropy(p) / mpmath.log(len(p))


def mp_complexity(p):
    return mp_disequilibrium(p) * mp_normalized_entropy(p)


def brute_pattern_index(vector):
    d = len(vector)
    order = tuple(sorted(range(d), key=lambda i: (vector[i], i)))
    return list(itertools.permutations(range(d))).index(order)


def brute_counts(values, dimension, delay):
    counts = [0] * len(list(itertools.permutations(range(dimension))))
    span = (dimension - 1) * delay
    for s in range(len(values) - span):
        counts[brute_pattern_index([values[s + k * delay] for k in range(dimension)])] += 1
    return counts
