"""Slow, independent reference implementations used to check the fast code.

Everything here is deliberately written the naive way: explicit Python
loops, tuples, string keys, and Counter histograms.  Nothing imports the
package under test.
"""

import math
from collections import Counter


def embed(seq, m, d):
    """All length-m windows with delay d, as tuples, in order."""
    return [
        tuple(seq[i + k * d] for k in range(m))
        for i in range(len(seq) - (m - 1) * d)
    ]


def dispersion_key_counts(u, m, d):
    """String-key histogram of raw class windows."""
    return Counter("|".join(str(v) for v in w) for w in embed(u, m, d))


def freq_dispersion_key_counts(u, m, d):
    """String-key histogram of adjacent-difference windows."""
    keys = []
    for w in embed(u, m, d):
        diffs = tuple(w[k + 1] - w[k] for k in range(len(w) - 1))
        keys.append("|".join(str(v) for v in diffs))
    return Counter(keys)


def ordinal_pattern(window):
    """Indices of the window's samples in ascending order, earlier index
    first on ties."""
    return tuple(sorted(range(len(window)), key=lambda i: (window[i], i)))


def ordinal_key_counts(x, m, d):
    return Counter(
        "|".join(str(i) for i in ordinal_pattern(w)) for w in embed(x, m, d)
    )


def lehmer_code(perm):
    """Integer in [0, m!) for a permutation given as a tuple of indices."""
    code = 0
    m = len(perm)
    for j in range(m - 1):
        smaller = sum(1 for k in range(j + 1, m) if perm[k] < perm[j])
        code += smaller * math.factorial(m - 1 - j)
    return code


def key_of(vector):
    return "|".join(str(int(v)) for v in vector)


def sampen_match_counts(x, m, r_abs):
    """(A, B) template-match counts by direct double loop.

    Both template lengths use the first len(x) - m starting positions;
    pairs are counted once (i < j); distance is Chebyshev.
    """
    n_templates = len(x) - m
    count_b = 0
    count_a = 0
    for i in range(n_templates - 1):
        for j in range(i + 1, n_templates):
            dist_m = max(abs(x[i + t] - x[j + t]) for t in range(m))
            if dist_m <= r_abs:
                count_b += 1
                if max(dist_m, abs(x[i + m] - x[j + m])) <= r_abs:
                    count_a += 1
    return count_a, count_b


def two_pass_mean_sd(values):
    """Population mean and SD by the textbook two-pass formula."""
    n = len(values)
    mean = sum(values) / n
    variance = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(variance)
