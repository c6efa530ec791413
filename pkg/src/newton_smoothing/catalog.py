"""Named example polynomials and small generators of nondegenerate families."""
from __future__ import annotations

import random

EXAMPLES = {
    "interior-mixed": "t1^2 + t1^4*t2^6 + t2^8",
    "two-term": "t1^2 + t2^4",
    "even-positive": "t1^6 + t1^2*t2^4 + t1^4*t2^2 + t2^6",
    "square-degenerate": "t1^4 - 2*t1^2*t2^2 + t2^4",
    "mixed-only": "t1^2 + t1^2*t2^2",
    "ray-below-diagonal": "t1^2 + t1^8*t2^2",
    "two-link-chain": "t1^2 + t1^2*t2^4 + t2^8",
    "swapped-input": "t1^6 + t1^2*t2^2 + t2^2",
}

# the two polynomials used throughout the numerical checks
P_A = EXAMPLES["interior-mixed"]
P_B = EXAMPLES["two-term"]


def _even(rng: random.Random, lo: int, hi: int) -> int:
    return 2 * rng.randint(lo // 2, hi // 2)


def three_term_family(count: int, seed: int = 0) -> list[str]:
    """t1^2 + t1^a t2^b + t2^M with a, b, M positive and even."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, b, M = _even(rng, 2, 10), _even(rng, 2, 10), _even(rng, 2, 12)
        text = f"t1^2 + t1^{a}*t2^{b} + t2^{M}"
        if text not in out:
            out.append(text)
    return out


def positive_even_family(count: int, seed: int = 0) -> list[str]:
    """t1^m0 plus positive multiples of t1^m t2^n, all exponents even, m >= m0."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m0 = _even(rng, 2, 8)
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m, n = _even(rng, m0, m0 + 8), _even(rng, 2, 10)
            terms[(m, n)] = rng.randint(1, 9)
        body = " + ".join(f"{c}*t1^{m}*t2^{n}" for (m, n), c in sorted(terms.items()))
        text = f"t1^{m0} + {body}"
        if text not in out:
            out.append(text)
    return out
