"""Independent oracles shared by the test modules.

Everything here uses plain Python integers so the checks do not share code paths
with the numpy implementations under test.
"""

from __future__ import annotations

import itertools

import pytest

from sumrank_lab.field import field_make


def rank_mod_p(rows, p: int) -> int:
    """Gaussian elimination over F_p on lists of ints."""
    m = [[int(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def poly_mulmod(a, b, mod, p: int):
    """Coefficient lists, constant first; ``mod`` monic."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    n = len(mod) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * mod[i]) % p
    return (prod + [0] * n)[:n]


def subspaces_by_brute_force(n: int, q: int) -> dict[int, int]:
    """Count subspaces of F_q^n (q prime) per dimension by closing spans of vector sets."""
    vecs = list(itertools.product(range(q), repeat=n))
    seen = set()
    frontier = {frozenset([tuple([0] * n)])}
    seen |= frontier
    while frontier:
        nxt = set()
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                span = set(S)
                for s in S:
                    for c in range(1, q):
                        span.add(tuple((a + c * b) % q for a, b in zip(s, v)))
                span = frozenset(span)
                if span not in seen:
                    seen.add(span)
                    nxt.add(span)
        frontier = nxt
    counts: dict[int, int] = {}
    for S in seen:
        d = 0
        while q**d < len(S):
            d += 1
        counts[d] = counts.get(d, 0) + 1
    return counts


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if _gcd(k, n) == 1)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@pytest.fixture(scope="session")
def F3():
    return field_make(3)


@pytest.fixture(scope="session")
def F5():
    return field_make(5)


@pytest.fixture(scope="session")
def F9():
    return field_make(3, 2)


# acceptance verdicts, filled by test_acceptance.py and printed once at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
