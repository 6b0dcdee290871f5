"""Linear rank-metric codes: orbit codes, their sums, Gabidulin codes and MRD checks."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidDimension,
    InvalidDistance,
    OrbitNotLinear,
    PreconditionViolation,
    ShapeMismatch,
)
from .field import GF, extension, field_make, find_primitive_poly
from .groups import OrthoGroup, build_A_matrices, build_G1, g2_for, matching_form
from .matrix import MatrixFq, batch_rank, companion_matrix, hconcat, rank_of, row_basis
from .scan import DEFAULT_BUDGET, check_budget, map_chunks, span_chunk


class RankCode:
    """F_q-span of ``rows x cols`` matrices, stored by an echelon basis."""

    def __init__(self, field: GF, rows: int, cols: int, basis, name: str = "", reduce: bool = True):
        arr = np.asarray(
            [b.data if isinstance(b, MatrixFq) else b for b in basis] if len(basis) else np.zeros((0, rows, cols)),
            dtype=np.int64,
        ).reshape(-1, rows * cols) % field.order
        if reduce:
            arr = row_basis(arr, field) if len(arr) else arr
        elif len(arr) and rank_of(arr, field) != len(arr):
            raise InvalidDimension("basis matrices are linearly dependent")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.flat = arr
        self.name = name
        self.meta: dict = {}
        self._min_distance: int | None = None

    @property
    def dim(self) -> int:
        return self.flat.shape[0]

    @property
    def cardinality(self) -> int:
        return self.field.order**self.dim

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def basis(self) -> list[MatrixFq]:
        return [MatrixFq(self.field, b.reshape(self.rows, self.cols)) for b in self.flat]

    def contains(self, M: MatrixFq) -> bool:
        v = M.data.reshape(1, -1)
        return rank_of(np.vstack([self.flat, v]), self.field) == self.dim

    def words(self, start: int, stop: int) -> np.ndarray:
        return span_chunk(self.flat, self.field, start, stop).reshape(-1, self.rows, self.cols)

    def rank_histogram(self, budget: int | None = DEFAULT_BUDGET, threads: int | None = None) -> dict[int, int]:
        """Counts of ranks over every code word, zero word included."""
        total = self.cardinality
        check_budget(total, budget, "rank code scan")

        def part(a: int, b: int) -> np.ndarray:
            return np.bincount(batch_rank(self.words(a, b), self.field), minlength=min(self.shape) + 1)

        counts = sum(map_chunks(part, total, threads))
        return {r: int(c) for r, c in enumerate(counts) if c}

    def params(self) -> tuple:
        return (self.shape, self.cardinality, min_rank_distance(self))


def min_rank_distance(C: RankCode, budget: int | None = DEFAULT_BUDGET, threads: int | None = None) -> int:
    """Exhaustive minimum rank over nonzero words (distance of a linear code)."""
    if C.dim == 0:
        raise InvalidDimension("the zero code has no minimum distance")
    if C._min_distance is None:
        hist = C.rank_histogram(budget, threads)
        C._min_distance = min(r for r in hist if r > 0)
    return C._min_distance


def singleton_rank_bound(m: int, n_cols: int, d: int, q: int) -> int:
    if not 1 <= d <= min(m, n_cols):
        raise InvalidDistance(f"d = {d} outside [1, {min(m, n_cols)}]")
    return q ** (max(m, n_cols) * (min(m, n_cols) - d + 1))


def is_mrd(C: RankCode, budget: int | None = DEFAULT_BUDGET) -> bool:
    d = min_rank_distance(C, budget)
    return C.cardinality == singleton_rank_bound(C.rows, C.cols, d, C.field.order)


def code_from_orbit(W: MatrixFq, G: OrthoGroup, name: str = "") -> RankCode:
    """{W g : g in G} with the zero word, checked to be an F_q-space."""
    if W.cols != G.form.size:
        raise ShapeMismatch(f"W has {W.cols} columns, group acts on {G.form.size}")
    if W.rank() != W.rows:
        raise PreconditionViolation("W must have full row rank")
    F = W.field
    orbit = {}
    for g in G.elements():
        img = (W @ g).data
        orbit.setdefault(img.tobytes(), img)
    points = np.array(list(orbit.values()), dtype=np.int64).reshape(len(orbit), -1)
    basis = row_basis(points, F)
    # orbit plus zero is contained in the span; equal sizes force equality
    if F.order ** len(basis) != len(orbit) + 1:
        raise OrbitNotLinear(f"orbit of size {len(orbit)} plus zero is not a subspace")
    C = RankCode(F, W.rows, W.cols, basis.reshape(-1, W.rows, W.cols), name=name, reduce=False)
    C.meta["orbit_size"] = len(orbit)
    C.meta["stabilizer_order"] = G.order // len(orbit)
    return C


def code_sum(C: RankCode, D: RankCode, name: str = "") -> RankCode:
    if C.shape != D.shape or C.field != D.field:
        raise ShapeMismatch(f"{C.shape} vs {D.shape}")
    stacked = np.vstack([C.flat, D.flat])
    S = RankCode(C.field, C.rows, C.cols, stacked.reshape(-1, C.rows, C.cols), name=name)
    S.meta["direct"] = S.dim == C.dim + D.dim
    return S


def _selector(F: GF, n: int, slots: int, which: int, pad: int) -> MatrixFq:
    """(0 .. I_n .. 0) with I_n in block ``which`` of ``slots``, then ``pad`` zero columns."""
    blocks = [MatrixFq.identity(F, n) if i == which else MatrixFq.zeros(F, n, n) for i in range(slots)]
    if pad:
        blocks.append(MatrixFq.zeros(F, n, pad))
    return hconcat(*blocks)


_C1_VARIANTS = {"2n": ("A1", 0), "2n+1": ("A2", 1), "2n+2": ("A3", 2)}
_C2_VARIANTS = {"4n": 0, "4n+1": 1, "4n+2": 2}


def construct_C1_family(q: int, n: int, variant: str = "2n", f_index: int = 0) -> RankCode:
    """C1 + C11 from the cyclic group G1: an (n x (2n+delta), q^{2n}, n) code."""
    if variant not in _C1_VARIANTS:
        raise ValueError(f"variant must be one of {sorted(_C1_VARIANTS)}")
    kind, pad = _C1_VARIANTS[variant]
    F = field_make(q)
    f = find_primitive_poly(F, n, f_index)
    A_g = companion_matrix(f)
    G = build_G1(build_A_matrices(A_g, kind), matching_form(kind, n, F))
    C1 = code_from_orbit(_selector(F, n, 2, 0, pad), G, "C1")
    C11 = code_from_orbit(_selector(F, n, 2, 1, pad), G, "C11")
    C = code_sum(C1, C11, f"C(1)[{variant}]")
    C.meta.update(parts=(C1, C11), group=G, poly=str(f), q=q, n=n)
    return C


def construct_C2_family(
    q: int, n: int, variant: str = "4n", f_index: int = 0, g_index: int | None = None
) -> RankCode:
    """D(1) + D(2) from the Abelian group G2: an (n x (4n+delta), q^{4n}, n) code.

    ``g_index=None`` picks the next primitive polynomial after ``f_index`` when one
    exists and reuses ``f`` otherwise (degree one over F_3 has a single choice).
    """
    if variant not in _C2_VARIANTS:
        raise ValueError(f"variant must be one of {sorted(_C2_VARIANTS)}")
    pad = _C2_VARIANTS[variant]
    F = field_make(q)
    if g_index is None:
        try:
            find_primitive_poly(F, n, f_index + 1)
            g_index = f_index + 1
        except IndexOutOfRange:
            g_index = f_index
    G = g2_for(F, n, trailing=pad, f_index=f_index, g_index=g_index, allow_equal=f_index == g_index)
    V = {name: _selector(F, n, 4, slot, pad) for name, slot in (("V1", 0), ("V'1", 1), ("V11", 2), ("V'11", 3))}
    orbit = {name: code_from_orbit(W, G, name) for name, W in V.items()}
    D1 = code_sum(orbit["V1"], orbit["V11"], "D(1)")
    D2 = code_sum(orbit["V'1"], orbit["V'11"], "D(2)")
    C = code_sum(D1, D2, f"C(2)[{variant}]")
    C.meta.update(parts=(D1, D2), orbits=orbit, group=G, q=q, n=n, f_index=f_index, g_index=g_index)
    return C


def gabidulin_code(q: int, n: int, k: int) -> RankCode:
    """[n, k, n-k+1] Gabidulin code as n x n matrices over F_q.

    Evaluation points are the power basis 1, a, ..., a^{n-1} of F_{q^n}; the
    F_q-basis is a^u x^{q^i} (u fastest), which is adapted to F_{q^n}-scaling.
    """
    if not 1 <= k <= n:
        raise InvalidDimension(f"k = {k} outside [1, {n}]")
    F = field_make(q)
    E = extension(F, n)
    alpha = q  # code of the root: coordinates (0, 1, 0, ...)
    if n == 1:
        alpha = 1
    points = [E.pow(alpha, j) for j in range(n)]
    basis = []
    for i in range(k):
        for u in range(n):
            coef = E.pow(alpha, u)
            vals = [int(E.mul(coef, E.pow(b, q**i))) for b in points]
            basis.append(E.to_coords(np.array(vals)).T)
    C = RankCode(F, n, n, basis, name=f"Gab[{n},{k}]", reduce=False)
    C.meta.update(q=q, n=n, k=k, adapted=True)
    return C


def extension_action(q: int, m: int) -> MatrixFq:
    """Multiplication by the canonical root of F_{q^m} on coordinate columns."""
    F = field_make(q)
    return companion_matrix(find_primitive_poly(F, m, 0))


def choice_invariance_check(q: int, n: int) -> bool:
    """Same (shape, |C|, d, MRD) for the first two primitive polynomials."""
    F = field_make(q)
    find_primitive_poly(F, n, 1)  # raises IndexOutOfRange when only one exists
    a = construct_C1_family(q, n, f_index=0)
    b = construct_C1_family(q, n, f_index=1)
    return a.params() == b.params() and is_mrd(a) == is_mrd(b)


def rank_code_report(C: RankCode, budget: int | None = DEFAULT_BUDGET, threads: int | None = None) -> dict:
    hist = C.rank_histogram(budget, threads)
    d = min(r for r in hist if r > 0)
    C._min_distance = d
    bound = singleton_rank_bound(C.rows, C.cols, d, C.field.order)
    return {
        "name": C.name,
        "shape": [C.rows, C.cols],
        "dim": C.dim,
        "cardinality": C.cardinality,
        "min_distance": d,
        "max_rank": max(hist),
        "rank_histogram": {str(r): c for r, c in sorted(hist.items())},
        "singleton_bound": bound,
        "is_mrd": C.cardinality == bound,
    }
