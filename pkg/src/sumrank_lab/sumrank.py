"""Sum-rank metric codes: words, codes, the two constructions and brute-force metrics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    BadFirstBlock,
    BasisSizeMismatch,
    DistanceOutOfRange,
    InvalidDimension,
    PreconditionViolation,
    ShapeMismatch,
    TooManyRows,
)
from .field import GF, extension, field_make
from .matrix import MatrixFq, batch_rank, field_matmul, nullspace, rank_of, row_basis
from .rankcodes import (
    RankCode,
    construct_C1_family,
    construct_C2_family,
    extension_action,
    gabidulin_code,
    min_rank_distance,
)
from .scan import DEFAULT_BUDGET, check_budget, digit_block, map_chunks, span_chunk


@dataclass(frozen=True)
class Shape:
    """Per-block matrix sizes ``rows[i] x cols[i]``."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ShapeMismatch("rows and cols must be nonempty and equally long")
        if min(self.rows + self.cols) < 1:
            raise ShapeMismatch("block sizes must be positive")

    @classmethod
    def uniform(cls, m: int, cols) -> Shape:
        cols = tuple(cols)
        return cls((m,) * len(cols), cols)

    @property
    def t(self) -> int:
        return len(self.cols)

    @property
    def N(self) -> int:
        return sum(self.cols)

    @property
    def sizes(self) -> list[int]:
        return [r * c for r, c in zip(self.rows, self.cols)]

    @property
    def length(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self) -> list[int]:
        return [0] + list(itertools.accumulate(self.sizes))

    @property
    def max_weight(self) -> int:
        return sum(min(r, c) for r, c in zip(self.rows, self.cols))

    def split(self, flat: np.ndarray) -> list[np.ndarray]:
        """(B, length) -> per-block arrays (B, r_i, c_i)."""
        off = self.offsets
        return [
            flat[:, off[i] : off[i + 1]].reshape(-1, self.rows[i], self.cols[i]) for i in range(self.t)
        ]

    def label(self) -> str:
        return "(" + "|".join(f"{r}x{c}" for r, c in zip(self.rows, self.cols)) + ")"


@dataclass(frozen=True)
class SumRankWord:
    blocks: tuple[MatrixFq, ...]

    @property
    def shape(self) -> Shape:
        return Shape(tuple(b.rows for b in self.blocks), tuple(b.cols for b in self.blocks))

    @property
    def field(self) -> GF:
        return self.blocks[0].field

    def flat(self) -> np.ndarray:
        return np.concatenate([b.data.reshape(-1) for b in self.blocks])

    @classmethod
    def from_flat(cls, field: GF, shape: Shape, flat) -> SumRankWord:
        parts = shape.split(np.asarray(flat, dtype=np.int64).reshape(1, -1))
        return cls(tuple(MatrixFq(field, p[0]) for p in parts))

    def __sub__(self, other: SumRankWord) -> SumRankWord:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape.label()} vs {other.shape.label()}")
        return SumRankWord(tuple(a - b for a, b in zip(self.blocks, other.blocks)))


def sumrank_weight(X: SumRankWord) -> int:
    return sum(b.rank() for b in X.blocks)


def sumrank_distance(X: SumRankWord, Y: SumRankWord) -> int:
    return sumrank_weight(X - Y)


def batch_weights(flat: np.ndarray, shape: Shape, F: GF) -> np.ndarray:
    return sum(batch_rank(part, F) for part in shape.split(flat))


# --------------------------------------------------------------------------------------
# vector form over F_{q^m}


def ext_field(q: int, m: int) -> GF:
    return extension(field_make(q), m)


def mat_vec_convert(X: SumRankWord, m: int) -> np.ndarray:
    """Column j of each block -> sum_u X[u, j] a^u in F_{q^m}; rows below m count as zero."""
    E = ext_field(X.field.order, m)
    out = []
    for b in X.blocks:
        if b.rows > m:
            raise ShapeMismatch(f"block has {b.rows} rows, more than m = {m}")
        coords = np.zeros((b.cols, m), dtype=np.int64)
        coords[:, : b.rows] = b.data.T
        out.append(E.from_coords(coords))
    return np.concatenate(out)


def vec_mat_convert(v, shape: Shape, q: int, m: int) -> SumRankWord:
    """Inverse of mat_vec_convert; coordinates beyond each block's row count must vanish."""
    E = ext_field(q, m)
    F = field_make(q)
    v = np.asarray(v, dtype=np.int64)
    if len(v) != shape.N:
        raise ShapeMismatch(f"vector of length {len(v)} for N = {shape.N}")
    blocks = []
    pos = 0
    for r, c in zip(shape.rows, shape.cols):
        coords = E.to_coords(v[pos : pos + c]).reshape(c, m)
        if coords[:, r:].any():
            raise ShapeMismatch("vector entry does not fit the block's row count")
        blocks.append(MatrixFq(F, coords[:, :r].T))
        pos += c
    return SumRankWord(tuple(blocks))


def vector_rank_q(v, q: int, m: int) -> int:
    """dim over F_q of the span of the entries of ``v``."""
    E = ext_field(q, m)
    return rank_of(E.to_coords(np.asarray(v, dtype=np.int64)).reshape(-1, m), field_make(q))


def phi_pad(C_i: MatrixFq, target_rows: int) -> MatrixFq:
    """Append zero rows up to ``target_rows``; rank is unchanged."""
    if C_i.rows > target_rows:
        raise TooManyRows(f"{C_i.rows} rows exceed target {target_rows}")
    out = np.zeros((target_rows, C_i.cols), dtype=np.int64)
    out[: C_i.rows] = C_i.data
    return MatrixFq(C_i.field, out)


# --------------------------------------------------------------------------------------
# codes


class SumRankCode:
    """F_q-span of words of a fixed shape, flattened block after block."""

    def __init__(self, field: GF, shape: Shape, basis, m: int | None = None, name: str = "", reduce: bool = True):
        arr = np.asarray(basis, dtype=np.int64).reshape(-1, shape.length) % field.order
        self.ordered_basis = arr
        if reduce and len(arr):
            arr = row_basis(arr, field)
        elif len(arr) and rank_of(arr, field) != len(arr):
            raise InvalidDimension("basis words are linearly dependent")
        self.field = field
        self.shape = shape
        self.flat = arr
        self.m = m
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
    def basis(self) -> list[SumRankWord]:
        return [SumRankWord.from_flat(self.field, self.shape, b) for b in self.flat]

    def words(self, start: int, stop: int) -> np.ndarray:
        return span_chunk(self.flat, self.field, start, stop)

    def contains_flat(self, flat: np.ndarray) -> np.ndarray:
        """Membership of each row of ``flat`` via the parity check."""
        return ~np.asarray(self.syndromes(flat)).any(axis=1)

    @cached_property
    def parity_check(self) -> np.ndarray:
        if self.dim == 0:
            return np.eye(self.shape.length, dtype=np.int64)
        return nullspace(self.flat, self.field)

    def syndromes(self, flat: np.ndarray) -> np.ndarray:
        return field_matmul(np.asarray(flat, dtype=np.int64), self.parity_check.T, self.field)

    def weight_histogram(self, budget: int | None = DEFAULT_BUDGET, threads: int | None = None) -> dict[int, int]:
        total = self.cardinality
        check_budget(total, budget, "sum-rank code scan")

        def part(a: int, b: int) -> np.ndarray:
            w = batch_weights(self.words(a, b), self.shape, self.field)
            return np.bincount(w, minlength=self.shape.max_weight + 1)

        counts = sum(map_chunks(part, total, threads))
        return {w: int(c) for w, c in enumerate(counts) if c}

    @property
    def min_distance(self) -> int:
        if self._min_distance is None:
            self._min_distance = sumrank_min_distance(self)
        return self._min_distance

    # F_{q^m}-structure ---------------------------------------------------------
    def _scaled(self, vecs: np.ndarray) -> np.ndarray:
        M = extension_action(self.field.order, self.m).data
        parts = [field_matmul(M, p, self.field).reshape(len(vecs), -1) for p in self.shape.split(vecs)]
        return np.concatenate(parts, axis=1)

    @cached_property
    def is_extension_linear(self) -> bool:
        """Closure under multiplication by the root of F_{q^m}, tested on the basis."""
        if self.m is None or any(r != self.m for r in self.shape.rows) or self.dim == 0:
            return False
        return bool(self.contains_flat(self._scaled(self.flat)).all())

    @property
    def k(self) -> int | None:
        return self.dim // self.m if self.is_extension_linear else None

    @cached_property
    def adapted_basis(self) -> np.ndarray | None:
        """Ordered F_q-basis [a^u c_r] (u fastest) when the code is F_{q^m}-linear."""
        if not self.is_extension_linear:
            return None
        return extension_adapted(self.ordered_basis, self.shape, self.field, self.m)

    def generator_matrix(self) -> np.ndarray:
        """k x N generator matrix over F_{q^m} (codes of the extension field)."""
        if self.adapted_basis is None:
            from .errors import NotExtensionLinear

            raise NotExtensionLinear(f"{self.name or 'code'} is not F_{{q^{self.m}}}-linear")
        rows = self.adapted_basis[:: self.m]
        return np.array(
            [mat_vec_convert(SumRankWord.from_flat(self.field, self.shape, r), self.m) for r in rows],
            dtype=np.int64,
        )


def extension_adapted(basis: np.ndarray, shape: Shape, F: GF, m: int) -> np.ndarray:
    M = extension_action(F.order, m).data
    out: list[np.ndarray] = []
    for vec in basis:
        if out and rank_of(np.vstack(out + [vec]), F) == len(out):
            continue
        cur = vec.copy()
        for _ in range(m):
            out.append(cur)
            cur = np.concatenate(
                [field_matmul(M, p, F).reshape(-1) for p in shape.split(cur[None])]
            )
    return np.array(out, dtype=np.int64)


def sumrank_min_distance(C: SumRankCode, budget: int | None = DEFAULT_BUDGET, threads: int | None = None) -> int:
    if C.dim == 0:
        raise InvalidDimension("the zero code has no minimum distance")
    hist = C.weight_histogram(budget, threads)
    return min(w for w in hist if w > 0)


# --------------------------------------------------------------------------------------
# Singleton bound


def _j_delta(cols: tuple[int, ...], m: int, d: int) -> tuple[int, int]:
    cap = sum(min(m, n) for n in cols)
    if not 1 <= d <= cap:
        raise DistanceOutOfRange(f"d = {d} outside [1, {cap}]")
    rest = d - 1
    for j, n in enumerate(cols):
        if rest <= min(m, n) - 1:
            return j, rest
        rest -= min(m, n)
    raise DistanceOutOfRange("no admissible (j, delta)")  # pragma: no cover


def sr_singleton_bound(shape, m: int, d: int, q: int) -> int:
    """q^{m * sum_{i>=j} n_i - max(m, n_j) * delta} for the non-increasing reordering of ``shape``."""
    cols = tuple(sorted(shape.cols if isinstance(shape, Shape) else shape, reverse=True))
    j, delta = _j_delta(cols, m, d)
    return q ** (m * sum(cols[j:]) - max(m, cols[j]) * delta)


def matrix_singleton_bound(shape: Shape, d: int, q: int) -> int:
    """Smallest Singleton bound over the views with a common block dimension."""
    bounds = []
    if len(set(shape.rows)) == 1:
        bounds.append(sr_singleton_bound(shape.cols, shape.rows[0], d, q))
    if len(set(shape.cols)) == 1:
        bounds.append(sr_singleton_bound(shape.rows, shape.cols[0], d, q))
    if not bounds:
        raise ShapeMismatch("no common block dimension")
    return min(bounds)


def is_msrd(C: SumRankCode, d: int | None = None) -> bool:
    d = C.min_distance if d is None else d
    return C.cardinality == matrix_singleton_bound(C.shape, d, C.field.order)


# --------------------------------------------------------------------------------------
# padded-block construction


def construct1(C_mrd: RankCode, m_list, name: str = "") -> SumRankCode:
    """Words (c - sum phi_i(C_i) | C_2 | ... | C_t) with c in C_mrd and free C_i."""
    if C_mrd.rows != 2 or min_rank_distance(C_mrd) != 2:
        raise BadFirstBlock("the first block must be a 2-row code of minimum distance 2")
    m_list = tuple(int(x) for x in m_list)
    if any(not 1 <= x <= 2 for x in m_list) or list(m_list) != sorted(m_list, reverse=True):
        raise PreconditionViolation("need 2 >= m_2 >= ... >= m_t >= 1")
    F, w = C_mrd.field, C_mrd.cols
    shape = Shape((2,) + m_list, (w,) * (1 + len(m_list)))
    off = shape.offsets
    rows = []
    for b in C_mrd.flat:
        v = np.zeros(shape.length, dtype=np.int64)
        v[: 2 * w] = b
        rows.append(v)
    for i, mi in enumerate(m_list, start=1):
        for pos in range(mi * w):
            v = np.zeros(shape.length, dtype=np.int64)
            v[off[i] + pos] = 1
            # -phi_i(E) in the first block: same position, padded rows stay zero
            v[pos] = F.neg(1)
            rows.append(v)
    C = SumRankCode(F, shape, np.array(rows), m=2, name=name or "C1bar", reduce=False)
    C.meta["first_block"] = C_mrd
    return C


def rank_one_matrices(F: GF, rows: int, cols: int) -> np.ndarray:
    """Every rank-1 ``rows x cols`` matrix, as u v^t with u, v normalized and a scalar."""
    q = F.order

    def normalized(n: int) -> np.ndarray:
        vecs = digit_block(1, q**n, n, q)
        lead = vecs[np.arange(len(vecs)), (vecs != 0).argmax(axis=1)]
        return vecs[lead == 1]

    U, V = normalized(rows), normalized(cols)
    scal = np.arange(1, q)
    out = F.mul(
        F.mul(scal[:, None, None, None, None], U[None, :, None, :, None]), V[None, None, :, None, :]
    )
    return out.reshape(-1, rows, cols)


def verify_construction1(
    C: SumRankCode, budget: int | None = DEFAULT_BUDGET, samples: int = 20000, seed: int = 0
) -> dict:
    """Distance 2 check: exhaustive within budget, otherwise guided by the free-part weight.

    Free part of weight 0 means a nonzero word of the first-block code; weight 1 means
    one free block of rank 1, where the first block is c - phi_l(C_l) and vanishes iff
    phi_l(C_l) lies in the first-block code; weight >= 2 needs no check.
    """
    if budget is None or C.cardinality <= budget:
        hist = C.weight_histogram(budget)
        d = min(w for w in hist if w > 0)
        return {"scan_mode": "exhaustive", "d": d, "weight2_exists": hist.get(2, 0) > 0, "words_checked": C.cardinality}
    C_mrd: RankCode = C.meta["first_block"]
    d0 = min_rank_distance(C_mrd, budget)
    F = C.field
    free_ok = True
    checked = C_mrd.cardinality
    for mi in set(C.shape.rows[1:]):
        R1 = rank_one_matrices(F, mi, C.shape.cols[0])
        padded = np.zeros((len(R1), 2, C.shape.cols[0]), dtype=np.int64)
        padded[:, :mi] = R1
        flat = padded.reshape(len(R1), -1)
        inside = ~field_matmul(flat, nullspace(C_mrd.flat, F).T, F).any(axis=1)
        free_ok &= not inside.any()
        checked += len(R1)
    check_budget(checked + samples, budget, "proof-guided construction 1 check")
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, F.order, size=(samples, C.dim))
    sampled = batch_weights(field_matmul(coeffs, C.flat, F), C.shape, F)
    sampled = sampled[coeffs.any(axis=1)]
    lower = min(d0, 2 if free_ok else 1)
    return {
        "scan_mode": "proof-guided partial",
        "d": int(min(lower, sampled.min())) if len(sampled) else lower,
        "weight2_exists": d0 == 2,
        "words_checked": checked + samples,
    }


def construct_C1bar(q: int, t: int, m_list=None, f_index: int = 0) -> SumRankCode:
    m_list = (2,) * (t - 1) if m_list is None else tuple(m_list)
    return construct1(construct_C1_family(q, 2, f_index=f_index), m_list, name="C1bar")


def construct_C2bar(q: int, t: int, m_list=None, f_index: int = 0, g_index: int | None = None) -> SumRankCode:
    m_list = (2,) * (t - 1) if m_list is None else tuple(m_list)
    return construct1(construct_C2_family(q, 2, f_index=f_index, g_index=g_index), m_list, name="C2bar")


# --------------------------------------------------------------------------------------
# extension-field construction


def _ordered(C: RankCode, m: int) -> np.ndarray:
    shape = Shape((C.rows,), (C.cols,))
    code = SumRankCode(C.field, shape, C.flat, m=m, reduce=False)
    basis = code.adapted_basis
    return C.flat if basis is None else basis


def construct2(components: list[RankCode], tail: RankCode, pairing=None, name: str = "") -> SumRankCode:
    """F_q-span of (A_{1,j} | ... | A_{t-1,j} | C_{t,j}) over paired ordered bases.

    Bases adapted to F_{q^n}-scaling are used whenever a code admits them, so the
    pairing commutes with the extension action. ``pairing`` permutes the tail basis.
    """
    n = tail.rows
    for A in components:
        if A.dim != tail.dim:
            raise BasisSizeMismatch(f"component basis size {A.dim} vs tail {tail.dim}")
        if A.rows != n:
            raise ShapeMismatch("components and tail must have the same row count")
    tail_basis = _ordered(tail, n)
    if pairing is not None:
        tail_basis = tail_basis[list(pairing)]
    blocks = [_ordered(A, n) for A in components] + [tail_basis]
    shape = Shape(tuple(A.rows for A in components) + (n,), tuple(A.cols for A in components) + (tail.cols,))
    C = SumRankCode(tail.field, shape, np.concatenate(blocks, axis=1), m=n, name=name or "C3bar", reduce=False)
    C.meta.update(components=components, tail=tail)
    return C


def construct_C3bar(q: int, n: int, t: int, f_index: int = 0, pairing=None) -> SumRankCode:
    tail = construct_C1_family(q, n, f_index=f_index)
    comps = [gabidulin_code(q, n, 2) for _ in range(t - 1)] if n >= 2 else []
    if n < 2:
        raise PreconditionViolation("component codes (n x n, q^{2n}, n-1) need n >= 2")
    return construct2(comps, tail, pairing, name="C3bar")


def construct_C4bar(q: int, n: int, t: int, f_index: int = 0, g_index: int | None = None) -> SumRankCode:
    if n < 4:
        raise PreconditionViolation("component codes (n x n, q^{4n}, n-3) need n >= 4")
    tail = construct_C2_family(q, n, f_index=f_index, g_index=g_index)
    return construct2([gabidulin_code(q, n, 4) for _ in range(t - 1)], tail, name="C4bar")


# --------------------------------------------------------------------------------------
# coset machinery: covering radius, list sizes, sphere counts


class CosetEngine:
    """Enumerates ambient words by sum-rank weight and bins them by syndrome."""

    def __init__(self, C: SumRankCode, budget: int | None = DEFAULT_BUDGET):
        self.C = C
        self.F = C.field
        self.budget = budget
        H = C.parity_check
        self.r = H.shape[0]
        check_budget(self.F.order**self.r, budget, "coset table")
        self.n_cosets = self.F.order**self.r
        self.radix = self.F.order ** np.arange(self.r, dtype=np.int64)
        self._blocks: list[dict[int, np.ndarray]] = []
        off = C.shape.offsets
        for i, size in enumerate(C.shape.sizes):
            check_budget(self.F.order**size, budget, f"block {i} enumeration")
            mats = digit_block(0, self.F.order**size, size, self.F.order)
            ranks = batch_rank(mats.reshape(-1, C.shape.rows[i], C.shape.cols[i]), self.F)
            syn = field_matmul(mats, H[:, off[i] : off[i + 1]].T, self.F)
            self._blocks.append({int(rk): syn[ranks == rk] for rk in np.unique(ranks)})

    def _compositions(self, w: int):
        caps = [max(b) for b in self._blocks]

        def rec(i: int, left: int):
            if i == len(caps):
                if left == 0:
                    yield ()
                return
            for r in range(min(left, caps[i]) + 1):
                if r in self._blocks[i]:
                    for rest in rec(i + 1, left - r):
                        yield (r,) + rest

        return rec(0, w)

    def count_of_weight(self, w: int) -> int:
        return sum(int(np.prod([len(self._blocks[i][r]) for i, r in enumerate(c)])) for c in self._compositions(w))

    def syndromes_of_weight(self, w: int):
        """Yields coset indices of every ambient word of weight exactly ``w``."""
        for comp in self._compositions(w):
            acc = np.zeros((1, self.r), dtype=np.int64)
            for i, rk in enumerate(comp):
                part = self._blocks[i][rk]
                acc = self.F.add(acc[:, None, :], part[None, :, :]).reshape(-1, self.r)
            yield acc @ self.radix

    def coset_weight_counts(self, max_weight: int) -> np.ndarray:
        """counts[s, w] = ambient words of weight w in coset s, for w <= max_weight."""
        total = sum(self.count_of_weight(w) for w in range(max_weight + 1))
        check_budget(total, self.budget, "ambient words by weight")
        out = np.zeros((self.n_cosets, max_weight + 1), dtype=np.int64)
        for w in range(max_weight + 1):
            for idx in self.syndromes_of_weight(w):
                out[:, w] += np.bincount(idx, minlength=self.n_cosets)
        return out

    def covering_radius(self) -> int:
        best = np.full(self.n_cosets, -1, dtype=np.int64)
        used = 0
        for w in range(self.C.shape.max_weight + 1):
            used += self.count_of_weight(w)
            check_budget(used, self.budget, "covering radius scan")
            for idx in self.syndromes_of_weight(w):
                fresh = idx[best[idx] < 0]
                best[fresh] = w
            if (best >= 0).all():
                return w
        raise RuntimeError("cosets left uncovered")  # pragma: no cover


def covering_radius(C: SumRankCode, budget: int | None = DEFAULT_BUDGET) -> int:
    return CosetEngine(C, budget).covering_radius()


def list_decodable_check(
    C: SumRankCode,
    tau: int,
    mode: str = "exact",
    budget: int | None = DEFAULT_BUDGET,
    samples: int = 200,
    seed: int = 0,
) -> dict:
    """Largest number of code words in a radius-``tau`` ball.

    Exact mode is the maximum over all centers via coset reduction; sampled mode scans
    seeded random centers and yields a lower bound only.
    """
    if tau < 0:
        raise PreconditionViolation("tau must be non-negative")
    if mode == "exact":
        counts = CosetEngine(C, budget).coset_weight_counts(min(tau, C.shape.max_weight))
        return {"L": int(counts.sum(axis=1).max()), "mode": "exact", "is_lower_bound": False}
    if mode != "sampled":
        raise ValueError("mode must be 'exact' or 'sampled'")
    check_budget(C.cardinality * samples, budget, "sampled list decoding")
    rng = np.random.default_rng(seed)
    F = C.field
    words = C.words(0, C.cardinality)
    best = 0
    for _ in range(samples):
        x = rng.integers(0, F.order, size=C.shape.length)
        diffs = F.sub(x[None, :], words)
        best = max(best, int((batch_weights(diffs, C.shape, F) <= tau).sum()))
    return {"L": best, "mode": "sampled", "is_lower_bound": True}


def sphere_intersection_counts(C: SumRankCode, r_max: int, budget: int | None = DEFAULT_BUDGET) -> list[int]:
    """max over centers of |S(x, r) with C| for r = 0..r_max."""
    counts = CosetEngine(C, budget).coset_weight_counts(r_max)
    return [int(v) for v in counts.max(axis=0)]


def sumrank_report(C: SumRankCode, budget: int | None = DEFAULT_BUDGET, with_covering: bool = False) -> dict:
    if C.name in ("C1bar", "C2bar") and "first_block" in C.meta:
        scan = verify_construction1(C, budget)
        d, mode = scan["d"], scan["scan_mode"]
    else:
        d, mode = sumrank_min_distance(C, budget), "exhaustive"
    C._min_distance = d
    bound = matrix_singleton_bound(C.shape, d, C.field.order)
    out = {
        "name": C.name,
        "shape": C.shape.label(),
        "dim_q": C.dim,
        "k_over_ext": C.k,
        "m": C.m,
        "cardinality": C.cardinality,
        "d": d,
        "singleton_bound": bound,
        "is_msrd": C.cardinality == bound,
        "scan_mode": mode,
    }
    if with_covering:
        out["covering_radius"] = covering_radius(C, budget)
    return out
