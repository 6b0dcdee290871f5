"""Systems of F_q-subspaces attached to F_{q^m}-linear sum-rank codes, and subspace designs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bounds import family_design_bound, gaussian_binomial
from .errors import NotExtensionLinear, PreconditionViolation, ShapeMismatch
from .field import GF, field_make
from .matrix import batch_rank, field_matmul, rank_of, row_basis
from .scan import DEFAULT_BUDGET, check_budget, digit_block, ranges
from .sumrank import Shape, SumRankCode, batch_weights, ext_field


def expand(vecs: np.ndarray, E: GF) -> np.ndarray:
    """Vectors over F_{q^m} (..., k) -> F_q-coordinates (..., k*m)."""
    c = E.to_coords(np.asarray(vecs, dtype=np.int64))
    return c.reshape(c.shape[:-2] + (-1,))


def _root_powers(E: GF, m: int) -> np.ndarray:
    alpha = E.base.order if m > 1 else 1
    return np.array([E.pow(alpha, u) for u in range(m)], dtype=np.int64)


def fq_span_rows(vecs: np.ndarray, E: GF, m: int) -> np.ndarray:
    """F_q-spanning set {a^u v} of the F_{q^m}-span of the rows ``vecs`` (..., s, k)."""
    powers = _root_powers(E, m)
    scaled = E.mul(powers[:, None], vecs[..., :, None, :])  # (..., s, m, k)
    return scaled.reshape(scaled.shape[:-3] + (-1, vecs.shape[-1]))


@dataclass
class SystemH:
    """Ordered F_q-subspaces H_j of F_{q^m}^k, each given by basis rows over F_{q^m}."""

    q: int
    m: int
    k: int
    blocks: list[np.ndarray]

    def __post_init__(self):
        self.E = ext_field(self.q, self.m)
        self.F = field_make(self.q)
        for j, b in enumerate(self.blocks):
            if b.ndim != 2 or b.shape[1] != self.k:
                raise ShapeMismatch(f"block {j} must be (n_j, {self.k})")
            if rank_of(expand(b, self.E), self.F) != b.shape[0]:
                raise ShapeMismatch(f"block {j} basis is not F_q-independent")

    @property
    def dims(self) -> list[int]:
        return [b.shape[0] for b in self.blocks]

    @property
    def N(self) -> int:
        return sum(self.dims)

    @property
    def shape(self) -> Shape:
        return Shape.uniform(self.m, self.dims)

    def spans_everything(self) -> bool:
        stacked = np.vstack(self.blocks)
        return rank_of(stacked, self.E) == self.k

    def generator_matrix(self) -> np.ndarray:
        return np.hstack([b.T for b in self.blocks])


@dataclass(frozen=True)
class DesignParams:
    s: int
    A: int


def phi_code_to_system(C: SumRankCode) -> SystemH:
    """H_j = F_q-span of the columns of block j of a generator matrix over F_{q^m}."""
    if C.k is None:
        raise NotExtensionLinear(f"{C.name or 'code'} is not linear over F_{{q^m}}")
    G = C.generator_matrix()
    blocks, pos = [], 0
    for c in C.shape.cols:
        blocks.append(G[:, pos : pos + c].T.copy())
        pos += c
    return SystemH(C.field.order, C.m, C.k, blocks)


def vectors_to_flat(V: np.ndarray, shape: Shape, E: GF, m: int) -> np.ndarray:
    coords = E.to_coords(np.asarray(V, dtype=np.int64))  # (B, N, m)
    parts, pos = [], 0
    for r, c in zip(shape.rows, shape.cols):
        blk = np.swapaxes(coords[:, pos : pos + c, :r], 1, 2)
        parts.append(blk.reshape(len(V), -1))
        pos += c
    return np.concatenate(parts, axis=1)


def psi_system_to_code(H: SystemH, name: str = "psi") -> SumRankCode:
    G = H.generator_matrix()
    rows = fq_span_rows(G, H.E, H.m)
    flat = vectors_to_flat(rows, H.shape, H.E, H.m)
    return SumRankCode(H.F, H.shape, flat, m=H.m, name=name)


def definition10_max(H: SystemH, budget: int | None = DEFAULT_BUDGET) -> dict:
    """max over hyperplanes ker(l) of sum_j dim_q(H_j cap ker l) = N - min_l w_SR(l G)."""
    Q = H.E.order
    count = (Q**H.k - 1) // (Q - 1)
    check_budget(count, budget, "projective functionals")
    G = H.generator_matrix()
    best, witness = -1, None
    for lead in range(H.k):
        tail = H.k - lead - 1
        for a, b in ranges(Q**tail):
            lam = np.zeros((b - a, H.k), dtype=np.int64)
            lam[:, lead] = 1
            lam[:, lead + 1 :] = digit_block(a, b, tail, Q)
            vals = field_matmul(lam, G, H.E)
            flat = vectors_to_flat(vals, H.shape, H.E, H.m)
            sums = H.N - batch_weights(flat, H.shape, H.F)
            i = int(sums.argmax())
            if sums[i] > best:
                best, witness = int(sums[i]), lam[i]
    return {"max_sum": best, "hyperplanes": count, "witness_functional": witness.tolist()}


def iter_subspaces(E: GF, k: int, s: int, chunk: int = 1 << 13):
    """Reduced echelon bases (B, s, k) of every s-dimensional subspace of F^k."""
    Q = E.order
    for piv in itertools.combinations(range(k), s):
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, k) if j not in piv]
        for a, b in ranges(Q ** len(free), chunk):
            W = np.zeros((b - a, s, k), dtype=np.int64)
            for i, p in enumerate(piv):
                W[:, i, p] = 1
            vals = digit_block(a, b, len(free), Q)
            for t, (i, j) in enumerate(free):
                W[:, i, j] = vals[:, t]
            yield W


def design_check(H: SystemH, params: DesignParams, budget: int | None = DEFAULT_BUDGET) -> dict:
    """Max over s-dim F_{q^m}-subspaces W of sum_j dim_q(H_j cap W), with a witness."""
    s, A = params.s, params.A
    if not 0 <= s <= H.k or A < 0:
        raise PreconditionViolation("need 0 <= s <= k and A >= 0")
    check_budget(gaussian_binomial(H.k, s, H.E.order), budget, "subspace enumeration")
    Hq = [expand(b, H.E) for b in H.blocks]
    best, witness = -1, None
    for W in iter_subspaces(H.E, H.k, s):
        Wq = expand(fq_span_rows(W, H.E, H.m), H.E)  # (B, m*s, m*k)
        total = np.zeros(len(W), dtype=np.int64)
        for hq in Hq:
            stack = np.concatenate([np.broadcast_to(hq, (len(W),) + hq.shape), Wq], axis=1)
            total += hq.shape[0] + Wq.shape[1] - batch_rank(stack, H.F)
        i = int(total.argmax())
        if total[i] > best:
            best, witness = int(total[i]), W[i]
    return {"verdict": best <= A, "max_sum": best, "witness_basis": witness.tolist(), "s": s, "A": A}


def theorem19_verify(C: SumRankCode, budget: int | None = DEFAULT_BUDGET, d: int | None = None) -> dict:
    H = phi_code_to_system(C)
    d = C.min_distance if d is None else d
    target = H.N - d
    def10 = definition10_max(H, budget)
    design = design_check(H, DesignParams(H.k - 1, target), budget)
    return {
        "k": H.k,
        "m": H.m,
        "N": H.N,
        "d": d,
        "spanning": H.spans_everything(),
        "definition10_max": def10["max_sum"],
        "definition10_holds": def10["max_sum"] == target,
        "design_max_sum": design["max_sum"],
        "design_verdict": design["verdict"],
        "consistent": def10["max_sum"] == design["max_sum"] == target,
        "hyperplanes": def10["hyperplanes"],
    }


def design_list_size(C: SumRankCode | None = None, q: int | None = None, N: int | None = None, d: int | None = None,
                     family: str | None = None, n: int | None = None, t: int | None = None) -> dict:
    """q^{N-d}; cross-checked against a family's closed form when one is named."""
    if C is not None:
        q, N, d = C.field.order, C.shape.N, C.min_distance
    value = q ** (N - d)
    out = {"design_bound": value, "N": N, "d": d}
    if family is not None:
        closed = family_design_bound(family, q, n, t)
        out.update(family=family, closed_form=closed, matches=closed == value)
    return out


@dataclass
class PeriodicSubspace:
    """T = {(f_1, ..., f_t) : f_j in L_j(f_1, ..., f_{j-1}) + M} inside (F_{q^m}^k)^t.

    A synthetic stand-in: each L_j is a seeded F_{q^m}-linear map of the prefix.
    """

    q: int
    m: int
    k: int
    t: int
    M: np.ndarray  # basis rows (dim_M, k) over F_{q^m}
    maps: list[np.ndarray]  # L_j as ((j-1)k, k) matrices over F_{q^m}
    s: int

    def __post_init__(self):
        self.E = ext_field(self.q, self.m)
        if len(self.M) and rank_of(self.M, self.E) != len(self.M):
            raise PreconditionViolation("M basis is dependent")
        if len(self.M) > self.s:
            raise PreconditionViolation(f"dim M = {len(self.M)} exceeds s = {self.s}")

    @classmethod
    def synthetic(cls, q: int, m: int, k: int, t: int, dim_M: int, s: int, seed: int = 0, zero_offsets: bool = False):
        E = ext_field(q, m)
        rng = np.random.default_rng(seed)
        while True:
            M = rng.integers(0, E.order, size=(dim_M, k))
            if dim_M == 0 or rank_of(M, E) == dim_M:
                break
        maps = [
            np.zeros((j * k, k), dtype=np.int64) if zero_offsets else rng.integers(0, E.order, size=(j * k, k))
            for j in range(t)
        ]
        return cls(q, m, k, t, M.reshape(dim_M, k), maps, s)

    def elements(self, budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
        Q = self.E.order
        dm = len(self.M)
        check_budget(Q ** (dm * self.t), budget, "periodic subspace")
        pts = np.zeros((1, 0), dtype=np.int64)
        coeffs = digit_block(0, Q**dm, dm, Q)
        step = field_matmul(coeffs, self.M, self.E) if dm else np.zeros((1, self.k), dtype=np.int64)
        for j in range(self.t):
            base = field_matmul(pts, self.maps[j], self.E) if j else np.zeros((1, self.k), dtype=np.int64)
            blocks = self.E.add(base[:, None, :], step[None, :, :]).reshape(-1, self.k)
            pts = np.concatenate([np.repeat(pts, len(step), axis=0), blocks], axis=1)
        return pts

    def is_periodic(self, budget: int | None = DEFAULT_BUDGET) -> bool:
        """Every block, for a fixed prefix, lies in one coset of M."""
        pts = self.elements(budget)
        for j in range(self.t):
            groups: dict[bytes, list[np.ndarray]] = {}
            for x in pts:
                groups.setdefault(x[: j * self.k].tobytes(), []).append(x[j * self.k : (j + 1) * self.k])
            for vecs in groups.values():
                diffs = self.E.sub(np.array(vecs), vecs[0][None, :])
                if len(self.M) == 0:
                    if diffs.any():
                        return False
                elif rank_of(np.vstack([self.M, diffs]), self.E) != len(self.M):
                    return False
        return True


def periodic_trace_check(T: PeriodicSubspace, H: SystemH, d: int, budget: int | None = DEFAULT_BUDGET) -> dict:
    """S = {x in T : block j of x lies in H_j}; compares its F_q-dimension with N - d."""
    if (T.q, T.m, T.k, T.t) != (H.q, H.m, H.k, len(H.blocks)):
        raise ShapeMismatch("periodic subspace and system disagree on (q, m, k, t)")
    pts = T.elements(budget)
    keep = np.ones(len(pts), dtype=bool)
    for j, hb in enumerate(H.blocks):
        hq = expand(hb, H.E)
        blk = expand(pts[:, j * T.k : (j + 1) * T.k], H.E)[:, None, :]
        stack = np.concatenate([np.broadcast_to(hq, (len(pts),) + hq.shape), blk], axis=1)
        keep &= batch_rank(stack, H.F) == hq.shape[0]
    S = pts[keep]
    size = len(S)
    log_size = 0
    while H.q**log_size < size:
        log_size += 1
    exact_power = H.q**log_size == size
    linear = exact_power and (size <= 1 or rank_of(expand(S, H.E), H.F) == log_size)
    return {
        "size": size,
        "dim_S": log_size if linear else None,
        "log_q_size": log_size,
        "linear": bool(linear),
        "bound": H.N - d,
        "verdict": log_size <= H.N - d,
    }
