"""Dense matrices over a GF, plus the batched elimination kernel used by every scan.

The batched routines take integer-code arrays of shape ``(B, rows, cols)`` and
run Gaussian elimination on all ``B`` matrices at once.  Pivot choice is the
first nonzero entry in column order, so results are deterministic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonMonicPolynomial,
    NotCompanionOfGivenPolynomial,
    OrderCapExceeded,
    PreconditionViolation,
    SingularMatrix,
)
from .field import GF, FieldElement, Polynomial, field_make, parse_field

# --------------------------------------------------------------------------------------
# array kernels


def field_matmul(a: np.ndarray, b: np.ndarray, F: GF) -> np.ndarray:
    """Matrix product over F; leading axes broadcast like ``np.matmul``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.is_prime_field:
        return np.matmul(a, b) % F.p
    k = a.shape[-1]
    if b.shape[-2] != k:
        raise DimensionMismatch(f"inner dimensions {k} and {b.shape[-2]}")
    acc = None
    for i in range(k):
        term = F.mul(a[..., :, i, None], b[..., None, i, :])
        acc = term if acc is None else F.add(acc, term)
    if acc is None:
        shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
        return np.zeros(shape, dtype=np.int64)
    return np.asarray(acc, dtype=np.int64)


def combine(coeffs: np.ndarray, basis: np.ndarray, F: GF) -> np.ndarray:
    """Linear combinations ``coeffs @ basis`` over F for flattened basis rows."""
    return field_matmul(coeffs, basis, F)


def _eliminate(a: np.ndarray, F: GF, full: bool) -> tuple[np.ndarray, np.ndarray, list]:
    a = np.array(a, dtype=np.int64, copy=True)
    B, r, c = a.shape
    prow = np.zeros(B, dtype=np.int64)
    bidx = np.arange(B)
    rows = np.arange(r)
    pivots: list[np.ndarray] = []
    for col in range(c):
        if r == 0:
            break
        cand = (a[:, :, col] != 0) & (rows[None, :] >= prow[:, None])
        has = cand.any(axis=1)
        pivots.append(has)
        if not has.any():
            continue
        sel = bidx[has]
        pr = prow[has]
        pv = cand[has].argmax(axis=1)
        row_p = a[sel, pv, :]
        row_r = a[sel, pr, :]
        a[sel, pv, :] = row_r
        a[sel, pr, :] = row_p
        inv = F.inv(a[sel, pr, col])
        a[sel, pr, :] = F.mul(a[sel, pr, :], inv[:, None])
        factors = a[sel, :, col]
        if full:
            mask = rows[None, :] != pr[:, None]
        else:
            mask = rows[None, :] > pr[:, None]
        factors = np.where(mask, factors, 0)
        sub = a[sel]
        a[sel] = F.sub(sub, F.mul(factors[:, :, None], a[sel, pr, :][:, None, :]))
        prow[has] += 1
    return a, prow, pivots


def batch_rank(arr: np.ndarray, F: GF) -> np.ndarray:
    """Ranks of a stack of matrices of shape ``(B, rows, cols)``."""
    arr = np.asarray(arr)
    if arr.ndim != 3:
        raise DimensionMismatch("batch_rank expects a 3-d array")
    if arr.shape[0] == 0 or arr.shape[1] == 0 or arr.shape[2] == 0:
        return np.zeros(arr.shape[0], dtype=np.int64)
    # eliminate along the shorter side
    if arr.shape[1] > arr.shape[2]:
        arr = np.swapaxes(arr, 1, 2)
    return _eliminate(arr, F, full=False)[1]


def rref(arr: np.ndarray, F: GF) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of one matrix and its pivot columns."""
    arr = np.asarray(arr, dtype=np.int64)
    out, rank, piv = _eliminate(arr[None], F, full=True)
    pivots = [j for j, has in enumerate(piv) if has[0]]
    return out[0], pivots


def rank_of(arr: np.ndarray, F: GF) -> int:
    return int(batch_rank(np.asarray(arr)[None], F)[0])


def nullspace(arr: np.ndarray, F: GF) -> np.ndarray:
    """Rows spanning ``{x : arr @ x = 0}``."""
    arr = np.asarray(arr, dtype=np.int64)
    r, c = arr.shape
    if r == 0:
        return np.eye(c, dtype=np.int64)
    R, pivots = rref(arr, F)
    free = [j for j in range(c) if j not in pivots]
    basis = np.zeros((len(free), c), dtype=np.int64)
    for t, j in enumerate(free):
        basis[t, j] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg(R[i, j])
    return basis


def row_basis(arr: np.ndarray, F: GF) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    arr = np.asarray(arr, dtype=np.int64)
    if arr.shape[0] == 0:
        return arr
    R, pivots = rref(arr, F)
    return R[: len(pivots)]


# --------------------------------------------------------------------------------------
# the matrix value type


class MatrixFq:
    """Immutable dense matrix over a GF; entries are element codes."""

    __slots__ = ("field", "data")

    def __init__(self, field: GF, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionMismatch("a matrix needs a 2-d array")
        arr %= field.order
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    # constructors
    @classmethod
    def identity(cls, field: GF, n: int) -> MatrixFq:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> MatrixFq:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    # shape
    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> list[FieldElement]:
        return [FieldElement(self.field, int(v)) for v in self.data.ravel()]

    def __getitem__(self, idx):
        return int(self.data[idx])

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    # comparison
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixFq)
            and other.field == self.field
            and other.shape == self.shape
            and np.array_equal(other.data, self.data)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixFq({self.to_text()})"

    def is_zero(self) -> bool:
        return not self.data.any()

    # arithmetic
    def _check_same(self, other: MatrixFq) -> None:
        if other.field != self.field:
            raise DimensionMismatch("matrices over different fields")
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: MatrixFq) -> MatrixFq:
        self._check_same(other)
        return MatrixFq(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: MatrixFq) -> MatrixFq:
        self._check_same(other)
        return MatrixFq(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> MatrixFq:
        return MatrixFq(self.field, self.field.neg(self.data))

    def scale(self, c: int) -> MatrixFq:
        return MatrixFq(self.field, self.field.mul(self.data, int(c)))

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        if other.field != self.field:
            raise DimensionMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixFq(self.field, field_matmul(self.data, other.data, self.field))

    __mul__ = __matmul__

    @property
    def T(self) -> MatrixFq:
        return MatrixFq(self.field, self.data.T)

    def transpose(self) -> MatrixFq:
        return self.T

    def rank(self) -> int:
        return rank_of(self.data, self.field)

    def inverse(self) -> MatrixFq:
        n = self.rows
        if self.cols != n:
            raise DimensionMismatch("only square matrices can be inverted")
        aug = np.concatenate([self.data, np.eye(n, dtype=np.int64)], axis=1)
        R, pivots = rref(aug, self.field)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return MatrixFq(self.field, R[:, n:])

    def __pow__(self, k: int) -> MatrixFq:
        if self.rows != self.cols:
            raise DimensionMismatch("powers need a square matrix")
        base = self.inverse() if k < 0 else self
        k = abs(k)
        result = MatrixFq.identity(self.field, self.rows)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # text format: "r x c over q : a,b ; c,d"
    def to_text(self) -> str:
        rows = " ; ".join(",".join(str(v) for v in row) for row in self.data.tolist())
        return f"{self.rows} x {self.cols} over {self.field.order} : {rows}"

    @classmethod
    def from_text(cls, text: str, field: GF | None = None) -> MatrixFq:
        head, _, body = text.partition(":")
        m = re.match(r"\s*(\d+)\s*x\s*(\d+)\s*over\s*(\S+)\s*$", head)
        if m is None:
            raise ValueError(f"bad matrix header {head!r}")
        r, c = int(m.group(1)), int(m.group(2))
        if field is None:
            field = parse_field(m.group(3))
        elif str(field.order) != m.group(3):
            raise DimensionMismatch(f"text is over {m.group(3)}, field has order {field.order}")
        rows = [row for row in body.split(";") if row.strip()] if r else []
        data = [[int(v) for v in re.split(r"[,\s]+", row.strip())] for row in rows]
        arr = np.array(data, dtype=np.int64).reshape(r, c)
        return cls(field, arr)


# --------------------------------------------------------------------------------------
# spec-level operations


def mat_rank(M: MatrixFq) -> int:
    return M.rank()


def mat_transpose(A: MatrixFq) -> MatrixFq:
    return A.T


def mat_inverse(A: MatrixFq) -> MatrixFq:
    return A.inverse()


def hconcat(*mats: MatrixFq) -> MatrixFq:
    if len({m.rows for m in mats}) != 1:
        raise DimensionMismatch("hconcat needs equal row counts")
    return MatrixFq(mats[0].field, np.concatenate([m.data for m in mats], axis=1))


def vconcat(*mats: MatrixFq) -> MatrixFq:
    if len({m.cols for m in mats}) != 1:
        raise DimensionMismatch("vconcat needs equal column counts")
    return MatrixFq(mats[0].field, np.concatenate([m.data for m in mats], axis=0))


def block_diag(*mats: MatrixFq) -> MatrixFq:
    F = mats[0].field
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        if m.field != F:
            raise DimensionMismatch("block_diag over different fields")
        out[i : i + m.rows, j : j + m.cols] = m.data
        i += m.rows
        j += m.cols
    return MatrixFq(F, out)


def mat_ops(A: MatrixFq, B: MatrixFq, op: str) -> MatrixFq:
    ops = {
        "add": lambda: A + B,
        "sub": lambda: A - B,
        "mul": lambda: A @ B,
        "hconcat": lambda: hconcat(A, B),
        "block_diag": lambda: block_diag(A, B),
    }
    if op not in ops:
        raise ValueError(f"unknown matrix op {op!r}")
    return ops[op]()


def companion_matrix(f: Polynomial) -> MatrixFq:
    """Subdiagonal ones with last column (-a_0, ..., -a_{n-1})."""
    if not f.is_monic:
        raise NonMonicPolynomial(f"{f} is not monic")
    n = f.degree
    if n < 1:
        raise PreconditionViolation("companion matrix needs degree >= 1")
    F = f.field
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        out[i, i - 1] = 1
    for i in range(n):
        out[i, n - 1] = F.neg(f.coeffs[i])
    return MatrixFq(F, out)


def matrix_order(M: MatrixFq, cap: int | None = None) -> int:
    """Least k >= 1 with M^k = I, by iterated multiplication."""
    if M.rows != M.cols:
        raise DimensionMismatch("order needs a square matrix")
    if M.rank() < M.rows:
        raise SingularMatrix("singular matrices have no multiplicative order")
    if cap is None:
        cap = M.field.order ** M.rows
    ident = MatrixFq.identity(M.field, M.rows)
    power = M
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power @ M
    raise OrderCapExceeded(f"order exceeds cap {cap}")


def poly_at_matrix(f: Polynomial, M: MatrixFq) -> MatrixFq:
    if f.field != M.field:
        raise DimensionMismatch("polynomial and matrix over different fields")
    n = M.rows
    acc = MatrixFq.zeros(M.field, n, n)
    ident = MatrixFq.identity(M.field, n)
    for c in reversed(f.coeffs):
        acc = acc @ M + ident.scale(c)
    return acc


def char_poly(M: MatrixFq) -> Polynomial:
    """det(xI - M) by the division-free Berkowitz recursion."""
    F = M.field
    A = M.data
    n = M.rows
    if n == 0:
        return Polynomial(F, (1,))
    coeffs = [1, int(F.neg(A[0, 0]))]  # highest degree first
    for k in range(1, n):
        a = int(A[k, k])
        R = A[k, :k][None, :]
        S = A[:k, k][:, None]
        Ak = A[:k, :k]
        t = [1, int(F.neg(a))]
        vec = S
        for _ in range(k):
            t.append(int(F.neg(field_matmul(R, vec, F)[0, 0])))
            vec = field_matmul(Ak, vec, F)
        new = []
        for i in range(k + 2):
            acc = 0
            for j in range(k + 1):
                if 0 <= i - j < len(t):
                    acc = int(F.add(acc, F.mul(t[i - j], coeffs[j])))
            new.append(acc)
        coeffs = new
    return Polynomial(F, tuple(reversed(coeffs)))


def min_poly(M: MatrixFq) -> Polynomial:
    """Monic polynomial of least degree annihilating M."""
    F = M.field
    n = M.rows
    powers = [MatrixFq.identity(F, n).data.ravel()]
    P = MatrixFq.identity(F, n)
    for k in range(1, n * n + 2):
        P = P @ M
        powers.append(P.data.ravel())
        stack = np.stack(powers, axis=1)  # columns are vec(M^i)
        if rank_of(stack, F) < k + 1:
            null = nullspace(stack, F)
            vec = null[0]
            lead = vec[k]
            vec = F.mul(vec, int(F.inv(lead)))
            return Polynomial(F, tuple(int(v) for v in vec))
    raise AssertionError("unreachable: Cayley-Hamilton bounds the degree")  # pragma: no cover


# --------------------------------------------------------------------------------------
# the five companion-matrix properties


@dataclass
class PropertyReport:
    q: int
    n: int
    polynomial: str
    p1_annihilates: bool
    p1_char_poly: bool
    p1_min_poly: bool
    p2_field_closure: bool
    p2_mode: str
    p3_order: int
    p3_holds: bool
    p4_sum_zero: bool
    p5_holds: bool
    p5_checked_range: tuple[int, int]
    p5_endpoint_rank: int | None
    findings: list[dict] = dc_field(default_factory=list)

    @property
    def p1(self) -> bool:
        return self.p1_annihilates and self.p1_char_poly and self.p1_min_poly

    @property
    def all_hold(self) -> bool:
        return self.p1 and self.p2_field_closure and self.p3_holds and self.p4_sum_zero and self.p5_holds

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "polynomial": self.polynomial,
            "p1": self.p1,
            "p2": self.p2_field_closure,
            "p2_mode": self.p2_mode,
            "p3_order": self.p3_order,
            "p3": self.p3_holds,
            "p4": self.p4_sum_zero,
            "p5": self.p5_holds,
            "p5_checked_range": list(self.p5_checked_range),
            "p5_endpoint_rank": self.p5_endpoint_rank,
        }


def partial_power_sum(A_g: MatrixFq, a: int) -> MatrixFq:
    """I + A_g + ... + A_g^a, defined for 1 <= a < q^n - 1."""
    group = A_g.field.order**A_g.rows - 1
    if not 1 <= a < group:
        raise PreconditionViolation(f"a must satisfy 1 <= a < {group}")
    acc = MatrixFq.identity(A_g.field, A_g.rows)
    P = acc
    for _ in range(a):
        P = P @ A_g
        acc = acc + P
    return acc


def companion_property_check(
    A_g: MatrixFq, f: Polynomial, exhaustive_limit: int = 81, samples: int = 1000, seed: int = 0
) -> PropertyReport:
    if A_g != companion_matrix(f):
        raise NotCompanionOfGivenPolynomial(f"matrix is not the companion of {f}")
    F, n = A_g.field, A_g.rows
    size = F.order**n
    group = size - 1
    ident = MatrixFq.identity(F, n)
    zero = MatrixFq.zeros(F, n, n)

    p1a = poly_at_matrix(f, A_g) == zero
    p1c = char_poly(A_g) == f
    p1m = min_poly(A_g) == f

    powers = [ident]
    for _ in range(group - 1):
        powers.append(powers[-1] @ A_g)
    order = matrix_order(A_g)

    stack = np.stack([zero.data] + [P.data for P in powers])
    members = {m.tobytes() for m in stack}
    if size <= exhaustive_limit:
        ii, jj = np.meshgrid(np.arange(len(stack)), np.arange(len(stack)), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        ii = rng.integers(0, len(stack), samples)
        jj = rng.integers(0, len(stack), samples)
        mode = f"sampled({samples}, seed={seed})"
    sums = F.add(stack[ii], stack[jj])
    p2 = len(members) == size and all(s.tobytes() in members for s in sums)

    total = zero
    for P in powers:
        total = total + P
    p4 = total == zero

    # (4) forces the partial sum at a = q^n - 2 to vanish, so (5) is checked below it
    last = group - 1
    p5 = True
    running = ident
    endpoint_rank = None
    findings = []
    for a in range(1, group):
        running = running + powers[a]
        if a < last:
            p5 = p5 and running.rank() == n
        else:
            endpoint_rank = running.rank()
    if endpoint_rank is not None and endpoint_rank != n:
        findings.append(
            {
                "kind": "paper_discrepancy",
                "id": "companion-property-5-endpoint",
                "detail": (
                    f"at a = q^n-2 = {last} the partial sum has rank {endpoint_rank}; "
                    "property (4) makes it zero, so the rank-n claim holds only for a <= q^n-3"
                ),
            }
        )
    return PropertyReport(
        q=F.order,
        n=n,
        polynomial=str(f),
        p1_annihilates=p1a,
        p1_char_poly=p1c,
        p1_min_poly=p1m,
        p2_field_closure=p2,
        p2_mode=mode,
        p3_order=order,
        p3_holds=order == group,
        p4_sum_zero=p4,
        p5_holds=p5,
        p5_checked_range=(1, last - 1),
        p5_endpoint_rank=endpoint_rank,
        findings=findings,
    )
