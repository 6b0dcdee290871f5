"""Symmetric bilinear forms and the cyclic / Abelian orthogonal groups built from companion matrices."""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, IdenticalGenerators, NotOrthogonal, PreconditionViolation
from .field import GF, find_primitive_poly, nonsquare_z
from .matrix import MatrixFq, block_diag, companion_matrix, hconcat, matrix_order, vconcat

FORM_KINDS = ("S_2v", "S_2v1_1", "S_2v1_z", "S_2v2")
ENUMERATION_CAP = 10**6


def _hyperbolic(field: GF, nu: int) -> MatrixFq:
    Z = MatrixFq.zeros(field, nu, nu)
    I = MatrixFq.identity(field, nu)
    return vconcat(hconcat(Z, I), hconcat(I, Z))


@dataclass(frozen=True)
class BilinearForm:
    matrix: MatrixFq
    kind: str
    nu: int
    z: int | None = None
    # number of hyperbolic blocks S_{2nu/h} placed on the diagonal; 1 is the standard display
    hyperbolic_blocks: int = 1

    @property
    def size(self) -> int:
        return self.matrix.rows

    def is_symmetric(self) -> bool:
        return self.matrix == self.matrix.T

    def is_nonsingular(self) -> bool:
        return self.matrix.rank() == self.size


def form_matrix(kind: str, nu: int, field: GF, hyperbolic_blocks: int = 1) -> BilinearForm:
    """S_{2nu}, S_{2nu+1,1}, S_{2nu+1,z} or S_{2nu+2} over ``field``.

    With ``hyperbolic_blocks = h > 1`` the leading S_{2nu} part is replaced by
    ``h`` copies of S_{2nu/h} on the diagonal, a cogredient realization.
    """
    if kind not in FORM_KINDS:
        raise ValueError(f"unknown form kind {kind!r}")
    if nu < 1:
        raise PreconditionViolation("index nu must be positive")
    if nu % hyperbolic_blocks:
        raise PreconditionViolation("nu must split evenly into hyperbolic blocks")
    z = int(nonsquare_z(field).value)
    core = block_diag(*[_hyperbolic(field, nu // hyperbolic_blocks)] * hyperbolic_blocks)
    one = MatrixFq.identity(field, 1)
    if kind == "S_2v":
        mat = core
    elif kind == "S_2v1_1":
        mat = block_diag(core, one)
    elif kind == "S_2v1_z":
        mat = block_diag(core, one.scale(z))
    else:
        mat = block_diag(core, one, one.scale(field.neg(z)))
    return BilinearForm(mat, kind, nu, z if kind in ("S_2v1_z", "S_2v2") else None, hyperbolic_blocks)


def split_to_standard(form: BilinearForm) -> MatrixFq:
    """Permutation P with ``P form.matrix P^t`` equal to the standard display of the same kind."""
    nu, h = form.nu, form.hyperbolic_blocks
    w = nu // h
    perm = []
    # standard coordinate order: all "first halves" then all "second halves"
    for half in (0, 1):
        for b in range(h):
            perm.extend(2 * w * b + half * w + i for i in range(w))
    perm.extend(range(2 * nu, form.size))
    P = np.zeros((form.size, form.size), dtype=np.int64)
    for row, col in enumerate(perm):
        P[row, col] = 1
    return MatrixFq(form.matrix.field, P)


def is_orthogonal(T: MatrixFq, S: BilinearForm | MatrixFq) -> bool:
    """True iff T S T^t = S."""
    Sm = S.matrix if isinstance(S, BilinearForm) else S
    if T.rows != T.cols or T.shape != Sm.shape:
        raise DimensionMismatch(f"T is {T.shape}, S is {Sm.shape}")
    return T @ Sm @ T.T == Sm


def build_A_matrices(A_g: MatrixFq, variant: str = "A1") -> MatrixFq:
    """A1 = diag(A_g, (A_g^t)^-1); A2 and A3 append one or two diagonal ones."""
    A1 = block_diag(A_g, A_g.T.inverse())
    one = MatrixFq.identity(A_g.field, 1)
    if variant == "A1":
        return A1
    if variant == "A2":
        return block_diag(A1, one)
    if variant == "A3":
        return block_diag(A1, one, one)
    raise ValueError(f"unknown variant {variant!r}")


def matching_form(variant: str, n: int, field: GF) -> BilinearForm:
    kind = {"A1": "S_2v", "A2": "S_2v1_1", "A3": "S_2v2"}[variant]
    return form_matrix(kind, n, field)


class OrthoGroup:
    """Finite matrix group given by commuting generators, enumerated lazily."""

    def __init__(self, generators: list[MatrixFq], form: BilinearForm, kind: str, gen_orders: list[int]):
        self.generators = generators
        self.form = form
        self.kind = kind
        self.gen_orders = gen_orders
        self._elements: list[MatrixFq] | None = None
        self._lock = threading.Lock()

    @property
    def field(self) -> GF:
        return self.form.matrix.field

    @property
    def claimed_order(self) -> int:
        return math.prod(self.gen_orders)

    def elements(self, cap: int = ENUMERATION_CAP) -> list[MatrixFq]:
        """All products g1^i1 ... gk^ik, deduplicated."""
        with self._lock:
            if self._elements is None:
                if self.claimed_order > cap:
                    raise BudgetExceeded(f"group of order {self.claimed_order} exceeds cap {cap}")
                size = self.form.size
                elems = [MatrixFq.identity(self.field, size)]
                for g, o in zip(self.generators, self.gen_orders):
                    powers = [MatrixFq.identity(self.field, size)]
                    for _ in range(o - 1):
                        powers.append(powers[-1] @ g)
                    elems = [e @ p for e in elems for p in powers]
                seen = {}
                for e in elems:
                    seen.setdefault(e.data.tobytes(), e)
                self._elements = list(seen.values())
            return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def all_orthogonal(self) -> bool:
        return all(is_orthogonal(e, self.form) for e in self.elements())

    def element_orders(self) -> list[int]:
        return [matrix_order(e, cap=self.claimed_order) for e in self.elements()]

    def element_order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders()).items()))

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a @ b == b @ a for a in gs for b in gs)

    def is_cyclic(self) -> bool:
        return max(self.element_orders()) == self.order


def build_G1(A1: MatrixFq, form: BilinearForm) -> OrthoGroup:
    """The cyclic group generated by A1."""
    if not is_orthogonal(A1, form):
        raise NotOrthogonal("generator is not orthogonal with respect to the form")
    return OrthoGroup([A1], form, "cyclic", [matrix_order(A1)])


def build_G2(A1: MatrixFq, B1: MatrixFq, form: BilinearForm, allow_equal: bool = False) -> OrthoGroup:
    """{diag(A1^i, B1^j)} padded with trailing ones to the size of ``form``."""
    if A1 == B1 and not allow_equal:
        raise IdenticalGenerators("f and g coincide; pass allow_equal=True to permit it")
    F = A1.field
    extra = form.size - A1.rows - B1.rows
    if extra < 0:
        raise DimensionMismatch("form is smaller than diag(A1, B1)")
    pad = [MatrixFq.identity(F, extra)] if extra else []
    gA = block_diag(A1, MatrixFq.identity(F, B1.rows), *pad)
    gB = block_diag(MatrixFq.identity(F, A1.rows), B1, *pad)
    for g in (gA, gB):
        if not is_orthogonal(g, form):
            raise NotOrthogonal("generator is not orthogonal with respect to the form")
    return OrthoGroup([gA, gB], form, "abelian_product", [matrix_order(A1), matrix_order(B1)])


def g1_for(field: GF, n: int, variant: str = "A1", f_index: int = 0) -> OrthoGroup:
    A_g = companion_matrix(find_primitive_poly(field, n, f_index))
    return build_G1(build_A_matrices(A_g, variant), matching_form(variant, n, field))


def g2_form(field: GF, n: int, trailing: int = 0) -> BilinearForm:
    """diag(S_2n, S_2n[, 1[, -z]]): the realization of S_4n, S_4n+1,1, S_4n+2 that G2 preserves."""
    kind = {0: "S_2v", 1: "S_2v1_1", 2: "S_2v2"}[trailing]
    return form_matrix(kind, 2 * n, field, hyperbolic_blocks=2)


def g2_for(
    field: GF, n: int, trailing: int = 0, f_index: int = 0, g_index: int = 1, allow_equal: bool = False
) -> OrthoGroup:
    A1 = build_A_matrices(companion_matrix(find_primitive_poly(field, n, f_index)))
    B1 = build_A_matrices(companion_matrix(find_primitive_poly(field, n, g_index)))
    return build_G2(A1, B1, g2_form(field, n, trailing), allow_equal=allow_equal or f_index == g_index)


def group_report(group: OrthoGroup, q: int, n: int) -> dict:
    hist = group.element_order_histogram()
    report = {
        "kind": group.kind,
        "q": q,
        "n": n,
        "order": group.order,
        "claimed_order": group.claimed_order,
        "form": group.form.kind,
        "form_hyperbolic_blocks": group.form.hyperbolic_blocks,
        "generators": [g.to_text() for g in group.generators],
        "orthogonality": group.all_orthogonal(),
        "abelian": group.is_abelian(),
        "cyclic": max(hist) == group.order,
        "element_order_histogram": {str(k): v for k, v in hist.items()},
    }
    if group.form.hyperbolic_blocks > 1:
        P = split_to_standard(group.form)
        standard = form_matrix(group.form.kind, group.form.nu, group.field)
        report["orthogonal_after_congruence"] = all(
            is_orthogonal(P @ e @ P.T, standard) for e in group.elements()
        )
    return report
