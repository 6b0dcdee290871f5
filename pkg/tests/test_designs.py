import itertools
import math

import numpy as np
import pytest

from sumrank_lab.bounds import family_design_bound, family_params
from sumrank_lab.designs import (
    DesignParams,
    PeriodicSubspace,
    SystemH,
    definition10_max,
    design_check,
    design_list_size,
    iter_subspaces,
    periodic_trace_check,
    phi_code_to_system,
    psi_system_to_code,
    theorem19_verify,
)
from sumrank_lab.errors import NotExtensionLinear, PreconditionViolation, ShapeMismatch
from sumrank_lab.sumrank import construct_C1bar, construct_C3bar, construct_C2bar, ext_field, sumrank_report


@pytest.fixture(scope="module")
def C3():
    return construct_C3bar(3, 2, 2)


def fq_span_set(rows, E, q):
    """All F_q-combinations of vectors over F_{q^m}, as tuples."""
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = np.zeros(len(rows[0]), dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = E.add(v, E.mul(c, r))
        out.add(tuple(int(x) for x in v))
    return out


def ext_span_set(rows, E):
    out = set()
    for coeffs in itertools.product(range(E.order), repeat=len(rows)):
        v = np.zeros(len(rows[0]), dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = E.add(v, E.mul(c, r))
        out.add(tuple(int(x) for x in v))
    return out


def test_phi_gives_system_shape(C3):
    H = phi_code_to_system(C3)
    assert (H.k, H.m, H.dims, H.N) == (2, 2, [2, 4], 6)
    assert H.spans_everything()


def test_definition10_against_set_oracle(C3):
    H = phi_code_to_system(C3)
    E = ext_field(3, 2)
    blocks = [fq_span_set(b, E, 3) for b in H.blocks]
    best = 0
    lines = 0
    for W in iter_subspaces(E, 2, 1):
        lines += len(W)
        for w in W:
            Wset = ext_span_set(w, E)
            total = sum(round(math.log(len(B & Wset), 3)) for B in blocks)
            best = max(best, total)
    r = definition10_max(H)
    assert lines == r["hyperplanes"] == 10
    assert r["max_sum"] == best == H.N - C3.min_distance == 3


def test_design_check_verdicts(C3):
    H = phi_code_to_system(C3)
    ok = design_check(H, DesignParams(1, 3))
    assert ok["verdict"] and ok["max_sum"] == 3
    bad = design_check(H, DesignParams(1, 2))
    assert not bad["verdict"] and bad["witness_basis"] == [[1, 1]]
    # the witness really reaches 3
    E = ext_field(3, 2)
    Wset = ext_span_set(np.array(bad["witness_basis"]), E)
    assert sum(round(math.log(len(fq_span_set(b, E, 3) & Wset), 3)) for b in H.blocks) == 3
    with pytest.raises(PreconditionViolation):
        design_check(H, DesignParams(3, 1))


def test_iter_subspaces_counts():
    E = ext_field(3, 2)
    from sumrank_lab.bounds import gaussian_binomial

    for k, s in [(2, 1), (3, 1), (3, 2), (2, 2), (2, 0)]:
        total = sum(len(W) for W in iter_subspaces(E, k, s))
        assert total == gaussian_binomial(k, s, 9)


def test_psi_inverts_phi(C3):
    H = phi_code_to_system(C3)
    D = psi_system_to_code(H)
    assert D.dim == C3.dim and D.shape == C3.shape
    # same code as a set: every basis word of one lies in the other
    assert D.contains_flat(C3.flat).all() and C3.contains_flat(D.flat).all()
    r1, r2 = sumrank_report(C3), sumrank_report(D)
    assert (r1["d"], r1["is_msrd"], r1["k_over_ext"]) == (r2["d"], r2["is_msrd"], r2["k_over_ext"])


def test_system_validation():
    with pytest.raises(ShapeMismatch):
        SystemH(3, 2, 2, [np.array([[1, 0], [2, 0]])])  # second row = 2 * first


def test_phi_requires_extension_linearity():
    with pytest.raises(NotExtensionLinear):
        phi_code_to_system(construct_C2bar(3, 2))


def test_theorem19_on_C3(C3):
    r = theorem19_verify(C3)
    assert r["consistent"] and r["definition10_max"] == r["design_max_sum"] == 3


@pytest.mark.slow
def test_theorem19_on_C1bar():
    C = construct_C1bar(3, 2)
    r = theorem19_verify(C, d=2)
    assert r["k"] == 6 and r["hyperplanes"] == 66430
    assert r["definition10_max"] == r["design_max_sum"] == 6 and r["consistent"]


def test_design_list_size_closed_forms(C3):
    out = design_list_size(C3, family="C3bar", n=2, t=2)
    assert out["design_bound"] == 27 and out["matches"]
    for fam, expo in (("C1bar", 6), ("C2bar", 14), ("C3bar", 3), ("C4bar", 9)):
        P = family_params(fam, 3, 2, 2)
        assert design_list_size(q=3, N=P.N, d=P.d)["design_bound"] == family_design_bound(fam, 3, 2, 2) == 3**expo


def test_periodic_subspace_generator():
    T = PeriodicSubspace.synthetic(3, 2, 2, 2, dim_M=1, s=1, seed=4)
    assert T.is_periodic()
    assert len(T.elements()) == 9**2
    Z = PeriodicSubspace.synthetic(3, 2, 2, 2, dim_M=1, s=1, zero_offsets=True)
    assert Z.is_periodic()
    with pytest.raises(PreconditionViolation):
        PeriodicSubspace.synthetic(3, 2, 2, 2, dim_M=2, s=1)


def test_periodic_trace_bound(C3):
    H = phi_code_to_system(C3)
    for seed in range(5):
        T = PeriodicSubspace.synthetic(3, 2, 2, 2, dim_M=1, s=1, seed=seed)
        r = periodic_trace_check(T, H, 3)
        assert r["linear"] and r["verdict"] and r["dim_S"] <= 3
    with pytest.raises(ShapeMismatch):
        periodic_trace_check(PeriodicSubspace.synthetic(3, 2, 2, 3, 1, 1), H, 3)
