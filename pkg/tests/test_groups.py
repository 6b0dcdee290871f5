import itertools

import numpy as np
import pytest

from sumrank_lab.errors import IdenticalGenerators, NotOrthogonal
from sumrank_lab.field import field_make, find_primitive_poly
from sumrank_lab.groups import (
    build_A_matrices,
    build_G1,
    build_G2,
    form_matrix,
    g1_for,
    g2_for,
    g2_form,
    group_report,
    is_orthogonal,
    matching_form,
    split_to_standard,
)
from sumrank_lab.matrix import MatrixFq, companion_matrix


def _orthogonal_brute_force(S, p):
    """All T with T S T^t = S over F_p, plain integer arithmetic."""
    n = len(S)
    S = np.array(S)
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        T = np.array(entries).reshape(n, n)
        if np.array_equal((T @ S @ T.T) % p, S % p):
            out.append(T.tobytes())
    return set(out)


@pytest.mark.parametrize("kind,size", [("S_2v", 4), ("S_2v1_1", 5), ("S_2v1_z", 5), ("S_2v2", 6)])
def test_forms_are_symmetric_nonsingular(F3, kind, size):
    S = form_matrix(kind, 2, F3)
    assert S.size == size and S.is_symmetric() and S.is_nonsingular()


def test_nonsquare_entry(F5):
    S = form_matrix("S_2v2", 1, F5)
    # z = 2 is the least non-square mod 5; the last diagonal entry is -z = 3
    assert S.z == 2 and S.matrix[3, 3] == 3


@pytest.mark.parametrize("p", [3, 5])
def test_G1_for_n1_sits_inside_brute_force_orthogonal_group(p):
    F = field_make(p)
    G = g1_for(F, 1)
    O = _orthogonal_brute_force(form_matrix("S_2v", 1, F).matrix.tolist(), p)
    assert len(O) == 2 * (p - 1)
    assert all(np.asarray(e.data, dtype=np.int64).tobytes() in O for e in G.elements())


def test_G1_at_q3_n2(F3):
    G = g1_for(F3, 2)
    assert G.order == 8 and G.is_cyclic() and G.all_orthogonal()
    assert G.element_order_histogram() == {1: 1, 2: 1, 4: 2, 8: 4}


@pytest.mark.parametrize("variant", ["A2", "A3"])
def test_G1_variants_preserve_padded_forms(F3, variant):
    G = g1_for(F3, 2, variant)
    assert G.order == 8 and G.all_orthogonal()
    assert G.form.kind == matching_form(variant, 2, F3).kind


def test_G2_at_q3_n2(F3):
    G = g2_for(F3, 2)
    assert G.order == 64 and G.is_abelian() and not G.is_cyclic()
    assert G.element_order_histogram() == {1: 1, 2: 3, 4: 12, 8: 48}
    # Z_8 x Z_8 has exactly 3 involutions, so no element of order 64 exists
    assert max(G.element_orders()) == 8


def test_G2_preserves_split_form_not_displayed_one(F3):
    G = g2_for(F3, 2)
    displayed = form_matrix("S_2v", 4, F3)
    assert not all(is_orthogonal(g, displayed) for g in G.generators)
    P = split_to_standard(G.form)
    assert P @ G.form.matrix @ P.T == displayed.matrix
    assert all(is_orthogonal(P @ e @ P.T, displayed) for e in G.elements())


@pytest.mark.parametrize("trailing", [1, 2])
def test_G2_trailing_variants(F3, trailing):
    G = g2_for(F3, 2, trailing)
    assert G.order == 64 and G.all_orthogonal()
    assert G.form.size == 8 + trailing


def test_G2_rejects_equal_generators(F3):
    A1 = build_A_matrices(companion_matrix(find_primitive_poly(F3, 2, 0)))
    with pytest.raises(IdenticalGenerators):
        build_G2(A1, A1, g2_form(F3, 2))
    G = build_G2(A1, A1, g2_form(F3, 2), allow_equal=True)
    assert G.order == 64


def test_non_orthogonal_generator_rejected(F3):
    T = MatrixFq(F3, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(NotOrthogonal):
        build_G1(T, form_matrix("S_2v", 2, F3))


def test_group_report_keys(F3):
    r = group_report(g2_for(F3, 2), 3, 2)
    assert r["order"] == 64 and r["orthogonality"] and r["orthogonal_after_congruence"]
    assert r["element_order_histogram"] == {"1": 1, "2": 3, "4": 12, "8": 48}
    assert len(r["generators"]) == 2
