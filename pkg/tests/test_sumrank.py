import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rank_mod_p
from sumrank_lab.bounds import rank_matrix_count
from sumrank_lab.errors import (
    BadFirstBlock,
    DistanceOutOfRange,
    NotExtensionLinear,
    PreconditionViolation,
    ShapeMismatch,
    TooManyRows,
)
from sumrank_lab.field import field_make
from sumrank_lab.matrix import MatrixFq, batch_rank
from sumrank_lab.rankcodes import construct_C1_family, gabidulin_code
from sumrank_lab.sumrank import (
    CosetEngine,
    Shape,
    SumRankCode,
    SumRankWord,
    batch_weights,
    construct1,
    construct_C1bar,
    construct_C2bar,
    construct_C3bar,
    construct_C4bar,
    covering_radius,
    is_msrd,
    list_decodable_check,
    mat_vec_convert,
    matrix_singleton_bound,
    phi_pad,
    rank_one_matrices,
    sphere_intersection_counts,
    sr_singleton_bound,
    sumrank_distance,
    sumrank_report,
    sumrank_weight,
    vec_mat_convert,
    vector_rank_q,
    verify_construction1,
)

F3 = field_make(3)
SHAPE = Shape((2, 1, 2), (3, 2, 2))


def naive_weight(flat, shape: Shape, p: int) -> int:
    total = 0
    for part in shape.split(np.asarray(flat).reshape(1, -1)):
        total += rank_mod_p(part[0].tolist(), p)
    return total


words = st.lists(st.integers(0, 2), min_size=SHAPE.length, max_size=SHAPE.length)


@settings(max_examples=80, deadline=None)
@given(words, words, words)
def test_sumrank_metric_axioms(a, b, c):
    X, Y, Z = (SumRankWord.from_flat(F3, SHAPE, w) for w in (a, b, c))
    assert sumrank_weight(X) == naive_weight(a, SHAPE, 3)
    assert sumrank_distance(X, Y) == sumrank_distance(Y, X)
    assert sumrank_distance(X, Z) <= sumrank_distance(X, Y) + sumrank_distance(Y, Z)
    assert (sumrank_distance(X, Y) == 0) == (a == b)


@settings(max_examples=60, deadline=None)
@given(words)
def test_vector_form_round_trip(a):
    X = SumRankWord.from_flat(F3, SHAPE, a)
    v = mat_vec_convert(X, 2)
    assert len(v) == SHAPE.N
    Y = vec_mat_convert(v, SHAPE, 3, 2)
    assert Y == X
    # rank of a block = F_q-dimension of the span of its vector entries
    off = 0
    for blk, c in zip(X.blocks, SHAPE.cols):
        assert vector_rank_q(v[off : off + c], 3, 2) == blk.rank()
        off += c


def test_vec_mat_rejects_overfull_entry():
    with pytest.raises(ShapeMismatch):
        # entry 3 = the root a, which needs a second row in a 1-row block
        vec_mat_convert([0, 0, 0, 3, 0, 0, 0], SHAPE, 3, 2)


def test_batch_weights_vectorized_matches_scalar():
    rng = np.random.default_rng(3)
    flat = rng.integers(0, 3, size=(300, SHAPE.length))
    assert batch_weights(flat, SHAPE, F3).tolist() == [naive_weight(f, SHAPE, 3) for f in flat]


def test_phi_pad():
    M = MatrixFq(F3, [[1, 2, 0]])
    P = phi_pad(M, 2)
    assert P.shape == (2, 3) and P.rank() == 1
    with pytest.raises(TooManyRows):
        phi_pad(P, 1)


def test_singleton_specializations():
    # Hamming metric: all blocks 1 x 1
    for d in range(1, 6):
        assert sr_singleton_bound((1,) * 5, 1, d, 3) == 3 ** (5 - d + 1)
    # rank metric: one block
    assert sr_singleton_bound((4,), 2, 2, 3) == 3**4
    assert sr_singleton_bound((2, 4), 2, 3, 3) == 3**4  # whole first block used up, second block left
    assert sr_singleton_bound((4, 2), 2, 3, 3) == sr_singleton_bound((2, 4), 2, 3, 3)
    with pytest.raises(DistanceOutOfRange):
        sr_singleton_bound((2, 4), 2, 5, 3)


def test_matrix_singleton_uses_both_views():
    shape = Shape((2, 1), (4, 4))
    # common column count 4 with row blocks (2, 1): bound 3^{4 * (3 - 1)}
    assert matrix_singleton_bound(shape, 2, 3) == 3**8
    with pytest.raises(ShapeMismatch):
        matrix_singleton_bound(Shape((2, 1), (3, 4)), 1, 3)


def test_rank_one_matrices_count():
    R = rank_one_matrices(F3, 2, 4)
    assert len(R) == rank_matrix_count(2, 4, 1, 3)
    assert set(batch_rank(R, F3).tolist()) == {1}
    assert len({r.tobytes() for r in R}) == len(R)


# --------------------------------------------------------------------------------------
# padded-block construction


def test_C1bar_t2_exhaustive():
    C = construct_C1bar(3, 2)
    r = sumrank_report(C)
    assert r["dim_q"] == 12 and r["d"] == 2 and r["is_msrd"] and r["scan_mode"] == "exhaustive"
    assert r["k_over_ext"] == 6
    assert C.weight_histogram().get(2, 0) > 0


def test_C1bar_mixed_rows():
    C = construct_C1bar(3, 2, m_list=(1,))
    assert C.shape == Shape((2, 1), (4, 4)) and C.dim == 8
    assert C.min_distance == 2 and is_msrd(C)
    assert C.k is None  # a 1-row block is not an F_9-vector


def test_C1bar_generator_matrix_over_F9():
    C = construct_C1bar(3, 2)
    G = C.generator_matrix()
    assert G.shape == (6, 8)
    E = field_make(3, 2)
    flats = []
    for g in G:
        for lam in range(9):
            flats.append(vec_mat_convert(E.mul(lam, g), C.shape, 3, 2).flat())
    # every F_9-multiple of every row is a code word, and they span all of C
    assert C.contains_flat(np.array(flats)).all()
    assert rank_mod_p(flats, 3) == C.dim


def test_construct1_preconditions():
    with pytest.raises(BadFirstBlock):
        construct1(gabidulin_code(3, 3, 2), (2,))
    with pytest.raises(PreconditionViolation):
        construct1(construct_C1_family(3, 2), (1, 2))


def test_C2bar_proof_guided():
    C = construct_C2bar(3, 2)
    assert C.dim == 24 and C.cardinality == 3**24
    v = verify_construction1(C, budget=10**7, samples=2000, seed=0)
    assert v["scan_mode"] == "proof-guided partial" and v["d"] == 2
    # distinct f and g break closure under the F_9 action
    assert C.k is None
    with pytest.raises(NotExtensionLinear):
        C.generator_matrix()


def test_C2bar_with_equal_polynomials_is_extension_linear():
    C = construct_C2bar(3, 2, g_index=0)
    assert C.k == 12


# --------------------------------------------------------------------------------------
# extension-field construction


def test_C3bar_q3_n2_t2():
    C = construct_C3bar(3, 2, 2)
    r = sumrank_report(C, with_covering=True)
    assert r["shape"] == "(2x2|2x4)" and r["dim_q"] == 4 and r["k_over_ext"] == 2
    assert r["d"] == 3 and r["is_msrd"] and r["covering_radius"] == 2


def test_C3bar_t3_distance():
    C = construct_C3bar(3, 2, 3)
    assert C.min_distance == 4 == 3 * (2 - 1) + 1
    assert covering_radius(C) == 4


@pytest.mark.parametrize("q,n", [(3, 3), (5, 2)])
def test_C3bar_extension_linearity_only_at_smallest_case(q, n):
    C = construct_C3bar(q, n, 2)
    assert C.min_distance == 2 * (n - 1) + 1
    assert not C.is_extension_linear


def test_C4bar_needs_n4():
    with pytest.raises(PreconditionViolation):
        construct_C4bar(3, 2, 2)


# --------------------------------------------------------------------------------------
# coset machinery against direct scans


def test_coset_engine_accounts_for_every_ambient_word():
    C = construct_C3bar(3, 2, 2)
    eng = CosetEngine(C)
    total = sum(eng.count_of_weight(w) for w in range(C.shape.max_weight + 1))
    assert total == 3**C.shape.length
    # per-weight counts equal the exact product formula for the block shape
    w1 = sum(rank_matrix_count(n, c, 1, 3) for n, c in zip(C.shape.rows, C.shape.cols))
    assert eng.count_of_weight(1) == w1


def test_list_sizes_match_direct_center_scans():
    C = construct_C3bar(3, 2, 2)
    counts = CosetEngine(C).coset_weight_counts(2)
    radix = 3 ** np.arange(C.parity_check.shape[0])
    words = C.words(0, C.cardinality)
    rng = np.random.default_rng(11)
    for x in rng.integers(0, 3, size=(60, C.shape.length)):
        dists = np.array([naive_weight((x - w) % 3, C.shape, 3) for w in words])
        s = int(C.syndromes(x[None, :])[0] @ radix)
        for tau in (1, 2):
            assert (dists <= tau).sum() == counts[s, : tau + 1].sum()


def test_list_decodable_check_values():
    C = construct_C3bar(3, 2, 2)
    assert list_decodable_check(C, 1)["L"] == 1
    assert list_decodable_check(C, 2)["L"] == 5
    sampled = list_decodable_check(C, 2, mode="sampled", samples=50)
    assert sampled["is_lower_bound"] and 1 <= sampled["L"] <= 5
    assert sphere_intersection_counts(C, 4) == [1, 1, 5, 36, 48]


def test_covering_radius_against_full_ambient_scan():
    C = construct_C1bar(3, 2)
    # smallest weight per coset, by scanning every ambient word of weight <= 1
    eng = CosetEngine(C)
    seen = set()
    for w in (0, 1):
        for idx in eng.syndromes_of_weight(w):
            seen.update(idx.tolist())
    assert len(seen) == eng.n_cosets
    assert covering_radius(C) == 1


def test_C1bar_list_size_exceeds_design_value():
    C = construct_C1bar(3, 2)
    assert list_decodable_check(C, 2)["L"] == 1441


def test_code_requires_independent_basis_without_reduce():
    from sumrank_lab.errors import InvalidDimension

    with pytest.raises(InvalidDimension):
        SumRankCode(F3, SHAPE, np.ones((2, SHAPE.length)), reduce=False)
