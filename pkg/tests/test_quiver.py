from collections import Counter
from fractions import Fraction as F

import pytest

from circpers.field import GF2, QQ, JordanBlock, Matrix, PrimeField
from circpers.quiver import (
    CircleBarCode,
    CyclicQuiverRep,
    LinearQuiverRep,
    QuiverError,
    ap1_dim_vector,
    bar_from_positions,
    decompose,
    decompose_linear,
    find_chain,
    monodromy,
    split_chain,
    synthesize_model,
)

X_MINUS_1 = (F(-1), F(1))
X_MINUS_3 = (F(-3), F(1))


def all_closure_types():
    return [(True, True), (True, False), (False, True), (False, False)]


def test_bar_code_validation():
    CircleBarCode(1, 1, 0, True, True, 1)
    with pytest.raises(QuiverError):
        CircleBarCode(2, 1, 0, True, True, 3)  # i > j needs a wrap
    with pytest.raises(QuiverError):
        CircleBarCode(0, 1, 0, True, True, 3)


def test_position_span_round_trip():
    for m in (1, 2, 3, 5):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                for k in (0, 1, 2):
                    for lc, rc in all_closure_types():
                        if k == 0 and i > j:
                            continue
                        bar = CircleBarCode(i, j, k, lc, rc, m)
                        try:
                            p, q = bar.position_span()
                        except QuiverError:
                            continue  # empty interval, e.g. (s_i, s_i)
                        assert bar_from_positions(p, q, lc, rc, m) == bar


def test_models_match_ap1_dimensions():
    for m in (2, 3):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                for k in (0, 1, 2):
                    if k == 0 and i > j:
                        continue
                    for lc, rc in all_closure_types():
                        bar = CircleBarCode(i, j, k, lc, rc, m)
                        try:
                            rep = synthesize_model(bar, m, QQ)
                        except QuiverError:
                            continue
                        want = ap1_dim_vector(bar)
                        assert rep.dims == want, bar.type_str()


def test_model_decomposes_to_itself():
    m = 3
    for i, j, k, lc, rc in [(1, 2, 0, True, True), (2, 3, 0, False, True),
                            (3, 1, 1, True, False), (2, 2, 1, False, False),
                            (1, 1, 2, True, True)]:
        bar = CircleBarCode(i, j, k, lc, rc, m)
        bars, cells = decompose(synthesize_model(bar, m, QQ))
        assert bars == Counter([bar])
        assert cells == Counter()


def test_jordan_model_decomposes_to_itself():
    cell = JordanBlock(X_MINUS_3, 2)
    rep = synthesize_model(cell, 3, QQ)
    bars, cells = decompose(rep)
    assert bars == Counter()
    assert cells == Counter([cell])


def test_monodromy_examples():
    rep = CyclicQuiverRep(QQ, [Matrix.from_int_rows(QQ, [[1]])],
                          [Matrix.from_int_rows(QQ, [[2]])])
    assert monodromy(rep)[0, 0] == F(1, 2)
    F5 = PrimeField(5)
    rep = CyclicQuiverRep(
        F5,
        [Matrix.identity(F5, 1), Matrix.identity(F5, 1)],
        [Matrix.from_int_rows(F5, [[3]]), Matrix.from_int_rows(F5, [[1]])])
    assert monodromy(rep)[0, 0] == 2


def test_monodromy_base_independence():
    rep = synthesize_model(JordanBlock(X_MINUS_3, 2), 3, QQ)
    from circpers.field import jordan_decomposition
    ref = jordan_decomposition(monodromy(rep, base=1))
    for base in (2, 3):
        assert jordan_decomposition(monodromy(rep, base=base)) == ref


def test_decompose_pinned_jordan_example():
    beta = Matrix.from_int_rows(QQ, [[3, 0, 0], [0, 1, 0], [0, 3, 1]])
    rep = CyclicQuiverRep(QQ, [Matrix.identity(QQ, 3)], [beta])
    bars, cells = decompose(rep)
    assert bars == Counter()
    # T = beta^{-1} has cells of the same sizes at inverse eigenvalues
    assert cells == Counter({JordanBlock((F(-1, 3), F(1)), 1): 1,
                             JordanBlock(X_MINUS_1, 2): 1})


def test_decompose_zero_rep():
    bars, cells = decompose(CyclicQuiverRep.zero(QQ, 3))
    assert bars == Counter() and cells == Counter()


def test_decompose_direct_sum_recovery():
    m = 4
    parts = [
        CircleBarCode(1, 3, 0, True, True, m),
        CircleBarCode(2, 2, 1, False, False, m),
        CircleBarCode(4, 1, 1, True, False, m),
    ]
    cells = [JordanBlock(X_MINUS_1, 1), JordanBlock(X_MINUS_3, 1)]
    reps = [synthesize_model(b, m, QQ) for b in parts]
    reps += [synthesize_model(c, m, QQ) for c in cells]
    rep = CyclicQuiverRep.direct_sum(reps)
    bars, got_cells = decompose(rep)
    assert bars == Counter(parts)
    assert got_cells == Counter(cells)


def test_decompose_pivot_order_invariance():
    m = 3
    parts = [CircleBarCode(1, 2, 0, True, False, m),
             CircleBarCode(2, 1, 1, False, True, m),
             CircleBarCode(3, 3, 0, True, True, m)]
    rep = CyclicQuiverRep.direct_sum(
        [synthesize_model(b, m, GF2) for b in parts])
    first = decompose(rep, pivot="first")
    last = decompose(rep, pivot="last")
    assert first == last == (Counter(parts), Counter())


def test_nested_interval_stack_regression():
    # three nested linear bars whose minimal chain is not reachable by
    # single-kernel-vector forward extension: the middle bar's endpoints
    # interleave both neighbours
    lbars = [(2, 8), (4, 7), (5, 6)]
    m = 5
    parts = []
    for p, q in lbars:
        lc = p % 2 == 0
        rc = q % 2 == 0
        parts.append(bar_from_positions(p, q, lc, rc, m))
    rep = CyclicQuiverRep.direct_sum(
        [synthesize_model(b, m, QQ) for b in parts])
    bars, cells = decompose(rep)
    assert bars == Counter(parts)
    assert cells == Counter()


def test_find_chain_and_split():
    # m=1, alpha=(1), beta=0: the 2-chain splits to the half-open wrap bar
    rep = CyclicQuiverRep(QQ, [Matrix.identity(QQ, 1)],
                          [Matrix.zeros(QQ, 1, 1)])
    assert find_chain(rep, 1) is None
    w = find_chain(rep, 2)
    assert w is not None and w.length == 2
    bar, rest = split_chain(rep, w)
    assert bar == CircleBarCode(1, 1, 1, False, True, 1)
    assert rest.total_dim == 0


def test_split_point_bar():
    # single even space: the closed point bar
    rep = CyclicQuiverRep(QQ, [Matrix.zeros(QQ, 1, 0)],
                          [Matrix.zeros(QQ, 1, 0)])
    w = find_chain(rep, 1)
    assert w is not None
    bar, rest = split_chain(rep, w)
    assert bar == CircleBarCode(1, 1, 0, True, True, 1)
    assert rest.total_dim == 0


def test_decompose_linear_single_space():
    rep = LinearQuiverRep(QQ, [Matrix.zeros(QQ, 1, 0)], [])
    from circpers.quiver import LinearBar
    assert decompose_linear(rep) == Counter([LinearBar(2, 2)])


def test_decompose_linear_full_support():
    rep = LinearQuiverRep(QQ,
                          [Matrix.identity(QQ, 1), Matrix.identity(QQ, 1)],
                          [Matrix.identity(QQ, 1)])
    from circpers.quiver import LinearBar
    assert decompose_linear(rep) == Counter([LinearBar(1, 4)])


def test_direct_sum_dims_additive():
    m = 2
    a = synthesize_model(CircleBarCode(1, 2, 0, True, True, m), m, QQ)
    b = synthesize_model(JordanBlock(X_MINUS_1, 1), m, QQ)
    s = CyclicQuiverRep.direct_sum([a, b])
    assert s.total_dim == a.total_dim + b.total_dim
    assert s.dims == tuple(x + y for x, y in zip(a.dims, b.dims))
