from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from hopfcat.algebra import (
    block_data,
    check_associativity,
    check_module,
    check_unit,
    decompose_module,
    direct_sum,
    group_algebra_z2,
    hom_space,
    ideal_power_chain,
    is_isomorphic,
    is_two_sided_ideal,
    jacobson_radical,
    lift_idempotent,
    one_dim_module,
    regular_module,
)
from hopfcat.linalg import ExactMatrix, Subspace, solve_linear
from hopfcat.scalar import HALF, ONE, ZERO

from builders import matrix_algebra, strictly_upper_part, truncated_poly


def test_group_algebra_is_semisimple():
    A = group_algebra_z2()
    assert check_unit(A) and check_associativity(A)
    assert jacobson_radical(A) == []
    data = block_data(A)
    assert [S.dim for S in data.simples] == [1, 1]
    assert data.cartan == [[1, 0], [0, 1]]


def test_truncated_polynomial_radical_and_pim():
    A = truncated_poly(4)
    rad = jacobson_radical(A)
    assert len(rad) == 3 and ideal_power_chain(A, rad) == 4
    data = block_data(A)
    assert [S.dim for S in data.simples] == [1] and [P.dim for P in data.pims] == [4]
    assert data.cartan == [[4]]


def test_lift_idempotent():
    # upper triangular 2x2 matrices; diag(1, 0) + E12 is idempotent mod rad
    A, basis = matrix_algebra([ExactMatrix.from_rows([[1, 0], [0, 0]]), ExactMatrix.from_rows([[0, 1], [0, 0]])])
    rad = jacobson_radical(A)
    assert len(rad) == 1
    cols = [[b[i, j] for i in range(2) for j in range(2)] for b in basis]
    x = solve_linear(ExactMatrix.from_columns(cols, 4), [ONE, ONE, ZERO, ZERO])
    e = lift_idempotent(A, {i: c for i, c in enumerate(x) if c}, rad)
    assert A.mul(e, e) == e and e != A.unit and e


def test_hom_space_and_isomorphism():
    A = group_algebra_z2()
    triv = one_dim_module(A, [ONE, ONE], "1")
    sign = one_dim_module(A, [ONE, -ONE], "S")
    reg = regular_module(A)
    assert len(hom_space(triv, reg)) == 1 and len(hom_space(triv, sign)) == 0
    assert is_isomorphic(reg, direct_sum([triv, sign]))
    assert not is_isomorphic(triv, sign)
    parts = decompose_module(direct_sum([triv, triv, sign]))
    assert sorted(m for _, m in parts) == [1, 2]


def test_check_module_rejects_bad_action():
    A = group_algebra_z2()
    assert check_module(one_dim_module(A, [ONE, -ONE]))
    assert not check_module(one_dim_module(A, [ONE, HALF]))


# -- property suites --------------------------------------------------------
small = st.sampled_from([0, 0, 0, 1, -1, 2])


@st.composite
def triangular_generators(draw):
    k = draw(st.integers(2, 4))
    count = draw(st.integers(1, 2))
    gens = []
    for _ in range(count):
        rows = [[draw(small) if j >= i else 0 for j in range(k)] for i in range(k)]
        gens.append(ExactMatrix.from_rows(rows))
    return gens


@given(triangular_generators())
def test_radical_is_nilpotent_ideal(gens):
    A, basis = matrix_algebra(gens)
    rad = jacobson_radical(A)
    assert is_two_sided_ideal(A, rad) if rad else True
    if rad:
        assert ideal_power_chain(A, rad) <= A.dim
    # oracle: for triangular algebras rad(A) = A ∩ strictly upper triangular
    oracle = strictly_upper_part(A, basis)
    ours = Subspace(rad, A.dim)
    theirs = Subspace(oracle, A.dim)
    assert ours.dim == theirs.dim and all(ours.contains(v) for v in oracle)


@given(triangular_generators())
def test_regular_module_identity(gens):
    A, _ = matrix_algebra(gens)
    data = block_data(A)
    assert sum(S.dim * P.dim for S, P in zip(data.simples, data.pims)) == A.dim
    # Cartan entries: dim Hom(P_i, P_j) summed against dims recovers dim A too
    assert sum(sum(row) for row in data.cartan) == A.dim
    # A_A = ⊕ P_i^{dim S_i}
    for P, mult in decompose_module(regular_module(A)):
        k = next(i for i, Q in enumerate(data.pims) if is_isomorphic(P, Q))
        assert mult == data.simples[k].dim
