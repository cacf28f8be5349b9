"""Small algebras used by the property suites."""
from __future__ import annotations

from hopfcat.algebra import FinAlgebra
from hopfcat.linalg import ExactMatrix, Subspace
from hopfcat.scalar import ONE, ZERO


def _vec(m: ExactMatrix) -> dict:
    k = m.cols
    return {i * k + j: c for i, j, c in m.triplets()}


def _mat(v, k: int) -> ExactMatrix:
    return ExactMatrix.from_triplets(k, k, [(p // k, p % k, c) for p, c in enumerate(v) if c])


def matrix_algebra(gens: list[ExactMatrix]) -> tuple[FinAlgebra, list[ExactMatrix]]:
    """Unital subalgebra of M_k generated by ``gens``, with its basis matrices."""
    k = gens[0].rows
    words = [ExactMatrix.identity(k)] + list(gens)
    span = Subspace([_vec(w) for w in words], k * k)
    while True:
        basis = [_mat(r, k) for r in span.basis()]
        new = [a @ b for a in basis for b in basis if not span.contains(_vec(a @ b))]
        if not new:
            break
        span = Subspace([_vec(b) for b in basis] + [_vec(n) for n in new], k * k)
    basis = [_mat(r, k) for r in span.basis()]
    d = len(basis)

    def coords(m):
        return {i: c for i, c in enumerate(span.coords(_vec(m))) if c}

    mult = {(i, j): coords(basis[i] @ basis[j]) for i in range(d) for j in range(d)}
    mult = {key: v for key, v in mult.items() if v}
    return FinAlgebra(d, mult, coords(ExactMatrix.identity(k)), [f"b{i}" for i in range(d)], name="matalg"), basis


def strictly_upper_part(A: FinAlgebra, basis: list[ExactMatrix]) -> list[dict]:
    """A ∩ (strictly upper triangular matrices), as coefficient vectors."""
    from hopfcat.linalg import kernel_sparse

    k = basis[0].rows
    # a = Σ c_i b_i has zero diagonal: one linear equation per diagonal entry
    rows = []
    for t in range(k):
        row = {i: b[t, t] for i, b in enumerate(basis) if b[t, t]}
        if row:
            rows.append(row)
    return kernel_sparse(rows, A.dim)


def truncated_poly(m: int) -> FinAlgebra:
    """k[x]/(x^m)."""
    mult = {(i, j): {i + j: ONE} for i in range(m) for j in range(m) if i + j < m}
    return FinAlgebra(m, mult, {0: ONE}, [f"x^{i}" for i in range(m)], name=f"k[x]/x^{m}")


__all__ = ["matrix_algebra", "strictly_upper_part", "truncated_poly", "ZERO"]
