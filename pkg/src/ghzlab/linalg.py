"""Dense linear algebra on qudit registers.

Operators are square complex ``numpy`` arrays and states are 1-D complex
arrays. Composite indices are base-d digit strings with party 1 as the most
significant digit, so :func:`tensor` agrees with ``numpy.kron`` order.

Composite observables that would be too large to store densely are held as
:class:`KronOperator`, a product of local factors; :func:`apply`,
:func:`eigen_residual` and :func:`commutator_norm` accept either form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from ._limits import MAX_TENSOR_ENTRIES, DimensionOverflowError, ParameterError

__all__ = [
    "KronOperator",
    "tensor",
    "tensor_state",
    "basis_state",
    "apply",
    "eigen_residual",
    "commutator_norm",
    "commutant_dimension",
    "unitarity_defect",
    "COMMUTANT_RTOL",
]

COMMUTANT_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class KronOperator:
    """``factors[0] (x) factors[1] (x) ...`` kept in factored form."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ParameterError("KronOperator needs at least one factor")
        for f in self.factors:
            _check_square(f)

    @property
    def local_dims(self) -> tuple[int, ...]:
        return tuple(f.shape[0] for f in self.factors)

    @property
    def dim(self) -> int:
        return int(np.prod(self.local_dims))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dim, self.dim)

    def dense(self) -> np.ndarray:
        return tensor(self.factors)

    def dagger(self) -> KronOperator:
        return KronOperator(tuple(f.conj().T for f in self.factors))

    def __matmul__(self, other):
        if isinstance(other, KronOperator) and other.local_dims == self.local_dims:
            return KronOperator(tuple(a @ b for a, b in zip(self.factors, other.factors)))
        if isinstance(other, np.ndarray) and other.ndim == 1:
            return apply(self, other)
        return NotImplemented


Operator = Union[np.ndarray, KronOperator]


def _check_square(op: np.ndarray) -> None:
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ParameterError(f"operator must be square, got shape {op.shape}")


def _dim(op: Operator) -> int:
    if isinstance(op, KronOperator):
        return op.dim
    _check_square(op)
    return op.shape[0]


def tensor(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product in party order (first factor most significant)."""
    factors = [np.asarray(f) for f in factors]
    if not factors:
        raise ParameterError("tensor of an empty factor list")
    for f in factors:
        _check_square(f)
    dim = int(np.prod([f.shape[0] for f in factors], dtype=object))
    if dim * dim > MAX_TENSOR_ENTRIES:
        raise DimensionOverflowError(
            f"tensor product of dimension {dim} has {dim * dim} entries, cap is {MAX_TENSOR_ENTRIES}"
        )
    return reduce(np.kron, factors).astype(complex, copy=False)


def tensor_state(vectors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, [np.asarray(v, dtype=complex) for v in vectors])


def basis_state(dim: int, index: int) -> np.ndarray:
    if not 0 <= index < dim:
        raise ParameterError(f"basis index {index} outside [0, {dim})")
    s = np.zeros(dim, dtype=complex)
    s[index] = 1.0
    return s


def apply(op: Operator, s: np.ndarray) -> np.ndarray:
    """Matrix-vector product, no normalization."""
    s = np.asarray(s)
    dim = _dim(op)
    if s.ndim != 1 or s.shape[0] != dim:
        raise ParameterError(f"state of length {s.shape} does not match operator dimension {dim}")
    if not isinstance(op, KronOperator):
        return op @ s
    dims = op.local_dims
    psi = s.astype(complex).reshape(dims)
    for axis, f in enumerate(op.factors):
        psi = np.moveaxis(np.tensordot(f, psi, axes=([1], [axis])), 0, axis)
    return psi.reshape(-1)


def eigen_residual(op: Operator, s: np.ndarray, lam: complex) -> float:
    """``||op s - lam s||_2``."""
    return float(np.linalg.norm(apply(op, s) - lam * np.asarray(s)))


def _kron_difference_norm(p: Sequence[np.ndarray], q: Sequence[np.ndarray]) -> float:
    # ||(x)p - (x)q||_F via the telescoping sum
    #   (x)q - (x)p = sum_k p_1..p_{k-1} (x) (q_k - p_k) (x) q_{k+1}..q_N,
    # whose Gram matrix factorizes into traces; exact zero when p == q.
    n = len(p)
    terms = []
    for k in range(n):
        delta = q[k] - p[k]
        if not np.any(delta):
            continue
        terms.append([*p[:k], delta, *q[k + 1:]])
    if not terms:
        return 0.0
    total = 0.0
    for a in terms:
        for b in terms:
            prod = 1.0 + 0j
            for fa, fb in zip(a, b):
                prod *= np.vdot(fa, fb)
            total += prod.real
    return float(np.sqrt(max(total, 0.0)))


def commutator_norm(a: Operator, b: Operator) -> float:
    """Frobenius norm of ``ab - ba``."""
    if _dim(a) != _dim(b):
        raise ParameterError(f"dimension mismatch: {_dim(a)} vs {_dim(b)}")
    if (
        isinstance(a, KronOperator)
        and isinstance(b, KronOperator)
        and a.local_dims == b.local_dims
    ):
        ab = [x @ y for x, y in zip(a.factors, b.factors)]
        ba = [y @ x for x, y in zip(a.factors, b.factors)]
        return _kron_difference_norm(ab, ba)
    a = a.dense() if isinstance(a, KronOperator) else a
    b = b.dense() if isinstance(b, KronOperator) else b
    return float(np.linalg.norm(a @ b - b @ a))


def commutant_dimension(ops: Sequence[np.ndarray], rtol: float = COMMUTANT_RTOL) -> int:
    """Dimension of ``{M : M op = op M for every op}``.

    Each constraint ``op M - M op = 0`` is the linear map
    ``(op (x) I - I (x) op^T) vec(M)`` on the row-major vectorization of
    ``M``; the answer is the null-space dimension of the stacked maps.
    Singular values at or below ``rtol`` times the largest count as zero;
    the reference scale is never smaller than the largest operator norm, so a
    map that is zero up to rounding (e.g. a conjugated identity) has rank 0.
    """
    ops = [o.dense() if isinstance(o, KronOperator) else np.asarray(o, dtype=complex) for o in ops]
    if not ops:
        raise ParameterError("commutant of an empty operator list")
    dim = _dim(ops[0])
    for o in ops:
        if _dim(o) != dim:
            raise ParameterError(f"dimension mismatch: {_dim(o)} vs {dim}")
    if dim > 16:
        raise DimensionOverflowError(f"commutant analysis limited to dim <= 16, got {dim}")
    eye = np.eye(dim)
    stacked = np.vstack([np.kron(o, eye) - np.kron(eye, o.T) for o in ops])
    sv = np.linalg.svd(stacked, compute_uv=False)
    unknowns = dim * dim
    scale = max(sv[0] if sv.size else 0.0, max(np.linalg.norm(o, 2) for o in ops))
    if scale == 0.0:
        return unknowns
    rank = int(np.sum(sv > rtol * scale))
    return unknowns - rank


def unitarity_defect(op: Operator) -> float:
    """``max |op op^dagger - I|`` entrywise.

    Factored operators beyond the dense cap report the sum of their factors'
    defects, which bounds the true value to first order.
    """
    if isinstance(op, KronOperator):
        if op.dim * op.dim <= MAX_TENSOR_ENTRIES:
            return unitarity_defect(op.dense())
        return float(sum(unitarity_defect(f) for f in op.factors))
    return float(np.max(np.abs(op @ op.conj().T - np.eye(op.shape[0]))))
