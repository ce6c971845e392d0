"""Quantum states, gates, evolution, projectors and measurement.

A :class:`QState` wraps a read-only complex amplitude vector of dimension
``2**n`` that must have unit squared norm; construction rejects anything
else rather than silently renormalizing.  Basis outcomes are labelled
1-based (labels 1 .. 2^n), matching the convention used throughout the
package; storage index is always ``label - 1``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_UNITARY_TOL,
    DimensionMismatchError,
    as_matrix,
    as_vector,
    is_unitary,
    matrix_list_gen,
    tensor_product_list,
)

#: Tolerance on |norm^2 - 1| accepted by the QState constructor.
NORM_TOL = 1e-10


class NormalizationError(ValueError):
    """Vector does not have unit squared norm."""


class NonUnitaryOperatorError(ValueError):
    """Operator fails the unitarity check required for state evolution."""


def _n_qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"state dimension must be a power of two >= 2, got {dim}")
    return n


@dataclass(frozen=True, eq=False)
class QState:
    """Pure n-qubit state: 2^n complex amplitudes with unit squared norm."""

    n_qubits: int
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


def squared_norm(v) -> float:
    """Squared 2-norm of a complex vector."""
    vec = as_vector(v)
    return float(np.real(np.vdot(vec, vec)))


def make_qstate(v) -> QState:
    """Wrap a complex vector as a QState, rejecting non-normalized input."""
    vec = as_vector(v)
    n = _n_qubits_for_dim(vec.shape[0])
    norm2 = squared_norm(vec)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NormalizationError(
            f"squared norm {norm2!r} differs from 1 by more than {NORM_TOL}"
        )
    amps = np.array(vec, dtype=np.complex128)
    amps.setflags(write=False)
    return QState(n_qubits=n, amplitudes=amps)


def zero_state(n_qubits: int) -> QState:
    """The all-zeros basis state |0...0> (amplitude 1 at basis label 1)."""
    if n_qubits < 1:
        raise ValueError("qubit count must be at least 1")
    v = np.zeros(1 << n_qubits, dtype=np.complex128)
    v[0] = 1.0
    return make_qstate(v)


def basis_state(n_qubits: int, label: int) -> QState:
    """Computational basis state for a 1-based basis label in 1 .. 2^n."""
    dim = 1 << n_qubits
    if not 1 <= label <= dim:
        raise ValueError(f"basis label must be in 1..{dim}, got {label}")
    v = np.zeros(dim, dtype=np.complex128)
    v[label - 1] = 1.0
    return make_qstate(v)


def hadamard() -> np.ndarray:
    """The 2x2 Hadamard gate (1/sqrt 2) [[1, 1], [1, -1]]."""
    h = 1.0 / math.sqrt(2.0)
    return np.array([[h, h], [h, -h]], dtype=np.complex128)


def n_hadamard(n_qubits: int) -> np.ndarray:
    """The n-fold tensor power H (x) ... (x) H; every entry is +-(1/sqrt 2)^n."""
    if n_qubits < 1:
        raise ValueError("qubit count must be at least 1")
    return tensor_product_list(matrix_list_gen(lambda _k: hadamard(), n_qubits))


def evolve(operator, q: QState, tol: float = DEFAULT_UNITARY_TOL) -> QState:
    """Apply a unitary operator to a state and revalidate the result.

    Raises :class:`NonUnitaryOperatorError` when the operator fails the
    unitarity residual check at ``tol``: only unitary evolution is legal.
    """
    op = as_matrix(operator)
    if op.shape[0] != q.dim:
        raise DimensionMismatchError(
            f"operator dim {op.shape[0]} does not match state dim {q.dim}"
        )
    if not is_unitary(op, tol):
        raise NonUnitaryOperatorError(
            f"operator is not unitary within {tol}; evolution would be illegal"
        )
    return make_qstate(op @ q.amplitudes)


def projector(q: QState) -> np.ndarray:
    """Outer product |q><q|: entry (i, j) = q[i] * conj(q[j])."""
    v = q.amplitudes
    return np.outer(v, v.conj())


def completeness_residual(n_qubits: int) -> float:
    """Max-norm of (sum over all basis projectors) - identity."""
    dim = 1 << n_qubits
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for label in range(1, dim + 1):
        acc += projector(basis_state(n_qubits, label))
    return float(np.abs(acc - np.eye(dim)).max())


def projector_completeness(n_qubits: int, tol: float = 1e-10) -> bool:
    """True iff the 2^n basis projectors sum to the identity within ``tol``.

    Dense check; capped at 10 qubits.
    """
    if n_qubits < 1:
        raise ValueError("qubit count must be at least 1")
    if n_qubits > 10:
        raise ValueError("dense completeness check is capped at 10 qubits")
    return completeness_residual(n_qubits) < tol


def measurement_probability(x: QState, y: QState) -> float:
    """Probability of observing outcome ``x`` when measuring ``y``.

    Computed as |<x|y>|^2, which equals the projective form
    ||(|x><x|) |y>||^2 because the projector has rank one and ||x|| = 1.
    """
    if x.n_qubits != y.n_qubits:
        raise DimensionMismatchError(
            f"qubit counts differ: {x.n_qubits} vs {y.n_qubits}"
        )
    return float(abs(np.vdot(x.amplitudes, y.amplitudes)) ** 2)


def sample_measurement(q: QState, rng_seed: int, shots: int) -> Counter[int]:
    """Histogram of i.i.d. measurement outcomes (1-based basis labels).

    Inverse-CDF sampling over the cumulative |amplitude|^2 array, driven by
    numpy's PCG64 generator seeded with ``rng_seed``.  Histograms are
    bit-for-bit reproducible for a given (seed, shots) pair.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = np.abs(q.amplitudes) ** 2
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0  # guard the top edge against rounding drift
    rng = np.random.default_rng(rng_seed)
    draws = rng.random(shots)
    outcomes = np.searchsorted(cdf, draws, side="right") + 1
    return Counter(outcomes.tolist())


def random_qstate(n_qubits: int, rng: np.random.Generator) -> QState:
    """Random state: i.i.d. normal re/im amplitudes, normalized once."""
    dim = 1 << n_qubits
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return make_qstate(v / np.linalg.norm(v))
