"""Grover operators, full simulation, closed-form dynamics and iteration analytics.

Two simulation paths implement the same dynamics and must agree wherever both
run: an explicit dense-matrix path (operator product, matrix power, matrix
apply) for small qubit counts, and an O(2^n)-per-iteration vector kernel
(sign flip at the target, then inversion about the mean) that scales to about
24 qubits.  ``state_after_iterations`` picks the path automatically based on
the dense cap, which the ``GROVER_DENSE_CAP`` environment variable overrides.

All angles derive from theta = arcsin(1/sqrt(N)) for a search space of size
N = 2^n; the success probability after t iterations is sin^2((2t+1) theta).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .linalg import matmul, matrix_pow
from .states import QState, basis_state, evolve, make_qstate, n_hadamard, zero_state

#: Default qubit ceiling for the dense-matrix simulation path.
DEFAULT_DENSE_CAP = 6

#: Qubit ceiling for the vector kernel (memory-bound, not enforced here).
KERNEL_QUBIT_CAP = 24

# |t_real - round(t_real)| below this snaps to the integer: realizes the
# exactly-integral optimum (N=4 gives t_real = 1) despite double rounding.
_INTEGER_SNAP = 1e-9

# Success probabilities closer than this count as tied; the floor candidate
# wins a tie.  Safe: the only mathematically exact tie in range (N=2) lands
# around 7e-16 while the tightest genuine floor/ceil gap (n=24) is 4.4e-9.
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class GroverInstance:
    """A single-solution search problem: n qubits plus the target basis label.

    ``target`` is 1-based (1 .. 2^n).  Exactly one basis state is marked;
    multi-solution search is out of scope.
    """

    n_qubits: int
    target: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("qubit count must be at least 1")
        if not 1 <= self.target <= self.n_states:
            raise ValueError(
                f"target must be in 1..{self.n_states}, got {self.target}"
            )

    @property
    def n_states(self) -> int:
        return 1 << self.n_qubits

    def angles(self) -> GroverAngles:
        return grover_angles(self.n_states)


@dataclass(frozen=True)
class GroverAngles:
    """Rotation half-angle theta = arcsin(1/sqrt(N)) for a space of size N."""

    theta: float
    n_states: int

    def __post_init__(self) -> None:
        if self.n_states < 2:
            raise ValueError("search space must contain at least 2 states")
        if not 0.0 < self.theta <= math.pi / 2:
            raise ValueError(f"theta out of (0, pi/2]: {self.theta}")
        if abs(math.sin(self.theta) - 1.0 / math.sqrt(self.n_states)) > 1e-12:
            raise ValueError("theta does not satisfy sin(theta) = 1/sqrt(N)")


def grover_angles(n_states: int) -> GroverAngles:
    """Angles for a search space of ``n_states`` items."""
    if n_states < 2:
        raise ValueError("search space must contain at least 2 states")
    return GroverAngles(theta=math.asin(1.0 / math.sqrt(n_states)), n_states=n_states)


def oracle(inst: GroverInstance) -> np.ndarray:
    """Phase-flip reflection: diagonal +1 everywhere, -1 at the target label."""
    d = np.ones(inst.n_states, dtype=np.complex128)
    d[inst.target - 1] = -1.0
    return np.diag(d)


def tau_perp(inst: GroverInstance) -> QState:
    """Normalized uniform superposition of all non-target basis states."""
    amp = 1.0 / math.sqrt(inst.n_states - 1)
    v = np.full(inst.n_states, amp, dtype=np.complex128)
    v[inst.target - 1] = 0.0
    return make_qstate(v)


def diffusion(n_qubits: int) -> np.ndarray:
    """Inversion about the mean: 2|phi0><phi0| - I for the uniform |phi0>.

    Entries: 1/2^(n-1) off the diagonal, 1/2^(n-1) - 1 on it.
    """
    if n_qubits < 1:
        raise ValueError("qubit count must be at least 1")
    dim = 1 << n_qubits
    off = 2.0 / dim
    d = np.full((dim, dim), off, dtype=np.complex128)
    np.fill_diagonal(d, off - 1.0)
    return d


def grover_operator(inst: GroverInstance) -> np.ndarray:
    """One Grover step: the diffusion reflection composed after the oracle."""
    return matmul(diffusion(inst.n_qubits), oracle(inst))


def uniform_superposition(n_qubits: int) -> QState:
    """H^(x)n |0...0>: every amplitude 1/sqrt(N), built directly."""
    if n_qubits < 1:
        raise ValueError("qubit count must be at least 1")
    dim = 1 << n_qubits
    return make_qstate(np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128))


def dense_matrix_cap() -> int:
    """Qubit ceiling for the dense-matrix path (GROVER_DENSE_CAP overrides)."""
    raw = os.environ.get("GROVER_DENSE_CAP")
    if raw is None:
        return DEFAULT_DENSE_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("GROVER_DENSE_CAP must be at least 1")
    return cap


def _simulate_matrix(inst: GroverInstance, t: int) -> QState:
    start = evolve(n_hadamard(inst.n_qubits), zero_state(inst.n_qubits))
    return evolve(matrix_pow(grover_operator(inst), t), start)


def _simulate_kernel(inst: GroverInstance, t: int) -> QState:
    amps = np.full(inst.n_states, 1.0 / math.sqrt(inst.n_states))
    flip = inst.target - 1
    for _ in range(t):
        amps[flip] = -amps[flip]
        amps = 2.0 * amps.mean() - amps
    return make_qstate(amps.astype(np.complex128))


def state_after_iterations(inst: GroverInstance, t: int, method: str = "auto") -> QState:
    """State after ``t`` Grover steps applied to the uniform superposition.

    ``method`` selects the implementation: ``"matrix"`` builds the operator
    G = D U_f explicitly and applies its t-th power; ``"kernel"`` updates the
    amplitude vector in place per iteration.  ``"auto"`` uses the matrix path
    up to :func:`dense_matrix_cap` qubits and the kernel beyond.
    """
    if t < 0:
        raise ValueError("iteration count must be non-negative")
    if method == "auto":
        method = "matrix" if inst.n_qubits <= dense_matrix_cap() else "kernel"
    if method == "matrix":
        return _simulate_matrix(inst, t)
    if method == "kernel":
        return _simulate_kernel(inst, t)
    raise ValueError(f"unknown simulation method {method!r}")


def closed_form_state(inst: GroverInstance, t: int) -> QState:
    """The state cos((2t+1) theta)|tau_perp> + sin((2t+1) theta)|tau>.

    Built directly from the angle formula, phase-exact (not merely equal up
    to a global phase): this is the analytic counterpart the simulation
    paths are checked against.
    """
    if t < 0:
        raise ValueError("iteration count must be non-negative")
    phase = (2 * t + 1) * inst.angles().theta
    v = (
        math.cos(phase) * tau_perp(inst).amplitudes
        + math.sin(phase) * basis_state(inst.n_qubits, inst.target).amplitudes
    )
    return make_qstate(v)


@dataclass(frozen=True)
class TwoDState:
    """Coordinates in the {|tau_perp>, |tau>} plane spanned by the dynamics."""

    c_perp: float
    c_tau: float

    def __post_init__(self) -> None:
        if abs(self.c_perp**2 + self.c_tau**2 - 1.0) > 1e-10:
            raise ValueError("plane coordinates must lie on the unit circle")


def initial_plane_state(angles: GroverAngles) -> TwoDState:
    """The uniform superposition in plane coordinates: (cos theta, sin theta)."""
    return TwoDState(math.cos(angles.theta), math.sin(angles.theta))


def rotation_step_2d(s: TwoDState, angles: GroverAngles) -> TwoDState:
    """One Grover step as the 2x2 rotation by 2 theta in the plane.

    Starting from (cos theta, sin theta), t applications land on
    (cos((2t+1) theta), sin((2t+1) theta)).
    """
    c = math.cos(2.0 * angles.theta)
    s2 = math.sin(2.0 * angles.theta)
    return TwoDState(
        c_perp=c * s.c_perp - s2 * s.c_tau,
        c_tau=s2 * s.c_perp + c * s.c_tau,
    )


def success_probability(angles: GroverAngles, t: int) -> float:
    """sin^2((2t+1) theta): probability that measuring after t steps hits the target."""
    if t < 0:
        raise ValueError("iteration count must be non-negative")
    return math.sin((2 * t + 1) * angles.theta) ** 2


@dataclass(frozen=True)
class OptimalIterations:
    """Floor/ceiling candidates around pi/(4 theta) - 1/2 and the winner."""

    t_real: float
    t_floor: int
    t_ceil: int
    t_best: int
    p_best: float


def _snapped_t_real(angles: GroverAngles) -> float:
    t_real = math.pi / (4.0 * angles.theta) - 0.5
    nearest = round(t_real)
    if abs(t_real - nearest) <= _INTEGER_SNAP:
        return float(nearest)
    return t_real


def optimal_iterations(angles: GroverAngles) -> OptimalIterations:
    """The two practical iteration counts and the better of them.

    t_real = pi/(4 theta) - 1/2 maximizes the success probability over the
    reals; only its floor (clamped at 0) and ceiling are practical.  The two
    candidates are compared by success probability; differences within the
    tie tolerance count as a tie, which the floor wins.
    """
    t_real = _snapped_t_real(angles)
    t_floor = max(0, math.floor(t_real))
    t_ceil = max(0, math.ceil(t_real))
    p_floor = success_probability(angles, t_floor)
    p_ceil = success_probability(angles, t_ceil)
    if p_ceil > p_floor + _TIE_TOL:
        t_best, p_best = t_ceil, p_ceil
    else:
        t_best, p_best = t_floor, p_floor
    return OptimalIterations(
        t_real=t_real, t_floor=t_floor, t_ceil=t_ceil, t_best=t_best, p_best=p_best
    )


def monotonic_increase_range(angles: GroverAngles) -> range:
    """Integer t with 0 < t and t+1 <= pi/(4 theta) - 1/2.

    On this range each extra iteration strictly increases the success
    probability.  The range may be empty (N = 2 and N = 4 both yield one).
    """
    t_real = _snapped_t_real(angles)
    hi = math.floor(t_real - 1.0)
    return range(1, hi + 1)


def monotonic_decrease_range(angles: GroverAngles) -> range:
    """Integer t with pi/(4 theta) - 1/2 <= t <= pi/(2 theta) - 3/2.

    On this range each extra iteration strictly decreases the success
    probability.  May be empty.
    """
    t_real = _snapped_t_real(angles)
    lo = math.ceil(t_real)
    hi = math.floor(2.0 * t_real - 0.5)  # pi/(2 theta) - 3/2 rewritten via t_real
    return range(lo, hi + 1)


def max_t_in_period(angles: GroverAngles) -> int:
    """Largest t with (2t+1) theta <= pi, bounding one period of p_t."""
    return math.floor((math.pi / angles.theta - 1.0) / 2.0)
