"""Search dynamics inside the (2k+1)-dimensional invariant subspace.

Started from the uniform state, the whole walk lives in a subspace with an
orthonormal basis in which the unmarked step operator is diagonal, with
eigenvalues (1, e^{i w_1}, e^{-i w_1}, ..., e^{i w_k}, e^{-i w_k}), and the
marked-vertex reflection is the rank-1 real reflection I - 2 w w^T through
the target coordinates

    w = (p_0, p_1/sqrt(2), p_1/sqrt(2), ..., p_k/sqrt(2), p_k/sqrt(2)),

where p_l**2 is the level-l projector weight.  The step matrix is the
product of the two, so evolution for any n costs O(k^2) per step and is
exact for finite n, not an asymptotic approximation.  The initial state is
the first basis vector, and the success probability at any time is
|w . coords|**2.

The operator is assembled and applied in numpy's extended precision where
the platform provides one (a double-rounded step matrix has eigenvalue
moduli off by a few 1e-18, which over 1e6 steps inflates the norm by about
1e-11); states and probabilities are reported in double.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import spectral
from .johnson import GraphParams

__all__ = [
    "ReducedWalk",
    "target_coords",
    "build_reduced",
    "evolve",
    "evolve_series",
    "success_probability",
    "eigenphases",
    "find_peak",
]


@dataclass(frozen=True)
class ReducedWalk:
    """Immutable reduced step operator with its target and start vectors."""

    params: GraphParams
    matrix: np.ndarray      # (2k+1, 2k+1) complex, diag(phases) @ (I - 2 w w^T)
    target: np.ndarray      # real coordinates of the marked-arc superposition
    initial: np.ndarray     # unit vector on the stationary coordinate
    matrix_ext: np.ndarray  # extended-precision copy used for evolution

    @property
    def dim(self) -> int:
        return 2 * self.params.k + 1


def _longdouble_ratio(frac: Fraction) -> np.longdouble:
    # decimal-string parse keeps big integer operands exact in extended precision
    return np.longdouble(str(frac.numerator)) / np.longdouble(str(frac.denominator))


def _target_coords_ext(params: GraphParams) -> np.ndarray:
    k = params.k
    w = np.empty(2 * k + 1, dtype=np.longdouble)
    w[0] = np.sqrt(_longdouble_ratio(spectral.projector_weight_exact(params, 0)))
    for l in range(1, k + 1):
        half = spectral.projector_weight_exact(params, l) / 2
        w[2 * l - 1] = w[2 * l] = np.sqrt(_longdouble_ratio(half))
    return w


def target_coords(params: GraphParams) -> np.ndarray:
    """Real coordinates of the target vector in the walk eigenbasis."""
    return _target_coords_ext(params).astype(np.float64)


def build_reduced(params: GraphParams) -> ReducedWalk:
    """Assemble the reduced step matrix diag(e^{±i w_l}) @ (I - 2 w w^T)."""
    k = params.k
    dim = 2 * k + 1
    angles = np.zeros(dim, dtype=np.longdouble)
    for l in range(1, k + 1):
        omega = np.arccos(np.longdouble(spectral.eigenvalue(params, l))
                          / np.longdouble(params.degree))
        angles[2 * l - 1] = omega
        angles[2 * l] = -omega
    phases = np.cos(angles) + 1j * np.sin(angles)
    w_ext = _target_coords_ext(params)
    reflection = np.eye(dim, dtype=np.longdouble) - 2.0 * np.outer(w_ext, w_ext)
    matrix_ext = phases[:, None] * reflection
    matrix = matrix_ext.astype(np.complex128)
    target = w_ext.astype(np.float64)
    initial = np.zeros(dim, dtype=np.complex128)
    initial[0] = 1.0
    for arr in (matrix, matrix_ext, target, initial):
        arr.setflags(write=False)
    return ReducedWalk(params=params, matrix=matrix, target=target,
                       initial=initial, matrix_ext=matrix_ext)


def evolve(walk: ReducedWalk, state: np.ndarray, t: int) -> np.ndarray:
    """Apply ``t`` step-matrix products; iterated matvec, no squaring."""
    if t < 0:
        raise ValueError("t must be >= 0")
    out = np.asarray(state, dtype=np.clongdouble).copy()
    for _ in range(t):
        out = walk.matrix_ext @ out
    return out.astype(np.complex128)


def success_probability(target: np.ndarray, state: np.ndarray) -> float:
    """|<target|state>|^2; the target coordinates are real."""
    return float(abs(np.dot(target, np.asarray(state, dtype=np.complex128))) ** 2)


def evolve_series(walk: ReducedWalk, steps: int, stride: int = 1) -> list:
    """Rows (t, p_succ, norm) from the start state, stride-sampled.

    t = 0 is always recorded and so is the final step.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    state = walk.initial.astype(np.clongdouble)
    rows = []
    for t in range(steps + 1):
        if t % stride == 0 or t == steps:
            snapshot = state.astype(np.complex128)
            rows.append((
                t,
                success_probability(walk.target, snapshot),
                float(np.linalg.norm(snapshot)),
            ))
        if t < steps:
            state = walk.matrix_ext @ state
    return rows


def eigenphases(walk: ReducedWalk) -> np.ndarray:
    """Sorted principal arguments of the step-matrix eigenvalues."""
    eig = np.linalg.eigvals(walk.matrix)
    return np.sort(np.angle(eig))


def find_peak(walk: ReducedWalk, t_max: int) -> tuple:
    """Argmax and max of the success probability over t in [0, t_max]."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    state = walk.initial.astype(np.clongdouble)
    t_opt, p_max = 0, success_probability(walk.target, state.astype(np.complex128))
    for t in range(1, t_max + 1):
        state = walk.matrix_ext @ state
        p = success_probability(walk.target, state.astype(np.complex128))
        if p > p_max:
            t_opt, p_max = t, p
    return t_opt, p_max
