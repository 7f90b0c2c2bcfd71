"""Dense brute-force oracles certifying every closed form on small instances.

Everything here trades memory for directness: the adjacency operator, the
walk step, and the invariant-subspace basis are materialized explicitly so
that the combinatorial and spectral formulas, the matrix-free engine, and
the reduced step matrix can each be checked against a computation that
shares none of their shortcuts.

The basis construction follows the lifting route: the marked vertex's
eigenspace projections are found from the (k+1)-dimensional symmetric
tridiagonal quotient of the adjacency action on distance shells, then
mapped into arc space by the symmetric lift

    (S x)[arc] = (x[tail] + x[head]) / sqrt(2)

and the antisymmetric lift with a minus sign.  These lifts satisfy
S^T S = degree*I + A and T^T T = degree*I - A, and combining them with the
walk eigenphases yields the orthonormal eigenbasis of the invariant
subspace that the reduced engine works in.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import arc_engine, reduced, spectral
from .errors import CapacityError, CertificationError
from .johnson import (GraphParams, distance_class, intersection_numbers,
                      opposite_permutation, shell_size)

__all__ = [
    "DENSE_VERTEX_CAPACITY",
    "DENSE_ARC_CAPACITY",
    "InvariantBasis",
    "CheckResult",
    "CertificationReport",
    "dense_adjacency",
    "dense_step",
    "dense_step_from_engine",
    "build_invariant_basis",
    "verify_spectral_closed_forms",
    "verify_dense_step",
    "verify_eigenbasis",
    "verify_subspace_invariance",
    "verify_target_and_initial",
    "verify_reduced_compression",
    "certify",
]

DENSE_VERTEX_CAPACITY = 5000
DENSE_ARC_CAPACITY = 20000


def _require_dense(params: GraphParams) -> None:
    if params.num_vertices > DENSE_VERTEX_CAPACITY or params.num_arcs > DENSE_ARC_CAPACITY:
        raise CapacityError(
            f"dense oracles refuse J({params.n},{params.k}): "
            f"{params.num_vertices} vertices / {params.num_arcs} arcs exceed "
            f"caps {DENSE_VERTEX_CAPACITY} / {DENSE_ARC_CAPACITY}")


def dense_adjacency(params: GraphParams) -> np.ndarray:
    """Explicit 0/1 adjacency matrix, int64, built arc by arc."""
    _require_dense(params)
    opp = opposite_permutation(params)
    tails = np.arange(params.num_arcs) // params.degree
    heads = opp // params.degree
    adj = np.zeros((params.num_vertices, params.num_vertices), dtype=np.int64)
    adj[tails, heads] = 1
    return adj


def dense_step(params: GraphParams,
               marked: Optional[int] = None,
               with_oracle: bool = False,
               opposite: Optional[np.ndarray] = None) -> np.ndarray:
    """Walk step as an explicit arc-space matrix, from the closed form.

    Column a carries 2/degree on every arc whose head equals tail(a),
    minus 1 on the reverse of a.  With the oracle the marked reflection is
    folded in as a rank-1 update on the right.
    """
    _require_dense(params)
    d = params.degree
    A = params.num_arcs
    opp = opposite_permutation(params) if opposite is None else opposite
    U = np.zeros((A, A), dtype=np.complex128)
    for a in range(A):
        U[opp[(a // d) * d:(a // d + 1) * d], a] = 2.0 / d
        U[opp[a], a] -= 1.0
    if not with_oracle:
        return U
    if marked is None:
        raise ValueError("with_oracle=True requires a marked vertex")
    target = np.zeros(A)
    target[marked * d:(marked + 1) * d] = 1.0 / np.sqrt(d)
    return U - 2.0 * np.outer(U @ target, target)


def dense_step_from_engine(params: GraphParams,
                           marked: Optional[int] = None,
                           with_oracle: bool = False) -> np.ndarray:
    """Same matrix assembled column-by-column from the matrix-free engine."""
    _require_dense(params)
    opp = opposite_permutation(params)
    A = params.num_arcs
    U = np.empty((A, A), dtype=np.complex128)
    for a in range(A):
        e = np.zeros(A, dtype=np.complex128)
        e[a] = 1.0
        U[:, a] = arc_engine.step(params, e, opp, marked, with_oracle=with_oracle)
    return U


def lift_symmetric(vertex_vec: np.ndarray, tails: np.ndarray,
                   heads: np.ndarray) -> np.ndarray:
    return (vertex_vec[tails] + vertex_vec[heads]) / np.sqrt(2.0)


def lift_antisymmetric(vertex_vec: np.ndarray, tails: np.ndarray,
                       heads: np.ndarray) -> np.ndarray:
    return (vertex_vec[tails] - vertex_vec[heads]) / np.sqrt(2.0)


@dataclass(frozen=True)
class InvariantBasis:
    """Explicit arc-space basis of the search's invariant subspace.

    ``basis`` columns are ordered (stationary, level-1 plus, level-1
    minus, ..., level-k plus, level-k minus).  The auxiliary shell and
    arc-class vectors used to build it are kept for certification.
    """

    params: GraphParams
    marked: int
    dist: np.ndarray                 # (N,) distance of each vertex to marked
    shell_indicators: list           # (N,) int64 indicator of each shell
    within: list                     # arcs staying in shell l
    outward: list                    # arcs from shell l to l+1
    inward: list                     # arcs from shell l to l-1
    proj_w: list                     # eigenspace projections of the marked state
    sym_lifts: list                  # symmetric lifts of proj_w
    antisym_lifts: list              # antisymmetric lifts of proj_w
    basis: np.ndarray                # (num_arcs, 2k+1) complex columns
    target_arc: np.ndarray           # uniform superposition of marked out-arcs
    opposite: np.ndarray = field(repr=False, default=None)


def build_invariant_basis(params: GraphParams, marked: int) -> InvariantBasis:
    """Construct the orthonormal eigenbasis explicitly in arc space."""
    _require_dense(params)
    n, k, d = params.n, params.k, params.degree
    N, A = params.num_vertices, params.num_arcs

    dist = np.array([distance_class(params, v, marked) for v in range(N)])
    shell_indicators = [(dist == l).astype(np.int64) for l in range(k + 1)]

    opp = opposite_permutation(params)
    tails = np.arange(A) // d
    heads = opp // d
    dist_t, dist_h = dist[tails], dist[heads]
    within = [((dist_t == l) & (dist_h == l)).astype(float) for l in range(k + 1)]
    outward = [((dist_t == l) & (dist_h == l + 1)).astype(float) for l in range(k + 1)]
    inward = [((dist_t == l) & (dist_h == l - 1)).astype(float) for l in range(k + 1)]

    # adjacency restricted to shell sums, in the unit-shell basis: symmetric
    # tridiagonal with diagonal a_l and off-diagonal sqrt(b_l * c_{l+1})
    rows = [intersection_numbers(params, l) for l in range(k + 1)]
    quot = np.zeros((k + 1, k + 1))
    for l in range(k + 1):
        quot[l, l] = rows[l].a
        if l < k:
            quot[l, l + 1] = quot[l + 1, l] = np.sqrt(rows[l].b * rows[l + 1].c)
    eigvals, eigvecs = np.linalg.eigh(quot)

    closed = [spectral.eigenvalue(params, l) for l in range(k + 1)]
    sizes = np.array([shell_size(params, l) for l in range(k + 1)], dtype=float)
    proj_w = []
    for l in range(k + 1):
        col = k - l  # eigh sorts ascending, closed-form values descend with l
        if abs(eigvals[col] - closed[l]) > 1e-9 * max(1.0, abs(closed[l])):
            raise CertificationError("tridiagonal quotient eigenvalues",
                                     abs(eigvals[col] - closed[l]), 1e-9)
        u = eigvecs[:, col]
        shell_coeff = u * u[0] / np.sqrt(sizes)
        vec = np.zeros(N)
        for m in range(k + 1):
            vec[dist == m] = shell_coeff[m]
        proj_w.append(vec)

    sym_lifts = [lift_symmetric(v, tails, heads) for v in proj_w]
    antisym_lifts = [lift_antisymmetric(v, tails, heads) for v in proj_w]

    basis = np.zeros((A, 2 * k + 1), dtype=np.complex128)
    p0 = np.linalg.norm(proj_w[0])
    basis[:, 0] = sym_lifts[0] / (np.sqrt(2.0 * d) * p0)
    for l in range(1, k + 1):
        lam = closed[l]
        omega = spectral.eigenphase(params, l)
        p_l = np.linalg.norm(proj_w[l])
        scale = np.sqrt(d) / (2.0 * np.sqrt(float(d * d - lam * lam)) * p_l)
        for sign, col in ((+1, 2 * l - 1), (-1, 2 * l)):
            phase = np.exp(-1j * sign * omega)
            basis[:, col] = (sign * 1j * scale) * (
                (phase - 1.0) * sym_lifts[l] + (phase + 1.0) * antisym_lifts[l])

    target_arc = outward[0].astype(np.complex128) / np.sqrt(d)

    return InvariantBasis(
        params=params, marked=marked, dist=dist,
        shell_indicators=shell_indicators,
        within=within, outward=outward, inward=inward,
        proj_w=proj_w, sym_lifts=sym_lifts, antisym_lifts=antisym_lifts,
        basis=basis, target_arc=target_arc, opposite=opp,
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class CertificationReport:
    params: GraphParams
    marked: int
    tol: float
    checks: list
    passed: bool


def _finish(residuals: dict, tol: float) -> dict:
    worst = max(residuals, key=residuals.get)
    if residuals[worst] > tol:
        err = CertificationError(worst, residuals[worst], tol)
        err.residuals = residuals
        raise err
    return residuals


def verify_spectral_closed_forms(params: GraphParams, marked: int = 0,
                                 tol: float = 1e-8) -> dict:
    """Dense adjacency eigendecomposition against every closed form.

    Checks eigenvalues, their multiplicities (exact after nearest-value
    assignment), the marked vertex's projector weights, and the exact
    integer three-term action of the adjacency matrix on shell sums.
    """
    adj = dense_adjacency(params)
    k = params.k
    closed = np.array([spectral.eigenvalue(params, l) for l in range(k + 1)], dtype=float)
    eigvals, eigvecs = np.linalg.eigh(adj.astype(float))

    assign = np.abs(eigvals[:, None] - closed[None, :]).argmin(axis=1)
    lambda_residual = np.abs(eigvals - closed[assign]).max()
    counts = np.bincount(assign, minlength=k + 1)
    expected = np.array([spectral.multiplicity(params, l) for l in range(k + 1)])
    multiplicity_residual = float(np.abs(counts - expected).max())

    weight_residual = 0.0
    row = eigvecs[marked, :]
    for l in range(k + 1):
        dense_weight = float(np.sum(row[assign == l] ** 2))
        weight_residual = max(weight_residual,
                              abs(dense_weight - spectral.projector_weight(params, l)))

    basis = build_invariant_basis(params, marked)
    action_residual = 0
    zero = np.zeros(params.num_vertices, dtype=np.int64)
    for l in range(k + 1):
        r = intersection_numbers(params, l)
        above = basis.shell_indicators[l + 1] if l < k else zero
        below = basis.shell_indicators[l - 1] if l > 0 else zero
        got = adj @ basis.shell_indicators[l]
        want = (intersection_numbers(params, l + 1).c if l < k else 0) * above \
            + r.a * basis.shell_indicators[l] \
            + (intersection_numbers(params, l - 1).b if l > 0 else 0) * below
        action_residual = max(action_residual, int(np.abs(got - want).max()))

    return _finish({
        "adjacency_eigenvalues": float(lambda_residual),
        "adjacency_multiplicities": multiplicity_residual,
        "projector_weights": weight_residual,
        "shell_action_identity": float(action_residual),
    }, tol)


def verify_dense_step(params: GraphParams, marked: int, tol: float = 1e-10) -> dict:
    """Closed-form step matrix versus the engine, plus unitarity."""
    opp = opposite_permutation(params)
    eye = np.eye(params.num_arcs)
    residuals = {}
    U = dense_step(params, opposite=opp)
    residuals["step_closed_form_vs_engine"] = float(np.abs(
        U - dense_step_from_engine(params)).max())
    residuals["step_unitarity"] = float(np.abs(U.conj().T @ U - eye).max())
    Um = dense_step(params, marked, with_oracle=True, opposite=opp)
    residuals["marked_step_closed_form_vs_engine"] = float(np.abs(
        Um - dense_step_from_engine(params, marked, with_oracle=True)).max())
    residuals["marked_step_unitarity"] = float(np.abs(Um.conj().T @ Um - eye).max())
    residuals["marked_step_det_modulus"] = abs(abs(np.linalg.det(Um)) - 1.0)
    return _finish(residuals, tol)


def verify_eigenbasis(params: GraphParams, marked: int, tol: float = 1e-10,
                      basis: Optional[InvariantBasis] = None) -> dict:
    """Orthonormality and eigenrelations of the explicit basis.

    Also certifies the lift norm identities |S x|^2 = (d+lambda)|x|^2,
    |T x|^2 = (d-lambda)|x|^2 on the eigenspace projections, and that the
    antisymmetric lift kills the stationary projection.
    """
    b = basis if basis is not None else build_invariant_basis(params, marked)
    k, d = params.k, params.degree
    B = b.basis
    residuals = {
        "basis_gram": float(np.abs(B.conj().T @ B - np.eye(2 * k + 1)).max()),
        "stationary_antisymmetric_lift": float(np.linalg.norm(b.antisym_lifts[0])),
    }

    eig_residual = 0.0
    stepped = np.empty_like(B)
    for col in range(2 * k + 1):
        stepped[:, col] = arc_engine.step(params, B[:, col], b.opposite,
                                          with_oracle=False)
    eig_residual = max(eig_residual,
                       float(np.linalg.norm(stepped[:, 0] - B[:, 0])))
    for l in range(1, k + 1):
        omega = spectral.eigenphase(params, l)
        for sign, col in ((+1, 2 * l - 1), (-1, 2 * l)):
            eig_residual = max(eig_residual, float(np.linalg.norm(
                stepped[:, col] - np.exp(sign * 1j * omega) * B[:, col])))
    residuals["walk_eigenrelation"] = eig_residual

    lift_residual = 0.0
    for l in range(k + 1):
        lam = spectral.eigenvalue(params, l)
        p_sq = float(np.dot(b.proj_w[l], b.proj_w[l]))
        lift_residual = max(
            lift_residual,
            abs(np.dot(b.sym_lifts[l], b.sym_lifts[l]) - (d + lam) * p_sq),
            abs(np.dot(b.antisym_lifts[l], b.antisym_lifts[l]) - (d - lam) * p_sq))
    residuals["lift_norm_identities"] = lift_residual
    return _finish(residuals, tol)


def verify_subspace_invariance(params: GraphParams, marked: int,
                               tol: float = 1e-10,
                               basis: Optional[InvariantBasis] = None,
                               dense_marked_step: Optional[np.ndarray] = None) -> dict:
    """The subspace is closed under the marked walk; oracle action is exact.

    The oracle identities hold bitwise: reflecting the all-ones marked
    block sends outward[0] to its negative and fixes inward[1].
    """
    b = basis if basis is not None else build_invariant_basis(params, marked)
    Um = dense_marked_step if dense_marked_step is not None else dense_step(
        params, marked, with_oracle=True, opposite=b.opposite)
    B = b.basis
    image = Um @ B
    residuals = {
        "subspace_invariance": float(np.abs(image - B @ (B.conj().T @ image)).max()),
    }

    b0 = b.outward[0].astype(np.complex128)
    c1 = b.inward[1].astype(np.complex128)
    oracle_b0 = arc_engine.apply_oracle(params, b0, marked)
    oracle_mix = arc_engine.apply_oracle(params, b0 - c1, marked)
    exact = float(max(np.abs(oracle_b0 + b0).max(),
                      np.abs(oracle_mix + b0 + c1).max()))
    residuals["oracle_action_identities"] = exact
    return _finish(residuals, tol)


def verify_target_and_initial(params: GraphParams, marked: int,
                              tol: float = 1e-10,
                              basis: Optional[InvariantBasis] = None) -> dict:
    """Target and start vectors have the predicted basis coordinates."""
    b = basis if basis is not None else build_invariant_basis(params, marked)
    B = b.basis
    coords_target = B.conj().T @ b.target_arc
    psi0 = arc_engine.uniform_state(params)
    coords_initial = B.conj().T @ psi0
    e0 = np.zeros(2 * params.k + 1)
    e0[0] = 1.0
    return _finish({
        "target_coordinates": float(np.abs(
            coords_target - reduced.target_coords(params)).max()),
        "initial_coordinates": float(np.abs(coords_initial - e0).max()),
        "target_initial_overlap": abs(
            np.vdot(b.target_arc, psi0) - 1.0 / np.sqrt(params.num_vertices)),
        "initial_in_subspace": float(np.linalg.norm(psi0 - B @ coords_initial)),
    }, tol)


def verify_reduced_compression(params: GraphParams, marked: int,
                               tol: float = 1e-10,
                               basis: Optional[InvariantBasis] = None,
                               dense_marked_step: Optional[np.ndarray] = None) -> dict:
    """The reduced step matrix equals the basis compression of the dense one."""
    b = basis if basis is not None else build_invariant_basis(params, marked)
    Um = dense_marked_step if dense_marked_step is not None else dense_step(
        params, marked, with_oracle=True, opposite=b.opposite)
    walk = reduced.build_reduced(params)
    compressed = b.basis.conj().T @ Um @ b.basis
    return _finish({
        "reduced_compression": float(np.abs(compressed - walk.matrix).max()),
    }, tol)


def certify(params: GraphParams, marked: int = 0, tol: float = 1e-10) -> CertificationReport:
    """Run the whole certification battery; never raises on check failure."""
    _require_dense(params)
    basis = build_invariant_basis(params, marked)
    dense_marked = dense_step(params, marked, with_oracle=True, opposite=basis.opposite)
    stages = [
        lambda: verify_spectral_closed_forms(params, marked, tol),
        lambda: verify_dense_step(params, marked, tol),
        lambda: verify_eigenbasis(params, marked, tol, basis),
        lambda: verify_subspace_invariance(params, marked, tol, basis, dense_marked),
        lambda: verify_target_and_initial(params, marked, tol, basis),
        lambda: verify_reduced_compression(params, marked, tol, basis, dense_marked),
    ]
    checks = []
    for stage in stages:
        try:
            residuals = stage()
        except CertificationError as err:
            residuals = getattr(err, "residuals", {err.check: err.residual})
        for name, value in residuals.items():
            checks.append(CheckResult(name=name, residual=float(value), tol=tol,
                                      passed=bool(value <= tol)))
    return CertificationReport(
        params=params, marked=marked, tol=tol, checks=checks,
        passed=all(c.passed for c in checks),
    )
