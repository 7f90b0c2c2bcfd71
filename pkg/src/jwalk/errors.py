"""Exception types shared across the package.

The CLI maps these onto process exit codes: usage/domain problems exit 2,
certification failures exit 1, capacity refusals exit 3.
"""


class DegenerateInstanceError(ValueError):
    """Instance whose smallest adjacency eigenvalue equals -degree.

    On such graphs (only J(2,1) among the accepted parameter range) the
    walk eigenbasis construction breaks down, so the instance is refused.
    """


class CapacityError(RuntimeError):
    """State or matrix allocation would exceed the configured size cap."""


class CertificationError(RuntimeError):
    """A dense-oracle verification residual exceeded its tolerance."""

    def __init__(self, check: str, residual: float, tol: float):
        self.check = check
        self.residual = residual
        self.tol = tol
        super().__init__(f"certification check {check!r} failed: "
                         f"residual {residual:.3e} exceeds tolerance {tol:.3e}")
