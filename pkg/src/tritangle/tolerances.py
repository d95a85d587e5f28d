"""Central numerical tolerances.

Every comparison threshold used by the library lives here so that tests and
callers agree on one set of numbers.  The module-level default instance can be
swapped out with :func:`set_default` for looser or stricter runs; functions
that take an optional ``tols`` argument fall back to the current default.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # state and density-matrix admission
    norm_atol: float = 1e-12          # |sum |a_i|^2 - 1| for pure states
    hermitian_atol: float = 1e-12     # max |rho - rho^dag| entrywise
    trace_atol: float = 1e-12         # |tr rho - 1|
    psd_floor: float = -1e-10         # smallest eigenvalue still accepted

    # spectral routines
    eigh_hermitian_atol: float = 1e-10   # hermiticity required of eigensolver input
    psd_clamp: float = 1e-10             # negatives in [-psd_clamp, 0) clamp to 0
    psd_hard_floor: float = -1e-8        # sqrt refuses eigenvalues below this
    sqrt_residual: float = 1e-9          # max |S@S - rho| guaranteed by sqrt_psd

    # measure values
    measure_clamp: float = 1e-12      # [-clamp, 0) -> 0 and (1, 1+clamp] -> 1

    # ensembles and roof search
    rank_cutoff: float = 1e-10        # eigenvalues below this do not count as rank
    mixing_orthonormal_atol: float = 1e-10
    weight_drop: float = 1e-12        # ensemble members below this weight are dropped
    weight_sum_atol: float = 1e-10
    reconstruction_atol: float = 1e-9


_default = Tolerances()


def get_default() -> Tolerances:
    return _default


def set_default(tols: Tolerances) -> None:
    global _default
    _default = tols
