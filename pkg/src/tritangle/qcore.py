"""Dense linear algebra for systems of one to four qubits.

Convention used throughout: qubit 1 is the most significant bit of the
computational basis index, so for three qubits the basis vector |q1 q2 q3>
sits at index 4*q1 + 2*q2 + q3.  All matrices are plain numpy arrays in
row-major order; :data:`ComplexMatrix` is an alias for ``numpy.ndarray``
with complex128 entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .tolerances import Tolerances, get_default

ComplexMatrix = np.ndarray

_MAX_QUBITS = 4
_EIG_MAX_DIM = 16


class DensityValidationError(ValueError):
    """Raised when a matrix fails one of the density-matrix invariants.

    Attributes
    ----------
    invariant : str
        Name of the violated invariant ("shape", "hermiticity", "trace"
        or "positivity").
    magnitude : float
        Size of the violation.
    """

    def __init__(self, invariant: str, magnitude: float, message: str):
        super().__init__(message)
        self.invariant = invariant
        self.magnitude = magnitude


def _num_qubits_for_dim(dim: int) -> int:
    n = int(round(np.log2(dim))) if dim > 0 else 0
    if dim <= 0 or 2**n != dim or not (1 <= n <= _MAX_QUBITS):
        raise ValueError(f"dimension {dim} is not 2**n for n in 1..{_MAX_QUBITS}")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not (1 <= self.num_qubits <= _MAX_QUBITS):
            raise ValueError(f"num_qubits must be in 1..{_MAX_QUBITS}, got {self.num_qubits}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        if amps.size != 2**self.num_qubits:
            raise ValueError(f"expected {2**self.num_qubits} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm_err = abs(float(np.sum(np.abs(amps) ** 2)) - 1.0)
        tol = get_default().norm_atol
        if norm_err > tol:
            raise ValueError(f"state not normalized: |sum - 1| = {norm_err:.3e} > {tol:g}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(_num_qubits_for_dim(amps.size), amps)

    def density(self) -> "DensityMatrix":
        m = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(self.num_qubits, m)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density operator: Hermitian, unit trace, positive semidefinite."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex).copy()
        _check_density(m, self.num_qubits, get_default())
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits


@dataclass(frozen=True)
class DensityReport:
    """Measured invariant violations for a candidate density matrix."""

    shape_ok: bool
    hermiticity_error: float
    trace_error: float
    min_eigenvalue: float
    hermitian_ok: bool
    trace_ok: bool
    positive_ok: bool

    @property
    def ok(self) -> bool:
        return self.shape_ok and self.hermitian_ok and self.trace_ok and self.positive_ok


def density_report(matrix, tols: Tolerances | None = None) -> DensityReport:
    """Check the density-matrix invariants without raising."""
    tols = tols or get_default()
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return DensityReport(False, np.inf, np.inf, -np.inf, False, False, False)
    try:
        _num_qubits_for_dim(m.shape[0])
    except ValueError:
        return DensityReport(False, np.inf, np.inf, -np.inf, False, False, False)
    herm = float(np.abs(m - m.conj().T).max())
    trace = abs(float(np.real(np.trace(m))) - 1.0) + abs(float(np.imag(np.trace(m))))
    sym = 0.5 * (m + m.conj().T)
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return DensityReport(
        shape_ok=True,
        hermiticity_error=herm,
        trace_error=trace,
        min_eigenvalue=min_eig,
        hermitian_ok=herm <= tols.hermitian_atol,
        trace_ok=trace <= tols.trace_atol,
        positive_ok=min_eig >= tols.psd_floor,
    )


def _check_density(m: np.ndarray, num_qubits: int, tols: Tolerances) -> None:
    if m.ndim != 2 or m.shape != (2**num_qubits, 2**num_qubits):
        raise DensityValidationError(
            "shape", np.inf, f"expected {2**num_qubits}x{2**num_qubits} matrix, got {m.shape}"
        )
    if not np.all(np.isfinite(m.view(float))):
        raise DensityValidationError("shape", np.inf, "matrix entries must be finite")
    herm = float(np.abs(m - m.conj().T).max())
    if herm > tols.hermitian_atol:
        raise DensityValidationError(
            "hermiticity", herm, f"not Hermitian: max |m - m^dag| = {herm:.3e}"
        )
    tr_err = abs(complex(np.trace(m)) - 1.0)
    if tr_err > tols.trace_atol:
        raise DensityValidationError("trace", tr_err, f"trace differs from 1 by {tr_err:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
    if min_eig < tols.psd_floor:
        raise DensityValidationError(
            "positivity", min_eig, f"smallest eigenvalue {min_eig:.3e} below {tols.psd_floor:g}"
        )


def validate_density(matrix, tols: Tolerances | None = None) -> DensityMatrix:
    """Build a :class:`DensityMatrix` from a raw array.

    Passing ``tols`` validates against those tolerances instead of the
    module defaults (the only way to accept, say, a slightly negative
    eigenvalue from an upstream numerical step).

    Raises
    ------
    DensityValidationError
        Naming the violated invariant and the size of the violation.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DensityValidationError(
            "shape", np.inf, f"expected a square matrix, got shape {m.shape}"
        )
    try:
        n = _num_qubits_for_dim(m.shape[0])
    except ValueError as exc:
        raise DensityValidationError("shape", np.inf, str(exc)) from None
    if tols is None:
        return DensityMatrix(n, m)
    # DensityMatrix always re-checks against the module default, so swap it
    # in for the duration of construction.
    from . import tolerances as _tolmod

    previous = _tolmod.get_default()
    _tolmod.set_default(tols)
    try:
        return DensityMatrix(n, m)
    finally:
        _tolmod.set_default(previous)


def kron(a, b) -> ComplexMatrix:
    """Kronecker product, earlier factors more significant."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: Union[DensityMatrix, np.ndarray], traced_qubits: Iterable[int]) -> DensityMatrix:
    """Trace out a subset of qubits.

    Parameters
    ----------
    rho : DensityMatrix or array
        State of n qubits.
    traced_qubits : iterable of int
        1-based labels of the qubits to remove (qubit 1 is the most
        significant bit).  Surviving qubits keep their relative order.

    Returns
    -------
    DensityMatrix
        Reduced state on the remaining qubits.
    """
    if isinstance(rho, DensityMatrix):
        n, m = rho.num_qubits, rho.matrix
    else:
        m = np.asarray(rho, dtype=complex)
        n = _num_qubits_for_dim(m.shape[0])
    traced = sorted(set(int(q) for q in traced_qubits))
    if not traced:
        raise ValueError("traced_qubits must not be empty")
    if any(q < 1 or q > n for q in traced):
        raise ValueError(f"traced_qubits must be within 1..{n}, got {traced}")
    if len(traced) == n:
        raise ValueError("cannot trace out every qubit")

    keep = [q for q in range(1, n + 1) if q not in traced]
    t = m.reshape([2] * (2 * n))
    row = [chr(ord("a") + i) for i in range(n)]
    col = [chr(ord("a") + n + i) for i in range(n)]
    for q in traced:
        col[q - 1] = row[q - 1]
    out_sub = "".join(row[q - 1] for q in keep) + "".join(col[q - 1] for q in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out_sub, t)
    k = len(keep)
    return DensityMatrix(k, reduced.reshape(2**k, 2**k))


def _require_hermitian(h, tols: Tolerances) -> np.ndarray:
    m = np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > _EIG_MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds supported maximum {_EIG_MAX_DIM}")
    herm = float(np.abs(m - m.conj().T).max())
    if herm > tols.eigh_hermitian_atol:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dag| = {herm:.3e}")
    return 0.5 * (m + m.conj().T)


def hermitian_eigenvalues(h, tols: Tolerances | None = None) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    m = _require_hermitian(h, tols or get_default())
    return np.linalg.eigvalsh(m)[::-1].copy()


def hermitian_eigensystem(h, tols: Tolerances | None = None):
    """Eigenvalues (descending) and matching eigenvector columns."""
    m = _require_hermitian(h, tols or get_default())
    vals, vecs = np.linalg.eigh(m)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def sqrt_psd(rho: Union[DensityMatrix, np.ndarray], tols: Tolerances | None = None) -> ComplexMatrix:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-psd_clamp, 0) are clamped to zero; anything below the
    hard floor raises ValueError.
    """
    tols = tols or get_default()
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    vals, vecs = hermitian_eigensystem(m, tols)
    if float(vals[-1]) < tols.psd_hard_floor:
        raise ValueError(f"matrix is not positive semidefinite: eigenvalue {vals[-1]:.3e}")
    clamped = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(clamped)) @ vecs.conj().T


def ghz_state() -> PureState:
    """(|000> + |111>)/sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1.0 / np.sqrt(2.0)
    return PureState(3, amps)


def w_state() -> PureState:
    """(|100> + |010> + sqrt(2)|001>)/2."""
    amps = np.zeros(8, dtype=complex)
    amps[4] = 0.5
    amps[2] = 0.5
    amps[1] = 1.0 / np.sqrt(2.0)
    return PureState(3, amps)


def random_pure_state(num_qubits: int, rng: np.random.Generator) -> PureState:
    """Haar-random state vector."""
    dim = 2**num_qubits
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(num_qubits, v / np.linalg.norm(v))


def random_density_matrix(num_qubits: int, rank: int, rng: np.random.Generator) -> DensityMatrix:
    """Random mixed state of the given rank (Ginibre construction)."""
    dim = 2**num_qubits
    if not (1 <= rank <= dim):
        raise ValueError(f"rank must be in 1..{dim}, got {rank}")
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(num_qubits, m / np.real(np.trace(m)))


# --- state files ------------------------------------------------------------
#
# Pure states:    {"num_qubits": n, "amplitudes": [[re, im], ...]}
# Mixed states:   {"num_qubits": n, "matrix": [[[re, im], ...], ...]}  (row-major)


def save_state_file(path, state: Union[PureState, DensityMatrix]) -> None:
    if isinstance(state, PureState):
        payload = {
            "num_qubits": state.num_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
        }
    elif isinstance(state, DensityMatrix):
        payload = {
            "num_qubits": state.num_qubits,
            "matrix": [
                [[float(v.real), float(v.imag)] for v in row] for row in state.matrix
            ],
        }
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_state_file(path) -> Union[PureState, DensityMatrix]:
    """Read a pure or mixed state from its JSON file form."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict) or "num_qubits" not in payload:
        raise ValueError("state file must be an object with a num_qubits field")
    n = payload["num_qubits"]
    if not isinstance(n, int):
        raise ValueError("num_qubits must be an integer")
    if "amplitudes" in payload:
        pairs = payload["amplitudes"]
        amps = np.array([complex(re, im) for re, im in pairs])
        return PureState(n, amps)
    if "matrix" in payload:
        rows = payload["matrix"]
        m = np.array([[complex(re, im) for re, im in row] for row in rows])
        if m.shape != (2**n, 2**n):
            raise ValueError(f"matrix shape {m.shape} does not match num_qubits={n}")
        return DensityMatrix(n, m)
    raise ValueError("state file needs either an amplitudes or a matrix field")
