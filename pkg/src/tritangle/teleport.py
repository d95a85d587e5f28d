"""Single-qubit teleportation through a three-qubit GHZ/W mixture channel.

The sender holds the input qubit and channel qubits 1-2, the receiver
channel qubit 3.  Each protocol is folded into one 16x16 circuit unitary
acting on (input, channel) with the input qubit as the most significant
wire and the receiver as qubit 4; measurement corrections are already
absorbed, so the output state is simply the receiver's reduction of
U (rho_in x rho_channel) U^dag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .entanglement import GhzwMixtureParams, channel_mixture_state
from .qcore import DensityMatrix, PureState, kron, partial_trace
from .tolerances import get_default

_RT2 = math.sqrt(2.0)


class SchemeKind(Enum):
    GHZ = "ghz"
    W = "w"


# Nonzero entries as (row, col, coefficient) in units of the prefactor,
# rows and columns 1-based.
_GHZ_PREFACTOR = 1.0 / _RT2
_GHZ_ENTRIES = [
    (1, 1, 1), (1, 15, 1),
    (2, 2, 1), (2, 16, 1),
    (3, 4, 1), (3, 14, 1),
    (4, 3, 1), (4, 13, 1),
    (5, 5, 1), (5, 11, 1),
    (6, 6, 1), (6, 12, 1),
    (7, 8, 1), (7, 10, 1),
    (8, 7, 1), (8, 9, 1),
    (9, 1, 1), (9, 15, -1),
    (10, 2, -1), (10, 16, 1),
    (11, 4, 1), (11, 14, -1),
    (12, 3, -1), (12, 13, 1),
    (13, 5, 1), (13, 11, -1),
    (14, 6, -1), (14, 12, 1),
    (15, 8, 1), (15, 10, -1),
    (16, 7, -1), (16, 9, 1),
]

_W_PREFACTOR = 0.5
_W_ENTRIES = [
    (1, 3, 1), (1, 5, 1), (1, 9, _RT2),
    (2, 4, 1), (2, 6, 1), (2, 10, _RT2),
    (3, 8, 2),
    (4, 7, 2),
    (5, 15, 2),
    (6, 16, 2),
    (7, 2, _RT2), (7, 12, 1), (7, 14, 1),
    (8, 1, _RT2), (8, 11, 1), (8, 13, 1),
    (9, 3, 1), (9, 5, 1), (9, 9, -_RT2),
    (10, 4, -1), (10, 6, -1), (10, 10, _RT2),
    (11, 4, _RT2), (11, 6, -_RT2),
    (12, 3, -_RT2), (12, 5, _RT2),
    (13, 11, _RT2), (13, 13, -_RT2),
    (14, 12, -_RT2), (14, 14, _RT2),
    (15, 2, _RT2), (15, 12, -1), (15, 14, -1),
    (16, 1, -_RT2), (16, 11, 1), (16, 13, 1),
]


def _build(entries, prefactor) -> np.ndarray:
    u = np.zeros((16, 16), dtype=complex)
    for row, col, coeff in entries:
        u[row - 1, col - 1] = prefactor * coeff
    u.flags.writeable = False
    return u


_UNITARIES = {
    SchemeKind.GHZ: _build(_GHZ_ENTRIES, _GHZ_PREFACTOR),
    SchemeKind.W: _build(_W_ENTRIES, _W_PREFACTOR),
}


@dataclass(frozen=True)
class TeleportScheme:
    kind: SchemeKind
    unitary: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex)
        dev = float(np.abs(u @ u.conj().T - np.eye(16)).max())
        if dev > 1e-12:
            raise ValueError(f"circuit matrix is not unitary: deviation {dev:.3e}")
        object.__setattr__(self, "unitary", u)


@dataclass(frozen=True)
class TeleportReport:
    p: float
    theta: float
    phi: float
    rho_out: DensityMatrix
    fidelity: float

    def __post_init__(self):
        if not (-1e-12 <= self.fidelity <= 1.0 + 1e-12):
            raise ValueError(f"fidelity {self.fidelity!r} outside [0, 1]")


def _coerce_kind(kind) -> SchemeKind:
    if isinstance(kind, SchemeKind):
        return kind
    return SchemeKind(str(kind).lower())


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"mixing weight p must lie in [0, 1], got {p!r}")
    return p


def channel_state(p: float) -> DensityMatrix:
    """Channel density p |GHZ><GHZ| + (1-p) |W><W|, rank at most two."""
    return channel_mixture_state(_check_p(p))


def input_state(theta: float, phi: float) -> PureState:
    """cos(theta/2) e^{i phi/2} |0> + sin(theta/2) e^{-i phi/2} |1>."""
    half = 0.5 * float(theta)
    amps = np.array(
        [
            math.cos(half) * np.exp(0.5j * phi),
            math.sin(half) * np.exp(-0.5j * phi),
        ]
    )
    return PureState(1, amps)


def scheme_unitary(kind) -> TeleportScheme:
    """The verbatim 16x16 circuit operator for either channel type."""
    k = _coerce_kind(kind)
    return TeleportScheme(k, _UNITARIES[k])


def teleport_output(scheme: TeleportScheme, theta: float, phi: float, p: float) -> TeleportReport:
    """Receiver's state and fidelity after the protocol at mixing weight p."""
    p = _check_p(p)
    psi = input_state(theta, phi)
    joint = kron(psi.density().matrix, channel_state(p).matrix)
    evolved = scheme.unitary @ joint @ scheme.unitary.conj().T
    rho_out = partial_trace(evolved, [1, 2, 3])
    amps = psi.amplitudes
    fid = float(np.real(np.vdot(amps, rho_out.matrix @ amps)))
    return TeleportReport(p, float(theta), float(phi), rho_out, fid)


def fidelity_ghz_closed(theta: float, p: float) -> float:
    """((3 + 5p) - (1 - p) cos 2 theta)/8."""
    p = _check_p(p)
    return ((3.0 + 5.0 * p) - (1.0 - p) * math.cos(2.0 * theta)) / 8.0


def fidelity_w_closed(p: float) -> float:
    """1 - p/2, independent of the input angles."""
    return 1.0 - _check_p(p) / 2.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts for the Bloch-sphere average (Gauss-Legendre x uniform)."""

    cos_theta_nodes: int = 32
    phi_nodes: int = 16

    def __post_init__(self):
        if self.cos_theta_nodes < 8 or self.phi_nodes < 8:
            raise ValueError("quadrature needs at least 8 nodes per direction")


def avg_fidelity(scheme: TeleportScheme, p: float, cfg: QuadratureConfig | None = None) -> float:
    """(1/4pi) integral of the fidelity over all input directions."""
    cfg = cfg or QuadratureConfig()
    p = _check_p(p)
    nodes, weights = np.polynomial.legendre.leggauss(cfg.cos_theta_nodes)
    phis = 2.0 * math.pi * np.arange(cfg.phi_nodes) / cfg.phi_nodes
    total = 0.0
    for u, wu in zip(nodes, weights):
        theta = math.acos(float(u))
        for phi in phis:
            total += wu * teleport_output(scheme, theta, float(phi), p).fidelity
    return total / (2.0 * cfg.phi_nodes)


def avg_fidelity_closed(kind, p: float) -> float:
    """GHZ channel: (5 + 7p)/12.  W channel: 1 - p/2."""
    p = _check_p(p)
    if _coerce_kind(kind) is SchemeKind.GHZ:
        return (5.0 + 7.0 * p) / 12.0
    return 1.0 - p / 2.0


@dataclass(frozen=True)
class CriticalValues:
    f_ghz: float
    f_w: float
    p_star: float
    p0: float
    p1: float


def critical_values() -> CriticalValues:
    """Average-fidelity thresholds of the two schemes and where they sit.

    f_ghz is the GHZ-channel average fidelity at the weight p0 where the
    mixture's tangle appears; f_w the W-channel value at weight 1/3 where
    the pairwise concurrences die; p_star the crossing of the two average
    fidelities.  The crossing is re-derived by root finding as a guard
    against transcription slips in the closed forms.
    """
    params = GhzwMixtureParams.standard()
    f_ghz = avg_fidelity_closed(SchemeKind.GHZ, params.p0)
    f_w = avg_fidelity_closed(SchemeKind.W, 1.0 / 3.0)
    p_star = 7.0 / 13.0

    def gap(p):
        return avg_fidelity_closed(SchemeKind.W, p) - avg_fidelity_closed(SchemeKind.GHZ, p)

    root = brentq(gap, 0.0, 1.0, xtol=1e-14)
    if abs(root - p_star) > get_default().weight_sum_atol:
        raise RuntimeError(f"fidelity crossing {root!r} disagrees with 7/13")
    return CriticalValues(f_ghz, f_w, p_star, params.p0, params.p1)
