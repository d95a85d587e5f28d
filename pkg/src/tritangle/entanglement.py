"""Closed-form entanglement measures for two and three qubits.

Covers pure and mixed two-qubit concurrence, entanglement of formation,
the Grover-search based measure, the three-party tangle of pure states,
and the piecewise tangle of rank-2 mixtures of a GHZ-type with a W-type
state, together with the reduced concurrences of the standard mixture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qcore import (
    DensityMatrix,
    PureState,
    hermitian_eigensystem,
    kron,
    partial_trace,
    validate_density,
)
from .tolerances import get_default

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP_4 = kron(_SIGMA_Y, _SIGMA_Y)


class MeasureKind(Enum):
    CONCURRENCE = "concurrence"
    EOF = "eof"
    GROVERIAN = "groverian"
    THREE_TANGLE = "three_tangle"
    CUT_CONCURRENCE = "cut_concurrence"


@dataclass(frozen=True)
class MeasureValue:
    """A measure outcome, clamped to [0, 1].

    Values in [-measure_clamp, 0) are clamped to 0 and values in
    (1, 1 + measure_clamp] to 1; anything further outside raises.
    """

    value: float
    kind: MeasureKind

    def __post_init__(self):
        v = float(self.value)
        tol = get_default().measure_clamp
        if -tol <= v < 0.0:
            v = 0.0
        elif 1.0 < v <= 1.0 + tol:
            v = 1.0
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"{self.kind.value} value {v!r} outside [0, 1]")
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


def _as_float(c) -> float:
    return float(c.value) if isinstance(c, MeasureValue) else float(c)


def concurrence_pure2(psi: PureState) -> MeasureValue:
    """Concurrence of a two-qubit pure state: 2|a00*a11 - a01*a10|."""
    if psi.num_qubits != 2:
        raise ValueError(f"expected a 2-qubit state, got {psi.num_qubits} qubits")
    a = psi.amplitudes
    return MeasureValue(2.0 * abs(a[0] * a[3] - a[1] * a[2]), MeasureKind.CONCURRENCE)


def concurrence_wootters(rho) -> MeasureValue:
    """Concurrence of a two-qubit mixed state.

    The spin-flip spectrum l_1 >= ... >= l_4 (the square roots of the
    eigenvalues of rho (sy x sy) conj(rho) (sy x sy)) is obtained as the
    singular values of F^T (sy x sy) F, where F is the eigenvector matrix
    of rho scaled column-wise by the root eigenvalues (rho = F F^dag).
    The two routes agree exactly, but the singular values of the small
    matrix carry no sqrt-of-roundoff noise, so rank-deficient inputs
    (pure states, two-state mixtures) come out accurate to ~1e-13 where
    the eigenvalue route loses ~1e-8.  Returns max(0, l1 - l2 - l3 - l4).
    """
    if not isinstance(rho, DensityMatrix):
        rho = validate_density(rho)
    if rho.num_qubits != 2:
        raise ValueError(f"expected a 2-qubit density matrix, got {rho.num_qubits} qubits")
    vals, vecs = hermitian_eigensystem(rho.matrix)
    factor = vecs * np.sqrt(np.clip(vals, 0.0, None))
    lam = np.linalg.svd(factor.T @ _SPIN_FLIP_4 @ factor, compute_uv=False)
    return MeasureValue(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]), MeasureKind.CONCURRENCE)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _validated_concurrence(c) -> float:
    cv = _as_float(c)
    if not (-1e-12 <= cv <= 1.0 + 1e-12):
        raise ValueError(f"concurrence {cv!r} outside [0, 1]")
    return min(1.0, max(0.0, cv))


def eof_from_concurrence(c) -> MeasureValue:
    """Entanglement of formation h((1 + sqrt(1 - c^2))/2), h the binary entropy."""
    cv = _validated_concurrence(c)
    x = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - cv * cv)))
    return MeasureValue(_binary_entropy(x), MeasureKind.EOF)


def groverian_from_concurrence(c) -> MeasureValue:
    """Grover-search based measure sqrt((1 - sqrt(1 - c^2))/2)."""
    cv = _validated_concurrence(c)
    inner = 1.0 - math.sqrt(max(0.0, 1.0 - cv * cv))
    return MeasureValue(math.sqrt(max(0.0, inner) / 2.0), MeasureKind.GROVERIAN)


def _tangle_raw(w: np.ndarray) -> np.ndarray:
    # Hyperdeterminant combination on raw (not necessarily normalized) rows.
    # Homogeneous of degree 4 in the amplitudes.
    a000, a001, a010, a011, a100, a101, a110, a111 = (w[:, k] for k in range(8))
    d1 = (
        a000**2 * a111**2
        + a001**2 * a110**2
        + a010**2 * a101**2
        + a100**2 * a011**2
    )
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return 4.0 * np.abs(d1 - 2.0 * d2 + 4.0 * d3)


def three_tangle_pure(psi: PureState) -> MeasureValue:
    """Three-party tangle of a pure three-qubit state.

    4|d1 - 2 d2 + 4 d3| where d1 sums the squared products of amplitudes
    on complementary index pairs, d2 the six cross products of those
    pairs, and d3 the two "diagonal-free" quartic products.  Zero on
    product and W-type states, one on the balanced GHZ state.
    """
    if psi.num_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {psi.num_qubits} qubits")
    raw = float(_tangle_raw(psi.amplitudes[np.newaxis, :])[0])
    return MeasureValue(raw, MeasureKind.THREE_TANGLE)


class Cut(Enum):
    """Bipartitions of three qubits: the label right of | is the lone qubit."""

    AB_C = "AB|C"
    AC_B = "AC|B"
    BC_A = "BC|A"

    @property
    def lone_qubit(self) -> int:
        return {"AB|C": 3, "AC|B": 2, "BC|A": 1}[self.value]


def cut_concurrence_pure(psi: PureState, cut: Cut) -> MeasureValue:
    """Concurrence across a 2-vs-1 cut: 2 sqrt(det rho_lone)."""
    if psi.num_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {psi.num_qubits} qubits")
    lone = cut.lone_qubit
    traced = [q for q in (1, 2, 3) if q != lone]
    r = partial_trace(psi.density(), traced).matrix
    det = float(np.real(r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]))
    return MeasureValue(2.0 * math.sqrt(max(0.0, det)), MeasureKind.CUT_CONCURRENCE)


def monogamy_residual(psi: PureState) -> float:
    """Gap of the pairwise-distribution inequality for the AB|C cut.

    Returns C^2_(AB)C - C^2_AC - C^2_BC with the pairwise terms from the
    mixed-state concurrence of the two-qubit reductions.  Equals the
    tangle for pure states up to numerical noise; may dip a hair below
    zero from eigenvalue roundoff.
    """
    if psi.num_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {psi.num_qubits} qubits")
    rho = psi.density()
    c_cut = float(cut_concurrence_pure(psi, Cut.AB_C))
    c_ac = float(concurrence_wootters(partial_trace(rho, [2])))
    c_bc = float(concurrence_wootters(partial_trace(rho, [1])))
    return c_cut * c_cut - c_ac * c_ac - c_bc * c_bc


# --- GHZ/W mixtures ---------------------------------------------------------


@dataclass(frozen=True)
class GhzwMixtureParams:
    """Amplitudes of the two rank-2 mixture components, plus derived scales.

    The GHZ-type component is a|000> + b|111> and the W-type component
    c|001> + d|010> + f|100>.  Derived: s = 4cdf/(a^2 b), the GHZ-member
    tangle tau3_ghz = 4 a^2 b^2, the zero-tangle boundary p0, the
    convexification point p1, and the tangle value t1 at p1.
    """

    a: float
    b: float
    c: float
    d: float
    f: float
    s: float
    tau3_ghz: float
    p0: float
    p1: float
    t1: float

    @classmethod
    def standard(cls) -> "GhzwMixtureParams":
        """Balanced GHZ with the (1/sqrt2, 1/2, 1/2) W component; s = 2 exactly."""
        rt2 = 1.0 / math.sqrt(2.0)
        s = 2.0
        tau3_ghz = 1.0
        s23 = float(np.cbrt(s * s))
        p0 = s23 / (1.0 + s23)
        p1 = 0.5 + 0.5 / math.sqrt(1.0 + s * s)
        t1 = tau3_ghz * abs(p1 * p1 - math.sqrt(p1 * (1.0 - p1) ** 3) * s)
        return cls(rt2, rt2, rt2, 0.5, 0.5, s, tau3_ghz, p0, p1, t1)


def ghzw_params(a: float, b: float, c: float, d: float, f: float) -> GhzwMixtureParams:
    """Build mixture parameters from the five component amplitudes.

    Requires a^2 + b^2 = 1 and c^2 + d^2 + f^2 = 1; raises if a^2 b
    vanishes (the scale s is undefined there).
    """
    tol = get_default().norm_atol
    if abs(a * a + b * b - 1.0) > tol:
        raise ValueError(f"a^2 + b^2 = {a * a + b * b!r}, expected 1")
    if abs(c * c + d * d + f * f - 1.0) > tol:
        raise ValueError(f"c^2 + d^2 + f^2 = {c * c + d * d + f * f!r}, expected 1")
    denom = a * a * b
    if abs(denom) <= 1e-12:
        raise ValueError("a^2 * b = 0: the scale s = 4cdf/(a^2 b) is undefined")
    s = 4.0 * c * d * f / denom
    tau3_ghz = 4.0 * (a * b) ** 2
    s23 = float(np.cbrt(s) ** 2)
    p0 = s23 / (1.0 + s23)
    p1 = max(p0, 0.5 + 0.5 / math.sqrt(1.0 + s * s))
    t1 = tau3_ghz * abs(p1 * p1 - math.sqrt(p1 * (1.0 - p1) ** 3) * s)
    return GhzwMixtureParams(a, b, c, d, f, s, tau3_ghz, p0, p1, t1)


def _check_unit_interval(p: float, name: str = "p") -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


def ghzw_superposition(p: float, phi: float = 0.0, params: GhzwMixtureParams | None = None) -> PureState:
    """sqrt(p)|GHZ-type> - sqrt(1-p) e^{i phi}|W-type> for the given amplitudes."""
    p = _check_unit_interval(p)
    g = params or GhzwMixtureParams.standard()
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.sqrt(p) * g.a
    amps[7] = math.sqrt(p) * g.b
    wfac = -math.sqrt(1.0 - p) * np.exp(1j * phi)
    amps[1] = wfac * g.c
    amps[2] = wfac * g.d
    amps[4] = wfac * g.f
    return PureState(3, amps)


def ghzw_pure_tangle(p: float, phi: float = 0.0, params: GhzwMixtureParams | None = None) -> float:
    """Tangle of the superposition in closed form.

    tau3_ghz * |p^2 - sqrt(p (1-p)^3) s e^{3 i phi}|; the relative phase
    enters only through its third harmonic, so the zero set consists of
    the W-type axis and three lines at phi = 2 pi n / 3.
    """
    p = _check_unit_interval(p)
    g = params or GhzwMixtureParams.standard()
    z = p * p - math.sqrt(p * (1.0 - p) ** 3) * g.s * np.exp(3j * phi)
    return g.tau3_ghz * abs(z)


def three_tangle_ghzw(p: float, params: GhzwMixtureParams | None = None) -> MeasureValue:
    """Tangle of the weighted mixture p (GHZ-type) + (1-p) (W-type).

    Piecewise in the mixing weight: identically zero up to p0, the
    superposition value tau3_ghz |p^2 - sqrt(p (1-p)^3) s| between p0
    and p1, then the straight segment joining (p1, t1) to (1, tau3_ghz).
    Continuous at both break points.
    """
    p = _check_unit_interval(p)
    g = params or GhzwMixtureParams.standard()
    if p <= g.p0:
        return MeasureValue(0.0, MeasureKind.THREE_TANGLE)
    if p <= g.p1:
        val = g.tau3_ghz * abs(p * p - math.sqrt(p * (1.0 - p) ** 3) * g.s)
        return MeasureValue(val, MeasureKind.THREE_TANGLE)
    mid = g.p1 * g.p1 - math.sqrt(g.p1 * (1.0 - g.p1) ** 3) * g.s
    val = g.tau3_ghz * ((p - g.p1) / (1.0 - g.p1) + (1.0 - p) / (1.0 - g.p1) * mid)
    return MeasureValue(val, MeasureKind.THREE_TANGLE)


def reduced_concurrences_qc(p: float) -> tuple[MeasureValue, MeasureValue, MeasureValue]:
    """Pairwise concurrences of the standard mixture's two-qubit reductions.

    C_AB = max(0, (1 - p - 2 sqrt(p))/2), positive only below 3 - 2 sqrt(2);
    C_AC = C_BC = max(0, ((1 - p) - sqrt(p (1 + p)))/sqrt(2)), positive only
    below 1/3.  Returned in (AB, AC, BC) order.
    """
    p = _check_unit_interval(p)
    c_ab = max(0.0, 0.5 * (1.0 - p - 2.0 * math.sqrt(p)))
    c_pair = max(0.0, (1.0 - p - math.sqrt(p * (1.0 + p))) / math.sqrt(2.0))
    return (
        MeasureValue(c_ab, MeasureKind.CONCURRENCE),
        MeasureValue(c_pair, MeasureKind.CONCURRENCE),
        MeasureValue(c_pair, MeasureKind.CONCURRENCE),
    )


def c_abc_mixture(p: float) -> MeasureValue:
    """Cut concurrence of the standard mixture across AB|C.

    sqrt(C^2_AC + C^2_BC + tau3(p)).  Equals 1 at both endpoints and
    vanishes identically on [1/3, p0] where every contribution is zero.
    """
    p = _check_unit_interval(p)
    _, c_ac, c_bc = reduced_concurrences_qc(p)
    tau = float(three_tangle_ghzw(p))
    total = float(c_ac) ** 2 + float(c_bc) ** 2 + tau
    return MeasureValue(math.sqrt(total), MeasureKind.CUT_CONCURRENCE)


def channel_mixture_state(p: float, params: GhzwMixtureParams | None = None) -> DensityMatrix:
    """Rank-2 mixture p |GHZ-type><GHZ-type| + (1-p) |W-type><W-type|."""
    p = _check_unit_interval(p)
    g = params or GhzwMixtureParams.standard()
    ghz_vec = np.zeros(8, dtype=complex)
    ghz_vec[0], ghz_vec[7] = g.a, g.b
    w_vec = np.zeros(8, dtype=complex)
    w_vec[1], w_vec[2], w_vec[4] = g.c, g.d, g.f
    m = p * np.outer(ghz_vec, ghz_vec.conj()) + (1.0 - p) * np.outer(w_vec, w_vec.conj())
    return DensityMatrix(3, m)


# Fast per-member evaluators for the decomposition optimizer.  Both exploit
# homogeneity: on a subnormalized vector with weight = |w|^2, the raw
# concurrence expression is already weight * C(normalized), and the raw
# quartic tangle is weight^2 * tau(normalized).


def _concurrence_contrib(w: np.ndarray) -> np.ndarray:
    return 2.0 * np.abs(w[:, 0] * w[:, 3] - w[:, 1] * w[:, 2])


def _tangle_contrib(w: np.ndarray) -> np.ndarray:
    weights = np.sum(np.abs(w) ** 2, axis=1)
    raw = _tangle_raw(w)
    out = np.zeros_like(weights)
    nz = weights > 1e-12
    out[nz] = raw[nz] / weights[nz]
    return out


concurrence_pure2.roof_contrib = _concurrence_contrib
concurrence_pure2.roof_contrib_dim = 4
three_tangle_pure.roof_contrib = _tangle_contrib
three_tangle_pure.roof_contrib_dim = 8
