"""Entanglement measures: pairwise, tripartite, and the channel mixture curves."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tritangle.entanglement import (
    Cut,
    GhzwMixtureParams,
    MeasureKind,
    MeasureValue,
    c_abc_mixture,
    channel_mixture_state,
    concurrence_pure2,
    concurrence_wootters,
    cut_concurrence_pure,
    eof_from_concurrence,
    ghzw_params,
    ghzw_pure_tangle,
    ghzw_superposition,
    groverian_from_concurrence,
    monogamy_residual,
    reduced_concurrences_qc,
    three_tangle_ghzw,
    three_tangle_pure,
)
from tritangle.qcore import (
    DensityMatrix,
    PureState,
    ghz_state,
    partial_trace,
    random_pure_state,
    w_state,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

P0 = 0.6135117904356906
P1 = 0.7236067977499789
T1 = 0.2763932022500209


def bell_state():
    return PureState.from_amplitudes([1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])


def werner(w):
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / math.sqrt(2)
    return DensityMatrix(2, w * np.outer(phi, phi) + (1 - w) * np.eye(4) / 4)


def haar_unitary(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


class TestMeasureValue:
    def test_clamps_negative_noise(self):
        assert MeasureValue(-1e-13, MeasureKind.CONCURRENCE).value == 0.0

    def test_clamps_above_one(self):
        assert MeasureValue(1 + 5e-13, MeasureKind.CONCURRENCE).value == 1.0

    def test_rejects_far_negative(self):
        with pytest.raises(ValueError):
            MeasureValue(-1e-6, MeasureKind.CONCURRENCE)

    def test_rejects_far_above_one(self):
        with pytest.raises(ValueError):
            MeasureValue(1.1, MeasureKind.THREE_TANGLE)

    def test_float_conversion(self):
        assert float(MeasureValue(0.5, MeasureKind.EOF)) == 0.5


class TestPairwiseConcurrence:
    def test_product_state_zero(self):
        psi = PureState.from_amplitudes([1, 0, 0, 0])
        assert float(concurrence_pure2(psi)) == 0.0

    def test_bell_is_maximal(self):
        assert float(concurrence_pure2(bell_state())) == pytest.approx(1.0, abs=1e-15)

    def test_wootters_on_bell(self):
        assert float(concurrence_wootters(bell_state().density())) == pytest.approx(
            1.0, abs=1e-12
        )

    @pytest.mark.parametrize("w", [0.0, 0.2, 1 / 3, 0.4, 0.6, 0.8, 1.0])
    def test_werner_line(self, w):
        expected = max(0.0, (3 * w - 1) / 2)
        assert float(concurrence_wootters(werner(w))) == pytest.approx(expected, abs=1e-12)

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_mixed_route_matches_pure_formula(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_pure_state(2, rng)
        direct = float(concurrence_pure2(psi))
        via_wootters = float(concurrence_wootters(psi.density()))
        assert abs(direct - via_wootters) < 1e-12

    def test_eof_endpoints(self):
        assert float(eof_from_concurrence(0.0)) == 0.0
        assert float(eof_from_concurrence(1.0)) == pytest.approx(1.0, abs=1e-15)

    def test_eof_frozen_point(self):
        assert float(eof_from_concurrence(0.6)) == pytest.approx(
            0.4689955935892811, abs=1e-12
        )

    def test_groverian_frozen_point(self):
        assert float(groverian_from_concurrence(0.6)) == pytest.approx(
            0.31622776601683783, abs=1e-12
        )

    def test_groverian_bell(self):
        assert float(groverian_from_concurrence(1.0)) == pytest.approx(
            0.7071067811, abs=1e-9
        )

    def test_monotone_maps_reject_out_of_range(self):
        with pytest.raises(ValueError):
            eof_from_concurrence(1.5)
        with pytest.raises(ValueError):
            groverian_from_concurrence(-0.5)

    def test_accepts_measure_value_input(self):
        c = concurrence_pure2(bell_state())
        assert float(eof_from_concurrence(c)) == pytest.approx(1.0, abs=1e-12)


class TestThreeTangle:
    def test_ghz_maximal(self):
        assert float(three_tangle_pure(ghz_state())) == pytest.approx(1.0, abs=1e-14)

    def test_w_class_vanishes(self):
        assert float(three_tangle_pure(w_state())) <= 1e-10

    def test_product_state_vanishes(self):
        amps = np.zeros(8)
        amps[0] = 1.0
        assert float(three_tangle_pure(PureState(3, amps))) <= 1e-14

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_local_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_pure_state(3, rng)
        u = haar_unitary(2, rng)
        for v, w in ((u, np.eye(2)), (np.eye(2), u)):
            full = np.kron(np.kron(v, w), haar_unitary(2, rng))
            rotated = PureState(3, full @ psi.amplitudes)
            assert abs(
                float(three_tangle_pure(rotated)) - float(three_tangle_pure(psi))
            ) < 1e-9

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_monogamy_residual_equals_tangle(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_pure_state(3, rng)
        residual = monogamy_residual(psi)
        assert residual >= -1e-9
        assert abs(residual - float(three_tangle_pure(psi))) < 1e-8

    def test_cut_concurrence_ghz(self):
        for cut in Cut:
            assert float(cut_concurrence_pure(ghz_state(), cut)) == pytest.approx(
                1.0, abs=1e-12
            )

    def test_cut_concurrence_w(self):
        # lone LSB keeps the 1/sqrt(2) amplitude balanced against the rest
        assert float(cut_concurrence_pure(w_state(), Cut.AB_C)) == pytest.approx(
            1.0, abs=1e-12
        )
        for cut in (Cut.AC_B, Cut.BC_A):
            assert float(cut_concurrence_pure(w_state(), cut)) == pytest.approx(
                math.sqrt(3) / 2, abs=1e-12
            )


class TestMixtureFamily:
    def test_standard_parameters(self):
        g = GhzwMixtureParams.standard()
        assert g.s == 2.0
        assert g.tau3_ghz == 1.0
        assert g.p0 == pytest.approx(P0, abs=1e-12)
        assert g.p1 == pytest.approx(P1, abs=1e-12)
        assert g.t1 == pytest.approx(T1, abs=1e-12)

    def test_params_factory_matches_standard(self):
        r2 = 1 / math.sqrt(2)
        g = ghzw_params(r2, r2, r2, 0.5, 0.5)
        std = GhzwMixtureParams.standard()
        assert g.s == pytest.approx(std.s, abs=1e-12)
        assert g.p0 == pytest.approx(std.p0, abs=1e-12)

    def test_params_factory_unit_interference(self):
        # a, b, c chosen so the interference strength lands exactly at 1,
        # which pushes the tangle onset down to p = 1/2
        a = b = 1 / math.sqrt(2)
        c = 0.5
        df = a * a * b / (4 * c)
        ssum = math.sqrt(0.75 + 2 * df)
        disc = math.sqrt(ssum * ssum - 4 * df)
        d, f = (ssum + disc) / 2, (ssum - disc) / 2
        g = ghzw_params(a, b, c, d, f)
        assert g.s == pytest.approx(1.0, abs=1e-12)
        assert g.p0 == pytest.approx(0.5, abs=1e-12)

    def test_params_factory_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            ghzw_params(1.0, 1.0, 1 / math.sqrt(2), 0.5, 0.5)

    def test_superposition_endpoints(self):
        assert float(three_tangle_pure(ghzw_superposition(1.0))) == pytest.approx(
            1.0, abs=1e-12
        )
        assert float(three_tangle_pure(ghzw_superposition(0.0))) <= 1e-10

    def test_superposition_tangle_vanishes_at_onset(self):
        assert float(three_tangle_pure(ghzw_superposition(P0))) <= 1e-10

    @given(
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=2 * math.pi),
    )
    @settings(max_examples=60, deadline=None)
    def test_pure_tangle_closed_form(self, p, phi):
        state = ghzw_superposition(p, phi)
        assert abs(
            float(three_tangle_pure(state)) - ghzw_pure_tangle(p, phi)
        ) < 1e-9

    def test_mixture_tangle_zero_plateau(self):
        for p in (0.0, 0.2, 0.4, 0.6, P0):
            assert float(three_tangle_ghzw(p)) == 0.0

    def test_mixture_tangle_frozen_point(self):
        assert float(three_tangle_ghzw(0.7)) == pytest.approx(
            0.21504545830264948, abs=1e-12
        )

    def test_mixture_tangle_endpoint(self):
        assert float(three_tangle_ghzw(1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_mixture_tangle_knot_values(self):
        assert float(three_tangle_ghzw(P0)) == pytest.approx(0.0, abs=1e-12)
        assert float(three_tangle_ghzw(P1)) == pytest.approx(T1, abs=1e-12)

    def test_mixture_tangle_continuous_at_knots(self):
        eps = 1e-8
        for knot in (P0, P1):
            below = float(three_tangle_ghzw(knot - eps))
            above = float(three_tangle_ghzw(knot + eps))
            assert abs(above - below) < 1e-6

    def test_mixture_tangle_monotone_past_onset(self):
        grid = np.linspace(P0, 1.0, 101)
        vals = [float(three_tangle_ghzw(p)) for p in grid]
        assert all(b - a > -1e-12 for a, b in zip(vals, vals[1:]))

    def test_reduced_concurrence_thresholds(self):
        c_ab, c_ac, c_bc = reduced_concurrences_qc(0.18)
        assert float(c_ab) == 0.0
        c_ab, _, _ = reduced_concurrences_qc(0.17)
        assert float(c_ab) > 0.0
        _, c_ac, c_bc = reduced_concurrences_qc(0.34)
        assert float(c_ac) == float(c_bc) == 0.0
        _, c_ac, _ = reduced_concurrences_qc(0.33)
        assert float(c_ac) > 0.0

    def test_reduced_concurrence_frozen_point(self):
        _, c_ac, c_bc = reduced_concurrences_qc(0.2)
        assert float(c_ac) == pytest.approx(0.21927526343546258, abs=1e-12)
        assert float(c_ac) == float(c_bc)

    def test_reduced_concurrence_endpoint(self):
        c_ab, c_ac, _ = reduced_concurrences_qc(0.0)
        assert float(c_ab) == pytest.approx(0.5, abs=1e-15)
        assert float(c_ac) == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    @pytest.mark.parametrize("p", np.linspace(0.0, 1.0, 11))
    def test_reduced_concurrences_match_wootters(self, p):
        rho = channel_mixture_state(p)
        c_ab, c_ac, c_bc = reduced_concurrences_qc(p)
        pairs = [
            (float(c_ab), partial_trace(rho.matrix, [3])),
            (float(c_ac), partial_trace(rho.matrix, [2])),
            (float(c_bc), partial_trace(rho.matrix, [1])),
        ]
        for closed, reduced in pairs:
            assert abs(closed - float(concurrence_wootters(reduced))) < 1e-9

    def test_global_measure_endpoints(self):
        assert float(c_abc_mixture(0.0)) == pytest.approx(1.0, abs=1e-12)
        assert float(c_abc_mixture(1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_global_measure_dead_window(self):
        for p in np.linspace(1 / 3 + 1e-6, P0 - 1e-6, 25):
            assert float(c_abc_mixture(p)) == 0.0

    def test_channel_state_rejects_bad_weight(self):
        with pytest.raises(ValueError):
            channel_mixture_state(1.2)
        with pytest.raises(ValueError):
            channel_mixture_state(-0.1)
