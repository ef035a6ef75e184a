"""Tests for the cloning machines: equivalence, oracles, asymmetric variants."""

import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from uqcm.hilbert import (
    FullState,
    PureState,
    fidelity_pure,
    partial_trace_state,
    random_pure_state,
    random_unitary,
    trace_distance,
    trace_distance_matrices,
)
from uqcm.combinatorics import OccupationVector
from uqcm.machines import (
    MACHINES,
    AsymmetryWeights,
    CloneSpec,
    asymmetric_1to2,
    explicit_1to2,
    fan_output,
    run_machine,
    unified_output,
    unified_output_oracle,
    unified_pure_output,
    weighted_clone,
    werner_output,
    werner_output_oracle,
)
from uqcm.symmetric import (
    expand_power,
    projector_full,
    sym_to_full_density,
    sym_unitary,
)

TOL = 1e-10
GRID = [
    (d, n, m)
    for d in (2, 3)
    for n in (1, 2)
    for m in range(n, n + 3)
]


class TestCloneSpec:
    def test_normalization_constant(self):
        spec = CloneSpec(2, 1, 2)
        assert spec.eta_sq == Fraction(1, 3)
        assert spec.eta == pytest.approx(1 / math.sqrt(3))

    def test_dimensions(self):
        spec = CloneSpec(3, 2, 4)
        assert spec.dim_in == 6
        assert spec.dim_out == 15

    def test_invalid_parameters_raise(self):
        with pytest.raises(ValueError):
            CloneSpec(1, 1, 2)
        with pytest.raises(ValueError):
            CloneSpec(2, 0, 2)
        with pytest.raises(ValueError):
            CloneSpec(2, 3, 2)

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValueError):
            werner_output(CloneSpec(2, 1, 2), random_pure_state(3, 0))


class TestThreeMachineEquivalence:
    @pytest.mark.parametrize("d,n,m", GRID)
    def test_pairwise_agreement(self, d, n, m):
        spec = CloneSpec(d, n, m)
        for seed in range(3):
            phi = random_pure_state(d, seed)
            outs = [run_machine(spec, phi, name).matrix for name in MACHINES]
            for a, b in combinations(outs, 2):
                assert trace_distance_matrices(a, b) < TOL

    def test_identity_when_no_extra_copies(self):
        # N = M: every machine returns the pure input power.
        for d in (2, 3):
            spec = CloneSpec(d, 2, 2)
            phi = random_pure_state(d, 5)
            target = expand_power(phi, 2)
            expected = np.outer(target.amplitudes, target.amplitudes.conj())
            for name in MACHINES:
                rho = run_machine(spec, phi, name)
                assert trace_distance_matrices(rho.matrix, expected) < TOL


class TestOracles:
    @pytest.mark.parametrize("d,n,m", [(2, 1, 2), (2, 1, 3), (2, 2, 4), (3, 1, 2), (3, 2, 3)])
    def test_werner_fast_path_matches_full_space(self, d, n, m):
        spec = CloneSpec(d, n, m)
        phi = random_pure_state(d, 9)
        fast = sym_to_full_density(werner_output(spec, phi))
        assert trace_distance(fast, werner_output_oracle(spec, phi)) < TOL

    @pytest.mark.parametrize("d,n,m", [(2, 1, 2), (2, 1, 3), (2, 2, 3), (3, 1, 2)])
    def test_unified_fast_path_matches_full_space(self, d, n, m):
        spec = CloneSpec(d, n, m)
        phi = random_pure_state(d, 10)
        fast = unified_output(spec, phi)
        oracle = unified_output_oracle(spec, phi)
        assert (
            trace_distance(sym_to_full_density(fast.density), oracle.density) < TOL
        )

    def test_normalization_bookkeeping_matches(self):
        # The projection shrinks the raw state identically in both routes.
        for d, n, m in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 3)]:
            spec = CloneSpec(d, n, m)
            phi = random_pure_state(d, 12)
            assert unified_output(spec, phi).lam == pytest.approx(
                unified_output_oracle(spec, phi).lam, abs=1e-12
            )

    def test_oracle_output_in_symmetric_subspace(self):
        spec = CloneSpec(2, 1, 3)
        phi = random_pure_state(2, 13)
        rho = werner_output_oracle(spec, phi)
        proj = projector_full(2, 3)
        assert trace_distance_matrices(proj @ rho.matrix @ proj, rho.matrix) < TOL


class TestJointStates:
    def test_fan_joint_traces_to_density(self):
        spec = CloneSpec(2, 1, 3)
        phi = random_pure_state(2, 21)
        out = fan_output(spec, phi)
        traced = out.joint_sym @ out.joint_sym.conj().T
        assert np.allclose(traced, out.density.matrix, atol=TOL)

    def test_unified_joint_traces_to_density(self):
        spec = CloneSpec(3, 1, 2)
        phi = random_pure_state(3, 22)
        out = unified_output(spec, phi)
        traced = out.joint_sym @ out.joint_sym.conj().T
        assert np.allclose(traced, out.density.matrix, atol=TOL)

    def test_machine_tags(self):
        spec = CloneSpec(2, 1, 2)
        phi = random_pure_state(2, 23)
        assert fan_output(spec, phi).machine_tag == "fan"
        assert unified_output(spec, phi).machine_tag == "unified"

    def test_pure_expansion_norm_is_inverse_eta(self):
        # Every symmetric input picks up the same total weight 1/eta.
        for d, n, m in [(2, 1, 2), (2, 2, 4), (3, 1, 3), (3, 2, 3)]:
            spec = CloneSpec(d, n, m)
            for occ in expand_power(random_pure_state(d, 1), n).basis.vectors:
                expansion = unified_pure_output(spec, occ)
                assert expansion.normalization == pytest.approx(
                    1.0 / spec.eta, rel=1e-12
                )

    def test_pure_expansion_rejects_wrong_input(self):
        spec = CloneSpec(2, 1, 2)
        with pytest.raises(ValueError):
            unified_pure_output(spec, OccupationVector((1, 1)))


class TestExplicitPair:
    def test_matches_unified_machine_joint(self):
        # The closed-form 1 -> 2 map is the entangled-pair machine itself.
        for d in (2, 3):
            phi = random_pure_state(d, 31)
            closed = explicit_1to2(d, phi)
            oracle = unified_output_oracle(CloneSpec(d, 1, 2), phi)
            overlap = abs(closed.overlap(oracle.joint))
            assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_basis_input_amplitudes_d2(self):
        out = explicit_1to2(2, PureState.basis(2, 0))
        amps = out.amplitudes.real
        assert amps[0b000] == pytest.approx(math.sqrt(2 / 3), abs=1e-12)
        assert amps[0b011] == pytest.approx(math.sqrt(1 / 6), abs=1e-12)
        assert amps[0b101] == pytest.approx(math.sqrt(1 / 6), abs=1e-12)
        assert np.count_nonzero(np.abs(out.amplitudes) > 1e-15) == 3

    def test_clone_fidelity_is_symmetric_optimum(self):
        for d in (2, 3, 4):
            phi = random_pure_state(d, 33)
            out = explicit_1to2(d, phi)
            rho = partial_trace_state(out, {0})
            phi_full = FullState(phi.amplitudes, 1, d)
            expected = (d + 3) / (2 * (d + 1))
            assert fidelity_pure(rho, phi_full) == pytest.approx(expected, abs=TOL)


class TestCovariance:
    @pytest.mark.parametrize("d,n,m", [(2, 1, 2), (2, 2, 3), (3, 1, 2)])
    def test_rotating_input_conjugates_output(self, d, n, m):
        spec = CloneSpec(d, n, m)
        phi = random_pure_state(d, 41)
        u = random_unitary(d, 42)
        big = sym_unitary(u, m)
        for name in MACHINES:
            direct = run_machine(spec, PureState(u @ phi.amplitudes), name)
            conjugated = big @ run_machine(spec, phi, name).matrix @ big.conj().T
            assert trace_distance_matrices(direct.matrix, conjugated) < TOL


class TestAsymmetricPair:
    def test_limit_all_weight_on_first(self):
        for d in (2, 3, 4):
            phi = random_pure_state(d, 51)
            res = asymmetric_1to2(d, phi, AsymmetryWeights.pair(1.0, 0.0))
            assert res.fidelity_a == pytest.approx(1.0, abs=1e-12)
            assert res.fidelity_b == pytest.approx(1.0 / d, abs=1e-12)
            assert np.allclose(res.clone_b.matrix, np.eye(d) / d, atol=1e-12)

    def test_equal_weights_reach_symmetric_value(self):
        for d in (2, 3):
            phi = random_pure_state(d, 52)
            res = asymmetric_1to2(d, phi, AsymmetryWeights.pair(1.0, 1.0))
            expected = (d + 3) / (2 * (d + 1))
            assert res.fidelity_a == pytest.approx(expected, abs=TOL)
            assert res.fidelity_b == pytest.approx(expected, abs=TOL)

    def test_normalization_closed_form(self):
        # Cross term of the two routings contributes 2 alpha beta / d.
        d = 3
        phi = random_pure_state(d, 53)
        alpha, beta = 0.8, 0.6
        res = asymmetric_1to2(d, phi, AsymmetryWeights.pair(alpha, beta))
        expected = math.sqrt(alpha**2 + beta**2 + 2 * alpha * beta / d)
        assert res.normalization == pytest.approx(expected, abs=1e-12)

    def test_tradeoff_is_monotone(self):
        for d in (2, 3):
            phi = random_pure_state(d, 54)
            f_a, f_b = [], []
            for i in range(50):
                theta = (math.pi / 2) * (i / 49)
                alpha, beta = math.cos(theta), math.sin(theta)
                res = asymmetric_1to2(d, phi, AsymmetryWeights.pair(alpha, beta))
                f_a.append(res.fidelity_a)
                f_b.append(res.fidelity_b)
            assert all(x > y for x, y in zip(f_a, f_a[1:]))
            assert all(x < y for x, y in zip(f_b, f_b[1:]))

    def test_fidelities_independent_of_input(self):
        d = 2
        w = AsymmetryWeights.pair(0.9, 0.3)
        values = [
            asymmetric_1to2(d, random_pure_state(d, s), w).fidelity_a
            for s in range(5)
        ]
        assert max(values) - min(values) < TOL


class TestAsymmetryWeights:
    def test_pair_accessors(self):
        w = AsymmetryWeights.pair(0.25, 0.75)
        assert w.alpha == 0.25
        assert w.beta == 0.75

    def test_subsets_are_sorted_and_deduplicated(self):
        w = AsymmetryWeights({(2, 0): 1.0})
        assert (0, 2) in w.weights

    def test_negative_weight_raises(self):
        with pytest.raises(ValueError):
            AsymmetryWeights.pair(-0.1, 1.0)

    def test_all_zero_raises(self):
        with pytest.raises(ValueError):
            AsymmetryWeights.pair(0.0, 0.0)

    def test_repeated_slot_raises(self):
        with pytest.raises(ValueError):
            AsymmetryWeights({(1, 1): 1.0})

    def test_equal_builder_covers_all_subsets(self):
        w = AsymmetryWeights.equal(2, 4)
        assert len(w.weights) == 6


class TestWeightedClone:
    def test_equal_weights_match_symmetric_machine(self):
        for d, n, m in [(2, 1, 3), (2, 2, 3), (3, 1, 2)]:
            spec = CloneSpec(d, n, m)
            phi = random_pure_state(d, 61)
            res = weighted_clone(spec, phi, AsymmetryWeights.equal(n, m))
            oracle = unified_output_oracle(spec, phi)
            assert trace_distance(res.output, oracle.density) < TOL

    def test_single_subset_clones_perfectly_inside(self):
        spec = CloneSpec(2, 1, 3)
        phi = random_pure_state(2, 62)
        w = AsymmetryWeights({(0,): 1.0, (1,): 0.0, (2,): 0.0})
        res = weighted_clone(spec, phi, w)
        assert res.slot_fidelities[0] == pytest.approx(1.0, abs=1e-12)
        assert res.slot_fidelities[1] == pytest.approx(0.5, abs=1e-12)
        assert res.slot_fidelities[2] == pytest.approx(0.5, abs=1e-12)

    def test_reduces_to_asymmetric_pair_machine(self):
        d = 2
        phi = random_pure_state(d, 63)
        alpha, beta = 0.6, 0.8
        pair = asymmetric_1to2(d, phi, AsymmetryWeights.pair(alpha, beta))
        general = weighted_clone(
            CloneSpec(d, 1, 2), phi, AsymmetryWeights.pair(alpha, beta)
        )
        assert general.slot_fidelities[0] == pytest.approx(pair.fidelity_a, abs=TOL)
        assert general.slot_fidelities[1] == pytest.approx(pair.fidelity_b, abs=TOL)

    def test_missing_subset_raises(self):
        spec = CloneSpec(2, 1, 3)
        phi = random_pure_state(2, 64)
        with pytest.raises(ValueError):
            weighted_clone(spec, phi, AsymmetryWeights({(0,): 1.0}))

    def test_tagged_exploratory(self):
        spec = CloneSpec(2, 1, 2)
        phi = random_pure_state(2, 65)
        res = weighted_clone(spec, phi, AsymmetryWeights.equal(1, 2))
        assert res.machine_tag == "weighted-exploratory"


class TestRunMachine:
    def test_unknown_machine_raises(self):
        with pytest.raises(ValueError):
            run_machine(CloneSpec(2, 1, 2), random_pure_state(2, 0), "telepathy")
