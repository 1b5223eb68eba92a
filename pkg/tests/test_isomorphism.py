import numpy as np
import pytest

from swaplab.isomorphism import (
    EvolutionTriple,
    basis_transport_check,
    check_isomorphism,
    distinctness_witness,
    is_distinct,
)
from swaplab.linalg import (
    HERMITIAN,
    ComplexVector,
    DenseOperator,
    DimensionError,
    KindError,
    basis_vector,
    identity,
    random_unitary,
    tensor_product,
)
from swaplab.measurement import (
    MeasurementSetup,
    ObservableSpec,
    interaction_hamiltonian,
    make_pointer_grid,
    ready_state,
    system_basis_state,
)
from swaplab.symmetry import parity_swap

SAMPLE_TIMES = (0.0, 0.25, 0.5, 0.75, 1.0)


@pytest.fixture(scope="module")
def world_pair():
    grid = make_pointer_grid(8, 0.25)
    setup = MeasurementSetup(ObservableSpec((1.0, -1.0)), grid, 1.0, 1.0)
    h = interaction_hamiltonian(setup)
    plus = EvolutionTriple(h, ready_state(setup, system_basis_state(setup.observable, 0)), SAMPLE_TIMES)
    minus = EvolutionTriple(h, ready_state(setup, system_basis_state(setup.observable, 1)), SAMPLE_TIMES)
    return setup, plus, minus


class TestEvolutionTriple:
    def test_requires_unit_state(self, world_pair):
        setup, plus, _ = world_pair
        with pytest.raises(ValueError):
            EvolutionTriple(plus.hamiltonian, ComplexVector(2 * plus.initial_state.amplitudes), SAMPLE_TIMES)

    def test_requires_sorted_times(self, world_pair):
        _, plus, _ = world_pair
        with pytest.raises(ValueError):
            EvolutionTriple(plus.hamiltonian, plus.initial_state, (0.5, 0.25))

    def test_requires_nonempty_times(self, world_pair):
        _, plus, _ = world_pair
        with pytest.raises(ValueError):
            EvolutionTriple(plus.hamiltonian, plus.initial_state, ())

    def test_requires_hermitian_hamiltonian(self, world_pair):
        _, plus, _ = world_pair
        with pytest.raises(KindError):
            EvolutionTriple(identity(plus.dim, kind="unitary"), plus.initial_state, SAMPLE_TIMES)

    def test_states_are_normalized(self, world_pair):
        _, plus, _ = world_pair
        for state in plus.states():
            assert abs(state.norm() - 1.0) <= 1e-12


class TestCheckIsomorphism:
    def test_identity_on_same_triple(self, world_pair):
        _, plus, _ = world_pair
        report = check_isomorphism(identity(plus.dim, kind="unitary"), plus, plus)
        assert report.passed
        assert max(report.state_residuals) == 0.0
        assert report.hamiltonian_residual == 0.0

    def test_parity_swap_relates_the_two_worlds(self, world_pair):
        setup, plus, minus = world_pair
        report = check_isomorphism(parity_swap(setup), plus, minus, tolerance=1e-10)
        assert report.passed
        assert max(report.state_residuals) <= 1e-10
        assert report.hamiltonian_residual <= 1e-10

    def test_random_unitary_fails_hamiltonian_condition(self, world_pair):
        _, plus, minus = world_pair
        report = check_isomorphism(random_unitary(plus.dim, seed=0), plus, minus)
        assert not report.passed
        assert report.hamiltonian_residual > 0.1

    def test_non_unitary_swap_rejected(self, world_pair):
        _, plus, minus = world_pair
        with pytest.raises(KindError, match="unitary"):
            check_isomorphism(DenseOperator(2 * np.eye(plus.dim)), plus, minus)

    def test_dim_mismatch_rejected(self, world_pair):
        _, plus, _ = world_pair
        small = EvolutionTriple(
            DenseOperator(np.zeros((2, 2)), HERMITIAN), basis_vector(2, 0), SAMPLE_TIMES
        )
        with pytest.raises(DimensionError):
            check_isomorphism(identity(2, kind="unitary"), small, plus)

    def test_sample_times_must_agree(self, world_pair):
        _, plus, _ = world_pair
        other = EvolutionTriple(plus.hamiltonian, plus.initial_state, (0.0, 1.0))
        with pytest.raises(ValueError):
            check_isomorphism(identity(plus.dim, kind="unitary"), plus, other)

    def test_residual_symmetry_under_inverse(self, world_pair):
        setup, plus, minus = world_pair
        swap = parity_swap(setup)
        forward = check_isomorphism(swap, plus, minus)
        backward = check_isomorphism(swap.dagger(), minus, plus)
        assert np.allclose(forward.state_residuals, backward.state_residuals, atol=1e-12)
        assert forward.hamiltonian_residual == pytest.approx(
            backward.hamiltonian_residual, abs=1e-12
        )

    def test_phase_insensitive_mode(self, world_pair):
        _, plus, _ = world_pair
        rotated = EvolutionTriple(
            plus.hamiltonian,
            ComplexVector(np.exp(0.3j) * plus.initial_state.amplitudes),
            SAMPLE_TIMES,
        )
        literal = check_isomorphism(identity(plus.dim, kind="unitary"), plus, rotated)
        assert not literal.passed
        modded = check_isomorphism(
            identity(plus.dim, kind="unitary"), plus, rotated, phase_insensitive=True
        )
        assert modded.passed


class TestBasisTransport:
    def test_standard_basis_identity(self, world_pair):
        _, plus, _ = world_pair
        basis = [basis_vector(plus.dim, i) for i in range(plus.dim)]
        assert basis_transport_check(
            identity(plus.dim, kind="unitary"), basis, plus, plus, SAMPLE_TIMES
        )

    def test_standard_basis_swapped_worlds(self, world_pair):
        setup, plus, minus = world_pair
        basis = [basis_vector(plus.dim, i) for i in range(plus.dim)]
        assert basis_transport_check(parity_swap(setup), basis, plus, minus, SAMPLE_TIMES, tolerance=1e-10)

    def test_random_orthonormal_basis(self, world_pair):
        setup, plus, minus = world_pair
        columns = random_unitary(plus.dim, seed=11).entries
        basis = [ComplexVector(columns[:, i]) for i in range(plus.dim)]
        assert basis_transport_check(parity_swap(setup), basis, plus, minus, SAMPLE_TIMES, tolerance=1e-9)

    def test_scaled_vector_rejected(self, world_pair):
        _, plus, _ = world_pair
        basis = [basis_vector(plus.dim, i) for i in range(plus.dim)]
        basis[0] = ComplexVector(1.01 * basis[0].amplitudes)
        with pytest.raises(ValueError, match="orthonormal"):
            basis_transport_check(identity(plus.dim, kind="unitary"), basis, plus, plus, SAMPLE_TIMES)


class TestDistinctness:
    def test_identical_states_not_distinct(self, world_pair):
        _, plus, _ = world_pair
        state = plus.initial_state
        witnesses = distinctness_witness(state, state, [("anything", plus.hamiltonian)])
        assert all(w.gap == 0.0 for w in witnesses)
        assert not is_distinct(witnesses, 1e-10)

    def test_pointer_gap_between_worlds(self, world_pair):
        setup, plus, minus = world_pair
        pointer = tensor_product(
            identity(setup.observable.system_dim), setup.grid.position_operator
        )
        final_plus = plus.states()[-1]
        final_minus = minus.states()[-1]
        witnesses = distinctness_witness(final_plus, final_minus, [("pointer", pointer)])
        assert witnesses[0].gap == pytest.approx(2.0, abs=1e-9)
        assert is_distinct(witnesses, 1e-10)

    def test_identity_observable_never_distinguishes(self, world_pair):
        _, plus, minus = world_pair
        witnesses = distinctness_witness(
            plus.states()[-1], minus.states()[-1], [("identity", identity(plus.dim))]
        )
        assert witnesses[0].gap <= 1e-12

    def test_non_hermitian_observable_rejected(self, world_pair):
        _, plus, minus = world_pair
        lopsided = DenseOperator(np.triu(np.ones((plus.dim, plus.dim))))
        with pytest.raises(KindError):
            distinctness_witness(plus.initial_state, minus.initial_state, [("bad", lopsided)])

    def test_transport_follows_isomorphism(self, world_pair):
        # a passing isomorphism transports amplitudes in any orthonormal basis
        setup, plus, minus = world_pair
        swap = parity_swap(setup)
        report = check_isomorphism(swap, plus, minus, tolerance=1e-10)
        assert report.passed
        for seed in (1, 2, 3):
            columns = random_unitary(plus.dim, seed=seed).entries
            basis = [ComplexVector(columns[:, i]) for i in range(plus.dim)]
            assert basis_transport_check(swap, basis, plus, minus, SAMPLE_TIMES, tolerance=1e-9)
