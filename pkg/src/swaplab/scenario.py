"""End-to-end narrative experiments.

Three runs are provided:

* ``run_prince_pauper``: one qubit measured by one pointer; the sign-flip swap
  relates the two post-measurement worlds while fixed reference observables
  (pointer position, system observable) tell them apart.
* ``run_multiworld``: k independent, simultaneous qubit measurements; all 2^k
  outcome sign patterns are enumerated, every pair is certified isomorphic
  (products of per-factor swaps) yet observably distinct.
* ``run_classical_level``: two macroscopically different outcome readings on a
  continuous-spectrum surrogate (geometric diagonal ladder) connected by an
  exactly H-preserving scaling swap.

The ready state is modeled as the calibrated pointer zeta = 0 basis state per
factor; "wealth" narratives reduce to outcome sign patterns in the labels.
Multiworld operators are never materialized on the product space: states are
dense vectors, per-factor operators act by tensor reshaping, and the
Hamiltonian-conjugation residual uses the exact per-factor Frobenius
factorization (each factor deviation is traceless, so cross terms vanish).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .isomorphism import (
    EvolutionTriple,
    IsomorphismReport,
    Witness,
    check_isomorphism,
    distinctness_witness,
    is_distinct,
)
from .linalg import (
    HERMITIAN,
    ComplexVector,
    DenseOperator,
    frobenius_norm,
    identity,
    tensor_product,
    vector_distance,
)
from .measurement import (
    BranchReadout,
    MeasurementSetup,
    ObservableSpec,
    interaction_hamiltonian,
    make_pointer_grid,
    readout,
    ready_state,
    system_basis_state,
)
from .symmetry import (
    GeometricDiagonalModel,
    SwapCertificate,
    SwapTolerances,
    certify_lemma1,
    certify_lemma2,
    locate_eigenvalue,
    parity_permutation,
    parity_swap,
    scaling_swap,
)

#: the measured qubits have outcomes +-1
QUBIT_EIGENVALUES = (1.0, -1.0)
LAMBDA_MAX = 1.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Per-qubit measurement parameters plus run-level knobs."""

    pointer_half_width: int = 8
    pointer_spacing: float = 0.25
    coupling: float = 1.0
    duration: float = 1.0
    hbar: float = 1.0
    qubit_count: int = 1
    tolerance: float = 1e-10
    sample_times: tuple = None
    phase_insensitive: bool = False
    seed: int = 0
    eigenvalue_from: float = 1.0
    eigenvalue_to: float = 2.0
    exponent_range: int = 4
    model_degeneracy: int = 2
    dimension_cap: int = 40_000

    def __post_init__(self):
        if self.sample_times is None:
            quarter = self.duration / 4
            times = tuple(i * quarter for i in range(5))
        else:
            times = tuple(float(t) for t in self.sample_times)
        object.__setattr__(self, "sample_times", times)
        if self.pointer_half_width < 1:
            raise ValueError("pointer_half_width must be >= 1")
        if self.pointer_spacing <= 0:
            raise ValueError("pointer_spacing must be positive")
        if self.coupling < 0:
            raise ValueError("coupling must be nonnegative")
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if not 1 <= self.qubit_count <= 3:
            raise ValueError(f"qubit_count must be between 1 and 3 at desk scale, got {self.qubit_count}")
        if self.exponent_range < 1:
            raise ValueError("exponent_range must be >= 1")
        if self.model_degeneracy < 1:
            raise ValueError("model_degeneracy must be >= 1")
        if len(times) == 0 or any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("sample_times must be a nonempty sorted sequence")
        if any(not 0 <= t <= self.duration for t in times):
            raise ValueError(f"sample_times must lie in [0, {self.duration}]")
        travel = self.coupling * self.duration * LAMBDA_MAX
        limit = self.pointer_half_width * self.pointer_spacing / 2
        if travel > limit:
            raise ValueError(
                f"pointer wraparound guard violated: coupling*duration*lambda_max = {travel} "
                f"exceeds half_width*spacing/2 = {limit}"
            )
        total = self.factor_dim**self.qubit_count
        if total > self.dimension_cap:
            raise ValueError(f"total dimension {total} exceeds the cap {self.dimension_cap}")

    @property
    def factor_dim(self) -> int:
        return 2 * (2 * self.pointer_half_width + 1)


@dataclass(frozen=True)
class WorldReadout:
    label: str
    per_factor: tuple


@dataclass(frozen=True)
class PairCertificate:
    """Automorphism + distinctness record for one pair of worlds."""

    world_a: str
    world_b: str
    state_residual: float
    hamiltonian_residual: float
    pointer_gaps: tuple
    system_gaps: tuple
    witnesses: tuple
    isomorphic: bool
    distinct: bool


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    world_labels: tuple
    readouts: tuple
    swap_certificates: tuple
    isomorphism_reports: tuple
    pairs: tuple
    distinctness_matrix: tuple
    passed: bool


def qubit_setup(config: ScenarioConfig) -> MeasurementSetup:
    grid = make_pointer_grid(config.pointer_half_width, config.pointer_spacing, config.hbar)
    return MeasurementSetup(
        ObservableSpec(QUBIT_EIGENVALUES), grid, config.coupling, config.duration
    )


def reference_observables(setup: MeasurementSetup) -> tuple:
    """The fixed observable frame that operationalizes physical distinctness."""
    pointer = tensor_product(identity(setup.observable.system_dim), setup.grid.position_operator)
    system = tensor_product(setup.observable.operator(), identity(setup.grid.n_points))
    return (("pointer_position", pointer), ("system_observable", system))


def run_prince_pauper(config: ScenarioConfig) -> ScenarioReport:
    """Single qubit: both outcome worlds share the triple, differ observably."""
    if config.qubit_count != 1:
        raise ValueError("the single-measurement scenario needs qubit_count = 1")
    setup = qubit_setup(config)
    tolerances = SwapTolerances.uniform(config.tolerance)
    certificate = certify_lemma1(setup, tolerances=tolerances)

    hamiltonian = interaction_hamiltonian(setup)
    observable = setup.observable
    plus0 = ready_state(setup, system_basis_state(observable, 0))
    minus0 = ready_state(setup, system_basis_state(observable, 1))
    triple_plus = EvolutionTriple(hamiltonian, plus0, config.sample_times, config.hbar)
    triple_minus = EvolutionTriple(hamiltonian, minus0, config.sample_times, config.hbar)

    swap = parity_swap(setup)
    iso = check_isomorphism(
        swap, triple_plus, triple_minus, config.tolerance, config.phase_insensitive
    )
    initial_residual = vector_distance(swap @ plus0, minus0)

    final_plus = triple_plus.states_at((config.duration,))[0]
    final_minus = triple_minus.states_at((config.duration,))[0]
    witnesses = distinctness_witness(
        final_plus, final_minus, reference_observables(setup), config.tolerance
    )
    distinct = is_distinct(witnesses)
    gaps = {w.observable: w.gap for w in witnesses}
    max_gap = max(w.gap for w in witnesses)

    pair = PairCertificate(
        world_a="+",
        world_b="-",
        state_residual=max(iso.state_residuals),
        hamiltonian_residual=iso.hamiltonian_residual,
        pointer_gaps=(gaps["pointer_position"],),
        system_gaps=(gaps["system_observable"],),
        witnesses=witnesses,
        isomorphic=iso.passed,
        distinct=distinct,
    )
    readouts = (
        WorldReadout("+", (readout(final_plus, setup),)),
        WorldReadout("-", (readout(final_minus, setup),)),
    )
    passed = (
        certificate.passed and iso.passed and distinct and initial_residual <= config.tolerance
    )
    return ScenarioReport(
        scenario="prince-pauper",
        world_labels=("+", "-"),
        readouts=readouts,
        swap_certificates=(certificate,),
        isomorphism_reports=(iso,),
        pairs=(pair,),
        distinctness_matrix=((0.0, max_gap), (max_gap, 0.0)),
        passed=passed,
    )


def _apply_factor_swaps(state: np.ndarray, inverse_perm: np.ndarray, factors, k: int, dim: int):
    tensor = state.reshape((dim,) * k)
    for axis in factors:
        tensor = np.take(tensor, inverse_perm, axis=axis)
    return tensor.reshape(-1)


def run_multiworld(config: ScenarioConfig, qubit_count: int = None) -> ScenarioReport:
    """k independent simultaneous measurements: 2^k isomorphic, distinct worlds."""
    k = config.qubit_count if qubit_count is None else qubit_count
    if not 1 <= k <= 3:
        raise ValueError(f"qubit_count must be between 1 and 3 at desk scale, got {k}")
    setup = qubit_setup(config)
    factor_dim = setup.total_dim
    if factor_dim**k > config.dimension_cap:
        raise ValueError(f"total dimension {factor_dim**k} exceeds the cap {config.dimension_cap}")

    tolerance = config.tolerance
    certificate = certify_lemma1(setup, tolerances=SwapTolerances.uniform(tolerance))

    hamiltonian = interaction_hamiltonian(setup)
    perm = parity_permutation(setup)
    inverse_perm = np.argsort(perm)
    # exact permutation conjugation: (S H S^dag)[a, b] = H[inv(a), inv(b)]
    conjugated = hamiltonian.entries[np.ix_(inverse_perm, inverse_perm)]
    factor_deviation = frobenius_norm(conjugated - hamiltonian.entries)

    eigenvalues, eigenvectors = np.linalg.eigh(hamiltonian.entries)
    observable = setup.observable

    def evolved(sign: int, t: float) -> np.ndarray:
        initial = ready_state(setup, system_basis_state(observable, sign)).amplitudes
        coefficients = eigenvectors.conj().T @ initial
        return eigenvectors @ (np.exp(-1j * eigenvalues * t / config.hbar) * coefficients)

    times = config.sample_times
    factor_states = {(sign, ti): evolved(sign, t) for sign in (0, 1) for ti, t in enumerate(times)}
    final_states = {sign: evolved(sign, config.duration) for sign in (0, 1)}

    zeta = setup.grid.zeta
    lam = np.asarray(observable.eigenvalues)
    pointer_mean = {}
    system_mean = {}
    readout_tables = {}
    for sign in (0, 1):
        weights = np.abs(final_states[sign].reshape(observable.system_dim, -1)) ** 2
        pointer_mean[sign] = float((weights.sum(axis=0) * zeta).sum())
        system_mean[sign] = float((weights.sum(axis=1) * lam).sum())
        readout_tables[sign] = readout(ComplexVector(final_states[sign]), setup)

    patterns = list(itertools.product((0, 1), repeat=k))
    labels = ["".join("+" if s == 0 else "-" for s in pattern) for pattern in patterns]
    full_states = [
        [reduce(np.kron, [factor_states[(s, ti)] for s in pattern]) for ti in range(len(times))]
        for pattern in patterns
    ]

    pairs = []
    n_worlds = len(patterns)
    matrix = [[0.0] * n_worlds for _ in range(n_worlds)]
    for i, j in itertools.combinations(range(n_worlds), 2):
        differing = [f for f in range(k) if patterns[i][f] != patterns[j][f]]
        state_residual = 0.0
        for ti in range(len(times)):
            mapped = _apply_factor_swaps(full_states[i][ti], inverse_perm, differing, k, factor_dim)
            state_residual = max(
                state_residual, float(np.linalg.norm(mapped - full_states[j][ti]))
            )
        hamiltonian_residual = float(
            factor_deviation * np.sqrt(len(differing) * factor_dim ** (k - 1))
        )
        pointer_gaps, system_gaps, witnesses = [], [], []
        for f in range(k):
            za, zb = pointer_mean[patterns[i][f]], pointer_mean[patterns[j][f]]
            aa, ab = system_mean[patterns[i][f]], system_mean[patterns[j][f]]
            zgap, agap = abs(za - zb), abs(aa - ab)
            pointer_gaps.append(zgap)
            system_gaps.append(agap)
            witnesses.append(Witness(f"pointer_position[{f}]", za, zb, zgap, zgap > tolerance))
            witnesses.append(Witness(f"system_observable[{f}]", aa, ab, agap, agap > tolerance))
        isomorphic = state_residual <= tolerance and hamiltonian_residual <= tolerance
        distinct = is_distinct(witnesses)
        matrix[i][j] = matrix[j][i] = max(w.gap for w in witnesses)
        pairs.append(
            PairCertificate(
                world_a=labels[i],
                world_b=labels[j],
                state_residual=state_residual,
                hamiltonian_residual=hamiltonian_residual,
                pointer_gaps=tuple(pointer_gaps),
                system_gaps=tuple(system_gaps),
                witnesses=tuple(witnesses),
                isomorphic=isomorphic,
                distinct=distinct,
            )
        )

    readouts = tuple(
        WorldReadout(labels[i], tuple(readout_tables[s] for s in patterns[i]))
        for i in range(n_worlds)
    )
    passed = (
        certificate.passed
        and n_worlds == 2**k
        and all(p.isomorphic for p in pairs)
        and all(p.distinct for p in pairs)
    )
    return ScenarioReport(
        scenario="multiworld",
        world_labels=tuple(labels),
        readouts=readouts,
        swap_certificates=(certificate,),
        isomorphism_reports=(),
        pairs=tuple(pairs),
        distinctness_matrix=tuple(tuple(row) for row in matrix),
        passed=passed,
    )


def _sector_state(model: GeometricDiagonalModel, sign_idx: int, m_idx: int, label: int) -> np.ndarray:
    state = np.zeros(model.dim, dtype=complex)
    for sign_p in range(2):
        for kk in range(model.cycle_length):
            state[model.basis_index(sign_idx, m_idx, label, sign_p, kk)] = 1.0
    return state / np.linalg.norm(state)


def _model_observable(model: GeometricDiagonalModel) -> DenseOperator:
    values = np.empty(model.dim)
    for sign_idx, sign in enumerate((1.0, -1.0)):
        for m in range(model.cycle_length):
            value = sign * model.base_eigenvalue * model.ratio ** (model.exponent_min + m)
            for label in range(model.degeneracy):
                for sign_p in range(2):
                    for kk in range(model.cycle_length):
                        values[model.basis_index(sign_idx, m, label, sign_p, kk)] = value
    return DenseOperator(np.diag(values.astype(complex)), HERMITIAN)


def _model_momentum(model: GeometricDiagonalModel) -> DenseOperator:
    values = np.empty(model.dim)
    for sign_idx in range(2):
        for m in range(model.cycle_length):
            for label in range(model.degeneracy):
                for sign_p, sig in enumerate((1.0, -1.0)):
                    for kk in range(model.cycle_length):
                        values[model.basis_index(sign_idx, m, label, sign_p, kk)] = (
                            sig * model.base_momentum * model.ratio ** (model.exponent_min + kk)
                        )
    return DenseOperator(np.diag(values.astype(complex)), HERMITIAN)


def build_diagonal_model(
    config: ScenarioConfig, eigenvalue_from: float = None, eigenvalue_to: float = None
) -> GeometricDiagonalModel:
    """Geometric ladder model containing both requested outcome eigenvalues."""
    value_from = config.eigenvalue_from if eigenvalue_from is None else eigenvalue_from
    value_to = config.eigenvalue_to if eigenvalue_to is None else eigenvalue_to
    if value_from == 0 or value_to == 0:
        raise ValueError("swap endpoints must be nonzero eigenvalues")
    ratio = 1.0 if value_from == value_to else value_to / value_from
    return GeometricDiagonalModel(
        ratio=ratio,
        exponent_min=-config.exponent_range,
        exponent_max=config.exponent_range,
        base_eigenvalue=abs(value_from),
        coupling=config.coupling,
        degeneracy=config.model_degeneracy,
        hbar=config.hbar,
    )


def run_classical_level(
    config: ScenarioConfig, eigenvalue_from: float = None, eigenvalue_to: float = None
) -> ScenarioReport:
    """Two macroscopically different readings connected by an H-preserving swap."""
    value_from = config.eigenvalue_from if eigenvalue_from is None else eigenvalue_from
    value_to = config.eigenvalue_to if eigenvalue_to is None else eigenvalue_to
    model = build_diagonal_model(config, value_from, value_to)
    tolerances = SwapTolerances.uniform(config.tolerance)
    certificate = certify_lemma2(
        model, value_from, value_to, tolerances=tolerances, sample_times=config.sample_times
    )

    sign_from, m_from = locate_eigenvalue(model, value_from)
    start = ComplexVector(_sector_state(model, sign_from, m_from, 0))
    swap = scaling_swap(model)
    image = swap @ start
    hamiltonian = model.hamiltonian()
    triple_from = EvolutionTriple(hamiltonian, start, config.sample_times, config.hbar)
    triple_to = EvolutionTriple(hamiltonian, image, config.sample_times, config.hbar)
    iso = check_isomorphism(swap, triple_from, triple_to, config.tolerance, config.phase_insensitive)

    final_from = triple_from.states_at((config.duration,))[0]
    final_to = triple_to.states_at((config.duration,))[0]
    observables = (
        ("system_observable", _model_observable(model)),
        ("pointer_momentum", _model_momentum(model)),
    )
    witnesses = distinctness_witness(final_from, final_to, observables, config.tolerance)
    distinct = is_distinct(witnesses)
    max_gap = max(w.gap for w in witnesses)
    gaps = {w.observable: w.gap for w in witnesses}

    pair = PairCertificate(
        world_a=f"outcome {value_from:g}",
        world_b=f"outcome {value_to:g}",
        state_residual=max(iso.state_residuals),
        hamiltonian_residual=iso.hamiltonian_residual,
        pointer_gaps=(gaps["pointer_momentum"],),
        system_gaps=(gaps["system_observable"],),
        witnesses=witnesses,
        isomorphic=iso.passed,
        distinct=distinct,
    )
    distinct_required = value_from != value_to
    passed = certificate.passed and iso.passed and (distinct or not distinct_required)
    return ScenarioReport(
        scenario="classical-level",
        world_labels=(pair.world_a, pair.world_b),
        readouts=(WorldReadout(pair.world_a, ()), WorldReadout(pair.world_b, ())),
        swap_certificates=(certificate,),
        isomorphism_reports=(iso,),
        pairs=(pair,),
        distinctness_matrix=((0.0, max_gap), (max_gap, 0.0)),
        passed=passed,
    )
