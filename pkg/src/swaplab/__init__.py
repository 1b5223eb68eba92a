"""swaplab: pointer-measurement simulation and outcome-swap symmetry certification."""

__version__ = "0.1.0"

from .linalg import (  # noqa: E402
    ComplexVector,
    DenseOperator,
    DimensionError,
    KindError,
    NumericalError,
    commutator_norm,
    hermitian_exponential,
    overlap,
    random_unitary,
    tensor_product,
    unitarity_defect,
)
from .measurement import (  # noqa: E402
    BranchReadout,
    MeasurementSetup,
    ObservableSpec,
    PointerGrid,
    evolve,
    interaction_hamiltonian,
    make_pointer_grid,
    readout,
    ready_state,
    translation_map,
)
from .symmetry import (  # noqa: E402
    GeometricDiagonalModel,
    SwapCertificate,
    SwapTolerances,
    certify_lemma1,
    certify_lemma2,
    parity_swap,
    parity_swap_momentum,
    scaling_swap,
)
from .isomorphism import (  # noqa: E402
    EvolutionTriple,
    IsomorphismReport,
    Witness,
    basis_transport_check,
    check_isomorphism,
    distinctness_witness,
)
from .scenario import (  # noqa: E402
    ScenarioConfig,
    ScenarioReport,
    run_classical_level,
    run_multiworld,
    run_prince_pauper,
)
from .config import ConfigError, RunConfig, parse_config, serialize_config  # noqa: E402
from .reporting import emit_distribution_csv, emit_report  # noqa: E402
