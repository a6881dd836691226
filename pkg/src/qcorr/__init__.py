"""Tools for deciding whether local quantum channels create quantum correlation."""

from .channels import (
    ChannelClass,
    KrausChannel,
    amplitude_damping,
    apply,
    conjugate_channel,
    dephasing,
    depolarizing,
    extend_on_B,
    is_completely_decohering,
    is_mixing,
    mixture_of_unitaries,
    qutrit_mixing_channel,
    random_channel,
    random_unital_channel,
)
from .correlation import (
    OptimizationSettings,
    basis_from_parameters,
    one_way_deficit,
    post_measurement_state,
    quantum_discord,
    zero_discord_separable_check,
)
from .dynamics import (
    LindbladGenerator,
    amplitude_damping_generator,
    build_superoperator,
    discord_trajectory,
    evolve,
    preserves_classicality,
)
from .states import (
    ClassicalQuantumEnsemble,
    assemble_cq_state,
    conditional_entropy,
    random_density_matrix,
    random_pure_ket,
    von_neumann_entropy,
)
from .teleportation import max_singlet_fraction, msf_after_channel, xi_operator
from .theorem import classify_qubit_channel, find_witness, qutrit_counterexample, verify_theorem1

__version__ = "0.1.0"
