"""Classical capacities of the generalized amplitude damping channel and of
the GAD queue-channel with waiting-time-dependent decoherence."""

from .channel import (
    BlochVector,
    DensityMatrix,
    GadcParams,
    KrausSet,
    apply_gadc_bloch,
    apply_gadc_density,
    binary_entropy,
    bloch_to_density,
    density_to_bloch,
    ebt_threshold,
    is_entanglement_breaking,
    kraus_operators,
    qubit_entropy,
)
from .holevo import HolevoResult, chi_objective, holevo_fixed_point, holevo_gadc, holevo_symmetric
from .induced import (
    BinaryChannel,
    CapacityResult,
    binary_channel_capacity,
    blahut_arimoto,
    bsc_capacity,
    helstrom_projector,
    induced_gap,
    m1_channel,
    m2_channel,
)
from .queueing import (
    DistributionSpec,
    QueueConfig,
    WaitingTimes,
    gm1_sigma,
    lindley_waits,
    mm1_sojourn_law,
    simulate_queue,
    stationary_laplace,
)
from .queue_capacity import (
    CapacityEstimate,
    DecoherenceModel,
    capacity_series,
    compare_arrival_distributions,
    compare_service_distributions,
    mm1_capacity_closed_form,
    optimize_lambda,
    p_eff,
    per_qubit_capacity,
    queue_capacity_mc,
)

__version__ = "0.1.0"
