"""Beam-splitter network simulator and coherent-state entanglement toolkit."""

from .coherent import (
    GlauberLabel,
    SU2CoherentLabel,
    SUNCoherentLabel,
    alpha_from_angle,
    contraction_fidelity,
    displacement_state,
    generator_set,
    glauber_truncated,
    su2_coherent,
    su2_overlap,
    su3_coherent,
    su_coherent_closed_form,
    su_coherent_from_zeta,
    xi_from_angles,
)
from .entanglement import (
    BipartitionSpec,
    ConcurrenceReport,
    OverlapVector,
    SuperpositionSpec,
    build_superposition,
    concurrence_mixed_closed,
    concurrence_mixed_report,
    concurrence_pure_closed,
    concurrence_pure_report,
    concurrence_pure_uniform,
    logical_qubit_density,
    mixed_logical_density,
    overlaps_from_angles,
    reduced_pair_density,
    spin_flip_spectrum,
    swapped_superposition,
    uniform_superposition,
    wootters_concurrence,
)
from .fock import (
    DensityMatrix,
    PureState,
    SectorBasis,
    inner_product,
    partial_trace,
    tensor,
    to_density_matrix,
)
from .networks import (
    BeamSplitterSpec,
    ChainTopology,
    KerrSpec,
    NetworkSpec,
    ParallelTopology,
    apply_beam_splitter,
    apply_kerr,
    apply_network,
    network_from_angles,
)

__all__ = [name for name in dir() if not name.startswith("_")]
