"""Wave trains and solitons of convex FPU chains.

The library discretises profiles on uniform phase grids, applies the
window-average operator exactly on that class, and iterates the
norm-constrained improvement map until the energy stops growing.  See
the README for the operator identities that make the discrete iteration
inherit the continuum invariants verbatim.
"""

from .averaging import (
    BAR,
    HAT,
    AvgOperator,
    adjoint_check,
    apply_avg,
    average_at_edges,
    averaging_symbol,
    make_operator,
    spectrum_probe,
    spectrum_table,
)
from .energy import EnergyContext, gradient, gradient_pairing_check, harmonic_energy, potential_energy
from .errors import (
    CommensurabilityError,
    DomainTooSmallError,
    FpuWavesError,
    GridMismatchError,
    HatOperatorDomainError,
    IntegrationUnstableError,
    NotGenuinelySuperquadraticError,
    PeriodError,
    PotentialInvariantError,
    PotentialParamsError,
    RadiusExceededError,
    SeedDescriptorError,
    TrivialMinimiserError,
    UnknownPotentialError,
    ZeroGradientError,
)
from .experiments import (
    ContinuationOutcome,
    ContinuationRecord,
    HarmonicRecord,
    SweepOutcome,
    SweepRecord,
    continuation_to_soliton,
    gamma_sweep,
    harmonic_benchmark,
    localization_sweep,
    rescaled_localization_sweep,
)
from .grid import (
    LINE,
    PERIODIC,
    ConeFlags,
    Grid,
    Profile,
    cone_flags,
    embed,
    inner,
    is_even,
    is_nonnegative,
    is_unimodal,
    l2_distance,
    l2_norm,
    load_profile,
    make_grid,
    make_harmonic_sequence,
    make_wcl,
    norm_half_sq,
    sample_function,
    save_profile,
    sup_norm,
    zeros,
)
from .lattice import (
    ChainState,
    chain_energy,
    chain_momentum,
    eval_field,
    integrate,
    rigidity_error,
    seed_chain,
    stable_dt,
    validate_wave,
)
from .potentials import (
    Potential,
    SuperQuadReport,
    builtin,
    check_superquadratic,
    genuine_margin,
    monotonicity_constant,
    normalize,
    rescale_potential,
    simpson_unit_integral,
    validate_potential,
    write_report_json,
)
from .reconstruction import (
    BACKGROUND,
    MEAN,
    Trace,
    WaveField,
    equation_residual,
    reconstruct,
    recover_shape,
    rescale_field,
    rescale_solution,
    trace,
    write_field_csv,
    write_trace_csv,
)
from .solver import (
    CONE_EVEN_UNIMODAL,
    CONE_EVEN_UNIMODAL_NONNEG,
    SolverConfig,
    WaveResult,
    improve,
    residual,
    seed,
    solve,
)

__version__ = "0.1.0"
