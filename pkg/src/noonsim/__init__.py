"""Two-photon total-angular-momentum-zero states through a helicity-mixing
nanoaperture: preparation, channel, coincidence measurement, tomography and
entanglement metrics."""

from .fock import (
    DensityMatrix,
    Mode,
    StateMixture,
    TwoPhotonState,
    TWO_QUBIT_BASIS,
    UnsupportedModeError,
    apply_single_photon_map,
    as_mixture,
    basis_state,
    compose,
    inner,
    mix,
    state_fidelity,
    to_two_qubit,
)
from .elements import (
    QPlateSpec,
    chain_from_specs,
    element_from_spec,
    hwp,
    jones_vector,
    linear_to_helicity,
    polarizer,
    qplate,
    qwp,
    temporal_overlap,
    wave_plate,
)
from .source import HWP_MINUS, HWP_PLUS, SourceModel, prepare_coherent, prepare_state, spdc_pair
from .aperture import (
    ApertureCoefficients,
    aperture_channel,
    aperture_mixture,
    aperture_pure,
    check_mirror_symmetry,
    jittered_coefficients,
    transmission_probability,
)
from .measurement import (
    CountRecord,
    HomScan,
    MeasurementSetting,
    VisibilityResult,
    coincidence_probability,
    conditioned_two_qubit,
    cross_circular_rate,
    hom_scan,
    sample_counts,
    visibility,
)
from .tomography import (
    BootstrapResult,
    LinearInversionResult,
    MleOptions,
    TomographyResult,
    bootstrap_errors,
    linear_inversion,
    mle_reconstruct,
    predicted_counts,
    standard_settings,
)
from .metrics import (
    MetricReport,
    bell_phi,
    bell_psi,
    concurrence,
    fidelity,
    fidelity_to_pure,
    metric_report,
    negativity,
    partial_transpose,
    purity,
    trace_distance,
)

__version__ = "0.1.0"
