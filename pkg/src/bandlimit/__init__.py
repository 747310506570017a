"""bandlimit: constructive sampling and differentiation for bandlimited
signals, with operator-group extensions and a discrete-Hilbert-transform
instance."""

__version__ = "0.1.0"

from .errors import (
    QuadratureError,
    ReconstructionUnsoundError,
    ToleranceError,
    TruncationError,
)
from .sinckernel import (
    CoeffTable,
    boas_coefficient,
    boas_coefficient_grid,
    coefficient_table,
    coefficient_tail_bound,
    sinc,
    sinc_derivative,
    sinc_derivative_grid,
    zero_sum_residual,
)
from .sampling import (
    BandlimitedFn,
    QuadratureSpec,
    UniformSamples,
    fejer_regularize,
    fejer_transform_pair,
    make_reference,
    poisson_residual,
    riesz_trig_derivative,
    valiron_tschakaloff_eval,
    wks_eval,
    wks_tail_bound,
)
from .boas import (
    bernstein_ratio,
    boas_derivative,
    boas_derivative_fast,
    truncation_halfwidth,
)
from .inequalities import (
    FavardConstant,
    discrete_norm,
    embedding_constant,
    favard_constant,
    lks_check,
    lks_constant,
    plancherel_polya_check,
)
from .grouporbit import (
    BernsteinVector,
    GroupInstance,
    OrbitSamples,
    exponential_type,
    group_boas,
    orbit_reconstruct,
    orbit_vt,
    recover_initial,
    rotation_instance,
)
from .dht import (
    SeqWindow,
    dht_instance,
    dht_orbit_reconstruct,
    dht_power,
    dht_vt,
    hilbert_apply,
    hilbert_group,
    integer_orbit,
    pairing_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
