"""Rational loop-group dressing of definite affine spheres.

Builds simple (3-pole) and 6-pole rational twisted loops, applies their
dressing action to the vacuum affine sphere, and verifies the emitted
metrics against soliton tau-function oracles and the Tzitzeica residual.
"""

from .backend import BACKEND
from .core import (
    AffdressError,
    GridSpec,
    ScalarGrid,
    SurfaceGrid,
    det3,
    inv3,
    solve_line_normalize,
)
from .loopgroup import (
    ELLIPTIC,
    EPSILON,
    HYPERBOLIC,
    ProjLine,
    SimpleElement,
    SixPoleElement,
    TwistSpec,
    check_twisted,
    derive_sixpole_line1,
    eval_simple,
    eval_sixpole,
    sigma_twist,
    tau_twist,
)
from .surfaces import (
    AffineInvariants,
    VacuumBase,
    affine_invariants_fd,
    hildebrand_surface,
    real_immersion,
    vacuum_frame,
    vacuum_immersion,
)
from .dressing import (
    Dress3Result,
    Dress6Result,
    dress3_immersion,
    dress3_metric,
    dress6,
    dress6_immersion,
    dress6_metric,
    dressed_frame,
    transport_line3,
)
from .verify import (
    FDSettings,
    SolitonParams,
    compare_grids,
    tau_one_soliton_h,
    tau_two_soliton_h,
    tzitzeica_residual,
    wirtinger,
)

__version__ = "0.1.0"
