"""Group-invariant UCP maps: dilations, Radon-Nikodym operators and C*-extremality."""

from ccx._core import (
    CcxError,
    CPMap,
    FiniteGroup,
    FixedPointContext,
    GroupAction,
    StarAlgebra,
    StinespringTriple,
    Tolerances,
    choi_distance,
    conjugation_map,
    covariant_unitaries,
    cstar_combine,
    extend_Einv,
    extremality,
    fixed_point_algebra,
    identity_map,
    linear_extremality_check,
    minimal_dilation,
    random_invariant_ucp,
    restrict_E,
    rn_forward,
    rn_inverse,
    run_cli,
    state_inflation,
    twirl,
    validate_map,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
