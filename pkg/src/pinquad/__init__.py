"""Exact arithmetic for Z/4 quadratic enhancements of surface forms.

The package computes with quadratic refinements of the mod-2 intersection
form of a closed surface (equivalently, Pin^- structures), their Brown
invariants in Z/8, q-null subspace searches, and the Guillou-Marin
congruence for characteristic surfaces in closed oriented 4-manifolds.
"""
from .brown import GaussSumResult, arf_from_brown, brown_invariant, decode_brown, gauss_sum
from .errors import (
    DegenerateFormError,
    DimensionMismatchError,
    LimitError,
    NotCharacteristicError,
    PinquadError,
    SurgeryObstructionError,
    UnsupportedInputError,
)
from .f2 import (
    F2Matrix,
    F2Vector,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    kernel_basis,
    rank,
    solve,
)
from .forms import (
    BilinearForm,
    Covector,
    Enhancement,
    SurfaceModel,
    crosscap_form,
    direct_sum,
    enumerate_enhancements,
    eval_q,
    hyperbolic_form,
    isotropic_reduction,
    poincare_dual,
    restrict,
    torsor_act,
    value_table,
)
from .fourmanifold import (
    FORM_LIBRARY,
    CharacteristicVector,
    UnimodularForm,
    characteristic_classes_mod2,
    gm_check,
    gm_required_beta,
    is_characteristic,
    parse_form_name,
    signature,
    unimodular_direct_sum,
)
from .vanishing import (
    has_null_lagrangian,
    kernel_vanishing_check,
    max_vanishing_dim,
    vanishing_subspaces,
)

__version__ = "0.1.0"
