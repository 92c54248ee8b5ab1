"""Finite groupoids, their convolution Hopf algebroids and spectral reconstruction."""

from .algebroid import (
    HopfAlgebroid,
    check_bialgebroid,
    check_hopf,
    check_principal_algebroid,
    convolution_algebroid,
    scramble_algebroid,
)
from .bimodule import (
    PrincipalBimodule,
    check_preprincipal,
    check_principal_bimodule,
    convolution_bimodule,
    find_bimodule_iso,
    omega_iso,
    scramble_bimodule,
    tensor_bimodules,
)
from .generators import random_bibundle, random_groupoid
from .groupoid import (
    FiniteGroupoid,
    PrincipalBibundle,
    find_equivariant_iso,
    identity_bibundle,
    tensor_bibundles,
    validate_bibundle,
    validate_groupoid,
)
from .report import Report
from .spectral import (
    check_locally_grouplike_algebroid,
    check_locally_grouplike_bimodule,
    grouplikes,
    localize,
    phi_iso,
    psi_iso,
    roundtrip,
    spectral_bundle,
    spectral_groupoid,
    theta_star,
)

__version__ = "0.1.0"
