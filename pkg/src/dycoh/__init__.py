"""Exact computation of Davydov-Yetter cohomology for finite-dimensional
Hopf algebras, with the ``B_k`` family built in."""

__version__ = "0.1.0"

from .exactlin import Mat, kernel_basis, kron, rank, solve_in_span
from .hopf import (
    AxiomReport,
    HopfAlgebra,
    check_hopf_axioms,
    cointegral_search,
    cyclic_group_algebra,
    dual_hopf,
    iterated_coproduct,
)
from .rep import (
    Representation,
    coadjoint_power_module,
    dinat_component,
    dual_module,
    hom_space,
    standard_module,
    tensor_module,
)
from .double import (
    DHModule,
    ZCoefficient,
    check_zmodule,
    coreg_coefficient,
    drinfeld_double,
    halfbraiding_from_beta,
    trivial_coefficient,
    zmodule_to_dmodule,
)
from .dycomplex import (
    CochainComplex,
    CohomologyTable,
    bar_complex,
    cohomology_dims,
    dy_complex,
    g_exactness_probe,
    hochschild_complex,
)
from .bk import (
    build_bk,
    dbk_relations,
    g_projectivity_check,
    koszul_resolution,
    named_module,
    resolution_cohomology,
    verify_decompositions,
)
