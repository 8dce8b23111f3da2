"""Numerical verification toolkit for Cullen-regular quaternionic functions.

The package provides exact quaternion arithmetic with batched numpy
components, truncated Taylor jets for derivative-free differentiation, the
left Fueter and Cullen operators in Cartesian and spherical form, a catalog
of test functions with known regularity status, slice decompositions and
residual checkers for the structure theorems, and hypersurface quadrature
for the integral characterization.  The ``quatreg`` command line wraps it
all into reproducible batch suites.

Set QUATREG_THREADS to cap the BLAS thread pools; it is applied before
numpy is first imported by this package.
"""

import os as _os

_threads = _os.environ.get("QUATREG_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)
del _os, _threads

from .errors import (QuatRegError, OnRealAxis, ZeroDivisor, DegenerateChart,
                     DomainError, OrderTooHigh, BasisMismatch, IndexTooDeep,
                     TouchesRealAxis, UnknownFunction, BadParams, ConfigError)
from .quaternion import (Quaternion, SphericalPoint, SampleDomain,
                         UNRESTRICTED, iota_of, to_spherical, from_spherical)
from .jets import RJet, QJet
from .operators import (OperatorResult, SphericalFrame, spherical_frame,
                        cartesian_seed, angular_jet, fueter_of_jet,
                        fueter_left, fueter_left_spherical, cullen_left,
                        angular_derivative, laplacian, fueter_laplacian,
                        evaluate_operator)
from .catalog import (QFunction, catalog_get, from_string, default_inventory,
                      inventory_ids, product, iota_times, over_r2,
                      parse_quaternion_literal)
from .regularity import (SliceParts, slice_parts, lemma1_residual,
                         TheoremOneReport, theorem1_residuals,
                         HyperholoReport, hyperholomorphy_residuals,
                         hyperholomorphy_report, RegularityVerdict,
                         regularity_verdict, IotaComposeVerdict,
                         iota_compose_regularity)
from .integral import (SurfaceNode, Hypersurface, sphere3,
                       surface_integral_left, volume_integral, divergence,
                       gauss_residual, gauss_report, minus_two_v_over_r,
                       TheoremTwoReport, theorem2_report, theorem2_residual,
                       GeneralizedVerdict, generalized_regularity_test,
                       parse_surface, standard_family)
from .cli import SuiteConfig, run_suite, list_catalog, main

__version__ = "0.1.0"

__all__ = [
    "QuatRegError", "OnRealAxis", "ZeroDivisor", "DegenerateChart",
    "DomainError", "OrderTooHigh", "BasisMismatch", "IndexTooDeep",
    "TouchesRealAxis", "UnknownFunction", "BadParams", "ConfigError",
    "Quaternion", "SphericalPoint", "SampleDomain", "UNRESTRICTED",
    "iota_of", "to_spherical", "from_spherical",
    "RJet", "QJet",
    "OperatorResult", "SphericalFrame", "spherical_frame", "cartesian_seed",
    "angular_jet", "fueter_of_jet", "fueter_left", "fueter_left_spherical",
    "cullen_left", "angular_derivative", "laplacian", "fueter_laplacian",
    "evaluate_operator",
    "QFunction", "catalog_get", "from_string", "default_inventory",
    "inventory_ids", "product", "iota_times", "over_r2",
    "parse_quaternion_literal",
    "SliceParts", "slice_parts", "lemma1_residual", "TheoremOneReport",
    "theorem1_residuals", "HyperholoReport", "hyperholomorphy_residuals",
    "hyperholomorphy_report", "RegularityVerdict", "regularity_verdict",
    "IotaComposeVerdict", "iota_compose_regularity",
    "SurfaceNode", "Hypersurface", "sphere3", "surface_integral_left",
    "volume_integral", "divergence", "gauss_residual", "gauss_report",
    "minus_two_v_over_r", "TheoremTwoReport", "theorem2_report",
    "theorem2_residual", "GeneralizedVerdict", "generalized_regularity_test",
    "parse_surface", "standard_family",
    "SuiteConfig", "run_suite", "list_catalog", "main",
    "__version__",
]
