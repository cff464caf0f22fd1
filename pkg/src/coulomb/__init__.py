"""Exact Coulomb-branch Hilbert series for quiver gauge theories.

The lattice-sum engine (``monopole``) computes truncated Hilbert series of
Coulomb branches with exact integer coefficients and certified completeness;
``reptheory`` provides independent representation-theoretic oracles for the
same numbers; ``cli`` exposes everything as the ``coulomb`` command.
"""

from .series import SeriesError, TruncatedSeries, s_add, s_coeff, s_geom, s_mul
from .quiver import (
    BalancedComponent,
    Coweight,
    QuiverError,
    QuiverTheory,
    ValidationReport,
    Vertex,
    balanced_vertices,
    canonicalize,
    coweights_in_shell,
    shell_norm,
    validate,
)
from .monopole import (
    Divergent,
    GradingError,
    GradingFunctional,
    GradingSpec,
    assemble_star,
    delta2,
    dressing,
    glue_star,
    minuscule_delta2,
    monopole_series,
)
from .reptheory import (
    PartitionError,
    aj_min_degree,
    aj_series,
    gt_count,
    gt_patterns,
    klein_closed_form,
    klein_lattice,
    klein_lefschetz,
    kostka_foulkes_charge,
    kostka_foulkes_kostant,
    min_orbit_series,
    q_kostant,
)
from .rootdata import RootSystemData, RootSystemError, root_system, weyl_dim, weyl_dim_gl
from .backends import active_backend

__version__ = "0.1.0"

__all__ = [
    "BalancedComponent",
    "Coweight",
    "Divergent",
    "GradingError",
    "GradingFunctional",
    "GradingSpec",
    "PartitionError",
    "QuiverError",
    "QuiverTheory",
    "RootSystemData",
    "RootSystemError",
    "SeriesError",
    "TruncatedSeries",
    "ValidationReport",
    "Vertex",
    "active_backend",
    "aj_min_degree",
    "aj_series",
    "assemble_star",
    "balanced_vertices",
    "canonicalize",
    "coweights_in_shell",
    "delta2",
    "dressing",
    "glue_star",
    "gt_count",
    "gt_patterns",
    "klein_closed_form",
    "klein_lattice",
    "klein_lefschetz",
    "kostka_foulkes_charge",
    "kostka_foulkes_kostant",
    "min_orbit_series",
    "minuscule_delta2",
    "monopole_series",
    "q_kostant",
    "root_system",
    "s_add",
    "s_coeff",
    "s_geom",
    "s_mul",
    "shell_norm",
    "validate",
    "weyl_dim",
    "weyl_dim_gl",
]
