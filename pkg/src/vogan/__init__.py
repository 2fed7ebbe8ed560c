"""Combinatorics of weighted Vogan diagrams and noticed real nilpotent orbits."""

from .classify import (
    NoticedReport,
    RootClass,
    WeightPartition,
    gamma_sum_witness,
    minimality_check,
    node_supports_g2p,
    noticed_report,
    painted_length,
    partition,
    root_weight,
    theorem55_check,
    theta_on_root,
)
from .diagram import DiagramError, Involution, WeightedVoganDiagram, make, parse, render_text, validate
from .equiv import (
    EquivalenceClass,
    applicable_nodes,
    equivalence_class,
    equivalent,
    has_property_p,
    normalize_p,
    operation_a,
)
from .rootsys import DynkinDiagram, SimpleType, cartan_matrix, diagram_involutions, positive_roots, root_length
from .sweep import Catalog, classify_all, enumerate_diagrams, export_catalog

__version__ = "0.1.0"
