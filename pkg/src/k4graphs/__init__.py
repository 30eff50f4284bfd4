"""Combinatorics of the rank-3 tensor model with tetrahedral interaction.

Feynman graphs built from K4 bubbles and a color-0 perfect matching,
their faces and 1/N degree, flip and melonic dipole moves, leading/NLO
recognizers, and exhaustive censuses that check the classification of
the degree-maximizing graphs at desk scale.
"""

from .core import (
    COLORS,
    DegreeValue,
    Face,
    FaceProfile,
    FeynmanGraph,
    GraphError,
    build_graph,
    degree2,
    double_tadpole,
    face_profile,
    faces,
    from_matching,
    from_obj,
    from_text,
    g2,
    is_connected,
    to_obj,
    to_text,
)
from .moves import (
    DipoleSite,
    FlipOutcome,
    faces_on_pair,
    find_dipoles,
    flip,
    insert_dipole,
    is_two_edge_cut,
    reduce_dipole,
    splice,
    split_two_edge_cut,
)
from .classify import (
    CanonicalKey,
    Classification,
    GraphClass,
    are_isomorphic,
    automorphism_count,
    canonical_form,
    classify,
    generate_random_melonic,
    generate_random_nlo,
    is_melonic,
    is_nlo_tadpole,
)
from .census import (
    CensusBudgetError,
    CensusReport,
    census,
    double_factorial,
    enumerate_matchings,
    max_face_classes,
)
from .verify import CheckReport, run_suite

__version__ = "0.1.0"
