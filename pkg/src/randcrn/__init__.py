"""Random binary reaction networks: exact deficiency, block-model sampling and
the deficiency-zero threshold."""

from .deficiency import (
    DeficiencyReport,
    deficiency,
    has_deficiency_zero,
    is_weakly_reversible,
    linkage_classes,
    project,
    quick_positive_deficiency,
    stoich_rank,
)
from .model import (
    ZERO,
    Complex,
    EdgeClass,
    Reaction,
    ReactionNetwork,
    canonicalize_complex,
    classify_edge,
    edge_class_size,
    reaction_vector,
    total_complex_count,
)
from .netio import format_network, parse_network
from .sbm import Alpha, BlockModelParams, edge_probability, edge_unrank, expected_counts, sample_network
from .threshold import Regime, classify_regime, threshold_exponent

__version__ = "0.1.0"
