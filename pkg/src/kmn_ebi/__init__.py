"""Edge-friendly labelings and edge-balanced index sets of K_{m,n}, m odd, n even."""

from .constructions import (
    SwitchSchedule,
    Trajectory,
    build_f,
    build_f_prime,
    build_f_prime_literal,
    constructive_ebi,
    f_prime_defects,
    initialize_shared,
    run_trajectory,
    schedule_from_f,
    schedule_from_f_prime,
)
from .core import (
    STAR,
    EdgeLabeling,
    GraphParams,
    InvalidParams,
    LabelingError,
    PartialLabeling,
    SwitchError,
    SwitchOp,
    VertexId,
    VertexLabel,
    VertexSummary,
    apply_switch,
    derive_partition,
    ebi_index,
    induce_labels,
    is_edge_friendly,
    random_labeling,
)
from .oracle import SearchConfig, StateCapExceeded, canonical_enumerate, naive_enumerate, spot_check
from .theorem import IndexSet, max_index, range_overlap_check, theorem_ebi

__version__ = "0.1.0"
