"""sawlab: self-avoiding walks on quasi-transitive graphs.

Exact enumeration of SAW counts and displacement statistics, graph
builders for lattices, cylinders, free products, and Cayley graphs of
amalgamated free products and HNN extensions via normal forms, cut-set
pattern events with restricted count tables, walk surgery, and a
dimerization sampler.
"""

__version__ = "0.1.0"

from .errors import SawLabError
from .graph import (
    BallGraph,
    ComponentReport,
    GraphOracle,
    ball,
    components_after_removal,
    distance,
    distance_labels,
)
from .lattices import build_cylinder, build_hexagonal_lattice, build_square_lattice
from .freeprod import build_free_product, complete_factor, cycle_factor, graph_factor
from .groups import AmalgamPresentation, FiniteGroup, HnnPresentation
from .cayley import (
    cayley_oracle,
    glued_amalgam_graph,
    separation_test,
)
from .saw import (
    CountTable,
    DisplacementStats,
    MuBounds,
    Walk,
    count_walks,
    count_walks_parallel,
    displacement_stats,
    enumerate_walks,
    fit_displacement_exponent,
    mu_bounds,
)
from .patterns import (
    BRegime,
    CutSet,
    EventKind,
    EventRecord,
    count_b,
    count_restricted,
    detect_events,
    validate_cutset,
)
from .surgery import (
    SurgeryPlan,
    SurgeryStep,
    iterated_surgery,
    single_surgery,
    verify_saw,
)
from .sampler import SampleRun, dimerize, estimate_speed, sample_walks
