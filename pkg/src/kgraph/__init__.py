"""Finite higher-rank graphs: paths in normal form, minimal common extensions,
bounded aperiodicity checks and standard constructions."""

from .align import MceSet, has_common_extension, is_exhaustive, mce, mce_sets
from .aperiodicity import (
    AperiodicityReport,
    AperiodicPrefix,
    CycleEntries,
    ExhaustedUnknown,
    NoWitnessError,
    RefutedUpToBound,
    Separation,
    StarWitness,
    TheoremViolation,
    UPPath,
    Witnessed,
    build_aperiodic_prefix,
    check_aperiodicity,
    cycle_has_entry,
    cycle_pair_verdicts,
    find_separating_tau,
    find_star_witness,
    satisfies_star,
    separation_from_star,
    shift,
    star_from_aperiodic,
    star_from_separation,
    up_equal,
)
from .constructions import (
    TwistSpec,
    evans_sims,
    flip,
    grid,
    single_vertex_2graph,
    three_graph_example,
    twisted_product,
    two_loop,
)
from .core import (
    Edge,
    InvalidKGraphError,
    KGraph,
    Skeleton,
    SquareRule,
    ValidationReport,
    complete_squares,
    no_sources,
    validate,
    validation_report,
)
from .degree import Degree, degree_join, degree_le, degree_meet
from .io import export_dot, parse, serialize
from .paths import (
    Path,
    PathError,
    compose,
    enumerate_paths,
    enumerate_paths_ending,
    enumerate_paths_upto,
    normalize,
    parse_path,
    segment,
)

__version__ = "0.1.0"
