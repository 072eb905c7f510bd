"""Subquadratic triad census for large sparse directed graphs."""

from .errors import (CensusOverflowError, ConsistencyError, EmptyGraphError, ParseError,
                     PipelineError, RecordRangeError, ScratchCapacityError,
                     TriadCensusError, VertexRangeError)
from .graph import (CrsAdjacency, Digraph, build_digraph, degree_stats, is_edge,
                    is_neighbour, neighbour_set_union)
from .ingest import EdgeListDoc, finalize, parse_edgelist, parse_pajek, read_graph, write_pajek
from .parallel import (ATOMIC, LOCAL, ExecConfig, QueueStats, TimingBreakdown,
                       census_parallel, merge_census, timed_pipeline)
from .partition import (NONUNIFORM, UNIFORM, TaskQueuePlan, enumerate_canonical_dyads,
                        plan_nonuniform, plan_queues, plan_uniform, queue_scratch_sizes,
                        threshold_for_queues)
from .synthetic import generate_synthetic, powerlaw_arcs, random_arcs
from .triads import (CLASS_LABELS, ISO16, NONISO64, CensusArray, DyadInfo, TriadClassifier,
                     census_bruteforce, census_sequential, derive_classifier, null_count,
                     triad_code)
from .estimator import TriadCensus

__version__ = "0.1.0"
