"""Generalized friendship paradox analysis for attributed networks."""

__version__ = "0.1.0"

from .errors import BindingError, DomainError, GFPError, GraphError, ParseError
from .graph import (AttributeTable, BindingReport, Graph, build_graph, degree_table,
                    induced_subgraph, validate)
from .ingest import (AuthorProfile, CoauthorshipNetwork, PublicationRecord, load_records,
                     project_coauthorship)
from .metrics import (NodeEvaluation, ParadoxGrid, ParadoxReport, average_paradox_probability,
                      bin_edges, characteristic_assortativity, evaluate_nodes, gfp_report,
                      neighbor_average, paradox_holds, paradox_probability_grid,
                      pearson_degree_correlation)
from .sampling import (GroupSummary, SampleGroups, ccdf, distribution_summary, group_summary,
                       sample_groups, snowball_sample)
from .synthesis import (SynthesisSpec, barabasi_albert_graph, configuration_graph,
                        erdos_renyi_graph, generate_graph, is_graphical, ring_graph,
                        synthesize_correlated)
