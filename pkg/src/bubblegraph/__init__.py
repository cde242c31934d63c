"""Linear-time superbubble, snarl and ultrabubble detection, with brute-force oracles."""

from .connectivity import (BlockCutTree, SpqrTree, block_cut_tree, expansion_vertices,
                           spqr_tree)
from .errors import BubbleGraphError, ContractViolation, InputError, UsageError
from .estimators import FeedbackFinder, SnarlFinder, SuperbubbleFinder, UltrabubbleFinder
from .feedback import (FeedbackResult, feedback_arcs_directed,
                       feedback_edges_tipless_bidirected, two_tip_acyclic)
from .graph import (BidirectedEdge, BidirectedGraph, DirectedGraph, VertexSide, as_bidirected,
                    as_directed, side_pair, split, tips, underlying_undirected)
from .io import parse_edge_lists, parse_gfa, read_graph, write_graph
from .snarls import SnarlRepresentation, expand_representation, find_snarl_representation
from .superbubbles import SuperbubbleReport, find_superbubbles
from .ultrabubbles import UltrabubbleReport, find_ultrabubbles

__version__ = "0.1.0"
