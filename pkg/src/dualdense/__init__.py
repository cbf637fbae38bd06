"""Top-k overlapping weighted densest connected subgraphs in dual networks."""

from .alignment import AlignmentConfig, SeedPairs, build_alignment_graph, physical_distances_within, \
    verify_physical_connectivity
from .errors import ConfigError, DualDenseError, ExhaustedError, FormatError, GraphError
from .evaluation import EvalReport, evaluate, f1
from .graph import DualNetwork, UnweightedGraph, WeightedGraph, bfs_distances, connected_components, \
    density, induced_subgraph, is_connected, vol
from .iwds import MiningConfig, SubgraphSet, coverage, iwds_mine, objective, pair_distance
from .peeling import PeelCandidate, PeelSequence, greedy_densest, peel_sequence, v_greedy, v_greedy_ranked
from .synth import PlantedInstance, SynthConfig, apply_noise, generate

__version__ = "0.1.0"
