"""Question-oriented community detection toolkit.

Builds activity-, interaction-, and topic-weighted directed networks on top
of a follower graph, detects overlapping communities on each, and compares
the resulting coverings and their edge-weight structure.
"""

__version__ = "0.1.0"

from .activity import ActivitySeries, batch_coarsen, coarsen
from .communities import (Covering, FitnessParams, covering_stats,
                          detect_communities, read_covering, write_covering)
from .compare import conditional_term, membership_matrix, nmi, nmi_matrix, pair_entropies
from .edgestats import (EdgeClass, classify_edge, conditional_weights,
                        median_low, partition_edges, size_ccdf)
from .infotheory import (EntropyEstimate, WindowSample, lag_sweep,
                         pairwise_transfer_entropy, plugin_entropy,
                         transfer_entropy, window_samples)
from .ingest import (Event, EventLog, FilterReport, InfoEventCounts,
                     StructuralGraph, count_information_events, filter_active,
                     giant_scc, parse_events, read_events, read_follow_edges,
                     write_follow_edges)
from .synth import PlantedTruth, SynthConfig, generate
from .weighting import (HashtagVector, WeightedDigraph, cosine,
                        hashtag_similarity_weights, hashtag_tfidf_vectors,
                        mention_retweet_weights, mention_share_weights,
                        orphans, retweet_share_weights, structural_weights,
                        transfer_entropy_weights)

__all__ = [
    "ActivitySeries", "Covering", "EdgeClass", "EntropyEstimate", "Event",
    "EventLog", "FilterReport", "FitnessParams", "HashtagVector",
    "InfoEventCounts", "PlantedTruth", "StructuralGraph", "SynthConfig",
    "WeightedDigraph", "WindowSample", "batch_coarsen", "classify_edge",
    "coarsen", "conditional_term", "conditional_weights",
    "count_information_events", "cosine", "covering_stats",
    "detect_communities", "filter_active", "generate", "giant_scc",
    "hashtag_similarity_weights", "hashtag_tfidf_vectors", "lag_sweep",
    "median_low", "membership_matrix", "mention_retweet_weights",
    "mention_share_weights", "nmi", "nmi_matrix", "orphans",
    "pair_entropies", "pairwise_transfer_entropy", "parse_events",
    "partition_edges", "plugin_entropy", "read_covering", "read_events",
    "read_follow_edges", "retweet_share_weights", "size_ccdf",
    "structural_weights", "transfer_entropy", "transfer_entropy_weights",
    "window_samples", "write_covering", "write_follow_edges",
]
