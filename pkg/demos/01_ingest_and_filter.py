"""Walk through ingestion: events in, filtered follow graph out.

Synthesizes a small dataset, then replays the standard preparation steps:
count each user's incoming and outgoing information events, drop users below
the activity threshold, and keep the giant strongly connected component.
"""

from qocd import (SynthConfig, count_information_events, filter_active,
                  generate, giant_scc)

log, graph, truth = generate(SynthConfig(
    nodes=60, communities=4, bins=400, p_in=0.4, p_out=0.05,
    rho=0.1, epsilon=0.3, mention_events=9, retweet_events=9, seed=42))
print(f"raw network: {len(graph.nodes)} users, {len(graph.edges)} follow edges")
print(f"event log: {len(log)} events "
      f"({sum(1 for e in log if e.kind == 'post')} posts, "
      f"{sum(1 for e in log if e.kind == 'mention')} mentions, "
      f"{sum(1 for e in log if e.kind == 'retweet')} retweets)")

# an information event is an in-network mention or retweet; each one is
# outgoing for the user information left and incoming for the receiver
counts = count_information_events(log, graph)
busiest = max(graph.nodes, key=lambda u: sum(counts.for_user(u)))
print(f"busiest user {busiest}: outgoing/incoming = {counts.for_user(busiest)}")

# users need a minimum of both kinds to stay; then keep the giant SCC
active, active_report = filter_active(graph, counts, threshold=9)
print(f"activity filter (>=9 of each): kept {len(active.nodes)}, "
      f"removed {len(active_report.removed_inactive)}")

final, scc_report = giant_scc(active)
print(f"giant strongly connected component: {len(final.nodes)} users, "
      f"{len(final.edges)} edges "
      f"({len(scc_report.removed_not_in_gscc)} peripheral users dropped)")
