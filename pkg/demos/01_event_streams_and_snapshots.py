"""
Temporal edge streams and snapshots
===================================

The input to everything in linkdecay is an *event stream*: one line per
edge operation, ``src<TAB>dst<TAB>sign<TAB>time``, where sign +1 adds a
directed edge and -1 removes it.  This demo walks the bundled toy
stream -- a miniature hyperlink network about swimming -- through
parsing, replaying, and snapshotting.
"""

import io

import numpy as np

from linkdecay import read_events, snapshot_at, swim_surf_events

# ---------------------------------------------------------------------------
# The bundled fixture: 7 undirected ties stored as 14 directed edges, all
# added at t=0, plus one deletion at t=80 (the weak "swim <-> surf" bridge
# between the water-sports cluster and the search-engine cluster).

tel = swim_surf_events()
print(f"stream: {len(tel)} events over {tel.node_count} nodes, "
      f"t = {tel.time_first} .. {tel.time_last}")
for ev in tel.events:
    mark = "+" if ev.sign > 0 else "-"
    print(f"  {mark} {tel.node_ids[ev.src]:8s} -> {tel.node_ids[ev.dst]:8s}  "
          f"t={ev.time}")

# ---------------------------------------------------------------------------
# A snapshot replays every event with time <= t into a static graph.
# Before the deletion the bridge is present; afterwards it is gone.

for t in (75, 80):
    g = snapshot_at(tel, t)
    swim, surf = tel.node_ids.index("swim"), tel.node_ids.index("surf")
    print(f"\nsnapshot at t={t}: {len(g.edges())} directed edges; "
          f"swim->surf present: {g.has_edge(swim, surf)}")
    water = tel.node_ids.index("water")
    names = [tel.node_ids[v] for v in g.neighbors(water)]
    print(f"  neighbors of 'water': {names}")
    print(f"  degrees of 'water': out={g.degree(water, 'out')} "
          f"in={g.degree(water, 'in')} total={g.degree(water, 'total')}")

# ---------------------------------------------------------------------------
# Round trip: writing re-emits the stream in canonical form (tab-separated,
# explicit +1/-1 signs, time-sorted), and parsing it back is lossless.

buffer = io.StringIO()
tel.write(buffer)
text = buffer.getvalue()
print(f"\ncanonical serialization, first three lines of {len(text.splitlines())}:")
for line in text.splitlines()[:3]:
    print(f"  {line!r}")

again = read_events(io.StringIO(text))
print("round trip preserves arrays:",
      np.array_equal(again.src, tel.src) and np.array_equal(again.time, tel.time))

# Node tokens are compacted to integer indices in first-seen order; the
# mapping travels with the stream.
print(f"token -> index: {dict(zip(tel.node_ids, range(tel.node_count)))}")
