"""
Scoring edges for decay
=======================

A decay score ranks *existing* edges by how likely they are to disappear.
linkdecay offers two constructions on top of the classical similarity
measures (preferential attachment, common neighbors, cosine, Jaccard,
Adamic-Adar):

* model ``score``   -- negate the link-prediction score.  Whatever looks
                       least like a link that should form is the best
                       candidate for removal.
* model ``network`` -- evaluate the measure on the complement graph
                       (all the node pairs that are *not* linked), via
                       closed forms that never build that graph.

Both are crossed with four degree combinations (sym / out / in / asym)
controlling which neighbor directions a directed graph contributes.
"""

from linkdecay import (
    ScoreSpec,
    all_specs,
    decay_score,
    link_prediction_score,
    score_batch,
    swim_surf,
    swim_surf_events,
    snapshot_at,
)
from linkdecay.scoring import DegreeCombination, Measure, ScoreModel

g = swim_surf()
names = swim_surf_events().node_ids
swim, surf = names.index("swim"), names.index("surf")
water, beach = names.index("water"), names.index("beach")

# ---------------------------------------------------------------------------
# The bridge edge swim->surf connects two triangles but shares no common
# neighbor with its endpoint -- classic weak tie.  Under the negated-score
# model with common neighbors it gets decay score -0 = 0, the maximum
# possible, while the embedded edge water->beach scores -1.

spec_cn = ScoreSpec(ScoreModel.COMPLEMENT_SCORE, Measure.CN, DegreeCombination.SYM)
print("model 'score', measure cn, combo sym:")
print(f"  swim->surf   {decay_score(g, swim, surf, spec_cn):+g}   (weak tie)")
print(f"  water->beach {decay_score(g, water, beach, spec_cn):+g}   (inside a triangle)")

# The complement-network model tells a different story.  Complement CN
# reduces to n - d1 - d2 + cn, so it sinks edges between well-connected
# nodes: the bridge joins the two highest-degree nodes and its endpoints'
# neighborhoods blanket the whole graph (zero common complement
# neighbors), while the lower-degree water/beach pair keeps three.  The
# two models are genuinely different scorers, not re-scalings.
spec_net = ScoreSpec(ScoreModel.COMPLEMENT_NETWORK, Measure.CN, DegreeCombination.SYM)
print("model 'network', measure cn, combo sym:")
print(f"  swim->surf   {decay_score(g, swim, surf, spec_net):+g}")
print(f"  water->beach {decay_score(g, water, beach, spec_net):+g}")

# ---------------------------------------------------------------------------
# Scores across every measure, both models, sym combo.

print("\nper-measure scores for the bridge vs. an embedded edge (sym combo):")
# (an adad value around 1e-15 is the float residue of its
#  sum-of-differences closed form; exact zero is not promised there)
print(f"  {'measure':8s} {'score model':>24s} {'network model':>24s}")
for measure in Measure:
    row = []
    for model in ScoreModel:
        spec = ScoreSpec(model, measure, DegreeCombination.SYM)
        row.append((decay_score(g, swim, surf, spec),
                    decay_score(g, water, beach, spec)))
    (s_bridge, s_emb), (n_bridge, n_emb) = row
    print(f"  {measure.value:8s} {s_bridge:11.4g} {s_emb:11.4g}  "
          f"{n_bridge:11.4g} {n_emb:11.4g}")

# ---------------------------------------------------------------------------
# score_batch ranks whole edge lists at once; the bridge tops the ranking.

edges = g.edges()
scored = score_batch(g, edges, spec_cn)
best = max(scored, key=lambda e: e.score)
print(f"\ntop decay candidate of all {len(edges)} edges: "
      f"{names[best.src]} -> {names[best.dst]} (score {best.score:g})")

# The negated-score model is exactly the mirror of link prediction:
raw = link_prediction_score(g, swim, surf, Measure.CN, DegreeCombination.SYM)
print(f"duality check: decay {decay_score(g, swim, surf, spec_cn):g} "
      f"== -(link prediction {raw:g})")

# ---------------------------------------------------------------------------
# The full grid is 2 models x 5 measures x 4 combos = 40 scorers.

print(f"\nall_specs() enumerates {len(all_specs())} scorers, e.g. "
      f"{', '.join(str(s) for s in all_specs()[:3])}, ...")
