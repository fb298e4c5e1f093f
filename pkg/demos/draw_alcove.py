"""
Drawing alcove diagrams
=======================

Rank 1 and 2 data can be rendered to SVG.  Each phase contributes a wall
family with its own stroke and dash pattern; the alcove is the shaded
cell at the origin, and each vertex gets a marker for its strongest
property (square = totally geodesic, diamond = weakly reflective,
disc = austere, open triangle = arid only, small circle = nothing).
"""

import hermann

d = hermann.catalog("so8_g2")
reports = [hermann.orbit_report(d, v) for v in hermann.alcove_vertices(d)]
hermann.render_svg(d, reports, "g2_alcove.svg", width=600)
print("wrote g2_alcove.svg  (%d vertex markers)" % len(reports))

d = hermann.catalog("isotropy", label="BC1", mults={1: 4, 4: 1})
reports = [hermann.orbit_report(d, v) for v in hermann.alcove_vertices(d)]
hermann.render_svg(d, reports, "bc1_alcove.svg")
print("wrote bc1_alcove.svg (%d vertex markers)" % len(reports))

# rank 3 is refused rather than projected
d = hermann.catalog("so_even", p=9, q=7)
try:
    hermann.render_svg(d, [], "nope.svg")
except hermann.RankTooHigh as e:
    print("rank 3 datum:", e)
