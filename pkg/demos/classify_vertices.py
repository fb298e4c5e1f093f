"""
Classifying the alcove vertices of a rank-2 graded system
=========================================================

The so8_g2 datum is a G2 root system graded over the cube roots of
unity.  Its alcove is a triangle, and the three corners carry the
interesting orbits.
"""

import hermann

d = hermann.catalog("so8_g2")
print("datum:", d.name)
print("rank:", d.rank, " grading order:", d.order)

# the walls through a generic interior point: none
bary = hermann.alcove_barycenter(d)
print("barycenter:", tuple(str(c) for c in bary.coeffs))

print()
print("vertex classifications")
for v in hermann.alcove_vertices(d):
    r = hermann.orbit_report(d, v)
    print("  point", tuple(str(c) for c in v.coeffs))
    print("    active system:", r.type_label)
    print("    austere:", r.austere, " minimal:", r.minimal)
    print("    arid*:", r.arid_sufficient, " WR*:", r.weakly_reflective_sufficient)
    print("    |mean curvature|:", hermann.format_interval(r.mean_curvature_norm))

# The A2 corner is the one to look at.  It is not austere (the principal
# curvatures do not cancel in pairs) yet the mean curvature still vanishes
# exactly, and the active roots span, so the orbit is arid and minimal
# without being austere.
print()
print("same table through the face enumeration, interior face included:")
for f in hermann.faces(d):
    rep = f.representative
    r = hermann.orbit_report(d, rep)
    print(" ", f.dimension, tuple(str(c) for c in rep.coeffs), r.type_label,
          "austere=%s" % r.austere)
