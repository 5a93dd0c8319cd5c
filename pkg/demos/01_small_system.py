"""Two objects on four servers, both objects stored once in plain form.

Builds the generator, lists the recovery hypergraph, and checks two different
fractional matchings that serve the same demand.
"""

from fractions import Fraction as F

from srrmds import GeneratorSpec, build_generator, build_hypergraph, matching_number, vertex_cover_number
from srrmds.hypergraph import permuted, servable_vector, vertex_loads

spec = GeneratorSpec(n=4, k=2, i=2)
g = build_generator(spec)
print(f"generator over GF({spec.q}):")
for row in g.matrix.to_rows():
    print("  ", row)

h = build_hypergraph(g)
for e in h.edges:
    print(f"edge {e.id + 1}: object {e.label}, vertices {[v + 1 for v in e.vertices]} ({e.kind.value})")

# reference ordering: each auxiliary vertex right after its systematic column
h = permuted(h, [0, 4, 2, 3, 1, 5], [0, 5, 6, 3, 7, 1, 2, 4])
print("A =")
print(h.A)
print("S^T =")
print(h.S.T)

for w in ([F(1), 0, 0, F(1, 2), 0, 0, 0, F(3, 4)], [F(1, 2), 0, F(1, 2), F(1, 2), 0, F(1, 2), 0, F(1, 4)]):
    lam = servable_vector(h, w)
    print("serves", [str(x) for x in lam], "with max load", max(vertex_loads(h, w)))

nu, tau = matching_number(h.A), vertex_cover_number(h.A)
print(f"matching number {nu.value}, vertex cover number {tau.value}")
print("one optimal cover:", [str(x) for x in tau.witness])
