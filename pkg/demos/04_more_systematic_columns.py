"""How the region grows as parity columns are swapped for systematic ones."""

from fractions import Fraction as F

from srrmds import GeneratorSpec, membership
from srrmds.srr import inclusion_witness, sum_face_extent

n, k = 12, 3
for i in range(k):
    w = inclusion_witness(n, k, i)
    print(f"i={i}: {[str(x) for x in w]} servable with {i + 1} systematic columns:",
          bool(membership(GeneratorSpec(n, k, i + 1), w)), "| with", i, ":", bool(membership(GeneratorSpec(n, k, i), w)))

# below the corner case (n <= k + i - 2) the face sum = i collapses to a single point
for spec in (GeneratorSpec(3, 3, 3), GeneratorSpec(5, 3, 3)):
    face = sum_face_extent(spec, F(spec.i))
    print(f"({spec.n},{spec.k},{spec.i}) per-object range on sum = {spec.i}:", [(str(a), str(b)) for a, b in face])
