"""Greedy allocation followed by slicing, tiling or a pinned LP.

Each result is a certificate: explicit edge weights whose loads are rechecked.
"""

from fractions import Fraction as F

from srrmds import GeneratorSpec, allocate, verify_certificate
from srrmds.srr import hypergraph_of


def show(spec, lam):
    out = allocate(spec, lam)
    print(f"\n({spec.n},{spec.k},{spec.i}) demand {[str(x) for x in lam]}: {out.to_json()['method']}")
    if not out.feasible:
        y = out.certificate.label_weights
        print("   infeasible; dual weights on objects:", [str(x) for x in y])
        return
    assert verify_certificate(hypergraph_of(spec), out)
    print("   loads:", " ".join(str(x) for x in out.vertex_loads))
    if out.slice_ledger:
        for s in out.slice_ledger.slices:
            print(f"   slice over {len(s.columns)} columns, alpha {s.alpha}, capacity {s.capacity}")
        print("   budget:", out.slice_ledger.budget)


six = GeneratorSpec(6, 3, 3)
show(six, [F(23, 10), F(4, 5), F(3, 10)])
show(six, [F(231, 100), F(4, 5), F(3, 10)])
show(GeneratorSpec(5, 3, 3), [F(19, 10), F(3, 5), F(1, 2)])
show(GeneratorSpec(4, 3, 2), [F(5, 4), 0, F(1, 2)])
show(GeneratorSpec(3, 3, 3), [1, 1, 1])
