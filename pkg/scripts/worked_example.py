"""Trace the level-set construction on a 3-element chain and print every stage."""

from isoapprox import GroundFunction, approximate_normalized, poset_from_covers, upset_generators
from isoapprox.cone import node_count
from isoapprox.rational import fmt


def show(vals):
    return "(" + ", ".join(fmt(v) for v in vals) + ")"


def main():
    P = poset_from_covers(3, [(0, 1), (1, 2)], ["a", "b", "c"])
    S = upset_generators(P)
    f = GroundFunction.of([0, "1/2", 1])
    rep = approximate_normalized(P, S, f, 2)
    print(f"target f = {show(f)}, n = {rep.n}")
    for lv in rep.levels:
        print(f"level {lv.i}: K = {list(lv.K)}, L = {list(lv.L)}")
        for st in lv.trace.steps:
            print(f"  y = {st.y}: cover of K {st.cover}, k = {st.k}, g_y = {show(st.g_values)}, "
                  f"ramp from {fmt(st.threshold)} -> {show(st.f_values)}")
        print(f"  cover of L {lv.trace.cover}, l = {lv.trace.l}, g = {show(lv.trace.g_values)}")
        print(f"  f_{lv.i} = {show(lv.values)}")
    print(f"F = {show(rep.F_values)}, error = {fmt(rep.error)}, bound = {fmt(rep.bound)}")
    print(f"certificate: {node_count(rep.F_expr)} nodes")


if __name__ == "__main__":
    main()
