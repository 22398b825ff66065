"""Branch pairs, causal graphs and branchial slices for a few hypergraph rules."""
from zxmultiway.multiway import (branchial, causal_graph, check_causal_invariance,
                                 check_confluence, evolve)
from zxmultiway.systems import SetSystem

GROWTH = "{{x,y}}->{{x,y},{y,z}}"
JOIN = "{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}"
LOOPS = "{{x,y},{y,z}}->{{w,y},{y,w},{x,w}}"


def main():
    s = SetSystem.parse(GROWTH)
    rep = check_confluence(s, [SetSystem.parse_state("{{0,1}}")], 3)
    print(f"{GROWTH}: {rep.verdict}, {rep.pairs_checked} branch pairs, "
          f"max join distance {rep.max_join_distance}")

    s = SetSystem.parse(JOIN)
    rep = check_causal_invariance(s, SetSystem.parse_state("{{1,2},{3,2}}"), 3)
    print(f"{JOIN}: {rep.verdict} ({rep.paths} paths, {rep.classes} causal-graph class)")

    s = SetSystem.parse(LOOPS)
    mw = evolve(s, [SetSystem.parse_state("{{0,0},{0,0}}")], 3)
    cg = causal_graph(mw, reduce=True)
    print(f"{LOOPS}: {len(mw.states)} states, {len(mw.events)} events, "
          f"{len(cg.edges)} causal edges after reduction")
    for t in range(4):
        bg = branchial(mw, t)
        print(f"  slice {t}: {len(bg.vertices)} states, {len(bg.edges)} branchial edges, "
              f"connected={bg.is_connected()}")


if __name__ == "__main__":
    main()
