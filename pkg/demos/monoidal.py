"""Rulial composition against the monoidal product on small ZX-diagrams.

Side (i) rewrites a diagram under both the Z- and X-identity rules; side (ii)
rewrites the diagram stacked on its colour inverse under the Z rule alone.
"""
import sys

from zxmultiway.rulial import monoidal_experiment, monoidal_tier, sample_tier
from zxmultiway.zx.diagram import parse

TWO_SPIDER = "X[x,0,1,0] ⊗ Z[z,1,2,0] ⊗ W[x,z] ⊗ W[z,o1] ⊗ W[z,o2]"


def main(n=int(sys.argv[1]) if len(sys.argv) > 1 else 10):
    rep = monoidal_experiment(parse(TWO_SPIDER), steps=2)
    print(f"two-spider: raw {rep.raw_states} iso={rep.raw_isomorphic}, "
          f"quotient {rep.quotient_states} iso={rep.quotient_isomorphic}")
    for k in (1, 2):
        diagrams = monoidal_tier(k) if k == 1 else sample_tier(k, n, seed=0)
        reps = [monoidal_experiment(d, steps=2) for d in diagrams]
        raw = sum(r.raw_isomorphic for r in reps)
        ok = sum(r.passed for r in reps)
        print(f"tier {k}: {ok}/{len(reps)} pass modulo the skeleton quotient, {raw} raw")


if __name__ == "__main__":
    main()
