"""Root-NOT as a weighted multiway system, then completion of two components."""
from zxmultiway.exact import ExactScalar
from zxmultiway.multiway import CompletedSystem, complete, evolve
from zxmultiway.rulial import PLUS, ROOT_NOT, matrix_power_apply, quantum_toy, weakly_connected
from zxmultiway.zx.diagram import color_invert, parse
from zxmultiway.zx.rules import identity_rule
from zxmultiway.zx.system import ZXSystem


def main():
    one, zero = ExactScalar(1), ExactScalar(0)
    run = quantum_toy(ROOT_NOT, [one, zero], 4)
    for t, amps in enumerate(run.amplitudes):
        same = amps == matrix_power_apply(ROOT_NOT, [one, zero], t)
        print(f"t={t}: {[complex(a) for a in amps]} matches matrix power: {same}")
    print("|+> is fixed:", quantum_toy(ROOT_NOT, PLUS, 3).amplitudes[3] == PLUS)

    d = parse("X[x,0,1,0] ⊗ Z[z,1,2,0] ⊗ W[x,z] ⊗ W[z,o1] ⊗ W[z,o2]")
    system = ZXSystem([identity_rule("Z"), identity_rule("X")])
    init = [d, color_invert(d)]
    added = complete(system, init, 1)
    before = weakly_connected(evolve(system, init, 2, mode="states"))
    after = weakly_connected(evolve(CompletedSystem(system, added), init, 2, mode="states"))
    print(f"completion added {len(added)} rules; components {before} -> {after}")
    for lhs, rhs in added:
        print(f"  {lhs.canonical_key()}  =>  {rhs.canonical_key()}")


if __name__ == "__main__":
    main()
