"""Three string calculi over {0, 1}: which strings and negations do they prove?"""
import itertools

from zxmultiway.systems import StringSystem, check_complete_consistent, generated_strings

CALCULI = ["1->01,0->10", "1->01,0->10,01->00", "1->01,0->10,1->11"]


def main():
    for rules in CALCULI:
        system = StringSystem.parse(rules)
        gen = generated_strings(system, "1", 10)
        rep = check_complete_consistent(system, "1", 12, 4)
        print(f"{rules}")
        print(f"  theorems within 10 steps: {len(gen)}")
        print(f"  111 or 000 proved: {'111' in gen or '000' in gen}")
        print(f"  consistent: {rep.consistent}  complete up to length 4: {rep.complete}")
        if rep.both:
            print(f"  proves both s and not-s for: {sorted(rep.both)[:6]}")
    short = ["".join(p) for p in itertools.product("01", repeat=3)]
    gen = generated_strings(StringSystem.parse(CALCULI[2]), "1", 12)
    print("length-3 theorems of the last calculus:", [s for s in short if s in gen])


if __name__ == "__main__":
    main()
