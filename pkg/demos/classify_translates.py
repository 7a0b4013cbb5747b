"""Move each representative configuration by a random group element and classify it back.

Prints the recovered class, a conjugator word and the stabilizer's structure.
"""
import argparse
import random

from picard import configurations as cfg
from picard.group import eval_word, group_invariants, parse_word

LETTERS = ("e", "w", "s", "sc", "t")


def random_word(rng, length):
    return " ".join(f"{rng.choice(LETTERS)}^{rng.choice([-2, -1, 1, 2])}" for _ in range(length))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--length", type=int, default=4, help="letters in the random word")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for tag in cfg.STRONGLY_ADMISSIBLE:
        word = random_word(rng, args.length)
        moved = cfg.REPRESENTATIVES[tag].apply(eval_word(word))
        found, g = cfg.classify(moved)
        back = cfg.express_as_word(g)
        assert moved.apply(eval_word(back)) == cfg.REPRESENTATIVES[tag]
        inv = group_invariants(cfg.stabilizer(cfg.REPRESENTATIVES[tag]))
        print(f"{tag.value:5s} moved by [{word}] -> {found.value:5s} via [{back}]  |Stab| = {inv.order}")


if __name__ == "__main__":
    main()
