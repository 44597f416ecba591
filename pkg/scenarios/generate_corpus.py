"""Write the randomized scenario corpus to corpus.scn next to this file.

The seed below is the only source of randomness; rerunning reproduces the
file byte for byte.
"""

import sys
from pathlib import Path

from lcitor.corpus import linear_pair_corpus, self_intersection_corpus
from lcitor.ring import format_polynomial

SEED = 20240517


def emit(seed: int = SEED) -> str:
    out = [f"# generated by generate_corpus.py, seed {seed}", "field Q", "vars x y z w", f"seed {seed}"]
    # self-intersection corpus (rings of 2..4 variables embed in x y z w)
    for i, fs in enumerate(self_intersection_corpus(seed + 2)):
        out.append(f"ideal Y{i} = [{', '.join(format_polynomial(f) for f in fs)}]")
        out.append(f"check self-check Y{i} --degree-bound 8")
    for i, (g1, g2) in enumerate(linear_pair_corpus(seed + 3)):
        out.append(f"ideal A{i} = [{', '.join(format_polynomial(f) for f in g1)}]")
        out.append(f"ideal B{i} = [{', '.join(format_polynomial(f) for f in g2)}]")
        out.append(f"instance pair{i} = {{A{i}, B{i}}}")
        out.append(f"check excess-check pair{i} --degree-bound 8")
    return "\n".join(out) + "\n"


if __name__ == "__main__":
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else SEED
    path = Path(__file__).with_name("corpus.scn")
    path.write_text(emit(seed))
    print(f"wrote {path}")
