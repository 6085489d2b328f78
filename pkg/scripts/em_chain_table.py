"""Stage sizes of the inserter/equifier chain for the built-in monad instances."""

import sys

from rigged.generators import monad_instances
from rigged.inserters import em_chain_demo


def main(max_objects=3):
    for M in monad_instances(max_objects=max_objects):
        rep = em_chain_demo(M)
        stages = "  ".join(f"{s.name}({s.objects},{s.morphisms})" for s in rep.stages)
        print(f"{M.label:<14} marked={len(M.marked)}/{len(M.C.objects)} algebras={rep.algebras:<2} ok={rep.ok}  {stages}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
