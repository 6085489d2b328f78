"""Interior cells of Delta^n x Delta^m and their attachment layers, for n, m <= N."""

import sys

from rigged.lifting import attachment_chain


def main(N=3):
    print(f"{'n':>2} {'m':>2} {'cells':>6}  ok  layers (dim:count)")
    for n in range(N + 1):
        for m in range(N + 1):
            rep = attachment_chain(n, m)
            layers = " ".join(f"{d}:{c}" for d, c in rep.layers)
            print(f"{n:>2} {m:>2} {rep.cells:>6}  {'y' if rep.ok else 'n':>2}  {layers}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
