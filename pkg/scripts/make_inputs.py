"""Write sample JSON inputs for the CLI into scripts/inputs/."""

from pathlib import Path

from rigged import serialize as ser
from rigged.catkit.category import linear_order, terminal_cat, to_terminal
from rigged.fdelta import chordate, tight_simplex
from rigged.generators import monad_instances
from rigged.sset import boundary, identity_map, std_simplex

OUT = Path(__file__).resolve().parent / "inputs"


def write(name, data):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(ser.dumps(data))
    print(OUT / name)


def main():
    D1 = chordate(std_simplex(1))
    idm = identity_map(D1.loose)
    write("comma_identity.json", {"A": ser.to_dict(D1), "B": ser.to_dict(D1), "C": ser.to_dict(D1),
                                  "f": ser.to_dict(idm), "g": ser.to_dict(idm)})

    # inserter of two maps Delta^0 -> Delta^1 picking 0 and 1; the terminal leg lands on the tight vertex 1
    pt = tight_simplex(0, [0])
    T = tight_simplex(1, [1])
    legs = {"(0)": {"leg": {"assignment": {"(0)": {"base": "(0)", "deg": [0]}}}},
            "(1)": {"leg": {"assignment": {"(0)": {"base": "(1)", "deg": [0]}}}}}
    write("inserter_d1.json", {"n": 1, "terminal": True, "S": ser.to_dict(pt), "T": ser.to_dict(T), "cells": legs})
    write("power_bd1.json", {"weight": "power", "J": ser.to_dict(chordate(boundary(1)[0])), "T": ser.to_dict(T)})

    arrow = linear_order(1)
    p = to_terminal(arrow, terminal_cat())
    for v in ("0", "1"):
        write(f"lift_arrow_{v}.json", {"source": ser.to_dict(arrow), "target": ser.to_dict(terminal_cat()),
                                       "functor": ser.to_dict(p), "anchor": v})
    M = next(M for M in monad_instances() if M.label.startswith("closure") and len(M.C.objects) == 2)
    write("monad_closure.json", ser.monad_to_dict(M))


if __name__ == "__main__":
    main()
