"""Command-line front door.

Exit codes: 0 on success, 1 when an invariant check fails, 2 on bad input.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import click

from . import serialize as ser
from .suites import SUITES, RunConfig, run_suite

EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _emit(ctx: click.Context, text: str) -> None:
    cfg: RunConfig = ctx.obj
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        click.echo(text, nl=False)


def _emit_obj(ctx: click.Context, obj, extra: Optional[Dict] = None) -> None:
    cfg: RunConfig = ctx.obj
    if cfg.format == "dot":
        try:
            _emit(ctx, ser.to_dot(obj))
        except TypeError:
            raise InputError("this output has no DOT form; use --format json or text") from None
        return
    data = ser.to_dict(obj) if not isinstance(obj, dict) else obj
    if extra:
        data = {"result": data, **extra}
    if cfg.format == "text":
        _emit(ctx, _text(data))
    else:
        _emit(ctx, ser.dumps(data))


def _text(data: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        out = []
        for key in sorted(data):
            v = data[key]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{key}:\n{_text(v, indent + 1)}")
            else:
                out.append(f"{pad}{key}: {v}\n")
        return "".join(out)
    if isinstance(data, list):
        return "".join(f"{pad}- {x}\n" for x in data)
    return f"{pad}{data}\n"


def _read(path: str, parse, *args):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return ser.with_lines(text, parse, *args)
    except ser.SchemaError as e:
        raise InputError(f"{path}: {e}") from None


# -- object names on the command line --------------------------------------------------

def parse_atom(token: str):
    """d<n> simplex, bd<n> boundary, h<n>_<k> horn, or a JSON file with a simplicial set."""
    from .sset import boundary, horn, std_simplex
    m = re.fullmatch(r"(d|bd|h)(\d+)(?:_(\d+))?", token)
    if m:
        kind, n, k = m.group(1), int(m.group(2)), m.group(3)
        if kind == "d" and k is None:
            return std_simplex(n)
        if kind == "bd" and k is None:
            return boundary(n)[0]
        if kind == "h" and k is not None and int(k) <= n and n >= 1:
            return horn(n, int(k))[0]
    if Path(token).is_file():
        return _read(token, ser.sset_from_dict)
    raise InputError(f"cannot parse {token!r}: use d<n>, bd<n>, h<n>_<k> or a JSON file")


def parse_category(token: str):
    from .catkit.category import linear_order
    from .generators import small_categories
    m = re.fullmatch(r"\[(\d+)\]", token)
    if m:
        return linear_order(int(m.group(1)))
    for C in small_categories(max_objects=10, max_morphisms=10 ** 6):
        if C.label == token:
            return C
    if Path(token).is_file():
        return _read(token, ser.fincat_from_dict)
    names = ", ".join(C.label for C in small_categories())
    raise InputError(f"unknown category {token!r}; use [n], one of {names}, or a JSON file")


# -- the group -----------------------------------------------------------------------

@click.group()
@click.option("--k", "k", type=int, default=None, help="Truncation dimension (default 2).")
@click.option("--budget", type=int, default=None, help="Cell/object budget; RIGGED_BUDGET overrides.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for generated instances.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output here.")
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "text"]), default="json", show_default=True)
@click.pass_context
def main(ctx: click.Context, k, budget, seed, out, fmt):
    """Rigged inserters, lalis and enhanced simplicial sets at desk scale."""
    kwargs = {"seed": seed, "out": out, "format": fmt}
    if k is not None:
        kwargs["k"] = k
    if budget is not None:
        kwargs["budget"] = budget
    try:
        ctx.obj = RunConfig(**kwargs)
    except ValueError as e:
        raise InputError(str(e)) from None


# -- build -------------------------------------------------------------------------------

@main.command()
@click.argument("kind", type=click.Choice(["simplex", "boundary", "horn", "product", "join", "nerve", "mnd",
                                           "em-weight"]))
@click.argument("args", nargs=-1)
@click.pass_context
def build(ctx, kind, args):
    """Build a standard object: simplex N, boundary N, horn N K, product A B, join A, nerve CAT, mnd, em-weight."""
    from .sset import boundary, horn, join_cone, product, std_simplex
    cfg: RunConfig = ctx.obj

    def ints(count):
        if len(args) != count or not all(a.isdigit() for a in args):
            raise InputError(f"{kind} takes {count} natural number argument(s)")
        return [int(a) for a in args]

    if kind == "simplex":
        obj = std_simplex(*ints(1))
    elif kind == "boundary":
        obj = boundary(*ints(1))[0]
    elif kind == "horn":
        n, j = ints(2)
        if n < 1 or j > n:
            raise InputError("horn N K needs N >= 1 and K <= N")
        obj = horn(n, j)[0]
    elif kind == "product":
        if len(args) != 2:
            raise InputError("product takes two objects")
        obj = product(parse_atom(args[0]), parse_atom(args[1]), budget=cfg.budget)
    elif kind == "join":
        if len(args) != 1:
            raise InputError("join takes one object J and builds the cone on J")
        obj = join_cone(parse_atom(args[0]))[0]
    elif kind == "nerve":
        if len(args) != 1:
            raise InputError("nerve takes one category")
        from .catkit.nerve import nerve
        obj = nerve(parse_category(args[0]), cfg.k, budget=cfg.budget)
    elif kind == "mnd":
        from .enriched.monads import mnd_ecat
        E = mnd_ecat(cfg.k)
        _emit_obj(ctx, _ecat_dict(E))
        return
    else:
        from .enriched.monads import em_weight
        W = em_weight(cfg.k)
        _emit_obj(ctx, {"k": W.k, "bound": W.bound, "value": ser.to_dict(W.value), "acting_hom": ser.to_dict(W.hom)})
        return
    if cfg.format == "text":
        _emit(ctx, f"{obj.label or kind}: counts {obj.counts()}\n")
    else:
        _emit_obj(ctx, obj)


def _ecat_dict(E) -> Dict:
    from .sset import name
    return {"label": E.label, "k": E.k, "objects": [name(a) for a in E.objects],
            "identities": {name(a): name(v) for a, v in E.ident.items()},
            "homs": {f"{name(a)}->{name(b)}": ser.to_dict(H) for (a, b), H in E.hom.items()}}


# -- check ----------------------------------------------------------------------------------

@main.command()
@click.argument("suite", type=click.Choice(sorted(SUITES) + ["all"]))
@click.option("--n", "n", type=int, default=None, help="prism: max n; rins-agreement: single n.")
@click.option("--m", "m", type=int, default=None, help="prism: max m.")
@click.option("--objects", type=int, default=None, help="la-lali / em: max objects of the categories.")
@click.option("--count", type=int, default=None, help="Number of generated instances.")
@click.pass_context
def check(ctx, suite, n, m, objects, count):
    """Run a named invariant suite; exit 0 iff every instance passes."""
    cfg: RunConfig = ctx.obj
    names = sorted(SUITES) if suite == "all" else [suite]
    lines, summary, ok = [], [], True
    for nm in names:
        opts: Dict[str, Any] = {}
        if nm == "prism":
            if n is not None:
                opts["n"] = n
            if m is not None:
                opts["m"] = m
        if nm == "rins-agreement" and n is not None:
            opts["ns"] = (n,)
        if nm == "la-lali" and objects is not None:
            opts["max_objects"] = objects
        if nm == "em" and objects is not None:
            opts["max_objects"] = objects
        if count is not None and nm in ("factorization", "rins-agreement", "prop55", "la-lali", "pullback-la",
                                        "duality", "rins-lali"):
            opts["count"] = count
        res = run_suite(nm, cfg, **opts)
        ok = ok and res.passed
        lines.append(json.dumps(res.as_dict(), sort_keys=True))
        status = "PASS" if res.passed else "FAIL"
        summary.append(f"{status} {nm}: {res.instances} instances, {len(res.failures)} failures, "
                       f"{res.seconds:.1f}s")
        for f in res.failures[:5]:
            summary.append(f"    failed: {f}")
    if cfg.format == "text":
        _emit(ctx, "\n".join(summary) + "\n")
    else:
        _emit(ctx, "\n".join(lines) + "\n")
        click.echo("\n".join(summary), err=True)
    ctx.exit(0 if ok else EXIT_FAIL)


# -- diagrams from JSON --------------------------------------------------------------------

def diagram_from_dict(d: Any, path=()):
    """{"n", "terminal", "S", "T", "cells"}: one entry per nondegenerate cell of bd(Delta^n).

    An entry is a map S x Delta^m -> T ({"assignment": ...}), a map S -> T for a
    vertex cell ({"leg": {...}}), or {"constant": map S -> T} for a prism that is
    constant along Delta^m.
    """
    from .inserters import InvalidDiagram, constant_prism, diagram_from_cells
    from .sset import SMap, boundary, name, product, std_simplex
    n = ser._need(d, "n", int, path)
    if n < 0:
        raise ser.SchemaError("n must be nonnegative", list(path) + ["n"])
    S = ser.essset_from_dict(ser._need(d, "S", dict, path), list(path) + ["S"])
    T = ser.essset_from_dict(ser._need(d, "T", dict, path), list(path) + ["T"])
    raw = ser._need(d, "cells", dict, path)
    bd, _ = boundary(n)
    cells = {}
    for c in bd.all_cells():
        key = name(c)
        cp = list(path) + ["cells", key]
        if key not in raw:
            raise ser.SchemaError(f"missing boundary cell {key}", list(path) + ["cells"])
        m = len(c) - 1
        entry = raw[key]
        if isinstance(entry, dict) and "leg" in entry:
            if m != 0:
                raise ser.SchemaError("'leg' is only allowed on vertex cells", cp)
            f = ser.smap_from_dict(entry["leg"], S.loose, T.loose, cp + ["leg"])
            cells[c] = constant_prism(f, 0)
        elif isinstance(entry, dict) and "constant" in entry:
            f = ser.smap_from_dict(entry["constant"], S.loose, T.loose, cp + ["constant"])
            cells[c] = constant_prism(f, m)
        else:
            cells[c] = ser.smap_from_dict(entry, product(S.loose, std_simplex(m)), T.loose, cp)
    try:
        return diagram_from_cells(S, T, n, cells, terminal=bool(d.get("terminal", True)))
    except (InvalidDiagram, ValueError, KeyError) as e:
        raise ser.SchemaError(f"not a rigged diagram: {e}", path) from None


def _rins_report(R) -> Dict:
    return {"counts": list(R.counts()), "tight_vertices": len(R.tight), "projection_tight": R.p.tight}


def _run_rins(ctx, path: str) -> None:
    from .inserters import rins_pullback
    d = _read(path, diagram_from_dict)
    R = rins_pullback(d, ctx.obj.k, budget=ctx.obj.budget)
    _emit_obj(ctx, R, {"report": _rins_report(R)})


def _comma_from_dict(d, path=()):
    A = ser.essset_from_dict(ser._need(d, "A", dict, path), ["A"])
    B = ser.essset_from_dict(ser._need(d, "B", dict, path), ["B"])
    C = ser.essset_from_dict(ser._need(d, "C", dict, path), ["C"])
    f = ser.smap_from_dict(ser._need(d, "f", dict, path), A.loose, C.loose, ["f"])
    g = ser.smap_from_dict(ser._need(d, "g", dict, path), B.loose, C.loose, ["g"])
    return {"A": A, "B": B, "C": C, "f": f, "g": g}


def _equifier_from_dict(d, path=()):
    from .sset import product, std_simplex
    S = ser.essset_from_dict(ser._need(d, "S", dict, path), ["S"])
    T = ser.essset_from_dict(ser._need(d, "T", dict, path), ["T"])
    f = ser.smap_from_dict(ser._need(d, "f", dict, path), S.loose, T.loose, ["f"])
    g = ser.smap_from_dict(ser._need(d, "g", dict, path), S.loose, T.loose, ["g"])
    P = product(S.loose, std_simplex(1))
    alpha = ser.smap_from_dict(ser._need(d, "alpha", dict, path), P, T.loose, ["alpha"])
    beta = ser.smap_from_dict(ser._need(d, "beta", dict, path), P, T.loose, ["beta"])
    return {"S": S, "T": T, "f": f, "g": g, "alpha": alpha, "beta": beta}


def _run_special(ctx, kind: str, path: str) -> None:
    from .inserters import InvalidDiagram, specialize
    data = _read(path, _comma_from_dict if kind == "comma" else _equifier_from_dict)
    try:
        sp = specialize(kind, ctx.obj.k, **data)
    except (InvalidDiagram, ValueError) as e:
        raise InputError(f"{path}: {e}") from None
    extra = {"report": _rins_report(sp.R)}
    if sp.projections:
        extra["projections"] = {k: ser.to_dict(v) for k, v in sorted(sp.projections.items()) if k != "phi"}
    _emit_obj(ctx, sp.R, extra)


@main.command()
@click.argument("diagram", type=click.Path(dir_okay=False))
@click.pass_context
def rins(ctx, diagram):
    """Rigged n-inserter of a JSON diagram (pullback form)."""
    _run_rins(ctx, diagram)


@main.command()
@click.argument("data", type=click.Path(dir_okay=False))
@click.pass_context
def comma(ctx, data):
    """Comma object of f: A -> C and g: B -> C given as JSON."""
    _run_special(ctx, "comma", data)


@main.command()
@click.argument("data", type=click.Path(dir_okay=False))
@click.pass_context
def equifier(ctx, data):
    """Equifier of two prisms alpha, beta: S x Delta^1 -> T between f and g."""
    _run_special(ctx, "equifier", data)


def _monad_arg(source: Optional[str], index: Optional[int]):
    from .generators import monad_instances
    if source:
        return _read(source, ser.monad_from_dict)
    ms = monad_instances()
    if index is None or not 0 <= index < len(ms):
        raise InputError(f"give a monad JSON file or --index in 0..{len(ms) - 1} (see em-chain --list)")
    return ms[index]


@main.command("em-chain")
@click.argument("monad", required=False, type=click.Path(dir_okay=False))
@click.option("--index", type=int, default=None, help="Use the index-th built-in monad instance.")
@click.option("--list", "list_", is_flag=True, help="List the built-in monad instances.")
@click.pass_context
def em_chain(ctx, monad, index, list_):
    """Eilenberg-Moore object through the inserter and two equifiers."""
    from .generators import monad_instances
    from .inserters import em_chain_demo
    from .sset import name
    if list_:
        for i, M in enumerate(monad_instances()):
            click.echo(f"{i}\t{M.label}\tmarked={','.join(name(a) for a in M.marked)}")
        return
    M = _monad_arg(monad, index)
    rep = em_chain_demo(M, k=ctx.obj.k)
    data = {"monad": M.label, "k": rep.k, "algebras": rep.algebras, "final_bijective": rep.final_bijective,
            "ok": rep.ok,
            "stages": [{"name": s.name, "n": s.n, "objects": s.objects, "morphisms": s.morphisms,
                        "projection_tight": s.projection_tight, "projection_isofibration": s.projection_isofibration,
                        "rins_counts": list(s.rins_counts), "nerve_counts": list(s.nerve_counts),
                        "rins_matches": s.rins_matches} for s in rep.stages]}
    _emit_obj(ctx, data)
    ctx.exit(0 if rep.ok else EXIT_FAIL)


# -- lifting ------------------------------------------------------------------------------------

def lift_from_dict(d, path=()):
    """Either {"E", "B", "p", "anchor"} with simplicial sets, or {"source", "target", "functor", "anchor"}
    with categories (their nerves are used); an optional "n", "g", "d" poses one problem."""
    from .catkit.nerve import Nerve, nerve_map
    from .sset import boundary, name, std_simplex
    if "functor" in d:
        k = d.get("k", 2)
        A = ser.fincat_from_dict(ser._need(d, "source", dict, path), ["source"])
        B = ser.fincat_from_dict(ser._need(d, "target", dict, path), ["target"])
        F = ser.functor_from_dict(d["functor"], A, B, ["functor"])
        E, Bn = Nerve(A, k), Nerve(B, k)
        p = nerve_map(F, E, Bn)
    else:
        E = ser.sset_from_dict(ser._need(d, "E", dict, path), ["E"])
        Bn = ser.sset_from_dict(ser._need(d, "B", dict, path), ["B"])
        p = ser.smap_from_dict(ser._need(d, "p", dict, path), E, Bn, ["p"])
    verts = {name(v): v for v in E.vertices}
    anchor = ser._need(d, "anchor", str, path)
    if anchor not in verts:
        raise ser.SchemaError(f"anchor {anchor!r} is not a vertex of E", ["anchor"])
    out = {"p": p, "anchor": verts[anchor], "problem": None}
    if "g" in d:
        n = ser._need(d, "n", int, path)
        bd, _ = boundary(n)
        g = ser.smap_from_dict(d["g"], bd, E, ["g"])
        dd = ser.smap_from_dict(ser._need(d, "d", dict, path), std_simplex(n), Bn, ["d"])
        from .lifting import LiftProblem
        prob = LiftProblem(p, g, dd, verts[anchor])
        try:
            prob.check()
        except ValueError as e:
            raise ser.SchemaError(str(e), ["g"]) from None
        out["problem"] = prob
    return out


def _run_lift(ctx, path: str) -> None:
    from .lifting import lifting_witness, solve_lift
    data = _read(path, lift_from_dict)
    if data["problem"] is not None:
        l = solve_lift(data["problem"])
        res = {"lift": ser.to_dict(l) if l is not None else None, "solvable": l is not None}
        _emit_obj(ctx, res)
        ctx.exit(0)
    wit = lifting_witness(data["p"], data["anchor"])
    res = {"anchor": ser.name(data["anchor"]), "universal": wit is None,
           "witness": None if wit is None else {"n": wit.n, "g": ser.to_dict(wit.g), "d": ser.to_dict(wit.d)}}
    _emit_obj(ctx, res)


@main.command()
@click.argument("problem", type=click.Path(dir_okay=False))
@click.pass_context
def lift(ctx, problem):
    """Solve a lifting problem, or decide universality of the anchor with a failure witness."""
    _run_lift(ctx, problem)


@main.command()
@click.option("--n", "n", type=int, default=1, show_default=True)
@click.option("--m", "m", type=int, default=1, show_default=True)
@click.pass_context
def prism(ctx, n, m):
    """Cells of Delta^n x Delta^m outside the boundary, in attachment order."""
    from .lifting import attachment_chain, prism_complement_cells, terminal_vertex
    from .sset import name
    if n < 0 or m < 0:
        raise InputError("n and m must be nonnegative")
    cells = prism_complement_cells(n, m)
    rep = attachment_chain(n, m)
    data = {"n": n, "m": m, "cells": [{"cell": name(c), "dim": len(c[2]) - 1, "terminal_vertex": list(terminal_vertex(c))}
                                      for c in cells],
            "layers": [list(x) for x in rep.layers], "terminal_ok": rep.terminal_ok, "rebuilds": rep.rebuilds}
    _emit_obj(ctx, data)
    ctx.exit(0 if rep.ok else EXIT_FAIL)


# -- compute ----------------------------------------------------------------------------------

def _factorize_from_dict(d, path=()):
    S = ser.sset_from_dict(ser._need(d, "S", dict, path), ["S"])
    T = ser.sset_from_dict(ser._need(d, "T", dict, path), ["T"])
    return ser.smap_from_dict(ser._need(d, "f", dict, path), S, T, ["f"])


def _weighted_from_dict(d, path=()):
    kind = ser._need(d, "weight", str, path)
    if kind == "power":
        J = ser.essset_from_dict(ser._need(d, "J", dict, path), ["J"])
        T = ser.essset_from_dict(ser._need(d, "T", dict, path), ["T"])
        return ("power", J, T)
    m = re.fullmatch(r"rigged:(\d+)", kind)
    if m:
        dd = diagram_from_dict(d, path)
        if dd.n != int(m.group(1)):
            raise ser.SchemaError("weight rigged:n must match the diagram's n", ["weight"])
        return ("rigged", dd)
    raise ser.SchemaError("weight must be 'power' or 'rigged:<n>'", ["weight"])


@main.command()
@click.argument("op", type=click.Choice(["rins", "comma", "equifier", "em-object", "weighted-limit", "factorize",
                                         "lift"]))
@click.argument("inputs", type=click.Path(dir_okay=False))
@click.pass_context
def compute(ctx, op, inputs):
    """One-shot operation on a JSON input file."""
    cfg: RunConfig = ctx.obj
    if op == "rins":
        _run_rins(ctx, inputs)
    elif op in ("comma", "equifier"):
        _run_special(ctx, op, inputs)
    elif op == "lift":
        _run_lift(ctx, inputs)
    elif op == "factorize":
        from .fdelta import factorize
        f = _read(inputs, _factorize_from_dict)
        l, r = factorize(f)
        _emit_obj(ctx, {"image": ser.to_dict(l.target), "l": ser.to_dict(l), "r": ser.to_dict(r)})
    elif op == "em-object":
        from .catkit.nerve import Nerve
        from .enriched.monads import em_algebras, em_universal_property_check
        from .fdelta import ESSet
        M = _read(inputs, ser.monad_from_dict)
        em = em_algebras(M)
        rep = em_universal_property_check(M, em, k=cfg.k)
        obj = ESSet(Nerve(em.cat, cfg.k), em.marked)
        _emit_obj(ctx, obj, {"report": {"algebras": rep.algebras, "ok": rep.ok, "failures": rep.failures},
                             "category": ser.to_dict(em.cat)})
        ctx.exit(0 if rep.ok else EXIT_FAIL)
    else:
        from .enriched.ecat import constant_weight, nat_object, terminal_ecat
        from .inserters import rins_weighted
        spec = _read(inputs, _weighted_from_dict)
        if spec[0] == "power":
            E = terminal_ecat(cfg.k)
            L = nat_object(constant_weight(E, spec[1]), constant_weight(E, spec[2]), cfg.k, budget=cfg.budget)
        else:
            L = rins_weighted(spec[1], cfg.k, budget=cfg.budget)
        _emit_obj(ctx, L, {"report": {"counts": list(L.counts()), "tight_vertices": len(L.tight)}})


def run() -> None:
    main(prog_name="rigged")


if __name__ == "__main__":
    sys.exit(run())
