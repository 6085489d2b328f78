"""Finitely presented simplicial sets.

A simplicial set is stored as its nondegenerate cells together with face maps.
Every simplex is a pair ``(base, surj)`` where ``base`` is a nondegenerate cell
of dimension ``e`` and ``surj`` is a monotone surjection ``[d] -> [e]`` written
as a tuple of length ``d + 1``.  This is the Eilenberg-Zilber normal form: the
degeneracy word of the simplex is read off from the repeated positions of
``surj``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple


class BudgetExceeded(RuntimeError):
    """Raised when a construction would exceed the configured size budget."""


class Simplex(NamedTuple):
    base: Hashable
    surj: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def nondegenerate(self) -> bool:
        return self.surj[-1] == len(self.surj) - 1

    def degeneracies(self) -> List[int]:
        """EZ degeneracy word, strictly decreasing."""
        s = self.surj
        return [j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1]]


def name(x) -> str:
    """Canonical string form of an identifier."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(name(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(name(y) for y in x)) + "}"
    return str(x)


def sort_ids(ids: Iterable) -> list:
    return sorted(ids, key=name)


def surj_from_degeneracies(e: int, degs: Sequence[int]) -> Tuple[int, ...]:
    degs = list(degs)
    if any(a <= b for a, b in zip(degs, degs[1:])):
        raise ValueError(f"degeneracy word {degs} is not strictly decreasing")
    d = e + len(degs)
    rep = set(degs)
    if any(i < 0 or i >= d for i in rep):
        raise ValueError(f"degeneracy word {degs} not applicable in dimension {e}")
    out = [0]
    for j in range(d):
        out.append(out[-1] + (0 if j in rep else 1))
    return tuple(out)


def identity_surj(e: int) -> Tuple[int, ...]:
    return tuple(range(e + 1))


def coface(d: int, i: int) -> Tuple[int, ...]:
    """delta_i : [d-1] -> [d], skipping i."""
    return tuple(j for j in range(d + 1) if j != i)


def codegeneracy(d: int, i: int) -> Tuple[int, ...]:
    """sigma_i : [d+1] -> [d], hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(d + 2))


@lru_cache(maxsize=None)
def surjections(d: int, e: int) -> Tuple[Tuple[int, ...], ...]:
    """All monotone surjections [d] -> [e], in lexicographic order."""
    if e > d or e < 0:
        return ()
    out = []
    for steps in itertools.combinations(range(d), e):
        st = set(steps)
        s = [0]
        for j in range(d):
            s.append(s[-1] + (1 if j in st else 0))
        out.append(tuple(s))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def monotone_maps(m: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    """All monotone maps [m] -> [n]."""
    return tuple(itertools.combinations_with_replacement(range(n + 1), m + 1))


def seq_simplex(seq: Sequence) -> Simplex:
    """Simplex of a nerve of a linear order from a monotone vertex sequence."""
    chain = tuple(sorted(set(seq)))
    pos = {v: i for i, v in enumerate(chain)}
    return Simplex(chain, tuple(pos[v] for v in seq))


class SSet:
    """A finite simplicial set given by nondegenerate cells and faces.

    ``cells`` maps a dimension to the identifiers of the nondegenerate cells in
    that dimension.  ``faces`` maps every cell of positive dimension ``n`` to a
    tuple of ``n + 1`` simplices of dimension ``n - 1``.
    """

    def __init__(self, cells: Dict[int, Iterable], faces: Dict, check: bool = False, label: str = ""):
        self.label = label
        self.cells: Dict[int, Tuple] = {}
        self.dim_of: Dict = {}
        top = -1
        for n in sorted(cells):
            ids = tuple(sort_ids(cells[n]))
            if ids:
                top = max(top, n)
            self.cells[n] = ids
            for c in ids:
                if c in self.dim_of:
                    raise ValueError(f"duplicate cell identifier {name(c)}")
                self.dim_of[c] = n
        self.top_dim = top
        for n in range(top + 1):
            self.cells.setdefault(n, ())
        self.faces: Dict = {}
        for c, fs in faces.items():
            self.faces[c] = tuple(Simplex(f[0], tuple(f[1])) for f in fs)
        self._restrict_memo: Dict = {}
        self._simplices: Dict[int, Tuple[Simplex, ...]] = {}
        self._by_vertices: Dict[int, Dict] = {}
        self.vert: Dict = {}
        self._validate_structure()
        self._compute_vertices()
        if check:
            self.check()

    # -- structure -------------------------------------------------------
    def _validate_structure(self):
        for c, n in self.dim_of.items():
            if n == 0:
                continue
            fs = self.faces.get(c)
            if fs is None or len(fs) != n + 1:
                raise ValueError(f"cell {name(c)} of dimension {n} needs {n + 1} faces")
            for f in fs:
                if f.base not in self.dim_of:
                    raise ValueError(f"face of {name(c)} refers to unknown cell {name(f.base)}")
                if len(f.surj) != n:
                    raise ValueError(f"face of {name(c)} has the wrong dimension")
                e = self.dim_of[f.base]
                s = f.surj
                if s[0] != 0 or s[-1] != e or any(b - a not in (0, 1) for a, b in zip(s, s[1:])):
                    raise ValueError(f"face of {name(c)} is not in normal form")

    def _compute_vertices(self):
        for n in range(self.top_dim + 1):
            for c in self.cells[n]:
                if n == 0:
                    self.vert[c] = (c,)
                    continue
                last = self.faces[c][n]
                first = self.faces[c][0]
                vl = self.vertex_tuple(last)
                vf = self.vertex_tuple(first)
                self.vert[c] = vl + (vf[-1],)

    def vertex_tuple(self, x: Simplex) -> tuple:
        v = self.vert[x.base]
        return tuple(v[s] for s in x.surj)

    @property
    def vertices(self) -> Tuple:
        return self.cells.get(0, ())

    def nondeg(self, n: int) -> Tuple:
        return self.cells.get(n, ())

    def all_cells(self) -> List:
        out = []
        for n in range(self.top_dim + 1):
            out.extend(self.cells[n])
        return out

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.cells[n]) for n in range(self.top_dim + 1))

    def size(self) -> int:
        return len(self.dim_of)

    def ident(self, c) -> Simplex:
        return Simplex(c, identity_surj(self.dim_of[c]))

    # -- simplicial operators -------------------------------------------
    def realize(self, base, comp: Tuple[int, ...]) -> Simplex:
        """The simplex ``base . comp`` for an arbitrary monotone ``comp``."""
        e = self.dim_of[base]
        if comp[0] == 0 and comp[-1] == e and len(set(comp)) == e + 1:
            return Simplex(base, comp)
        image = tuple(sorted(set(comp)))
        y = self._restrict(base, image)
        pos = {v: i for i, v in enumerate(image)}
        return Simplex(y.base, tuple(y.surj[pos[c]] for c in comp))

    def _restrict(self, base, image: Tuple[int, ...]) -> Simplex:
        key = (base, image)
        hit = self._restrict_memo.get(key)
        if hit is not None:
            return hit
        e = self.dim_of[base]
        if len(image) == e + 1:
            res = Simplex(base, identity_surj(e))
        else:
            present = set(image)
            j = max(t for t in range(e + 1) if t not in present)
            z = self.faces[base][j]
            sub = tuple(c if c < j else c - 1 for c in image)
            res = self.realize(z.base, tuple(z.surj[t] for t in sub))
        self._restrict_memo[key] = res
        return res

    def apply(self, x: Simplex, theta: Sequence[int]) -> Simplex:
        s = x.surj
        return self.realize(x.base, tuple(s[t] for t in theta))

    def face(self, x: Simplex, i: int) -> Simplex:
        return self.apply(x, coface(x.dim, i))

    def degen(self, x: Simplex, i: int) -> Simplex:
        return self.apply(x, codegeneracy(x.dim, i))

    def vertex(self, x: Simplex, t: int):
        return self.vert[x.base][x.surj[t]]

    def simplices(self, d: int) -> Tuple[Simplex, ...]:
        """All d-simplices, degenerate ones included."""
        got = self._simplices.get(d)
        if got is None:
            out = []
            for e in range(min(d, self.top_dim) + 1):
                for c in self.cells[e]:
                    for s in surjections(d, e):
                        out.append(Simplex(c, s))
            got = tuple(out)
            self._simplices[d] = got
        return got

    def by_vertices(self, d: int) -> Dict[tuple, List[Simplex]]:
        got = self._by_vertices.get(d)
        if got is None:
            got = {}
            for x in self.simplices(d):
                got.setdefault(self.vertex_tuple(x), []).append(x)
            self._by_vertices[d] = got
        return got

    # -- validation -----------------------------------------------------
    def check(self) -> None:
        """Verify the simplicial identities d_i d_j = d_{j-1} d_i (i < j)."""
        for n in range(2, self.top_dim + 1):
            for c in self.cells[n]:
                x = self.ident(c)
                for j in range(n + 1):
                    fj = self.face(x, j)
                    for i in range(j):
                        if self.face(fj, i) != self.face(self.face(x, i), j - 1):
                            raise ValueError(f"simplicial identity fails at {name(c)}, i={i}, j={j}")

    def __repr__(self) -> str:
        lab = f" {self.label}" if self.label else ""
        return f"<SSet{lab} counts={self.counts()}>"


class SMap:
    """A simplicial map, stored on nondegenerate cells of the source."""

    __slots__ = ("source", "target", "assign", "_key")

    def __init__(self, source: SSet, target: SSet, assign: Dict, check: bool = False):
        self.source = source
        self.target = target
        self.assign = assign
        self._key = None
        if check:
            self.check()

    def __call__(self, x: Simplex) -> Simplex:
        y = self.assign[x.base]
        s = y.surj
        return self.target.realize(y.base, tuple(s[t] for t in x.surj))

    def on_vertex(self, v):
        return self.assign[v].base

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(self.assign[c] for c in self.source.all_cells())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, SMap) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def check(self) -> None:
        S, T = self.source, self.target
        for c in S.all_cells():
            if c not in self.assign:
                raise ValueError(f"map is undefined on {name(c)}")
            y = self.assign[c]
            if y.base not in T.dim_of or len(y.surj) != S.dim_of[c] + 1:
                raise ValueError(f"bad image for {name(c)}")
            if S.dim_of[c] == 0:
                continue
            for i, f in enumerate(S.faces[c]):
                if T.face(y, i) != self(f):
                    raise ValueError(f"map does not commute with d_{i} at {name(c)}")

    def is_valid(self) -> bool:
        try:
            self.check()
        except (ValueError, KeyError):
            return False
        return True

    def then(self, g: "SMap") -> "SMap":
        """g . self"""
        return SMap(self.source, g.target, {c: g(y) for c, y in self.assign.items()})

    def vertex_image(self) -> set:
        return {self.assign[v].base for v in self.source.vertices}

    def __repr__(self) -> str:
        return f"<SMap {self.source!r} -> {self.target!r}>"


def compose(g: SMap, f: SMap) -> SMap:
    return f.then(g)


def identity_map(S: SSet) -> SMap:
    return SMap(S, S, {c: S.ident(c) for c in S.all_cells()})




def empty_sset() -> SSet:
    return SSet({}, {}, label="empty")


def empty_map(T: SSet) -> SMap:
    return SMap(empty_sset(), T, {})


# -- standard objects ------------------------------------------------------

@lru_cache(maxsize=None)
def std_simplex(n: int) -> SSet:
    """The standard n-simplex; cells are strictly increasing chains in [n]."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    cells = {}
    faces = {}
    for k in range(n + 1):
        cells[k] = list(itertools.combinations(range(n + 1), k + 1))
        if k:
            for c in cells[k]:
                faces[c] = [(c[:i] + c[i + 1:], identity_surj(k - 1)) for i in range(k + 1)]
    return SSet(cells, faces, label=f"D{n}")


def simplex_cell(x: SSet, s: Simplex) -> SMap:
    """The map Delta^d -> X classifying the d-simplex s."""
    D = std_simplex(s.dim)
    return SMap(D, x, {c: x.apply(s, c) for c in D.all_cells()})


def simplex_map(theta: Sequence[int], n: int) -> SMap:
    """Delta^m -> Delta^n induced by the monotone map theta: [m] -> [n]."""
    m = len(theta) - 1
    Dm, Dn = std_simplex(m), std_simplex(n)
    return SMap(Dm, Dn, {c: seq_simplex([theta[i] for i in c]) for c in Dm.all_cells()})


def subcomplex(S: SSet, keep: Iterable, label: str = "") -> Tuple[SSet, SMap]:
    """Sub simplicial set on the given nondegenerate cells, with inclusion."""
    keep = set(keep)
    cells: Dict[int, list] = {}
    faces = {}
    for c in keep:
        n = S.dim_of[c]
        cells.setdefault(n, []).append(c)
        if n:
            for f in S.faces[c]:
                if f.base not in keep:
                    raise ValueError(f"cell set not closed under faces at {name(c)}")
            faces[c] = S.faces[c]
    sub = SSet(cells, faces, label=label)
    return sub, SMap(sub, S, {c: S.ident(c) for c in keep})


def full_subcomplex(S: SSet, vertices: Iterable, label: str = "") -> Tuple[SSet, SMap]:
    vs = set(vertices)
    keep = [c for c in S.all_cells() if all(v in vs for v in S.vert[c])]
    return subcomplex(S, keep, label=label)


@lru_cache(maxsize=None)
def boundary(n: int) -> Tuple[SSet, SMap]:
    """The boundary of Delta^n with its inclusion (empty for n = 0)."""
    D = std_simplex(n)
    top = tuple(range(n + 1))
    return subcomplex(D, [c for c in D.all_cells() if c != top], label=f"bD{n}")


def horn(n: int, k: int) -> Tuple[SSet, SMap]:
    """The horn Lambda^n_k: boundary minus the face opposite vertex k."""
    if not 0 <= k <= n or n < 1:
        raise ValueError("need 0 <= k <= n and n >= 1")
    D = std_simplex(n)
    top = tuple(range(n + 1))
    missing = top[:k] + top[k + 1:]
    return subcomplex(D, [c for c in D.all_cells() if c not in (top, missing)], label=f"L{n}_{k}")


# -- products ------------------------------------------------------------

def _paths(p: int, q: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Chains from (0,0) to (p,q) with unit steps; each is a nondegenerate pair."""
    out = []

    def rec(a, b, xs, ys):
        if a == p and b == q:
            out.append((tuple(xs), tuple(ys)))
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            na, nb = a + da, b + db
            if na <= p and nb <= q:
                xs.append(na)
                ys.append(nb)
                rec(na, nb, xs, ys)
                xs.pop()
                ys.pop()

    rec(0, 0, [0], [0])
    return out


_paths = lru_cache(maxsize=None)(_paths)


class Product(SSet):
    """S x T; cells are (a, b, alpha, beta) with (alpha, beta) jointly injective."""

    def __init__(self, S: SSet, T: SSet, cells, faces, label=""):
        self.left = S
        self.right = T
        super().__init__(cells, faces, label=label)
        self._proj = None

    def pair(self, x: Simplex, y: Simplex) -> Simplex:
        pts = list(zip(x.surj, y.surj))
        distinct = []
        for pt in pts:
            if not distinct or distinct[-1] != pt:
                distinct.append(pt)
        gamma = []
        k = -1
        last = None
        for pt in pts:
            if pt != last:
                k += 1
                last = pt
            gamma.append(k)
        cell = (x.base, y.base, tuple(p[0] for p in distinct), tuple(p[1] for p in distinct))
        return Simplex(cell, tuple(gamma))

    def split(self, z: Simplex) -> Tuple[Simplex, Simplex]:
        a, b, al, be = z.base
        return (Simplex(a, tuple(al[t] for t in z.surj)), Simplex(b, tuple(be[t] for t in z.surj)))

    @property
    def projections(self) -> Tuple[SMap, SMap]:
        if self._proj is None:
            p1 = {}
            p2 = {}
            for c in self.all_cells():
                a, b, al, be = c
                p1[c] = Simplex(a, al)
                p2[c] = Simplex(b, be)
            self._proj = (SMap(self, self.left, p1), SMap(self, self.right, p2))
        return self._proj


def _product_cells(S: SSet, T: SSet, accept=None, budget: Optional[int] = None):
    cells: Dict[int, list] = {}
    faces = {}
    count = 0
    for p in range(S.top_dim + 1):
        for q in range(T.top_dim + 1):
            paths = _paths(p, q)
            for a in S.cells[p]:
                for b in T.cells[q]:
                    for al, be in paths:
                        c = (a, b, al, be)
                        if accept is not None and not accept(c):
                            continue
                        d = len(al) - 1
                        cells.setdefault(d, []).append(c)
                        count += 1
                        if budget is not None and count > budget:
                            raise BudgetExceeded(f"product exceeds budget {budget}")
    return cells


def _product_faces(P: Product, S: SSet, T: SSet, cells):
    faces = {}
    for d, cs in cells.items():
        if d == 0:
            continue
        for c in cs:
            a, b, al, be = c
            fs = []
            for i in range(d + 1):
                x = S.realize(a, al[:i] + al[i + 1:])
                y = T.realize(b, be[:i] + be[i + 1:])
                fs.append(P.pair(x, y))
            faces[c] = fs
    return faces


def product(S: SSet, T: SSet, budget: Optional[int] = None) -> Product:
    """Cartesian product of simplicial sets with its projections."""
    return _cached_product(S, T, budget)


@lru_cache(maxsize=512)
def _cached_product(S: SSet, T: SSet, budget) -> Product:
    cells = _product_cells(S, T, budget=budget)
    dummy = Product.__new__(Product)
    faces = _product_faces(dummy, S, T, cells)
    return Product(S, T, cells, faces, label=f"({S.label}x{T.label})")


def product_map(f: SMap, g: SMap, source: Product, target: Product) -> SMap:
    out = {}
    for c in source.all_cells():
        x, y = source.split(source.ident(c))
        out[c] = target.pair(f(x), g(y))
    return SMap(source, target, out)


def pairing(f: SMap, g: SMap, target: Product) -> SMap:
    """The map (f, g) into a product."""
    S = f.source
    return SMap(S, target, {c: target.pair(f.assign[c], g.assign[c]) for c in S.all_cells()})


# -- joins, opposites ------------------------------------------------------

APEX = ("apex",)


def join_cone(J: SSet) -> Tuple[SSet, SMap]:
    """Delta^0 * J with the apex as initial vertex; returns the inclusion of J."""
    cells = {0: [APEX]}
    faces = {}
    for n in range(J.top_dim + 1):
        for c in J.cells[n]:
            cells.setdefault(n, []).append(c)
            if n:
                faces[c] = J.faces[c]
            cc = ("cone", c)
            cells.setdefault(n + 1, []).append(cc)
            if n == 0:
                faces[cc] = [Simplex(c, (0,)), Simplex(APEX, (0,))]
            else:
                fs = [J.ident(c)]
                for f in J.faces[c]:
                    fs.append(Simplex(("cone", f.base), (0,) + tuple(s + 1 for s in f.surj)))
                faces[cc] = fs
    K = SSet(cells, faces, label=f"cone({J.label})")
    return K, SMap(J, K, {c: J.ident(c) for c in J.all_cells()})


def join_cocone(J: SSet) -> Tuple[SSet, SMap]:
    """J * Delta^0 with the apex as terminal vertex; returns the inclusion of J."""
    cells = {0: [APEX]}
    faces = {}
    for n in range(J.top_dim + 1):
        for c in J.cells[n]:
            cells.setdefault(n, []).append(c)
            if n:
                faces[c] = J.faces[c]
            cc = ("cocone", c)
            cells.setdefault(n + 1, []).append(cc)
            if n == 0:
                faces[cc] = [Simplex(APEX, (0,)), Simplex(c, (0,))]
            else:
                fs = []
                for f in J.faces[c]:
                    e = J.dim_of[f.base]
                    fs.append(Simplex(("cocone", f.base), f.surj + (e + 1,)))
                fs.append(J.ident(c))
                faces[cc] = fs
    K = SSet(cells, faces, label=f"cocone({J.label})")
    return K, SMap(J, K, {c: J.ident(c) for c in J.all_cells()})


def reverse(x: Simplex, e: int) -> Simplex:
    """The same simplex read in the opposite simplicial set (base of dim e)."""
    d = len(x.surj) - 1
    return Simplex(x.base, tuple(e - x.surj[d - t] for t in range(d + 1)))


def opposite(S: SSet) -> SSet:
    """S^op: same cells, d_i replaced by d_{n-i}."""
    faces = {}
    for n in range(1, S.top_dim + 1):
        for c in S.cells[n]:
            fs = S.faces[c]
            faces[c] = [reverse(fs[n - i], S.dim_of[fs[n - i].base]) for i in range(n + 1)]
    return SSet({n: S.cells[n] for n in S.cells}, faces, label=f"{S.label}^op")


def op_simplex(S: SSet, x: Simplex) -> Simplex:
    return reverse(x, S.dim_of[x.base])


def opposite_map(f: SMap, source_op: SSet, target_op: SSet) -> SMap:
    T = f.target
    return SMap(source_op, target_op, {c: reverse(y, T.dim_of[y.base]) for c, y in f.assign.items()})


# -- pullbacks and pushouts -----------------------------------------------

class Pullback(Product):
    """X x_Z Y as a sub simplicial set of X x Y."""

    def __init__(self, f: SMap, g: SMap, cells, faces, label=""):
        self.f = f
        self.g = g
        super().__init__(f.source, g.source, cells, faces, label=label)


def pullback(f: SMap, g: SMap, budget: Optional[int] = None) -> Pullback:
    """Levelwise pullback of f: X -> Z and g: Y -> Z."""
    X, Y = f.source, g.source
    if f.target is not g.target and f.target.counts() != g.target.counts():
        raise ValueError("pullback needs a common codomain")
    cells: Dict[int, list] = {}
    count = 0
    for d in range(X.top_dim + Y.top_dim + 1):
        index: Dict[Simplex, list] = {}
        for y in Y.simplices(d):
            index.setdefault(g(y), []).append(y)
        for x in X.simplices(d):
            ys = index.get(f(x))
            if not ys:
                continue
            for y in ys:
                pts = list(zip(x.surj, y.surj))
                if len(set(pts)) != d + 1:
                    continue
                cells.setdefault(d, []).append((x.base, y.base, x.surj, y.surj))
                count += 1
                if budget is not None and count > budget:
                    raise BudgetExceeded(f"pullback exceeds budget {budget}")
    dummy = Product.__new__(Product)
    faces = _product_faces(dummy, X, Y, cells)
    return Pullback(f, g, cells, faces, label=f"({X.label}x_{Y.label})")


def is_mono(g: SMap) -> bool:
    seen = set()
    for c, y in g.assign.items():
        if not y.nondegenerate or y.base in seen:
            return False
        seen.add(y.base)
    return True


class Pushout(SSet):
    def __init__(self, cells, faces, label=""):
        super().__init__(cells, faces, label=label)
        self.inl: Optional[SMap] = None
        self.inr: Optional[SMap] = None


def pushout_mono(f: SMap, g: SMap) -> Pushout:
    """X +_Z Y for f: Z -> X and a mono g: Z -> Y; cells tagged ("X", x) / ("Y", y)."""
    if not is_mono(g):
        raise ValueError("pushout_mono requires g to be a monomorphism")
    X, Y = f.target, g.target
    back = {y.base: z for z, y in g.assign.items()}

    def tr(s: Simplex) -> Simplex:
        z = back.get(s.base)
        if z is None:
            return Simplex(("Y", s.base), s.surj)
        w = f.assign[z]
        w2 = X.realize(w.base, tuple(w.surj[t] for t in s.surj))
        return Simplex(("X", w2.base), w2.surj)

    cells: Dict[int, list] = {}
    faces = {}
    for c in X.all_cells():
        n = X.dim_of[c]
        cells.setdefault(n, []).append(("X", c))
        if n:
            faces[("X", c)] = [Simplex(("X", s.base), s.surj) for s in X.faces[c]]
    for c in Y.all_cells():
        if c in back:
            continue
        n = Y.dim_of[c]
        cells.setdefault(n, []).append(("Y", c))
        if n:
            faces[("Y", c)] = [tr(s) for s in Y.faces[c]]
    P = Pushout(cells, faces, label=f"({X.label}+{Y.label})")
    P.inl = SMap(X, P, {c: P.ident(("X", c)) for c in X.all_cells()})
    P.inr = SMap(Y, P, {c: tr(Y.ident(c)) for c in Y.all_cells()})
    return P


def disjoint_union(X: SSet, Y: SSet) -> Pushout:
    E = empty_sset()
    return pushout_mono(SMap(E, X, {}), SMap(E, Y, {}))


# -- maps ------------------------------------------------------------------

def enumerate_maps(S: SSet, T: SSet, fixed: Optional[Dict] = None,
                   limit: Optional[int] = None) -> Iterator[SMap]:
    """All simplicial maps S -> T, cell by cell with face pruning.

    ``fixed`` pre-assigns some cells (to simplices of T).  Output order is
    deterministic.
    """
    order = S.all_cells()
    fixed = fixed or {}
    nverts = len(S.vertices)
    tverts = [Simplex(v, (0,)) for v in T.vertices]
    assign: Dict = {}
    produced = 0

    def candidates(c):
        n = S.dim_of[c]
        if c in fixed:
            y = fixed[c]
            cands = [y]
        elif n == 0:
            return tverts
        else:
            vt = tuple(assign[v].base for v in S.vert[c])
            cands = T.by_vertices(n).get(vt, ())
        if n == 0:
            return cands
        fs = S.faces[c]
        want = []
        for f in fs:
            y = assign[f.base]
            want.append(T.realize(y.base, tuple(y.surj[t] for t in f.surj)))
        out = []
        for y in cands:
            ok = True
            for i in range(n + 1):
                if T.face(y, i) != want[i]:
                    ok = False
                    break
            if ok:
                out.append(y)
        return out

    if not order:
        yield SMap(S, T, {})
        return
    stack = [iter(candidates(order[0]))]
    while stack:
        pos = len(stack) - 1
        c = order[pos]
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            assign.pop(c, None)
            continue
        assign[c] = nxt
        if pos + 1 == len(order):
            yield SMap(S, T, dict(assign))
            produced += 1
            if limit is not None and produced >= limit:
                return
        else:
            stack.append(iter(candidates(order[pos + 1])))


def count_maps(S: SSet, T: SSet) -> int:
    return sum(1 for _ in enumerate_maps(S, T))


# -- building simplicial sets from levelwise data --------------------------

def levels_to_sset(levels: Sequence[Sequence[Hashable]], precompose: Callable[[Hashable, Tuple[int, ...]], Hashable],
                   ident: Callable[[int, int, Hashable], Hashable], label: str = "") -> Tuple[SSet, Dict, Dict]:
    """Assemble a simplicial set from all of its simplices up to dimension k.

    ``levels[n]`` lists every n-simplex (degenerate or not) as a hashable
    object; ``precompose(x, theta)`` applies a monotone map ``theta``.
    Returns the simplicial set, a map from cell identifier to payload and the
    table from payload to Simplex at every level.
    """
    table: List[Dict] = []
    payload: Dict = {}
    cells: Dict[int, list] = {}
    faces: Dict = {}
    for n, objs in enumerate(levels):
        deg: Dict = {}
        if n:
            for x, sx in table[n - 1].items():
                for i in range(n):
                    y = precompose(x, codegeneracy(n - 1, i))
                    if y not in deg:
                        deg[y] = Simplex(sx.base, tuple(sx.surj[t] for t in codegeneracy(n - 1, i)))
        tab: Dict = {}
        new = []
        for x in objs:
            if x in deg:
                tab[x] = deg[x]
            elif x not in tab:
                cid = ident(n, len(new), x)
                new.append(cid)
                payload[cid] = x
                tab[x] = Simplex(cid, identity_surj(n))
        missing = [y for y in deg if y not in tab]
        if missing:
            raise ValueError("degenerate simplex missing from level list")
        cells[n] = new
        if n:
            for cid in new:
                x = payload[cid]
                faces[cid] = [table[n - 1][precompose(x, coface(n, i))] for i in range(n + 1)]
        table.append(tab)
    return SSet(cells, faces, label=label), payload, table


class HomSSet(SSet):
    """Truncated internal hom [S, T]; cells are maps Delta^n x S -> T."""

    def __init__(self, S, T, k, cells, faces, payload, table, label=""):
        super().__init__(cells, faces, label=label)
        self.src = S
        self.tgt = T
        self.k = k
        self.payload = payload
        self.table = table

    def cell_of(self, g: SMap) -> Simplex:
        n = g.source.left.top_dim
        return self.table[n][g]

    def map_of(self, x: Simplex) -> SMap:
        g = self.payload[x.base]
        if x.nondegenerate:
            return g
        return precompose_prism(g, x.surj)


@lru_cache(maxsize=4096)
def _prism_operator(theta: Tuple[int, ...], n: int, S: SSet) -> Tuple[Product, Dict]:
    """theta x id : Delta^m x S -> Delta^n x S, on cells."""
    m = len(theta) - 1
    Pm = product(std_simplex(m), S)
    Pn = product(std_simplex(n), S)
    out = {}
    for c in Pm.all_cells():
        a, b, al, be = c
        seq = [theta[a[t]] for t in al]
        x = seq_simplex(seq)
        out[c] = Pn.pair(x, Simplex(b, be))
    return Pm, out


def precompose_prism(g: SMap, theta: Tuple[int, ...]) -> SMap:
    """g . (theta x id) for g: Delta^n x S -> T."""
    P = g.source
    n = P.left.top_dim
    Pm, table = _prism_operator(tuple(theta), n, P.right)
    T = g.target
    return SMap(Pm, T, {c: g(z) for c, z in table.items()})


def truncated_hom(S: SSet, T: SSet, k: int, budget: Optional[int] = None, label: str = "") -> HomSSet:
    """Dimension <= k part of the internal hom: n-cells are maps Delta^n x S -> T."""
    levels = []
    total = 0
    for n in range(k + 1):
        P = product(std_simplex(n), S)
        lev = list(enumerate_maps(P, T))
        total += len(lev)
        if budget is not None and total > budget:
            raise BudgetExceeded(f"internal hom exceeds budget {budget}")
        levels.append(lev)
    sset, payload, table = levels_to_sset(levels, precompose_prism, lambda n, i, x: ("h", n, i))
    H = HomSSet(S, T, k, {n: sset.cells[n] for n in sset.cells}, sset.faces, payload, table,
                label=label or f"[{S.label},{T.label}]")
    return H


def vertex_map_of_hom(H: HomSSet, v) -> SMap:
    """The map S -> T corresponding to a vertex of [S, T]."""
    g = H.payload[v]
    P = g.source
    S = H.src
    return SMap(S, H.tgt, {c: g(P.pair(Simplex((0,), (0,) * (S.dim_of[c] + 1)), S.ident(c))) for c in S.all_cells()})


def cell_of_map(H: HomSSet, f: SMap) -> Simplex:
    """The vertex of [S, T] corresponding to a map f: S -> T."""
    P = product(std_simplex(0), H.src)
    g = SMap(P, H.tgt, {c: f(Simplex(c[1], c[3])) for c in P.all_cells()})
    return H.table[0][g]


# -- isomorphism -------------------------------------------------------------

def find_isomorphism(S: SSet, T: SSet, tight_s: Optional[set] = None, tight_t: Optional[set] = None,
                     fixed: Optional[Dict] = None) -> Optional[SMap]:
    """Backtracking search for an isomorphism S -> T (preserving tight vertex sets if given)."""
    if S.counts() != T.counts():
        return None
    if (tight_s is None) != (tight_t is None):
        raise ValueError("give both tight sets or neither")
    if tight_s is not None and len(tight_s) != len(tight_t):
        return None

    def signature(X, tight):
        sig = {v: [0] * (X.top_dim + 1) for v in X.vertices}
        for c in X.all_cells():
            for v in set(X.vert[c]):
                sig[v][X.dim_of[c]] += 1
        return {v: (tuple(s), (tight is not None and v in tight)) for v, s in sig.items()}

    sig_s = signature(S, tight_s)
    sig_t = signature(T, tight_t)
    order = S.all_cells()
    assign: Dict = {}
    used = set()
    fixed = fixed or {}

    def candidates(c):
        n = S.dim_of[c]
        if n == 0:
            out = [Simplex(w, (0,)) for w in T.vertices if sig_t[w] == sig_s[c] and w not in used]
        else:
            vt = tuple(assign[v].base for v in S.vert[c])
            out = []
            for y in T.by_vertices(n).get(vt, ()):
                if y.nondegenerate and y.base not in used:
                    if all(T.face(y, i) == _img(assign, T, f) for i, f in enumerate(S.faces[c])):
                        out.append(y)
        if c in fixed:
            out = [y for y in out if y == fixed[c]]
        return out

    def rec(pos):
        if pos == len(order):
            return True
        c = order[pos]
        for y in candidates(c):
            assign[c] = y
            used.add(y.base)
            if rec(pos + 1):
                return True
            used.discard(y.base)
            del assign[c]
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * len(order) + 1000))
    try:
        ok = rec(0)
    finally:
        sys.setrecursionlimit(old)
    return SMap(S, T, dict(assign)) if ok else None


def _img(assign, T, f: Simplex) -> Simplex:
    y = assign[f.base]
    return T.realize(y.base, tuple(y.surj[t] for t in f.surj))


def is_isomorphism(f: SMap) -> bool:
    S, T = f.source, f.target
    if S.counts() != T.counts():
        return False
    seen = set()
    for c, y in f.assign.items():
        if not y.nondegenerate or y.base in seen:
            return False
        seen.add(y.base)
    return len(seen) == T.size()
