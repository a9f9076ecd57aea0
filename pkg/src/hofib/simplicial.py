"""Truncated simplicial sets: identities, simplicial maps and horn filling."""

from itertools import combinations_with_replacement

from ._util import ordered
from .report import ValidationReport


def coface(p, i):
    """delta_i: [p-1] -> [p], skipping i, as a tuple of images."""
    return tuple(k if k < i else k + 1 for k in range(p))


def codegeneracy(p, i):
    """sigma_i: [p+1] -> [p], hitting i twice."""
    return tuple(k if k <= i else k - 1 for k in range(p + 2))


def monotone_maps(q, p):
    """All monotone maps [q] -> [p] as tuples, in lexicographic order."""
    return list(combinations_with_replacement(range(p + 1), q + 1))


def compose_monotone(a, b):
    """a after b."""
    return tuple(a[i] for i in b)


class TruncatedSimplicialSet:
    """cells[n] lists the n-simplices; face[(n, i)] maps n-cells to (n-1)-cells
    and degeneracy[(n, i)] maps n-cells to (n+1)-cells."""

    def __init__(self, N, cells, face, degeneracy, name="S"):
        self.N = N
        self.cells = [list(c) for c in cells]
        self.face = face
        self.degeneracy = degeneracy
        self.name = name

    def d(self, n, i, x):
        return self.face[(n, i)][x]

    def s(self, n, i, x):
        return self.degeneracy[(n, i)][x]

    def counts(self):
        return [len(c) for c in self.cells]

    def __repr__(self):
        return f"<TruncatedSimplicialSet {self.name}: {self.counts()}>"


def from_reindexing(N, cells, reindex, name="S"):
    """Build faces and degeneracies from a function reindex(x, a, q, p)
    giving the action of a monotone a: [q] -> [p] on a p-simplex x."""
    face, deg = {}, {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            a = coface(n, i)
            face[(n, i)] = {x: reindex(x, a, n - 1, n) for x in cells[n]}
    for n in range(N):
        for i in range(n + 1):
            a = codegeneracy(n, i)
            deg[(n, i)] = {x: reindex(x, a, n + 1, n) for x in cells[n]}
    return TruncatedSimplicialSet(N, cells, face, deg, name=name)


def validate_simplicial(S):
    rep = ValidationReport(f"simplicial set {S.name}")
    sets = [set(c) for c in S.cells]
    for (n, i), m in S.face.items():
        for x in S.cells[n]:
            if m.get(x) not in sets[n - 1]:
                rep.schema("face-type", (n, i, x), m.get(x))
    for (n, i), m in S.degeneracy.items():
        for x in S.cells[n]:
            if m.get(x) not in sets[n + 1]:
                rep.schema("degeneracy-type", (n, i, x), m.get(x))
    if rep.violations:
        return rep
    d, s = S.d, S.s
    for n in range(2, S.N + 1):
        for x in S.cells[n]:
            for j in range(n + 1):
                for i in range(j):
                    rep.check("dd", (n, i, j, x), d(n - 1, i, d(n, j, x)), d(n - 1, j - 1, d(n, i, x)))
    for n in range(S.N):
        for x in S.cells[n]:
            for j in range(n + 1):
                y = s(n, j, x)
                for i in range(n + 2):
                    if i < j:
                        rep.check("ds", (n, i, j, x), d(n + 1, i, y), s(n - 1, j - 1, d(n, i, x)))
                    elif i in (j, j + 1):
                        rep.check("ds-identity", (n, i, j, x), d(n + 1, i, y), x)
                    else:
                        rep.check("ds", (n, i, j, x), d(n + 1, i, y), s(n - 1, j, d(n, i - 1, x)))
    for n in range(S.N - 1):
        for x in S.cells[n]:
            for j in range(n + 1):
                for i in range(j + 1):
                    rep.check("ss", (n, i, j, x), s(n + 1, i, s(n, j, x)), s(n + 1, j + 1, s(n, i, x)))
    return rep


def check_simplicial_map(S, T, maps, bijective=False, name="map"):
    """maps[n] is a dict from n-cells of S to n-cells of T."""
    rep = ValidationReport(f"simplicial map {name}")
    N = min(S.N, T.N)
    for n in range(N + 1):
        m = maps[n]
        tset = set(T.cells[n])
        for x in S.cells[n]:
            if m.get(x) not in tset:
                rep.schema("map-type", (n, x), m.get(x))
        if bijective and not rep.violations:
            img = {m[x] for x in S.cells[n]}
            if len(img) != len(S.cells[n]) or len(img) != len(tset):
                rep.add("bijective", (n,), len(img), len(tset))
    if rep.violations:
        return rep
    for n in range(1, N + 1):
        for i in range(n + 1):
            for x in S.cells[n]:
                rep.check("face", (n, i, x), maps[n - 1][S.d(n, i, x)], T.d(n, i, maps[n][x]))
    for n in range(N):
        for i in range(n + 1):
            for x in S.cells[n]:
                rep.check("degeneracy", (n, i, x), maps[n + 1][S.s(n, i, x)], T.s(n, i, maps[n][x]))
    return rep


def horns(S, n, k):
    """Yield every (n, k)-horn as a dict i -> (n-1)-cell (i != k)."""
    faces = [i for i in range(n + 1) if i != k]
    by_face = {}
    if n >= 2:
        for y in S.cells[n - 1]:
            for i in range(n):
                by_face.setdefault((i, S.d(n - 1, i, y)), set()).add(y)
    cells = ordered(S.cells[n - 1])

    def extend(pos, acc):
        if pos == len(faces):
            yield dict(acc)
            return
        j = faces[pos]
        cand = None
        if n >= 2:
            # d_i x_j = d_{j-1} x_i for earlier i < j
            for i, xi in acc.items():
                want = by_face.get((i, S.d(n - 1, j - 1, xi)), set())
                cand = want if cand is None else cand & want
        for y in (cells if cand is None else ordered(cand)):
            acc[j] = y
            yield from extend(pos + 1, acc)
            del acc[j]
    yield from extend(0, {})


def kan_check(S, n, k):
    """Search a filler for every (n, k)-horn.  Returns a report."""
    rep = ValidationReport(f"kan {S.name} horn({n},{k})")
    if n > S.N:
        raise ValueError(f"dimension {n} beyond truncation {S.N}")
    fill = set()
    for y in S.cells[n]:
        fill.add(tuple(S.d(n, i, y) for i in range(n + 1) if i != k))
    for h in horns(S, n, k):
        t = tuple(h[i] for i in sorted(h))
        if t not in fill:
            rep.add("horn-filler", (n, k, t), None, None)
    return rep


def ordinary_nerve(C, N, name=None):
    """Nerve of a finite category: 0-cells (x,), p-cells (f_1, ..., f_p) with f_i: x_{i-1} -> x_i."""
    cells = [[(x,) for x in C.objects]]
    for p in range(1, N + 1):
        nxt = []
        for s in cells[-1]:
            end = s[0] if p == 1 else C.dst(s[-1])
            for f in C.hom_from(end):
                nxt.append((f,) if p == 1 else s + (f,))
        cells.append(ordered(nxt))

    def reindex(x, a, q, p):
        def vert(i):
            if p == 0:
                return x[0]
            return C.src(x[0]) if i == 0 else C.dst(x[i - 1])
        if q == 0:
            return (vert(a[0]),)
        out = []
        for k in range(1, q + 1):
            i, j = a[k - 1], a[k]
            f = C.ident(vert(i))
            for m in range(i, j):
                f = C.comp(x[m], f)
            out.append(f)
        return tuple(out)
    return from_reindexing(N, cells, reindex, name=name or f"N{C.name}")
