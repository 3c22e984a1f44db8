"""Exhaustive enumeration of dessins with prescribed cycle types.

The face permutation z is fixed to the standard permutation of its cycle
type (consecutive points per cycle, longest cycles first).  The search
assigns x one point at a time; each assignment x(i) = j forces
y(j) = z^-1(i), and partial cycles of x and y are tracked as paths so
that they can be checked against the allowed cycle lengths as soon as
they close or grow.  Results are deduplicated by canonical form.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .dessin import Dessin, canonical_key, mirror
from .perm import CycleType, Permutation, is_transitive

DEFAULT_DEGREE_BOUND = 24
DEFAULT_BUDGET = 10**9


class DegreeTooLarge(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class ListNotMirrorClosed(ValueError):
    pass


@dataclass(frozen=True)
class PassportQuery:
    black: CycleType
    white: CycleType
    faces: Optional[CycleType]  # None is the wildcard
    degree: int

    def __post_init__(self):
        n = self.degree
        if self.black.degree != n or self.white.degree != n:
            raise ValueError("black and white types must sum to the degree")
        if self.faces is not None and self.faces.degree != n:
            raise ValueError("face type must sum to the degree")

    @classmethod
    def parse(cls, black: str, white: str, faces: str, degree: int | None = None) -> "PassportQuery":
        b = CycleType.parse(black)
        w = CycleType.parse(white)
        f = None if faces.strip() in ("-", "", "*", "−") else CycleType.parse(faces)
        return cls(b, w, f, b.degree if degree is None else degree)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in non-increasing order, lexicographically decreasing."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def standard_permutation(ct: CycleType) -> Permutation:
    """Consecutive-point cycles, longest first: 11^1 gives (1,...,11)."""
    img = []
    start = 0
    for length in ct.lengths():
        img += [start + (k + 1) % length for k in range(length)]
        start += length
    return Permutation(img)


def _face_types(q: PassportQuery) -> list[CycleType]:
    if q.faces is not None:
        return [q.faces]
    n = q.degree
    cb, cw = q.black.num_cycles, q.white.num_cycles
    out = []
    for part in partitions(n):
        chi = cb + cw + len(part) - n
        if chi % 2 == 0 and chi <= 2:
            out.append(CycleType.from_lengths(part))
    return out


class _PathSet:
    """Partial injection on 0..n-1 tracked as disjoint open paths and closed cycles."""

    __slots__ = ("start_of", "end_of", "length", "avail", "maxlen")

    def __init__(self, n: int, ct: CycleType):
        self.start_of = list(range(n))  # start_of[e] for a path end e
        self.end_of = list(range(n))    # end_of[s] for a path start s
        self.length = [1] * n           # length[s] for a path start s
        self.avail = [0] * (n + 1)
        for l, m in ct.parts:
            self.avail[l] = m
        self.maxlen = max(ct.lengths())

    def _refresh_max(self):
        m = self.maxlen
        while m > 0 and self.avail[m] == 0:
            m -= 1
        self.maxlen = m


class _Search:
    """Depth-first search for (x, y) with z fixed."""

    def __init__(self, black: CycleType, white: CycleType, z: Permutation, budget: int):
        n = z.degree
        self.n = n
        self.z = z.images
        zinv = [0] * n
        for i, a in enumerate(self.z):
            zinv[a] = i
        self.zinv = zinv
        self.black, self.white = black, white
        self.budget = budget
        self.nodes = 0
        self.X = [-1] * n
        self.Xi = [-1] * n
        self.Y = [-1] * n
        self.xs = _PathSet(n, black)
        self.ys = _PathSet(n, white)
        self.assigned = 0

    # path bookkeeping with explicit undo
    def _link(self, ps: _PathSet, a: int, b: int, trail: list) -> bool:
        s = ps.start_of[a]
        la = ps.length[s]
        if s == b:
            if ps.avail[la] == 0:
                return False
            old = ps.maxlen
            ps.avail[la] -= 1
            if la == old and ps.avail[la] == 0:
                ps._refresh_max()
            trail.append((0, ps, la, old))
            return True
        e = ps.end_of[b]
        lb = ps.length[b]
        if la + lb > ps.maxlen:
            return False
        trail.append((1, ps, s, a, b, e, la, lb))
        ps.end_of[s] = e
        ps.start_of[e] = s
        ps.length[s] = la + lb
        return True

    def _undo(self, trail: list, mark: int):
        while len(trail) > mark:
            rec = trail.pop()
            kind = rec[0]
            if kind == 0:
                _, ps, la, old = rec
                ps.avail[la] += 1
                ps.maxlen = old
            elif kind == 1:
                _, ps, s, a, b, e, la, lb = rec
                ps.end_of[s] = a
                ps.start_of[a] = s
                ps.length[s] = la
                ps.end_of[b] = e
                ps.start_of[e] = b
                ps.length[b] = lb
            else:
                _, i, j = rec
                self.X[i] = -1
                self.Xi[j] = -1
                self.Y[j] = -1
                self.assigned -= 1

    def assign(self, i: int, j: int, trail: list) -> bool:
        """Set x(i) = j and hence y(j) = z^-1(i)."""
        k = self.zinv[i]
        if not self._link(self.xs, i, j, trail):
            return False
        if not self._link(self.ys, j, k, trail):
            return False
        self.X[i] = j
        self.Xi[j] = i
        self.Y[j] = k
        self.assigned += 1
        trail.append((2, i, j))
        return True

    def _forced(self) -> tuple[int, int] | None:
        """An assignment forced by a path that has reached the longest allowed length."""
        n = self.n
        X, Y = self.X, self.Y
        xs, ys = self.xs, self.ys
        for a in range(n):
            if X[a] < 0:
                s = xs.start_of[a]
                if xs.length[s] >= xs.maxlen:
                    return (a, s)
            if Y[a] < 0:
                s = ys.start_of[a]
                if ys.length[s] >= ys.maxlen:
                    # y(a) = s requires x(z(s)) = a
                    return (self.z[s], a)
        return None

    def _choose(self) -> int:
        X, xs = self.X, self.xs
        best, bestlen = -1, 0
        for a in range(self.n):
            if X[a] < 0:
                l = xs.length[xs.start_of[a]]
                if l > bestlen:
                    best, bestlen = a, l
                    if l > 1:
                        break
        return best

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes")

    def first_choices(self) -> list[tuple]:
        """Top-level branches as lists of assignments (for splitting work)."""
        trail: list = []
        prefix = []
        while True:
            f = self._forced()
            if f is None:
                break
            if not self.assign(f[0], f[1], trail):
                self._undo(trail, 0)
                return []
            prefix.append(f)
        self._undo(trail, 0)
        if len(prefix) == self.n:
            return [tuple(prefix)]
        for i, j in prefix:
            self.assign(i, j, trail)
        i = self._choose()
        out = [tuple(prefix) + ((i, j),) for j in range(self.n) if self.Xi[j] < 0]
        self._undo(trail, 0)
        return out

    def run(self, prefix: Sequence[tuple[int, int]] = ()) -> Iterator[tuple[tuple, tuple]]:
        trail: list = []
        for i, j in prefix:
            if not self.assign(i, j, trail):
                self._undo(trail, 0)
                return
        yield from self._dfs(trail)
        self._undo(trail, 0)

    def _dfs(self, trail: list):
        self._tick()
        mark = len(trail)
        # propagate forced closures
        while True:
            f = self._forced()
            if f is None:
                break
            if not self.assign(f[0], f[1], trail):
                self._undo(trail, mark)
                return
        if self.assigned == self.n:
            yield tuple(self.X), tuple(self.Y)
            self._undo(trail, mark)
            return
        i = self._choose()
        Xi = self.Xi
        for j in range(self.n):
            if Xi[j] >= 0:
                continue
            m2 = len(trail)
            if self.assign(i, j, trail):
                yield from self._dfs(trail)
            self._undo(trail, m2)
        self._undo(trail, mark)


def _solve(args) -> tuple[list[tuple[tuple, tuple]], int]:
    black, white, faces, prefix, budget = args
    z = standard_permutation(faces)
    s = _Search(black, white, z, budget)
    found = {}
    for xi, yi in s.run(prefix):
        x, y = Permutation._raw(xi), Permutation._raw(yi)
        if not is_transitive([x, y]):
            continue
        d = Dessin(x, y)
        found.setdefault(canonical_key(d), None)
    return list(found), s.nodes


def enumerate_passport(
    q: PassportQuery,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[Dessin]:
    """All dessins with the queried passport up to isomorphism, canonical and sorted."""
    if q.degree > degree_bound:
        raise DegreeTooLarge(f"degree {q.degree} exceeds bound {degree_bound}")
    tasks = []
    for faces in _face_types(q):
        if workers > 1:
            s = _Search(q.black, q.white, standard_permutation(faces), budget)
            for pre in s.first_choices():
                tasks.append((q.black, q.white, faces, pre, budget))
        else:
            tasks.append((q.black, q.white, faces, (), budget))
    keys = set()
    total = 0
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_solve, tasks))
    else:
        results = [_solve(t) for t in tasks]
    for ks, nodes in results:
        keys.update(ks)
        total += nodes
        if total > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
    return [Dessin(Permutation._raw(a), Permutation._raw(b)) for a, b in sorted(keys)]


def chirality_partition(ds: Sequence[Dessin], strict: bool = True):
    """Return (mirror-symmetric dessins, chiral pairs).

    With ``strict`` a dessin whose mirror image is missing from the list
    raises ListNotMirrorClosed; otherwise such dessins are returned in a
    third list.
    """
    items = list(ds)
    keys = [canonical_key(d) for d in items]
    index: dict = {}
    for i, k in enumerate(keys):
        index.setdefault(k, i)
    symmetric, pairs, unpaired = [], [], []
    done = set()
    for i, d in enumerate(items):
        if i in done:
            continue
        done.add(i)
        mk = canonical_key(mirror(d))
        if mk == keys[i]:
            symmetric.append(d)
            continue
        j = index.get(mk)
        if j is None or j in done:
            if strict:
                raise ListNotMirrorClosed(f"mirror of dessin {i} is missing")
            unpaired.append(d)
            continue
        done.add(j)
        pairs.append((d, items[j]))
    if strict:
        return symmetric, pairs
    return symmetric, pairs, unpaired


_SPLITS = ((10, 1), (9, 2), (8, 3), (7, 4), (6, 5))


def enumerate_type_degree11(workers: int = 1) -> dict[tuple[int, int], list[Dessin]]:
    """Degree-11 dessins with x^3 = y^2 = 1 and no face of length 11, keyed by face split."""
    table: dict[tuple[int, int], list[Dessin]] = {s: [] for s in _SPLITS}
    for a in range(0, 4):
        for b in range(0, 6):
            black = CycleType.from_lengths([3] * a + [1] * (11 - 3 * a))
            white = CycleType.from_lengths([2] * b + [1] * (11 - 2 * b))
            q = PassportQuery(black, white, None, 11)
            for d in enumerate_passport(q, workers=workers):
                lengths = tuple(d.passport.faces.lengths())
                if 11 in lengths:
                    continue
                table.setdefault(lengths, []).append(d)
    return table
