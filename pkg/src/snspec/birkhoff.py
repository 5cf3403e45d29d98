"""Ordered-tuple matrices, k-lines, and the generalized Birkhoff decomposition.

Rows and columns are indexed by ordered k-tuples of distinct points in
lexicographic order.  The k-bistochastic predicate follows the recursive
factorization definition (blocks split as r * M with R bistochastic and M
one level down); the line-sum characterization is exercised through
k_line_cells in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from . import group_algebra, perms
from .errors import TheoremViolation
from .group_algebra import CosetLabel, GroupFunction, coset_indicator, format_rational, parse_rational
from .linalg import solve_feasibility


def falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def tuples_a_k(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Ordered k-tuples of distinct elements of {0,...,n-1}, lexicographic."""
    return tuple(permutations(range(n), k))


class TupleMatrix:
    """(n)_k x (n)_k exact-rational matrix over ordered k-tuples."""

    def __init__(self, n: int, k: int, entries):
        self.n = n
        self.k = k
        self.tuples = tuples_a_k(n, k)
        self.index = {t: i for i, t in enumerate(self.tuples)}
        size = len(self.tuples)
        entries = [list(row) for row in entries]
        if len(entries) != size or any(len(row) != size for row in entries):
            raise ValueError(f"expected a {size}x{size} matrix for n={n}, k={k}")
        self.entries = entries

    def __getitem__(self, key):
        a, b = key
        return self.entries[self.index[a]][self.index[b]]

    def __eq__(self, other):
        return (isinstance(other, TupleMatrix) and self.n == other.n
                and self.k == other.k
                and all(x == y for r, s in zip(self.entries, other.entries)
                        for x, y in zip(r, s)))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "entries": [[format_rational(Fraction(x)) for x in row]
                            for row in self.entries]}

    @classmethod
    def from_json(cls, data) -> "TupleMatrix":
        return cls(int(data["n"]), int(data["k"]),
                   [[parse_rational(x) for x in row] for row in data["entries"]])

    @classmethod
    def zero(cls, n: int, k: int) -> "TupleMatrix":
        size = falling(n, k)
        return cls(n, k, [[Fraction(0)] * size for _ in range(size)])


def apply_to_tuple(sigma: perms.Perm, t: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sigma[x] for x in t)


def induced_perm_matrix(sigma: perms.Perm, k: int) -> TupleMatrix:
    """Permutation matrix of the action of sigma on ordered k-tuples."""
    n = len(sigma)
    if k > n - 1:
        raise ValueError(f"k={k} too large for n={n}")
    ts = tuples_a_k(n, k)
    index = {t: i for i, t in enumerate(ts)}
    size = len(ts)
    entries = [[0] * size for _ in range(size)]
    for i, t in enumerate(ts):
        entries[i][index[apply_to_tuple(sigma, t)]] = 1
    return TupleMatrix(n, k, entries)


# ---------------------------------------------------------------------------
# k-lines

@dataclass(frozen=True)
class KLine:
    """Recursive generalized row/column descriptor.

    Base case (sublines is None): a plain row (axis='row') or column of a
    1-tuple matrix, fixing element `index` on that axis.  Otherwise `coord`
    names the tuple coordinate split on, `index` fixes that coordinate on
    `axis`, and `sublines` holds one sub-line per block, keyed by the element
    fixed on the opposite axis.
    """
    axis: str
    index: int
    coord: int | None = None
    sublines: tuple[tuple[int, "KLine"], ...] | None = None

    def __post_init__(self):
        if self.axis not in ("row", "col"):
            raise ValueError("axis must be 'row' or 'col'")


def _insert(t: tuple, pos: int, value: int) -> tuple:
    return t[:pos] + (value,) + t[pos:]


def _line_cells(line: KLine, positions: tuple[int, ...],
                row_ground: frozenset[int], col_ground: frozenset[int]):
    if line.sublines is None:
        if len(positions) != 1:
            raise ValueError("base line used at depth > 1")
        if line.axis == "row":
            if line.index not in row_ground:
                raise ValueError("row index outside ground set")
            return {((line.index,), (c,)) for c in col_ground}
        if line.index not in col_ground:
            raise ValueError("column index outside ground set")
        return {((r,), (line.index,)) for r in row_ground}

    if line.coord not in positions:
        raise ValueError(f"coordinate {line.coord} not available at this level")
    pos = positions.index(line.coord)
    sub_positions = positions[:pos] + positions[pos + 1:]
    cells = set()
    if line.axis == "row":
        if line.index not in row_ground:
            raise ValueError("row index outside ground set")
        keys = {j for j, _ in line.sublines}
        if keys != set(col_ground):
            raise ValueError("need exactly one sub-line per block")
        for j, sub in line.sublines:
            for a, b in _line_cells(sub, sub_positions,
                                    row_ground - {line.index}, col_ground - {j}):
                cells.add((_insert(a, pos, line.index), _insert(b, pos, j)))
    else:
        if line.index not in col_ground:
            raise ValueError("column index outside ground set")
        keys = {i for i, _ in line.sublines}
        if keys != set(row_ground):
            raise ValueError("need exactly one sub-line per block")
        for i, sub in line.sublines:
            for a, b in _line_cells(sub, sub_positions,
                                    row_ground - {i}, col_ground - {line.index}):
                cells.add((_insert(a, pos, i), _insert(b, pos, line.index)))
    return cells


def k_line_cells(line: KLine, n: int, k: int) -> set[tuple[tuple, tuple]]:
    """All (row-tuple, column-tuple) cells covered by the line; the matching
    cosets partition the whole group."""
    ground = frozenset(range(n))
    return _line_cells(line, tuple(range(k)), ground, ground)


def line_cosets(line: KLine, n: int, k: int) -> list[CosetLabel]:
    return [CosetLabel(a, b) for a, b in sorted(k_line_cells(line, n, k))]


def random_k_line(rng, n: int, k: int, _row_ground=None, _col_ground=None,
                  _positions=None) -> KLine:
    """Uniform-ish random line: random split coordinate, axis, index and sub-lines."""
    row_ground = frozenset(range(n)) if _row_ground is None else _row_ground
    col_ground = frozenset(range(n)) if _col_ground is None else _col_ground
    positions = tuple(range(k)) if _positions is None else _positions
    axis = rng.choice(["row", "col"])
    if len(positions) == 1:
        ground = row_ground if axis == "row" else col_ground
        return KLine(axis=axis, index=rng.choice(sorted(ground)))
    coord = rng.choice(positions)
    sub_positions = tuple(p for p in positions if p != coord)
    if axis == "row":
        index = rng.choice(sorted(row_ground))
        sublines = tuple(
            (j, random_k_line(rng, n, k, row_ground - {index}, col_ground - {j}, sub_positions))
            for j in sorted(col_ground))
    else:
        index = rng.choice(sorted(col_ground))
        sublines = tuple(
            (i, random_k_line(rng, n, k, row_ground - {i}, col_ground - {index}, sub_positions))
            for i in sorted(row_ground))
    return KLine(axis=axis, index=index, coord=coord, sublines=sublines)


# ---------------------------------------------------------------------------
# k-bistochasticity

def check_k_bistochastic(m: TupleMatrix):
    """(verdict, reason) form of the predicate; reason is None when it holds."""
    for row in m.entries:
        for x in row:
            if x < 0:
                return False, "negative entry"
    cells = {}
    for i, a in enumerate(m.tuples):
        for j, b in enumerate(m.tuples):
            v = m.entries[i][j]
            if v:
                cells[(a, b)] = Fraction(v)
    ground = frozenset(range(m.n))
    return _check_recursive(cells, ground, ground, m.k)


def _check_recursive(cells, row_ground, col_ground, k):
    n = len(row_ground)
    if k == 1:
        row_sums = {r: Fraction(0) for r in row_ground}
        col_sums = {c: Fraction(0) for c in col_ground}
        for ((r,), (c,)), v in cells.items():
            row_sums[r] += v
            col_sums[c] += v
        for r, s in row_sums.items():
            if s != 1:
                return False, f"row {r} sums to {s}"
        for c, s in col_sums.items():
            if s != 1:
                return False, f"column {c} sums to {s}"
        return True, None

    block_total_target = falling(n - 1, k - 1)
    for pos in range(k):
        blocks: dict[tuple[int, int], dict] = {}
        for (a, b), v in cells.items():
            key = (a[pos], b[pos])
            sub = blocks.setdefault(key, {})
            sub[(a[:pos] + a[pos + 1:], b[:pos] + b[pos + 1:])] = v
        r = {}
        for key, sub in blocks.items():
            r[key] = sum(sub.values(), Fraction(0)) / block_total_target
        for i in row_ground:
            total = sum((r.get((i, j), Fraction(0)) for j in col_ground), Fraction(0))
            if total != 1:
                return False, f"block row {i} (coordinate {pos}) sums to {total}"
        for j in col_ground:
            total = sum((r.get((i, j), Fraction(0)) for i in row_ground), Fraction(0))
            if total != 1:
                return False, f"block column {j} (coordinate {pos}) sums to {total}"
        for (i, j), sub in blocks.items():
            weight = r[(i, j)]
            normalized = {cell: v / weight for cell, v in sub.items()}
            ok, reason = _check_recursive(normalized, row_ground - {i}, col_ground - {j}, k - 1)
            if not ok:
                return False, f"block ({i},{j}) at coordinate {pos}: {reason}"
    return True, None


def is_k_bistochastic(m: TupleMatrix) -> bool:
    ok, _ = check_k_bistochastic(m)
    return ok


# ---------------------------------------------------------------------------
# decompositions

def _perfect_matching(support: list[list[bool]]):
    """Bipartite perfect matching by augmenting paths; None if none exists."""
    n = len(support)
    match_col = [-1] * n

    def augment(r, seen):
        for c in range(n):
            if support[r][c] and not seen[c]:
                seen[c] = True
                if match_col[c] == -1 or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    out = [0] * n
    for c, r in enumerate(match_col):
        out[r] = c
    return out


def birkhoff_decompose(m: TupleMatrix):
    """Classic Birkhoff peel of a bistochastic matrix (k = 1).

    Returns (weight, permutation) pairs with positive weights summing to 1
    whose permutation matrices re-sum to the input exactly.
    """
    if m.k != 1:
        raise ValueError("birkhoff_decompose handles k = 1; use gen_birkhoff_decompose")
    n = m.n
    work = [[Fraction(x) for x in row] for row in m.entries]
    for row in work:
        for x in row:
            if x < 0:
                raise ValueError("matrix has a negative entry")
    for i in range(n):
        if sum(work[i]) != 1 or sum(work[r][i] for r in range(n)) != 1:
            raise ValueError("matrix is not bistochastic")
    out = []
    while any(x for row in work for x in row):
        sigma = _perfect_matching([[x > 0 for x in row] for row in work])
        if sigma is None:
            raise ValueError("no perfect matching on positive support; "
                             "input was not bistochastic")
        eps = min(work[i][sigma[i]] for i in range(n))
        for i in range(n):
            work[i][sigma[i]] -= eps
        out.append((eps, tuple(sigma)))
    if sum(w for w, _ in out) != 1:
        raise AssertionError("peel weights do not sum to 1")
    return out


def _positive_inducing_perm(m: TupleMatrix):
    """A permutation sigma with m[alpha, sigma(alpha)] > 0 for every tuple, or None."""
    n, k = m.n, m.k
    by_max = {v: [t for t in m.tuples if max(t) == v] for v in range(n)}
    image = [-1] * n
    used = [False] * n

    def ok_at(v):
        for t in by_max[v]:
            if m[(t, tuple(image[x] for x in t))] <= 0:
                return False
        return True

    def bt(v):
        if v == n:
            return True
        for w in range(n):
            if not used[w]:
                image[v] = w
                used[w] = True
                if ok_at(v) and bt(v + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return tuple(image) if bt(0) else None


def gen_birkhoff_decompose(m: TupleMatrix):
    """Peel a k-bistochastic matrix into induced permutation matrices.

    Each step finds a permutation of the ground set whose induced matrix is
    supported inside the positive entries, subtracts the largest feasible
    multiple, and recurses; the support strictly shrinks.
    """
    ok, reason = check_k_bistochastic(m)
    if not ok:
        raise ValueError(f"input is not {m.k}-bistochastic: {reason}")
    n, k = m.n, m.k
    work = {(a, b): Fraction(m[(a, b)]) for a in m.tuples for b in m.tuples
            if m[(a, b)] != 0}
    current = TupleMatrix(n, k, [[Fraction(x) for x in row] for row in m.entries])
    out = []
    while work:
        sigma = _positive_inducing_perm(current)
        if sigma is None:
            raise TheoremViolation(
                "no inducing permutation inside the positive support of a "
                f"{k}-bistochastic matrix",
                {"n": n, "k": k, "remaining": {str(c): str(v) for c, v in work.items()}})
        eps = min(work[(a, apply_to_tuple(sigma, a))] for a in current.tuples)
        for a in current.tuples:
            cell = (a, apply_to_tuple(sigma, a))
            left = work[cell] - eps
            i, j = current.index[cell[0]], current.index[cell[1]]
            current.entries[i][j] = left
            if left:
                work[cell] = left
            else:
                del work[cell]
        out.append((eps, sigma))
    if sum(w for w, _ in out) != 1:
        raise AssertionError("peel weights do not sum to 1")
    return out


def resum_induced(n: int, k: int, terms) -> TupleMatrix:
    """Exact weighted sum of induced permutation matrices."""
    acc = TupleMatrix.zero(n, k)
    for weight, sigma in terms:
        p = induced_perm_matrix(sigma, k)
        for i in range(len(acc.tuples)):
            row_p = p.entries[i]
            row_a = acc.entries[i]
            for j, x in enumerate(row_p):
                if x:
                    row_a[j] += Fraction(weight)
    return acc


# ---------------------------------------------------------------------------
# nonnegative coset representations and Boolean peeling

def _hungarian(cost):
    """Exact minimum-cost assignment.  Returns (assignment, u, v) with
    u[i] + v[j] <= cost[i][j] everywhere, equality on the assignment."""
    n = len(cost)
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based, 0 = none)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = None
            j1 = None
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    assignment = [0] * n
    for j in range(1, n + 1):
        if match[j]:
            assignment[match[j] - 1] = j - 1
    return assignment, u[1:], v[1:]


def representing_matrix(f: GroupFunction) -> TupleMatrix:
    """The unique row/column-balanced matrix A with f(sigma) = sum_i A[i, sigma(i)],
    provided f lies in V_1.  Raises ValueError otherwise."""
    n = f.n
    group = perms.all_perms(n)
    avg = Fraction(sum(f.values), factorial(n))
    sums = [[Fraction(0)] * n for _ in range(n)]
    for p, val in zip(group, f.values):
        if val:
            for i in range(n):
                sums[i][p[i]] += val
    small = factorial(n - 1)
    a = [[(Fraction(n - 1) * Fraction(sums[i][j], small) - (n - 2) * avg) / n
          for j in range(n)] for i in range(n)]
    for p, val in zip(group, f.values):
        if sum(a[i][p[i]] for i in range(n)) != val:
            raise ValueError("function is not represented by any point matrix "
                             "(not in V_1)")
    return TupleMatrix(n, 1, a)


def nonneg_coset_representation(f: GroupFunction, k: int,
                                table=None) -> TupleMatrix:
    """Nonnegative coefficients b with f = sum of b[a, b] * coset indicators.

    k = 1 uses exact assignment potentials on a representing matrix; k = 2 is
    solved as a small exact LP and is capped at n <= 4.
    """
    n = f.n
    if any(v < 0 for v in f.values):
        raise ValueError("function must be nonnegative")
    if not group_algebra.is_in_vk(f, k, table):
        raise ValueError(f"function is not in V_{k}")
    if k == 1:
        a = representing_matrix(f)
        assignment, u, v = _hungarian(a.entries)
        min_value = sum(a.entries[i][assignment[i]] for i in range(n))
        if min_value < 0:
            raise TheoremViolation(
                "nonnegative function admits an assignment with negative value",
                {"assignment": assignment, "value": min_value})
        shift = Fraction(min_value, 2 * n)
        b = [[a.entries[i][j] - (u[i] - shift) - (v[j] - shift) for j in range(n)]
             for i in range(n)]
        if any(x < 0 for row in b for x in row):
            raise AssertionError("assignment potentials failed to clear the matrix")
        out = TupleMatrix(n, 1, b)
    elif k == 2:
        if n > 4:
            raise ValueError("k=2 representation is capped at n <= 4")
        ts = tuples_a_k(n, k)
        pairs = [(a, b) for a in ts for b in ts]
        rows = []
        for p in perms.all_perms(n):
            rows.append([1 if apply_to_tuple(p, a) == b else 0 for a, b in pairs])
        result = solve_feasibility(len(pairs), rows, list(f.values), [], [], nonneg=True)
        if not result.feasible:
            raise TheoremViolation(
                "no nonnegative coset representation for a nonnegative V_2 function",
                {"farkas": [str(x) for x in result.farkas]})
        size = len(ts)
        entries = [[Fraction(0)] * size for _ in range(size)]
        for (a, b), val in zip(pairs, result.x):
            entries[ts.index(a)][ts.index(b)] = val
        out = TupleMatrix(n, k, entries)
    else:
        raise ValueError("complete solver exists for k=1; k=2 needs n <= 4")

    resummed = [Fraction(0)] * factorial(n)
    for a in out.tuples:
        for b in out.tuples:
            coeff = out[(a, b)]
            if coeff:
                for r in coset_indicator(CosetLabel(a, b), n).support():
                    resummed[r] += coeff
    if any(x != y for x, y in zip(resummed, f.values)):
        raise AssertionError("representation does not re-sum to the input")
    return out


def boolean_peel(f: GroupFunction, k: int, table=None) -> list[CosetLabel]:
    """Write a Boolean function in V_k as a disjoint union of k-cosets.

    Peels cosets contained in the support and recurses, backtracking over the
    choice of coset: a peel that strands the remainder is undone rather than
    reported, so a decomposition is found whenever one exists.  Failure means
    no decomposition exists at all, which does happen at small n (V_k then
    contains Boolean functions that are not disjoint unions of cosets) and is
    reported as a theorem violation.
    """
    n = f.n
    if n > 6:
        raise ValueError("boolean peel capped at n <= 6")
    if any(v not in (0, 1) for v in f.values):
        raise ValueError("function must be 0/1 valued")
    if not group_algebra.is_in_vk(f, k, table):
        raise ValueError(f"function is not in V_{k}")

    members = {label: coset_indicator(label, n).support()
               for label in group_algebra.all_coset_labels(n, k)}
    containing: dict[int, list[CosetLabel]] = {}
    for label, ranks in members.items():
        for r in ranks:
            containing.setdefault(r, []).append(label)

    dead: set[frozenset[int]] = set()

    def search(remaining: frozenset[int]):
        if not remaining:
            return []
        if remaining in dead:
            return None
        anchor = min(remaining)  # must be covered by exactly one chosen coset
        for label in containing[anchor]:
            ranks = members[label]
            if ranks <= remaining:
                rest = search(remaining - ranks)
                if rest is not None:
                    return [label] + rest
        dead.add(remaining)
        return None

    result = search(frozenset(f.support()))
    if result is None:
        raise TheoremViolation(
            f"Boolean function in V_{k} is not a disjoint union of {k}-cosets",
            {"n": n, "k": k, "support": sorted(f.support())})
    return result
