"""Problem front ends: compile three combinatorial problems into mixed-relation
instances, solve, and decode domain answers.

* Lobbying: flip whole 0/1 rows of a w x m matrix so every column gets a
  strict majority of 1s, minimizing flipped rows.  Rows collapse into at
  most 2^m row types, so the program size depends on m only.
* Bounded-distance string selection (multi strings): find y over alphabet S
  with per-string distance bounds d_h <= dist(y, s_h) <= D_h under a
  character-wise distance table that treats wildcard positions as free;
  covers Closest String as the special case d == 0, scalar D, Hamming
  table.  Positions collapse into column types, so the program size depends
  on the number of strings and |S| only.
* Equitable coloring with a given vertex cover: spend one feasibility
  program per canonical proper coloring of the cover; the leftover vertices
  split into at most 2^|cover| neighborhood classes.

Every reducer returns plain data results; all ILP work goes through
reduction.solve_mixed, and decoded answers are re-checked against their
source program before being returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .core import NFoldInstance, Relation
from .errors import InstanceError, SizeLimitError
from .reduction import solve_mixed

# ---------------------------------------------------------------------------
# lobbying


@dataclass(frozen=True)
class LobbyingInstance:
    """Binary opinion matrix (w rows x m columns) and a flip budget."""

    rows: tuple[tuple[int, ...], ...]
    budget: int

    def __post_init__(self):
        if not self.rows:
            raise InstanceError("lobbying needs at least one matrix row")
        m = len(self.rows[0])
        for row in self.rows:
            if len(row) != m:
                raise InstanceError("matrix rows have differing lengths")
            if any(v not in (0, 1) for v in row):
                raise InstanceError("matrix entries must be 0 or 1")
        if self.budget < 0:
            raise InstanceError("budget must be non-negative")

    @property
    def w(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    @property
    def row_types(self) -> tuple[tuple[int, ...], ...]:
        """Distinct rows in first-occurrence order."""
        seen: dict[tuple[int, ...], None] = {}
        for row in self.rows:
            seen.setdefault(row, None)
        return tuple(seen)

    @property
    def type_counts(self) -> tuple[int, ...]:
        counts = {rt: 0 for rt in self.row_types}
        for row in self.rows:
            counts[row] += 1
        return tuple(counts.values())

    @property
    def deficits(self) -> tuple[int, ...]:
        """Per column: 1s still missing for a strict majority of the w rows."""
        need = self.w // 2 + 1
        return tuple(
            max(0, need - sum(row[j] for row in self.rows)) for j in range(self.m)
        )


def lobbying_to_ilp(inst: LobbyingInstance) -> NFoldInstance:
    """One block per row type, one variable (rows of that type to flip).

    Flipping a type-i row adds one 1 to exactly the columns where the type
    has 0; column j therefore needs sum_i flips_i * B_j(i) >= deficit_j,
    encoded as <= on the negated row.  Local <= rows cap flips by the type
    multiplicity; unit costs count flipped rows.
    """
    types = inst.row_types
    counts = inst.type_counts
    deficits = inst.deficits
    blocks = []
    for rt in types:
        col = [[-(1 - rt[j])] for j in range(inst.m)]  # -B_j(type)
        blocks.append(col)
    return NFoldInstance(
        n=len(types),
        t=1,
        r=inst.m,
        blocks=blocks,
        b_top=[-g for g in deficits],
        b_local=list(counts),
        cost=[[1]] * len(types),
        global_relations=[Relation.LE] * inst.m,
        local_relations=[Relation.LE] * len(types),
    )


@dataclass(frozen=True)
class LobbyingResult:
    yes: bool
    optimum: Optional[int]  # fewest rows to flip; None if no flip set works
    flips: Optional[tuple[int, ...]]  # per row type, aligned with row_types


def lobbying_solve(inst: LobbyingInstance) -> LobbyingResult:
    ilp = lobbying_to_ilp(inst)
    sol = solve_mixed(ilp)
    if sol is None:
        return LobbyingResult(yes=False, optimum=None, flips=None)
    flips = tuple(int(row[0]) for row in sol.bricks)
    return LobbyingResult(yes=sol.objective <= inst.budget, optimum=sol.objective, flips=flips)


# ---------------------------------------------------------------------------
# bounded-distance string selection

WILDCARD = "*"


@dataclass(frozen=True)
class MultiStringsInstance:
    """k equal-length strings (wildcard allowed), per-string distance bounds,
    a character-wise distance table, and a flag weighting the objective.

    distances maps (string_char, solution_char) to an integer; every pair in
    (alphabet + wildcard) x alphabet must be present and wildcard rows must
    be all zero.  beta=1 minimizes the summed distance, beta=0 makes the
    program pure feasibility.
    """

    strings: tuple[str, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    distances: Mapping[tuple[str, str], int]
    beta: int = 0

    def __post_init__(self):
        if not self.strings:
            raise InstanceError("need at least one string")
        L = len(self.strings[0])
        if any(len(s) != L for s in self.strings):
            raise InstanceError("strings have differing lengths")
        k = len(self.strings)
        if len(self.lower) != k or len(self.upper) != k:
            raise InstanceError("need one lower and one upper bound per string")
        if self.beta not in (0, 1):
            raise InstanceError("beta must be 0 or 1")
        alphabet = self.alphabet
        if not alphabet:
            raise InstanceError("distance table names no solution characters")
        for a in alphabet + (WILDCARD,):
            for c in alphabet:
                if (a, c) not in self.distances:
                    raise InstanceError(f"distance table misses pair ({a!r}, {c!r})")
        for c in alphabet:
            if self.distances[(WILDCARD, c)] != 0:
                raise InstanceError("wildcard row of the distance table must be zero")
        for s in self.strings:
            for ch in s:
                if ch != WILDCARD and ch not in alphabet:
                    raise InstanceError(f"string character {ch!r} not in the table alphabet")

    @property
    def k(self) -> int:
        return len(self.strings)

    @property
    def length(self) -> int:
        return len(self.strings[0])

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Solution characters, from the table's second axis, sorted."""
        return tuple(sorted({c for (_, c) in self.distances.keys()}))

    @property
    def column_types(self) -> tuple[tuple[str, ...], ...]:
        """Distinct position columns (one char per string) in leftmost order."""
        seen: dict[tuple[str, ...], None] = {}
        for pos in range(self.length):
            seen.setdefault(tuple(s[pos] for s in self.strings), None)
        return tuple(seen)

    @property
    def type_counts(self) -> tuple[int, ...]:
        counts = {ct: 0 for ct in self.column_types}
        for pos in range(self.length):
            counts[tuple(s[pos] for s in self.strings)] += 1
        return tuple(counts.values())


def hamming_table(alphabet: Sequence[str]) -> dict[tuple[str, str], int]:
    """0/1 mismatch table over the given alphabet, wildcard row included."""
    table = {}
    for c in alphabet:
        for a in alphabet:
            table[(a, c)] = 0 if a == c else 1
        table[(WILDCARD, c)] = 0
    return table


def multistrings_to_ilp(inst: MultiStringsInstance) -> NFoldInstance:
    """One block per column type, one variable per solution character.

    x^(i)_c counts type-i positions that receive character c; global rows
    accumulate per-string distances (>= lower bounds first, then <= upper
    bounds); each local row pins the type's position count exactly.
    """
    types = inst.column_types
    alphabet = inst.alphabet
    k = inst.k
    blocks = []
    costs = []
    for ct in types:
        rows = [[int(inst.distances[(ct[h], c)]) for c in alphabet] for h in range(k)]
        blocks.append(rows + [list(row) for row in rows])  # GE copy then LE copy
        costs.append([inst.beta * sum(inst.distances[(ct[h], c)] for h in range(k)) for c in alphabet])
    return NFoldInstance(
        n=len(types),
        t=len(alphabet),
        r=2 * k,
        blocks=blocks,
        b_top=list(inst.lower) + list(inst.upper),
        b_local=list(inst.type_counts),
        cost=costs,
        global_relations=[Relation.GE] * k + [Relation.LE] * k,
        local_relations=[Relation.EQ] * len(types),
    )


@dataclass(frozen=True)
class StringResult:
    string: str
    objective: int  # beta-weighted total distance of the returned string


def multistrings_solve(inst: MultiStringsInstance) -> Optional[StringResult]:
    """A string meeting every bound (optimal when beta=1), or None."""
    if inst.length == 0:
        if all(v <= 0 for v in inst.lower):
            return StringResult(string="", objective=0)
        return None
    ilp = multistrings_to_ilp(inst)
    sol = solve_mixed(ilp)
    if sol is None:
        return None
    types = inst.column_types
    alphabet = inst.alphabet
    positions: dict[tuple[str, ...], list[int]] = {ct: [] for ct in types}
    for pos in range(inst.length):
        positions[tuple(s[pos] for s in inst.strings)].append(pos)
    out = [""] * inst.length
    for i, ct in enumerate(types):
        slots = positions[ct]  # ascending, so characters fill leftmost-first
        at = 0
        for c, count in zip(alphabet, sol.bricks[i]):
            for _ in range(int(count)):
                out[slots[at]] = c
                at += 1
    result = StringResult(string="".join(out), objective=sol.objective)
    for h in range(inst.k):
        dist = table_distance(inst, result.string, h)
        assert inst.lower[h] <= dist <= inst.upper[h], "internal: decoded string off bounds"
    return result


def table_distance(inst: MultiStringsInstance, candidate: str, h: int) -> int:
    """Distance of a candidate solution string to inst.strings[h]."""
    s = inst.strings[h]
    return sum(int(inst.distances[(s[pos], candidate[pos])]) for pos in range(len(candidate)))


def closest_string_solve(strings: Sequence[str], d: int) -> Optional[str]:
    """Classic closest string: some y with Hamming distance <= d to every
    input string, or None.  Wildcards in the inputs match everything."""
    alphabet = sorted({ch for s in strings for ch in s if ch != WILDCARD})
    if not alphabet:
        alphabet = ["a"]  # all-wildcard inputs: any letter works
    inst = MultiStringsInstance(
        strings=tuple(strings),
        lower=(0,) * len(strings),
        upper=(d,) * len(strings),
        distances=hamming_table(alphabet),
        beta=0,
    )
    result = multistrings_solve(inst)
    return None if result is None else result.string


# ---------------------------------------------------------------------------
# equitable coloring


@dataclass(frozen=True)
class EquitableColoringInstance:
    """Graph, color count, and a vertex cover to parameterize by."""

    vertices: tuple
    edges: tuple[tuple, ...]
    colors: int
    cover: tuple

    def __post_init__(self):
        verts = list(self.vertices)
        if len(set(verts)) != len(verts):
            raise InstanceError("duplicate vertices")
        vset = set(verts)
        for u, v in self.edges:
            if u not in vset or v not in vset:
                raise InstanceError(f"edge ({u!r}, {v!r}) names an unknown vertex")
            if u == v:
                raise InstanceError(f"self-loop at {u!r} cannot be properly colored")
        cover = set(self.cover)
        if not cover <= vset:
            raise InstanceError("cover contains unknown vertices")
        for u, v in self.edges:
            if u not in cover and v not in cover:
                raise InstanceError(f"edge ({u!r}, {v!r}) is not covered")
        if self.colors < 1:
            raise InstanceError("need at least one color")

    def neighbors(self, v) -> frozenset:
        return frozenset(
            (b if a == v else a) for a, b in self.edges if v in (a, b)
        )


@dataclass(frozen=True)
class ColoringResult:
    yes: bool
    coloring: Optional[dict]  # vertex -> color 1..h


def minimum_vertex_cover(vertices: Sequence, edges: Sequence, limit: int = 20) -> tuple:
    """Smallest cover by subset search over sorted vertices; testing-scale only."""
    verts = sorted(vertices)
    if len(verts) > limit:
        raise SizeLimitError(f"{len(verts)} vertices exceed the cover search limit {limit}")
    for size in range(len(verts) + 1):
        for cand in itertools.combinations(verts, size):
            cset = set(cand)
            if all(u in cset or v in cset for u, v in edges):
                return tuple(cand)
    return tuple(verts)


def _canonical_cover_colorings(inst: EquitableColoringInstance, big: int):
    """Proper colorings of the cover, one per equivalence class under
    permutations that fix the {1..big} / {big+1..h} split (those buckets
    have different class-size targets, so they must not be mixed)."""
    order = sorted(inst.cover)
    h = inst.colors
    adjacency = {v: inst.neighbors(v) for v in order}
    coloring: dict = {}

    def rec(idx: int):
        if idx == len(order):
            yield dict(coloring)
            return
        v = order[idx]
        used = set(coloring.values())
        allowed = set(used)
        for bucket in (range(1, big + 1), range(big + 1, h + 1)):
            for c in bucket:
                if c not in used:
                    allowed.add(c)  # first fresh color of each bucket only
                    break
        blocked = {coloring[u] for u in adjacency[v] if u in coloring}
        for c in sorted(allowed - blocked):
            coloring[v] = c
            yield from rec(idx + 1)
            del coloring[v]

    yield from rec(0)


def equitable_coloring_solve(inst: EquitableColoringInstance) -> ColoringResult:
    """Proper coloring with class sizes differing by at most one, or no.

    For each canonical proper coloring of the cover, leftover vertices are
    grouped into classes by neighborhood; one pure-equality program per
    coloring decides whether the classes can fill every color to its exact
    target size (floor(|V|/h), plus one for the first few colors), with the
    aggregate zero row forbidding colors already used on a neighbor.
    """
    h = inst.colors
    nv = len(inst.vertices)
    base = nv // h
    big = nv - h * base  # colors 1..big get base+1 vertices, the rest base
    targets = [base + 1 if j <= big else base for j in range(1, h + 1)]

    rest = sorted(set(inst.vertices) - set(inst.cover))
    classes: dict[frozenset, list] = {}
    for v in rest:
        classes.setdefault(inst.neighbors(v), []).append(v)
    class_keys = sorted(classes.keys(), key=lambda ns: sorted(classes[ns]))

    for phi in _canonical_cover_colorings(inst, big):
        used_in_cover = [0] * (h + 1)
        for c in phi.values():
            used_in_cover[c] += 1
        rhs = [targets[j - 1] - used_in_cover[j] for j in range(1, h + 1)]
        if any(v < 0 for v in rhs):
            continue
        if not class_keys:
            if all(v == 0 for v in rhs):
                return ColoringResult(yes=True, coloring=dict(phi))
            continue
        blocks = []
        for ns in class_keys:
            conflict = {phi[u] for u in ns}
            blocks.append(
                [[1 if (j in conflict) else 0 for j in range(1, h + 1)]]
                + [[1 if jj == j else 0 for jj in range(1, h + 1)] for j in range(1, h + 1)]
            )
        ilp = NFoldInstance(
            n=len(class_keys),
            t=h,
            r=h + 1,
            blocks=blocks,
            b_top=[0] + rhs,
            b_local=[len(classes[ns]) for ns in class_keys],
            cost=[[0] * h] * len(class_keys),
        )
        sol = solve_mixed(ilp)
        if sol is None:
            continue
        full = dict(phi)
        for i, ns in enumerate(class_keys):
            members = sorted(classes[ns])
            at = 0
            for j in range(1, h + 1):
                for _ in range(int(sol.bricks[i][j - 1])):
                    full[members[at]] = j
                    at += 1
        assert _is_equitable_proper(inst, full, targets), "internal: decoded coloring invalid"
        return ColoringResult(yes=True, coloring=full)
    return ColoringResult(yes=False, coloring=None)


def _is_equitable_proper(inst: EquitableColoringInstance, coloring: dict, targets) -> bool:
    if set(coloring.keys()) != set(inst.vertices):
        return False
    if any(coloring[u] == coloring[v] for u, v in inst.edges):
        return False
    sizes = [0] * (inst.colors + 1)
    for c in coloring.values():
        if not 1 <= c <= inst.colors:
            return False
        sizes[c] += 1
    return sorted(sizes[1:]) == sorted(targets)
