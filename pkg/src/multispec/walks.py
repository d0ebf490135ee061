"""Brute-force ground truth: essential closed walks and their contributions.

The limiting even moments equal sums of weights of *essential* walks: closed
walks over component-labeled vertices whose skeleton is a tree, written in
minimal form (every newly visited vertex takes the smallest unused local
index of its component).  A walk of length 2t contributes

    weight(w) = prod_j alpha_j^(#vertices of w in component j)
                * prod_{e in skeleton} p * X_{n(e)}

where n(e) counts traversals of edge e in both directions (always even for
tree skeletons).  This module enumerates essential walks directly, evaluates
their weights in exact rationals, and verifies the two first-edge splitting
identities and the ordered-cluster pass-count formula that underlie the
recurrence in :mod:`multispec.moments`.

Vertices are written ``(component, local_index)`` and printed like ``1_2``
for local index 1 in component 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Iterable, Sequence

from .ensemble import EnsembleSpec
from .errors import GuardError, ValidationError

Vertex = tuple[int, int]  # (component, local index), both 1-based
Edge = tuple[Vertex, Vertex]  # endpoints in sorted order

KIND_NOT_CLOSED = "walk_not_closed"
KIND_BAD_VERTEX = "bad_vertex_label"
KIND_SELF_STEP = "self_step"
KIND_ODD_LENGTH = "odd_walk_length"
KIND_ODD_PASSES = "odd_pass_count"
KIND_ZERO_LENGTH = "zero_length_walk"
KIND_NOT_TREE = "skeleton_not_tree"
KIND_BAD_SPLIT = "bad_split_parts"
KIND_CLUSTER = "bad_cluster_arguments"

DEFAULT_MAX_WALK_LENGTH = 12


def vertex_label(v: Vertex) -> str:
    """``(2, 1) -> "1_2"``: local index first, component second."""
    return f"{v[1]}_{v[0]}"


def parse_vertex_label(text: str) -> Vertex:
    try:
        idx, comp = text.strip().split("_")
        v = (int(comp), int(idx))
    except ValueError as exc:
        raise ValidationError(KIND_BAD_VERTEX, f"cannot parse vertex label {text!r}") from exc
    if v[0] < 1 or v[1] < 1:
        raise ValidationError(KIND_BAD_VERTEX, f"vertex label {text!r} must be positive")
    return v


def _edge(a: Vertex, b: Vertex) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Walk:
    """A closed walk; ``steps`` lists k+1 vertices with the last equal to
    the first (a single vertex denotes the zero-length walk)."""

    steps: tuple[Vertex, ...]

    @classmethod
    def from_steps(cls, steps: Sequence[Vertex]) -> "Walk":
        steps = tuple(tuple(v) for v in steps)
        if not steps:
            raise ValidationError(KIND_NOT_CLOSED, "a walk needs at least one vertex")
        for v in steps:
            if len(v) != 2 or v[0] < 1 or v[1] < 1:
                raise ValidationError(KIND_BAD_VERTEX, f"bad vertex {v!r}")
        if steps[0] != steps[-1]:
            raise ValidationError(KIND_NOT_CLOSED, "walk does not return to its first vertex")
        for a, b in zip(steps, steps[1:]):
            if a == b:
                raise ValidationError(KIND_SELF_STEP, f"self step at {vertex_label(a)}")
        return cls(steps=steps)

    @classmethod
    def from_labels(cls, text: str) -> "Walk":
        """Parse ``"1_2,1_1,1_2"`` into a walk."""
        return cls.from_steps([parse_vertex_label(tok) for tok in text.split(",")])

    def labels(self) -> str:
        return ",".join(vertex_label(v) for v in self.steps)

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def root(self) -> Vertex:
        return self.steps[0]

    @cached_property
    def skeleton_vertices(self) -> frozenset[Vertex]:
        return frozenset(self.steps)

    @cached_property
    def skeleton_edges(self) -> frozenset[Edge]:
        return frozenset(_edge(a, b) for a, b in zip(self.steps, self.steps[1:]))

    @cached_property
    def pass_counts(self) -> dict[Edge, int]:
        return dict(Counter(_edge(a, b) for a, b in zip(self.steps, self.steps[1:])))

    def has_tree_skeleton(self) -> bool:
        return len(self.skeleton_vertices) == len(self.skeleton_edges) + 1

    def root_departures(self) -> int:
        """Number of steps that start at the root."""
        root = self.steps[0]
        return sum(1 for v in self.steps[:-1] if v == root)

    def root_degree(self) -> int:
        root = self.steps[0]
        return sum(1 for e in self.skeleton_edges if root in e)


def minimize_steps(steps: Sequence[Vertex]) -> tuple[Vertex, ...]:
    """Relabel so each newly visited vertex takes the smallest unused local
    index of its component (first-visit order)."""
    mapping: dict[Vertex, Vertex] = {}
    used: Counter = Counter()
    out: list[Vertex] = []
    for v in steps:
        if v not in mapping:
            comp = v[0]
            used[comp] += 1
            mapping[v] = (comp, used[comp])
        out.append(mapping[v])
    return tuple(out)


def is_minimal(walk: Walk) -> bool:
    """True iff every newly visited vertex is the smallest unused local
    index of its component (the canonical class representative)."""
    return walk.steps == minimize_steps(walk.steps)


def steps_allowed(walk: Walk, spec: EnsembleSpec) -> bool:
    """Every step must cross a pair of components joined in gamma."""
    for a, b in zip(walk.steps, walk.steps[1:]):
        if a[0] > spec.kappa or b[0] > spec.kappa:
            return False
        if spec.gamma[a[0] - 1][b[0] - 1] != 1:
            return False
    return True


def is_essential(walk: Walk, spec: EnsembleSpec) -> bool:
    return is_minimal(walk) and walk.has_tree_skeleton() and steps_allowed(walk, spec)


def walk_weight(walk: Walk, spec: EnsembleSpec) -> Fraction:
    """Exact contribution of a walk; zero when some step is not allowed."""
    if not steps_allowed(walk, spec):
        return Fraction(0)
    weight = Fraction(1)
    per_component: Counter = Counter(v[0] for v in walk.skeleton_vertices)
    for comp, count in per_component.items():
        weight *= spec.alpha[comp - 1] ** count
    for edge, passes in walk.pass_counts.items():
        if passes % 2 != 0:
            raise ValidationError(
                KIND_ODD_PASSES,
                f"edge {vertex_label(edge[0])}-{vertex_label(edge[1])} passed {passes} times; "
                "walk is not essential",
            )
        weight *= spec.p * spec.even_moment(passes // 2)
    return weight


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

_ENUM_CACHE: dict[tuple, tuple[Walk, ...]] = {}


def enumerate_essential_walks(
    spec: EnsembleSpec, length: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> list[Walk]:
    """All essential walks of the given even length, one per equivalence
    class, enumerated by depth-first extension.

    A walk of length 2t covers a tree with at most t+1 vertices, so the
    search only ever adds (a) a step along an existing skeleton edge or
    (b) a step to the next unused vertex of an allowed component; a step
    closing a cycle is never generated.  Walk counts grow super-exponentially
    in the length, hence the guard (overridable via ``max_length``).
    """
    if length < 0 or length % 2 != 0:
        raise ValidationError(KIND_ODD_LENGTH, f"walk length must be even and >= 0, got {length}")
    if length > max_length:
        raise GuardError(
            f"enumeration of length {length} exceeds the guard ({max_length}); "
            "raise max_length explicitly to override"
        )
    if length == 0:
        return [Walk.from_steps(((j, 1),)) for j in range(1, spec.kappa + 1)]

    key = (spec.gamma, length)
    cached = _ENUM_CACHE.get(key)
    if cached is not None:
        return list(cached)

    t = length // 2
    kappa = spec.kappa
    gamma = spec.gamma
    walks: list[Walk] = []

    for root_comp in range(1, kappa + 1):
        root = (root_comp, 1)
        steps: list[Vertex] = [root]
        used = [0] * (kappa + 1)
        used[root_comp] = 1
        adjacency: dict[Vertex, list[Vertex]] = {root: []}
        depth = {root: 0}

        def dfs(current: Vertex, remaining: int) -> None:
            if remaining == 0:
                walks.append(Walk.from_steps(tuple(steps)))
                return
            # revisit along an existing skeleton edge
            for nxt in adjacency[current]:
                if depth[nxt] <= remaining - 1:
                    steps.append(nxt)
                    dfs(nxt, remaining - 1)
                    steps.pop()
            # open a new vertex (kept minimal by construction)
            if len(adjacency) <= t and depth[current] + 1 <= remaining - 1:
                comp = current[0]
                for c in range(1, kappa + 1):
                    if gamma[comp - 1][c - 1] != 1:
                        continue
                    nv = (c, used[c] + 1)
                    used[c] += 1
                    adjacency[nv] = [current]
                    adjacency[current].append(nv)
                    depth[nv] = depth[current] + 1
                    steps.append(nv)
                    dfs(nv, remaining - 1)
                    steps.pop()
                    del depth[nv]
                    adjacency[current].pop()
                    del adjacency[nv]
                    used[c] -= 1

        dfs(root, length)

    _ENUM_CACHE[key] = tuple(walks)
    return walks


def oracle_moment(
    spec: EnsembleSpec, order: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> Fraction:
    """Exact moment of the given even order by full enumeration."""
    walks = enumerate_essential_walks(spec, order, max_length=max_length)
    return sum((walk_weight(w, spec) for w in walks), Fraction(0))


# ---------------------------------------------------------------------------
# First-edge classification, splitting and gathering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkClassification:
    """First-edge parameters of an essential walk.

    l: half length; r: steps leaving the root; f: steps from the root into
    its first neighbor; u: half of the length spent on the first-neighbor
    side once the first edge is removed; root_component / second_component:
    components of the first two vertices.
    """

    l: int
    r: int
    u: int
    f: int
    root_component: int
    second_component: int

    def __post_init__(self):
        if not (1 <= self.f <= self.r):
            raise ValidationError(KIND_NOT_TREE, f"classification violates 1 <= f <= r: {self}")
        if self.r + self.u > self.l:
            raise ValidationError(KIND_NOT_TREE, f"classification violates r + u <= l: {self}")


def _far_side_vertices(walk: Walk) -> frozenset[Vertex]:
    """Vertices of the subtree hanging off the second vertex once the first
    edge is removed from the skeleton."""
    rho, nu = walk.steps[0], walk.steps[1]
    root_edge = _edge(rho, nu)
    adjacency: dict[Vertex, list[Vertex]] = {}
    for a, b in walk.skeleton_edges:
        if (a, b) == root_edge:
            continue
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    seen = {nu}
    frontier = [nu]
    while frontier:
        v = frontier.pop()
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def classify_first_edge(walk: Walk) -> WalkClassification:
    """Compute (l, r, u, f) by removing the first edge from the skeleton."""
    if walk.length == 0:
        raise ValidationError(KIND_ZERO_LENGTH, "zero-length walk has no first edge")
    if not walk.has_tree_skeleton():
        raise ValidationError(KIND_NOT_TREE, "first-edge classification needs a tree skeleton")
    rho, nu = walk.steps[0], walk.steps[1]
    far = _far_side_vertices(walk)
    l = walk.length // 2
    r = walk.root_departures()
    f = sum(1 for a, b in zip(walk.steps, walk.steps[1:]) if a == rho and b == nu)
    far_passes = sum(
        passes for edge, passes in walk.pass_counts.items() if edge[0] in far and edge[1] in far
    )
    return WalkClassification(
        l=l,
        r=r,
        u=far_passes // 2,
        f=f,
        root_component=rho[0],
        second_component=nu[0],
    )


@dataclass(frozen=True)
class SplitWalk:
    """Result of cutting a walk at its first edge: the sub-walk through the
    first edge (left), the remainder around the root (right), and the binary
    code recording which side each root departure took (1 = left)."""

    left: Walk
    right: Walk
    code: tuple[int, ...]


def split_first_edge(walk: Walk) -> SplitWalk:
    """Separate a walk at its first edge and minimize both parts.

    Steps on the first edge or strictly beyond it form the left part; all
    other steps form the right part.  Each time the walk leaves the root a
    code symbol is recorded: 1 when the step goes through the first edge,
    0 otherwise.  Both parts are relabeled to minimal form.
    """
    if walk.length == 0:
        raise ValidationError(KIND_ZERO_LENGTH, "cannot split the zero-length walk")
    if not walk.has_tree_skeleton():
        raise ValidationError(KIND_NOT_TREE, "first-edge splitting needs a tree skeleton")
    rho, nu = walk.steps[0], walk.steps[1]
    root_edge = _edge(rho, nu)
    far = _far_side_vertices(walk)
    left_steps: list[Vertex] = [rho]
    right_steps: list[Vertex] = [rho]
    code: list[int] = []
    for a, b in zip(walk.steps, walk.steps[1:]):
        is_left = _edge(a, b) == root_edge or (a in far and b in far)
        if a == rho:
            code.append(1 if is_left else 0)
        (left_steps if is_left else right_steps).append(b)
    return SplitWalk(
        left=Walk.from_steps(minimize_steps(left_steps)),
        right=Walk.from_steps(minimize_steps(right_steps)),
        code=tuple(code),
    )


def _excursions(walk: Walk) -> list[list[Vertex]]:
    """Decompose a rooted closed walk into its root-to-root excursions."""
    root = walk.steps[0]
    out: list[list[Vertex]] = []
    current: list[Vertex] = [root]
    for v in walk.steps[1:]:
        current.append(v)
        if v == root:
            out.append(current)
            current = [root]
    return out


def gather_first_edge(left: Walk, right: Walk, code: Sequence[int]) -> Walk:
    """Inverse of :func:`split_first_edge`: interleave the root excursions of
    the two parts as dictated by the code and relabel minimally.

    Vertices of the two parts are kept distinct (apart from the shared root)
    while gathering, as if colored by side.
    """
    code = tuple(code)
    if not code or code[0] != 1 or any(sym not in (0, 1) for sym in code):
        raise ValidationError(KIND_BAD_SPLIT, f"code must be 0/1 with a leading 1, got {code}")
    if left.root[0] != right.root[0]:
        raise ValidationError(KIND_BAD_SPLIT, "left and right parts have different root components")
    left_exc = _excursions(left)
    right_exc = _excursions(right)
    if sum(code) != len(left_exc) or len(code) - sum(code) != len(right_exc):
        raise ValidationError(
            KIND_BAD_SPLIT,
            f"code {code} does not match excursion counts "
            f"({len(left_exc)} left, {len(right_exc)} right)",
        )
    root_comp = left.root[0]
    root = (root_comp, 1)
    mapping: dict[tuple[str, Vertex], Vertex] = {
        ("L", left.root): root,
        ("R", right.root): root,
    }
    used: Counter = Counter({root_comp: 1})
    out: list[Vertex] = [root]
    iters = {"L": iter(left_exc), "R": iter(right_exc)}
    for sym in code:
        side = "L" if sym == 1 else "R"
        excursion = next(iters[side])
        for v in excursion[1:]:
            key = (side, v)
            if key not in mapping:
                comp = v[0]
                used[comp] += 1
                mapping[key] = (comp, used[comp])
            out.append(mapping[key])
    return Walk.from_steps(out)


# ---------------------------------------------------------------------------
# Enumeration-based verification of the splitting identities
# ---------------------------------------------------------------------------


def _walks_by_root(
    spec: EnsembleSpec, length: int, max_length: int
) -> dict[int, list[Walk]]:
    grouped: dict[int, list[Walk]] = {j: [] for j in range(1, spec.kappa + 1)}
    for w in enumerate_essential_walks(spec, length, max_length=max_length):
        grouped[w.root[0]].append(w)
    return grouped


def enumerated_walk_sum(
    spec: EnsembleSpec, j: int, l: int, r: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> tuple[Fraction, int]:
    """(total weight, count) of essential walks with root in component j,
    half-length l and r root departures, by direct enumeration."""
    if l < 0 or r < 0 or r > l:
        return Fraction(0), 0
    if l == 0:
        return spec.alpha[j - 1], 1  # the zero-length walk rooted in j
    total = Fraction(0)
    count = 0
    for w in _walks_by_root(spec, 2 * l, max_length)[j]:
        if w.root_departures() == r:
            total += walk_weight(w, spec)
            count += 1
    return total, count


def enumerated_single_root_edge_sum(
    spec: EnsembleSpec, j: int, l: int, r: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> tuple[Fraction, int]:
    """Like :func:`enumerated_walk_sum` but restricted to walks whose
    skeleton attaches exactly one edge to the root."""
    if l <= 0 or r <= 0 or r > l:
        return Fraction(0), 0
    total = Fraction(0)
    count = 0
    for w in _walks_by_root(spec, 2 * l, max_length)[j]:
        if w.root_degree() == 1 and w.root_departures() == r:
            total += walk_weight(w, spec)
            count += 1
    return total, count


@dataclass(frozen=True)
class IdentityCell:
    label: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class SplittingReport:
    description: str
    cells: tuple[IdentityCell, ...]

    @property
    def all_hold(self) -> bool:
        return all(cell.ok for cell in self.cells)

    @property
    def first_failure(self) -> IdentityCell | None:
        for cell in self.cells:
            if not cell.ok:
                return cell
        return None


def verify_first_splitting(
    spec: EnsembleSpec, l: int, r: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> SplittingReport:
    """Check, cell by cell, that walks of half-length l with r root
    departures decompose at the first edge.

    For every root component j and every (u, f) the enumerated weight of the
    walks classified as (l, r, u, f) must equal

        alpha_j^(-1) * C(r-1, f-1)
        * [single-root-edge sum at (f+u, f)] * [walk sum at (l-u-f, r-f)]

    and the corresponding cardinalities must satisfy the same product rule
    with the binomial counting the interleaving codes.  Both sides are
    computed purely by enumeration.
    """
    cells: list[IdentityCell] = []
    for j in range(1, spec.kappa + 1):
        if r >= 1 and l >= r:
            classified: dict[tuple[int, int], list[Walk]] = {}
            for w in _walks_by_root(spec, 2 * l, max_length)[j]:
                if w.root_departures() != r:
                    continue
                cls = classify_first_edge(w)
                classified.setdefault((cls.u, cls.f), []).append(w)
            for f in range(1, r + 1):
                for u in range(0, l - r + 1):
                    bucket = classified.get((u, f), [])
                    lhs = sum((walk_weight(w, spec) for w in bucket), Fraction(0))
                    s2, c2 = enumerated_single_root_edge_sum(spec, j, f + u, f, max_length)
                    s1, c1 = enumerated_walk_sum(spec, j, l - u - f, r - f, max_length)
                    codes = comb(r - 1, f - 1)
                    rhs = (1 / spec.alpha[j - 1]) * codes * s2 * s1
                    cells.append(IdentityCell(f"weight j={j} u={u} f={f}", lhs, rhs))
                    cells.append(
                        IdentityCell(
                            f"count j={j} u={u} f={f}",
                            Fraction(len(bucket)),
                            Fraction(codes * c2 * c1),
                        )
                    )
        # aggregate: the cells partition the whole class
        total, _ = enumerated_walk_sum(spec, j, l, r, max_length)
        cell_total = sum(
            (c.lhs for c in cells if c.label.startswith(f"weight j={j} ")), Fraction(0)
        )
        if l > 0:
            cells.append(IdentityCell(f"total j={j}", total, cell_total))
    return SplittingReport(description=f"first splitting l={l} r={r}", cells=tuple(cells))


def verify_second_splitting(
    spec: EnsembleSpec, f: int, u: int, max_length: int = DEFAULT_MAX_WALK_LENGTH
) -> SplittingReport:
    """Check that single-root-edge walks factor through their first vertex.

    For every root component j, second component i and v (departures from
    the second vertex not returning to the root), the enumerated weight of
    those walks must equal

        alpha_j * C(f+v-1, f-1) * p * X_{2f} * gamma[j][i] * [walk sum at (u, v)]

    summing to the full single-root-edge sum at (f+u, f).
    """
    if f < 1:
        raise ValidationError(KIND_CLUSTER, f"f={f} must be at least 1")
    x2f = spec.even_moment(f)
    cells: list[IdentityCell] = []
    for j in range(1, spec.kappa + 1):
        buckets: dict[tuple[int, int], list[Walk]] = {}
        for w in _walks_by_root(spec, 2 * (f + u), max_length)[j]:
            if w.root_degree() != 1 or w.root_departures() != f:
                continue
            rho, nu = w.steps[0], w.steps[1]
            v = sum(1 for a, b in zip(w.steps, w.steps[1:]) if a == nu and b != rho)
            buckets.setdefault((nu[0], v), []).append(w)
        rhs_total = Fraction(0)
        for i in range(1, spec.kappa + 1):
            for v in range(0, u + 1):
                bucket = buckets.get((i, v), [])
                lhs = sum((walk_weight(w, spec) for w in bucket), Fraction(0))
                s_iv, _ = enumerated_walk_sum(spec, i, u, v, max_length)
                rhs = (
                    spec.alpha[j - 1]
                    * comb(f + v - 1, f - 1)
                    * spec.p
                    * x2f
                    * spec.gamma[j - 1][i - 1]
                    * s_iv
                )
                rhs_total += rhs
                cells.append(IdentityCell(f"weight j={j} i={i} v={v}", lhs, rhs))
        lhs_total, _ = enumerated_single_root_edge_sum(spec, j, f + u, f, max_length)
        cells.append(IdentityCell(f"total j={j}", lhs_total, rhs_total))
    return SplittingReport(description=f"second splitting f={f} u={u}", cells=tuple(cells))


# ---------------------------------------------------------------------------
# Ordered-cluster pass counts
# ---------------------------------------------------------------------------


def cluster_pass_count(j: int, i_list: Sequence[int]) -> int:
    """Closed-form number of pass orderings covering an ordered cluster.

    The cluster center is entered via a first edge passed 2j times and
    carries further edges passed 2*i_1, ..., 2*i_l times, ordered by first
    traversal.  With s = sum(i_list):

        n(j; i_1..i_l) = C(j+s-1, j-1) * s! * prod(i_r)
                         / (s * (s-i_1) * (s-i_1-i_2) * ... * i_l * prod(i_r!))

    An empty cluster tail gives 1.
    """
    if j < 1 or any(i < 1 for i in i_list):
        raise ValidationError(KIND_CLUSTER, f"need j >= 1 and all i >= 1, got j={j}, i={list(i_list)}")
    s = sum(i_list)
    if s == 0:
        return 1
    numerator = comb(j + s - 1, j - 1) * factorial(s)
    for i in i_list:
        numerator *= i
    denominator = 1
    tail = s
    for i in i_list:
        denominator *= tail * factorial(i)
        tail -= i
    value = Fraction(numerator, denominator)
    assert value.denominator == 1
    return int(value)


def brute_force_cluster_count(j: int, i_list: Sequence[int], max_total: int = 8) -> int:
    """Count admissible departure sequences of a cluster center explicitly.

    A departure word uses symbol 0 (the entry edge) j times and symbol r
    (the r-th further edge) i_r times, subject to: the word ends with 0
    (the final departure leaves for good) and the further edges make their
    first appearance in order 1, 2, ..., l.  Steps *to* the center are
    determined by the departures, so this word count is the pass count.
    """
    if j < 1 or any(i < 1 for i in i_list):
        raise ValidationError(KIND_CLUSTER, f"need j >= 1 and all i >= 1, got j={j}, i={list(i_list)}")
    s = sum(i_list)
    if j + s > max_total:
        raise GuardError(f"cluster size j+s={j + s} exceeds the brute-force guard ({max_total})")

    counts = [j - 1] + list(i_list)  # final symbol 0 is fixed; place the rest

    def place(remaining: list[int], next_new: int) -> int:
        if sum(remaining) == 0:
            return 1
        total = 0
        for sym in range(0, len(remaining)):
            if remaining[sym] == 0:
                continue
            if sym >= 1 and sym > next_new:
                continue  # edge sym may not appear before edges 1..sym-1
            remaining[sym] -= 1
            total += place(remaining, max(next_new, sym + 1) if sym >= 1 else next_new)
            remaining[sym] += 1
        return total

    return place(counts, 1)


def essential_walk_invariants(walk: Walk) -> None:
    """Raise if a walk violates the structural facts every essential walk
    must satisfy (used by tests and the verify CLI)."""
    if walk.steps[0] != walk.steps[-1]:
        raise ValidationError(KIND_NOT_CLOSED, "walk not closed")
    if sum(walk.pass_counts.values()) != walk.length:
        raise ValidationError(KIND_NOT_CLOSED, "pass counts do not sum to the length")
    if not walk.has_tree_skeleton():
        raise ValidationError(KIND_NOT_TREE, "skeleton is not a tree")
    for passes in walk.pass_counts.values():
        if passes % 2 != 0:
            raise ValidationError(KIND_ODD_PASSES, "odd pass count on a tree walk")
    if not is_minimal(walk):
        raise ValidationError(KIND_BAD_VERTEX, "walk is not minimal")
