"""Quiver gauge theories and their dominant coweight lattices.

A theory is a list of gauge vertices (each a GL factor with an optional
flavor framing carrying a fixed background coweight), an unordered edge
multiset (loops allowed) and a flag asking to divide the gauge group by its
diagonal central one-parameter subgroup.

Magnetic charges are per-vertex weakly decreasing integer tuples.  When the
diagonal quotient is active and the theory has no framing, charges that
differ by a simultaneous shift of every entry are identified; the canonical
representative puts the last entry of the last vertex at 0.  Framed theories
keep the full charge lattice: there the declared framing pins the shift
freedom (the background shifts together with the gauge charges, so fixing
the framing representative fixes the orbit representative).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    name: str
    dim_v: int
    dim_w: int = 0
    framing: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "framing", tuple(int(c) for c in self.framing))


@dataclass(frozen=True)
class Coweight:
    """Per-vertex weakly decreasing integer tuples (a magnetic charge)."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(int(e) for e in p) for p in self.parts)
        )

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def entries(self):
        return tuple(itertools.chain.from_iterable(self.parts))

    def is_dominant(self):
        return all(
            all(p[a] >= p[a + 1] for a in range(len(p) - 1)) for p in self.parts
        )

    def shifted(self, c):
        return Coweight(tuple(tuple(e + c for e in p) for p in self.parts))

    def norm(self):
        return sum(abs(e) for e in self.entries())

    def __repr__(self):
        return "(" + "; ".join(",".join(str(e) for e in p) for p in self.parts) + ")"


class QuiverTheory:
    """A quiver gauge theory: vertices, edge multiset, quotient flag."""

    def __init__(self, vertices, edges, quotient_diagonal=False):
        self.vertices = tuple(
            v if isinstance(v, Vertex) else Vertex(**v) for v in vertices
        )
        self.names = tuple(v.name for v in self.vertices)
        if len(set(self.names)) != len(self.names):
            raise QuiverError("duplicate vertex names")
        self._index = {name: i for i, name in enumerate(self.names)}
        counted = {}
        for e in edges:
            if len(e) != 2:
                raise QuiverError(f"edge {e!r} is not a pair")
            try:
                i, j = (self._index[n] for n in e)
            except KeyError as exc:
                raise QuiverError(f"edge {e!r} mentions unknown vertex") from exc
            key = (min(i, j), max(i, j))
            counted[key] = counted.get(key, 0) + 1
        self.edges = tuple(sorted((i, j, m) for (i, j), m in counted.items()))
        self.quotient_diagonal = bool(quotient_diagonal)
        self.dims = tuple(v.dim_v for v in self.vertices)
        self.entry_offsets = tuple(
            sum(self.dims[:i]) for i in range(len(self.dims) + 1)
        )
        self.num_entries = self.entry_offsets[-1]
        self.total_framing = sum(v.dim_w for v in self.vertices)
        self.validate()

    # -- validation --------------------------------------------------------

    def validate(self):
        """Check structural invariants; return a summary report."""
        for v in self.vertices:
            if v.dim_v <= 0:
                raise QuiverError(f"vertex {v.name}: dimV must be positive")
            if v.dim_w < 0:
                raise QuiverError(f"vertex {v.name}: dimW must be nonnegative")
            if len(v.framing) != v.dim_w:
                raise QuiverError(
                    f"vertex {v.name}: framing length {len(v.framing)} != dimW {v.dim_w}"
                )
            if any(v.framing[k] < v.framing[k + 1] for k in range(len(v.framing) - 1)):
                raise QuiverError(
                    f"vertex {v.name}: framing coweight must be weakly decreasing"
                )
        if self.quotient_diagonal:
            if not self.vertices:
                raise QuiverError("diagonal quotient needs at least one vertex")
            if not self.is_connected():
                raise QuiverError("diagonal quotient requires a connected quiver")
        rank = self.num_entries - (1 if self.quotient_diagonal else 0)
        return ValidationReport(rank=rank, coulomb_dim=2 * rank)

    def is_connected(self):
        n = len(self.vertices)
        if n <= 1:
            return True
        adj = {i: set() for i in range(n)}
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for k in adj[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == n

    # -- mutation-free helpers ----------------------------------------------

    def vertex_index(self, name):
        try:
            return self._index[name]
        except KeyError as exc:
            raise QuiverError(f"unknown vertex {name!r}") from exc

    def adjacency(self, i, j):
        """Edge multiplicity between vertices i and j (indices)."""
        key = (min(i, j), max(i, j))
        for a, b, m in self.edges:
            if (a, b) == key:
                return m
        return 0

    def with_framing(self, name, coweight):
        """Copy of the theory with one vertex's framing coweight replaced."""
        i = self.vertex_index(name)
        coweight = tuple(int(c) for c in coweight)
        v = self.vertices[i]
        if len(coweight) != v.dim_w:
            raise QuiverError(
                f"vertex {name}: framing length {len(coweight)} != dimW {v.dim_w}"
            )
        vertices = list(self.vertices)
        vertices[i] = Vertex(v.name, v.dim_v, v.dim_w, coweight)
        edges = []
        for a, b, m in self.edges:
            edges.extend([(self.names[a], self.names[b])] * m)
        return QuiverTheory(vertices, edges, self.quotient_diagonal)

    def structure_key(self):
        """Hashable identity of the theory (used for caching)."""
        return (self.vertices, self.edges, self.quotient_diagonal)

    def uses_anchor(self):
        """Whether charge enumeration fixes the anchor entry to 0.

        Only unframed quotient theories have a residual shift freedom on the
        charge lattice; with framing present the declared background already
        selects the orbit representative.
        """
        return self.quotient_diagonal and self.total_framing == 0

    def zero_coweight(self):
        return Coweight(tuple((0,) * d for d in self.dims))

    def __repr__(self):
        vs = ", ".join(
            f"{v.name}:GL({v.dim_v})" + (f"+W{v.dim_w}" if v.dim_w else "")
            for v in self.vertices
        )
        q = ", quotient" if self.quotient_diagonal else ""
        return f"QuiverTheory({vs}{q})"

    # -- JSON interface ------------------------------------------------------

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(
                f"theory file syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(data, dict):
            raise QuiverError("theory file must contain a JSON object")
        vertices = []
        for entry in data.get("vertices", []):
            dim_w = int(entry.get("dimW", 0))
            framing = entry.get("framing")
            if framing is None:
                framing = [0] * dim_w
            vertices.append(
                Vertex(
                    name=str(entry["name"]),
                    dim_v=int(entry["dimV"]),
                    dim_w=dim_w,
                    framing=tuple(int(c) for c in framing),
                )
            )
        edges = [tuple(str(n) for n in e) for e in data.get("edges", [])]
        return cls(vertices, edges, bool(data.get("quotient_diagonal", False)))

    def to_json(self):
        data = {
            "vertices": [
                {
                    "name": v.name,
                    "dimV": v.dim_v,
                    "dimW": v.dim_w,
                    "framing": list(v.framing),
                }
                for v in self.vertices
            ],
            "edges": [
                [self.names[i], self.names[j]]
                for i, j, m in self.edges
                for _ in range(m)
            ],
            "quotient_diagonal": self.quotient_diagonal,
        }
        return json.dumps(data, indent=2)


@dataclass(frozen=True)
class ValidationReport:
    rank: int
    coulomb_dim: int


def validate(theory):
    return theory.validate()


# ---------------------------------------------------------------------------
# Canonical representatives and shell enumeration
# ---------------------------------------------------------------------------


def canonicalize(theory, coweight):
    """Shift-orbit representative with the anchor entry equal to 0.

    The anchor is the last entry of the last declared vertex.  Without the
    diagonal quotient this is the identity.  The shift moves every gauge
    entry (and conceptually the framing background along with them, which is
    why framed theories never need this during summation).
    """
    if not isinstance(coweight, Coweight):
        coweight = Coweight(tuple(tuple(p) for p in coweight))
    if not theory.quotient_diagonal:
        return coweight
    anchor = coweight.parts[-1][-1]
    return coweight.shifted(-anchor) if anchor else coweight


def shell_norm(theory, coweight):
    """Sum of absolute entries of the canonical representative."""
    return canonicalize(theory, coweight).norm()


@lru_cache(maxsize=None)
def dominant_tuples(length, norm, max_first=None):
    """Weakly decreasing integer tuples of given length and L1 norm.

    ``max_first`` bounds the first entry; results are sorted descending
    lexicographically, which makes concatenated enumerations deterministic.
    """
    if length == 0:
        return ((),) if norm == 0 else ()
    out = []
    hi = norm if max_first is None else min(norm, max_first)
    for a in range(hi, -norm - 1, -1):
        rest_norm = norm - abs(a)
        if rest_norm < 0:
            continue
        if a < 0 and rest_norm < (length - 1) * abs(a):
            # remaining entries are <= a < 0, each contributing at least |a|
            continue
        for rest in dominant_tuples(length - 1, rest_norm, a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def anchored_tuples(length, norm):
    """Dominant tuples whose last entry is 0 (hence all entries >= 0)."""
    return tuple(
        t for t in dominant_tuples(length, norm) if t[-1] == 0
    ) if length else (((),) if norm == 0 else ())


def coweights_in_shell(theory, s):
    """All canonical dominant coweights with shell norm exactly s.

    Deterministic order: per-shell, tuples are produced vertex by vertex in
    descending lexicographic order.  For unframed quotient theories the last
    vertex runs over anchored tuples (last entry 0); otherwise the full
    dominant lattice is enumerated.
    """
    if s < 0:
        raise QuiverError("shell norm must be nonnegative")
    dims = theory.dims
    if not dims:
        return [Coweight(())] if s == 0 else []
    anchored = theory.uses_anchor()
    out = []

    def rec(v, remaining, prefix):
        if v == len(dims) - 1:
            gen = anchored_tuples if anchored else dominant_tuples
            for t in gen(dims[v], remaining):
                out.append(Coweight(prefix + (t,)))
            return
        for k in range(remaining + 1):
            for t in dominant_tuples(dims[v], k):
                rec(v + 1, remaining - k, prefix + (t,))

    rec(0, s, ())
    return out


# ---------------------------------------------------------------------------
# Balanced-vertex analysis
# ---------------------------------------------------------------------------


def balance_defect(theory, i):
    """2 dimV_i - dimW_i - sum_j a_ij dimV_j (loops excluded from the sum)."""
    v = theory.vertices[i]
    total = v.dim_w
    for a, b, m in theory.edges:
        if a == i and b == i:
            continue
        if a == i:
            total += m * theory.vertices[b].dim_v
        elif b == i:
            total += m * theory.vertices[a].dim_v
    return 2 * v.dim_v - total


def has_loop(theory, i):
    return any(a == i and b == i for a, b, _ in theory.edges)


def _classify_tree(adj, nodes):
    """ADE label of a connected simple graph, or a reason it is not one."""
    n = len(nodes)
    edge_count = sum(len(adj[v]) for v in nodes) // 2
    if edge_count != n - 1:
        if edge_count == n and all(len(adj[v]) == 2 for v in nodes):
            return f"affine-A{n - 1}", False
        return "non-ADE", False
    degrees = sorted(len(adj[v]) for v in nodes)
    if degrees[-1] <= 2:
        return f"A{n}", True
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if len(branch) == 2 and all(len(adj[v]) == 3 for v in branch):
        # two trivalent nodes joined by a chain, all arms length 1
        arms_ok = True
        for v in branch:
            leaves = [w for w in adj[v] if len(adj[w]) == 1]
            if len(leaves) < 2:
                arms_ok = False
        return (f"affine-D{n - 1}", False) if arms_ok else ("non-ADE", False)
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        return "non-ADE", False
    center = branch[0]
    arms = []
    for w in adj[center]:
        length = 1
        prev, cur = center, w
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return "non-ADE", False
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}", True
    if arms == [1, 2, 2]:
        return "E6", True
    if arms == [1, 2, 3]:
        return "E7", True
    if arms == [1, 2, 4]:
        return "E8", True
    if arms == [2, 2, 2]:
        return "affine-E6", False
    if arms == [1, 3, 3]:
        return "affine-E7", False
    if arms == [1, 2, 5]:
        return "affine-E8", False
    return "non-ADE", False


@dataclass(frozen=True)
class BalancedComponent:
    vertices: tuple
    label: str
    is_finite_ade: bool


def balanced_vertices(theory):
    """Loop-free vertices satisfying the balance equation, with components.

    Returns ``(names, components)`` where each component of the balanced
    subquiver carries its simply-laced Dynkin label (finite ``A/D/E``), an
    ``affine-*`` label when it matches an affine diagram, or ``non-ADE``.
    """
    bal = [
        i
        for i in range(len(theory.vertices))
        if not has_loop(theory, i) and balance_defect(theory, i) == 0
    ]
    bal_set = set(bal)
    adj = {i: set() for i in bal}
    multi = False
    for a, b, m in theory.edges:
        if a in bal_set and b in bal_set and a != b:
            adj[a].add(b)
            adj[b].add(a)
            if m > 1:
                multi = True
    components = []
    seen = set()
    for i in bal:
        if i in seen:
            continue
        comp = {i}
        stack = [i]
        while stack:
            for k in adj[stack.pop()]:
                if k not in comp:
                    comp.add(k)
                    stack.append(k)
        seen |= comp
        comp_nodes = sorted(comp)
        if multi and any(
            m > 1 for a, b, m in theory.edges if a in comp and b in comp and a != b
        ):
            label, finite = "non-ADE", False
        else:
            label, finite = _classify_tree(adj, comp_nodes)
        components.append(
            BalancedComponent(
                vertices=tuple(theory.names[k] for k in comp_nodes),
                label=label,
                is_finite_ade=finite,
            )
        )
    names = {theory.names[i] for i in bal}
    return names, tuple(components)
