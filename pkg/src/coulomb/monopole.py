"""Hilbert series of Coulomb branches: the lattice sum over magnetic charges.

The series of a theory is the sum over canonical dominant charges c of

    t^(2*Delta(c)) * (grading monomial) * P(t; c),

truncated at a requested t-order.  P(t; c) is the classical dressing factor:
the product over Casimir degrees d of the stabilizer of c of 1/(1 - t^(2d)).
Summation proceeds shell by shell in the charge norm and stops only once a
growth certificate (see coercivity) guarantees that every remaining shell
exceeds the truncation order; theories without such a certificate raise
``Divergent`` with an explicit witness charge whenever one can be exhibited.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .backends import KernelModel, evaluate_batch
from .coercivity import growth_report, integer_flat_witness
from .quiver import Coweight, QuiverError, QuiverTheory, Vertex, anchored_tuples, dominant_tuples
from .series import TruncatedSeries
from .structure import weight_structure

_CHUNK_ROWS = 1 << 21
_FALLBACK_POINT_CAP = 2_000_000


class Divergent(RuntimeError):
    """The lattice sum is not certified to converge at the requested order."""

    def __init__(self, message, witness=None, witness_delta2=None, shell=None):
        super().__init__(message)
        self.witness = witness
        self.witness_delta2 = witness_delta2
        self.shell = shell


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class GradingFunctional:
    """Integer linear functional on the charge lattice -> one aux exponent.

    ``entry_weights`` maps vertex names to per-entry weight tuples (absent
    vertices weigh 0).  ``framing_weights`` maps vertex names to a scalar
    multiplying the sum of that vertex's framing coweight entries, so the
    functional can track backgrounds that shift together with the gauge
    charges.  ``offset`` is an additive constant.
    """

    entry_weights: tuple = ()
    framing_weights: tuple = ()
    offset: int = 0

    @classmethod
    def build(cls, entry_weights=None, framing_weights=None, offset=0):
        ew = tuple(sorted(
            (str(k), tuple(int(x) for x in v)) for k, v in (entry_weights or {}).items()
        ))
        fw = tuple(sorted((str(k), int(v)) for k, v in (framing_weights or {}).items()))
        return cls(ew, fw, int(offset))


@dataclass(frozen=True)
class GradingSpec:
    functionals: tuple

    def __post_init__(self):
        if len(self.functionals) > 2:
            raise GradingError("at most two grading functionals are supported")

    @property
    def num_aux(self):
        return len(self.functionals)


def _grading_arrays(theory, grading):
    """Validate a grading against a theory; return (matrix, offsets)."""
    if grading is None:
        return np.zeros((0, theory.num_entries), dtype=np.int64), np.zeros(0, np.int64)
    matrix = np.zeros((grading.num_aux, theory.num_entries), dtype=np.int64)
    offsets = np.zeros(grading.num_aux, dtype=np.int64)
    for r, fn in enumerate(grading.functionals):
        weights = dict(fn.entry_weights)
        framing_w = dict(fn.framing_weights)
        for name in itertools.chain(weights, framing_w):
            theory.vertex_index(name)
        total_entry = 0
        total_framing = 0
        offsets[r] = fn.offset
        for i, v in enumerate(theory.vertices):
            w = weights.get(v.name)
            if w is not None:
                if len(w) != v.dim_v:
                    raise GradingError(
                        f"functional weights for {v.name} have length {len(w)}, "
                        f"expected {v.dim_v}"
                    )
                matrix[r, theory.entry_offsets[i]: theory.entry_offsets[i + 1]] = w
                total_entry += sum(w)
            u = framing_w.get(v.name, 0)
            if u:
                offsets[r] += u * sum(v.framing)
                total_framing += u * v.dim_w
        if theory.quotient_diagonal and total_entry + total_framing != 0:
            raise GradingError(
                "grading functional does not vanish on the diagonal shift"
            )
    return matrix, offsets


# ---------------------------------------------------------------------------
# Pointwise operations
# ---------------------------------------------------------------------------


def delta2(theory, coweight):
    """Exact integer 2*Delta of a charge (any per-vertex sign pattern)."""
    if isinstance(coweight, Coweight):
        entries = coweight.entries()
    else:
        entries = tuple(itertools.chain.from_iterable(coweight))
    if len(entries) != theory.num_entries:
        raise QuiverError("coweight has wrong shape for this theory")
    return weight_structure(theory).delta2_exact(entries)


def minuscule_delta2(theory, vertex, sign=1):
    """2*Delta of the unit charge (+-1, 0, ..., 0) at one vertex, in closed form.

    For a loop-free vertex with zero framing background this is
    ``2 - 2 dimV_i + dimW_i + sum_j a_ij dimV_j``; a loop contributes
    ``2 a_ii (dimV_i - 1)`` and a nonzero framing coweight F replaces the
    dimW_i term by ``sum_k |sign - F_k| + (dimV_i - 1) sum_k |F_k|``.
    """
    if sign not in (1, -1):
        raise QuiverError("sign must be +1 or -1")
    i = theory.vertex_index(vertex)
    v = theory.vertices[i]
    loops = theory.adjacency(i, i)
    neighbors = sum(
        m * theory.vertices[b if a == i else a].dim_v
        for a, b, m in theory.edges
        if (a == i) != (b == i)
    )
    framing_term = sum(abs(sign - f) for f in v.framing) + (v.dim_v - 1) * sum(
        abs(f) for f in v.framing
    )
    return 2 - 2 * v.dim_v + framing_term + neighbors + 2 * loops * (v.dim_v - 1)


def _casimir_product(blocks_per_vertex, order, num_aux, quotient_correction):
    series = TruncatedSeries.one(order, num_aux)
    for blocks in blocks_per_vertex:
        for m in blocks:
            for j in range(1, m + 1):
                series = series * TruncatedSeries.geometric(
                    2 * j, (), order, num_aux
                )
    if quotient_correction:
        series = series * TruncatedSeries(
            order, {(0,) + (0,) * num_aux: 1, (2,) + (0,) * num_aux: -1}, num_aux
        )
    return series


def dressing(theory, coweight, order, num_aux=0):
    """Dressing factor P(t; c): Casimir product of the stabilizer of c.

    Equal consecutive entries of a dominant charge merge into blocks; a block
    of size m contributes 1/((1-t^2)(1-t^4)...(1-t^(2m))).  For an unframed
    theory with the diagonal quotient one overall factor (1 - t^2) removes
    the Casimir of the quotiented central torus.
    """
    if not isinstance(coweight, Coweight):
        coweight = Coweight(tuple(tuple(p) for p in coweight))
    blocks = []
    for part in coweight.parts:
        vertex_blocks = []
        run = 1
        for a in range(1, len(part)):
            if part[a] == part[a - 1]:
                run += 1
            else:
                vertex_blocks.append(run)
                run = 1
        vertex_blocks.append(run)
        blocks.append(tuple(vertex_blocks))
    return _casimir_product(blocks, order, num_aux, theory.uses_anchor())


# ---------------------------------------------------------------------------
# Shell enumeration as numpy arrays
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _tuple_array(length, norm, anchored):
    tups = anchored_tuples(length, norm) if anchored else dominant_tuples(length, norm)
    if not tups:
        return np.zeros((0, length), dtype=np.int64)
    return np.asarray(tups, dtype=np.int64)


def _cross(a, b):
    if a.shape[1] == 0:
        return b
    if b.shape[1] == 0:
        return a
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.empty((ra * rb, ca + cb), dtype=np.int64)
    out[:, :ca].reshape(ra, rb, ca)[:] = a[:, np.newaxis, :]
    out[:, ca:].reshape(ra, rb, cb)[:] = b[np.newaxis, :, :]
    return out


class ShellEnumerator:
    """Produces all canonical dominant charges of a shell as int64 arrays."""

    def __init__(self, theory):
        self.theory = theory
        self.anchored = theory.uses_anchor()
        self._cache = {}

    def _vertex_array(self, v, norm):
        anchored = self.anchored and v == len(self.theory.dims) - 1
        return _tuple_array(self.theory.dims[v], norm, anchored)

    def _group(self, lo, hi, norm):
        """All charge slices over vertices [lo, hi) with total norm ``norm``."""
        if hi - lo == 1:
            return self._vertex_array(lo, norm)
        key = (lo, hi, norm)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        mid = (lo + hi) // 2
        pieces = []
        for m in range(norm + 1):
            left = self._group(lo, mid, m)
            right = self._group(mid, hi, norm - m)
            if left.shape[0] and right.shape[0]:
                pieces.append(_cross(left, right))
        width = self.theory.entry_offsets[hi] - self.theory.entry_offsets[lo]
        out = (
            np.vstack(pieces) if pieces else np.zeros((0, width), dtype=np.int64)
        )
        self._cache[key] = out
        return out

    def shell(self, norm):
        """Iterate over row chunks of the shell with the given norm."""
        n_vertices = len(self.theory.dims)
        if n_vertices == 0:
            if norm == 0:
                yield np.zeros((1, 0), dtype=np.int64)
            return
        if n_vertices == 1:
            arr = self._vertex_array(0, norm)
            if arr.shape[0]:
                yield arr
            return
        mid = n_vertices // 2
        for m in range(norm + 1):
            left = self._group(0, mid, m)
            right = self._group(mid, n_vertices, norm - m)
            if not (left.shape[0] and right.shape[0]):
                continue
            rows = left.shape[0] * right.shape[0]
            if rows <= _CHUNK_ROWS:
                yield _cross(left, right)
            else:
                step = max(1, _CHUNK_ROWS // max(1, right.shape[0]))
                for start in range(0, left.shape[0], step):
                    yield _cross(left[start: start + step], right)


# ---------------------------------------------------------------------------
# The lattice sum
# ---------------------------------------------------------------------------


def _kernel_model(theory, grading):
    ws = weight_structure(theory)
    matrix, offsets = _grading_arrays(theory, grading)
    return KernelModel(
        ws.pair_p,
        ws.pair_q,
        ws.pair_w,
        ws.fr_idx,
        ws.fr_val,
        ws.fr_w,
        ws.vec_coeff,
        ws.sig_left,
        ws.sig_right,
        matrix,
        offsets,
    )


def _entries_to_coweight(theory, entries):
    offs = theory.entry_offsets
    return Coweight(
        tuple(tuple(int(e) for e in entries[offs[i]: offs[i + 1]])
              for i in range(len(theory.dims)))
    )


def _raise_divergent(theory, report, order, shell_budget, backend, grading):
    witness = integer_flat_witness(theory, report.direction)
    if witness is not None:
        cw = _entries_to_coweight(theory, witness)
        val = delta2(theory, cw)
        raise Divergent(
            f"divergent lattice sum: 2*Delta = {val} on the charge ray through "
            f"{cw} (and all its multiples)",
            witness=cw,
            witness_delta2=val,
        )
    # no clean ray: scan shells empirically within the budget
    model = _kernel_model(theory, grading)
    enum = ShellEnumerator(theory)
    points_seen = 0
    flat_shells = []
    last_witness = None
    budget = shell_budget if shell_budget is not None else 64
    for s in range(budget + 1):
        min_d2 = None
        for chunk in enum.shell(s):
            d2, _, _ = evaluate_batch(chunk, model, backend)
            points_seen += len(d2)
            if len(d2):
                m = int(d2.min())
                min_d2 = m if min_d2 is None else min(min_d2, m)
                if m <= 0 and s > 0:
                    row = chunk[int(np.argmin(d2))]
                    last_witness = (_entries_to_coweight(theory, row), m, s)
            if points_seen > _FALLBACK_POINT_CAP:
                raise Divergent(
                    f"divergence scan exceeded {_FALLBACK_POINT_CAP} charges "
                    f"by shell {s} without certifying growth",
                    shell=s,
                )
        if min_d2 is not None and min_d2 <= 0 and s > 0:
            flat_shells.append(s)
            if len(flat_shells) >= 2:
                cw, val, shell = last_witness
                raise Divergent(
                    f"divergent lattice sum: 2*Delta = {val} at charge {cw} "
                    f"(shell {shell}); nonpositive weights recur across shells "
                    f"{flat_shells}",
                    witness=cw,
                    witness_delta2=val,
                    shell=shell,
                )
    if last_witness is not None:
        cw, val, shell = last_witness
        raise Divergent(
            f"divergent lattice sum: 2*Delta = {val} at charge {cw} (shell {shell})",
            witness=cw,
            witness_delta2=val,
            shell=shell,
        )
    raise Divergent(
        f"shell minima could not be certified to outgrow order {order} within "
        f"the {budget}-shell budget",
        shell=budget,
    )


def monopole_series(theory, order, grading=None, shell_budget=64, backend=None):
    """Truncated Hilbert series of the Coulomb branch of a theory.

    Raises ``Divergent`` when no growth certificate exists or when the
    certified shell window exceeds ``shell_budget`` (pass None to uncap).
    """
    if order < 0:
        raise QuiverError("order must be nonnegative")
    num_aux = grading.num_aux if grading is not None else 0
    _grading_arrays(theory, grading)  # validate eagerly
    if not theory.vertices:
        return TruncatedSeries.one(order, num_aux)
    report = growth_report(theory)
    if not report.coercive:
        _raise_divergent(theory, report, order, shell_budget, backend, grading)
    max_shell = report.max_shell(order)
    if shell_budget is not None and max_shell > shell_budget:
        raise Divergent(
            f"certified shell window {max_shell} exceeds the shell budget "
            f"{shell_budget} at order {order} (growth ratio {report.ratio:.4g})",
            shell=max_shell,
        )
    model = _kernel_model(theory, grading)
    enum = ShellEnumerator(theory)
    counts = {}
    for s in range(max_shell + 1):
        for chunk in enum.shell(s):
            d2, sig, aux = evaluate_batch(chunk, model, backend)
            keep = d2 <= order
            if not np.any(keep):
                continue
            cols = [sig[keep], d2[keep]] + [aux[keep, r] for r in range(num_aux)]
            stacked = np.stack(cols, axis=1)
            uniq, mult = np.unique(stacked, axis=0, return_counts=True)
            for row, m in zip(uniq, mult):
                key = tuple(int(x) for x in row)
                counts[key] = counts.get(key, 0) + int(m)
    return _assemble(theory, counts, order, num_aux)


def _assemble(theory, counts, order, num_aux):
    ws = weight_structure(theory)
    quotient_correction = theory.uses_anchor()
    by_sig = {}
    for key, mult in counts.items():
        sig, d2, *aux = key
        by_sig.setdefault(sig, {})[(d2, *aux)] = mult
    total = TruncatedSeries.zero(order, num_aux)
    for sig, numer_terms in sorted(by_sig.items()):
        numer = TruncatedSeries(order, numer_terms, num_aux)
        blocks = ws.block_multiplicities(sig)
        dress = _casimir_product(blocks, order, num_aux, quotient_correction)
        total = total + numer * dress
    return total


# ---------------------------------------------------------------------------
# Star gluing
# ---------------------------------------------------------------------------


def _check_leg(center_rank, leg):
    if leg.quotient_diagonal:
        raise QuiverError("legs must not carry the diagonal quotient flag")
    if not leg.vertices:
        raise QuiverError("a leg needs at least one vertex")
    boundary = leg.vertices[0]
    if boundary.dim_w != center_rank:
        raise QuiverError(
            f"leg boundary vertex {boundary.name!r} has dimW {boundary.dim_w}, "
            f"expected the center rank {center_rank}"
        )
    for v in leg.vertices[1:]:
        if v.dim_w != 0:
            raise QuiverError(
                f"leg vertex {v.name!r} carries framing; only the boundary may"
            )


def assemble_star(center_rank, legs, quotient, center_last=False):
    """Union of legs joined to one central GL(center_rank) vertex.

    Each leg's first vertex is its boundary: its framing slot (which must
    have dimW equal to the center rank) turns into edges to the center.
    """
    for leg in legs:
        _check_leg(center_rank, leg)
    center = Vertex("center", center_rank, 0, ())
    vertices = []
    edges = []
    for k, leg in enumerate(legs):
        prefix = f"leg{k}."
        for pos, v in enumerate(leg.vertices):
            vertices.append(Vertex(prefix + v.name, v.dim_v, 0, ()))
        for i, j, m in leg.edges:
            edges.extend([(prefix + leg.names[i], prefix + leg.names[j])] * m)
        edges.append(("center", prefix + leg.names[0]))
    if center_last:
        vertices = vertices + [center]
    else:
        vertices = [center] + vertices
    return QuiverTheory(vertices, edges, quotient)


def glue_star(center_rank, legs, quotient, order, shell_budget=64, backend=None):
    """Star-quiver series as a sum over center charges of leg products.

    For each canonical dominant charge c0 of the central GL(N), multiply the
    legs' series with background c0 installed in their boundary framing, the
    center's dressing factor and t^(-2 sum_{a<b} (c0_a - c0_b)); then sum.
    Equals ``monopole_series`` of the assembled star quiver, term by term.
    """
    if center_rank < 1:
        raise QuiverError("center rank must be positive")
    if order < 0:
        raise QuiverError("order must be nonnegative")
    for leg in legs:
        _check_leg(center_rank, leg)
    # growth certificate of the assembled star, anchored on the center so the
    # window bounds the center-charge norm directly
    probe = assemble_star(center_rank, legs, quotient, center_last=True)
    report = growth_report(probe)
    if not report.coercive:
        _raise_divergent(probe, report, order, shell_budget, backend, None)
    max_norm = report.max_shell(order)
    if shell_budget is not None and max_norm > shell_budget:
        raise Divergent(
            f"certified center window {max_norm} exceeds the shell budget "
            f"{shell_budget} at order {order}",
            shell=max_norm,
        )
    center_stub = QuiverTheory(
        [Vertex("center", center_rank, 0, ())], [], quotient
    )
    total = TruncatedSeries.zero(order)
    costalk_cache = {}
    for norm in range(max_norm + 1):
        tuples = (
            anchored_tuples(center_rank, norm)
            if quotient
            else dominant_tuples(center_rank, norm)
        )
        for c0 in tuples:
            gaps = 2 * sum(
                c0[a] - c0[b]
                for a in range(center_rank)
                for b in range(a + 1, center_rank)
            )
            need = order + gaps
            product = dressing(center_stub, Coweight((c0,)), need)
            dead = False
            for leg in legs:
                key = (leg.structure_key(), c0, need)
                series = costalk_cache.get(key)
                if series is None:
                    framed = leg.with_framing(leg.names[0], c0)
                    series = monopole_series(
                        framed, need, shell_budget=None, backend=backend
                    )
                    costalk_cache[key] = series
                if series.is_zero():
                    dead = True
                    break
                product = product * series
            if dead:
                continue
            total = total + product.shift_t(-gaps).truncate(order)
    return total
