"""Growth certificates for lattice sums of the weight 2*Delta.

On the dominant cone (entries weakly decreasing within each vertex) the
homogenized weight — framing values replaced by 0 — is a convex, positively
homogeneous piecewise-linear function f0.  Let

    m1 = min { f0(x) : x in cone, ||x||_1 = 1 }   (real relaxation).

Then every dominant charge c satisfies

    2*Delta(c) >= m1 * ||c||_1 - K,

where K (the framing offset) bounds the total cost of restoring the true
framing values, term by term: |e - F| >= |e| - |F|.  If m1 > 0 the sum over
charges of t^(2*Delta) truncated at a given order only sees shells of norm
at most (order + K) / m1, which is the termination certificate.  If m1 <= 0
there is a ray on which the weight does not grow, and an integer point on it
witnesses divergence.

m1 is computed exactly in the following sense: on the dominant cone the L1
norm is the maximum of finitely many linear functionals (one per choice of
sign-change position inside each vertex), so

    m1 = min over cut patterns s of  LP_s,
    LP_s = min f0(x)  s.t.  x in cone,  l_s(x) = 1,

because f0 >= m1 * ||.||_1 >= m1 * l_s on the cone while every unit-norm
point satisfies l_s(x) = 1 for its own active pattern.  Each LP_s is a small
linear program (absolute values in f0 become epigraph variables); they are
solved numerically and the resulting bound is slightly lowered before use,
which only ever enlarges the certified shell window.  Divergence, by
contrast, is only ever declared on an exact integer witness or after an
explicit budget is exhausted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .structure import weight_structure


@dataclass(frozen=True)
class GrowthReport:
    coercive: bool
    ratio: float  # certified lower bound on f0 per unit norm (valid if coercive)
    offset: int  # framing offset K
    min_value: float  # raw LP optimum (diagnostics)
    direction: tuple  # minimizing direction over entries (floats)

    def max_shell(self, order):
        """Largest shell norm that can contribute t-exponents <= order."""
        if not self.coercive:
            raise ValueError("no growth certificate; sum may diverge")
        return int(math.floor((order + self.offset) / self.ratio)) + 1


def _cut_functionals(theory, anchored):
    """Sign vectors l_s spanning the L1 norm on the dominant cone."""
    offs = theory.entry_offsets
    per_vertex = []
    for i, n in enumerate(theory.dims):
        if anchored and i == len(theory.dims) - 1:
            # anchored vertex: last entry 0, dominance forces entries >= 0
            per_vertex.append([n])
        else:
            per_vertex.append(list(range(n + 1)))
    for cuts in itertools.product(*per_vertex):
        sign = np.zeros(theory.num_entries)
        for i, c in enumerate(cuts):
            n = theory.dims[i]
            sign[offs[i]: offs[i] + c] = 1.0
            sign[offs[i] + c: offs[i] + n] = -1.0
        yield sign


def analyze_growth(theory, anchored=None):
    """Minimize the homogenized weight over the unit L1 sphere of the cone."""
    ws = weight_structure(theory)
    if anchored is None:
        anchored = theory.uses_anchor()
    n_entries = theory.num_entries
    if n_entries == 0:
        return GrowthReport(True, 1.0, 0, math.inf, ())
    terms = [
        (int(p), int(q), int(w)) for p, q, w in zip(ws.pair_p, ws.pair_q, ws.pair_w)
    ] + [(int(p), None, int(w)) for p, w in zip(ws.fr_idx, ws.fr_w)]
    n_terms = len(terms)
    n_vars = n_entries + n_terms
    cost = np.zeros(n_vars)
    cost[:n_entries] = ws.vec_coeff
    for t, (_, _, w) in enumerate(terms):
        cost[n_entries + t] = w
    rows, rhs = [], []
    offs = theory.entry_offsets
    for i, n in enumerate(theory.dims):
        for a in range(n - 1):
            row = np.zeros(n_vars)
            row[offs[i] + a] = -1.0
            row[offs[i] + a + 1] = 1.0
            rows.append(row)
            rhs.append(0.0)
    for t, (p, q, _) in enumerate(terms):
        for sgn in (1.0, -1.0):
            row = np.zeros(n_vars)
            row[p] += sgn
            if q is not None:
                row[q] -= sgn
            row[n_entries + t] = -1.0
            rows.append(row)
            rhs.append(0.0)
    a_ub = np.vstack(rows) if rows else None
    b_ub = np.asarray(rhs) if rhs else None
    bounds = [(None, None)] * n_entries + [(0, None)] * n_terms
    if anchored:
        bounds[n_entries - 1] = (0, 0)
    best = math.inf
    best_dir = np.zeros(n_entries)
    for sign in _cut_functionals(theory, anchored):
        a_eq = np.concatenate([sign, np.zeros(n_terms)])[np.newaxis, :]
        res = linprog(
            cost,
            A_ub=a_ub,
            b_ub=b_ub,
            A_eq=a_eq,
            b_eq=[1.0],
            bounds=bounds,
            method="highs",
        )
        if res.status == 3:  # unbounded
            best = -math.inf
            if res.x is not None:
                best_dir = res.x[:n_entries]
            break
        if res.status == 2:  # infeasible slice, skip
            continue
        if not res.success:
            raise RuntimeError(f"growth LP failed: {res.message}")
        if res.fun < best:
            best = res.fun
            best_dir = res.x[:n_entries]
    if best is math.inf:
        # no cut pattern is feasible: the cone is {0}; any ratio certifies
        return GrowthReport(True, 1.0, ws.framing_offset, math.inf, ())
    ratio = best - 1e-7 * max(1.0, abs(best))
    return GrowthReport(
        coercive=ratio > 0,
        ratio=ratio,
        offset=ws.framing_offset,
        min_value=best,
        direction=tuple(best_dir),
    )


_GROWTH_CACHE = {}


def growth_report(theory, anchored=None):
    key = (theory.structure_key(), anchored)
    rep = _GROWTH_CACHE.get(key)
    if rep is None:
        rep = analyze_growth(theory, anchored)
        _GROWTH_CACHE[key] = rep
    return rep


def integer_flat_witness(theory, direction, max_scale=64):
    """Integer dominant charge with true weight <= 0 along a flat direction.

    Rationalizes the LP minimizer, clears numeric dust, rescales to integers
    and tests small multiples with exact arithmetic.  Returns a flat entry
    tuple or None.
    """
    ws = weight_structure(theory)
    direction = np.asarray(direction, dtype=float)
    if direction.size == 0 or not np.any(np.abs(direction) > 1e-9):
        return None
    direction = direction / np.max(np.abs(direction))
    direction[np.abs(direction) < 1e-9] = 0.0
    fracs = [Fraction(x).limit_denominator(24) for x in direction]
    denom = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    base = [int(f * denom) for f in fracs]
    offs = theory.entry_offsets
    # enforce dominance per vertex (sort descending kills LP round-off ties)
    for i, n in enumerate(theory.dims):
        seg = sorted(base[offs[i]: offs[i] + n], reverse=True)
        base[offs[i]: offs[i] + n] = seg
    if not any(base):
        return None
    for k in range(1, max_scale + 1):
        cand = tuple(k * b for b in base)
        if ws.delta2_exact(cand) <= 0:
            return cand
    return None
