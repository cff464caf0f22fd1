"""Independent representation-theoretic series and polynomials.

These are the cross-checks for the lattice-sum engine: Gelfand-Tsetlin
counts, graded weight-multiplicity polynomials (computed two independent
ways), the shifted graded characters of twisted function modules on the
nilpotent cone, equivariant characters of line-bundle sections on the
surface zy = w^N (lattice form and fixed-point form), and minimal nilpotent
orbit series from the Weyl dimension formula.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .rootdata import RootSystemError, root_system, weyl_dim, weyl_dim_gl
from .series import TruncatedSeries


class PartitionError(ValueError):
    pass


def check_weakly_decreasing(parts, what="tuple"):
    parts = tuple(int(x) for x in parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise PartitionError(f"{what} {parts} is not weakly decreasing")
    return parts


def partition_size(parts):
    return sum(parts)


def partition_weighted_sum(parts):
    """n(lambda) = sum (i-1) * lambda_i."""
    return sum(i * p for i, p in enumerate(parts))


# ---------------------------------------------------------------------------
# Gelfand-Tsetlin patterns
# ---------------------------------------------------------------------------


def gt_interlaces(upper, lower):
    return all(
        upper[i] >= lower[i] >= upper[i + 1] for i in range(len(lower))
    ) and len(lower) == len(upper) - 1


def gt_next_rows(row):
    # candidate[i] in [row[i+1], row[i]] is automatically weakly decreasing
    ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
    yield from itertools.product(*ranges)


@lru_cache(maxsize=None)
def _gt_count(row):
    if len(row) <= 1:
        return 1
    return sum(_gt_count(nxt) for nxt in gt_next_rows(row))


def gt_count(lam, n):
    """Number of triangular interlacing patterns with top row lam.

    Equals the dimension of the GL(n) irreducible with highest weight lam;
    negative entries are allowed.
    """
    lam = check_weakly_decreasing(lam, "top row")
    if len(lam) != n:
        raise PartitionError(f"top row {lam} does not have {n} parts")
    return _gt_count(lam)


def gt_patterns(lam):
    """All patterns (list of rows, lengths n..1) with the given top row."""
    lam = check_weakly_decreasing(lam, "top row")
    if len(lam) == 1:
        yield (lam,)
        return
    for nxt in gt_next_rows(lam):
        for rest in gt_patterns(nxt):
            yield (lam,) + rest


# ---------------------------------------------------------------------------
# Graded counts of positive-root decompositions (type A)
# ---------------------------------------------------------------------------


def _poly_add(a, b, scale=1):
    for k, c in b.items():
        new = a.get(k, 0) + scale * c
        if new:
            a[k] = new
        else:
            a.pop(k, None)
    return a


@lru_cache(maxsize=None)
def _qk_rec(v, root_index, qmax, n):
    """Counts, by number of parts, of ways to write v as a sum of the
    positive roots e_i - e_j with index >= root_index."""
    if all(x == 0 for x in v):
        return ((0, 1),)
    roots = _positive_roots_eps(n)
    if root_index >= len(roots):
        return ()
    i, j = roots[root_index]
    out = {}
    for k in range(qmax + 1):
        reduced = list(v)
        reduced[i] -= k
        reduced[j] += k
        for parts, count in _qk_rec(tuple(reduced), root_index + 1, qmax - k, n):
            if parts + k <= qmax:
                out[parts + k] = out.get(parts + k, 0) + count
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _positive_roots_eps(n):
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def q_kostant(n, v, qmax):
    """Graded count of decompositions of v into positive roots of type A.

    ``v`` is an n-tuple in coordinate (epsilon) form with entries summing to
    zero; the result maps k -> number of ways to write v as a sum of exactly
    k positive roots e_i - e_j, for k <= qmax.
    """
    v = tuple(int(x) for x in v)
    if len(v) != n:
        raise PartitionError(f"vector {v} does not have {n} coordinates")
    if sum(v) != 0:
        raise PartitionError(f"vector {v} is not in the root lattice")
    if qmax < 0:
        return {}
    if any(sum(v[: i + 1]) < 0 for i in range(n)):
        return {}
    return dict(_qk_rec(v, 0, qmax, n))


# ---------------------------------------------------------------------------
# Graded weight multiplicities, two ways
# ---------------------------------------------------------------------------


def _permutations_with_sign(n):
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        yield perm, -1 if inversions % 2 else 1


def kostka_foulkes_kostant(n, mu, lam, qmax):
    """Graded multiplicity of weight lam in the irreducible mu (type A).

    Alternating sum over the symmetric group of graded root-decomposition
    counts of w(mu + rho) - (lam + rho); entries of mu and lam may be
    negative, only the sizes must agree.  Returns {degree: coefficient} up to
    degree qmax.
    """
    mu = check_weakly_decreasing(mu, "mu")
    lam = check_weakly_decreasing(lam, "lambda")
    if len(mu) != n or len(lam) != n:
        raise PartitionError("mu and lambda must have n parts")
    if sum(mu) != sum(lam):
        raise PartitionError(
            f"size mismatch: |mu| = {sum(mu)}, |lambda| = {sum(lam)}"
        )
    rho = tuple(n - 1 - i for i in range(n))
    mu_rho = tuple(m + r for m, r in zip(mu, rho))
    out = {}
    for perm, sign in _permutations_with_sign(n):
        v = tuple(mu_rho[perm[i]] - lam[i] - rho[i] for i in range(n))
        counts = q_kostant(n, v, qmax)
        if counts:
            _poly_add(out, counts, sign)
    return out


def _ssyt_fillings(shape, content):
    """Semistandard tableaux of a partition shape with given content.

    Rows weakly increase, columns strictly increase; ``content[k]`` copies of
    the letter k+1 are used in total.
    """
    num_letters = len(content)

    def rows(row_index, prev_row, remaining):
        if row_index == len(shape):
            yield ()
            return
        width = shape[row_index]

        def cells(col, acc, rem):
            if col == width:
                yield tuple(acc), rem
                return
            lo = acc[-1] if acc else 1
            for letter in range(lo, num_letters + 1):
                if rem[letter - 1] <= 0:
                    continue
                if prev_row is not None and letter <= prev_row[col]:
                    continue
                rem2 = rem[: letter - 1] + (rem[letter - 1] - 1,) + rem[letter:]
                yield from cells(col + 1, acc + [letter], rem2)

        for row, rem in cells(0, [], remaining):
            for rest in rows(row_index + 1, row, rem):
                yield (row,) + rest

    yield from rows(0, None, tuple(content))


def charge_of_word(word, num_letters):
    """Charge statistic of a word with partition content."""
    word = list(word)
    total = 0
    while word:
        # extract one standard subword, scanning right to left cyclically
        positions = []
        pos = None
        for letter in range(1, num_letters + 1):
            candidates = [i for i, w in enumerate(word) if w == letter]
            if not candidates:
                break
            if pos is None:
                pick = max(candidates)
                index = 0
            else:
                left = [i for i in candidates if i < pos]
                if left:
                    pick = max(left)
                    index = positions[-1][1]
                else:
                    pick = max(candidates)
                    index = positions[-1][1] + 1
            positions.append((pick, index))
            pos = pick
        total += sum(index for _, index in positions)
        for pick, _ in sorted(positions, reverse=True):
            word.pop(pick)
    return total


def tableau_reading_word(tab):
    """Row word: rows bottom to top, each left to right."""
    out = []
    for row in reversed(tab):
        out.extend(row)
    return out


def kostka_foulkes_charge(mu, lam):
    """Graded multiplicity via the charge statistic on semistandard tableaux.

    Both mu and lam must be nonnegative partitions of the same size (lam is
    the content).  Returns {degree: coefficient}; the degrees are the charges
    of the tableaux of shape mu and content lam.
    """
    mu = check_weakly_decreasing(mu, "mu")
    lam = check_weakly_decreasing(lam, "lambda")
    if any(x < 0 for x in mu) or any(x < 0 for x in lam):
        raise PartitionError("the charge method needs nonnegative partitions")
    if sum(mu) != sum(lam):
        raise PartitionError(
            f"size mismatch: |mu| = {sum(mu)}, |lambda| = {sum(lam)}"
        )
    shape = tuple(p for p in mu if p > 0)
    content = tuple(lam)
    out = {}
    for tab in _ssyt_fillings(shape, content):
        c = charge_of_word(tableau_reading_word(tab), len(content))
        out[c] = out.get(c, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Shifted graded characters on the nilpotent cone
# ---------------------------------------------------------------------------


def aj_min_degree(n, lam):
    """t-degree where the shifted graded character starts."""
    lam = check_weakly_decreasing(lam, "lambda")
    return (n - 1) * partition_size(lam) - 2 * partition_weighted_sum(lam)


def aj_series(n, lam, order):
    """Shifted graded character: t^shift * sum_mu dim(mu) K_{mu,lam}(t^2).

    The sum runs over dominant mu of the same size dominating lam.  Writing
    mu = lam + sum_i c_i alpha_i with c_i >= 0, any term contributing degree
    k to K has k >= (sum c_i) / (n - 1) because the tallest positive root of
    type A has height n - 1; this caps the enumeration of mu for a given
    truncation order, and the cap is exercised by the cross-checks against
    the lattice-sum engine.
    """
    lam = check_weakly_decreasing(lam, "lambda")
    if len(lam) != n:
        raise PartitionError(f"lambda must have {n} parts")
    if order < 0:
        raise PartitionError("order must be nonnegative")
    shift = aj_min_degree(n, lam)
    qmax = (order - shift) // 2
    if qmax < 0:
        return TruncatedSeries.zero(order)
    terms = {}
    if n == 1:
        terms[(shift,)] = 1
        return TruncatedSeries(order, terms)
    height_cap = (n - 1) * qmax
    for cs in itertools.product(range(height_cap + 1), repeat=n - 1):
        if sum(cs) > height_cap:
            continue
        full = (0,) + cs + (0,)
        mu = tuple(lam[i] + full[i + 1] - full[i] for i in range(n))
        if any(mu[i] < mu[i + 1] for i in range(n - 1)):
            continue
        kf = kostka_foulkes_kostant(n, mu, lam, qmax)
        if not kf:
            continue
        dim = weyl_dim_gl(mu)
        for k, coeff in kf.items():
            exp = shift + 2 * k
            if exp <= order and coeff:
                terms[(exp,)] = terms.get((exp,), 0) + dim * coeff
    return TruncatedSeries(order, terms)


# ---------------------------------------------------------------------------
# Line-bundle characters on the surface zy = w^N
# ---------------------------------------------------------------------------


def klein_lattice(n, lam, order):
    """Lattice character sum: over integers m, the monomial
    x^(sum (lam_i - m)) t^(sum |lam_i - m|) times 1/(1 - t^2)."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != n:
        raise PartitionError(f"lambda must have {n} parts")
    if order < 0:
        raise PartitionError("order must be nonnegative")
    lo = min(lam) - order
    hi = max(lam) + order
    terms = {}
    for m in range(lo, hi + 1):
        t_exp = sum(abs(x - m) for x in lam)
        if t_exp <= order:
            key = (t_exp, sum(x - m for x in lam))
            terms[key] = terms.get(key, 0) + 1
    base = TruncatedSeries(order, terms, num_aux=1)
    return base * TruncatedSeries.geometric(2, (0,), order, num_aux=1)


def _windowed_product(factors, order, x_cap):
    """Product of sparse {(t, x): coeff} dicts, truncated in t and |x|."""
    result = {(0, 0): 1}
    for factor in factors:
        new = {}
        for (t1, x1), c1 in result.items():
            for (t2, x2), c2 in factor.items():
                t = t1 + t2
                x = x1 + x2
                if t > order or abs(x) > x_cap:
                    continue
                key = (t, x)
                val = new.get(key, 0) + c1 * c2
                if val:
                    new[key] = val
                else:
                    del new[key]
        result = new
    return result


def _geometric_factor(x_step, t_step, order, tail_extent):
    """Expansion of 1/(1 - x^x_step t^t_step) in the region |x| large.

    For t_step > 0 the expansion runs in increasing t-degree regardless of
    the sign of x_step.  For t_step < 0 the factor is first rewritten as
      1/(1-u) = -u^(-1) / (1 - u^(-1)),
    flipping to increasing t-degree.  For t_step = 0 the expansion is the
    geometric series in x^(-|x_step|) (the large-|x| region), carried down
    to x-exponent -tail_extent; that infinite tail cancels between fixed
    points, which the caller asserts on a window wide enough to expose any
    surviving residue.
    """
    terms = {}
    if t_step > 0:
        j = 0
        while j * t_step <= order:
            terms[(j * t_step, j * x_step)] = 1
            j += 1
    elif t_step < 0:
        # -u^{-1}/(1-u^{-1}) with u = x^x_step t^t_step
        j = 1
        while j * (-t_step) <= order:
            terms[(j * (-t_step), j * (-x_step))] = -1
            j += 1
    else:
        step = -abs(x_step)  # expand toward x^{-inf}
        sign = 1 if x_step < 0 else -1  # x_step > 0 rewrites as above
        j = 0 if x_step < 0 else 1
        while j * step >= -tail_extent:
            terms[(0, j * step)] = sign
            j += 1
    return terms


def klein_lefschetz(n, lam, order):
    """Fixed-point character sum: N terms, one per torus-fixed point.

    Term r (1-based) contributes
        x^(sum_i (lam_i - lam_r)) t^(sum_{i<r}(lam_i-lam_r) - sum_{i>r}(lam_i-lam_r))
        / ((1 - x^(-n) t^(n-2r+2)) (1 - x^(n) t^(2r-n))).
    Requires dominant lam.  Factors with nonpositive t-steps are expanded in
    the large-|x| region; the infinite x-tails cancel in the sum and the
    result is asserted to live in the certified x-window of the lattice sum.
    """
    lam = check_weakly_decreasing(lam, "lambda")
    if len(lam) != n:
        raise PartitionError(f"lambda must have {n} parts")
    if order < 0:
        raise PartitionError("order must be nonnegative")
    x_cert = sum(abs(x) for x in lam) + abs(sum(lam)) + order
    # products are complete within |x| <= x_prod: intermediate products may
    # wander n*(order+2) further out before a later factor pulls them back,
    # and each pure-x tail is carried far enough down to absorb all of that
    x_prod = x_cert + 2 * n * (order + 4)
    x_work = x_prod + n * (order + 2)
    total = {}
    for r in range(1, n + 1):
        x0 = sum(x - lam[r - 1] for x in lam)
        t0 = sum(lam[i] - lam[r - 1] for i in range(r - 1)) - sum(
            lam[i] - lam[r - 1] for i in range(r - 1, n)
        )
        tail_extent = x_work + n * (order + 2) + abs(x0) + 2 * n
        monomial = {(t0, x0): 1}
        f1 = _geometric_factor(-n, n - 2 * r + 2, order - min(t0, 0), tail_extent)
        f2 = _geometric_factor(n, 2 * r - n, order - min(t0, 0), tail_extent)
        term = _windowed_product([monomial, f1, f2], order, x_work)
        for key, coeff in term.items():
            if abs(key[1]) > x_prod:
                continue
            val = total.get(key, 0) + coeff
            if val:
                total[key] = val
            else:
                del total[key]
    stray = [k for k in total if abs(k[1]) > x_cert]
    if stray:
        raise RuntimeError(
            f"fixed-point tails failed to cancel outside |x| <= {x_cert}: {stray[:4]}"
        )
    return TruncatedSeries(order, {k: c for k, c in total.items()}, num_aux=1)


def klein_closed_form(n, order):
    """Series of (1 - t^(2N)) / ((1 - t^2)(1 - t^N)^2), the x -> 1 case at
    lam = 0 (functions on the surface zy = w^N with deg w = 2)."""
    numer = TruncatedSeries(order, {(0,): 1, (2 * n,): -1})
    g2 = TruncatedSeries.geometric(2, (), order)
    gn = TruncatedSeries.geometric(n, (), order)
    return numer * g2 * gn * gn


# ---------------------------------------------------------------------------
# Minimal nilpotent orbit series
# ---------------------------------------------------------------------------


def min_orbit_series(rs, order):
    """Graded dimensions of the minimal nilpotent orbit closure.

    Degree k (exponent t^(2k)) carries the irreducible with highest weight
    k * theta, theta the highest root.
    """
    if isinstance(rs, str):
        rs = root_system(rs)
    if order < 0:
        raise PartitionError("order must be nonnegative")
    terms = {}
    for k in range(order // 2 + 1):
        hw = tuple(k * c for c in rs.highest_root_fw)
        terms[(2 * k,)] = weyl_dim(rs, hw)
    return TruncatedSeries(order, terms)
