"""Root-system tables for types A, D, E6, E7, E8 and G2.

Everything is stored over the integers in two fixed bases: roots in
simple-root coordinates and weights in fundamental-weight coordinates
(so a weight is the tuple of its pairings with the simple coroots, and the
Weyl vector is the all-ones tuple).  Positive coroots are kept in
simple-coroot coordinates, which is exactly what the dimension formula
consumes.  Tables are generated once from the Cartan matrix and self-checked
against the classical counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class RootSystemError(ValueError):
    pass


_POSITIVE_ROOT_COUNTS = {"A": None, "D": None, "E6": 36, "E7": 63, "E8": 120, "G2": 6}


def cartan_matrix(series, rank):
    """Cartan matrix with the convention A[i][j] = <alpha_j, alpha_i^vee>."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if series == "A":
        for i in range(rank - 1):
            join(i, i + 1)
    elif series == "D":
        if rank < 3:
            raise RootSystemError("type D needs rank >= 3")
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    elif series == "E":
        if rank not in (6, 7, 8):
            raise RootSystemError("type E needs rank 6, 7 or 8")
        # chain 1-3-4-5-...-rank with node 2 attached to node 4
        chain = [0] + list(range(2, rank))
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)
    elif series == "G":
        if rank != 2:
            raise RootSystemError("type G needs rank 2")
        a[0][1] = -3  # alpha_1 short, alpha_2 long
        a[1][0] = -1
    else:
        raise RootSystemError(f"unsupported series {series!r}")
    return tuple(tuple(row) for row in a)


def _positive_roots(cartan):
    """All positive roots in simple-root coordinates, via reflection closure."""
    rank = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = set(simple)
    while frontier:
        new = set()
        for r in frontier:
            for i in range(rank):
                pairing = sum(cartan[i][j] * r[j] for j in range(rank))
                reflected = tuple(
                    r[j] - (pairing if j == i else 0) for j in range(rank)
                )
                if reflected not in roots:
                    new.add(reflected)
        roots |= new
        frontier = new
    return sorted(
        (r for r in roots if all(c >= 0 for c in r)), key=lambda r: (sum(r), r)
    )


@dataclass(frozen=True)
class RootSystemData:
    label: str
    rank: int
    cartan: tuple
    simple_roots_fw: tuple  # columns of the Cartan matrix
    positive_roots: tuple  # simple-root coordinates
    positive_coroots: tuple  # simple-coroot coordinates
    rho_fw: tuple
    highest_root_fw: tuple
    num_positive: int

    @property
    def adjoint_dim(self):
        return self.rank + 2 * self.num_positive


def _build(series, rank):
    cartan = cartan_matrix(series, rank)
    pos = _positive_roots(cartan)
    dual = tuple(tuple(cartan[j][i] for j in range(rank)) for i in range(rank))
    pos_coroots = _positive_roots(dual)
    if len(pos) != len(pos_coroots):
        raise RootSystemError("root/coroot count mismatch")
    label = f"{series}{rank}"
    expected = _POSITIVE_ROOT_COUNTS.get(label) or _POSITIVE_ROOT_COUNTS.get(series)
    if series == "A":
        expected = rank * (rank + 1) // 2
    elif series == "D":
        expected = rank * (rank - 1)
    if expected is not None and len(pos) != expected:
        raise RootSystemError(
            f"{label}: generated {len(pos)} positive roots, expected {expected}"
        )
    theta = max(pos, key=sum)
    theta_fw = tuple(
        sum(cartan[i][j] * theta[j] for j in range(rank)) for i in range(rank)
    )
    simple_fw = tuple(
        tuple(cartan[i][j] for i in range(rank)) for j in range(rank)
    )
    rs = RootSystemData(
        label=label,
        rank=rank,
        cartan=cartan,
        simple_roots_fw=simple_fw,
        positive_roots=tuple(pos),
        positive_coroots=tuple(pos_coroots),
        rho_fw=(1,) * rank,
        highest_root_fw=theta_fw,
        num_positive=len(pos),
    )
    # the highest root is the adjoint highest weight: its Weyl dimension must
    # reproduce rank + number of roots
    if weyl_dim(rs, theta_fw) != rs.adjoint_dim:
        raise RootSystemError(f"{label}: adjoint dimension self-check failed")
    return rs


@lru_cache(maxsize=None)
def root_system(label):
    """Root system by label: 'A3', 'D4', 'E6', 'E7', 'E8', 'G2'."""
    label = label.strip().upper()
    series, rank_text = label[0], label[1:]
    try:
        rank = int(rank_text)
    except ValueError as exc:
        raise RootSystemError(f"bad root system label {label!r}") from exc
    if series == "A" and rank < 1:
        raise RootSystemError("type A needs rank >= 1")
    return _build(series, rank)


def weyl_dim(rs, hw_fw):
    """Dimension of the irreducible with a dominant highest weight.

    ``hw_fw`` lists the pairings with the simple coroots; the formula is the
    product over positive coroots of <hw + rho, alpha^vee> / <rho, alpha^vee>.
    """
    hw = tuple(int(c) for c in hw_fw)
    if len(hw) != rs.rank:
        raise RootSystemError(f"weight has rank {len(hw)}, expected {rs.rank}")
    if any(c < 0 for c in hw):
        raise RootSystemError(f"weight {hw} is not dominant")
    num = 1
    den = 1
    for coroot in rs.positive_coroots:
        num *= sum(c * (h + 1) for c, h in zip(coroot, hw))
        den *= sum(coroot)
    if num % den:
        raise RootSystemError("dimension formula did not yield an integer")
    return num // den


def weyl_dim_gl(parts):
    """Dimension of the GL/SL irreducible with weakly decreasing tuple weight.

    Shift-invariant product formula: prod_{i<j} (p_i - p_j + j - i) / (j - i).
    """
    p = tuple(int(x) for x in parts)
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise RootSystemError(f"{p} is not weakly decreasing")
    num = 1
    den = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            num *= p[i] - p[j] + j - i
            den *= j - i
    if num % den:
        raise RootSystemError("dimension formula did not yield an integer")
    return num // den
