"""Hot kernels for batched charge evaluation: numba and pure-numpy paths.

The inner loop of every Hilbert-series computation is "evaluate the weight
2*Delta, the stabilizer block pattern and the grading exponents on a large
batch of lattice points".  Both backends implement the same contract:

    evaluate_batch(points, model) -> (delta2, block_sig, aux)

``points`` is an int64 array of shape (P, E); the model bundles index arrays
describing matter pairings, framing pairings, the per-entry weight of the
vector-multiplet term, block-signature bit positions and grading functionals.

Backend selection: the environment variable ``COULOMB_BACKEND`` may be set to
``numba`` or ``numpy``; default is numba when importable, else numpy.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "COULOMB_BACKEND"


def _requested_backend():
    return os.environ.get(_ENV_VAR, "auto").strip().lower()


try:
    if _requested_backend() == "numpy":
        raise ImportError("numpy backend forced via COULOMB_BACKEND")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrapper(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrapper


class KernelModel:
    """Precomputed index arrays describing one theory's weight function."""

    def __init__(
        self,
        pair_p,
        pair_q,
        pair_w,
        fr_idx,
        fr_val,
        fr_w,
        vec_coeff,
        sig_left,
        sig_right,
        grading_matrix,
        grading_offsets,
    ):
        self.pair_p = np.asarray(pair_p, dtype=np.int64)
        self.pair_q = np.asarray(pair_q, dtype=np.int64)
        self.pair_w = np.asarray(pair_w, dtype=np.int64)
        self.fr_idx = np.asarray(fr_idx, dtype=np.int64)
        self.fr_val = np.asarray(fr_val, dtype=np.int64)
        self.fr_w = np.asarray(fr_w, dtype=np.int64)
        self.vec_coeff = np.asarray(vec_coeff, dtype=np.int64)
        self.sig_left = np.asarray(sig_left, dtype=np.int64)
        self.sig_right = np.asarray(sig_right, dtype=np.int64)
        self.grading_matrix = np.asarray(grading_matrix, dtype=np.int64)
        self.grading_offsets = np.asarray(grading_offsets, dtype=np.int64)
        if len(self.sig_left) > 62:
            raise ValueError("too many entries for packed block signatures")


@njit(cache=True)
def _evaluate_numba(
    points, pair_p, pair_q, pair_w, fr_idx, fr_val, fr_w, vec_coeff, sig_left, sig_right
):  # pragma: no cover - numba-compiled
    n_pts = points.shape[0]
    delta2 = np.empty(n_pts, dtype=np.int64)
    sig = np.empty(n_pts, dtype=np.int64)
    for r in range(n_pts):
        acc = np.int64(0)
        for k in range(pair_p.shape[0]):
            d = points[r, pair_p[k]] - points[r, pair_q[k]]
            acc += pair_w[k] * (d if d >= 0 else -d)
        for k in range(fr_idx.shape[0]):
            d = points[r, fr_idx[k]] - fr_val[k]
            acc += fr_w[k] * (d if d >= 0 else -d)
        for e in range(points.shape[1]):
            acc += vec_coeff[e] * points[r, e]
        delta2[r] = acc
        bits = np.int64(0)
        for k in range(sig_left.shape[0]):
            if points[r, sig_left[k]] == points[r, sig_right[k]]:
                bits |= np.int64(1) << k
        sig[r] = bits
    return delta2, sig


def _evaluate_numpy(
    points, pair_p, pair_q, pair_w, fr_idx, fr_val, fr_w, vec_coeff, sig_left, sig_right
):
    delta2 = np.zeros(points.shape[0], dtype=np.int64)
    if len(pair_p):
        diffs = np.abs(points[:, pair_p] - points[:, pair_q])
        delta2 += diffs @ pair_w
    if len(fr_idx):
        diffs = np.abs(points[:, fr_idx] - fr_val[np.newaxis, :])
        delta2 += diffs @ fr_w
    delta2 += points @ vec_coeff
    sig = np.zeros(points.shape[0], dtype=np.int64)
    if len(sig_left):
        eq = points[:, sig_left] == points[:, sig_right]
        weights = np.int64(1) << np.arange(len(sig_left), dtype=np.int64)
        sig = eq @ weights
    return delta2, sig


def active_backend():
    req = _requested_backend()
    if req == "numpy":
        return "numpy"
    if req == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("COULOMB_BACKEND=numba but numba is unavailable")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


def evaluate_batch(points, model, backend=None):
    """Evaluate (delta2, block signature, grading exponents) on a batch."""
    points = np.ascontiguousarray(points, dtype=np.int64)
    if backend is None:
        backend = active_backend()
    args = (
        points,
        model.pair_p,
        model.pair_q,
        model.pair_w,
        model.fr_idx,
        model.fr_val,
        model.fr_w,
        model.vec_coeff,
        model.sig_left,
        model.sig_right,
    )
    if backend == "numba":
        delta2, sig = _evaluate_numba(*args)
    elif backend == "numpy":
        delta2, sig = _evaluate_numpy(*args)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if model.grading_matrix.size:
        aux = points @ model.grading_matrix.T + model.grading_offsets[np.newaxis, :]
    else:
        aux = np.zeros((points.shape[0], 0), dtype=np.int64)
    return delta2, sig, aux
