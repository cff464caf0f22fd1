"""Index-array form of a theory's weight function.

The weight 2*Delta of a magnetic charge decomposes into
  * matter terms: |entry_p - entry_q| with positive integer weights
    (quiver edges, including loops) and |entry_p - F| terms against fixed
    framing values,
  * a vector-multiplet term: -2 * sum over same-vertex entry pairs of
    |entry_a - entry_b|, which is linear on the dominant cone.

This module flattens all of that into arrays shared by the batched kernels,
the exact single-point evaluator and the growth certificate.
"""

from __future__ import annotations

import numpy as np


class WeightStructure:
    def __init__(self, theory):
        self.theory = theory
        offs = theory.entry_offsets
        pair_p, pair_q, pair_w = [], [], []
        for i, j, mult in theory.edges:
            if i == j:
                # loop: adjoint-type matter, each unordered pair twice
                for a in range(theory.dims[i]):
                    for b in range(a + 1, theory.dims[i]):
                        pair_p.append(offs[i] + a)
                        pair_q.append(offs[i] + b)
                        pair_w.append(2 * mult)
            else:
                for a in range(theory.dims[i]):
                    for b in range(theory.dims[j]):
                        pair_p.append(offs[i] + a)
                        pair_q.append(offs[j] + b)
                        pair_w.append(mult)
        fr_idx, fr_val, fr_w = [], [], []
        for i, v in enumerate(theory.vertices):
            for a in range(v.dim_v):
                for f in v.framing:
                    fr_idx.append(offs[i] + a)
                    fr_val.append(f)
                    fr_w.append(1)
        # linear coefficients of -2 * sum_{a<b} (x_a - x_b), valid when the
        # entries within each vertex are weakly decreasing
        vec_coeff = np.zeros(theory.num_entries, dtype=np.int64)
        vec_pairs = []
        for i, n in enumerate(theory.dims):
            for a in range(n):
                vec_coeff[offs[i] + a] = -2 * (n - 2 * a - 1)
                for b in range(a + 1, n):
                    vec_pairs.append((offs[i] + a, offs[i] + b))
        # block-signature bits: one per adjacent same-vertex entry pair
        sig_left, sig_right = [], []
        for i, n in enumerate(theory.dims):
            for a in range(n - 1):
                sig_left.append(offs[i] + a)
                sig_right.append(offs[i] + a + 1)
        self.pair_p = np.asarray(pair_p, dtype=np.int64)
        self.pair_q = np.asarray(pair_q, dtype=np.int64)
        self.pair_w = np.asarray(pair_w, dtype=np.int64)
        self.fr_idx = np.asarray(fr_idx, dtype=np.int64)
        self.fr_val = np.asarray(fr_val, dtype=np.int64)
        self.fr_w = np.asarray(fr_w, dtype=np.int64)
        self.vec_coeff = vec_coeff
        self.vec_pairs = tuple(vec_pairs)
        self.sig_left = np.asarray(sig_left, dtype=np.int64)
        self.sig_right = np.asarray(sig_right, dtype=np.int64)
        # dropping all framing values costs at most this much weight
        self.framing_offset = int(np.sum(self.fr_w * np.abs(self.fr_val)))

    def delta2_exact(self, entries):
        """Exact integer 2*Delta of a flat entry tuple (any sign pattern)."""
        total = 0
        for p, q, w in zip(self.pair_p, self.pair_q, self.pair_w):
            total += int(w) * abs(entries[p] - entries[q])
        for p, f, w in zip(self.fr_idx, self.fr_val, self.fr_w):
            total += int(w) * abs(entries[p] - int(f))
        for p, q in self.vec_pairs:
            total -= 2 * abs(entries[p] - entries[q])
        return total

    def block_signature(self, entries):
        bits = 0
        for k, (p, q) in enumerate(zip(self.sig_left, self.sig_right)):
            if entries[p] == entries[q]:
                bits |= 1 << k
        return bits

    def block_multiplicities(self, sig):
        """Decode a packed signature into per-vertex block size lists."""
        theory = self.theory
        out = []
        bit = 0
        for n in theory.dims:
            blocks = []
            run = 1
            for _ in range(n - 1):
                if (sig >> bit) & 1:
                    run += 1
                else:
                    blocks.append(run)
                    run = 1
                bit += 1
            blocks.append(run)
            out.append(tuple(blocks))
        return tuple(out)


_CACHE = {}


def weight_structure(theory):
    key = theory.structure_key()
    ws = _CACHE.get(key)
    if ws is None:
        ws = WeightStructure(theory)
        _CACHE[key] = ws
    return ws
