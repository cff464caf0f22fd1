"""Exact truncated Laurent series in one main variable t.

Coefficients are arbitrary-precision Python integers.  A series may carry up
to two auxiliary grading variables (called x and y in rendered output), whose
exponents are unconstrained integers; truncation happens in t only.  A series
with ``order = n`` is exact for every t-exponent <= n and silently discards
anything above.
"""

from __future__ import annotations


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    """Immutable truncated Laurent series with exact integer coefficients.

    Terms are stored as a map from exponent tuples ``(t_exp, *aux_exps)`` to
    nonzero integers.  Two series compare equal iff they have the same order,
    the same number of auxiliary variables and identical term maps.
    """

    __slots__ = ("order", "num_aux", "terms")

    def __init__(self, order, terms=None, num_aux=0):
        if num_aux not in (0, 1, 2):
            raise SeriesError("num_aux must be 0, 1 or 2")
        clean = {}
        if terms:
            width = 1 + num_aux
            for key, coeff in terms.items():
                if isinstance(key, int):
                    key = (key,)
                else:
                    key = tuple(int(e) for e in key)
                if len(key) != width:
                    raise SeriesError(
                        f"exponent {key} has wrong arity for num_aux={num_aux}"
                    )
                if coeff and key[0] <= order:
                    coeff = int(coeff)
                    prev = clean.get(key)
                    new = coeff if prev is None else prev + coeff
                    if new:
                        clean[key] = new
                    elif prev is not None:
                        del clean[key]
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "num_aux", num_aux)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order, num_aux=0):
        return cls(order, {}, num_aux)

    @classmethod
    def one(cls, order, num_aux=0):
        return cls.monomial(1, 0, (), order, num_aux)

    @classmethod
    def monomial(cls, coeff, t_exp, aux=(), order=0, num_aux=None):
        aux = tuple(int(a) for a in aux)
        if num_aux is None:
            num_aux = len(aux)
        if len(aux) < num_aux:
            aux = aux + (0,) * (num_aux - len(aux))
        return cls(order, {(int(t_exp),) + aux: int(coeff)}, num_aux)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def min_t_exponent(self):
        """Smallest stored t-exponent, or None for the zero series."""
        if not self.terms:
            return None
        return min(key[0] for key in self.terms)

    def coefficient(self, exponent):
        """Exact coefficient at an exponent (int for t, or full tuple)."""
        if isinstance(exponent, int):
            exponent = (exponent,)
        else:
            exponent = tuple(int(e) for e in exponent)
        if len(exponent) != 1 + self.num_aux:
            raise SeriesError(
                f"exponent {exponent} has wrong arity for num_aux={self.num_aux}"
            )
        if exponent[0] > self.order:
            raise SeriesError(
                f"coefficient of t^{exponent[0]} requested beyond order {self.order}"
            )
        return self.terms.get(exponent, 0)

    def t_slice(self, t_exp):
        """Map of aux exponent tuples -> coefficient at a fixed t-exponent."""
        if t_exp > self.order:
            raise SeriesError(f"slice t^{t_exp} beyond order {self.order}")
        return {k[1:]: c for k, c in self.terms.items() if k[0] == t_exp}

    def t_coefficients(self):
        """Collapse aux variables: map t_exp -> total coefficient."""
        out = {}
        for key, coeff in self.terms.items():
            out[key[0]] = out.get(key[0], 0) + coeff
        return {e: c for e, c in out.items() if c}

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, TruncatedSeries):
            raise SeriesError(f"expected TruncatedSeries, got {type(other)!r}")
        if self.num_aux != other.num_aux:
            raise SeriesError(
                f"mismatched num_aux: {self.num_aux} vs {other.num_aux}"
            )

    def __add__(self, other):
        self._check_compatible(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            new = terms.get(key, 0) + coeff
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return TruncatedSeries(order, terms, self.num_aux)

    def __neg__(self):
        return TruncatedSeries(
            self.order, {k: -c for k, c in self.terms.items()}, self.num_aux
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        scalar = int(scalar)
        if scalar == 0:
            return TruncatedSeries.zero(self.order, self.num_aux)
        return TruncatedSeries(
            self.order, {k: scalar * c for k, c in self.terms.items()}, self.num_aux
        )

    def __mul__(self, other):
        """Cauchy product.

        Truncation rule: with ``m_a = min(0, min t-exponent of a)`` (and 0 for
        the zero series), the product is exact up to
        ``min(a.order, b.order, a.order + m_b, b.order + m_a)``.  When both
        factors have no negative t-exponents this is the plain
        ``min(a.order, b.order)``; negative exponents on one side shrink the
        window conservatively, because unknown high-order terms of the other
        factor could otherwise be pulled down into view.
        """
        self._check_compatible(other)
        min_a = self.min_t_exponent()
        min_b = other.min_t_exponent()
        cap_a = min(0, min_a) if min_a is not None else 0
        cap_b = min(0, min_b) if min_b is not None else 0
        order = min(
            self.order, other.order, self.order + cap_b, other.order + cap_a
        )
        if not self.terms or not other.terms:
            return TruncatedSeries.zero(order, self.num_aux)
        # iterate over the smaller factor
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        terms = {}
        for ka, ca in a.terms.items():
            ta = ka[0]
            budget = order - ta
            for kb, cb in b.terms.items():
                if kb[0] > budget:
                    continue
                key = tuple(x + y for x, y in zip(ka, kb))
                new = terms.get(key, 0) + ca * cb
                if new:
                    terms[key] = new
                else:
                    del terms[key]
        return TruncatedSeries(order, terms, self.num_aux)

    def truncate(self, order):
        """Restrict to a (weakly) smaller order."""
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(
            order, {k: c for k, c in self.terms.items() if k[0] <= order}, self.num_aux
        )

    def shift_t(self, delta):
        """Multiply by t**delta; the exactness window shifts along."""
        delta = int(delta)
        return TruncatedSeries(
            self.order + delta,
            {(k[0] + delta,) + k[1:]: c for k, c in self.terms.items()},
            self.num_aux,
        )

    def with_num_aux(self, num_aux):
        """Reinterpret with more aux variables (new exponents are 0)."""
        if num_aux < self.num_aux:
            raise SeriesError("cannot drop aux variables; use specialize_aux")
        pad = (0,) * (num_aux - self.num_aux)
        return TruncatedSeries(
            self.order, {k + pad: c for k, c in self.terms.items()}, num_aux
        )

    def specialize_aux(self, index=0):
        """Set one auxiliary variable to 1, merging coefficients."""
        if not 0 <= index < self.num_aux:
            raise SeriesError(f"no aux variable {index}")
        terms = {}
        for key, coeff in self.terms.items():
            new_key = key[: 1 + index] + key[2 + index:]
            terms[new_key] = terms.get(new_key, 0) + coeff
        return TruncatedSeries(self.order, terms, self.num_aux - 1)

    # -- geometric factors -------------------------------------------------

    @classmethod
    def geometric(cls, k, aux=(), order=0, num_aux=None):
        """Expansion of 1/(1 - t^k x^aux): sum of t^(j*k) x^(j*aux), j >= 0."""
        k = int(k)
        if k <= 0:
            raise SeriesError(f"geometric step must be positive, got {k}")
        aux = tuple(int(a) for a in aux)
        if num_aux is None:
            num_aux = len(aux)
        if len(aux) < num_aux:
            aux = aux + (0,) * (num_aux - len(aux))
        terms = {}
        j = 0
        while j * k <= order:
            terms[(j * k,) + tuple(j * a for a in aux)] = 1
            j += 1
        return cls(order, terms, num_aux)

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items())

    def render_terms(self):
        """Canonical line-per-term rendering: ``t_exp [aux_exps...] coeff``."""
        lines = []
        for key, coeff in self.sorted_terms():
            lines.append(" ".join(str(e) for e in key) + f" {coeff}")
        return "\n".join(lines)

    def render_poly(self):
        """Human-readable polynomial string, terms in canonical order."""
        if not self.terms:
            return "0"
        names = ("t", "x", "y")
        parts = []
        for key, coeff in self.sorted_terms():
            factors = []
            for name, exp in zip(names, key):
                if exp == 1:
                    factors.append(name)
                elif exp != 0:
                    factors.append(f"{name}^{exp}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.num_aux == other.num_aux
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.order, self.num_aux, frozenset(self.terms.items())))

    def __repr__(self):
        body = self.render_poly()
        if len(body) > 60:
            body = body[:57] + "..."
        return f"TruncatedSeries({body} + O(t^{self.order + 1}))"


def s_add(a, b):
    return a + b


def s_mul(a, b):
    return a * b


def s_geom(k, aux=(), order=0, num_aux=None):
    return TruncatedSeries.geometric(k, aux, order, num_aux)


def s_coeff(series, exponent):
    return series.coefficient(exponent)
