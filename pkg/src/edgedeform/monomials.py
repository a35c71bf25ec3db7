"""Monomials, edge ideals, and exact arithmetic in the quotient ring.

Everything is exact: coefficients are ``fractions.Fraction`` and membership
in a monomial ideal is decided by generator divisibility.  Normal forms in
the quotient by a monomial ideal simply drop the terms whose monomial lies
in the ideal, so classes of the quotient ring are represented by their
unique normal form.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MaterializationLimitError

DEFAULT_MATERIALIZATION_CAP = 100_000


class Monomial:
    """A power product of named variables with nonnegative exponents.

    Zero exponents are never stored; the unit monomial has an empty
    exponent table.  Instances are immutable and hashable.
    """

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        if isinstance(exps, dict):
            items = exps.items()
        else:
            items = exps
        pairs = []
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v!r}")
            if e > 0:
                pairs.append((v, int(e)))
        pairs.sort()
        self.exps = tuple(pairs)
        self._hash = hash(self.exps)

    @classmethod
    def one(cls):
        return cls(())

    @classmethod
    def variable(cls, v):
        return cls(((v, 1),))

    @classmethod
    def from_vertices(cls, vertices):
        """Product of the given vertex variables, with multiplicity."""
        exps = {}
        for v in vertices:
            exps[v] = exps.get(v, 0) + 1
        return cls(exps)

    @classmethod
    def parse(cls, text):
        """Inverse of str(): "a^2*b" -> the monomial, "1" -> the unit."""
        text = text.strip()
        if text == "1":
            return cls.one()
        exps = {}
        for factor in text.split("*"):
            if "^" in factor:
                v, e = factor.split("^", 1)
                exps[v] = exps.get(v, 0) + int(e)
            else:
                exps[factor] = exps.get(factor, 0) + 1
        return cls(exps)

    @property
    def degree(self):
        return sum(e for _, e in self.exps)

    @property
    def support(self):
        return frozenset(v for v, _ in self.exps)

    def exponent(self, v):
        for w, e in self.exps:
            if w == v:
                return e
        return 0

    def is_one(self):
        return not self.exps

    def is_squarefree(self):
        return all(e == 1 for _, e in self.exps)

    def times(self, other):
        exps = dict(self.exps)
        for v, e in other.exps:
            exps[v] = exps.get(v, 0) + e
        return Monomial(exps)

    def times_variable(self, v):
        exps = dict(self.exps)
        exps[v] = exps.get(v, 0) + 1
        return Monomial(exps)

    def divides(self, other):
        other_exps = dict(other.exps)
        return all(other_exps.get(v, 0) >= e for v, e in self.exps)

    def divide(self, other):
        """Exact quotient self / other; raises if not divisible."""
        exps = dict(self.exps)
        for v, e in other.exps:
            have = exps.get(v, 0)
            if have < e:
                raise ValueError(f"{other} does not divide {self}")
            exps[v] = have - e
        return Monomial(exps)

    def gcd(self, other):
        other_exps = dict(other.exps)
        return Monomial({v: min(e, other_exps[v]) for v, e in self.exps if v in other_exps})

    def squarefree_part(self):
        """Largest square-free divisor: clamp every exponent to 1."""
        return Monomial({v: 1 for v, _ in self.exps})

    def coprime_with(self, other):
        return not (self.support & other.support)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.degree, self.exps) < (other.degree, other.exps)

    def __str__(self):
        if not self.exps:
            return "1"
        parts = []
        for v, e in self.exps:
            parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({str(self)!r})"


ONE = Monomial.one()


class QuotientClass:
    """An element of R/I in normal form: no term lies in the ideal.

    Stored as a sorted tuple of (monomial, nonzero rational coefficient)
    pairs; the zero class has no terms.  Construct through
    ``EdgeIdeal.normal_form`` so the normal-form invariant always holds.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        cleaned = [(m, Fraction(c)) for m, c in items if c != 0]
        cleaned.sort(key=lambda t: t[0].exps)
        self.terms = tuple(cleaned)

    @classmethod
    def zero(cls):
        return cls(())

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Common degree of the terms; None for the zero class."""
        if not self.terms:
            return None
        return self.terms[0][0].degree

    def as_dict(self):
        return dict(self.terms)

    def coefficient(self, m):
        for mono, c in self.terms:
            if mono == m:
                return c
        return Fraction(0)

    def scaled(self, c):
        c = Fraction(c)
        if c == 0:
            return QuotientClass.zero()
        return QuotientClass([(m, coeff * c) for m, coeff in self.terms])

    def __eq__(self, other):
        return isinstance(other, QuotientClass) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            mag = abs(c)
            body = str(m) if mag == 1 and not m.is_one() else (
                str(mag) if m.is_one() else f"{mag}*{m}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"QuotientClass({str(self)!r})"


class EdgeIdeal:
    """The quadratic monomial ideal generated by the edges of a graph.

    A loop aa contributes the generator a^2, an ordinary edge ab the
    generator ab.  Generators follow the graph's canonical edge order and
    are automatically minimal (distinct quadratics never divide one
    another).
    """

    def __init__(self, graph):
        self.graph = graph
        self.edge_pairs = graph.edge_list()
        self.generators = [Monomial.from_vertices(pair) for pair in self.edge_pairs]
        self._gens_by_var = {}
        for pair in self.edge_pairs:
            u, v = pair
            self._gens_by_var.setdefault(u, []).append(pair)
            if v != u:
                self._gens_by_var.setdefault(v, []).append(pair)
        self._basis_cache = {}

    @property
    def variables(self):
        return self.graph.vertices

    def generator_for(self, edge):
        u, v = self.graph.canonical_edge(*edge)
        return Monomial.from_vertices((u, v))

    def contains(self, m):
        """Membership by generator divisibility; a loop needs exponent >= 2."""
        exps = dict(m.exps)
        for u, v in self.edge_pairs:
            if u == v:
                if exps.get(u, 0) >= 2:
                    return True
            elif exps.get(u, 0) >= 1 and exps.get(v, 0) >= 1:
                return True
        return False

    def _enters_ideal(self, exps, v, e):
        """Whether bumping variable v to exponent e pushes exps into the ideal.

        Assumes the monomial described by exps is not yet in the ideal and
        that v is the variable being raised (exps does not yet list v at
        exponent e).
        """
        for pair in self._gens_by_var.get(v, ()):
            u, w = pair
            if u == w:
                if e >= 2:
                    return True
            else:
                other = w if u == v else u
                if exps.get(other, 0) >= 1:
                    return True
        return False

    def graded_basis(self, d):
        """All degree-d monomials outside the ideal, in a fixed order.

        The order is lexicographic-descending on exponent vectors over the
        graph's vertex order.  Degree 0 gives [1].
        """
        if d < 0:
            raise ValueError("degree must be nonnegative")
        cached = self._basis_cache.get(d)
        if cached is not None:
            return cached
        verts = self.graph.vertices
        out = []
        n = len(verts)

        def rec(idx, remaining, exps):
            if remaining == 0:
                out.append(Monomial(exps))
                return
            if idx == n:
                return
            v = verts[idx]
            for e in range(remaining, 0, -1):
                if not self._enters_ideal(exps, v, e):
                    exps[v] = e
                    rec(idx + 1, remaining - e, exps)
                    del exps[v]
            rec(idx + 1, remaining, exps)

        rec(0, d, {})
        out = tuple(out)
        self._basis_cache[d] = out
        return out

    def normal_form(self, terms):
        """Drop every monomial in the ideal and combine coefficients exactly."""
        if isinstance(terms, QuotientClass):
            terms = terms.terms
        elif isinstance(terms, dict):
            terms = terms.items()
        combined = {}
        for m, c in terms:
            c = Fraction(c)
            if c == 0 or self.contains(m):
                continue
            combined[m] = combined.get(m, Fraction(0)) + c
        return QuotientClass(combined)

    def multiply(self, qc, m):
        """Normal form of m * qc for a monomial multiplier."""
        return self.normal_form([(t.times(m), c) for t, c in qc.terms])


def squarefree_part(m):
    return m.squarefree_part()


def sqrt_products(factors, cap=DEFAULT_MATERIALIZATION_CAP):
    """Square-free parts of all products picking one vertex per factor.

    An empty factor list yields {1} (the empty product); a nonempty list
    with an empty factor yields the empty set, because no tuple exists.
    The result is deduplicated by support; its size is capped.
    """
    supports = {frozenset()}
    for factor in factors:
        factor = sorted(set(factor))
        if not factor:
            return set()
        new = set()
        for s in supports:
            for x in factor:
                new.add(s | {x})
                if len(new) > cap:
                    raise MaterializationLimitError(
                        f"multiplier set exceeds cap of {cap} elements")
        supports = new
    return {Monomial({v: 1 for v in s}) for s in supports}


def minimal_elements(monomials):
    """Divisibility-minimal subset of a set of monomials."""
    mons = sorted(monomials)
    out = []
    for m in mons:
        if not any(k.divides(m) for k in out):
            out.append(m)
    return set(out)


class ProductWitness:
    """A tuple choice whose product times an extra monomial escapes the ideal."""

    __slots__ = ("choice", "product", "extra")

    def __init__(self, choice, product, extra):
        self.choice = tuple(choice)
        self.product = product
        self.extra = extra

    def __repr__(self):
        return f"ProductWitness(choice={self.choice}, product={self.product}, extra={self.extra})"


def product_times_set_in_ideal(factors, extras, ideal):
    """Check that (every tuple product) * (every extra) lies in the ideal.

    Runs a depth-first search over one-vertex-per-factor choices, pruning a
    subtree as soon as the partial product lies in the ideal (monomial
    ideals are closed under multiplication).  Returns (True, None) or
    (False, witness) with the first failing choice in deterministic order.
    An empty factor list means the product is 1; an empty factor means no
    tuple exists and the containment holds vacuously.
    """
    factors = [sorted(set(f)) for f in factors]
    extras = sorted(extras)
    if any(not f for f in factors):
        return True, None

    chosen = []

    def rec(i, exps):
        if i == len(factors):
            product = Monomial(exps)
            for s in extras:
                if not ideal.contains(product.times(s)):
                    return ProductWitness(chosen, product, s)
            return None
        for x in factors[i]:
            bumped = ideal._enters_ideal(exps, x, exps.get(x, 0) + 1)
            if bumped:
                continue
            exps[x] = exps.get(x, 0) + 1
            chosen.append(x)
            found = rec(i + 1, exps)
            chosen.pop()
            exps[x] -= 1
            if exps[x] == 0:
                del exps[x]
            if found is not None:
                return found
        return None

    witness = rec(0, {})
    if witness is None:
        return True, None
    return False, witness
