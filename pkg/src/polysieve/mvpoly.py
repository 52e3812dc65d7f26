"""Exact sparse multivariate integer polynomials.

A polynomial in x1..xL is a map from exponent vectors (length-L tuples of
non-negative ints) to nonzero integer coefficients.  All arithmetic is exact
(Python ints), so box evaluations of size Q^k times large coefficients never
overflow.  Instances are immutable after construction and safe to share
across worker processes.
"""

from __future__ import annotations

import json
import re

Exponents = tuple[int, ...]


class MvPoly:
    """Sparse integer polynomial in a fixed number of variables.

    Terms are canonicalized on construction: zero coefficients are dropped
    and exponent vectors are validated against ``num_vars``.
    """

    __slots__ = ("num_vars", "terms", "_key")

    def __init__(self, num_vars: int, terms: dict[Exponents, int]):
        if num_vars < 1:
            raise ValueError(f"num_vars must be >= 1, got {num_vars}")
        clean: dict[Exponents, int] = {}
        for exps, coef in terms.items():
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ValueError(
                    f"exponent vector {exps} has {len(exps)} components, expected {num_vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coef = int(coef)
            if coef != 0:
                clean[exps] = coef
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)
        # canonical graded-lex key, leading term first; also the hash basis
        key = tuple(sorted(clean.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))))
        object.__setattr__(self, "_key", key)

    def __setattr__(self, name, value):
        raise AttributeError("MvPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, num_vars: int, value: int) -> "MvPoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MvPoly":
        """The monomial x_index (1-based index)."""
        if not 1 <= index <= num_vars:
            raise ValueError(f"variable index {index} out of range 1..{num_vars}")
        exps = [0] * num_vars
        exps[index - 1] = 1
        return cls(num_vars, {tuple(exps): 1})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum component-sum over stored terms; error on the zero polynomial."""
        if not self.terms:
            raise ValueError("total degree of the zero polynomial is undefined")
        return max(sum(e) for e in self.terms)

    def min_top_coeff(self) -> int:
        """Minimum of |coefficient| over terms of maximal total degree."""
        k = self.total_degree()
        return min(abs(c) for e, c in self.terms.items() if sum(e) == k)

    def used_variables(self) -> frozenset[int]:
        """1-based indices of variables appearing with positive exponent."""
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i + 1)
        return frozenset(used)

    def evaluate(self, x) -> int:
        """Exact value at an integer point; length must equal num_vars."""
        x = tuple(x)
        if len(x) != self.num_vars:
            raise ValueError(f"point has {len(x)} coordinates, expected {self.num_vars}")
        total = 0
        for exps, coef in self.terms.items():
            v = coef
            for xi, ei in zip(x, exps):
                if ei:
                    v *= xi ** ei
            total += v
        return total

    def coefficient_abs_sum(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    # -- arithmetic --------------------------------------------------------

    def embed(self, num_vars: int) -> "MvPoly":
        """Re-express over a larger variable list (pad exponent vectors)."""
        if num_vars < self.num_vars:
            raise ValueError("cannot embed into fewer variables")
        if num_vars == self.num_vars:
            return self
        pad = (0,) * (num_vars - self.num_vars)
        return MvPoly(num_vars, {e + pad: c for e, c in self.terms.items()})

    def __add__(self, other: "MvPoly") -> "MvPoly":
        self._check_compat(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MvPoly(self.num_vars, terms)

    def __neg__(self) -> "MvPoly":
        return MvPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MvPoly") -> "MvPoly":
        return self + (-other)

    def __mul__(self, other) -> "MvPoly":
        if isinstance(other, int):
            return MvPoly(self.num_vars, {e: c * other for e, c in self.terms.items()})
        self._check_compat(other)
        terms: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MvPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def _check_compat(self, other):
        if not isinstance(other, MvPoly):
            raise TypeError(f"expected MvPoly, got {type(other).__name__}")
        if other.num_vars != self.num_vars:
            raise ValueError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}; embed first")

    def __eq__(self, other):
        return (isinstance(other, MvPoly) and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self._key))

    def __reduce__(self):
        return (MvPoly, (self.num_vars, self.terms))

    # -- serialization -----------------------------------------------------

    def to_text(self, var_prefix: str = "x") -> str:
        """Render in the input grammar, graded-lex leading term first."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in self._key:
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"{var_prefix}{i + 1}")
                elif e > 1:
                    factors.append(f"{var_prefix}{i + 1}^{e}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts)

    def to_json_dict(self) -> dict:
        """Canonical JSON form: coefficients as decimal strings, graded-lex order."""
        return {
            "num_vars": self.num_vars,
            "terms": [{"exps": list(e), "coef": str(c)} for e, c in self._key],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MvPoly":
        return cls(d["num_vars"], {tuple(t["exps"]): int(t["coef"]) for t in d["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def __repr__(self):
        return f"MvPoly({self.num_vars}, {self.to_text()!r})"


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_NUM_RE = re.compile(r"\d+")
_FACTOR_VAR_RE = re.compile(r"([A-Za-z]+)(\d*)(?:\^(\d+))?")


def parse_poly(text: str, num_vars: int | None = None, var_prefix: str = "x") -> MvPoly:
    """Parse polynomial text like ``3*x1^2*x2 - x3^3 + 7``.

    Whitespace-insensitive; variables are x1..xL (1-based).  A bare variable
    letter (``t`` for univariate inputs) is accepted as index 1.  If
    ``num_vars`` is omitted it is inferred as the largest index seen.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial text")
    raw_terms: list[tuple[int, dict[int, int]]] = []
    pos = 0
    max_index = 1
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = m.end()
        chunk = m.group()
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coef = sign
        powers: dict[int, int] = {}
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {m.group()!r}")
            if _FACTOR_NUM_RE.fullmatch(factor):
                coef *= int(factor)
                continue
            fm = _FACTOR_VAR_RE.fullmatch(factor)
            if not fm:
                raise ValueError(f"cannot parse factor {factor!r}")
            name, digits, expo = fm.groups()
            if name != var_prefix and not (name.isalpha() and not digits):
                raise ValueError(f"unknown variable {factor!r} (expected {var_prefix}<i>)")
            index = int(digits) if digits else 1
            if index < 1:
                raise ValueError(f"variable index must be >= 1 in {factor!r}")
            powers[index] = powers.get(index, 0) + (int(expo) if expo else 1)
            max_index = max(max_index, index)
        raw_terms.append((coef, powers))
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    if num_vars is None:
        num_vars = max_index
    elif max_index > num_vars:
        raise ValueError(f"variable index {max_index} exceeds num_vars={num_vars}")
    terms: dict[Exponents, int] = {}
    for coef, powers in raw_terms:
        exps = tuple(powers.get(i, 0) for i in range(1, num_vars + 1))
        terms[exps] = terms.get(exps, 0) + coef
    return MvPoly(num_vars, terms)


class FactoredPoly:
    """A polynomial given as a product of factors on disjoint variable sets.

    Factors are embedded over the union variable list so every factor can be
    evaluated on a full coordinate tuple.  Disjointness and nonconstancy are
    enforced; irreducibility of the factors is a user assertion and is not
    verified.
    """

    __slots__ = ("num_vars", "factors", "variable_sets", "product")

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise ValueError("need at least one factor")
        num_vars = max(f.num_vars for f in factors)
        factors = [f.embed(num_vars) for f in factors]
        var_sets = []
        for i, f in enumerate(factors):
            if f.is_zero() or f.total_degree() < 1:
                raise ValueError(f"factor {i + 1} is constant")
            var_sets.append(f.used_variables())
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                overlap = var_sets[i] & var_sets[j]
                if overlap:
                    raise ValueError(
                        f"factors {i + 1} and {j + 1} share variables {sorted(overlap)}")
        product = factors[0]
        for f in factors[1:]:
            product = product * f
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "variable_sets", tuple(var_sets))
        object.__setattr__(self, "product", product)

    def __setattr__(self, name, value):
        raise AttributeError("FactoredPoly is immutable")

    def __reduce__(self):
        return (FactoredPoly, (list(self.factors),))

    def __len__(self):
        return len(self.factors)

    def divisor_products(self) -> list[MvPoly]:
        """Products over the 2^m - 1 nonempty subsets of factors.

        These are exactly the nonconstant monic-subset divisors used when a
        squarefree product of prime factor values is split into divisors.
        Order: subsets by increasing bitmask (factor 1 = lowest bit).
        """
        out = []
        m = len(self.factors)
        for mask in range(1, 1 << m):
            p = None
            for i in range(m):
                if mask >> i & 1:
                    p = self.factors[i] if p is None else p * self.factors[i]
            out.append(p)
        return out

    def divisor_subsets(self):
        """(indices, product) pairs matching divisor_products order."""
        m = len(self.factors)
        products = self.divisor_products()
        subsets = []
        for mask in range(1, 1 << m):
            subsets.append(tuple(i + 1 for i in range(m) if mask >> i & 1))
        return list(zip(subsets, products))

    def evaluate_factors(self, x) -> list[int]:
        return [f.evaluate(x) for f in self.factors]

    def __repr__(self):
        inner = ", ".join(f.to_text() for f in self.factors)
        return f"FactoredPoly([{inner}])"
