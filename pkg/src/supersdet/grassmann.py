"""Finite Grassmann algebras over Q(i) tensored with commuting indeterminates.

An element is a finite sum of terms

    coefficient * (ordered product of odd generators) * (monomial in even variables)

with coefficients in Q(i).  Odd generators anticommute and square to zero;
they are kept as tuples sorted in the global name order, with the sign of the
sorting permutation absorbed into the coefficient.  Even variables commute
with everything and may carry negative exponents (used for the invertible
radius symbol ``r``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .gaussian import GaussianRational, ScalarLike

OddMono = Tuple[str, ...]
EvenMono = Tuple[Tuple[str, int], ...]
TermKey = Tuple[OddMono, EvenMono]

Coercible = Union[int, Fraction, GaussianRational, "GrassmannElement"]

_EMPTY: EvenMono = ()


def _merge_odd(a: OddMono, b: OddMono) -> Optional[Tuple[OddMono, int]]:
    """Sorted merge of two odd monomials; returns (merged, sign) or None if a
    generator repeats (the product is then zero)."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i odd factors of a
            if (len(a) - i) % 2 == 1:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


def _mul_even(a: EvenMono, b: EvenMono) -> EvenMono:
    if not a:
        return b
    if not b:
        return a
    exps: Dict[str, int] = dict(a)
    for name, e in b:
        e2 = exps.get(name, 0) + e
        if e2 == 0:
            exps.pop(name, None)
        else:
            exps[name] = e2
    return tuple(sorted(exps.items()))


class GrassmannElement:
    """Immutable element of the ambient Grassmann-with-even-variables algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[TermKey, GaussianRational]] = None):
        clean: Dict[TermKey, GaussianRational] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    clean[key] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def scalar(value: ScalarLike) -> "GrassmannElement":
        c = GaussianRational.coerce(value)
        if not c:
            return GrassmannElement()
        return GrassmannElement({((), _EMPTY): c})

    @staticmethod
    def odd(name: str) -> "GrassmannElement":
        return GrassmannElement({((name,), _EMPTY): GaussianRational(1)})

    @staticmethod
    def even(name: str, exponent: int = 1) -> "GrassmannElement":
        if exponent == 0:
            return GrassmannElement.scalar(1)
        return GrassmannElement({((), ((name, exponent),)): GaussianRational(1)})

    @staticmethod
    def coerce(value: Coercible) -> "GrassmannElement":
        if isinstance(value, GrassmannElement):
            return value
        return GrassmannElement.scalar(value)

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: Coercible) -> "GrassmannElement":
        other = GrassmannElement.coerce(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            total = out.get(key, None)
            total = coeff if total is None else total + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return GrassmannElement(out)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Coercible) -> "GrassmannElement":
        return self + (-GrassmannElement.coerce(other))

    def __rsub__(self, other: Coercible) -> "GrassmannElement":
        return GrassmannElement.coerce(other) - self

    def __mul__(self, other: Coercible) -> "GrassmannElement":
        other = GrassmannElement.coerce(other)
        out: Dict[TermKey, GaussianRational] = {}
        for (odd_a, even_a), ca in self.terms.items():
            for (odd_b, even_b), cb in other.terms.items():
                merged = _merge_odd(odd_a, odd_b)
                if merged is None:
                    continue
                odd_ab, sign = merged
                key = (odd_ab, _mul_even(even_a, even_b))
                coeff = ca * cb
                if sign < 0:
                    coeff = -coeff
                total = out.get(key, None)
                total = coeff if total is None else total + coeff
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return GrassmannElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GrassmannElement":
        if n < 0:
            raise ValueError("negative powers: use invert helpers")
        out = GrassmannElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational, GrassmannElement)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> Optional[int]:
        """0 for even, 1 for odd, None for mixed or zero-ambiguous elements.

        Parity counts odd generators only; even variables never contribute.
        """
        if not self.terms:
            return 0
        parities = {len(odd) % 2 for (odd, _even) in self.terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    def scalar_part(self) -> GaussianRational:
        return self.terms.get(((), _EMPTY), GaussianRational(0))

    def body(self) -> "GrassmannElement":
        """The part with no odd generators (the 'numerical' shadow)."""
        return GrassmannElement(
            {k: c for k, c in self.terms.items() if not k[0]}
        )

    def soul(self) -> "GrassmannElement":
        """The part carrying at least one odd generator (nilpotent)."""
        return GrassmannElement({k: c for k, c in self.terms.items() if k[0]})

    def odd_generators(self) -> set:
        names = set()
        for odd, _even in self.terms:
            names.update(odd)
        return names

    def even_variables(self) -> set:
        names = set()
        for _odd, even in self.terms:
            names.update(name for name, _ in even)
        return names

    # -- calculus ------------------------------------------------------------

    def derivative_odd(self, name: str) -> "GrassmannElement":
        """Left derivative with respect to an odd generator (odd derivation)."""
        out: Dict[TermKey, GaussianRational] = {}
        for (odd, even), coeff in self.terms.items():
            if name not in odd:
                continue
            pos = odd.index(name)
            rest = odd[:pos] + odd[pos + 1:]
            c = coeff if pos % 2 == 0 else -coeff
            key = (rest, even)
            total = out.get(key, None)
            total = c if total is None else total + c
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return GrassmannElement(out)

    def derive_even(self, images: Mapping[str, "GrassmannElement"]) -> "GrassmannElement":
        """Apply the even derivation sending each named generator/variable to
        its image, extended by the (sign-free) Leibniz rule.

        Keys may be even variable names or odd generator names; generators
        without an image are treated as constants.
        """
        acc = GrassmannElement()
        for (odd, even), coeff in self.terms.items():
            # even-variable slots
            for idx, (name, exp) in enumerate(even):
                image = images.get(name)
                if image is None:
                    continue
                lowered = even[:idx] + ((name, exp - 1),) + even[idx + 1:]
                lowered = tuple((n, e) for n, e in lowered if e != 0)
                piece = GrassmannElement({(odd, tuple(sorted(lowered))): coeff * exp})
                acc = acc + piece * image
            # odd-generator slots: replace in place, multiplication restores order
            for pos, gname in enumerate(odd):
                image = images.get(gname)
                if image is None:
                    continue
                left = GrassmannElement({(odd[:pos], even): coeff})
                right = GrassmannElement({(odd[pos + 1:], _EMPTY): GaussianRational(1)})
                acc = acc + left * image * right
        return acc

    def substitute_odd(self, name: str, value: "GrassmannElement") -> "GrassmannElement":
        """Replace an odd generator by an odd element (or zero)."""
        vp = value.parity()
        if not value.is_zero() and vp != 1:
            raise ValueError(f"substitution for odd generator {name!r} must be odd")
        acc = GrassmannElement()
        for (odd, even), coeff in self.terms.items():
            if name not in odd:
                acc = acc + GrassmannElement({(odd, even): coeff})
                continue
            pos = odd.index(name)
            rest = odd[:pos] + odd[pos + 1:]
            c = coeff if pos % 2 == 0 else -coeff
            # moved the generator to the front, now substitute
            acc = acc + c * value * GrassmannElement({(rest, even): GaussianRational(1)})
        return acc

    def coefficient_of_odd_pair(self, first: str, second: str) -> "GrassmannElement":
        """Coefficient g in f = ... + g*(first*second): the term is rewritten
        with the ordered pair moved to the right end (adjacent transpositions,
        one sign each) and the pair stripped.  Terms missing either generator
        contribute nothing; remaining odd factors stay in g."""
        out = GrassmannElement()
        for (odd, even), coeff in self.terms.items():
            if first not in odd or second not in odd:
                continue
            order = list(odd)
            sign = 1
            # bubble `second` to the very end, then `first` next to it
            pos = order.index(second)
            while pos < len(order) - 1:
                order[pos], order[pos + 1] = order[pos + 1], order[pos]
                sign = -sign
                pos += 1
            pos = order.index(first)
            while pos < len(order) - 2:
                order[pos], order[pos + 1] = order[pos + 1], order[pos]
                sign = -sign
                pos += 1
            rest = tuple(order[:-2])
            out = out + GrassmannElement({(rest, even): coeff * sign})
        return out

    # -- inverses -------------------------------------------------------------

    def invert_unit(self) -> "GrassmannElement":
        """Inverse of c*m*(1 + n) with c a nonzero scalar, m an even monomial
        and n nilpotent.  Covers every inverse this package needs (r-powers
        and 1 + soul)."""
        body_terms = [(k, c) for k, c in self.terms.items() if not k[0]]
        # locate the invertible even monomial: the unique body term whose
        # even variables are all "unit-like" is not decidable in general, so
        # require a single body term
        if len(body_terms) != 1:
            raise ValueError("invert_unit needs a single body monomial")
        (odd0, even0), c0 = body_terms[0]
        lead_inv = GrassmannElement(
            {((), tuple((n, -e) for n, e in even0)): GaussianRational(1) / c0}
        )
        rest = (self * lead_inv) - 1
        if rest.is_zero():
            return lead_inv
        # rest is nilpotent: geometric series terminates
        acc = GrassmannElement.scalar(1)
        power = GrassmannElement.scalar(1)
        k = 1
        while True:
            power = power * rest
            if power.is_zero():
                break
            acc = acc + (power if k % 2 == 0 else -power)
            k += 1
            if k > 64:
                raise ValueError("element does not look invertible (non-nilpotent tail)")
        return lead_inv * acc

    # -- rendering -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (odd, even) in sorted(self.terms):
            coeff = self.terms[(odd, even)]
            factors = [f"({coeff!r})"]
            factors.extend(odd)
            factors.extend(
                name if e == 1 else f"{name}^{e}" for name, e in even
            )
            chunks.append("*".join(factors))
        return " + ".join(chunks)

    __repr__ = __str__


def scalar(value: ScalarLike) -> GrassmannElement:
    return GrassmannElement.scalar(value)


def odd(name: str) -> GrassmannElement:
    return GrassmannElement.odd(name)


def even(name: str, exponent: int = 1) -> GrassmannElement:
    return GrassmannElement.even(name, exponent)


def odd_product(names: Iterable[str]) -> GrassmannElement:
    out = GrassmannElement.scalar(1)
    for n in names:
        out = out * GrassmannElement.odd(n)
    return out
