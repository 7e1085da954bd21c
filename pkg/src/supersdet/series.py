"""Exact power-series engine: Bernoulli numbers, even zeta values, the
hyperbolic characteristic series, multiplicative sequences, and the Newton
conversions between power sums and Pontryagin classes.

All arithmetic is over exact rationals.  pi is never evaluated: even zeta
values are carried as rational multiples of explicit pi-powers, and the
combinations entering the regularized determinants collapse to plain
rationals (zeta(2k)/(2 pi i)^{2k} = -B_{2k}/(2 (2k)!)).

Root-variable convention.  The characteristic series of the signature genus
is carried in two equivalent normalizations: `l_series` expands
(x/2)/tanh(x/2), the form matched by the exponential product formulas, while
the L-polynomials are built from the same series with the root doubled,
x/tanh(x), so that evaluation against integral Pontryagin numbers returns
the signature (L_1 = p_1/3 and so on).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple


# ---------------------------------------------------------------------------
# Bernoulli numbers and even zeta values
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (first convention, B_1 = -1/2), via the binomial
    recurrence sum_j C(m+1, j) B_j = 0.  Odd m > 1 returns 0."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(m):
        acc += math.comb(m + 1, j) * bernoulli(j)
    return -acc / (m + 1)


@dataclass(frozen=True)
class PiValue:
    """An exact rational multiple of an integer power of pi."""

    coefficient: Fraction
    pi_power: int

    def __mul__(self, other):
        if isinstance(other, PiValue):
            return PiValue(self.coefficient * other.coefficient,
                           self.pi_power + other.pi_power)
        return PiValue(self.coefficient * Fraction(other), self.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other: "PiValue"):
        return PiValue(self.coefficient / other.coefficient,
                       self.pi_power - other.pi_power)

    def to_float(self) -> float:
        return float(self.coefficient) * math.pi ** self.pi_power

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coefficient)
        return f"{self.coefficient}*pi^{self.pi_power}"


def zeta_even(two_k: int) -> PiValue:
    """zeta(2k) as an exact rational multiple of pi^{2k} (Euler)."""
    if two_k <= 0 or two_k % 2 != 0:
        raise ValueError("argument must be a positive even integer")
    k = two_k // 2
    coeff = Fraction((-1) ** (k + 1)) * bernoulli(two_k) * Fraction(2) ** two_k \
        / (2 * math.factorial(two_k))
    return PiValue(coeff, two_k)


def zeta_over_2pii(two_k: int) -> Fraction:
    """The exactly rational combination zeta(2k)/(2 pi i)^{2k} = -B_{2k}/(2 (2k)!)."""
    if two_k <= 0 or two_k % 2 != 0:
        raise ValueError("argument must be a positive even integer")
    return -bernoulli(two_k) / (2 * math.factorial(two_k))


def lambda_half(two_k: int) -> PiValue:
    """The odd-mode sum sum_{n>=1} (n - 1/2)^{-2k} = (2^{2k} - 1) zeta(2k)."""
    return (Fraction(2) ** two_k - 1) * zeta_even(two_k)


def lambda_over_2pii(two_k: int) -> Fraction:
    """lambda_half(2k)/(2 pi i)^{2k}, exactly rational."""
    return (Fraction(2) ** two_k - 1) * zeta_over_2pii(two_k)


# ---------------------------------------------------------------------------
# truncated univariate series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """A univariate power series over Q, truncated at a fixed order.

    coefficient(k) is the coefficient of x^k for 0 <= k <= order; all
    operations are exact and close over the truncation.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        self.coeffs: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_function(term: Callable[[int], Fraction], order: int) -> "TruncatedSeries":
        return TruncatedSeries([Fraction(term(k)) for k in range(order + 1)])

    def coefficient(self, k: int) -> Fraction:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation {self.order}")
        return self.coeffs[k]

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common(other)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common(other)
        return TruncatedSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs])
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._common(other)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        if self.coeffs[0] == 0:
            raise ValueError("no inverse: zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -acc / self.coeffs[0]
        return TruncatedSeries(out)

    def log(self) -> "TruncatedSeries":
        """Logarithm of a series with constant term 1, via f'/f integration."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        # l'(x) = f'(x)/f(x); integrate term by term
        deriv = [self.coeffs[k] * k for k in range(1, n + 1)]
        inv = self.inverse().coeffs
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(k):
                if i < len(deriv):
                    acc += deriv[i] * inv[k - 1 - i]
            out[k] = acc / k
        return TruncatedSeries(out)

    def exp(self) -> "TruncatedSeries":
        """Exponential of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        # e'(x) = f'(x) e(x)
        deriv = [self.coeffs[k] * k for k in range(1, n + 1)]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(k):
                if i < len(deriv):
                    acc += deriv[i] * out[k - 1 - i]
            out[k] = acc / k
        return TruncatedSeries(out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)) for inner with zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs zero inner constant term")
        n = min(self.order, inner.order)
        acc = TruncatedSeries([Fraction(0)] * (n + 1))
        power = TruncatedSeries([Fraction(1)] + [Fraction(0)] * n)
        for k in range(n + 1):
            if self.coeffs[k]:
                acc = acc + self.coeffs[k] * power
            if k < n:
                power = power * inner
        return acc

    def rescale_root(self, c: Fraction) -> "TruncatedSeries":
        """Substitute x -> c x."""
        c = Fraction(c)
        return TruncatedSeries([self.coeffs[k] * c ** k for k in range(self.order + 1)])

    def is_even(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 2 == 1)

    def __str__(self) -> str:
        bits = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(bits) if bits else "0"


def series_sinh_half(order: int) -> TruncatedSeries:
    """sinh(x/2)/(x/2) as an exact series."""
    def term(k: int) -> Fraction:
        if k % 2 == 1:
            return Fraction(0)
        return Fraction(1, 2 ** k * math.factorial(k + 1))
    return TruncatedSeries.from_function(term, order)


def series_cosh_half(order: int) -> TruncatedSeries:
    """cosh(x/2) as an exact series."""
    def term(k: int) -> Fraction:
        if k % 2 == 1:
            return Fraction(0)
        return Fraction(1, 2 ** k * math.factorial(k))
    return TruncatedSeries.from_function(term, order)


def series_cosh(order: int) -> TruncatedSeries:
    """cosh(x); kept for the exponential-form disambiguation check."""
    def term(k: int) -> Fraction:
        if k % 2 == 1:
            return Fraction(0)
        return Fraction(1, math.factorial(k))
    return TruncatedSeries.from_function(term, order)


def l_series(order: int) -> TruncatedSeries:
    """(x/2)/tanh(x/2) = cosh(x/2) / (sinh(x/2)/(x/2)), starting 1 + x^2/12 - x^4/720."""
    return series_cosh_half(order) * series_sinh_half(order).inverse()


def l_series_doubled_root(order: int) -> TruncatedSeries:
    """x/tanh(x): the same genus with the root variable doubled; this is the
    normalization under which evaluation on Pontryagin numbers gives the
    signature."""
    return l_series(order).rescale_root(Fraction(2))


@dataclass
class ExponentialFormsReport:
    """Outcome of checking the exponential product identities to a given order."""

    order: int
    sinh_ok: bool
    sinh_first_mismatch: Optional[int]
    cosh_half_ok: bool
    cosh_half_first_mismatch: Optional[int]
    cosh_full_first_mismatch: Optional[int]

    @property
    def passed(self) -> bool:
        return self.sinh_ok and self.cosh_half_ok


def _first_mismatch(a: TruncatedSeries, b: TruncatedSeries) -> Optional[int]:
    for k in range(min(a.order, b.order) + 1):
        if a.coefficient(k) != b.coefficient(k):
            return k
    return None


def verify_exponential_forms(order: int) -> ExponentialFormsReport:
    """Check, to the given order, that

        sinh(x/2)/(x/2) = exp(-sum_k x^{2k} * 2 zeta(2k) / (2k (2 pi i)^{2k}))
        cosh(x/2)       = exp(-sum_k x^{2k} * 2 lambda(2k) / (2k (2 pi i)^{2k}))

    where lambda(2k) is the half-integer mode sum, and additionally record
    where the cosh(x) candidate fails (it does, at x^2): the identity holds
    for the half-argument reading only.
    """
    def exponent(weights: Callable[[int], Fraction]) -> TruncatedSeries:
        coeffs = [Fraction(0)] * (order + 1)
        for two_k in range(2, order + 1, 2):
            coeffs[two_k] = -Fraction(2, two_k) * weights(two_k)
        return TruncatedSeries(coeffs)

    sinh_candidate = exponent(zeta_over_2pii).exp()
    cosh_candidate = exponent(lambda_over_2pii).exp()

    sinh_target = series_sinh_half(order)
    cosh_half_target = series_cosh_half(order)
    cosh_full_target = series_cosh(order)

    m_sinh = _first_mismatch(sinh_candidate, sinh_target)
    m_cosh_half = _first_mismatch(cosh_candidate, cosh_half_target)
    m_cosh_full = _first_mismatch(cosh_candidate, cosh_full_target)

    return ExponentialFormsReport(
        order=order,
        sinh_ok=m_sinh is None,
        sinh_first_mismatch=m_sinh,
        cosh_half_ok=m_cosh_half is None,
        cosh_half_first_mismatch=m_cosh_half,
        cosh_full_first_mismatch=m_cosh_full,
    )


# ---------------------------------------------------------------------------
# graded polynomials in Pontryagin-type generators
# ---------------------------------------------------------------------------

class GradedPolynomial:
    """A polynomial in graded generators g_1..g_K, generator g_i of weight i
    (cohomological degree 4i), truncated above total weight K.

    The basis label records which generators the exponent vectors refer to:
    "p" for Pontryagin classes, "ph" for Pontryagin-character components,
    "s" for power sums.  Conversions between bases are explicit maps.
    """

    __slots__ = ("nvars", "basis", "coeffs")

    def __init__(self, nvars: int, basis: str,
                 coeffs: Optional[Dict[Tuple[int, ...], Fraction]] = None):
        self.nvars = nvars
        self.basis = basis
        clean: Dict[Tuple[int, ...], Fraction] = {}
        if coeffs:
            for exps, c in coeffs.items():
                if len(exps) != nvars:
                    raise ValueError("exponent vector length mismatch")
                c = Fraction(c)
                if c and self.weight_of(exps) <= nvars:
                    clean[tuple(exps)] = c
        self.coeffs = clean

    @staticmethod
    def weight_of(exps: Tuple[int, ...]) -> int:
        return sum((i + 1) * e for i, e in enumerate(exps))

    @staticmethod
    def zero(nvars: int, basis: str) -> "GradedPolynomial":
        return GradedPolynomial(nvars, basis)

    @staticmethod
    def one(nvars: int, basis: str) -> "GradedPolynomial":
        return GradedPolynomial(nvars, basis, {tuple([0] * nvars): Fraction(1)})

    @staticmethod
    def generator(i: int, nvars: int, basis: str) -> "GradedPolynomial":
        if not 1 <= i <= nvars:
            raise ValueError(f"generator index {i} out of range")
        exps = [0] * nvars
        exps[i - 1] = 1
        return GradedPolynomial(nvars, basis, {tuple(exps): Fraction(1)})

    def _check(self, other: "GradedPolynomial"):
        if self.nvars != other.nvars or self.basis != other.basis:
            raise ValueError("mixed graded-polynomial contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other) * GradedPolynomial.one(self.nvars, self.basis)
        self._check(other)
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            total = out.get(exps, Fraction(0)) + c
            if total:
                out[exps] = total
            else:
                out.pop(exps, None)
        return GradedPolynomial(self.nvars, self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.nvars, self.basis,
                                {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other) * GradedPolynomial.one(self.nvars, self.basis)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial(self.nvars, self.basis,
                                    {e: c * other for e, c in self.coeffs.items()})
        self._check(other)
        out: Dict[Tuple[int, ...], Fraction] = {}
        for ea, ca in self.coeffs.items():
            wa = self.weight_of(ea)
            for eb, cb in other.coeffs.items():
                if wa + self.weight_of(eb) > self.nvars:
                    continue
                key = tuple(x + y for x, y in zip(ea, eb))
                total = out.get(key, Fraction(0)) + ca * cb
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return GradedPolynomial(self.nvars, self.basis, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPolynomial):
            return (self.nvars == other.nvars and self.basis == other.basis
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    def weight_component(self, w: int) -> "GradedPolynomial":
        return GradedPolynomial(self.nvars, self.basis,
                                {e: c for e, c in self.coeffs.items()
                                 if self.weight_of(e) == w})

    def constant_term(self) -> Fraction:
        return self.coeffs.get(tuple([0] * self.nvars), Fraction(0))

    def exp(self) -> "GradedPolynomial":
        """Exponential of a polynomial with zero constant term; the grading
        truncation makes the series finite."""
        if self.constant_term() != 0:
            raise ValueError("exp needs zero constant term")
        acc = GradedPolynomial.one(self.nvars, self.basis)
        power = GradedPolynomial.one(self.nvars, self.basis)
        fact = 1
        for j in range(1, self.nvars + 1):
            power = power * self
            if power.is_zero():
                break
            fact *= j
            acc = acc + power * Fraction(1, fact)
        return acc

    def substitute(self, images: Sequence["GradedPolynomial"],
                   basis: Optional[str] = None) -> "GradedPolynomial":
        """Replace generator g_i by images[i-1]; images share one context."""
        if len(images) != self.nvars:
            raise ValueError("need one image per generator")
        target_basis = basis or images[0].basis
        nvars = images[0].nvars
        out = GradedPolynomial.zero(nvars, target_basis)
        for exps, c in self.coeffs.items():
            term = Fraction(c) * GradedPolynomial.one(nvars, target_basis)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def evaluate(self, values: Sequence) -> object:
        """Evaluate at given generator values (anything with ring operations,
        e.g. Fractions or even Grassmann elements)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per generator")
        total = None
        for exps, c in self.coeffs.items():
            term = c
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * values[i]
            total = term if total is None else total + term
        return total if total is not None else Fraction(0)

    def to_json(self) -> List[dict]:
        out = []
        for exps in sorted(self.coeffs):
            c = self.coeffs[exps]
            out.append({"monomial": list(exps),
                        "num": c.numerator, "den": c.denominator})
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for exps in sorted(self.coeffs):
            c = self.coeffs[exps]
            mono = "*".join(f"{self.basis}{i + 1}" + (f"^{e}" if e > 1 else "")
                            for i, e in enumerate(exps) if e)
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Newton identities: power sums <-> elementary symmetric functions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def power_sum_in_elementary(k: int, nvars: int) -> GradedPolynomial:
    """The k-th power sum written in the elementary symmetric generators
    (basis "p"), via s_k = sum_{i<k} (-1)^{i-1} p_i s_{k-i} + (-1)^{k-1} k p_k."""
    if k < 1 or k > nvars:
        raise ValueError("k out of range")
    acc = Fraction((-1) ** (k - 1) * k) * GradedPolynomial.generator(k, nvars, "p")
    for i in range(1, k):
        term = GradedPolynomial.generator(i, nvars, "p") * power_sum_in_elementary(k - i, nvars)
        acc = acc + Fraction((-1) ** (i - 1)) * term
    return acc


@lru_cache(maxsize=None)
def elementary_in_power_sums(k: int, nvars: int) -> GradedPolynomial:
    """The k-th elementary symmetric function in the power-sum basis "s",
    via k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i."""
    if k < 1 or k > nvars:
        raise ValueError("k out of range")
    acc = GradedPolynomial.zero(nvars, "s")
    for i in range(1, k + 1):
        if i == k:
            prev = GradedPolynomial.one(nvars, "s")
        else:
            prev = elementary_in_power_sums(k - i, nvars)
        acc = acc + Fraction((-1) ** (i - 1)) * prev * GradedPolynomial.generator(i, nvars, "s")
    return Fraction(1, k) * acc


def pontryagin_to_powersums(K: int) -> Callable[[GradedPolynomial], GradedPolynomial]:
    """Map a p-basis polynomial to the ph-basis, substituting each p_i by its
    Newton expression in the scaled power sums s_k = (2k)! ph_k."""
    images = []
    for i in range(1, K + 1):
        e_in_s = elementary_in_power_sums(i, K)
        ph_images = [Fraction(math.factorial(2 * k)) * GradedPolynomial.generator(k, K, "ph")
                     for k in range(1, K + 1)]
        images.append(e_in_s.substitute(ph_images, basis="ph"))

    def convert(poly: GradedPolynomial) -> GradedPolynomial:
        if poly.basis != "p":
            raise ValueError("expected a p-basis polynomial")
        return poly.substitute(images, basis="ph")

    return convert


def powersums_to_pontryagin(K: int) -> Callable[[GradedPolynomial], GradedPolynomial]:
    """Map a ph-basis polynomial to the p-basis via ph_k = s_k/(2k)! and the
    Newton expression of s_k in elementary symmetric functions."""
    images = [Fraction(1, math.factorial(2 * k)) * power_sum_in_elementary(k, K)
              for k in range(1, K + 1)]

    def convert(poly: GradedPolynomial) -> GradedPolynomial:
        if poly.basis != "ph":
            raise ValueError("expected a ph-basis polynomial")
        return poly.substitute(images, basis="p")

    return convert


# ---------------------------------------------------------------------------
# multiplicative sequences
# ---------------------------------------------------------------------------

def multiplicative_sequence(Q: TruncatedSeries, K: int) -> List[GradedPolynomial]:
    """The Hirzebruch polynomials of an even unit series Q: write
    prod_j Q(x_j) in the elementary symmetric functions p_i of the x_j^2 and
    return the weight-1..K graded pieces.

    Implemented through log/exp and the Newton identities: log prod Q(x_j)
    = sum_k c_k s_k with c_k the x^{2k}-coefficient of log Q.
    """
    if Q.coefficient(0) != 1:
        raise ValueError("characteristic series must have constant term 1")
    if not Q.is_even():
        raise ValueError("characteristic series must be even")
    if Q.order < 2 * K:
        raise ValueError(f"series order {Q.order} too small for K={K}")
    logQ = Q.log()
    total_log = GradedPolynomial.zero(K, "p")
    for k in range(1, K + 1):
        c = logQ.coefficient(2 * k)
        if c:
            total_log = total_log + c * power_sum_in_elementary(k, K)
    total = total_log.exp()
    return [total.weight_component(k) for k in range(1, K + 1)]


def l_polynomials(K: int) -> List[GradedPolynomial]:
    """The signature-genus polynomials L_1..L_K in the Pontryagin classes,
    starting p1/3, (7 p2 - p1^2)/45, (62 p3 - 13 p1 p2 + 2 p1^3)/945."""
    return multiplicative_sequence(l_series_doubled_root(2 * K), K)


def l_class_total(K: int) -> GradedPolynomial:
    """1 + L_1 + ... + L_K in the p-basis."""
    total = GradedPolynomial.one(K, "p")
    for piece in l_polynomials(K):
        total = total + piece
    return total


def l_class_in_ph(K: int) -> GradedPolynomial:
    """The total signature class rewritten in Pontryagin-character variables
    through the Newton conversion; used as the comparison target for the
    superdeterminant."""
    return pontryagin_to_powersums(K)(l_class_total(K))
