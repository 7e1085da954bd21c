"""Cohomological manifold models: Pontryagin numbers, finite ring models with
a fundamental-class functional, the signature genus, and the pushforward that
integrates a class against the total signature class.

Manifolds enter as cohomological data only; builtin examples ship as JSON
documents under data/ together with a provenance note naming the classical
computation that produced their characteristic numbers.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .series import l_polynomials

Partition = Tuple[int, ...]  # parts sorted descending


class ManifoldParseError(ValueError):
    """Schema violation in a manifold document; the message carries the path."""


class ManifoldValidationError(ValueError):
    """Structural invariant violation (grading, commutativity, associativity)."""


_PART_KEY = re.compile(r"^p(\d+)(?:\^(\d+))?$")


def parse_partition_key(key: str) -> Partition:
    """Keys like "p1", "p1^2", "p1*p2" name monomials in Pontryagin classes;
    the partition collects the indices with multiplicity."""
    parts: List[int] = []
    for factor in key.split("*"):
        m = _PART_KEY.match(factor.strip())
        if not m:
            raise ManifoldParseError(f"pontryagin_numbers key {key!r}: bad factor {factor!r}")
        idx = int(m.group(1))
        mult = int(m.group(2) or 1)
        parts.extend([idx] * mult)
    return tuple(sorted(parts, reverse=True))


def partition_key(partition: Partition) -> str:
    counts: Dict[int, int] = {}
    for p in partition:
        counts[p] = counts.get(p, 0) + 1
    bits = []
    for idx in sorted(counts):
        mult = counts[idx]
        bits.append(f"p{idx}" + (f"^{mult}" if mult > 1 else ""))
    return "*".join(bits)


def _coerce_number(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ManifoldParseError(f"{path}: expected a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        return Fraction(value["num"], value["den"])
    raise ManifoldParseError(f"{path}: expected an integer or {{num, den}}")


@dataclass
class PontryaginData:
    """Pontryagin numbers of a closed oriented 4k-manifold."""

    name: str
    dimension: int
    numbers: Dict[Partition, Fraction]
    signature: Fraction

    def __post_init__(self):
        if self.dimension % 4 != 0 or self.dimension < 0:
            raise ManifoldParseError(
                f"{self.name}: dimension must be a nonnegative multiple of 4")
        w = self.weight
        for partition in self.numbers:
            if sum(partition) != w:
                raise ManifoldParseError(
                    f"{self.name}: partition {partition} does not have weight {w}")

    @property
    def weight(self) -> int:
        return self.dimension // 4

    def number(self, partition: Partition) -> Fraction:
        partition = tuple(sorted(partition, reverse=True))
        if partition not in self.numbers:
            warnings.warn(f"{self.name}: missing Pontryagin number {partition_key(partition)}, "
                          "treating as 0")
            return Fraction(0)
        return self.numbers[partition]


def l_genus(M: PontryaginData) -> Fraction:
    """Evaluate the weight-k signature polynomial on the Pontryagin numbers."""
    k = M.weight
    if k == 0:
        # the point: the genus is the pairing of 1 with the fundamental class
        return M.number(())
    poly = l_polynomials(k)[k - 1]
    total = Fraction(0)
    for exps, coeff in poly.coeffs.items():
        partition: List[int] = []
        for i, e in enumerate(exps):
            partition.extend([i + 1] * e)
        total += coeff * M.number(tuple(sorted(partition, reverse=True)))
    return total


def product_manifold(M: PontryaginData, N: PontryaginData) -> PontryaginData:
    """Pontryagin numbers of a product from those of the factors, through the
    Whitney formula p(M x N) = p(M) p(N) and the bidegree splitting of the
    fundamental class."""
    wm, wn = M.weight, N.weight
    w = wm + wn
    numbers: Dict[Partition, Fraction] = {}
    for partition in partitions_of(w):
        total = Fraction(0)
        # split every part p_l = sum_{a+b=l} p_a(M) p_b(N)
        splits_per_part = [[(a, part - a) for a in range(part + 1)] for part in partition]
        for assignment in iter_product(*splits_per_part):
            left = tuple(sorted((a for a, _b in assignment if a), reverse=True))
            right = tuple(sorted((b for _a, b in assignment if b), reverse=True))
            if sum(left) != wm or sum(right) != wn:
                continue
            lval = M.numbers.get(left)
            rval = N.numbers.get(right)
            if lval is None or rval is None:
                lval = M.number(left) if lval is None else lval
                rval = N.number(right) if rval is None else rval
            total += lval * rval
        numbers[partition] = total
    return PontryaginData(
        name=f"{M.name}x{N.name}",
        dimension=M.dimension + N.dimension,
        numbers=numbers,
        signature=M.signature * N.signature,
    )


def partitions_of(w: int) -> List[Partition]:
    if w == 0:
        return [()]
    out: List[Partition] = []

    def rec(remaining: int, cap: int, acc: List[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, cap), 0, -1):
            rec(remaining - part, part, acc + [part])

    rec(w, w, [])
    return out


# ---------------------------------------------------------------------------
# ring models
# ---------------------------------------------------------------------------

Element = Dict[str, Fraction]  # basis name -> coefficient


class CohomologyModel:
    """A finite graded-commutative ring with a top-degree functional and
    distinguished Pontryagin classes.  Validation checks grading of the
    structure constants, graded commutativity, associativity on all basis
    triples, and that the functional is supported in the top degree."""

    def __init__(self, name: str, dimension: int,
                 basis: Sequence[Tuple[str, int]],
                 products: Dict[Tuple[str, str], Element],
                 fundamental: str,
                 pontryagin_classes: Dict[int, Element],
                 signature: Fraction,
                 numbers: Optional[Dict[Partition, Fraction]] = None,
                 provenance: str = ""):
        self.name = name
        self.dimension = dimension
        self.basis = list(basis)
        self.degree = dict(basis)
        self.products = products
        self.fundamental = fundamental
        self.pontryagin_classes = pontryagin_classes
        self.signature = Fraction(signature)
        self.numbers = numbers
        self.provenance = provenance
        self.unit = self._find_unit()
        self.validate()

    def _find_unit(self) -> str:
        units = [n for n, d in self.basis if d == 0]
        if len(units) != 1:
            raise ManifoldParseError(f"{self.name}: need exactly one degree-0 basis element")
        return units[0]

    # -- elements

    def element(self, name: str) -> Element:
        if name not in self.degree:
            raise ManifoldParseError(f"{self.name}: unknown basis element {name!r}")
        return {name: Fraction(1)}

    def one(self) -> Element:
        return self.element(self.unit)

    def zero(self) -> Element:
        return {}

    def add(self, a: Element, b: Element) -> Element:
        out = dict(a)
        for k, v in b.items():
            total = out.get(k, Fraction(0)) + v
            if total:
                out[k] = total
            else:
                out.pop(k, None)
        return out

    def scale(self, a: Element, c: Fraction) -> Element:
        c = Fraction(c)
        return {k: v * c for k, v in a.items() if v * c}

    def _basis_product(self, x: str, y: str) -> Element:
        if x == self.unit:
            return {y: Fraction(1)}
        if y == self.unit:
            return {x: Fraction(1)}
        if (x, y) in self.products:
            return self.products[(x, y)]
        if (y, x) in self.products:
            sign = (-1) ** (self.degree[x] * self.degree[y])
            return self.scale(self.products[(y, x)], Fraction(sign))
        # unspecified products of positive-degree classes vanish (above top degree)
        return {}

    def multiply(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for x, cx in a.items():
            for y, cy in b.items():
                for z, cz in self._basis_product(x, y).items():
                    total = out.get(z, Fraction(0)) + cx * cy * cz
                    if total:
                        out[z] = total
                    else:
                        out.pop(z, None)
        return out

    def power(self, a: Element, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    def integrate(self, a: Element) -> Fraction:
        """Pairing with the fundamental class: the top-degree coefficient."""
        return a.get(self.fundamental, Fraction(0))

    def pontryagin_class(self, k: int) -> Element:
        return dict(self.pontryagin_classes.get(k, {}))

    # -- validation

    def validate(self):
        top = self.degree.get(self.fundamental)
        if top != self.dimension:
            raise ManifoldValidationError(
                f"{self.name}: fundamental element must have degree {self.dimension}")
        for (x, y), result in self.products.items():
            dx, dy = self.degree.get(x), self.degree.get(y)
            if dx is None or dy is None:
                raise ManifoldParseError(f"{self.name}: product of unknown basis {x!r},{y!r}")
            for z, c in result.items():
                if self.degree.get(z) is None:
                    raise ManifoldParseError(f"{self.name}: product target {z!r} unknown")
                if c and self.degree[z] != dx + dy:
                    raise ManifoldValidationError(
                        f"{self.name}: product {x}*{y} lands in wrong degree at {z}")
        names = [n for n, _d in self.basis]
        for x in names:
            for y in names:
                left = self._basis_product(x, y)
                sign = (-1) ** (self.degree[x] * self.degree[y])
                right = self.scale(self._basis_product(y, x), Fraction(sign))
                if left != right:
                    raise ManifoldValidationError(
                        f"{self.name}: graded commutativity fails on ({x}, {y})")
        for x in names:
            for y in names:
                for z in names:
                    lhs = self.multiply(self._basis_product(x, y), {z: Fraction(1)})
                    rhs = self.multiply({x: Fraction(1)}, self._basis_product(y, z))
                    if lhs != rhs:
                        raise ManifoldValidationError(
                            f"{self.name}: associativity fails on ({x}, {y}, {z})")
        for k, cls in self.pontryagin_classes.items():
            for z, c in cls.items():
                if c and self.degree.get(z) != 4 * k:
                    raise ManifoldValidationError(
                        f"{self.name}: p{k} has a component of wrong degree at {z}")

    def pontryagin_data(self) -> PontryaginData:
        """Pontryagin numbers computed inside the ring (or the shipped ones)."""
        w = self.dimension // 4
        numbers: Dict[Partition, Fraction] = {}
        for partition in partitions_of(w):
            cls = self.one()
            for part in partition:
                cls = self.multiply(cls, self.pontryagin_class(part))
            numbers[partition] = self.integrate(cls)
        if self.numbers is not None and self.numbers != numbers:
            raise ManifoldValidationError(
                f"{self.name}: shipped Pontryagin numbers disagree with the ring")
        return PontryaginData(self.name, self.dimension, numbers, self.signature)


def total_l_class(M: CohomologyModel) -> Element:
    """1 + L_1(p(M)) + L_2(p(M)) + ... evaluated in the ring."""
    K = max(1, M.dimension // 4)
    out = M.one()
    for k, poly in enumerate(l_polynomials(K), start=1):
        piece = M.zero()
        for exps, coeff in poly.coeffs.items():
            term = M.one()
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = M.multiply(term, M.pontryagin_class(i + 1))
            piece = M.add(piece, M.scale(term, coeff))
        out = M.add(out, piece)
    return out


def pushforward(s: Element, M: CohomologyModel) -> Fraction:
    """Integration against the signature-class-corrected volume:
    < s . L(TX), [X] >.  On the unit it returns the signature genus."""
    return M.integrate(M.multiply(s, total_l_class(M)))


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

ManifoldLike = Union[PontryaginData, CohomologyModel]


def load_manifold(document: dict) -> ManifoldLike:
    """Validate and build a manifold from its JSON document."""
    if not isinstance(document, dict):
        raise ManifoldParseError("document: expected an object")
    for key in ("name", "dimension", "kind", "signature"):
        if key not in document:
            raise ManifoldParseError(f"document.{key}: missing")
    name = document["name"]
    dimension = document["dimension"]
    if not isinstance(dimension, int):
        raise ManifoldParseError("document.dimension: expected an integer")
    kind = document["kind"]
    signature = _coerce_number(document["signature"], "document.signature")

    numbers: Optional[Dict[Partition, Fraction]] = None
    if "pontryagin_numbers" in document:
        raw = document["pontryagin_numbers"]
        if not isinstance(raw, dict):
            raise ManifoldParseError("document.pontryagin_numbers: expected an object")
        numbers = {}
        for key, value in raw.items():
            numbers[parse_partition_key(key)] = _coerce_number(
                value, f"document.pontryagin_numbers.{key}")

    if kind == "pontryagin_numbers":
        if numbers is None:
            raise ManifoldParseError("document.pontryagin_numbers: missing")
        return PontryaginData(name, dimension, numbers, signature)

    if kind != "cohomology_model":
        raise ManifoldParseError(f"document.kind: unknown kind {kind!r}")

    raw_basis = document.get("basis")
    if not isinstance(raw_basis, list) or not raw_basis:
        raise ManifoldParseError("document.basis: expected a nonempty list")
    basis: List[Tuple[str, int]] = []
    for i, entry in enumerate(raw_basis):
        if not isinstance(entry, dict) or "name" not in entry or "degree" not in entry:
            raise ManifoldParseError(f"document.basis[{i}]: expected {{name, degree}}")
        if not isinstance(entry["degree"], int):
            raise ManifoldParseError(f"document.basis[{i}].degree: expected an integer")
        basis.append((entry["name"], entry["degree"]))

    def parse_element(raw, path: str) -> Element:
        if not isinstance(raw, list):
            raise ManifoldParseError(f"{path}: expected a list of {{basis, coeff}}")
        out: Element = {}
        for i, item in enumerate(raw):
            if not isinstance(item, dict) or "basis" not in item or "coeff" not in item:
                raise ManifoldParseError(f"{path}[{i}]: expected {{basis, coeff}}")
            out[item["basis"]] = _coerce_number(item["coeff"], f"{path}[{i}].coeff")
        return out

    products: Dict[Tuple[str, str], Element] = {}
    for i, entry in enumerate(document.get("products", [])):
        if not isinstance(entry, dict) or not {"left", "right", "result"} <= set(entry):
            raise ManifoldParseError(f"document.products[{i}]: expected {{left, right, result}}")
        products[(entry["left"], entry["right"])] = parse_element(
            entry["result"], f"document.products[{i}].result")

    fundamental = document.get("fundamental")
    if not isinstance(fundamental, str):
        raise ManifoldParseError("document.fundamental: missing or not a string")

    pclasses: Dict[int, Element] = {}
    for key, raw in document.get("pontryagin_classes", {}).items():
        m = _PART_KEY.match(key)
        if not m or m.group(2):
            raise ManifoldParseError(f"document.pontryagin_classes: bad key {key!r}")
        pclasses[int(m.group(1))] = parse_element(raw, f"document.pontryagin_classes.{key}")

    return CohomologyModel(
        name=name, dimension=dimension, basis=basis, products=products,
        fundamental=fundamental, pontryagin_classes=pclasses,
        signature=signature, numbers=numbers,
        provenance=document.get("provenance", ""),
    )


BUILTIN_NAMES = ("cp2", "cp4", "hp2", "k3", "cp2xcp2", "k3xcp2")


def builtin(name: str) -> ManifoldLike:
    if name not in BUILTIN_NAMES:
        raise ManifoldParseError(f"unknown builtin manifold {name!r}; "
                                 f"available: {', '.join(BUILTIN_NAMES)}")
    text = resources.files("supersdet.data").joinpath(f"{name}.json").read_text()
    return load_manifold(json.loads(text))


def load_manifold_file(path: str) -> ManifoldLike:
    with open(path, "r", encoding="utf-8") as fh:
        return load_manifold(json.load(fh))


# ---------------------------------------------------------------------------
# class expressions for the CLI
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^\s*([+-]?[^+]+)")


def parse_class(expr: str, M: CohomologyModel) -> Element:
    """A linear combination of basis powers: terms joined by '+', each a '*'
    product of rational constants and basis names with optional ^k."""
    out = M.zero()
    for raw_term in expr.split("+"):
        term = raw_term.strip()
        if not term:
            raise ManifoldParseError(f"class expression: empty term in {expr!r}")
        coeff = Fraction(1)
        element = M.one()
        for factor in term.split("*"):
            factor = factor.strip()
            m = re.match(r"^([A-Za-z_]\w*)(?:\^(\d+))?$", factor)
            if m and m.group(1) in M.degree:
                element = M.multiply(element, M.power(M.element(m.group(1)),
                                                      int(m.group(2) or 1)))
                continue
            try:
                coeff *= Fraction(factor)
            except ValueError:
                raise ManifoldParseError(
                    f"class expression: {factor!r} is neither a rational nor a basis name")
        out = M.add(out, M.scale(element, coeff))
    return out
