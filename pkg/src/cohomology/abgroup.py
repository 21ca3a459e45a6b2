# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Finitely generated abelian groups in invariant-factor form and the
graded (co)homology profiles built from them.
"""
import logging
import math
import re
from collections import defaultdict
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import factorint

from cohomology import intlin
from common import const
from common.errors import ExtensionError, GroupSyntaxError, ProfileError

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Kind = Literal["cohomology", "homology"]

_TERM = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


def invariant_factors(orders: Iterable[int]) -> Tuple[int, ...]:
    """
    Invariant factors d1 | d2 | ... of the direct sum of cyclic groups
    of the given finite orders. Orders of 1 are dropped.
    """
    powers: Dict[int, List[int]] = defaultdict(list)
    for n in orders:
        for prime, e in factorint(abs(int(n))).items():
            powers[prime].append(prime ** e)
    if not powers:
        return ()

    length = max(len(p) for p in powers.values())
    factors = [1] * length
    for prime_powers in powers.values():
        for i, pp in enumerate(sorted(prime_powers, reverse=True)):
            factors[length - 1 - i] *= pp
    return tuple(factors)


class FgAbelian(BaseModel):
    """
    Z^rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
    """
    model_config = ConfigDict(frozen=True)

    rank: int = Field(0, ge=0, description="Free rank")
    torsion: Tuple[int, ...] = Field(
        (), description="Invariant factors, each >= 2, in divisibility order")

    @model_validator(mode="after")
    def _check_canonical(self) -> "FgAbelian":
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
            if i > 0 and d % self.torsion[i - 1] != 0:
                raise ValueError(
                    f"invariant factors {self.torsion} are not a chain")
        return self

    @classmethod
    def of(cls, rank: int = 0, orders: Iterable[int] = ()) -> "FgAbelian":
        """
        Canonical form of Z^rank plus cyclic groups of the given orders,
        where an order of 0 stands for Z and an order of 1 for 0.
        """
        orders = [abs(int(n)) for n in orders]
        rank += sum(1 for n in orders if n == 0)
        return cls(rank=rank,
                   torsion=invariant_factors(n for n in orders if n > 1))

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelian":
        return cls.of(orders=[n])

    @classmethod
    def free(cls, rank: int) -> "FgAbelian":
        return cls(rank=rank)

    @classmethod
    def trivial(cls) -> "FgAbelian":
        return cls()

    def order(self) -> int:
        if self.rank > 0:
            return 0
        return math.prod(self.torsion)

    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_cyclic(self) -> bool:
        return self.rank + len(self.torsion) <= 1

    def torsion_part(self) -> "FgAbelian":
        return FgAbelian(torsion=self.torsion)

    def direct_sum(self, other: "FgAbelian") -> "FgAbelian":
        return FgAbelian.of(self.rank + other.rank,
                            self.torsion + other.torsion)

    def __add__(self, other: "FgAbelian") -> "FgAbelian":
        return self.direct_sum(other)

    def _cyclic_summands(self) -> List[int]:
        return [0] * self.rank + list(self.torsion)

    def tensor(self, other: "FgAbelian") -> "FgAbelian":
        # Z/a (x) Z/b = Z/gcd(a, b) with Z = Z/0
        return FgAbelian.of(orders=[
            math.gcd(a, b)
            for a in self._cyclic_summands()
            for b in other._cyclic_summands()])

    def tor(self, other: "FgAbelian") -> "FgAbelian":
        return FgAbelian.of(orders=[
            math.gcd(a, b)
            for a in self.torsion for b in other.torsion])

    def render(self) -> str:
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms += [f"Z/{d}" for d in self.torsion]
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "FgAbelian":
        """
        Inverse of render. Accepts any sum of Z, Z^r and Z/d terms and
        returns its canonical form.
        """
        text = str(text).strip()
        if text == "0":
            return cls.trivial()
        rank = 0
        orders = []
        for term in text.split("+"):
            match = _TERM.match(term.strip())
            if match is None:
                raise GroupSyntaxError(f"cannot parse group term '{term}'"
                                       f" in '{text}'")
            power, modulus = match.groups()
            if modulus is not None:
                orders.append(int(modulus))
            else:
                rank += int(power) if power is not None else 1
        return cls.of(rank, orders)


def admits_extension(sub: FgAbelian, quot: FgAbelian,
                     middle: FgAbelian) -> bool:
    """
    Whether some extension 0 -> sub -> middle -> quot -> 0 exists.
    Exact for cyclic sub and quot; otherwise only orders and ranks are
    compared.
    """
    if middle.rank != sub.rank + quot.rank:
        return False
    if middle.rank == 0 and middle.order() != sub.order() * quot.order():
        return False
    if not (sub.is_cyclic() and quot.is_cyclic()):
        return True

    m, n = sub.order(), quot.order()
    if m > 0 and n > 0:
        if len(middle.torsion) > 2:
            return False
        if len(middle.torsion) == 2:
            return math.gcd(m, n) % middle.torsion[0] == 0
        return True
    if m == 0 and n > 0:
        # Z by Z/n: Z + Z/k with k | n
        return len(middle.torsion) <= 1 and n % middle.torsion_order() == 0
    if m > 0 and n == 0:
        return middle == FgAbelian.of(1, [m])
    return middle == FgAbelian.free(2)


class ExtensionDatum(BaseModel):
    """
    An extension 0 -> sub -> G -> quot -> 0 whose middle group may be
    unknown.
    """
    model_config = ConfigDict(frozen=True)

    sub: FgAbelian = Field(description="The subgroup")
    quot: FgAbelian = Field(description="The quotient")
    resolved: Optional[FgAbelian] = Field(
        None, description="Middle group, present only when it is forced")

    @model_validator(mode="after")
    def _check_resolution(self) -> "ExtensionDatum":
        if self.resolved is not None and \
                not admits_extension(self.sub, self.quot, self.resolved):
            raise ValueError(
                f"{self.resolved.render()} is not an extension of "
                f"{self.quot.render()} by {self.sub.render()}")
        return self

    @classmethod
    def forced(cls, sub: FgAbelian, quot: FgAbelian) -> "ExtensionDatum":
        """Resolves the extension only when one side is trivial."""
        resolved = None
        if sub.is_trivial():
            resolved = quot
        elif quot.is_trivial():
            resolved = sub
        return cls(sub=sub, quot=quot, resolved=resolved)

    @property
    def is_open(self) -> bool:
        return self.resolved is None

    def placeholder(self) -> FgAbelian:
        if self.resolved is not None:
            return self.resolved
        return self.sub.direct_sum(self.quot)

    def render(self, degree: int) -> str:
        state = "open" if self.is_open else "resolved"
        return (f"0 -> {self.sub.render()} -> H{degree} -> "
                f"{self.quot.render()} -> 0 ({state})")


class ExtensionSlot(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int = Field(ge=0, description="Degree of the extension")
    datum: ExtensionDatum = Field(description="The extension itself")


class GradedGroups(BaseModel):
    """
    Groups H0..Hn of a closed manifold of dimension n, with at most one
    degree described by an extension.
    """
    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=0, description="Manifold dimension")
    kind: Kind = Field(description="cohomology or homology")
    groups: Tuple[FgAbelian, ...] = Field(description="H0 .. Hdim")
    extension_slot: Optional[ExtensionSlot] = Field(
        None, description="Degree whose group is only known up to extension")

    @model_validator(mode="after")
    def _check_groups(self) -> "GradedGroups":
        if len(self.groups) != self.dim + 1:
            raise ValueError(
                f"{len(self.groups)} groups for dimension {self.dim}")
        slot = self.extension_slot
        if slot is not None:
            if slot.degree > self.dim:
                raise ValueError(f"extension degree {slot.degree} > dim")
            if self.groups[slot.degree] != slot.datum.placeholder():
                raise ValueError(
                    f"group in degree {slot.degree} is not the placeholder "
                    f"{slot.datum.placeholder().render()}")
        return self

    def group(self, k: int) -> FgAbelian:
        if 0 <= k <= self.dim:
            return self.groups[k]
        return FgAbelian.trivial()

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.rank for k, g in enumerate(self.groups))

    def manifold_violations(self) -> List[str]:
        violations = []
        top = FgAbelian.free(1)
        if self.groups[0] != top:
            violations.append(f"degree 0 is {self.groups[0].render()}, not Z")
        if self.groups[self.dim] != top:
            violations.append(
                f"degree {self.dim} is {self.groups[self.dim].render()}, "
                f"not Z")
        if self.dim % 2 == 1 and self.euler_characteristic() != 0:
            violations.append(
                f"Euler characteristic {self.euler_characteristic()} "
                f"in odd dimension {self.dim}")
        return violations

    def check_manifold(self):
        violations = self.manifold_violations()
        if violations:
            raise ProfileError(
                f"not a closed orientable manifold profile: "
                f"{'; '.join(violations)}")

    def has_open_extension(self) -> bool:
        return self.extension_slot is not None and \
            self.extension_slot.datum.is_open

    def render_lines(self) -> List[str]:
        lines = []
        slot = self.extension_slot
        for k, g in enumerate(self.groups):
            if slot is not None and slot.degree == k and slot.datum.is_open:
                lines.append(f"H{k}: {slot.datum.render(k)}")
            else:
                lines.append(f"H{k} = {g.render()}")
        return lines

    def to_record(self) -> dict:
        record = {
            "dim": self.dim,
            "kind": self.kind,
            "groups": [g.render() for g in self.groups],
            "extension": None,
        }
        slot = self.extension_slot
        if slot is not None:
            datum = slot.datum
            record["extension"] = {
                "degree": slot.degree,
                "sub": datum.sub.render(),
                "quot": datum.quot.render(),
                "resolved": None if datum.resolved is None
                else datum.resolved.render(),
            }
        return record

    @classmethod
    def from_record(cls, record: dict) -> "GradedGroups":
        slot = None
        extension = record.get("extension")
        if extension:
            resolved = extension.get("resolved")
            slot = ExtensionSlot(
                degree=extension["degree"],
                datum=ExtensionDatum(
                    sub=FgAbelian.parse(extension["sub"]),
                    quot=FgAbelian.parse(extension["quot"]),
                    resolved=None if resolved is None
                    else FgAbelian.parse(resolved)))
        return cls(dim=record["dim"], kind=record["kind"],
                   groups=tuple(FgAbelian.parse(g)
                                for g in record["groups"]),
                   extension_slot=slot)


def from_presentation(relations: Sequence[Sequence[int]],
                      generators: Optional[int] = None) -> FgAbelian:
    """
    Cokernel of a relation matrix: one row per relation, one column per
    generator.

    :param relations: the relations, possibly none
    :param generators: number of generators, required when there are no
        relations
    :return: canonical form of the presented group
    """
    if len(relations) == 0:
        if generators is None:
            raise ValueError("generator count needed for an empty "
                             "presentation")
        return FgAbelian.free(generators)
    matrix = intlin.IntMatrix.of(relations)
    if generators is not None and generators != matrix.ncols:
        raise ValueError(f"relations have {matrix.ncols} columns for "
                         f"{generators} generators")
    snf = intlin.smith_normal_form(matrix)
    rank = matrix.ncols - snf.rank
    return FgAbelian.of(rank, [d for d in snf.diag if d != 0])


def dual_kind(kind: Kind) -> Kind:
    return const.HOMOLOGY if kind == const.COHOMOLOGY else const.COHOMOLOGY


def poincare_dual(profile: GradedGroups) -> GradedGroups:
    """
    Reindex k -> n - k and flip the kind. Applying it twice returns the
    original profile.
    """
    profile.check_manifold()
    n = profile.dim
    slot = None
    if profile.extension_slot is not None:
        slot = ExtensionSlot(degree=n - profile.extension_slot.degree,
                             datum=profile.extension_slot.datum)
    return GradedGroups(dim=n, kind=dual_kind(profile.kind),
                        groups=tuple(reversed(profile.groups)),
                        extension_slot=slot)


def poincare_homology(cohomology: GradedGroups) -> GradedGroups:
    if cohomology.kind != const.COHOMOLOGY:
        raise ProfileError(f"expected a cohomology profile, "
                           f"got {cohomology.kind}")
    return poincare_dual(cohomology)


def kunneth(a: GradedGroups, b: GradedGroups) -> GradedGroups:
    """
    Homology of a product: H_n = sum of H_i (x) H_j over i + j = n plus
    Tor(H_i, H_j) over i + j = n - 1.
    """
    for factor in (a, b):
        if factor.kind != const.HOMOLOGY:
            raise ProfileError("Kunneth needs homology profiles")
        if factor.extension_slot is not None and \
                factor.extension_slot.datum.is_open:
            raise ExtensionError("resolve or propagate extension first")

    dim = a.dim + b.dim
    groups = []
    for n in range(dim + 1):
        total = FgAbelian.trivial()
        for i in range(max(0, n - b.dim), min(n, a.dim) + 1):
            total = total + a.groups[i].tensor(b.groups[n - i])
        for i in range(max(0, n - 1 - b.dim), min(n - 1, a.dim) + 1):
            total = total + a.groups[i].tor(b.groups[n - 1 - i])
        groups.append(total)
    return GradedGroups(dim=dim, kind=const.HOMOLOGY, groups=tuple(groups))


def sphere(n: int) -> GradedGroups:
    groups = [FgAbelian.trivial()] * (n + 1)
    groups[0] = groups[n] = FgAbelian.free(1)
    return GradedGroups(dim=n, kind=const.HOMOLOGY, groups=tuple(groups))


def seven_manifold(h2: FgAbelian, h3: FgAbelian,
                   extension: Optional[ExtensionDatum] = None) \
        -> GradedGroups:
    """
    Homology of a closed simply connected 7-manifold from H2 and H3,
    filled in by Poincare duality and universal coefficients. When an
    extension is given, H3 is its placeholder.
    """
    if extension is not None:
        h3 = extension.placeholder()
    z = FgAbelian.free(1)
    zero = FgAbelian.trivial()
    h4 = FgAbelian.free(h3.rank) + h2.torsion_part()
    h5 = FgAbelian.free(h2.rank)
    slot = None if extension is None \
        else ExtensionSlot(degree=3, datum=extension)
    return GradedGroups(dim=7, kind=const.HOMOLOGY,
                        groups=(z, zero, h2, h3, h4, h5, zero, z),
                        extension_slot=slot)
