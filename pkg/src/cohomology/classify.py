# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Matches a computed profile against the shapes allowed for compact
simply connected cohomogeneity one manifolds of dimension <= 7.

Type 1 has H2 = 0 and H3 = Z/gamma. Type 2 has H2 = Z + Z/alpha with
alpha in {0, 1, 2} (Z/0 = Z) and 0 -> Z/beta -> H3 -> Z/gamma -> 0.
Every other case must have the homology of a symmetric space.
"""
import logging
import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from cohomology import abgroup, catalog
from cohomology.abgroup import FgAbelian, GradedGroups
from cohomology.catalog import SpaceAtom
from common import const

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

TYPE_1 = "type-1"
TYPE_2 = "type-2"
SYMMETRIC = "symmetric-profile"
UNCLASSIFIED = "unclassified"

# H2 shape -> alpha
_TYPE_2_H2 = {
    FgAbelian.free(2): 0,
    FgAbelian.free(1): 1,
    FgAbelian.of(1, [2]): 2,
}


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str = Field(description="type-1, type-2, symmetric-profile or "
                                  "unclassified")
    matches: Tuple[str, ...] = Field(
        (), description="Every shape the profile fits, preferred first")
    profile_names: Tuple[str, ...] = Field(
        (), description="Symmetric spaces with the same homology")
    alpha: Optional[int] = None
    beta: Optional[int] = None
    gamma: Optional[int] = None
    warnings: Tuple[str, ...] = ()

    def render(self) -> str:
        parts = [self.kind]
        if self.profile_names:
            parts.append(f"as {', '.join(self.profile_names)}")
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        if len(self.matches) > 1:
            parts.append(f"(also {', '.join(self.matches[1:])})")
        return " ".join(parts)


def _as_homology(profile: GradedGroups) -> GradedGroups:
    if profile.kind == const.HOMOLOGY:
        return profile
    return abgroup.poincare_dual(profile)


def extension_orders(h3: FgAbelian) -> Optional[Tuple[int, int]]:
    """
    A pair (beta, gamma) with 0 -> Z/beta -> h3 -> Z/gamma -> 0, gamma
    >= 1, preferring beta in {1, gamma}. None when no such pair exists.
    """
    if h3.rank > 1:
        return None
    if h3.rank == 1:
        if len(h3.torsion) > 1:
            return None
        return 0, h3.torsion_order()
    order = h3.order()
    if h3.is_cyclic():
        return 1, order
    if len(h3.torsion) > 2:
        return None
    gamma = math.isqrt(order)
    cyclic = FgAbelian.cyclic(gamma)
    if gamma * gamma == order and \
            abgroup.admits_extension(cyclic, cyclic, h3):
        return gamma, gamma
    return h3.torsion[0], h3.torsion[1]


def _slot_orders(homology: GradedGroups) -> Optional[Tuple[int, int]]:
    slot = homology.extension_slot
    if slot is None or slot.degree != 3:
        return None
    datum = slot.datum
    if not (datum.sub.is_cyclic() and datum.quot.is_cyclic()):
        return None
    return datum.sub.order(), datum.quot.order()


def symmetric_matches(homology: GradedGroups,
                      atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> List[str]:
    if homology.has_open_extension():
        return []
    plain = homology.model_copy(update={"extension_slot": None})
    return [name for name, profile
            in catalog.symmetric_profiles(homology.dim, atoms).items()
            if profile.groups == plain.groups]


def classify_theorem_type(g: GradedGroups,
                          atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> Classification:
    """
    Classify a homology or cohomology profile. Failed conditions are
    reported as warnings, the profile itself is never changed.
    """
    homology = _as_homology(g)
    warnings = list(homology.manifold_violations())
    names = symmetric_matches(homology, atoms)
    matches = [SYMMETRIC] if names else []
    alpha = beta = gamma = None

    if homology.dim == 7:
        h2, h3 = homology.group(2), homology.group(3)
        if h2.is_trivial() and h3.rank == 0 and h3.is_cyclic() \
                and not homology.has_open_extension():
            matches.append(TYPE_1)
            gamma = h3.order()
        elif h2 in _TYPE_2_H2:
            orders = _slot_orders(homology) or extension_orders(h3)
            if orders is not None and orders[1] >= 1:
                matches.append(TYPE_2)
                alpha = _TYPE_2_H2[h2]
                beta, gamma = orders
                if alpha != 0 and not homology.has_open_extension() \
                        and beta not in (1, gamma):
                    warnings.append(
                        f"alpha = {alpha} but beta = {beta} is not in "
                        f"{{1, gamma = {gamma}}}")

    if matches:
        kind = matches[0]
    else:
        kind = UNCLASSIFIED
        warnings.append(f"dimension {homology.dim} profile fits no "
                        f"allowed shape")
    if warnings:
        logger.warning(f"classification {kind}: {'; '.join(warnings)}")
    return Classification(kind=kind, matches=tuple(matches),
                          profile_names=tuple(names), alpha=alpha,
                          beta=beta, gamma=gamma, warnings=tuple(warnings))
