# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Homology profiles that come from a table instead of a formula: atoms
read from the atom data file, their products, Brieskorn varieties and
the P-family templates.
"""
import functools
import itertools
import logging
import os
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cohomology import abgroup
from cohomology.abgroup import FgAbelian, GradedGroups
from common import const
from common.errors import CatalogError, ProfileError

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

MAX_DIM = 7
PRODUCT_SEPARATOR = "x"

_atoms_file = const.DEFAULT_ATOMS_FILE


class SpaceAtom(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Atom name, e.g. S3 or SU3/SO3")
    dim: int = Field(ge=0, le=MAX_DIM, description="Dimension")
    symmetric: bool = Field(
        False, description="Whether the atom is a symmetric space")
    groups: GradedGroups = Field(description="Homology H0 .. Hdim")
    citation: str = Field(min_length=1,
                          description="Where the groups come from")


def _atom_from_record(record: dict) -> SpaceAtom:
    name = record.get("name", "<unnamed>")
    if not str(record.get("citation") or "").strip():
        raise CatalogError(f"atom {name} has no citation")
    try:
        groups = GradedGroups(
            dim=record["dim"], kind=const.HOMOLOGY,
            groups=tuple(FgAbelian.parse(g) for g in record["groups"]))
        groups.check_manifold()
        return SpaceAtom(name=name, dim=record["dim"],
                         symmetric=record.get("symmetric", False),
                         groups=groups, citation=record["citation"])
    except (KeyError, ValidationError, ProfileError) as e:
        raise CatalogError(f"bad atom {name}: {e}") from e


def parse_atoms(text: str) -> Dict[str, SpaceAtom]:
    data = yaml.safe_load(text) or {}
    atoms = {}
    for record in data.get("atoms", []):
        atom = _atom_from_record(record)
        if atom.name in atoms:
            raise CatalogError(f"duplicate atom {atom.name}")
        atoms[atom.name] = atom
    return atoms


def load_atoms(path: Optional[str] = None) -> Dict[str, SpaceAtom]:
    """
    Read the atom data file, by default the one set by use_atoms_file
    (config/atoms.yml).

    :raises CatalogError: on a missing file, a missing citation or
        groups that are not a closed manifold profile
    """
    return _read_atoms(path or _atoms_file)


@functools.lru_cache(maxsize=8)
def _read_atoms(path: str) -> Dict[str, SpaceAtom]:
    if not os.path.exists(path):
        raise CatalogError(f"atom file {path} not found")
    with open(path, 'r') as file:
        atoms = parse_atoms(file.read())
    logger.info(f"loaded {len(atoms)} atoms from {path}")
    return atoms


def use_atoms_file(path: str) -> str:
    """
    Make path the atom file read when no path is given. A relative path
    that does not exist is tried again from the project directory.
    """
    global _atoms_file
    if not os.path.isabs(path) and not os.path.exists(path):
        path = os.path.join(const.PROJECT_DIR, path)
    _atoms_file = path
    logger.info(f"using atom file {path}")
    return path


def dump_atoms(atoms: Dict[str, SpaceAtom]) -> str:
    records = [{
        "name": atom.name,
        "dim": atom.dim,
        "symmetric": atom.symmetric,
        "groups": [g.render() for g in atom.groups.groups],
        "citation": atom.citation,
    } for atom in atoms.values()]
    return yaml.safe_dump({"atoms": records}, sort_keys=False)


def atom(name: str, atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> SpaceAtom:
    atoms = atoms if atoms is not None else load_atoms()
    if name not in atoms:
        raise CatalogError(f"unknown atom {name}")
    return atoms[name]


def product_profile(factors: Sequence[Union[SpaceAtom, str]],
                    atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> GradedGroups:
    """
    Homology of a product of atoms by iterated Kunneth.

    :raises CatalogError: on an unknown atom or a product of dimension
        above 7
    """
    resolved = [f if isinstance(f, SpaceAtom) else atom(f, atoms)
                for f in factors]
    if not resolved:
        raise CatalogError("empty product")
    dim = sum(a.dim for a in resolved)
    if dim > MAX_DIM:
        raise CatalogError(
            f"product {PRODUCT_SEPARATOR.join(a.name for a in resolved)} "
            f"has dimension {dim} > {MAX_DIM}")
    profile = resolved[0].groups
    for factor in resolved[1:]:
        profile = abgroup.kunneth(profile, factor.groups)
    return profile


def low_dim(name: str, atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> GradedGroups:
    """Profile of an atom or of a product written like S2xS2xS3."""
    return product_profile(name.split(PRODUCT_SEPARATOR), atoms)


def cohomology_profile(name: str) -> GradedGroups:
    return abgroup.poincare_dual(low_dim(name))


def symmetric_profiles(dim: int,
                       atoms: Optional[Dict[str, SpaceAtom]] = None) \
        -> Dict[str, GradedGroups]:
    """
    Profiles of every product of symmetric atoms of the given total
    dimension, keyed by product name with larger factors first.
    """
    if atoms is None:
        return dict(_default_symmetric_profiles(_atoms_file, dim))
    return _symmetric_profiles(dim, atoms)


@functools.lru_cache(maxsize=16)
def _default_symmetric_profiles(path: str, dim: int) \
        -> Tuple[Tuple[str, GradedGroups], ...]:
    return tuple(_symmetric_profiles(dim, load_atoms(path)).items())


def _symmetric_profiles(dim: int, atoms: Dict[str, SpaceAtom]) \
        -> Dict[str, GradedGroups]:
    symmetric = sorted((a for a in atoms.values() if a.symmetric),
                       key=lambda a: (-a.dim, a.name))
    profiles = {}
    for count in range(1, dim // 2 + 1):
        for combo in itertools.combinations_with_replacement(symmetric,
                                                             count):
            if sum(a.dim for a in combo) != dim:
                continue
            name = PRODUCT_SEPARATOR.join(a.name for a in combo)
            profiles[name] = product_profile(list(combo))
    return profiles


def brieskorn(d: int) -> GradedGroups:
    """Brieskorn variety with H2 = 0 and H3 = Z/d."""
    if d < 1:
        raise CatalogError(f"Brieskorn degree must be positive, got {d}")
    return abgroup.seven_manifold(FgAbelian.trivial(), FgAbelian.cyclic(d))


def p_family(family_type: Literal["A", "B", "C", "D"], r: int,
             variant: Literal["plain", "Z2"] = "plain") -> GradedGroups:
    """
    Homology of the P-family 7-manifolds with H3 = Z/r. Type C has
    H2 = 0; the others have H2 = Z, or Z + Z/2 for the Z2 variant of
    type A.

    :param family_type: A, B, C or D
    :param r: the order of H3, computed elsewhere; 0 means Z
    :param variant: plain or Z2
    """
    if family_type not in ("A", "B", "C", "D"):
        raise CatalogError(f"unknown P-family type {family_type}")
    if r < 0:
        raise CatalogError(f"r must be nonnegative, got {r}")
    if variant == "Z2" and family_type != "A":
        raise CatalogError(f"the Z2 variant exists only for type A, "
                           f"not {family_type}")
    if variant == "Z2" and r == 0:
        raise CatalogError("the Z2 variant needs a finite H3 (r > 0)")

    if family_type == "C":
        h2 = FgAbelian.trivial()
    elif variant == "Z2":
        h2 = FgAbelian.of(1, [2])
    else:
        h2 = FgAbelian.free(1)
    return abgroup.seven_manifold(h2, FgAbelian.cyclic(r))


def n6d_profile() -> GradedGroups:
    return low_dim("N6D-profile")


def atom_names(atoms: Optional[Dict[str, SpaceAtom]] = None) -> List[str]:
    return sorted((atoms if atoms is not None else load_atoms()).keys())
