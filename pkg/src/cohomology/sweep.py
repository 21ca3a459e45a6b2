# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Enumerates every valid diagram of a family inside a parameter box,
computes each one (optionally with the oracle checks) and tabulates the
results. Rows are sorted by their parameter tuple, so the table does
not depend on how the work was split over processes.
"""
import functools
import itertools
import logging
import multiprocessing
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from cohomology import classify, families, intlin, oracle
from cohomology.abgroup import GradedGroups
from cohomology.diagrams import (FamilyDiagram, N7ADiagram, N7BDiagram,
                                 N7CDiagram, N7EDiagram, N7HDiagram)
from common import const
from common.config import SweepConfig
from common.errors import HomologyError

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Slope = Tuple[int, int]


class SweepBounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_slope: int = Field(5, ge=1, description="Bound on slope entries")
    max_order: int = Field(4, ge=1, description="Bound on b- and b+")
    max_mn: int = Field(3, ge=1, description="Bound on |m|, |n| for N7E")
    max_q: int = Field(9, ge=1, description="Bound on |q| for N7B, N7C")
    max_n: int = Field(4, ge=1, description="Bound on the N7B/N7C/N7H n")

    @classmethod
    def from_config(cls, config: SweepConfig) -> "SweepBounds":
        return cls(max_slope=config.max_slope, max_order=config.max_order,
                   max_mn=config.max_mn, max_q=config.max_q,
                   max_n=config.max_n)


def primitive_slopes(bound: int) -> List[Slope]:
    """
    Primitive (p, q) with |p|, |q| <= bound, one per circle: p > 0, or
    p = 0 and q = 1.

    Sweeps therefore list each circle with one orientation only. The
    sign flipped variants (-p, -q) give the same manifold and are
    covered by the slope negation tests, not by the sweep tables.
    """
    values = np.arange(-bound, bound + 1)
    p, q = np.meshgrid(values, values, indexing="ij")
    keep = (np.gcd(p, q) == 1) & ((p > 0) | ((p == 0) & (q > 0)))
    return sorted((int(a), int(b)) for a, b in zip(p[keep], q[keep]))


def _two_circle_fields(bounds: SweepBounds) \
        -> Iterator[Dict[str, int]]:
    slopes = primitive_slopes(bounds.max_slope)
    orders = range(1, bounds.max_order + 1)
    for (pm, qm), (pp, qp) in itertools.product(slopes, repeat=2):
        for bm, bp in itertools.product(orders, repeat=2):
            yield {"p_minus": pm, "q_minus": qm, "b_minus": bm,
                   "p_plus": pp, "q_plus": qp, "b_plus": bp}


def _candidates(family: str, bounds: SweepBounds) \
        -> Iterator[FamilyDiagram]:
    if family == "N7A":
        for fields in _two_circle_fields(bounds):
            yield N7ADiagram(**fields)

    elif family == "N7B":
        for quarter in range(1, bounds.max_n + 1):
            n_minus = 4 * quarter
            for q in range(-bounds.max_q, bounds.max_q + 1):
                if q == 0:
                    continue
                for p, n_plus in itertools.product((quarter, -quarter),
                                                   (1, 2)):
                    yield N7BDiagram(p=p, q=q, n_minus=n_minus,
                                     n_plus=n_plus)

    elif family == "N7C":
        for q in range(-bounds.max_q, bounds.max_q + 1):
            if q == 0:
                continue
            for p in range(-bounds.max_slope, bounds.max_slope + 1):
                for n in range(1, bounds.max_n + 1):
                    yield N7CDiagram(p=p, q=q, n=n)

    elif family == "N7E":
        for m, n in primitive_slopes(bounds.max_mn):
            cert = intlin.ext_gcd(m, n)
            for fields in _two_circle_fields(bounds):
                yield N7EDiagram(m=m, n=n, mu=cert.phi, nu=cert.psi,
                                 **fields)

    elif family == "N7H":
        for fields in _two_circle_fields(bounds):
            yield N7HDiagram(
                m_minus=fields["p_minus"], n_minus=fields["q_minus"],
                m_plus=fields["p_plus"], n_plus=fields["q_plus"],
                b_minus=fields["b_minus"], b_plus=fields["b_plus"])

    else:
        raise ValueError(f"no sweep for family {family}, expected one of "
                         f"{const.SWEEP_FAMILIES}")


def enumerate_diagrams(family: str, bounds: SweepBounds) \
        -> List[FamilyDiagram]:
    """Valid diagrams of the family inside the box."""
    diagrams = [d for d in _candidates(family, bounds)
                if not families.validate(d)]
    logger.info(f"{len(diagrams)} valid {family} diagrams in {bounds}")
    return diagrams


def _render_degree(profile: GradedGroups, k: int) -> str:
    slot = profile.extension_slot
    if slot is not None and slot.degree == k and slot.datum.is_open:
        return slot.datum.render(k)
    return profile.group(k).render()


def sweep_row(diagram: FamilyDiagram, check: bool = False,
              cutoff: int = const.ENUMERATION_CUTOFF) -> Dict[str, Any]:
    row: Dict[str, Any] = {k: v for k, v in diagram.parameters().items()
                           if v is not None}
    row.update({"H4": None, "H5": None, "beta": None, "gamma": None,
                "type": None, "warnings": None, "check": None,
                "error": None})
    try:
        result = families.report(diagram)
        cohomology = result.cohomology
        row["H4"] = _render_degree(cohomology, 4)
        row["H5"] = cohomology.group(5).render()
        row["beta"] = result.beta
        row["gamma"] = result.gamma
        found = classify.classify_theorem_type(cohomology)
        row["type"] = found.kind
        if found.warnings:
            row["warnings"] = "; ".join(found.warnings)
        if check:
            records = oracle.check_diagram(diagram, cutoff)
            bad = [r for r in records if not r.ok]
            row["check"] = bad[0].status if bad else const.STATUS_OK
    except HomologyError as e:
        row["error"] = str(e)
    return row


def run_sweep(family: str, bounds: SweepBounds, check: bool = False,
              workers: int = 1,
              cutoff: int = const.ENUMERATION_CUTOFF) -> pd.DataFrame:
    """
    Compute every valid diagram of the family in the box.

    :param workers: processes to use, 1 runs in this process
    :return: one row per diagram sorted by the parameter columns
    """
    diagrams = enumerate_diagrams(family, bounds)
    compute = functools.partial(sweep_row, check=check, cutoff=cutoff)
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            rows = pool.map(compute, diagrams, chunksize=64)
    else:
        rows = [compute(d) for d in diagrams]

    df = pd.DataFrame(rows)
    if df.empty:
        return df
    keys = [c for c in df.columns
            if c not in ("H4", "H5", "beta", "gamma", "type", "warnings",
                         "check", "error")]
    df = df.sort_values(keys, kind="mergesort").reset_index(drop=True)
    logger.info(f"{family} sweep: {len(df)} rows, "
                f"{sweep_failures(df)} failures")
    return df


def sweep_failures(df: pd.DataFrame) -> int:
    """Rows that errored or failed a check. Classification warnings are
    reported in their own column and are not counted here."""
    if df.empty:
        return 0
    bad = df["error"].notna()
    bad |= df["check"].notna() & (df["check"] != const.STATUS_OK)
    return int(bad.sum())


def render_sweep(df: pd.DataFrame, fmt: str = "text") -> str:
    if fmt == "json":
        return df.to_json(orient="records", indent=2)
    if df.empty:
        return "no valid diagrams"
    return df.to_string(index=False)
