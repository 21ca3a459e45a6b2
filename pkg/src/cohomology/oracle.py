# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Brute force twins of the closed formulas.

The orders here are recomputed from lattice quotients (Smith normal
form) and from element enumeration. The cycle vectors are assembled
again from a rho of their own, built from a Smith basis of the lattice
of H, rather than taken from the families and torus modules.
"""
import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from cohomology import families, intlin, torus
from cohomology.diagrams import FamilyDiagram, N7ADiagram, N7EDiagram, \
    N7HDiagram
from cohomology.intlin import IntMatrix
from cohomology.torus import CircleWithFinite, RhoData
from common import const
from common.errors import (DeltaMismatchError, HomologyError,
                           NotACycleError)

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class CheckRecord(BaseModel):
    """One formula against oracle comparison."""
    model_config = ConfigDict(frozen=True)

    check: str = Field(description="What was compared")
    params: str = Field(description="Parameters of the checked case")
    formula: Optional[str] = Field(None, description="Formula value")
    oracle: Optional[str] = Field(None, description="Oracle value")
    status: str = Field(description="ok, mismatch, error or skipped")

    @property
    def ok(self) -> bool:
        return self.status in (const.STATUS_OK, const.STATUS_SKIPPED)

    def render(self) -> str:
        return (f"{self.check} [{self.params}] formula={self.formula} "
                f"oracle={self.oracle} status={self.status}")


def mv_quotient_order(row: Sequence[int],
                      gens: Sequence[Sequence[int]]) -> int:
    """
    Order of ker(row) / <gens> in Z^4, 0 when infinite.

    :raises NotACycleError: when a generator is not in the kernel
    """
    for g in gens:
        if sum(a * b for a, b in zip(row, g)) != 0:
            raise NotACycleError(f"not a cycle: {tuple(g)} for row "
                                 f"{tuple(row)}")
    basis = intlin.kernel_basis(IntMatrix.of([row]))
    return intlin.quotient_order(basis, gens)


def im_i4_order(m_minus: int, m_plus: int, delta: int,
                strict: bool = True,
                cutoff: int = const.PAIR_ENUMERATION_CUTOFF) -> int:
    """
    Order of the kernel of Z/m- + Z/m+ -> Z/delta, (i, j) -> i - j.
    A modulus of 0 stands for Z and gives 0 (infinite).

    :param strict: require delta = gcd(m-, m+)
    :raises DeltaMismatchError: when delta does not divide both moduli,
        or differs from their gcd in strict mode
    """
    m_minus, m_plus = abs(m_minus), abs(m_plus)
    if m_minus == 0 or m_plus == 0:
        return 0
    if m_minus % delta or m_plus % delta:
        raise DeltaMismatchError(
            f"delta {delta} does not divide {m_minus} and {m_plus}")
    if strict and delta != math.gcd(m_minus, m_plus):
        raise DeltaMismatchError(
            f"delta {delta} is not gcd({m_minus}, {m_plus})")
    if m_minus * m_plus > cutoff:
        logger.warning(f"{m_minus * m_plus} pairs exceed the cutoff, "
                       f"counting instead of enumerating")
        return m_minus * m_plus // delta
    return sum(1 for i in range(m_minus) for j in range(m_plus)
               if (i - j) % delta == 0)


def _hats(rho: RhoData, circle: CircleWithFinite) -> Tuple[int, int]:
    u, v = rho.image(circle)
    return u // circle.b, v // circle.b


def n7a_cycles(rho: RhoData, minus: CircleWithFinite,
               plus: CircleWithFinite) -> Tuple[Vector, List[Vector]]:
    """Row [B E A D] and the generators x, y-, y+ rebuilt from rho."""
    row = (rho.B, rho.E, rho.A, rho.D)
    gens = [(-rho.D, rho.A, -rho.E, rho.B)]
    for circle in (minus, plus):
        p_hat, q_hat = _hats(rho, circle)
        gens.append((circle.q * q_hat, -circle.q * p_hat,
                     circle.p * q_hat, -circle.p * p_hat))
    return row, gens


def n7e_cycles(rho: RhoData, d: N7EDiagram) -> Tuple[Vector, List[Vector]]:
    m, n = d.m, d.n
    row = (rho.A * m, rho.D * m, -rho.A * n, -rho.D * n)
    gens = [(rho.D * n, -rho.A * n, -rho.D * m, rho.A * m)]
    for circle in (d.minus, d.plus):
        p_hat, q_hat = _hats(rho, circle)
        gens.append((n * q_hat, -n * p_hat, m * q_hat, -m * p_hat))
    return row, gens


def lattice_rho(minus: CircleWithFinite, plus: CircleWithFinite) -> RhoData:
    """
    A rho with kernel H read off a Smith basis of the lattice of H,
    without Bezout certificates.

    With N = lcm(b-, b+) the lattice N L is spanned by the columns of G.
    If U G V = diag(d1, d2) then R = diag(N/d1, N/d2) U maps L onto Z^2.
    Any two such R differ by a unimodular factor on the left.
    """
    n = math.lcm(minus.b, plus.b)
    gens = IntMatrix.from_columns([
        ((n // minus.b) * minus.p, (n // minus.b) * minus.q),
        ((n // plus.b) * plus.p, (n // plus.b) * plus.q),
        (n, 0),
        (0, n),
    ])
    snf = intlin.smith_normal_form(gens)
    (u11, u12), (u21, u22) = snf.left.entries
    s1, s2 = n // abs(snf.diag[0]), n // abs(snf.diag[1])
    A, B, D, E = s1 * u11, s1 * u12, s2 * u21, s2 * u22
    return RhoData(A=A, B=B, D=D, E=E, h=abs(A * E - B * D),
                   a=plus.q * minus.p - minus.q * plus.p)


def n7a_h4_order(d: N7ADiagram, rho: Optional[RhoData] = None,
                 pair_cutoff: int = const.PAIR_ENUMERATION_CUTOFF) -> int:
    """|H4| of an N7A diagram through lattice quotients only."""
    minus, plus = d.minus, d.plus
    rho = rho or lattice_rho(minus, plus)
    row, gens = n7a_cycles(rho, minus, plus)
    return mv_quotient_order(row, gens) * im_i4_order(
        rho.h // minus.b, rho.h // plus.b, rho.content(), cutoff=pair_cutoff)


def n7e_h4_order(d: N7EDiagram, rho: Optional[RhoData] = None,
                 pair_cutoff: int = const.PAIR_ENUMERATION_CUTOFF) -> int:
    minus, plus = d.minus, d.plus
    rho = rho or lattice_rho(minus, plus)
    row, gens = n7e_cycles(rho, d)
    return mv_quotient_order(row, gens) * im_i4_order(
        rho.h * d.q_minus // minus.b, rho.h * d.q_plus // plus.b,
        math.gcd(rho.A, rho.D), strict=False, cutoff=pair_cutoff)


def image_circle_order(rho: RhoData, minus: CircleWithFinite,
                       plus: CircleWithFinite) -> int:
    """Intersection count of the two image circles, the lens order."""
    (pm, qm), (pp, qp) = _hats(rho, minus), _hats(rho, plus)
    return abs(pm * qp - qm * pp)


def enumerate_index_d(minus: CircleWithFinite,
                      plus: CircleWithFinite) -> int:
    """d counted from the elements of H lying on both circles."""
    count = torus.circle_intersection_count(minus, plus)
    inside = sum(1 for point in torus.product_elements(minus, plus)
                 if torus.on_circle(point, minus.slope)
                 and torus.on_circle(point, plus.slope))
    return count // inside


def _compare(check: str, params: str, formula: Callable[[], int],
             oracle: Callable[[], int]) -> CheckRecord:
    try:
        f = formula()
    except HomologyError as e:
        f = f"error: {e}"
    try:
        o = oracle()
    except HomologyError as e:
        o = f"error: {e}"
    if isinstance(f, str) or isinstance(o, str):
        # both paths refusing the input is agreement
        same = isinstance(f, str) and isinstance(o, str)
        status = const.STATUS_OK if same else const.STATUS_ERROR
    else:
        status = const.STATUS_OK if f == o else const.STATUS_MISMATCH
    return CheckRecord(check=check, params=params, formula=str(f),
                       oracle=str(o), status=status)


def subgroup_enum_check(minus: CircleWithFinite, plus: CircleWithFinite,
                        cutoff: int = const.ENUMERATION_CUTOFF) \
        -> List[CheckRecord]:
    """
    Compares the lattice implementations of the torus operations with
    element enumeration.
    """
    params = (f"({minus.p},{minus.q}) b={minus.b} "
              f"({plus.p},{plus.q}) b={plus.b}")
    records = []
    if minus.b * plus.b <= cutoff:
        records.append(_compare(
            "finite_product_order", params,
            lambda: torus.finite_product_order(minus, plus),
            lambda: torus.enumerate_product_order(minus, plus)))
    records.append(_compare(
        "circle_intersection_count", params,
        lambda: torus.circle_intersection_count(minus, plus),
        lambda: torus.enumerate_intersection_count(minus, plus)))
    if torus.same_circle(minus, plus):
        return records
    records.append(_compare(
        "finite_index_d", params,
        lambda: torus.finite_index_d(minus, plus),
        lambda: enumerate_index_d(minus, plus)))
    if minus.b * plus.b <= cutoff:
        records.append(_compare(
            "lens_order", params,
            lambda: torus.lens_order(minus, plus),
            lambda: torus.enumerate_lens_order(minus, plus)))
    return records


def render_report(records: Sequence[CheckRecord]) -> str:
    return "\n".join(r.render() for r in records)


def check_diagram(d: FamilyDiagram,
                  cutoff: int = const.ENUMERATION_CUTOFF,
                  pair_cutoff: int = const.PAIR_ENUMERATION_CUTOFF) \
        -> List[CheckRecord]:
    """
    Oracle checks for one valid diagram. Families without an oracle
    yield a single skipped record.
    """
    params = d.describe()
    if isinstance(d, N7ADiagram) and not d.equal_circles:
        records = subgroup_enum_check(d.minus, d.plus, cutoff)
        if families.antipodal(d.minus, d.plus):
            records.append(_compare(
                "N7A |H4| infinite", params, lambda: 0,
                lambda: n7a_h4_order(d, pair_cutoff=pair_cutoff)))
            return records
        result = families.report_n7a(d)
        records.append(_compare(
            "N7A |H4|", params,
            lambda: result.diagnostics["det"] * result.diagnostics["im_i4"],
            lambda: n7a_h4_order(d, pair_cutoff=pair_cutoff)))
        rho = lattice_rho(d.minus, d.plus)
        records.append(_compare(
            "N7A gamma", params, lambda: result.gamma,
            lambda: image_circle_order(rho, d.minus, d.plus)))
        return records

    if isinstance(d, N7EDiagram):
        records = subgroup_enum_check(d.minus, d.plus, cutoff)
        result = families.report_n7e(d)
        records.append(_compare(
            "N7E beta gamma", params,
            lambda: result.beta * result.gamma,
            lambda: n7e_h4_order(d, pair_cutoff=pair_cutoff)))
        rho = lattice_rho(d.minus, d.plus)
        records.append(_compare(
            "N7E gamma", params, lambda: result.gamma,
            lambda: image_circle_order(rho, d.minus, d.plus)))
        return records

    if isinstance(d, N7HDiagram):
        records = subgroup_enum_check(d.minus, d.plus, cutoff)
        records.append(_compare(
            "N7H h", params,
            lambda: families.report_n7h(d).diagnostics["h"],
            lambda: torus.enumerate_product_order(d.minus, d.plus)))
        return records

    return [CheckRecord(check=f"{d.family} oracle", params=params,
                        status=const.STATUS_SKIPPED)]
