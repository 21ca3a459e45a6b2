# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Circle subgroups of the 2-torus and the finite cyclic subgroups inside
them.

Points of T^2 = R^2/Z^2 are written as pairs of Fractions reduced
mod 1. The circle of slope (p, q) is {t(p, q)}, and a point (x, y) lies
on it exactly when q*x - p*y is an integer.
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Literal, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cohomology import intlin
from cohomology.intlin import BezoutCert, IntMatrix
from common import const
from common.errors import (CirclesCoincideError, FiniteSubgroupError,
                           FormulaInconsistencyError)

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Slope = Tuple[int, int]
Point = Tuple[Fraction, Fraction]


class CircleWithFinite(BaseModel):
    """
    The circle {(z^p, z^q)} in T^2 together with its cyclic subgroup of
    order b.
    """
    model_config = ConfigDict(frozen=True)

    p: int = Field(description="First slope coordinate")
    q: int = Field(description="Second slope coordinate")
    b: int = Field(1, ge=1, description="Order of the finite subgroup")

    @model_validator(mode="after")
    def _check_primitive(self) -> "CircleWithFinite":
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"slope ({self.p}, {self.q}) is not primitive")
        return self

    @property
    def slope(self) -> Slope:
        return (self.p, self.q)

    def negated(self) -> "CircleWithFinite":
        return CircleWithFinite(p=-self.p, q=-self.q, b=self.b)

    def elements(self) -> List[Point]:
        return [_reduce((Fraction(k * self.p, self.b),
                         Fraction(k * self.q, self.b)))
                for k in range(self.b)]


def _slope(c: Union[CircleWithFinite, Slope]) -> Slope:
    if isinstance(c, CircleWithFinite):
        return c.slope
    return (int(c[0]), int(c[1]))


def _reduce(point: Point) -> Point:
    return (point[0] % 1, point[1] % 1)


def on_circle(point: Point, slope: Slope) -> bool:
    p, q = slope
    return (q * point[0] - p * point[1]).denominator == 1


def same_circle(c1: Union[CircleWithFinite, Slope],
                c2: Union[CircleWithFinite, Slope]) -> bool:
    (p1, q1), (p2, q2) = _slope(c1), _slope(c2)
    return (p1, q1) == (p2, q2) or (p1, q1) == (-p2, -q2)


def signed_intersection(minus: Union[CircleWithFinite, Slope],
                        plus: Union[CircleWithFinite, Slope]) -> int:
    """a = q+ p- - q- p+, whose absolute value counts intersections."""
    (pm, qm), (pp, qp) = _slope(minus), _slope(plus)
    return qp * pm - qm * pp


def circle_intersection_count(c1: Union[CircleWithFinite, Slope],
                              c2: Union[CircleWithFinite, Slope]) -> int:
    """
    Number of points the two circles share.

    :raises CirclesCoincideError: when both slopes give the same circle
    """
    a = signed_intersection(c1, c2)
    if a == 0:
        raise CirclesCoincideError(
            f"circles coincide: {_slope(c1)} and {_slope(c2)}")
    return abs(a)


def finite_product_order(minus: CircleWithFinite, plus: CircleWithFinite,
                         cross_check: bool = False,
                         cutoff: int = const.ENUMERATION_CUTOFF) -> int:
    """
    Order h of the subgroup of T^2 generated by both finite cyclic
    subgroups. With N = lcm(b-, b+) the subgroup is L/Z^2 for the
    lattice L spanned by Z^2 and the generators, so
    h = N^2 / |Z^2 : N L|.
    """
    n = math.lcm(minus.b, plus.b)
    gens = [
        ((n // minus.b) * minus.p, (n // minus.b) * minus.q),
        ((n // plus.b) * plus.p, (n // plus.b) * plus.q),
        (n, 0),
        (0, n),
    ]
    index = intlin.quotient_order([(1, 0), (0, 1)], gens)
    h = n * n // index

    if cross_check and minus.b * plus.b <= cutoff:
        enumerated = enumerate_product_order(minus, plus)
        if enumerated != h:
            raise FormulaInconsistencyError(
                f"lattice order {h} but {enumerated} enumerated elements "
                f"for {minus} and {plus}")
    return h


def product_elements(minus: CircleWithFinite,
                     plus: CircleWithFinite) -> Set[Point]:
    return {_reduce((x1 + x2, y1 + y2))
            for (x1, y1) in minus.elements()
            for (x2, y2) in plus.elements()}


def enumerate_product_order(minus: CircleWithFinite,
                            plus: CircleWithFinite) -> int:
    return len(product_elements(minus, plus))


def enumerate_intersection_count(c1: Union[CircleWithFinite, Slope],
                                 c2: Union[CircleWithFinite, Slope]) -> int:
    """
    Counts common points of two circles by listing candidates of every
    order up to |p1 q2| + |q1 p2|, a bound on the intersection size.
    """
    (p1, q1), (p2, q2) = _slope(c1), _slope(c2)
    if same_circle((p1, q1), (p2, q2)):
        raise CirclesCoincideError(
            f"circles coincide: {(p1, q1)} and {(p2, q2)}")
    bound = abs(p1 * q2) + abs(q1 * p2)
    found = set()
    for n in range(1, bound + 1):
        for k in range(n):
            point = _reduce((Fraction(k * p1, n), Fraction(k * q1, n)))
            if on_circle(point, (p2, q2)):
                found.add(point)
    return len(found)


def circle_intersection(minus: CircleWithFinite,
                        plus: CircleWithFinite) -> List[Point]:
    """Points of the intersection of the two circles."""
    count = circle_intersection_count(minus, plus)
    return [_reduce((Fraction(k * minus.p, count),
                     Fraction(k * minus.q, count)))
            for k in range(count)]


def finite_index_d(minus: CircleWithFinite, plus: CircleWithFinite) -> int:
    """
    Index d of H n K-0 n K+0 in K-0 n K+0, where H is generated by the
    two finite subgroups.
    """
    subgroup = product_elements(minus, plus)
    intersection = circle_intersection(minus, plus)
    inside = sum(1 for point in intersection if point in subgroup)
    return len(intersection) // inside


def circle_part_order(minus: CircleWithFinite, plus: CircleWithFinite,
                      side: Literal["-", "+"]) -> int:
    """
    Order of H n K-0 (side "-") or H n K+0 (side "+").

    The functional q- x - p- y is integral exactly on K-0, and on H its
    image mod 1 is generated by -a/b+, so |H n K-0| = h gcd(a, b+) / b+.
    A valid diagram has this equal to b-, and likewise on the other side.
    """
    h = finite_product_order(minus, plus)
    a = signed_intersection(minus, plus)
    other = plus.b if side == "-" else minus.b
    return h * math.gcd(a, other) // other


def enumerate_circle_part_order(minus: CircleWithFinite,
                                plus: CircleWithFinite,
                                side: Literal["-", "+"]) -> int:
    slope = minus.slope if side == "-" else plus.slope
    return sum(1 for point in product_elements(minus, plus)
               if on_circle(point, slope))


class RhoData(BaseModel):
    """
    The matrix [[A, B], [D, E]] of a homomorphism T^2 -> T^2 with kernel
    H, and the Bezout certificates it was built from.
    """
    model_config = ConfigDict(frozen=True)

    A: int
    B: int
    D: int
    E: int
    h: int = Field(ge=1, description="Order of the kernel H")
    a: int = Field(description="Signed intersection q+ p- - q- p+")
    c: Optional[int] = Field(
        None, description="p+ psi(p-, q-) - q+ phi(p-, q-); unset after "
                          "recomposition")
    certs: Tuple[BezoutCert, ...] = Field(
        (), description="Certificates for the first and third factors")

    @model_validator(mode="after")
    def _check_determinant(self) -> "RhoData":
        if abs(self.A * self.E - self.B * self.D) != self.h:
            raise ValueError(
                f"|AE - BD| = {abs(self.A * self.E - self.B * self.D)} "
                f"differs from h = {self.h}")
        return self

    def matrix(self) -> IntMatrix:
        return IntMatrix.of([[self.A, self.B], [self.D, self.E]])

    def content(self) -> int:
        return math.gcd(self.A, self.B, self.D, self.E)

    def image(self, circle: CircleWithFinite) -> Tuple[int, int]:
        return (self.A * circle.p + self.B * circle.q,
                self.D * circle.p + self.E * circle.q)


class HatCoeffs(BaseModel):
    """Slope of the image of one circle under rho."""
    model_config = ConfigDict(frozen=True)

    side: Literal["-", "+"]
    p_hat: int
    q_hat: int

    @model_validator(mode="after")
    def _check_primitive(self) -> "HatCoeffs":
        if math.gcd(self.p_hat, self.q_hat) != 1:
            raise ValueError(
                f"image slope ({self.p_hat}, {self.q_hat}) is not primitive")
        return self


def build_rho(minus: CircleWithFinite, plus: CircleWithFinite,
              h: Optional[int] = None,
              shifts: Tuple[int, int] = (0, 0)) -> RhoData:
    """
    Build rho = rho4 rho3 rho2 rho1 with kernel H = H- H+.

    rho1 = [[psi1, -phi1], [-q-, p-]] sends K-0 onto the first axis,
    rho2 = diag(b-, 1) kills H-, rho3 = [[psi3, -phi3], [-Y, X]] with
    X = hc/b+ and Y = ha/(b- b+) sends the image of K+0 onto the first
    axis, and rho4 = diag(h/b-, 1) kills what is left of H+.

    :param minus: the circle K-0 with H-
    :param plus: the circle K+0 with H+
    :param h: expected order of H, checked when given
    :param shifts: offsets applied to the two Bezout certificates
    :raises FiniteSubgroupError: if h is not the order of H
    """
    order = finite_product_order(minus, plus)
    if h is not None and h != order:
        raise FiniteSubgroupError(
            f"h does not match generated finite subgroup: {h} != {order}")
    h = order

    a = signed_intersection(minus, plus)
    if a == 0:
        raise CirclesCoincideError(
            f"circles coincide: {minus.slope} and {plus.slope}")

    cert1 = intlin.ext_gcd(minus.p, minus.q).shifted(shifts[0])
    c = plus.p * cert1.psi - plus.q * cert1.phi
    if (h * c) % plus.b or (h * a) % (minus.b * plus.b):
        raise FormulaInconsistencyError(
            f"non-integral rho3 entries for h={h}, a={a}, c={c}")
    x = h * c // plus.b
    y = h * a // (minus.b * plus.b)
    cert3 = intlin.ext_gcd(x, y).shifted(shifts[1])
    if cert3.g != 1:
        raise FormulaInconsistencyError(
            f"rho3 row ({-y}, {x}) is not primitive")

    rho1 = IntMatrix.of([[cert1.psi, -cert1.phi], [-minus.q, minus.p]])
    rho2 = IntMatrix.of([[minus.b, 0], [0, 1]])
    rho3 = IntMatrix.of([[cert3.psi, -cert3.phi], [-y, x]])
    rho4 = IntMatrix.of([[h // minus.b, 0], [0, 1]])
    (A, B), (D, E) = (rho4 @ rho3 @ rho2 @ rho1).entries

    rho = RhoData(A=A, B=B, D=D, E=E, h=h, a=a, c=c, certs=(cert1, cert3))
    verify_rho(rho, minus, plus)
    logger.debug(f"rho for {minus.slope}/{plus.slope}: {rho.matrix()}")
    return rho


def verify_rho(rho: RhoData, minus: CircleWithFinite,
               plus: CircleWithFinite):
    """
    Checks gcd(A p + B q, D p + E q) = b on both sides and, when c is
    known, gcd(b- c, a) = b- b+ / h.
    """
    for circle in (minus, plus):
        image = rho.image(circle)
        if math.gcd(*image) != circle.b:
            raise FormulaInconsistencyError(
                f"image {image} of {circle.slope} has content "
                f"{math.gcd(*image)}, expected {circle.b}")
    if rho.c is not None and \
            math.gcd(minus.b * rho.c, rho.a) * rho.h != minus.b * plus.b:
        raise FormulaInconsistencyError(
            f"gcd(b- c, a) = {math.gcd(minus.b * rho.c, rho.a)} "
            f"but b- b+ / h = {minus.b * plus.b // rho.h}")


def compose_rho(rho: RhoData, unimodular: Iterable[Iterable[int]],
                minus: CircleWithFinite,
                plus: CircleWithFinite) -> RhoData:
    """Left-compose rho with a unimodular 2x2 matrix."""
    u = IntMatrix.of(unimodular)
    if abs(intlin.det(u)) != 1:
        raise ValueError(f"{u.entries} is not unimodular")
    (A, B), (D, E) = (u @ rho.matrix()).entries
    composed = RhoData(A=A, B=B, D=D, E=E, h=rho.h, a=rho.a)
    verify_rho(composed, minus, plus)
    return composed


def hat_coeffs(rho: RhoData, side: Literal["-", "+"],
               circle: CircleWithFinite) -> HatCoeffs:
    """Primitive slope of rho applied to one of the circles."""
    image = rho.image(circle)
    if image[0] % circle.b or image[1] % circle.b:
        raise FormulaInconsistencyError(
            f"image {image} of side {side} is not divisible by {circle.b}")
    p_hat, q_hat = image[0] // circle.b, image[1] // circle.b
    if math.gcd(p_hat, q_hat) != 1:
        raise FormulaInconsistencyError(
            f"image slope ({p_hat}, {q_hat}) of side {side} is not "
            f"primitive")
    return HatCoeffs(side=side, p_hat=p_hat, q_hat=q_hat)


def lens_order(minus: CircleWithFinite, plus: CircleWithFinite,
               h: Optional[int] = None) -> int:
    """
    Order r = |a h / (b- b+)| of the intersection of the two image
    circles in T^2/H.
    """
    a = signed_intersection(minus, plus)
    if a == 0:
        raise CirclesCoincideError(
            f"circles coincide: {minus.slope} and {plus.slope}")
    if h is None:
        h = finite_product_order(minus, plus)
    if (a * h) % (minus.b * plus.b):
        raise FormulaInconsistencyError(
            f"a h = {a * h} not divisible by b- b+ = {minus.b * plus.b}")
    return abs(a * h // (minus.b * plus.b))


def enumerate_lens_order(minus: CircleWithFinite,
                         plus: CircleWithFinite) -> int:
    """
    |K- n K+| / |H| by listing the points of K- = K-0 H lying on
    K+ = K+0 H.
    """
    a = signed_intersection(minus, plus)
    if a == 0:
        raise CirclesCoincideError(
            f"circles coincide: {minus.slope} and {plus.slope}")
    subgroup = product_elements(minus, plus)

    def chi(point: Point) -> Fraction:
        return plus.q * point[0] - plus.p * point[1]

    # t(p-, q-) + eta lies on K+0 + xi when t a + chi(eta - xi) is integral
    found = set()
    for eta in subgroup:
        for xi in subgroup:
            offset = chi(xi) - chi(eta)
            for k in range(abs(a)):
                t = (offset + k) / a
                found.add(_reduce((t * minus.p + eta[0],
                                   t * minus.q + eta[1])))
    return len(found) // len(subgroup)
