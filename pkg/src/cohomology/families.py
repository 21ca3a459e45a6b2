# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Cohomology of the seven dimensional families N7A .. N7I from their
diagram parameters, plus the catalog-backed inputs (Brieskorn
varieties, P-families, N6D and named spaces).

Every calculator returns a FamilyReport: the cohomology profile, the
extension orders beta and gamma where the family has them, and the
intermediate invariants of the computation as diagnostics.
"""
import logging
import math
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cohomology import abgroup, catalog, intlin, torus
from cohomology.abgroup import ExtensionDatum, FgAbelian, GradedGroups
from cohomology.diagrams import (BrieskornDiagram, FamilyDiagram, N6DDiagram,
                                 N7ADiagram, N7BDiagram, N7CDiagram,
                                 N7DDiagram, N7EDiagram, N7FDiagram,
                                 N7GDiagram, N7HDiagram, N7IDiagram,
                                 PFamilyDiagram, SpaceDiagram)
from cohomology.intlin import IntMatrix
from cohomology.torus import CircleWithFinite, RhoData
from common import const
from common.errors import (CatalogError, FormulaInconsistencyError,
                           InvalidDiagramError, ProductActionError)

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Diagnostic = Union[int, str]


class BezoutShifts(BaseModel):
    """
    Offsets t applied to each Bezout certificate a calculator uses. Any
    choice gives the same groups.
    """
    model_config = ConfigDict(frozen=True)

    rho_minus: int = Field(0, description="Certificate for (p-, q-)")
    rho_lens: int = Field(0, description="Certificate for (X, Y) in rho3")
    ab: int = Field(0, description="Certificate for (A/gcd, -B/gcd)")
    de: int = Field(0, description="Certificate for (D/gcd, -E/gcd)")
    mu_nu: int = Field(0, description="Certificate for (nu, -mu)")
    zeta_eta: int = Field(0, description="Certificate for (A/l, -D/l)")


NO_SHIFTS = BezoutShifts()


def _dot(u: Vector, v: Vector) -> int:
    return sum(a * b for a, b in zip(u, v))


class MvVectors(BaseModel):
    """
    Generators x, y-, y+ of the image of the Mayer-Vietoris differential
    inside the kernel of row, the basis w1..w4 adapted to that kernel
    and the vector completing the kernel to a full sublattice.
    """
    model_config = ConfigDict(frozen=True)

    x: Vector
    y_minus: Vector
    y_plus: Vector
    row: Vector
    w1: Vector
    w2: Vector
    w3: Vector
    w4: Vector
    completion: Vector
    mu: Optional[int] = None
    nu: Optional[int] = None
    mu_t: Optional[int] = None
    nu_t: Optional[int] = None
    zeta: Optional[int] = None
    eta: Optional[int] = None
    delta: Optional[int] = None
    ell: Optional[int] = None

    @model_validator(mode="after")
    def _check_cycles(self) -> "MvVectors":
        for name in ("x", "y_minus", "y_plus"):
            if _dot(self.row, getattr(self, name)) != 0:
                raise ValueError(f"{name} is not in the kernel of the row")
        basis = IntMatrix.from_columns([self.w1, self.w2, self.w3, self.w4])
        if abs(intlin.det(basis)) != 1:
            raise ValueError("w1..w4 is not a basis of Z^4")
        return self

    def determinant(self) -> int:
        return intlin.det(IntMatrix.from_columns(
            [self.x, self.y_minus, self.y_plus, self.completion]))


class FamilyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    cohomology: GradedGroups
    beta: Optional[int] = Field(
        None, description="Order of the extension subgroup, 0 if infinite")
    gamma: Optional[int] = Field(
        None, description="Order of the extension quotient")
    profile: Optional[str] = Field(
        None, description="Catalog profile the result equals, if any")
    diagnostics: Dict[str, Diagnostic] = Field(default_factory=dict)

    @property
    def homology(self) -> GradedGroups:
        return abgroup.poincare_dual(self.cohomology)


def _primitive(p: int, q: int) -> bool:
    return math.gcd(p, q) == 1


def _check_circles(d: Union[N7ADiagram, N7EDiagram, N7HDiagram],
                   names: Tuple[str, str, str, str]) -> List[str]:
    """Conditions shared by the two-circle families."""
    pm, qm, pp, qp = (getattr(d, n) for n in names)
    violations = []
    if not _primitive(pm, qm):
        violations.append(f"gcd({names[0]}, {names[1]}) = "
                          f"{math.gcd(pm, qm)}, not 1")
    if not _primitive(pp, qp):
        violations.append(f"gcd({names[2]}, {names[3]}) = "
                          f"{math.gcd(pp, qp)}, not 1")
    for side in ("b_minus", "b_plus"):
        if getattr(d, side) < 1:
            violations.append(f"{side} = {getattr(d, side)} must be >= 1")
    if violations:
        return violations
    if d.h is not None:
        h = torus.finite_product_order(d.minus, d.plus)
        if h != d.h:
            violations.append(
                f"h does not match generated finite subgroup: "
                f"{d.h} != {h}")
    # H- and H+ must be all of H n K-0 and H n K+0
    for side, name in (("-", "minus"), ("+", "plus")):
        given = getattr(d, f"b_{name}")
        order = torus.circle_part_order(d.minus, d.plus, side)
        if order != given:
            violations.append(f"b_{name} = {given} but "
                              f"|H n K{side}0| = {order}")
    return violations


def validate(d: FamilyDiagram) -> List[str]:
    """
    Conditions a diagram of the family must meet. An empty list means
    the diagram is valid.
    """
    if isinstance(d, N7ADiagram):
        return _check_circles(d, ("p_minus", "q_minus", "p_plus", "q_plus"))

    if isinstance(d, N7BDiagram):
        violations = []
        if not _primitive(d.p, d.q):
            violations.append(f"gcd(p, q) = {math.gcd(d.p, d.q)}, not 1")
        if d.n_plus not in (1, 2):
            violations.append(f"n_plus = {d.n_plus} must be 1 or 2")
        if d.n_minus < 1 or d.n_minus % 4 != 0:
            violations.append(
                f"n_minus = {d.n_minus} must be a positive multiple of 4")
        elif (d.p - d.n_minus // 4) % d.n_minus != 0 and \
                (d.p + d.n_minus // 4) % d.n_minus != 0:
            violations.append(
                f"p = {d.p} is not +-n_minus/4 mod n_minus")
        if d.q % 2 == 0 and d.n_plus != 2:
            violations.append("q even puts (-1, 1) in H-, forcing n_plus = 2")
        return violations

    if isinstance(d, N7CDiagram):
        violations = []
        if not _primitive(d.p, d.q):
            violations.append(f"gcd(p, q) = {math.gcd(d.p, d.q)}, not 1")
        if d.n < 1:
            violations.append(f"n = {d.n} must be >= 1")
        elif math.gcd(d.q, d.n) != 1:
            violations.append(f"gcd(q, n) = {math.gcd(d.q, d.n)}, not 1")
        return violations

    if isinstance(d, N7DDiagram):
        violations = []
        if d.m * d.nu - d.n * d.mu != 1:
            violations.append(f"m nu - n mu = {d.m * d.nu - d.n * d.mu}, "
                              f"not 1")
        if d.a < 1:
            violations.append(f"a = {d.a} must be >= 1")
        return violations

    if isinstance(d, N7EDiagram):
        violations = []
        if d.m * d.nu - d.n * d.mu != 1:
            violations.append(f"m nu - n mu = {d.m * d.nu - d.n * d.mu}, "
                              f"not 1")
        violations += _check_circles(
            d, ("p_minus", "q_minus", "p_plus", "q_plus"))
        if violations:
            return violations
        if d.equal_circles:
            return ["K- equals K+"]
        index = torus.finite_index_d(d.minus, d.plus)
        if math.gcd(d.q_minus, d.q_plus, index) != 1:
            violations.append(f"gcd(q_minus, q_plus, d) != 1 with d = "
                              f"{index}")
        return violations

    if isinstance(d, N7FDiagram):
        return [] if d.n >= 1 else [f"n = {d.n} must be >= 1"]

    if isinstance(d, (N7GDiagram, N7IDiagram, N6DDiagram)):
        return []

    if isinstance(d, N7HDiagram):
        violations = _check_circles(
            d, ("m_minus", "n_minus", "m_plus", "n_plus"))
        if violations:
            return violations
        if d.n_minus == 0 and d.n_plus == 0:
            return ["n_minus and n_plus both zero make K- equal K+"]
        if torus.same_circle(d.minus, d.plus):
            return ["K- equals K+"]
        index = torus.finite_index_d(d.minus, d.plus)
        if math.gcd(d.n_minus, d.n_plus, index) != 1:
            violations.append(f"gcd(n_minus, n_plus, d) != 1 with d = "
                              f"{index}")
        return violations

    if isinstance(d, BrieskornDiagram):
        return [] if d.d >= 1 else [f"d = {d.d} must be >= 1"]

    if isinstance(d, PFamilyDiagram):
        violations = []
        if d.r < 0:
            violations.append(f"r = {d.r} must be >= 0")
        if d.variant == "Z2" and d.family != "P7A":
            violations.append("the Z2 variant exists only for P7A")
        if d.variant == "Z2" and d.r == 0:
            violations.append("the Z2 variant needs r > 0")
        return violations

    if isinstance(d, SpaceDiagram):
        try:
            catalog.low_dim(d.name)
        except CatalogError as e:
            return [str(e)]
        return []

    return [f"unknown family {d.family}"]


def _require_valid(d: FamilyDiagram):
    violations = validate(d)
    if violations:
        raise InvalidDiagramError(d.family, violations)


def _extension_profile(h2: FgAbelian, beta: int, gamma: int) \
        -> GradedGroups:
    """Cohomology with H5 = H2 and 0 -> Z/beta -> H4 -> Z/gamma -> 0."""
    datum = ExtensionDatum.forced(FgAbelian.cyclic(beta),
                                  FgAbelian.cyclic(gamma))
    return abgroup.poincare_dual(
        abgroup.seven_manifold(h2, FgAbelian.trivial(), datum))


def _cyclic_profile(h2: FgAbelian, h3: FgAbelian) -> GradedGroups:
    return abgroup.poincare_dual(abgroup.seven_manifold(h2, h3))


def _catalog_report(family: str, name: str,
                    diagnostics: Optional[Dict[str, Diagnostic]] = None) \
        -> FamilyReport:
    return FamilyReport(family=family,
                        cohomology=catalog.cohomology_profile(name),
                        profile=name, diagnostics=diagnostics or {})


def _orbit_group(circle: CircleWithFinite, multiple: int) -> str:
    # H^2(G/K) = <v1, v2> / <multiple (q v1 - p v2)>
    return abgroup.from_presentation(
        [[multiple * circle.q, -multiple * circle.p]], 2).render()


def n7a_vectors(minus: CircleWithFinite, plus: CircleWithFinite,
                rho: RhoData, shifts: BezoutShifts = NO_SHIFTS) \
        -> MvVectors:
    A, B, D, E = rho.A, rho.B, rho.D, rho.E
    hm = torus.hat_coeffs(rho, "-", minus)
    hp = torus.hat_coeffs(rho, "+", plus)

    x = (-D, A, -E, B)
    y_minus = (minus.q * hm.q_hat, -minus.q * hm.p_hat,
               minus.p * hm.q_hat, -minus.p * hm.p_hat)
    y_plus = (plus.q * hp.q_hat, -plus.q * hp.p_hat,
              plus.p * hp.q_hat, -plus.p * hp.p_hat)
    row = (B, E, A, D)

    g_ab = math.gcd(A, B)
    a_bar, b_bar = A // g_ab, B // g_ab
    cert = intlin.ext_gcd(a_bar, -b_bar).shifted(shifts.ab)
    b_tilde, a_tilde = cert.psi, cert.phi

    g_de = math.gcd(D, E)
    d_bar, e_bar = D // g_de, E // g_de
    cert = intlin.ext_gcd(d_bar, -e_bar).shifted(shifts.de)
    e_tilde, d_tilde = cert.psi, cert.phi

    w1 = (a_bar, 0, -b_bar, 0)
    w2 = (a_tilde, 0, b_tilde, 0)
    w3 = (0, d_bar, 0, -e_bar)
    w4 = (0, d_tilde, 0, e_tilde)

    delta = math.gcd(g_ab, g_de)
    mu, nu = g_ab // delta, g_de // delta
    cert = intlin.ext_gcd(nu, -mu).shifted(shifts.mu_nu)
    mu_t, nu_t = cert.psi, cert.phi
    completion = tuple(nu_t * s + mu_t * t for s, t in zip(w2, w4))

    return MvVectors(x=x, y_minus=y_minus, y_plus=y_plus, row=row,
                     w1=w1, w2=w2, w3=w3, w4=w4, completion=completion,
                     mu=mu, nu=nu, mu_t=mu_t, nu_t=nu_t, delta=delta)


def antipodal(minus: CircleWithFinite, plus: CircleWithFinite) -> bool:
    return (minus.p, minus.q) in ((plus.p, -plus.q), (-plus.p, plus.q))


def report_n7a(d: N7ADiagram, shifts: BezoutShifts = NO_SHIFTS) \
        -> FamilyReport:
    _require_valid(d)
    if d.equal_circles:
        return _catalog_report("N7A", "S3xS2xS2",
                               {"branch": "equal circles"})

    minus, plus = d.minus, d.plus
    rho = torus.build_rho(minus, plus, d.h,
                          (shifts.rho_minus, shifts.rho_lens))
    h = rho.h
    delta = math.gcd(h // minus.b, h // plus.b)
    if rho.content() != delta:
        raise FormulaInconsistencyError(
            f"gcd(A, B, D, E) = {rho.content()} but "
            f"gcd(h/b-, h/b+) = {delta}")

    vectors = n7a_vectors(minus, plus, rho, shifts)
    det4 = abs(vectors.determinant())
    im_i4 = math.lcm(h // minus.b, h // plus.b)
    gamma = torus.lens_order(minus, plus, h)
    if antipodal(minus, plus):
        beta = 0
    else:
        order = det4 * im_i4
        if order == 0 or order % gamma != 0:
            raise FormulaInconsistencyError(
                f"|H4| = {order} is not a positive multiple of "
                f"gamma = {gamma}")
        beta = order // gamma

    logger.info(f"{d.describe()}: beta={beta} gamma={gamma}")
    return FamilyReport(
        family="N7A",
        cohomology=_extension_profile(FgAbelian.free(2), beta, gamma),
        beta=beta, gamma=gamma,
        diagnostics={
            "a": rho.a, "h": h, "b_minus": minus.b, "b_plus": plus.b,
            "rho": str([[rho.A, rho.B], [rho.D, rho.E]]),
            "delta": delta, "det": det4, "im_i4": im_i4,
            "gamma": gamma, "beta": beta,
            "H2(G/K-)": _orbit_group(minus, h // minus.b),
            "H2(G/K+)": _orbit_group(plus, h // plus.b),
        })


def homology_n7a(d: N7ADiagram,
                 shifts: BezoutShifts = NO_SHIFTS) -> GradedGroups:
    return report_n7a(d, shifts).cohomology


def report_n7b(d: N7BDiagram) -> FamilyReport:
    if d.q == 0:
        raise ProductActionError("product action, use catalog")
    _require_valid(d)
    alpha = 2 if d.n_plus == 1 and d.q % 2 != 0 else 1
    s = abs(d.q) // math.gcd(d.q, 2)
    datum = ExtensionDatum.forced(FgAbelian.cyclic(s), FgAbelian.cyclic(s))
    h2 = FgAbelian.of(1, [alpha])
    cohomology = abgroup.poincare_dual(
        abgroup.seven_manifold(h2, FgAbelian.trivial(), datum))
    return FamilyReport(
        family="N7B", cohomology=cohomology, beta=s, gamma=s,
        diagnostics={"alpha": alpha, "pi1(M_L)": s,
                     "lens order": math.lcm(d.n_plus, abs(d.q))})


def homology_n7b(d: N7BDiagram) -> GradedGroups:
    return report_n7b(d).cohomology


def report_n7c(d: N7CDiagram) -> FamilyReport:
    if d.q == 0:
        raise ProductActionError("product action, use catalog")
    _require_valid(d)
    cohomology = _cyclic_profile(FgAbelian.free(1),
                                 FgAbelian.cyclic(d.q * d.q))
    return FamilyReport(
        family="N7C", cohomology=cohomology,
        diagnostics={"lens order": abs(d.q),
                     "H4(M_L)": FgAbelian.cyclic(d.q).render()})


def homology_n7c(d: N7CDiagram) -> GradedGroups:
    return report_n7c(d).cohomology


def homology_n7d(d: N7DDiagram) -> GradedGroups:
    return _symmetric_report(d).cohomology


def homology_n7f(d: N7FDiagram) -> GradedGroups:
    return _symmetric_report(d).cohomology


def homology_n7g(d: N7GDiagram) -> GradedGroups:
    return _symmetric_report(d).cohomology


def homology_n7i(d: N7IDiagram) -> GradedGroups:
    return _symmetric_report(d).cohomology


_SYMMETRIC_FAMILIES = {
    "N7D": "S3xS2xS2",
    "N7F": "S5xS2",
    "N7G": "CP2xS3",
    "N7I": "S4xS3",
}


def _symmetric_report(d: FamilyDiagram) -> FamilyReport:
    _require_valid(d)
    return _catalog_report(d.family, _SYMMETRIC_FAMILIES[d.family])


def n7e_vectors(d: N7EDiagram, rho: RhoData,
                shifts: BezoutShifts = NO_SHIFTS) -> MvVectors:
    A, D = rho.A, rho.D
    m, n, mu, nu = d.m, d.n, d.mu, d.nu
    hm = torus.hat_coeffs(rho, "-", d.minus)
    hp = torus.hat_coeffs(rho, "+", d.plus)

    x = (D * n, -A * n, -D * m, A * m)
    y_minus = (n * hm.q_hat, -n * hm.p_hat, m * hm.q_hat, -m * hm.p_hat)
    y_plus = (n * hp.q_hat, -n * hp.p_hat, m * hp.q_hat, -m * hp.p_hat)
    row = (A * m, D * m, -A * n, -D * n)

    w1 = (n, 0, m, 0)
    w2 = (0, n, 0, m)
    w3 = (nu, 0, mu, 0)
    w4 = (0, nu, 0, mu)

    ell = math.gcd(A, D)
    cert = intlin.ext_gcd(A // ell, -(D // ell)).shifted(shifts.zeta_eta)
    zeta, eta = cert.psi, cert.phi
    completion = tuple(zeta * s + eta * t for s, t in zip(w3, w4))

    return MvVectors(x=x, y_minus=y_minus, y_plus=y_plus, row=row,
                     w1=w1, w2=w2, w3=w3, w4=w4, completion=completion,
                     mu=mu, nu=nu, zeta=zeta, eta=eta, ell=ell)


def report_n7e(d: N7EDiagram, shifts: BezoutShifts = NO_SHIFTS) \
        -> FamilyReport:
    _require_valid(d)
    minus, plus = d.minus, d.plus
    rho = torus.build_rho(minus, plus, d.h,
                          (shifts.rho_minus, shifts.rho_lens))
    h = rho.h
    vectors = n7e_vectors(d, rho, shifts)
    det4 = abs(vectors.determinant())
    ell = vectors.ell
    gamma = torus.lens_order(minus, plus, h)

    if d.q_minus * d.q_plus * d.m * d.n == 0:
        beta = 0
    else:
        numerator = det4 * h * abs(d.q_minus * d.q_plus)
        denominator = ell * abs(rho.a)
        if numerator == 0 or numerator % denominator != 0:
            raise FormulaInconsistencyError(
                f"beta = {numerator}/{denominator} is not a positive "
                f"integer")
        beta = numerator // denominator

    ell_check = math.gcd(h * d.q_minus // minus.b, h * d.q_plus // plus.b)
    if ell_check != ell:
        logger.warning(f"{d.describe()}: gcd(A, D) = {ell} differs from "
                       f"gcd(hq-/b-, hq+/b+) = {ell_check}")

    logger.info(f"{d.describe()}: beta={beta} gamma={gamma}")
    return FamilyReport(
        family="N7E",
        cohomology=_extension_profile(FgAbelian.free(2), beta, gamma),
        beta=beta, gamma=gamma,
        diagnostics={
            "a": rho.a, "h": h, "b_minus": minus.b, "b_plus": plus.b,
            "rho": str([[rho.A, rho.B], [rho.D, rho.E]]),
            "ell": ell, "ell diagnostic": ell_check,
            "det": det4, "gamma": gamma, "beta": beta,
            "H2(G/K-)": _orbit_group(minus, h * d.q_minus // minus.b),
            "H2(G/K+)": _orbit_group(plus, h * d.q_plus // plus.b),
        })


def homology_n7e(d: N7EDiagram,
                 shifts: BezoutShifts = NO_SHIFTS) -> GradedGroups:
    return report_n7e(d, shifts).cohomology


def report_n7h(d: N7HDiagram) -> FamilyReport:
    _require_valid(d)
    h = torus.finite_product_order(d.minus, d.plus)
    a_minus, a_plus = h // d.b_minus, h // d.b_plus
    order = a_minus * a_plus * abs(d.n_minus * d.n_plus)
    cohomology = _cyclic_profile(FgAbelian.free(1),
                                 FgAbelian.cyclic(order))
    return FamilyReport(
        family="N7H", cohomology=cohomology,
        profile="CP2xS3" if order == 0 else None,
        diagnostics={"h": h, "a_minus": a_minus, "a_plus": a_plus,
                     "k_minus": d.n_minus * a_minus,
                     "k_plus": d.n_plus * a_plus})


def homology_n7h(d: N7HDiagram) -> GradedGroups:
    return report_n7h(d).cohomology


def report(d: FamilyDiagram, shifts: BezoutShifts = NO_SHIFTS) \
        -> FamilyReport:
    """
    Compute the report of any diagram.

    :raises InvalidDiagramError: when validate finds violations
    :raises ProductActionError: for q = 0 in N7B and N7C
    """
    if isinstance(d, N7ADiagram):
        return report_n7a(d, shifts)
    if isinstance(d, N7BDiagram):
        return report_n7b(d)
    if isinstance(d, N7CDiagram):
        return report_n7c(d)
    if isinstance(d, N7EDiagram):
        return report_n7e(d, shifts)
    if isinstance(d, N7HDiagram):
        return report_n7h(d)
    if d.family in _SYMMETRIC_FAMILIES:
        return _symmetric_report(d)

    _require_valid(d)
    if isinstance(d, BrieskornDiagram):
        homology = catalog.brieskorn(d.d)
    elif isinstance(d, PFamilyDiagram):
        homology = catalog.p_family(d.family[-1], d.r, d.variant)
    elif isinstance(d, N6DDiagram):
        return _catalog_report("N6D", "N6D-profile")
    else:
        return _catalog_report("space", d.name)
    return FamilyReport(family=d.family,
                        cohomology=abgroup.poincare_dual(homology))


def diagnostics(d: FamilyDiagram) -> Dict[str, Diagnostic]:
    return report(d).diagnostics
