# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
import itertools
import math

import numpy as np
import pytest
import yaml

from cohomology import catalog, diagrams, families, intlin, oracle, torus
from cohomology.abgroup import FgAbelian
from cohomology.diagrams import (BrieskornDiagram, N6DDiagram, N7ADiagram,
                                 N7BDiagram, N7CDiagram, N7DDiagram,
                                 N7EDiagram, N7FDiagram, N7GDiagram,
                                 N7HDiagram, N7IDiagram, PFamilyDiagram,
                                 SpaceDiagram)
from cohomology.families import BezoutShifts
from common.errors import InvalidDiagramError, ProductActionError

DERIVED_BETA = "./test/test_data/derived_beta.yml"


def _n7a(pm, qm, pp, qp, bm=1, bp=1, h=None) -> N7ADiagram:
    return N7ADiagram(p_minus=pm, q_minus=qm, b_minus=bm,
                      p_plus=pp, q_plus=qp, b_plus=bp, h=h)


def _n7e(m, n, mu, nu, pm, qm, pp, qp, bm=1, bp=1) -> N7EDiagram:
    return N7EDiagram(m=m, n=n, mu=mu, nu=nu, p_minus=pm, q_minus=qm,
                      b_minus=bm, p_plus=pp, q_plus=qp, b_plus=bp)


def _random_slope(rng, bound):
    while True:
        p, q = (int(v) for v in rng.integers(-bound, bound + 1, 2))
        if math.gcd(p, q) == 1:
            return p, q


def _random_n7a(seed, count, bound=3, max_order=3):
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        (pm, qm), (pp, qp) = _random_slope(rng, bound), \
            _random_slope(rng, bound)
        bm, bp = (int(v) for v in rng.integers(1, max_order + 1, 2))
        d = _n7a(pm, qm, pp, qp, bm, bp)
        if families.validate(d) or d.equal_circles:
            continue
        found.append(d)
    return found


def _random_n7e(seed, count, bound=3, max_order=3):
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        m, n = _random_slope(rng, 2)
        cert = intlin.ext_gcd(m, n)
        (pm, qm), (pp, qp) = _random_slope(rng, bound), \
            _random_slope(rng, bound)
        bm, bp = (int(v) for v in rng.integers(1, max_order + 1, 2))
        d = _n7e(m, n, cert.phi, cert.psi, pm, qm, pp, qp, bm, bp)
        if families.validate(d):
            continue
        found.append(d)
    return found


def _basis_partners(n_minus, n_plus):
    """m-, m+ with (m-, n-), (m+, n+) a basis of Z^2."""
    for m_minus, m_plus in itertools.product(range(-4, 5), repeat=2):
        if abs(m_minus * n_plus - n_minus * m_plus) == 1:
            return m_minus, m_plus
    raise ValueError(f"no basis through n = {n_minus}, {n_plus}")


def _random_unimodular(rng):
    while True:
        u = [[int(v) for v in rng.integers(-3, 4, 2)] for _ in range(2)]
        if abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) == 1:
            return u


class TestValidate:

    def test_n7a(self):
        assert families.validate(_n7a(1, 0, 0, 1)) == []
        assert families.validate(_n7a(2, 4, 0, 1)) == \
            ["gcd(p_minus, q_minus) = 2, not 1"]
        assert families.validate(_n7a(1, 0, 0, 1, bm=0)) == \
            ["b_minus = 0 must be >= 1"]

    def test_n7a_wrong_h(self):
        violations = families.validate(_n7a(1, 0, 0, 1, 2, 3, h=5))
        assert violations == \
            ["h does not match generated finite subgroup: 5 != 6"]

    def test_finite_part_on_other_circle(self):
        d = _n7a(-2, 1, 0, 1, bm=2, bp=1)
        assert families.validate(d) == ["b_plus = 1 but |H n K+0| = 2"]
        with pytest.raises(InvalidDiagramError):
            families.report_n7a(d)
        e = _n7e(1, 1, 0, 1, -2, 1, 0, 1, bm=2, bp=1)
        assert "b_plus = 1 but |H n K+0| = 2" in families.validate(e)

    def test_equal_circles_need_equal_orders(self):
        assert families.validate(_n7a(1, 2, -1, -2, bm=1, bp=3)) == \
            ["b_minus = 1 but |H n K-0| = 3"]
        assert families.validate(_n7a(1, 2, -1, -2, bm=3, bp=3)) == []

    def test_n7h_finite_parts(self):
        d = N7HDiagram(m_minus=1, n_minus=1, m_plus=1, n_plus=-1,
                       b_minus=2, b_plus=1)
        assert families.validate(d) == ["b_plus = 1 but |H n K+0| = 2"]

    def test_n7b(self):
        assert families.validate(N7BDiagram(p=1, q=5, n_minus=4,
                                            n_plus=1)) == []
        assert families.validate(N7BDiagram(p=1, q=4, n_minus=4,
                                            n_plus=1)) == \
            ["q even puts (-1, 1) in H-, forcing n_plus = 2"]
        assert families.validate(N7BDiagram(p=1, q=5, n_minus=6,
                                            n_plus=1)) == \
            ["n_minus = 6 must be a positive multiple of 4"]
        assert families.validate(N7BDiagram(p=2, q=5, n_minus=4,
                                            n_plus=3)) == \
            ["n_plus = 3 must be 1 or 2", "p = 2 is not +-n_minus/4 mod "
                                          "n_minus"]

    def test_n7c(self):
        assert families.validate(N7CDiagram(p=1, q=3, n=2)) == []
        assert families.validate(N7CDiagram(p=1, q=3, n=3)) == \
            ["gcd(q, n) = 3, not 1"]

    def test_n7e(self):
        assert families.validate(_n7e(1, 1, 0, 1, 0, 1, 1, 1)) == []
        assert families.validate(_n7e(1, 1, 1, 1, 0, 1, 1, 1)) == \
            ["m nu - n mu = 0, not 1"]
        assert families.validate(_n7e(1, 1, 0, 1, 0, 1, 0, -1)) == \
            ["K- equals K+"]

    def test_n7h(self):
        d = N7HDiagram(m_minus=1, n_minus=0, m_plus=1, n_plus=0,
                       b_minus=1, b_plus=1)
        assert families.validate(d) == \
            ["n_minus and n_plus both zero make K- equal K+"]

    def test_catalog_inputs(self):
        assert families.validate(BrieskornDiagram(d=0)) == \
            ["d = 0 must be >= 1"]
        assert families.validate(
            PFamilyDiagram(family="P7B", r=3, variant="Z2")) == \
            ["the Z2 variant exists only for P7A"]
        assert families.validate(SpaceDiagram(name="S2xQ3")) == \
            ["unknown atom Q3"]

    def test_invalid_report(self):
        with pytest.raises(InvalidDiagramError, match="invalid N7C diagram"):
            families.report(N7CDiagram(p=1, q=3, n=3))


class TestN7A:

    def test_coordinate_circles(self):
        result = families.report_n7a(_n7a(1, 0, 0, 1))
        assert result.diagnostics["det"] == 1
        assert result.cohomology.group(4).render() == "0"
        assert result.cohomology.group(5) == FgAbelian.free(2)
        assert not result.cohomology.has_open_extension()

    def test_open_extension(self):
        result = families.report_n7a(_n7a(1, 0, 1, 2))
        assert (result.beta, result.gamma) == (2, 2)
        assert result.diagnostics["det"] == 4
        assert result.cohomology.has_open_extension()
        datum = result.cohomology.extension_slot.datum
        assert datum.sub == datum.quot == FgAbelian.cyclic(2)

    def test_antipodal(self):
        result = families.report_n7a(_n7a(1, 1, 1, -1))
        assert (result.beta, result.gamma) == (0, 2)
        slot = result.cohomology.extension_slot
        assert slot.degree == 4
        assert slot.datum.render(4) == "0 -> Z -> H4 -> Z/2 -> 0 (open)"

    def test_equal_circles(self):
        result = families.report_n7a(_n7a(1, 1, -1, -1))
        assert result.profile == "S3xS2xS2"
        assert result.cohomology == catalog.cohomology_profile("S3xS2xS2")

    def test_homology_is_seven_manifold(self):
        for d in _random_n7a(41, 40):
            homology = families.report_n7a(d).homology
            assert homology.manifold_violations() == []
            assert homology.group(2) == FgAbelian.free(2)

    def test_bezout_shift_invariance(self):
        for d in _random_n7a(43, 200):
            expected = families.report_n7a(d)
            for t in range(-3, 4):
                shifts = BezoutShifts(rho_minus=t, rho_lens=-t, ab=t,
                                      de=t, mu_nu=-t)
                result = families.report_n7a(d, shifts)
                assert (result.beta, result.gamma) == \
                    (expected.beta, expected.gamma)

    def test_unimodular_invariance(self):
        rng = np.random.default_rng(47)
        for d in _random_n7a(53, 30):
            rho = torus.build_rho(d.minus, d.plus)
            expected = oracle.n7a_h4_order(d)
            for _ in range(5):
                u = _random_unimodular(rng)
                composed = torus.compose_rho(rho, u, d.minus, d.plus)
                assert oracle.n7a_h4_order(d, rho=composed) == expected
                assert oracle.image_circle_order(composed, d.minus,
                                                 d.plus) == \
                    families.report_n7a(d).gamma

    def test_joint_negation(self):
        for d in _random_n7a(59, 40):
            expected = families.report_n7a(d).cohomology
            flipped = d.model_copy(update={"p_plus": -d.p_plus,
                                           "q_plus": -d.q_plus})
            assert families.report_n7a(flipped).cohomology == expected
            flipped = d.model_copy(update={"p_minus": -d.p_minus,
                                           "q_minus": -d.q_minus})
            assert families.report_n7a(flipped).cohomology == expected


class TestN7B:

    def test_odd_q(self):
        result = families.report_n7b(N7BDiagram(p=1, q=5, n_minus=4,
                                                n_plus=1))
        cohomology = result.cohomology
        assert cohomology.group(5).render() == "Z + Z/2"
        assert cohomology.extension_slot.datum.render(4) == \
            "0 -> Z/5 -> H4 -> Z/5 -> 0 (open)"
        assert result.diagnostics["alpha"] == 2

    def test_fundamental_group_order(self):
        assert families.report_n7b(
            N7BDiagram(p=1, q=4, n_minus=4, n_plus=2)).beta == 2
        assert families.report_n7b(
            N7BDiagram(p=1, q=3, n_minus=4, n_plus=2)).beta == 3

    def test_product_action(self):
        with pytest.raises(ProductActionError, match="product action"):
            families.report(N7BDiagram(p=1, q=0, n_minus=4, n_plus=1))

    @pytest.mark.parametrize("q, n_plus", [
        (q, n_plus) for q in range(-9, 10) for n_plus in (1, 2)
        if q != 0 and (q % 2 or n_plus == 2)
    ])
    def test_exact_groups(self, q, n_plus):
        result = families.report_n7b(N7BDiagram(p=1, q=q, n_minus=4,
                                                n_plus=n_plus))
        s = abs(q) // math.gcd(q, 2)
        alpha = 2 if n_plus == 1 and q % 2 else 1
        assert (result.beta, result.gamma) == (s, s)
        assert result.diagnostics["alpha"] == alpha
        cohomology = result.cohomology
        assert cohomology.group(5) == FgAbelian.of(1, [alpha])
        assert cohomology.group(4) == FgAbelian.of(0, [s, s])
        assert cohomology.has_open_extension() == (s > 1)
        if s > 1:
            datum = cohomology.extension_slot.datum
            assert datum.sub == datum.quot == FgAbelian.cyclic(s)


class TestN7C:

    @pytest.mark.parametrize("q, expected", [
        (1, "0"), (2, "Z/4"), (3, "Z/9"), (5, "Z/25"), (-2, "Z/4"),
        (-5, "Z/25"),
    ])
    def test_h4(self, q, expected):
        d = N7CDiagram(p=1, q=q, n=1)
        assert families.homology_n7c(d).group(4).render() == expected

    def test_h5(self):
        d = N7CDiagram(p=1, q=3, n=2)
        assert families.homology_n7c(d).group(5) == FgAbelian.free(1)

    def test_product_action(self):
        with pytest.raises(ProductActionError):
            families.homology_n7c(N7CDiagram(p=1, q=0, n=1))


class TestSymmetricFamilies:

    def test_profiles(self):
        cases = [
            (N7DDiagram(m=1, n=0, mu=0, nu=1, p=2, a=1), "S3xS2xS2"),
            (N7FDiagram(p=1, a=1, n=2), "S5xS2"),
            (N7GDiagram(), "CP2xS3"),
            (N7IDiagram(), "S4xS3"),
        ]
        for d, name in cases:
            result = families.report(d)
            assert result.profile == name
            assert result.cohomology == catalog.cohomology_profile(name)

    def test_functions(self):
        assert families.homology_n7g(N7GDiagram()) == \
            catalog.cohomology_profile("CP2xS3")
        assert families.homology_n7i(N7IDiagram()) == \
            catalog.cohomology_profile("S4xS3")


class TestN7E:

    def test_finite_h4(self):
        result = families.report_n7e(_n7e(1, 1, 0, 1, 0, 1, 1, 1))
        assert result.cohomology.group(4).render() == "Z/2"

    def test_q_minus_zero(self):
        result = families.report_n7e(_n7e(1, 1, 0, 1, 1, 0, 0, 1))
        assert result.beta == 0
        assert result.cohomology.group(4).render() == "Z"

    def test_m_zero(self):
        result = families.report_n7e(_n7e(0, 1, -1, 0, 0, 1, 1, 1))
        assert result.beta == 0

    def test_invalid(self):
        with pytest.raises(InvalidDiagramError):
            families.report_n7e(_n7e(1, 1, 1, 1, 0, 1, 1, 1))

    def test_bezout_shift_invariance(self):
        for d in _random_n7e(61, 200):
            expected = families.report_n7e(d)
            for t in range(-3, 4):
                shifts = BezoutShifts(rho_minus=t, rho_lens=t, zeta_eta=-t)
                result = families.report_n7e(d, shifts)
                assert (result.beta, result.gamma) == \
                    (expected.beta, expected.gamma)

    def test_matches_oracle(self):
        for d in _random_n7e(67, 30):
            result = families.report_n7e(d)
            assert oracle.n7e_h4_order(d) == result.beta * result.gamma


class TestN7H:

    def test_coprime_circles(self):
        d = N7HDiagram(m_minus=1, n_minus=2, m_plus=1, n_plus=3,
                       b_minus=1, b_plus=1)
        assert families.homology_n7h(d).group(4).render() == "Z/6"

    def test_finite_parts(self):
        d = N7HDiagram(m_minus=1, n_minus=1, m_plus=0, n_plus=1,
                       b_minus=2, b_plus=2)
        result = families.report_n7h(d)
        assert result.diagnostics["h"] == 4
        assert result.cohomology.group(4).render() == "Z/4"

    def test_infinite(self):
        d = N7HDiagram(m_minus=1, n_minus=0, m_plus=1, n_plus=1,
                       b_minus=1, b_plus=1)
        result = families.report_n7h(d)
        assert result.profile == "CP2xS3"
        assert result.cohomology.group(4) == FgAbelian.free(1)
        assert result.cohomology == catalog.cohomology_profile("CP2xS3")

    @pytest.mark.parametrize("n_minus, n_plus, a_minus, a_plus", [
        (n_minus, n_plus, a_minus, a_plus)
        for n_minus, n_plus in itertools.product(range(5), repeat=2)
        if math.gcd(n_minus, n_plus) == 1
        for a_minus, a_plus in itertools.product(range(1, 4), repeat=2)
    ])
    def test_h4_grid(self, n_minus, n_plus, a_minus, a_plus):
        m_minus, m_plus = _basis_partners(n_minus, n_plus)
        # on a basis H = H- x H+, so a- = b+ and a+ = b-
        d = N7HDiagram(m_minus=m_minus, n_minus=n_minus, m_plus=m_plus,
                       n_plus=n_plus, b_minus=a_plus, b_plus=a_minus)
        assert families.validate(d) == []
        result = families.report_n7h(d)
        assert (result.diagnostics["a_minus"],
                result.diagnostics["a_plus"]) == (a_minus, a_plus)
        assert result.cohomology.group(4) == \
            FgAbelian.cyclic(a_minus * a_plus * n_minus * n_plus)


def _derived_results():
    with open(DERIVED_BETA) as f:
        return yaml.safe_load(f)["results"]


class TestDerivedBeta:

    @pytest.mark.parametrize("entry", _derived_results(),
                             ids=lambda e: e["diagram"]["family"])
    def test_report(self, entry):
        d = diagrams.parse_diagram(entry["diagram"])
        result = families.report(d)
        assert (result.beta, result.gamma) == \
            (entry["beta"], entry["gamma"])

    @pytest.mark.parametrize("entry", _derived_results(),
                             ids=lambda e: e["diagram"]["family"])
    def test_oracle_orders(self, entry):
        d = diagrams.parse_diagram(entry["diagram"])
        h4_order = oracle.n7a_h4_order(d) if d.family == "N7A" \
            else oracle.n7e_h4_order(d)
        rho = oracle.lattice_rho(d.minus, d.plus)
        assert h4_order == entry["h4_order"]
        assert oracle.image_circle_order(rho, d.minus, d.plus) == \
            entry["gamma"]
        assert entry["beta"] * entry["gamma"] == h4_order

    def test_command_input(self):
        # the recorded command runs on the same diagrams
        with open(DERIVED_BETA) as f:
            command = yaml.safe_load(f)["command"]
        path = command.split("--input ")[1].split()[0]
        located = diagrams.parse_diagram_file(path)
        assert [x.diagram for x in located] == \
            [diagrams.parse_diagram(e["diagram"])
             for e in _derived_results()]


class TestCatalogInputs:

    def test_brieskorn(self):
        result = families.report(BrieskornDiagram(d=7))
        assert result.cohomology.group(4) == FgAbelian.cyclic(7)

    def test_p_family(self):
        result = families.report(PFamilyDiagram(family="P7A", r=3,
                                                variant="Z2"))
        assert result.homology.group(2).render() == "Z + Z/2"
        assert result.homology.group(3) == FgAbelian.cyclic(3)

    def test_space(self):
        result = families.report(SpaceDiagram(name="S2xS5"))
        assert result.profile == "S2xS5"
        assert result.cohomology.dim == 7

    def test_n6d(self):
        result = families.report(N6DDiagram(p=1))
        assert result.cohomology.dim == 6
        assert result.cohomology.group(2) == FgAbelian.free(2)

    def test_diagnostics(self):
        found = families.diagnostics(_n7a(1, 0, 0, 1))
        assert found["h"] == 1
        assert found["H2(G/K-)"] == "Z"
