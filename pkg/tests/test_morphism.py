"""同态检查与同构搜索"""

import pytest

from conftest import projection
from trioid_lab.algebra.morphism import find_isomorphism, is_morphism
from trioid_lab.algebra.tables import MorphismMap, TrioidTable
from trioid_lab.errors import UsageError
from trioid_lab.tools.axiom_checker import TrigroupCert, check_trigroup
from trioid_lab.tools.constructors import group_as_trigroup
from trioid_lab.tools.derived import inverse_group_J, phi


class TestIsMorphism:
    def test_identity(self, t6, t6_cert):
        report = is_morphism(MorphismMap.identity(6), t6, t6, t6_cert, t6_cert)
        assert report.passed
        assert set(report.law_ids) == {"hom-⊢", "hom-⊥", "hom-⊣", "hom-unit", "hom-inverse", "hom-bar-units"}

    def test_phi_into_j(self, t6, t6_cert):
        result = phi(t6, t6_cert)
        assert result.report.passed
        assert result.into_j.images == (0, 1, 0, 1, 0, 1)

    def test_phi_checked_directly(self, t6, t6_cert):
        result = phi(t6, t6_cert)
        target, target_cert = group_as_trigroup(inverse_group_J(t6, t6_cert).table)
        assert is_morphism(result.into_j, t6, target, t6_cert, target_cert).passed

    def test_constant_map_fails(self, t6, t6_cert):
        report = is_morphism(MorphismMap(6, 6, (1,) * 6), t6, t6, t6_cert, t6_cert)
        assert not report.passed
        assert "hom-bar-units" in report.failed_ids()
        assert "hom-unit" in report.failed_ids()

    def test_order_mismatch(self, t6, registry):
        with pytest.raises(UsageError):
            is_morphism(MorphismMap.identity(6), t6, registry.table("G2"))


class TestFindIsomorphism:
    def test_reflexive(self, t6):
        f = find_isomorphism(t6, t6)
        assert f is not None
        assert is_morphism(f, t6, t6).passed

    def test_swapped_labels(self, t6):
        perm = (0, 1, 4, 3, 2, 5)
        relabeled = t6.relabel(perm)
        f = find_isomorphism(t6, relabeled)
        assert f is not None and f.is_bijection
        assert is_morphism(f, t6, relabeled).passed
        transported = t6.relabel(f.images)
        assert transported.tables() == relabeled.tables()

    def test_non_isomorphic(self, registry):
        assert find_isomorphism(registry.table("T4triv"), registry.table("P4")) is None

    def test_different_orders(self, registry):
        with pytest.raises(UsageError):
            find_isomorphism(registry.table("G2"), registry.table("T6"))

    @pytest.mark.parametrize("perm", [(0, 1, 4, 3, 2, 5), (5, 4, 3, 2, 1, 0), (1, 0, 3, 2, 5, 4)])
    def test_inverse_is_isomorphism(self, t6, perm):
        B = t6.relabel(perm)
        f = find_isomorphism(t6, B)
        assert f is not None
        assert is_morphism(f, t6, B).passed
        assert is_morphism(f.inverse(), B, t6).passed

    def test_inverse_preserves_certificates(self, t6, t6_cert):
        B = t6.relabel((2, 3, 0, 1, 4, 5))
        f = find_isomorphism(t6, B)
        assert f is not None
        cert_b = check_trigroup(B, unit=f(t6_cert.unit))
        assert isinstance(cert_b, TrigroupCert)
        assert is_morphism(f, t6, B, t6_cert, cert_b).passed
        assert is_morphism(f.inverse(), B, t6, cert_b, t6_cert).passed

    def test_group_against_left_zero(self, registry):
        zero = projection(2, "left")
        left_zero = TrioidTable(zero, zero, zero)
        assert find_isomorphism(registry.table("G2"), left_zero) is None
        assert find_isomorphism(left_zero, registry.table("G2")) is None
