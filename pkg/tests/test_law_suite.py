"""推导律验证"""

import numpy as np
import pytest

from conftest import projection
from trioid_lab.algebra.tables import OpTable
from trioid_lab.errors import GuardError, UsageError
from trioid_lab.tools.axiom_checker import TrigroupCert, check_right_disemigroup, check_semigroup
from trioid_lab.tools.constructors import cyclic_group, pair_trisemigroup
from trioid_lab.tools.derived import PointedThreeRack, derive_three_rack
from trioid_lab.tools.law_suite import (
    run_law_suite,
    verify_conjugation_lemma,
    verify_inverse_lemma,
    verify_pair_proposition,
    verify_remarks,
    verify_theta_lemma,
)

PAIR_IDS = [f"pair.{i}" for i in range(1, 15)]


def successor(n: int) -> OpTable:
    """x∘y = x+1 mod n，不结合"""
    return OpTable([[(x + 1) % n] * n for x in range(n)])


def associative_table(n: int, kind: int) -> OpTable:
    """左投影、右投影、ℤ/n、常值 0"""
    if kind == 0:
        return projection(n, "left")
    if kind == 1:
        return projection(n, "right")
    if kind == 2:
        return cyclic_group(n)
    return OpTable(np.zeros((n, n), dtype=int))


class TestLawSuite:
    def test_small_trigroups(self, small_trigroup):
        name, T, cert = small_trigroup
        report = run_law_suite(T, cert)
        assert report.passed, f"{name}\n{report.render()}"

    def test_ids(self, t6, t6_cert):
        ids = set(run_law_suite(t6, t6_cert).law_ids)
        expected = {
            "inv.1", "inv.2", "inv.3", "inv.4", "inv.4.idem", "inv.5", "inv.6",
            "xx1.1", "xx1.2", "xx1.3", "xx1.4.i", "xx1.4.ii", "xx1.4.iii", "xx1.4.unit", "xx1.4.onto",
            "xyz.1", "xyz.2", "xyz.3", "rem.left", "rem.right",
        }
        assert ids == expected

    @pytest.mark.slow
    def test_m18(self, registry):
        assert run_law_suite(registry.table("M18"), registry.cert("M18")).passed


class TestInverseLemma:
    def test_corrupted_inverse(self, t6, t6_cert):
        inverse = list(t6_cert.inverse)
        inverse[3] = 3
        bad = TrigroupCert(t6_cert.unit, tuple(inverse), t6_cert.bar_units)
        report = verify_inverse_lemma(t6, bad)
        assert not report.passed
        cx = report.result("inv.1").counterexamples[0]
        assert cx.witness == (3,)


class TestConjugationLemma:
    def test_t6(self, t6, t6_cert):
        report = verify_conjugation_lemma(t6, t6_cert)
        assert report.passed
        assert report.result("xx1.4.onto").checked == 36

    def test_trivial(self, registry):
        assert verify_conjugation_lemma(registry.table("T4triv"), registry.cert("T4triv")).passed


class TestThetaLemma:
    def test_t6(self, t6, t6_cert):
        report = verify_theta_lemma(t6, t6_cert)
        assert report.passed
        assert report.result("xyz.3").checked == 6 ** 5

    def test_mutated_rack(self, t6, t6_cert):
        op = np.array(derive_three_rack(t6, t6_cert).op)
        op[1, 0, 2] = 2
        report = verify_theta_lemma(t6, t6_cert, PointedThreeRack(op, 0))
        assert "xyz.3" in report.failed_ids()


class TestRemarks:
    def test_left(self, t6):
        report = verify_remarks(t6.left, t6.middle, None)
        assert report.passed
        assert report.law_ids == ["rem.left"]
        assert report.notes == ("rem.right skipped: no right table",)

    def test_right(self, t6):
        report = verify_remarks(None, t6.middle, t6.right)
        assert report.passed
        assert report.law_ids == ["rem.right"]

    def test_arbitrary_magma(self, z2):
        report = verify_remarks(OpTable([[0, 1], [0, 0]]), z2, None)
        assert report.law_ids == ["rem.left"]

    def test_star_required(self, t6):
        with pytest.raises(UsageError):
            verify_remarks(t6.left, None, t6.right)


class TestPairProposition:
    def test_group(self, z2):
        report = verify_pair_proposition(z2, z2)
        assert report.passed
        assert report.law_ids == PAIR_IDS + ["prop.a", "prop.b", "prop.c", "prop.d"]
        assert report.notes == ()

    def test_arbitrary_magma(self):
        report = verify_pair_proposition(successor(3), projection(3, "left"))
        assert report.passed
        assert report.law_ids == PAIR_IDS + ["prop.a"]
        assert {note.split()[0] for note in report.notes} == {"prop.b", "prop.c", "prop.d"}

    def test_non_associative_right(self):
        report = verify_pair_proposition(successor(2), successor(2))
        assert report.law_ids == PAIR_IDS
        assert len(report.notes) == 4

    def test_left_disemigroup_only(self, z2):
        report = verify_pair_proposition(projection(2, "right"), z2)
        assert report.passed
        assert report.law_ids == PAIR_IDS + ["prop.a", "prop.c"]
        assert report.notes == (
            "prop.b skipped: input not a disemigroup",
            "prop.d skipped: input not a disemigroup",
        )

    def test_random_magmas(self):
        rng = np.random.default_rng(2)
        orders, with_prop_a = set(), 0
        for i in range(50):
            n = int(rng.integers(1, 5))
            orders.add(n)
            left = OpTable(rng.integers(0, n, size=(n, n)))
            if i % 2:
                right = OpTable(rng.integers(0, n, size=(n, n)))
            else:
                right = associative_table(n, int(rng.integers(4)))
            report = verify_pair_proposition(left, right)
            assert report.passed, report.render()
            assert report.law_ids[:14] == PAIR_IDS
            assert all(report.result(law_id).checked == n ** 6 for law_id in PAIR_IDS)

            P = pair_trisemigroup(left, right)
            assert "R1⋆⊣" not in check_right_disemigroup(P.middle, P.right).failed_ids()
            if check_semigroup(right).passed:
                assert "prop.a" in report.law_ids
                with_prop_a += 1
        assert 4 in orders
        assert with_prop_a >= 25

    def test_guard(self):
        with pytest.raises(GuardError):
            verify_pair_proposition(cyclic_group(5), cyclic_group(5))

    def test_order_mismatch(self, z2):
        with pytest.raises(UsageError):
            verify_pair_proposition(z2, cyclic_group(3))
