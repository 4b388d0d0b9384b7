"""MCP 工具、资源与提示"""

import pytest

import trioid_server as server
from trioid_lab.algebra.axioms import TRISEMIGROUP_AXIOMS
from trioid_lab.algebra.trioid_format import parse_trioid
from trioid_lab.resources.axiom_catalog import get_resource as get_catalog
from trioid_lab.tools.derived import check_three_rack, derive_three_rack, verify_rack_solve
from trioid_lab.tools.law_suite import run_law_suite, verify_pair_proposition


class TestTools:
    def test_check_structure(self, registry):
        text = server.check_structure(registry.get_fixture("T6"))
        assert text.splitlines()[-1] == "RESULT PASS"

    def test_check_p4(self, registry):
        text = server.check_structure(registry.get_fixture("P4"), "trigroup")
        assert "FAIL inverse-missing witness=(1)" in text
        assert text.endswith("RESULT FAIL")

    def test_check_digroup_needs_unit(self, registry):
        assert server.check_structure(registry.get_fixture("P4"), "digroup").startswith("error:")

    def test_parse_error(self):
        assert server.check_structure("trioid v2\n").startswith("error: 第 1 行")

    def test_run_laws(self, registry):
        assert server.run_laws(registry.get_fixture("T4triv")).endswith("RESULT PASS")

    def test_run_laws_needs_trigroup(self, registry):
        text = server.run_laws(registry.get_fixture("P4"))
        assert text.startswith("不是三元群")

    def test_derive_rack(self, registry):
        text = server.derive_rack(registry.get_fixture("T6"))
        assert text.startswith("threerack v1\norder 6\npoint 0")
        assert "PASS 3r2" in text

    def test_solve_rack(self, registry):
        assert server.solve_rack(registry.get_fixture("T6"), 1, 0, 2) == "z=4\nverified=true"

    def test_construct(self, registry):
        text = server.construct_instance("action", m=3, e=0, h="0 1; 1 0", action="0 1 2; 0 2 1")
        assert parse_trioid(text) == registry.table("T6")
        assert "# elements:" in text

    def test_construct_invalid_field(self):
        assert server.construct_instance("matrix", p=4).startswith("error:")

    def test_construct_bad_grid(self):
        assert server.construct_instance("group", table="0 1; 1").startswith("error:")

    def test_enumerate(self):
        text = server.enumerate_census(1, "trigroup")
        assert text.splitlines()[0] == "order=1 class=trigroup count=1"
        assert "trioid v1" in text

    def test_enumerate_capped(self):
        assert server.enumerate_census(4).startswith("error:")

    def test_leibniz(self):
        lines = server.leibniz_residuals(dim=1, samples=3).splitlines()
        assert len(lines) == 5
        assert all(line.startswith("PASS ") for line in lines)

    def test_leibniz_invalid(self):
        assert server.leibniz_residuals(step=-1.0).startswith("error:")


class TestResources:
    def test_axiom(self):
        text = server.get_axiom("T4")
        assert "(x⊣y)⊥z = x⊥(y⊢z)" in text

    def test_all_axioms(self):
        assert "trisemigroup" in server.get_axiom("all")

    def test_unknown_axiom(self):
        assert server.get_axiom("nope").startswith("未知的编号")

    def test_fixture(self, registry):
        assert server.get_fixture("T6") == registry.get_fixture("T6")

    def test_all_fixtures(self):
        text = server.get_fixture("all")
        assert "**P4**: 阶 4，trisemigroup" in text

    def test_unknown_fixture(self):
        assert server.get_fixture("T7").startswith("未知的固定实例")


class TestPrompt:
    @pytest.mark.parametrize("structure", ["trisemigroup", "trimonoid", "trigroup", "rack", "leibniz"])
    def test_branches(self, structure):
        text = server.failure_review(structure)
        assert text.rstrip().endswith("说明修改哪些表项可以修复。")

    def test_distinct(self):
        assert server.failure_review("rack") != server.failure_review("leibniz")


class TestCatalog:
    def test_statements_match_axioms(self):
        catalog = get_catalog()
        for axiom in TRISEMIGROUP_AXIOMS:
            assert catalog.lookup(axiom.axiom_id)["statement"] == axiom.statement()

    def test_reported_ids_are_catalogued(self, t6, t6_cert, z2):
        catalog = get_catalog()
        R = derive_three_rack(t6, t6_cert)
        reports = [
            t6_cert.report,
            run_law_suite(t6, t6_cert),
            check_three_rack(R) + verify_rack_solve(t6, t6_cert, R),
            verify_pair_proposition(z2, z2),
        ]
        ids = {law_id for report in reports for law_id in report.law_ids}
        assert {i for i in ids if catalog.lookup(i) is None} == set()

    def test_topic(self):
        assert "| 3r1 |" in get_catalog().get_topic("rack")
        assert get_catalog().get_topic("none").startswith("未知的主题")
