"""实例构造器"""

import numpy as np
import pytest
from pydantic import ValidationError

from trioid_lab.algebra.tables import OpTable
from trioid_lab.errors import ConstructionError, GuardError, ParseError
from trioid_lab.tools.axiom_checker import TrigroupCert, check_trigroup, check_trisemigroup
from trioid_lab.tools.constructors import (
    ActionSpec,
    FieldSpec,
    action_trigroup,
    cyclic_group,
    group_as_trigroup,
    group_structure,
    is_prime,
    matrix_trigroup,
    pair_trisemigroup,
    parse_action_spec,
    parse_grid,
)


def trivial_group() -> OpTable:
    return OpTable([[0]])


class TestGroupStructure:
    def test_cyclic(self):
        one, inv = group_structure(cyclic_group(5).entries)
        assert one == 0
        assert list(inv) == [0, 4, 3, 2, 1]

    @pytest.mark.parametrize("table, message", [
        ([[0, 1], [0, 0]], "结合律"),
        ([[1, 1], [1, 1]], "单位元"),
        ([[0, 0], [0, 1]], "元素 0 没有逆元"),
    ])
    def test_not_a_group(self, table, message):
        with pytest.raises(ConstructionError, match=message):
            group_structure(np.array(table))

    @pytest.mark.parametrize("p, expected", [(1, False), (2, True), (9, False), (13, True)])
    def test_is_prime(self, p, expected):
        assert is_prime(p) is expected


class TestPair:
    def test_fixture(self, z2, p4):
        T = pair_trisemigroup(z2, z2)
        assert T == p4
        assert T.unit is None
        assert T.name(3) == "(1,1)"

    def test_entries(self, p4):
        assert p4.left(3, 1) == 2
        assert p4.right(3, 1) == 2
        assert p4.middle(3, 1) == 2
        assert p4.right(1, 3) == 0

    def test_any_input_is_accepted(self):
        T = pair_trisemigroup(OpTable([[0, 1], [0, 0]]), OpTable([[1, 1], [0, 0]]))
        assert T.order == 4

    def test_order_mismatch(self, z2):
        with pytest.raises(ConstructionError):
            pair_trisemigroup(z2, cyclic_group(3))

    def test_guard(self):
        big = cyclic_group(65)
        with pytest.raises(GuardError):
            pair_trisemigroup(big, big)


class TestAction:
    def test_t6(self, t6, t6_cert):
        assert t6.order == 6
        assert t6.unit == 0
        assert t6_cert.inverse == (0, 1, 0, 1, 0, 1)

    def test_non_transitive_note(self, caplog):
        spec = ActionSpec(3, 0, trivial_group(), np.array([[0, 1, 2]]))
        assert not spec.transitive
        T, cert = action_trigroup(spec)
        assert T.order == 3
        assert "action not transitive on M-{e}" in cert.report.notes
        assert any("不可迁" in r.getMessage() for r in caplog.records)

    def test_transitive(self, z2):
        spec = ActionSpec(3, 0, z2, np.array([[0, 1, 2], [0, 2, 1]]))
        assert spec.transitive
        _, cert = action_trigroup(spec)
        assert cert.report.notes == ()

    @pytest.mark.parametrize("m, e, action, message", [
        (2, 2, [[0, 1], [1, 0]], "不动点"),
        (2, 0, [[0, 1, 2], [0, 1, 2]], "形状"),
        (2, 0, [[0, 5], [0, 1]], "条目"),
        (2, 0, [[1, 0], [0, 1]], "1·v = v"),
        (3, 0, [[0, 1, 2], [0, 2, 2]], "h·\\(k·v\\)"),
        (2, 0, [[0, 1], [1, 0]], "h·e = e"),
    ])
    def test_invalid_action(self, z2, m, e, action, message):
        with pytest.raises(ConstructionError, match=message):
            action_trigroup(ActionSpec(m, e, z2, np.array(action)))

    def test_h_not_a_group(self):
        spec = ActionSpec(2, 0, OpTable([[0, 1], [0, 0]]), np.array([[0, 1], [0, 1]]))
        with pytest.raises(ConstructionError, match="H"):
            action_trigroup(spec)

    def test_closed_form_certificate(self):
        n = 65
        T, cert = action_trigroup(ActionSpec(1, 0, cyclic_group(n), np.zeros((n, 1), dtype=int)))
        assert T.order == n
        assert "closed-form certificate" in cert.report.notes
        assert cert.inverse[1] == n - 1

    def test_parse_action_spec(self, t6):
        spec = parse_action_spec(3, 0, "0 1; 1 0", "0 1 2; 0 2 1")
        T, _ = action_trigroup(spec)
        assert T == t6


class TestMatrix:
    def test_m18(self, registry):
        T, cert = matrix_trigroup(FieldSpec(p=3, n=2))
        assert T == registry.table("M18")
        assert cert.unit == 0
        assert cert.inverse == tuple(i % 2 for i in range(18))

    def test_smallest(self):
        T, cert = matrix_trigroup(FieldSpec(p=2))
        assert T.order == 2
        assert isinstance(check_trigroup(T), TrigroupCert)

    @pytest.mark.parametrize("p", [1, 4, 6])
    def test_non_prime(self, p):
        with pytest.raises(ValidationError):
            FieldSpec(p=p)

    def test_too_large(self):
        with pytest.raises(ConstructionError):
            matrix_trigroup(FieldSpec(p=2, n=13))


class TestGroup:
    def test_z3(self):
        T, cert = group_as_trigroup(cyclic_group(3))
        assert T.unit == 0
        assert cert.inverse == (0, 2, 1)
        assert check_trisemigroup(T).passed

    def test_not_a_group(self):
        with pytest.raises(ConstructionError):
            group_as_trigroup(OpTable([[1, 1], [1, 1]]))


class TestParseGrid:
    def test_semicolons(self):
        assert parse_grid("0 1; 1 0") == [[0, 1], [1, 0]]

    def test_commas_and_newlines(self):
        assert parse_grid("0,1\n1,0\n") == [[0, 1], [1, 0]]

    @pytest.mark.parametrize("text, line", [("0 x; 1 0", 1), ("0 1; 1", 2), ("  ", 1)])
    def test_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_grid(text)
        assert info.value.line == line
