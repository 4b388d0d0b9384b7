"""小阶普查"""

import numpy as np
import pytest

from conftest import projection
from trioid_lab.algebra.tables import TrioidTable
from trioid_lab.errors import GuardError, TableValidationError, UsageError
from trioid_lab.tools import enumerator
from trioid_lab.tools.axiom_checker import TrigroupCert, check_trigroup
from trioid_lab.tools.constructors import cyclic_group, group_as_trigroup
from trioid_lab.tools.enumerator import (
    CENSUS_HEADER,
    StructureClass,
    automorphism_count,
    canonical_form,
    enumerate_bruteforce,
    enumerate_trioids,
    labeled_count,
    passes_class,
    write_census,
)

CLASSES = list(StructureClass)

# 阶 2 普查的回归值（按定义逐类推出，同构类个数经 Burnside 计数复核）
# class -> (同构类个数, 带标号个数)
ORDER_TWO_COUNTS = {
    StructureClass.TRISEMIGROUP: (15, 26),
    StructureClass.TRIMONOID: (7, 12),
    StructureClass.TRIGROUP: (3, 6),
}


class TestOrderOne:
    @pytest.mark.parametrize("structure", CLASSES)
    def test_single_structure(self, structure):
        row = enumerate_trioids(1, structure)
        assert row.count == 1
        assert row.summary() == f"order=1 class={structure.value} count=1"


class TestOrderTwo:
    @pytest.mark.parametrize("structure", CLASSES)
    @pytest.mark.parametrize("up_to_iso", [True, False])
    def test_backtracking_matches_bruteforce(self, structure, up_to_iso):
        fast = enumerate_trioids(2, structure, up_to_iso)
        slow = enumerate_bruteforce(2, structure, up_to_iso)
        assert fast.count == slow.count
        assert fast.representatives == slow.representatives

    def test_g2_is_a_trigroup(self, registry):
        row = enumerate_trioids(2, "trigroup")
        assert canonical_form(registry.table("G2")) in row.representatives
        assert all(isinstance(check_trigroup(rep), TrigroupCert) for rep in row.representatives)

    def test_trimonoids_are_trisemigroups(self):
        monoids = set(enumerate_trioids(2, "trimonoid").representatives)
        semigroups = set(enumerate_trioids(2, "trisemigroup").representatives)
        assert monoids <= semigroups

    @pytest.mark.parametrize("structure", CLASSES)
    def test_labeled_count(self, structure):
        iso = enumerate_trioids(2, structure, up_to_iso=True)
        labeled = enumerate_trioids(2, structure, up_to_iso=False)
        assert labeled_count(iso) == labeled.count

    @pytest.mark.parametrize("structure", CLASSES)
    def test_regression_counts(self, structure):
        iso_count, labeled = ORDER_TWO_COUNTS[structure]
        assert enumerate_trioids(2, structure).count == iso_count
        assert enumerate_trioids(2, structure, up_to_iso=False).count == labeled

    @pytest.mark.parametrize("structure", CLASSES)
    def test_labeled_tables_pass_their_class(self, structure):
        row = enumerate_trioids(2, structure, up_to_iso=False)
        assert not row.up_to_iso
        assert all(passes_class(T, structure) for T in row.representatives)

    @pytest.mark.parametrize("up_to_iso", [True, False])
    def test_output_is_rechecked(self, monkeypatch, up_to_iso):
        monkeypatch.setattr(enumerator, "passes_class", lambda T, structure: False)
        with pytest.raises(TableValidationError):
            enumerate_trioids(1, "trisemigroup", up_to_iso=up_to_iso)

    def test_workers(self):
        assert enumerate_trioids(2, "trisemigroup", workers=2) == enumerate_trioids(2, "trisemigroup")


@pytest.mark.slow
class TestOrderThree:
    def test_trisemigroup_orbits_match_labeled(self):
        iso = enumerate_trioids(3, "trisemigroup")
        labeled = enumerate_trioids(3, "trisemigroup", up_to_iso=False)
        assert labeled_count(iso) == labeled.count
        assert iso.count > ORDER_TWO_COUNTS[StructureClass.TRISEMIGROUP][0]

    def test_trigroups(self):
        row = enumerate_trioids(3, "trigroup")
        z3, _ = group_as_trigroup(cyclic_group(3))
        assert canonical_form(z3) in row.representatives
        assert all(isinstance(check_trigroup(rep), TrigroupCert) for rep in row.representatives)


class TestCanonicalForm:
    def test_relabeling_invariant(self, t6):
        assert canonical_form(t6.relabel((0, 1, 4, 3, 2, 5))) == canonical_form(t6)

    def test_drops_unit(self, t6):
        assert canonical_form(t6).unit is None

    def test_distinguishes(self, registry):
        left_zero = projection(2, "left")
        assert canonical_form(TrioidTable(left_zero, left_zero, left_zero)) != canonical_form(registry.table("G2"))

    def test_guard(self, registry):
        with pytest.raises(GuardError):
            canonical_form(registry.table("M18"))

    def test_automorphisms(self, registry):
        zero = projection(2, "left")
        assert automorphism_count(registry.table("G2")) == 1
        assert automorphism_count(TrioidTable(zero, zero, zero)) == 2


class TestGuards:
    @pytest.mark.parametrize("n", [0, 5])
    def test_order(self, n):
        with pytest.raises(GuardError):
            enumerate_trioids(n)

    def test_bruteforce_order(self):
        with pytest.raises(GuardError):
            enumerate_bruteforce(3)

    def test_unknown_class(self):
        with pytest.raises(UsageError):
            enumerate_trioids(1, "quasigroup")


class TestWriteCensus:
    def test_files(self, tmp_path):
        row = enumerate_trioids(2, "trigroup")
        census = write_census(row, tmp_path / "out")
        lines = census.read_text(encoding="utf-8").splitlines()
        assert lines == [CENSUS_HEADER, row.summary()]
        written = sorted((tmp_path / "out").glob("trigroup-n2-*.trioid"))
        assert len(written) == row.count

    def test_rows_are_merged(self, tmp_path):
        write_census(enumerate_trioids(2, "trigroup"), tmp_path)
        census = write_census(enumerate_trioids(1, "trisemigroup"), tmp_path)
        lines = census.read_text(encoding="utf-8").splitlines()
        assert lines[1] == "order=1 class=trisemigroup count=1"
        assert lines[2].startswith("order=2 class=trigroup")
        assert np.unique(lines).size == len(lines)
