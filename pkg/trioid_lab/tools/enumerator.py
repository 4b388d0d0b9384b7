"""小阶 trisemigroup / trimonoid / trigroup 的枚举

回溯按 ⊥、⊢、⊣ 的顺序逐格填表，每填一格就检查所有因此变得可求值的公理实例；
任务按 ⊥ 第一行的取值切分，可以并行执行，合并后按规范形排序。
阶数 ≤ 2 时另有不做剪枝的暴力枚举作为对照。
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import numpy as np

from trioid_lab.algebra.axioms import TRISEMIGROUP_AXIOMS, Term, TernaryAxiom
from trioid_lab.algebra.tables import TrioidTable
from trioid_lab.algebra.trioid_format import serialize_trioid
from trioid_lab.config import (
    BRUTEFORCE_ORDER_LIMIT,
    CANONICAL_ORDER_LIMIT,
    ENUMERATION_ORDER_LIMIT,
)
from trioid_lab.errors import GuardError, TableValidationError, UsageError
from trioid_lab.tools.axiom_checker import (
    TrigroupCert,
    check_trigroup,
    check_trimonoid,
    check_trisemigroup,
    find_bar_units,
)

logger = logging.getLogger(__name__)

# 填表顺序：⊥ 参与的交叉公理最多，先填
FILL_ORDER = ("⊥", "⊢", "⊣")

Raw = tuple[tuple[tuple[int, ...], ...], ...]


class StructureClass(StrEnum):
    TRISEMIGROUP = "trisemigroup"
    TRIMONOID = "trimonoid"
    TRIGROUP = "trigroup"


def as_structure_class(value: "StructureClass | str") -> StructureClass:
    try:
        return StructureClass(value)
    except ValueError:
        choices = ", ".join(c.value for c in StructureClass)
        raise UsageError(f"未知的结构类别: {value!r}（可选 {choices}）") from None


@dataclass(frozen=True)
class CensusRow:
    """
    一行普查结果

    up_to_iso 为真时 representatives 是两两不同构的规范形，count 为其个数；
    否则 representatives 是全部带标号的表。
    """

    order: int
    structure_class: StructureClass
    count: int
    up_to_iso: bool
    representatives: tuple[TrioidTable, ...]

    def summary(self) -> str:
        return f"order={self.order} class={self.structure_class.value} count={self.count}"


# ==================== 类别判定 ====================

def passes_class(T: TrioidTable, structure: StructureClass) -> bool:
    if structure is StructureClass.TRISEMIGROUP:
        return check_trisemigroup(T).passed
    if structure is StructureClass.TRIMONOID:
        return check_trimonoid(T).passed
    return isinstance(check_trigroup(T), TrigroupCert)


def _leaf_passes(T: TrioidTable, structure: StructureClass) -> bool:
    """搜索叶子上的类别过滤；公理已由搜索保证"""
    if structure is StructureClass.TRISEMIGROUP:
        return True
    if structure is StructureClass.TRIMONOID:
        return bool(find_bar_units(T))
    return isinstance(check_trigroup(T), TrigroupCert)


# ==================== 回溯搜索 ====================

class _Search:
    """三张部分填好的表，-1 表示未赋值"""

    def __init__(self, n: int):
        self.n = n
        self.tables = {g: [[-1] * n for _ in range(n)] for g in FILL_ORDER}
        # preimage[g][v]：已赋值且 g[x][y] = v 的 (x, y)
        self.preimage = {g: [[] for _ in range(n)] for g in FILL_ORDER}
        self.cells = [(g, a, b) for g in FILL_ORDER for a in range(n) for b in range(n)]
        self.by_glyph: dict[str, list[TernaryAxiom]] = {
            g: [ax for ax in TRISEMIGROUP_AXIOMS if g in ax.symbols] for g in FILL_ORDER
        }

    def assign(self, g: str, a: int, b: int, v: int) -> None:
        self.tables[g][a][b] = v
        self.preimage[g][v].append((a, b))

    def unassign(self, g: str, a: int, b: int) -> None:
        v = self.tables[g][a][b]
        self.preimage[g][v].remove((a, b))
        self.tables[g][a][b] = -1

    def _term(self, t: Term, x: int, y: int, z: int) -> int:
        inner, outer = self.tables[t.inner], self.tables[t.outer]
        if t.grouped_left:
            v = inner[x][y]
            return -1 if v < 0 else outer[v][z]
        v = inner[y][z]
        return -1 if v < 0 else outer[x][v]

    def _instances(self, t: Term, g: str, a: int, b: int):
        """用到格子 g[a][b] 的项实例 (x, y, z)"""
        n = self.n
        if t.grouped_left:
            if t.inner == g:
                for z in range(n):
                    yield a, b, z
            if t.outer == g:
                for x, y in self.preimage[t.inner][a]:
                    yield x, y, b
        else:
            if t.inner == g:
                for x in range(n):
                    yield x, a, b
            if t.outer == g:
                for y, z in self.preimage[t.inner][b]:
                    yield a, y, z

    def consistent(self, g: str, a: int, b: int) -> bool:
        for axiom in self.by_glyph[g]:
            for term in (axiom.lhs, axiom.rhs):
                for x, y, z in self._instances(term, g, a, b):
                    lhs = self._term(axiom.lhs, x, y, z)
                    if lhs < 0:
                        continue
                    rhs = self._term(axiom.rhs, x, y, z)
                    if rhs >= 0 and lhs != rhs:
                        return False
        return True

    def snapshot(self) -> Raw:
        return tuple(tuple(tuple(row) for row in self.tables[g]) for g in ("⊢", "⊥", "⊣"))

    def run(self, start: int, emit) -> None:
        if start == len(self.cells):
            emit(self.snapshot())
            return
        g, a, b = self.cells[start]
        for v in range(self.n):
            self.assign(g, a, b, v)
            if self.consistent(g, a, b):
                self.run(start + 1, emit)
            self.unassign(g, a, b)


def _to_table(raw: Raw) -> TrioidTable:
    left, middle, right = raw
    return TrioidTable.from_arrays(left, middle, right)


def _run_task(args: tuple[int, tuple[int, ...], str]) -> list[Raw]:
    """以 ⊥ 第一行为 prefix 的子树；返回通过类别过滤的叶子"""
    n, prefix, structure = args
    structure = StructureClass(structure)
    search = _Search(n)
    for b, v in enumerate(prefix):
        search.assign("⊥", 0, b, v)
        if not search.consistent("⊥", 0, b):
            return []
    found: list[Raw] = []

    def emit(raw: Raw) -> None:
        if _leaf_passes(_to_table(raw), structure):
            found.append(raw)

    search.run(len(prefix), emit)
    return found


# ==================== 规范形与自同构 ====================

def _key(T: TrioidTable) -> tuple[int, ...]:
    return tuple(np.concatenate([T.left.entries.ravel(), T.middle.entries.ravel(),
                                 T.right.entries.ravel()]).tolist())


def canonical_form(T: TrioidTable) -> TrioidTable:
    """
    在全部 n! 个重新编号中取 (⊢, ⊥, ⊣) 条目序列字典序最小者

    去掉指定单位元与名称；canonical_form(A) == canonical_form(B) 当且仅当 A ≅ B。

    Raises:
        GuardError: n > 8
    """
    n = T.order
    if n > CANONICAL_ORDER_LIMIT:
        raise GuardError("规范形的阶数", CANONICAL_ORDER_LIMIT, n)
    bare = TrioidTable(T.left, T.middle, T.right)
    best, best_key = None, None
    for perm in itertools.permutations(range(n)):
        candidate = bare.relabel(perm)
        key = _key(candidate)
        if best_key is None or key < best_key:
            best, best_key = candidate, key
    return best


def automorphism_count(T: TrioidTable) -> int:
    """同时保持三张表的置换个数"""
    n = T.order
    if n > CANONICAL_ORDER_LIMIT:
        raise GuardError("自同构计数的阶数", CANONICAL_ORDER_LIMIT, n)
    tables = [t.entries for t in T.tables().values()]
    count = 0
    for perm in itertools.permutations(range(n)):
        sigma = np.asarray(perm)
        if all(np.array_equal(sigma[t], t[np.ix_(sigma, sigma)]) for t in tables):
            count += 1
    return count


def _finish(n: int, structure: StructureClass, labeled: list[TrioidTable], up_to_iso: bool) -> CensusRow:
    """排序、可选地按同构归并，并在输出前逐个复核类别"""
    if up_to_iso:
        forms = {_key(c): c for c in (canonical_form(T) for T in labeled)}
        reps = [forms[k] for k in sorted(forms)]
    else:
        reps = sorted(labeled, key=_key)
    for rep in reps:
        if not passes_class(rep, structure):
            raise TableValidationError(f"代表元未通过 {structure.value} 复核:\n{serialize_trioid(rep)}")
    return CensusRow(n, structure, len(reps), up_to_iso, tuple(reps))


def enumerate_trioids(
    n: int,
    structure: StructureClass | str = StructureClass.TRISEMIGROUP,
    up_to_iso: bool = True,
    workers: int = 1,
) -> CensusRow:
    """
    回溯枚举阶为 n 的全部结构

    Args:
        n: 阶数，1 ≤ n ≤ 4（n = 4 耗时很长）
        structure: trisemigroup / trimonoid / trigroup
        up_to_iso: 为真时只保留同构类的规范形
        workers: 大于 1 时用进程池并行处理各子树

    Raises:
        GuardError: n 超出上限
    """
    structure = as_structure_class(structure)
    if not 1 <= n <= ENUMERATION_ORDER_LIMIT:
        raise GuardError("枚举的阶数", ENUMERATION_ORDER_LIMIT, n)
    if n == ENUMERATION_ORDER_LIMIT:
        logger.warning("阶数 %d 的枚举可能需要很长时间", n)

    tasks = [(n, prefix, structure.value) for prefix in itertools.product(range(n), repeat=n)]
    logger.info("枚举 order=%d class=%s：%d 个子任务", n, structure.value, len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, tasks))
    else:
        chunks = [_run_task(task) for task in tasks]
    labeled = [_to_table(raw) for chunk in chunks for raw in chunk]
    logger.info("找到 %d 个带标号的结构", len(labeled))
    return _finish(n, structure, labeled, up_to_iso)


def enumerate_bruteforce(
    n: int,
    structure: StructureClass | str = StructureClass.TRISEMIGROUP,
    up_to_iso: bool = True,
) -> CensusRow:
    """逐个检查全部 (n^(n²))³ 个表三元组，不剪枝"""
    structure = as_structure_class(structure)
    if not 1 <= n <= BRUTEFORCE_ORDER_LIMIT:
        raise GuardError("暴力枚举的阶数", BRUTEFORCE_ORDER_LIMIT, n)
    shape = (n, n)
    tables = [np.array(cells).reshape(shape) for cells in itertools.product(range(n), repeat=n * n)]
    labeled = [
        T for T in (TrioidTable.from_arrays(l, m, r) for l, m, r in itertools.product(tables, repeat=3))
        if passes_class(T, structure)
    ]
    return _finish(n, structure, labeled, up_to_iso)


def labeled_count(row: CensusRow) -> int:
    """由同构类代表元推出带标号结构的个数：Σ n!/|Aut|"""
    if not row.up_to_iso:
        return row.count
    return sum(math.factorial(row.order) // automorphism_count(rep) for rep in row.representatives)


# ==================== 普查输出 ====================

CENSUS_HEADER = "# machine-derived census; counts are regression values"


def write_census(row: CensusRow, directory: Path | str) -> Path:
    """
    写出每个代表元的 `.trioid` 文件，并把汇总行并入 census.txt

    Returns:
        census.txt 的路径
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for i, rep in enumerate(row.representatives):
        path = out / f"{row.structure_class.value}-n{row.order}-{i:04d}.trioid"
        path.write_text(serialize_trioid(rep), encoding="utf-8")

    census = out / "census.txt"
    rows: dict[tuple[int, str], str] = {}
    if census.exists():
        for line in census.read_text(encoding="utf-8").splitlines():
            if line.startswith("order="):
                fields = dict(part.split("=", 1) for part in line.split())
                rows[(int(fields["order"]), fields["class"])] = line
    rows[(row.order, row.structure_class.value)] = row.summary()
    lines = [CENSUS_HEADER] + [rows[k] for k in sorted(rows)]
    census.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info("写出 %d 个代表元到 %s", len(row.representatives), out)
    return census
