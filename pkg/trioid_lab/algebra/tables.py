"""载体与运算表、同态映射和检查报告

元素统一用 0..n-1 的整数下标表示；运算表约定 entries[i][j] = i ∘ j（行为左操作数）。
所有值构造后不可变。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Iterable, Sequence

import numpy as np

from trioid_lab.errors import TableValidationError, UsageError

ElementId = int


class Op(StrEnum):
    """三个二元运算：左 ⊢、中 ⊥、右 ⊣"""

    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"

    @property
    def glyph(self) -> str:
        return {"left": "⊢", "middle": "⊥", "right": "⊣"}[self.value]


def as_op(op: Op | str) -> Op:
    """把字符串规范化为 Op，未知名称视为用法错误"""
    try:
        return Op(op)
    except ValueError:
        raise UsageError(f"未知的运算: {op!r}（可选 left / middle / right）") from None


def _frozen_array(data, ndim: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != ndim:
        raise TableValidationError(f"需要 {ndim} 维数组，得到 {arr.ndim} 维")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class OpTable:
    """n×n 运算表"""

    entries: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.entries, 2)
        n = arr.shape[0]
        if n < 1 or arr.shape != (n, n):
            raise TableValidationError(f"运算表必须是非空方阵，得到形状 {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            raise TableValidationError(f"运算表条目必须在 [0, {n}) 内")
        object.__setattr__(self, "entries", arr)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __call__(self, a: ElementId, b: ElementId) -> ElementId:
        return int(self.entries[a, b])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def relabel(self, perm: Sequence[int]) -> OpTable:
        """按置换 perm（旧下标 → 新下标）搬运运算表"""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        return OpTable(p[self.entries[np.ix_(inv, inv)]])

    def restrict(self, elements: Sequence[int]) -> np.ndarray:
        """限制到子集上的子表（条目仍是原下标）"""
        idx = np.asarray(elements, dtype=np.int64)
        return self.entries[np.ix_(idx, idx)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpTable):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.order, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"OpTable({self.rows()})"


@dataclass(frozen=True)
class TrioidTable:
    """共享载体上的三张运算表 (A, ⊢, ⊥, ⊣)，可选一个指定单位元"""

    left: OpTable
    middle: OpTable
    right: OpTable
    unit: ElementId | None = None
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        orders = {self.left.order, self.middle.order, self.right.order}
        if len(orders) != 1:
            raise TableValidationError(f"三张运算表的阶数不一致: {sorted(orders)}")
        if self.names is not None and len(self.names) != self.order:
            raise TableValidationError("元素名称个数与阶数不一致")
        if self.unit is not None:
            u = self.unit
            if not 0 <= u < self.order:
                raise TableValidationError(f"单位元 {u} 越界")
            ids = np.arange(self.order)
            if not (np.array_equal(self.left.entries[u, :], ids)
                    and np.array_equal(self.right.entries[:, u], ids)):
                raise TableValidationError(f"声明的单位元 {u} 不满足 1⊢x = x = x⊣1")

    @classmethod
    def from_arrays(cls, left, middle, right, unit: ElementId | None = None,
                    names: Iterable[str] | None = None) -> TrioidTable:
        return cls(OpTable(left), OpTable(middle), OpTable(right), unit,
                   tuple(names) if names is not None else None)

    @property
    def order(self) -> int:
        return self.left.order

    def table(self, op: Op | str) -> OpTable:
        return getattr(self, as_op(op).value)

    def tables(self) -> dict[Op, OpTable]:
        return {Op.LEFT: self.left, Op.MIDDLE: self.middle, Op.RIGHT: self.right}

    def relabel(self, perm: Sequence[int]) -> TrioidTable:
        """按置换（旧下标 → 新下标）整体重新编号"""
        unit = None if self.unit is None else int(perm[self.unit])
        names = None
        if self.names is not None:
            names = tuple(self.names[i] for i in np.argsort(np.asarray(perm)))
        return TrioidTable(self.left.relabel(perm), self.middle.relabel(perm),
                           self.right.relabel(perm), unit, names)

    def name(self, x: ElementId) -> str:
        return self.names[x] if self.names is not None else str(x)

    def check_index(self, *xs: ElementId) -> None:
        for x in xs:
            if not isinstance(x, (int, np.integer)) or not 0 <= x < self.order:
                raise UsageError(f"元素下标 {x!r} 不在 [0, {self.order}) 内")


def apply(T: TrioidTable, op: Op | str, a: ElementId, b: ElementId) -> ElementId:
    """返回所选运算表的 entries[a][b]"""
    T.check_index(a, b)
    return T.table(op)(a, b)


@dataclass(frozen=True)
class MorphismMap:
    """全定义映射 A → B，images[x] 是 x 的像"""

    source_order: int
    target_order: int
    images: tuple[ElementId, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if len(self.images) != self.source_order:
            raise UsageError(f"映射长度 {len(self.images)} 与源阶数 {self.source_order} 不一致")
        if any(not 0 <= v < self.target_order for v in self.images):
            raise UsageError(f"映射的像必须在 [0, {self.target_order}) 内")

    @classmethod
    def identity(cls, n: int) -> MorphismMap:
        return cls(n, n, tuple(range(n)))

    def __call__(self, x: ElementId) -> ElementId:
        return self.images[x]

    @property
    def is_bijection(self) -> bool:
        return self.source_order == self.target_order and len(set(self.images)) == self.source_order

    def inverse(self) -> MorphismMap:
        if not self.is_bijection:
            raise UsageError("只有双射才有逆映射")
        inv = [0] * self.source_order
        for x, y in enumerate(self.images):
            inv[y] = x
        return MorphismMap(self.target_order, self.source_order, tuple(inv))


# ==================== 检查报告 ====================

def _render_witness(witness: tuple[int, ...]) -> str:
    return "(" + ",".join(str(w) for w in witness) + ")"


@dataclass(frozen=True)
class Counterexample:
    """一条反例：公理编号、见证元组以及两侧的取值"""

    axiom_id: str
    witness: tuple[ElementId, ...]
    lhs: int
    rhs: int

    def render(self) -> str:
        return f"FAIL {self.axiom_id} witness={_render_witness(self.witness)} lhs={self.lhs} rhs={self.rhs}"


@dataclass(frozen=True)
class LawResult:
    """单个公理编号的检查结果；seed 不为 None 表示随机采样模式"""

    law_id: str
    checked: int
    counterexamples: tuple[Counterexample, ...] = ()
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list[str]:
        if self.passed:
            line = f"PASS {self.law_id} checked={self.checked}"
            if self.seed is not None:
                line += f" sampled seed={self.seed}"
            return [line]
        return [cx.render() for cx in self.counterexamples]


@dataclass(frozen=True)
class CheckReport:
    """若干公理编号的检查结果；passed 当且仅当没有任何反例"""

    results: tuple[LawResult, ...] = ()
    notes: tuple[str, ...] = ()

    @classmethod
    def of(cls, *results: LawResult, notes: Iterable[str] = ()) -> CheckReport:
        return cls(tuple(results), tuple(notes))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counterexamples(self) -> list[Counterexample]:
        return [cx for r in self.results for cx in r.counterexamples]

    @property
    def law_ids(self) -> list[str]:
        return [r.law_id for r in self.results]

    def result(self, law_id: str) -> LawResult:
        for r in self.results:
            if r.law_id == law_id:
                return r
        raise KeyError(law_id)

    def failed_ids(self) -> set[str]:
        return {cx.axiom_id for cx in self.counterexamples}

    def __add__(self, other: CheckReport) -> CheckReport:
        return CheckReport(self.results + other.results, self.notes + other.notes)

    def with_note(self, note: str) -> CheckReport:
        return CheckReport(self.results, self.notes + (note,))

    def lines(self) -> list[str]:
        return [line for r in self.results for line in r.lines()]

    def render(self) -> str:
        return "\n".join(self.lines())
