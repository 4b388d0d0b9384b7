"""三元群同态检查与同构搜索"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from trioid_lab.algebra.scan import scan_identity
from trioid_lab.algebra.tables import (
    CheckReport,
    Counterexample,
    LawResult,
    MorphismMap,
    Op,
    TrioidTable,
)
from trioid_lab.errors import UsageError

if TYPE_CHECKING:
    from trioid_lab.tools.axiom_checker import TrigroupCert

logger = logging.getLogger(__name__)


def is_morphism(
    f: MorphismMap,
    A: TrioidTable,
    B: TrioidTable,
    cert_a: TrigroupCert | None = None,
    cert_b: TrigroupCert | None = None,
) -> CheckReport:
    """
    检查 f 是否为三元群同态

    f 保持三个运算；给出两侧证书时还检查 f(1_A) = 1_B、f(x⁻¹) = f(x)⁻¹
    以及 f(𝔘_A) ⊆ 𝔘_B（后两者分别报告）。

    Raises:
        UsageError: f 的阶数与 A、B 不匹配
    """
    if f.source_order != A.order or f.target_order != B.order:
        raise UsageError(
            f"映射 {f.source_order}→{f.target_order} 与表的阶数 {A.order}→{B.order} 不匹配")
    img = np.asarray(f.images, dtype=np.int64)
    n = A.order
    results = []
    for op in Op:
        a, b = A.table(op).entries, B.table(op).entries
        results.append(scan_identity(
            f"hom-{op.glyph}", 2, n,
            lambda x, y, a=a: img[a[x, y]],
            lambda x, y, b=b: b[img[x], img[y]],
        ))

    if cert_a is not None and cert_b is not None:
        unit_cx = ()
        if f(cert_a.unit) != cert_b.unit:
            unit_cx = (Counterexample("hom-unit", (cert_a.unit,), f(cert_a.unit), cert_b.unit),)
        results.append(LawResult("hom-unit", 1, unit_cx))

        inv_a = np.asarray(cert_a.inverse, dtype=np.int64)
        inv_b = np.asarray(cert_b.inverse, dtype=np.int64)
        results.append(scan_identity(
            "hom-inverse", 1, n,
            lambda x: img[inv_a[x]],
            lambda x: inv_b[img[x]],
        ))

        bar_cx = tuple(
            Counterexample("hom-bar-units", (e,), f(e), -1)
            for e in sorted(cert_a.bar_units)
            if f(e) not in cert_b.bar_units
        )
        results.append(LawResult("hom-bar-units", len(cert_a.bar_units), bar_cx))
    return CheckReport(tuple(results))


def _profiles(T: TrioidTable) -> list[tuple]:
    """同构不变量：每个元素在各表中的出现次数与幂等性"""
    prof = []
    for x in range(T.order):
        key = []
        for table in T.tables().values():
            e = table.entries
            key += [int((e == x).sum()), int(e[x, x] == x), int((e[x, :] == np.arange(T.order)).all())]
        prof.append(tuple(key))
    return prof


def find_isomorphism(A: TrioidTable, B: TrioidTable) -> MorphismMap | None:
    """
    寻找把 A 的三张表同时搬运到 B 上的双射

    在全部 n! 个双射中回溯搜索；每次指定一个像后沿运算闭包传播强制赋值，
    并用元素不变量剪枝。

    Returns:
        MorphismMap，不存在时返回 None

    Raises:
        UsageError: 阶数不同
    """
    if A.order != B.order:
        raise UsageError(f"阶数不同: {A.order} 与 {B.order}")
    n = A.order
    pa, pb = _profiles(A), _profiles(B)
    if sorted(pa) != sorted(pb):
        return None
    ta = [t.entries for t in A.tables().values()]
    tb = [t.entries for t in B.tables().values()]

    mapping = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def assign(x: int, fx: int) -> list[int] | None:
        changes: list[int] = []
        stack = [(x, fx)]
        while stack:
            a, fa = stack.pop()
            if mapping[a] != -1:
                if mapping[a] != fa:
                    break
                continue
            if used[fa] or pa[a] != pb[fa]:
                break
            mapping[a] = fa
            used[fa] = True
            assigned.append(a)
            changes.append(a)
            for b in list(assigned):
                fb = mapping[b]
                for s, t in zip(ta, tb):
                    stack.append((int(s[a, b]), int(t[fa, fb])))
                    stack.append((int(s[b, a]), int(t[fb, fa])))
        else:
            return changes
        for a in changes:
            used[mapping[a]] = False
            mapping[a] = -1
            assigned.remove(a)
        return None

    def search() -> bool:
        try:
            x = mapping.index(-1)
        except ValueError:
            return True
        for fx in range(n):
            if used[fx] or pa[x] != pb[fx]:
                continue
            changes = assign(x, fx)
            if changes is None:
                continue
            if search():
                return True
            for a in changes:
                used[mapping[a]] = False
                mapping[a] = -1
                assigned.remove(a)
        return False

    if not search():
        return None
    result = MorphismMap(n, n, tuple(mapping))
    logger.debug("找到同构 %s", result.images)
    return result
