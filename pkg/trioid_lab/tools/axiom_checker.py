"""公理检查器

对运算表穷举求值，判定其满足哪一层公理系统：
半群、左/右 disemigroup、disemigroup、trisemigroup（11 条公理）、trimonoid、digroup、trigroup。
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from trioid_lab.algebra.axioms import (
    GLYPH_TO_OP,
    TRISEMIGROUP_AXIOMS,
    TernaryAxiom,
    associativity,
    axiom_by_id,
    disemigroup_axioms,
    left_disemigroup_axioms,
    right_disemigroup_axioms,
)
from trioid_lab.algebra.scan import scan_identity
from trioid_lab.algebra.tables import (
    CheckReport,
    Counterexample,
    ElementId,
    LawResult,
    OpTable,
    TrioidTable,
)
from trioid_lab.config import COUNTEREXAMPLE_LIMIT, EXHAUSTIVE_ORDER_LIMIT, SAMPLE_SEED, TABULATION_LIMIT
from trioid_lab.errors import GuardError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrigroupCert:
    """三元群证书：指定的 bar-unit、全体逆元以及 bar-unit 集合 𝔘_A"""

    unit: ElementId
    inverse: tuple[ElementId, ...]
    bar_units: frozenset[ElementId]
    report: CheckReport = field(default_factory=CheckReport, compare=False)

    def inv(self, x: ElementId) -> ElementId:
        return self.inverse[x]


def _guard(n: int) -> None:
    if n > EXHAUSTIVE_ORDER_LIMIT:
        raise GuardError("穷举检查的阶数", EXHAUSTIVE_ORDER_LIMIT, n)


def _glyph_ops(T: TrioidTable) -> dict[str, np.ndarray]:
    return {glyph: T.table(op).entries for glyph, op in GLYPH_TO_OP.items()}


def _check_axioms(axioms: list[TernaryAxiom] | tuple[TernaryAxiom, ...],
                  ops: dict[str, np.ndarray], **scan_options) -> CheckReport:
    n = next(iter(ops.values())).shape[0]
    results = []
    for axiom in axioms:
        results.append(scan_identity(
            axiom.axiom_id, 3, n,
            lambda x, y, z, a=axiom: a.lhs.evaluate(ops, x, y, z),
            lambda x, y, z, a=axiom: a.rhs.evaluate(ops, x, y, z),
            **scan_options,
        ))
    return CheckReport(tuple(results))


def _same_order(*tables: OpTable) -> int:
    orders = {t.order for t in tables}
    if len(orders) != 1:
        raise UsageError(f"运算表阶数不一致: {sorted(orders)}")
    n = orders.pop()
    _guard(n)
    return n


# ==================== 半群与 disemigroup ====================

def check_semigroup(t: OpTable) -> CheckReport:
    """(x∘y)∘z = x∘(y∘z) 对全部 n³ 个三元组成立"""
    _same_order(t)
    axiom = associativity("∘")
    return CheckReport((scan_identity(
        "ass", 3, t.order,
        lambda x, y, z: axiom.lhs.evaluate({"∘": t.entries}, x, y, z),
        lambda x, y, z: axiom.rhs.evaluate({"∘": t.entries}, x, y, z),
    ),))


def check_left_disemigroup(left: OpTable, star: OpTable) -> CheckReport:
    """(⊢, ⋆) 均结合且满足 L1、L2"""
    _same_order(left, star)
    return _check_axioms(left_disemigroup_axioms("⊢", "⋆"),
                         {"⊢": left.entries, "⋆": star.entries})


def check_right_disemigroup(star: OpTable, right: OpTable) -> CheckReport:
    """(⋆, ⊣) 均结合且满足 R1、R2"""
    _same_order(star, right)
    return _check_axioms(right_disemigroup_axioms("⋆", "⊣"),
                         {"⋆": star.entries, "⊣": right.entries})


def check_disemigroup(left: OpTable, right: OpTable) -> CheckReport:
    """既是左 disemigroup 又是右 disemigroup"""
    _same_order(left, right)
    return _check_axioms(disemigroup_axioms("⊢", "⊣"),
                         {"⊢": left.entries, "⊣": right.entries})


# ==================== trisemigroup / trimonoid ====================

def check_trisemigroup(T: TrioidTable) -> CheckReport:
    """
    穷举检查 (T1)–(T4) 的全部公理

    每条失败都带公理编号（ass-⊢ … T4），每个编号最多 10 条反例。
    """
    _guard(T.order)
    return _check_axioms(TRISEMIGROUP_AXIOMS, _glyph_ops(T))


def spot_check_trisemigroup(T: TrioidTable, samples: int, seed: int = SAMPLE_SEED) -> CheckReport:
    """大表的抽样检查：每条公理随机抽取 samples 个三元组"""
    if T.order > TABULATION_LIMIT:
        raise GuardError("抽样检查的阶数", TABULATION_LIMIT, T.order)
    report = _check_axioms(TRISEMIGROUP_AXIOMS, _glyph_ops(T),
                           threshold=0, samples=samples, seed=seed)
    return report.with_note(f"spot-check samples={samples} seed={seed}")


def digroup_bar_units(left: OpTable, right: OpTable) -> frozenset[ElementId]:
    """只用 (⊢, ⊣) 扫描 bar-unit：e⊢x = x = x⊣e"""
    ids = np.arange(left.order)
    rows_ok = (left.entries == ids[None, :]).all(axis=1)
    cols_ok = (right.entries == ids[:, None]).all(axis=0)
    return frozenset(int(e) for e in np.flatnonzero(rows_ok & cols_ok))


def find_bar_units(T: TrioidTable) -> frozenset[ElementId]:
    """𝔘_A = {e : e⊢x = x = x⊣e 对所有 x}"""
    return digroup_bar_units(T.left, T.right)


def _bar_unit_exists(T: TrioidTable, bars: frozenset[ElementId]) -> LawResult:
    cx = () if bars else (Counterexample("no-bar-unit", (), -1, -1),)
    return LawResult("bar-unit", T.order, cx)


def check_trimonoid(T: TrioidTable) -> CheckReport:
    """trisemigroup 且至少有一个 bar-unit"""
    report = check_trisemigroup(T)
    return report + CheckReport.of(_bar_unit_exists(T, find_bar_units(T)))


# ==================== 逆元 ====================

def _unit_laws(left: np.ndarray, right: np.ndarray, u: ElementId) -> list[LawResult]:
    """指定单位元 u 的 u⊢x = x 与 x⊣u = x，见证为 (u, x)"""
    n = left.shape[0]
    results = []
    for law_id, values in (("bar-unit-⊢", left[u, :]), ("bar-unit-⊣", right[:, u])):
        bad = np.flatnonzero(values != np.arange(n))[:COUNTEREXAMPLE_LIMIT]
        results.append(LawResult(law_id, n, tuple(
            Counterexample(law_id, (u, int(x)), int(values[x]), int(x)) for x in bad)))
    return results


def _inverse_scan(T: TrioidTable, u: ElementId) -> tuple[tuple[int, ...] | None, list[LawResult]]:
    """对每个 x 找满足四个逆元等式的 y；返回 (逆元映射或 None, 结果)"""
    L, M, R = T.left.entries, T.middle.entries, T.right.entries
    ok = (L == u) & (R.T == u) & (M == u) & (M.T == u)
    counts = ok.sum(axis=1)
    missing, ambiguous = [], []
    for x in range(T.order):
        if counts[x] == 0 and len(missing) < COUNTEREXAMPLE_LIMIT:
            missing.append(Counterexample("inverse-missing", (x,), -1, u))
        elif counts[x] > 1 and len(ambiguous) < COUNTEREXAMPLE_LIMIT:
            y1, y2 = (int(y) for y in np.flatnonzero(ok[x])[:2])
            logger.warning("元素 %d 在单位元 %d 下有多个逆元候选 %d, %d", x, u, y1, y2)
            ambiguous.append(Counterexample("inverse-ambiguous", (x,), y1, y2))
    results = [
        LawResult("inverse-missing", T.order, tuple(missing)),
        LawResult("inverse-ambiguous", T.order, tuple(ambiguous)),
    ]
    if missing or ambiguous:
        return None, results
    return tuple(int(y) for y in ok.argmax(axis=1)), results


def check_trigroup(T: TrioidTable, unit: ElementId | None = None) -> TrigroupCert | CheckReport:
    """
    检查 T 是否为三元群

    Args:
        T: 运算表
        unit: 指定的 bar-unit；为 None 时按下标顺序尝试每个 bar-unit，
              取第一个能给出全体逆元的

    Returns:
        成功时返回 TrigroupCert（其 report 含全部 PASS 结果），否则返回失败的 CheckReport
    """
    report = check_trisemigroup(T)
    if not report.passed:
        return report
    bars = find_bar_units(T)
    report = report + CheckReport.of(_bar_unit_exists(T, bars))
    if not bars:
        return report

    if unit is not None:
        T.check_index(unit)
        unit_results = _unit_laws(T.left.entries, T.right.entries, unit)
        if not all(r.passed for r in unit_results):
            return report + CheckReport(tuple(unit_results))
        candidates = [unit]
    else:
        candidates = sorted(bars)

    first_failure = None
    for u in candidates:
        inverse, results = _inverse_scan(T, u)
        if inverse is not None:
            logger.info("三元群证书: 单位元 %d，|𝔘_A| = %d", u, len(bars))
            return TrigroupCert(u, inverse, bars, report + CheckReport(tuple(results)))
        if first_failure is None:
            first_failure = results
    return report + CheckReport(tuple(first_failure))


def check_digroup(left: OpTable, right: OpTable, unit: ElementId) -> CheckReport:
    """
    disemigroup 公理、1⊢x = x = x⊣1，且每个 x 都有 x⁻¹ 使 x⊢x⁻¹ = 1 = x⁻¹⊣x
    """
    n = _same_order(left, right)
    if not 0 <= unit < n:
        raise UsageError(f"单位元 {unit} 不在 [0, {n}) 内")
    report = check_disemigroup(left, right)
    L, R = left.entries, right.entries
    ok = (L == unit) & (R.T == unit)
    missing = tuple(
        Counterexample("digroup-inverse", (int(x),), -1, unit)
        for x in np.flatnonzero(~ok.any(axis=1))[:COUNTEREXAMPLE_LIMIT]
    )
    return report + CheckReport((*_unit_laws(L, R, unit), LawResult("digroup-inverse", n, missing)))


# ==================== 反例复核 ====================

def reevaluate(T: TrioidTable, cx: Counterexample) -> bool:
    """
    对着运算表重新求值一条反例

    Returns:
        反例确实违反其公理、且记录的 lhs/rhs 与重新求值一致时为 True

    Raises:
        UsageError: 不认识的公理编号
    """
    L, M, R = T.left.entries, T.middle.entries, T.right.entries
    axiom = axiom_by_id(cx.axiom_id)
    if axiom is not None:
        x, y, z = cx.witness
        ops = _glyph_ops(T)
        lhs = int(axiom.lhs.evaluate(ops, x, y, z))
        rhs = int(axiom.rhs.evaluate(ops, x, y, z))
        return lhs != rhs and (lhs, rhs) == (cx.lhs, cx.rhs)
    if cx.axiom_id == "bar-unit-⊢":
        u, x = cx.witness
        return int(L[u, x]) != x and int(L[u, x]) == cx.lhs
    if cx.axiom_id == "bar-unit-⊣":
        u, x = cx.witness
        return int(R[x, u]) != x and int(R[x, u]) == cx.lhs
    if cx.axiom_id == "no-bar-unit":
        return not find_bar_units(T)
    u = cx.rhs
    if cx.axiom_id in ("inverse-missing", "inverse-ambiguous", "digroup-inverse"):
        (x,) = cx.witness
        if cx.axiom_id == "inverse-ambiguous":
            u = None
        if cx.axiom_id == "digroup-inverse":
            return not ((L[x, :] == u) & (R[:, x] == u)).any()
        if u is not None:
            return not ((L[x, :] == u) & (R[:, x] == u) & (M[x, :] == u) & (M[:, x] == u)).any()
        # 两个不同的逆元候选：对某个 bar-unit 同时满足四个等式
        y1, y2 = cx.lhs, cx.rhs
        for e in find_bar_units(T):
            both = all(L[x, y] == e and R[y, x] == e and M[x, y] == e and M[y, x] == e for y in (y1, y2))
            if both and y1 != y2:
                return True
        return False
    raise UsageError(f"无法复核的公理编号: {cx.axiom_id}")


def check_bar_units_via_digroup(T: TrioidTable) -> CheckReport:
    """
    逐个元素按定义 e⊢x = x = x⊣e 重新求 bar-unit，与 find_bar_units 的向量化扫描比较

    只用底层 digroup (⊢, ⊣) 的两张表，⊥ 不参与。
    """
    full = find_bar_units(T)
    left, right = T.left.rows(), T.right.rows()
    n = T.order
    by_definition = frozenset(
        e for e in range(n)
        if all(left[e][x] == x and right[x][e] == x for x in range(n))
    )
    cx = tuple(
        Counterexample("bar-unit-digroup", (e,), int(e in full), int(e in by_definition))
        for e in sorted(full ^ by_definition)
    )
    return CheckReport.of(LawResult("bar-unit-digroup", n, cx))
