"""由三元群导出的结构

共轭 [x,y,z] = (x⊥y)⊢z⊣(y⁻¹⊥x⁻¹)、以 1 为基点的 3-rack 及其求解公式、
逆元集合 J 上的群，以及核为 𝔘_A 的满同态 φ(x) = (x⁻¹)⁻¹。
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from trioid_lab.algebra.morphism import is_morphism
from trioid_lab.algebra.scan import scan_identity
from trioid_lab.algebra.tables import (
    CheckReport,
    Counterexample,
    ElementId,
    LawResult,
    MorphismMap,
    OpTable,
    TrioidTable,
)
from trioid_lab.config import COUNTEREXAMPLE_LIMIT, RACK_ORDER_LIMIT
from trioid_lab.errors import ConstructionError, GuardError, ParseError, TableValidationError
from trioid_lab.tools.axiom_checker import TrigroupCert, find_bar_units
from trioid_lab.tools.constructors import group_as_trigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointedThreeRack:
    """n×n×n 的三元运算表 op[x][y][z] = [x,y,z] 与基点"""

    op: np.ndarray
    point: ElementId

    def __post_init__(self):
        arr = np.array(self.op, dtype=np.int64)
        n = arr.shape[0] if arr.ndim == 3 else 0
        if n < 1 or arr.shape != (n, n, n):
            raise TableValidationError(f"3-rack 表必须是 n×n×n，得到形状 {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            raise TableValidationError(f"3-rack 条目必须在 [0, {n}) 内")
        if not 0 <= self.point < n:
            raise TableValidationError(f"基点 {self.point} 越界")
        arr.setflags(write=False)
        object.__setattr__(self, "op", arr)

    @property
    def order(self) -> int:
        return self.op.shape[0]

    def __call__(self, x: ElementId, y: ElementId, z: ElementId) -> ElementId:
        return int(self.op[x, y, z])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointedThreeRack):
            return NotImplemented
        return self.point == other.point and np.array_equal(self.op, other.op)

    def __hash__(self) -> int:
        return hash((self.point, self.op.tobytes()))


# ==================== 共轭 ====================

def _inv(cert: TrigroupCert) -> np.ndarray:
    return np.asarray(cert.inverse, dtype=np.int64)


def conjugation(T: TrioidTable, cert: TrigroupCert, x: ElementId, y: ElementId, z: ElementId) -> ElementId:
    """[x,y,z]，按 ((x⊥y)⊢z)⊣(y⁻¹⊥x⁻¹) 的顺序求值"""
    T.check_index(x, y, z)
    L, M, R = T.left.entries, T.middle.entries, T.right.entries
    inv = cert.inverse
    return int(R[L[M[x, y], z], M[inv[y], inv[x]]])


def conjugation_table(T: TrioidTable, cert: TrigroupCert) -> np.ndarray:
    """全部 n³ 个 [x,y,z]"""
    L, M, R = T.left.entries, T.middle.entries, T.right.entries
    inv = _inv(cert)
    theta = M
    # tail[x, y] = y⁻¹ ⊥ x⁻¹
    tail = M[np.ix_(inv, inv)].T
    z = np.arange(T.order)
    return R[L[theta[:, :, None], z[None, None, :]], tail[:, :, None]]


def conjugation_cross_check(T: TrioidTable, cert: TrigroupCert) -> CheckReport:
    """((x⊥y)⊢z)⊣r 与 (x⊥y)⊢(z⊣r) 两种结合方式逐项比较，r = y⁻¹⊥x⁻¹"""
    L, M, R = T.left.entries, T.middle.entries, T.right.entries
    inv = _inv(cert)
    return CheckReport.of(scan_identity(
        "conj-assoc", 3, T.order,
        lambda x, y, z: R[L[M[x, y], z], M[inv[y], inv[x]]],
        lambda x, y, z: L[M[x, y], R[z, M[inv[y], inv[x]]]],
    ))


def derive_three_rack(T: TrioidTable, cert: TrigroupCert) -> PointedThreeRack:
    """制表得到以 cert.unit 为基点的 3-rack"""
    if T.order > RACK_ORDER_LIMIT:
        raise GuardError("3-rack 制表的阶数", RACK_ORDER_LIMIT, T.order)
    if logger.isEnabledFor(logging.DEBUG):
        cross = conjugation_cross_check(T, cert)
        if not cross.passed:
            logger.debug("共轭的两种结合方式不一致:\n%s", cross.render())
    return PointedThreeRack(conjugation_table(T, cert), cert.unit)


# ==================== 3-rack 检查 ====================

def check_three_rack(R: PointedThreeRack) -> CheckReport:
    """
    (3r1) 自分配、(3r2) 末位唯一可解、(3r3) 基点条件

    (3r2) 的反例见证为 (x, y, b)，lhs 为解的个数，rhs 为 1。
    """
    n = R.order
    op = R.op
    self_dist = scan_identity(
        "3r1", 5, n,
        lambda x1, x2, y1, y2, z: op[x1, x2, op[y1, y2, z]],
        lambda x1, x2, y1, y2, z: op[op[x1, x2, y1], op[x1, x2, y2], op[x1, x2, z]],
    )

    x, y = np.indices((n, n))
    offsets = ((x * n + y) * n)[:, :, None] + op
    counts = np.bincount(offsets.ravel(), minlength=n ** 3).reshape(n, n, n)
    solvable = tuple(
        Counterexample("3r2", (int(a), int(b), int(c)), int(counts[a, b, c]), 1)
        for a, b, c in np.argwhere(counts != 1)[:COUNTEREXAMPLE_LIMIT]
    )

    p = R.point
    point_left = scan_identity("3r3-point-left", 1, n, lambda z: op[p, p, z], lambda z: z)
    point_right = scan_identity("3r3-point-right", 2, n, lambda a, b: op[a, b, p], lambda a, b: p)
    return CheckReport((self_dist, LawResult("3r2", n ** 3, solvable), point_left, point_right))


def rack_solve(T: TrioidTable, cert: TrigroupCert, x: ElementId, y: ElementId, b: ElementId) -> ElementId:
    """[x,y,z] = b 的唯一解 z₀ = θ⁻¹⊢b⊣θ，θ = x⊥y"""
    T.check_index(x, y, b)
    theta = int(T.middle.entries[x, y])
    return int(T.right.entries[T.left.entries[cert.inverse[theta], b], theta])


def verify_rack_solve(T: TrioidTable, cert: TrigroupCert, R: PointedThreeRack | None = None) -> CheckReport:
    """对全部 (x, y, b) 检查 [x,y,θ⁻¹⊢b⊣θ] = b"""
    op = R.op if R is not None else conjugation_table(T, cert)
    L, M, Rt = T.left.entries, T.middle.entries, T.right.entries
    inv = _inv(cert)

    def solved(x, y, b):
        theta = M[x, y]
        return op[x, y, Rt[L[inv[theta], b], theta]]

    return CheckReport.of(scan_identity("rack-solve", 3, T.order, solved, lambda x, y, b: b))


# ==================== J 与 φ ====================

@dataclass(frozen=True)
class InverseGroup:
    """J = {x⁻¹}；table 以 elements 中的位置为下标，检查失败时为 None"""

    elements: tuple[ElementId, ...]
    table: OpTable | None
    report: CheckReport = field(compare=False)

    def position(self, x: ElementId) -> int:
        return self.elements.index(x)


def inverse_group_J(T: TrioidTable, cert: TrigroupCert) -> InverseGroup:
    """
    J 上三个运算限制后逐项相同且构成群

    Returns:
        InverseGroup；report 中 J.closed / J.⊢=⊥ / J.⊣=⊥ / J.group 各占一个编号
    """
    elements = tuple(sorted(set(cert.inverse)))
    J = np.asarray(elements, dtype=np.int64)
    k = len(elements)
    L, M, R = (t.restrict(elements) for t in T.tables().values())
    in_j = np.isin(M, J)

    closed = tuple(
        Counterexample("J.closed", (elements[a], elements[b]), int(M[a, b]), -1)
        for a, b in np.argwhere(~in_j)[:COUNTEREXAMPLE_LIMIT]
    )
    results = [LawResult("J.closed", k * k, closed)]
    for law_id, other in (("J.⊢=⊥", L), ("J.⊣=⊥", R)):
        bad = np.argwhere(other != M)[:COUNTEREXAMPLE_LIMIT]
        results.append(LawResult(law_id, k * k, tuple(
            Counterexample(law_id, (elements[a], elements[b]), int(other[a, b]), int(M[a, b]))
            for a, b in bad)))

    table = None
    group_cx: tuple[Counterexample, ...] = ()
    if not closed:
        local = np.searchsorted(J, M)
        try:
            group_as_trigroup(OpTable(local))
            table = OpTable(local)
        except ConstructionError as e:
            logger.warning("J 上的运算不是群: %s", e)
            group_cx = (Counterexample("J.group", (), -1, -1),)
    results.append(LawResult("J.group", k, group_cx))
    report = CheckReport(tuple(results))
    if not report.passed:
        table = None
    return InverseGroup(elements, table, report)


@dataclass(frozen=True)
class PhiResult:
    """φ(x) = (x⁻¹)⁻¹；images 为 A 中的下标，into_j 以 J 中的位置为像"""

    images: tuple[ElementId, ...]
    into_j: MorphismMap
    kernel: frozenset[ElementId]
    report: CheckReport = field(compare=False)


def phi(T: TrioidTable, cert: TrigroupCert, J: InverseGroup | None = None) -> PhiResult:
    """
    A → J 的满同态，固定 J 中每个元素，核 {x : φ(x) = 1} 与 𝔘_A 相等

    J 是群时同态性按 hom-* 各项记录，另有 phi.onto、phi.fixes-J、phi.kernel。
    """
    J = J if J is not None else inverse_group_J(T, cert)
    inv = _inv(cert)
    images = tuple(int(v) for v in inv[inv])
    pos = {x: i for i, x in enumerate(J.elements)}
    into_j = MorphismMap(T.order, len(J.elements), tuple(pos[v] for v in images))

    report = J.report
    if J.table is not None:
        target, target_cert = group_as_trigroup(J.table)
        report = report + is_morphism(into_j, T, target, cert, target_cert)

    onto_missing = sorted(set(J.elements) - set(images))
    onto = tuple(Counterexample("phi.onto", (j,), -1, j) for j in onto_missing[:COUNTEREXAMPLE_LIMIT])
    fixes = tuple(
        Counterexample("phi.fixes-J", (j,), images[j], j)
        for j in J.elements if images[j] != j
    )[:COUNTEREXAMPLE_LIMIT]

    kernel = frozenset(x for x in range(T.order) if images[x] == cert.unit)
    bars = find_bar_units(T)
    kernel_cx = tuple(
        Counterexample("phi.kernel", (x,), int(x in kernel), int(x in bars))
        for x in sorted(kernel ^ bars)
    )[:COUNTEREXAMPLE_LIMIT]
    report = report + CheckReport((
        LawResult("phi.onto", len(J.elements), onto),
        LawResult("phi.fixes-J", len(J.elements), fixes),
        LawResult("phi.kernel", T.order, kernel_cx),
    ))
    return PhiResult(images, into_j, kernel, report)


def collapse(law_id: str, report: CheckReport) -> LawResult:
    """把一组结果合并为单个编号，反例改记为该编号"""
    checked = sum(r.checked for r in report.results)
    cx = tuple(replace(c, axiom_id=law_id) for c in report.counterexamples)[:COUNTEREXAMPLE_LIMIT]
    return LawResult(law_id, checked, cx)


# ==================== .threerack 格式 ====================

THREERACK_HEADER = "threerack v1"


def serialize_threerack(R: PointedThreeRack) -> str:
    out = [THREERACK_HEADER, f"order {R.order}", f"point {R.point}"]
    for x in range(R.order):
        out.append(f"slab x={x}")
        out.extend(" ".join(str(v) for v in row) for row in R.op[x].tolist())
    return "\n".join(out) + "\n"


def parse_threerack(text: str) -> PointedThreeRack:
    """
    解析 `.threerack` 文本：头部、order、point，然后 n 个 `slab x=<i>` 块，每块 n 行

    Raises:
        ParseError: 格式错误（带行号）
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    if not lines or lines[0][1] != THREERACK_HEADER:
        raise ParseError(f"第一行必须是 '{THREERACK_HEADER}'", lines[0][0] if lines else 1)

    def keyword(pos: int, key: str) -> int:
        if pos >= len(lines):
            raise ParseError(f"缺少 '{key} <i>' 行", lines[-1][0])
        number, line = lines[pos]
        tokens = line.split()
        if len(tokens) != 2 or tokens[0] != key:
            raise ParseError(f"期望 '{key} <i>'，得到 {line!r}", number)
        try:
            return int(tokens[1])
        except ValueError:
            raise ParseError(f"{key} 不是整数: {tokens[1]!r}", number) from None

    n = keyword(1, "order")
    if n < 1:
        raise ParseError(f"阶数必须为正: {n}", lines[1][0])
    point = keyword(2, "point")
    if not 0 <= point < n:
        raise ParseError(f"基点 {point} 不在 [0, {n}) 内", lines[2][0])

    op = np.zeros((n, n, n), dtype=np.int64)
    pos = 3
    for x in range(n):
        if pos >= len(lines) or lines[pos][1] != f"slab x={x}":
            where = lines[pos][0] if pos < len(lines) else lines[-1][0]
            raise ParseError(f"期望 'slab x={x}'", where)
        for y in range(n):
            pos += 1
            if pos >= len(lines):
                raise ParseError(f"slab x={x} 只有 {y} 行，需要 {n} 行", lines[-1][0])
            number, line = lines[pos]
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise ParseError(f"条目不是整数: {line!r}", number) from None
            if len(row) != n:
                raise ParseError(f"行长度为 {len(row)}，需要 {n}", number)
            if any(not 0 <= v < n for v in row):
                raise ParseError(f"条目不在 [0, {n}) 内", number)
            op[x, y] = row
        pos += 1
    if pos < len(lines):
        raise ParseError(f"多余的内容: {lines[pos][1]!r}", lines[pos][0])
    return PointedThreeRack(op, point)
