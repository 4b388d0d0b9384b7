"""实例构造器

- 乘积对构造：G×G 上的 ⊩、⊥⊥、⊣⊣
- 作用三元群：群 H 作用在带不动点 e 的集合 M 上
- 标量矩阵三元群：GF(p)^n 上乘法群 GF(p)^× 的标量作用
- 把群看成 ⊢=⊥=⊣ 的三元群
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from trioid_lab.algebra.scan import scan_identity
from trioid_lab.algebra.tables import CheckReport, ElementId, OpTable, TrioidTable
from trioid_lab.config import EXHAUSTIVE_ORDER_LIMIT, TABULATION_LIMIT
from trioid_lab.errors import ConstructionError, GuardError, ParseError
from trioid_lab.tools.axiom_checker import TrigroupCert, check_trigroup, find_bar_units

logger = logging.getLogger(__name__)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """
    群 H 在集合 M 上的左作用

    action[h][v] = h·v；e 是所有 h 的公共不动点。
    m_names / h_names 只用于元素名称。
    """

    m_order: int
    e: ElementId
    h_table: OpTable
    action: np.ndarray
    m_names: tuple[str, ...] | None = None
    h_names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        arr = np.array(self.action, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "action", arr)

    @property
    def h_order(self) -> int:
        return self.h_table.order

    @property
    def transitive(self) -> bool:
        """H 在 M−{e} 上是否可迁"""
        rest = [v for v in range(self.m_order) if v != self.e]
        if not rest:
            return True
        orbit = set(int(w) for w in self.action[:, rest[0]])
        return orbit == set(rest)


class FieldSpec(BaseModel):
    """GF(p)^n，p 为素数"""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=2)
    n: int = Field(default=1, ge=1)

    @field_validator("p")
    @classmethod
    def _prime(cls, p: int) -> int:
        if not is_prime(p):
            raise ValueError(f"{p} 不是素数")
        return p


# ==================== 群的识别 ====================

def group_structure(table: np.ndarray, what: str = "群") -> tuple[int, np.ndarray]:
    """
    校验 table 是群表

    Returns:
        (单位元, 逆元数组)

    Raises:
        ConstructionError: 消息给出不成立的群公理
    """
    n = table.shape[0]
    assoc = scan_identity("ass", 3, n, lambda x, y, z: table[table[x, y], z],
                          lambda x, y, z: table[x, table[y, z]])
    if not assoc.passed:
        cx = assoc.counterexamples[0]
        raise ConstructionError(f"{what} 不满足结合律 (xy)z = x(yz)，见证 {cx.witness}")
    ids = np.arange(n)
    units = [e for e in range(n)
             if np.array_equal(table[e, :], ids) and np.array_equal(table[:, e], ids)]
    if not units:
        raise ConstructionError(f"{what} 没有单位元 1x = x = x1")
    one = units[0]
    ok = (table == one) & (table.T == one)
    missing = np.flatnonzero(~ok.any(axis=1))
    if missing.size:
        raise ConstructionError(f"{what} 中元素 {int(missing[0])} 没有逆元 xx⁻¹ = 1 = x⁻¹x")
    return one, ok.argmax(axis=1)


def cyclic_group(n: int) -> OpTable:
    """ℤ/n 的加法表"""
    ids = np.arange(n)
    return OpTable((ids[:, None] + ids[None, :]) % n)


# ==================== 乘积对构造 ====================

def pair_trisemigroup(left: OpTable, right: OpTable) -> TrioidTable:
    """
    G×G 上的三个运算，下标 (u,h) ↦ u·n+h

    (u,h) ⊩ (v,k) = (h⊢v, h⊢k)
    (u,h) ⊣⊣ (v,k) = (u, h⊣k)
    (u,h) ⊥⊥ (v,k) = (h⊣v, h⊣k)

    输入不需要满足任何公理。结果不设单位元。
    """
    if left.order != right.order:
        raise ConstructionError(f"⊢ 与 ⊣ 的阶数不同: {left.order}, {right.order}")
    n = left.order
    if n * n > TABULATION_LIMIT:
        raise GuardError("制表规模", TABULATION_LIMIT, n * n)
    L, R = left.entries, right.entries
    idx = np.arange(n * n)
    u, h = idx // n, idx % n
    ha, ub = h[:, None], u[None, :]
    hb = h[None, :]
    tri_left = L[ha, ub] * n + L[ha, hb]
    tri_right = u[:, None] * n + R[ha, hb]
    tri_middle = R[ha, ub] * n + R[ha, hb]
    names = [f"({a},{b})" for a in range(n) for b in range(n)]
    return TrioidTable.from_arrays(tri_left, tri_middle, tri_right, names=names)


# ==================== 作用三元群 ====================

def _validate_action(spec: ActionSpec) -> int:
    nm, nh = spec.m_order, spec.h_order
    if not 0 <= spec.e < nm:
        raise ConstructionError(f"不动点 e={spec.e} 不在 M 内")
    act = spec.action
    if act.shape != (nh, nm):
        raise ConstructionError(f"作用表形状应为 {(nh, nm)}，得到 {act.shape}")
    if act.min() < 0 or act.max() >= nm:
        raise ConstructionError("作用表的条目必须在 M 内")
    one, _ = group_structure(spec.h_table.entries, "H")
    H = spec.h_table.entries
    if not np.array_equal(act[one], np.arange(nm)):
        v = int(np.flatnonzero(act[one] != np.arange(nm))[0])
        raise ConstructionError(f"1·v = v 不成立: v={v}")
    # (hk)·v = h·(k·v)
    compat = act[H[:, :, None], np.arange(nm)[None, None, :]] == act[np.arange(nh)[:, None, None], act[None, :, :]]
    if not compat.all():
        h, k, v = (int(i) for i in np.argwhere(~compat)[0])
        raise ConstructionError(f"(hk)·v = h·(k·v) 不成立: h={h}, k={k}, v={v}")
    moved = np.flatnonzero(act[:, spec.e] != spec.e)
    if moved.size:
        raise ConstructionError(f"h·e = e 不成立: h={int(moved[0])}")
    return one


def action_trigroup(spec: ActionSpec) -> tuple[TrioidTable, TrigroupCert]:
    """
    作用三元群 A = M×H，下标 (v,k) ↦ v·|H|+k

    (u,h) ⊢ (v,k) = (h·v, hk)
    (u,h) ⊣ (v,k) = (u, hk)
    (u,h) ⊥ (v,k) = (e, hk)

    单位元 (e,1)，(u,h) 的逆元是 (e,h⁻¹)。H 在 M−{e} 上不可迁时只记录警告。

    Raises:
        ConstructionError: 作用不满足前提，消息给出不成立的等式
        GuardError: |M|·|H| 超过制表上限
    """
    nm, nh = spec.m_order, spec.h_order
    order = nm * nh
    if order > TABULATION_LIMIT:
        raise GuardError("制表规模", TABULATION_LIMIT, order)
    one = _validate_action(spec)
    _, h_inv = group_structure(spec.h_table.entries, "H")

    H, act = spec.h_table.entries, spec.action
    idx = np.arange(order)
    v, k = idx // nh, idx % nh
    hk = H[k[:, None], k[None, :]]
    left = act[k[:, None], v[None, :]] * nh + hk
    right = v[:, None] * nh + hk
    middle = spec.e * nh + hk

    m_names = spec.m_names or tuple(str(i) for i in range(nm))
    h_names = spec.h_names or tuple(str(i) for i in range(nh))
    names = [f"({m_names[a]},{h_names[b]})" for a in range(nm) for b in range(nh)]
    unit = spec.e * nh + one
    T = TrioidTable.from_arrays(left, middle, right, unit, names)

    report = CheckReport()
    if not spec.transitive:
        logger.warning("H 在 M−{e} 上不可迁；三元群公理不依赖这一点")
        report = report.with_note("action not transitive on M-{e}")

    if order <= EXHAUSTIVE_ORDER_LIMIT:
        cert = check_trigroup(T, unit)
        if isinstance(cert, CheckReport):
            raise ConstructionError("作用三元群未通过三元群检查:\n" + cert.render())
        cert = TrigroupCert(cert.unit, cert.inverse, cert.bar_units, cert.report + report)
    else:
        logger.info("阶数 %d 超过穷举上限，按闭式给出证书", order)
        inverse = tuple(int(spec.e * nh + h_inv[kk]) for kk in k)
        cert = TrigroupCert(unit, inverse, find_bar_units(T), report.with_note("closed-form certificate"))
    return T, cert


# ==================== 标量矩阵三元群 ====================

def matrix_trigroup(spec: FieldSpec) -> tuple[TrioidTable, TrigroupCert]:
    """
    M = GF(p)^n，e = 0，H = GF(p)^× 以标量乘法作用

    向量下标是 p 进制数字（低位在前），H 的下标 k 对应标量 k+1。
    单位元 (0,1)，(x,λ) 的逆元是 (0,λ⁻¹)。
    """
    p, n = spec.p, spec.n
    nm, nh = p ** n, p - 1
    if nm * nh > TABULATION_LIMIT:
        raise ConstructionError(f"p^n·(p−1) = {nm * nh} 超出制表上限 {TABULATION_LIMIT}")
    weights = p ** np.arange(n)
    digits = (np.arange(nm)[:, None] // weights[None, :]) % p
    scalars = np.arange(1, p)
    action = ((scalars[:, None, None] * digits[None, :, :]) % p) @ weights
    h_table = OpTable((scalars[:, None] * scalars[None, :]) % p - 1)
    m_names = tuple("(" + ",".join(str(d) for d in row) + ")" for row in digits)
    h_names = tuple(str(s) for s in scalars)
    return action_trigroup(ActionSpec(nm, 0, h_table, action, m_names, h_names))


# ==================== 群 ====================

def group_as_trigroup(g: OpTable) -> tuple[TrioidTable, TrigroupCert]:
    """⊢ = ⊥ = ⊣ = g，单位元与逆元取自群"""
    one, inv = group_structure(g.entries)
    T = TrioidTable(g, g, g, one)
    if g.order <= EXHAUSTIVE_ORDER_LIMIT:
        cert = check_trigroup(T, one)
        if isinstance(cert, CheckReport):
            raise ConstructionError("群表未通过三元群检查:\n" + cert.render())
        return T, cert
    return T, TrigroupCert(one, tuple(int(y) for y in inv), find_bar_units(T),
                           CheckReport().with_note("closed-form certificate"))


# ==================== 文本形式 ====================

def parse_grid(text: str, what: str = "表") -> list[list[int]]:
    """
    解析 "0 1; 1 0" 形式的整数网格，行之间用分号或换行分隔

    Raises:
        ParseError: 行号为网格中的行序号
    """
    rows = []
    for number, raw in enumerate(text.replace(";", "\n").splitlines(), 1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            rows.append([int(tok) for tok in raw.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"{what} 含非整数条目: {raw!r}", number) from None
    if not rows:
        raise ParseError(f"{what} 为空", 1)
    for number, row in enumerate(rows, 1):
        if len(row) != len(rows[0]):
            raise ParseError(f"{what} 行长度为 {len(row)}，需要 {len(rows[0])}", number)
    return rows


def parse_action_spec(m_order: int, e: int, h_text: str, action_text: str) -> ActionSpec:
    """CLI 的 `construct action --m N --e I --h GRID --action GRID`"""
    return ActionSpec(m_order, e, OpTable(parse_grid(h_text, "H 的群表")),
                      np.array(parse_grid(action_text, "作用表")))
