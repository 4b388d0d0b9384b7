"""光滑作用三元群 ℝⁿ × ℝ^× 与其 Leibniz 3-代数括号

点是 (w, l)，l ≠ 0；单位元 1 = (0, 1)。在 1 处取坐标 (w, l−1)，切空间即 ℝⁿ×ℝ。
括号的构造：先对 z ↦ [x,y,z] 在 1 处求中心差分 Jacobian，
再沿曲线 γ_V(s) = (s·U_V, 1 + s·P_V) 对 x、y 两个位置取混合二阶中心差分。
"""

import logging
from dataclasses import dataclass

import numpy as np

from trioid_lab.algebra.axioms import TRISEMIGROUP_AXIOMS, Term
from trioid_lab.algebra.tables import Op, as_op
from trioid_lab.config import NumericConfig
from trioid_lab.errors import UsageError

logger = logging.getLogger(__name__)

SUPPORTED_DIMS = (1, 2, 3)


# ==================== 点与切向量 ====================

@dataclass(frozen=True, eq=False)
class SmoothPoint:
    w: np.ndarray
    l: float

    def __post_init__(self):
        w = np.array(self.w, dtype=float).reshape(-1)
        if not np.isfinite(w).all() or not np.isfinite(self.l):
            raise UsageError("点的坐标必须有限")
        if self.l == 0:
            raise UsageError("标量部分 l 不能为 0")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "l", float(self.l))

    @classmethod
    def unit(cls, dim: int) -> "SmoothPoint":
        return cls(np.zeros(dim), 1.0)

    @classmethod
    def from_chart(cls, c: np.ndarray) -> "SmoothPoint":
        """坐标 (w, l−1) → 点"""
        return cls(c[:-1], 1.0 + c[-1])

    @property
    def dim(self) -> int:
        return self.w.shape[0]

    def chart(self) -> np.ndarray:
        return np.append(self.w, self.l - 1.0)

    def close_to(self, other: "SmoothPoint", tol: float) -> bool:
        return bool(np.allclose(self.w, other.w, atol=tol) and abs(self.l - other.l) <= tol)

    def __repr__(self) -> str:
        return f"SmoothPoint(w={self.w.tolist()}, l={self.l})"


@dataclass(frozen=True, eq=False)
class TangentVector:
    """𝔤 = T₁A 中的 (U, P)"""

    U: np.ndarray
    P: float

    def __post_init__(self):
        U = np.array(self.U, dtype=float).reshape(-1)
        if not np.isfinite(U).all() or not np.isfinite(self.P):
            raise UsageError("切向量的分量必须有限")
        U.setflags(write=False)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "P", float(self.P))

    @classmethod
    def from_array(cls, v: np.ndarray) -> "TangentVector":
        return cls(v[:-1], v[-1])

    @property
    def dim(self) -> int:
        return self.U.shape[0]

    def as_array(self) -> np.ndarray:
        return np.append(self.U, self.P)

    def curve(self, s: float) -> SmoothPoint:
        """γ(s) = (s·U, 1 + s·P)"""
        return SmoothPoint(s * self.U, 1.0 + s * self.P)

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.U + other.U, self.P + other.P)

    def __rmul__(self, a: float) -> "TangentVector":
        return TangentVector(a * self.U, a * self.P)

    def __repr__(self) -> str:
        return f"TangentVector(U={self.U.tolist()}, P={self.P})"


# ==================== 运算 ====================

# 批量形式：w 的形状 (..., n)，l 的形状 (...)
def _left(xw, xl, yw, yl):
    return xl[..., None] * yw, xl * yl


def _right(xw, xl, yw, yl):
    return np.broadcast_to(xw, np.broadcast_shapes(xw.shape, yw.shape)).copy(), xl * yl


def _middle(xw, xl, yw, yl):
    return np.zeros(np.broadcast_shapes(xw.shape, yw.shape)), xl * yl


_BATCH_OPS = {Op.LEFT: _left, Op.MIDDLE: _middle, Op.RIGHT: _right}
_GLYPH_OPS = {"⊢": _left, "⊥": _middle, "⊣": _right}


def _inverse(w, l):
    return np.zeros_like(w), 1.0 / l


def smooth_op(x: SmoothPoint, y: SmoothPoint, op: Op | str) -> SmoothPoint:
    """
    ⊢: (u,p)⊢(v,k) = (p·v, pk)
    ⊣: (u,p)⊣(v,k) = (u, pk)
    ⊥: (u,p)⊥(v,k) = (0, pk)
    """
    w, l = _BATCH_OPS[as_op(op)](x.w, np.asarray(x.l), y.w, np.asarray(y.l))
    return SmoothPoint(w, l)


def smooth_inverse(x: SmoothPoint) -> SmoothPoint:
    """(u,p)⁻¹ = (0, 1/p)"""
    return SmoothPoint(*_inverse(x.w, x.l))


def smooth_conjugation(x: SmoothPoint, y: SmoothPoint, z: SmoothPoint) -> SmoothPoint:
    """[x,y,z] = ((x⊥y)⊢z)⊣(y⁻¹⊥x⁻¹)，按运算逐步组合"""
    theta = smooth_op(x, y, Op.MIDDLE)
    tail = smooth_op(smooth_inverse(y), smooth_inverse(x), Op.MIDDLE)
    return smooth_op(smooth_op(theta, z, Op.LEFT), tail, Op.RIGHT)


# ==================== 线性化与括号 ====================

def rack_linearization(x: SmoothPoint, y: SmoothPoint, cfg: NumericConfig | None = None) -> np.ndarray:
    """
    z ↦ [x,y,z] 在 z = 1 处的 Jacobian，坐标 (w, l−1)

    第 k 列 = ([x,y,1+h·e_k] − [x,y,1−h·e_k]) / 2h
    """
    cfg = cfg or NumericConfig()
    h = cfg.step
    dim = x.dim
    jac = np.empty((dim + 1, dim + 1))
    for k in range(dim + 1):
        e = np.zeros(dim + 1)
        e[k] = h
        plus = smooth_conjugation(x, y, SmoothPoint.from_chart(e)).chart()
        minus = smooth_conjugation(x, y, SmoothPoint.from_chart(-e)).chart()
        jac[:, k] = (plus - minus) / (2 * h)
    return jac


def leibniz_bracket(X: TangentVector, Y: TangentVector, Z: TangentVector,
                    cfg: NumericConfig | None = None) -> TangentVector:
    """
    [X,Y,Z]_𝔤：F(s,t) = J(γ_X(s), γ_Y(t))·Z 在 (0,0) 处的混合二阶中心差分

    内层 Jacobian 用 cfg.step，外层差分用 cfg.bracket_step。
    """
    cfg = cfg or NumericConfig()
    d = cfg.bracket_step
    z = Z.as_array()

    def F(s: float, t: float) -> np.ndarray:
        return rack_linearization(X.curve(s), Y.curve(t), cfg) @ z

    mixed = (F(d, d) - F(d, -d) - F(-d, d) + F(-d, -d)) / (4 * d * d)
    return TangentVector.from_array(mixed)


def bracket_closed_form(X: TangentVector, Y: TangentVector, Z: TangentVector) -> TangentVector:
    """对 ((pq)·w, l) 求导得到的括号 (P_X·P_Y·U_Z, 0)"""
    return TangentVector(X.P * Y.P * Z.U, 0.0)


# ==================== 残差报告 ====================

@dataclass(frozen=True)
class ResidualReport:
    law_id: str
    max_residual: float
    samples: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.law_id} max_residual={self.max_residual:.6e} samples={self.samples}"


def _check_dim(dim: int) -> None:
    if dim not in SUPPORTED_DIMS:
        raise UsageError(f"维数必须是 {SUPPORTED_DIMS} 之一，得到 {dim}")


def _random_vector(rng: np.random.Generator, dim: int) -> TangentVector:
    v = rng.uniform(-1.0, 1.0, size=dim + 1)
    return TangentVector.from_array(v)


def check_leibniz_identity(dim: int, cfg: NumericConfig | None = None) -> ResidualReport:
    """
    [x₁,x₂,[y₁,y₂,y₃]] = [[x₁,x₂,y₁],y₂,y₃] + [y₁,[x₁,x₂,y₂],y₃] + [y₁,y₂,[x₁,x₂,y₃]]

    cfg.samples 组随机 5 元组，分量取自 [−1, 1]，报告最大绝对残差。
    """
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        x1, x2, y1, y2, y3 = (_random_vector(rng, dim) for _ in range(5))
        lhs = leibniz_bracket(x1, x2, leibniz_bracket(y1, y2, y3, cfg), cfg)
        rhs = (leibniz_bracket(leibniz_bracket(x1, x2, y1, cfg), y2, y3, cfg)
               + leibniz_bracket(y1, leibniz_bracket(x1, x2, y2, cfg), y3, cfg)
               + leibniz_bracket(y1, y2, leibniz_bracket(x1, x2, y3, cfg), cfg))
        worst = max(worst, float(np.max(np.abs(lhs.as_array() - rhs.as_array()))))
    logger.info("Leibniz 恒等式 dim=%d 最大残差 %.3e", dim, worst)
    return ResidualReport("leibniz.identity", worst, cfg.samples, cfg.tol)


def check_trilinearity(dim: int, cfg: NumericConfig | None = None) -> list[ResidualReport]:
    """每个位置上 ‖[aX+bX′,…] − a[X,…] − b[X′,…]‖ 的最大值"""
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(cfg.seed)
    reports = []
    for slot in range(3):
        worst = 0.0
        for _ in range(cfg.samples):
            args = [_random_vector(rng, dim) for _ in range(3)]
            other = _random_vector(rng, dim)
            a, b = (float(c) for c in rng.uniform(-1.0, 1.0, size=2))
            mixed = list(args)
            mixed[slot] = a * args[slot] + b * other
            swapped = list(args)
            swapped[slot] = other
            lhs = leibniz_bracket(*mixed, cfg).as_array()
            rhs = a * leibniz_bracket(*args, cfg).as_array() + b * leibniz_bracket(*swapped, cfg).as_array()
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        reports.append(ResidualReport(f"leibniz.trilinear.{slot + 1}", worst, cfg.samples, cfg.tol))
    return reports


def check_bracket_closed_form(dim: int, cfg: NumericConfig | None = None) -> ResidualReport:
    """数值括号与 (P_X·P_Y·U_Z, 0) 的最大偏差"""
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        X, Y, Z = (_random_vector(rng, dim) for _ in range(3))
        diff = leibniz_bracket(X, Y, Z, cfg).as_array() - bracket_closed_form(X, Y, Z).as_array()
        worst = max(worst, float(np.max(np.abs(diff))))
    return ResidualReport("leibniz.closed-form", worst, cfg.samples, cfg.tol)


# ==================== 其他性质 ====================

def _evaluate_term(t: Term, x, y, z):
    outer, inner = _GLYPH_OPS[t.outer], _GLYPH_OPS[t.inner]
    if t.grouped_left:
        return outer(*inner(*x, *y), *z)
    return outer(*x, *inner(*y, *z))


def check_smooth_trisemigroup(dim: int, cfg: NumericConfig | None = None,
                              samples: int = 10_000) -> list[ResidualReport]:
    """在随机点三元组上逐条检查 trisemigroup 公理（精确多项式恒等式）"""
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(cfg.seed)

    def points():
        w = rng.uniform(-1.0, 1.0, size=(samples, dim))
        l = rng.uniform(0.5, 2.0, size=samples) * rng.choice([-1.0, 1.0], size=samples)
        return w, l

    x, y, z = points(), points(), points()
    reports = []
    for axiom in TRISEMIGROUP_AXIOMS:
        lw, ll = _evaluate_term(axiom.lhs, x, y, z)
        rw, rl = _evaluate_term(axiom.rhs, x, y, z)
        worst = max(float(np.max(np.abs(lw - rw))), float(np.max(np.abs(ll - rl))))
        reports.append(ResidualReport(f"smooth.{axiom.axiom_id}", worst, samples, cfg.tol))
    return reports


def jacobian_deviation(x: SmoothPoint, y: SmoothPoint, cfg: NumericConfig | None = None) -> float:
    """数值 Jacobian 与精确值 diag(pq·Iₙ, 1) 的最大偏差"""
    exact = np.diag(np.append(np.full(x.dim, x.l * y.l), 1.0))
    return float(np.max(np.abs(rack_linearization(x, y, cfg) - exact)))


@dataclass(frozen=True)
class ConvergenceReport:
    ratios: tuple[float, ...]
    low: float = 3.0
    high: float = 5.0

    @property
    def passed(self) -> bool:
        return all(self.low <= r <= self.high for r in self.ratios)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} linearization.order2 min_ratio={min(self.ratios):.4f} "
                f"max_ratio={max(self.ratios):.4f} samples={len(self.ratios)}")


def _diagonal_error(X: TangentVector, Z: TangentVector, h: float) -> float:
    """s ↦ [γ_X(s), γ_X(s), γ_Z(s)] 在 0 处的中心差分与精确导数 Z 的偏差"""
    plus = smooth_conjugation(X.curve(h), X.curve(h), Z.curve(h)).chart()
    minus = smooth_conjugation(X.curve(-h), X.curve(-h), Z.curve(-h)).chart()
    return float(np.max(np.abs((plus - minus) / (2 * h) - Z.as_array())))


def linearization_convergence(cfg: NumericConfig | None = None, samples: int = 10,
                              dim: int = 1) -> ConvergenceReport:
    """
    步长减半时中心差分误差的缩小倍数

    z ↦ [x,y,z] 在坐标中是线性的，其 Jacobian 的差分没有截断误差；
    这里沿对角曲线测量，误差恰为 h²·P_X²·U_Z，倍数应接近 4。
    """
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(cfg.seed)
    ratios = []
    for _ in range(samples):
        sign = rng.choice([-1.0, 1.0], size=2)
        X = TangentVector(rng.uniform(-1.0, 1.0, size=dim), sign[0] * rng.uniform(0.5, 1.0))
        Z = TangentVector(sign[1] * rng.uniform(0.5, 1.0, size=dim), rng.uniform(-1.0, 1.0))
        coarse = _diagonal_error(X, Z, cfg.step)
        fine = _diagonal_error(X, Z, cfg.step / 2)
        ratios.append(coarse / fine)
    return ConvergenceReport(tuple(ratios))


def leibniz_character(dim: int = 1, cfg: NumericConfig | None = None) -> tuple[TangentVector, bool]:
    """
    [X,X,Z] 对 X = (0,1)、Z = (e₁,0) 不为零，括号不是反对称的

    Returns:
        (括号的值, 是否非零)
    """
    _check_dim(dim)
    cfg = cfg or NumericConfig()
    X = TangentVector(np.zeros(dim), 1.0)
    Z = TangentVector(np.eye(dim)[0], 0.0)
    value = leibniz_bracket(X, X, Z, cfg)
    return value, float(np.max(np.abs(value.as_array()))) > cfg.tol
