"""恒等式扫描内核

对 arity 元元组逐一求值恒等式两侧，按字典序收集反例。
元组总数不超过 SAMPLING_THRESHOLD 时穷举，否则用固定种子随机采样。
"""

import logging
from typing import Callable

import numpy as np

from trioid_lab.algebra.tables import Counterexample, LawResult
from trioid_lab.config import (
    COUNTEREXAMPLE_LIMIT,
    SAMPLE_COUNT,
    SAMPLE_SEED,
    SAMPLING_THRESHOLD,
)

logger = logging.getLogger(__name__)

Side = Callable[..., np.ndarray]


def _evaluate(sides: tuple[Side, ...], coords: tuple[np.ndarray, ...]) -> tuple[np.ndarray, np.ndarray]:
    """返回 (bad 掩码, 用于报告的 lhs 值)；参照值是最后一侧"""
    values = [np.broadcast_to(np.asarray(f(*coords)), coords[0].shape) for f in sides]
    ref = values[-1]
    bad = np.zeros(ref.shape, dtype=bool)
    lhs = ref
    for v in reversed(values[:-1]):
        differs = v != ref
        bad |= differs
        lhs = np.where(differs, v, lhs)
    return bad, lhs


def _collect(law_id: str, bad: np.ndarray, lhs: np.ndarray, ref: np.ndarray,
             witnesses: np.ndarray, limit: int) -> list[Counterexample]:
    found = []
    for idx in np.flatnonzero(bad)[:limit]:
        found.append(Counterexample(
            law_id,
            tuple(int(w) for w in witnesses[idx]),
            int(lhs.flat[idx]),
            int(ref.flat[idx]),
        ))
    return found


def scan_identity(
    law_id: str,
    arity: int,
    n: int,
    *sides: Side,
    limit: int = COUNTEREXAMPLE_LIMIT,
    threshold: int = SAMPLING_THRESHOLD,
    samples: int = SAMPLE_COUNT,
    seed: int = SAMPLE_SEED,
) -> LawResult:
    """
    检查 sides[0] = sides[1] = ... = sides[-1] 对所有 arity 元组成立

    Args:
        law_id: 报告中的公理编号
        arity: 变量个数
        n: 载体阶数
        sides: 各侧的向量化求值函数，参数为 arity 个下标数组
        limit: 最多记录的反例数
        threshold: 穷举与采样的分界
        samples, seed: 采样模式的样本数与种子

    Returns:
        LawResult；反例按见证元组的字典序排列
    """
    if len(sides) < 2:
        raise ValueError("至少需要两侧")
    total = n ** arity

    if total <= threshold:
        found: list[Counterexample] = []
        if arity <= 3:
            chunks = [None]
        else:
            chunks = range(n)
        for lead in chunks:
            if lead is None:
                grid = np.indices((n,) * arity)
                coords = tuple(grid)
            else:
                rest = np.indices((n,) * (arity - 1))
                coords = (np.full(rest.shape[1:], lead),) + tuple(rest)
            bad, lhs = _evaluate(sides, coords)
            if bad.any():
                flat = np.stack([c.ravel() for c in coords], axis=1)
                ref = np.broadcast_to(np.asarray(sides[-1](*coords)), bad.shape)
                found += _collect(law_id, bad.ravel(), lhs.ravel(), ref.ravel(), flat, limit - len(found))
                if len(found) >= limit:
                    break
        return LawResult(law_id, total, tuple(found))

    logger.info("%s: %d 个元组超过阈值，改为随机采样 %d 个 (seed=%d)", law_id, total, samples, seed)
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(samples, arity))
    # 字典序排列并去重，保证反例顺序确定
    draws = np.unique(draws, axis=0)
    coords = tuple(draws[:, i] for i in range(arity))
    bad, lhs = _evaluate(sides, coords)
    ref = np.asarray(sides[-1](*coords))
    found = _collect(law_id, bad, lhs, np.broadcast_to(ref, bad.shape), draws, limit)
    return LawResult(law_id, len(draws), tuple(found), seed=seed)
