"""固定实例

全仓库共用的手算可验证实例：
    G2      ℤ/2 作为三元群（⊢ = ⊥ = ⊣）
    T4triv  M = {e, m}，H = ℤ/2 平凡作用，阶 4
    T6      M = {e, m1, m2}，H = ℤ/2 交换 m1 ↔ m2，阶 6
    P4      ℤ/2 上的乘积对构造（trisemigroup，不是三元群）
    M18     GF(3)² 上的标量矩阵三元群，阶 18
"""

from functools import cached_property

import numpy as np

from trioid_lab.algebra.tables import TrioidTable
from trioid_lab.algebra.trioid_format import serialize_trioid
from trioid_lab.errors import UsageError
from trioid_lab.tools.axiom_checker import TrigroupCert
from trioid_lab.tools.constructors import (
    ActionSpec,
    FieldSpec,
    action_trigroup,
    cyclic_group,
    group_as_trigroup,
    matrix_trigroup,
    pair_trisemigroup,
)

FIXTURE_NAMES = ("G2", "T4triv", "T6", "P4", "M18")


class FixtureRegistry:
    """按名称提供固定实例的表与证书"""

    @cached_property
    def _built(self) -> dict[str, tuple[TrioidTable, TrigroupCert | None]]:
        z2 = cyclic_group(2)
        built: dict[str, tuple[TrioidTable, TrigroupCert | None]] = {}
        built["G2"] = group_as_trigroup(z2)
        built["T4triv"] = action_trigroup(
            ActionSpec(2, 0, z2, np.array([[0, 1], [0, 1]]), ("e", "m"), ("1", "h")))
        built["T6"] = action_trigroup(
            ActionSpec(3, 0, z2, np.array([[0, 1, 2], [0, 2, 1]]), ("e", "m1", "m2"), ("1", "h")))
        built["P4"] = (pair_trisemigroup(z2, z2), None)
        built["M18"] = matrix_trigroup(FieldSpec(p=3, n=2))
        return built

    def names(self) -> tuple[str, ...]:
        return FIXTURE_NAMES

    def _entry(self, name: str) -> tuple[TrioidTable, TrigroupCert | None]:
        if name not in FIXTURE_NAMES:
            raise UsageError(f"未知的固定实例: {name}（可选 {', '.join(FIXTURE_NAMES)}）")
        return self._built[name]

    def table(self, name: str) -> TrioidTable:
        return self._entry(name)[0]

    def cert(self, name: str) -> TrigroupCert | None:
        """三元群实例的证书；P4 返回 None"""
        return self._entry(name)[1]

    def get_fixture(self, name: str) -> str:
        """
        获取固定实例的 `.trioid` 文本

        Args:
            name: 实例名称

        Returns:
            带元素名称注释的序列化文本；未知名称时返回可用名称列表
        """
        if name not in FIXTURE_NAMES:
            return f"未知的固定实例: {name}\n\n可用实例: {', '.join(FIXTURE_NAMES)}"
        return serialize_trioid(self.table(name), annotate=True)

    def get_all_fixtures(self) -> str:
        doc = "# 固定实例\n\n"
        for name in FIXTURE_NAMES:
            T, cert = self._entry(name)
            kind = "trigroup" if cert is not None else "trisemigroup"
            doc += f"- **{name}**: 阶 {T.order}，{kind}\n"
        doc += "\n使用资源 URI: `trioid://fixtures/{name}` 获取 `.trioid` 文本\n"
        return doc


# 全局实例
_resource = None

def get_resource() -> FixtureRegistry:
    """获取全局固定实例注册表"""
    global _resource
    if _resource is None:
        _resource = FixtureRegistry()
    return _resource
