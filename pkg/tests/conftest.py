"""共享的 pytest 固定实例"""

import numpy as np
import pytest

from trioid_lab.algebra.tables import OpTable, TrioidTable
from trioid_lab.resources.fixtures import get_resource
from trioid_lab.tools.constructors import cyclic_group

TRIGROUP_FIXTURES = ("G2", "T4triv", "T6", "M18")
SMALL_TRIGROUPS = ("G2", "T4triv", "T6")


@pytest.fixture(scope="session")
def registry():
    return get_resource()


@pytest.fixture(scope="session")
def t6(registry):
    return registry.table("T6")


@pytest.fixture(scope="session")
def t6_cert(registry):
    return registry.cert("T6")


@pytest.fixture(scope="session")
def p4(registry):
    return registry.table("P4")


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(params=TRIGROUP_FIXTURES)
def trigroup(request, registry):
    """(名称, 表, 证书)，遍历全部三元群固定实例"""
    return request.param, registry.table(request.param), registry.cert(request.param)


@pytest.fixture(params=SMALL_TRIGROUPS)
def small_trigroup(request, registry):
    return request.param, registry.table(request.param), registry.cert(request.param)


def mutate(T: TrioidTable, op: str, a: int, b: int, value: int) -> TrioidTable:
    """改动一个表项；结果不带单位元"""
    arrays = {name: np.array(T.table(name).entries) for name in ("left", "middle", "right")}
    arrays[op][a, b] = value
    return TrioidTable(OpTable(arrays["left"]), OpTable(arrays["middle"]), OpTable(arrays["right"]))


def projection(n: int, side: str) -> OpTable:
    """左投影 x∘y = x 或右投影 x∘y = y"""
    ids = np.arange(n)
    if side == "left":
        return OpTable(np.repeat(ids[:, None], n, axis=1))
    return OpTable(np.repeat(ids[None, :], n, axis=0))


def write_text(path, text: str):
    path.write_text(text, encoding="utf-8")
    return path
