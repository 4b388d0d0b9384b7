"""
Trioid 工作台 MCP 服务器

提供三元半群 / 三元群的公理检查、推导律验证、3-rack 导出、实例构造、小阶普查
以及光滑模型的 Leibniz 残差。输入是 `.trioid` 文本，输出与 CLI 相同的 PASS / FAIL 行。
"""

import logging
import os
from typing import Literal

from mcp.server.fastmcp import FastMCP
from mcp.types import ToolAnnotations
from pydantic import ValidationError
from starlette.requests import Request
from starlette.responses import JSONResponse

from trioid_lab import __version__
from trioid_lab.algebra.tables import CheckReport, OpTable
from trioid_lab.algebra.trioid_format import parse_trioid, serialize_trioid
from trioid_lab.config import NumericConfig
from trioid_lab.errors import TrioidError

# 导入工具模块
from trioid_lab.tools.axiom_checker import (
    TrigroupCert,
    check_digroup,
    check_trigroup,
    check_trimonoid,
    check_trisemigroup,
)
from trioid_lab.tools.constructors import (
    FieldSpec,
    action_trigroup,
    group_as_trigroup,
    matrix_trigroup,
    pair_trisemigroup,
    parse_action_spec,
    parse_grid,
)
from trioid_lab.tools.derived import (
    check_three_rack,
    conjugation,
    derive_three_rack,
    rack_solve,
    serialize_threerack,
    verify_rack_solve,
)
from trioid_lab.tools.enumerator import enumerate_trioids
from trioid_lab.tools.law_suite import run_law_suite
from trioid_lab.tools.smooth_leibniz import (
    check_bracket_closed_form,
    check_leibniz_identity,
    check_trilinearity,
)

# 导入资源模块
from trioid_lab.resources.axiom_catalog import get_resource as get_axiom_resource
from trioid_lab.resources.fixtures import get_resource as get_fixture_resource

# 导入提示模块
from trioid_lab.prompts.failure_review import get_prompt as get_failure_review_prompt

logger = logging.getLogger(__name__)

# stateless_http=True：每个请求独立处理，无需 session ID
mcp = FastMCP("Trioid Workbench Server", stateless_http=True)


# ==================== Custom Routes ====================

@mcp.custom_route("/health", methods=["GET"])
async def health_check(request: Request) -> JSONResponse:
    """健康检查端点"""
    return JSONResponse({
        "status": "ok",
        "service": "trioid-workbench-mcp",
        "version": __version__,
    })


# ==================== Helpers ====================

def _render(report: CheckReport, header: str = "") -> str:
    lines = [header] if header else []
    lines += report.lines()
    lines += [f"NOTE {note}" for note in report.notes]
    lines.append("RESULT " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines)


def _error(e: Exception) -> str:
    return f"error: {' '.join(str(e).split())}"


def _certified(table: str):
    """解析并认证三元群；失败时返回可直接输出的报告文本"""
    T = parse_trioid(table)
    result = check_trigroup(T, T.unit)
    if isinstance(result, CheckReport):
        return T, None, _render(result, "不是三元群，无法继续:")
    return T, result, ""


# ==================== Tools ====================

_READ_ONLY = ToolAnnotations(readOnlyHint=True, destructiveHint=False, idempotentHint=True, openWorldHint=False)


@mcp.tool(
    description="Check a finite operation table triple (in .trioid text format) against the axioms of a trisemigroup, trimonoid, trigroup or digroup. Every axiom id is reported as a PASS line with the number of checked tuples, or as FAIL lines with a concrete witness tuple and both sides' values.",
    annotations=_READ_ONLY,
)
def check_structure(
    table: str,
    structure: Literal["trisemigroup", "trimonoid", "trigroup", "digroup"] = "trigroup",
    unit: int | None = None,
) -> str:
    """
    检查 `.trioid` 表满足的公理

    参数:
        table: `.trioid` 文本
        structure: 结构类别
        unit: 指定单位元；为空时使用文件中的 unit 行

    返回:
        PASS / FAIL 行，最后一行为 RESULT
    """
    try:
        T = parse_trioid(table)
        u = unit if unit is not None else T.unit
        if structure == "trisemigroup":
            report = check_trisemigroup(T)
        elif structure == "trimonoid":
            report = check_trimonoid(T)
        elif structure == "digroup":
            if u is None:
                return "error: digroup 检查需要 unit"
            report = check_digroup(T.left, T.right, u)
        else:
            result = check_trigroup(T, u)
            report = result.report if isinstance(result, TrigroupCert) else result
    except TrioidError as e:
        return _error(e)
    return _render(report)


@mcp.tool(
    description="Run every derived law of trigroups on a certified finite trigroup: inverse identities, the inverse group J and the epimorphism onto it, conjugation automorphisms, the theta identities and the disemigroup remarks.",
    annotations=_READ_ONLY,
)
def run_laws(table: str) -> str:
    """
    对三元群跑全部推导律

    参数:
        table: `.trioid` 文本，必须是三元群

    返回:
        每个定律编号一行
    """
    try:
        T, cert, failure = _certified(table)
        if cert is None:
            return failure
        return _render(run_law_suite(T, cert))
    except TrioidError as e:
        return _error(e)


@mcp.tool(
    description="Derive the pointed 3-rack [x,y,z] = ((x⊥y)⊢z)⊣(y⁻¹⊥x⁻¹) of a finite trigroup, check self-distributivity, unique solvability and the point conditions, and return the .threerack text followed by the check lines.",
    annotations=_READ_ONLY,
)
def derive_rack(table: str) -> str:
    """
    导出 3-rack

    参数:
        table: `.trioid` 文本，必须是三元群

    返回:
        `.threerack` 文本与检查结果
    """
    try:
        T, cert, failure = _certified(table)
        if cert is None:
            return failure
        R = derive_three_rack(T, cert)
        report = check_three_rack(R) + verify_rack_solve(T, cert, R)
        return serialize_threerack(R) + "\n" + _render(report)
    except TrioidError as e:
        return _error(e)


@mcp.tool(
    description="Solve [x,y,z] = b in the conjugation 3-rack of a finite trigroup using the explicit formula z = θ⁻¹⊢b⊣θ with θ = x⊥y, and verify the solution by substitution. Indices are 0-based.",
    annotations=_READ_ONLY,
)
def solve_rack(table: str, x: int, y: int, b: int) -> str:
    """
    求解 [x,y,z] = b

    返回:
        z=<解> 与 verified=true|false
    """
    try:
        T, cert, failure = _certified(table)
        if cert is None:
            return failure
        z = rack_solve(T, cert, x, y, b)
        verified = conjugation(T, cert, x, y, z) == b
    except TrioidError as e:
        return _error(e)
    return f"z={z}\nverified={'true' if verified else 'false'}"


@mcp.tool(
    description="Construct an instance and return it as .trioid text. kind=pair builds the product-pair trisemigroup on G×G from two tables (left, right); kind=action builds the trigroup of a group H acting on a set M with fixed point e (m, e, h, action); kind=matrix builds the scalar trigroup over GF(p)^n (p, n); kind=group views a group table as a trigroup (table). Tables are written as rows separated by ';'.",
    annotations=_READ_ONLY,
)
def construct_instance(
    kind: Literal["pair", "action", "matrix", "group"],
    left: str = "",
    right: str = "",
    m: int = 0,
    e: int = 0,
    h: str = "",
    action: str = "",
    p: int = 2,
    n: int = 1,
    table: str = "",
) -> str:
    """
    构造实例

    参数:
        kind: 构造类型
        其余参数按 kind 取用，表格写作 "0 1; 1 0"

    返回:
        带元素名称注释的 `.trioid` 文本
    """
    try:
        if kind == "pair":
            T = pair_trisemigroup(OpTable(parse_grid(left, "⊢ 表")), OpTable(parse_grid(right, "⊣ 表")))
        elif kind == "action":
            T, _ = action_trigroup(parse_action_spec(m, e, h, action))
        elif kind == "matrix":
            T, _ = matrix_trigroup(FieldSpec(p=p, n=n))
        else:
            T, _ = group_as_trigroup(OpTable(parse_grid(table, "群表")))
    except ValidationError as ve:
        return "error: " + "; ".join(err["msg"] for err in ve.errors())
    except TrioidError as ex:
        return _error(ex)
    return serialize_trioid(T, annotate=True)


@mcp.tool(
    description="Enumerate all trisemigroups, trimonoids or trigroups of a small order (1 to 3) by pruned backtracking and report the census line, optionally up to isomorphism, followed by the representatives in .trioid format.",
    annotations=_READ_ONLY,
)
def enumerate_census(
    order: int,
    structure: Literal["trisemigroup", "trimonoid", "trigroup"] = "trigroup",
    up_to_iso: bool = True,
) -> str:
    """
    小阶普查

    参数:
        order: 阶数（服务器上限为 3）
        structure: 结构类别
        up_to_iso: 是否只保留同构类代表

    返回:
        汇总行与各代表元
    """
    if order > 3:
        return "error: 服务器上的普查阶数最多为 3，更大的阶请使用 CLI"
    try:
        row = enumerate_trioids(order, structure, up_to_iso)
    except TrioidError as e:
        return _error(e)
    parts = [row.summary()]
    parts += [serialize_trioid(rep) for rep in row.representatives]
    return "\n".join(parts)


@mcp.tool(
    description="Numerically extract the Leibniz 3-algebra bracket of the smooth trigroup ℝⁿ×ℝ^× and report maximum residuals of the Leibniz identity, trilinearity and the closed-form bracket over random samples.",
    annotations=_READ_ONLY,
)
def leibniz_residuals(
    dim: int = 1,
    step: float = 1e-4,
    tol: float = 1e-5,
    samples: int = 100,
    seed: int = 0,
) -> str:
    """
    光滑模型的 Leibniz 残差

    返回:
        每个检查一行：PASS|FAIL <编号> max_residual=<值> samples=<个数>
    """
    try:
        cfg = NumericConfig(step=step, tol=tol, samples=samples, seed=seed)
        reports = [
            check_leibniz_identity(dim, cfg),
            *check_trilinearity(dim, cfg),
            check_bracket_closed_form(dim, cfg),
        ]
    except ValidationError as ve:
        return "error: " + "; ".join(err["msg"] for err in ve.errors())
    except TrioidError as e:
        return _error(e)
    return "\n".join(r.line() for r in reports)


# ==================== Resources ====================

@mcp.resource("trioid://axioms/{axiom_id}")
def get_axiom(axiom_id: str) -> str:
    """
    获取公理或定律编号的说明

    axiom_id 为报告中出现的编号（如 L1⊢⊣、3r2、inv.4），
    使用 "all" 获取全部主题的目录。
    """
    resource = get_axiom_resource()

    if axiom_id == "all":
        return resource.get_all_axioms()

    return resource.get_axiom(axiom_id)


@mcp.resource("trioid://fixtures/{name}")
def get_fixture(name: str) -> str:
    """
    获取固定实例的 `.trioid` 文本

    可用的实例:
    - G2: ℤ/2 作为三元群
    - T4triv: 平凡作用，阶 4
    - T6: 交换作用，阶 6
    - P4: ℤ/2 上的乘积对（不是三元群）
    - M18: GF(3)² 标量矩阵三元群

    使用 "all" 获取实例列表。
    """
    resource = get_fixture_resource()

    if name == "all":
        return resource.get_all_fixtures()

    return resource.get_fixture(name)


# ==================== Prompts ====================

@mcp.prompt()
def failure_review(structure: str = "trigroup") -> str:
    """
    生成检查失败复核提示模板

    参数:
        structure: trisemigroup / trimonoid / trigroup / rack / leibniz
    """
    prompt_generator = get_failure_review_prompt()
    return prompt_generator.generate(structure)


# 启动服务器（仅在直接运行时）
if __name__ == "__main__":
    # 从环境变量检测运行模式，默认为 stdio
    transport = os.environ.get("MCP_TRANSPORT", "stdio")

    if transport == "streamable-http":
        # HTTP 模式：使用 uvicorn 手动启动以支持 PORT 环境变量
        import uvicorn

        port = int(os.environ.get("PORT", "8000"))
        app = mcp.streamable_http_app()
        uvicorn.run(app, host="0.0.0.0", port=port)
    else:
        mcp.run(transport=transport)
