"""
trioid 命令行

stdout 只输出可解析的行（PASS / FAIL / NOTE / key=value），日志走 stderr。
退出码：0 全部通过，1 有检查失败，2 用法、解析或上限错误。
"""

import logging
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import Iterator, Optional

import typer
from mcp.server.fastmcp.utilities.logging import configure_logging
from pydantic import ValidationError

from trioid_lab.algebra.tables import CheckReport, Counterexample, LawResult, OpTable, TrioidTable
from trioid_lab.algebra.trioid_format import parse_trioid, serialize_trioid
from trioid_lab.config import NumericConfig
from trioid_lab.errors import TrioidError, UsageError
from trioid_lab.tools.axiom_checker import (
    TrigroupCert,
    check_digroup,
    check_trigroup,
    check_trimonoid,
    check_trisemigroup,
    spot_check_trisemigroup,
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
from trioid_lab.tools.enumerator import (
    CensusRow,
    StructureClass,
    enumerate_bruteforce,
    enumerate_trioids,
    write_census,
)
from trioid_lab.tools.law_suite import run_law_suite
from trioid_lab.tools.smooth_leibniz import (
    check_bracket_closed_form,
    check_leibniz_identity,
    check_trilinearity,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="三元半群、三元群与 3-rack 的有限模型检查工作台",
    no_args_is_help=True,
    add_completion=False,
)
construct_app = typer.Typer(help="构造实例并写出 .trioid 文件", no_args_is_help=True)
app.add_typer(construct_app, name="construct")


class CheckStructure(StrEnum):
    TRISEMIGROUP = "trisemigroup"
    TRIMONOID = "trimonoid"
    TRIGROUP = "trigroup"
    DIGROUP = "digroup"


# ==================== 公共部分 ====================

def _one_line(e: Exception) -> str:
    if isinstance(e, ValidationError):
        return "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
    return " ".join(str(e).split())


@contextmanager
def _diagnostics() -> Iterator[None]:
    """TrioidError、ValidationError 与文件错误 → stderr 一行诊断，退出码 2"""
    try:
        yield
    except (TrioidError, ValidationError, OSError) as e:
        typer.echo(f"error: {_one_line(e)}", err=True)
        raise typer.Exit(2) from None


def _load(path: Path) -> TrioidTable:
    return parse_trioid(path.read_text(encoding="utf-8"))


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _emit(report: CheckReport) -> None:
    """打印报告；有 FAIL 行时以退出码 1 结束"""
    for line in report.lines():
        typer.echo(line)
    for note in report.notes:
        typer.echo(f"NOTE {note}")
    if not report.passed:
        raise typer.Exit(1)


def _certify(T: TrioidTable, unit: Optional[int] = None) -> TrigroupCert:
    """需要三元群的子命令先取证书；失败时打印检查报告并以 1 结束"""
    result = check_trigroup(T, unit if unit is not None else T.unit)
    if isinstance(result, CheckReport):
        _emit(result)
    return result


# ==================== 子命令 ====================

@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="在 stderr 输出 DEBUG 日志"),
) -> None:
    configure_logging("DEBUG" if verbose else "WARNING")


@app.command()
def check(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, help=".trioid 文件"),
    structure: CheckStructure = typer.Option(CheckStructure.TRIGROUP, "--structure", "-s"),
    unit: Optional[int] = typer.Option(None, "--unit", help="指定单位元（0 起的下标）"),
    spot: Optional[int] = typer.Option(None, "--spot", min=1, help="对大表每条公理抽样 K 个三元组"),
    seed: Optional[int] = typer.Option(None, "--seed", help="--spot 的随机种子"),
) -> None:
    """按结构类别检查公理，逐条输出 PASS / FAIL"""
    with _diagnostics():
        T = _load(file)
        if spot is not None:
            if structure is not CheckStructure.TRISEMIGROUP:
                raise UsageError("--spot 只适用于 --structure trisemigroup")
            kwargs = {} if seed is None else {"seed": seed}
            report = spot_check_trisemigroup(T, spot, **kwargs)
        elif structure is CheckStructure.TRISEMIGROUP:
            report = check_trisemigroup(T)
        elif structure is CheckStructure.TRIMONOID:
            report = check_trimonoid(T)
        elif structure is CheckStructure.DIGROUP:
            u = unit if unit is not None else T.unit
            if u is None:
                raise UsageError("digroup 检查需要 --unit 或文件中的 unit 行")
            report = check_digroup(T.left, T.right, u)
        else:
            result = check_trigroup(T, unit if unit is not None else T.unit)
            report = result.report if isinstance(result, TrigroupCert) else result
    _emit(report)


@app.command()
def laws(file: Path = typer.Argument(..., exists=True, dir_okay=False)) -> None:
    """对三元群跑全部推导律"""
    with _diagnostics():
        T = _load(file)
        cert = _certify(T)
        report = run_law_suite(T, cert)
    _emit(report)


@app.command("derive-rack")
def derive_rack(
    file: Path = typer.Argument(..., exists=True, dir_okay=False),
    output: Path = typer.Option(..., "--output", "-o", help="写出的 .threerack 文件"),
) -> None:
    """导出以单位元为基点的 3-rack 并检查 3r1–3r3"""
    with _diagnostics():
        T = _load(file)
        cert = _certify(T)
        R = derive_three_rack(T, cert)
        _write(output, serialize_threerack(R))
        report = check_three_rack(R) + verify_rack_solve(T, cert, R)
    _emit(report)


@app.command()
def solve(
    file: Path = typer.Argument(..., exists=True, dir_okay=False),
    x: int = typer.Option(..., "--x"),
    y: int = typer.Option(..., "--y"),
    b: int = typer.Option(..., "--b"),
) -> None:
    """求 [x,y,z] = b 的唯一解 z 并回代验证"""
    with _diagnostics():
        T = _load(file)
        cert = _certify(T)
        z = rack_solve(T, cert, x, y, b)
        value = conjugation(T, cert, x, y, z)
    typer.echo(f"z={z}")
    typer.echo(f"verified={'true' if value == b else 'false'}")
    if value != b:
        _emit(CheckReport.of(LawResult("rack-solve", 1, (Counterexample("rack-solve", (x, y, b), value, b),))))


# ==================== construct ====================

def _report_construction(T: TrioidTable, output: Path, cert: Optional[TrigroupCert]) -> None:
    _write(output, serialize_trioid(T, annotate=True))
    typer.echo(f"order={T.order}")
    if cert is not None:
        typer.echo(f"unit={cert.unit}")
        for note in cert.report.notes:
            typer.echo(f"NOTE {note}")


@construct_app.command("pair")
def construct_pair(
    left: str = typer.Option(..., "--left", help="G 上 ⊢ 的表，如 \"0 1; 1 0\""),
    right: str = typer.Option(..., "--right", help="G 上 ⊣ 的表"),
    output: Path = typer.Option(..., "--output", "-o"),
) -> None:
    """G×G 上的乘积对构造"""
    with _diagnostics():
        T = pair_trisemigroup(OpTable(parse_grid(left, "⊢ 表")), OpTable(parse_grid(right, "⊣ 表")))
        _report_construction(T, output, None)


@construct_app.command("action")
def construct_action(
    m: int = typer.Option(..., "--m", min=1, help="|M|"),
    e: int = typer.Option(..., "--e", help="不动点在 M 中的下标"),
    h: str = typer.Option(..., "--h", help="H 的群表"),
    action: str = typer.Option(..., "--action", help="作用表，第 h 行第 v 列为 h·v"),
    output: Path = typer.Option(..., "--output", "-o"),
) -> None:
    """群 H 作用在带不动点的集合 M 上得到的三元群"""
    with _diagnostics():
        T, cert = action_trigroup(parse_action_spec(m, e, h, action))
        _report_construction(T, output, cert)


@construct_app.command("matrix")
def construct_matrix(
    p: int = typer.Option(..., "--p", help="素数"),
    n: int = typer.Option(1, "--n", help="向量维数"),
    output: Path = typer.Option(..., "--output", "-o"),
) -> None:
    """GF(p)^n 上的标量矩阵三元群"""
    with _diagnostics():
        T, cert = matrix_trigroup(FieldSpec(p=p, n=n))
        _report_construction(T, output, cert)


@construct_app.command("group")
def construct_group(
    table: str = typer.Option(..., "--table", help="群表"),
    output: Path = typer.Option(..., "--output", "-o"),
) -> None:
    """把群看作 ⊢ = ⊥ = ⊣ 的三元群"""
    with _diagnostics():
        T, cert = group_as_trigroup(OpTable(parse_grid(table, "群表")))
        _report_construction(T, output, cert)


# ==================== enumerate ====================

def _oracle_result(row: CensusRow, structure: StructureClass, up_to_iso: bool) -> LawResult:
    """与暴力枚举比较代表元集合"""
    oracle = enumerate_bruteforce(row.order, structure, up_to_iso)
    found = {serialize_trioid(T) for T in row.representatives}
    expected = {serialize_trioid(T) for T in oracle.representatives}
    cx = () if found == expected else (
        Counterexample("census-oracle", (row.order,), len(found), len(expected)),)
    return LawResult("census-oracle", oracle.count, cx)


@app.command("enumerate")
def enumerate_cmd(
    order: int = typer.Option(..., "--order", "-n"),
    structure: StructureClass = typer.Option(StructureClass.TRISEMIGROUP, "--class", "-c"),
    up_to_iso: bool = typer.Option(False, "--up-to-iso", help="只保留同构类的规范形"),
    oracle: bool = typer.Option(False, "--oracle", help="与暴力枚举比对（阶 ≤ 2）"),
    workers: int = typer.Option(1, "--workers", min=1),
    output: Path = typer.Option(..., "--output", "-o", help="普查输出目录"),
) -> None:
    """枚举小阶结构并写出普查"""
    with _diagnostics():
        row = enumerate_trioids(order, structure, up_to_iso, workers)
        write_census(row, output)
        report = CheckReport.of(_oracle_result(row, structure, up_to_iso)) if oracle else CheckReport()
    typer.echo(row.summary())
    _emit(report)


# ==================== leibniz ====================

@app.command()
def leibniz(
    dim: int = typer.Option(1, "--dim"),
    step: float = typer.Option(1e-4, "--step"),
    tol: float = typer.Option(1e-5, "--tol"),
    samples: int = typer.Option(100, "--samples"),
    seed: int = typer.Option(0, "--seed"),
    bracket_step: float = typer.Option(1e-2, "--bracket-step"),
) -> None:
    """光滑模型的 Leibniz 3-代数残差"""
    with _diagnostics():
        cfg = NumericConfig(step=step, tol=tol, samples=samples, seed=seed, bracket_step=bracket_step)
        reports = [
            check_leibniz_identity(dim, cfg),
            *check_trilinearity(dim, cfg),
            check_bracket_closed_form(dim, cfg),
        ]
    for r in reports:
        typer.echo(r.line())
    if not all(r.passed for r in reports):
        raise typer.Exit(1)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
