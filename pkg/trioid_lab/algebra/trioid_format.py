"""`.trioid` 文本格式的解析与序列化

格式:
    trioid v1
    order <n>
    unit <i>            # 可选，0 起始
    op left             # 随后 n 行，每行 n 个整数；第 i 行第 j 个是 i∘j
    op middle
    op right

`#` 之后为注释，空行忽略。序列化按 left、middle、right 的顺序输出，默认不带注释。
"""

from typing import Iterator

from trioid_lab.algebra.tables import Op, TrioidTable
from trioid_lab.errors import ParseError, TableValidationError

HEADER = "trioid v1"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} 不是整数: {token!r}", number) from None


def parse_trioid(text: str) -> TrioidTable:
    """
    解析 `.trioid` 文本

    Args:
        text: 文件内容

    Returns:
        TrioidTable；若声明了 unit，构造时会校验 1⊢x = x = x⊣1

    Raises:
        ParseError: 头部、行长度或条目越界等格式错误（带行号）
        TableValidationError: 声明的单位元不满足 bar-unit 等式
    """
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != HEADER:
        raise ParseError(f"第一行必须是 '{HEADER}'", lines[0][0] if lines else 1)

    pos = 1
    if pos >= len(lines) or not lines[pos][1].startswith("order "):
        raise ParseError("缺少 'order <n>' 行", lines[pos][0] if pos < len(lines) else lines[-1][0])
    number, line = lines[pos]
    n = _parse_int(line.split(None, 1)[1], number, "阶数")
    if n < 1:
        raise ParseError(f"阶数必须为正: {n}", number)
    pos += 1

    unit = None
    unit_line = 0
    blocks: dict[Op, list[list[int]]] = {}
    while pos < len(lines):
        number, line = lines[pos]
        tokens = line.split()
        if tokens[0] == "unit" and len(tokens) == 2 and not blocks:
            if unit is not None:
                raise ParseError("重复的 unit 行", number)
            unit = _parse_int(tokens[1], number, "unit")
            if not 0 <= unit < n:
                raise ParseError(f"unit {unit} 不在 [0, {n}) 内", number)
            unit_line = number
            pos += 1
            continue
        if tokens[0] != "op" or len(tokens) != 2:
            raise ParseError(f"期望 'op left|middle|right'，得到 {line!r}", number)
        try:
            op = Op(tokens[1])
        except ValueError:
            raise ParseError(f"未知的运算块: {tokens[1]!r}", number) from None
        if op in blocks:
            raise ParseError(f"重复的运算块: {op.value}", number)
        rows = []
        for i in range(n):
            pos += 1
            if pos >= len(lines):
                raise ParseError(f"运算块 {op.value} 只有 {i} 行，需要 {n} 行", lines[-1][0])
            row_number, row_line = lines[pos]
            row = [_parse_int(tok, row_number, "条目") for tok in row_line.split()]
            if len(row) != n:
                raise ParseError(f"行长度为 {len(row)}，需要 {n}", row_number)
            for v in row:
                if not 0 <= v < n:
                    raise ParseError(f"条目 {v} 不在 [0, {n}) 内", row_number)
            rows.append(row)
        blocks[op] = rows
        pos += 1

    missing = [op.value for op in Op if op not in blocks]
    if missing:
        raise ParseError(f"缺少运算块: {', '.join(missing)}", lines[-1][0])

    try:
        return TrioidTable.from_arrays(blocks[Op.LEFT], blocks[Op.MIDDLE], blocks[Op.RIGHT], unit)
    except TableValidationError as e:
        raise TableValidationError(f"第 {unit_line} 行: {e}") from None


def serialize_trioid(T: TrioidTable, annotate: bool = False) -> str:
    """
    生成规范文本，parse_trioid(serialize_trioid(T)) == T

    Args:
        T: 运算表
        annotate: 为真且 T 带有元素名称时，在头部加一行注释列出名称
    """
    out = [HEADER, f"order {T.order}"]
    if annotate and T.names is not None:
        out.append("# elements: " + " ".join(f"{i}={name}" for i, name in enumerate(T.names)))
    if T.unit is not None:
        out.append(f"unit {T.unit}")
    for op, table in T.tables().items():
        out.append(f"op {op.value}")
        out.extend(" ".join(str(v) for v in row) for row in table.rows())
    return "\n".join(out) + "\n"
