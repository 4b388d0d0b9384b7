"""工作台异常层次

公理不成立不是异常：失败以 CheckReport 形式返回。
异常只用于输入格式错误、规模限制和构造前提不满足。
"""


class TrioidError(Exception):
    """所有工作台错误的基类"""


class UsageError(TrioidError):
    """调用方式错误：下标越界、阶数不匹配、未知运算等"""


class GuardError(UsageError):
    """规模超过限制"""

    def __init__(self, what: str, limit: int, actual: int):
        self.what = what
        self.limit = limit
        self.actual = actual
        super().__init__(f"{what} 超出限制: {actual} > {limit}")


class ParseError(TrioidError):
    """文本格式解析失败，附带行号（从 1 开始）"""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"第 {line} 行: {message}")


class TableValidationError(TrioidError):
    """表格内容不满足声明的性质（例如声明的单位元不是 bar-unit）"""


class ConstructionError(TrioidError):
    """构造器前提不满足，消息中给出违反的等式"""
