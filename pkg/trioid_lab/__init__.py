"""
三元群工作台

在显式运算表上检查 trioid / trigroup 公理，构造实例，导出共轭 3-rack，
逐条验证引理，小阶枚举，以及光滑模型的 Leibniz 3-代数括号数值提取。
"""

__version__ = "0.1.0"
