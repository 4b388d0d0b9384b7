"""规模限制、采样阈值与数值配置"""

from pydantic import BaseModel, ConfigDict, Field

# ==================== 规模限制 ====================

# 可以做穷举公理检查的最大阶数
EXHAUSTIVE_ORDER_LIMIT = 64
# 可以制表的最大载体规模
TABULATION_LIMIT = 4096
# 3-rack 制表（n³ 个条目）的最大阶数
RACK_ORDER_LIMIT = 64
# 枚举器 / 暴力枚举 / 规范形的阶数上限
ENUMERATION_ORDER_LIMIT = 4
BRUTEFORCE_ORDER_LIMIT = 2
CANONICAL_ORDER_LIMIT = 8
# 乘积对命题检查的输入阶数上限（乘积阶数为其平方）
PAIR_INPUT_LIMIT = 4
# 引理 xyz 第 3 项（n⁵ 个元组）穷举的阶数上限
THETA_EXHAUSTIVE_ORDER = 20

# ==================== 报告与采样 ====================

# 每个公理编号最多记录的反例个数
COUNTEREXAMPLE_LIMIT = 10
# 元组个数超过该值时改为随机采样
SAMPLING_THRESHOLD = 5_000_000
SAMPLE_COUNT = 100_000
SAMPLE_SEED = 20_240_601


class NumericConfig(BaseModel):
    """光滑模型的数值参数

    step 用于 z ↦ [x,y,z] 的中心差分 Jacobian；
    bracket_step 用于括号的混合二阶差分（外层）。
    """

    model_config = ConfigDict(frozen=True)

    step: float = Field(default=1e-4, gt=0)
    tol: float = Field(default=1e-5, gt=0)
    samples: int = Field(default=100, ge=1)
    seed: int = 0
    bracket_step: float = Field(default=1e-2, gt=0)
