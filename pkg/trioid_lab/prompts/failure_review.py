"""
检查失败的复核提示模板
"""


class FailureReviewPrompt:
    """失败报告复核提示生成器"""

    @staticmethod
    def generate(structure: str = "trigroup") -> str:
        """
        生成复核 FAIL 报告的提示模板

        参数:
            structure: 报告所针对的结构，可选值:
                  - trisemigroup: 十二条公理
                  - trimonoid: 公理加 bar-unit
                  - trigroup: 公理、bar-unit 与逆元（默认）
                  - rack: 导出的 pointed 3-rack
                  - leibniz: 光滑模型的数值残差

        返回:
            提示模板字符串
        """
        base_prompt = "下面是一份 trioid 检查报告，请逐条复核其中的 FAIL 行：\n\n"

        if structure == "trisemigroup":
            base_prompt += """
**trisemigroup 复核重点:**
1. 每个反例的见证 (x, y, z) 代入等式两侧，lhs 与 rhs 是否真的不同？
2. 失败的是结合律（ass-*）还是两个运算之间的交换律？
3. 若只有 T4 失败，(⊢, ⊥) 与 (⊥, ⊣) 各自是否已是 disemigroup？
4. 用 `trioid://axioms/{id}` 查看对应等式。
"""
        elif structure == "trimonoid":
            base_prompt += """
**trimonoid 复核重点:**
1. 公理部分是否全部 PASS？
2. no-bar-unit：是否存在 e 使 e⊢x = x = x⊣e 对所有 x 成立？
3. 检查 ⊢ 表中与下标行相同的行，以及 ⊣ 表中与下标列相同的列。
"""
        elif structure == "rack":
            base_prompt += """
**3-rack 复核重点:**
1. 3r1 的见证 (x₁, x₂, y₁, y₂, z)：两侧的嵌套共轭是否一致？
2. 3r2 的 lhs 是解的个数：为 0 还是大于 1？
3. 3r3：基点是否就是三元群的单位元？
4. 与 rack-solve 的显式解 θ⁻¹⊢b⊣θ 对照。
"""
        elif structure == "leibniz":
            base_prompt += """
**数值残差复核重点:**
1. max_residual 与 tol 相差几个数量级？
2. 减小 --step 后残差是否按 h² 缩小？若不缩小，问题在括号而非差分。
3. 对照闭式括号 (P_X·P_Y·U_Z, 0) 逐分量比较。
4. 换一个 --seed 是否仍失败？
"""
        else:  # trigroup
            base_prompt += """
**trigroup 综合复核清单:**

1. **公理**
   - 十二条公理是否全部 PASS？
   - 每个反例能否对着表重新求值复现？

2. **单位元**
   - 指定的单位元是否为 bar-unit（bar-unit-⊢ / bar-unit-⊣）？
   - 未指定时，是否有其它 bar-unit 可以给出全体逆元？

3. **逆元**
   - inverse-missing：x⊢y = y⊣x = x⊥y = y⊥x = 1 无解的元素有哪些？
   - inverse-ambiguous：两个候选都满足四个等式，说明表有问题。

4. **推导律**
   - 若公理全部通过而 inv.* / xx1.* 失败，先怀疑证书中的逆元映射。
"""

        base_prompt += "\n请给出每条失败的成因，并说明修改哪些表项可以修复。"

        return base_prompt


def get_prompt() -> FailureReviewPrompt:
    """获取失败复核提示生成器实例"""
    return FailureReviewPrompt()
