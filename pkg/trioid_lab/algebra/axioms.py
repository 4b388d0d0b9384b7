"""三元恒等式的统一描述

每条公理都是两个形如 (x∘y)•z 或 x•(y∘z) 的项之间的等式，
运算用符号（⊢ ⊥ ⊣ ⋆）引用，求值时再绑定到具体的表。
公理检查器和枚举器共用这里的定义。
"""

from dataclasses import dataclass
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class Term:
    """grouped_left 为真表示 (x inner y) outer z，否则 x outer (y inner z)"""

    grouped_left: bool
    outer: str
    inner: str

    def evaluate(self, ops: Mapping[str, np.ndarray], x, y, z):
        if self.grouped_left:
            return ops[self.outer][ops[self.inner][x, y], z]
        return ops[self.outer][x, ops[self.inner][y, z]]

    def render(self) -> str:
        if self.grouped_left:
            return f"(x{self.inner}y){self.outer}z"
        return f"x{self.outer}(y{self.inner}z)"


@dataclass(frozen=True)
class TernaryAxiom:
    axiom_id: str
    lhs: Term
    rhs: Term

    @property
    def symbols(self) -> set[str]:
        return {self.lhs.outer, self.lhs.inner, self.rhs.outer, self.rhs.inner}

    def statement(self) -> str:
        return f"{self.lhs.render()} = {self.rhs.render()}"


def associativity(a: str) -> TernaryAxiom:
    return TernaryAxiom(f"ass-{a}", Term(True, a, a), Term(False, a, a))


def left_pair(l: str, s: str) -> list[TernaryAxiom]:
    """左 disemigroup (l, s) 的 L1、L2"""
    return [
        # x l (y l z) = (x s y) l z
        TernaryAxiom(f"L1{l}{s}", Term(False, l, l), Term(True, l, s)),
        # x l (y s z) = (x l y) s z
        TernaryAxiom(f"L2{l}{s}", Term(False, l, s), Term(True, s, l)),
    ]


def right_pair(s: str, r: str) -> list[TernaryAxiom]:
    """右 disemigroup (s, r) 的 R1、R2"""
    return [
        # x r (y r z) = x r (y s z)
        TernaryAxiom(f"R1{s}{r}", Term(False, r, r), Term(False, r, s)),
        # (x s y) r z = x s (y r z)
        TernaryAxiom(f"R2{s}{r}", Term(True, r, s), Term(False, s, r)),
    ]


def left_disemigroup_axioms(l: str = "⊢", s: str = "⋆") -> list[TernaryAxiom]:
    return [associativity(l), associativity(s), *left_pair(l, s)]


def right_disemigroup_axioms(s: str = "⋆", r: str = "⊣") -> list[TernaryAxiom]:
    return [associativity(s), associativity(r), *right_pair(s, r)]


def disemigroup_axioms(l: str = "⊢", r: str = "⊣") -> list[TernaryAxiom]:
    return [associativity(l), associativity(r), *left_pair(l, r), *right_pair(l, r)]


# (x⊣y)⊥z = x⊥(y⊢z)
T4 = TernaryAxiom("T4", Term(True, "⊥", "⊣"), Term(False, "⊥", "⊢"))

TRISEMIGROUP_AXIOMS: tuple[TernaryAxiom, ...] = (
    associativity("⊢"),
    associativity("⊥"),
    associativity("⊣"),
    *left_pair("⊢", "⊣"),
    *right_pair("⊢", "⊣"),
    *left_pair("⊢", "⊥"),
    *right_pair("⊥", "⊣"),
    T4,
)

TRISEMIGROUP_IDS: tuple[str, ...] = tuple(a.axiom_id for a in TRISEMIGROUP_AXIOMS)

GLYPH_TO_OP = {"⊢": "left", "⊥": "middle", "⊣": "right"}


def axiom_by_id(axiom_id: str) -> TernaryAxiom | None:
    for axiom in TRISEMIGROUP_AXIOMS:
        if axiom.axiom_id == axiom_id:
            return axiom
    return None
