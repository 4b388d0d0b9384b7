"""引理、注记与命题的逐项穷举验证

每一项都有稳定的编号（inv.1、xx1.4.ii、xyz.3、pair.7、prop.d …），
编号按内容而不是原文序号分配。
"""

import logging

import numpy as np

from trioid_lab.algebra.scan import scan_identity
from trioid_lab.algebra.tables import (
    CheckReport,
    Counterexample,
    LawResult,
    OpTable,
    TrioidTable,
)
from trioid_lab.config import COUNTEREXAMPLE_LIMIT, PAIR_INPUT_LIMIT, THETA_EXHAUSTIVE_ORDER
from trioid_lab.errors import GuardError, UsageError
from trioid_lab.tools.axiom_checker import (
    TrigroupCert,
    check_disemigroup,
    check_left_disemigroup,
    check_right_disemigroup,
    check_semigroup,
    check_trisemigroup,
)
from trioid_lab.tools.constructors import pair_trisemigroup
from trioid_lab.tools.derived import (
    PointedThreeRack,
    collapse,
    conjugation_table,
    inverse_group_J,
    phi,
)

logger = logging.getLogger(__name__)


def _arrays(T: TrioidTable, cert: TrigroupCert):
    return (T.left.entries, T.middle.entries, T.right.entries,
            np.asarray(cert.inverse, dtype=np.int64))


# ==================== 逆元引理 ====================

def verify_inverse_lemma(T: TrioidTable, cert: TrigroupCert) -> CheckReport:
    """
    逆元引理的各项

    inv.1       x⊢1 = 1⊥x = x⊥1 = 1⊣x = (x⁻¹)⁻¹
    inv.2       x⁻¹⊢x⊢y = x⊢x⁻¹⊢y = y
    inv.3       (x⊥y)⁻¹ = y⁻¹⊥x⁻¹
    inv.4       (x⊢y)⁻¹ = y⁻¹⊢x⁻¹ = y⁻¹⊣x⁻¹ = (x⊣y)⁻¹
    inv.4.idem  ((x⁻¹)⁻¹)⁻¹ = x⁻¹
    inv.5       J 是 ⊢=⊥=⊣ 的群
    inv.6       φ 是固定 J 的满同态，核为 𝔘_A
    """
    L, M, R, inv = _arrays(T, cert)
    u, n = cert.unit, T.order
    results = [
        scan_identity("inv.1", 1, n,
                      lambda x: L[x, u], lambda x: M[u, x], lambda x: M[x, u],
                      lambda x: R[u, x], lambda x: inv[inv[x]]),
        scan_identity("inv.2", 2, n,
                      lambda x, y: L[L[inv[x], x], y], lambda x, y: L[L[x, inv[x]], y],
                      lambda x, y: y),
        scan_identity("inv.3", 2, n,
                      lambda x, y: inv[M[x, y]], lambda x, y: M[inv[y], inv[x]]),
        scan_identity("inv.4", 2, n,
                      lambda x, y: inv[L[x, y]], lambda x, y: L[inv[y], inv[x]],
                      lambda x, y: R[inv[y], inv[x]], lambda x, y: inv[R[x, y]]),
        scan_identity("inv.4.idem", 1, n, lambda x: inv[inv[inv[x]]], lambda x: inv[x]),
    ]
    J = inverse_group_J(T, cert)
    results.append(collapse("inv.5", J.report))
    phi_result = phi(T, cert, J)
    own = tuple(r for r in phi_result.report.results if not r.law_id.startswith("J."))
    results.append(collapse("inv.6", CheckReport(own)))
    return CheckReport(tuple(results))


# ==================== 共轭引理 ====================

def verify_conjugation_lemma(T: TrioidTable, cert: TrigroupCert,
                             rack: PointedThreeRack | None = None) -> CheckReport:
    """
    xx1.1  e ∈ 𝔘_A ⇒ e⁻¹ ∈ 𝔘_A
    xx1.2  [x,y,1] = 1
    xx1.3  [e₁,e₂,x] = x，e₁, e₂ ∈ 𝔘_A
    xx1.4  [x,y,−] 保持 ⊣ (i)、⊢ (ii)、⊥ (iii)，保持 1，且是满射
    """
    L, M, R, inv = _arrays(T, cert)
    C = rack.op if rack is not None else conjugation_table(T, cert)
    n, u = T.order, cert.unit
    bars = sorted(cert.bar_units)

    closed = tuple(
        Counterexample("xx1.1", (e,), int(inv[e]), -1)
        for e in bars if int(inv[e]) not in cert.bar_units
    )[:COUNTEREXAMPLE_LIMIT]
    results = [
        LawResult("xx1.1", len(bars), closed),
        scan_identity("xx1.2", 2, n, lambda x, y: C[x, y, u], lambda x, y: u),
    ]

    E = np.asarray(bars, dtype=np.int64)
    z = np.arange(n)
    fixed = C[E[:, None, None], E[None, :, None], z[None, None, :]]
    bad = np.argwhere(fixed != z[None, None, :])[:COUNTEREXAMPLE_LIMIT]
    results.append(LawResult("xx1.3", len(bars) ** 2 * n, tuple(
        Counterexample("xx1.3", (int(E[i]), int(E[j]), int(k)), int(fixed[i, j, k]), int(k))
        for i, j, k in bad)))

    for law_id, op in (("xx1.4.i", R), ("xx1.4.ii", L), ("xx1.4.iii", M)):
        results.append(scan_identity(
            law_id, 4, n,
            lambda x, y, a, b, op=op: C[x, y, op[a, b]],
            lambda x, y, a, b, op=op: op[C[x, y, a], C[x, y, b]],
        ))
    results.append(scan_identity("xx1.4.unit", 2, n, lambda x, y: C[x, y, u], lambda x, y: u))

    ordered = np.sort(C, axis=2)
    distinct = 1 + (np.diff(ordered, axis=2) != 0).sum(axis=2)
    short = np.argwhere(distinct != n)[:COUNTEREXAMPLE_LIMIT]
    results.append(LawResult("xx1.4.onto", n * n, tuple(
        Counterexample("xx1.4.onto", (int(x), int(y)), int(distinct[x, y]), n) for x, y in short)))
    return CheckReport(tuple(results))


# ==================== θ 引理 ====================

def verify_theta_lemma(T: TrioidTable, cert: TrigroupCert,
                       rack: PointedThreeRack | None = None) -> CheckReport:
    """
    θ = x₁⊥x₂，t₁ = [x₁,x₂,y₁]，t₂ = [x₁,x₂,y₂]

    xyz.1  θ⊢z = [x₁,x₂,z]⊣θ
    xyz.2  θ⊢(y₁⊥y₂) = [x₁,x₂,y₁]⊥(θ⊢y₂)
    xyz.3  [x₁,x₂,[y₁,y₂,z]] = [t₁, t₂⊣θ, z]

    rack 给出时用它的表代替由 T 计算的共轭。
    """
    L, M, R, _ = _arrays(T, cert)
    C = rack.op if rack is not None else conjugation_table(T, cert)
    n = T.order
    return CheckReport((
        scan_identity("xyz.1", 3, n,
                      lambda x1, x2, z: L[M[x1, x2], z],
                      lambda x1, x2, z: R[C[x1, x2, z], M[x1, x2]]),
        scan_identity("xyz.2", 4, n,
                      lambda x1, x2, y1, y2: L[M[x1, x2], M[y1, y2]],
                      lambda x1, x2, y1, y2: M[C[x1, x2, y1], L[M[x1, x2], y2]]),
        scan_identity("xyz.3", 5, n,
                      lambda x1, x2, y1, y2, z: C[x1, x2, C[y1, y2, z]],
                      lambda x1, x2, y1, y2, z: C[C[x1, x2, y1], R[C[x1, x2, y2], M[x1, x2]], z],
                      threshold=THETA_EXHAUSTIVE_ORDER ** 5),
    ))


# ==================== disemigroup 注记 ====================

def verify_remarks(left: OpTable | None, star: OpTable | None, right: OpTable | None) -> CheckReport:
    """
    rem.left   (x⋆(y⊢z))⊢t = (x⋆y)⊢(z⊢t)，需要 left 与 star
    rem.right  x⊣((y⊣z)⋆t) = (x⊣y)⊣(z⋆t)，需要 star 与 right

    缺少所需的表时该项记为注记而不检查。
    """
    if star is None:
        raise UsageError("verify_remarks 需要 ⋆ 的运算表")
    S = star.entries
    n = star.order
    report = CheckReport()
    if left is not None:
        Lt = left.entries
        report = report + CheckReport.of(scan_identity(
            "rem.left", 4, n,
            lambda x, y, z, t: Lt[S[x, Lt[y, z]], t],
            lambda x, y, z, t: Lt[S[x, y], Lt[z, t]],
        ))
    else:
        report = report.with_note("rem.left skipped: no left table")
    if right is not None:
        Rt = right.entries
        report = report + CheckReport.of(scan_identity(
            "rem.right", 4, n,
            lambda x, y, z, t: Rt[x, S[Rt[y, z], t]],
            lambda x, y, z, t: Rt[Rt[x, y], S[z, t]],
        ))
    else:
        report = report.with_note("rem.right skipped: no right table")
    return report


# ==================== 乘积对命题 ====================

def _pair_identities(P: TrioidTable, L: np.ndarray, R: np.ndarray, n: int):
    """十四个展开式：(编号, 乘积上的复合, G 上的显式公式)"""
    Pl, Pm, Pr = P.left.entries, P.middle.entries, P.right.entries

    def pair(first, second):
        return first * n + second

    return [
        ("pair.1", lambda a, b, c: Pr[a, Pr[b, c]],
         lambda u, h, v, k, w, l: pair(u, R[h, R[k, l]])),
        ("pair.2", lambda a, b, c: Pr[a, Pm[b, c]],
         lambda u, h, v, k, w, l: pair(u, R[h, R[k, l]])),
        ("pair.3", lambda a, b, c: Pr[Pm[a, b], c],
         lambda u, h, v, k, w, l: pair(R[h, v], R[R[h, k], l])),
        ("pair.4", lambda a, b, c: Pm[a, Pr[b, c]],
         lambda u, h, v, k, w, l: pair(R[h, v], R[h, R[k, l]])),
        ("pair.5", lambda a, b, c: Pl[a, Pl[b, c]],
         lambda u, h, v, k, w, l: pair(L[h, L[k, w]], L[h, L[k, l]])),
        ("pair.6", lambda a, b, c: Pl[Pm[a, b], c],
         lambda u, h, v, k, w, l: pair(L[R[h, k], w], L[R[h, k], l])),
        ("pair.7", lambda a, b, c: Pl[a, Pm[b, c]],
         lambda u, h, v, k, w, l: pair(L[h, R[k, w]], L[h, R[k, l]])),
        ("pair.8", lambda a, b, c: Pm[Pl[a, b], c],
         lambda u, h, v, k, w, l: pair(R[L[h, k], w], R[L[h, k], l])),
        ("pair.9", lambda a, b, c: Pm[Pr[a, b], c],
         lambda u, h, v, k, w, l: pair(R[R[h, k], w], R[R[h, k], l])),
        ("pair.10", lambda a, b, c: Pm[a, Pl[b, c]],
         lambda u, h, v, k, w, l: pair(R[h, L[k, w]], R[h, L[k, l]])),
        ("pair.11", lambda a, b, c: Pl[Pr[a, b], c],
         lambda u, h, v, k, w, l: pair(L[R[h, k], w], L[R[h, k], l])),
        ("pair.12", lambda a, b, c: Pl[a, Pr[b, c]],
         lambda u, h, v, k, w, l: pair(L[h, v], L[h, R[k, l]])),
        ("pair.13", lambda a, b, c: Pr[Pl[a, b], c],
         lambda u, h, v, k, w, l: pair(L[h, v], R[L[h, k], l])),
        ("pair.14", lambda a, b, c: Pr[a, Pl[b, c]],
         lambda u, h, v, k, w, l: pair(u, R[h, L[k, l]])),
    ]


def verify_pair_proposition(left: OpTable, right: OpTable) -> CheckReport:
    """
    构造 G×G 上的 (⊩, ⊥⊥, ⊣⊣)，检查 pair.1–pair.14，再按输入满足的前提检查结论

    prop.a  ⊣ 结合时：(⊥⊥, ⊣⊣) 是右 disemigroup
    prop.b  (⊢, ⊣) 是 disemigroup 时：(⊩, ⊣⊣) 是 disemigroup
    prop.c  (⊢, ⊣) 是左 disemigroup 时：(⊩, ⊥⊥) 是左 disemigroup
    prop.d  (⊢, ⊣) 是 disemigroup 时：(⊩, ⊥⊥, ⊣⊣) 是 trisemigroup

    前提不满足的结论记为注记。
    """
    if left.order != right.order:
        raise UsageError(f"⊢ 与 ⊣ 的阶数不同: {left.order}, {right.order}")
    n = left.order
    if n > PAIR_INPUT_LIMIT:
        raise GuardError("乘积对命题的输入阶数", PAIR_INPUT_LIMIT, n)
    P = pair_trisemigroup(left, right)
    L, R = left.entries, right.entries

    results = []
    for law_id, composed, formula in _pair_identities(P, L, R, n):
        results.append(scan_identity(
            law_id, 3, n * n, composed,
            lambda a, b, c, f=formula: f(a // n, a % n, b // n, b % n, c // n, c % n),
        ))
    report = CheckReport(tuple(results))

    right_associative = check_semigroup(right).passed
    is_disemigroup = check_disemigroup(left, right).passed
    is_left = check_left_disemigroup(left, right).passed
    conclusions = (
        ("prop.a", right_associative, lambda: check_right_disemigroup(P.middle, P.right), "⊣ not associative"),
        ("prop.b", is_disemigroup, lambda: check_disemigroup(P.left, P.right), "input not a disemigroup"),
        ("prop.c", is_left, lambda: check_left_disemigroup(P.left, P.middle), "input not a left disemigroup"),
        ("prop.d", is_disemigroup, lambda: check_trisemigroup(P), "input not a disemigroup"),
    )
    for law_id, applies, check, reason in conclusions:
        if applies:
            report = report + CheckReport.of(collapse(law_id, check()))
        else:
            logger.info("%s 不适用: %s", law_id, reason)
            report = report.with_note(f"{law_id} skipped: {reason}")
    return report


def run_law_suite(T: TrioidTable, cert: TrigroupCert) -> CheckReport:
    """对一个已认证的三元群跑全部引理与注记"""
    return (
        verify_inverse_lemma(T, cert)
        + verify_conjugation_lemma(T, cert)
        + verify_theta_lemma(T, cert)
        + verify_remarks(T.left, T.middle, T.right)
    )
