"""Exact exponent arithmetic for the deficiency-zero threshold.

Every asymptotic quantity here is a pure power ``n**beta`` and is represented
by its exponent ``beta`` as a :class:`fractions.Fraction`.  For pure powers,
``n**a << n**b`` exactly when ``a < b``, so all comparisons are exact.

With ``p_n = n**gamma`` the expected count of class ``E_ij`` grows like
``n**(i + j + alpha_ij + gamma)``; the regime conditions below are linear
inequalities in those exponents.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .model import EdgeClass
from .sbm import Alpha

Exponent = Fraction


def threshold_components(alpha: Alpha) -> tuple[Fraction, ...]:
    """Exponents ``beta_1..beta_10`` solving the ten balance equations.

    Entries 1-3 balance the binary-class counts against ``n``, 4-7 the
    unary-unary count against ``n`` and the binary counts against ``1``,
    8-10 the inflow-weighted products against ``n**2, n**3, n**4``.
    """
    a01, a02, a11, a12 = (Fraction(a) for a in alpha)
    return (
        -1 - a02,
        -2 - a12,
        Fraction(-3),
        -1 - a11,
        -2 - a02,
        -3 - a12,
        Fraction(-4),
        (-2 - 2 * a01 - a02) / 3,
        (-3 - 3 * a01 - a12) / 4,
        (-4 - 4 * a01) / 5,
    )


def threshold_exponent(alpha: Alpha) -> Exponent:
    """Exponent ``beta`` of the threshold ``r(n) = n**beta``."""
    b = threshold_components(alpha)
    return min(b[0], b[1], b[2], max(b[3], min(b[4], b[5], b[6])), b[7], b[8], b[9])


def k_exponent(cls: EdgeClass, alpha: Alpha, gamma: Fraction) -> Exponent:
    """Growth exponent of the expected count ``K_ij`` when ``p_n = n**gamma``."""
    return cls.weight + Fraction(alpha.for_class(cls)) + Fraction(gamma)


def _kappas(alpha: Alpha, gamma: Fraction, cap_inflow: bool) -> dict[EdgeClass, Fraction]:
    kappa = {cls: k_exponent(cls, alpha, gamma) for cls in EdgeClass}
    if cap_inflow:
        # at most n inflow edges exist whatever the probability
        kappa[EdgeClass.E01] = min(Fraction(1), kappa[EdgeClass.E01])
    return kappa


_BINARY = (EdgeClass.E02, EdgeClass.E12, EdgeClass.E22)
# (binary class, power m): inflow products K01**m * K_ij compared with n**m
_INFLOW_PRODUCTS = ((EdgeClass.E02, 2), (EdgeClass.E12, 3), (EdgeClass.E22, 4))


def check_c1(alpha: Alpha, gamma: Fraction, cap_inflow: bool = False) -> list[str]:
    """Conditions under which deficiency zero fails with high probability."""
    k = _kappas(alpha, Fraction(gamma), cap_inflow)
    top = max(k[c] for c in _BINARY)
    held = []
    if top > 1:
        held.append("C1.1")
    if k[EdgeClass.E11] > 1 and top > 0:
        held.append("C1.2")
    if any(m * k[EdgeClass.E01] + k[c] > m for c, m in _INFLOW_PRODUCTS):
        held.append("C1.3")
    return held


def check_c2(alpha: Alpha, gamma: Fraction, cap_inflow: bool = False) -> list[str]:
    """Conditions all of which give deficiency zero with high probability.

    ``C2.2`` holds when either ``C2.2.1`` or ``C2.2.2`` does; both sub-tags
    are reported when satisfied.
    """
    k = _kappas(alpha, Fraction(gamma), cap_inflow)
    held = []
    if all(k[c] < 1 for c in _BINARY):
        held.append("C2.1")
    if k[EdgeClass.E11] < 1:
        held.append("C2.2.1")
    if all(k[c] < 0 for c in _BINARY):
        held.append("C2.2.2")
    if all(m * k[EdgeClass.E01] + k[c] < m for c, m in _INFLOW_PRODUCTS):
        held.append("C2.3")
    return held


class Regime(enum.Enum):
    DEFICIENCY_ZERO_WHP = "DeficiencyZeroWhp"
    POSITIVE_DEFICIENCY_WHP = "PositiveDeficiencyWhp"
    CRITICAL = "Critical"


@dataclass(frozen=True)
class RegimeVerdict:
    verdict: Regime
    triggered_conditions: tuple[str, ...]


def classify_regime(alpha: Alpha, gamma: Fraction, cap_inflow: bool = False) -> RegimeVerdict:
    """Asymptotic regime of ``P(deficiency = 0)`` for ``p_n ~ n**gamma``.

    The multiplicative constant of ``p_n`` is irrelevant.  With
    ``cap_inflow`` the inflow exponent is capped at one, which describes a
    sampler that clamps probabilities above one rather than the model as
    stated; it disagrees with :func:`threshold_exponent` only when the raw
    inflow probability would exceed one.
    """
    c1 = check_c1(alpha, gamma, cap_inflow)
    if c1:
        return RegimeVerdict(Regime.POSITIVE_DEFICIENCY_WHP, tuple(c1))
    c2 = check_c2(alpha, gamma, cap_inflow)
    c2_all = "C2.1" in c2 and "C2.3" in c2 and ("C2.2.1" in c2 or "C2.2.2" in c2)
    verdict = Regime.DEFICIENCY_ZERO_WHP if c2_all else Regime.CRITICAL
    return RegimeVerdict(verdict, tuple(c2))
