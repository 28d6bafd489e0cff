"""Competitive-ratio bounds, kept exact as ``coef_e * e + const``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import check_alpha
from .machines import E_LOWER, E_UPPER


@dataclass(frozen=True)
class EBound:
    coef_e: Fraction
    const: Fraction

    def at(self, e) -> Fraction:
        return self.coef_e * Fraction(e) + self.const

    @property
    def upper(self) -> Fraction:
        return self.at(E_UPPER)

    @property
    def lower(self) -> Fraction:
        return self.at(E_LOWER)

    def admits(self, alg_cost: int, opt: int) -> bool:
        """``alg_cost <= bound * opt`` with e taken at its upper bound."""
        return alg_cost <= self.upper * opt

    def __float__(self):
        return float(self.at(Fraction(math.e)))

    def __str__(self):
        parts = []
        if self.coef_e:
            parts.append("e" if self.coef_e == 1 else f"{self.coef_e}e")
        if self.const or not parts:
            parts.append(str(self.const))
        return "+".join(parts)


def long_bound(alpha) -> EBound:
    alpha = check_alpha(alpha)
    return EBound(Fraction(0), Fraction(math.ceil(1 / alpha) + 1))


def short_factor(alpha) -> int:
    """``ceil(2/(1-alpha))``; appears only in the analysis of the short side."""
    alpha = check_alpha(alpha)
    return math.ceil(2 / (1 - alpha))


def short_bound(alpha, lam: int) -> EBound:
    """``(e+1)(lam+1)ceil(2/(1-alpha))``."""
    k = (lam + 1) * short_factor(alpha)
    return EBound(Fraction(k), Fraction(k))


def ratio_bound(alpha, lam: int) -> EBound:
    """Bound for the combined controller: short bound plus ``ceil(1/alpha)+1``.

    >>> str(ratio_bound("1/3", 0))
    '3e+7'
    """
    s, l = short_bound(alpha, lam), long_bound(alpha)
    return EBound(s.coef_e, s.const + l.const)
