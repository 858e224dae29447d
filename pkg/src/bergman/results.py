"""Result containers: computed norms/constants with their diagnostics."""

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class NormValue:
    """A computed norm or constant together with how it was obtained.

    ``value`` is the finite result, or ``math.inf`` when the quantity was
    detected to diverge.  Divergent values always carry evidence in
    ``diagnostics`` (an exponent or slope estimate); finite quadrature or
    truncation values carry their convergence diagnostics.
    ``verdict`` is one of ``finite``, ``divergent``, ``undetermined``.
    """

    value: float
    method: str = "quadrature"   # closed-form | quadrature | truncation | sup-grid
    verdict: str = "finite"
    diagnostics: dict = field(default_factory=dict)

    @property
    def divergent(self):
        return self.verdict == "divergent"

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        if self.divergent:
            return "NormValue(Divergent, %s)" % (self.diagnostics,)
        return "NormValue(%.12e, %s)" % (self.value, self.method)


def finite(value, method="quadrature", **diag):
    return NormValue(float(value), method=method, verdict="finite", diagnostics=diag)


def divergent(method="quadrature", **diag):
    return NormValue(math.inf, method=method, verdict="divergent", diagnostics=diag)


def undetermined(method="quadrature", **diag):
    return NormValue(math.nan, method=method, verdict="undetermined", diagnostics=diag)
