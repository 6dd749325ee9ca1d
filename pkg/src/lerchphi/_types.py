"""Parameter and report records shared by the engines and the oracle."""

import math
from dataclasses import dataclass

from .errors import DomainError

_CUT_SIDES = ("above", "below")


@dataclass(frozen=True)
class LerchPoint:
    """Validated (z, s, a) triple plus the branch side used on the cut.

    cut_side selects the limit taken when z lands exactly on [1, inf):
    "above" means the limit from Im z > 0, which fixes arg(-z) = -pi
    there.  Off the cut the flag is ignored.
    """

    z: complex
    s: complex
    a: complex
    cut_side: str = "above"

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "a", complex(self.a))
        if self.cut_side not in _CUT_SIDES:
            raise ValueError(f"cut_side must be one of {_CUT_SIDES}, "
                             f"got {self.cut_side!r}")
        a = self.a
        if a.imag == 0.0 and a.real <= 0.0 and a.real == round(a.real):
            raise DomainError(f"a = {a} makes a term of the defining "
                              "series singular")
        if self.z == 1.0 and self.s.real <= 1.0:
            raise DomainError("z = 1 is the branch point; no finite value "
                              "for Re s <= 1")

    @property
    def on_cut(self):
        return self.z.imag == 0.0 and self.z.real >= 1.0


@dataclass(frozen=True)
class EngineReport:
    """A computed value together with the engine's own accounting."""

    value: complex
    abs_err_estimate: float
    n_terms: int
    m_terms: int
    engine: str
    warnings: tuple = ()

    def __post_init__(self):
        e = self.abs_err_estimate
        if not (math.isfinite(e) and e >= 0.0):
            raise ValueError(f"abs_err_estimate must be finite and >= 0, "
                             f"got {e}")
