"""Parameter triple (a, b, c) of the Gauss series with its derived constants.

The triple is stored in the canonical order a <= b; the series is symmetric
in its first two parameters, so reordering never changes a value.  Derived
constants are plain properties and therefore always recomputed from (a, b, c),
which keeps them bit-for-bit consistent with the fields.  All arithmetic works
unchanged when the fields are `fractions.Fraction`, which is what the exact
series mode relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError
from .gammafn import is_nonpositive_integer


@dataclass(frozen=True, order=True)
class ParamTriple:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if is_nonpositive_integer(self.c):
            raise PoleError(f"c={self.c} is a non-positive integer; every series term would divide by zero")
        if self.b < self.a:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    # -- derived constants ------------------------------------------------

    @property
    def delta(self):
        """Parameter excess a + b - c; governs the growth near z = 1."""
        return self.a + self.b - self.c

    @property
    def alpha(self):
        """Second Taylor coefficient of the shifted map: ab/c."""
        return self.a * self.b / self.c

    @property
    def beta(self):
        """Third-coefficient ratio (a+1)(b+1) / (2(c+1))."""
        return (self.a + 1) * (self.b + 1) / (2 * (self.c + 1))

    @property
    def tau(self):
        """Alias of alpha used by the low-c auxiliary function."""
        return self.a * self.b / self.c

    @property
    def sigma(self):
        """(a-1) b / c, coefficient in the high-c auxiliary numerator."""
        return (self.a - 1) * self.b / self.c

    @property
    def sigma_prime(self):
        """(c-a-1) b / c, coefficient in the high-c auxiliary denominator."""
        return (self.c - self.a - 1) * self.b / self.c

    # -- helpers -----------------------------------------------------------

    def shifted(self, da=0, db=0, dc=0):
        """Raw shifted parameters (a+da, b+db, c+dc) as a plain tuple."""
        return (self.a + da, self.b + db, self.c + dc)

    def as_floats(self) -> "ParamTriple":
        return ParamTriple(float(self.a), float(self.b), float(self.c))

    def as_fractions(self) -> "ParamTriple":
        """Exact rational view; floats convert to their exact binary value."""
        return ParamTriple(Fraction(self.a), Fraction(self.b), Fraction(self.c))

    def ordered_positive(self) -> bool:
        return 0 < self.a <= self.b <= self.c
