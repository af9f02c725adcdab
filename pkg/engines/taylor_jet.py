"""
Taylor Jets
Derivative vectors at a fixed center combined by the Leibniz rule.
"""

import math
from dataclasses import dataclass
from typing import Iterable

CENTER = 0.5


@dataclass(frozen=True)
class TaylorJet:
    """values[n] = n-th derivative of the represented function at the center"""

    values: tuple[float, ...]
    center: float = CENTER

    def __post_init__(self):
        if not self.values:
            raise ValueError("a jet needs at least the value entry")

    @classmethod
    def from_values(cls, values: Iterable[float], center: float = CENTER) -> "TaylorJet":
        return cls(tuple(float(v) for v in values), center)

    @classmethod
    def constant(cls, value: float, n_max: int, center: float = CENTER) -> "TaylorJet":
        return cls((float(value),) + (0.0,) * n_max, center)

    @classmethod
    def exponential(cls, amplitude: float, rate: float, n_max: int, center: float = CENTER) -> "TaylorJet":
        """Jet of amplitude * exp(rate * (s - center))"""
        return cls(tuple(amplitude * rate ** k for k in range(n_max + 1)), center)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> float:
        return self.values[n]

    def _check(self, other: "TaylorJet") -> int:
        if other.center != self.center:
            raise ValueError(f"jets centered at {self.center} and {other.center} do not combine")
        return min(self.n_max, other.n_max)

    def __add__(self, other: "TaylorJet") -> "TaylorJet":
        n = self._check(other)
        return TaylorJet(tuple(self.values[k] + other.values[k] for k in range(n + 1)), self.center)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scaled(other)
        n = self._check(other)
        return TaylorJet(
            tuple(
                math.fsum(math.comb(k, m) * self.values[m] * other.values[k - m] for m in range(k + 1))
                for k in range(n + 1)
            ),
            self.center,
        )

    __rmul__ = __mul__

    def scaled(self, factor: float) -> "TaylorJet":
        return TaylorJet(tuple(factor * v for v in self.values), self.center)

    def abs(self) -> "TaylorJet":
        return TaylorJet(tuple(abs(v) for v in self.values), self.center)


def product(jets: Iterable[TaylorJet], n_max: int, center: float = CENTER) -> TaylorJet:
    result = TaylorJet.constant(1.0, n_max, center)
    for jet in jets:
        result = result * jet
    return result
