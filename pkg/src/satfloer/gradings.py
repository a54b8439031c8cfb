"""Alexander gradings and the graded Euler characteristic of a minimal diagram.

For two generators x, y the grading difference is n_z(D) - n_w(D) for a
domain D from x to y.  Closing the alpha-arc x -> y with the beta_0-arc y -> x
gives a loop whose winding numbers are the multiplicities of D, and because
alpha never meets the short segments joining each w-lift to its z-lift, that
difference is the signed number of times the beta_0-arc crosses those
segments.  Each crossing therefore carries a "height": the signed count of
w-z segments crossed by beta_0 from a fixed origin.  Heights differ from
absolute Alexander gradings by one global shift, fixed by symmetry.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import AsymmetricSpectrum, NotNullHomologous, NotUnit
from .pairing import Crossing, MinPosResult


@dataclass(frozen=True)
class GradedCount:
    """Per Alexander grading: (dimension, signed count)."""

    entries: dict[int, tuple[int, int]]

    @property
    def total_dim(self) -> int:
        return sum(d for d, _ in self.entries.values())

    def dims(self) -> dict[int, int]:
        return {a: d for a, (d, _) in sorted(self.entries.items()) if d}

    def signed(self) -> dict[int, int]:
        return {a: s for a, (_, s) in sorted(self.entries.items()) if s}

    def dim_at(self, a: int) -> int:
        return self.entries.get(a, (0, 0))[0]


def _owner(result: MinPosResult, x: Crossing) -> int:
    return result.diagram.data.strands[x.strand].component


def relative_alexander(result: MinPosResult, x: Crossing, y: Crossing) -> int:
    """A(x) - A(y)."""
    ids = {c.index for c in result.survivors}
    if x.index not in ids or y.index not in ids:
        raise NotNullHomologous("both generators must survive minimisation")
    return x.height - y.height


def intersection_sign(x: Crossing) -> int:
    """Local sign det(alpha', beta') using the stored orientation of alpha."""
    return x.sign


def absolute_alexander(result: MinPosResult) -> GradedCount:
    """Shift heights so that the dimension spectrum is symmetric about zero."""
    heights = Counter(x.height for x in result.survivors)
    if not heights:
        return GradedCount({})
    lo, hi = min(heights), max(heights)
    if (lo + hi) % 2:
        raise AsymmetricSpectrum(f"grading range {lo}..{hi} has no integer centre")
    centre = (lo + hi) // 2
    for h, n in heights.items():
        if heights.get(2 * centre - h, 0) != n:
            raise AsymmetricSpectrum(f"dimension at {h - centre} differs from its mirror")
    entries: dict[int, list[int]] = {}
    for x in result.survivors:
        a = x.height - centre
        e = entries.setdefault(a, [0, 0])
        e[0] += 1
        e[1] += x.sign
    return GradedCount({a: (d, s) for a, (d, s) in sorted(entries.items())})


def alexander_polynomial(g: GradedCount) -> dict[int, int]:
    """Coefficients {exponent: c} of the signed count, scaled so the sum is +1."""
    coeffs = g.signed()
    total = sum(coeffs.values())
    if total not in (1, -1):
        raise NotUnit(f"signed count sums to {total}")
    return {a: c * total for a, c in coeffs.items()}


def polynomial_product(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: Counter = Counter()
    for a, c in p.items():
        for b, d in q.items():
            out[a + b] += c * d
    return {k: v for k, v in sorted(out.items()) if v}


def substitute_power(p: dict[int, int], n: int) -> dict[int, int]:
    """p(t) -> p(t^n)."""
    out: Counter = Counter()
    for a, c in p.items():
        out[a * n] += c
    return {k: v for k, v in sorted(out.items()) if v}


def normalize_unit(p: dict[int, int]) -> dict[int, int]:
    """Representative of p up to multiplication by +-t^k: symmetric and p(1) > 0."""
    if not p:
        return {}
    lo, hi = min(p), max(p)
    shift = (lo + hi) // 2 if (lo + hi) % 2 == 0 else None
    if shift is None:
        # not symmetrisable; anchor at the lowest exponent instead
        shift = lo
    sgn = 1 if sum(p.values()) >= 0 else -1
    return {a - shift: c * sgn for a, c in sorted(p.items())}
