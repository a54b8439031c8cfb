"""Free-group words read off from crossings with a system of upward rays.

Every puncture p gets the ray p + s*(delta, 1), s >= 0.  The rays are pairwise
disjoint and avoid every vertex of the curves involved, so the sequence of
signed ray crossings along a path is a word in the free group on the
punctures.  A closed loop is null-homotopic in the punctured plane exactly when
its word reduces to the empty word, and the exponent sum of a letter is the
loop's winding number around that puncture.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonGenericInput
from .exactgeom import Rat2

Word = tuple[int, ...]

# candidate ray slopes; the first one that avoids every degeneracy is used
_SLOPE_DENOMINATORS = (7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def reduce_word(word: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for letter in w:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
    return tuple(out)


def exponent_sum(word: Sequence[int], letters: set[int]) -> int:
    return sum((1 if x > 0 else -1) for x in word if abs(x) in letters)


def choose_slope(punctures: Sequence[Rat2], points: Iterable[Rat2]) -> Fraction:
    """A ray slope delta such that no ray meets another puncture or any of ``points``.

    A ray from p with slope delta passes through v exactly when v lies above p
    and both have the same sheared coordinate x - delta * y, so each candidate
    slope is checked with one hash lookup per point.
    """
    pts = list(points) + list(punctures)
    candidates = [Fraction(num, n) for n in _SLOPE_DENOMINATORS for num in (1, -1, 2, -2, 3, -3)]
    for d in candidates:
        lowest: dict[Fraction, Fraction] = {}
        for p in punctures:
            key = p.x - d * p.y
            if key not in lowest or p.y < lowest[key]:
                lowest[key] = p.y
        clash = False
        for v in pts:
            y = lowest.get(v.x - d * v.y)
            if y is not None and v.y > y:
                clash = True
                break
        if not clash:
            return d
    raise NonGenericInput("no admissible ray slope found")


class RaySystem:
    """Upward rays from a list of punctures with a common slope."""

    def __init__(self, punctures: Sequence[Rat2], slope: Fraction):
        self.punctures = list(punctures)
        self.slope = slope
        # sort punctures by the x-coordinate where their ray meets y = 0,
        # which lets segment queries prune by a sheared x-range
        self._keys = sorted(
            ((p.x - slope * p.y, i) for i, p in enumerate(self.punctures)),
        )
        self._key_values = [k for k, _ in self._keys]

    def segment_crossings(self, a: Rat2, b: Rat2) -> list[tuple[Fraction, int]]:
        """(parameter along a->b, signed letter) for each ray the segment crosses."""
        from bisect import bisect_left, bisect_right

        d = self.slope
        ka, kb = a.x - d * a.y, b.x - d * b.y
        lo, hi = min(ka, kb), max(ka, kb)
        i0 = bisect_left(self._key_values, lo)
        i1 = bisect_right(self._key_values, hi)
        out = []
        seg = b - a
        ray = Rat2(d, 1)
        den = seg.cross(ray)
        if den == 0:
            return out
        for _, idx in self._keys[i0:i1]:
            p = self.punctures[idx]
            w = p - a
            t = w.cross(ray) / den
            s = w.cross(seg) / den
            if 0 <= t <= 1 and s >= 0:
                if t in (0, 1) or s == 0:
                    raise NonGenericInput("ray system is degenerate for this segment")
                # sign: +1 when the segment crosses the ray from right to left
                sign = 1 if ray.cross(seg) > 0 else -1
                out.append((t, sign * (idx + 1)))
        out.sort()
        return out
