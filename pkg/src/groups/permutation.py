import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple

CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1 in image-array form; images[i] is the image of i.

    Mappings act on the left: ``(p * q)(x) == p(q(x))``.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for idx, point in enumerate(cycle):
                images[point] = cycle[(idx + 1) % len(cycle)]
        return Permutation(tuple(images))

    @staticmethod
    def parse(text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
        stripped = CYCLE_RE.sub("", text).strip()
        if stripped:
            raise ValueError(f"could not parse permutation {text!r}")
        cycles = []
        for body in CYCLE_RE.findall(text):
            points = [int(tk) for tk in re.split(r"[\s,]+", body.strip()) if tk]
            if points:
                cycles.append(points)
        return Permutation.from_cycles(degree, *cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("permutations must have the same degree")
        images = self.images
        return Permutation._trusted(tuple(images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation._trusted(tuple(inv))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by * self * by^-1``."""
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def fixes(self, point: int) -> bool:
        return self.images[point] == point

    def moved_points(self) -> List[int]:
        return [i for i, image in enumerate(self.images) if i != image]

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                seen.add(point)
                cycle.append(point)
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    @staticmethod
    def _trusted(images: Tuple[int, ...]) -> "Permutation":
        # skips the bijection check for images produced by composition
        perm = object.__new__(Permutation)
        object.__setattr__(perm, "images", images)
        return perm

