"""Result records for theory computations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class TheoryResult:
    """Dimensions of one theory on one space.

    ``grading`` is ``"Z"`` for H_G (``dims[q]`` for ``q = 0..D``) and ``"Z2"``
    for H_dl and K (``dims = (even, odd)``).
    """

    theory: str  # "H_G" | "H_dl" | "K"
    grading: str
    dims: tuple
    space: str
    params: tuple  # (("D", 6),) or (("W", 2),)
    invariant_factors: tuple = ()
    generators: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    @property
    def param(self) -> dict:
        return dict(self.params)

    @property
    def even(self) -> int:
        if self.grading == "Z2":
            return self.dims[0]
        return sum(self.dims[0::2])

    @property
    def odd(self) -> int:
        if self.grading == "Z2":
            return self.dims[1]
        return sum(self.dims[1::2])

    def __getitem__(self, k):
        if isinstance(k, str):
            return {"even": self.even, "odd": self.odd}[k]
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def rows(self) -> list:
        """``(label, dim)`` rows in a fixed order, for reports."""
        if self.grading == "Z":
            return [(str(q), d) for q, d in enumerate(self.dims)]
        return [("even", self.dims[0]), ("odd", self.dims[1])]


@dataclass(frozen=True)
class KClass:
    """A compatible tuple of windowed virtual representations.

    ``vector`` holds integer coordinates on the degree-0 cochains of every
    piece (cells times window labels, pieces in assembly order).  ``data``
    lists one :class:`~equires.groups.RepRingElem` per piece component, keyed
    by ``(piece, representative vertex)``.
    """

    space: str
    W: int
    vector: tuple
    data: tuple = field(default=(), compare=False)

    def is_zero(self) -> bool:
        return not any(self.vector)

    def __str__(self):
        parts = [f"{p}@{v}: {e}" for (p, v), e in self.data]
        return "; ".join(parts) or "0"


@dataclass(frozen=True)
class DLClass:
    """A delocalized cocycle, by coordinates on the ambient cochains of one degree."""

    space: str
    W: int
    degree: int
    vector: tuple


@dataclass(frozen=True)
class TriangleReport:
    ok: bool
    checked: int
    failures: tuple = ()

    def __bool__(self):
        return self.ok
