"""Problem data: the QP instance and constraint configurations.

The QP is ``min u'Hu + F'u  s.t.  A'u <= B`` where constraint ``i`` is the
column ``A[:, i]``. A configuration assigns ``+1`` (kept) or ``-1``
(disregarded, i.e. replaced by its complementary half-space ``-A_i'u <= -B_i``)
to every constraint; hard constraints are always ``+1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidConfiguration, NotPositiveDefinite
from .linalg import as_matrix, as_vector, cholesky_spd


@dataclass(frozen=True, eq=False)
class QpInstance:
    A: np.ndarray
    B: np.ndarray
    H: np.ndarray | None = None
    F: np.ndarray | None = None
    hard: tuple[int, ...] = ()

    def __post_init__(self):
        A = as_matrix(self.A, name="A")
        m, C = A.shape
        B = as_vector(self.B, C, name="B")
        H = as_matrix(np.eye(m) if self.H is None else self.H, m, m, name="H")
        F = as_vector(np.zeros(m) if self.F is None else self.F, m, name="F")
        hard = tuple(sorted({int(i) for i in self.hard}))
        if hard and (hard[0] < 0 or hard[-1] >= C):
            raise ValueError(f"hard indices must lie in [0, {C})")
        try:
            chol = cholesky_spd(H)
        except (ValueError, NotPositiveDefinite) as exc:
            raise NotPositiveDefinite(f"H: {exc}") from exc
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "hard", hard)
        object.__setattr__(self, "_chol", chol)

    @classmethod
    def from_rows(cls, rows, b, H=None, F=None, hard=()) -> QpInstance:
        """Build from constraint rows ``a_i' u <= b_i`` (rows stacked, then transposed)."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        return cls(rows.T, b, H=H, F=F, hard=hard)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def C(self) -> int:
        return self.A.shape[1]

    @property
    def soft(self) -> tuple[int, ...]:
        hard = set(self.hard)
        return tuple(i for i in range(self.C) if i not in hard)

    @property
    def cholesky(self) -> np.ndarray:
        return self._chol

    def objective(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(u @ self.H @ u + self.F @ u)

    def subset(self, indices: Iterable[int]) -> QpInstance:
        """Instance keeping only the listed constraints (in the given order)."""
        idx = [int(i) for i in indices]
        pos = {j: p for p, j in enumerate(idx)}
        hard = [pos[i] for i in self.hard if i in pos]
        return QpInstance(self.A[:, idx].reshape(self.m, len(idx)), self.B[idx], self.H, self.F, tuple(hard))

    def without(self, indices: Iterable[int]) -> QpInstance:
        drop = set(int(i) for i in indices)
        return self.subset(i for i in range(self.C) if i not in drop)

    def flipped(self, config: Configuration) -> QpInstance:
        """The instance with ``S(P)`` applied, so that ``config`` reads as all-kept."""
        s = self.check(config)
        return QpInstance(self.A * s, self.B * s, self.H, self.F, self.hard)

    def check(self, config: Configuration) -> np.ndarray:
        """Validate ``config`` against this instance; return its signs as an array."""
        if len(config) != self.C:
            raise InvalidConfiguration(f"configuration has {len(config)} entries, instance has {self.C} constraints")
        s = config.array()
        bad = [i for i in self.hard if s[i] != 1]
        if bad:
            raise InvalidConfiguration(f"hard constraints {bad} cannot be disregarded")
        return s


@dataclass(frozen=True)
class Configuration:
    """Sign vector over all constraints; ``-1`` marks a disregarded constraint."""

    signs: tuple[int, ...] = field()

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (-1, 1) for s in signs):
            raise InvalidConfiguration(f"configuration entries must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def kept(cls, C: int) -> Configuration:
        return cls((1,) * C)

    @classmethod
    def disregarding(cls, C: int, indices: Iterable[int]) -> Configuration:
        drop = set(int(i) for i in indices)
        return cls(tuple(-1 if i in drop else 1 for i in range(C)))

    @classmethod
    def parse(cls, text: str) -> Configuration:
        """Parse a string of ``+``/``-`` characters, one per constraint."""
        text = text.strip()
        if not text or any(ch not in "+-" for ch in text):
            raise InvalidConfiguration(f"configuration string must contain only '+' and '-', got {text!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in text))

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def array(self) -> np.ndarray:
        return np.array(self.signs, dtype=float)

    @property
    def level(self) -> int:
        return level(self)

    @property
    def disregarded(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s < 0)

    def flip(self, i: int) -> Configuration:
        signs = list(self.signs)
        signs[i] = -signs[i]
        return Configuration(tuple(signs))


def level(config: Configuration | Sequence[int]) -> int:
    """Number of constraints the configuration keeps: ``sum_j max(p_j, 0)``."""
    signs = config.signs if isinstance(config, Configuration) else config
    return sum(max(int(p), 0) for p in signs)
