"""
Models for the method comparison.

This module provides the comparison table and its rows.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from vocalis.common.errors import ValidationError
from vocalis.features.helmholtz.models import Method


@dataclass(frozen=True)
class FormantRow:
    """F1 and F2 of one vowel by one method, Hz."""

    vowel: str
    method: Method
    f1: float
    f2: float

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not (math.isfinite(self.f1) and math.isfinite(self.f2)):
            raise ValidationError(f"{self.vowel} {self.method.value}: non-finite frequency")
        if not 0 < self.f1 < self.f2:
            raise ValidationError(f"{self.vowel} {self.method.value}: need 0 < F1 < F2, got {self.f1:.1f}, {self.f2:.1f}")

    @property
    def sort_key(self) -> Tuple[str, int]:
        return self.vowel, self.method.rank


@dataclass(frozen=True)
class FormantTable:
    """At most one row per (vowel, method), kept sorted by vowel then method order."""

    rows: Tuple[FormantRow, ...] = ()

    def __post_init__(self):
        rows = tuple(sorted(self.rows, key=lambda r: r.sort_key))
        keys = [r.sort_key for r in rows]
        if len(set(keys)) != len(keys):
            duplicate = next(k for k in keys if keys.count(k) > 1)
            raise ValidationError(f"Duplicate row for vowel {duplicate[0]} method {list(Method)[duplicate[1]].value}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def merge(cls, parts: Iterable[Iterable[FormantRow]]) -> "FormantTable":
        return cls(tuple(row for part in parts for row in part))

    def __len__(self) -> int:
        return len(self.rows)

    def get(self, vowel: str, method: Method) -> Optional[FormantRow]:
        return next((r for r in self.rows if r.vowel == vowel and r.method == method), None)

    def vowels(self) -> List[str]:
        return sorted({r.vowel for r in self.rows})

    def distances_to_audio(self) -> Dict[str, Dict[Method, float]]:
        """Euclidean (F1, F2) distance of every method to A_F, for vowels that have A_F."""
        result: Dict[str, Dict[Method, float]] = {}
        for vowel in self.vowels():
            audio = self.get(vowel, Method.A_F)
            if audio is None:
                continue
            result[vowel] = {
                r.method: math.hypot(r.f1 - audio.f1, r.f2 - audio.f2)
                for r in self.rows
                if r.vowel == vowel and r.method != Method.A_F
            }
        return result


@dataclass
class CompareResult:
    """Table plus the per-method failures that kept rows out of it."""

    table: FormantTable
    failures: List[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.failures
