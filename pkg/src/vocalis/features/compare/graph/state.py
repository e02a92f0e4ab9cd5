"""
State definitions for the comparison workflow.

This module provides the state class threaded through the per-vowel LangGraph workflow.
"""

from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class VowelState(BaseModel):
    """State for one vowel's run through every available method."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str = ""
    # loaded inputs (AreaFunction, TetMesh or None, list of Waveform)
    area: Any = None
    mesh: Any = None
    waves: List[Any] = Field(default_factory=list)
    # solver parameters, see CompareAgent.run_vowel
    params: Any = None
    # H_R resonance set, needed by the scaled Webster node
    reference: Optional[Any] = None
    rows: List[Any] = Field(default_factory=list)  # FormantRow
    failures: List[str] = Field(default_factory=list)
