"""
Comparison agent for Vocalis.

This module loads every file a comparison config references, then runs the per-vowel
workflow, optionally on several threads, and merges the rows in config order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from vocalis.common.errors import ValidationError
from vocalis.features.compare.config import CompareConfig, VowelEntry
from vocalis.features.compare.graph.workflow import create_vowel_graph
from vocalis.features.compare.models import CompareResult, FormantTable
from vocalis.features.formant.models import FormantSettings, Waveform
from vocalis.features.formant.wavio import read_wav
from vocalis.features.geometry.io import load_area_function, load_mesh
from vocalis.features.geometry.models import AreaFunction, TetMesh
from vocalis.features.geometry.primitives import make_cylinder_mesh, make_tube
from vocalis.features.glottis.models import TwoMassParams
from vocalis.features.helmholtz.models import EigenSettings, HelmholtzParams
from vocalis.features.synth.models import TubeParams
from vocalis.features.webster.models import WebsterParams


@dataclass(frozen=True)
class MethodParams:
    helmholtz: HelmholtzParams
    webster: WebsterParams
    eigen: EigenSettings
    tube: TubeParams
    glottis: TwoMassParams
    formant: FormantSettings
    duration: float

    @classmethod
    def from_config(cls, cfg: CompareConfig) -> "MethodParams":
        s = cfg.settings
        duration = cfg.duration
        if not duration > 0:
            raise ValidationError(f"[tube] duration must be positive, got {duration}")
        return cls(
            helmholtz=HelmholtzParams.from_settings(s),
            webster=WebsterParams.from_settings(s),
            eigen=EigenSettings.from_settings(s),
            tube=TubeParams.from_settings(s),
            glottis=TwoMassParams.from_settings(s),
            formant=FormantSettings.from_settings(s),
            duration=duration,
        )


@dataclass(frozen=True)
class LoadedVowel:
    label: str
    area: AreaFunction
    mesh: Optional[TetMesh]
    waves: Tuple[Waveform, ...]


def load_vowel(entry: VowelEntry) -> LoadedVowel:
    """Open and validate every input of one vowel; errors name the failing file."""
    if entry.area is not None:
        area = load_area_function(entry.area)
    else:
        t = entry.tube
        area = make_tube(t.shape, t.length, t.area0, t.n_segments)

    mesh = None
    if entry.mesh is not None:
        mesh = load_mesh(entry.mesh)
    elif entry.cylinder_mesh is not None:
        c = entry.cylinder_mesh
        mesh = make_cylinder_mesh(c.length, c.radius, c.target_h)

    waves = tuple(read_wav(path) for path in entry.audio)
    logger.debug(f"Loaded vowel {entry.label}: mesh={'yes' if mesh is not None else 'no'}, {len(waves)} recording(s)")
    return LoadedVowel(entry.label, area, mesh, waves)


def preflight(cfg: CompareConfig) -> List[LoadedVowel]:
    return [load_vowel(entry) for entry in cfg.vowels]


class CompareAgent:
    def __init__(self):
        self.vowel_workflow = create_vowel_graph()

    def _invoke_workflow(self, initial_state: Dict) -> Dict[str, Any]:
        """Helper to invoke the workflow; an unexpected exception fails the whole vowel."""
        try:
            final_state = self.vowel_workflow.invoke(initial_state)
            return {"rows": final_state.get("rows", []), "failures": final_state.get("failures", [])}
        except Exception as e:
            logger.opt(exception=e).error(f"Workflow failed for vowel {initial_state.get('label')}: {e}")
            return {"rows": [], "failures": [f"{initial_state.get('label')}: workflow failed: {e}"]}

    def run_vowel(self, vowel: LoadedVowel, params: MethodParams) -> Dict[str, Any]:
        initial_state = {
            "label": vowel.label,
            "area": vowel.area,
            "mesh": vowel.mesh,
            "waves": list(vowel.waves),
            "params": params,
            "reference": None,
            "rows": [],
            "failures": [],
        }
        return self._invoke_workflow(initial_state)

    def compare(self, cfg: CompareConfig, jobs: int = 1, vowels: Sequence[LoadedVowel] = None) -> CompareResult:
        """Run all methods for every vowel. File problems raise before any solver runs."""
        if jobs < 1:
            raise ValidationError(f"--jobs must be at least 1, got {jobs}")
        params = MethodParams.from_config(cfg)
        vowels = list(vowels) if vowels is not None else preflight(cfg)

        if jobs == 1 or len(vowels) == 1:
            results = [self.run_vowel(v, params) for v in vowels]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                # map keeps config order
                results = list(pool.map(lambda v: self.run_vowel(v, params), vowels))

        table = FormantTable.merge(r["rows"] for r in results)
        failures = [f for r in results for f in r["failures"]]
        logger.info(f"Comparison finished: {len(table)} rows, {len(failures)} failure(s)")
        return CompareResult(table, failures)
