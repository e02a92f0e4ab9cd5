"""
Public API for the comparison agent.

This module provides a public interface for running method comparisons.
"""

from vocalis.features.compare.agent import CompareAgent
from vocalis.features.compare.config import load_compare_config
from vocalis.features.compare.models import CompareResult

# Singleton instance of the comparison API
_compare_api = None


def get_compare_api():
    """Get or create the comparison API"""
    global _compare_api
    if _compare_api is None:
        _compare_api = CompareAPI()
    return _compare_api


class CompareAPI:
    """Public API for the comparison agent."""

    def __init__(self):
        """Initialize the API with a comparison agent."""
        self._agent = CompareAgent()

    def compare_file(self, config_path, jobs: int = 1, use_env: bool = True) -> CompareResult:
        """
        Run every available method for every vowel in a config file.

        Args:
            config_path: Path of the comparison config
            jobs: Number of vowels processed concurrently
            use_env: Apply VOCALIS_* environment overrides to the defaults

        Returns:
            CompareResult with the formant table and per-method failures.
        """
        cfg = load_compare_config(config_path, use_env=use_env)
        return self._agent.compare(cfg, jobs)
