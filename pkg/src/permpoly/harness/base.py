"""Base class for verification suites."""

from abc import ABC, abstractmethod

from permpoly.schemas import Report
from permpoly.settings import ProfileBounds


class Suite(ABC):
    """Base class for all verification suites."""

    name: str = "base"
    description: str = "Base suite"

    @abstractmethod
    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """Run the suite's grid and return its report.

        Args:
            bounds: Grid bounds from the active profile
            workers: Size of the worker pool for case grids

        Returns:
            Report whose disagreements count property violations
        """
