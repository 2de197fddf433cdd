"""
Adapters reading external level lists, spacings and histograms.
"""

from .adapter import IngestedLevels, LevelAdapter, LevelUnit, parse_level_unit
from .csv_adapter import CsvLevelAdapter

__all__ = ["CsvLevelAdapter", "IngestedLevels", "LevelAdapter", "LevelUnit", "parse_level_unit"]
