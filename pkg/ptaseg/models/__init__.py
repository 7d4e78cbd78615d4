from .bands import BandPair, SectorizedBands
from .config import PtaConfig, RefineConfig, SyntheticSpec, WceWeights
from .image import (
    BinaryMask, DistanceField, GrayImage, LabelMask, ProbabilityMap
)
from .reports import (
    CaseResult, LossReport, MetricsReport, PiecewiseLossReport, RefineTrace,
    SampleStats, SectorStatistic
)


__all__ = [
    'BandPair',
    'BinaryMask',
    'CaseResult',
    'DistanceField',
    'GrayImage',
    'LabelMask',
    'LossReport',
    'MetricsReport',
    'PiecewiseLossReport',
    'ProbabilityMap',
    'PtaConfig',
    'RefineConfig',
    'RefineTrace',
    'SampleStats',
    'SectorStatistic',
    'SectorizedBands',
    'SyntheticSpec',
    'WceWeights',
]
