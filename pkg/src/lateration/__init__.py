"""Exact multilateration: recover a user position and clock bias from
satellite positions and arrival times, and decide whether the answer is
unique."""
from .errors import (
    CoplanarSatellites,
    DegenerateQuadratic,
    DegenerateQuadric,
    DegenerateSampling,
    DuplicateSatellites,
    InconsistentReduction,
    InvalidInput,
    LaterationError,
    NoSolution,
    NumericalCondition,
    TooFewSatellites,
    WrongSatelliteCount,
)
from .experiments import Histogram, RegionMap, monte_carlo, region_map
from .model import GroundTruth, Scenario, Solution, synthesize_times, validate
from .numkernel import DEFAULT_TOL, Tolerance
from .quadric import FocalQuadric, QuadricClass, classify_focal, recover_focal_parameters, second_focus
from .solver import Branch, SolveReport, solve
from .uniqueness import (
    CaseLabel,
    Certificate,
    UniquenessReport,
    build_moment_matrix,
    certify_uniqueness,
    classify_uniqueness,
    f_tilde,
    sample_hyperboloid_witness,
)

__version__ = "0.1.0"
