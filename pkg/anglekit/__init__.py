""" Anglekit is a program for studying angle vectors of polytopes, zonotopes and their lattices of flats. """

import importlib.metadata

from .errors import (  # noqa: F401
    AnglekitError,
    BudgetError,
    ConfigurationError,
    DegenerateError,
    DimensionError,
    FiberConditionError,
    FixtureError,
    NotGradedError,
    NotUnipotentError,
)
from .settings import Settings  # noqa: F401
from .poset import GradedPoset, PosetMap, poset_operator  # noqa: F401
from .geometry import Cone, Facet, LinearSubspace, Polytope  # noqa: F401
from . import incidence  # noqa: F401
from .incidence import FlagVector, IncidenceFunction, delta, flag_whitney, moebius, pullback, pushforward, whitney_numbers, zeta  # noqa: F401
from .zonotope import (  # noqa: F401
    Covector,
    FlatLattice,
    GeneratorConfiguration,
    Zonotope,
    characteristic_polynomial,
    cocharacteristic,
    cocharacteristic_recursion,
    direction_map,
    generic_configuration,
    greene_zaslavsky_count,
    greene_zaslavsky_expected,
    is_belt_polytope,
    lattice_of_flats,
    moment_configuration,
    random_configuration,
    region_count,
    uniqueness_matrices,
)
from .angles import BodyOracle, ConeAngle, ConeAngleSpec, Estimate  # noqa: F401
from .conegroup import AEVerdict, ConeCombination, Term, ae_equal, brianchon_gram, evaluate_at, gram_combination, vertex_partition  # noqa: F401
from .reports import Check, Report, ReportStore, RunManifest  # noqa: F401
from .anglevectors import AngleVector, FaceAngles, FlagAngleVector, angle_vector, flag_angle_vector, spherical_intrinsic_volumes  # noqa: F401
from .abindex import ABPolynomial, ab_index  # noqa: F401
from . import load  # noqa: F401

# Aliases.
Psi = ab_index

try:
    __version__ = importlib.metadata.version("anglekit")
except importlib.metadata.PackageNotFoundError:  # Running from a source checkout.
    __version__ = "0.0.0"
