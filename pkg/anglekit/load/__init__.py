""" A collection of example polytopes and zonotopes. """

from .polytopes import cross, ngon, pyramid, simplex  # noqa: F401
from .zonotopes import cube, generic, hexagon, moment, permutohedron, segment, square  # noqa: F401
from .utils import angle, configuration, fixture, parse_name, polytope  # noqa: F401
