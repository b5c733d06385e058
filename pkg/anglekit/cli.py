""" The command line interface: each subcommand checks one claim and writes a report.

Exit codes are 0 if every check passes, 1 if a check fails and 2 for usage errors. """

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

import anglekit
from . import abindex, anglevectors, conegroup, incidence
from .load import utils as fixtures
from .reports import FORMATS, JSON, Check, Report, ReportStore, RunManifest
from .settings import Settings

log = logging.getLogger(__name__)

Command = Callable[[argparse.Namespace, Settings], Report]
COMMANDS: Dict[str, Command] = dict()


def command(name: str, claim: str) -> Callable[[Callable[[argparse.Namespace, Settings, Report], None]], Command]:
    """Register a subcommand that fills in a report for the given claim."""

    def decorator(function: Callable[[argparse.Namespace, Settings, Report], None]) -> Command:
        def run(args: argparse.Namespace, settings: Settings) -> Report:
            config = {key: value for key, value in vars(args).items() if key not in ("verbose", "out", "format")}
            manifest = RunManifest(name, config, settings.seed, settings.workers, settings.as_dict(), started=RunManifest.now())
            report = Report(claim, manifest)
            function(args, settings, report)
            report.manifest = manifest.finish()
            return report

        run.__doc__ = claim
        COMMANDS[name] = run
        return run

    return decorator


def _bounded(P: anglekit.Polytope, settings: Settings) -> anglekit.Polytope:
    if P.dim > settings.max_sampling_dim:
        raise anglekit.DimensionError(f"Monte Carlo checks run in dimension at most {settings.max_sampling_dim}, not {P.dim}")
    return P


def _specs(args: argparse.Namespace, d: int) -> List[anglekit.ConeAngleSpec]:
    names = args.angle or [anglekit.angles.STANDARD]
    return [fixtures.angle(name, d) for name in names]


def _sampling(settings: Settings) -> Dict[str, Any]:
    return {"budget": settings.samples, "seed": settings.seed, "workers": settings.workers, "settings": settings}


@command("gram", "the alternating sum of the interior angle vector is (-1)^(d+1) and the exterior vertex angles sum to 1")
def gram(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    P = _bounded(fixtures.polytope(args.fixture, settings), settings)
    for spec in _specs(args, P.ambient_dim):
        report.extend(anglevectors.check_gram(spec, P, **_sampling(settings)))
        report.extend(anglevectors.check_exterior_normalization(spec, P, **_sampling(settings)))


@command("angles", "interior and exterior angle vectors; the exterior vertex angles sum to 1")
def angles(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    P = _bounded(fixtures.polytope(args.fixture, settings), settings)
    for spec in _specs(args, P.ambient_dim):
        for side in anglevectors.SIDES:
            vector = anglevectors.angle_vector(spec, P, side, name=args.fixture, **_sampling(settings))
            report.tables.setdefault("angle_vectors", []).extend(vector.rows())
            if side == anglevectors.EXTERIOR:
                report.extend([Check.compare(f"exterior vertex angles of {args.fixture} under {spec.name} sum to 1", vector[0], 1, settings)])


@command("flag-angles", "flag angles satisfy the interior flag relations and are unchanged by adding 0 to S on the exterior side")
def flag_angles(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    P = _bounded(fixtures.polytope(args.fixture, settings), settings)
    for spec in _specs(args, P.ambient_dim):
        for side in anglevectors.SIDES:
            vector = anglevectors.flag_angle_vector(spec, P, side, **_sampling(settings))
            report.tables.setdefault("flag_angles", []).extend([args.fixture, spec.name] + row for row in vector.rows())
        report.extend(anglevectors.check_flag_relations(spec, P, **_sampling(settings)))


@command("zonotope-whitney", "the flag angles of a zonotope are determined by the flag-Whitney numbers of its lattice of flats")
def zonotope_whitney(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    cfg = fixtures.configuration(args.fixture, settings)
    _bounded(cfg.zonotope(), settings)
    for spec in _specs(args, cfg.ambient_dim):
        for side in anglevectors.SIDES:
            report.tables.setdefault("angle_vectors", []).extend(anglevectors.angle_vector(spec, cfg, side, name=args.fixture, **_sampling(settings)).rows())
        report.extend(anglevectors.check_zonotope_whitney(spec, cfg, **_sampling(settings)))


@command("independence", "the (flag-)angle vectors of a belt polytope do not depend on the cone angle")
def independence(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    P = _bounded(fixtures.polytope(args.fixture, settings), settings)
    names = args.angle or list(anglekit.angles.KINDS)
    specs = [fixtures.angle(name, P.ambient_dim) for name in names]
    report.extend(anglevectors.check_angle_independence(P, specs, **_sampling(settings)))


@command("intrinsic", "the spherical intrinsic volumes of a zonotope are |w_k| of its lattice of flats")
def intrinsic(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    cfg = fixtures.configuration(args.fixture, settings)
    _bounded(cfg.zonotope(), settings)
    for spec in _specs(args, cfg.ambient_dim):
        report.extend(anglevectors.check_intrinsic_volumes(spec, cfg, **_sampling(settings)))


@command("brianchon-gram", "Brianchon-Gram for cones, Gram for tangent cones and the vertex partition by outer cones hold almost everywhere")
def brianchon_gram(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    P = fixtures.polytope(args.fixture, settings)
    if P.dim > settings.max_sampling_dim or P.dim != P.ambient_dim:
        raise anglekit.DimensionError(f"Need a full-dimensional polytope of dimension at most {settings.max_sampling_dim}")

    d = P.ambient_dim
    identities = [
        ("Brianchon-Gram on the cone over", *conegroup.brianchon_gram(P.homogenize())),
        ("Gram on the tangent cones of", conegroup.gram_combination(P), conegroup.whole_space(d, (-1) ** (d + 1))),
        ("vertex partition by the outer cones of", *conegroup.vertex_partition(P)),
    ]
    for name, lhs, rhs in identities:
        verdict = conegroup.ae_equal(lhs, rhs, args.trials, settings.seed, settings)
        witness = None if verdict.witness is None else [str(x) for x in verdict.witness]
        report.extend([Check(f"{name} {args.fixture}", {"trials": verdict.trials, "witness": witness}, {"disagreements": 0}, verdict.equal)])


@command("gz-count", "for generic w the number of zonotope vertices whose tangent cone contains w is (-1)^d mu(0, 1)")
def gz_count(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    if not 1 <= args.dim <= settings.max_sampling_dim:
        raise anglekit.DimensionError(f"Arrangements are drawn in dimension 1 to {settings.max_sampling_dim}, not {args.dim}")

    rng = np.random.default_rng(settings.seed)
    for index in range(args.arrangements):
        n = int(rng.integers(args.dim, args.dim + 4))
        cfg = anglekit.random_configuration(args.dim, n, settings.seed + index)
        Z = cfg.zonotope()
        expected = anglekit.greene_zaslavsky_expected(cfg)
        normals = [facet.normal for facet in Z.facets()]
        for p in conegroup.generic_points(normals, args.dim, args.directions, settings.seed + index, settings):
            count = anglekit.greene_zaslavsky_count(cfg, p)
            report.extend([Check(f"vertex count of {cfg!r} at {[str(x) for x in p]}", count, expected, count == expected)])


@command("reciprocity", "substituting 1/z into the chain generating function of g gives minus that of g^{-1}")
def reciprocity(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    for index in range(args.posets):
        rank = 1 + index % 4
        poset = anglekit.GradedPoset.random(rank, width=3, seed=settings.seed + index)
        g = incidence.random_unipotent(poset, seed=settings.seed + index)
        result = incidence.reciprocity_check(poset, g)
        report.extend([Check(f"reciprocity on random poset {index} of rank {rank}", result, True, result)])

    for name in args.fixtures or ["square", "cube 3", "simplex 3", "generic 3 4 0", "permutohedron 3"]:
        fixture = fixtures.fixture(name, settings)
        lattices = [("face lattice", fixtures.polytope(name, settings).face_lattice())]
        if isinstance(fixture, anglekit.GeneratorConfiguration):
            lattices.append(("lattice of flats", fixture.flat_lattice()))
        for kind, lattice in lattices:
            direct = anglekit.flag_whitney(lattice, "first")
            derived = incidence.first_kind_from_second(anglekit.flag_whitney(lattice, "second"))
            report.extend([Check(f"first kind flag-Whitney numbers of the {kind} of {name} from the second kind", derived.to_json(), direct.to_json(), derived == direct)])


@command("abindex-span", "the ab-indices of the {E, ME}^d posets span and the product with a chain acts by an operator on ab-indices")
def abindex_span(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    report.extend(abindex.spanning_experiment(args.dim))
    lattices = {f"B_{n}": anglekit.GradedPoset.boolean(n) for n in range(1, 4)}
    lattices.update({f"C_{n}": anglekit.GradedPoset.chain(n) for n in range(1, 3)})
    for name in ["segment", "square", "hexagon", "cube 3", "generic 3 4 0", "generic 3 5 1", "permutohedron 3"]:
        lattices[name] = fixtures.configuration(name, settings).flat_lattice()
    for name, lattice in lattices.items():
        report.extend(abindex.product_operator_check(lattice, name))


@command("uniqueness-rank", "the matrices of Whitney numbers and cocharacteristic coefficients of generic zonotopes are unimodular")
def uniqueness_rank(args: argparse.Namespace, settings: Settings, report: Report) -> None:
    if not 1 <= args.dim <= settings.max_exact_dim:
        raise anglekit.DimensionError(f"Exact lattices are built in dimension 1 to {settings.max_exact_dim}, not {args.dim}")
    report.extend(abindex.uniqueness_experiment(args.dim, settings.seed))


def parser() -> argparse.ArgumentParser:
    """Return the argument parser of the command line interface."""

    main_parser = argparse.ArgumentParser(prog="anglekit", description="Check identities between angle vectors, flag-Whitney numbers and ab-indices.")
    main_parser.add_argument("--version", action="version", version=f"%(prog)s {anglekit.__version__}")
    subparsers = main_parser.add_subparsers(dest="command", required=True)

    for name, run in COMMANDS.items():
        sub = subparsers.add_parser(name, help=run.__doc__, description=run.__doc__)
        sub.add_argument("--samples", type=int, help="Monte Carlo budget (default 10^6 or ANGLEKIT_SAMPLES)")
        sub.add_argument("--seed", type=int, help="random seed (default 0 or ANGLEKIT_SEED)")
        sub.add_argument("--workers", type=int, help="parallel sampling workers (default 1 or ANGLEKIT_WORKERS)")
        sub.add_argument("--format", choices=FORMATS, default=JSON, help="report format")
        sub.add_argument("--out", help="report directory (default reports or ANGLEKIT_REPORTS)")
        sub.add_argument("-v", "--verbose", action="count", default=0, help="log more (repeat for debug output)")

        if name in ("gram", "angles", "flag-angles", "zonotope-whitney", "independence", "intrinsic", "brianchon-gram"):
            sub.add_argument("--fixture", default="cube 3", help='fixture name, e.g. "cube 3", "generic 3 5 1" or a JSON file')
        if name in ("gram", "angles", "flag-angles", "zonotope-whitney", "independence", "intrinsic"):
            sub.add_argument("--angle", action="append", help="cone angle: standard, body, point_limit or a JSON file (repeatable)")
        if name == "brianchon-gram":
            sub.add_argument("--trials", type=int, help="generic points per identity (default 1000)")
        if name == "gz-count":
            sub.add_argument("--dim", type=int, default=3)
            sub.add_argument("--arrangements", type=int, default=20)
            sub.add_argument("--directions", type=int, default=10)
        if name == "reciprocity":
            sub.add_argument("--posets", type=int, default=100)
            sub.add_argument("--fixtures", nargs="*", help="fixtures whose lattices are checked")
        if name in ("abindex-span", "uniqueness-rank"):
            sub.add_argument("--dim", type=int, default=3)

    return main_parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line interface and return its exit code."""

    args = parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")

    try:
        settings = Settings.from_env().replace(samples=args.samples, seed=args.seed, workers=args.workers, reports=args.out)
        report = COMMANDS[args.command](args, settings)
    except anglekit.AnglekitError as error:
        log.error("%s", error)
        sys.stderr.write(f"anglekit {args.command}: error: {error}\n")
        return 2

    path = ReportStore(settings.reports).write(report, args.format)
    sys.stdout.write(f"{report.summary()}\nreport: {path}\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
