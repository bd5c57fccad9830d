"""
sqmk command line.

Subcommands:
    kgroups   pi0, pi1 and the k-invariant of a model presentation
    present   export a presentation as JSON
    verify    run one relation or identity suite
    det3      determinant of a 3-periodic complex read from a JSON file
    realize   pairs of weak triangles for every element of pi1
    cofiber   six-term sequences of cofibers

Exit status is 0 when every check passes, 1 when a check fails and 2 when
the arguments do not form a valid run.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app import __version__
from app.config import settings
from app.schemas import Det3Request, KGroupsRequest, ModelSpec
from app.schemas.run import RunConfig
from app.services import KGroupService, TriangulatedService, VerificationService

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

Outcome = Tuple[Dict[str, Any], bool]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqmk",
        description="Stable quadratic modules and K0/K1 of small exact and triangulated categories",
    )
    parser.add_argument("--version", action="version", version=f"sqmk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--seed", type=int, default=settings.seed)
    io.add_argument("--output", default=None, help="write the report here instead of stdout")
    io.add_argument("--format", choices=["json", "text"], default="json")

    common = argparse.ArgumentParser(add_help=False, parents=[io])
    common.add_argument("--model", choices=["vect", "dualnum", "ftr", "field"], default="vect")
    common.add_argument("--q", type=int, default=None, help="field order for the vect model")
    common.add_argument("--base", default="F2", help="base field descriptor (F2, F3, F4, F2(t), ...)")
    common.add_argument("--maxdim", type=int, default=1, help="truncation level N")
    common.add_argument("--flavor", choices=["d", "v"], default="d",
                        help="distinguished or virtual triangles for the ftr model")
    common.add_argument("--mode", choices=["full", "reduced", "plus"], default=None)
    common.add_argument("--relations", choices=["generators", "exhaustive"], default="generators")

    kg = sub.add_parser("kgroups", parents=[common], help="homotopy groups of a model")
    kg.add_argument("--stable", action="store_true", help="also compare with level maxdim - 1")

    sub.add_parser("present", parents=[common], help="export a presentation")

    ver = sub.add_parser("verify", parents=[common], help="run a relation suite")
    ver.add_argument("--family", required=True)
    ver.add_argument("--count", type=int, default=20)

    d3 = sub.add_parser("det3", parents=[io], help="determinant of a 3-periodic complex")
    d3.add_argument("input", help="JSON file with ring and complex")

    rz = sub.add_parser("realize", parents=[common], help="realize pi1 by pairs of weak triangles")
    rz.add_argument("--budget", type=int, default=None)
    rz.add_argument("--target-class", type=int, nargs="+", default=None)

    cf = sub.add_parser("cofiber", parents=[common], help="six-term sequence of cofibers")
    cf.add_argument("--morphism", choices=["toy", "scalar", "stabilization", "random"], default="toy")
    cf.add_argument("--count", type=int, default=1)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validate parsed arguments into a RunConfig; raises ValidationError."""
    fields: Dict[str, Any] = {}
    if hasattr(args, "model"):
        fields["spec"] = ModelSpec(
            model=args.model, q=args.q, base=args.base, maxdim=args.maxdim, flavor=args.flavor
        )
        fields["mode"] = args.mode
        fields["relations"] = args.relations
    return RunConfig(
        command=args.command,
        **fields,
        seed=args.seed,
        budget=getattr(args, "budget", None),
        count=getattr(args, "count", 20),
        family=getattr(args, "family", None),
        target_class=getattr(args, "target_class", None),
        morphism=getattr(args, "morphism", "toy"),
        input=getattr(args, "input", None),
        output=args.output,
        format=args.format,
        stable=getattr(args, "stable", False),
    )


# ============== Dispatch ==============

def _failed(error: str) -> Outcome:
    return {"error": error}, False


def run_kgroups(config: RunConfig) -> Outcome:
    request = KGroupsRequest(
        **config.spec.model_dump(),
        mode=config.mode or "full",
        relations=config.relations,
        stable=config.stable,
    )
    report, error = KGroupService().kgroups(request)
    if error:
        return _failed(error)
    ok = report.stable is not False
    return report.model_dump(exclude_none=True), ok


def run_present(config: RunConfig) -> Outcome:
    P, error = KGroupService().present(config.spec, config.mode or "full", config.relations)
    if error:
        return _failed(error)
    return P.to_json(), True


def run_verify(config: RunConfig) -> Outcome:
    report, error = VerificationService().run(
        config.family,
        config.spec,
        config.effective_mode,
        config.count,
        config.seed,
        config.relations,
    )
    if error:
        return _failed(error)
    return report.summary(), report.passed


def run_det3(config: RunConfig) -> Outcome:
    try:
        request = Det3Request.model_validate_json(Path(config.input).read_text())
    except OSError as exc:
        return _failed(f"cannot read {config.input}: {exc}")
    except ValidationError as exc:
        return _failed(f"{config.input} is not a complex: {exc.errors()[0]['msg']}")
    report, error = TriangulatedService().det3(request)
    if error:
        return _failed(error)
    return report.model_dump(exclude_none=True), report.acyclic


def run_realize(config: RunConfig) -> Outcome:
    report, error = KGroupService().realize(
        config.spec, config.mode or "full", config.budget, config.target_class
    )
    if error:
        return _failed(error)
    return report.model_dump(), report.complete


def run_cofiber(config: RunConfig) -> Outcome:
    reports, error = KGroupService().cofiber(
        config.morphism, config.spec, config.mode or "full", config.count, config.seed
    )
    if error:
        return _failed(error)
    return {"sequences": [r.model_dump() for r in reports]}, all(r.exact for r in reports)


COMMANDS = {
    "kgroups": run_kgroups,
    "present": run_present,
    "verify": run_verify,
    "det3": run_det3,
    "realize": run_realize,
    "cofiber": run_cofiber,
}


# ============== Output ==============

def render(payload: Dict[str, Any], fmt: str) -> str:
    """JSON with sorted keys, or one `key: value` line per entry."""
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    lines: List[str] = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text + "\n")
        return
    Path(output).write_text(text + "\n")
    logger.info(f"report written to {output}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=logging.DEBUG if settings.debug else settings.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG

    try:
        config = config_from_args(args)
    except ValidationError as exc:
        for err in exc.errors():
            where = ".".join(str(p) for p in err["loc"]) or "arguments"
            sys.stderr.write(f"sqmk: {where}: {err['msg']}\n")
        return EXIT_CONFIG

    logger.info(f"{config.command} on {config.spec.model} (maxdim {config.spec.maxdim}), seed {config.seed}")
    payload, ok = COMMANDS[config.command](config)
    emit(render(payload, config.format), config.output)
    if not ok:
        logger.warning(f"{config.command} reported failures")
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
