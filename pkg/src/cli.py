"""
cli.py — Command-line interface for the homological algebra engine

Subcommands:
  homology        derived functor dims R^nF(M) for a named functor
  resolve         injective and projective resolution dims of M
  gss             Grothendieck spectral sequence pages and abutment
  lhs             LHS spectral sequence versus the Grothendieck side
  compare-first   first comparison for Hom_A(−, =) against Ext_A
  compare-second  second comparison along the augmentation RG → R
  hopf-check      Hopf axioms, identities, Φ/Ψ and α/β for RG ⊇ RN
  oracle          dim H^n(G, M) from a minimal resolution

Exit codes: 0 success, 1 usage or validation error, 2 failed hypothesis,
3 false verdict (a checked identity or comparison does not hold).

Usage:
  python -m src.cli lhs --group cyclic:4 --subgroup 0,2 --degree 5 --pages 4
  python -m src.cli hopf-check --group s3 --p 3
  python -m src.cli oracle --group cyclic:2 --degree 5 --out outputs/c2.json
  python -m src.cli gss --descriptor run.toml
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

import jsonschema  # noqa: E402
import numpy as np  # noqa: E402

from src.algebra import (  # noqa: E402
    FdAlgebra,
    FdModule,
    GroupTable,
    group_algebra,
    module_from_generators,
    regular_module,
    trivial_module,
)
from src.checks import CheckResult, all_passed  # noqa: E402
from src.comparison import change_of_rings_instance, ext_instance  # noqa: E402
from src.config import (  # noqa: E402
    DEFAULT_DEGREE,
    DEFAULT_PAGES,
    DEFAULT_PRIME,
    DEFAULT_PROVIDER,
    DEFAULT_RESOLUTION,
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERDICT_FALSE,
    NATURALITY_SAMPLES,
    PROVIDERS,
    RANDOM_SEED,
    RESOLUTION_KINDS,
    SCHEMA_VERSION,
    load_descriptor,
    resolve_group,
    validate_run,
)
from src.errors import (  # noqa: E402
    BudgetExceeded,
    DimensionMismatch,
    HomAlgError,
    HypothesisFailed,
    InverseCheckFailed,
    InvalidStructure,
    NotNormal,
    UntrustedRegionRequested,
)
from src.exporter import (  # noqa: E402
    export_page_csv,
    export_report_json,
    format_check_report,
    page_to_dict,
    render_pages_text,
    render_report_text,
)
from src.functors import functor_from_name, scalars  # noqa: E402
from src.grothendieck import as_provider, derived_dims, grothendieck_ss  # noqa: E402
from src.groupcoh import LHSInstance, cohomology_oracle, lhs_instance, lhs_vs_grothendieck  # noqa: E402
from src.hopf import HopfAxiomChecker, adjunction_alpha_beta, group_hopf, phi_psi  # noqa: E402
from src.linalg import FieldSpec  # noqa: E402
from src.resolutions import projective_resolution  # noqa: E402
from src.spectral import INF, page_label  # noqa: E402

logger = logging.getLogger(__name__)

COMMANDS = {
    "homology": "derived functor dims R^nF(M) for a named functor",
    "resolve": "injective and projective resolution dims of M",
    "gss": "Grothendieck spectral sequence pages and abutment",
    "lhs": "LHS spectral sequence versus the Grothendieck side",
    "compare-first": "first comparison for Hom_A(-, =) against Ext_A",
    "compare-second": "second comparison along the augmentation RG -> R",
    "hopf-check": "Hopf axioms and identities; with --subgroup also Phi/Psi and alpha/beta",
    "oracle": "dim H^n(G, M) from a minimal resolution",
}

# (exit code, JSON document, text for standard output)
Outcome = Tuple[int, Dict[str, Any], str]


# ---------------------------------------------------------------------------
# Run descriptors
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    group: GroupTable
    algebra: FdAlgebra
    module: FdModule
    subgroup: Optional[List[int]] = None
    _lhs: Optional[LHSInstance] = None

    @property
    def p(self) -> int:
        return self.algebra.p

    def lhs(self) -> LHSInstance:
        if self.subgroup is None:
            raise ValueError("this command needs --subgroup")
        if self._lhs is None:
            self._lhs = lhs_instance(self.group, self.subgroup, self.p, self.module)
        return self._lhs


def build_module(algebra: FdAlgebra, spec: Union[str, Dict[str, Any], None]) -> FdModule:
    """Module from a descriptor: "trivial", "regular" or {"dim", "action"}."""
    if spec is None or spec == "trivial":
        return trivial_module(algebra)
    if spec == "regular":
        return regular_module(algebra)
    if not spec["action"]:
        raise ValueError("module action needs at least one generator")
    generators = {int(k): np.array(v, dtype=np.int64).reshape(spec["dim"], spec["dim"])
                  for k, v in spec["action"].items()}
    return module_from_generators(algebra, generators, name="M")


def build_instance(doc: Dict[str, Any]) -> Instance:
    inst = doc["instance"]
    g = resolve_group(inst["group"])
    algebra = group_algebra(g, FieldSpec(inst["p"]))
    module = build_module(algebra, inst.get("module"))
    subgroup = inst.get("subgroup")
    if subgroup is not None and not g.is_subgroup(subgroup):
        raise NotNormal(f"{subgroup} is not a subgroup of {g.name}")
    logger.info(f"instance: {g.name} over GF({inst['p']}), module {module.name} (dim {module.dim})")
    return Instance(g, algebra, module, subgroup)


def run_descriptor(args: argparse.Namespace) -> Dict[str, Any]:
    """Merge a descriptor file with command-line flags (flags win) and validate."""
    doc: Dict[str, Any] = load_descriptor(Path(args.descriptor)) if args.descriptor else {}
    doc["schema"] = doc.get("schema", SCHEMA_VERSION)
    doc["command"] = args.command
    inst = dict(doc.get("instance", {}))
    flags = {
        "p": args.p,
        "group": args.group,
        "subgroup": [int(x) for x in args.subgroup.split(",")] if args.subgroup else None,
        "module": args.module,
    }
    inst.update({k: v for k, v in flags.items() if v is not None})
    inst.setdefault("p", DEFAULT_PRIME)
    if "group" not in inst:
        raise ValueError("no group given (use --group or a descriptor)")
    doc["instance"] = inst
    window = dict(doc.get("window", {}))
    window.update({k: v for k, v in {"degree": args.degree, "pages": args.pages}.items() if v is not None})
    doc["window"] = window
    functors = dict(doc.get("functors", {}))
    functors.update({k: v for k, v in {"f": args.f, "g": args.g}.items() if v is not None})
    if functors:
        doc["functors"] = functors
    for key, value in (("provider", args.provider), ("resolution", args.resolution), ("out", args.out)):
        if value is not None:
            doc[key] = value
    if args.waive:
        doc["waive"] = list(doc.get("waive", [])) + list(args.waive)
    if args.verbose:
        doc["verbose"] = True
    return validate_run(doc)


def _settings(doc: Dict[str, Any]) -> Tuple[int, int, str, str, Union[bool, List[str]]]:
    window = doc.get("window", {})
    waive = doc.get("waive", [])
    return (
        window.get("degree", DEFAULT_DEGREE),
        window.get("pages", DEFAULT_PAGES),
        doc.get("provider", DEFAULT_PROVIDER),
        doc.get("resolution", DEFAULT_RESOLUTION),
        True if "all" in waive else waive,
    )


def _dims_table(label: str, dims: Sequence[int]) -> str:
    return "\n".join([f"  {label:<8} {'dim':>6}"] + [f"  {n:<8} {d:>6}" for n, d in enumerate(dims)])


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_homology(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, _, provider, kind, _ = _settings(doc)
    name = doc.get("functors", {}).get("f", "invariants")
    nk = inst.lhs().nk if inst.subgroup is not None else None
    f = functor_from_name(name, inst.algebra, nk)
    dims = derived_dims(f, inst.module, degree, provider, kind)
    text = f"R^n {f.name}({inst.module.name})\n{_dims_table('n', dims)}"
    return EXIT_OK, {"functor": f.name, "dims": dims}, text


def cmd_resolve(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, _, provider, kind, _ = _settings(doc)
    injective = as_provider(provider).resolve(inst.module, degree).dims()
    projective = projective_resolution(inst.module, degree, kind=kind)
    dims = [projective.term(i).dim for i in range(projective.length + 1)]
    text = "\n".join([
        f"injective resolution ({provider}): {injective}",
        f"projective resolution ({kind}):  ranks {projective.ranks}, dims {dims}",
    ])
    return EXIT_OK, {"injective": injective, "projective_ranks": list(projective.ranks),
                     "projective_dims": dims}, text


def _target_algebra(f_name: str, inst: Instance) -> FdAlgebra:
    key = f_name.split(":", 1)[0]
    if key == "fixed_points":
        return inst.lhs().quotient_algebra
    if key in ("identity", "tensor"):
        return inst.algebra
    return scalars(inst.p)


def cmd_gss(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, pages, provider, kind, waive = _settings(doc)
    names = doc.get("functors", {})
    f_name, g_name = names.get("f", "fixed_points"), names.get("g", "quotient_invariants")
    nk = inst.lhs().nk if inst.subgroup is not None else None
    f = functor_from_name(f_name, inst.algebra, nk)
    g_algebra = _target_algebra(f_name, inst)
    g = functor_from_name("invariants" if g_name == "quotient_invariants" else g_name, g_algebra, nk)
    res = grothendieck_ss(inst.module, f, g, degree, provider, kind, waive=waive)
    tables = {f"E{page_label(r)}": res.page(r, degree) for r in range(2, pages + 1)}
    tables[f"E{page_label(INF)}"] = res.page(INF, degree, differentials=False)
    abutment = res.abutment_dims(degree)
    text = "\n\n".join([
        render_pages_text(tables),
        f"abutment\n{_dims_table('n', abutment)}",
        format_check_report(res.hypotheses, title="ACYCLICITY HYPOTHESES"),
    ])
    payload = {
        "functors": {"f": f.name, "g": g.name},
        "provenance": res.provenance,
        "trusted_degree": res.trusted_degree,
        "pages": {name: page_to_dict(page) for name, page in tables.items()},
        "abutment": abutment,
        "hypotheses": [r.to_dict() for r in res.hypotheses],
    }
    doc["_pages"] = tables
    return EXIT_OK, payload, text


def _report_outcome(report) -> Outcome:
    code = EXIT_OK if report.verdict else EXIT_VERDICT_FALSE
    return code, report.to_dict(), render_report_text(report)


def cmd_lhs(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, pages, provider, kind, waive = _settings(doc)
    if inst.subgroup is None:
        raise ValueError("lhs needs --subgroup")
    report = lhs_vs_grothendieck(inst.group, inst.subgroup, degree, inst.p, inst.module, pages,
                                 provider, kind, waive)
    doc["_pages"] = report.pages
    return _report_outcome(report)


def cmd_compare_first(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, _, provider, kind, waive = _settings(doc)
    report = ext_instance(inst.algebra, trivial_module(inst.algebra), inst.module, degree,
                          provider=provider, kind=kind, waive=waive)
    return _report_outcome(report)


def cmd_compare_second(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree, _, provider, kind, waive = _settings(doc)
    target = scalars(inst.p)
    phi = inst.algebra.augmentation.reshape(-1, 1)
    report = change_of_rings_instance(phi, inst.algebra, target, inst.module, trivial_module(target),
                                      degree, provider, kind, waive)
    return _report_outcome(report)


def cmd_hopf_check(doc: Dict[str, Any], inst: Instance) -> Outcome:
    h = group_hopf(inst.group, FieldSpec(inst.p), algebra=inst.algebra)
    results = HopfAxiomChecker(h).check_all()
    if inst.subgroup is not None:
        nk = inst.lhs().nk
        try:
            phi_psi(inst.module, nk)
            results.append(CheckResult(name="phi-psi-inverse", passed=True, module="hopf"))
        except InverseCheckFailed as exc:
            results.append(CheckResult(name="phi-psi-inverse", passed=False, module="hopf", description=str(exc)))
        hbar = nk.quotient.hbar.algebra
        try:
            adj = adjunction_alpha_beta(regular_module(hbar), regular_module(inst.algebra), inst.module, nk,
                                        rng=np.random.default_rng(RANDOM_SEED), samples=NATURALITY_SAMPLES)
            results.append(CheckResult(name="alpha-beta-inverse", passed=True, module="hopf",
                                       details={"left": adj.left_dim, "right": adj.right_dim}))
            results += adj.naturality
        except InverseCheckFailed as exc:
            results.append(CheckResult(name="alpha-beta-inverse", passed=False, module="hopf",
                                       description=str(exc)))
    code = EXIT_OK if all_passed(results) else EXIT_VERDICT_FALSE
    text = format_check_report(results, title=f"HOPF CHECK — {inst.group.name} over GF({inst.p})")
    return code, {"checks": [r.to_dict() for r in results], "verdict": code == EXIT_OK}, text


def cmd_oracle(doc: Dict[str, Any], inst: Instance) -> Outcome:
    degree = _settings(doc)[0]
    dims = cohomology_oracle(inst.group, inst.module, degree)
    text = f"H^n({inst.group.name}, {inst.module.name})\n{_dims_table('n', dims)}"
    return EXIT_OK, {"dims": dims}, text


HANDLERS: Dict[str, Callable[[Dict[str, Any], Instance], Outcome]] = {
    "homology": cmd_homology,
    "resolve": cmd_resolve,
    "gss": cmd_gss,
    "lhs": cmd_lhs,
    "compare-first": cmd_compare_first,
    "compare-second": cmd_compare_second,
    "hopf-check": cmd_hopf_check,
    "oracle": cmd_oracle,
}


# ---------------------------------------------------------------------------
# CLI entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; here 2 means a failed hypothesis."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--descriptor", default=None, help="Run descriptor (JSON or TOML)")
    common.add_argument("--group",      default=None, help="cyclic:n, klein4, q8, s3 or product:a,b")
    common.add_argument("--p",          type=int, default=None, help=f"Prime (default {DEFAULT_PRIME})")
    common.add_argument("--subgroup",   default=None, help="Comma-separated element indices, e.g. 0,2")
    common.add_argument("--module",     default=None, choices=["trivial", "regular"])
    common.add_argument("--degree",     type=int, default=None, help=f"Total degree (default {DEFAULT_DEGREE})")
    common.add_argument("--pages",      type=int, default=None, help=f"Last page shown (default {DEFAULT_PAGES})")
    common.add_argument("--provider",   default=None, choices=list(PROVIDERS))
    common.add_argument("--resolution", default=None, choices=list(RESOLUTION_KINDS))
    common.add_argument("--f",          default=None, help="First functor name (gss, homology)")
    common.add_argument("--g",          default=None, help="Second functor name (gss)")
    common.add_argument("--waive",      action="append", default=[],
                        help="Waive a failing hypothesis by name (repeatable; 'all' waives every one)")
    common.add_argument("--out",        default=None, help="Write the JSON result here")
    common.add_argument("--csv",        default=None, help="Write page tables as CSV here (gss, lhs)")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="Debug logging")
    noise.add_argument("--quiet",   action="store_true", help="Warnings only")

    parser = _Parser(description="Exact homological algebra over GF(p): resolutions, spectral "
                                 "sequences and their comparison")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=summary)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)

    try:
        doc = run_descriptor(args)
        inst = build_instance(doc)
        code, payload, text = HANDLERS[args.command](doc, inst)
    except HypothesisFailed as exc:
        logger.error(f"hypothesis failed: {exc}")
        return EXIT_HYPOTHESIS
    except (jsonschema.ValidationError, ValueError, FileNotFoundError, KeyError,
            InvalidStructure, NotNormal, DimensionMismatch, BudgetExceeded, UntrustedRegionRequested) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except HomAlgError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_VERDICT_FALSE

    print(text)
    if doc.get("out"):
        public = {k: v for k, v in doc.items() if not k.startswith("_") and k not in ("out", "verbose")}
        export_report_json({"run": public, "command": args.command, "exit_code": code, "result": payload},
                           Path(doc["out"]))
    if args.csv and doc.get("_pages"):
        export_page_csv(doc["_pages"], Path(args.csv))
    if code != EXIT_OK:
        logger.warning(f"{args.command}: verdict false (exit {code})")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
