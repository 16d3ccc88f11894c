"""Command-line interface: ``cantor-spectra <command> -p P -a ALPHA -D d1,d2,...``.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 unsupported system.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import itertools
import json
import logging
import sys
import time
from typing import Sequence

from .errors import (
    CantorSpectraError,
    DomainError,
    InstanceTooLargeError,
    PreconditionError,
    UnsupportedSystemError,
)
from .expansion import expand
from .numeric import grid_to_csv, mu_hat_grid, mu_hat_values, truncation_level
from .orthogonality import (
    branching_profile,
    enumerate_hadamard_L,
    is_orthogonal_family,
    max_ratio_closed_subset_size,
    mu_hat_is_zero,
)
from .polyarith import cyclotomic
from .system import CantorSystem, build_system
from .trees import (
    SpectralLabeling,
    canonical_labeling,
    enumerate_labelings,
    lambda_of_labeling,
    validate_labeling,
)

log = logging.getLogger("cantor_spectra")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3

REFERENCE_SYSTEMS = ((2, 2, (0, 2)), (2, 3, (0, 2, 4, 6)))
CONFIG_FIELDS = ("p", "alpha", "D", "depth", "bound", "limit", "index", "J", "grid", "format", "out",
                 "jobs", "freqs", "tree", "betas", "raices", "raices_p")


class UsageError(DomainError):
    pass


@dataclasses.dataclass
class CliConfig:
    command: str
    p: int | None = None
    alpha: int | None = None
    D: list[int] | None = None
    depth: int = 4
    bound: int = 4096
    limit: int = 100
    index: int | None = None
    J: int = 40
    grid: tuple[float, float, float] | None = None
    format: str = "json"
    out: str | None = None
    jobs: int = 1
    freqs: list[int] | None = None
    tree: str | None = None
    betas: list[list[int]] | None = None
    raices: bool = True
    raices_p: int | None = None

    def system(self) -> CantorSystem:
        if self.p is None or self.alpha is None or self.D is None:
            raise UsageError("a system needs -p, -a/--alpha and -D/--digits")
        return build_system(self.p, self.alpha, self.D)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {text!r}")
    return lo, hi, step


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor-spectra", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, help="prime p")
    common.add_argument("-a", "--alpha", type=int, help="exponent alpha, N = p^alpha")
    common.add_argument("-D", "--digits", dest="D", type=_int_list, help="comma-separated digits")
    common.add_argument("--config", help="JSON file with the same field names as the flags")
    common.add_argument("--format", choices=("json", "dot", "csv", "text"))
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="T, hypothesis flags, Hadamard label sets")

    for name, help_ in (("tree", "emit a spectral labeling"), ("spectrum", "integers of a labeling")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--depth", type=int)
        sp.add_argument("--index", type=int, help="position in the enumeration order instead of the canonical labeling")
        sp.add_argument("--limit", type=int)
        if name == "spectrum":
            sp.add_argument("--tree", metavar="PATH", help="read the labeling from a JSON tree file")

    sp = sub.add_parser("verify", parents=[common], help="orthogonality and branching of a frequency list")
    sp.add_argument("--freqs", type=_int_list, help="comma-separated integers (use --freqs=-1,2)")

    sp = sub.add_parser("muhat", parents=[common], help="truncated Fourier transform on a grid (CSV)")
    sp.add_argument("--grid", type=_grid, help="lo:hi:step")
    sp.add_argument("-J", "--truncation", dest="J", type=int)

    sp = sub.add_parser("oracle", parents=[common], help="exact-vs-numeric sweep and ratio-closed root search")
    sp.add_argument("--bound", type=int, help="sweep integers with |k| <= bound")
    sp.add_argument("--betas", type=_int_list, action="append", help="beta set for the root search (repeatable)")
    sp.add_argument("--raices-p", dest="raices_p", type=int, help="prime for the root search")
    sp.add_argument("--no-raices", dest="raices", action="store_false", default=None)
    sp.add_argument("--jobs", type=int)
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    values = {k: v for k, v in vars(ns).items() if v is not None}
    if ns.config:
        try:
            with open(ns.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}")
        unknown = set(file_values) - set(CONFIG_FIELDS)
        if unknown:
            raise UsageError(f"unknown config fields {sorted(unknown)}")
        if "grid" in file_values and isinstance(file_values["grid"], str):
            file_values["grid"] = _grid(file_values["grid"])
        for k, v in file_values.items():
            values.setdefault(k, v)
    fields = {f.name for f in dataclasses.fields(CliConfig)}
    return CliConfig(**{k: v for k, v in values.items() if k in fields})


def _emit(cfg: CliConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", cfg.out)
    else:
        sys.stdout.write(text)


def _factor_string(system: CantorSystem) -> str:
    return " * ".join(f"Phi_{system.p**t}" for t in system.T) or "1"


def cmd_analyze(cfg: CliConfig) -> int:
    system = cfg.system()
    P = system.digit_polynomial
    prod = 1
    for t in system.T:
        prod = cyclotomic(system.p**t) * prod
    report = system.to_dict()
    report.update({
        "m": system.m,
        "branching_bound": system.branching_bound,
        "P_D": str(P),
        "cyclotomic_factors": [system.p**t for t in system.T],
        "product_of_factors": str(prod),
        "hadamard_sets": len(enumerate_hadamard_L(system)) if system.is_cyclotomic_product else 0,
    })
    if cfg.format == "text":
        lines = [
            f"N = {system.p}^{system.alpha} = {system.N}",
            f"D = {list(system.D)}",
            f"P_D = {P}",
            f"T = {list(system.T)}  (p^|T| = {system.branching_bound}, |D| = {system.m})",
            f"P_D == {_factor_string(system)}: {system.is_cyclotomic_product}",
            f"unit-circle roots covered by T: {system.circle_hypothesis}",
            f"Hadamard label sets: {report['hadamard_sets']}",
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, json.dumps(report, separators=(",", ":")) + "\n")
    return EXIT_OK


def _select_labeling(cfg: CliConfig) -> SpectralLabeling:
    if cfg.tree:
        try:
            with open(cfg.tree, encoding="utf-8") as fh:
                tree = SpectralLabeling.from_json(fh.read())
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise UsageError(f"cannot read tree {cfg.tree}: {exc}")
        return tree
    system = cfg.system()
    if cfg.depth < 1:
        raise UsageError(f"--depth must be >= 1, got {cfg.depth}")
    if cfg.index is None:
        return canonical_labeling(system, cfg.depth)
    if cfg.index < 0:
        raise UsageError(f"--index must be >= 0, got {cfg.index}")
    for i, tree in enumerate(enumerate_labelings(system, cfg.depth)):
        if i == cfg.index:
            return tree
    raise UsageError(f"--index {cfg.index} exceeds the number of labelings")


def cmd_tree(cfg: CliConfig) -> int:
    tree = _select_labeling(cfg)
    if cfg.format == "dot":
        _emit(cfg, tree.to_dot())
    elif cfg.format == "json":
        _emit(cfg, tree.to_json() + "\n")
    else:
        raise UsageError(f"tree supports --format json or dot, not {cfg.format}")
    return EXIT_OK


def cmd_spectrum(cfg: CliConfig) -> int:
    tree = _select_labeling(cfg)
    ok, violation = validate_labeling(tree)
    if not ok:
        log.error("labeling is not spectral at %s: %s", list(violation.path), violation.reason)
        return EXIT_FAIL
    S = lambda_of_labeling(tree)
    N = tree.system.N
    if cfg.format == "text":
        _emit(cfg, "".join(f"{k} {expand(k, N)}\n" for k in S))
    elif cfg.format == "json":
        rows = [{"value": k, "expansion": str(expand(k, N))} for k in S]
        _emit(cfg, json.dumps(rows, separators=(",", ":")) + "\n")
    else:
        raise UsageError(f"spectrum supports --format json or text, not {cfg.format}")
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    system = cfg.system()
    if not cfg.freqs:
        raise UsageError("verify needs --freqs")
    freqs = sorted(set(cfg.freqs))
    ok, pair = is_orthogonal_family(system, freqs)
    # deep enough that every pair of elements is separated by some digit
    depth = 1
    while system.N ** depth <= freqs[-1] - freqs[0]:
        depth += 1
    profile = branching_profile(system, freqs, depth)
    report = {
        "orthogonal": ok,
        "violating_pair": list(pair) if pair else None,
        "branching_bound": system.branching_bound,
        "max_branching": profile.max_count,
        "over_bound": [{"prefix": list(r.prefix), "digits": sorted(r.digits)} for r in profile.violations()],
    }
    if cfg.format == "text":
        lines = [f"orthogonal: {ok}"]
        if pair:
            lines.append(f"violating pair: {pair[0]} {pair[1]}")
        lines.append(f"max branching {profile.max_count} (bound {system.branching_bound})")
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, json.dumps(report, separators=(",", ":")) + "\n")
    return EXIT_OK if ok and profile.within_bound else EXIT_FAIL


def cmd_muhat(cfg: CliConfig) -> int:
    system = cfg.system()
    if cfg.grid is None:
        raise UsageError("muhat needs --grid lo:hi:step")
    lo, hi, step = cfg.grid
    rows = mu_hat_grid(system, lo, hi, step, cfg.J)
    _emit(cfg, grid_to_csv(rows))
    return EXIT_OK


def sweep_chunk(p: int, alpha: int, D: Sequence[int], ks: Sequence[int], J: int) -> list[tuple]:
    """Exact zero test vs truncated product; returns mismatches."""
    system = build_system(p, alpha, D)
    values = mu_hat_values(system, ks, J)
    bad = []
    for k, v in zip(ks, values):
        if mu_hat_is_zero(system, k) != (abs(v) < 1e-9):
            bad.append((p, alpha, tuple(D), k, abs(v)))
    return bad


def default_raices_instances(max_size: int = 2) -> list[tuple[int, tuple[int, ...]]]:
    """All (p, betas) with p in {2, 3}, |betas| <= max_size and p^max(betas) <= 64."""
    out = []
    for p in (2, 3):
        top = 1
        while p ** (top + 1) <= 64:
            top += 1
        for size in range(max_size + 1):
            out.extend((p, b) for b in itertools.combinations(range(1, top + 1), size))
    return out


def raices_check(p: int, betas: Sequence[int]) -> tuple[int, int]:
    return max_ratio_closed_subset_size(p, betas), p ** len(set(betas))


def cmd_oracle(cfg: CliConfig) -> int:
    if cfg.p is not None or cfg.alpha is not None or cfg.D is not None:
        system = cfg.system()
        systems = [(system.p, system.alpha, system.D)]
    else:
        systems = list(REFERENCE_SYSTEMS)
    if cfg.betas:
        primes = (cfg.raices_p,) if cfg.raices_p else (2, 3)
        instances = [(p, tuple(b)) for p in primes for b in cfg.betas]
    elif cfg.raices:
        instances = default_raices_instances()
    else:
        instances = []
    if cfg.bound < 0:
        raise UsageError(f"--bound must be >= 0, got {cfg.bound}")
    if cfg.bound == 0 and not instances:
        raise UsageError("nothing to sweep: --bound 0 and no root-search instances")
    start = time.perf_counter()
    failures: list[str] = []

    tasks = []
    if cfg.bound > 0:
        for p, alpha, D in systems:
            system = build_system(p, alpha, D)
            J = truncation_level(system, cfg.bound)
            ks = list(range(-cfg.bound, cfg.bound + 1))
            step = max(1, len(ks) // max(cfg.jobs, 1))
            for i in range(0, len(ks), step):
                tasks.append((p, alpha, D, ks[i:i + step], J))

    if cfg.jobs > 1 and tasks:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(sweep_chunk, *zip(*tasks)))
    else:
        results = [sweep_chunk(*t) for t in tasks]
    for bad in results:
        for p, alpha, D, k, modulus in bad:
            failures.append(f"sweep p={p} alpha={alpha} D={list(D)} k={k}: exact and numeric disagree (|mu_hat|={modulus:.3e})")

    lines = []
    if tasks:
        status = "PASS" if not failures else "FAIL"
        lines.append(f"{status} exact/numeric sweep |k| <= {cfg.bound} on {len(systems)} system(s)")
    for p, betas in instances:
        got, limit = raices_check(p, betas)
        ok = got <= limit
        lines.append(f"{'PASS' if ok else 'FAIL'} ratio-closed roots p={p} betas={list(betas)}: {got} <= {limit}")
        if not ok:
            failures.append(f"root search p={p} betas={list(betas)}: size {got} exceeds {limit}")
    lines.append(f"elapsed {time.perf_counter() - start:.2f}s")
    _emit(cfg, "\n".join(lines) + "\n")
    if failures:
        sys.stderr.write(f"first failure: {failures[0]}\n")
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "tree": cmd_tree,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "muhat": cmd_muhat,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UnsupportedSystemError as exc:
        sys.stderr.write(f"unsupported system: {exc}\n")
        return EXIT_UNSUPPORTED
    except InstanceTooLargeError as exc:
        sys.stderr.write(f"instance too large: {exc}\n")
        return EXIT_INPUT
    except (DomainError, PreconditionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CantorSpectraError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
