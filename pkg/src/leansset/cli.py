"""Command-line interface.

Exit status: 0 when a definitive answer was produced, 2 when a search budget
ran out before an answer was reached, 1 for usage, parse or precondition errors.
Reports go to stdout as canonical JSON (or ``key: value`` lines with
``--format text``) and always carry the configuration they were computed under.
"""

from __future__ import annotations

import functools
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import click

from . import builders as bl
from . import io
from .category import all_functors, zoo
from .config import Config, ConfigError, load_config
from .hom import Budget, set_default_budget
from .homotopy import horn_filler_counts, is_dk_equivalence_qcat, is_lean_stratified_kan, is_minimal, pi_n
from .lifting import MAP_KINDS, PreconditionError, classify_map, has_filler, mapping_space, squares
from .limits import classify as classify_set
from .pro import (
    ProMap,
    ProObject,
    const,
    is_pro_mono,
    is_pro_weak_equivalence,
    mono_level_representation,
    pro_complete_lean,
    pro_hom,
    underlying,
    underlying_map,
)
from .segal import (
    BisimplicialMap,
    BisimplicialSet,
    check_complete,
    check_segal,
    css_map_space,
    discrete_nerve,
    discrete_nerve_map,
    doubly_lean,
    ev0,
    ev0_sing_is_identity,
    external_product,
    is_dk_equivalence_css,
    is_reedy_fibrant_desk,
    sing_j,
)
from .sset import BudgetExceeded, CapError, SimplicialIdentityError, SimplicialMap, SimplicialSet
from .verifier import FibTestPresentation, close_under_pullback_powers, generating_sets, verify_axioms

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2

_ERROR_KINDS = {
    CapError: "cap reconciliation failure",
    PreconditionError: "precondition failure",
    SimplicialIdentityError: "simplicial identity violation",
    io.FormatError: "parse error",
}


class Unknown(Exception):
    """The answer could not be decided within the configured limits."""


@dataclass
class Run:
    config: Config
    budget: Budget


def emit(report: dict, cfg: Config) -> None:
    report = {**report, "config": cfg.as_dict()}
    if cfg.output_format == "json":
        click.echo(io.dumps(report), nl=False)
    else:
        for key in sorted(report):
            click.echo(f"{key}: {report[key]}")


def _read(path: str, *types: type) -> Any:
    obj = io.read_any(path)
    if types and not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise click.UsageError(f"{path} holds a {type(obj).__name__}, expected {names}")
    return obj


def _write(obj: Any, out: str | None) -> None:
    if out is not None:
        Path(out).write_text(io.serialize(obj), encoding="utf-8")


def _vertex(X: SimplicialSet, ident: str) -> int:
    try:
        return X.idx(0, ident)
    except (KeyError, ValueError):
        raise click.UsageError(f"no vertex {ident!r}; vertices are {X.ids(0)}") from None


def reporting(fn: Callable[..., dict | None]) -> Callable[..., int]:
    """Run a report-producing command under the shared budget and map outcomes to exit codes."""

    @functools.wraps(fn)
    @click.pass_obj
    def wrapper(run: Run, **kwargs) -> int:
        try:
            report = fn(run, **kwargs)
        except (BudgetExceeded, Unknown) as e:
            emit({"result": "unknown", "reason": str(e)}, run.config)
            return EXIT_UNKNOWN
        except tuple(_ERROR_KINDS) as e:
            kind = next(v for k, v in _ERROR_KINDS.items() if isinstance(e, k))
            click.echo(f"error: {kind}: {e}", err=True)
            return EXIT_ERROR
        if report is not None:
            emit(report, run.config)
        return EXIT_OK

    return wrapper


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON config file (default: $SSET_CONFIG).")
@click.option("--cap", type=int, help="Degree cap for generator sets.")
@click.option("--tower", type=int, help="Tower bound for pro-completions.")
@click.option("--budget", type=int, help="Search budget in nodes.")
@click.option("--flavor", type=click.Choice(["kq", "joyal"]), help="Model-structure flavor.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), help="Report format.")
@click.pass_context
def cli(ctx: click.Context, config_path, cap, tower, budget, flavor, fmt) -> None:
    """Exact computations with lean simplicial sets, their pro-objects and bisimplicial sets."""
    try:
        cfg = load_config(config_path, degree_cap=cap, tower_bound=tower, search_budget=budget, flavor=flavor, output_format=fmt)
    except ConfigError as e:
        raise click.UsageError(str(e)) from None
    set_default_budget(cfg.search_budget)
    ctx.obj = Run(cfg, Budget(cfg.search_budget))


# -- build ---------------------------------------------------------------------------------------

_INT_BUILDERS: dict[str, tuple[int, Callable[..., Any]]] = {
    "delta": (1, bl.delta),
    "boundary": (1, bl.boundary),
    "horn": (2, bl.horn),
    "spine": (1, bl.spine),
    "jnerve": (1, bl.jnerve),
    "rkan": (1, bl.rkan_two),
    "vertices": (1, bl.vertex_set),
    "point": (0, bl.point),
    "empty": (0, bl.empty),
    "walking-h": (0, bl.walking_h),
    "boundary-inclusion": (1, lambda n: bl.inclusion(bl.boundary(n), bl.delta(n))),
    "horn-inclusion": (2, lambda n, k: bl.inclusion(bl.horn(n, k), bl.delta(n))),
}


def _zoo(name: str):
    Z = zoo()
    if name not in Z:
        raise click.UsageError(f"unknown category {name!r}; known: {', '.join(Z)}")
    return Z[name]


def _functor(args: tuple[str, ...]):
    C, D = _zoo(args[0]), _zoo(args[1])
    Fs = all_functors(C, D)
    k = int(args[2])
    if not 0 <= k < len(Fs):
        raise click.UsageError(f"there are {len(Fs)} functors {args[0]} -> {args[1]}")
    return C, D, Fs[k]


def build_object(kind: str, args: tuple[str, ...]) -> Any:
    if kind in _INT_BUILDERS:
        arity, fn = _INT_BUILDERS[kind]
        if len(args) != arity:
            raise click.UsageError(f"build {kind} takes {arity} integer argument(s)")
        try:
            return fn(*(int(a) for a in args))
        except ValueError as e:
            raise click.UsageError(str(e)) from None
    if kind == "nerve" and len(args) == 1:
        return bl.nerve(_zoo(args[0]))
    if kind == "functor" and len(args) == 3:
        C, D, F = _functor(args)
        return bl.nerve_map(F, bl.nerve(C), bl.nerve(D))
    if kind == "discrete-nerve" and len(args) == 1:
        return discrete_nerve(_zoo(args[0]))
    if kind == "discrete-functor" and len(args) == 3:
        C, D, F = _functor(args)
        return discrete_nerve_map(F, discrete_nerve(C), discrete_nerve(D))
    if kind == "external" and len(args) == 2:
        return external_product(_read(args[0], SimplicialSet), _read(args[1], SimplicialSet))
    raise click.UsageError(f"unknown build target: {' '.join((kind,) + args)}")


def _stem(name: str) -> str:
    return name.replace("[", "ord").replace("]", "").replace("/", "").replace("+", "-plus-")


def corpus() -> dict[str, Any]:
    """The standard fixtures keyed by file name."""
    out: dict[str, Any] = {}
    for n in range(4):
        out[f"delta{n}.ssx"] = bl.delta(n)
        out[f"boundary{n}.ssx"] = bl.boundary(n)
        out[f"spine{n}.ssx"] = bl.spine(n)
    for n in range(1, 4):
        for k in range(n + 1):
            out[f"horn{n}_{k}.ssx"] = bl.horn(n, k)
    for t in range(3):
        out[f"jnerve{t}.ssx"] = bl.jnerve(t)
    out["walking-h.ssx"] = bl.walking_h()
    for n in range(2):
        out[f"rkan{n}.ssx"] = bl.rkan_two(n)
    for name, C in zoo().items():
        out[f"nerve-{_stem(name)}.ssx"] = bl.nerve(C)
    return out


@cli.command()
@click.argument("kind")
@click.argument("args", nargs=-1)
@click.option("-o", "--output", help="Output file (for 'corpus': output directory). Without it the file goes to stdout.")
@reporting
def build(run: Run, kind: str, args: tuple[str, ...], output: str | None) -> dict | None:
    """Generate a fixture.

    KIND is one of: delta N, boundary N, horn N K, spine T, jnerve T, rkan N,
    vertices K, point, empty, walking-h, nerve CAT, functor CAT CAT INDEX,
    boundary-inclusion N, horn-inclusion N K, discrete-nerve CAT,
    discrete-functor CAT CAT INDEX, external A.ssx B.ssx, corpus.
    """
    if kind == "corpus":
        target = Path(output or ".")
        target.mkdir(parents=True, exist_ok=True)
        files = corpus()
        for name, obj in files.items():
            (target / name).write_text(io.serialize(obj), encoding="utf-8")
        return {"built": "corpus", "directory": str(target), "files": sorted(files)}
    obj = build_object(kind, args)
    if output is None:
        click.echo(io.serialize(obj), nl=False)
        return None
    _write(obj, output)
    return {"built": kind, "arguments": list(args), "output": output}


# -- lean simplicial sets and maps -----------------------------------------------------------------

@cli.command()
@click.argument("path")
@click.option("--kind", "kinds", multiple=True, type=click.Choice(MAP_KINDS), help="Lifting classes to decide for a map (default: all).")
@reporting
def classify(run: Run, path: str, kinds: tuple[str, ...]) -> dict:
    """Classify a simplicial set, or decide lifting classes of a map."""
    obj = _read(path, SimplicialSet, SimplicialMap)
    if isinstance(obj, SimplicialSet):
        return {"object": obj.name, **classify_set(obj).as_dict()}
    out = {}
    for kind in kinds or MAP_KINDS:
        try:
            res = classify_map(obj, kind, run.budget)
        except PreconditionError as e:
            out[kind] = {"holds": None, "reason": str(e)}
            continue
        entry: dict[str, Any] = {"holds": res.holds, "method": res.method}
        if res.witness is not None:
            entry["witness"] = _describe(res.witness)
        out[kind] = entry
    return {"map": f"{obj.source.name} -> {obj.target.name}", "classes": out}


def _describe(sq) -> str:
    def verts(f: SimplicialMap) -> str:
        return ", ".join(f"{f.source.id(0, v)}->{f.target.id(0, f(0, v))}" for v in range(f.source.size(0)))

    label = f"{sq.label}: " if getattr(sq, "label", "") else ""
    return f"{label}square with top {{{verts(sq.top)}}} and bottom {{{verts(sq.bottom)}}} has no diagonal filler"


@cli.command()
@click.argument("left")
@click.argument("right")
@click.option("-o", "--output", help="Prefix for witness files: PREFIX.top.ssx and PREFIX.bottom.ssx.")
@reporting
def lift(run: Run, left: str, right: str, output: str | None) -> dict:
    """Solve every lifting problem of LEFT against RIGHT."""
    i, p = _read(left, SimplicialMap), _read(right, SimplicialMap)
    total = 0
    failing = None
    for sq in squares(i, p, run.budget):
        total += 1
        if not has_filler(sq, run.budget):
            failing = sq
            break
    report: dict[str, Any] = {"liftingProperty": failing is None, "squaresChecked": total}
    if failing is not None:
        report["witness"] = _describe(failing)
        if output:
            _write(failing.top, f"{output}.top.ssx")
            _write(failing.bottom, f"{output}.bottom.ssx")
            report["witnessFiles"] = [f"{output}.top.ssx", f"{output}.bottom.ssx"]
    return report


@cli.command("map-space")
@click.argument("source")
@click.argument("target")
@click.option("-o", "--output")
@reporting
def map_space(run: Run, source: str, target: str, output: str | None) -> dict:
    """The mapping space Map(SOURCE, TARGET)."""
    X, Y = _read(source, SimplicialSet), _read(target, SimplicialSet)
    M = mapping_space(X, Y, run.budget)
    _write(M, output)
    top = min(M.cap, run.config.degree_cap)
    return {"maps": M.size(0), "cap": M.cap, "sizes": M.sizes(top), "output": output}


@cli.command()
@click.argument("path")
@click.option("--n", "degree", type=int, required=True)
@click.option("--base", required=True, help="Identifier of the base vertex.")
@reporting
def pi(run: Run, path: str, degree: int, base: str) -> dict:
    """Homotopy group pi_n of a lean Kan complex with its multiplication table."""
    X = _read(path, SimplicialSet)
    return pi_n(X, _vertex(X, base), degree, budget=run.budget).as_dict()


@cli.command("dk-qcat")
@click.argument("path")
@reporting
def dk_qcat(run: Run, path: str) -> dict:
    """Dwyer-Kan equivalence test for a map of quasi-categories."""
    return is_dk_equivalence_qcat(_read(path, SimplicialMap), budget=run.budget).as_dict()


@cli.command()
@click.argument("path")
@click.option("--n", "n", type=int, default=2, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@reporting
def fillers(run: Run, path: str, n: int, k: int) -> dict:
    """Count fillers of every horn Lambda^n_k in a simplicial set."""
    X = _read(path, SimplicialSet)
    if not 0 <= k <= n or n < 1:
        raise click.UsageError("need n >= 1 and 0 <= k <= n")
    counts = horn_filler_counts(X, n, k, run.budget)
    hist = Counter(counts)
    return {
        "horn": f"Lambda{n}_{k}",
        "horns": len(counts),
        "histogram": {str(c): hist[c] for c in sorted(hist)},
        "everyHornUniquelyFilled": all(c == 1 for c in counts),
    }


@cli.command()
@click.argument("path")
@reporting
def minimal(run: Run, path: str) -> dict:
    """Whether a Kan complex is minimal."""
    return {"minimal": is_minimal(_read(path, SimplicialSet), run.budget)}


@cli.command()
@click.argument("path")
@reporting
def stratified(run: Run, path: str) -> dict:
    """Whether a map to a poset nerve is a lean stratified Kan fibration."""
    return {"leanStratifiedKan": is_lean_stratified_kan(_read(path, SimplicialMap), run.budget)}


# -- pro-objects ---------------------------------------------------------------------------------

@cli.group()
def pro() -> None:
    """Pro-objects over finite codirected posets."""


def _pro(path: str) -> ProObject:
    obj = _read(path, ProObject, SimplicialSet)
    return const(obj) if isinstance(obj, SimplicialSet) else obj


def _levels(C: ProObject) -> dict:
    return {e: C.levels[e].sizes(2) for e in C.index.elements}


@pro.command("complete")
@click.argument("path")
@click.option("-o", "--output")
@reporting
def pro_complete(run: Run, path: str, output: str | None) -> dict:
    """The coskeletal tower of a simplicial set, truncated at the tower bound."""
    C = pro_complete_lean(_read(path, SimplicialSet), run.config.tower_bound)
    _write(C, output)
    return {"index": C.index.flavor, "levels": _levels(C), "output": output}


@pro.command("hom")
@click.argument("source")
@click.argument("target")
@reporting
def pro_hom_cmd(run: Run, source: str, target: str) -> dict:
    """Count pro-maps SOURCE -> TARGET (a .ssx file is read as a constant pro-object)."""
    return {"proMaps": len(pro_hom(_pro(source), _pro(target), run.budget))}


@pro.command("mono")
@click.argument("path")
@click.option("--mode", type=click.Choice(["direct", "lifting", "both"]), default="both", show_default=True)
@click.option("--repair", "repair_out", help="Write a levelwise-injective representation to this PRX file.")
@reporting
def pro_mono(run: Run, path: str, mode: str, repair_out: str | None) -> dict:
    """Whether a pro-map is a monomorphism."""
    f = _read(path, ProMap)
    report: dict[str, Any] = {}
    if mode == "both":
        verdicts = {"direct": is_pro_mono(f, "direct", run.budget).holds}
        try:
            verdicts["lifting"] = is_pro_mono(f, "lifting", run.budget).holds
        except CapError as e:
            verdicts["lifting"] = None
            report["liftingUnavailable"] = str(e)
        if verdicts["lifting"] is not None and verdicts["lifting"] != verdicts["direct"]:
            report["disagreement"] = True
    else:
        verdicts = {mode: is_pro_mono(f, mode, run.budget).holds}
    report["monomorphism"] = verdicts
    if repair_out:
        R = mono_level_representation(f, run.budget)
        _write(R.level_map.as_pro_map(), repair_out)
        report["repair"] = repair_out
    return report


@pro.command("we")
@click.argument("path")
@click.option("--tests", "tests", multiple=True, required=True, help="Test objects (.ssx); repeat or list after the flag.")
@click.argument("more_tests", nargs=-1)
@reporting
def pro_we(run: Run, path: str, tests: tuple[str, ...], more_tests: tuple[str, ...]) -> dict:
    """Whether a pro-map is a weak equivalence, detected on mapping spaces into test objects."""
    f = _read(path, ProMap)
    T = [_read(t, SimplicialSet) for t in tests + more_tests]
    verdict = is_pro_weak_equivalence(f, T, run.config.flavor, run.budget)
    if verdict == "unknown":
        raise Unknown("search budget exhausted")
    return {"weakEquivalence": verdict, "tests": [t.name for t in T]}


@pro.command("underlying")
@click.argument("path")
@click.option("-o", "--output")
@reporting
def pro_underlying(run: Run, path: str, output: str | None) -> dict:
    """The underlying simplicial set (or map) of a pro-object (or pro-map)."""
    obj = _read(path, ProObject, ProMap)
    U = underlying_map(obj) if isinstance(obj, ProMap) else underlying(obj)
    _write(U, output)
    if isinstance(U, SimplicialMap):
        return {"injective": U.is_injective(), "sourceSizes": U.source.sizes(2), "targetSizes": U.target.sizes(2), "output": output}
    return {"sizes": U.sizes(2), "output": output}


# -- bisimplicial sets ---------------------------------------------------------------------------

@cli.group()
def segal() -> None:
    """Segal and completeness conditions."""


@segal.command("check")
@click.argument("path")
@reporting
def segal_check(run: Run, path: str) -> dict:
    """Reedy fibrancy at desk scale, Segal and completeness conditions, double leanness."""
    X = _read(path, BisimplicialSet)
    reedy = is_reedy_fibrant_desk(X, run.budget)
    report: dict[str, Any] = {"caps": list(X.caps), "reedyFibrant": reedy, "doublyLean": doubly_lean(X).doubly_lean}
    if reedy:
        report["segal"] = check_segal(X, run.budget, check=False)
        report["complete"] = check_complete(X, run.budget, check=False)
    return report


@cli.group()
def css() -> None:
    """Complete Segal objects."""


@css.command("dk")
@click.argument("path")
@click.option("--no-check", is_flag=True, help="Skip the Reedy, Segal and completeness preconditions.")
@reporting
def css_dk(run: Run, path: str, no_check: bool) -> dict:
    """Dwyer-Kan equivalence test for a map of complete Segal objects."""
    f = _read(path, BisimplicialMap)
    return is_dk_equivalence_css(f, not no_check, run.budget).as_dict()


@css.command("mapspace")
@click.argument("path")
@click.argument("x")
@click.argument("y")
@click.option("-o", "--output")
@reporting
def css_mapspace(run: Run, path: str, x: str, y: str, output: str | None) -> dict:
    """The mapping space between two objects (vertices of row 0)."""
    X = _read(path, BisimplicialSet)
    R = X.row(0)
    M = css_map_space(X, _vertex(R, x), _vertex(R, y))
    _write(M, output)
    return {"sizes": M.sizes(min(M.cap, run.config.degree_cap)), "output": output}


@cli.command()
@click.argument("path")
@click.option("-o", "--output")
@reporting
def sing(run: Run, path: str, output: str | None) -> dict:
    """The bisimplicial set Sing built from the nerves J^t."""
    S = sing_j(_read(path, SimplicialSet), run.budget)
    _write(S, output)
    T, N = S.caps
    return {"caps": [T, N], "sizes": S.sizes(T, N), "doublyLean": doubly_lean(S).doubly_lean, "output": output}


@cli.command("ev0")
@click.argument("path")
@click.option("-o", "--output")
@reporting
def ev0_cmd(run: Run, path: str, output: str | None) -> dict:
    """Row 0 of a bisimplicial set; for a simplicial set, check that ev0 of Sing gives it back."""
    obj = _read(path, BisimplicialSet, SimplicialSet)
    if isinstance(obj, SimplicialSet):
        return {"ev0SingIsIdentity": ev0_sing_is_identity(obj, budget=run.budget)}
    E = ev0(obj)
    _write(E, output)
    return {"sizes": E.sizes(E.cap), "output": output}


# -- fibration test presentations ----------------------------------------------------------------

@cli.group()
def verify() -> None:
    """Fibration-test-category verification."""


@verify.command("ftc")
@click.argument("path")
@click.option("--closure", "closure_rounds", type=int, help="Also close the tests under pullback-powers for this many rounds.")
@click.option("--emit", "emit_dir", help="Directory for the generating sets as PRX files.")
@reporting
def verify_ftc(run: Run, path: str, closure_rounds: int | None, emit_dir: str | None) -> dict:
    """Check the five axioms of a fibration-test presentation."""
    P = _read(path, FibTestPresentation)
    rep = verify_axioms(P, run.budget)
    report: dict[str, Any] = rep.as_dict()
    if any(a.status == "undetermined" for a in rep.axioms):
        raise Unknown("; ".join(f"axiom {a.axiom} undetermined" for a in rep.axioms if a.status == "undetermined"))
    if emit_dir and rep.passed:
        d = Path(emit_dir)
        d.mkdir(parents=True, exist_ok=True)
        files = []
        for key, maps in generating_sets(P, rep).items():
            for k, f in enumerate(maps):
                name = f"{key}{k}.prx"
                _write(f, str(d / name))
                files.append(name)
        report["generatingSets"] = files
    if closure_rounds is not None:
        report["closure"] = close_under_pullback_powers(P.tests, P.generators, closure_rounds, run.budget).as_dict()
    return report


def run(argv: list[str] | None = None) -> int:
    """Entry point returning the exit status instead of raising SystemExit."""
    try:
        rv = cli.main(args=argv, prog_name="leansset", standalone_mode=False)
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return EXIT_ERROR
    except click.Abort:
        return EXIT_ERROR
    except click.exceptions.Exit as e:
        return e.exit_code
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
