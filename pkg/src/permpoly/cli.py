"""CLI for permpoly."""

import json
from collections.abc import Iterator
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import Annotated, Any

import structlog
import typer
from pydantic import BaseModel
from rich import print as rprint
from rich.console import Console

from permpoly import __version__
from permpoly.errors import PermPolyError
from permpoly.logging import configure_logging
from permpoly.schemas import ClassifierCheck, ClassifierMode, FieldInfo, OracleName, Report
from permpoly.settings import get_settings

app = typer.Typer(
    name="permpoly",
    help="Permutation binomials and trinomials over binary fields",
    no_args_is_help=True,
)
field_app = typer.Typer(help="Field construction", no_args_is_help=True)
trinomial_app = typer.Typer(help="The trinomial family over F_2^t", no_args_is_help=True)
binomial_app = typer.Typer(help="The binomial family over F_2^n", no_args_is_help=True)
app.add_typer(field_app, name="field")
app.add_typer(trinomial_app, name="trinomial")
app.add_typer(binomial_app, name="binomial")

console = Console()
err_console = Console(stderr=True)
logger = structlog.get_logger()


class OutputFormat(StrEnum):
    """Report rendering."""

    JSON = "json"
    CSV = "csv"
    TABLE = "table"


_options: dict[str, Any] = {
    "format": OutputFormat.JSON,
    "out": None,
    "workers": None,
    "profile": None,
    "timing": False,
}


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        rprint(f"permpoly [cyan]{__version__}[/cyan]")
        raise typer.Exit()


@contextmanager
def _guard() -> Iterator[None]:
    """Turn domain, guard and registry errors into exit code 2."""
    try:
        yield
    except (PermPolyError, ValueError) as e:
        err_console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(2) from e


def _write(text: str) -> None:
    out: Path | None = _options["out"]
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text)


def _emit_model(model: BaseModel) -> None:
    """Single results are always JSON."""
    _write(model.model_dump_json(indent=2) + "\n")


def _emit_report(report: Report) -> None:
    from permpoly.reporting import build_table, render_csv, render_json

    fmt: OutputFormat = _options["format"]
    if fmt == OutputFormat.TABLE:
        if _options["out"] is None:
            console.print(build_table(report))
        else:
            with open(_options["out"], "w") as f:
                Console(file=f, width=200).print(build_table(report))
    elif fmt == OutputFormat.CSV:
        _write(render_csv(report))
    else:
        _write(render_json(report, timing=_options["timing"]))


def _exit_on_violation(report: Report) -> None:
    if not report.passed:
        raise typer.Exit(1)


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    output_format: Annotated[OutputFormat, typer.Option("--format", "-f", help="Report format")] = OutputFormat.JSON,
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Write output to a file instead of stdout")] = None,
    workers: Annotated[int | None, typer.Option("--workers", "-w", help="Worker pool size")] = None,
    profile: Annotated[str | None, typer.Option("--profile", help="Suite bounds profile: ci or extended")] = None,
    timing: Annotated[bool, typer.Option("--timing", help="Include elapsed_ms in JSON reports")] = False,
    log_json: Annotated[bool, typer.Option("--log-json", help="Log as JSON lines on stderr")] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")] = False,
) -> None:
    """Permpoly - permutation binomials and trinomials over binary fields."""
    settings = get_settings()
    configure_logging(json_output=log_json or settings.log_json, level="debug" if verbose else settings.log_level)
    _options.update(format=output_format, out=out, workers=workers, profile=profile, timing=timing)


@field_app.command("info")
def field_info(
    n: Annotated[int, typer.Option("--n", help="Extension degree")],
    modulus: Annotated[str | None, typer.Option("--modulus", help="Irreducible modulus as hex")] = None,
) -> None:
    """Construct F_2^n and print its modulus, generator and factorization of 2^n - 1."""
    from permpoly.fieldcore import make_field

    with _guard():
        spec = make_field(n, int(modulus, 16) if modulus else None)
        info = FieldInfo(
            n=spec.n,
            modulus=spec.format(spec.modulus),
            gamma=spec.format(spec.gamma),
            factorization=list(spec.q_minus_1_factors),
            tables=spec.has_tables,
        )
    _emit_model(info)


@app.command("check")
def check(
    n: Annotated[int, typer.Option("--n", help="Extension degree")],
    method: Annotated[str, typer.Option("--method", "-m", help="Tester (see `permpoly methods`)")] = "brute",
    poly: Annotated[str | None, typer.Option("--poly", "-p", help="Polynomial as EXP:COEFHEX,...")] = None,
    modulus: Annotated[str | None, typer.Option("--modulus", help="Irreducible modulus as hex")] = None,
    d: Annotated[int | None, typer.Option("--d", help="Cyclotomic index d, a divisor of q-1")] = None,
    r: Annotated[int | None, typer.Option("--r", help="Cyclotomic exponent r")] = None,
    inner_poly: Annotated[str | None, typer.Option("--inner-poly", help="Inner polynomial f for d and r")] = None,
    skip_even: Annotated[bool, typer.Option("--skip-even", help="Hermite: skip even k")] = False,
) -> None:
    """Decide whether a polynomial permutes F_2^n with the chosen tester."""
    from permpoly.fieldcore import make_field
    from permpoly.harness.runner import resolve_workers
    from permpoly.permtest import instantiate_tester
    from permpoly.polyring import parse_poly

    with _guard():
        spec = make_field(n, int(modulus, 16) if modulus else None)
        options: dict[str, Any] = {"d": d, "r": r, "inner": inner_poly}
        if skip_even:
            options["skip_char_multiples"] = True
        if method == "brute":
            options["workers"] = resolve_workers(_options["workers"])
        tester = instantiate_tester(method, **options)
        verdict = tester.check(parse_poly(poly, spec) if poly else None, spec)
    _emit_model(verdict)


@trinomial_app.command("check")
def trinomial_check(
    s: Annotated[int, typer.Option("--s", help="Exponent parameter s")],
    t: Annotated[int, typer.Option("--t", help="Field degree t")],
    alpha: Annotated[str, typer.Option("--alpha", help="alpha in F_2^t as hex")],
    mode: Annotated[ClassifierMode, typer.Option("--mode", help="Classifier mode")] = ClassifierMode.CANONICAL,
    oracle: Annotated[bool, typer.Option("--oracle", help="Attach the brute-force verdict")] = False,
) -> None:
    """Classify x^(2^s+1) + x^(2^(s-1)+1) + alpha*x over F_2^t."""
    from permpoly.classify import TrinomialParams, classify_trinomial
    from permpoly.fieldcore import make_field
    from permpoly.permtest import is_pp_brute

    with _guard():
        spec = make_field(t)
        params = TrinomialParams(s=s, t=t, alpha=spec.parse(alpha), field=spec)
        result = ClassifierCheck(
            input={"s": s, "t": t, "alpha": spec.format(params.alpha)},
            decision=classify_trinomial(params, mode),
        )
        if oracle and t > get_settings().brute_max_degree:
            logger.warning("Oracle skipped", reason="t exceeds brute_max_degree", t=t)
        elif oracle:
            result.oracle = OracleName.BRUTE
            result.oracle_verdict = is_pp_brute(params.poly())
    _emit_model(result)


@binomial_app.command("check")
def binomial_check(
    s: Annotated[int, typer.Option("--s", help="Exponent parameter s, n = 2^s * t")],
    t: Annotated[int, typer.Option("--t", help="Half degree t")],
    a: Annotated[str, typer.Option("--a", help="a in F_2^(2t) as hex")],
    mode: Annotated[ClassifierMode, typer.Option("--mode", help="Classifier mode")] = ClassifierMode.CANONICAL,
    oracle: Annotated[bool, typer.Option("--oracle", help="Attach an oracle verdict (auto-routed)")] = False,
) -> None:
    """Classify x^((2^n-1)/(2^t-1)+1) + a*x over F_2^n."""
    from permpoly.classify import BinomialParams, classify_binomial
    from permpoly.fieldcore import make_field
    from permpoly.harness import binomial_verdict, resolve_oracle

    with _guard():
        small = make_field(2 * t)
        params = BinomialParams(s=s, t=t, a=small.parse(a), field=small)
        result = ClassifierCheck(
            input={"s": s, "t": t, "n": params.n, "a": small.format(params.a)},
            decision=classify_binomial(params, mode),
        )
        if oracle:
            chosen = resolve_oracle(OracleName.AUTO, params.n)
            result.oracle = chosen
            result.oracle_verdict = binomial_verdict(params, chosen)
    _emit_model(result)


@binomial_app.command("enumerate")
def binomial_enumerate(
    s: Annotated[int, typer.Option("--s", help="Exponent parameter s, n = 2^s * t")],
    t: Annotated[int, typer.Option("--t", help="Half degree t")],
    oracle: Annotated[OracleName, typer.Option("--oracle", help="Ground-truth oracle")] = OracleName.AUTO,
) -> None:
    """Classify every a in F_2^(2t)* and compare with the oracle."""
    from permpoly.harness import enumerate_binomials

    with _guard():
        report = enumerate_binomials(s, t, oracle=oracle, workers=_options["workers"])
    _emit_report(report)
    _exit_on_violation(report)


@app.command("verify")
def verify(
    suite: Annotated[str, typer.Option("--suite", help="Suite name (see `permpoly suites`)")],
    max_t: Annotated[int | None, typer.Option("--max-t", help="Override max_t")] = None,
    max_n: Annotated[int | None, typer.Option("--max-n", help="Override max_n")] = None,
    max_k: Annotated[int | None, typer.Option("--max-k", help="Override max_k")] = None,
) -> None:
    """Run a verification suite; exit 1 if any property is violated."""
    from permpoly.harness import verify_suite

    with _guard():
        bounds = get_settings().bounds(_options["profile"])
        overrides: dict[str, int] = {}
        if max_t is not None:
            overrides.update(max_t=max_t, coeff_max_t=max_t, closed_form_max_t=max_t)
        if max_n is not None:
            overrides.update(max_n=max_n, field_max_degree=max_n, tester_max_degree=max_n)
        if max_k is not None:
            overrides["max_k"] = max_k
        bounds = bounds.model_copy(update=overrides)
        report = verify_suite(suite, bounds, workers=_options["workers"])
    _emit_report(report)
    _exit_on_violation(report)


@app.command("audit")
def audit(
    s_max: Annotated[int, typer.Option("--s-max", help="Largest s")] = 6,
    t_max: Annotated[int, typer.Option("--t-max", help="Largest t")] = 6,
) -> None:
    """List inputs where literal and canonical classifiers differ, with ground truth. Always exits 0."""
    from permpoly.harness import audit_literal

    with _guard():
        report = audit_literal(s_max, t_max, workers=_options["workers"])
    _emit_report(report)


@app.command()
def methods() -> None:
    """List available permutation testers."""
    from permpoly.permtest import get_tester, list_testers

    data = [{"name": name, "description": get_tester(name).description} for name in list_testers()]
    if _options["format"] == OutputFormat.JSON:
        _write(json.dumps(data, indent=2) + "\n")
        return
    for item in data:
        rprint(f"  [cyan]{item['name']}[/cyan] - {item['description']}")


@app.command()
def suites() -> None:
    """List available verification suites."""
    from permpoly.harness import get_suite, list_suites

    data = [{"name": name, "description": get_suite(name).description} for name in list_suites()]
    if _options["format"] == OutputFormat.JSON:
        _write(json.dumps(data, indent=2) + "\n")
        return
    for item in data:
        rprint(f"  [cyan]{item['name']}[/cyan] - {item['description']}")


@app.command()
def version() -> None:
    """Show version information."""
    rprint(f"permpoly [cyan]{__version__}[/cyan]")


@app.command()
def init() -> None:
    """Initialize configuration file."""
    config_file = Path("permpoly.yaml")
    example_file = Path("config.example.yaml")

    if config_file.exists():
        rprint("[yellow]permpoly.yaml already exists[/yellow]")
        return

    if not example_file.exists():
        rprint("[red]config.example.yaml not found[/red]")
        raise typer.Exit(1)

    config_file.write_text(example_file.read_text())
    rprint("[green]Created permpoly.yaml from config.example.yaml[/green]")
    rprint("Edit permpoly.yaml to customize your settings.")
