"""Command-line client for the measurement service.

Every subcommand is a thin wrapper over the HTTP API: requests are sent
to a running server when --server (or GEAMKIT_SERVER) is set, and to an
in-process instance of the service otherwise, so no deployment is
needed for local use.

Exit codes: 0 on success, 1 when verification or certification fails
(or a construction is infeasible), 2 for usage, configuration, and
parse errors. Failures print a machine-readable {"error": ...} document
on standard output.
"""

from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx

from .config import resolve_tol


def _request(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=300.0) as client:
            return client.post(path, json=payload)

    from .service import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://geamkit.local", timeout=300.0
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _fail(doc: dict, code: int) -> None:
    click.echo(json.dumps(doc, indent=2))
    sys.exit(code)


def _post(server: str | None, path: str, payload: dict) -> dict:
    response = _request(server, path, payload)
    if response.status_code == 200:
        return response.json()
    try:
        doc = response.json()
    except ValueError:
        doc = {"error": "ServiceError", "detail": response.text, "exit_code": 1}
    if response.status_code == 422:
        doc = {"error": "ValidationError", "detail": doc.get("detail"), "exit_code": 2}
    _fail(doc, int(doc.get("exit_code", 1)))


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        _fail({"error": "ParseError", "detail": f"{path}: {exc}", "exit_code": 2}, 2)


def _parse_csv_numbers(text: str | None, cast):
    if text is None:
        return None
    try:
        return [cast(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _flatten(doc: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            rows.append((name, json.dumps(value)))
        else:
            rows.append((name, value))
    return rows


def _report_csv(doc: dict) -> str:
    lines = ["key,value"]
    for key, value in _flatten(doc):
        lines.append(f"{key},{value}")
    return "\n".join(lines) + "\n"


def _tomo_csv(doc: dict) -> str:
    # Fixed column order for downstream plotting.
    lines = ["line,outcome,p_exact,p_empirical"]
    empirical = doc.get("p_empirical")
    for a, line in enumerate(doc["p_exact"]):
        for k, value in enumerate(line):
            emp = "" if empirical is None else repr(empirical[a][k])
            lines.append(f"{a},{k},{value!r},{emp}")
    return "\n".join(lines) + "\n"


def _emit(rendered: str, out: str | None) -> None:
    if out:
        Path(out).write_text(rendered)
    click.echo(rendered, nl=not rendered.endswith("\n"))


def _render(doc: dict, fmt: str, csv_renderer) -> str:
    if fmt == "csv":
        return csv_renderer(doc)
    return json.dumps(doc, indent=2)


@click.group()
@click.option("--server", envvar="GEAMKIT_SERVER", default=None, metavar="URL",
              help="Base URL of a running service; in-process by default.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Construct, verify, and measure with generalized equiangular POVMs."""
    ctx.obj = server


@main.command()
@click.option("--d", "d", type=int, required=True, help="Hilbert space dimension.")
@click.option("--sizes", default=None, metavar="M1,M2,...", help="Elements per line.")
@click.option("--eta", type=float, default=None,
              help="Build the line-independent-overlap family with this ratio.")
@click.option("--R", "difference", type=float, default=None,
              help="Build the constant-difference equal-trace family.")
@click.option("--mub", is_flag=True, help="Rescale the complete MUB set (prime d).")
@click.option("--t-list", "t_list", default=None, metavar="T1,T2,...",
              help="Per-line mixing parameters for a custom family.")
@click.option("--weights", default=None, metavar="G1,G2,...",
              help="Explicit line weights (with --t-list).")
@click.option("--weight-policy", type=click.Choice(["equal-trace", "uniform", "explicit"]),
              default=None, help="Weight rule for --t-list families.")
@click.option("--tol", type=float, default=None, help="Verification tolerance.")
@click.option("--out", default=None, metavar="PATH", help="Write the family JSON here.")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@click.pass_obj
def construct(server, d, sizes, eta, difference, mub, t_list, weights,
              weight_policy, tol, out, fmt) -> None:
    """Build a measurement family and print its fitted parameters."""
    payload = {
        "d": d,
        "sizes": _parse_csv_numbers(sizes, int),
        "eta": eta,
        "R": difference,
        "mub": mub,
        "t_list": _parse_csv_numbers(t_list, float),
        "weights": _parse_csv_numbers(weights, float),
        "weight_policy": weight_policy,
        "tol": resolve_tol(tol),
    }
    data = _post(server, "/construct", payload)
    summary = {
        "fitted": data["fitted"],
        "gammas": data["family"]["gammas"],
        "sizes": data["family"]["sizes"],
        "rank": data["rank"],
        "element_count": data["element_count"],
        "classification": data["classification"],
    }
    if out:
        Path(out).write_text(json.dumps(data["family"], indent=2))
        summary["out"] = out
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(json.dumps({"family": data["family"], **summary}, indent=2))


@main.command()
@click.argument("family_file", type=click.Path())
@click.option("--tol", type=float, default=None, help="Verification tolerance.")
@click.option("--out", default=None, metavar="PATH", help="Also write the report here.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.pass_obj
def verify(server, family_file, tol, out, fmt) -> None:
    """Check the defining trace relations and span of a family file."""
    family = _read_json(family_file)
    data = _post(server, "/verify", {"family": family, "tol": resolve_tol(tol)})
    _emit(_render(data, fmt, _report_csv), out)
    sys.exit(0 if data["passed"] else 1)


@main.command("design-check")
@click.argument("family_file", type=click.Path())
@click.option("--tol", type=float, default=None, help="Certification tolerance.")
@click.option("--out", default=None, metavar="PATH", help="Also write the report here.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.pass_obj
def design_check(server, family_file, tol, out, fmt) -> None:
    """Certify the conical 2-design property, directly and in closed form."""
    family = _read_json(family_file)
    data = _post(server, "/design-check", {"family": family, "tol": resolve_tol(tol)})
    _emit(_render(data, fmt, _report_csv), out)
    sys.exit(0 if data["passed"] else 1)


@main.command()
@click.argument("family_file", type=click.Path())
@click.option("--state", "state_file", type=click.Path(), default=None,
              help="Density matrix JSON file.")
@click.option("--random", "random_spec", nargs=2, type=int, default=None,
              metavar="RANK SEED", help="Draw a random state instead.")
@click.option("--shots", type=int, default=None, help="Finite-statistics sample size.")
@click.option("--seed", type=int, default=0, help="Sampling seed.")
@click.option("--tol", type=float, default=None, help="Tolerance for derived checks.")
@click.option("--out", default=None, metavar="PATH", help="Also write the report here.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.pass_obj
def tomo(server, family_file, state_file, random_spec, shots, seed, tol, out, fmt) -> None:
    """Measure a state: probabilities, coincidence index, purity, reconstruction."""
    family = _read_json(family_file)
    if (state_file is None) == (random_spec is None):
        _fail({"error": "UsageError",
               "detail": "give exactly one of --state or --random",
               "exit_code": 2}, 2)
    payload = {
        "family": family,
        "shots": shots,
        "seed": seed,
        "tol": resolve_tol(tol),
    }
    if state_file is not None:
        payload["state"] = _read_json(state_file)
    else:
        payload["random_rank"], payload["random_seed"] = random_spec
    data = _post(server, "/tomo", payload)
    _emit(_render(data, fmt, _tomo_csv), out)


if __name__ == "__main__":
    main()
