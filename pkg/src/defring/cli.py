"""Command-line client for the report service.

The CLI does not reimplement any computation: every verb drives the HTTP
application in-process through a test client, so the command line and the
service expose exactly the same behaviour.

Exit codes: 0 success, 1 invalid input, 2 internal error.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
from fastapi.testclient import TestClient

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTERNAL = 2


def _client() -> TestClient:
    from .service.app import app
    return TestClient(app, raise_server_exceptions=False)


def _finish(resp, out: Optional[str] = None, payload_key: Optional[str] = None):
    """Print (or write) the response body and translate status to exit code."""
    if resp.status_code == 200:
        body = resp.json()
        if payload_key is not None:
            text = body[payload_key]
        else:
            text = json.dumps(body, sort_keys=True, indent=2) + "\n"
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        sys.exit(EXIT_OK)
    detail = resp.json().get("detail", resp.text)
    click.echo(f"error: {detail}", err=True)
    if resp.status_code in (413, 422):
        sys.exit(EXIT_INVALID)
    sys.exit(EXIT_INTERNAL)


@click.group()
def main():
    """Dimension bounds and component data for mod-p local deformation
    problems."""


@main.command()
@click.argument("input_file", type=click.Path())
@click.option("--out", type=click.Path(), default=None,
              help="Write the report JSON to a file instead of stdout.")
def report(input_file: str, out: Optional[str]):
    """Full report for the residual data in INPUT_FILE (JSON)."""
    try:
        with open(input_file, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: file not found: {input_file}", err=True)
        sys.exit(EXIT_INVALID)
    except json.JSONDecodeError as exc:
        click.echo(f"error: not valid JSON: {input_file}: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    _finish(_client().post("/report", json=raw), out=out)


@main.command()
@click.option("--d", "d", type=int, required=True, help="Matrix dimension.")
@click.option("--degree", "degree", type=int, required=True,
              help="Degree n = [F : Q_p].")
@click.option("--sweep", is_flag=True, default=False,
              help="Include the exhaustive partition-structure table.")
def bounds(d: int, degree: int, sweep: bool):
    """Exact dimensions and optional bound sweep for (d, degree)."""
    _finish(_client().get("/bounds",
                          params={"d": d, "degree": degree, "sweep": sweep}))


@main.command()
def example35():
    """Verify the symbolic two-generator worked example."""
    resp = _client().get("/example35")
    if resp.status_code == 200 and not resp.json().get("ok", False):
        body = json.dumps(resp.json(), sort_keys=True, indent=2)
        click.echo(body)
        click.echo("error: worked example verification failed", err=True)
        sys.exit(EXIT_INTERNAL)
    _finish(resp)


@main.command("fibre-count")
@click.option("--q", "q", type=int, required=True, help="Field size (prime power).")
@click.option("--d", "d", type=int, required=True, help="Matrix dimension.")
@click.option("--spec", "spec_file", type=click.Path(), required=True,
              help="JSON file with the target tuple: "
                   '{"target": [[[..]]], "arity": k}.')
@click.option("--csv", "csv_file", type=click.Path(), default=None,
              help="Also write the point/tangent table as CSV.")
def fibre_count(q: int, d: int, spec_file: str, csv_file: Optional[str]):
    """Enumerate the pseudo-character fibre of a target tuple over GF(q)."""
    try:
        with open(spec_file, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: file not found: {spec_file}", err=True)
        sys.exit(EXIT_INVALID)
    except json.JSONDecodeError as exc:
        click.echo(f"error: not valid JSON: {spec_file}: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    if not isinstance(raw, dict) or "target" not in raw:
        click.echo("error: spec file must be an object with a 'target' key",
                   err=True)
        sys.exit(EXIT_INVALID)
    body = {"q": q, "d": d, "target": raw["target"]}
    for key in ("arity", "cap"):
        if key in raw:
            body[key] = raw[key]
    resp = _client().post("/fibre-count", json=body)
    if resp.status_code == 200 and csv_file:
        with open(csv_file, "w", encoding="utf-8") as fh:
            fh.write(resp.json()["csv"])
    _finish(resp)


@main.command()
def selftest():
    """Run the built-in consistency checks."""
    resp = _client().get("/selftest")
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text)
        click.echo(f"error: {detail}", err=True)
        sys.exit(EXIT_INTERNAL)
    body = resp.json()
    for name, res in body["checks"].items():
        mark = "ok" if res["ok"] else "FAIL"
        click.echo(f"{mark:4s} {name}: {res['detail']}")
    sys.exit(EXIT_OK if body["ok"] else EXIT_INTERNAL)


if __name__ == "__main__":
    main()
