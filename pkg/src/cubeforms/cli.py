"""Command-line client for the verification service.

Each subcommand builds a request, posts it to the service, and renders
the reply. By default the service app runs in process behind an ASGI
transport, so no server needs to be running; pass --server to talk to a
remote instance instead. Exit codes: 0 when every check passes, 1 when
a check fails, 2 on configuration or transport errors.
"""

from __future__ import annotations

import asyncio
import json
import sys
from typing import Optional

import click
import httpx

from .models import DEMOS, SUITES

TIMEOUT = 600.0


def _die(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _post(server: Optional[str], path: str, payload: dict) -> dict:
    if server:
        try:
            resp = httpx.post(server.rstrip("/") + path, json=payload,
                              timeout=TIMEOUT)
        except httpx.HTTPError as exc:
            _die(f"cannot reach {server}: {exc}")
    else:
        from .service import app

        async def call() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://service",
                                         timeout=TIMEOUT) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(call())
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail")
        except json.JSONDecodeError:
            detail = resp.text
        if not isinstance(detail, str):
            detail = json.dumps(detail)
        _die(f"{path} rejected ({resp.status_code}): {detail}")
    return resp.json()


def _write_json(body: dict, json_path: Optional[str]) -> None:
    if json_path is None:
        return
    with click.open_file(json_path, "w") as handle:
        json.dump(body, handle, indent=2)
        handle.write("\n")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _scalar_values(values: dict) -> str:
    parts = []
    for key, val in values.items():
        if isinstance(val, bool) or not isinstance(val, (int, float, str)):
            continue
        parts.append(f"{key}={_fmt(val) if isinstance(val, float) else val}")
    return "  ".join(parts)


def _print_report(body: dict) -> None:
    width = max((len(c["name"]) for c in body["checks"]), default=0)
    for check in body["checks"]:
        verdict = "PASS" if check["pass"] else "FAIL"
        line = (f"{verdict} {check['name']:<{width}}  "
                f"residual {check['residual']:.3e} <= {check['tolerance']:.1e}")
        extras = _scalar_values(check["values"])
        if extras:
            line += f"  [{extras}]"
        click.echo(line)
    total = len(body["checks"])
    good = sum(1 for c in body["checks"] if c["pass"])
    click.echo(f"{body['suite']}: {good}/{total} checks passed "
               f"({'PASS' if body['pass'] else 'FAIL'})")


def _finish(body: dict, json_path: Optional[str]) -> None:
    _write_json(body, json_path)
    sys.exit(0 if body["pass"] else 1)


def server_option(fn):
    return click.option(
        "--server", metavar="URL", default=None,
        help="Base URL of a running service (default: in-process app).")(fn)


def json_option(fn):
    return click.option(
        "--json", "json_path", metavar="PATH",
        type=click.Path(dir_okay=False, writable=True, allow_dash=True),
        default=None, help="Also write the raw JSON report to PATH.")(fn)


@click.group()
def main() -> None:
    """Exterior-calculus verification suites over boxes, cubes, and chains."""


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--order", type=click.IntRange(1, 64), default=16,
              show_default=True, help="Gauss-Legendre order per axis.")
@click.option("--max-n", type=click.IntRange(1, 64), default=12,
              show_default=True, help="Index bound for the exhaustive suites.")
@click.option("--seed", type=click.IntRange(min=0), default=0,
              show_default=True, help="Seed for the randomized catalogs.")
@json_option
@server_option
def verify(suite: str, order: int, max_n: int, seed: int,
           json_path: Optional[str], server: Optional[str]) -> None:
    """Run a verification suite and print one line per check."""
    body = _post(server, "/verify", {"suite": suite, "order": order,
                                     "max_n": max_n, "seed": seed})
    _print_report(body)
    _finish(body, json_path)


@main.command()
@click.argument("name", type=click.Choice(DEMOS))
@click.option("--order", type=click.IntRange(1, 64), default=None,
              help="Override the demo's documented quadrature order.")
@click.option("--seed", type=click.IntRange(min=0), default=0,
              show_default=True, help="Seed for the randomized forms.")
@json_option
@server_option
def demo(name: str, order: Optional[int], seed: int,
         json_path: Optional[str], server: Optional[str]) -> None:
    """Run a named demonstration (annulus, box4d, box5d, box10d)."""
    body = _post(server, "/demo", {"name": name, "order": order, "seed": seed})
    _print_report(body)
    _finish(body, json_path)


def _parse_box(text: str):
    parts = text.split(":")
    if len(parts) == 3:
        coeff_text, lo_text, hi_text = parts
    elif len(parts) == 2:
        coeff_text, (lo_text, hi_text) = "1", parts
    else:
        raise click.UsageError(
            f"--box expects [COEFF:]lo0,lo1,..:hi0,hi1,.. (got {text!r})")
    try:
        coeff = int(coeff_text)
        lo = [float(t) for t in lo_text.split(",")]
        hi = [float(t) for t in hi_text.split(",")]
    except ValueError as exc:
        raise click.UsageError(f"bad --box entry {text!r}: {exc}") from exc
    return {"coeff": coeff, "lo": lo, "hi": hi}


@main.command()
@click.option("--map", "map_", metavar="EXPR", multiple=True,
              help="Component expressions of the cube (repeat per component; "
                   "omit for the identity cube).")
@click.option("--form", metavar="EXPR", multiple=True, required=True,
              help="Coefficient expressions of the form, one per increasing "
                   "index set in lexicographic order.")
@click.option("--degree", type=click.IntRange(min=0), required=True,
              help="Degree of the form.")
@click.option("--ambient", type=click.IntRange(min=1), required=True,
              help="Dimension of the ambient space.")
@click.option("--order", type=click.IntRange(1, 64), default=16,
              show_default=True, help="Gauss-Legendre order per axis.")
@click.option("--stokes", is_flag=True,
              help="Integrate over a (degree+1)-cube and print the full "
                   "Stokes residual ledger.")
@click.option("--box", "boxes", metavar="[COEFF:]LO:HI", multiple=True,
              help="Axis-aligned box term (repeatable); implies a box chain "
                   "and requires --stokes.")
@json_option
@server_option
def integrate(map_: tuple, form: tuple, degree: int, ambient: int, order: int,
              stokes: bool, boxes: tuple, json_path: Optional[str],
              server: Optional[str]) -> None:
    """Integrate a form over a cube or a box chain."""
    payload = {
        "map": list(map_) or None,
        "form": list(form),
        "degree": degree,
        "ambient": ambient,
        "order": order,
        "stokes": stokes,
        "boxes": [_parse_box(b) for b in boxes] or None,
    }
    body = _post(server, "/integrate", payload)
    click.echo(f"value {_fmt(body['value'])}")
    for check in body["checks"]:
        for face in check["values"].get("faces", []):
            sign = "+" if face["sign"] > 0 else "-"
            click.echo(f"  face i={face['i']} eps={face['eps']} sign={sign}1"
                       f"  integral {_fmt(face['integral'])}")
        for term in check["values"].get("terms", []):
            where = term.get("box") or term.get("term")
            click.echo(f"  term {where} coeff {term['coeff']}"
                       f"  volume {_fmt(term['volume'])}"
                       f"  boundary {_fmt(term['boundary'])}")
        click.echo(f"  volume   {_fmt(check['values']['volume'])}")
        click.echo(f"  boundary {_fmt(check['values']['boundary'])}")
        verdict = "PASS" if check["pass"] else "FAIL"
        click.echo(f"  residual {check['residual']:.3e} <= "
                   f"{check['tolerance']:.1e}  {verdict}")
    _write_json(body, json_path)
    sys.exit(0 if body["pass"] else 1)


@main.command("check-parity")
@click.option("--max-n", type=click.IntRange(1, 64), default=12,
              show_default=True, help="Exhaustive index bound.")
@json_option
@server_option
def check_parity(max_n: int, json_path: Optional[str],
                 server: Optional[str]) -> None:
    """Run the exact integer identities (sign cancellation, parity, faces)."""
    body = _post(server, "/check-parity", {"max_n": max_n})
    _print_report(body)
    _finish(body, json_path)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service under uvicorn."""
    import uvicorn

    uvicorn.run("cubeforms.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
