"""Command-line client for the HTTP facade.

By default the app is mounted in-process (no socket is opened); pass
--server to talk to a remotely served instance instead. Output is a pure
function of the arguments, so identical invocations produce identical
bytes, except for the wall-clock timing fields of `verify all`.
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path

import click
import httpx

from . import __version__
from .config import (DEFAULT_MARGIN_EXTRA, DEFAULT_ORDER, DEFAULT_SEED,
                     DEFAULT_U_MAX, default_weight_max)

COEFF_NAMES = ("a", "e", "b", "C", "l", "d", "Q", "QB")
SERIES_NAMES = ("f", "h", "w", "v", "psi", "eta1", "theta", "theta-of-f",
                "stirling")
SUITE_NAMES = ("lemma-c", "lemma5", "prop-quadratic", "zassenhaus-w",
               "zassenhaus-l", "prop-p4", "thm1", "cor2", "virasoro",
               "eta-pde", "xi-iso", "stability", "all")


def _call(server: str | None, method: str, path: str,
          params: dict | None = None, payload: dict | None = None):
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.request(method, path, params=params, json=payload)

    from .service import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, timeout=None,
                                     base_url="http://taulink.local") as c:
            return await c.request(method, path, params=params, json=payload)

    return asyncio.run(go())


def _payload(resp: httpx.Response) -> dict:
    if resp.status_code == 200:
        return resp.json()
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    raise click.UsageError(detail)  # exit status 2


def _emit(text: str, out: str | None):
    click.echo(text)
    if out:
        Path(out).write_text(text + "\n")


def _common(fn):
    fn = click.option("--server", default=None, metavar="URL",
                      help="Base URL of a running service; default runs "
                           "the app in-process.")(fn)
    fn = click.option("--out", default=None, type=click.Path(dir_okay=False),
                      help="Also write the exact stdout bytes to this file.")(fn)
    fn = click.option("--format", "fmt", default="text",
                      type=click.Choice(["text", "json"]),
                      show_default=True)(fn)
    return fn


def _window_options(fn):
    fn = click.option("--u-max", default=DEFAULT_U_MAX, show_default=True,
                      type=click.IntRange(min=1))(fn)
    fn = click.option("--weight-max", default=None,
                      type=click.IntRange(min=1),
                      help="Default 9, or the TAULINK_WEIGHT_MAX "
                           "environment variable when set.")(fn)
    fn = click.option("--margin-extra", default=DEFAULT_MARGIN_EXTRA,
                      show_default=True, type=click.IntRange(min=0))(fn)
    return fn


def _resolve_weight_max(value: int | None) -> int:
    if value is not None:
        return value
    try:
        return default_weight_max()
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.version_option(__version__)
def main():
    """Exact tables, series, and verification suites."""


@main.command()
@click.argument("name", type=click.Choice(COEFF_NAMES))
@click.argument("count", type=click.IntRange(min=1))
@_common
def coeffs(name, count, fmt, out, server):
    """Print COUNT entries of a coefficient family.

    For the two-index families Q and QB, COUNT is the inclusive bound on
    the index sum.
    """
    if name in ("Q", "QB"):
        resp = _call(server, "GET", f"/quadratic/{name}",
                     params={"cutoff": count})
        data = _payload(resp)
        if fmt == "json":
            body = {"min_index": data["min_index"], "cutoff": data["cutoff"],
                    "coeffs": data["coeffs"]}
            _emit(json.dumps(body, indent=2), out)
        else:
            lines = [f"({i},{j}) {v}" for i, j, v in data["coeffs"]]
            _emit("\n".join(lines), out)
        return
    resp = _call(server, "GET", f"/coeffs/{name}", params={"count": count})
    data = _payload(resp)
    if fmt == "json":
        _emit(json.dumps(data["values"], separators=(",", ":")), out)
    else:
        _emit("\n".join(f"{i} {v}" for i, v in data["values"]), out)


@main.command()
@click.argument("name", type=click.Choice(SERIES_NAMES))
@click.argument("order", type=click.IntRange(min=1), default=DEFAULT_ORDER)
@_common
def series(name, order, fmt, out, server):
    """Print a named series to the given truncation order."""
    resp = _call(server, "GET", f"/series/{name}", params={"order": order})
    data = _payload(resp)
    if fmt == "json":
        _emit(json.dumps(data["series"], indent=2), out)
    else:
        _emit(data["text"], out)


@main.command()
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@_window_options
@click.option("--order", default=DEFAULT_ORDER, show_default=True,
              type=click.IntRange(min=1))
@click.option("--seed", default=DEFAULT_SEED, show_default=True, type=int)
@_common
def verify(suite, u_max, weight_max, margin_extra, order, seed, fmt, out,
           server):
    """Run one verification suite (or `all`) and print its JSON report.

    Exits 0 when every checked coefficient matches, 1 otherwise. The
    report is JSON in both formats; elapsed_ms fields appear only under
    `all` and are the one nondeterministic output.
    """
    body = {"u_max": u_max, "weight_max": _resolve_weight_max(weight_max),
            "order": order, "seed": seed, "margin_extra": margin_extra}
    resp = _call(server, "POST", f"/verify/{suite}", payload=body)
    data = _payload(resp)
    _emit(json.dumps(data, indent=2), out)
    if data["mismatches"]:
        raise SystemExit(1)


@main.command()
@click.argument("weight_bound", type=click.IntRange(min=3), required=False)
@_common
def fk(weight_bound, fmt, out, server):
    """Print the genus-expanded intersection generating series, as the
    logarithm, in both variable alphabets, complete through WEIGHT_BOUND
    (default: the configured weight window)."""
    if weight_bound is None:
        weight_bound = _resolve_weight_max(None)
    resp = _call(server, "POST", "/fk",
                 payload={"weight_bound": weight_bound})
    data = _payload(resp)
    if fmt == "json":
        _emit(json.dumps(data, indent=2), out)
    else:
        _emit(f"log in t: {data['t_text']}\nlog in q: {data['q_text']}", out)


@main.command()
@_window_options
@_common
def fh(u_max, weight_max, margin_extra, fmt, out, server):
    """Print the deformed generating series (logarithm, both alphabets)
    on the certified window; internally computed with the weight margin
    and restricted back."""
    body = {"u_max": u_max, "weight_max": _resolve_weight_max(weight_max),
            "margin_extra": margin_extra}
    resp = _call(server, "POST", "/fh", payload=body)
    data = _payload(resp)
    if fmt == "json":
        _emit(json.dumps(data, indent=2), out)
    else:
        _emit(f"log in t: {data['t_text']}\nlog in q: {data['q_text']}", out)


if __name__ == "__main__":
    main()
