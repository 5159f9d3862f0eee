"""Command-line client for the service.

Every subcommand posts a request to the HTTP app, in process by
default or to a running server with --server.  Exit codes: 0 success,
1 usage error, 2 capacity refusal, 3 failed verification.
"""

import json
import sys
import warnings

import click
import httpx

with warnings.catch_warnings():
    # the in-process client pulls starlette.testclient, which warns about
    # its httpx backend; that is noise on every CLI run
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from .service import SUITE_ORDER, app


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    return TestClient(app)


def _post(server, route, payload):
    body = {k: v for k, v in payload.items() if v is not None}
    try:
        with _client(server) as client:
            resp = client.post(route, json=body)
    except httpx.TransportError as exc:
        # only the --server transport can fail; in process never raises this
        raise click.UsageError("cannot reach %s: %s" % (server, exc))
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail")
        if not isinstance(detail, str):
            detail = json.dumps(detail, sort_keys=True)
        raise click.UsageError(detail)
    if resp.status_code == 413:
        click.echo("capacity exceeded: %s" % resp.json().get("detail", ""), err=True)
        raise SystemExit(2)
    resp.raise_for_status()
    return resp.json()


def _common(fn):
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "text"]),
        default="json",
        show_default=True,
        help="output format",
    )(fn)
    fn = click.option(
        "--server",
        default=None,
        metavar="URL",
        help="base URL of a running service; default handles the request in process",
    )(fn)
    return fn


def _emit_enumerate(data, fmt):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
        return
    for item in data["items"]:
        if isinstance(item, str):
            click.echo(item)
        else:
            click.echo(json.dumps(item, sort_keys=True))
    click.echo("count: %d" % data["count"])


def _emit_compute(data, fmt):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
        return
    value = data["value"]
    if isinstance(value, str):
        click.echo(value)
    else:
        click.echo(json.dumps(value, indent=2, sort_keys=True))
    if data.get("at_one") is not None:
        click.echo("at q=1: %s" % json.dumps(data["at_one"], sort_keys=True))


def _emit_verify(data, fmt):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
        return
    for row in data["rows"]:
        status = "ok  " if row["equal"] else "FAIL"
        click.echo(
            "%s %s %s" % (status, row["check"], json.dumps(row["parameters"], sort_keys=True))
        )
        if not row["equal"]:
            click.echo("     lhs: %s" % row["lhs"])
            click.echo("     rhs: %s" % row["rhs"])
    click.echo(
        "suite: %s  checks: %d  failed: %d" % (data["suite"], data["total"], data["failed"])
    )


@click.group()
def cli():
    """Exact enumeration, computation, and verification for Dyck tilings."""


@cli.group(name="enumerate")
def enumerate_group():
    """List combinatorial objects in canonical order."""


@enumerate_group.command("paths")
@click.option("--n", type=int, required=True, help="half-length")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def enumerate_paths(n, max_n, fmt, server):
    data = _post(server, "/enumerate", {"kind": "paths", "n": n, "max_n": max_n})
    _emit_enumerate(data, fmt)


@enumerate_group.command("tilings")
@click.option("--lower", required=True, help="lower path, U/D word")
@click.option("--upper", required=True, help="upper path, U/D word")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def enumerate_tilings_cmd(lower, upper, max_n, fmt, server):
    data = _post(
        server, "/enumerate", {"kind": "tilings", "lower": lower, "upper": upper, "max_n": max_n}
    )
    _emit_enumerate(data, fmt)


@enumerate_group.command("matchings")
@click.option("--n", type=int, required=True, help="number of pairs")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def enumerate_matchings_cmd(n, max_n, fmt, server):
    data = _post(server, "/enumerate", {"kind": "matchings", "n": n, "max_n": max_n})
    _emit_enumerate(data, fmt)


@enumerate_group.command("hermite")
@click.option("--path", required=True, help="Dyck path, U/D word")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def enumerate_hermite(path, max_n, fmt, server):
    data = _post(server, "/enumerate", {"kind": "hermite", "path": path, "max_n": max_n})
    _emit_enumerate(data, fmt)


@enumerate_group.command("region-paths")
@click.option("--path", required=True, help="lower Dyck path, U/D word")
@click.option("--a", type=int, required=True, help="left end offset")
@click.option("--b", type=int, required=True, help="right end offset")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def enumerate_region_paths_cmd(path, a, b, max_n, fmt, server):
    data = _post(
        server,
        "/enumerate",
        {"kind": "region-paths", "path": path, "a": a, "b": b, "max_n": max_n},
    )
    _emit_enumerate(data, fmt)


@cli.group(name="compute")
def compute_group():
    """Evaluate polynomials in the canonical rendering."""


@compute_group.command("bq")
@click.option("--path", required=True, help="lower Dyck path, U/D word")
@click.option("--a", type=int, required=True, help="left end offset")
@click.option("--b", type=int, required=True, help="right end offset")
@click.option(
    "--route",
    type=click.Choice(["brute", "closed", "recursive"]),
    default="closed",
    show_default=True,
)
@click.option("--eval-q1", "eval_q1", is_flag=True, help="also evaluate at q = 1")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def compute_bq(path, a, b, route, eval_q1, max_n, fmt, server):
    data = _post(
        server,
        "/compute",
        {
            "kind": "bq",
            "path": path,
            "a": a,
            "b": b,
            "route": route,
            "eval_q1": eval_q1,
            "max_n": max_n,
        },
    )
    _emit_compute(data, fmt)


@compute_group.command("moments")
@click.option("--n", type=int, required=True, help="half the number of points")
@click.option(
    "--route",
    type=click.Choice(["path_dp", "matchings", "tilings"]),
    default="path_dp",
    show_default=True,
)
@click.option("--eval-q1", "eval_q1", is_flag=True, help="also evaluate at p = q = 1")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def compute_moments(n, route, eval_q1, max_n, fmt, server):
    data = _post(
        server,
        "/compute",
        {"kind": "moments", "n": n, "route": route, "eval_q1": eval_q1, "max_n": max_n},
    )
    _emit_compute(data, fmt)


@compute_group.command("touchard")
@click.option("--n", type=int, required=True, help="number of chords")
@click.option("--eval-q1", "eval_q1", is_flag=True, help="also evaluate at q = 1")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def compute_touchard(n, eval_q1, max_n, fmt, server):
    data = _post(
        server, "/compute", {"kind": "touchard", "n": n, "eval_q1": eval_q1, "max_n": max_n}
    )
    _emit_compute(data, fmt)


@compute_group.command("matrix")
@click.option("--n", type=int, required=True, help="half-length of the indexing paths")
@click.option("--eval-q1", "eval_q1", is_flag=True, help="also evaluate entries at p = q = 1")
@click.option("--max-n", "max_n", type=int, default=None, help="capacity override")
@_common
def compute_matrix(n, eval_q1, max_n, fmt, server):
    data = _post(
        server, "/compute", {"kind": "matrix", "n": n, "eval_q1": eval_q1, "max_n": max_n}
    )
    _emit_compute(data, fmt)


@cli.command("verify")
@click.argument("suite", type=click.Choice(SUITE_ORDER + ("all",)))
@click.option("--n", type=int, default=None, help="sweep bound override")
@_common
def verify(suite, n, fmt, server):
    data = _post(server, "/verify", {"suite": suite, "n": n})
    _emit_verify(data, fmt)
    return 0 if data["ok"] else 3


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(app, host=host, port=port)


def main(argv=None):
    try:
        rc = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo("error: %s" % exc.format_message(), err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return rc if isinstance(rc, int) else 0


if __name__ == "__main__":
    sys.exit(main())
