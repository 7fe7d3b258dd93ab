"""Command-line front end.

Every subcommand is a thin client over the bundled HTTP service: by default
the requests run against the app in-process (no server needed); ``--server``
points them at a remote instance instead.  Output is the canonical JSON of
the underlying library object, optionally next to a human rendering.

Exit codes: 0 success, 1 IO, 2 validation, 3 index degeneracy,
4 field extension, 5 internal guard.
"""

from __future__ import annotations

import asyncio
import functools
import json
import os
import sys

import click
import httpx

from . import __version__, jsonio

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_FIELD_EXTENSION = 4
EXIT_INTERNAL = 5


class InProcessTransport(httpx.BaseTransport):
    """Synchronous bridge onto the ASGI app; buffers each response."""

    def __init__(self, app):
        self._inner = httpx.ASGITransport(app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def go():
            resp = await self._inner.handle_async_request(request)
            await resp.aread()
            return resp

        resp = asyncio.run(go())
        return httpx.Response(
            resp.status_code, headers=resp.headers, content=resp.content, request=request
        )


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=60.0)
    from .service import app

    return httpx.Client(transport=InProcessTransport(app), base_url="http://folcas.local")


# -- plumbing ---------------------------------------------------------------


def _fail(message: str, exit_code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(exit_code)


def _load_document(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_IO)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              EXIT_VALIDATION)


def _request(ctx, method: str, path: str, payload=None) -> dict:
    client = make_client(ctx.obj["server"])
    try:
        resp = client.request(method, path, json=payload)
    except httpx.HTTPError as exc:
        _fail(f"service unreachable: {exc}", EXIT_IO)
    except Exception as exc:  # in-process app crash: internal guard
        _fail(f"internal error: {exc}", EXIT_INTERNAL)
    finally:
        client.close()
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except json.JSONDecodeError:
        _fail(f"HTTP {resp.status_code}: {resp.text[:200]}", EXIT_IO)
    if "error" in body:
        err = body["error"]
        _render_error(err)
        sys.exit(err.get("exit_code", EXIT_INTERNAL))
    _fail(f"HTTP {resp.status_code}: {json.dumps(body)[:400]}", EXIT_VALIDATION)


def _render_error(err: dict):
    click.echo(f"error [{err['code']}]: {err['message']}", err=True)
    payload = err.get("payload")
    if not payload:
        return
    if isinstance(payload, dict) and "obstructions" in payload:
        where = payload.get("chart_path") or ["origin"]
        click.echo(f"  blocked at chart path {' -> '.join(where)}", err=True)
        for p in payload["obstructions"]:
            click.echo(f"  minimal polynomial of missing direction: {p}", err=True)
    elif isinstance(payload, dict) and "failures" in payload:
        for f in payload["failures"]:
            click.echo(f"  {f}", err=True)
    else:
        click.echo(f"  {json.dumps(payload)}", err=True)


def _emit(ctx, data: dict, render: str | None):
    """Honour --json/--pretty/--out: render + JSON by default."""
    mode = ctx.obj["mode"]
    out = ctx.obj["out"]
    text = jsonio.dumps(data)
    if render and mode in ("both", "pretty"):
        click.echo(render)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            _fail(f"cannot write {out}: {exc}", EXIT_IO)
        if mode != "json":
            click.echo(f"wrote {out}")
    elif mode in ("both", "json") or not render:
        click.echo(text, nl=False)


# -- group ------------------------------------------------------------------


@click.group()
@click.version_option(__version__)
@click.option("--server", default=None, metavar="URL",
              help="Remote service URL (default: run the service in-process).")
@click.option("--seed", default=0, show_default=True,
              help="Seed for the deterministic random choices.")
@click.option("--max-depth", default=64, show_default=True,
              help="Blow-up depth guard for reduce.")
@click.option("--json", "mode", flag_value="json", help="Machine JSON only.")
@click.option("--pretty", "mode", flag_value="pretty", help="Human rendering only.")
@click.option("--out", default=None, metavar="PATH",
              help="Write the JSON result to PATH (a directory for corpus).")
@click.pass_context
def main(ctx, server, seed, max_depth, mode, out):
    """Exact-arithmetic pipelines for plane polynomial foliations."""
    ctx.obj = {
        "server": server,
        "seed": seed,
        "max_depth": max_depth,
        "mode": mode or "both",
        "out": out,
    }


def common_options(fn):
    """Re-declare the shared flags on a subcommand so they also parse there."""

    @functools.wraps(fn)
    def wrapper(ctx, *args, seed=None, max_depth=None, mode=None, out=None, **kwargs):
        for key, val in (("seed", seed), ("max_depth", max_depth),
                         ("mode", mode), ("out", out)):
            if val is not None:
                ctx.obj[key] = val
        return fn(ctx, *args, **kwargs)

    wrapper = click.pass_context(wrapper)
    for opt in (
        click.option("--seed", default=None, type=int, help="Deterministic seed."),
        click.option("--max-depth", default=None, type=int, help="Blow-up depth guard."),
        click.option("--json", "mode", flag_value="json", default=None,
                     help="Machine JSON only."),
        click.option("--pretty", "mode", flag_value="pretty", default=None,
                     help="Human rendering only."),
        click.option("--out", default=None, metavar="PATH", help="Write JSON to PATH."),
    ):
        wrapper = opt(wrapper)
    return wrapper


# -- commands ---------------------------------------------------------------


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def check(ctx, input):
    """Validate a foliation file (or corpus entry) and report its invariants."""
    doc = _load_document(input)
    body = _request(ctx, "POST", "/check", {"document": doc, "seed": ctx.obj["seed"]})
    if body["kind"] == "foliation":
        c = body["checks"]
        render = "\n".join([
            f"ok: foliation on P^{body['ambient_dim']}, degree {body['degree']}",
            f"  homogeneous, equal coefficient degree: {_yn(c['homogeneous_equal_degree'])}",
            f"  Euler contraction zero: {_yn(c['euler_contraction_zero'])}",
            f"  integrable (omega ^ d omega = 0): {_yn(c['integrable'])}",
            f"  input coefficients already gcd-normalized: {_yn(c['gcd_input_normalized'])}",
        ])
    else:
        rep = body["entry"]
        lines = [f"ok: corpus entry '{rep['name']}' ({rep['kind']})"]
        lines += [f"  {k}: {v}" for k, v in rep["checks"].items()]
        render = "\n".join(lines)
    _emit(ctx, body, render)


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def degree(ctx, input):
    """Cross-check the tangency-count degree against the declared one."""
    fol = _load_document(input)
    body = _request(ctx, "POST", "/degree",
                    {"foliation": fol, "seed": ctx.obj["seed"]})
    render = (f"tangency degree {body['tangency_degree']}, "
              f"declared {body['declared_degree']}: "
              + ("MATCH" if body["match"] else "MISMATCH"))
    _emit(ctx, body, render)
    if not body["match"]:
        sys.exit(EXIT_INTERNAL)


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def singular(ctx, input):
    """List rational singular points by cell, with the residual count."""
    fol = _load_document(input)
    body = _request(ctx, "POST", "/singular",
                    {"foliation": fol, "seed": ctx.obj["seed"]})
    lines = []
    for pt in body["rational_points"]:
        lines.append("  (" + " : ".join(pt) + ")")
    lines.append(f"rational points: {len(body['rational_points'])}, "
                 f"residual degree: {body['residual_degree']}")
    for cell, cnt in body["by_cell"].items():
        lines.append(f"  {cell}: {cnt['rational']} rational, {cnt['residual']} residual")
    _emit(ctx, body, "\n".join(lines))


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def bb(ctx, input):
    """Per-singularity Baum-Bott indices and the global total."""
    fol = _load_document(input)
    body = _request(ctx, "POST", "/bb", {"foliation": fol, "seed": ctx.obj["seed"]})
    report = jsonio.bb_report_from_json(body)
    canonical = jsonio.bb_report_to_json(report)
    ok = report.complete and report.total == report.expected
    lines = [f"  {_where(e):<28} {jsonio.rational_to_json(e.bb)}" for e in report.entries()]
    lines.append(f"total {canonical['total']}  expected {canonical['expected']}"
                 f"  -> {'PASS' if ok else 'FAIL'}")
    for d in report.diagnostics:
        lines.append(f"  ! {d}")
    _emit(ctx, canonical, "\n".join(lines))
    if not ok:
        sys.exit(EXIT_DEGENERATE)


def _where(e) -> str:
    if e.cell == "affine":
        return f"({jsonio.rational_to_json(e.point[0])}, {jsonio.rational_to_json(e.point[1])})"
    if e.cell == "inf":
        return f"line at infinity, y={jsonio.rational_to_json(e.at)}"
    if e.cell == "corner":
        return "corner (0:0:1)"
    n = f" x{e.count}" if e.count != 1 else ""
    return f"{e.cell}{n}"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def reduce(ctx, input):
    """Resolve a plane germ by blow-ups; print the reduction tree."""
    germ = _load_document(input)
    body = _request(ctx, "POST", "/reduce",
                    {"germ": germ, "max_depth": ctx.obj["max_depth"]})
    tree = jsonio.tree_from_json(body)
    canonical = jsonio.tree_to_json(tree)
    _emit(ctx, canonical, _render_tree(canonical))


def _render_tree(t: dict) -> str:
    children: dict[int | None, list[int]] = {}
    by_id = {}
    for n in t["nodes"]:
        by_id[n["id"]] = n
        children.setdefault(n["parent"], []).append(n["id"])

    def label(n):
        step = n["chart_path"][-1] if n["chart_path"] else "origin"
        cls = n["class"]
        extra = ""
        if cls:
            extra = (f"  [{cls['classification']}"
                     f" tr={cls['trace']} det={cls['det']}]")
        return f"#{n['id']} {step}: {n['status']}{extra}"

    lines = []

    def walk(nid, prefix, tail, root):
        n = by_id[nid]
        if root:
            lines.append(label(n))
            nxt = ""
        else:
            lines.append(prefix + ("`-- " if tail else "|-- ") + label(n))
            nxt = prefix + ("    " if tail else "|   ")
        kids = sorted(children.get(nid, []))
        for i, k in enumerate(kids):
            walk(k, nxt, i == len(kids) - 1, False)

    walk(t["nodes"][0]["id"], "", True, True)
    lines.append(f"depth {t['depth']}, blow-ups {t['blowup_count']}")
    return "\n".join(lines)


@main.command()
@click.argument("map_file", metavar="MAP")
@click.argument("input", metavar="FOLIATION")
@common_options
def pullback(ctx, map_file, input):
    """Pull a foliation back along a homogeneous polynomial map.

    MAP is a JSON file {"components": [polynomial, ...]}, one component per
    target coordinate.
    """
    m = _load_document(map_file)
    if not isinstance(m, dict) or "components" not in m:
        _fail(f"{map_file}: expected an object with 'components'", EXIT_VALIDATION)
    fol = _load_document(input)
    body = _request(ctx, "POST", "/pullback",
                    {"components": m["components"], "foliation": fol})
    F = jsonio.foliation_from_json(body)
    canonical = jsonio.foliation_to_json(F)
    _emit(ctx, canonical,
          f"pullback: foliation on P^{F.ambient_dim}, degree {F.degree}")


@main.command()
@click.argument("input", metavar="ODE")
@common_options
def riccati(ctx, input):
    """Build the projective triple of an ODE, verify it, and unfold it.

    ODE is a JSON file {"a":..., "b":..., "c":...} of rational functions of
    x, for y' = a y^2 + b y + c.
    """
    ode = _load_document(input)
    body = _request(ctx, "POST", "/riccati", {"ode": ode})
    triple = jsonio.triple_from_json(body["triple"])
    canonical = {
        "triple": jsonio.triple_to_json(triple),
        "mc_zero": body["mc_zero"],
        "unfolding": jsonio.diffform_to_json(jsonio.diffform_from_json(body["unfolding"])),
        "integrable": body["integrable"],
        "restrict_zero": jsonio.diffform_to_json(jsonio.diffform_from_json(body["restrict_zero"])),
        "restrict_infinity": jsonio.diffform_to_json(
            jsonio.diffform_from_json(body["restrict_infinity"])),
        "restrict_infinity_scale": body["restrict_infinity_scale"],
    }
    uvars = ", ".join(canonical["unfolding"]["vars"])
    render = "\n".join([
        f"structure equations satisfied: {_yn(body['mc_zero'])}",
        f"unfolding over ({uvars}): integrable {_yn(body['integrable'])}",
        f"restriction at t=0 equals omega0: "
        f"{_yn(canonical['restrict_zero'] == canonical['triple']['omega0'])}",
        f"restriction at t=infinity: omega2 * {body['restrict_infinity_scale']}",
    ])
    _emit(ctx, canonical, render)


@main.command()
@click.argument("input", metavar="FILE")
@common_options
def catalog(ctx, input):
    """Realize a catalog family instance and confirm it is closed."""
    cat = _load_document(input)
    body = _request(ctx, "POST", "/catalog", {"catalog": cat})
    realized = jsonio.diffform_from_json(body["realized"])
    canonical = {
        "family": body["family"],
        "realized": jsonio.diffform_to_json(realized),
        "closed": body["closed"],
    }
    render = (f"family {body['family']} realized over ({', '.join(realized.vars)}): "
              f"closed {_yn(body['closed'])}")
    _emit(ctx, canonical, render)


@main.command()
@common_options
def corpus(ctx):
    """Write the bundled corpus (one JSON file per entry) to --out."""
    body = _request(ctx, "GET", "/corpus")
    out_dir = ctx.obj["out"] or "corpus"
    entries = body["entries"]
    try:
        os.makedirs(out_dir, exist_ok=True)
        for entry in entries:
            path = os.path.join(out_dir, f"{entry['name']}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(jsonio.dumps(entry))
    except OSError as exc:
        _fail(f"cannot write corpus to {out_dir}: {exc}", EXIT_IO)
    if ctx.obj["mode"] != "json":
        click.echo(f"wrote {len(entries)} entries to {out_dir}/")
    else:
        click.echo(jsonio.dumps({"count": len(entries), "dir": out_dir}), nl=False)


if __name__ == "__main__":
    main()
