"""Command-line surface.

Every command loads a quiver file, builds the machine report (in process by
default, through a running service with --server), prints the human
rendering, and optionally writes the JSON and DOT outputs.  Exit codes:
0 success, 2 input error, 3 representation-infinite refusal, 4 internal
invariant breach.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import reports
from .errors import InputError, InternalInvariantError, RefusalError
from .quiverfile import CatalogOptions, LoadedQuiverFile, load_quiver_file

_STATUS_EXIT = {422: 2, 409: 3, 500: 4}


def _fail(exc: Exception, code: int) -> None:
    click.echo(f"error ({type(exc).__name__}): {exc}", err=True)
    sys.exit(code)


def _load(path: str, field: str | None, prime: int | None,
          dim_bound: int | None) -> LoadedQuiverFile:
    loaded = load_quiver_file(path)
    opts = loaded.options
    resolved = CatalogOptions(
        field=field if field is not None else opts.field,
        prime=prime if prime is not None else opts.prime,
        dim_bound=dim_bound if dim_bound is not None else opts.dim_bound,
    )
    return LoadedQuiverFile(name=loaded.name, algebra=loaded.algebra, options=resolved)


def _payload(loaded: LoadedQuiverFile) -> dict:
    q = loaded.algebra.quiver
    return {
        "name": loaded.name,
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                   for a in q.arrows],
        "relations": [list(r) for r in loaded.algebra.relations],
        "options": {"field": loaded.options.field, "prime": loaded.options.prime,
                    "dim_bound": loaded.options.dim_bound},
    }


def _post(server: str, endpoint: str, body: dict) -> dict:
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + endpoint, json=body, timeout=300.0)
    except httpx.HTTPError as e:
        raise click.ClickException(f"cannot reach {server}: {e}")
    if resp.status_code in _STATUS_EXIT:
        doc = resp.json()
        click.echo(f"error ({doc.get('error', 'unknown')}): {doc.get('detail', '')}",
                   err=True)
        sys.exit(_STATUS_EXIT[resp.status_code])
    if resp.status_code != 200:
        raise click.ClickException(f"server returned {resp.status_code}: {resp.text}")
    return resp.json()


def _emit(doc: dict, text: str, json_path: str | None) -> None:
    click.echo(text, nl=False)
    if json_path:
        Path(json_path).write_bytes(reports.json_bytes(doc))


def _run(worker):
    try:
        worker()
    except InputError as e:
        _fail(e, 2)
    except RefusalError as e:
        _fail(e, 3)
    except InternalInvariantError as e:
        _fail(e, 4)


_field_opt = click.option("--field", type=click.Choice(["q", "gf"]), default=None,
                          help="Coefficient field (overrides the file's options).")
_prime_opt = click.option("--prime", type=int, default=None,
                          help="Prime for the finite field.")
_bound_opt = click.option("--dim-bound", type=int, default=None,
                          help="Per-vertex dimension cap for brute-force search.")
_json_opt = click.option("--json", "json_path", type=click.Path(dir_okay=False),
                         default=None, help="Write the machine report here.")
_server_opt = click.option("--server", default=None, metavar="URL",
                           help="Send the request to a running service instead "
                                "of computing in process.")


@click.group()
def cli() -> None:
    """Pretorsion-class lattices of bound quiver algebras."""


@cli.command()
@click.argument("file", type=click.Path(exists=False))
@_json_opt
@_server_opt
def classify(file: str, json_path: str | None, server: str | None) -> None:
    """Quiver-level classification: string status, bands, lattice criteria."""
    def worker():
        loaded = _load(file, None, None, None)
        if server:
            doc = _post(server, "/classify", {"quiver": _payload(loaded)})
        else:
            doc = reports.classify_report(loaded)
        _emit(doc, reports.classify_text(doc), json_path)

    _run(worker)


@cli.command()
@click.argument("file", type=click.Path(exists=False))
@click.option("--kind", type=click.Choice(list(reports.LATTICE_KINDS)),
              default="pretorsion", show_default=True,
              help="Which lattice to build.")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None,
              help="Write a Graphviz rendering here.")
@_json_opt
@_field_opt
@_prime_opt
@_bound_opt
@_server_opt
def lattice(file: str, kind: str, dot_path: str | None, json_path: str | None,
            field: str | None, prime: int | None, dim_bound: int | None,
            server: str | None) -> None:
    """Build one of the class lattices and report its structure."""
    def worker():
        loaded = _load(file, field, prime, dim_bound)
        if server:
            doc = _post(server, "/lattice",
                        {"quiver": _payload(loaded), "kind": kind})
        else:
            doc = reports.lattice_report(loaded, reports.catalog_for(loaded), kind)
        _emit(doc, reports.lattice_text(doc), json_path)
        if dot_path:
            Path(dot_path).write_text(reports.lattice_dot(doc), encoding="utf-8")

    _run(worker)


@cli.command()
@click.argument("file", type=click.Path(exists=False))
@click.option("--audit", is_flag=True,
              help="Re-verify every theory through the full checker.")
@_json_opt
@_field_opt
@_prime_opt
@_bound_opt
@_server_opt
def theories(file: str, audit: bool, json_path: str | None, field: str | None,
             prime: int | None, dim_bound: int | None, server: str | None) -> None:
    """Enumerate all pretorsion theories with their verification routes."""
    def worker():
        loaded = _load(file, field, prime, dim_bound)
        if server:
            doc = _post(server, "/theories",
                        {"quiver": _payload(loaded), "audit": audit})
        else:
            doc = reports.theories_report(loaded, reports.catalog_for(loaded),
                                          audit=audit)
        _emit(doc, reports.theories_text(doc), json_path)

    _run(worker)


@cli.command()
@click.argument("file", type=click.Path(exists=False))
@_json_opt
@_field_opt
@_prime_opt
@_bound_opt
@_server_opt
def indecs(file: str, json_path: str | None, field: str | None,
           prime: int | None, dim_bound: int | None, server: str | None) -> None:
    """List the indecomposable modules with their basic invariants."""
    def worker():
        loaded = _load(file, field, prime, dim_bound)
        if server:
            doc = _post(server, "/indecs", {"quiver": _payload(loaded)})
        else:
            doc = reports.indecs_report(loaded, reports.catalog_for(loaded))
        _emit(doc, reports.indecs_text(doc), json_path)

    _run(worker)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
