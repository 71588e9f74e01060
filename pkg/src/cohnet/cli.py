"""Command-line front end; a thin client over the HTTP service.

Without --server the commands talk to an in-process instance of the app, so
the CLI works standalone; with --server they target a running deployment.
COHNET_JOBS overrides --jobs when set.
"""

from __future__ import annotations

import os
import sys

import click
import httpx
import numpy as np

from . import sweeps


def _resolve_jobs(cli_jobs: int) -> int:
    env = os.environ.get("COHNET_JOBS")
    if env:
        return max(1, int(env))
    return max(1, cli_jobs)


class ServiceClient:
    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                # starlette's test client announces an httpx2 migration on import
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise click.ClickException(str(detail))
        return response.json()


@click.group()
@click.option("--server", default=None, help="Base URL of a running service (default: in-process).")
@click.option("--output", default=None, type=click.Path(), help="Write results to this CSV path.")
@click.option("--seed", default=None, type=int, help="Seed for randomized oracle draws.")
@click.option("--tolerance", default=None, type=float, help="Override every selftest threshold.")
@click.option("--jobs", default=1, type=int, show_default=True, help="Parallel workers for sweeps.")
@click.pass_context
def main(ctx, server, output, seed, tolerance, jobs):
    """Beam-splitter network simulator and concurrence calculator."""
    ctx.obj = {
        "client": ServiceClient(server),
        "output": output,
        "seed": seed,
        "tolerance": tolerance,
        "jobs": _resolve_jobs(jobs),
    }


def _parse_angles(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise click.ClickException(f"could not parse angles {text!r}: {exc}") from None


@main.command()
@click.option("--chain", "topology", flag_value="chain", default=True, help="Single chain of splitters.")
@click.option("--parallel", "blocks", type=int, default=None, help="Number of uncoupled blocks (p).")
@click.option("--angles", required=True, help="Comma-separated splitter angles in radians.")
@click.option("--photons", required=True, type=int, help="Photons fed into the first mode of each block.")
@click.pass_obj
def simulate(obj, topology, blocks, angles, photons):
    """Evolve |n,0,...,0> through a network and compare to the closed form."""
    payload = {
        "topology": "parallel" if blocks else "chain",
        "blocks": blocks or 1,
        "angles": _parse_angles(angles),
        "photons": photons,
    }
    data = obj["client"].post("/simulate", payload)
    lines = []
    for row in data["rows"]:
        occ = " ".join(str(c) for c in row["occupation"])
        lines.append(
            f"|{occ}>  amp = {row['re']:+.12g}{row['im']:+.12g}j"
            f"   closed = {row['closed_re']:+.12g}{row['closed_im']:+.12g}j"
            f"   |diff| = {row['abs_diff']:.3g}"
        )
    click.echo("\n".join(lines))
    click.echo(f"max discrepancy = {data['max_discrepancy']:.12g}")
    if obj["output"]:
        with open(obj["output"], "wb") as fh:
            fh.write(b"occupation,re,im,closed_re,closed_im,abs_diff\n")
            for row in data["rows"]:
                occ = " ".join(str(c) for c in row["occupation"])
                fields = [occ] + [
                    f"{row[key]:.12g}" for key in ("re", "im", "closed_re", "closed_im", "abs_diff")
                ]
                fh.write((",".join(fields) + "\n").encode("ascii"))
            fh.write(f"# max_discrepancy = {data['max_discrepancy']:.12g}\n".encode("ascii"))


@main.group()
def concurrence():
    """Concurrence of balanced block-coherent superpositions."""


def _echo_report(obj, data: dict, extra_columns: dict | None = None):
    click.echo(f"closed_form = {data['closed_form']:.12g}")
    click.echo(f"numeric     = {data['numeric']:.12g}")
    click.echo(f"discrepancy = {data['discrepancy']:.3g}")
    if data.get("lambdas"):
        click.echo("lambdas     = " + ", ".join(f"{v:.6g}" for v in data["lambdas"]))
    if obj["output"]:
        header = ["closed_form", "numeric", "discrepancy"]
        row = [data["closed_form"], data["numeric"], data["discrepancy"]]
        sweeps.write_csv(obj["output"], header, np.array([row]))


@concurrence.command()
@click.option("--p", "p", required=True, type=int, help="Number of coherent blocks.")
@click.option("--q", "q", required=True, type=int, help="Blocks in the first subsystem.")
@click.option("--n", "n", required=True, type=int, help="Photons per block.")
@click.option("--c", "c", type=float, default=None, help="Base overlap c = cos(varphi).")
@click.option("--varphi", type=float, default=None, help="Overlap angle; alternative to --c.")
@click.option("--theta", type=float, default=0.0, show_default=True, help="Relative branch phase.")
@click.pass_obj
def pure(obj, p, q, n, c, varphi, theta):
    """Pure-bipartition concurrence, closed form vs spin-flip numeric."""
    payload = {"p": p, "q": q, "n": n, "c": c, "varphi": varphi, "theta": theta}
    _echo_report(obj, obj["client"].post("/concurrence/pure", payload))


@concurrence.command()
@click.option("--p", "p", required=True, type=int, help="Number of coherent blocks.")
@click.option("--n", "n", required=True, type=int, help="Photons per block.")
@click.option("--c", "c", type=float, default=None, help="Overlap of the swapped pair labels.")
@click.option("--varphi", type=float, default=None, help="Pair overlap angle; alternative to --c.")
@click.option("--c-rest", "c_rest", type=float, default=None, help="Overlap of each residual block.")
@click.option("--varphi-rest", "varphi_rest", type=float, default=None)
@click.option("--theta", type=float, default=0.0, show_default=True, help="Relative branch phase.")
@click.pass_obj
def mixed(obj, p, n, c, varphi, c_rest, varphi_rest, theta):
    """Two-block reduced-state concurrence under the swapped preparation."""
    payload = {
        "p": p,
        "n": n,
        "c": c,
        "varphi": varphi,
        "c_rest": c_rest,
        "varphi_rest": varphi_rest,
        "theta": theta,
    }
    _echo_report(obj, obj["client"].post("/concurrence/mixed", payload))


@main.command()
@click.argument("figure_id", type=click.Choice(sweeps.FIGURE_IDS))
@click.option("--resolution", type=int, default=None, help="Override the default grid resolution.")
@click.pass_obj
def figure(obj, figure_id, resolution):
    """Write one figure sweep as a CSV file."""
    data = obj["client"].post(f"/figures/{figure_id}", {"resolution": resolution})
    path = obj["output"] or f"{figure_id}.csv"
    sweeps.write_csv(path, data["columns"], np.array(data["rows"], dtype=float))
    click.echo(f"wrote {len(data['rows'])} rows to {path}")


@main.command()
@click.option("--only", multiple=True, help="Run only the named checks (repeatable).")
@click.pass_obj
def selftest(obj, only):
    """Run the oracle-equivalence suite; exit 0 only if every check passes."""
    payload = {
        "seed": obj["seed"],
        "tolerance": obj["tolerance"],
        "jobs": obj["jobs"],
        "checks": list(only) or None,
    }
    data = obj["client"].post("/selftest", payload)
    width = max(len(c["name"]) for c in data["checks"])
    for check in data["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        click.echo(
            f"{check['name']:<{width}}  {status}  "
            f"metric={check['metric']:.3e}  threshold={check['threshold']:.1e}  "
            f"({check['seconds']:.2f}s)"
        )
    click.echo(f"total: {data['total_seconds']:.1f}s")
    if not data["passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP service with uvicorn."""
    import uvicorn

    uvicorn.run("cohnet.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
