"""HTTP service exposing simulation, concurrence, sweep, and selftest endpoints.

The service is stateless: every request is a pure computation over the core
package, so instances can be scaled or called concurrently without
coordination.
"""

from __future__ import annotations

import math
from importlib.metadata import PackageNotFoundError, version as pkg_version

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import coherent, entanglement, selftest, sweeps
from ..coherent import SUNCoherentLabel
from ..errors import CohnetError, DegenerateLogicalBasis, SpecError
from ..fock import PureState, tensor
from ..networks import ChainTopology, ParallelTopology, apply_network, network_from_angles
from . import schemas


def _version() -> str:
    try:
        return pkg_version("cohnet")
    except PackageNotFoundError:
        return "unknown"


def _closed_form_reference(topology, angles: list[float], photons: int) -> PureState:
    if isinstance(topology, ChainTopology):
        xi = coherent.xi_from_angles(angles)
        return coherent.su_coherent_closed_form(
            SUNCoherentLabel(k=topology.k, n=photons, xi=xi)
        )
    per_block = topology.k
    state = None
    for block in range(topology.p):
        block_angles = angles[block * per_block : (block + 1) * per_block]
        xi = coherent.xi_from_angles(block_angles)
        block_state = coherent.su_coherent_closed_form(
            SUNCoherentLabel(k=per_block, n=photons, xi=xi)
        )
        state = block_state if state is None else tensor(state, block_state)
    return state


def _varphi_from(c: float | None, varphi: float | None, what: str) -> float:
    if (c is None) == (varphi is None):
        raise SpecError(f"give exactly one of c or varphi for {what}")
    if varphi is not None:
        return float(varphi)
    return math.acos(float(c))


def create_app() -> FastAPI:
    app = FastAPI(title="cohnet", version=_version())

    @app.exception_handler(CohnetError)
    async def _domain_error(request: Request, exc: CohnetError):
        return JSONResponse(
            status_code=400,
            content={"detail": f"{type(exc).__name__}: {exc}"},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=_version())

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def simulate(req: schemas.SimulateRequest):
        if req.topology == "chain":
            topology = ChainTopology(k=len(req.angles))
        else:
            if req.blocks < 1 or len(req.angles) % req.blocks:
                raise SpecError(
                    f"{len(req.angles)} angles do not divide into {req.blocks} equal blocks"
                )
            topology = ParallelTopology(p=req.blocks, k=len(req.angles) // req.blocks)
        net = network_from_angles(topology, req.angles)
        if isinstance(topology, ChainTopology):
            input_counts = (req.photons,) + (0,) * topology.k
        else:
            input_counts = ((req.photons,) + (0,) * topology.k) * topology.p
        evolved = apply_network(PureState.basis_state(input_counts), net)
        reference = _closed_form_reference(topology, list(req.angles), req.photons)

        rows = []
        worst = 0.0
        keys = sorted(set(evolved.amplitudes) | set(reference.amplitudes), reverse=True)
        for t in keys:
            a = evolved.amplitudes.get(t, 0.0 + 0.0j)
            b = reference.amplitudes.get(t, 0.0 + 0.0j)
            diff = abs(a - b)
            worst = max(worst, diff)
            rows.append(
                schemas.AmplitudeRow(
                    occupation=list(t),
                    re=float(a.real),
                    im=float(a.imag),
                    closed_re=float(b.real),
                    closed_im=float(b.imag),
                    abs_diff=float(diff),
                )
            )
        return schemas.SimulateResponse(
            modes=topology.mode_count, rows=rows, max_discrepancy=float(worst)
        )

    @app.post("/concurrence/pure", response_model=schemas.ConcurrenceResponse)
    def concurrence_pure(req: schemas.PureConcurrenceRequest):
        varphi = _varphi_from(req.c, req.varphi, "the block overlap")
        spec = entanglement.uniform_superposition(req.p, req.n, varphi, req.theta)
        report = entanglement.concurrence_pure_report(spec, req.q)
        return schemas.ConcurrenceResponse(
            closed_form=report.closed_form,
            numeric=report.numeric,
            discrepancy=report.discrepancy,
        )

    @app.post("/concurrence/mixed", response_model=schemas.ConcurrenceResponse)
    def concurrence_mixed(req: schemas.MixedConcurrenceRequest):
        varphi = _varphi_from(req.c, req.varphi, "the swapped pair")
        if req.c_rest is None and req.varphi_rest is None:
            varphi_rest = None
        else:
            varphi_rest = _varphi_from(req.c_rest, req.varphi_rest, "the residual blocks")
        spec = entanglement.swapped_superposition(req.p, req.n, varphi, req.theta, varphi_rest)
        report = entanglement.concurrence_mixed_report(spec)
        try:
            lambdas = entanglement.spin_flip_spectrum(entanglement.mixed_logical_density(spec))
            lam_list = [float(v) for v in lambdas]
        except DegenerateLogicalBasis:
            lam_list = None
        return schemas.ConcurrenceResponse(
            closed_form=report.closed_form,
            numeric=report.numeric,
            discrepancy=report.discrepancy,
            lambdas=lam_list,
        )

    @app.post("/figures/{figure_id}", response_model=schemas.FigureResponse)
    def figure(figure_id: str, req: schemas.FigureRequest):
        spec = sweeps.default_sweep(figure_id)
        if req.resolution is not None:
            spec = sweeps.SweepSpec(
                figure_id=spec.figure_id,
                resolution=req.resolution,
                n_values=spec.n_values,
                theta=spec.theta,
            )
        header, rows = sweeps.figure_table(spec)
        return schemas.FigureResponse(
            figure_id=figure_id,
            columns=header,
            rows=[[float(v) for v in row] for row in np.asarray(rows)],
        )

    @app.post("/selftest", response_model=schemas.SelftestResponse)
    def run_selftest_endpoint(req: schemas.SelftestRequest):
        config = selftest.RunConfig(
            seed=req.seed if req.seed is not None else selftest.DEFAULT_SEED,
            tolerance=req.tolerance,
            jobs=req.jobs,
        )
        results = selftest.run_selftest(config, only=req.checks)
        checks = [
            schemas.CheckModel(
                name=r.name,
                passed=r.passed,
                metric=r.metric,
                threshold=r.threshold,
                seconds=r.seconds,
            )
            for r in results
        ]
        return schemas.SelftestResponse(
            passed=all(r.passed for r in results),
            total_seconds=sum(r.seconds for r in results),
            checks=checks,
        )

    return app


app = create_app()
