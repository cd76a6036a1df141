"""FastAPI application exposing the coefficient tables, named series,
generating-series dumps, and verification suites.

The app is stateless and every handler is a pure function of its inputs,
so results are identical whether the app is served over a socket or
mounted in-process by the CLI.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from .. import __version__, bivariate, named, tau, verify
from ..config import RunConfig
from ..grading import TruncationSpec
from .models import (AllReportOut, BivariateOut, FhRequest, FkRequest,
                     Health, ReportOut, SequenceTableOut, SeriesOut,
                     TauDumpOut, VerifyRequest)

SEQUENCE_NAMES = ("a", "e", "b", "C", "l", "d")
QUADRATIC_NAMES = ("Q", "QB")


def _tau_dump(name: str, t_log, q_log, u_max: int, weight_max: int,
              weight_bound: int) -> dict:
    return {
        "name": name,
        "window": {"u_max": u_max, "weight_max": weight_max},
        "weight_bound": weight_bound,
        "t_log": t_log.to_json_dict(),
        "q_log": q_log.to_json_dict(),
        "t_text": str(t_log),
        "q_text": str(q_log),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="taulink", version=__version__)

    @app.get("/health", response_model=Health)
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/coeffs/{name}", response_model=SequenceTableOut)
    def coeffs(name: str, count: int = Query(ge=1)):
        if name not in SEQUENCE_NAMES:
            raise HTTPException(404, f"unknown coefficient family {name!r}; "
                                     f"expected one of {SEQUENCE_NAMES}")
        table = named.coefficient_table(name, count)
        return table.to_json_dict()

    @app.get("/quadratic/{name}", response_model=BivariateOut)
    def quadratic(name: str, cutoff: int = Query(ge=1)):
        if name == "Q":
            if cutoff < 2:
                raise HTTPException(422, "Q needs cutoff >= 2")
            table = bivariate.series_Q(cutoff)
        elif name == "QB":
            table = bivariate.series_QB(cutoff)
        else:
            raise HTTPException(404, f"unknown quadratic table {name!r}; "
                                     f"expected one of {QUADRATIC_NAMES}")
        d = table.to_json_dict()
        d["name"] = name
        return d

    @app.get("/series/{name}", response_model=SeriesOut)
    def series(name: str, order: int = Query(ge=1)):
        ctor = named.NAMED_SERIES.get(name)
        if ctor is None:
            raise HTTPException(404, f"unknown series {name!r}; expected one "
                                     f"of {tuple(named.NAMED_SERIES)}")
        try:
            s = ctor(order)
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return {"name": name, "order": order, "text": str(s),
                "series": s.to_json_dict()}

    @app.post("/verify/{suite}")
    def run_verify(suite: str, req: VerifyRequest):
        cfg = RunConfig(u_max=req.u_max, weight_max=req.weight_max,
                        order=req.order, seed=req.seed,
                        margin_extra=req.margin_extra)
        if suite == "all":
            return AllReportOut(**verify.run_all(cfg))
        if suite not in verify.SUITES:
            raise HTTPException(404, f"unknown suite {suite!r}; expected one "
                                     f"of {tuple(verify.SUITES)} or 'all'")
        return ReportOut(**verify.run_suite(suite, cfg))

    @app.post("/fk", response_model=TauDumpOut)
    def fk(req: FkRequest):
        wb = req.weight_bound
        trunc = TruncationSpec(0, wb, wb)
        t_form = tau.fk_series(wb, "t", trunc)
        q_form = tau.fk_series(wb, "q", trunc)
        return _tau_dump("fk", t_form.log_part, q_form.log_part, 0, wb, wb)

    @app.post("/fh", response_model=TauDumpOut)
    def fh(req: FhRequest):
        run = tau.run_trunc(req.u_max, req.weight_max, req.margin_extra)
        pair = tau.build_fh(run)
        window = TruncationSpec(req.u_max, req.weight_max, req.weight_max)
        return _tau_dump("fh",
                         pair.t_form.log_part.restrict(window),
                         pair.q_form.log_part.restrict(window),
                         req.u_max, req.weight_max, run.weight_max)

    return app
