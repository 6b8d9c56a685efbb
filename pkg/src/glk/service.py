"""Command handlers and the HTTP service.

Each handler takes a validated request model and returns a JSON-ready
payload (plain dicts, lists, strings, ints, bools).  The CLI calls the same
handlers in-process; the FastAPI app exposes them as POST endpoints with
identical payloads, so a `--url` invocation and a local one are
interchangeable.

Exact scalars serialize as {"m", "num", "den"} cyclotomic objects with
string-encoded integers; polynomials as digit strings.
"""

from __future__ import annotations

from .checks import resolve_budget, run_suite
from .errors import BudgetError, ConfigError, DomainError
from .ffpoly import ExtFieldCtx, FpPoly, factor
from .glring import (
    RingElement,
    decompose_into_generators,
    generator_power,
    t_eigenspace_dimensions,
)
from .models import (
    DecomposeRequest,
    DeltaRequest,
    DlBasisRequest,
    FactorRequest,
    KernelRequest,
    MolienCheckRequest,
    MultRequest,
    PowerRequest,
    REQUEST_MODELS,
    SeriesRequest,
    TSpectrumRequest,
    VerifyRequest,
)
from .poincare import kernel_relations, molien_series_check, series_of_element
from .torus import DLBasisMatrix


def _parse_poly(p: int, text: str) -> FpPoly:
    return FpPoly.parse(p, text)


def _parse_basis(p: int, text: str) -> FpPoly:
    f = _parse_poly(p, text)
    if not f.is_basis_poly():
        raise DomainError(
            f"{f.digits()} is not a basis polynomial "
            "(monic with nonzero constant term required)"
        )
    return f


def _make_ctx(p: int, big_n: int, primitive: str | None) -> ExtFieldCtx:
    override = _parse_poly(p, primitive) if primitive else None
    return ExtFieldCtx.create(p, big_n, override)


def _cyc_list(coeffs) -> list[dict]:
    return [c.to_json() for c in coeffs]


def handle_factor(req: FactorRequest) -> dict:
    f = _parse_poly(req.p, req.poly)
    fact = factor(f)
    return {
        "p": req.p,
        "poly": f.digits(),
        "unit": fact.unit,
        "factors": [
            {"poly": h.digits(), "exponent": e} for h, e in fact.factors
        ],
    }


def handle_mult(req: MultRequest) -> list:
    a = _parse_basis(req.p, req.a)
    b = _parse_basis(req.p, req.b)
    return (RingElement.basis(a) * RingElement.basis(b)).to_json()


def handle_power(req: PowerRequest) -> list:
    h = _parse_basis(req.p, req.poly)
    scalar, out = generator_power(h, req.exponent)
    return RingElement.basis(out, coeff=scalar).to_json()


def handle_decompose(req: DecomposeRequest) -> dict:
    f = _parse_basis(req.p, req.poly)
    scalar, monomial = decompose_into_generators(f)
    return {
        "p": req.p,
        "poly": f.digits(),
        "scalar": str(scalar),
        "generators": [
            {"poly": h.digits(), "exponent": e} for h, e in monomial
        ],
    }


def handle_delta(req: DeltaRequest) -> dict:
    f = _parse_basis(req.p, req.poly)
    triples = RingElement.basis(f).comultiply()
    return {
        "p": req.p,
        "poly": f.digits(),
        "terms": [
            {"coeff": c.to_json(), "left": a.digits(), "right": b.digits()}
            for c, a, b in triples
        ],
    }


def handle_t_spectrum(req: TSpectrumRequest) -> dict:
    pairs = t_eigenspace_dimensions(req.p, req.n)
    return {
        "p": req.p,
        "n": req.n,
        "eigenvalues": [req.p**i for i, _ in pairs],
        "dimensions": [d for _, d in pairs],
    }


def handle_dl_basis(req: DlBasisRequest) -> dict:
    ctx = _make_ctx(req.p, req.n, req.primitive)
    mat = DLBasisMatrix(ctx)
    rows = mat.to_pi if req.direction == "to-pi" else mat.from_pi
    return {
        "p": req.p,
        "n": req.n,
        "m": ctx.m,
        "direction": req.direction,
        "reps": list(mat.reps),
        "keys": [f.digits() for f in mat.keys],
        "matrix": [_cyc_list(row) for row in rows],
    }


def handle_series(req: SeriesRequest) -> dict:
    ctx = _make_ctx(req.p, req.N, req.primitive)
    f = _parse_basis(req.p, req.poly)
    ser = series_of_element(ctx, RingElement.basis(f, m=ctx.m))
    return {
        "p": req.p,
        "N": req.N,
        "m": ctx.m,
        "poly": f.digits(),
        "order": req.order,
        "numerator": _cyc_list(ser.num.coeffs),
        "denominator": _cyc_list(ser.den.coeffs),
        "coefficients": _cyc_list(ser.expand(req.order)),
    }


def handle_molien_check(req: MolienCheckRequest) -> dict:
    ctx = _make_ctx(req.p, req.N, req.primitive)
    res = molien_series_check(ctx, req.k, req.order)
    return {
        "p": req.p,
        "N": req.N,
        "k": req.k,
        "order": req.order,
        "equal": res.equal,
        "first_mismatch": res.first_mismatch,
    }


def handle_kernel(req: KernelRequest) -> dict:
    ctx = _make_ctx(req.p, req.N, req.primitive)
    polys = [_parse_basis(req.p, s) for s in req.polys]
    report = kernel_relations(ctx, polys)
    payload = {
        "p": req.p,
        "N": req.N,
        "m": ctx.m,
        "polys": [f.digits() for f in polys],
        "dimension": report.dimension,
        "lifts": [_cyc_list(q.coeffs) for q in report.lifts],
        "relations": [_cyc_list(rel) for rel in report.relations],
        "residual_ok": report.residual_ok,
    }
    if req.emit_ring_element:
        payload["ring_elements"] = [
            elt.to_json() for elt in report.ring_elements()
        ]
    return payload


def handle_verify(req: VerifyRequest) -> dict:
    rows = run_suite(req.suite, budget=resolve_budget(req.budget))
    return {
        "suite": req.suite,
        "checks": rows,
        "all_equal": all(r["equal"] for r in rows),
    }


HANDLERS = {
    "factor": handle_factor,
    "mult": handle_mult,
    "power": handle_power,
    "decompose": handle_decompose,
    "delta": handle_delta,
    "t-spectrum": handle_t_spectrum,
    "dl-basis": handle_dl_basis,
    "series": handle_series,
    "molien-check": handle_molien_check,
    "kernel": handle_kernel,
    "verify": handle_verify,
}


def dispatch(command: str, params: dict):
    """Validate params through the command's request model and run the
    handler.  Both the CLI (in-process) and the service use this."""
    if command not in HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    req = REQUEST_MODELS[command].model_validate(params)
    return HANDLERS[command](req)


def create_app():
    from fastapi import FastAPI, HTTPException

    from . import __version__

    app = FastAPI(
        title="glk",
        version=__version__,
        description="Exact Grothendieck ring computations for GL_n(F_p) "
        "in natural characteristic.",
    )

    def _guard(handler, req):
        try:
            return handler(req)
        except (DomainError, ConfigError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except BudgetError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/factor")
    def factor_ep(req: FactorRequest):
        return _guard(handle_factor, req)

    @app.post("/mult")
    def mult_ep(req: MultRequest):
        return _guard(handle_mult, req)

    @app.post("/power")
    def power_ep(req: PowerRequest):
        return _guard(handle_power, req)

    @app.post("/decompose")
    def decompose_ep(req: DecomposeRequest):
        return _guard(handle_decompose, req)

    @app.post("/delta")
    def delta_ep(req: DeltaRequest):
        return _guard(handle_delta, req)

    @app.post("/t-spectrum")
    def t_spectrum_ep(req: TSpectrumRequest):
        return _guard(handle_t_spectrum, req)

    @app.post("/dl-basis")
    def dl_basis_ep(req: DlBasisRequest):
        return _guard(handle_dl_basis, req)

    @app.post("/series")
    def series_ep(req: SeriesRequest):
        return _guard(handle_series, req)

    @app.post("/molien-check")
    def molien_check_ep(req: MolienCheckRequest):
        return _guard(handle_molien_check, req)

    @app.post("/kernel")
    def kernel_ep(req: KernelRequest):
        return _guard(handle_kernel, req)

    @app.post("/verify")
    def verify_ep(req: VerifyRequest):
        return _guard(handle_verify, req)

    return app


_app = None


def __getattr__(name):
    # lazy so that in-process CLI calls never pay the fastapi import;
    # `uvicorn glk.service:app` still works
    if name == "app":
        global _app
        if _app is None:
            _app = create_app()
        return _app
    raise AttributeError(name)
