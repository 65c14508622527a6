"""FastAPI application exposing every command at POST /v1/<name>.

Responses carry an ``ok`` flag and the exit code the CLI should use:
0 success, 1 failed check; malformed input yields HTTP 400 (exit 2).
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import handlers, models
from ..coeffring import PoleError


def _respond(fn, **kwargs):
    try:
        result = fn(**kwargs)
    except (ValueError, KeyError, ZeroDivisionError, PoleError) as exc:
        return JSONResponse(status_code=400, content={
            "ok": False, "exit_code": 2, "error": str(exc)})
    ok = bool(result.pop("ok", True))
    return {"ok": ok, "exit_code": 0 if ok else 1, "result": result}


def create_app():
    app = FastAPI(title="hopfcone",
                  description="Exact combinatorial Hopf algebra computations "
                              "and paper-identity checks over HTTP.")

    @app.get("/v1/health")
    def health():
        return {"ok": True}

    @app.post("/v1/mul", response_model=models.CommandResponse)
    def mul(req: models.MulRequest):
        return _respond(handlers.handle_mul, algebra=req.algebra, basis=req.basis,
                        x=req.x, y=req.y)

    @app.post("/v1/comul", response_model=models.CommandResponse)
    def comul(req: models.ComulRequest):
        return _respond(handlers.handle_comul, algebra=req.algebra,
                        basis=req.basis, x=req.x)

    @app.post("/v1/convert", response_model=models.CommandResponse)
    def convert(req: models.ConvertRequest):
        return _respond(handlers.handle_convert, algebra=req.algebra,
                        from_basis=req.from_basis, to_basis=req.to, x=req.x)

    @app.post("/v1/expand", response_model=models.CommandResponse)
    def expand(req: models.ExpandRequest):
        return _respond(handlers.handle_expand, what=req.what, n=req.n,
                        basis=req.basis)

    @app.post("/v1/internal-mul", response_model=models.CommandResponse)
    def internal_mul(req: models.InternalMulRequest):
        return _respond(handlers.handle_internal_mul, x=req.x, y=req.y,
                        basis=req.basis)

    @app.post("/v1/lie-check", response_model=models.CommandResponse)
    def lie_check(req: models.LieCheckRequest):
        return _respond(handlers.handle_lie_check, element=req.element, n=req.n,
                        q=req.q, a=req.a, b=req.b)

    @app.post("/v1/euler-idempotent", response_model=models.CommandResponse)
    def euler_idempotent(req: models.EulerRequest):
        return _respond(handlers.handle_euler_idempotent, n=req.n, q=req.q)

    @app.post("/v1/alien", response_model=models.CommandResponse)
    def alien(req: models.AlienRequest):
        return _respond(handlers.handle_alien, op=req.op, n=req.n)

    @app.post("/v1/catalan", response_model=models.CommandResponse)
    def catalan(req: models.CatalanRequest):
        return _respond(handlers.handle_catalan, n=req.n)

    @app.post("/v1/catalan-idempotent", response_model=models.CommandResponse)
    def catalan_idempotent(req: models.CatalanIdempotentRequest):
        return _respond(handlers.handle_catalan_idempotent, n=req.n, a=req.a,
                        b=req.b)

    @app.post("/v1/cone-check", response_model=models.CommandResponse)
    def cone_check(req: models.ConeCheckRequest):
        return _respond(handlers.handle_cone_check, u=req.u, v=req.v,
                        box=req.box, basis=req.basis)

    @app.post("/v1/multiset-cone-check", response_model=models.CommandResponse)
    def multiset_cone_check(req: models.MultisetConeCheckRequest):
        return _respond(handlers.handle_multiset_cone_check, a=req.a, b=req.b,
                        samples=req.samples, box=req.box, seed=req.seed)

    @app.post("/v1/ipt", response_model=models.CommandResponse)
    def ipt(req: models.IptRequest):
        return _respond(handlers.handle_ipt, u=req.u, box=req.box)

    @app.post("/v1/rational-star-check", response_model=models.CommandResponse)
    def rational_star_check(req: models.RationalStarRequest):
        return _respond(handlers.handle_rational_star_check, u=req.u, v=req.v,
                        trials=req.trials, seed=req.seed)

    @app.post("/v1/mould-eval", response_model=models.CommandResponse)
    def mould_eval(req: models.MouldEvalRequest):
        return _respond(handlers.handle_mould_eval, u=req.u, point=req.point)

    @app.post("/v1/operad", response_model=models.CommandResponse)
    def operad(req: models.OperadRequest):
        return _respond(handlers.handle_operad, u=req.u, k=req.k, v=req.v)

    @app.post("/v1/tree-mould", response_model=models.CommandResponse)
    def tree_mould(req: models.TreeMouldRequest):
        return _respond(handlers.handle_tree_mould, tree=req.tree,
                        trials=req.trials, seed=req.seed)

    @app.post("/v1/tridendriform-check", response_model=models.CommandResponse)
    def tridendriform_check(req: models.TridendriformRequest):
        return _respond(handlers.handle_tridendriform_check, u=req.u, v=req.v,
                        seed=req.seed)

    @app.post("/v1/rb-check", response_model=models.CommandResponse)
    def rb_check(req: models.RbCheckRequest):
        return _respond(handlers.handle_rb_check, trials=req.trials,
                        support=req.support, seed=req.seed)

    @app.post("/v1/tensor-character-check", response_model=models.CommandResponse)
    def tensor_character_check(req: models.TensorCharacterRequest):
        return _respond(handlers.handle_tensor_character_check,
                        trials=req.trials, seed=req.seed)

    @app.post("/v1/mc-weight", response_model=models.CommandResponse)
    def mc_weight(req: models.McWeightRequest):
        return _respond(handlers.handle_mc_weight, eps=req.eps,
                        density=req.density, samples=req.samples,
                        seed=req.seed, shards=req.shards, threads=req.threads)

    @app.post("/v1/mc-character", response_model=models.CommandResponse)
    def mc_character(req: models.McCharacterRequest):
        return _respond(handlers.handle_mc_character, i=req.i, j=req.j,
                        density=req.density, samples=req.samples,
                        seed=req.seed, shards=req.shards, threads=req.threads)

    @app.post("/v1/consistency", response_model=models.CommandResponse)
    def consistency(req: models.ConsistencyRequest):
        return _respond(handlers.handle_consistency, eps=req.eps,
                        density=req.density, samples=req.samples,
                        seed=req.seed, shards=req.shards, threads=req.threads)

    @app.post("/v1/sparre-andersen", response_model=models.CommandResponse)
    def sparre_andersen(req: models.SparreRequest):
        return _respond(handlers.handle_sparre_andersen, nmax=req.nmax,
                        density=req.density, samples=req.samples,
                        seed=req.seed, shards=req.shards, threads=req.threads)

    @app.post("/v1/selftest", response_model=models.CommandResponse)
    def selftest(req: models.SelftestRequest):
        return _respond(handlers.handle_selftest)

    return app
