"""Command-line client for the hopfcone service.

The CLI builds a request per subcommand and posts it to the FastAPI app —
in-process through an ASGI transport by default (no server needed), or to a
remote instance via --server.  Output is a single JSON document on stdout.

Exit codes: 0 success, 1 failed check, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx


def _default_seed():
    return int(os.environ.get("HOPFCONE_SEED", "0"))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=argparse.SUPPRESS,
                        help="base URL of a running service (default: in-process)")
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indent the JSON output")
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS,
                        help="cap for series predicates (grouplike/primitive)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="bound on Monte-Carlo shard parallelism")

    p = argparse.ArgumentParser(prog="hopfcone", parents=[common],
                                description="Exact combinatorial Hopf algebra "
                                            "computations and paper-identity checks.")
    p.set_defaults(server=None, pretty=False, max_degree=6, threads=1)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, **kwargs):
        sp = sub.add_parser(name, parents=[common], **kwargs)
        return sp

    sp = cmd("mul", help="product of two basis elements")
    sp.add_argument("--algebra", default="sym",
                    choices=["sym", "qsym", "fqsym", "wqsym", "mqsym"])
    sp.add_argument("--basis", default=None)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    sp = cmd("comul", help="coproduct of a basis element")
    sp.add_argument("--algebra", default="sym", choices=["sym", "qsym", "wqsym"])
    sp.add_argument("--basis", default=None)
    sp.add_argument("--x", required=True)

    sp = cmd("convert", help="change of basis")
    sp.add_argument("--algebra", default="sym", choices=["sym", "qsym", "wqsym"])
    sp.add_argument("--from", dest="from_basis", required=True)
    sp.add_argument("--to", required=True)
    sp.add_argument("--x", required=True)

    sp = cmd("expand", help="expand a named element (psi, phi)")
    sp.add_argument("--what", required=True, choices=["psi", "phi"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--basis", default="R")

    sp = cmd("internal-mul", help="descent-algebra internal product")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--basis", default="R")

    sp = cmd("lie-check", help="Lie idempotent certificate")
    sp.add_argument("--element", required=True,
                    choices=["psi", "phi", "canonical", "euler", "catalan"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", default="1")
    sp.add_argument("--a", default="1")
    sp.add_argument("--b", default="1")

    sp = cmd("euler-idempotent", help="the q-parametrized Lie idempotent")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", default="1")

    sp = cmd("alien", help="alien operator dictionary image")
    sp.add_argument("--op", required=True, choices=["plus", "minus", "canonical"])
    sp.add_argument("--n", type=int, required=True)

    sp = cmd("catalan", help="the Catalan primitive element in ribbons")
    sp.add_argument("--n", type=int, required=True)

    sp = cmd("catalan-idempotent", help="normalized Catalan Lie idempotent")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", default="1")
    sp.add_argument("--b", default="1")

    sp = cmd("cone-check", help="indicator product identity on a box")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--box", type=int, default=6)
    sp.add_argument("--basis", default="K", choices=["K", "C"])

    sp = cmd("multiset-cone-check", help="multiset-cone product identity")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--box", type=int, default=3)
    sp.add_argument("--seed", type=int, default=_default_seed())

    sp = cmd("ipt", help="integer point transform restricted to a box")
    sp.add_argument("--u", required=True)
    sp.add_argument("--box", type=int, default=4)

    sp = cmd("rational-star-check", help="star product of cone transforms")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=_default_seed())

    sp = cmd("mould-eval", help="evaluate a basis mould at a rational point")
    sp.add_argument("--u", required=True)
    sp.add_argument("--point", required=True, help="e.g. z1=3,z2=5,z3=7")

    sp = cmd("operad", help="partial composition of basis moulds")
    sp.add_argument("--u", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--v", required=True)

    sp = cmd("tree-mould", help="mould of a Schroeder tree")
    sp.add_argument("--tree", required=True, help="nested parens, leaf = o")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=_default_seed())

    sp = cmd("tridendriform-check", help="three-way product split + operators")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--seed", type=int, default=_default_seed())

    sp = cmd("rb-check", help="Rota-Baxter identity suites")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--support", type=int, default=4)
    sp.add_argument("--seed", type=int, default=7)

    sp = cmd("tensor-character-check", help="character property of C and bridges")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=_default_seed())

    sp = cmd("mc-weight", help="Monte-Carlo sign-pattern weight")
    sp.add_argument("--eps", default="")
    sp.add_argument("--density", default="gaussian")
    sp.add_argument("--samples", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--shards", type=int, default=4)

    sp = cmd("mc-character", help="Monte-Carlo character law check")
    sp.add_argument("--i", required=True)
    sp.add_argument("--j", required=True)
    sp.add_argument("--density", default="gaussian")
    sp.add_argument("--samples", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--shards", type=int, default=4)

    sp = cmd("consistency", help="m^{eps+} + m^{eps-} = m^{eps} check")
    sp.add_argument("--eps", default="")
    sp.add_argument("--density", default="gaussian")
    sp.add_argument("--samples", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--shards", type=int, default=4)

    sp = cmd("sparre-andersen", help="ladder-epoch probabilities vs 1-sqrt(1-s)")
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--density", default="gaussian")
    sp.add_argument("--samples", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--shards", type=int, default=4)

    cmd("selftest", help="run the full golden-example suite")

    sp = cmd("serve", help="run the HTTP service with uvicorn")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return p


_BODY_FIELDS = {
    "mul": ["algebra", "basis", "x", "y"],
    "comul": ["algebra", "basis", "x"],
    "convert": ["algebra", ("from", "from_basis"), "to", "x"],
    "expand": ["what", "n", "basis"],
    "internal-mul": ["x", "y", "basis"],
    "lie-check": ["element", "n", "q", "a", "b"],
    "euler-idempotent": ["n", "q"],
    "alien": ["op", "n"],
    "catalan": ["n"],
    "catalan-idempotent": ["n", "a", "b"],
    "cone-check": ["u", "v", "box", "basis"],
    "multiset-cone-check": ["a", "b", "samples", "box", "seed"],
    "ipt": ["u", "box"],
    "rational-star-check": ["u", "v", "trials", "seed"],
    "mould-eval": ["u", "point"],
    "operad": ["u", "k", "v"],
    "tree-mould": ["tree", "trials", "seed"],
    "tridendriform-check": ["u", "v", "seed"],
    "rb-check": ["trials", "support", "seed"],
    "tensor-character-check": ["trials", "seed"],
    "mc-weight": ["eps", "density", "samples", "seed", "shards"],
    "mc-character": ["i", "j", "density", "samples", "seed", "shards"],
    "consistency": ["eps", "density", "samples", "seed", "shards"],
    "sparre-andersen": ["nmax", "density", "samples", "seed", "shards"],
    "selftest": [],
}

_THREADED = {"mc-weight", "mc-character", "consistency", "sparre-andersen"}


def _request_body(args):
    body = {}
    for field in _BODY_FIELDS[args.command]:
        if isinstance(field, tuple):
            wire, attr = field
        else:
            wire = attr = field
        value = getattr(args, attr.replace("-", "_"))
        if value is not None:
            body[wire] = value
    if args.command in _THREADED:
        body["threads"] = args.threads
    return body


def _client(args):
    if args.server:
        return httpx.Client(base_url=args.server, timeout=600.0)
    # in-process ASGI client: deterministic, no network, same wire format
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import create_app
    return TestClient(create_app(), base_url="http://hopfcone.internal")


_DASH_VALUED = {"--eps", "--x", "--y", "--u", "--v", "--i", "--j",
                "--a", "--b", "--q", "--point"}


def _merge_dash_values(argv):
    """Rewrite ["--eps", "-+"] as ["--eps=-+"] so sign words parse."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUED and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_dash_values(list(argv)))

    if args.command == "serve":
        import uvicorn
        from .service import create_app
        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    body = _request_body(args)
    with _client(args) as client:
        resp = client.post(f"/v1/{args.command}", json=body)
    payload = resp.json()
    if resp.status_code != 200:
        doc = {"error": payload.get("error", payload)}
        print(json.dumps(doc, indent=2 if args.pretty else None))
        return 2
    doc = payload.get("result", payload)
    print(json.dumps(doc, indent=2 if args.pretty else None, default=str))
    return int(payload.get("exit_code", 0 if payload.get("ok") else 1))


if __name__ == "__main__":
    sys.exit(main())
