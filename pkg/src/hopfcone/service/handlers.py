"""Command implementations shared by the HTTP service and the CLI.

Each handler takes validated primitives and returns a JSON-ready dict with an
``ok`` flag (False means a check failed; malformed input raises ValueError).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .. import cones, golden, moulds, ncsf, qsym, rotabaxter, wqsym
from .. import characters as catalan
from ..coeffring import scalar_to_json
from ..combinat import (Composition, MultisetComposition, PackedWord,
                        SchroederTree, SignSeq)
from ..freemod import LinComb


def _parse_label(algebra, basis, text):
    if algebra == "sym":
        return SignSeq.parse(text) if basis == "signedR" else Composition.parse(text)
    if algebra == "qsym":
        return Composition.parse(text)
    if algebra in ("fqsym", "wqsym"):
        return PackedWord.parse(text)
    if algebra == "mqsym":
        return MultisetComposition.parse(text)
    raise ValueError(f"unknown algebra {algebra!r}")


def _element(algebra, basis, label):
    if algebra == "sym":
        return ncsf.SymElement.single(basis, label)
    if algebra == "qsym":
        return qsym.QSymElement.single(basis, label)
    if algebra == "fqsym":
        return qsym.FQSymElement.single(basis, label)
    if algebra == "wqsym":
        return wqsym.WQSymElement.single(basis, label)
    if algebra == "mqsym":
        return wqsym.MQSymElement.single(label)
    raise ValueError(f"unknown algebra {algebra!r}")


def _element_json(elem):
    basis = getattr(elem, "basis", "m")
    return {basis: elem.comb.to_json()}


def _tensor_json(t, basis):
    terms = [{"left": str(a), "right": str(b), "coeff": scalar_to_json(c)}
             for (a, b), c in sorted(t.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))]
    return {"basis": basis, "terms": terms}


DEFAULT_BASIS = {"sym": "S", "qsym": "M", "fqsym": "F", "wqsym": "M", "mqsym": "m"}


def handle_mul(algebra, basis, x, y):
    basis = basis or DEFAULT_BASIS[algebra]
    ex = _element(algebra, basis, _parse_label(algebra, basis, x))
    ey = _element(algebra, basis, _parse_label(algebra, basis, y))
    if algebra == "sym":
        out = ncsf.multiply(ex, ey, basis)
    elif algebra == "qsym":
        out = qsym.qsym_multiply(ex, ey, basis)
    elif algebra == "fqsym":
        out = qsym.fqsym_product(ex, ey)
    elif algebra == "wqsym":
        if basis == "M":
            out = wqsym.wq_m_product(ex, ey)
        elif basis == "Phi":
            out = wqsym.wq_phi_product(ex, ey)
        else:
            raise ValueError("no product rule is defined on the dual N basis")
    else:
        out = wqsym.mq_product(ex, ey)
    return {"ok": True, **_element_json(out)}


def handle_comul(algebra, basis, x):
    basis = basis or DEFAULT_BASIS[algebra]
    label = _parse_label(algebra, basis, x)
    if algebra == "sym":
        t = ncsf.coproduct_in_basis(ncsf.SymElement.single(basis, label), basis)
    elif algebra == "qsym":
        if basis != "M":
            raise ValueError("qsym coproduct is provided on the monomial basis")
        t = qsym.qsym_coproduct(qsym.QSymElement.single("M", label))
    elif algebra == "wqsym":
        if basis != "Phi":
            raise ValueError("wqsym coproduct is provided on the Phi basis")
        t = wqsym.wq_phi_coproduct(wqsym.WQSymElement.single("Phi", label))
    else:
        raise ValueError(f"no coproduct for algebra {algebra!r}")
    return {"ok": True, **_tensor_json(t, basis)}


def handle_convert(algebra, from_basis, to_basis, x):
    label = _parse_label(algebra, from_basis, x)
    if algebra == "sym":
        out = ncsf.convert(ncsf.SymElement.single(from_basis, label), to_basis)
    elif algebra == "qsym":
        out = qsym.qsym_convert(qsym.QSymElement.single(from_basis, label), to_basis)
    elif algebra == "wqsym":
        out = wqsym.wq_convert(wqsym.WQSymElement.single(from_basis, label), to_basis)
    else:
        raise ValueError(f"no basis conversion for algebra {algebra!r}")
    return {"ok": True, **_element_json(out)}


def handle_expand(what, n, basis="R"):
    if what == "psi":
        elem = ncsf.psi(n)
    elif what == "phi":
        elem = ncsf.phi(n)
    else:
        raise ValueError(f"unknown expandable {what!r} (use psi or phi)")
    return {"ok": True, **_element_json(ncsf.convert(elem, basis))}


def handle_internal_mul(x, y, basis="R"):
    ex = ncsf.SymElement.single(basis, _parse_label("sym", basis, x))
    ey = ncsf.SymElement.single(basis, _parse_label("sym", basis, y))
    out = ncsf.internal_product(ex, ey)
    return {"ok": True, **_element_json(out)}


def _lie_element(element, n, q, a, b):
    if element == "psi":
        return ncsf.psi(n).scale(Fraction(1, n)), None
    if element == "phi":
        return ncsf.phi(n).scale(Fraction(1, n)), None
    if element == "canonical":
        return ncsf.alien_canonical(n), None
    if element == "euler":
        return ncsf.euler_idempotent(n, Fraction(q)), None
    if element == "catalan":
        idem, cert = catalan.catalan_lie_idempotent(n, Fraction(a), Fraction(b))
        return idem, cert
    raise ValueError(f"unknown element kind {element!r}")


def handle_lie_check(element, n, q="1", a="1", b="1"):
    elem, cert = _lie_element(element, n, q, a, b)
    if cert is None:
        cert = ncsf.is_lie_idempotent(elem, n, check_internal=n <= 6)
    return {"ok": bool(cert["is_lie_idempotent"]), "certificate": cert,
            "element": element, "n": n}


def handle_euler_idempotent(n, q="1"):
    out = ncsf.euler_idempotent(n, Fraction(q))
    return {"ok": True, **_element_json(out)}


def handle_alien(op, n):
    out = ncsf.convert(ncsf.alien(op, n), "R")
    return {"ok": True, **_element_json(out)}


def handle_catalan(n):
    out = ncsf.convert(catalan.catalan_D(n), "R")
    return {"ok": True, **_element_json(out)}


def handle_catalan_idempotent(n, a="1", b="1"):
    idem, cert = catalan.catalan_lie_idempotent(n, Fraction(a), Fraction(b))
    return {"ok": bool(cert["is_lie_idempotent"]),
            "certificate": cert, **_element_json(ncsf.convert(idem, "R"))}


def handle_cone_check(u, v, box=6, basis="K"):
    report = cones.product_identity_check(PackedWord.parse(u), PackedWord.parse(v),
                                          box=box, flavor=basis)
    return {"ok": report["status"] == "pass", **report}


def handle_multiset_cone_check(a, b, samples=200, box=3, seed=0):
    report = cones.multiset_identity_check(MultisetComposition.parse(a),
                                           MultisetComposition.parse(b),
                                           samples=samples, box=box, seed=seed)
    return {"ok": report["status"] == "pass", **report}


def handle_ipt(u, box=4):
    d = cones.ipt_box(PackedWord.parse(u), box)
    terms = {",".join(str(e) for e in exp): cnt for exp, cnt in sorted(d.items())}
    return {"ok": True, "box": box, "terms": terms}


def handle_rational_star_check(u, v, trials=20, seed=0):
    report = cones.star_identity_random_check(PackedWord.parse(u),
                                              PackedWord.parse(v),
                                              trials=trials, seed=seed)
    return {"ok": report["status"] == "pass", **report}


def handle_mould_eval(u, point):
    word = PackedWord.parse(u)
    bindings = {}
    for chunk in point.split(","):
        name, _, val = chunk.partition("=")
        bindings[name.strip()] = Fraction(val)
    zs = []
    for i in range(1, len(word) + 1):
        key = f"z{i}"
        if key not in bindings:
            raise ValueError(f"missing variable {key} in --point")
        zs.append(bindings[key])
    value = moulds.mould_M(word).eval(zs)
    return {"ok": True, "value": scalar_to_json(value),
            "fraction": str(moulds.mould_M(word).fraction)}


def handle_operad(u, k, v):
    out = moulds.operad_compose(PackedWord.parse(u), k, PackedWord.parse(v))
    agree = moulds.operad_symbolic_vs_rational_check(
        PackedWord.parse(u), k, PackedWord.parse(v), trials=5, seed=0)
    return {"ok": agree["status"] == "pass",
            "terms": {str(w): c for w, c in sorted(out.items(), key=lambda kv: str(kv[0]))},
            "rational_agreement": agree}


def handle_tree_mould(tree, trials=10, seed=0):
    t = SchroederTree.parse(tree)
    tm = moulds.tree_mould(t)
    report = moulds.tree_mould_check(t, trials=trials, seed=seed)
    return {"ok": report["status"] == "pass", "fraction": str(tm.fraction), **report}


def handle_tridendriform_check(u, v, seed=0):
    pu, pv = PackedWord.parse(u), PackedWord.parse(v)
    x = wqsym.WQSymElement.single("M", pu)
    y = wqsym.WQSymElement.single("M", pv)
    left, middle, right = wqsym.tridendriform_split(x, y)
    total = wqsym.wq_m_product(x, y)
    partition_ok = (left.comb + middle.comb + right.comb) == total.comb
    rng = random.Random(seed)
    fs = [moulds.random_seq(rng, 2, coeff_bound=3) for _ in range(len(pu) + len(pv))]
    op_reports = {kind: moulds.tridendriform_operator_check(kind, pu, pv, fs)
                  for kind in ("left", "middle", "right")}
    ok = partition_ok and all(r["status"] == "pass" for r in op_reports.values())
    return {"ok": ok, "partition_ok": partition_ok,
            "left": left.comb.to_json(), "middle": middle.comb.to_json(),
            "right": right.comb.to_json(),
            "operator_checks": {k: r["status"] for k, r in op_reports.items()}}


def handle_rb_check(trials=200, support=4, seed=7):
    suite = rotabaxter.rb_random_suite(trials=trials, support=support, seed=seed)
    rng = random.Random(seed)
    op_ok = True
    for _ in range(min(trials, 50)):
        f1 = moulds.random_seq(rng, 3)
        f2 = moulds.random_seq(rng, 3)
        if moulds.rb_operator_check(f1, f2, (-7, 9))["status"] != "pass":
            op_ok = False
            break
    ok = suite["status"] == "pass" and op_ok
    return {"ok": ok, "convolution_suite": suite,
            "operator_identity": "pass" if op_ok else "fail"}


def handle_tensor_character_check(trials=100, seed=0):
    rng = random.Random(seed)
    for i in range(trials):
        u = rotabaxter.Tensor(tuple(rotabaxter.random_conv_seq(rng, 2, 3)
                                    for _ in range(rng.randint(0, 2))))
        v = rotabaxter.Tensor(tuple(rotabaxter.random_conv_seq(rng, 2, 3)
                                    for _ in range(rng.randint(1, 2))))
        qs = rotabaxter.tensor_quasi_shuffle(u, v)
        if rotabaxter.character_C(qs) != rotabaxter.character_C(u) * rotabaxter.character_C(v):
            return {"ok": False, "what": "character", "trial": i}
        lhs_i = rotabaxter.func_I(rotabaxter.character_C(qs))
        rhs_i = rotabaxter.func_I(rotabaxter.character_C(u)) * \
            rotabaxter.func_I(rotabaxter.character_C(v))
        if lhs_i != rhs_i:
            return {"ok": False, "what": "I-character", "trial": i}
    a = rotabaxter.random_conv_seq(rng, 3)
    g = rotabaxter.bridge_grouplike_check(a, cap=4)
    p = rotabaxter.bridge_primitive_check(a, cap=4)
    ok = g["status"] == "pass" and p["status"] == "pass"
    return {"ok": ok, "trials": trials, "bridge_grouplike": g["status"],
            "bridge_primitive": p["status"]}


def _mc_config(samples, seed, shards, threads=1):
    return catalan.MCConfig(seed=seed, samples=samples, shards=shards, threads=threads)


def handle_mc_weight(eps, density, samples=10 ** 6, seed=0, shards=4, threads=1):
    word = catalan.FullSignWord.parse(eps) if eps else catalan.FullSignWord("")
    d = catalan.Density.parse(density)
    report = catalan.mc_weight(word, d, _mc_config(samples, seed, shards, threads))
    return {"ok": True, **report}


def handle_mc_character(i, j, density, samples=10 ** 6, seed=0, shards=4, threads=1):
    report = catalan.mc_character_check(Composition.parse(i), Composition.parse(j),
                                        catalan.Density.parse(density),
                                        _mc_config(samples, seed, shards, threads))
    return {"ok": bool(report["pass"]), **report}


def handle_consistency(eps, density, samples=10 ** 6, seed=0, shards=4, threads=1):
    word = catalan.FullSignWord.parse(eps) if eps else catalan.FullSignWord("")
    report = catalan.consistency_check(word, catalan.Density.parse(density),
                                       _mc_config(samples, seed, shards, threads))
    return {"ok": bool(report["pass"]), **report}


def handle_sparre_andersen(nmax=4, density="gaussian", samples=10 ** 6, seed=1,
                           shards=4, threads=1):
    report = catalan.sparre_andersen(catalan.Density.parse(density), nmax,
                                     _mc_config(samples, seed, shards, threads))
    return {"ok": bool(report["pass"]), **report}


def handle_selftest():
    ok, rows = golden.run_golden()
    return {"ok": ok, "passed": sum(1 for r in rows if r["ok"]),
            "total": len(rows), "checks": rows}
