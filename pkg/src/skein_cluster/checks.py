"""Named verification routines shared by the command line and the test-suite.

Every check takes an integer ``order`` (a box count, series order or degree,
depending on the check) and a seeded ``random.Random`` and returns a JSON-ready
dict with at least a boolean ``pass``.
"""
from __future__ import annotations

import random
from typing import Callable, Dict, List, Tuple

from . import annulus, finite_rank, partitions, quantum_cluster, torus_skein, wavefunction
from .coeff import qbrace

Check = Callable[[int, random.Random], dict]
REGISTRY: Dict[str, Tuple[Check, str]] = {}


def _register(name: str, summary: str):
    def wrap(fn: Check) -> Check:
        REGISTRY[name] = (fn, summary)
        return fn
    return wrap


def _first(rows: List[Tuple[object, bool]]) -> dict:
    for label, ok in rows:
        if not ok:
            return {"pass": False, "firstFail": label, "checked": len(rows)}
    return {"pass": True, "firstFail": None, "checked": len(rows)}


@_register("pentagon", "Baxter pentagon in the torus skein algebra")
def check_pentagon(order, rng):
    reports = {}
    ok = True
    for x, y in (((1, 0), (0, 1)), ((1, 1), (0, 1))):
        rep = torus_skein.pentagon_check(x, y, order)
        reports[f"{x[0]},{x[1]}|{y[0]},{y[1]}"] = dict(rep)
        ok = ok and rep["pass"]
    return {"pass": ok, "pairs": reports}


@_register("adclosed", "closed-form adjoint action against exp(ad Theta)")
def check_adclosed(order, rng):
    rows = []
    for d in range(-3, 4):
        y = (0, d) if d else (2, 0)
        rows.append((d, torus_skein.ad_closed((1, 0), y, order)
                     == torus_skein.ad_series_oracle((1, 0), y, order)))
    return _first(rows)


@_register("mn", "vertical action against Jacobi-Trudi power-sum products")
def check_mn(order, rng):
    rows = []
    for lam in partitions.partitions_upto(order):
        for n in range(1, 5):
            got = annulus.act_generator(0, n, annulus.ModuleVector.basis(lam))
            rows.append(([list(lam), n], got == partitions.power_times_schur(n, lam)))
    return _first(rows)


@_register("eha", "[P_(1,0), P_(0,1)] = {1} P_(1,1) on the solid-torus module")
def check_eha(order, rng):
    rows = []
    act = annulus.act_generator
    for lam in partitions.partitions_upto(order):
        w = annulus.ModuleVector.basis(lam)
        lhs = act(1, 0, act(0, 1, w)) - act(0, 1, act(1, 0, w))
        rows.append((list(lam), lhs == act(1, 1, w).scale(qbrace(1))))
    return _first(rows)


@_register("vertex", "framed vertex from Baxter operators, plus the q^{-rho} sign identity")
def check_vertex(order, rng):
    rows = []
    for p in (-1, 0, 1, 2):
        psi = wavefunction.wavefunction_framed(p, order)
        for lam in partitions.partitions_upto(order):
            rows.append(([p, list(lam)], psi[lam] == wavefunction.topological_vertex(lam, p - 1)))
    for lam in partitions.partitions_upto(order):
        rows.append((["sign", list(lam)], partitions.zhou_sign_check(lam)))
    return _first(rows)


def _module_first_fail(v) -> dict:
    items = v.items()
    if not items:
        return {"pass": True, "firstFail": None}
    lam, c = items[0]
    return {"pass": False, "firstFail": {"partition": list(lam), "coeff": c.to_json()}}


@_register("canoe", "genus-one canoe face relation annihilates the framing -1 vertex")
def check_canoe(order, rng):
    return _module_first_fail(wavefunction.canoe_face_residual(order))


@_register("unknot", "unknot conormal equation")
def check_unknot(order, rng):
    return _module_first_fail(wavefunction.unknot_residual(order))


@_register("inverse", "inverse Baxter identity for p = 0, 1, 2")
def check_inverse(order, rng):
    return _first([(p, wavefunction.inverse_identity_check(p, order)) for p in (0, 1, 2)])


@_register("adkappa", "framing conjugation of P_(0,n)")
def check_adkappa(order, rng):
    rows = []
    for p in (-2, -1, 1, 2):
        for n in (1, 2, 3):
            rows.append(([p, n], wavefunction.ad_kappa_check(p, n, order)))
    return _first(rows)


@_register("qt-pentagon", "quantum dilogarithm pentagon in a rank-2 quantum torus")
def check_qt_pentagon(order, rng):
    return {"pass": quantum_cluster.qt_pentagon_check(order)}


@_register("dmod", "mutation of a face relation at a degree-two vertex")
def check_dmod(order, rng):
    return {"pass": quantum_cluster.dmod_check(order)}


@_register("macdonald", "Macdonald eigenvalues and the rank-N commutator")
def check_macdonald(order, rng):
    rows = [(["eigen", N], finite_rank.macdonald_eigen_check(N, order)) for N in (1, 2, 3, 4)]
    rows += [(["commutator", N], finite_rank.commutator_check_N(N, min(order, 4))) for N in (1, 2, 3)]
    return _first(rows)


@_register("charvar", "rank-2 character variety relation")
def check_charvar(order, rng):
    bad = finite_rank.charvar_relation_residual(order)
    if not bad:
        return {"pass": True, "firstFail": None}
    lam = sorted(bad)[0]
    return {"pass": False, "firstFail": list(lam)}


@_register("qde", "rank-N face q-difference equation for prod Phi(x_k)")
def check_qde(order, rng):
    return _first([(N, finite_rank.face_qde_residual(N, order).is_zero()) for N in (1, 2, 3)])


@_register("whittaker", "q-Whittaker expansion, Toda operators and the UV annihilator")
def check_whittaker(order, rng):
    n = max(order, 1)
    return _first([
        ("expansion", finite_rank.whittaker_wavefunction_check(n)),
        ("toda", finite_rank.toda_consistency_check(min(n, 5))),
        ("uv-embedding", finite_rank.uv_embedding_check(n)),
        ("intertwiner", finite_rank.intertwiner_check(n)),
    ])


@_register("uv-pentagon", "abelianised rank-2 Baxter pentagon")
def check_uv_pentagon(order, rng):
    return {"pass": finite_rank.uv_pentagon_check(order)}


@_register("cvec-pentagon", "c-vectors and dilogarithm products of the two local sequences")
def check_cvec_pentagon(order, rng):
    rep = finite_rank.cvec_pentagon_report(order)
    rep["pass"] = bool(rep["sequencesAgree"] and rep["seriesAgree"])
    return rep


@_register("confluence", "random rewriting strategies give the same normal form")
def check_confluence(order, rng):
    rows = []
    vecs = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if (a, b) != (0, 0)]
    for i in range(10 * max(order, 1)):
        word = [rng.choice(vecs) for _ in range(rng.randint(1, 5))]
        ref = torus_skein.normal_order(word)
        alt = torus_skein.SkeinElement(torus_skein.normal_order_random(word, rng))
        rows.append(([list(v) for v in word], ref == alt))
    return _first(rows)


@_register("sign-coherence", "c-vectors stay sign-coherent along random mutation paths")
def check_sign_coherence(order, rng):
    rows = []
    for i in range(100 * max(order, 1)):
        rank = rng.randint(2, 4)
        seed = quantum_cluster.random_cseed(rng, rank, 2)
        ks = [rng.randrange(rank) for _ in range(rng.randint(1, 8))]
        try:
            final, _, _ = quantum_cluster.cvec_sequence(seed, ks)
            ok = quantum_cluster.is_sign_coherent(final)
        except quantum_cluster.IntegrityError:
            ok = False
        rows.append(({"B": seed.B, "sequence": ks}, ok))
    return _first(rows)


def run_check(name: str, order: int, rng_seed: int) -> dict:
    fn, _ = REGISTRY[name]
    out = fn(order, random.Random(f"{rng_seed}:{name}"))
    out["check"] = name
    out["order"] = order
    return out
