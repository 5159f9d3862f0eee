"""HTTP facade over the enumeration, computation, and verification core.

Every operation is a POST with a small JSON body; domain errors map to
400, capacity refusals to 413.  Verification failures are not errors:
the response carries ok=false and the failing rows.  The surface table
at the bottom gives every public operation of the core modules a smoke
row with a frozen expected digest, so `verify all` exercises the whole
API and any drift shows up as a failed row.
"""

import json
from fractions import Fraction

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import bijections, bsum, paths, qpoly, tilings
from .errors import CapacityError, DomainError
from .models import (
    CheckRow,
    ComputeRequest,
    ComputeResponse,
    EnumerateRequest,
    EnumerateResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="dycktilings")


@app.exception_handler(DomainError)
async def _domain_error(request, exc):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(CapacityError)
async def _capacity_error(request, exc):
    return JSONResponse(status_code=413, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_route(req: EnumerateRequest):
    return handle_enumerate(req)


@app.post("/compute", response_model=ComputeResponse)
def compute_route(req: ComputeRequest):
    return handle_compute(req)


@app.post("/verify", response_model=VerifyResponse)
def verify_route(req: VerifyRequest):
    return handle_verify(req)


def _need(value, name):
    if value is None:
        raise DomainError("missing parameter: %s" % name)
    return value


def handle_enumerate(req):
    kind = req.kind
    if kind == "paths":
        n = _need(req.n, "n")
        items = paths.enumerate_dyck(n, max_n=req.max_n or paths.MAX_ENUM_HALF_LENGTH)
        return EnumerateResponse(kind=kind, items=items, count=len(items))
    if kind == "tilings":
        lower = _need(req.lower, "lower")
        upper = _need(req.upper, "upper")
        bound = req.max_n or tilings.MAX_TILING_HALF_LENGTH
        items = []
        for tiles in tilings.enumerate_tilings(lower, upper, max_half_length=bound):
            stats = tilings.tiling_stats(lower, upper, tiles)
            items.append(
                {
                    "lower": lower,
                    "upper": upper,
                    "tiles": [[list(cell) for cell in tile] for tile in tiles],
                    "cells": stats["cells"],
                    "size": stats["size"],
                    "norm": stats["norm"],
                }
            )
        return EnumerateResponse(kind=kind, items=items, count=len(items))
    if kind == "matchings":
        n = _need(req.n, "n")
        bound = req.max_n or bijections.MAX_MATCHING_HALF_LENGTH
        items = [
            [list(pair) for pair in pairs]
            for pairs in bijections.enumerate_matchings(n, max_n=bound)
        ]
        return EnumerateResponse(kind=kind, items=items, count=len(items))
    if kind == "hermite":
        path = _need(req.path, "path")
        bound = req.max_n or bijections.MAX_HISTORY_HALF_LENGTH
        items = [
            {"path": path, "labels": list(labels)}
            for labels in bijections.enumerate_histories(path, max_n=bound)
        ]
        return EnumerateResponse(kind=kind, items=items, count=len(items))
    if kind == "region-paths":
        path = _need(req.path, "path")
        a = _need(req.a, "a")
        b = _need(req.b, "b")
        kwargs = {}
        if req.max_n is not None:
            kwargs = {"max_n": req.max_n, "max_ab": req.max_n}
        items = [
            {"steps": steps, "area_halves": area}
            for steps, area in bsum.enumerate_region_paths(path, a, b, **kwargs)
        ]
        return EnumerateResponse(kind=kind, items=items, count=len(items))
    raise DomainError("unknown enumeration kind %r" % kind)


def handle_compute(req):
    kind = req.kind
    if kind == "bq":
        path = _need(req.path, "path")
        a = _need(req.a, "a")
        b = _need(req.b, "b")
        route = req.route or "closed"
        if route == "brute":
            kwargs = {}
            if req.max_n is not None:
                kwargs = {"max_n": req.max_n, "max_ab": req.max_n}
            value = bsum.bq_brute(path, a, b, **kwargs)
        elif route == "closed":
            value = bsum.bq_closed(path, a, b)
        elif route == "recursive":
            value = bsum.bq_recursive(path, a, b)
        else:
            raise DomainError("unknown bq route %r" % route)
        at_one = qpoly.eval_at_one(value) if req.eval_q1 else None
        return ComputeResponse(kind=kind, value=value.render(), at_one=at_one)
    if kind == "moments":
        n = _need(req.n, "n")
        route = req.route or "path_dp"
        kwargs = {}
        if req.max_n is not None:
            kwargs = {"max_enum": req.max_n, "max_dp": req.max_n}
        value = bsum.moments_joint(n, route=route, **kwargs)
        at_one = qpoly.eval_at_one(value) if req.eval_q1 else None
        return ComputeResponse(kind=kind, value=value.render(), at_one=at_one)
    if kind == "touchard":
        n = _need(req.n, "n")
        bound = req.max_n or bsum.MOMENT_MAX_DP
        if n > bound:
            raise CapacityError("n %d exceeds the bound %d" % (n, bound))
        value = qpoly.touchard_riordan_rhs(n)
        at_one = qpoly.eval_at_one(value) if req.eval_q1 else None
        return ComputeResponse(kind=kind, value=value.render(), at_one=at_one)
    if kind == "matrix":
        n = _need(req.n, "n")
        bound = req.max_n or tilings.MAX_MATRIX_HALF_LENGTH
        result = tilings.invert_and_check(n, max_n=bound)
        value = {
            "paths": list(result["paths"]),
            "matrix": [[entry.render() for entry in row] for row in result["matrix"]],
            "inverse": [[entry.render() for entry in row] for row in result["inverse"]],
            "matches_formula": result["equal"],
            "product_is_identity": result["product_ok"],
            "signed_counts_match": result["signs_ok"],
        }
        at_one = None
        if req.eval_q1:
            at_one = {
                "matrix": [[qpoly.eval_at_one(e) for e in row] for row in result["matrix"]],
                "inverse": [[qpoly.eval_at_one(e) for e in row] for row in result["inverse"]],
            }
        return ComputeResponse(kind=kind, value=value, at_one=at_one)
    raise DomainError("unknown computation kind %r" % kind)


SUITE_ORDER = ("thm1", "thm2", "thm-gen", "mpq-inverse", "bijections", "lemmas", "moments")


def _suite_rows(suite, n):
    if suite == "thm1":
        return bsum.theorem_checks("thm1", n_max=n)
    if suite == "thm2":
        return bsum.theorem_checks("thm2", n_max=n)
    if suite == "thm-gen":
        return bsum.theorem_checks("thm-gen", n_max=n)
    if suite == "mpq-inverse":
        return bsum.mpq_checks(n_max=3 if n is None else n)
    if suite == "bijections":
        return bsum.bijection_checks(n_max=4 if n is None else n)
    if suite == "lemmas":
        return bsum.lemma_checks(bound=n)
    if suite == "moments":
        return bsum.moment_checks(n_max=4 if n is None else n)
    raise DomainError("unknown verify suite %r" % suite)


def handle_verify(req):
    if req.suite == "all":
        rows = []
        for suite in SUITE_ORDER:
            rows.extend(_suite_rows(suite, req.n))
        rows.extend(surface_rows())
    else:
        rows = _suite_rows(req.suite, req.n)
    failed = sum(1 for r in rows if not r["equal"])
    return VerifyResponse(
        suite=req.suite,
        ok=failed == 0,
        total=len(rows),
        failed=failed,
        rows=[CheckRow(**r) for r in rows],
    )


def _digest(value):
    if isinstance(value, (qpoly.QPoly, qpoly.PQPoly)):
        return value.render()
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return repr(value)


# one smoke case per public operation; expected digests are frozen
SURFACE_CASES = (
    ("qint", lambda: qpoly.qint(3), "1 + q + q^2"),
    ("qfact", lambda: qpoly.qfact(3), "1 + 2*q + 2*q^2 + q^3"),
    ("qbinom", lambda: qpoly.qbinom(4, 2), "1 + q + 2*q^2 + q^3 + q^4"),
    ("qmultinom", lambda: qpoly.qmultinom([2, 1]), "1 + q + q^2"),
    ("q_odd_double_fact", lambda: qpoly.q_odd_double_fact(2), "1 + q + q^2"),
    ("pq_int", lambda: qpoly.pq_int(3), "p^2 + p*q + q^2"),
    ("poly_add", lambda: qpoly.qint(2) + qpoly.QPoly.monomial(4), "1 + q + q^2"),
    ("poly_sub", lambda: qpoly.qint(3) - qpoly.qint(2), "q^2"),
    ("poly_mul", lambda: qpoly.qint(2) * qpoly.qint(2), "1 + 2*q + q^2"),
    ("poly_neg", lambda: -qpoly.pq_int(2), "-p - q"),
    ("exact_div", lambda: qpoly.exact_div(qpoly.qfact(3), qpoly.qint(2)), "1 + q + q^2"),
    ("subst_q_power", lambda: qpoly.subst_q_power(qpoly.qint(2), Fraction(1, 2)), "1 + q^(1/2)"),
    (
        "subst_p_q",
        lambda: qpoly.subst_p_q(qpoly.pq_int(2), qpoly.QPoly.from_int(1), qpoly.QPoly.monomial(2)),
        "1 + q",
    ),
    ("eval_at_one", lambda: qpoly.eval_at_one(qpoly.qbinom(4, 2)), "6"),
    ("pq_swap", lambda: qpoly.pq_swap(qpoly.PQPoly.monomial(2, 1)), "p*q^2"),
    ("touchard_riordan_rhs", lambda: qpoly.touchard_riordan_rhs(3), "5 + 6*q + 3*q^2 + q^3"),
    ("chu_vandermonde_sides", lambda: qpoly.chu_vandermonde_sides(1, 1, 1)[0], "1 + q"),
    ("chu_vandermonde_check", lambda: qpoly.chu_vandermonde_check(2, 2, 2), "True"),
    ("render_qpoly", lambda: qpoly.render_qpoly(-qpoly.qint(2)), "-1 - q"),
    ("render_pqpoly", lambda: qpoly.render_pqpoly(qpoly.pq_int(2)), "p + q"),
    ("check_path", lambda: paths.check_path("UUDD"), "UUDD"),
    ("half_length", lambda: paths.half_length("UUDD"), "2"),
    ("enumerate_dyck", lambda: len(paths.enumerate_dyck(3)), "5"),
    (
        "chords",
        lambda: paths.chords("UUDD"),
        "[Chord(up=1, down=4, length=2, height=1), Chord(up=2, down=3, length=1, height=2)]",
    ),
    ("ht_stat", lambda: paths.ht_stat("UUUDUUDUDDDD"), "11"),
    ("height_profile", lambda: paths.height_profile("UUDD"), "(2, 2)"),
    ("diag_profile", lambda: paths.diag_profile("UUDD"), "(0, 1, 2, 1, 0)"),
    ("is_above", lambda: paths.is_above("UUDD", "UDUD"), "True"),
    ("skew_cell_count", lambda: paths.skew_cell_count("UDUD", "UUDD"), "1"),
    ("order_succ", lambda: paths.order_succ("UDUD", "UUDD"), "(True, 1)"),
    ("concat", lambda: paths.concat("UD", "UD"), "UDUD"),
    ("delta", lambda: paths.delta(2), "UUDD"),
    ("delta_multi", lambda: paths.delta_multi([1, 2]), "UDUUDD"),
    ("zigzag", lambda: paths.zigzag(3), "UDUDUD"),
    ("decompose", lambda: paths.decompose("UDUUDD"), "['UD', 'UUDD']"),
    ("inner_path", lambda: paths.inner_path("UUDD"), "UD"),
    ("skew_cells", lambda: tilings.skew_cells("UDUD", "UUDD"), "((0, 1),)"),
    ("validate_tile", lambda: tilings.validate_tile(((0, 1),)), "((0, 1),)"),
    ("tile_length", lambda: tilings.tile_length(((0, 1), (0, 2), (1, 2))), "2"),
    ("tiling_size", lambda: tilings.tiling_size((((0, 1),),)), "1"),
    ("tiling_norm", lambda: tilings.tiling_norm((((0, 1), (0, 2), (1, 2)),)), "1"),
    ("cover_compatible", lambda: tilings.cover_compatible(((0, 1),), ((1, 2),)), "True"),
    (
        "validate_tiling",
        lambda: tilings.validate_tiling("UDUD", "UUDD", (((0, 1),),)),
        "[((0, 1),)]",
    ),
    ("enumerate_tilings", lambda: len(tilings.enumerate_tilings("UDUD", "UUDD")), "1"),
    (
        "tiling_stats",
        lambda: tilings.tiling_stats("UDUD", "UUDD", (((0, 1),),)),
        '{"cells": 1, "norm": 0, "size": 1}',
    ),
    (
        "truncate_tiling",
        lambda: tilings.truncate_tiling("UDUDUD", (((0, 1), (0, 2), (1, 2)),)),
        "((1, 2, 4),)",
    ),
    (
        "untruncate_tiling",
        lambda: tilings.untruncate_tiling("UDUDUD", "UUUDDD", ((1, 2, 4),)),
        "(((0, 1), (0, 2), (1, 2)),)",
    ),
    (
        "truncate_roundtrip",
        lambda: tilings.truncate_roundtrip("UDUD", "UUDD", (((0, 1),),)),
        "((), (((0, 1),),))",
    ),
    ("build_matrix_M", lambda: tilings.build_matrix_M(2)[1][1][0], "p*q"),
    ("formula_inverse_matrix", lambda: tilings.formula_inverse_matrix(2)[1][1][0], "-p*q"),
    (
        "invert_unitriangular",
        lambda: tilings.invert_unitriangular(tilings.build_matrix_M(2)[1])[1][0],
        "-p*q",
    ),
    (
        "matrix_product",
        lambda: tilings.matrix_product(
            tilings.build_matrix_M(2)[1],
            tilings.invert_unitriangular(tilings.build_matrix_M(2)[1]),
        )[1][0],
        "0",
    ),
    ("invert_and_check", lambda: tilings.invert_and_check(2)["equal"], "True"),
    ("check_matching", lambda: bijections.check_matching(((1, 2),)), "((1, 2),)"),
    ("enumerate_matchings", lambda: len(bijections.enumerate_matchings(3)), "15"),
    (
        "cross_nest",
        lambda: bijections.cross_nest(((1, 5), (2, 3), (4, 7), (6, 8))),
        "(2, 1)",
    ),
    (
        "zeta",
        lambda: bijections.zeta(((1, 5), (2, 3), (4, 7), (6, 8))),
        "('UUDUDUDD', (0, 1, 1, 0))",
    ),
    (
        "zeta_inv",
        lambda: bijections.zeta_inv("UUDUDUDD", (0, 1, 1, 0)),
        "((1, 5), (2, 3), (4, 7), (6, 8))",
    ),
    ("down_step_heights", lambda: bijections.down_step_heights("UUDD"), "(2, 1)"),
    ("enumerate_histories", lambda: bijections.enumerate_histories("UUDD"), "[(0, 0), (1, 0)]"),
    ("history_weight_sum", lambda: bijections.history_weight_sum("UUDD"), "1 + q"),
    ("psi", lambda: bijections.psi("UDUD", "UUDD", (((0, 1),),)), "(1, 0)"),
    ("first_addable_cell", lambda: bijections.first_addable_cell("UUDD"), "(0, 1)"),
    ("lower_peak", lambda: bijections.lower_peak("UUDD", (0, 1)), "UDUD"),
    (
        "collapse_slice",
        lambda: bijections.collapse_slice("UUDD", "UUDD", (), (0, 1)),
        "('UD', 'UD', ())",
    ),
    (
        "expand_slice",
        lambda: bijections.expand_slice("UD", "UD", (), (0, 1)),
        "('UUDD', 'UUDD', ())",
    ),
    ("psi_inv", lambda: bijections.psi_inv("UUDD", (1, 0)), "('UDUD', (((0, 1),),))"),
    (
        "enumerate_region_paths",
        lambda: bsum.enumerate_region_paths("UD", 1, 1),
        "[('UR', 4), ('RU', 2)]",
    ),
    ("region_upper_profile", lambda: bsum.region_upper_profile(1, "UR"), "(2, 3, 2)"),
    (
        "enumerate_truncated",
        lambda: len(bsum.enumerate_truncated(paths.diag_profile("UD"), (2, 3, 2))),
        "2",
    ),
    ("truncated_norm", lambda: bsum.truncated_norm(((1, 0, 2),)), "1"),
    ("bq_brute", lambda: bsum.bq_brute("UD", 1, 1), "2*q + q^2"),
    ("bq_delta", lambda: bsum.bq_delta(1, 1, 1), "2*q + q^2"),
    ("chord_factor", lambda: bsum.chord_factor("UUDD"), "1"),
    ("bq_closed", lambda: bsum.bq_closed("UDUD", 0, 0), "1 + q"),
    ("bq_recursive", lambda: bsum.bq_recursive("UDUD", 1, 0), "q^(1/2) + 2*q^(3/2) + q^(5/2)"),
    ("moments_joint", lambda: bsum.moments_joint(2), "1 + p + q"),
    (
        "hermite_recurrence",
        lambda: [c.render() for c in bsum.hermite_recurrence(2)[2]],
        "['-1', '0', '1']",
    ),
    (
        "apply_moment_functional",
        lambda: bsum.apply_moment_functional(
            bsum.hermite_recurrence(2)[2],
            [bsum.moments_joint(0), bsum.moments_joint(1)],
        ),
        "0",
    ),
    (
        "unrestricted_truncated_sets",
        lambda: len(bsum.unrestricted_truncated_sets(paths.diag_profile("UD"), (2, 3, 2))),
        "2",
    ),
    (
        "layered_half_cell_sets",
        lambda: len(
            bsum.layered_half_cell_sets(
                paths.diag_profile("UD"),
                bsum.enumerate_truncated(paths.diag_profile("UD"), (2, 3, 2)),
            )
        ),
        "2",
    ),
    ("prop_identity_check", lambda: bsum.prop_identity_check(1, 1, 1, 1), "True"),
    ("special_moment_checks", lambda: bsum.special_moment_checks(3), "True"),
    (
        "enumerate-paths",
        lambda: handle_enumerate(EnumerateRequest(kind="paths", n=3)).count,
        "5",
    ),
    (
        "enumerate-tilings",
        lambda: handle_enumerate(
            EnumerateRequest(kind="tilings", lower="UDUD", upper="UUDD")
        ).count,
        "1",
    ),
    (
        "enumerate-matchings",
        lambda: handle_enumerate(EnumerateRequest(kind="matchings", n=3)).count,
        "15",
    ),
    (
        "enumerate-hermite",
        lambda: handle_enumerate(EnumerateRequest(kind="hermite", path="UUDD")).count,
        "2",
    ),
    (
        "enumerate-region-paths",
        lambda: handle_enumerate(
            EnumerateRequest(kind="region-paths", path="UD", a=1, b=1)
        ).count,
        "2",
    ),
    (
        "compute-bq",
        lambda: handle_compute(ComputeRequest(kind="bq", path="UDUD", a=0, b=0)).value,
        "1 + q",
    ),
    (
        "compute-moments",
        lambda: handle_compute(ComputeRequest(kind="moments", n=2)).value,
        "1 + p + q",
    ),
    (
        "compute-touchard",
        lambda: handle_compute(ComputeRequest(kind="touchard", n=3)).value,
        "5 + 6*q + 3*q^2 + q^3",
    ),
    (
        "compute-matrix",
        lambda: handle_compute(ComputeRequest(kind="matrix", n=2)).value["matrix"][1][0],
        "p*q",
    ),
)


def surface_rows():
    """One check row per public operation, against frozen digests."""
    rows = []
    for name, thunk, expected in SURFACE_CASES:
        try:
            got = _digest(thunk())
        except Exception as exc:  # a broken op must fail its row, not the report
            got = "raised %s: %s" % (type(exc).__name__, exc)
        rows.append(
            {
                "check": "surface",
                "parameters": {"op": name},
                "lhs": got,
                "rhs": expected,
                "equal": got == expected,
            }
        )
    return rows
