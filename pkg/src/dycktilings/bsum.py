"""Boundary-weighted region sums and the verification suites.

The central quantity is bq(lam, a, b): lam is a Dyck path from (0,0) to
(n,n); the upper boundary mu runs from (-a,a) to (n-b,n+b), drawn in
diagonal coordinates as a +-1 walk from height 2a to height 2b staying
weakly above lam.  For each mu the region between the paths is measured
in half-cells, each truncated tiling T of the region contributes
q^(area/2 - norm(T)), and bq sums over both.  Three independent routes
compute the same polynomial: direct enumeration (bq_brute), a pyramid
closed form scaled by a chord factorial ratio (bq_closed), and a
structural recursion (bq_recursive).

The bottom half of the module builds uniform check rows
{check, parameters, lhs, rhs, equal} consumed by the verify suites.
"""

from math import prod

from .bijections import (
    cross_nest,
    enumerate_histories,
    enumerate_matchings,
    expand_slice,
    collapse_slice,
    first_addable_cell,
    history_weight_sum,
    psi,
    psi_inv,
    zeta,
    zeta_inv,
)
from .errors import CapacityError, DomainError
from .paths import (
    check_path,
    chords,
    concat,
    decompose,
    delta,
    delta_multi,
    diag_profile,
    enumerate_dyck,
    half_length,
    ht_stat,
    is_above,
    skew_cell_count,
)
from .qpoly import (
    PQPoly,
    QPoly,
    chu_vandermonde_sides,
    exact_div,
    pq_int,
    pq_swap,
    q_odd_double_fact,
    qbinom,
    qfact,
    qint,
    qmultinom,
    subst_p_q,
    touchard_riordan_rhs,
)
from .tilings import (
    enumerate_tilings,
    tiling_norm,
    truncate_roundtrip,
    invert_and_check,
)

REGION_MAX_HALF_LENGTH = 4
REGION_MAX_OFFSET = 3
MOMENT_MAX_ENUM = 5
MOMENT_MAX_DP = 30
HERMITE_REC_MAX = 10


# ---------------------------------------------------------------------------
# regions


def enumerate_region_paths(lam, a, b, max_n=REGION_MAX_HALF_LENGTH, max_ab=REGION_MAX_OFFSET):
    """Upper boundary walks over lam with end offsets a and b.

    Steps are U (+1) and R (-1) in diagonal coordinates; a walk starts
    at height 2a, ends at height 2b after 2n steps, and never goes below
    lam.  Returns (steps, area_halves) pairs in lexicographic order with
    U before R; area_halves is the region area in half-cells.
    """
    if a < 0 or b < 0:
        raise DomainError("offsets must be nonnegative")
    n = half_length(lam)
    if n > max_n:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_n))
    if max(a, b) > max_ab:
        raise CapacityError("offset %d exceeds the bound %d" % (max(a, b), max_ab))
    v_lam = diag_profile(lam)
    total = 2 * n
    out = []

    def rec(steps, v, area):
        u = len(steps)
        if u == total:
            if v == 2 * b:
                out.append(("".join(steps), area))
            return
        if abs(v - 2 * b) > total - u:
            return
        for ch, dv in (("U", 1), ("R", -1)):
            nv = v + dv
            if nv < v_lam[u + 1]:
                continue
            # both height differences are even, so the strip area is exact
            strip = (v - v_lam[u] + nv - v_lam[u + 1]) // 2
            steps.append(ch)
            rec(steps, nv, area + strip)
            steps.pop()

    if abs(2 * a - 2 * b) <= total:
        rec([], 2 * a, 0)
    return out


def region_upper_profile(a, steps):
    """Height sequence of an upper boundary walk starting at 2a."""
    v = [2 * a]
    for ch in steps:
        if ch == "U":
            v.append(v[-1] + 1)
        elif ch == "R":
            v.append(v[-1] - 1)
        else:
            raise DomainError("walk steps must be U or R")
    return tuple(v)


# ---------------------------------------------------------------------------
# truncated tilings in layered form


def _layer_segments(v_lam, v_mu, layer):
    # a segment [u1, u2] carries a spine at v_lam + 2*layer - 1; the
    # lower path must return to its minimum at both ends and the upper
    # boundary must leave 2*layer of headroom everywhere on the segment
    total = len(v_lam) - 1
    out = []
    for u1 in range(total - 1):
        for u2 in range(u1 + 2, total + 1, 2):
            if v_lam[u2] != v_lam[u1]:
                continue
            span = range(u1, u2 + 1)
            if any(v_lam[u] < v_lam[u1] for u in span):
                continue
            if any(v_mu[u] < v_lam[u] + 2 * layer for u in span):
                continue
            out.append((u1, u2))
    return out


def _gap_subsets(segments):
    # subsets of non-touching segments, each listed by increasing start
    segments = sorted(segments)
    out = []

    def rec(idx, last_end, chosen):
        if idx == len(segments):
            out.append(tuple(chosen))
            return
        rec(idx + 1, last_end, chosen)
        u1, u2 = segments[idx]
        if last_end is None or u1 > last_end:
            chosen.append(segments[idx])
            rec(idx + 1, u2, chosen)
            chosen.pop()

    rec(0, None, [])
    return out


def enumerate_truncated(v_lam, v_mu):
    """Truncated tilings of the region, as sorted (layer, u1, u2) triples.

    Layer 1 segments sit directly on the lower path; a higher layer
    segment must fit inside a chosen segment one layer below, and
    segments on the same layer may not touch.
    """
    out = []

    def ascend(layer, support, acc):
        segs = _layer_segments(v_lam, v_mu, layer)
        if support is not None:
            segs = [s for s in segs if any(p1 <= s[0] and s[1] <= p2 for p1, p2 in support)]
        for subset in _gap_subsets(segs):
            if subset:
                ascend(layer + 1, subset, acc + [(layer,) + s for s in subset])
            else:
                out.append(tuple(acc))

    ascend(1, None, [])
    return out


def truncated_norm(truncated):
    return sum(u2 - u1 for _, u1, u2 in truncated) // 2


# ---------------------------------------------------------------------------
# the three routes


def bq_brute(lam, a, b, max_n=REGION_MAX_HALF_LENGTH, max_ab=REGION_MAX_OFFSET):
    """Region sum by full enumeration of boundaries and tilings."""
    v_lam = diag_profile(lam)
    out = QPoly()
    for steps, area_halves in enumerate_region_paths(lam, a, b, max_n=max_n, max_ab=max_ab):
        v_mu = region_upper_profile(a, steps)
        for trunc in enumerate_truncated(v_lam, v_mu):
            norm2 = sum(u2 - u1 for _, u1, u2 in trunc)
            out = out + QPoly.monomial(area_halves - norm2)
    return out


def bq_delta(n, a, b):
    """Closed form of the region sum over the pyramid path of size n."""
    if n < 0 or a < 0 or b < 0:
        raise DomainError("bq_delta needs nonnegative arguments")
    out = QPoly()
    for i in range(min(a, b) + 1):
        half = a * a + b * b + 2 * (n - a - b) * i + 2 * i * i
        out = out + QPoly.monomial(half) * qbinom(n + i, i) * qbinom(n, a - i) * qbinom(n, b - i)
    return out


def chord_factor(lam):
    """[n]! divided by the product of [length] over the chords of lam."""
    n = half_length(lam)
    denom = QPoly.from_int(1)
    for c in chords(lam):
        denom = denom * qint(c.length)
    return exact_div(qfact(n), denom)


def bq_closed(lam, a, b):
    """Region sum via the pyramid closed form and the chord factor."""
    return chord_factor(lam) * bq_delta(half_length(lam), a, b)


def bq_recursive(lam, a, b):
    """Region sum by structural recursion on the lower path.

    Decomposable paths split at the first return to the diagonal,
    summing over the shared boundary height.  An indecomposable path
    strips its outer corner, trading each unit of offset for an explicit
    power of q; the two half-unit corrections come from the corner cell
    halves at the walls.
    """
    check_path(lam)
    if a < 0 or b < 0:
        raise DomainError("offsets must be nonnegative")
    return _bq_rec(lam, a, b, {})


def _bq_rec(lam, a, b, memo):
    key = (lam, a, b)
    if key in memo:
        return memo[key]
    parts = decompose(lam)
    if not parts:
        out = QPoly.from_int(1) if a == b else QPoly()
    elif len(parts) > 1:
        first = parts[0]
        rest = "".join(parts[1:])
        n1 = half_length(first)
        n2 = half_length(rest)
        out = QPoly()
        for i in range(max(0, a - n1, b - n2), min(a + n1, b + n2) + 1):
            out = out + _bq_rec(first, a, i, memo) * _bq_rec(rest, i, b, memo)
    else:
        n = half_length(lam)
        inner = lam[1:-1]
        out = QPoly()
        for i in range(min(a, b) + 1):
            for r in (0, 1):
                for s in (0, 1):
                    a2 = a - i - r
                    b2 = b - i - s
                    if a2 < 0 or b2 < 0:
                        continue
                    half = 2 * (n - 2) * i + 2 * a + 2 * b - r - s
                    out = out + QPoly.monomial(half) * _bq_rec(inner, a2, b2, memo)
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# moments of the crossing/nesting distribution


def moments_joint(n, route="path_dp", max_enum=MOMENT_MAX_ENUM, max_dp=MOMENT_MAX_DP):
    """Joint (nesting, crossing) distribution over matchings of 2n points.

    route "matchings" counts pairs directly, route "tilings" sums
    p^(HT - tiles) q^(tiles) over all tilings with any upper path of
    half-length n, and route "path_dp" runs the weighted-path recursion
    where a down step from height h carries weight [h]_{p,q}.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if route == "matchings":
        if n > max_enum:
            raise CapacityError("n %d exceeds the bound %d" % (n, max_enum))
        out = PQPoly()
        for pairs in enumerate_matchings(n, max_n=max(6, n)):
            cro, nest = cross_nest(pairs)
            out = out + PQPoly.monomial(nest, cro)
        return out
    if route == "tilings":
        if n > max_enum:
            raise CapacityError("n %d exceeds the bound %d" % (n, max_enum))
        out = PQPoly()
        paths = enumerate_dyck(n, max_n=max(8, n))
        for upper in paths:
            ht = ht_stat(upper)
            for lower in paths:
                if not is_above(upper, lower):
                    continue
                for tiles in enumerate_tilings(lower, upper, max_half_length=max(6, n)):
                    out = out + PQPoly.monomial(ht - len(tiles), len(tiles))
        return out
    if route == "path_dp":
        if n > max_dp:
            raise CapacityError("n %d exceeds the bound %d" % (n, max_dp))
        states = {0: PQPoly.from_int(1)}
        for step in range(2 * n):
            new = {}
            for h, w in states.items():
                if h + 1 <= 2 * n - step - 1:
                    new[h + 1] = new.get(h + 1, PQPoly()) + w
                if h > 0:
                    new[h - 1] = new.get(h - 1, PQPoly()) + w * pq_int(h)
            states = new
        return states.get(0, PQPoly())
    raise DomainError("unknown route %r" % route)


def hermite_recurrence(n, max_n=HERMITE_REC_MAX):
    """Coefficient lists of H_0..H_n with H_{m+1} = x H_m - [m]_{p,q} H_{m-1}.

    Entry m is the list of PQPoly coefficients of H_m by power of x.
    These are orthogonal for the moment functional whose even moments
    are the joint distributions above.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > max_n:
        raise CapacityError("n %d exceeds the bound %d" % (n, max_n))
    polys = [[PQPoly.from_int(1)]]
    if n >= 1:
        polys.append([PQPoly(), PQPoly.from_int(1)])
    for m in range(1, n):
        cur = polys[m]
        prev = polys[m - 1]
        nxt = [PQPoly() for _ in range(m + 2)]
        for k, c in enumerate(cur):
            nxt[k + 1] = nxt[k + 1] + c
        w = pq_int(m)
        for k, c in enumerate(prev):
            nxt[k] = nxt[k] - w * c
        polys.append(nxt)
    return polys


def apply_moment_functional(coeffs, moments):
    """L(sum c_k x^k) where L(x^(2j)) = moments[j] and odd powers vanish."""
    out = PQPoly()
    for k, c in enumerate(coeffs):
        if k % 2 == 0 and c:
            out = out + c * moments[k // 2]
    return out


# ---------------------------------------------------------------------------
# unrestricted truncated-tile search (independent route for one lemma)


def _half_cell_in_region(key, v_lam, v_mu):
    sigma, d, kind = key
    if sigma < 0 or sigma >= len(v_lam) - 1:
        return False
    if kind == "L":
        return (
            v_lam[sigma] <= d <= v_mu[sigma]
            and v_lam[sigma + 1] <= d - 1
            and d + 1 <= v_mu[sigma + 1]
        )
    return (
        v_lam[sigma] <= d - 1
        and d + 1 <= v_mu[sigma]
        and v_lam[sigma + 1] <= d <= v_mu[sigma + 1]
    )


def _spine_half_cells(u1, values):
    # strip u holds the wide half of the cell behind the spine and the
    # narrow half of the cell ahead of it
    keys = set()
    for idx in range(len(values) - 1):
        sigma = u1 + idx
        keys.add((sigma, values[idx], "U"))
        keys.add((sigma, values[idx + 1], "L"))
    return frozenset(keys)


def _spine_cut_edges(u1, values):
    # anti-diagonal borders: the wide side of each half-cell
    edges = set()
    for idx in range(len(values) - 1):
        sigma = u1 + idx
        edges.add((sigma, values[idx]))
        edges.add((sigma + 1, values[idx + 1]))
    return frozenset(edges)


def _unrestricted_spines(v_lam, v_mu):
    # every positive-length tile shape anywhere in the region: a zigzag
    # that starts and ends at its minimum, at odd offset from the lattice
    total = len(v_lam) - 1
    spines = []
    for u1 in range(total - 1):
        for v0 in range(v_lam[u1] + 1, v_mu[u1] + 1, 2):
            stack = [v0]

            def rec():
                u = u1 + len(stack) - 1
                if len(stack) > 1 and stack[-1] == v0:
                    spines.append((u1, tuple(stack)))
                if u == total:
                    return
                for dv in (1, -1):
                    nv = stack[-1] + dv
                    if nv < v0:
                        continue
                    stack.append(nv)
                    rec()
                    stack.pop()

            rec()
    out = []
    for u1, values in spines:
        cells = _spine_half_cells(u1, values)
        if all(_half_cell_in_region(k, v_lam, v_mu) for k in cells):
            out.append((u1, values))
    return out


def unrestricted_truncated_sets(v_lam, v_mu):
    """Truncated tilings found by raw geometric search.

    Tiles are any in-region spines; a subset qualifies when half-cells
    are disjoint, no two tiles share an anti-diagonal border, and each
    tile whose southeast translate meets the region has that whole
    translate inside a single other tile.  Returns half-cell set
    families, for comparison against the layered enumeration.
    """
    spines = _unrestricted_spines(v_lam, v_mu)
    data = [
        (_spine_half_cells(u1, vs), _spine_cut_edges(u1, vs)) for u1, vs in spines
    ]
    results = set()

    def supported(chosen):
        sets = [data[i][0] for i in chosen]
        for pos, cells in enumerate(sets):
            translate = {(s, d - 2, k) for s, d, k in cells}
            if any(_half_cell_in_region(key, v_lam, v_mu) for key in translate):
                if not any(
                    translate <= other for j, other in enumerate(sets) if j != pos
                ):
                    return False
        return True

    def rec(idx, used_cells, used_edges, chosen):
        if idx == len(data):
            if supported(chosen):
                results.add(frozenset(data[i][0] for i in chosen))
            return
        rec(idx + 1, used_cells, used_edges, chosen)
        cells, edges = data[idx]
        if used_cells.isdisjoint(cells) and used_edges.isdisjoint(edges):
            chosen.append(idx)
            rec(idx + 1, used_cells | cells, used_edges | edges, chosen)
            chosen.pop()

    rec(0, frozenset(), frozenset(), [])
    return results


def layered_half_cell_sets(v_lam, truncated_list):
    """Map layered tilings to half-cell set families for comparison."""
    out = set()
    for trunc in truncated_list:
        family = []
        for layer, u1, u2 in trunc:
            values = tuple(v_lam[u] + 2 * layer - 1 for u in range(u1, u2 + 1))
            family.append(_spine_half_cells(u1, values))
        out.add(frozenset(family))
    return out


# ---------------------------------------------------------------------------
# check rows


def _render(value):
    if isinstance(value, (QPoly, PQPoly)):
        return value.render()
    return str(value)


def _row(check, parameters, lhs, rhs, equal=None):
    lhs_s = _render(lhs)
    rhs_s = _render(rhs)
    if equal is None:
        equal = lhs_s == rhs_s
    return {
        "check": check,
        "parameters": parameters,
        "lhs": lhs_s,
        "rhs": rhs_s,
        "equal": bool(equal),
    }


def _double_factorial_odd(n):
    return prod(range(1, 2 * n, 2))


def theorem_checks(kind, n_max=None):
    """Rows for the three headline identities.

    thm1: for every lower path, the tiling sum in either weighting
    equals [n]! over the product of chord lengths.
    thm2: for every upper path, the tiling sum weighted by tile count
    equals the product of chord heights, which also counts histories.
    thm-gen: brute, closed, and recursive region sums agree.
    """
    rows = []
    if kind == "thm1":
        bound = 4 if n_max is None else n_max
        for n in range(bound + 1):
            paths = enumerate_dyck(n, max_n=max(8, n))
            for lam in paths:
                by_cells = QPoly()
                by_norm = QPoly()
                for mu in paths:
                    if not is_above(mu, lam):
                        continue
                    cells = skew_cell_count(lam, mu)
                    for tiles in enumerate_tilings(lam, mu, max_half_length=max(6, n)):
                        by_cells = by_cells + QPoly.monomial(cells + len(tiles))
                        by_norm = by_norm + QPoly.monomial(2 * (cells - tiling_norm(tiles)))
                rows.append(_row("thm1-weightings-agree", {"n": n, "lower": lam}, by_cells, by_norm))
                rows.append(_row("thm1-chord-factorial", {"n": n, "lower": lam}, by_cells, chord_factor(lam)))
        return rows
    if kind == "thm2":
        bound = 4 if n_max is None else n_max
        for n in range(bound + 1):
            paths = enumerate_dyck(n, max_n=max(8, n))
            for mu in paths:
                total = QPoly()
                for lam in paths:
                    if not is_above(mu, lam):
                        continue
                    for tiles in enumerate_tilings(lam, mu, max_half_length=max(6, n)):
                        total = total + QPoly.monomial(2 * len(tiles))
                product = QPoly.from_int(1)
                for c in chords(mu):
                    product = product * qint(c.height)
                rows.append(_row("thm2-height-product", {"n": n, "upper": mu}, total, product))
                rows.append(
                    _row(
                        "thm2-history-sum",
                        {"n": n, "upper": mu},
                        history_weight_sum(mu, max_n=max(6, n)),
                        product,
                    )
                )
        return rows
    if kind == "thm-gen":
        bound = 3 if n_max is None else n_max
        ab_max = 2
        for n in range(bound + 1):
            for lam in enumerate_dyck(n, max_n=max(8, n)):
                for a in range(ab_max + 1):
                    for b in range(ab_max + 1):
                        brute = bq_brute(lam, a, b)
                        closed = bq_closed(lam, a, b)
                        rec = bq_recursive(lam, a, b)
                        params = {"lower": lam, "a": a, "b": b}
                        rows.append(_row("bq-brute-vs-closed", params, brute, closed))
                        rows.append(_row("bq-closed-vs-recursive", params, closed, rec))
        return rows
    raise DomainError("unknown theorem check kind %r" % kind)


LEMMA_KINDS = (
    "chu-vandermonde",
    "split",
    "tile",
    "area",
    "formula",
    "induct",
    "two-peak",
    "layer",
    "identity",
)


def lemma_checks(kind=None, bound=None):
    """Rows for the supporting identities; kind None runs all of them."""
    if kind is None:
        rows = []
        for k in LEMMA_KINDS:
            rows.extend(lemma_checks(k, bound=bound))
        return rows
    if kind == "chu-vandermonde":
        top = 6 if bound is None else bound
        rows = []
        for m in range(top + 1):
            for n in range(top + 1):
                for k in range(top + 1):
                    lhs, rhs = chu_vandermonde_sides(m, n, k)
                    rows.append(_row("chu-vandermonde", {"m": m, "n": n, "k": k}, lhs, rhs))
        return rows
    if kind == "split":
        rows = []
        pieces = [("UD", "UD"), ("UD", "UUDD"), ("UUDD", "UD"), ("UUDD", "UUDD"), ("UDUD", "UD")]
        for lam1, lam2 in pieces:
            n1 = half_length(lam1)
            n2 = half_length(lam2)
            for a in range(3):
                for b in range(3):
                    lhs = bq_brute(concat(lam1, lam2), a, b)
                    rhs = QPoly()
                    for i in range(max(0, a - n1, b - n2), min(a + n1, b + n2) + 1):
                        rhs = rhs + bq_brute(lam1, a, i, max_ab=6) * bq_brute(lam2, i, b, max_ab=6)
                    params = {"first": lam1, "second": lam2, "a": a, "b": b}
                    rows.append(_row("split-at-return", params, lhs, rhs))
        return rows
    if kind == "tile":
        rows = []
        for n in range(1, 4):
            lam = delta(n)
            v_lam = diag_profile(lam)
            for a in range(4):
                for b in range(4):
                    ok = True
                    agg_lhs = QPoly()
                    agg_rhs = QPoly()
                    walks = enumerate_region_paths(lam, a, b)
                    for steps, _ in walks:
                        v_mu = region_upper_profile(a, steps)
                        t = (v_mu[n] - n) // 2
                        per = QPoly()
                        for trunc in enumerate_truncated(v_lam, v_mu):
                            per = per + QPoly.monomial(2 * truncated_norm(trunc))
                        want = qbinom(n + t, n)
                        if per != want:
                            ok = False
                        agg_lhs = agg_lhs + per
                        agg_rhs = agg_rhs + want
                    params = {"n": n, "a": a, "b": b, "walks": len(walks)}
                    rows.append(_row("pyramid-tiling-binomial", params, agg_lhs, agg_rhs, equal=ok))
        return rows
    if kind == "area":
        rows = []
        vectors = []
        for k in range(1, 4):
            def extend(acc):
                if len(acc) == k:
                    vectors.append(tuple(acc))
                    return
                for m in (1, 2):
                    extend(acc + [m])
            extend([])
        for ks in vectors:
            lam = delta_multi(ks)
            n = sum(ks)
            v_lam = diag_profile(lam)
            peaks = []
            run = 0
            for m in ks:
                peaks.append(2 * run + m)
                run += m
            buckets = {}
            for steps, area_halves in enumerate_region_paths(lam, 0, 0, max_n=max(6, n)):
                v_mu = region_upper_profile(0, steps)
                tvec = tuple((v_mu[u] - v_lam[u]) // 2 for u in peaks)
                buckets.setdefault(tvec, QPoly())
                buckets[tvec] = buckets[tvec] + QPoly.monomial(area_halves)
            for tvec in sorted(buckets):
                rhs = QPoly.from_int(1)
                for i in range(len(ks) - 1):
                    half = (
                        2 * ks[i] * tvec[i]
                        + 2 * ks[i + 1] * tvec[i + 1]
                        + (tvec[i] - tvec[i + 1]) ** 2
                    )
                    rhs = rhs * QPoly.monomial(half) * qbinom(
                        ks[i] + ks[i + 1], ks[i] + tvec[i] - tvec[i + 1]
                    )
                params = {"sizes": list(ks), "t": list(tvec)}
                rows.append(_row("pyramid-area-buckets", params, buckets[tvec], rhs))
        return rows
    if kind == "formula":
        rows = []
        vectors = []
        for k in range(1, 4):
            def extend(acc):
                if len(acc) == k:
                    vectors.append(tuple(acc))
                    return
                for m in (1, 2, 3):
                    extend(acc + [m])
            extend([])
        for ks in vectors:
            k = len(ks)
            lhs = QPoly()

            def sweep(tvec):
                nonlocal lhs
                if len(tvec) == k:
                    if tvec[-1] != 0:
                        return
                    term = QPoly.from_int(1)
                    for i in range(k - 1):
                        half = 2 * tvec[i + 1] * (ks[i + 1] - tvec[i] + tvec[i + 1])
                        term = (
                            term
                            * QPoly.monomial(half)
                            * qbinom(ks[i] + tvec[i], ks[i])
                            * qbinom(ks[i] + ks[i + 1], ks[i] + tvec[i] - tvec[i + 1])
                        )
                    lhs = lhs + term
                    return
                if len(tvec) == k - 1:
                    sweep(tvec + [0])
                    return
                for t in range(ks[len(tvec) - 1] + tvec[-1] + 1):
                    sweep(tvec + [t])

            sweep([0])
            rows.append(_row("telescoped-multinomial", {"sizes": list(ks)}, lhs, qmultinom(ks)))
        return rows
    if kind == "induct":
        rows = []
        for a in (1, 2):
            for lam in ("UD", "UUDD", "UDUD"):
                for b in range(3):
                    lhs = bq_brute(concat(delta(a), lam), 0, b)
                    rhs = QPoly()
                    for i in range(a + 1):
                        rhs = rhs + QPoly.monomial(i * i) * qbinom(a, i) * bq_brute(lam, i, b)
                    params = {"pyramid": a, "rest": lam, "b": b}
                    rows.append(_row("pyramid-prefix-recursion", params, lhs, rhs))
        return rows
    if kind == "two-peak":
        rows = []
        for n1, n2 in ((1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)):
            for a in range(3):
                for b in range(3):
                    lhs = bq_brute(concat(delta(n1), delta(n2)), a, b)
                    rhs = qbinom(n1 + n2, n1) * bq_delta(n1 + n2, a, b)
                    params = {"n1": n1, "n2": n2, "a": a, "b": b}
                    rows.append(_row("two-pyramid-merge", params, lhs, rhs))
        return rows
    if kind == "layer":
        rows = []
        cases = [
            ("UD", 0, 0),
            ("UD", 1, 0),
            ("UD", 1, 1),
            ("UUDD", 0, 0),
            ("UUDD", 1, 0),
            ("UUDD", 1, 1),
            ("UDUD", 0, 0),
            ("UDUD", 1, 0),
            ("UDUD", 1, 1),
        ]
        for lam, a, b in cases:
            v_lam = diag_profile(lam)
            ok = True
            layered_total = 0
            search_total = 0
            for steps, _ in enumerate_region_paths(lam, a, b):
                v_mu = region_upper_profile(a, steps)
                layered = layered_half_cell_sets(v_lam, enumerate_truncated(v_lam, v_mu))
                searched = unrestricted_truncated_sets(v_lam, v_mu)
                if layered != searched:
                    ok = False
                layered_total += len(layered)
                search_total += len(searched)
            params = {"lower": lam, "a": a, "b": b}
            rows.append(_row("layered-vs-search", params, layered_total, search_total, equal=ok))
        return rows
    if kind == "identity":
        rows = []
        top = 3 if bound is None else bound
        for n1 in range(top + 1):
            for n2 in range(top + 1):
                for a in range(top + 1):
                    for b in range(top + 1):
                        lhs, rhs = _binomial_identity_sides(n1, n2, a, b)
                        params = {"n1": n1, "n2": n2, "a": a, "b": b}
                        rows.append(_row("double-sum-identity", params, lhs, rhs))
                        if 1 <= n1 and 1 <= n2 and n1 + n2 <= 4 and a <= 2 and b <= 2:
                            brute = bq_brute(concat(delta(n1), delta(n2)), a, b)
                            shifted = QPoly.monomial(a * a + b * b) * lhs
                            rows.append(
                                _row("double-sum-matches-region", params, shifted, brute)
                            )
        return rows
    raise DomainError("unknown lemma check kind %r" % kind)


def prop_identity_check(n1, n2, a, b):
    """True when the double-sum identity holds at these parameters."""
    lhs, rhs = _binomial_identity_sides(n1, n2, a, b)
    return lhs == rhs


def special_moment_checks(n):
    """True when the joint distribution specializes correctly at order n.

    Setting p to 1 must give the crossing distribution, and the
    substitution (p, q) -> (q, q^2) must give the odd double factorial.
    """
    dn = moments_joint(n, route="path_dp")
    crossings = subst_p_q(dn, QPoly.from_int(1), QPoly.monomial(2))
    weighted = subst_p_q(dn, QPoly.monomial(2), QPoly.monomial(4))
    return crossings == touchard_riordan_rhs(n) and weighted == q_odd_double_fact(n)


def _binomial_identity_sides(n1, n2, a, b):
    n = n1 + n2
    lhs = QPoly()
    for i in range(max(0, a - n1), a + 1):
        for j in range(max(0, b - n2), b + 1):
            half = 2 * ((n1 - a) * i + (n2 - b) * j - i * j + i * i + j * j)
            term = (
                QPoly.monomial(half)
                * qbinom(n1, a - i)
                * qbinom(n2, b - j)
                * qbinom(n1 + n2, n1 + i - j)
                * qbinom(n1 + i, n1)
                * qbinom(n2 + j, n2)
            )
            lhs = lhs + term
    rhs_sum = QPoly()
    for i in range(min(a, b) + 1):
        rhs_sum = rhs_sum + (
            QPoly.monomial(2 * ((n - a - b) * i + i * i))
            * qbinom(n + i, i)
            * qbinom(n, a - i)
            * qbinom(n, b - i)
        )
    return lhs, qbinom(n, n1) * rhs_sum


def bijection_checks(n_max=4):
    """Round-trip and counting rows for the two bijections."""
    rows = []
    for n in range(n_max + 1):
        matchings = enumerate_matchings(n, max_n=max(6, n))
        failures = 0
        histories_seen = set()
        for pairs in matchings:
            shape, labels = zeta(pairs)
            if zeta_inv(shape, labels) != pairs:
                failures += 1
            cro, nest = cross_nest(pairs)
            if sum(labels) != cro or ht_stat(shape) != cro + nest:
                failures += 1
            histories_seen.add((shape, labels))
        rows.append(_row("matching-roundtrip-failures", {"n": n}, failures, 0))
        rows.append(
            _row("matching-count", {"n": n}, len(matchings), _double_factorial_odd(n))
        )
        all_histories = set()
        paths = enumerate_dyck(n, max_n=max(8, n))
        for mu in paths:
            for labels in enumerate_histories(mu, max_n=max(6, n)):
                all_histories.add((mu, labels))
        rows.append(
            _row("matching-history-image", {"n": n}, len(histories_seen), len(all_histories),
                 equal=histories_seen == all_histories)
        )
        psi_failures = 0
        built = set()
        for mu in paths:
            for labels in enumerate_histories(mu, max_n=max(6, n)):
                lower, tiles = psi_inv(mu, labels)
                if psi(lower, mu, tiles) != labels or sum(labels) != len(tiles):
                    psi_failures += 1
                built.add((lower, mu, tiles))
        enumerated = set()
        trunc_failures = 0
        for mu in paths:
            for lam in paths:
                if not is_above(mu, lam):
                    continue
                for tiles in enumerate_tilings(lam, mu, max_half_length=max(6, n)):
                    enumerated.add((lam, mu, tiles))
                    _, restored = truncate_roundtrip(lam, mu, tiles)
                    if restored != tiles:
                        trunc_failures += 1
        rows.append(_row("tiling-roundtrip-failures", {"n": n}, psi_failures, 0))
        rows.append(
            _row("tiling-image", {"n": n}, len(built), len(enumerated),
                 equal=built == enumerated)
        )
        rows.append(
            _row("tiling-count", {"n": n}, len(enumerated), _double_factorial_odd(n))
        )
        rows.append(_row("truncation-roundtrip-failures", {"n": n}, trunc_failures, 0))
        slice_failures = 0
        slices = 0
        for lam, mu, tiles in sorted(enumerated):
            if ht_stat(mu) == 0:
                continue
            cell = first_addable_cell(mu)
            sigma = cell[0] + cell[1]
            ordinal = mu[:sigma].count("D")
            if psi(lam, mu, tiles)[ordinal] != 0:
                continue
            slices += 1
            collapsed = collapse_slice(lam, mu, tiles, cell)
            back = expand_slice(*collapsed, cell)
            if back != (lam, mu, tiles):
                slice_failures += 1
        rows.append(
            _row("slice-roundtrip-failures", {"n": n, "cases": slices}, slice_failures, 0)
        )
    return rows


def moment_checks(n_max=4, spec_max=8, hermite_max=6):
    """Route agreement, symmetry, specializations, and orthogonality rows."""
    rows = []
    for n in range(n_max + 1):
        dp = moments_joint(n, route="path_dp")
        rows.append(
            _row("moments-dp-vs-matchings", {"n": n}, dp, moments_joint(n, route="matchings"))
        )
        rows.append(
            _row("moments-dp-vs-tilings", {"n": n}, dp, moments_joint(n, route="tilings"))
        )
        rows.append(_row("moments-swap-symmetry", {"n": n}, dp, pq_swap(dp)))
    one = QPoly.from_int(1)
    q_whole = QPoly.monomial(2)
    q_square = QPoly.monomial(4)
    for n in range(spec_max + 1):
        dn = moments_joint(n, route="path_dp")
        rows.append(
            _row(
                "moments-crossing-distribution",
                {"n": n},
                subst_p_q(dn, one, q_whole),
                touchard_riordan_rhs(n),
            )
        )
        rows.append(
            _row(
                "moments-odd-double-factorial",
                {"n": n},
                subst_p_q(dn, q_whole, q_square),
                q_odd_double_fact(n),
            )
        )
    polys = hermite_recurrence(hermite_max)
    needed = hermite_max // 2 + 1
    momvals = [moments_joint(j, route="path_dp") for j in range(needed)]
    for m in range(1, hermite_max + 1):
        value = apply_moment_functional(polys[m], momvals)
        rows.append(_row("hermite-orthogonality", {"m": m}, value, PQPoly()))
    return rows


def mpq_checks(n_max=3):
    """Matrix inversion rows: formula match, product identity, signed counts."""
    rows = []
    for n in range(n_max + 1):
        result = invert_and_check(n, max_n=max(5, n))
        size = len(result["paths"])
        mismatch = sum(
            1
            for i in range(size)
            for j in range(size)
            if result["inverse"][i][j] != result["formula"][i][j]
        )
        rows.append(_row("inverse-matches-tilings", {"n": n}, mismatch, 0))
        rows.append(
            _row("product-is-identity", {"n": n}, int(not result["product_ok"]), 0)
        )
        rows.append(_row("signed-counts", {"n": n}, int(not result["signs_ok"]), 0))
    return rows
