"""Skew shapes between Dyck paths and their cover-inclusive tilings.

Cells are unit squares named by their southwest corner (x, y).  With
lower path lam and upper path mu (mu weakly above lam), the skew shape
lam/mu consists of the cells with h_lam(x) <= y < h_mu(x).

A tile is a tuple of cells in ribbon order running southwest to
northeast: consecutive cells differ by (0,1) or (1,0), so each diagonal
x+y holds exactly one cell, and the step word (N for (0,1), E for (1,0))
must be balanced with every prefix having at least as many N as E.  A
single cell is the empty word, which is fine.

A tiling is cover-inclusive when for every pair of tiles, if one tile
contains any cell of the other's southeast translate (shift by (1,-1)),
it contains all of it.
"""

from .errors import CapacityError, DomainError
from .paths import (
    diag_profile,
    enumerate_dyck,
    half_length,
    height_profile,
    is_above,
    order_succ,
    skew_cell_count,
)
from .qpoly import PQPoly

MAX_TILING_HALF_LENGTH = 6
MAX_MATRIX_HALF_LENGTH = 5


def skew_cells(lower, upper):
    """Cells of lower/upper sorted by diagonal x+y, then by x."""
    if not is_above(upper, lower):
        raise DomainError("upper path is not weakly above lower path")
    hl = height_profile(lower)
    hu = height_profile(upper)
    cells = []
    for x in range(len(hl)):
        for y in range(hl[x], hu[x]):
            cells.append((x, y))
    cells.sort(key=lambda c: (c[0] + c[1], c[0]))
    return tuple(cells)


def validate_tile(tile):
    """Check ribbon order and the Dyck condition on the step word."""
    if not tile:
        raise DomainError("a tile needs at least one cell")
    bal = 0
    for (x0, y0), (x1, y1) in zip(tile, tile[1:]):
        step = (x1 - x0, y1 - y0)
        if step == (0, 1):
            bal += 1
        elif step == (1, 0):
            bal -= 1
            if bal < 0:
                raise DomainError("tile step word dips below zero")
        else:
            raise DomainError("tile cells are not in ribbon order")
    if bal != 0:
        raise DomainError("tile step word is unbalanced")
    return tile


def tile_length(tile):
    return len(tile) - 1


def tiling_size(tiles):
    """Number of tiles."""
    return len(tiles)


def tiling_norm(tiles):
    """Half the total tile length (lengths are even, so this is exact)."""
    total = sum(len(t) - 1 for t in tiles)
    if total % 2:
        raise DomainError("tiling has a tile of odd length")
    return total // 2


def _se_compatible(a, b):
    # if a meets the southeast translate of b, it must contain all of it
    a_set = set(a)
    shifted = [(x + 1, y - 1) for x, y in b]
    if any(c in a_set for c in shifted):
        return all(c in a_set for c in shifted)
    return True


def cover_compatible(a, b):
    return _se_compatible(a, b) and _se_compatible(b, a)


def validate_tiling(lower, upper, tiles):
    """Check that tiles partition lower/upper and are cover-inclusive."""
    region = skew_cells(lower, upper)
    seen = {}
    for tile in tiles:
        validate_tile(tile)
        for cell in tile:
            if cell in seen:
                raise DomainError("tiles overlap at %r" % (cell,))
            seen[cell] = tile
    if set(seen) != set(region):
        raise DomainError("tiles do not cover the skew shape exactly")
    tiles = list(tiles)
    for i in range(len(tiles)):
        for j in range(i + 1, len(tiles)):
            if not cover_compatible(tiles[i], tiles[j]):
                raise DomainError("tiling is not cover-inclusive")
    return tiles


def _tiles_rooted_at(anchor, free):
    # all ribbon tiles inside `free` whose southwest cell is `anchor`,
    # found by growing N before E; balanced prefixes only
    found = []

    def grow(cells, bal):
        if bal == 0:
            found.append(tuple(cells))
        x, y = cells[-1]
        up = (x, y + 1)
        if up in free:
            cells.append(up)
            grow(cells, bal + 1)
            cells.pop()
        if bal > 0:
            right = (x + 1, y)
            if right in free:
                cells.append(right)
                grow(cells, bal - 1)
                cells.pop()

    grow([anchor], 0)
    return found


def enumerate_tilings(lower, upper, max_half_length=MAX_TILING_HALF_LENGTH):
    """All cover-inclusive tilings of lower/upper, depth-first.

    Cells are scanned by diagonal; the first uncovered cell is always
    the southwest end of the tile that covers it, so rooting the search
    there is exhaustive.  Tiles inside a tiling appear in scan order of
    their southwest cells.
    """
    n = half_length(lower)
    if n > max_half_length:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_half_length))
    region = skew_cells(lower, upper)
    out = []

    def place(pos, free, tiles):
        while pos < len(region) and region[pos] not in free:
            pos += 1
        if pos == len(region):
            out.append(tuple(tiles))
            return
        anchor = region[pos]
        for tile in _tiles_rooted_at(anchor, free):
            if all(cover_compatible(tile, placed) for placed in tiles):
                tiles.append(tile)
                place(pos + 1, free - set(tile), tiles)
                tiles.pop()

    place(0, set(region), [])
    return out


def tiling_stats(lower, upper, tiles):
    """Cell count of the shape, tile count, and half total length."""
    return {
        "cells": skew_cell_count(lower, upper),
        "size": tiling_size(tiles),
        "norm": tiling_norm(tiles),
    }


# ---------------------------------------------------------------------------
# truncation: positive-length tiles against the lower path


def truncate_tiling(lower, tiles):
    """Truncated form of a tiling: (layer, u1, u2) per positive tile.

    u counts steps along the lower path; a tile of length k spans
    u1..u2 = u1 + k.  The layer says how far the tile sits above the
    lower path: its spine runs at diagonal height v_lower(u) + 2*layer - 1.
    Single cells are dropped (a truncated tile keeps half a cell at each
    end, so only positive length survives).
    """
    v = diag_profile(lower)
    out = []
    for tile in tiles:
        if len(tile) == 1:
            continue
        x0, y0 = tile[0]
        xk, yk = tile[-1]
        u1 = x0 + y0 + 1
        u2 = xk + yk + 1
        layer = (y0 - x0 - v[u1] + 1) // 2
        if layer < 1 or v[u1] + 2 * layer - 1 != y0 - x0:
            raise DomainError("tile does not sit on a layer above the lower path")
        out.append((layer, u1, u2))
    return tuple(sorted(out))


def untruncate_tiling(lower, upper, truncated):
    """Rebuild the full tiling from its truncated form.

    Positive tiles are reconstructed from their spines; every cell of
    the skew shape not reached that way becomes a single-cell tile.
    """
    region = skew_cells(lower, upper)
    region_set = set(region)
    v = diag_profile(lower)
    covered = set()
    tiles = []
    for layer, u1, u2 in truncated:
        if u2 <= u1 or (u2 - u1) % 2:
            raise DomainError("truncated tile must span a positive even length")
        cells = []
        for u in range(u1, u2 + 1):
            d = v[u] + 2 * layer - 1
            cell = ((u - 1 - d) // 2, (u - 1 + d) // 2)
            if cell not in region_set:
                raise DomainError("reconstructed cell %r is outside the shape" % (cell,))
            cells.append(cell)
        tile = tuple(cells)
        validate_tile(tile)
        for cell in tile:
            if cell in covered:
                raise DomainError("truncated tiles overlap")
            covered.add(cell)
        tiles.append(tile)
    for cell in region:
        if cell not in covered:
            tiles.append((cell,))
    tiles.sort(key=lambda t: (t[0][0] + t[0][1], t[0][0]))
    return tuple(tiles)


def truncate_roundtrip(lower, upper, tiles):
    """Truncate and rebuild; returns (truncated, restored)."""
    truncated = truncate_tiling(lower, tiles)
    restored = untruncate_tiling(lower, upper, truncated)
    return truncated, restored


# ---------------------------------------------------------------------------
# the weighted transition matrix and its inverse


def build_matrix_M(n, max_n=MAX_MATRIX_HALF_LENGTH):
    """Matrix over paths of half-length n in enumeration order.

    Entry (lam, mu) is p^cells(lam/mu) * q^exchanges when lam succeeds
    mu in the exchange order, else zero.  Enumeration order is a linear
    extension of that order (at the first differing position mu has U
    and lam has D, so lam sorts later), making the matrix
    lower-unitriangular.
    """
    if n > max_n:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_n))
    paths = enumerate_dyck(n, max_n=max(n, 8))
    matrix = []
    for lam in paths:
        row = []
        for mu in paths:
            ok, d = order_succ(lam, mu)
            if ok:
                row.append(PQPoly.monomial(skew_cell_count(lam, mu), d))
            else:
                row.append(PQPoly())
        matrix.append(row)
    return paths, matrix


def formula_inverse_matrix(n, max_n=MAX_MATRIX_HALF_LENGTH):
    """Conjectural inverse built from tilings.

    Entry (lam, mu) is the sum over cover-inclusive tilings of lam/mu
    of (-p)^cells * q^tiles, zero when mu is not above lam.
    """
    if n > max_n:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_n))
    paths = enumerate_dyck(n, max_n=max(n, 8))
    matrix = []
    for lam in paths:
        row = []
        for mu in paths:
            if not is_above(mu, lam):
                row.append(PQPoly())
                continue
            cells = skew_cell_count(lam, mu)
            sign = -1 if cells % 2 else 1
            entry = PQPoly()
            for tiles in enumerate_tilings(lam, mu, max_half_length=max(n, 6)):
                entry = entry + PQPoly.monomial(cells, len(tiles), sign)
            row.append(entry)
        matrix.append(row)
    return paths, matrix


def invert_unitriangular(matrix):
    """Invert a lower-unitriangular polynomial matrix by forward substitution."""
    size = len(matrix)
    one = PQPoly.from_int(1)
    zero = PQPoly()
    for i in range(size):
        if matrix[i][i] != one:
            raise DomainError("matrix is not unitriangular on the diagonal")
        for j in range(i + 1, size):
            if matrix[i][j] != zero:
                raise DomainError("matrix has a nonzero entry above the diagonal")
    inv = [[PQPoly() for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(i + 1):
            acc = PQPoly.from_int(1) if i == j else PQPoly()
            for k in range(j, i):
                acc = acc - matrix[i][k] * inv[k][j]
            inv[i][j] = acc
    return inv


def matrix_product(a, b):
    size = len(a)
    out = [[PQPoly() for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if not a[i][k]:
                continue
            for j in range(size):
                if b[k][j]:
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def invert_and_check(n, max_n=MAX_MATRIX_HALF_LENGTH):
    """Invert the transition matrix and compare with the tiling formula.

    Returns the paths, both matrices, the computed inverse, and three
    booleans: formula equality, product-with-inverse identity, and the
    numeric specialization at p = q = 1 (signed tiling counts).
    """
    paths, matrix = build_matrix_M(n, max_n=max_n)
    _, formula = formula_inverse_matrix(n, max_n=max_n)
    inverse = invert_unitriangular(matrix)
    equal = inverse == formula
    size = len(paths)
    identity = [
        [PQPoly.from_int(1) if i == j else PQPoly() for j in range(size)]
        for i in range(size)
    ]
    product_ok = matrix_product(matrix, formula) == identity
    signs_ok = True
    for i, lam in enumerate(paths):
        for j, mu in enumerate(paths):
            if not is_above(mu, lam):
                continue
            cells = skew_cell_count(lam, mu)
            count = len(enumerate_tilings(lam, mu, max_half_length=max(n, 6)))
            expected = count if cells % 2 == 0 else -count
            if formula[i][j].eval_at_one() != expected:
                signs_ok = False
    return {
        "paths": paths,
        "matrix": matrix,
        "inverse": inverse,
        "formula": formula,
        "equal": equal,
        "product_ok": product_ok,
        "signs_ok": signs_ok,
    }
