"""Bijections tying matchings, labeled Dyck paths, and tilings together.

Three families live here:

* perfect matchings of {1..2n} with their crossing and nesting counts,
* labeled Dyck paths (a label per down step, below that step's chord
  height), called histories,
* cover-inclusive tilings of skew shapes below a fixed upper path.

zeta maps matchings to histories; psi maps tilings to histories.  Both
are invertible, and the inverses are implemented directly rather than
by search.
"""

from itertools import product

from .errors import CapacityError, DomainError
from .paths import (
    check_path,
    chords,
    half_length,
    height_profile,
    ht_stat,
)
from .qpoly import QPoly
from .tilings import validate_tiling

MAX_MATCHING_HALF_LENGTH = 6
MAX_HISTORY_HALF_LENGTH = 6


def _anchor_key(tile):
    return (tile[0][0] + tile[0][1], tile[0][0])


# ---------------------------------------------------------------------------
# matchings


def check_matching(pairs):
    """Canonicalize a perfect matching of {1..2n}: sorted pairs (i, j), i < j."""
    canon = tuple(sorted(tuple(sorted(p)) for p in pairs))
    flat = sorted(x for p in canon for x in p)
    if flat != list(range(1, 2 * len(canon) + 1)):
        raise DomainError("not a perfect matching of 1..2n")
    return canon


def enumerate_matchings(n, max_n=MAX_MATCHING_HALF_LENGTH):
    """All perfect matchings of {1..2n}, smallest free point first."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > max_n:
        raise CapacityError("matching size %d exceeds the bound %d" % (n, max_n))
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(tuple(acc))
            return
        first = remaining[0]
        for idx in range(1, len(remaining)):
            acc.append((first, remaining[idx]))
            rec(remaining[1:idx] + remaining[idx + 1 :], acc)
            acc.pop()

    rec(tuple(range(1, 2 * n + 1)), [])
    return out


def cross_nest(pairs):
    """(crossings, nestings) of a matching."""
    pairs = check_matching(pairs)
    cro = nest = 0
    for a in range(len(pairs)):
        i, j = pairs[a]
        for b in range(a + 1, len(pairs)):
            k, l = pairs[b]
            if i < k < j < l:
                cro += 1
            elif i < k and l < j:
                nest += 1
    return cro, nest


# ---------------------------------------------------------------------------
# matchings <-> histories


def zeta(pairs):
    """History of a matching: shape from openers, labels from crossings.

    Position i is an up step when i opens a pair.  The down step closing
    the pair (i, j) gets label = number of pairs opened inside (i, j)
    and closed after j, i.e. how many newer chords were still open.
    """
    pairs = check_matching(pairs)
    openers = {i for i, _ in pairs}
    size = 2 * len(pairs)
    shape = "".join("U" if pos in openers else "D" for pos in range(1, size + 1))
    labels = []
    by_closer = {j: i for i, j in pairs}
    for j in range(1, size + 1):
        if j in by_closer:
            i = by_closer[j]
            labels.append(sum(1 for k, l in pairs if i < k < j < l))
    return shape, tuple(labels)


def zeta_inv(path, labels):
    """Matching with the given history.

    At a down step with label m, close the open chord that has exactly m
    chords opened after it still open.
    """
    check_path(path)
    labels = tuple(labels)
    if len(labels) != half_length(path):
        raise DomainError("need one label per down step")
    open_stack = []
    pairs = []
    pos_label = iter(labels)
    for pos, ch in enumerate(path, start=1):
        if ch == "U":
            open_stack.append(pos)
        else:
            m = next(pos_label)
            if not 0 <= m < len(open_stack):
                raise DomainError("label %r out of range at position %d" % (m, pos))
            opener = open_stack.pop(len(open_stack) - 1 - m)
            pairs.append((opener, pos))
    return tuple(sorted(pairs))


def down_step_heights(path):
    """Chord heights listed in down-step order; label m is valid iff m < height."""
    by_down = {c.down: c.height for c in chords(path)}
    return tuple(by_down[pos] for pos in sorted(by_down))


def enumerate_histories(path, max_n=MAX_HISTORY_HALF_LENGTH):
    """All label tuples for the path, lexicographically."""
    n = half_length(path)
    if n > max_n:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_n))
    heights = down_step_heights(path)
    return [labels for labels in product(*(range(h) for h in heights))]


def history_weight_sum(path, max_n=MAX_HISTORY_HALF_LENGTH):
    """Sum of q^(total label) over all histories of the path."""
    out = QPoly()
    for labels in enumerate_histories(path, max_n=max_n):
        out = out + QPoly.monomial(2 * sum(labels))
    return out


# ---------------------------------------------------------------------------
# tilings -> histories


def psi(lower, upper, tiles):
    """Labels of a tiling, one per down step of the upper path.

    From the segment under a down step, walk south.  Entering a tile
    through the north border of its northeast cell counts it and drops
    the walk to below the southwest cell; anything else stops the walk.
    """
    validate_tiling(lower, upper, tiles)
    ne_index = {tile[-1]: tile for tile in tiles}
    labels = []
    x = y = 0
    for ch in upper:
        if ch == "U":
            y += 1
        else:
            cx, cy = x, y - 1
            count = 0
            while (cx, cy) in ne_index:
                tile = ne_index[(cx, cy)]
                count += 1
                sx, sy = tile[0]
                cx, cy = sx, sy - 1
            labels.append(count)
            x += 1
    return tuple(labels)


# ---------------------------------------------------------------------------
# slice surgery used by the inverse


def first_addable_cell(path):
    """First cell (by diagonal, then x) sitting under a removable peak.

    A cell (x, y) with y = h(x) - 1 qualifies when lowering the peak
    keeps the path above the diagonal (h(x) >= x + 2) and the step
    before the peak's up step is not a down step at the same height
    (x = 0 or h(x-1) < h(x)).  Returns None when the path is the
    sawtooth and nothing is addable.
    """
    h = height_profile(path)
    best = None
    for x in range(len(h)):
        if h[x] >= x + 2 and (x == 0 or h[x - 1] < h[x]):
            cell = (x, h[x] - 1)
            key = (cell[0] + cell[1], cell[0])
            if best is None or key < best[0]:
                best = (key, cell)
    return None if best is None else best[1]


def lower_peak(path, cell):
    """Rewrite the peak over the cell from UD to DU."""
    x, y = cell
    sigma = x + y
    if path[sigma : sigma + 2] != "UD":
        raise DomainError("no peak over cell %r" % (cell,))
    out = path[:sigma] + "DU" + path[sigma + 2 :]
    return check_path(out)


def collapse_slice(lower, upper, tiles, cell):
    """Remove the diagonal slice through an addable cell of the upper path.

    Both paths must cross the slice with a UD peak at the cell's
    diagonal; those two steps are deleted from each.  Tiles southwest of
    the slice stay put, tiles northeast of it shift by (-1,-1), and a
    tile crossing the slice loses its slice cell, its neighbor cells
    merging into one.  A single-cell tile on the slice cannot be
    collapsed and raises DomainError.
    """
    x, y = cell
    sigma = x + y
    point = (upper[:sigma].count("D"), upper[:sigma].count("U"))
    if point != (x, y):
        raise DomainError("cell %r is not on the upper path at its diagonal" % (cell,))
    if upper[sigma : sigma + 2] != "UD" or lower[sigma : sigma + 2] != "UD":
        raise DomainError("paths do not peak over cell %r" % (cell,))
    new_upper = check_path(upper[:sigma] + upper[sigma + 2 :])
    new_lower = check_path(lower[:sigma] + lower[sigma + 2 :])
    new_tiles = []
    for tile in tiles:
        sums = [cx + cy for cx, cy in tile]
        if max(sums) <= sigma - 2:
            new_tiles.append(tile)
        elif min(sums) >= sigma + 2:
            new_tiles.append(tuple((cx - 1, cy - 1) for cx, cy in tile))
        else:
            head = [c for c in tile if c[0] + c[1] <= sigma - 1]
            tail = [(cx - 1, cy - 1) for cx, cy in tile if cx + cy >= sigma + 1]
            if not head or not tail or head[-1] != tail[0]:
                raise DomainError("slice meets a tile that does not cross it")
            new_tiles.append(tuple(head + tail[1:]))
    new_tiles.sort(key=_anchor_key)
    validate_tiling(new_lower, new_upper, new_tiles)
    return new_lower, new_upper, tuple(new_tiles)


def expand_slice(lower, upper, tiles, cell):
    """Inverse of collapse_slice: reopen the diagonal slice at the cell.

    Both paths get a UD peak inserted at the cell's diagonal.  A tile
    holding a cell on the diagonal just below the slice splits there,
    growing the two cells that the collapse had merged; tiles past the
    slice shift by (1,1); the rest stay.
    """
    x, y = cell
    sigma = x + y
    point = (upper[:sigma].count("D"), upper[:sigma].count("U"))
    if point != (x, y):
        raise DomainError("cell %r is not on the upper path at its diagonal" % (cell,))
    new_upper = check_path(upper[:sigma] + "UD" + upper[sigma:])
    new_lower = check_path(lower[:sigma] + "UD" + lower[sigma:])
    new_tiles = []
    for tile in tiles:
        sums = [cx + cy for cx, cy in tile]
        if sigma - 1 in sums:
            idx = sums.index(sigma - 1)
            mx, my = tile[idx]
            head = list(tile[: idx + 1])
            grown = [(mx, my + 1), (mx + 1, my + 1)]
            tail = [(cx + 1, cy + 1) for cx, cy in tile[idx + 1 :]]
            new_tiles.append(tuple(head + grown + tail))
        elif max(sums) <= sigma - 2:
            new_tiles.append(tile)
        elif min(sums) >= sigma:
            new_tiles.append(tuple((cx + 1, cy + 1) for cx, cy in tile))
        else:
            raise DomainError("tile straddles the slice diagonal unexpectedly")
    new_tiles.sort(key=_anchor_key)
    validate_tiling(new_lower, new_upper, new_tiles)
    return new_lower, new_upper, tuple(new_tiles)


# ---------------------------------------------------------------------------
# histories -> tilings


def psi_inv(upper, labels):
    """The unique tiling under the upper path with the given labels.

    Recursive peeling at the first addable cell: a positive label there
    means the cell is a single-cell tile (remove it by lowering the peak
    and decrementing that label); a zero label means the whole diagonal
    slice can be collapsed away.  The base case is the sawtooth path,
    whose only tiling is the empty one.
    """
    check_path(upper)
    labels = tuple(labels)
    heights = down_step_heights(upper)
    if len(labels) != len(heights):
        raise DomainError("need one label per down step")
    for m, h in zip(labels, heights):
        if not 0 <= m < h:
            raise DomainError("label %r out of range for chord height %d" % (m, h))
    lower, tiles = _psi_inv(upper, labels)
    validate_tiling(lower, upper, tiles)
    return lower, tiles


def _psi_inv(upper, labels):
    if ht_stat(upper) == 0:
        return upper, ()
    cell = first_addable_cell(upper)
    x, y = cell
    sigma = x + y
    down_ordinal = upper[:sigma].count("D")
    m = labels[down_ordinal]
    if m:
        peeled = lower_peak(upper, cell)
        new_labels = labels[:down_ordinal] + (m - 1,) + labels[down_ordinal + 1 :]
        lower, tiles = _psi_inv(peeled, new_labels)
        tiles = tuple(sorted(tiles + ((cell,),), key=_anchor_key))
        return lower, tiles
    shrunk = upper[:sigma] + upper[sigma + 2 :]
    new_labels = labels[:down_ordinal] + labels[down_ordinal + 1 :]
    lower3, tiles3 = _psi_inv(shrunk, new_labels)
    new_lower, new_upper, tiles = expand_slice(lower3, shrunk, tiles3, cell)
    if new_upper != upper:
        raise DomainError("slice expansion did not restore the upper path")
    return new_lower, tiles
