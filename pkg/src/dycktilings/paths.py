"""Dyck paths as strings over the alphabet {U, D}.

A path of half-length n has n up steps and n down steps and every prefix
has at least as many U as D.  Geometrically the path runs from (0,0) to
(n,n) staying weakly above the diagonal: U moves north, D moves east.

Two coordinate views are used throughout:

* height_profile(P)[x] is the number of U before the (x+1)-th D, i.e.
  the height of the path over column x.
* diag_profile(P)[u] is the signed height after u steps (+1 per U,
  -1 per D), indexed by u = 0..2n.
"""

from collections import namedtuple

from .errors import CapacityError, DomainError

MAX_ENUM_HALF_LENGTH = 8

# chord of a path: up/down are 1-based step positions, length counts the
# down steps in positions up..down, height is the level of the up step
Chord = namedtuple("Chord", ["up", "down", "length", "height"])


def check_path(path):
    """Validate a U/D string as a Dyck path; raises DomainError if not."""
    if not isinstance(path, str):
        raise DomainError("path must be a string over U and D")
    v = 0
    for ch in path:
        if ch == "U":
            v += 1
        elif ch == "D":
            v -= 1
            if v < 0:
                raise DomainError("path dips below the diagonal: %r" % path)
        else:
            raise DomainError("path has a character other than U or D: %r" % path)
    if v != 0:
        raise DomainError("path does not return to the diagonal: %r" % path)
    return path


def half_length(path):
    check_path(path)
    return len(path) // 2


def enumerate_dyck(n, max_n=MAX_ENUM_HALF_LENGTH):
    """All Dyck paths of half-length n in lexicographic order with U < D."""
    if n < 0:
        raise DomainError("half-length must be nonnegative")
    if n > max_n:
        raise CapacityError("half-length %d exceeds the bound %d" % (n, max_n))
    out = []

    def build(prefix, ups, downs):
        if ups + downs == 2 * n:
            out.append("".join(prefix))
            return
        if ups < n:
            prefix.append("U")
            build(prefix, ups + 1, downs)
            prefix.pop()
        if downs < ups:
            prefix.append("D")
            build(prefix, ups, downs + 1)
            prefix.pop()

    build([], 0, 0)
    return out


def chords(path):
    """Matched U/D pairs of the path, listed by up-step position.

    Each up step at 1-based position i pairs with the down step at
    position j that returns to its level.  length counts down steps at
    positions i..j, height is 1 + the number of chords strictly
    containing this one (equivalently the level the up step starts on,
    plus one).
    """
    check_path(path)
    down_prefix = [0]
    for ch in path:
        down_prefix.append(down_prefix[-1] + (ch == "D"))
    stack = []
    pairs = []
    for pos, ch in enumerate(path, start=1):
        if ch == "U":
            stack.append(pos)
        else:
            up = stack.pop()
            pairs.append((up, pos))
    out = []
    for up, down in sorted(pairs):
        length = down_prefix[down] - down_prefix[up - 1]
        height = up - 2 * down_prefix[up - 1]
        out.append(Chord(up, down, length, height))
    return out


def ht_stat(path):
    """Sum of (height - 1) over all chords of the path."""
    return sum(c.height - 1 for c in chords(path))


def height_profile(path):
    """Tuple h with h[x] = number of U before the (x+1)-th D."""
    check_path(path)
    out = []
    ups = 0
    for ch in path:
        if ch == "U":
            ups += 1
        else:
            out.append(ups)
    return tuple(out)


def diag_profile(path):
    """Tuple v of length 2n+1 with v[u] = #U - #D among the first u steps."""
    check_path(path)
    out = [0]
    for ch in path:
        out.append(out[-1] + (1 if ch == "U" else -1))
    return tuple(out)


def is_above(upper, lower):
    """True if upper stays weakly above lower (pointwise height profiles)."""
    hu = height_profile(upper)
    hl = height_profile(lower)
    if len(hu) != len(hl):
        raise DomainError("paths have different half-lengths")
    return all(a >= b for a, b in zip(hu, hl))


def skew_cell_count(lower, upper):
    """Number of cells between the two paths (upper weakly above lower)."""
    if not is_above(upper, lower):
        raise DomainError("upper path is not weakly above lower path")
    hu = height_profile(upper)
    hl = height_profile(lower)
    return sum(a - b for a, b in zip(hu, hl))


def order_succ(lam, mu):
    """Whether lam covers mu in the exchange order, and the exchange count.

    lam succeeds mu when the positions where they differ pair up exactly
    into chords of mu (mu has the U, lam has the D).  Returns (ok, d)
    where d is the number of exchanged chords, or (False, None).  Every
    path succeeds itself with d = 0.
    """
    check_path(lam)
    check_path(mu)
    if len(lam) != len(mu):
        raise DomainError("paths have different half-lengths")
    diff = [i for i in range(len(mu)) if lam[i] != mu[i]]
    if not diff:
        return True, 0
    by_up = {c.up - 1: c.down - 1 for c in chords(mu)}
    diff_set = set(diff)
    seen = set()
    for i in diff:
        if i in seen:
            continue
        if mu[i] != "U" or lam[i] != "D":
            return False, None
        j = by_up.get(i)
        if j is None or j not in diff_set:
            return False, None
        seen.add(i)
        seen.add(j)
    if seen != diff_set:
        return False, None
    return True, len(diff) // 2


def concat(first, second):
    check_path(first)
    check_path(second)
    return first + second


def delta(k):
    """The pyramid path U^k D^k."""
    if k < 0:
        raise DomainError("pyramid size must be nonnegative")
    return "U" * k + "D" * k


def delta_multi(sizes):
    """Concatenation of pyramids of the given sizes."""
    return "".join(delta(k) for k in sizes)


def zigzag(n):
    """The sawtooth path (UD)^n; every chord has height 1, so ht_stat is 0."""
    if n < 0:
        raise DomainError("half-length must be nonnegative")
    return "UD" * n


def decompose(path):
    """Split into indecomposable factors (pieces between diagonal returns)."""
    check_path(path)
    out = []
    v = 0
    start = 0
    for pos, ch in enumerate(path):
        v += 1 if ch == "U" else -1
        if v == 0:
            out.append(path[start : pos + 1])
            start = pos + 1
    return out


def inner_path(path):
    """Strip the outer U...D of an indecomposable nonempty path."""
    check_path(path)
    if not path:
        raise DomainError("empty path has no inner path")
    if len(decompose(path)) != 1:
        raise DomainError("inner path requires an indecomposable path")
    return path[1:-1]
