"""Scalar bridge, greedy legal decomposition, and region enumeration.

The bridge maps a lattice vector to a scalar by dotting with a window of
scalar terms (reduced mod X_n); on a string with support below the window it
reproduces the digit-for-digit scalar value, which transports uniqueness and
summand statistics to the scalar side.  The greedy decomposition here is the
independent oracle: it never touches the vector rewriting machinery.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import BridgeDomainError, CapExceededError
from .fileio import atomic_write_text
from .recurrence import RecurrenceVector, scalar_term
from .representation import format_coefficients

DEFAULT_ENUMERATION_CAP = 10_000_000


def scalar_bridge(c: RecurrenceVector, n: int, v) -> int:
    """Dot v with (X_{n-1}, ..., X_{n-k+1}) and reduce mod X_n (in [0, X_n))."""
    if n < c.k - 2:
        raise BridgeDomainError("bridge index must be >= k-2 = %d" % (c.k - 2))
    seq = c.scalar()
    dot = 0
    for i in range(1, c.k):
        dot += v[i - 1] * seq.term(n - i)
    return dot % seq.term(n)


def legal_decompose(c: RecurrenceVector, n: int) -> tuple:
    """Greedy legal decomposition of a nonnegative integer over the scalar terms.

    Returns digits (b_1, ..., b_M) with n = sum_i b_i * X_{M-i+1}, leading
    digit first.  For weakly decreasing coefficients the greedy digits read as
    a string satisfy the same chunk grammar as the vector representations.
    """
    if n < 0:
        raise ValueError("legal decomposition needs a nonnegative integer")
    if n == 0:
        return ()
    seq = c.scalar()
    top = seq.max_index_at_most(n)
    digits = []
    rem = n
    for idx in range(top, 0, -1):
        q, rem = divmod(rem, seq.term(idx))
        digits.append(q)
    return tuple(digits)


def summand_count(digits) -> int:
    """Number of summands (with multiplicity) of a digit string."""
    return sum(digits)


def iter_representations(c: RecurrenceVector, n: int, with_values: bool = False):
    """Yield every satisfying string with support in [1, n], lexicographically.

    The generator mirrors the scanner: a chunk is an exact prefix copy of the
    coefficients followed by a strictly smaller element, then a zero run.
    With values enabled, each yield is (string, vector) with the vector
    maintained incrementally along the search path.
    """
    coeffs = c.coefficients
    k = c.k
    c1 = coeffs[0]
    dim = k - 1
    basis = c.vector().basis(n) if n >= 1 else []
    buf = []
    val = [0] * dim

    def add(pos, e):
        b = basis[pos - 1]
        for d in range(dim):
            val[d] += e * b[d]

    def sub(pos, e):
        b = basis[pos - 1]
        for d in range(dim):
            val[d] -= e * b[d]

    if with_values:
        def emit(last_nz):
            return tuple(buf[:last_nz]), tuple(val)
    else:
        def emit(last_nz):
            return tuple(buf[:last_nz])

    def tail(p, last_nz):
        # all strings whose remaining support lies in [p, n]; the all-zero
        # tail comes first, then chunks placed late to early (lex order)
        yield emit(last_nz)
        if p > n:
            return
        base = len(buf)
        for q in range(n, p - 1, -1):
            del buf[base:]
            buf.extend([0] * (q - p))
            yield from chunk_at(q, last_nz)
        del buf[base:]

    def chunk_at(q, last_nz):
        for e in range(1, c1):
            buf.append(e)
            add(q, e)
            yield from tail(q + 1, q)
            sub(q, e)
            buf.pop()
        buf.append(c1)
        add(q, c1)
        yield from match_state(q, 1, q)
        sub(q, c1)
        buf.pop()

    def match_state(q, d, last_nz):
        # positions q..q+d-1 hold c1..cd; next position either closes the
        # chunk with a small element or continues the copy
        t = q + d
        if t > n:
            yield emit(last_nz)
            return
        nxt = coeffs[d]
        for e in range(nxt):
            buf.append(e)
            if e:
                add(t, e)
            yield from tail(t + 1, t if e else last_nz)
            if e:
                sub(t, e)
            buf.pop()
        if d + 1 <= k - 1:
            buf.append(nxt)
            if nxt:
                add(t, nxt)
            yield from match_state(q, d + 1, t if nxt else last_nz)
            if nxt:
                sub(t, nxt)
            buf.pop()

    yield from tail(1, 0)


def enumerate_representations(c: RecurrenceVector, n: int,
                              cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """All satisfying strings with support in [1, n]; count equals X_{n+1}."""
    if n < 0:
        raise ValueError("support bound must be >= 0")
    expected = scalar_term(c, n + 1)
    if expected > cap:
        raise CapExceededError("enumeration of %d strings exceeds cap %d" % (expected, cap))
    return list(iter_representations(c, n))


@dataclass
class RegionSet:
    """Vectors representable with support <= n (or exactly n for a shell).

    members maps each vector to (first region index, generating string); the
    region index of a vector is the support of its satisfying string.
    """
    n: int
    members: dict

    def __len__(self):
        return len(self.members)

    def vectors(self):
        return self.members.keys()


def support_region(c: RecurrenceVector, n: int,
                   cap: int = DEFAULT_ENUMERATION_CAP) -> RegionSet:
    """D_n: every vector with a satisfying string supported in [1, n]."""
    if n < 0:
        raise ValueError("support bound must be >= 0")
    if scalar_term(c, n + 1) > cap:
        raise CapExceededError("region of %d points exceeds cap" % scalar_term(c, n + 1))
    members = {}
    for a, v in iter_representations(c, n, with_values=True):
        members[v] = (len(a), a)
    return RegionSet(n, members)


def support_shell(c: RecurrenceVector, n: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> RegionSet:
    """R_n = D_n minus D_{n-1}: vectors whose string has support exactly n."""
    if n < 1:
        raise ValueError("shell index must be >= 1")
    if scalar_term(c, n + 1) > cap:
        raise CapExceededError("region of %d points exceeds cap" % scalar_term(c, n + 1))
    members = {}
    for a, v in iter_representations(c, n, with_values=True):
        if len(a) == n:
            members[v] = (n, a)
    return RegionSet(n, members)


def ball_coverage(c: RecurrenceVector, radius: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Minimum n whose region covers the sup-norm ball of the given radius.

    Grows the region one support level at a time, discarding covered ball
    points; exhaustive by construction.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    dim = c.k - 1
    remaining = set()

    def fill(prefix):
        if len(prefix) == dim:
            remaining.add(prefix)
            return
        for x in range(-radius, radius + 1):
            fill(prefix + (x,))

    fill(())
    n = 0
    while True:
        if scalar_term(c, n + 1) > cap:
            raise CapExceededError("ball not covered below the enumeration cap")
        for _, v in iter_representations(c, n, with_values=True):
            remaining.discard(v)
        if not remaining:
            return n
        n += 1


# -- reproducible exports -----------------------------------------------------

_SVG_COLORS = (
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
    "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd", "#5f9e6e", "#b55d60",
)


def regions_csv_text(c: RecurrenceVector, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> str:
    region = support_region(c, n, cap)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x%d" % (d + 1) for d in range(c.k - 1)] + ["n_first", "sr_string"])
    for v, (first, a) in region.members.items():   # insertion order = lex order
        writer.writerow(list(v) + [first, format_coefficients(a)])
    return out.getvalue()


def export_regions_csv(c: RecurrenceVector, n: int, path: str,
                       cap: int = DEFAULT_ENUMERATION_CAP):
    atomic_write_text(path, regions_csv_text(c, n, cap))


def regions_svg_text(c: RecurrenceVector, n: int, cap: int = DEFAULT_ENUMERATION_CAP,
                     size: int = 640) -> str:
    """Scatter of the planar region, one color per shell, origin marked."""
    if c.k != 3:
        raise ValueError("svg rendering is planar only (k = 3)")
    region = support_region(c, n, cap)
    extent = 1
    for v in region.members:
        extent = max(extent, abs(v[0]), abs(v[1]))
    pad = 10
    cell = max(1, (size - 2 * pad) // (2 * extent + 1))
    span = cell * (2 * extent + 1) + 2 * pad
    radius = max(1, cell // 3)

    def px(x):
        return pad + (x + extent) * cell + cell // 2

    def py(y):
        return span - (pad + (y + extent) * cell + cell // 2)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (span, span, span, span),
        '<rect width="%d" height="%d" fill="white"/>' % (span, span),
    ]
    for v, (first, _a) in region.members.items():
        color = _SVG_COLORS[first % len(_SVG_COLORS)] if first else "#000000"
        parts.append('<circle cx="%d" cy="%d" r="%d" fill="%s"/>'
                     % (px(v[0]), py(v[1]), radius, color))
    side = max(2, radius * 2)
    parts.append('<rect x="%d" y="%d" width="%d" height="%d" fill="black"/>'
                 % (px(0) - side // 2, py(0) - side // 2, side, side))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_regions_svg(c: RecurrenceVector, n: int, path: str,
                       cap: int = DEFAULT_ENUMERATION_CAP, size: int = 640):
    atomic_write_text(path, regions_svg_text(c, n, cap, size))
