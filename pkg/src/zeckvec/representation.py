"""Coefficient strings over the negative-index vector terms and their grammar.

A coefficient string a1..am (nonnegative integers, 1-based positions, stored
dense as a tuple with trailing zeros trimmed) represents the lattice vector
sum_n a_n * X_{-n}.  The admissible ("satisfying") strings are recognized by a
single left-to-right scanner: reading from position 1, each chunk is a prefix
copy of the defining coefficients c1..c_{j} followed by one element smaller
than c_{j+1}, then zeros, then the next chunk.  A string fails either because
some element is too large or because it contains a full copy of c; the scanner
reports the failure position, which doubles as the "first overfilled element"
used by the rewriting engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotSatisfyingError
from .recurrence import RecurrenceVector

KIND_SATISFYING = "satisfying"
KIND_NEARLY_SATISFYING = "nearly_satisfying"
KIND_OTHER = "other"


def canonical(a) -> tuple:
    """Validate and trim a coefficient string (no trailing zeros, all entries >= 0)."""
    out = tuple(int(x) for x in a)
    if any(x < 0 for x in out):
        raise ValueError("coefficient strings are nonnegative: %r" % (out,))
    m = len(out)
    while m and out[m - 1] == 0:
        m -= 1
    return out[:m]


@dataclass(frozen=True)
class ScanResult:
    ok: bool
    starts: tuple                 # chunk start positions (1-based)
    fail_pos: Optional[int]       # first overfilled element I(a)
    chunk_start: Optional[int]    # start n_p of the chunk the failure belongs to
    matched: Optional[int]        # j: positions n_p..n_p+j-1 equal c1..cj exactly


def scan(c: RecurrenceVector, a: tuple) -> ScanResult:
    """One pass of the chunk grammar over a trimmed string."""
    coeffs = c.coefficients
    k = c.k
    m = len(a)
    starts = []
    p = 1
    while p <= m:
        starts.append(p)
        j = 0
        while j < k:
            t = p + j
            v = a[t - 1] if t <= m else 0
            cj = coeffs[j]
            if v == cj:
                j += 1
                continue
            if v > cj:
                return ScanResult(False, tuple(starts), t, p, j)
            break
        else:
            # all k positions match: the string contains a full copy of c
            return ScanResult(False, tuple(starts), p + k - 1, p, k - 1)
        # chunk closed by a small element at p+j; skip the zero run
        q = p + j + 1
        while q <= m and a[q - 1] == 0:
            q += 1
        p = q
    return ScanResult(True, tuple(starts), None, None, None)


def is_satisfying(c: RecurrenceVector, a) -> bool:
    """True iff the string is a satisfying representation (empty string included)."""
    return scan(c, canonical(a)).ok


def evaluate(c: RecurrenceVector, a) -> tuple:
    """Value sum_n a_n X_{-n} of a coefficient string as a lattice vector."""
    a = canonical(a)
    vec = c.vector()
    dim = c.k - 1
    acc = [0] * dim
    for idx, coef in enumerate(a):
        if coef:
            basis = vec.term(-(idx + 1))
            for d in range(dim):
                acc[d] += coef * basis[d]
    return tuple(acc)


@dataclass(frozen=True)
class ChunkDecomposition:
    """Chunk spans of a satisfying string: (start, length) pairs covering [1, m]."""
    spans: tuple

    @property
    def count(self) -> int:
        return len(self.spans)

    def pieces(self, a) -> list:
        a = canonical(a)
        return [tuple(a[s - 1:s - 1 + ln]) for s, ln in self.spans]


def chunk_decomposition(c: RecurrenceVector, a) -> ChunkDecomposition:
    """Split a satisfying string into its chunks (trailing zeros belong to the chunk)."""
    a = canonical(a)
    result = scan(c, a)
    if not result.ok:
        raise NotSatisfyingError("not a satisfying representation: %r" % (a,))
    m = len(a)
    starts = result.starts
    spans = []
    for i, s in enumerate(starts):
        nxt = starts[i + 1] if i + 1 < len(starts) else m + 1
        spans.append((s, nxt - s))
    return ChunkDecomposition(tuple(spans))


@dataclass(frozen=True)
class SrClassification:
    kind: str                          # satisfying | nearly_satisfying | other
    witness: Optional[int]             # smallest index whose decrement restores a satisfying string
    first_overfilled: Optional[int]    # I(a), defined for nearly satisfying strings
    end_complete: bool


def _decremented(a: tuple, i: int) -> tuple:
    out = list(a)
    out[i - 1] -= 1
    m = len(out)
    while m and out[m - 1] == 0:
        m -= 1
    return tuple(out[:m])


def classify(c: RecurrenceVector, a) -> SrClassification:
    """Classify a string as satisfying, nearly satisfying (with witness), or other.

    A nearly satisfying string becomes satisfying when one coefficient is
    decremented; the smallest such index is reported.  End-completeness means
    the scanner's failure is terminal with a full k-1 prefix match, i.e. the
    string ends in a (possibly overfull) copy of c that carries alone resolve.
    """
    a = canonical(a)
    result = scan(c, a)
    if result.ok:
        return SrClassification(KIND_SATISFYING, None, None, False)
    witness = None
    for i in range(1, len(a) + 1):
        if a[i - 1] >= 1 and scan(c, _decremented(a, i)).ok:
            witness = i
            break
    if witness is None:
        return SrClassification(KIND_OTHER, None, None, False)
    end_complete = result.fail_pos == len(a) and result.matched == c.k - 1
    return SrClassification(KIND_NEARLY_SATISFYING, witness, result.fail_pos, end_complete)


def coefficient_sum(a) -> int:
    """Total coefficient mass G(a)."""
    return sum(canonical(a))


def prefix_sum(a, n: int) -> int:
    """Mass of the entries with index strictly below n."""
    if n < 1:
        raise ValueError("prefix index must be >= 1")
    a = canonical(a)
    return sum(a[:n - 1])


# -- serialization used by every CLI command ---------------------------------

def format_coefficients(a) -> str:
    return ",".join(str(x) for x in canonical(a))


def parse_coefficients(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return canonical(int(part) for part in text.split(","))


def format_vector(v) -> str:
    return ",".join(str(x) for x in v)


def parse_vector(text: str) -> tuple:
    return tuple(int(part) for part in text.strip().split(","))
