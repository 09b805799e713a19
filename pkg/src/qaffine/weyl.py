"""Affine Weyl group combinatorics on the root lattice.

Lattice automorphisms are integer matrices over the alpha basis; simple
reflections, coweight translations and diagram permutations all live here.
Provides lengths and inversion sets, the translation elements lambda_i, the
doubly infinite index word spelling their product, the enumeration r -> beta_r
of positive real roots and the convex order on root symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanDatum, build


class NotInExtendedWeyl(ValueError):
    """Matrix fails the structural test (preserve form, fix delta)."""


class NotReduced(ValueError):
    """Word has a repeated or negative inversion, so it is not reduced."""


class NonIntegralPairing(ValueError):
    """Translation weight pairs non-integrally with the lattice."""


# ---------------------------------------------------------------------------
# Lattice automorphisms


@dataclass(frozen=True)
class QAut:
    """Automorphism of the root lattice; column j is the image of alpha_j."""

    matrix: tuple

    def apply(self, v):
        m = self.matrix
        size = len(m)
        return tuple(sum(m[i][j] * v[j] for j in range(size) if v[j])
                     for i in range(size))

    def __matmul__(self, other):
        a, b = self.matrix, other.matrix
        size = len(a)
        rows = []
        for i in range(size):
            rows.append(tuple(sum(a[i][k] * b[k][j] for k in range(size))
                              for j in range(size)))
        return QAut(tuple(rows))

    def inverse(self):
        size = len(self.matrix)
        aug = [[Fraction(self.matrix[i][j]) for j in range(size)]
               + [Fraction(int(i == j)) for j in range(size)]
               for i in range(size)]
        for col in range(size):
            piv = next(r for r in range(col, size) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(size):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        rows = []
        for i in range(size):
            row = aug[i][size:]
            assert all(x.denominator == 1 for x in row)
            rows.append(tuple(int(x) for x in row))
        return QAut(tuple(rows))

    def is_identity(self):
        size = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(size) for j in range(size))

    def as_permutation(self):
        """The vertex permutation if this is a diagram automorphism."""
        size = len(self.matrix)
        perm = [None] * size
        for j in range(size):
            col = [self.matrix[i][j] for i in range(size)]
            ones = [i for i, c in enumerate(col) if c == 1]
            if len(ones) != 1 or any(c not in (0, 1) for c in col):
                return None
            perm[j] = ones[0]
        return tuple(perm) if len(set(perm)) == size else None


def identity_aut(datum):
    size = datum.n + 1
    return QAut(tuple(tuple(int(i == j) for j in range(size))
                      for i in range(size)))


def reflection_aut(datum, i):
    size = datum.n + 1
    rows = []
    for r in range(size):
        rows.append(tuple((int(r == j) - (datum.a[i][j] if r == i else 0))
                          for j in range(size)))
    return QAut(tuple(rows))


def perm_aut(datum, perm):
    size = datum.n + 1
    return QAut(tuple(tuple(int(perm[j] == i) for j in range(size))
                      for i in range(size)))


def word_aut(datum, word):
    g = identity_aut(datum)
    for i in word:
        g = g @ reflection_aut(datum, i)
    return g


def reflect(datum, i, v):
    """s_i(v) = v - <pairing> alpha_i, exactly."""
    pair = sum(datum.a[i][j] * v[j] for j in datum.index_set if v[j])
    return tuple(v[j] - (pair if j == i else 0) for j in datum.index_set)


def coweight(datum, i):
    """Fundamental coweight: rational coords over the full alpha basis."""
    n = datum.n
    rows = [[Fraction(datum.b[r][c]) for c in range(1, n + 1)]
            + [Fraction(int(r == i))] for r in range(1, n + 1)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return (Fraction(0),) + tuple(rows[r][n] for r in range(n))


def lambda_weight(datum, i):
    """lambda_i = dtilde_i * (fundamental coweight i)."""
    dt = datum.dtilde[i]
    return tuple(dt * c for c in coweight(datum, i))


def translate(datum, x, v):
    """t_x(v) = v - (x|v) delta; the pairing must be integral."""
    pair = datum.bilinear(x, v)
    if isinstance(pair, Fraction):
        if pair.denominator != 1:
            raise NonIntegralPairing("(x|v) = %s" % pair)
        pair = int(pair)
    return tuple(v[j] - pair * datum.marks[j] for j in datum.index_set)


def translation_aut(datum, x):
    cols = [translate(datum, x, alpha)
            for alpha in (datum.alpha(j) for j in datum.index_set)]
    size = datum.n + 1
    return QAut(tuple(tuple(cols[j][i] for j in range(size))
                      for i in range(size)))


def in_extended_weyl(datum, g):
    size = datum.n + 1
    m = g.matrix
    if g.apply(datum.delta) != datum.delta:
        return False
    for i in range(size):
        for j in range(size):
            lhs = sum(m[r][i] * datum.b[r][c] * m[c][j]
                      for r in range(size) for c in range(size))
            if lhs != datum.b[i][j]:
                return False
    return True


# ---------------------------------------------------------------------------
# Inversion sets and lengths


def inversion_set(datum, word):
    """Inversions of a reduced word of simple reflections.

    Raises NotReduced when the produced roots repeat or go negative.
    """
    out = []
    seen = set()
    prefix = identity_aut(datum)
    for k, i in enumerate(word):
        root = prefix.apply(datum.alpha(i))
        if datum.root_sign(root) != 1 or root in seen:
            raise NotReduced("word not reduced at position %d" % (k + 1))
        seen.add(root)
        out.append(root)
        prefix = prefix @ reflection_aut(datum, i)
    return out


def _positive_real_families(datum):
    """(embedded finite root, delta step, first m) families covering the
    positive real roots as {m*delta + root : m in m0, m0+step, ...}."""
    fams = []
    t = datum.type
    for fin in datum.finite_roots():
        m0 = 0 if datum.root_sign(fin) == 1 else 1
        if not t.twisted or t.is_a2n2:
            step = 1
        else:
            step = datum.bilinear(fin, fin) // 2
            if m0 == 1:
                m0 = step
        fams.append((fin, step, m0))
    if t.is_a2n2:
        for fin in datum.finite_roots():
            if datum.bilinear(fin, fin) == 2:
                dbl = tuple(2 * c for c in fin)
                fams.append((dbl, 2, 1))
    return fams


def inversions(datum, g):
    """All positive real roots sent negative by g^{-1} (finite for W~)."""
    if not in_extended_weyl(datum, g):
        raise NotInExtendedWeyl("matrix is not in the extended Weyl group")
    ginv = g.inverse()
    depth = datum.height(datum.delta)
    out = []
    for fin, step, m0 in _positive_real_families(datum):
        image = ginv.apply(fin)
        # image of m*delta + fin is m*delta + image; find all m >= m0 in the
        # progression with the image negative
        m = m0
        while True:
            v = tuple(m * datum.marks[j] + image[j] for j in datum.index_set)
            sign = datum.root_sign(v)
            if sign == 1 or all(c >= 0 for c in v):
                break
            if sign == -1:
                out.append(tuple(m * datum.marks[j] + fin[j]
                                 for j in datum.index_set))
            m += step
            if m > m0 + depth * (2 + max(abs(c) for c in image)):
                raise AssertionError("inversion enumeration did not close")
    return out


def length(datum, g):
    return len(inversions(datum, g))


def length_additive(datum, g, h):
    """True iff lengths add: the inversions of g sit inside those of g@h."""
    return set(map(tuple, inversions(datum, g))) <= \
        set(map(tuple, inversions(datum, g @ h)))


# ---------------------------------------------------------------------------
# Translation words, the index sequence, beta


def _greedy_descent(datum, g):
    """Peel simple reflections from the left; returns (word, residual perm).

    Uses the descent test: l(s_i g) < l(g) iff g^{-1}(alpha_i) < 0.
    """
    word = []
    cur = g
    inv = g.inverse()
    while True:
        for i in datum.index_set:
            if datum.root_sign(inv.apply(datum.alpha(i))) == -1:
                word.append(i)
                s = reflection_aut(datum, i)
                cur = s @ cur
                inv = inv @ s
                break
        else:
            break
    perm = cur.as_permutation()
    if perm is None:
        raise NotInExtendedWeyl("descent residual is not a diagram map")
    return word, perm


def _perm_compose(p, q):
    return tuple(p[q[j]] for j in range(len(p)))


def _perm_inverse(p):
    out = [0] * len(p)
    for j, v in enumerate(p):
        out[v] = j
    return tuple(out)


def _perm_power(p, k):
    out = tuple(range(len(p)))
    base = p if k >= 0 else _perm_inverse(p)
    for _ in range(abs(k)):
        out = _perm_compose(base, out)
    return out


@dataclass(frozen=True)
class IotaTable:
    """Period-N index word for the product of the lambda translations."""

    datum: CartanDatum
    big_n: int
    letters: tuple          # iota_1 .. iota_N
    boundaries: tuple       # N_0 = 0 < N_1 < ... < N_n = N
    segment_taus: tuple     # residual diagram permutation per segment
    tau: tuple              # global permutation: iota_{r+N} = tau(iota_r)

    def letter(self, r):
        n = self.big_n
        k, base = divmod(r - 1, n)
        return _perm_power(self.tau, k)[self.letters[base]]


def _a2n2_lambda1_word(datum):
    n = datum.n
    block = [0] + list(range(n, 0, -1))
    return block * n


@lru_cache(maxsize=None)
def _iota_cache(type_str):
    datum = build(type_str)
    return _build_iota(datum)


def iota_table(datum):
    return _iota_cache(str(datum.type))


def _build_iota(datum):
    n = datum.n
    letters = []
    seg_taus = []
    boundaries = [0]
    conj = tuple(range(n + 1))
    total = identity_aut(datum)
    for i in range(1, n + 1):
        g = translation_aut(datum, lambda_weight(datum, i))
        total = total @ g
        if datum.type.is_a2n2 and i == 1:
            word = _a2n2_lambda1_word(datum)
            tau_i = tuple(range(n + 1))
            assert word_aut(datum, word).matrix == g.matrix
        else:
            word, tau_i = _greedy_descent(datum, g)
        inversion_set(datum, word)        # reducedness check
        letters.extend(conj[j] for j in word)
        seg_taus.append(tau_i)
        boundaries.append(len(letters))
        conj = _perm_compose(conj, tau_i)
    tau = conj
    # the concatenated word spells the whole product, reduced
    inversion_set(datum, letters)
    assert (word_aut(datum, letters) @ perm_aut(datum, tau)).matrix \
        == total.matrix
    if datum.type.is_a2n2:
        nn = n * (n + 1)
        assert all((letters[r - 1] + r) % (n + 1) == 1 % (n + 1)
                   for r in range(1, nn + 1))
    return IotaTable(datum=datum, big_n=len(letters), letters=tuple(letters),
                     boundaries=tuple(boundaries),
                     segment_taus=tuple(seg_taus), tau=tau)


def beta(datum, r):
    """The positive real root indexed by r (injective enumeration)."""
    table = iota_table(datum)
    if r >= 1:
        w = identity_aut(datum)
        for k in range(1, r):
            w = w @ reflection_aut(datum, table.letter(k))
        return w.apply(datum.alpha(table.letter(r)))
    w = identity_aut(datum)
    for k in range(0, r, -1):
        w = w @ reflection_aut(datum, table.letter(k))
    return w.apply(datum.alpha(table.letter(r)))


def beta_range(datum, lo, hi):
    """{r: beta_r} for lo <= r <= hi, sharing prefix products."""
    table = iota_table(datum)
    out = {}
    if hi >= 1:
        w = identity_aut(datum)
        for r in range(1, hi + 1):
            if r >= lo:
                out[r] = w.apply(datum.alpha(table.letter(r)))
            w = w @ reflection_aut(datum, table.letter(r))
    if lo <= 0:
        w = identity_aut(datum)
        for r in range(0, lo - 1, -1):
            if r <= hi:
                out[r] = w.apply(datum.alpha(table.letter(r)))
            w = w @ reflection_aut(datum, table.letter(r))
    return out


# ---------------------------------------------------------------------------
# Root symbols and the convex order


@dataclass(frozen=True)
class Real:
    """The real root beta_r."""
    r: int

    def code(self):
        return "R%d" % self.r


@dataclass(frozen=True)
class Imag:
    """The imaginary root (m*delta, i)."""
    m: int
    i: int

    def code(self):
        return "I%d.%d" % (self.m, self.i)


def parse_symbol(code):
    if code.startswith("R"):
        return Real(int(code[1:]))
    if code.startswith("I"):
        m, i = code[1:].split(".")
        return Imag(int(m), int(i))
    raise ValueError("bad root symbol code %r" % (code,))


def convex_key(sym):
    """Sort key realizing the convex total order on positive root symbols."""
    if isinstance(sym, Real):
        if sym.r <= 0:
            return (0, -sym.r, 0)
        return (2, -sym.r, 0)
    return (1, -sym.m, sym.i)


def convex_compare(a, b):
    ka, kb = convex_key(a), convex_key(b)
    return (ka > kb) - (ka < kb)


def symbol_root(datum, sym):
    """The lattice vector a symbol stands for."""
    if isinstance(sym, Real):
        return beta(datum, sym.r)
    return tuple(sym.m * c for c in datum.delta)
