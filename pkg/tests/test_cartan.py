import pytest

from qaffine.cartan import (
    AffineType, InvalidType, build, classify_root, imag_mult, parse_type,
)


ALL_TYPES_N6 = (
    ["A%d:1" % n for n in range(1, 7)]
    + ["B%d:1" % n for n in range(3, 7)]
    + ["C%d:1" % n for n in range(2, 7)]
    + ["D%d:1" % n for n in range(4, 7)]
    + ["E6:1", "E7:1", "E8:1", "F4:1", "G2:1"]
    + ["A%d:2" % (2 * n) for n in range(1, 7)]
    + ["A%d:2" % (2 * n - 1) for n in range(3, 7)]
    + ["D%d:2" % (n + 1) for n in range(2, 7)]
    + ["E6:2", "D4:3"]
)


def test_parse_and_validate():
    t = parse_type("A4:2")
    assert (t.family, t.tilde_n, t.twist, t.n) == ("A", 4, 2, 2)
    assert parse_type("D4:3").n == 2
    assert parse_type("E6:1").n == 6
    for bad in ["B2:1", "D3:1", "A3:2", "A1:2", "E7:2", "D5:3", "X4:1", "A4"]:
        with pytest.raises(InvalidType):
            parse_type(bad)


def test_a22_datum():
    d = build("A2:2")
    assert d.a[0][1] == -1 and d.a[1][0] == -4
    assert d.d == (4, 1)
    assert d.delta == (1, 2)
    assert d.bilinear(d.alpha(0), d.alpha(1)) == -4
    assert d.bilinear(d.alpha(0), d.alpha(0)) == 8


def test_d43_datum():
    d = build("D4:3")
    assert d.marks == (1, 2, 1)
    assert d.d == (1, 1, 3)
    assert d.a[2][1] == -1 and d.a[1][2] == -3
    assert d.dtilde == (0, 1, 3) and d.ktilde == 3


def test_a51_datum():
    d = build("A5:1")
    assert d.d == (1,) * 6
    assert d.delta == (1,) * 6


def test_symmetry_and_radical_all_types():
    for ts in ALL_TYPES_N6:
        d = build(ts)
        size = d.n + 1
        for i in range(size):
            for j in range(size):
                assert d.b[i][j] == d.b[j][i], ts
        for j in range(size):
            assert sum(d.marks[i] * d.b[i][j] for i in range(size)) == 0, ts
        # coprime positive symmetrizers
        assert all(x > 0 for x in d.d)
        assert d.bilinear(d.delta, d.alpha(0)) == 0


def test_bilinear_examples():
    for ts in ["A3:1", "C3:1", "A4:2", "D4:3"]:
        d = build(ts)
        for i in d.index_set:
            assert d.bilinear(d.alpha(i), d.alpha(i)) == 2 * d.d[i]
        v = tuple(range(1, d.n + 2))
        assert d.bilinear(d.delta, v) == 0


def test_imag_mult():
    d = build("C3:1")
    for m in (1, 2, 5):
        mult, members = imag_mult(d, m)
        assert mult == 3 and members == frozenset({1, 2, 3})
    d43 = build("D4:3")
    assert imag_mult(d43, 2) == (1, frozenset({1}))
    assert imag_mult(d43, 3) == (2, frozenset({1, 2}))
    with pytest.raises(ValueError):
        imag_mult(d43, 0)


def test_imag_mult_closed_formula():
    # multiplicity of m*delta is n when ktilde | m, (tn-n)/(k-1) otherwise
    for ts in ALL_TYPES_N6:
        d = build(ts)
        t = d.type
        for m in range(1, 13):
            mult, _ = imag_mult(d, m)
            if m % d.ktilde == 0:
                assert mult == d.n, (ts, m)
            else:
                assert mult == (t.tilde_n - d.n) // (t.twist - 1), (ts, m)


def test_classify_examples():
    a22 = build("A2:2")
    assert classify_root(a22, (1, 4)) == "real"          # delta + 2 alpha_1
    assert classify_root(a22, (3, 6)) == "imaginary"     # 3 delta
    assert classify_root(a22, (2, 6)) == "not-a-root"    # 2 delta + 2 alpha_1
    d43 = build("D4:3")
    delta_plus_a2 = tuple(x + y for x, y in zip(d43.delta, d43.alpha(2)))
    assert classify_root(d43, delta_plus_a2) == "not-a-root"
    three_delta_a2 = tuple(3 * x + y for x, y in zip(d43.delta, d43.alpha(2)))
    assert classify_root(d43, three_delta_a2) == "real"


def orbit_box_reals(datum, bound, slack=3):
    """Real roots via simple-reflection closure inside a padded box."""
    big = bound * slack
    seen = set(datum.alpha(i) for i in datum.index_set)
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for i in datum.index_set:
                pair = sum(datum.a[i][j] * v[j]
                           for j in datum.index_set if v[j])
                w = tuple(v[j] - (pair if j == i else 0)
                          for j in datum.index_set)
                if w not in seen and all(abs(c) <= big for c in w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return set(v for v in seen if all(abs(c) <= bound for c in v))


@pytest.mark.parametrize("ts", ["A2:2", "A4:2", "A5:2", "C2:1", "A3:1",
                                "D3:2", "D4:3", "E6:2", "G2:1", "B3:1"])
def test_classify_agrees_with_orbit(ts):
    datum = build(ts)
    bound = 6 if datum.n <= 2 else 4
    reals = orbit_box_reals(datum, bound)
    from itertools import product
    rng = range(-bound, bound + 1)
    for v in product(rng, repeat=datum.n + 1):
        got = classify_root(datum, v)
        if v in reals:
            assert got == "real", (ts, v)
        elif got == "real":
            assert False, ("claimed real not in orbit", ts, v)
        m, fin = datum.decompose(v)
        if all(c == 0 for c in fin) and m != 0:
            assert got == "imaginary"
