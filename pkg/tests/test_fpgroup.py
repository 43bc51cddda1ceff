import json

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from qhdkit.fpgroup import (
    BoundExceeded,
    NotEliminable,
    PermutationModel,
    Presentation,
    RelatorCertificate,
    Word,
    WordSyntaxError,
    abelian_invariants,
    b23_presentation,
    check_relator_certificate,
    commutator,
    coset_enumerate,
    cyclic_reduce,
    cyclic_relators,
    generated_order,
    group_order,
    is_cyclic_conjugate,
    quotient_by_normal_closure,
    tietze_eliminate,
    verify_homomorphism,
)
from qhdkit.snf import cokernel_invariants, integer_det, smith_diagonal

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14)


# words


def test_free_reduction():
    assert Word([1, 2, -2, -1, 3]) == Word([3])
    assert Word.gen(0, 3) * Word.gen(0, -3) == Word()
    assert ~Word([1, 2]) == Word([-2, -1])


@given(letters, letters)
def test_word_group_laws(a, b):
    u, v = Word(a), Word(b)
    assert u * ~u == Word()
    assert ~(u * v) == ~v * ~u
    assert u ** 3 == u * u * u


@given(letters)
def test_cyclic_reduce_is_conjugate(a):
    w = Word(a)
    c = cyclic_reduce(w)
    assert len(c) <= len(w)
    assert is_cyclic_conjugate(cyclic_reduce(Word([2]) * w * Word([-2])), c)


def test_commutator_nesting():
    a, b, c = (Word.gen(i) for i in range(3))
    assert commutator(a, b) == a * b * ~a * ~b
    assert commutator(a, b, c) == commutator(a, commutator(b, c))


def test_cyclic_relators_rotations():
    a, b, c = (Word.gen(i) for i in range(3))
    rels = cyclic_relators([a, b, c])
    # abc = bca = cab
    assert len(rels) == 2
    assert a * b * c * ~(b * c * a) in rels


# parsing


def test_parse_and_format_round_trip():
    p = Presentation.parse(("a", "l"), ("a^6", "l^2*a^-3", "l*a*l^-1*a^5"))
    assert p.fmt(p.relators[1]) == "l^2*a^-3"
    assert p.word("[a,l]") == p.word("a*l*a^-1*l^-1")
    assert p.word("a^l") == p.word("l^-1*a*l")
    assert p.fmt(Word()) == "1"


def test_parse_errors():
    p = Presentation.parse(("a",), ())
    with pytest.raises(WordSyntaxError):
        p.word("a*b")
    with pytest.raises(WordSyntaxError):
        p.word("a^")


def test_presentation_json_round_trip(tmp_path):
    p = b23_presentation(1)
    path = tmp_path / "p.json"
    path.write_text(p.dumps())
    assert Presentation.load(path) == p
    assert json.loads(p.dumps())["gens"] == ["a", "l"]


# coset enumeration


@pytest.mark.parametrize("rels,order", [
    (["x^5"], 5),
    (["x^2", "y^3", "(x*y)^3"], 12),
    (["x^2", "y^3", "(x*y)^4"], 24),
    (["x^2", "y^3", "(x*y)^5"], 60),
    (["x^4", "x^2*y^-2", "y*x*y^-1*x"], 8),
])
def test_known_orders(rels, order):
    names = ("x", "y") if any("y" in r for r in rels) else ("x",)
    assert group_order(Presentation.parse(names, rels)) == order


def test_infinite_group_is_unknown():
    p = Presentation.parse(("x", "y"), ["[x,y]"])
    assert group_order(p, max_cosets=500) is None
    with pytest.raises(BoundExceeded):
        coset_enumerate(p, (), max_cosets=500)


def test_subgroup_index_and_lagrange():
    p = Presentation.parse(("x", "y"), ["x^2", "y^3", "(x*y)^5"])
    t = coset_enumerate(p, [p.word("y")])
    assert t.index == 20
    assert group_order(p) % t.index == 0
    # generator permutations really are permutations
    for perm in t.generator_permutations():
        assert sorted(perm) == list(range(t.index))


@pytest.mark.parametrize("p", range(5))
def test_b23_presentation(p):
    g = b23_presentation(p)
    assert group_order(g) == 4 * (p + 2) * (p + 3)
    assert coset_enumerate(g, [g.word("a")]).index == 2
    ab = abelian_invariants(g)
    assert ab == {0: [2, 6], 1: [16], 2: [2, 10], 3: [24], 4: [2, 14]}[p]


# abelianization and the sympy oracle


def _sympy_invariants(rows, ncols):
    if not rows:
        return [0] * ncols
    d = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    nz = [x for x in diag if x]
    return [x for x in nz if x > 1] + [0] * (ncols - len(nz))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_sympy(nrows, ncols, data):
    rows = [[data.draw(st.integers(-9, 9)) for _ in range(ncols)] for _ in range(nrows)]
    assert cokernel_invariants(rows, ncols) == _sympy_invariants(rows, ncols)


def test_smith_divisibility_and_det():
    d = smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert d == [2, 6, 12]
    assert integer_det([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == -144


def test_abelian_invariants_examples():
    assert abelian_invariants(Presentation.parse(("x", "y"), [])) == [0, 0]
    assert abelian_invariants(Presentation.parse(("x", "y"), ["x^4", "y^6", "[x,y]"])) == [2, 12]


# Tietze moves and certificates


def test_tietze_eliminate():
    p = Presentation.parse(("q", "c", "f"), ["[q,(q*c)^3]", "[f,q*c*q^-1]", "f*q*c^-1*q*c"])
    r = tietze_eliminate(p, "f", 2)
    assert r.names == ("q", "c")
    assert len(r.relators) == 2
    with pytest.raises(NotEliminable):
        tietze_eliminate(p, "f", 0)


def test_certificate_checking():
    p = Presentation.parse(("x", "y"), ["x*y*x^-1*y^-1"])
    target = p.word("y*x*y^-1*x^-1")
    cert = RelatorCertificate(((0, -1, Word()),))
    assert check_relator_certificate(p, target, cert)
    assert not check_relator_certificate(p, p.word("x"), cert)
    assert not check_relator_certificate(p, target, RelatorCertificate(((3, 1, Word()),)))
    assert RelatorCertificate.from_dict(cert.to_dict(p), p) == cert


def test_homomorphism_check():
    # S3 = <x, y | x^2, y^3, (xy)^2> onto Z/2
    s3 = Presentation.parse(("x", "y"), ["x^2", "y^3", "(x*y)^2"])
    c2 = PermutationModel.from_presentation(Presentation.parse(("t",), ["t^2"]))
    assert verify_homomorphism(s3, [Word.gen(0), Word()], c2)
    assert not verify_homomorphism(s3, [Word(), Word.gen(0)], c2)
    s3m = PermutationModel.from_presentation(s3)
    assert s3m.order == 6
    assert generated_order(s3m, [s3m.evaluate(Word.gen(1))]) == 3


def test_quotient_by_normal_closure():
    p = Presentation.parse(("x", "y"), ["x^2", "y^3", "(x*y)^5"])
    assert group_order(quotient_by_normal_closure(p, [p.word("x")])) == 1
