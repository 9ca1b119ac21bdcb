import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfull import cli
from mfull.cli import (CharacteristicGuard, DegreeCap, DocumentError, document_of, format_document,
                       main, parse_document, random_graded_ideal, random_instance,
                       random_monomial_ideal, random_stable_ideal, stable_closure, verify)
from mfull.field import Rng
from mfull.ideal_ops import Ideal, NonHomogeneousGenerator
from mfull.monomial import MonomialIdeal
from mfull.poly import PolyRing, Polynomial, exponents_of_degree

CI_DOC = "ring F32003 [x, y]\nideal\nx^2\ny^2\n"
M2_DOC = "ring F32003 [x, y]\nideal\nx^2\nx*y\ny^2\n"


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def doc_file(tmp_path):
    def make(text):
        p = tmp_path / "ideal.txt"
        p.write_text(text)
        return str(p)
    return make


# -- parsing ----------------------------------------------------------------

def test_parse_example():
    doc = parse_document(CI_DOC)
    R = doc.ring
    x, y = R.gens()
    assert R.n == 2 and R.p == 32003 and list(R.names) == ["x", "y"]
    assert doc.ideal().equals(Ideal(R, [x * x, y * y]))
    assert doc.lines == [3, 4]


def test_parse_comments_and_whitespace():
    text = "# header comment\n  ring  F 1009 [ a ,b ]  \n\nideal # sep\n 2 a*b - b^2 # gen\n\n"
    doc = parse_document(text)
    a, b = doc.ring.gens()
    assert doc.generators == [2 * a * b - b * b]


def test_parse_errors():
    with pytest.raises(NonHomogeneousGenerator):
        parse_document("ring F32003 [x, y]\nideal\nx^2 + x\n")
    with pytest.raises(DocumentError) as e:
        parse_document("ring F32003 [x, y]\nideal\nx^2 + z^2\n")
    assert e.value.line == 3 and "unknown variable" in str(e.value)
    with pytest.raises(DocumentError) as e:
        parse_document("ring F32003 [x, y]\nideal\nx^2 +* y^2\n")
    assert e.value.line == 3 and e.value.column is not None
    with pytest.raises(DocumentError) as e:
        parse_document("ring Q [x]\nideal\nx\n")
    assert e.value.line == 1
    with pytest.raises(DocumentError):
        parse_document("ring F32003 [x, y]\nx\n")
    with pytest.raises(DocumentError):
        parse_document("ring F32003 [x, x]\nideal\n")
    with pytest.raises(DocumentError):
        parse_document("ring F32004 [x]\nideal\nx\n")
    with pytest.raises(DocumentError):
        parse_document("")


def test_characteristic_guard():
    with pytest.raises(CharacteristicGuard):
        parse_document("ring F7 [x]\nideal\nx^200\n")
    # degree 1 is also too large for p = 7 under the p/100 guard
    with pytest.raises(CharacteristicGuard):
        parse_document("ring F7 [x]\nideal\nx\n")
    assert parse_document("ring F101 [x]\nideal\nx\n").generators


def test_degree_cap():
    with pytest.raises(DegreeCap):
        parse_document("ring F32003 [x]\nideal\nx^13\n")
    assert parse_document("ring F32003 [x]\nideal\nx^13\n", max_degree=13).generators


def test_field_override():
    doc = parse_document("ring F7 [x, y]\nideal\nx*y\n", field_override=32003)
    assert doc.ring.p == 32003


@settings(max_examples=1000)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**9),
       st.sampled_from([101, 1009, 32003, 65521]))
def test_round_trip(n, k, d, seed, p):
    rng = Rng(seed)
    names = ["v%d" % i for i in range(n)] if seed % 2 else None
    I = random_graded_ideal(rng, n, k, 1, min(d, p // 100), p)
    if names:
        R = PolyRing(n, p, names)
        I = Ideal(R, [Polynomial(R, dict(g.terms)) for g in I.gens])
    doc = document_of(I)
    again = parse_document(format_document(doc))
    assert again == doc
    assert format_document(again) == format_document(doc)


# -- random instances ---------------------------------------------------------

@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 10**6))
def test_random_graded_ideal_contract(n, k, lo, span, seed):
    I = random_graded_ideal(Rng(seed), n, k, lo, lo + span - 1)
    assert len(I.gens) == k
    for g in I.gens:
        assert g.is_homogeneous() and lo <= g.degree() <= lo + span - 1


@settings(max_examples=100)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_random_stable_is_stable(n, k, d, seed):
    M = random_stable_ideal(Rng(seed), n, k, d)
    assert M.is_stable() and M.is_stable_exhaustive(d + 2)
    N = random_monomial_ideal(Rng(seed), n, k, d)
    assert all(1 <= sum(g) <= d for g in N.gens)


def test_stable_closure_example():
    M = stable_closure(2, [(0, 3)])
    assert M == MonomialIdeal(2, list(exponents_of_degree(2, 3)))
    assert stable_closure(3, [(1, 0, 0)]) == MonomialIdeal(3, [(1, 0, 0)])


def test_random_instance_kinds():
    for kind in cli.KINDS:
        I = random_instance(Rng(3), kind, 3, 4, 3, 32003)
        assert I.ring.n == 3
        if kind in ("monomial", "stable"):
            assert all(len(g.terms) == 1 for g in I.gens)
        if kind == "stable":
            assert I.lead.is_stable()
    with pytest.raises(ValueError):
        random_instance(Rng(3), "bogus", 3, 4, 3, 32003)


# -- commands -----------------------------------------------------------------

def test_analyze_golden(capsys, doc_file):
    code, out, _ = run(capsys, ["analyze", "--json", doc_file(CI_DOC)])
    assert code == 0
    d = json.loads(out)
    assert d["ring"] == {"p": 32003, "vars": ["x", "y"]}
    assert d["generators"] == ["x^2", "y^2"]
    assert (d["mu"], d["t_sequence"], d["B"], d["type"]) == (2, [1, 2], 3, 1)
    assert d["completely_m_full_recursive"] is False and d["componentwise_linear"] is False
    assert d["gorenstein"] is True and d["consistent"] is True
    assert [1, 2, 2] in d["betti"] and [2, 4, 1] in d["betti"]
    assert d["gin"] == ["x^2", "x*y", "y^3"]


def test_analyze_plain_text(capsys, doc_file):
    code, out, _ = run(capsys, ["analyze", doc_file(M2_DOC)])
    assert code == 0
    assert "componentwise_linear        : True" in out
    assert "t_sequence                  : 1, 2" in out


def test_gin_golden(capsys, doc_file):
    code, out, _ = run(capsys, ["gin", "--json", doc_file(M2_DOC)])
    d = json.loads(out)
    assert code == 0 and d["gin"] == ["x^2", "x*y", "y^2"] and d["agreement"] is True
    code, out, _ = run(capsys, ["gin", doc_file(M2_DOC)])
    assert "gin       : x^2, x*y, y^2" in out and "agreement : True" in out


def test_betti_golden(capsys, doc_file):
    code, out, _ = run(capsys, ["betti", doc_file(CI_DOC)])
    assert code == 0
    assert "beta_1,2 = 2" in out and "beta_2,4 = 1" in out
    code, out, _ = run(capsys, ["betti", "--json", doc_file(CI_DOC)])
    assert json.loads(out)["betti"] == [[0, 0, 1], [1, 2, 2], [2, 4, 1]]


def test_gb_and_hilbert(capsys, doc_file):
    code, out, _ = run(capsys, ["gb", "--json", doc_file("ring F32003 [x, y]\nideal\nx^2-y^2\nx*y\n")])
    assert code == 0 and sorted(json.loads(out)["groebner_basis"]) == ["x*y", "x^2 - y^2", "y^3"]
    code, out, _ = run(capsys, ["hilbert", "--json", "--upto", "4", doc_file(CI_DOC)])
    d = json.loads(out)
    assert d["values"] == [1, 2, 1, 0, 0] and d["numerator"] == [1, 0, -2, 0, 1]


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = run(capsys, ["gb", "-"], stdin=CI_DOC, monkeypatch=monkeypatch)
    assert code == 0 and set(out.split()) == {"x^2", "y^2"}


def test_usage_errors_exit_1(capsys, doc_file):
    assert run(capsys, ["verify", "--trials", "0"])[0] == 1
    assert run(capsys, ["analyze", doc_file("ring F32003 [x]\nideal\nx + x^2\n")])[0] == 1
    assert run(capsys, ["analyze", doc_file("ring F7 [x]\nideal\nx^200\n")])[0] == 1
    assert run(capsys, ["analyze", "/nonexistent/file"])[0] == 1
    assert run(capsys, ["analyze", doc_file("ring F32003 [x]\nideal\n1\n")])[0] == 1
    assert run(capsys, ["analyze", "--trials", "1", doc_file(CI_DOC)])[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    code, _, err = run(capsys, ["gb", doc_file("ring F32003 [x, y]\nideal\nx^2 + q\n")])
    assert code == 1 and "line 3" in err


def test_inconsistency_exits_2(capsys, doc_file, monkeypatch):
    real = cli.analyze

    def tampered(*args, **kwargs):
        rep = real(*args, **kwargs)
        rep.consistent = False
        return rep
    monkeypatch.setattr(cli, "analyze", tampered)
    assert run(capsys, ["analyze", doc_file(CI_DOC)])[0] == 2


def test_json_determinism(capsys, doc_file):
    path = doc_file("ring F32003 [x, y, z]\nideal\nx^2 + y*z\nx*y - z^2\ny^3\n")
    for cmd in ("analyze", "gin", "betti", "gb", "hilbert"):
        a = run(capsys, [cmd, "--json", "--seed", "5", path])[1]
        b = run(capsys, [cmd, "--json", "--seed", "5", path])[1]
        assert a == b


# -- verify -------------------------------------------------------------------

def test_verify_small_run_and_determinism(capsys):
    s = verify(7, 12, ns=(2, 3), max_gens=3, max_deg=3)
    assert s.failures == []
    assert sum(s.to_json_dict()["kinds"].values()) == 12
    t = verify(7, 12, ns=(2, 3), max_gens=3, max_deg=3)
    assert json.dumps(s.to_json_dict()) == json.dumps(t.to_json_dict())
    args = ["verify", "--json", "--seed", "7", "--trials", "6", "--n", "2", "3",
            "--max-gens", "3", "--max-gen-degree", "3"]
    code, a, _ = run(capsys, args)
    assert code == 0
    assert run(capsys, args)[1] == a
    assert json.loads(a)["failures"] == []


def test_verify_parallel_matches_serial():
    a = verify(3, 6, ns=(2, 3), max_gens=3, max_deg=3)
    b = verify(3, 6, ns=(2, 3), max_gens=3, max_deg=3, jobs=2)
    assert a.to_json_dict() == b.to_json_dict()


def test_verify_reports_failures(monkeypatch):
    real = cli._instance_checks

    def broken(*args, **kwargs):
        c = real(*args, **kwargs)
        c["mu_le_B"] = False
        return c
    monkeypatch.setattr(cli, "_instance_checks", broken)
    s = verify(1, 2, ns=(2,), max_gens=2, max_deg=2)
    assert len(s.failures) == 2
    f = s.to_json_dict()["failures"][0]
    assert f["failed"] == ["mu_le_B"] and f["document"].startswith("ring F32003")
    assert all(r.retried for r in s.results)
    with pytest.raises(ValueError):
        verify(1, 0)
