import json
import subprocess
import sys

import pytest

from dblkit import dsl, zoo
from dblkit.cli import main
from dblkit.dsl import Declaration, ParseError, parse, serialize
from dblkit.kernel import check_double_category

BASE_DOC = """
fincategory Walk {
  objects X Y
  mor f : X -> Y
}

twocategory Arrow {
  objects P Q
  onecell a : P -> Q
}

twocategory TwoCell {
  objects P Q
  onecell a : P -> Q
  onecell b : P -> Q
  twocell s : a => b
}

tensor AB {
  left Arrow
  right TwoCell
  cap 4
}
"""


def write_doc(tmp_path, text=BASE_DOC, name="doc.dbl"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_empty_document():
    doc = parse("")
    assert doc.order == []
    assert serialize(doc) == ""


def test_parse_serialize_fixpoint(tmp_path):
    doc = parse(BASE_DOC)
    text = serialize(doc)
    doc2 = parse(text)
    assert serialize(doc2) == text


def test_lexical_error_position():
    with pytest.raises(ParseError) as err:
        parse("category X {\n  hcell f missing arrow\n}")
    assert err.value.line == 2


def test_resolution_error_position():
    with pytest.raises(ParseError) as err:
        parse("functor F : Nowhere -> Nowhere {\n}")
    assert err.value.line == 1
    assert "Nowhere" in str(err.value)


def test_forward_reference_rejected():
    text = """
functor F : D -> D {
}
category D {
  objects A
}
"""
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "unresolved reference" in str(err.value)


def test_duplicate_names_rejected():
    with pytest.raises(ParseError):
        parse("fincategory A {\n  objects X\n}\nfincategory A {\n  objects X\n}\n")


def test_construct_quintet_and_check(tmp_path):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    assert main(["construct", doc_path, "quintet", "Walk", "--as", "WalkSq", "-o", out]) == 0
    assert main(["check", out, "WalkSq"]) == 0
    doc = parse(open(out).read())
    assert check_double_category(doc.decls["WalkSq"].obj).passed


def test_construct_chain(tmp_path):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    assert main(["construct", doc_path, "quintet", "Walk", "--as", "Q", "-o", out]) == 0
    assert main(["construct", out, "embed", "TwoCell", "--as", "E", "-o", out]) == 0
    assert main(["construct", out, "product", "Q", "E", "--as", "P", "-o", out]) == 0
    assert main(["construct", out, "transpose", "Q", "--as", "QT", "-o", out]) == 0
    assert main(["construct", out, "horizontal", "E", "--as", "H", "-o", out]) == 0
    for target in ("Q", "E", "P", "QT", "H"):
        assert main(["check", out, target]) == 0, target


def test_construct_pullback_with_projections(tmp_path):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    assert main(["construct", doc_path, "quintet", "Walk", "--as", "Q", "-o", out]) == 0
    # identity functor on Q, written by hand through serialization
    doc = parse(open(out).read())
    q = doc.decls["Q"]
    from dblkit.functors import identity_functor, pseudo_from_strict

    ident = pseudo_from_strict(identity_functor(q.obj))
    doc.add(Declaration("functor", "IdQ", ident, meta={"strict": True, "dom": "Q", "cod": "Q"}))
    open(out, "w").write(serialize(doc))
    assert main(["check", out, "IdQ"]) == 0
    assert main(["construct", out, "pullback", "IdQ", "IdQ", "--as", "PB", "-o", out]) == 0
    assert main(["check", out, "PB"]) == 0
    assert main(["check", out, "PB_p1"]) == 0


def test_check_bicategory_runs_all_sub_reports(tmp_path):
    doc = dsl.Document()
    doc.add(Declaration("bicategory", "Sign", zoo.sign_bicategory()))
    path = tmp_path / "b.dbl"
    path.write_text(serialize(doc))
    reparsed = parse(path.read_text())
    assert reparsed.decls["Sign"].kind == "bicategory"
    assert main(["check", str(path), "Sign"]) == 0


def _meet_doc(tmp_path):
    # the monoid's tables index into its own carrier, so the carrier must be
    # declared from the same object
    from dblkit.cli import _decl_category

    doc = parse("")
    monoid = zoo.min_monoid_in_dbl()
    doc.add(_decl_category("WalkSq", monoid.carrier))
    doc.add(Declaration("monoid", "Meet", monoid, meta={"on": "WalkSq"}))
    out = str(tmp_path / "meet.dbl")
    open(out, "w").write(serialize(doc))
    return out


def test_monoid_block_roundtrip_and_check(tmp_path):
    out = _meet_doc(tmp_path)
    text = open(out).read()
    assert serialize(parse(text)) == text
    assert main(["check", out, "WalkSq"]) == 0
    assert main(["check", out, "Meet"]) == 0


def test_construct_oast_and_monoid_internal(tmp_path):
    out = _meet_doc(tmp_path)
    assert main(["construct", out, "interleave", "Meet", "--as", "Mul", "-o", out]) == 0
    assert main(["check", out, "Mul"]) == 0
    assert main(["construct", out, "monoid-internal", "Meet", "--as", "IM", "-o", out]) == 0
    assert main(["check", out, "IM"]) == 0
    # internal bundle survives a reparse
    text = open(out).read()
    assert serialize(parse(text)) == text


def test_transformation_block_roundtrip(tmp_path):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    assert main(["construct", doc_path, "quintet", "Walk", "--as", "Q", "-o", out]) == 0
    doc = parse(open(out).read())
    q = doc.decls["Q"].obj
    from dblkit.functors import identity_functor, pseudo_from_strict
    from dblkit.transform import identity_double

    F = pseudo_from_strict(identity_functor(q))
    doc.add(Declaration("functor", "IdQ", F, meta={"strict": True, "dom": "Q", "cod": "Q"}))
    dd = identity_double(F)
    doc.add(
        Declaration(
            "transformation",
            "IdT",
            dd,
            meta={"kind": "double", "from": "IdQ", "to": "IdQ", "dom": "Q", "cod": "Q"},
        )
    )
    from dblkit.modif import identity_modification

    doc.add(
        Declaration(
            "modification",
            "IdM",
            identity_modification(dd),
            meta={"from": "IdT", "to": "IdT"},
        )
    )
    from dblkit.companion import find_connection

    doc.add(Declaration("connection", "K", find_connection(q), meta={"on": "Q"}))
    open(out, "w").write(serialize(doc))
    text = open(out).read()
    assert serialize(parse(text)) == text
    assert main(["check", out, "IdT"]) == 0
    assert main(["check", out, "IdM"]) == 0
    assert main(["check", out, "K"]) == 0


def test_cubical_view_through_cli(tmp_path):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    assert main(["construct", doc_path, "quintet", "Walk", "--as", "Q", "-o", out]) == 0
    assert main(["construct", out, "product", "Q", "Q", "--as", "P", "-o", out]) == 0
    doc = parse(open(out).read())
    from dblkit.functors import identity_functor, pseudo_from_strict

    doc.add(
        Declaration(
            "functor",
            "IdP",
            pseudo_from_strict(identity_functor(doc.decls["P"].obj)),
            meta={"strict": True, "dom": "P", "cod": "P"},
        )
    )
    open(out, "w").write(serialize(doc))
    assert main(["check", out, "IdP", "--cubical", "Q", "Q"]) == 0


def test_reports_deterministic(tmp_path, capsys):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    main(["construct", doc_path, "quintet", "Walk", "--as", "WalkSq", "-o", out])
    capsys.readouterr()
    main(["check", out, "WalkSq", "--format", "tree"])
    first = capsys.readouterr().out
    main(["check", out, "WalkSq", "--format", "tree"])
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["format_version"] == 1


def test_exit_codes(tmp_path, capsys):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    main(["construct", doc_path, "quintet", "Walk", "--as", "WalkSq", "-o", out])
    capsys.readouterr()
    assert main(["check", out, "WalkSq"]) == 0
    assert main(["check", out, "WalkSq", "--max-tuples", "5"]) == 2
    assert main(["check", out, "Missing"]) == 3
    assert main(["compare", out, "AB", "--start", "P,P", "L:a R:a", "R:a L:a"]) == 1
    assert main(["compare", out, "AB", "--start", "P,P", "--cartesian", "L:a R:a", "R:a L:a"]) == 0
    assert main(["explain", "interchange"]) == 0
    assert main(["explain", "definitely-not-an-axiom"]) == 3


def test_violations_carry_symbolic_names(tmp_path, capsys):
    doc_path = write_doc(tmp_path)
    out = str(tmp_path / "out.dbl")
    main(["construct", doc_path, "quintet", "Walk", "--as", "WalkSq", "-o", out])
    doc = parse(open(out).read())
    from dblkit.mutate import apply_mutation, mutation_slots

    q = doc.decls["WalkSq"].obj
    mutant = apply_mutation(q, mutation_slots(q)[0])
    doc.decls["WalkSq"].obj = mutant
    open(out, "w").write(serialize(doc))
    capsys.readouterr()
    code = main(["check", out, "WalkSq"])
    output = capsys.readouterr().out
    assert code == 1
    assert "violated" in output
    # witnesses name cells symbolically, not by bare index
    assert "hcell:" in output or "vcell:" in output or "square:" in output


def test_cli_entrypoint_subprocess(tmp_path):
    doc_path = write_doc(tmp_path)
    proc = subprocess.run(
        [sys.executable, "-m", "dblkit.cli", "check", doc_path, "Walk"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "pass" in proc.stdout
