from functools import lru_cache

import pytest

from cmauslander.pipeline import assemble_transfer, cm_data
from cmauslander.report import tilting_document, transfer_document, verify_document
from cmauslander.samples import a2_tilting, t2_tilting
from cmauslander.textio import FormatError, load_complex
from cmauslander.tilt import verify_generation, verify_orthogonality
from helpers import data


@lru_cache(maxsize=None)
def document(which, seed=0):
    s = {"a2": a2_tilting, "t2": t2_tilting}[which]()
    cm = cm_data(s.algebra, s.gproj, seed=seed)
    rep = assemble_transfer(cm, s.delta, seed=seed)
    assert rep.certified
    return transfer_document(rep, s.algebra, s.gproj)


def _replace_line(text, prefix, fn):
    lines = text.splitlines()
    k = next(i for i, l in enumerate(lines) if l.startswith(prefix))
    lines[k] = fn(lines[k])
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("which", ["a2", "t2"])
def test_fresh_transfer_document_replays(which):
    v = verify_document(document(which))
    assert v.kind == "cm-transfer"
    assert v.claimed == "certified"
    assert v.passed, v.first_failure
    names = [n for n, _, _ in v.checks]
    for want in ("lambda_is_end", "orthogonality", "generation", "natural_chain_maps",
                 "natural_multiplicative", "natural_injective", "dimensions_equal"):
        assert want in names


def test_other_seed_still_replays():
    v = verify_document(document("t2", seed=5))
    assert v.passed, v.first_failure


def _flip_last_entry(line):
    head, body = line.rsplit(" ", 1)
    return f"{head} {0 if body != '0' else 1}"


def test_flipped_natural_matrix_entry_is_caught():
    bad = _replace_line(document("a2"), "natural_matrix", _flip_last_entry)
    v = verify_document(bad)
    assert not v.passed
    assert v.first_failure[0] == "natural_chain_maps"


def test_flipped_chain_map_entry_is_caught():
    text = document("t2")
    lines = text.splitlines()
    k = next(i for i, l in enumerate(lines) if l.startswith("comp ") and len(l.split()) > 3)
    lines[k] = _flip_last_entry(lines[k])
    v = verify_document("\n".join(lines) + "\n")
    assert not v.passed
    assert v.first_failure[0] == "natural_chain_maps"


def test_dropped_goal_is_caught():
    text = document("a2")
    lines = [l for l in text.splitlines() if not l.startswith("goal 1 ")]
    v = verify_document("\n".join(lines) + "\n")
    assert v.first_failure[0] == "generation"


def test_missing_natural_table_is_caught():
    text = document("a2")
    lines = [l for l in text.splitlines() if not l.startswith(("natural", "comp"))]
    v = verify_document("\n".join(lines) + "\n")
    assert v.first_failure[0] == "natural_map"


def test_document_without_source_skips_lambda_check():
    text = document("t2")
    out, skip = [], False
    for l in text.splitlines():
        if l in ("source begin", "gproj begin"):
            skip = True
        if not skip:
            out.append(l)
        if skip and l == "end":
            skip = False
    v0 = verify_document("\n".join(out) + "\n")
    assert v0.passed
    assert "lambda_is_end" not in [n for n, _, _ in v0.checks]


def test_unknown_report_kind():
    with pytest.raises(FormatError):
        verify_document("report nothing\n")
    with pytest.raises(FormatError):
        verify_document("status certified\n")


def test_tilting_document_round_trip():
    t = load_complex(data("a2_tilting.cpx"))
    res = verify_generation(t)
    doc = tilting_document(t, res, verify_orthogonality(t))
    v = verify_document(doc)
    assert v.kind == "tilting"
    assert v.passed


def test_tilting_document_without_certificate_fails_its_claim():
    t = load_complex(data("a2_tilting.cpx"))
    res = verify_generation(t)
    doc = tilting_document(t, res)
    lines = doc.splitlines()
    out, skip = [], False
    for l in lines:
        if l == "certificate begin":
            skip = True
        if not skip:
            out.append(l)
        if skip and l == "end":
            skip = False
    v = verify_document("\n".join(out) + "\n")
    assert not v.passed
    assert v.first_failure[0] == "certificate"


def test_scaled_lambda_product_is_caught():
    lines = document("t2").splitlines()
    start = lines.index("lambda begin")
    # the first product of two idempotents is e1 e1 = e1; doubling it breaks the table
    k = next(i for i in range(start, len(lines)) if lines[i] == "product 1 1 = 1*1")
    lines[k] = "product 1 1 = 2*1"
    try:
        caught = not verify_document("\n".join(lines) + "\n").passed
    except FormatError:
        caught = True
    assert caught
