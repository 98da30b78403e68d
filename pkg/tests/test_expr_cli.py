"""Expression language, order-type ingestion, search harness, CLI surface."""

import json
import random
import struct

import pytest

from chirotri import (EvalMode, ExprSyntaxError, GeneralPositionViolation,
                      MalformedFile, RootedChirotope, TooLarge, brute_Q,
                      chi1, chirotope_from_points, convex,
                      count_triangulations, eval_expr, iter_order_types,
                      koch_variant_search, meet, meet_P, parse_expr,
                      print_expr, q_from_p, rank_candidates, read_order_types,
                      seed_score, serialize_order_types, write_chi)
from chirotri.cli import run_cli
from chirotri.expr import Atom, Join, Meet, Twist
from chirotri.oracle import brute_P

from helpers import catalan, random_point_set


# -- parsing -----------------------------------------------------------------


def test_parse_examples():
    assert parse_expr("join(triangle, triangle)") == Join(Atom("triangle"),
                                                          Atom("triangle"))
    tree = parse_expr("(koch(2) v koch(2)) ^ (koch(2) v koch(2))")
    piece = Join(Atom("koch", (2,)), Atom("koch", (2,)))
    assert tree == Meet(piece, piece)
    assert parse_expr("twist(chi1)") == Twist(Atom("chi1"))
    assert parse_expr('load("a.chi", 3)') == Atom("load", ("a.chi", 3))


def test_parse_errors():
    with pytest.raises(ExprSyntaxError):
        parse_expr("meet(triangle)")
    with pytest.raises(ExprSyntaxError):
        parse_expr("twist(triangle, triangle)")
    with pytest.raises(ExprSyntaxError):
        parse_expr("unknownthing(3)")
    with pytest.raises(ExprSyntaxError):
        parse_expr("convex()")
    with pytest.raises(ExprSyntaxError):
        parse_expr("triangle v triangle ^ triangle")
    with pytest.raises(ExprSyntaxError):
        parse_expr("join(triangle,, triangle)")
    err = None
    try:
        parse_expr("join(triangle,\n  %")
    except ExprSyntaxError as exc:
        err = exc
    assert err is not None and err.line == 2 and err.col == 3


def test_print_roundtrip():
    sources = [
        "join(triangle, triangle)",
        "(koch(2) v koch(2)) ^ (koch(2) v koch(2))",
        "twist(flip(meet(convex(5), chik(2))))",
        'load("x.pts", 0)',
        "join(triangle, triangle, chi1)",
    ]
    for src in sources:
        tree = parse_expr(src)
        assert parse_expr(print_expr(tree)) == tree


def test_infix_matches_calls():
    assert parse_expr("triangle v triangle") == parse_expr("join(triangle, triangle)")
    assert parse_expr("triangle ^ triangle") == parse_expr("meet(triangle, triangle)")
    # left associativity
    assert parse_expr("triangle v triangle v chi1") == \
        parse_expr("join(join(triangle, triangle), chi1)")


# -- evaluation ---------------------------------------------------------------


def test_eval_meet_example_both_modes():
    rc = eval_expr(parse_expr("meet(triangle, triangle)"), EvalMode.MATERIALIZE)
    assert brute_Q(rc)(1) == 1
    p = eval_expr(parse_expr("meet(triangle, triangle)"), EvalMode.POLYNOMIAL)
    assert q_from_p(p).terms() == [(3, 1)]


def test_mode_agreement():
    rng = random.Random(127)
    exprs = ["convex(6)", "chik(2)", "koch(2)", "join(triangle, convex(4))",
             "meet(convex(4), chi1)", "twist(chik(2))", "flip(koch(2))",
             "(triangle v triangle) ^ triangle", "dc(4)"]
    for src in exprs:
        tree = parse_expr(src)
        rc = eval_expr(tree, EvalMode.MATERIALIZE)
        p = eval_expr(tree, EvalMode.POLYNOMIAL)
        assert q_from_p(p) == brute_Q(rc), src


def test_materialize_cap_handoff():
    with pytest.raises(TooLarge) as exc:
        eval_expr(parse_expr("koch(4)"), EvalMode.MATERIALIZE)
    assert "polynomial" in str(exc.value)
    # polynomial mode reaches the same expression fine
    p = eval_expr(parse_expr("koch(4)"), EvalMode.POLYNOMIAL)
    assert p(1, 1) > 0


def test_polynomial_mode_expands_generators():
    p = eval_expr(parse_expr("convex(14)"), EvalMode.POLYNOMIAL)
    assert q_from_p(p)(1) == catalan(12)


def test_load_atom(tmp_path):
    path = tmp_path / "c5.chi"
    path.write_text(write_chi(convex(5).chi, 0))
    rc = eval_expr(parse_expr(f'load("{path}")'), EvalMode.MATERIALIZE)
    assert rc.chi.n == 5 and rc.root == 0
    rc2 = eval_expr(parse_expr(f'load("{path}", 2)'), EvalMode.MATERIALIZE)
    assert rc2.root == 2


# -- order type database -------------------------------------------------------


def _pack8(recs):
    return b"".join(struct.pack("<" + "B" * (2 * len(r)), *[v for p in r for v in p])
                    for r in recs)


def test_read_order_types_synthetic():
    recs = [((0, 0), (255, 0), (0, 255), (90, 90)),
            ((0, 0), (10, 0), (0, 10), (3, 4)),
            ((1, 1), (20, 3), (5, 17), (9, 9))]
    data = _pack8(recs)
    records = list(iter_order_types(data, 4, 8))
    assert len(records) == 3
    assert records[0].coords == recs[0]
    assert [r.index for r in records] == [0, 1, 2]
    ps = records[0].point_set()
    chirotope_from_points(ps)  # valid general position


def test_read_order_types_rejects_truncated():
    data = _pack8([((0, 0), (255, 0), (0, 255), (90, 90))])
    with pytest.raises(MalformedFile):
        list(iter_order_types(data[:-1], 4, 8))


def test_read_order_types_collinear_handling():
    recs = [((0, 0), (255, 0), (0, 255), (90, 90)),
            ((0, 0), (1, 1), (2, 2), (5, 0))]
    data = _pack8(recs)
    with pytest.raises(GeneralPositionViolation):
        list(iter_order_types(data, 4, 8))
    skipped = []
    records = list(iter_order_types(data, 4, 8, lenient=True, skipped=skipped))
    assert len(records) == 1 and skipped == [1]


def test_order_types_roundtrip_16bit(tmp_path):
    rng = random.Random(131)
    recs = []
    while len(recs) < 2:
        ps = random_point_set(9, rng, span=700)
        recs.append(tuple((int(x), int(y)) for x, y in ps))
    data = b"".join(struct.pack("<18H", *[v for p in r for v in p]) for r in recs)
    path = tmp_path / "db9.bin"
    path.write_bytes(data)
    records, skipped = read_order_types(path, 9)  # defaults to 16-bit here
    assert not skipped and len(records) == 2
    assert serialize_order_types(records) == data


# -- search harness -------------------------------------------------------------


def test_seed_score_count_metric_matches_oracle():
    # level-4 stage from a small seed is a self-meet; count it both ways
    seed = chi1()
    combined, _ = meet(seed, seed)
    expected = count_triangulations(combined.chi)
    assert seed_score(seed, levels=4, metric="count") == expected
    # weak metric equals the merged polynomial total
    assert seed_score(seed, levels=4, metric="weak") == \
        meet_P(brute_P(seed), brute_P(seed))(1, 1)


def test_search_single_record():
    pts = ((0, 0), (40, 3), (23, 30), (17, 12))
    data = _pack8([pts])
    records = list(iter_order_types(data, 4, 8))
    rows, notes = koch_variant_search(records, levels=4, metric="weak")
    chi = chirotope_from_points(records[0].point_set())
    assert len(rows) == len(chi.extreme_elements())
    assert not notes
    assert all(r.record == 0 for r in rows)
    scores = [r.score for r in rows]
    assert scores == sorted(scores, reverse=True)


def test_search_skips_non_extreme_roots():
    pts = ((0, 0), (40, 3), (23, 30), (17, 12))
    records = list(iter_order_types(_pack8([pts]), 4, 8))
    chi = chirotope_from_points(records[0].point_set())
    interior = next(x for x in range(4) if x not in chi.extreme_elements())
    rows, notes = koch_variant_search(records, levels=4, roots=[0, interior])
    assert len(rows) == 1 and len(notes) == 1
    assert "not extreme" in notes[0]


def test_rank_determinism_across_threads():
    cands = [("a", 0, convex(6)), ("b", 0, chi1()),
             ("c", 2, RootedChirotope(convex(3).chi, 2))]
    base = rank_candidates(cands, levels=5, metric="weak", threads=1)
    for threads in (2, 4):
        assert rank_candidates(cands, levels=5, metric="weak",
                               threads=threads) == base


# -- CLI -----------------------------------------------------------------------


def test_cli_count(capsys):
    assert run_cli(["count", "convex(7)", "--method", "brute"]) == 0
    assert capsys.readouterr().out.strip() == "42"
    assert run_cli(["count", "convex(7)", "--method", "poly"]) == 0
    assert capsys.readouterr().out.strip() == "42"
    assert run_cli(["count", "koch(3)", "--drop-root"]) == 0
    assert capsys.readouterr().out.strip() == "424"


def test_cli_poly(capsys):
    assert run_cli(["poly", "chik(2)", "--which", "Q"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"terms": [[2, "2"], [3, "2"], [4, "1"], [5, "1"]]}


def test_cli_dc_table(capsys):
    assert run_cli(["dc-table", "--kmax", "5"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "k,exact,estimate,ratio"
    assert lines[-1].startswith("5,250,")
    assert run_cli(["dc-table", "--kmax", "4", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[-1]["exact"] == "30"


def test_cli_kernel_report(capsys):
    assert run_cli(["kernel-report", "--x", "1/20", "--terms", "60"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) == {"x", "u1", "u2", "F_closed", "F_series",
                         "dF_closed", "dF_series", "residuals"}
    assert data["x"] == "1/20"
    assert float(data["residuals"]["F"]) < 1e-10


def test_cli_axioms(tmp_path, capsys):
    path = tmp_path / "c5.chi"
    path.write_text(write_chi(convex(5).chi))
    assert run_cli(["axioms", str(path)]) == 0
    assert "ok" in capsys.readouterr().out
    # flip the sign of the (1,2,4) triple; consecutive-vertex flips would
    # still describe a realizable order type and pass the scan
    bad = write_chi(convex(5).chi).replace("++++++++++", "+++++++-++")
    path.write_text(bad)
    assert run_cli(["axioms", str(path)]) == 1
    assert "violations" in capsys.readouterr().out


def test_cli_search(tmp_path, capsys):
    pts = ((0, 0), (40, 3), (23, 30), (17, 12))
    path = tmp_path / "db.bin"
    path.write_bytes(_pack8([pts]))
    assert run_cli(["search", "--db", str(path), "--n", "4", "--width", "8",
                    "--levels", "4", "--top", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "record,root,score"
    assert len(lines) == 3


def test_cli_exit_codes(capsys):
    assert run_cli(["count", "nonsense("]) == 1
    assert run_cli(["no-such-command"]) == 2
    assert run_cli(["--help"]) == 0
    capsys.readouterr()


def test_cli_output_determinism(capsys):
    run_cli(["dc-table", "--kmax", "6"])
    first = capsys.readouterr().out
    run_cli(["dc-table", "--kmax", "6"])
    assert capsys.readouterr().out == first
    run_cli(["kernel-report", "--x", "1/30", "--terms", "40"])
    first = capsys.readouterr().out
    run_cli(["kernel-report", "--x", "1/30", "--terms", "40"])
    assert capsys.readouterr().out == first


def test_cli_count_file_input(tmp_path, capsys):
    path = tmp_path / "c6.chi"
    path.write_text(write_chi(convex(6).chi, 0))
    assert run_cli(["count", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "14"
