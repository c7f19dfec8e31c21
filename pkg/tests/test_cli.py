import json
from importlib.resources import files

import pytest
from hypothesis import given, settings, strategies as st

from gradss import algebra as alg
from gradss.cli import chart_rows, run_command
from gradss.dsl import ParsedFile, ParseError, parse, print_file


def data_text(name):
    return (files("gradss") / "data" / name).read_text()


def test_parse_shipped_absolute_run():
    parsed = parse(data_text("brunku2_p5.ss"))
    pres = parsed.presentation
    assert [g.name for g in pres.generators] == ["u", "su", "l1", "m1"]
    assert pres.gen("u").height == 4
    assert pres.gen("u").weight == 1
    (spec,) = parsed.differentials
    assert spec.page == 7
    assert alg.element_str(pres, spec.image) == "u^3 su"


def test_parse_rejects_even_exterior():
    text = "prime 5\nmaxdeg 10\nalgebra A {\n gen x ext bideg 2 0\n}\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "even total degree" in str(err.value)
    assert err.value.line == 4


def test_parse_rejects_empty_file():
    with pytest.raises(ParseError) as err:
        parse("")
    assert "prime" in str(err.value)


def test_parse_rejects_duplicate_generator():
    text = (
        "prime 5\nmaxdeg 10\nalgebra A {\n gen x ext bideg 1 0\n"
        " gen x ext bideg 3 0\n}\n"
    )
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "duplicate" in str(err.value)


def test_parse_rejects_wrong_bidegree_differential():
    text = (
        "prime 5\nmaxdeg 30\nalgebra A {\n gen u trunc 4 bideg 0 2\n"
        " gen m poly bideg 10 0\n}\nd 7 m -> u\n"
    )
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "bidegree" in str(err.value)


def test_parse_rejects_non_prime():
    with pytest.raises(ParseError):
        parse("prime 9\nmaxdeg 10\n")


def test_round_trip_shipped_files():
    for name in ("brunku1_p5.ss", "brunku1_p7.ss", "brunku2_p5.ss", "brunku2_p7.ss"):
        parsed = parse(data_text(name))
        printed = print_file(parsed)
        again = parse(printed)
        assert again.presentation == parsed.presentation
        assert again.options == parsed.options
        assert [
            (s.page, s.source, s.image) for s in again.differentials
        ] == [(s.page, s.source, s.image) for s in parsed.differentials]
        assert print_file(again) == printed


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_round_trip_random_presentations(data):
    n_gens = data.draw(st.integers(1, 4))
    gens = []
    for i in range(n_gens):
        kind = data.draw(st.sampled_from(["poly", "ext", "trunc"]))
        w = data.draw(st.integers(0, 3))
        if kind == "ext":
            gens.append(alg.ext(f"g{i}", (2 * data.draw(st.integers(0, 4)) + 1, 0), w))
        elif kind == "poly":
            gens.append(alg.poly(f"g{i}", (2 * data.draw(st.integers(1, 4)), 2), w))
        else:
            gens.append(
                alg.trunc(
                    f"g{i}",
                    data.draw(st.integers(2, 5)),
                    (0, 2 * data.draw(st.integers(1, 3))),
                    w,
                )
            )
    pres = alg.Presentation(5, tuple(gens), data.draw(st.integers(10, 40)))
    parsed = ParsedFile(pres, [], {"prime": 5, "maxdeg": pres.max_degree})
    printed = print_file(parsed)
    again = parse(printed)
    assert again.presentation == pres
    assert print_file(again) == printed


def test_run_emits_expected_chart_line(tmp_path):
    out = tmp_path / "chart.tsv"
    src = files("gradss") / "data" / "brunku1_p5.ss"
    assert run_command(["run", str(src), "--out", str(out)]) == 0
    assert "2\t9\t0\t1\tl1\n" in out.read_text()


def test_run_chart_is_sorted_and_indexed():
    parsed = parse(data_text("brunku2_p5.ss"))
    rows = chart_rows(parsed)
    assert rows == sorted(rows, key=lambda t: t[:4])
    pages = {r for r, *_ in rows}
    assert pages == {2, 8}


def test_svg_emission(tmp_path):
    out = tmp_path / "chart.svg"
    src = files("gradss") / "data" / "brunku2_p5.ss"
    assert run_command(["run", str(src), "--svg", str(out), "--out", str(tmp_path / "c.tsv")]) == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and "circle" in svg and "line" in svg


def test_tor_command_output(capsys):
    assert run_command(["tor", "--base", "zpu", "--left", "fp", "--right", "zp", "--max", "10"]) == 0
    out = capsys.readouterr().out
    assert out == "(0,0): 1\n(1,2): 1\n"


def test_tor_command_truncated_base(capsys):
    code = run_command(
        ["tor", "--base", "fpu-trunc:3", "--left", "fp", "--right", "fp", "--max", "8"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[:3] == ["(0,0): 1", "(1,2): 1", "(2,6): 1"]


def test_run_p7_collapse_page(tmp_path):
    out = tmp_path / "chart.tsv"
    src = files("gradss") / "data" / "brunku2_p7.ss"
    assert run_command(["run", str(src), "--out", str(out)]) == 0
    pages = {line.split("\t")[0] for line in out.read_text().splitlines()}
    assert pages == {"2", "12"}


def test_hh_command(capsys, tmp_path):
    path = tmp_path / "trunc.ss"
    path.write_text("prime 5\nmaxdeg 16\nalgebra A {\n gen u trunc 4 bideg 0 2\n}\n")
    assert run_command(["hh", str(path), "--smax", "1", "--tmax", "8"]) == 0
    out = capsys.readouterr().out
    assert "(0,0): 1" in out


def test_oracle_command(capsys):
    assert run_command(["oracle", "filtered", "--seed", "5", "--cases", "3"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("3/3 converged\n")


def test_homology_command(capsys):
    src = files("gradss") / "data" / "brunku2_p5.ss"
    assert run_command(["homology", str(src)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# certified through total degree 99\n")
    assert "50\t0\t1\tm1^5\n" in out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.ss"
    bad.write_text("prime 9\nmaxdeg 4\n")
    assert run_command(["run", str(bad)]) == 2
    assert run_command(["run", str(tmp_path / "missing.ss")]) == 2
    assert run_command(["nonsense"]) == 2
    assert run_command(["reproduce", "thh-ku", "--prime", "5", "--max-degree", "10"]) == 2
    capsys.readouterr()


def test_reproduce_writes_report(tmp_path):
    out = tmp_path / "report.json"
    code = run_command(
        ["reproduce", "thh-ku", "--prime", "5", "--max-degree", "60", "--report", str(out)]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["ok"] is True
    assert data["prime"] == 5


def test_threads_env_validation(monkeypatch, capsys):
    monkeypatch.setenv("GRADSS_THREADS", "zebra")
    assert run_command(["tor", "--base", "fpu", "--left", "fp", "--right", "fp", "--max", "4"]) == 2
    monkeypatch.setenv("GRADSS_THREADS", "4")
    assert run_command(["tor", "--base", "fpu", "--left", "fp", "--right", "fp", "--max", "4"]) == 0
    capsys.readouterr()


def test_determinism_across_runs_and_thread_caps(tmp_path, monkeypatch):
    src = files("gradss") / "data" / "brunku2_p5.ss"
    outputs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("GRADSS_THREADS", threads)
        chart = tmp_path / f"chart{threads}.tsv"
        report = tmp_path / f"report{threads}.json"
        assert run_command(["run", str(src), "--out", str(chart)]) == 0
        assert (
            run_command(
                [
                    "reproduce",
                    "thh-ku",
                    "--prime",
                    "5",
                    "--max-degree",
                    "60",
                    "--report",
                    str(report),
                ]
            )
            == 0
        )
        outputs.append((chart.read_bytes(), report.read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="prime algebr{}gen ext poly trunc bideg weight d\n->^#0123456789 uxm", max_size=200))
def test_parser_fuzz_only_raises_parse_errors(text):
    try:
        parse(text)
    except ParseError:
        pass
