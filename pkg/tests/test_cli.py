import json
from fractions import Fraction

import pytest

from snspec.birkhoff import TupleMatrix, induced_perm_matrix, resum_induced
from snspec.cli import dispatch
from snspec.group_algebra import CosetLabel, GroupFunction, coset_indicator, parse_rational


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_chartab_json(capsys):
    code, data = run_json(capsys, "chartab", "--n", "3")
    assert code == 0
    assert data["order"] == [[3], [2, 1], [1, 1, 1]]
    assert data["rows"][1] == [-1, 0, 2]


def test_chartab_csv(capsys):
    code, out = run(capsys, "chartab", "--n", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "partition,3,2+1,1+1+1"
    assert lines[2] == "2+1,-1,0,2"


def test_chartab_usage_error(capsys):
    code = dispatch(["chartab", "--n", "0"])
    assert code == 1


def test_unknown_flag_is_usage_error():
    assert dispatch(["chartab", "--bogus", "3"]) == 1
    assert dispatch(["nonsense"]) == 1


def test_spectrum_full(capsys):
    code, data = run_json(capsys, "spectrum", "--n", "5", "--k", "1")
    assert code == 0
    assert data["degree"] == 44
    values = {tuple(e["partition"]): e["value"] for e in data["eigenvalues"]}
    assert values[(4, 1)] == "-11/1"
    labels = {tuple(e["partition"]): e["class"] for e in data["eigenvalues"]}
    assert labels[(5,)] == "trivial" and labels[(4, 1)] == "fat"


def test_spectrum_single_class(capsys):
    code, data = run_json(capsys, "spectrum", "--n", "5", "--class", "3+2")
    assert code == 0
    assert data["size"] == 20
    values = {tuple(e["partition"]): parse_rational(e["value"]) for e in data["eigenvalues"]}
    assert values[(5,)] == 20
    assert values[(1, 1, 1, 1, 1)] == -20


def test_build_y_output(capsys):
    code, data = run_json(capsys, "build-y", "--n", "10", "--k", "2")
    assert code == 0
    assert data["verdict"]["trivial_is_one"]
    assert data["verdict"]["fat_equal_omega"]
    assert data["verdict"]["tall_per_variant"]
    assert data["omega"] == "-1/89"
    gens = [tuple(g) for g in data["generators"]]
    assert set(gens) == {(7, 3), (9, 1), (8, 2), (10,), (6, 3, 1), (5, 3, 2)}
    # rationals round-trip
    for e in data["spectrum"]:
        parse_rational(e["value"])


def test_probe_infeasible(capsys):
    code, data = run_json(capsys, "probe", "--n", "6", "--k", "2")
    assert code == 0
    assert data["feasible"] is False
    assert data["certificate"]


def test_probe_feasible(capsys):
    code, data = run_json(capsys, "probe", "--n", "5", "--k", "1")
    assert code == 0
    assert data["feasible"] is True


def test_hoffman(capsys):
    code, data = run_json(capsys, "hoffman", "--n", "10", "--k", "2", "--cross")
    assert code == 0
    assert data["omega"] == "-1/89"
    assert data["ratio"] == "1/90"
    assert data["family_bound"] == 40320
    assert data["cross_ratio"] == "1/90"


def test_vk_check_rank(capsys):
    code, data = run_json(capsys, "vk", "--n", "4", "--k", "1", "--check-rank")
    assert code == 0
    assert data["rank"] == 10 and data["match"]


def test_peel_round_trip(tmp_path, capsys):
    f = coset_indicator(CosetLabel((0,), (1,)), 4) + coset_indicator(CosetLabel((0,), (2,)), 4)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    code, data = run_json(capsys, "peel", "--n", "4", "--k", "1", "--input", str(path))
    assert code == 0
    got = {(tuple(c["sources"]), tuple(c["targets"])) for c in data["cosets"]}
    assert got == {((1,), (2,)), ((1,), (3,))}  # 1-based in JSON


def test_peel_counterexample_exits_2(tmp_path, capsys):
    f = GroupFunction.from_support(4, [8, 13])
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    code, out = run(capsys, "peel", "--n", "4", "--k", "2", "--input", str(path))
    assert code == 2
    assert json.loads(out)["theorem_violation"]


def test_birkhoff_check_and_decompose(tmp_path, capsys):
    m = resum_induced(4, 2, [(Fraction(1, 2), (1, 0, 2, 3)), (Fraction(1, 2), (0, 1, 3, 2))])
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_json()))
    code, data = run_json(capsys, "birkhoff", "--input", str(path), "--check")
    assert code == 0 and data["k_bistochastic"] is True
    code, data = run_json(capsys, "birkhoff", "--input", str(path), "--decompose")
    assert code == 0
    weights = sorted(d["weight"] for d in data["terms"])
    assert weights == ["1/2", "1/2"]
    sigmas = {tuple(x - 1 for x in d["sigma"]) for d in data["terms"]}
    assert sigmas == {(1, 0, 2, 3), (0, 1, 3, 2)}


def test_birkhoff_check_rejects(tmp_path, capsys):
    m = TupleMatrix(3, 1, [[1, 0, 0], [1, 0, 0], [0, 1, 0]])
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_json()))
    code, data = run_json(capsys, "birkhoff", "--input", str(path), "--check")
    assert code == 0 and data["k_bistochastic"] is False and data["reason"]


def test_search(capsys):
    code, data = run_json(capsys, "search", "--n", "4", "--k", "1", "--all-extremal")
    assert code == 0
    assert data["max_size"] == 6
    assert data["family_count"] == 16
    assert data["all_are_cosets"] is True


def test_certify_cyclic(capsys):
    code, data = run_json(capsys, "certify", "--mode", "cyclic", "--n", "5")
    assert code == 0
    assert data["verified"] and data["cell_count"] == 24


def test_certify_affine(capsys):
    code, data = run_json(capsys, "certify", "--mode", "affine", "--q", "5")
    assert code == 0
    assert data["verified"] and data["cell_count"] == 6


def test_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("SNSPEC_MAX_N", "3")
    assert dispatch(["chartab", "--n", "4"]) == 1
    monkeypatch.setenv("SNSPEC_MAX_N", "13")
    code = dispatch(["chartab", "--n", "13"])
    capsys.readouterr()
    assert code == 0


def test_deterministic_output(capsys):
    _, first = run(capsys, "search", "--n", "4", "--k", "2")
    _, second = run(capsys, "search", "--n", "4", "--k", "2")
    assert first == second
