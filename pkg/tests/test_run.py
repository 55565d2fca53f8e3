import json
from os.path import abspath, dirname, exists, join

import pytest
from omegaconf import OmegaConf

from src.data_generator import dump_fixtures, search_bol
from src.datas.named_loops import small_groups
from src.evaluate import collect_tables, sweep
from src.run import EXIT_BOUND, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main
from src.utils import load_config

CONFIG = join(dirname(dirname(abspath(__file__))), "configs", "kloops.yaml")

Z3 = "loop 3\n0 1 2\n1 2 0\n2 0 1\n"
NON_BOL_5 = "loop 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = join(tmp_path, name)
        with open(path, "w") as f:
            f.write(text)
        return path
    return _write


@pytest.fixture
def local_config(tmp_path):
    config = load_config(CONFIG)
    config.search.fixture_folder = join(tmp_path, "fixtures")
    config.search.sweep_orders = [2, 3]
    path = join(tmp_path, "config.yaml")
    OmegaConf.save(config, path)
    return path


def test_validate(write, capsys):
    assert main(["-c", CONFIG, "validate", write("z3.txt", Z3)]) == EXIT_OK
    out, err = capsys.readouterr()
    assert out == "identity=0\n"
    assert err == ""


def test_validate_properties(write, capsys):
    path = write("loops.txt", Z3 + "\n" + NON_BOL_5)
    assert main(["-c", CONFIG, "validate", "--props", path]) == EXIT_OK
    first, second = capsys.readouterr().out.splitlines()
    assert first == "identity=0 bol=yes moufang=yes aip=yes"
    assert second.startswith("identity=0 bol=no moufang=no ")
    assert "bol_witness=(" in second


def test_validate_rejects_non_latin(write, capsys):
    assert main(["-c", CONFIG, "validate", write("bad.txt", "loop 2\n0 0\n1 1\n")]) == EXIT_DOMAIN
    assert "row 0" in capsys.readouterr().err


def test_parse_error(write, capsys):
    assert main(["-c", CONFIG, "validate", write("bad.txt", "loop 2\n0 1\n")]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_certify(write, capsys):
    path = write("z4.txt", "loop 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n")
    assert main(["-c", CONFIG, "certify", path]) == EXIT_OK
    certificate = json.loads(capsys.readouterr().out)
    assert certificate["witnesses"] == [[0, 2]]
    assert certificate["loop_simple"] is False


def test_certify_trivial_loop(write):
    assert main(["-c", CONFIG, "certify", write("z1.txt", "loop 1\n0\n")]) == EXIT_DOMAIN


def test_matrix_check(capsys):
    assert main(["-c", CONFIG, "matrix-check", "--field", "complex", "--n", "3", "--samples", "20"]) \
        == EXIT_OK
    identities, structure = (json.loads(line) for line in capsys.readouterr().out.splitlines())
    assert identities["pass"] and structure["pass"]
    assert identities["samples"] == structure["samples"] == 20
    assert identities["seed"] == 42


@pytest.mark.parametrize("argv", [
    ["matrix-check", "--n", "9"],
    ["matrix-check", "--field", "quaternion"],
    ["matrix-check", "--samples", "0"],
    ["transmogrify"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(["-c", CONFIG] + argv)
    assert exc.value.code == EXIT_USAGE


def test_missing_config(tmp_path):
    assert main(["-c", join(tmp_path, "none.yaml"), "validate", "-"]) == EXIT_USAGE


def test_search_to_stdout(capsys):
    assert main(["-c", CONFIG, "search-bol", "--order", "3", "--stdout"]) == EXIT_OK
    assert capsys.readouterr().out.endswith(Z3)


def test_search_to_folder(local_config, capsys):
    assert main(["-c", local_config, "search-bol", "--order", "4"]) == EXIT_OK
    path = capsys.readouterr().out.strip()
    assert exists(path) and path.endswith("bol_4.txt")


def test_search_bound(capsys):
    assert main(["-c", CONFIG, "search-bol", "--order", "9", "--stdout"]) == EXIT_BOUND
    assert "bound exceeded" in capsys.readouterr().err


def test_sweep_command(local_config, capsys):
    assert main(["-c", local_config, "sweep"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["pass"]
    assert summary["correspondence_failures"] == 0


def test_sweep_summary(tmp_path):
    config = load_config(CONFIG)
    config.search.sweep_orders = [2, 3, 4]
    summary = sweep(config, str(tmp_path))
    assert summary["pass"]
    assert summary["loops"] >= 3 + 14
    assert summary["correspondence_checks"] > summary["loops"]
    assert summary["soundness_counterexamples"] == 0
    # every loop but the trivial group gets the quasidirect check
    assert summary["quasidirect_checks"] == summary["quasidirect_isomorphisms"] == summary["loops"] - 1


@pytest.mark.parametrize("argv, count", [([], 6), (["--canonical-row-one"], 1)])
def test_search_labelings(argv, count, capsys):
    assert main(["-c", CONFIG, "search-bol", "--order", "5", "--stdout"] + argv) == EXIT_OK
    assert capsys.readouterr().out.count("loop 5\n") == count


def test_sweep_keeps_canonical_stored_fixtures(tmp_path):
    config = load_config(CONFIG)
    config.search.sweep_orders = [4]
    dump_fixtures(search_bol(4), str(tmp_path), 4)
    tables = collect_tables(config, str(tmp_path))
    expected = [f.loop.to_lists() for f in search_bol(4, canonical_row_one=True)]
    assert tables[:len(expected)] == expected
    assert len(tables) == len(expected) + len(small_groups())
