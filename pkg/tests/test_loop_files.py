import io
from os.path import join

import pytest

from src.datas.loop_files import (dump_loops, format_loop, parse_loops, read_loops, read_records,
                                  write_loops)
from src.datas.named_loops import cyclic_group, quaternion_group
from src.errors import LoopFileError, NotLatinSquare

TWO_LOOPS = """
# two small groups
# flags: bol=yes group=yes
loop 2
0 1
1 0

loop 3
0 1 2
1 2 0
# comments may sit inside a block
2 0 1
"""


def test_parse_blocks():
    records = parse_loops(TWO_LOOPS)
    assert [r.table.shape for r in records] == [(2, 2), (3, 3)]
    assert [r.line for r in records] == [4, 8]
    assert records[0].flags == {"bol": True, "group": True}
    assert records[1].flags == {}
    assert records[1].table.tolist() == cyclic_group(3).to_lists()


@pytest.mark.parametrize("text, line", [
    ("loops 2\n0 1\n1 0\n", 1),
    ("loop two\n", 1),
    ("loop 0\n", 1),
    ("loop 2\n0 1 2\n1 0\n", 2),
    ("loop 2\n0 1\n1 x\n", 3),
    ("# flags: bol=maybe\nloop 1\n0\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(LoopFileError) as exc:
        parse_loops(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")


@pytest.mark.parametrize("text", ["", "# nothing here\n", "loop 3\n0 1 2\n1 2 0\n"])
def test_incomplete_files(text):
    with pytest.raises(LoopFileError) as exc:
        parse_loops(text)
    assert exc.value.line is None


def test_invalid_tables_are_reported_by_validation(tmp_path):
    path = join(tmp_path, "bad.txt")
    with open(path, "w") as f:
        f.write("loop 2\n0 0\n1 1\n")
    assert len(read_records(path)) == 1
    with pytest.raises(NotLatinSquare):
        read_loops(path)


def test_missing_file(tmp_path):
    with pytest.raises(LoopFileError):
        read_records(join(tmp_path, "missing.txt"))


def test_dump_and_read(tmp_path):
    loops = [cyclic_group(1), cyclic_group(4), quaternion_group()]
    flags = [{"group": True}, {"group": True, "moufang": True}, {"aip": False}]
    path = join(tmp_path, "loops.txt")
    dump_loops(path, loops, flags)
    assert read_loops(path) == loops
    assert [r.flags for r in read_records(path)] == flags


def test_format_loop():
    assert format_loop(cyclic_group(2)) == "loop 2\n0 1\n1 0\n"
    assert format_loop(cyclic_group(1), {"bol": True, "aip": False}) == \
        "# flags: bol=yes aip=no\nloop 1\n0\n"
    out = io.StringIO()
    write_loops(out, [cyclic_group(1), cyclic_group(1)])
    assert out.getvalue() == "loop 1\n0\n\nloop 1\n0\n"


def test_read_from_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TWO_LOOPS))
    assert [loop.order for loop in read_loops("-")] == [2, 3]
