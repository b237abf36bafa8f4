import json
import os

import pytest

from normal_cover import primitive_data
from normal_cover.errors import DataLoadError, InputError
from normal_cover.primitive_data import bundled_data_dir, generate_primitive_data, load_primitive_classes, \
    load_primitive_data, parse_cycles, write_primitive_data

M12_FILE = os.path.join(bundled_data_dir(), "m12_n12_A.json")


def _write(path, document):
    path.write_text(json.dumps(document))
    return str(path)


def test_bundled_m12():
    n, group, classes = load_primitive_data(M12_FILE)
    assert (n, group) == (12, "A")
    assert [item.name for item in classes] == ["M12"]
    assert len(classes[0].covered_types) == 14
    assert (11, 1) in classes[0].covered_types
    assert (1,) * 12 in classes[0].covered_types


def test_directory_picks_matching_files():
    assert len(load_primitive_classes([bundled_data_dir()], 12, "A")) == 1
    assert load_primitive_classes([bundled_data_dir()], 12, "S") == []
    assert load_primitive_classes([], 12, "A") == []
    with pytest.raises(DataLoadError):
        load_primitive_classes([M12_FILE], 12, "S")
    with pytest.raises(DataLoadError):
        load_primitive_classes([M12_FILE, M12_FILE], 12, "A")
    with pytest.raises(DataLoadError):
        load_primitive_classes(["/nonexistent/data.json"], 12, "A")


@pytest.mark.parametrize("document, message", [
    ({"n": 6, "group": "S", "classes": [{"name": "B", "types": [[4, 1]]}]}, "does not sum"),
    ({"n": 6, "group": "A", "classes": [{"name": "B", "types": [[4, 1, 1]]}]}, "odd permutation"),
    ({"n": 6, "group": "S", "classes": [{"name": "B", "types": [[1, 5]]}]}, "nonincreasing"),
    ({"n": 6, "group": "S", "classes": [{"name": "B", "types": "5,1"}]}, "types list"),
    ({"n": 6, "group": "S", "classes": [{"types": [[5, 1]]}]}, "needs a name"),
    ({"n": 6, "group": "Q", "classes": []}, "group must be"),
    ({"n": "six", "group": "S", "classes": []}, "n must be"),
    ([1, 2], "must contain a mapping"),
])
def test_invalid_documents(tmp_path, document, message):
    path = _write(tmp_path / "bad.json", document)
    with pytest.raises(DataLoadError) as raised:
        load_primitive_data(path)
    assert message in str(raised.value)


def test_error_names_file_class_and_type(tmp_path):
    path = _write(tmp_path / "pgl.json",
                  {"n": 6, "group": "S", "classes": [{"name": "PGL25", "types": [[5, 1], [6, 1]]}]})
    with pytest.raises(DataLoadError) as raised:
        load_primitive_data(path)
    assert "pgl.json" in str(raised.value)
    assert "PGL25" in str(raised.value)
    assert "type 1" in str(raised.value)


def test_yaml_and_invalid_yaml(tmp_path):
    good = tmp_path / "pgl.yaml"
    good.write_text("n: 6\ngroup: S\nclasses:\n  - name: PGL25\n    types: [[6], [5, 1], [4, 1, 1]]\n")
    n, group, classes = load_primitive_data(str(good))
    assert (n, group) == (6, "S")
    assert classes[0].covered_types == {(6,), (5, 1), (4, 1, 1)}

    bad = tmp_path / "bad.yaml"
    bad.write_text("n: [6\n")
    with pytest.raises(DataLoadError):
        load_primitive_data(str(bad))


def test_duplicate_names_across_files(tmp_path):
    document = {"n": 6, "group": "S", "classes": [{"name": "PGL25", "types": [[6]]}]}
    first = _write(tmp_path / "a.json", document)
    second = _write(tmp_path / "b.json", document)
    with pytest.raises(DataLoadError):
        load_primitive_classes([first, second], 6, "S")
    with pytest.raises(DataLoadError):
        load_primitive_classes([str(tmp_path)], 6, "S")


def test_parse_cycles():
    assert parse_cycles("(1,2,3)(4,5)", 5) == [[0, 1, 2], [3, 4]]
    assert parse_cycles(" (1, 12) ", 12) == [[0, 11]]
    for text in ("(1,6)", "(1,2)(2,3)", "1,2,3", ""):
        with pytest.raises(InputError):
            parse_cycles(text, 5)


def test_split_halves():
    assert primitive_data._is_split_type((5,))
    assert primitive_data._is_split_type((7, 3, 1))
    assert not primitive_data._is_split_type((3, 3))
    assert not primitive_data._is_split_type((4, 1))
    first = primitive_data._split_half([[0, 1, 2, 3, 4]], (5,), 5)
    second = primitive_data._split_half([[0, 2, 4, 1, 3]], (5,), 5)
    assert first != second


def test_generate_from_generators(tmp_path):
    document = generate_primitive_data("C5", 5, "A", ["(1,2,3,4,5)"], order=5)
    assert document.classes[0]["types"] == [[5], [1, 1, 1, 1, 1]]
    assert document.classes[0]["order"] == 5

    path = str(tmp_path / "c5.json")
    write_primitive_data(document, path)
    n, group, classes = load_primitive_data(path)
    assert (n, group) == (5, "A")
    assert classes[0].covered_types == {(5,), (1, 1, 1, 1, 1)}

    path = str(tmp_path / "c5.yaml")
    write_primitive_data(document, path)
    assert load_primitive_data(path)[2][0].covered_types == {(5,), (1, 1, 1, 1, 1)}


def test_generate_rejects():
    with pytest.raises(InputError):
        generate_primitive_data("C2", 5, "A", ["(1,2)"])
    with pytest.raises(InputError):
        generate_primitive_data("C5", 5, "S", ["(1,2,3,4,5)"], order=10)
    with pytest.raises(InputError):
        generate_primitive_data("none", 5, "S", [])


@pytest.mark.slow
def test_m12_from_generators():
    with open(M12_FILE) as f:
        bundled = json.load(f)["classes"][0]
    document = generate_primitive_data("M12", 12, "A", bundled["generators"], order=95040)
    assert document.classes[0]["types"] == bundled["types"]
