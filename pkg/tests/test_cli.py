import json
import math

import pytest

from crlink.cli import main
from crlink.report import validate_report_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_picard_words_text(capsys):
    code, out, _ = run(capsys, "verify", "picard-words")
    assert code == 0
    assert "eisenstein-picard words" in out
    assert "FAIL" not in out


def test_verify_fig8_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "fig8", "--json")
    assert code == 0
    data = json.loads(out)
    assert validate_report_json(data) == []
    assert data["exit_status"] == 0
    assert data["counts"]["fail"] == 0
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify", "all", "--json")
    assert code == 0
    data = json.loads(out)
    assert isinstance(data, list) and len(data) == 3
    for rep in data:
        assert validate_report_json(rep) == []
        assert rep["exit_status"] == 0


def test_verify_unknown_target(capsys):
    code, _, _ = run(capsys, "verify", "granny-knot")
    assert code == 2


def test_query_cartan(capsys):
    code, out, _ = run(
        capsys,
        "query", "cartan", "--json",
        "--inline", '{"points": ["inf", {"z":"0","t":"0"}, {"z":"1","t":"sqrt3"}]}',
    )
    assert code == 0
    data = json.loads(out)
    witness = next(c for c in data["checks"] if c["name"] == "cartan invariant")
    assert witness["witness"]["tan"]["exact"] == "sqrt3"
    assert witness["witness"]["angle_approx"] == pytest.approx(math.pi / 3)


def test_query_params(capsys):
    payload = json.dumps(
        {
            "p1": {"z": "0", "t": "2+sqrt3"},
            "p2": {"z": "0", "t": "-(2+sqrt3)"},
            "q1": {"z": "omega", "t": "0"},
            "q2": {"z": "1", "t": "0"},
        }
    )
    code, out, _ = run(capsys, "query", "params", "--json", "--inline", payload)
    assert code == 0
    data = json.loads(out)
    witness = next(c for c in data["checks"] if "parameters" in c["name"])["witness"]
    assert witness["z1"] == "1/2 + i*(1/2*sqrt3)"
    assert witness["t"] == "sqrt3"


def test_query_classify_whitehead_generator(capsys):
    payload = json.dumps(
        {
            "matrix": [
                ["1", "0", "-i"],
                ["-1-i", "1", "-1+i"],
                ["-1-i", "1-i", "i"],
            ],
            "holo": True,
        }
    )
    code, out, _ = run(capsys, "query", "classify", "--json", "--inline", payload)
    assert code == 0
    data = json.loads(out)
    witness = data["checks"][0]["witness"]
    assert witness["kind"] == "Loxodromic"
    assert witness["trace"]["exact"] == "2 + i"
    assert witness["rings"]["Z[i]"] is True


def test_query_word_with_fixture(capsys):
    payload = json.dumps({"fixture": "fig8", "word": "G2^-1 G1"})
    code, out, _ = run(capsys, "query", "word", "--json", "--inline", payload)
    assert code == 0
    data = json.loads(out)
    witness = data["checks"][0]["witness"]
    assert witness["classification"] == "Parabolic"


def test_query_glue_bundled_schemes(capsys, tmp_path):
    from importlib import resources

    for name in ("fig8_scheme.json", "whitehead_scheme.json"):
        text = resources.files("crlink.data").joinpath(name).read_text()
        path = tmp_path / name
        path.write_text(text)
        code, out, _ = run(capsys, "query", "glue", "--input", str(path))
        assert code == 0, out
        assert "FAIL" not in out


def test_query_cartan_float_backend(capsys):
    code, out, _ = run(
        capsys,
        "query", "cartan", "--json", "--backend", "float",
        "--inline", '{"points": ["inf", {"z":"0","t":"0"}, {"z":"0.5","t":"0.25"}]}',
    )
    assert code == 0
    data = json.loads(out)
    witness = data["checks"][0]["witness"]
    assert "exact" not in witness["tan"]
    assert witness["tan"]["approx"]["re"] == pytest.approx(1.0)


def test_query_float_backend_rejected_for_certification(capsys):
    code, _, err = run(
        capsys,
        "query", "classify", "--backend", "float",
        "--inline", '{"matrix": [["1","0","0"],["0","1","0"],["0","0","1"]]}',
    )
    assert code == 2
    assert "float backend" in err


def test_query_glue_vertex_map_form(capsys, tmp_path):
    scheme = {
        "name": "vertexMap variant",
        "tetrahedra": [
            {"name": "T", "letter": "z",
             "params": {"z": "(1+i*sqrt3)/2", "t": "sqrt3", "s": "sqrt3"}},
            {"name": "U", "letter": "w",
             "params": {"z": "(1+i*sqrt3)/2", "t": "sqrt3", "s": "sqrt3"}},
        ],
        "pairings": [
            {"from": ["T", ["p1", "p2", "q1"]], "to": ["U", ["p1", "p2", "q2"]],
             "vertexMap": {"p1": "p1", "p2": "p2", "q1": "q2"}},
            {"from": ["T", ["p1", "q1", "q2"]], "to": ["U", ["q1", "q2", "p2"]]},
            {"from": ["T", ["p1", "p2", "q2"]], "to": ["U", ["q1", "q2", "p1"]]},
            {"from": ["T", ["p2", "q1", "q2"]], "to": ["U", ["p2", "q1", "p1"]]},
        ],
    }
    path = tmp_path / "scheme.json"
    path.write_text(json.dumps(scheme))
    code, out, _ = run(capsys, "query", "glue", "--input", str(path))
    assert code == 0
    assert "FAIL" not in out
    scheme["pairings"][0]["vertexMap"] = {"p1": "p1", "p2": "p2", "q1": "q1"}
    path.write_text(json.dumps(scheme))
    code, _, err = run(capsys, "query", "glue", "--input", str(path))
    assert code == 2 and "vertexMap" in err


def test_query_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "query", "cartan", "--inline", "{not json")
    assert code == 2
    assert "error" in err
    code, _, err = run(
        capsys, "query", "cartan", "--inline", '{"points": ["inf", {"z":"sqrt5","t":"0"}, "inf"]}'
    )
    assert code == 2


def test_mesh_counts(tmp_path, capsys):
    out_path = tmp_path / "mesh.obj"
    code, _, _ = run(
        capsys, "mesh", "--fixture", "standard", "--samples", "16", "-o", str(out_path)
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    polylines = [l for l in lines if l.startswith("l ")]
    vertices = [l for l in lines if l.startswith("v ")]
    assert len(polylines) == 4 * 16 + 4
    assert all(len(l.split()) == 4 for l in vertices)


def test_mesh_minimal(tmp_path, capsys):
    out_path = tmp_path / "mini.obj"
    code, _, _ = run(capsys, "mesh", "--fixture", "standard", "--samples", "1", "-o", str(out_path))
    assert code == 0
    polylines = [l for l in out_path.read_text().splitlines() if l.startswith("l ")]
    assert len(polylines) == 4 + 4


def test_mesh_two_tetra_scene(tmp_path, capsys):
    out_path = tmp_path / "scene.obj"
    code, _, _ = run(
        capsys, "mesh", "--fixture", "fig8-scene", "--samples", "8", "-o", str(out_path)
    )
    assert code == 0
    polylines = [l for l in out_path.read_text().splitlines() if l.startswith("l ")]
    assert len(polylines) == 2 * (4 * 8 + 4)


def test_mesh_custom_tetra(tmp_path, capsys):
    payload = json.dumps(
        {
            "p1": {"z": "0", "t": "1+sqrt2"},
            "p2": {"z": "0", "t": "-(1+sqrt2)"},
            "q1": {"z": "1", "t": "0"},
            "q2": {"z": "i", "t": "0"},
        }
    )
    out_path = tmp_path / "custom.obj"
    code, _, _ = run(
        capsys, "mesh", "--inline", payload, "--samples", "4", "-o", str(out_path)
    )
    assert code == 0
    assert out_path.exists()
