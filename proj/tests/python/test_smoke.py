import glob
import json
import os

import pytest

import gmt

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
EXAMPLES = os.path.join(ROOT, "schemas", "examples")


def unit_square():
    return gmt.Complex(2, [[0, 0], [1, 0], [1, 1], [0, 1]], [[0, 1, 2], [0, 2, 3]])


def square_boundary(k):
    c = gmt.Chain(k, 1)
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        c.add_oriented([a, b], 1.0)
    return c


def test_square_flat_norm():
    k = unit_square()
    a = square_boundary(k)
    d = gmt.flat_norm(a)
    assert d.value == pytest.approx(1.0, abs=1e-9)
    assert gmt.flat_norm_oracle(a) == pytest.approx(1.0, abs=1e-9)
    assert gmt.mass(a) == pytest.approx(4.0)
    assert gmt.mass(d.S) == pytest.approx(1.0)


def test_boundary_of_boundary():
    k = unit_square()
    body = gmt.Chain(k, 2)
    body.add_cell(0, 1.0)
    body.add_cell(1, -2.0)
    assert gmt.boundary(gmt.boundary(body)).is_zero


def test_pushforward_scaling():
    k = unit_square()
    f = gmt.Map(k, [[0, 0], [2, 0], [2, 2], [0, 2]], 2)
    a = square_boundary(k)
    assert gmt.mass(gmt.pushforward(f, a)) == pytest.approx(8.0)
    assert gmt.lipschitz_constant(f) == pytest.approx(2.0)
    assert gmt.embedding_check(f)["embedding"]


def test_leibniz_and_multiply():
    k = unit_square()
    phi = gmt.SharpField(k, [1.0, 2.0, 0.5, 1.5])
    a = square_boundary(k)
    assert gmt.leibniz_residual(phi, a) < 1e-9
    assert gmt.mass(gmt.multiply(gmt.SharpField(k, [3.0] * 4), a)) == pytest.approx(12.0)


def test_voxels():
    u = gmt.VoxelSet(2, 0.5, [[0, 0], [1, 0]])
    assert u.measure() == pytest.approx(0.5)
    assert u.perimeter() == pytest.approx(3.0)
    value, _ = gmt.density(u, [0.5, 0.5], 0.25)
    assert value == pytest.approx(0.5, abs=1e-6)


def test_errors_are_value_errors():
    k = unit_square()
    with pytest.raises(gmt.Error):
        gmt.boundary(gmt.Chain(k, 0))
    with pytest.raises(ValueError):
        gmt.load_chain(os.path.join(ROOT, "tests", "data", "bad-sign.chain.json"))


def test_loaders():
    a = gmt.load_chain(os.path.join(EXAMPLES, "square-boundary.chain.json"))
    assert gmt.flat_norm(a).value == pytest.approx(1.0, abs=1e-9)
    f = gmt.load_map(os.path.join(EXAMPLES, "fold.map.json"))
    assert not gmt.embedding_check(f)["embedding"]


def test_scenario_report():
    assert "koch-trace" in gmt.scenarios()
    r = gmt.run_scenario("flatnorm", seed=3)
    assert r["pass"] and r["seed"] == 3
    assert r == gmt.run_scenario("flatnorm", seed=3)


def test_examples_match_schemas():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    schema_dir = os.path.join(ROOT, "schemas")
    schemas = {}
    for path in glob.glob(os.path.join(schema_dir, "*.schema.json")):
        with open(path) as fh:
            schemas[os.path.basename(path)] = json.load(fh)
    registry = referencing.Registry().with_resources(
        (name, referencing.Resource.from_contents(s)) for name, s in schemas.items()
    )
    kinds = {"table": "fluxtable"}
    for path in glob.glob(os.path.join(EXAMPLES, "*.json")):
        kind = path.split(".")[-2]
        schema = schemas[kinds.get(kind, kind) + ".schema.json"]
        with open(path) as fh:
            jsonschema.Draft202012Validator(schema, registry=registry).validate(json.load(fh))
