"""Smoke test for the toda_engine extension.

Build and install first, for example:
    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/toda_engine-*.whl
Then run: python python/smoke_test.py
"""

import json
import pathlib
import sys

import toda_engine

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def load(name):
    return (FIXTURES / name).read_text()


def main():
    algebra = load("q_m.json")
    abc = load("abc.json")

    assert json.loads(toda_engine.validate(algebra))["status"] == "valid"

    massey = json.loads(toda_engine.massey(algebra, abc))
    assert massey["status"] == "defined", massey
    entry = massey["representative"]["entries"][0][0]
    assert entry["cycle"] == "ay + xc", entry
    assert massey["indeterminacy"]["cardinality"] == "1"

    oracle = json.loads(toda_engine.oracle(algebra, abc))
    assert oracle["size"] == 1
    assert oracle["classes"][0] == massey["representative"]

    again = toda_engine.run("massey", algebra, abc)
    assert again == toda_engine.massey(algebra, abc)

    try:
        toda_engine.validate(load("broken_d_squared.json"))
    except ValueError as err:
        detail = json.loads(str(err))["error"]["detail"]
        assert {"kind": "d_squared", "generator": "w"} in detail["violations"]
    else:
        raise AssertionError("broken algebra accepted")

    print("toda_engine", toda_engine.__version__, "smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
