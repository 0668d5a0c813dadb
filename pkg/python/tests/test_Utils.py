import json
import math

import numpy as np
import pytest

from ellipx.Utils import Utils
from ellipx.exceptions import UsageError


def test_dumps_json_fixed_float_format():
    text = Utils.dumps_json({"a": 0.1, "b": [1, complex(2, -0.5)], "c": math.inf, "d": True, "e": "x", "f": []})
    assert text == "\n".join([
        "{",
        '  "a": 1.0000000000000001e-01,',
        '  "b": [',
        "    1,",
        "    {",
        '      "re": 2.0000000000000000e+00,',
        '      "im": -5.0000000000000000e-01',
        "    }",
        "  ],",
        '  "c": null,',
        '  "d": true,',
        '  "e": "x",',
        '  "f": []',
        "}",
    ])
    assert json.loads(text)["a"] == 0.1


def test_dumps_json_is_deterministic():
    obj = {"v": np.array([1 / 3, 2 / 3]), "n": np.int64(3)}
    assert Utils.dumps_json(obj) == Utils.dumps_json(obj)
    assert json.loads(Utils.dumps_json(obj)) == {"v": [1 / 3, 2 / 3], "n": 3}


def test_dump_json(tmp_path):
    path = tmp_path / "out" / "x.json"
    Utils.dump_json(path, {"x": 2.5})
    assert path.read_text() == '{\n  "x": 2.5000000000000000e+00\n}\n'


def test_option_getters():
    options = {"m-re": "1.5", "window": "0,1,2", "bad": "abc"}
    assert Utils.get_option_as_float(options, "m_re") == 1.5
    assert Utils.get_option_as_floats(options, "window") == [0.0, 1.0, 2.0]
    with pytest.raises(UsageError):
        Utils.get_option_as_float(options, "bad")
    with pytest.raises(UsageError):
        Utils.get_option_as_floats(options, "bad")
