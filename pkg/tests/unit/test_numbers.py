import json
import math

import numpy as np
import pytest

from phspline.common.numbers import clean_real, dumps, pair, to_jsonable
from phspline.domain.knots import Mode


def test_negative_zero_is_normalized():
    assert math.copysign(1.0, clean_real(-0.0)) == 1.0
    assert pair(complex(-0.0, -0.0)) == [0.0, 0.0]


@pytest.mark.parametrize("value", [float("nan"), float("inf"), -float("inf")])
def test_non_finite_values_are_refused(value):
    with pytest.raises(ValueError):
        clean_real(value)


def test_to_jsonable_unwraps_numpy_and_complex():
    doc = to_jsonable(
        {
            "mode": Mode.CLOSED,
            "z": np.array([1 + 2j, -0.5j]),
            "count": np.int64(3),
            "ok": np.bool_(True),
            "pair": (np.float64(0.25), 1),
        }
    )
    assert doc == {"mode": "closed", "z": [[1.0, 2.0], [0.0, -0.5]], "count": 3, "ok": True, "pair": [0.25, 1]}
    assert type(doc["count"]) is int


def test_dumps_round_trips_shortest_repr():
    text = dumps({"x": 0.1 + 0.2, "y": [1 / 3]})
    assert text.endswith("}\n")
    assert json.loads(text) == {"x": 0.1 + 0.2, "y": [1 / 3]}
    assert "0.30000000000000004" in text
