import numpy as np
import pytest

from phspline.domain.explicit import Wrap, closed_cubic_preimage, explicit_curve
from phspline.domain.ph_curve import check_closed, make_preimage, ph_from_preimage
from tests.conftest import closed_partitions

pytestmark = pytest.mark.integration


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("variant", [Wrap.CLOSED, Wrap.OPEN])
def test_closed_cubics_close_smoothly(rng, m, variant):
    for _ in range(4):
        parts = closed_partitions(rng, 1, m)
        free = rng.uniform(0.5, 1.5, size=m) + 1j * rng.uniform(-1.0, 1.0, size=m)
        d = [0.0] + np.diff(parts.t).tolist()
        z = closed_cubic_preimage(m, variant, free, d)
        preimage = make_preimage(parts, z)
        assert check_closed(preimage, parts).ok

        ph = ph_from_preimage(preimage, parts.mode, r0=1 - 1j, partitions=parts)
        lo, hi = parts.domain
        scale = 1.0 + float(np.max(np.abs(z))) ** 2
        assert abs(ph(hi) - ph(lo)) <= 1e-9 * scale
        hodo = ph.hodograph
        assert abs(complex(hodo(hi)) - complex(hodo(lo))) <= 1e-9 * scale

        explicit = explicit_curve(parts, z, r0=1 - 1j)
        assert abs(explicit.curve(hi) - explicit.curve(lo)) <= 1e-9 * scale

