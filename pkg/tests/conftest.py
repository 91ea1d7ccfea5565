import numpy as np
import pytest

# Ten-sample series used throughout the docs for the c=3 walkthrough and
# its frozen class sequence under the linear map.
TRI_SIGNAL = [3.6, 4.2, 1.2, 3.1, 4.2, 2.1, 3.3, 4.6, 6.8, 8.4]
TRI_CLASSES = [2, 2, 1, 1, 2, 1, 1, 2, 3, 3]

# Companion series for the c=2 walkthrough of the difference patterns.
BI_SIGNAL = [3.0, 4.5, 6.2, 5.1, 3.2, 1.2, 3.5, 5.6, 4.9, 8.4]
BI_CLASSES = [1, 1, 2, 2, 1, 1, 1, 2, 2, 2]


@pytest.fixture
def tri_signal():
    return np.asarray(TRI_SIGNAL, dtype=float)


@pytest.fixture
def bi_signal():
    return np.asarray(BI_SIGNAL, dtype=float)
