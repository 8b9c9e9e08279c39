"""Lambert-W function and the optimal one-way competitive ratio"""

import math

from ota_cli.utils.exceptions import DomainError

BRANCH_POINT = -1.0 / math.e
MAX_ITERATIONS = 50
TOLERANCE = 1e-14


def lambert_w(x: float) -> float:
    """Principal branch of the Lambert-W function, W(x)·exp(W(x)) = x

    Starts from ln(1 + x) for x >= 0 and from the branch-point series for
    x < 0, then converges with Halley's method.

    Raises:
        DomainError: x < -1/e
    """
    if math.isnan(x) or x < BRANCH_POINT:
        raise DomainError(f"Lambert-W is real only for x >= -1/e, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    if x >= 0:
        w = math.log1p(x)
    else:
        # series around -1/e in p = sqrt(2(e x + 1))
        p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3

    for _ in range(MAX_ITERATIONS):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0 or w == -1.0:
            break
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= TOLERANCE * (1.0 + abs(w)):
            break
    return max(w, -1.0)


def alpha_star(theta: float) -> float:
    """Optimal competitive ratio of pure online one-way trading, 1 + W((θ-1)/e)

    Raises:
        DomainError: theta < 1
    """
    if not theta >= 1.0:
        raise DomainError(f"Fluctuation ratio must be at least 1, got {theta!r}")
    return 1.0 + lambert_w((theta - 1.0) / math.e)
