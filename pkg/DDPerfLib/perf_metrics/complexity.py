from typing import Sequence, Tuple

import numpy as np

from ..helper.exceptions import InsufficientDataError


def fit_complexity(sizes: Sequence[float], times: Sequence[float]) -> Tuple[float, float, float]:
    """
    Fit ``time = c * n ** alpha`` by least squares in log-log space.

    Parameters
    ----------
    sizes : sequence of float
        Problem sizes, positive and distinct.
    times : sequence of float
        Matching positive durations.

    Returns
    -------
    alpha : float
        The fitted exponent.
    c : float
        The fitted constant.
    residual : float
        Largest relative deviation of a measured time from the fit.

    Raises
    ------
    InsufficientDataError
        With fewer than three points.
    """
    sizes = np.asarray(sizes, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    if sizes.shape != times.shape:
        raise ValueError("`sizes` and `times` should have the same length.")
    if sizes.size < 3:
        raise InsufficientDataError(f"At least 3 points are needed to fit a complexity law, got {sizes.size}.")
    if np.any(sizes <= 0) or np.any(times <= 0):
        raise ValueError("Sizes and times should be positive.")
    if np.unique(sizes).size != sizes.size:
        raise ValueError("Sizes should be distinct.")

    alpha, log_c = np.polyfit(np.log(sizes), np.log(times), 1)
    c = float(np.exp(log_c))
    residual = float(np.max(np.abs(c * sizes ** alpha - times) / times))

    return float(alpha), c, residual
