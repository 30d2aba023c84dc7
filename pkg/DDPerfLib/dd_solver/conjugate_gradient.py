from typing import Callable, List, Optional, Tuple

import numpy as np

from ..helper._helper import getLogger
from ..helper.exceptions import DimensionMismatchError, NonConvergenceError

logger = getLogger(__name__)


def conjugate_gradient(apply: Callable[[np.ndarray], np.ndarray], b: np.ndarray,
                       diag_precond: Optional[np.ndarray] = None, tol: float = 1e-8,
                       max_iterations: int = 100, reference_norm: Optional[float] = None,
                       callback: Optional[Callable[[np.ndarray], None]] = None) -> Tuple[np.ndarray, List[float]]:
    """
    Jacobi-preconditioned conjugate gradients for a symmetric positive definite operator.

    Starts from zero and stops once ``||r|| <= tol * reference_norm``.

    Parameters
    ----------
    apply : callable
        Matrix-vector product of the operator.
    b : np.ndarray
        Right-hand side.
    diag_precond : np.ndarray, optional
        Diagonal of the operator (or an approximation); identity when omitted.
    tol : float
        Relative residual tolerance.
    max_iterations : int
        Iteration budget.
    reference_norm : float, optional
        Norm the residual is measured against, ``||b||`` by default.
    callback : callable, optional
        Called with the current iterate after every iteration.

    Returns
    -------
    x : np.ndarray
        The approximate solution.
    residual_history : list of float
        Relative residual norms, starting with the initial one.

    Raises
    ------
    NonConvergenceError
        If the budget is exhausted or the operator is found not to be positive definite.
    """
    b = np.asarray(b, dtype=np.float64)
    if diag_precond is not None and np.shape(diag_precond) != b.shape:
        raise DimensionMismatchError("Preconditioner diagonal does not match the right-hand side.")
    inverse_diagonal = 1.0 / np.asarray(diag_precond) if diag_precond is not None else np.ones_like(b)
    reference = float(np.linalg.norm(b)) if reference_norm is None else float(reference_norm)

    x = np.zeros_like(b)
    if reference == 0.0 or b.size == 0:
        return x, [0.0]

    r = b.copy()
    z = inverse_diagonal * r
    d = z.copy()
    rz = float(np.dot(r, z))
    history = [float(np.linalg.norm(r)) / reference]

    for iteration in range(1, max_iterations + 1):
        if history[-1] <= tol:
            break
        q = apply(d)
        curvature = float(np.dot(d, q))
        if curvature <= 0.0:
            logger.warning(f"Non-positive curvature {curvature:.3e} at iteration {iteration}")
            raise NonConvergenceError(iteration - 1, history)
        alpha = rz / curvature
        x += alpha * d
        r -= alpha * q
        z = inverse_diagonal * r
        rz_next = float(np.dot(r, z))
        d = z + (rz_next / rz) * d
        rz = rz_next
        history.append(float(np.linalg.norm(r)) / reference)
        logger.debug(f"CG iteration {iteration}: relative residual {history[-1]:.3e}")
        if callback is not None:
            callback(x)

    if history[-1] > tol:
        raise NonConvergenceError(len(history) - 1, history)

    return x, history
