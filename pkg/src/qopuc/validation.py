"""Input validation shared by the estimator API and the CLI."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InvalidParameters
from .opuc import FAMILIES
from .qcore import QBParams


def check_qb_params(q, b_re, b_im, *, positive_lambda=True, tol=1e-15) -> QBParams:
    """Validate ``(q, b)`` and return a :class:`QBParams`.

    ``b = b_re + 1j * b_im``; the stored ``eta`` is ``-b_im``.
    """
    params = QBParams.from_b(q, complex(b_re, b_im), tol=tol)
    if positive_lambda:
        params.require_positive_lambda()
    return params


def check_family(family) -> str:
    if family not in FAMILIES:
        raise InvalidParameters(f"family must be one of {FAMILIES}, got {family!r}")
    return family


def check_kmax(kmax) -> int:
    if isinstance(kmax, bool) or not isinstance(kmax, numbers.Integral) or kmax < 0:
        raise InvalidParameters(f"kmax must be a non-negative integer, got {kmax!r}")
    return int(kmax)


def check_t(t, family="check") -> float:
    t = float(t)
    if not (0.0 <= t < 1.0):
        raise InvalidParameters(f"t must lie in [0, 1), got {t!r}")
    if t and family != "check":
        raise InvalidParameters("t > 0 is only defined for the check family")
    return t


def check_angles(X) -> np.ndarray:
    """Angles as a 1-D float array; accepts shape ``(n,)`` or ``(n, 1)``."""
    X = np.asarray(X)
    if X.ndim == 2 and X.shape[1] != 1:
        raise ValueError(f"expected a single column of angles, got shape {X.shape}")
    X = check_array(X.reshape(-1, 1), dtype=np.float64, ensure_all_finite=True)
    return X[:, 0]
