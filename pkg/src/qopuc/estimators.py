"""scikit-learn style front end.

:class:`OPUCFeatures` is a stateless transformer in the sense of
``FunctionTransformer``: ``fit`` builds the polynomial system for the chosen
measure (nothing is learned from ``X``) and ``transform`` maps angles on the
circle to the matrix ``[phi_k(exp(i theta))]``.

>>> from qopuc import OPUCFeatures
>>> est = OPUCFeatures(family="check", q=0.5, b_re=1.0, kmax=3).fit()
>>> bool(abs(est.verblunsky_).max() < 1e-12)
True
>>> est.transform([0.0]).shape
(1, 4)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .chainseq import ChainData
from .cpoly import evaluate
from .opuc import build_opuc, szego_function
from .validation import check_angles, check_family, check_kmax, check_qb_params, check_t


class OPUCFeatures(TransformerMixin, BaseEstimator):
    """Orthonormal (or monic) OPUC features for the hat, check or Pastro measure.

    Parameters
    ----------
    family : {"hat", "check", "pastro"}
    q : float
        Base in ``(0, 0.999]``.
    b_re, b_im : float
        Real and imaginary parts of ``b``. Note ``b = lam - i*eta``, so
        ``eta = -b_im``.
    kmax : int
        Highest degree; the transform has ``kmax + 1`` complex columns.
    t : float
        Point mass at ``z = 1`` for the check family, ``0 <= t < 1``.
    normalize : bool
        Orthonormal ``phi_k`` if True, monic ``Phi_k`` otherwise.
    output : {"complex", "real"}
        ``"real"`` stacks real and imaginary parts side by side.

    Attributes
    ----------
    sequence_ : OPUCSequence
    verblunsky_ : ndarray of shape (kmax,)
    kappa_inv_sq_ : ndarray of shape (kmax + 1,)
    measure_ : MeasureSpec
    chain_ : ChainData or None
        Chain-sequence data (``None`` for the Pastro family).
    """

    def __init__(
        self,
        family="hat",
        q=0.5,
        b_re=1.0,
        b_im=0.0,
        kmax=8,
        t=0.0,
        normalize=True,
        output="complex",
    ):
        self.family = family
        self.q = q
        self.b_re = b_re
        self.b_im = b_im
        self.kmax = kmax
        self.t = t
        self.normalize = normalize
        self.output = output

    def fit(self, X=None, y=None):
        family = check_family(self.family)
        kmax = check_kmax(self.kmax)
        t = check_t(self.t, family)
        if self.output not in ("complex", "real"):
            raise ValueError(f"output must be 'complex' or 'real', got {self.output!r}")
        params = check_qb_params(self.q, self.b_re, self.b_im, positive_lambda=family != "pastro")

        self.params_ = params
        self.sequence_ = build_opuc(family, params, kmax, t)
        self.verblunsky_ = self.sequence_.verblunsky
        self.kappa_inv_sq_ = self.sequence_.kappa_inv_sq
        self.measure_ = self.sequence_.measure
        self.chain_ = None if family == "pastro" else ChainData.compute(params, kmax, t if family == "check" else None)
        self._basis = (
            self.sequence_.orthonormal() if self.normalize else list(self.sequence_.monic)
        )
        self.n_features_out_ = (kmax + 1) * (2 if self.output == "real" else 1)
        return self

    def transform(self, X):
        """Evaluate the basis at ``exp(1j * X)``; ``X`` holds angles in radians."""
        check_is_fitted(self, "sequence_")
        theta = check_angles(X)
        z = np.exp(1j * theta)
        F = np.column_stack([evaluate(p, z) for p in self._basis])
        if self.output == "real":
            return np.hstack([F.real, F.imag])
        return F

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "sequence_")
        stem = "phi" if self.normalize else "Phi"
        names = [f"{stem}{k}" for k in range(self.sequence_.kmax + 1)]
        if self.output == "real":
            names = [f"{n}_re" for n in names] + [f"{n}_im" for n in names]
        return np.asarray(names, dtype=object)

    def weight(self, theta):
        """Density of the fitted measure w.r.t. ``dtheta/2pi``."""
        check_is_fitted(self, "sequence_")
        return self.measure_.weight(check_angles(theta))

    def szego(self, z):
        """Szego function of the fitted measure (hat and check families)."""
        check_is_fitted(self, "sequence_")
        return szego_function(self.family, self.params_, z, t=self.t)
