"""Trigonometric least-squares reconstruction of band-limited periodic objectives.

A function on ]-pi, pi]^n whose harmonic content along axis j is bounded by
S_j lives exactly in the tensor-product basis of {1, cos(k*t), sin(k*t)}
with k <= S_j, of total size T = prod_j (2*S_j + 1).  Sampling it noiselessly
on the T-point uniform lattice determines it completely: one point more per
axis than the strict lower bound 2*S_j.  With noisy samples the least-squares
solve averages the noise, and oversampling the lattice buys precision at the
cost of extra samples.

Basis enumeration order (normative for persistence): dimension-major tensor
products, each dimension ordered [1, cos(1t), sin(1t), cos(2t), sin(2t), ...].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FourierBasis",
    "SampleSet",
    "FourierModel",
    "uniform_lattice",
    "nyquist_lattice",
    "design_matrix",
    "fit_fourier_model",
    "fit_undersampled",
    "TrigonometricRegression",
]

_DOMAIN_SLACK = 1e-9


def _check_points(x, ndim: int | None = None) -> np.ndarray:
    points = np.asarray(x, dtype=float)
    if points.ndim == 1:
        points = points[:, None] if ndim in (None, 1) else points[None, :]
    if points.ndim != 2:
        raise ValueError(f"points must be a 2-D array, got shape {points.shape}")
    if ndim is not None and points.shape[1] != ndim:
        raise ValueError(f"points have dimension {points.shape[1]}, expected {ndim}")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    return points


def _check_bandwidths(bandwidths) -> tuple[int, ...]:
    bw = tuple(int(s) for s in np.atleast_1d(bandwidths))
    if len(bw) == 0:
        raise ValueError("need at least one bandwidth")
    if any(s < 0 for s in bw):
        raise ValueError("bandwidths must be non-negative")
    return bw


def uniform_lattice(counts) -> np.ndarray:
    """Cartesian product of per-axis uniform grids inside ]-pi, pi].

    Axis j contributes points -pi + 2*pi*(i+1)/M_j for i = 0..M_j-1, so the
    endpoint pi is included and -pi is excluded.  Enumeration is
    dimension-major (axis 0 slowest), matching the basis enumeration order.
    """
    counts = [int(m) for m in np.atleast_1d(counts)]
    if any(m < 1 for m in counts):
        raise ValueError("lattice needs at least one point per axis")
    axes = [-np.pi + 2.0 * np.pi * (np.arange(m) + 1) / m for m in counts]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def nyquist_lattice(bandwidths) -> np.ndarray:
    """The minimal uniform lattice for exact reconstruction: 2*S_j+1 per axis."""
    bw = _check_bandwidths(bandwidths)
    return uniform_lattice([2 * s + 1 for s in bw])


@dataclass(frozen=True)
class FourierBasis:
    """Tensor-product sinusoid basis with per-axis bandwidths.

    ``harmonics`` optionally restricts each axis to a subset of harmonic
    indices (0 denotes the constant); ``None`` keeps all of 0..S_j.  Dropping
    harmonics shrinks the basis and hence the number of samples needed, at the
    cost of assuming the dropped content is absent.
    """

    bandwidths: tuple[int, ...]
    harmonics: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        bw = _check_bandwidths(self.bandwidths)
        object.__setattr__(self, "bandwidths", bw)
        if self.harmonics is not None:
            if len(self.harmonics) != len(bw):
                raise ValueError("need one harmonic set per axis")
            cleaned = []
            for axis, (s, hset) in enumerate(zip(bw, self.harmonics)):
                ks = tuple(sorted({int(k) for k in hset}))
                if not ks:
                    raise ValueError(f"axis {axis} retains no harmonics")
                if ks[0] < 0 or ks[-1] > s:
                    raise ValueError(f"axis {axis} harmonics must lie in 0..{s}")
                cleaned.append(ks)
            object.__setattr__(self, "harmonics", tuple(cleaned))

    @property
    def ndim(self) -> int:
        return len(self.bandwidths)

    def axis_harmonics(self, axis: int) -> tuple[int, ...]:
        if self.harmonics is None:
            return tuple(range(self.bandwidths[axis] + 1))
        return self.harmonics[axis]

    @property
    def axis_sizes(self) -> tuple[int, ...]:
        sizes = []
        for axis in range(self.ndim):
            ks = self.axis_harmonics(axis)
            sizes.append(sum(1 if k == 0 else 2 for k in ks))
        return tuple(sizes)

    @property
    def size(self) -> int:
        """Total number of basis functions; prod(2*S_j+1) without masking."""
        return int(np.prod(self.axis_sizes))

    def _axis_block(self, values: np.ndarray, axis: int) -> np.ndarray:
        cols = []
        for k in self.axis_harmonics(axis):
            if k == 0:
                cols.append(np.ones_like(values))
            else:
                cols.append(np.cos(k * values))
                cols.append(np.sin(k * values))
        return np.stack(cols, axis=-1)

    def design_matrix(self, points) -> np.ndarray:
        """Rows = points, columns = basis functions in enumeration order."""
        points = _check_points(points, self.ndim)
        design = np.ones((points.shape[0], 1))
        for axis in range(self.ndim):
            block = self._axis_block(points[:, axis], axis)
            design = np.einsum("pi,pj->pij", design, block).reshape(points.shape[0], -1)
        return design

    def row(self, theta) -> np.ndarray:
        return self.design_matrix(np.atleast_2d(np.asarray(theta, dtype=float)))[0]

    def labels(self) -> list[str]:
        """Human-readable column labels in enumeration order."""
        per_axis = []
        for axis in range(self.ndim):
            names = []
            for k in self.axis_harmonics(axis):
                if k == 0:
                    names.append("1")
                else:
                    names.append(f"cos{k}t{axis}")
                    names.append(f"sin{k}t{axis}")
            per_axis.append(names)
        labels = [""]
        for names in per_axis:
            labels = [f"{a}*{b}" if a else b for a in labels for b in names]
        return labels


def design_matrix(points, basis: FourierBasis) -> np.ndarray:
    return basis.design_matrix(points)


@dataclass
class SampleSet:
    """Parameter points with measured objective values and their provenance."""

    points: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.points = _check_points(self.points)
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if self.points.shape[0] != self.values.shape[0]:
            raise ValueError("points and values lengths differ")
        if self.points.shape[0] < 1:
            raise ValueError("need at least one sample")
        lo, hi = self.points.min(initial=0.0), self.points.max(initial=0.0)
        if lo <= -np.pi - _DOMAIN_SLACK or hi > np.pi + _DOMAIN_SLACK:
            raise ValueError("sample points must lie in ]-pi, pi]")

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def ndim(self) -> int:
        return int(self.points.shape[1])


@dataclass
class FourierModel:
    """A fitted trigonometric model: coefficients over a FourierBasis.

    Evaluation is 2*pi-periodic per coordinate.  ``metadata`` records
    provenance (sample count, residual norm, mode, seed, flags).
    """

    bandwidths: tuple[int, ...]
    coefficients: np.ndarray
    metadata: dict = field(default_factory=dict)
    harmonics: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        self.bandwidths = _check_bandwidths(self.bandwidths)
        self.coefficients = np.asarray(self.coefficients, dtype=float).reshape(-1)
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError("coefficients must be finite")
        if self.coefficients.size != self.basis.size:
            raise ValueError(
                f"got {self.coefficients.size} coefficients for a basis of size {self.basis.size}"
            )

    @property
    def basis(self) -> FourierBasis:
        return FourierBasis(self.bandwidths, self.harmonics)

    @property
    def ndim(self) -> int:
        return len(self.bandwidths)

    def evaluate(self, theta) -> float:
        return float(self.basis.row(theta) @ self.coefficients)

    def evaluate_many(self, points) -> np.ndarray:
        return self.basis.design_matrix(points) @ self.coefficients

    __call__ = evaluate

    def to_dict(self) -> dict:
        metadata = dict(self.metadata)
        if self.harmonics is not None:
            metadata["harmonics"] = [list(h) for h in self.harmonics]
        return {
            "bandwidths": list(self.bandwidths),
            "coefficients": [float(c) for c in self.coefficients],
            "metadata": metadata,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FourierModel":
        if set(doc) != {"bandwidths", "coefficients", "metadata"}:
            raise ValueError(
                "model document needs exactly 'bandwidths', 'coefficients', 'metadata'"
            )
        metadata = dict(doc["metadata"])
        harmonics = metadata.pop("harmonics", None)
        if harmonics is not None:
            harmonics = tuple(tuple(int(k) for k in h) for h in harmonics)
        return cls(
            bandwidths=tuple(int(s) for s in doc["bandwidths"]),
            coefficients=np.asarray(doc["coefficients"], dtype=float),
            metadata=metadata,
            harmonics=harmonics,
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "FourierModel":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _solve_least_squares(design: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, float, int]:
    # rcond=None applies the cutoff max(rows, cols) * eps * largest_singular_value,
    # which also selects the minimum-norm (kernel-orthogonal) solution.
    coeffs, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.linalg.norm(design @ coeffs - values))
    return coeffs, residual, int(rank)


def fit_fourier_model(samples: SampleSet, basis: FourierBasis) -> FourierModel:
    """Least-squares fit of the sample values in the given basis.

    Among all least-squares minimizers the minimum-norm one is returned, so
    rank deficiency (undersampled lattices, duplicated points) is handled
    without special cases.  The residual norm is recorded in the metadata.
    """
    if samples.ndim != basis.ndim:
        raise ValueError("sample dimension does not match basis dimension")
    design = basis.design_matrix(samples.points)
    coeffs, residual, rank = _solve_least_squares(design, samples.values)
    metadata = dict(samples.metadata)
    metadata.update(
        sample_count=len(samples),
        residual_norm=residual,
        rank=rank,
        undersampled=bool(metadata.get("undersampled", False)),
    )
    return FourierModel(
        bandwidths=basis.bandwidths,
        coefficients=coeffs,
        metadata=metadata,
        harmonics=basis.harmonics,
    )


def fit_undersampled(samples: SampleSet, reduced_bandwidths) -> FourierModel:
    """Fit with a deliberately reduced frequency cutoff.

    Imposing a cutoff below the true content trades exactness for smoothness
    and fewer samples; the returned model is flagged ``undersampled`` so
    downstream consumers know its minimizer is only a starting point.
    """
    basis = FourierBasis(_check_bandwidths(reduced_bandwidths))
    model = fit_fourier_model(samples, basis)
    model.metadata["undersampled"] = True
    return model


class TrigonometricRegression:
    """Band-limited trigonometric regression with an estimator interface.

    Duck-types the common estimator protocol (``fit``/``predict``/``score``/
    ``get_params``/``set_params``) so it composes with pipeline tooling:

    >>> reg = TrigonometricRegression(bandwidths=(1,))
    >>> reg.fit(points, values).predict(points)

    Fitted attributes: ``coefficients_``, ``residual_norm_``, ``rank_``,
    ``model_`` and ``n_features_in_``.
    """

    def __init__(self, bandwidths=None, harmonics=None):
        self.bandwidths = bandwidths
        self.harmonics = harmonics

    def get_params(self, deep: bool = True) -> dict:
        return {"bandwidths": self.bandwidths, "harmonics": self.harmonics}

    def set_params(self, **params) -> "TrigonometricRegression":
        for key, value in params.items():
            if key not in ("bandwidths", "harmonics"):
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def _basis(self) -> FourierBasis:
        if self.bandwidths is None:
            raise ValueError("bandwidths must be set before fitting")
        harmonics = self.harmonics
        if harmonics is not None:
            harmonics = tuple(tuple(int(k) for k in h) for h in harmonics)
        return FourierBasis(_check_bandwidths(self.bandwidths), harmonics)

    def fit(self, X, y) -> "TrigonometricRegression":
        basis = self._basis()
        points = _check_points(X, basis.ndim)
        values = np.asarray(y, dtype=float).reshape(-1)
        if values.shape[0] != points.shape[0]:
            raise ValueError("X and y lengths differ")
        design = basis.design_matrix(points)
        coeffs, residual, rank = _solve_least_squares(design, values)
        self.n_features_in_ = points.shape[1]
        self.coefficients_ = coeffs
        self.residual_norm_ = residual
        self.rank_ = rank
        self.model_ = FourierModel(
            bandwidths=basis.bandwidths,
            coefficients=coeffs,
            metadata={"sample_count": points.shape[0], "residual_norm": residual, "rank": rank},
            harmonics=basis.harmonics,
        )
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "model_"):
            raise ValueError("this estimator is not fitted yet; call fit first")
        return self.model_.evaluate_many(_check_points(X, self.n_features_in_))

    def score(self, X, y) -> float:
        """Coefficient of determination R^2 on the given data."""
        y = np.asarray(y, dtype=float).reshape(-1)
        predicted = self.predict(X)
        ss_res = float(np.sum((y - predicted) ** 2))
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        if ss_tot == 0.0:
            return 1.0 if ss_res == 0.0 else 0.0
        return 1.0 - ss_res / ss_tot
