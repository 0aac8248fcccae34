"""Self-contained implementation of the 24 noiseless BBOB benchmark functions.

Instances are deterministic in (fid, instance, dim).  The published function
definitions (coordinate maps, conditioning, penalty terms) are followed, but
instance seeding uses this package's own scheme, so values are NOT numerically
identical to the COCO reference implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DimensionMismatch, NonFiniteInput, UnknownFunction
from .ela_features import IcSettings, MinimizationSample, compute_all

_BASE_ENTROPY = 0x5EED_BB0B  # mixed with (fid, instance) for per-instance RNG


def _instance_rng(fid: int, instance: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=_BASE_ENTROPY, spawn_key=(fid, instance))
    )


def _rotation(rng: np.random.Generator, d: int) -> np.ndarray:
    """Seeded random orthogonal matrix with a fixed sign convention."""
    A = rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    sign = np.sign(np.diag(R))
    sign[sign == 0] = 1.0
    return Q * sign


def t_osz(x: np.ndarray) -> np.ndarray:
    """Oscillatory nonlinear coordinate map; odd, fixes 0."""
    x = np.asarray(x, dtype=float)
    xhat = np.zeros_like(x)
    nz = x != 0
    xhat[nz] = np.log(np.abs(x[nz]))
    c1 = np.where(x > 0, 10.0, 5.5)
    c2 = np.where(x > 0, 7.9, 3.1)
    out = np.sign(x) * np.exp(xhat + 0.049 * (np.sin(c1 * xhat) + np.sin(c2 * xhat)))
    out[~nz] = 0.0
    return out


def t_asy(X: np.ndarray, beta: float) -> np.ndarray:
    """Asymmetry map on rows of X: bends positive coordinates, fixes 0."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    d = X.shape[1]
    idx = np.arange(d) / max(d - 1, 1)
    out = X.copy()
    pos = X > 0
    safe = np.where(pos, X, 1.0)
    expo = 1.0 + beta * idx[None, :] * np.sqrt(safe)
    out[pos] = (safe**expo)[pos]
    return out


def lam_alpha(alpha: float, d: int) -> np.ndarray:
    """Diagonal of the conditioning matrix Lambda^alpha."""
    return alpha ** (0.5 * np.arange(d) / max(d - 1, 1))


def f_pen(X: np.ndarray) -> np.ndarray:
    return np.sum(np.maximum(0.0, np.abs(X) - 5.0) ** 2, axis=-1)


def _schwefel_zstar() -> float:
    # argmax of z*sin(sqrt(z)) near 420.97: root of sin(r) + (r/2)cos(r), r=sqrt(z)
    r = brentq(lambda r: np.sin(r) + 0.5 * r * np.cos(r), 20.0, 21.0, xtol=1e-14)
    return r * r


_Z_STAR = _schwefel_zstar()


@dataclass
class BbobInstance:
    """One benchmark function with frozen instance transformations."""

    fid: int
    instance: int
    dim: int
    x_opt: np.ndarray
    f_opt: float
    _eval: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    rotations: tuple[np.ndarray, ...] = field(default=(), repr=False)

    def evaluate(self, x: np.ndarray) -> float:
        """f(x) for a single point."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected shape ({self.dim},), got {x.shape}")
        if not np.isfinite(x).all():
            raise NonFiniteInput("point contains non-finite entries")
        return float(self._eval(x[None, :])[0])

    def evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        """f(x) for each row of X."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise DimensionMismatch(f"expected shape (n, {self.dim}), got {X.shape}")
        if not np.isfinite(X).all():
            raise NonFiniteInput("points contain non-finite entries")
        return self._eval(X)


def make_instance(fid: int, instance: int, dim: int) -> BbobInstance:
    """Build a deterministic BBOB instance for the given id and dimension."""
    if not (isinstance(fid, (int, np.integer)) and 1 <= fid <= 24):
        raise UnknownFunction(f"fid must be in 1..24, got {fid!r}")
    if dim < 2:
        raise ValueError("dim must be >= 2")
    rng = _instance_rng(fid, instance)
    f_opt = float(rng.uniform(-1000.0, 1000.0))
    d = dim
    rotations: list[np.ndarray] = []

    def uniform_x_opt() -> np.ndarray:
        return rng.uniform(-4.0, 4.0, d)

    if fid == 1:
        x_opt = uniform_x_opt()

        def raw(X, x_opt=x_opt):
            return np.sum((X - x_opt) ** 2, axis=1)

    elif fid == 2:
        x_opt = uniform_x_opt()
        scale = 10.0 ** (6.0 * np.arange(d) / max(d - 1, 1))

        def raw(X, x_opt=x_opt, scale=scale):
            z = t_osz(X - x_opt)
            return np.sum(scale * z**2, axis=1)

    elif fid == 3:
        x_opt = uniform_x_opt()
        lam = lam_alpha(10.0, d)

        def raw(X, x_opt=x_opt, lam=lam):
            z = lam * t_asy(t_osz(X - x_opt), 0.2)
            return 10.0 * (d - np.sum(np.cos(2 * np.pi * z), axis=1)) + np.sum(z**2, axis=1)

    elif fid == 4:
        x_opt = uniform_x_opt()
        base = 10.0 ** (0.5 * np.arange(d) / max(d - 1, 1))
        odd = (np.arange(d) % 2) == 0  # 1-based odd coordinates

        def raw(X, x_opt=x_opt, base=base, odd=odd):
            t = t_osz(X - x_opt)
            s = np.where(odd[None, :] & (t > 0), 10.0 * base[None, :], base[None, :])
            z = s * t
            return (
                10.0 * (d - np.sum(np.cos(2 * np.pi * z), axis=1))
                + np.sum(z**2, axis=1)
                + 100.0 * f_pen(X)
            )

    elif fid == 5:
        pm = rng.choice([-1.0, 1.0], d)
        x_opt = 5.0 * pm
        s = pm * 10.0 ** (np.arange(d) / max(d - 1, 1))

        def raw(X, x_opt=x_opt, s=s):
            z = np.where(X * x_opt < 25.0, X, x_opt)
            return np.sum(5.0 * np.abs(s) - s * z, axis=1)

    elif fid == 6:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = Q @ (lam_alpha(10.0, d)[:, None] * R)

        def raw(X, x_opt=x_opt, M=M):
            z = (X - x_opt) @ M.T
            s = np.where(z * x_opt[None, :] > 0, 100.0, 1.0)
            val = np.sum((s * z) ** 2, axis=1)
            return t_osz(val) ** 0.9

    elif fid == 7:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        LR = lam_alpha(10.0, d)[:, None] * R
        scale = 100.0 ** (np.arange(d) / max(d - 1, 1))

        def raw(X, x_opt=x_opt, LR=LR, Q=Q, scale=scale):
            zhat = (X - x_opt) @ LR.T
            ztilde = np.where(
                np.abs(zhat) > 0.5,
                np.floor(0.5 + zhat),
                np.floor(0.5 + 10.0 * zhat) / 10.0,
            )
            z = ztilde @ Q.T
            body = np.sum(scale * z**2, axis=1)
            return 0.1 * np.maximum(np.abs(zhat[:, 0]) / 1e4, body) + f_pen(X)

    elif fid == 8:
        x_opt = uniform_x_opt()
        c = max(1.0, np.sqrt(d) / 8.0)

        def raw(X, x_opt=x_opt, c=c):
            z = c * (X - x_opt) + 1.0
            return np.sum(
                100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (z[:, :-1] - 1.0) ** 2, axis=1
            )

    elif fid in (9, 19):
        R = _rotation(rng, d)
        rotations.append(R)
        c = max(1.0, np.sqrt(d) / 8.0)
        x_opt = R.T @ np.full(d, 0.5 / c)

        if fid == 9:

            def raw(X, R=R, c=c):
                z = c * (X @ R.T) + 0.5
                return np.sum(
                    100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (z[:, :-1] - 1.0) ** 2,
                    axis=1,
                )

        else:

            def raw(X, R=R, c=c):
                z = c * (X @ R.T) + 0.5
                s = 100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (z[:, :-1] - 1.0) ** 2
                return 10.0 / (d - 1) * np.sum(s / 4000.0 - np.cos(s), axis=1) + 10.0

    elif fid == 10:
        x_opt = uniform_x_opt()
        R = _rotation(rng, d)
        rotations.append(R)
        scale = 10.0 ** (6.0 * np.arange(d) / max(d - 1, 1))

        def raw(X, x_opt=x_opt, R=R, scale=scale):
            z = t_osz((X - x_opt) @ R.T)
            return np.sum(scale * z**2, axis=1)

    elif fid == 11:
        x_opt = uniform_x_opt()
        R = _rotation(rng, d)
        rotations.append(R)

        def raw(X, x_opt=x_opt, R=R):
            z = t_osz((X - x_opt) @ R.T)
            return 1e6 * z[:, 0] ** 2 + np.sum(z[:, 1:] ** 2, axis=1)

    elif fid == 12:
        x_opt = uniform_x_opt()
        R = _rotation(rng, d)
        rotations.append(R)

        def raw(X, x_opt=x_opt, R=R):
            z = t_asy((X - x_opt) @ R.T, 0.5) @ R.T
            return z[:, 0] ** 2 + 1e6 * np.sum(z[:, 1:] ** 2, axis=1)

    elif fid == 13:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = Q @ (lam_alpha(10.0, d)[:, None] * R)

        def raw(X, x_opt=x_opt, M=M):
            z = (X - x_opt) @ M.T
            return z[:, 0] ** 2 + 100.0 * np.sqrt(np.sum(z[:, 1:] ** 2, axis=1))

    elif fid == 14:
        x_opt = uniform_x_opt()
        R = _rotation(rng, d)
        rotations.append(R)
        expo = 2.0 + 4.0 * np.arange(d) / max(d - 1, 1)

        def raw(X, x_opt=x_opt, R=R, expo=expo):
            z = (X - x_opt) @ R.T
            return np.sqrt(np.sum(np.abs(z) ** expo, axis=1))

    elif fid == 15:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = R @ (lam_alpha(10.0, d)[:, None] * Q)

        def raw(X, x_opt=x_opt, R=R, M=M):
            z = t_asy(t_osz((X - x_opt) @ R.T), 0.2) @ M.T
            return 10.0 * (d - np.sum(np.cos(2 * np.pi * z), axis=1)) + np.sum(
                z**2, axis=1
            )

    elif fid == 16:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = R @ (lam_alpha(0.01, d)[:, None] * Q)
        k = np.arange(12)
        halfk, threek = 0.5**k, 3.0**k
        f0 = float(np.sum(halfk * np.cos(np.pi * threek)))

        def raw(X, x_opt=x_opt, R=R, M=M, halfk=halfk, threek=threek, f0=f0):
            z = t_osz((X - x_opt) @ R.T) @ M.T
            inner = np.zeros_like(z)
            for hk, tk in zip(halfk, threek):
                inner += hk * np.cos(2 * np.pi * tk * (z + 0.5))
            return 10.0 * (np.mean(inner, axis=1) - f0) ** 3 + 10.0 / d * f_pen(X)

    elif fid in (17, 18):
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        alpha = 10.0 if fid == 17 else 1000.0
        LQ = lam_alpha(alpha, d)[:, None] * Q

        def raw(X, x_opt=x_opt, R=R, LQ=LQ):
            z = t_asy((X - x_opt) @ R.T, 0.5) @ LQ.T
            s = np.sqrt(z[:, :-1] ** 2 + z[:, 1:] ** 2)
            body = np.mean(np.sqrt(s) + np.sqrt(s) * np.sin(50.0 * s**0.2) ** 2, axis=1)
            return body**2 + 10.0 * f_pen(X)

    elif fid == 20:
        pm = rng.choice([-1.0, 1.0], d)
        x_opt = (_Z_STAR / 200.0) * pm
        lam = lam_alpha(10.0, d)
        const = _Z_STAR * np.sin(np.sqrt(_Z_STAR)) / 100.0
        mu = 2.0 * np.abs(x_opt)  # = z_star/100 per coordinate

        def raw(X, pm=pm, lam=lam, mu=mu, const=const):
            xhat = 2.0 * pm[None, :] * X
            zhat = xhat.copy()
            zhat[:, 1:] += 0.25 * (xhat[:, :-1] - mu[None, :-1])
            z = 100.0 * (lam[None, :] * (zhat - mu[None, :]) + mu[None, :])
            body = -np.mean(z * np.sin(np.sqrt(np.abs(z))), axis=1) / 100.0
            return body + const + 100.0 * f_pen(z / 100.0)

    elif fid in (21, 22):
        m = 101 if fid == 21 else 21
        R = _rotation(rng, d)
        rotations.append(R)
        if fid == 21:
            y1 = rng.uniform(-4.0, 4.0, d)
            alpha1 = 1000.0
        else:
            y1 = rng.uniform(-3.92, 3.92, d)
            alpha1 = 1000.0**2
        peaks = np.vstack([y1, rng.uniform(-4.9, 4.9, (m - 1, d))])
        w = np.concatenate([[10.0], 1.1 + 8.0 * np.arange(m - 1) / (m - 2)])
        alpha_pool = 1000.0 ** (2.0 * np.arange(m - 1) / (m - 2))
        alphas = np.concatenate([[alpha1], rng.permutation(alpha_pool)])
        # diag(C_i) = Lambda^alpha_i / alpha_i^(1/4), per-peak conditioning
        C = np.vstack([lam_alpha(a, d) ** 2 / a**0.25 for a in alphas])
        x_opt = y1

        def raw(X, R=R, peaks=peaks, w=w, C=C):
            Z = X @ R.T  # (n, d)
            P = peaks @ R.T  # (m, d)
            g = np.full(X.shape[0], -np.inf)
            for i in range(P.shape[0]):
                q = np.sum((Z - P[i]) ** 2 * C[i], axis=1)
                np.maximum(g, w[i] * np.exp(-q / (2.0 * d)), out=g)
            return t_osz(10.0 - g) ** 2 + f_pen(X)

    elif fid == 23:
        x_opt = uniform_x_opt()
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = Q @ (lam_alpha(100.0, d)[:, None] * R)
        two_j = 2.0 ** np.arange(1, 33)
        coef = np.arange(1, d + 1)

        def raw(X, x_opt=x_opt, M=M, two_j=two_j, coef=coef):
            z = (X - x_opt) @ M.T
            frac = np.zeros_like(z)
            for tj in two_j:
                zz = z * tj
                frac += np.abs(zz - np.round(zz)) / tj
            prod = np.prod((1.0 + coef[None, :] * frac) ** (10.0 / d**1.2), axis=1)
            return 10.0 / d**2 * prod - 10.0 / d**2 + f_pen(X)

    else:  # fid == 24
        pm = rng.choice([-1.0, 1.0], d)
        mu0 = 2.5
        x_opt = (mu0 / 2.0) * pm
        s = 1.0 - 1.0 / (2.0 * np.sqrt(d + 20.0) - 8.2)
        mu1 = -np.sqrt((mu0**2 - 1.0) / s)
        R, Q = _rotation(rng, d), _rotation(rng, d)
        rotations += [R, Q]
        M = Q @ (lam_alpha(100.0, d)[:, None] * R)

        def raw(X, pm=pm, mu0=mu0, mu1=mu1, s=s, M=M):
            xhat = 2.0 * pm[None, :] * X
            z = (xhat - mu0) @ M.T
            t1 = np.sum((xhat - mu0) ** 2, axis=1)
            t2 = d + s * np.sum((xhat - mu1) ** 2, axis=1)
            cosz = 10.0 * (d - np.sum(np.cos(2 * np.pi * z), axis=1))
            return np.minimum(t1, t2) + cosz + 1e4 * f_pen(X)

    def shifted(X, raw=raw, f_opt=f_opt):
        return raw(np.atleast_2d(np.asarray(X, dtype=float))) + f_opt

    return BbobInstance(
        fid=int(fid),
        instance=int(instance),
        dim=d,
        x_opt=np.asarray(x_opt, dtype=float),
        f_opt=f_opt,
        _eval=shifted,
        rotations=tuple(rotations),
    )


def lhs_box(n: int, dim: int, seed: int, lo: float = -5.0, hi: float = 5.0) -> np.ndarray:
    """Latin hypercube sample of the plain [lo, hi]^dim box."""
    from .sampling import lhs_unit

    return lo + lhs_unit(n, dim, seed) * (hi - lo)


def bbob_feature_table(
    dim: int = 23,
    instances: range | list[int] = range(1, 21),
    n: int = 1000,
    seed: int = 0,
    fids: range | list[int] = range(1, 25),
    ic_settings: IcSettings | None = None,
):
    """ELA features of every (fid, instance) pair on a fresh LHS design.

    Yields (fid, instance, LandscapeFeatures) in sorted order.
    """
    for fid in fids:
        for instance in instances:
            inst = make_instance(fid, instance, dim)
            sub = np.random.SeedSequence(entropy=seed, spawn_key=(fid, instance))
            X = lhs_box(n, dim, int(sub.generate_state(1)[0]))
            y = inst.evaluate_batch(X)
            feats = compute_all(MinimizationSample(X, y), ic_settings)
            yield fid, instance, feats
